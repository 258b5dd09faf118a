#pragma once

#include "qcm/numfield.hpp"

#include <optional>
#include <vector>

namespace qcm {

// Fractional ideal stored as an integer lattice in column HNF with respect to
// the maximal-order basis, over a positive denominator. Canonical form:
// gcd(den, lattice content) = 1, so equality is componentwise.
class FracIdeal {
  public:
    FracIdeal() = default;

    static FracIdeal whole_ring(const FieldPtr& f);
    static FracIdeal from_generators(const FieldPtr& f, const std::vector<FieldElem>& gens);
    static FracIdeal principal(const FieldElem& x);
    // a*O + beta*O with a a positive integer and beta integral.
    static FracIdeal two_element(const FieldPtr& f, const Int& a, const FieldElem& beta);
    // lattice given by integral-basis coordinate columns
    static FracIdeal from_lattice(const FieldPtr& f, const IntMatrix& columns, const Int& den);

    const FieldPtr& field() const { return field_; }
    const IntMatrix& num() const { return num_; }
    const Int& den() const { return den_; }

    bool operator==(const FracIdeal& o) const;
    bool is_zero() const { return num_.cols() == 0; }
    bool is_integral() const { return den_ == 1; }
    bool is_whole_ring() const;

    FracIdeal operator*(const FracIdeal& o) const;
    FracIdeal operator+(const FracIdeal& o) const;  // ideal gcd
    FracIdeal inverse() const;
    FracIdeal pow(long e) const;
    FracIdeal scaled(const Rat& c) const;  // c * I

    Rat norm() const;
    bool contains(const FieldElem& x) const;
    bool contains_lattice(const FracIdeal& o) const;  // o subset of this
    std::vector<FieldElem> basis_elements() const;
    FieldElem basis_element(std::size_t j) const;

    // smallest positive rational integer in the ideal (integral ideals)
    Int min_integer() const;

    bool coprime_to(const Int& m) const;

  private:
    void canonicalize();
    FieldPtr field_;
    IntMatrix num_;
    Int den_ = 1;
};

struct PrimeIdeal {
    FracIdeal ideal;
    Int p;
    unsigned e = 1;  // ramification index
    unsigned f = 1;  // residue degree
    FieldElem second_gen;  // ideal = (p, second_gen)

    Int norm() const { return pow_int(p, f); }
};

// All primes above p, deterministically ordered (by residue degree, then by
// HNF lexicographic order). Handles primes dividing the index.
std::vector<PrimeIdeal> prime_decomposition(const FieldPtr& f, const Int& p);

// Exact valuation of a nonzero fractional ideal at a prime.
long valuation(const FracIdeal& a, const PrimeIdeal& prime);

// For a quartic CM pair, the relative norm of an ideal of K: the ideal of K0
// with N(a) * O_K = a * conj(a).
FracIdeal relative_norm_ideal(const CMFieldPair& pair, const FracIdeal& a);

// Embed an ideal of K0 into K (generated by the same elements).
FracIdeal extend_to_quartic(const CMFieldPair& pair, const FracIdeal& a0);

}  // namespace qcm
