#pragma once

#include "qcm/intmat.hpp"
#include "qcm/real.hpp"

#include <memory>
#include <string>
#include <vector>

namespace qcm {

class NumberField;
using FieldPtr = std::shared_ptr<const NumberField>;

// Element of a number field, exact rational coordinates in the power basis.
class FieldElem {
  public:
    FieldElem() = default;
    FieldElem(FieldPtr field, std::vector<Rat> power_coords);

    const FieldPtr& field() const { return field_; }
    const std::vector<Rat>& coords() const { return c_; }

    bool is_zero() const;
    bool is_rational() const;
    Rat rational_value() const;  // requires is_rational()

    friend FieldElem operator+(const FieldElem& a, const FieldElem& b);
    friend FieldElem operator-(const FieldElem& a, const FieldElem& b);
    friend FieldElem operator*(const FieldElem& a, const FieldElem& b);
    FieldElem operator-() const;
    FieldElem inv() const;  // throws invalid_input on zero
    friend FieldElem operator/(const FieldElem& a, const FieldElem& b) { return a * b.inv(); }
    bool operator==(const FieldElem& o) const;

    FieldElem pow(long e) const;

    // The distinguished involution: for even quartics the conjugation over the
    // real quadratic subfield (alpha -> -alpha); for quadratics the nontrivial
    // automorphism over Q.
    FieldElem conjugate() const;

    Rat norm() const;
    Rat trace() const;

    // Coordinates with respect to the maximal-order basis (exact rationals;
    // integral iff the element is an algebraic integer).
    std::vector<Rat> integral_coords() const;
    bool is_integral() const;

    // Common denominator of the integral coordinates.
    Int denominator() const;

    FieldElem scale(const Rat& q) const;

    std::string str(const std::string& var = "a") const;

  private:
    FieldPtr field_;
    std::vector<Rat> c_;
};

// Complex embeddings of a field at a working precision. values[i] holds the
// i-th root of the defining polynomial; roots come in conjugate pairs for CM
// quartics ordered (i y1, -i y1, i y2, -i y2) with y1 > y2 > 0, and ascending
// for totally real quadratics.
struct EmbeddingSet {
    FieldPtr field;
    mpfr_prec_t precision;
    std::vector<Complex> values;

    Complex eval(const FieldElem& x, std::size_t i) const;
};

class NumberField : public std::enable_shared_from_this<NumberField> {
  public:
    // x^2 + a1 x + a0, irreducible.
    static FieldPtr quadratic(const Int& a1, const Int& a0);
    // x^4 + A x^2 + B, irreducible (the only quartic shape in scope).
    static FieldPtr even_quartic(const Int& A, const Int& B);

    std::size_t degree() const { return n_; }
    // Monic defining polynomial coefficients c0..c_{n-1} (x^n implied).
    const std::vector<Int>& poly() const { return poly_; }
    const Int& disc() const { return disc_; }
    const Int& index() const { return index_; }
    const Int& poly_disc() const { return poly_disc_; }

    bool is_totally_real() const;
    bool is_cm_quartic() const;

    // Maximal order basis: row i of basis_num() over basis_den() gives the
    // power-basis coordinates of the i-th basis element; first element is 1.
    const IntMatrix& basis_num() const { return basis_num_; }
    const Int& basis_den() const { return basis_den_; }

    FieldElem zero() const;
    FieldElem one() const;
    FieldElem gen() const;  // the class of x
    FieldElem element(std::vector<Rat> power_coords) const;
    FieldElem from_integral_coords(const std::vector<Rat>& coords) const;
    FieldElem from_integral_coords(const std::vector<Int>& coords) const;

    // Product of maximal-order basis elements i and j, in integral coords.
    const std::vector<Int>& basis_product(std::size_t i, std::size_t j) const;

    EmbeddingSet embeddings(mpfr_prec_t precision) const;

    // internal: multiplication matrix of x acting on the power basis
    std::vector<std::vector<Rat>> mul_matrix(const FieldElem& x) const;

  private:
    friend class FieldElem;
    friend FieldElem operator*(const FieldElem& a, const FieldElem& b);
    NumberField() = default;
    static FieldPtr build(std::vector<Int> poly);
    void compute_maximal_order();

    std::size_t n_ = 0;
    std::vector<Int> poly_;
    Int poly_disc_, disc_, index_;
    IntMatrix basis_num_;
    Int basis_den_ = 1;
    // power coords -> integral coords transform, rational: to_int_num_/to_int_den_
    IntMatrix to_int_num_;
    Int to_int_den_ = 1;
    std::vector<std::vector<std::vector<Int>>> mult_table_;  // [i][j] -> coords
    std::vector<std::vector<Rat>> alpha_pow_;  // alpha^n .. alpha^{2n-2} reduced
};

// Quartic CM field K = Q[x]/(x^4+Ax^2+B) together with its real quadratic
// subfield K0 = Q[x]/(x^2+Ax+B), glued by alpha0 = alpha^2.
struct CMFieldPair {
    FieldPtr K;
    FieldPtr K0;

    // alpha0 -> alpha^2
    FieldElem to_quartic(const FieldElem& x0) const;
    // inverse on the image; throws invalid_input if x is not in K0
    FieldElem to_subfield(const FieldElem& x) const;
};

// Validates the CM shape: irreducible, K totally imaginary, K0 real quadratic.
CMFieldPair make_cm_field(const Int& A, const Int& B);

// Exact sign of a + b*sqrt(D), D > 0 not a square.
int sign_a_plus_b_sqrt(const Rat& a, const Rat& b, const Int& D);

// Exact total positivity for elements of a totally real quadratic field.
bool is_totally_positive(const FieldElem& x);
// Sign vector (one per real embedding, ascending root order), exact.
std::vector<int> real_signs(const FieldElem& x);

// Does y (element of a quadratic field) have a square root in that field?
// If so and root != nullptr, store one.
bool has_sqrt_in_quadratic(const FieldElem& y, FieldElem* root = nullptr);

}  // namespace qcm
