#pragma once

#include "qcm/fgab.hpp"
#include "qcm/principal.hpp"

#include <map>

namespace qcm {

// Certified class group: every ideal class contains an integral ideal of norm
// below the Minkowski bound; all prime ideals up to the bound are enumerated,
// the subgroup they generate is materialized with reduced representatives,
// and the discrete logarithm of an arbitrary ideal goes through reduction and
// prime factorization of the reduced ideal.
class ClassGroupData {
  public:
    static ClassGroupData compute(const FieldPtr& f);

    const FieldPtr& field() const { return field_; }
    const UnitGroupData& units() const { return units_; }
    const FinGenAbGroup& group() const { return group_; }
    const Rat& bound() const { return mb_; }
    Int order() const { return group_.order(); }

    // representative ideal of standard generator i (coprime handling is the
    // ray layer's job)
    const FracIdeal& std_gen_ideal(std::size_t i) const { return std_reps_[i]; }

    // all enumerated primes of norm <= Minkowski bound
    const std::vector<PrimeIdeal>& small_primes() const { return primes_; }

    std::vector<Int> dlog(const FracIdeal& a) const;
    bool is_principal_class(const FracIdeal& a) const;

    // exact generator search through the class-group certificate: returns a
    // generator iff the class is trivial
    std::optional<FieldElem> generator_if_principal(const FracIdeal& a) const;

    // an integral ideal in the class of [a] with norm <= bound
    FracIdeal reduced_in_class(const FracIdeal& a) const;

  private:
    FieldPtr field_;
    UnitGroupData units_;
    Rat mb_;
    FinGenAbGroup group_;  // input generators: chosen prime classes
    std::vector<FracIdeal> gen_ideals_;   // per input generator
    std::vector<FracIdeal> std_reps_;     // per standard generator
    std::vector<PrimeIdeal> primes_;
    std::map<std::string, std::vector<Int>> prime_dlog_;  // HNF key -> std coords

    static std::string ideal_key(const FracIdeal& a);
    std::vector<Int> dlog_integral(const FracIdeal& a) const;  // factor into small primes
};

}  // namespace qcm
