#pragma once

#include "qcm/classgroup.hpp"
#include "qcm/resring.hpp"

namespace qcm {

// Ray class group Cl_F(m), optionally with sign conditions at every real
// place (narrow). Built as the extension
//   1 -> ((O/m)^x x signs)/im(units) -> Cl_F(m) -> Cl_F(1) -> 1
// with lifts through coprime class representatives.
class RayClassGroup {
  public:
    // cl must outlive the ray class group (held by reference via shared data).
    static RayClassGroup compute(std::shared_ptr<const ClassGroupData> cl, const Int& m,
                                 bool narrow);

    const FieldPtr& field() const { return cl_->field(); }
    const Int& modulus() const { return m_; }
    bool narrow() const { return narrow_; }
    const FinGenAbGroup& group() const { return group_; }
    const ClassGroupData& class_group() const { return *cl_; }

    std::vector<Int> dlog(const FracIdeal& a) const;
    // representative ideal (coprime to m) of standard generator i
    const FracIdeal& std_gen_ideal(std::size_t i) const { return std_reps_.at(i); }

    // generator x of a with x = 1 mod* m (and totally positive at flagged
    // places), when one exists
    std::optional<FieldElem> ray_generator(const FracIdeal& a) const;

    // combined residue+sign dlog of a field element whose ideal is coprime to m
    std::vector<Int> mod_data_dlog(const FieldElem& x) const;
    // the quotient A = mod-data group / image of units, and its lift elements
    const FinGenAbGroup& quotient_a() const { return a_group_; }
    std::vector<Int> a_dlog(const FieldElem& x) const;

  private:
    std::shared_ptr<const ClassGroupData> cl_;
    Int m_ = 1;
    bool narrow_ = false;
    ResidueUnits res_;
    std::size_t sign_places_ = 0;
    FinGenAbGroup mod_group_;       // (O/m)^x x C2^{signs}
    FinGenAbGroup a_group_;         // quotient by unit image
    std::vector<FieldElem> a_gen_elements_;  // element per A standard generator
    std::vector<FracIdeal> c_lifts_;         // coprime reps per Cl std generator
    FinGenAbGroup group_;
    std::vector<FracIdeal> std_reps_;
};

// Element of O, = 1 mod m, with prescribed signs at the real places (exact
// search; only needed for real quadratic fields).
FieldElem sign_realizer(const FieldPtr& f, const Int& m, const std::vector<int>& signs);

}  // namespace qcm
