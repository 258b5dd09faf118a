#pragma once

#include "qcm/fgab.hpp"
#include "qcm/numfield.hpp"

#include <map>
#include <string>

namespace qcm {

// (O/mO)^x with a table-based discrete logarithm, computed per prime power of
// m by multiplicative closure (ring sizes capped) and glued by CRT.
class ResidueUnits {
  public:
    static ResidueUnits compute(const FieldPtr& f, const Int& m);

    const FieldPtr& field() const { return field_; }
    const Int& modulus() const { return m_; }
    const FinGenAbGroup& group() const { return group_; }

    // x integral with (x) coprime to m
    std::vector<Int> dlog_element(const FieldElem& x) const;
    // fractional x whose principal ideal is coprime to m
    std::vector<Int> dlog(const FieldElem& x) const;

    // lift of standard generator i to an element of O coprime to m
    FieldElem gen_element(std::size_t i) const;

  private:
    struct Factor {
        Int q;  // p^k
        FinGenAbGroup group;
        std::map<std::string, std::vector<Int>> table;  // residue -> coords
        std::vector<std::vector<Int>> gen_res;          // std generator residues
    };
    std::vector<Int> factor_dlog(const Factor& fac, const FieldElem& x) const;

    FieldPtr field_;
    Int m_ = 1;
    std::vector<Factor> factors_;
    FinGenAbGroup group_;
    std::vector<FieldElem> gen_elements_;
};

}  // namespace qcm
