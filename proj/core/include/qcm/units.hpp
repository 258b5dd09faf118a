#pragma once

#include "qcm/numfield.hpp"

namespace qcm {

// Unit group of a real quadratic or quartic CM field (torsion {+-1} only;
// fields with extra roots of unity are rejected).
struct UnitGroupData {
    FieldPtr field;
    FieldElem torsion_gen;  // -1
    Int torsion_order = 2;
    FieldElem fundamental;  // normalized fundamental unit (in `field`)

    // real quadratic data (for quartic CM fields, data of the subfield K0)
    FieldElem eps0;       // fundamental unit of K0
    FieldElem eps0_plus;  // generator of the totally positive units
    int eps0_plus_case;   // 0: eps0 itself, 1: -eps0, 2: eps0^2
    bool unit_index_two = false;  // quartic: fundamental^2 = +-eps0
};

// Real quadratic field: continued-fraction fundamental unit, normalized so
// that |value at the smaller root| > 1 and the leading power-basis
// coordinate is positive (reproduces the printed units of the examples).
UnitGroupData unit_group(const FieldPtr& f);

// Quartic CM field: fundamental unit of K0 lifted, with the unit index test.
UnitGroupData unit_group(const CMFieldPair& pair);

}  // namespace qcm
