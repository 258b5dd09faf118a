#pragma once

#include "qcm/ideal.hpp"
#include "qcm/units.hpp"

#include <optional>

namespace qcm {

// Certified principality test. The search sweeps quadratic forms skewed along
// the log-unit direction so the ellipsoids stay O(1)-sized regardless of the
// regulator; candidates are confirmed by exact norm equality.
std::optional<FieldElem> principal_generator(const FracIdeal& a, const UnitGroupData& units);

// Element x of the ideal with |N(x)| <= minkowski_bound * N(a) (exists by
// Minkowski's theorem); used to reduce ideals to bounded-norm equivalents.
FieldElem small_element(const FracIdeal& a, const UnitGroupData& units, const Rat& minkowski_bound);

// (x) * a^{-1} for x = small_element: an integral ideal of norm <= bound in
// the inverse class of a.
FracIdeal reduce_ideal(const FracIdeal& a, const UnitGroupData& units, const Rat& minkowski_bound);

Rat minkowski_bound(const FieldPtr& f);

}  // namespace qcm
