#pragma once

#include "qcm/intmat.hpp"

#include <functional>
#include <optional>
#include <vector>

namespace qcm {

// Finitely generated abelian group Z^n / (relations), presented on invariant
// factors. Invariant factors are stored with the divisibility chain
// inv[n-1] | ... | inv[1] | inv[0], where 0 encodes an infinite cyclic factor
// and therefore sorts first. Factors equal to 1 are dropped.
//
// The group remembers how its standard generators relate to the generators it
// was presented on: to_std maps a word in the input generators to standard
// coordinates, from_std writes each standard generator as a word in the input
// generators.
class FinGenAbGroup {
  public:
    FinGenAbGroup() = default;

    // Z^n_gens / column span of relations (relations may have any number of
    // columns; must have n_gens rows).
    static FinGenAbGroup from_relations(std::size_t n_gens, const IntMatrix& relations);

    // Direct product of cyclic groups with the given invariant factors
    // (0 = infinite); input generators coincide with standard generators.
    static FinGenAbGroup cyclic_product(const std::vector<Int>& factors);

    const std::vector<Int>& invariants() const { return inv_; }
    std::size_t rank() const { return inv_.size(); }
    std::size_t input_rank() const { return n_in_; }
    bool is_trivial() const { return inv_.empty(); }
    bool is_finite() const;
    // Group order; throws invalid_input on infinite groups.
    Int order() const;
    // Exponent (lcm of the invariant factors); 0 if any factor is infinite.
    Int exponent() const;

    // Standard coordinates of a word in the input generators.
    std::vector<Int> dlog_word(const std::vector<Int>& word) const;
    // Word in the input generators representing standard generator i.
    std::vector<Int> std_gen_word(std::size_t i) const;
    // Componentwise canonical reduction of standard coordinates.
    std::vector<Int> reduce(std::vector<Int> coords) const;

    const IntMatrix& to_std() const { return to_std_; }
    const IntMatrix& from_std() const { return from_std_; }

    // Relation matrix diag(inv) as columns (zero factors contribute nothing).
    IntMatrix relation_columns() const;

  private:
    std::vector<Int> inv_;
    std::size_t n_in_ = 0;
    IntMatrix to_std_;    // rank x n_in
    IntMatrix from_std_;  // n_in x rank
};

// Subgroup of an ambient group, held as the column HNF of the lattice in
// standard coordinates. The lattice always contains the ambient relation
// columns, so for finite ambient groups the matrix is square of full rank.
struct SubgroupHNF {
    std::vector<Int> ambient_inv;
    IntMatrix basis;

    bool operator==(const SubgroupHNF& o) const = default;

    // |S| as a subgroup of the ambient group (finite ambient only).
    Int order() const;
    // Invariant factors of the subgroup as an abstract group.
    std::vector<Int> invariants() const;
    bool contains(const std::vector<Int>& coords) const;
};

// Subgroup generated by the given coordinate vectors (ambient relations are
// adjoined automatically).
SubgroupHNF subgroup_from_generators(const FinGenAbGroup& g,
                                     const std::vector<std::vector<Int>>& gens);
SubgroupHNF trivial_subgroup(const FinGenAbGroup& g);
SubgroupHNF full_subgroup(const FinGenAbGroup& g);

// Morphism between groups in standard coordinates: matrix is
// codomain.rank() x domain.rank().
struct GroupMorphism {
    FinGenAbGroup domain;
    FinGenAbGroup codomain;
    IntMatrix matrix;

    std::vector<Int> apply(const std::vector<Int>& x) const;
    // Well-definedness: matrix * (d_i e_i) lands in the codomain relations.
    bool is_well_defined() const;
};

GroupMorphism compose(const GroupMorphism& g, const GroupMorphism& f);  // g after f

// Kernel of f as a subgroup of f.domain.
SubgroupHNF morphism_kernel(const GroupMorphism& f);
// {x : f(x) in s}, s a subgroup of f.codomain.
SubgroupHNF inverse_image(const GroupMorphism& f, const SubgroupHNF& s);
// Image of f as a subgroup of f.codomain.
SubgroupHNF morphism_image(const GroupMorphism& f);

// G / S with dlog expressed through G's standard coordinates: the returned
// group's input generators are G's standard generators.
FinGenAbGroup quotient_group(const FinGenAbGroup& g, const SubgroupHNF& s);

SubgroupHNF subgroup_intersection(const SubgroupHNF& s1, const SubgroupHNF& s2);
bool subgroup_leq(const SubgroupHNF& s1, const SubgroupHNF& s2);

// Kernel of multiplication by n (the n-torsion as a subgroup).
SubgroupHNF torsion_subgroup(const FinGenAbGroup& g, const Int& n);

// Middle term B of 1 -> A -> B -> C -> 1. For each standard generator c_j of
// C (finite order d_j), cocycle(j) must return the A-coordinates of the
// preimage of lift(c_j)^{d_j}; the caller realizes lifts and the preimage
// procedure on its own element type. B's input generators are ordered
// (A standard generators, lifted C standard generators), so a B-element known
// as a word (a_coords, c_coords) can be dlogged directly.
FinGenAbGroup extension_group(
    const FinGenAbGroup& a, const FinGenAbGroup& c,
    const std::function<std::vector<Int>(std::size_t)>& cocycle);

}  // namespace qcm
