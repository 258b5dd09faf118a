#include "qcm/fgab.hpp"

#include <algorithm>

namespace qcm {

namespace {

// Sort key placing 0 (infinite) first, then finite factors descending.
bool factor_before(const Int& a, const Int& b) {
    if (a == 0) return b != 0;
    if (b == 0) return false;
    return a > b;
}

Int product_or_zero(const std::vector<Int>& v) {
    Int p = 1;
    for (auto& x : v) {
        if (x == 0) return 0;
        p *= x;
    }
    return p;
}

}  // namespace

FinGenAbGroup FinGenAbGroup::from_relations(std::size_t n_gens, const IntMatrix& relations) {
    if (relations.rows() != n_gens && !(relations.rows() == 0 && relations.cols() == 0))
        throw invalid_input("from_relations: relation rows must equal n_gens");
    IntMatrix rel = relations.rows() == n_gens ? relations : IntMatrix(n_gens, 0);
    SmithForm s = snf(rel);
    // In y = U x coordinates the relation lattice is spanned by d_i e_i.
    std::vector<Int> d = s.diag();
    d.resize(n_gens, Int(0));  // columns short of n_gens leave free factors

    // Keep indices with d != 1, ordered: infinite first, then descending.
    std::vector<std::size_t> keep;
    for (std::size_t i = 0; i < n_gens; ++i)
        if (d[i] != 1) keep.push_back(i);
    std::stable_sort(keep.begin(), keep.end(),
                     [&](std::size_t i, std::size_t j) { return factor_before(d[i], d[j]); });

    FinGenAbGroup g;
    g.n_in_ = n_gens;
    g.inv_.reserve(keep.size());
    for (auto i : keep) g.inv_.push_back(d[i]);
    g.to_std_ = IntMatrix(keep.size(), n_gens);
    for (std::size_t r = 0; r < keep.size(); ++r)
        for (std::size_t j = 0; j < n_gens; ++j) g.to_std_(r, j) = s.u(keep[r], j);
    IntMatrix uinv = inverse_unimodular(s.u);
    g.from_std_ = IntMatrix(n_gens, keep.size());
    for (std::size_t j = 0; j < keep.size(); ++j)
        for (std::size_t i = 0; i < n_gens; ++i) g.from_std_(i, j) = uinv(i, keep[j]);
    return g;
}

FinGenAbGroup FinGenAbGroup::cyclic_product(const std::vector<Int>& factors) {
    // direct product in the GIVEN order: input generators coincide with
    // standard generators, so positional indexing is stable for callers that
    // assemble composite groups (the canonical divisibility chain is not
    // enforced here)
    for (auto& d : factors)
        if (d == 1) throw invalid_input("cyclic_product: drop trivial factors first");
    FinGenAbGroup g;
    g.n_in_ = factors.size();
    g.inv_ = factors;
    g.to_std_ = IntMatrix::identity(factors.size());
    g.from_std_ = IntMatrix::identity(factors.size());
    return g;
}

Int FinGenAbGroup::exponent() const {
    Int e = 1;
    for (auto& d : inv_) {
        if (d == 0) return 0;
        e = lcm(e, d);
    }
    return e;
}

bool FinGenAbGroup::is_finite() const {
    return std::all_of(inv_.begin(), inv_.end(), [](const Int& d) { return d != 0; });
}

Int FinGenAbGroup::order() const {
    Int p = product_or_zero(inv_);
    if (p == 0) throw invalid_input("order of infinite group");
    return p;
}

std::vector<Int> FinGenAbGroup::reduce(std::vector<Int> coords) const {
    if (coords.size() != inv_.size()) throw invalid_input("reduce: coordinate length");
    for (std::size_t i = 0; i < inv_.size(); ++i)
        if (inv_[i] != 0) coords[i] = fmod(coords[i], inv_[i]);
    return coords;
}

std::vector<Int> FinGenAbGroup::dlog_word(const std::vector<Int>& word) const {
    return reduce(to_std_.mul_vec(word));
}

std::vector<Int> FinGenAbGroup::std_gen_word(std::size_t i) const {
    return from_std_.column(i);
}

IntMatrix FinGenAbGroup::relation_columns() const {
    std::vector<std::vector<Int>> cols;
    for (std::size_t i = 0; i < inv_.size(); ++i) {
        if (inv_[i] == 0) continue;
        std::vector<Int> c(inv_.size(), Int(0));
        c[i] = inv_[i];
        cols.push_back(c);
    }
    return IntMatrix::from_columns(inv_.size(), cols);
}

Int SubgroupHNF::order() const {
    Int ambient = product_or_zero(ambient_inv);
    if (ambient == 0) throw invalid_input("SubgroupHNF::order: infinite ambient");
    if (basis.rows() != basis.cols()) throw internal_error("subgroup basis not square");
    Int d = basis.det();
    if (d < 0) d = -d;
    // |S| = |G| / [Z^n : L]
    return exact_div(ambient, d);
}

std::vector<Int> SubgroupHNF::invariants() const {
    // S = L / R where L = span(basis), R = relation lattice. Write generators
    // of L in terms of themselves modulo R: present on the columns of basis
    // with relations pulled back through them.
    // Solve basis * X = relation columns; X integral since R <= L.
    std::size_t n = ambient_inv.size();
    std::vector<std::vector<Int>> relcols;
    for (std::size_t i = 0; i < n; ++i) {
        if (ambient_inv[i] == 0) continue;
        std::vector<Int> c(n, Int(0));
        c[i] = ambient_inv[i];
        std::vector<Int> x;
        if (!hnf_contains(basis, c, &x)) throw internal_error("subgroup misses relation lattice");
        relcols.push_back(x);
    }
    IntMatrix rel = IntMatrix::from_columns(basis.cols(), relcols);
    return FinGenAbGroup::from_relations(basis.cols(), rel).invariants();
}

bool SubgroupHNF::contains(const std::vector<Int>& coords) const {
    return hnf_contains(basis, coords);
}

SubgroupHNF subgroup_from_generators(const FinGenAbGroup& g,
                                     const std::vector<std::vector<Int>>& gens) {
    std::size_t n = g.rank();
    IntMatrix m = IntMatrix::from_columns(n, gens).hstack(g.relation_columns());
    IntMatrix h = g.is_finite() && !g.invariants().empty() ? hnf_with_modulus(m, g.exponent())
                                                           : hnf(m);
    return SubgroupHNF{g.invariants(), h};
}

SubgroupHNF trivial_subgroup(const FinGenAbGroup& g) {
    return subgroup_from_generators(g, {});
}

SubgroupHNF full_subgroup(const FinGenAbGroup& g) {
    std::vector<std::vector<Int>> gens;
    for (std::size_t i = 0; i < g.rank(); ++i) {
        std::vector<Int> e(g.rank(), Int(0));
        e[i] = 1;
        gens.push_back(e);
    }
    return subgroup_from_generators(g, gens);
}

std::vector<Int> GroupMorphism::apply(const std::vector<Int>& x) const {
    return codomain.reduce(matrix.mul_vec(x));
}

bool GroupMorphism::is_well_defined() const {
    for (std::size_t i = 0; i < domain.rank(); ++i) {
        const Int& d = domain.invariants()[i];
        if (d == 0) continue;
        std::vector<Int> x(domain.rank(), Int(0));
        x[i] = d;
        auto y = apply(x);
        for (auto& c : y)
            if (c != 0) return false;
    }
    return true;
}

GroupMorphism compose(const GroupMorphism& g, const GroupMorphism& f) {
    return GroupMorphism{f.domain, g.codomain, g.matrix * f.matrix};
}

SubgroupHNF inverse_image(const GroupMorphism& f, const SubgroupHNF& s) {
    std::size_t dr = f.domain.rank();
    // x is in the preimage iff M x lies in span(s.basis) (which already
    // contains the codomain relations). Kernel of [M | -s.basis] projected to
    // the x block, plus the domain relations.
    IntMatrix stacked = f.matrix.hstack(-s.basis);
    IntMatrix ker = kernel_basis(stacked);
    std::vector<std::vector<Int>> gens;
    for (std::size_t j = 0; j < ker.cols(); ++j) {
        std::vector<Int> x(dr);
        for (std::size_t i = 0; i < dr; ++i) x[i] = ker(i, j);
        gens.push_back(x);
    }
    return subgroup_from_generators(f.domain, gens);
}

SubgroupHNF morphism_kernel(const GroupMorphism& f) {
    return inverse_image(f, trivial_subgroup(f.codomain));
}

SubgroupHNF morphism_image(const GroupMorphism& f) {
    std::vector<std::vector<Int>> gens;
    for (std::size_t j = 0; j < f.matrix.cols(); ++j) gens.push_back(f.matrix.column(j));
    return subgroup_from_generators(f.codomain, gens);
}

FinGenAbGroup quotient_group(const FinGenAbGroup& g, const SubgroupHNF& s) {
    if (s.ambient_inv != g.invariants()) throw invalid_input("quotient_group: ambient mismatch");
    return FinGenAbGroup::from_relations(g.rank(), s.basis);
}

SubgroupHNF subgroup_intersection(const SubgroupHNF& s1, const SubgroupHNF& s2) {
    if (s1.ambient_inv != s2.ambient_inv)
        throw invalid_input("subgroup_intersection: ambient mismatch");
    std::size_t n = s1.ambient_inv.size();
    IntMatrix stacked = s1.basis.hstack(-s2.basis);
    IntMatrix ker = kernel_basis(stacked);
    // Columns (u, v) with B1 u = B2 v; the intersection lattice is B1 * u.
    std::vector<std::vector<Int>> gens;
    for (std::size_t j = 0; j < ker.cols(); ++j) {
        std::vector<Int> u(s1.basis.cols());
        for (std::size_t i = 0; i < u.size(); ++i) u[i] = ker(i, j);
        gens.push_back(s1.basis.mul_vec(u));
    }
    IntMatrix m = IntMatrix::from_columns(n, gens);
    Int expo = 1;
    for (auto& d : s1.ambient_inv) {
        if (d == 0) { expo = 0; break; }
        expo = lcm(expo, d);
    }
    IntMatrix h = expo > 0 ? hnf_with_modulus(m, expo) : hnf(m);
    return SubgroupHNF{s1.ambient_inv, h};
}

bool subgroup_leq(const SubgroupHNF& s1, const SubgroupHNF& s2) {
    return subgroup_intersection(s1, s2) == s1;
}

SubgroupHNF torsion_subgroup(const FinGenAbGroup& g, const Int& n) {
    GroupMorphism mul_n{g, g, IntMatrix::diagonal(std::vector<Int>(g.rank(), n))};
    return morphism_kernel(mul_n);
}

FinGenAbGroup extension_group(const FinGenAbGroup& a, const FinGenAbGroup& c,
                              const std::function<std::vector<Int>(std::size_t)>& cocycle) {
    std::size_t ra = a.rank(), rc = c.rank();
    // Generators: a_1..a_ra, b_1..b_rc. Relations:
    //   d^A_i a_i = 0, and d^C_j b_j = sum_i m_ij a_i with m_j = cocycle(j).
    std::vector<std::vector<Int>> cols;
    for (std::size_t i = 0; i < ra; ++i) {
        if (a.invariants()[i] == 0) continue;
        std::vector<Int> col(ra + rc, Int(0));
        col[i] = a.invariants()[i];
        cols.push_back(col);
    }
    for (std::size_t j = 0; j < rc; ++j) {
        const Int& dj = c.invariants()[j];
        if (dj == 0) throw invalid_input("extension_group: C must be finite");
        std::vector<Int> mj = cocycle(j);
        if (mj.size() != ra) throw invalid_input("extension_group: cocycle length");
        std::vector<Int> col(ra + rc, Int(0));
        for (std::size_t i = 0; i < ra; ++i) col[i] = -mj[i];
        col[ra + j] = dj;
        cols.push_back(col);
    }
    return FinGenAbGroup::from_relations(ra + rc, IntMatrix::from_columns(ra + rc, cols));
}

}  // namespace qcm
