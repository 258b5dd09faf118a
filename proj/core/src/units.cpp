#include "qcm/units.hpp"

namespace qcm {

namespace {

// Fundamental unit (u + v sqrt(D))/2 of the quadratic order of discriminant
// D > 0 via the continued fraction of (P0 + sqrt(D))/Q0 with Q0 = 2. At the
// step where Q returns to Q0 the convergent identity
//   G^2 - D B^2 = (-1)^(i+1) Q_{i+1} Q_0
// yields a solution of G^2 - D B^2 = +-4.
void pell_fundamental(const Int& d, Int& g_out, Int& b_out) {
    Int sq = isqrt(d);
    Int p0 = fmod(d, 2) == 1 ? Int(1) : Int(0);
    Int q0 = 2;
    Int p = p0, q = q0;
    Int a_prev = 1, a_cur;  // numerators A_{-1}=1, A_0 = a0
    Int b_prev = 0, b_cur;  // denominators B_{-1}=0, B_0 = 1
    Int a0 = fdiv(p + sq, q);
    a_cur = a0;
    b_cur = 1;
    for (int iter = 0; iter < 100000; ++iter) {
        p = a0 * q - p;
        q = exact_div(d - p * p, q);
        // convergent so far: A_i/B_i with the last computed a0
        Int g = q0 * a_cur - p0 * b_cur;
        Int t = g * g - d * b_cur * b_cur;
        if (t == 4 || t == -4) {
            g_out = g;
            b_out = b_cur;
            return;
        }
        a0 = fdiv(p + sq, q);
        Int a_next = a0 * a_cur + a_prev;
        Int b_next = a0 * b_cur + b_prev;
        a_prev = a_cur;
        a_cur = a_next;
        b_prev = b_cur;
        b_cur = b_next;
    }
    throw internal_error("pell_fundamental: period not found");
}

// |value of x at the smaller real root| > 1, exactly
bool abs_at_first_root_gt_one(const FieldElem& x) {
    auto sq = x * x - x.field()->one();
    return real_signs(sq)[0] > 0;
}

FieldElem normalize_unit(const FieldElem& u) {
    auto cands = {u, -u, u.inv(), -(u.inv())};
    for (const auto& c : cands) {
        if (!abs_at_first_root_gt_one(c)) continue;
        if (c.coords()[1] > 0) return c;
    }
    throw internal_error("normalize_unit: no candidate matched");
}

}  // namespace

UnitGroupData unit_group(const FieldPtr& f) {
    if (!f->is_totally_real()) throw invalid_input("unit_group: field not real quadratic");
    Int d = f->disc();
    Int g, b;
    pell_fundamental(d, g, b);
    // eps = (g + b sqrt(D))/2 with sqrt(D) = (2 alpha + a1)/t, t = index shift:
    // poly disc = a1^2 - 4 a0 = t^2 D
    Int pd = f->poly_disc();
    Int t2 = exact_div(pd, d);
    if (!is_square(t2)) throw internal_error("unit_group: disc mismatch");
    Int t = isqrt(t2);
    // eps = g/2 + (b/t)(2 alpha + a1)/2 = (g + a1 b / t)/2 + (b/t) alpha
    Rat bt(b, t);
    bt.canonicalize();
    Rat c0 = (Rat(g) + Rat(f->poly()[1]) * bt) / 2;
    auto eps = f->element({c0, bt});
    if (!eps.is_integral()) throw internal_error("unit_group: unit not integral");
    Rat nm = eps.norm();
    if (nm != 1 && nm != -1) throw internal_error("unit_group: norm not a unit");
    eps = normalize_unit(eps);

    UnitGroupData u;
    u.field = f;
    u.torsion_gen = -f->one();
    u.fundamental = eps;
    u.eps0 = eps;
    if (is_totally_positive(eps)) {
        u.eps0_plus = eps;
        u.eps0_plus_case = 0;
    } else if (is_totally_positive(-eps)) {
        u.eps0_plus = -eps;
        u.eps0_plus_case = 1;
    } else {
        u.eps0_plus = eps * eps;
        u.eps0_plus_case = 2;
    }
    return u;
}

UnitGroupData unit_group(const CMFieldPair& pair) {
    // torsion check: reject fields with roots of unity beyond +-1
    // (i in K iff -1/alpha0 is a square in K0; zeta_6 iff -3/alpha0 or -3 is;
    //  zeta_5 iff K = Q(zeta_5), disc 125)
    if (pair.K->disc() == 125) throw invalid_input("unit_group: Q(zeta_5) unsupported");
    auto alpha0 = pair.K0->gen();
    auto minus_one = -pair.K0->one();
    auto minus_three = pair.K0->one().scale(Rat(-3));
    for (auto y : {minus_one, minus_three}) {
        if (has_sqrt_in_quadratic(y) || has_sqrt_in_quadratic(y / alpha0))
            throw invalid_input("unit_group: extra roots of unity unsupported");
    }
    UnitGroupData u0 = unit_group(pair.K0);
    UnitGroupData u;
    u.field = pair.K;
    u.torsion_gen = -pair.K->one();
    u.eps0 = u0.eps0;
    u.eps0_plus = u0.eps0_plus;
    u.eps0_plus_case = u0.eps0_plus_case;
    // unit index: 2 iff eps0 or -eps0 has a square root in K
    FieldElem root;
    for (auto y : {u0.eps0, -u0.eps0}) {
        if (has_sqrt_in_quadratic(y, &root)) {
            u.fundamental = pair.to_quartic(root);
            u.unit_index_two = true;
            return u;
        }
        FieldElem vroot;
        if (has_sqrt_in_quadratic(y / alpha0, &vroot)) {
            // sqrt = vroot * alpha
            u.fundamental = pair.to_quartic(vroot) * pair.K->gen();
            u.unit_index_two = true;
            return u;
        }
    }
    u.fundamental = pair.to_quartic(u0.eps0);
    u.unit_index_two = false;
    return u;
}

}  // namespace qcm
