#include "qcm/ideal.hpp"

#include <algorithm>
#include <map>

namespace qcm {

namespace {

// integral coordinates of x as integer vector over common denominator
std::pair<std::vector<Int>, Int> int_coords_scaled(const FieldElem& x) {
    auto q = x.integral_coords();
    Int d = 1;
    for (auto& c : q) d = lcm(d, c.get_den());
    std::vector<Int> v(q.size());
    for (std::size_t i = 0; i < q.size(); ++i)
        v[i] = q[i].get_num() * exact_div(d, q[i].get_den());
    return {v, d};
}

}  // namespace

void FracIdeal::canonicalize() {
    if (num_.cols() == 0) {
        den_ = 1;
        return;
    }
    num_ = hnf(num_);
    Int g = den_;
    for (std::size_t i = 0; i < num_.rows(); ++i)
        for (std::size_t j = 0; j < num_.cols(); ++j) g = gcd(g, num_(i, j));
    if (g > 1) {
        for (std::size_t i = 0; i < num_.rows(); ++i)
            for (std::size_t j = 0; j < num_.cols(); ++j) num_(i, j) = exact_div(num_(i, j), g);
        den_ = exact_div(den_, g);
    }
}

FracIdeal FracIdeal::whole_ring(const FieldPtr& f) {
    FracIdeal a;
    a.field_ = f;
    a.num_ = IntMatrix::identity(f->degree());
    a.den_ = 1;
    return a;
}

FracIdeal FracIdeal::from_lattice(const FieldPtr& f, const IntMatrix& columns, const Int& den) {
    FracIdeal a;
    a.field_ = f;
    a.num_ = columns;
    a.den_ = den;
    a.canonicalize();
    if (!a.is_zero() && a.num_.cols() != f->degree())
        throw invalid_input("FracIdeal: lattice not full rank");
    return a;
}

FracIdeal FracIdeal::from_generators(const FieldPtr& f, const std::vector<FieldElem>& gens) {
    std::size_t n = f->degree();
    // columns: gen * basis_j for all gens and j
    Int den = 1;
    std::vector<std::pair<std::vector<Int>, Int>> gcoords;
    for (auto& g : gens) {
        if (g.is_zero()) continue;
        auto [v, d] = int_coords_scaled(g);
        gcoords.push_back({v, d});
        den = lcm(den, d);
    }
    if (gcoords.empty()) {
        FracIdeal a;
        a.field_ = f;
        a.num_ = IntMatrix(n, 0);
        return a;
    }
    std::vector<std::vector<Int>> cols;
    for (auto& [v, d] : gcoords) {
        Int scale = exact_div(den, d);
        // products v * basis_j via the multiplication table
        for (std::size_t j = 0; j < n; ++j) {
            std::vector<Int> col(n, Int(0));
            for (std::size_t i = 0; i < n; ++i) {
                if (v[i] == 0) continue;
                const auto& prod = f->basis_product(i, j);
                for (std::size_t k = 0; k < n; ++k) col[k] += v[i] * prod[k];
            }
            for (auto& x : col) x *= scale;
            cols.push_back(col);
        }
    }
    return from_lattice(f, IntMatrix::from_columns(n, cols), den);
}

FracIdeal FracIdeal::principal(const FieldElem& x) {
    return from_generators(x.field(), {x});
}

FracIdeal FracIdeal::two_element(const FieldPtr& f, const Int& a, const FieldElem& beta) {
    return from_generators(f, {f->one().scale(Rat(a)), beta});
}

bool FracIdeal::operator==(const FracIdeal& o) const {
    return field_ == o.field_ && den_ == o.den_ && num_ == o.num_;
}

bool FracIdeal::is_whole_ring() const {
    return den_ == 1 && num_ == IntMatrix::identity(field_->degree());
}

FracIdeal FracIdeal::operator*(const FracIdeal& o) const {
    if (field_ != o.field_) throw invalid_input("FracIdeal: field mismatch");
    std::size_t n = field_->degree();
    if (is_zero() || o.is_zero()) return from_lattice(field_, IntMatrix(n, 0), 1);
    std::vector<std::vector<Int>> cols;
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b) {
            std::vector<Int> col(n, Int(0));
            for (std::size_t i = 0; i < n; ++i) {
                if (num_(i, a) == 0) continue;
                for (std::size_t j = 0; j < n; ++j) {
                    if (o.num_(j, b) == 0) continue;
                    const auto& prod = field_->basis_product(i, j);
                    Int c = num_(i, a) * o.num_(j, b);
                    for (std::size_t k = 0; k < n; ++k) col[k] += c * prod[k];
                }
            }
            cols.push_back(col);
        }
    return from_lattice(field_, IntMatrix::from_columns(n, cols), den_ * o.den_);
}

FracIdeal FracIdeal::operator+(const FracIdeal& o) const {
    if (field_ != o.field_) throw invalid_input("FracIdeal: field mismatch");
    Int den = lcm(den_, o.den_);
    IntMatrix m1 = num_.mul_scalar(exact_div(den, den_));
    IntMatrix m2 = o.num_.mul_scalar(exact_div(den, o.den_));
    return from_lattice(field_, m1.hstack(m2), den);
}

Rat FracIdeal::norm() const {
    if (is_zero()) return Rat(0);
    Int d = num_.det();
    if (d < 0) d = -d;
    Rat r(d, pow_int(den_, static_cast<unsigned long>(field_->degree())));
    r.canonicalize();
    return r;
}

FracIdeal FracIdeal::inverse() const {
    if (is_zero()) throw invalid_input("FracIdeal::inverse: zero ideal");
    std::size_t n = field_->degree();
    // reduce to an integral ideal: this = (1/den) * B with B integral
    FracIdeal b = from_lattice(field_, num_, 1);
    Rat nb = b.norm();
    Int nn = nb.get_num();  // integral ideal: denominator 1
    // b^{-1} = (1/nn) { y in O : y * b subset nn O }
    // condition: for each basis column g of b, (mult by y) g == 0 mod nn
    std::vector<std::vector<Int>> stacked;  // rows of the condition matrix
    for (std::size_t c = 0; c < n; ++c) {
        for (std::size_t r = 0; r < n; ++r) stacked.emplace_back(n);
        std::size_t base = stacked.size() - n;
        for (std::size_t j = 0; j < n; ++j) {
            // y = e_j times column c of b
            std::vector<Int> col(n, Int(0));
            for (std::size_t i = 0; i < n; ++i) {
                if (b.num_(i, c) == 0) continue;
                const auto& prod = field_->basis_product(j, i);
                for (std::size_t k = 0; k < n; ++k) col[k] += b.num_(i, c) * prod[k];
            }
            for (std::size_t r = 0; r < n; ++r) stacked[base + r][j] = fmod(col[r], nn);
        }
    }
    IntMatrix cond(stacked.size(), n);
    for (std::size_t i = 0; i < stacked.size(); ++i)
        for (std::size_t j = 0; j < n; ++j) cond(i, j) = stacked[i][j];
    // kernel mod nn: columns y with cond * y == 0 (mod nn)
    IntMatrix big = cond.hstack(IntMatrix::diagonal(std::vector<Int>(stacked.size(), nn)));
    IntMatrix ker = kernel_basis(big);
    std::vector<std::vector<Int>> ycols;
    for (std::size_t j = 0; j < ker.cols(); ++j) {
        std::vector<Int> y(n);
        for (std::size_t i = 0; i < n; ++i) y[i] = ker(i, j);
        ycols.push_back(y);
    }
    IntMatrix ymat = IntMatrix::from_columns(n, ycols);
    IntMatrix hy = hnf_with_modulus(ymat, nn);
    // result = (den / nn) * lattice(hy)
    FracIdeal inv = from_lattice(field_, hy.mul_scalar(den_), nn);
    return inv;
}

FracIdeal FracIdeal::pow(long e) const {
    FracIdeal base = e < 0 ? inverse() : *this;
    unsigned long k = e < 0 ? -static_cast<unsigned long>(e) : e;
    FracIdeal acc = whole_ring(field_);
    while (k) {
        if (k & 1) acc = acc * base;
        base = base * base;
        k >>= 1;
    }
    return acc;
}

FracIdeal FracIdeal::scaled(const Rat& c) const {
    if (c == 0) return from_lattice(field_, IntMatrix(field_->degree(), 0), 1);
    Rat cc = c < 0 ? Rat(-c) : c;
    return from_lattice(field_, num_.mul_scalar(cc.get_num()), den_ * cc.get_den());
}

bool FracIdeal::contains(const FieldElem& x) const {
    if (x.is_zero()) return true;
    if (is_zero()) return false;
    auto [v, d] = int_coords_scaled(x);
    // x in (1/den) L  <=>  den * x in L; den*x has coordinates den*v/d
    for (auto& c : v) {
        c *= den_;
        if (!divides(d, c)) return false;
        c = exact_div(c, d);
    }
    return hnf_contains(num_, v);
}

bool FracIdeal::contains_lattice(const FracIdeal& o) const {
    if (o.is_zero()) return true;
    // o subset this <=> den * o.num / o.den columns in lattice num
    for (std::size_t j = 0; j < o.num_.cols(); ++j) {
        auto col = o.num_.column(j);
        for (auto& c : col) c *= den_;
        bool ok = true;
        for (auto& c : col) {
            if (!divides(o.den_, c)) { ok = false; break; }
            c = exact_div(c, o.den_);
        }
        if (!ok || !hnf_contains(num_, col)) return false;
    }
    return true;
}

std::vector<FieldElem> FracIdeal::basis_elements() const {
    std::vector<FieldElem> out;
    for (std::size_t j = 0; j < num_.cols(); ++j) out.push_back(basis_element(j));
    return out;
}

FieldElem FracIdeal::basis_element(std::size_t j) const {
    std::vector<Rat> c(field_->degree());
    for (std::size_t i = 0; i < field_->degree(); ++i) {
        c[i] = Rat(num_(i, j), den_);
        c[i].canonicalize();
    }
    return field_->from_integral_coords(c);
}

Int FracIdeal::min_integer() const {
    if (!is_integral()) throw invalid_input("min_integer: fractional ideal");
    // rational integers in the lattice: multiples of the first pivot (the
    // column with pivot in row 0 is (d,0,..,0) since basis element 0 is 1)
    for (std::size_t j = 0; j < num_.cols(); ++j) {
        bool only_first = num_(0, j) != 0;
        for (std::size_t i = 1; i < num_.rows() && only_first; ++i)
            if (num_(i, j) != 0) only_first = false;
        if (only_first) return num_(0, j);
    }
    throw internal_error("min_integer: no rational column");
}

bool FracIdeal::coprime_to(const Int& m) const {
    if (!is_integral()) return false;
    return gcd(min_integer(), m) == 1;
}

// ---------------------------------------------------------------------------
// prime decomposition

namespace {

struct PolyModP {
    // monic factors with multiplicity of the defining polynomial mod p,
    // each factor as coefficient vector c0..c_{deg-1} (monic implied)
    std::vector<std::pair<std::vector<Int>, unsigned>> factors;
};

Int mod_inv(const Int& a, const Int& p) { return pow_mod(fmod(a, p), p - 2, p); }

// factorization of x^2 + a1 x + a0 mod odd p (or p = 2 by scan)
std::vector<std::pair<std::vector<Int>, unsigned>> factor_quadratic_mod(const Int& a1,
                                                                        const Int& a0,
                                                                        const Int& p) {
    if (p == 2) {
        std::vector<Int> roots;
        for (Int r = 0; r < 2; ++r)
            if (fmod(r * r + a1 * r + a0, 2) == 0) roots.push_back(r);
        std::vector<std::pair<std::vector<Int>, unsigned>> out;
        if (roots.size() == 2)
            out = {{{fmod(-roots[0], p)}, 1}, {{fmod(-roots[1], p)}, 1}};
        else if (roots.size() == 1)
            out = {{{fmod(-roots[0], p)}, 2}};  // one root over F_2 means a double root
        else
            out = {{{fmod(a0, p), fmod(a1, p)}, 1}};
        return out;
    }
    Int d = a1 * a1 - 4 * a0;
    int k = kronecker(d, p);
    if (fmod(d, p) == 0) {
        Int r = fmod(-a1 * mod_inv(2, p), p);
        return {{{fmod(-r, p)}, 2}};
    }
    if (k == 1) {
        Int s = sqrt_mod_prime(d, p);
        Int inv2 = mod_inv(2, p);
        Int r1 = fmod((-a1 + s) * inv2, p), r2 = fmod((-a1 - s) * inv2, p);
        std::vector<std::pair<std::vector<Int>, unsigned>> out{{{fmod(-r1, p)}, 1},
                                                               {{fmod(-r2, p)}, 1}};
        return out;
    }
    return {{{fmod(a0, p), fmod(a1, p)}, 1}};
}

// f = x^4 + A x^2 + B mod p via the quadratic resolvent z^2 + A z + B
std::vector<std::pair<std::vector<Int>, unsigned>> factor_even_quartic_mod(const Int& A,
                                                                           const Int& B,
                                                                           const Int& p) {
    std::vector<std::pair<std::vector<Int>, unsigned>> out;
    if (p == 2) {
        // possible distinct monic irreducible polys mod 2 of degree 1,2:
        // x, x+1, x^2+x+1
        std::map<std::vector<Int>, unsigned> mult;
        std::vector<Int> rem{fmod(B, 2), Int(0), fmod(A, 2), Int(0), Int(1)};
        auto divide = [&](std::vector<Int> g) {
            // try dividing rem by monic g repeatedly
            for (;;) {
                std::vector<Int> r = rem;
                long dr = long(r.size()) - 1;
                while (dr >= 0 && r[dr] == 0) --dr;
                long dg = long(g.size()) - 1;
                if (dr < dg) break;
                std::vector<Int> quo(dr - dg + 1, Int(0));
                bool exact = true;
                for (long i = dr; i >= dg; --i) {
                    long ii = i;
                    Int lead = fmod(r[ii], 2);
                    if (lead == 0) continue;
                    quo[ii - dg] = lead;
                    for (long j = 0; j <= dg; ++j) r[ii - dg + j] = fmod(r[ii - dg + j] - lead * g[j], 2);
                }
                for (auto& c : r) if (fmod(c, 2) != 0) exact = false;
                if (!exact) break;
                std::vector<Int> key(g.begin(), g.end() - 1);
                ++mult[key];
                rem = quo;
                long drem = long(rem.size()) - 1;
                while (drem >= 0 && rem[drem] == 0) --drem;
                if (drem <= 0) break;
            }
        };
        divide({Int(0), Int(1)});            // x
        divide({Int(1), Int(1)});            // x + 1
        divide({Int(1), Int(1), Int(1)});    // x^2 + x + 1
        // anything left is an irreducible factor of degree >= 2 (x^2+x+1 was
        // handled; degree 4 irreducible or product of two equal quadratics
        // already extracted). Remaining degree:
        long dr = long(rem.size()) - 1;
        while (dr >= 0 && rem[dr] == 0) --dr;
        if (dr > 0) {
            std::vector<Int> key(rem.begin(), rem.begin() + dr);
            for (auto& c : key) c = fmod(c, 2);
            ++mult[key];
        }
        for (auto& [g, e] : mult) out.push_back({g, e});
        return out;
    }
    auto zfac = factor_quadratic_mod(A, B, p);
    for (auto& [g, e] : zfac) {
        if (g.size() == 2) {
            // irreducible quadratic z^2 + g1 z + g0: x^4 + g1 x^2 + g0 stays
            // irreducible iff ... it factors into two quadratics iff some
            // x^2 - t divides mod p with t a root in F_{p^2} mapping down; the
            // classical criterion: factors as product of two quadratics
            // (x^2 + u x + v)(x^2 - u x + v) or (x^2+v)(x^2+v') patterns.
            // Over F_p, f(x) = N(z - x^2)-style: f irreducible over F_p iff
            // z^2+g1z+g0 irreducible and (x^2 - z) irreducible over F_{p^2},
            // i.e. z is a non-square in F_{p^2}. z nonsquare in F_{p^2} iff
            // norm(z) = g0 is a nonsquare in F_p... norm(z) = z^(p+1) = g0:
            // z square in F_{p^2} iff z^((p^2-1)/2) = 1 iff g0^((p-1)/2) = 1.
            if (kronecker(g[0], p) == 1) {
                // splits into two conjugate quadratics over F_p: find them:
                // (x^2+ux+v)(x^2-ux+v) = x^4 + (2v - u^2) x^2 + v^2:
                // v^2 = B, 2v - u^2 = A mod p
                Int v = sqrt_mod_prime(g[0], p);
                for (Int vv : {v, Int(fmod(-v, p))}) {
                    Int u2 = fmod(2 * vv - A, p);
                    if (u2 == 0) {
                        // (x^2 + vv)^2 would force e=2; that contradicts
                        // separability of the quadratic part here; try other v
                        continue;
                    }
                    if (kronecker(u2, p) == 1) {
                        Int u = sqrt_mod_prime(u2, p);
                        out.push_back({{vv, u}, 1});
                        out.push_back({{vv, Int(fmod(-u, p))}, 1});
                        return out;
                    }
                }
                // fall through: try the (x^2+c)(x^2+c') with c c' = B, c+c' = A
                // which is the split resolvent case; unreachable here
                throw internal_error("factor_even_quartic_mod: quadratic split not found");
            }
            out.push_back({{fmod(B, p), Int(0), fmod(A, p), Int(0)}, 1});
            return out;
        }
    }
    // resolvent has roots z_i (possibly repeated): f = prod (x^2 - t_i)^{e_i}
    for (auto& [g, e] : zfac) {
        if (g.size() != 1) continue;
        Int t = fmod(-g[0], p);  // root of resolvent: x^2 = t... z root: z = -g0
        // factor x^2 - t mod p
        if (t == 0) {
            out.push_back({{Int(0)}, 2 * e});
        } else if (kronecker(t, p) == 1) {
            Int s = sqrt_mod_prime(t, p);
            out.push_back({{fmod(-s, p)}, e});
            out.push_back({{fmod(s, p)}, e});
        } else {
            out.push_back({{fmod(-t, p), Int(0)}, e});
        }
    }
    return out;
}

FieldElem poly_at_gen(const FieldPtr& f, const std::vector<Int>& monic_tail) {
    // element g(alpha) where g = x^deg + tail; for deg = n substitute the
    // defining relation, so g(alpha) = (tail - poly_tail)(alpha)
    std::size_t n = f->degree();
    std::size_t d = monic_tail.size();
    std::vector<Rat> c(n, Rat(0));
    if (d < n) {
        for (std::size_t i = 0; i < d; ++i) c[i] = Rat(monic_tail[i]);
        c[d] = 1;
    } else {
        for (std::size_t i = 0; i < n; ++i) c[i] = Rat(monic_tail[i] - f->poly()[i]);
    }
    return f->element(c);
}

std::vector<PrimeIdeal> decompose_via_poly(const FieldPtr& f, const Int& p) {
    std::vector<std::pair<std::vector<Int>, unsigned>> fac;
    if (f->degree() == 2)
        fac = factor_quadratic_mod(f->poly()[1], f->poly()[0], p);
    else
        fac = factor_even_quartic_mod(f->poly()[2], f->poly()[0], p);
    std::vector<PrimeIdeal> out;
    for (auto& [g, e] : fac) {
        PrimeIdeal pr;
        pr.p = p;
        pr.e = e;
        pr.f = static_cast<unsigned>(g.size());
        pr.second_gen = poly_at_gen(f, g);
        pr.ideal = FracIdeal::two_element(f, p, pr.second_gen);
        out.push_back(std::move(pr));
    }
    return out;
}

// primes above p when p divides the index: split O/pO by scanning idempotents
std::vector<PrimeIdeal> decompose_index_prime(const FieldPtr& f, const Int& p) {
    std::size_t n = f->degree();
    if (pow_int(p, static_cast<unsigned long>(n)) > 100000)
        throw resource_error("prime decomposition: index prime too large for algebra scan");
    long pl = static_cast<long>(p.get_si());
    long total = 1;
    for (std::size_t i = 0; i < n; ++i) total *= pl;

    auto mul_mod = [&](const std::vector<Int>& a, const std::vector<Int>& b) {
        std::vector<Int> c(n, Int(0));
        for (std::size_t i = 0; i < n; ++i) {
            if (a[i] == 0) continue;
            for (std::size_t j = 0; j < n; ++j) {
                if (b[j] == 0) continue;
                const auto& prod = f->basis_product(i, j);
                for (std::size_t k = 0; k < n; ++k) c[k] += a[i] * b[j] * prod[k];
            }
        }
        for (auto& x : c) x = fmod(x, p);
        return c;
    };
    auto decode = [&](long idx) {
        std::vector<Int> v(n);
        for (std::size_t i = 0; i < n; ++i) {
            v[i] = idx % pl;
            idx /= pl;
        }
        return v;
    };
    auto is_zero_vec = [&](const std::vector<Int>& v) {
        return std::all_of(v.begin(), v.end(), [](const Int& x) { return x == 0; });
    };

    // all idempotents
    std::vector<std::vector<Int>> idem;
    for (long idx = 0; idx < total; ++idx) {
        auto v = decode(idx);
        auto sq = mul_mod(v, v);
        if (sq == v && !is_zero_vec(v)) idem.push_back(v);
    }
    // primitive idempotents: e with no decomposition e = e1 + e2, e1 e2 = 0,
    // both nonzero idempotent; equivalently e is not the sum of two orthogonal
    // nonzero idempotents. Test: e primitive iff the only idempotents f with
    // ef = f are 0 and e.
    std::vector<std::vector<Int>> prim;
    for (auto& e : idem) {
        bool primitive = true;
        for (auto& g : idem) {
            if (g == e) continue;
            auto eg = mul_mod(e, g);
            if (eg == g) {
                primitive = false;
                break;
            }
        }
        if (primitive) prim.push_back(e);
    }
    // each primitive idempotent e_i gives a local factor A_i = e_i A; the
    // prime is the preimage of { x : e_i x lies in rad(A_i) + sum_{j!=i} A_j }
    std::vector<PrimeIdeal> out;
    for (auto& e : prim) {
        // lattice of x in O with (e x)^(p^m) in p O  (radical condition inside
        // the factor; components in other factors are killed by e)
        unsigned long m_exp = 1;
        Int pm = p;
        while (pm < Int(n)) {
            pm *= p;
            ++m_exp;
        }
        std::vector<std::vector<Int>> cols;
        long dim_local = 0;
        // dim of A_i: rank of x -> e x
        std::vector<std::vector<Int>> image_basis;
        for (long idx = 0; idx < total; ++idx) {
            auto v = decode(idx);
            auto ev = mul_mod(e, v);
            // nilpotency of ev inside A: compute ev^(p^m)
            auto cur = ev;
            for (unsigned long s = 0; s < m_exp; ++s) {
                // cur^p by repeated multiplication (p small)
                auto acc = cur;
                for (Int t = 1; t < p; ++t) acc = mul_mod(acc, cur);
                cur = acc;
            }
            if (is_zero_vec(cur)) cols.push_back(v);  // x with e*x nilpotent
        }
        IntMatrix mat = IntMatrix::from_columns(n, cols);
        IntMatrix h = hnf_with_modulus(mat, p);
        PrimeIdeal pr;
        pr.p = p;
        pr.ideal = FracIdeal::from_lattice(f, h, 1);
        Rat nm = pr.ideal.norm();
        Int nmz = nm.get_num();
        unsigned fdeg = 0;
        Int tmp = nmz;
        while (tmp > 1) {
            tmp = exact_div(tmp, p);
            ++fdeg;
        }
        pr.f = fdeg;
        // two-element form: search small combinations of the lattice basis
        // for beta with (p, beta) = prime
        bool found = false;
        for (long tries = 0; tries < (1 << (2 * n)) && !found; ++tries) {
            std::vector<Rat> c(n, Rat(0));
            long t = tries;
            for (std::size_t i = 0; i < n; ++i) {
                c[i] = Rat((t % 4) - 1);
                t /= 4;
            }
            std::vector<Rat> coords(n, Rat(0));
            for (std::size_t j = 0; j < n; ++j)
                if (c[j] != 0)
                    for (std::size_t i = 0; i < n; ++i) coords[i] += c[j] * Rat(h(i, j));
            auto beta = f->from_integral_coords(coords);
            if (beta.is_zero()) continue;
            if (FracIdeal::two_element(f, p, beta) == pr.ideal) {
                pr.second_gen = beta;
                found = true;
            }
        }
        if (!found) throw internal_error("decompose_index_prime: no two-element form found");
        out.push_back(std::move(pr));
    }
    // ramification from sum e_i f_i = n within the p O factorization
    // e_i = dim(A_i)/f_i with dim A_i read from norms of radical quotients:
    // use valuations instead: e_i = v_{P_i}(pO)
    auto pid = FracIdeal::principal(f->one().scale(Rat(p)));
    for (auto& pr : out) pr.e = static_cast<unsigned>(valuation(pid, pr));
    return out;
}

}  // namespace

std::vector<PrimeIdeal> prime_decomposition(const FieldPtr& f, const Int& p) {
    if (!is_probable_prime(p)) throw invalid_input("prime_decomposition: p not prime");
    std::vector<PrimeIdeal> out;
    if (divides(p, f->index()))
        out = decompose_index_prime(f, p);
    else
        out = decompose_via_poly(f, p);
    // deterministic order: by residue degree, then HNF lexicographic
    std::sort(out.begin(), out.end(), [](const PrimeIdeal& a, const PrimeIdeal& b) {
        if (a.f != b.f) return a.f < b.f;
        const IntMatrix &ma = a.ideal.num(), &mb = b.ideal.num();
        for (std::size_t i = 0; i < ma.rows(); ++i)
            for (std::size_t j = 0; j < ma.cols(); ++j)
                if (ma(i, j) != mb(i, j)) return ma(i, j) < mb(i, j);
        return false;
    });
    // sanity: sum e f = n and product of P^e = pO
    unsigned total = 0;
    FracIdeal prod = FracIdeal::whole_ring(f);
    for (auto& pr : out) {
        total += pr.e * pr.f;
        prod = prod * pr.ideal.pow(pr.e);
    }
    if (total != f->degree() || !(prod == FracIdeal::principal(f->one().scale(Rat(p)))))
        throw internal_error("prime_decomposition: certificate failed");
    return out;
}

long valuation(const FracIdeal& a, const PrimeIdeal& prime) {
    if (a.is_zero()) throw invalid_input("valuation: zero ideal");
    // scale to integral: a = b / d with b integral; v(a) = v(b) - d's valuation
    FracIdeal b = FracIdeal::from_lattice(a.field(), a.num(), 1);
    long v = 0;
    // v(den) along prime: den * O
    if (a.den() != 1) {
        FracIdeal dd = FracIdeal::principal(a.field()->one().scale(Rat(a.den())));
        v -= valuation(dd, prime);
    }
    FracIdeal pinv = prime.ideal.inverse();
    FracIdeal cur = b;
    while (cur.is_integral() && prime.ideal.contains_lattice(cur)) {
        cur = cur * pinv;
        ++v;
    }
    return v;
}

FracIdeal relative_norm_ideal(const CMFieldPair& pair, const FracIdeal& a) {
    std::size_t n = pair.K->degree();
    std::vector<FieldElem> cgens;
    for (auto& b : a.basis_elements()) cgens.push_back(b.conjugate());
    FracIdeal ac = FracIdeal::from_generators(pair.K, cgens);
    FracIdeal prod = a * ac;  // descends to K0 as an O_K-ideal
    // K0 lattice inside K: columns = integral K-coordinates of the O_K0 basis
    // (integral elements, so the columns are integer vectors)
    std::vector<std::vector<Int>> k0cols;
    for (std::size_t i = 0; i < 2; ++i) {
        std::vector<Int> ic(2, Int(0));
        ic[i] = 1;
        auto [v, d] = int_coords_scaled(pair.to_quartic(pair.K0->from_integral_coords(ic)));
        if (d != 1) throw internal_error("relative_norm_ideal: subfield basis not integral");
        k0cols.push_back(v);
    }
    // x in prod and x in K0: den*x is integral, so den*x = K0emb * w with w
    // integral; L u = K0emb * w, the kernel gives w, and x = (emb w)/den
    IntMatrix km = IntMatrix::from_columns(n, k0cols);
    IntMatrix stacked = prod.num().hstack(-km);
    IntMatrix ker = kernel_basis(stacked);
    std::vector<std::vector<Int>> k0coords;
    for (std::size_t j = 0; j < ker.cols(); ++j) {
        std::vector<Int> w(2);
        for (std::size_t i = 0; i < 2; ++i) w[i] = ker(prod.num().cols() + i, j);
        k0coords.push_back(w);
    }
    FracIdeal res =
        FracIdeal::from_lattice(pair.K0, IntMatrix::from_columns(2, k0coords), prod.den());
    if (!(extend_to_quartic(pair, res) == prod))
        throw internal_error("relative_norm_ideal: certificate failed");
    return res;
}

FracIdeal extend_to_quartic(const CMFieldPair& pair, const FracIdeal& a0) {
    std::vector<FieldElem> gens;
    for (auto& b : a0.basis_elements()) gens.push_back(pair.to_quartic(b));
    return FracIdeal::from_generators(pair.K, gens);
}

}  // namespace qcm
