#include "qcm/resring.hpp"

#include <sstream>

namespace qcm {

namespace {

std::string res_key(const std::vector<Int>& v) {
    std::ostringstream os;
    for (auto& x : v) os << x << ",";
    return os.str();
}

std::vector<Int> mul_mod(const FieldPtr& f, const std::vector<Int>& a, const std::vector<Int>& b,
                         const Int& q) {
    std::size_t n = f->degree();
    std::vector<Int> c(n, Int(0));
    for (std::size_t i = 0; i < n; ++i) {
        if (a[i] == 0) continue;
        for (std::size_t j = 0; j < n; ++j) {
            if (b[j] == 0) continue;
            const auto& prod = f->basis_product(i, j);
            Int m = a[i] * b[j];
            for (std::size_t k = 0; k < n; ++k) c[k] += m * prod[k];
        }
    }
    for (auto& x : c) x = fmod(x, q);
    return c;
}

bool is_unit_mod(const FieldPtr& f, const std::vector<Int>& a, const Int& p) {
    // unit in O/p^k iff unit mod p iff the multiplication matrix is
    // invertible mod p
    std::size_t n = f->degree();
    IntMatrix m(n, n);
    for (std::size_t j = 0; j < n; ++j) {
        std::vector<Int> ej(n, Int(0));
        ej[j] = 1;
        auto col = mul_mod(f, a, ej, p);
        for (std::size_t i = 0; i < n; ++i) m(i, j) = col[i];
    }
    return fmod(m.det(), p) != 0;
}

}  // namespace

ResidueUnits ResidueUnits::compute(const FieldPtr& f, const Int& m) {
    if (m < 1) throw invalid_input("ResidueUnits: modulus must be positive");
    ResidueUnits r;
    r.field_ = f;
    r.m_ = m;
    std::size_t n = f->degree();

    std::vector<std::vector<Int>> all_rel_cols;  // block diagonal relations
    std::vector<std::pair<std::size_t, std::size_t>> gen_span;  // per factor: (offset, count)

    for (auto& [p, k] : factorize(m)) {
        Factor fac;
        fac.q = pow_int(p, k);
        // ring size cap
        double size = std::pow(mpz_get_d(fac.q.get_mpz_t()), double(n));
        if (size > double(1 << 20))
            throw resource_error("ResidueUnits: residue ring too large for closure");
        long ql = fac.q.get_si();
        long total = 1;
        for (std::size_t i = 0; i < n; ++i) total *= ql;

        // enumerate units
        std::vector<std::vector<Int>> units;
        for (long idx = 0; idx < total; ++idx) {
            std::vector<Int> v(n);
            long t = idx;
            for (std::size_t i = 0; i < n; ++i) {
                v[i] = t % ql;
                t /= ql;
            }
            if (is_unit_mod(f, v, p)) units.push_back(v);
        }
        // greedy generators with materialized dlog words
        std::map<std::string, std::vector<Int>> words;
        std::vector<Int> one(n, Int(0));
        one[0] = 1;
        words[res_key(one)] = {};
        std::vector<std::vector<Int>> gens;
        std::vector<std::vector<Int>> rels;
        for (auto& u : units) {
            if (words.count(res_key(u))) continue;
            std::size_t gidx = gens.size();
            gens.push_back(u);
            // order of u relative to the current subgroup
            std::vector<Int> pw = u;
            Int e = 1;
            while (!words.count(res_key(pw))) {
                pw = mul_mod(f, pw, u, fac.q);
                ++e;
            }
            std::vector<Int> rel(gidx + 1, Int(0));
            auto& base_word = words[res_key(pw)];
            for (std::size_t i = 0; i < base_word.size(); ++i) rel[i] = -base_word[i];
            rel[gidx] += e;
            for (auto& rr : rels) rr.resize(gidx + 1, Int(0));
            rels.push_back(rel);
            // extend materialization: every known element times u^j
            for (auto& [key, w] : words) w.resize(gidx + 1, Int(0));
            std::vector<std::vector<Int>> base_elems;
            std::vector<std::vector<Int>> base_words;
            for (auto& u2 : units) {
                auto it = words.find(res_key(u2));
                if (it != words.end()) {
                    base_elems.push_back(u2);
                    base_words.push_back(it->second);
                }
            }
            std::vector<Int> uj(n, Int(0));
            uj[0] = 1;
            for (Int j = 1; j < e; ++j) {
                uj = mul_mod(f, uj, u, fac.q);
                for (std::size_t bi = 0; bi < base_elems.size(); ++bi) {
                    auto prod = mul_mod(f, base_elems[bi], uj, fac.q);
                    auto w = base_words[bi];
                    w[gidx] = j;
                    words[res_key(prod)] = w;
                }
            }
        }
        if (words.size() != units.size())
            throw internal_error("ResidueUnits: closure incomplete");
        IntMatrix relmat = gens.empty() ? IntMatrix(0, 0)
                                        : IntMatrix::from_columns(gens.size(), [&] {
                                              for (auto& rr : rels) rr.resize(gens.size(), Int(0));
                                              return rels;
                                          }());
        fac.group = FinGenAbGroup::from_relations(gens.size(), relmat);
        if (fac.group.order() != Int(units.size()))
            throw internal_error("ResidueUnits: group order mismatch");
        // standard-coordinate table
        for (auto& [key, w] : words) {
            auto ww = w;
            ww.resize(gens.size(), Int(0));
            fac.table[key] = fac.group.dlog_word(ww);
        }
        // standard generator residues
        for (std::size_t i = 0; i < fac.group.rank(); ++i) {
            auto w = fac.group.std_gen_word(i);
            std::vector<Int> el(n, Int(0));
            el[0] = 1;
            for (std::size_t j = 0; j < gens.size(); ++j) {
                Int e = fmod(w[j], fac.group.order());  // exponent reduction is safe: order kills
                for (Int t = 0; t < e; ++t) el = mul_mod(f, el, gens[j], fac.q);
            }
            fac.gen_res.push_back(el);
        }
        r.factors_.push_back(std::move(fac));
    }

    // direct product of the factor groups
    std::vector<Int> inv;
    for (auto& fac : r.factors_)
        for (auto& d : fac.group.invariants()) inv.push_back(d);
    r.group_ = FinGenAbGroup::cyclic_product(inv);

    // CRT generator lifts
    std::size_t offset = 0;
    for (std::size_t fi = 0; fi < r.factors_.size(); ++fi) {
        auto& fac = r.factors_[fi];
        Int q = fac.q, rest = exact_div(m, q);
        // CRT coefficients: c1*q + c0*rest = 1
        Int u, v;
        if (rest == 1) {
            for (auto& res : fac.gen_res) {
                std::vector<Rat> c(res.begin(), res.end());
                r.gen_elements_.push_back(f->from_integral_coords(c));
            }
        } else {
            xgcd(q, rest, u, v);
            // element = res * (v*rest) + 1 * (u*q) mod m, per coordinate
            for (auto& res : fac.gen_res) {
                std::vector<Rat> c(f->degree(), Rat(0));
                for (std::size_t i = 0; i < f->degree(); ++i) {
                    Int x = fmod(res[i] * v * rest, m);
                    if (i == 0) x = fmod(x + u * q, m);
                    c[i] = Rat(x);
                }
                r.gen_elements_.push_back(f->from_integral_coords(c));
            }
        }
        offset += fac.group.rank();
    }
    return r;
}

std::vector<Int> ResidueUnits::factor_dlog(const Factor& fac, const FieldElem& x) const {
    auto q = x.integral_coords();
    std::vector<Int> v(q.size());
    for (std::size_t i = 0; i < q.size(); ++i) {
        if (gcd(q[i].get_den(), fac.q) != 1)
            throw invalid_input("ResidueUnits: denominator shares a factor with the modulus");
        // x mod q: numerator * den^{-1}
        Int den_inv = 1, den = q[i].get_den();
        if (den != 1) {
            Int u, w;
            xgcd(den, fac.q, u, w);
            den_inv = fmod(u, fac.q);
        }
        v[i] = fmod(q[i].get_num() * den_inv, fac.q);
    }
    auto it = fac.table.find(res_key(v));
    if (it == fac.table.end()) throw invalid_input("ResidueUnits: element not coprime to modulus");
    return it->second;
}

std::vector<Int> ResidueUnits::dlog_element(const FieldElem& x) const {
    std::vector<Int> out;
    for (auto& fac : factors_) {
        auto c = factor_dlog(fac, x);
        out.insert(out.end(), c.begin(), c.end());
    }
    return group_.reduce(out);
}

std::vector<Int> ResidueUnits::dlog(const FieldElem& x) const { return dlog_element(x); }

FieldElem ResidueUnits::gen_element(std::size_t i) const { return gen_elements_.at(i); }

}  // namespace qcm
