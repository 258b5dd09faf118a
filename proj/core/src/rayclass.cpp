#include "qcm/rayclass.hpp"

namespace qcm {

namespace {

// sign bits (0 positive, 1 negative) for elements of totally real quadratics
std::vector<Int> sign_bits(const FieldElem& x) {
    auto s = real_signs(x);
    std::vector<Int> b;
    for (int v : s) b.push_back(v < 0 ? 1 : 0);
    return b;
}

// x = y/den with y in O and den in Z, both coprime to m when (x) is
std::pair<FieldElem, Int> split_denominator(const FieldElem& x) {
    Int d = x.denominator();
    return {x.scale(Rat(d)), d};
}

}  // namespace

FieldElem sign_realizer(const FieldPtr& f, const Int& m, const std::vector<int>& signs) {
    // search a + b*alpha with a = 1 mod m, b = 0 mod m matching the sign
    // pattern (so the element is 1 mod* m except for the sign conditions)
    for (Int radius = 1; radius <= 64; radius *= 2) {
        for (Int bb = -radius; bb <= radius; ++bb) {
            for (Int aa = -radius; aa <= radius; ++aa) {
                Int a = 1 + m * aa, b = m * bb;
                auto x = f->element({Rat(a), Rat(b)});
                if (x.is_zero()) continue;
                auto s = real_signs(x);
                bool ok = true;
                for (std::size_t i = 0; i < signs.size(); ++i) ok = ok && s[i] == signs[i];
                if (ok) return x;
            }
        }
    }
    throw internal_error("sign_realizer: no element found in search window");
}

RayClassGroup RayClassGroup::compute(std::shared_ptr<const ClassGroupData> cl, const Int& m,
                                     bool narrow) {
    RayClassGroup r;
    r.cl_ = std::move(cl);
    r.m_ = m;
    const auto& f = r.cl_->field();
    r.narrow_ = narrow && f->is_totally_real();
    r.sign_places_ = r.narrow_ ? f->degree() : 0;
    r.res_ = ResidueUnits::compute(f, m);

    // mod-data group: residues x sign bits
    std::vector<Int> inv = r.res_.group().invariants();
    for (std::size_t i = 0; i < r.sign_places_; ++i) inv.push_back(2);
    r.mod_group_ = FinGenAbGroup::cyclic_product(inv);

    // image of the units
    std::vector<std::vector<Int>> unit_imgs;
    const auto& units = r.cl_->units();
    for (auto u : {units.torsion_gen, units.fundamental}) {
        unit_imgs.push_back(r.mod_data_dlog(u));
    }
    auto u_sub = subgroup_from_generators(r.mod_group_, unit_imgs);
    r.a_group_ = quotient_group(r.mod_group_, u_sub);

    // elements realizing the A standard generators
    for (std::size_t i = 0; i < r.a_group_.rank(); ++i) {
        auto w = r.a_group_.std_gen_word(i);  // word in mod_group std generators
        FieldElem el = f->one();
        for (std::size_t j = 0; j < r.res_.group().rank(); ++j) {
            Int e = w[j];
            if (e == 0) continue;
            // reduce exponent mod the factor order to keep powers small
            const Int& dj = r.res_.group().invariants()[j];
            Int ee = dj != 0 ? fmod(e, dj) : e;
            for (Int t = 0; t < ee; ++t) el = el * r.res_.gen_element(j);
        }
        if (r.sign_places_) {
            std::vector<int> want(r.sign_places_, 1);
            bool need = false;
            for (std::size_t sp = 0; sp < r.sign_places_; ++sp) {
                if (fmod(w[r.res_.group().rank() + sp], 2) == 1) {
                    want[sp] = -1;
                    need = true;
                }
            }
            if (need) el = el * sign_realizer(f, m, want);
        }
        r.a_gen_elements_.push_back(el);
    }

    // coprime representatives for the class-group standard generators
    const auto& clg = r.cl_->group();
    for (std::size_t i = 0; i < clg.rank(); ++i) {
        FracIdeal rep = r.cl_->std_gen_ideal(i);
        if (!rep.coprime_to(m)) {
            bool found = false;
            auto want = r.cl_->dlog(rep);
            for (auto& pr : r.cl_->small_primes()) {
                if (gcd(pr.norm(), m) != 1) continue;
                if (r.cl_->dlog(pr.ideal) == want) {
                    rep = pr.ideal;
                    found = true;
                    break;
                }
            }
            if (!found)
                throw resource_error("RayClassGroup: no coprime representative among small primes");
        }
        r.c_lifts_.push_back(rep);
    }

    // extension: cocycle(j) = A-coords of the ray-trivialized lift^d_j
    auto cocycle = [&](std::size_t j) {
        const Int& dj = clg.invariants()[j];
        FracIdeal power = r.c_lifts_[j].pow(dj.get_si());
        auto gen = r.cl_->generator_if_principal(power);
        if (!gen) throw internal_error("RayClassGroup: lift power not principal");
        return r.a_dlog(*gen);
    };
    r.group_ = extension_group(r.a_group_, clg, cocycle);

    // standard generator representatives (coprime to m by construction)
    for (std::size_t i = 0; i < r.group_.rank(); ++i) {
        auto w = r.group_.std_gen_word(i);  // word over (A gens, C lifts)
        FracIdeal rep = FracIdeal::whole_ring(f);
        for (std::size_t j = 0; j < r.a_group_.rank(); ++j) {
            Int e = w[j];
            const Int& dj = r.a_group_.invariants()[j];
            if (dj != 0) e = fmod(e, dj);
            if (e != 0) rep = rep * FracIdeal::principal(r.a_gen_elements_[j]).pow(e.get_si());
        }
        for (std::size_t j = 0; j < clg.rank(); ++j) {
            Int e = w[r.a_group_.rank() + j];
            const Int& dj = clg.invariants()[j];
            if (dj != 0) e = fmod(e, dj);
            if (e != 0) rep = rep * r.c_lifts_[j].pow(e.get_si());
        }
        r.std_reps_.push_back(rep);
    }

    // order certificate: |Cl_m| = |A| * |Cl|
    if (r.group_.order() != r.a_group_.order() * clg.order())
        throw internal_error("RayClassGroup: extension order mismatch");
    return r;
}

std::vector<Int> RayClassGroup::mod_data_dlog(const FieldElem& x) const {
    auto [y, d] = split_denominator(x);
    const auto& f = cl_->field();
    auto c = res_.dlog_element(y);
    if (d != 1) {
        auto cd = res_.dlog_element(f->one().scale(Rat(d)));
        for (std::size_t i = 0; i < c.size(); ++i) c[i] -= cd[i];
    }
    if (sign_places_) {
        auto b = sign_bits(x);  // sign(y/d) = sign(y) for d > 0
        c.insert(c.end(), b.begin(), b.end());
    }
    return mod_group_.reduce(c);
}

std::vector<Int> RayClassGroup::a_dlog(const FieldElem& x) const {
    return a_group_.dlog_word(mod_data_dlog(x));
}

std::vector<Int> RayClassGroup::dlog(const FracIdeal& a) const {
    if (!a.is_zero() && a.is_integral() && !a.coprime_to(m_))
        throw invalid_input("RayClassGroup::dlog: ideal not coprime to the modulus");
    const auto& clg = cl_->group();
    auto e = cl_->dlog(a);
    FracIdeal t = a;
    for (std::size_t j = 0; j < clg.rank(); ++j)
        if (e[j] != 0) t = t * c_lifts_[j].pow(-e[j].get_si());
    auto gen = cl_->generator_if_principal(t);
    if (!gen) throw internal_error("RayClassGroup::dlog: residual class not principal");
    auto ac = a_dlog(*gen);
    std::vector<Int> word;
    word.insert(word.end(), ac.begin(), ac.end());
    word.insert(word.end(), e.begin(), e.end());
    return group_.dlog_word(word);
}

std::optional<FieldElem> RayClassGroup::ray_generator(const FracIdeal& a) const {
    auto gen = cl_->generator_if_principal(a);
    if (!gen) return std::nullopt;
    // adjust by a unit so that the element is 1 mod* m: the needed unit class
    // must kill a_dlog(gen) in the mod-data group
    auto target = mod_data_dlog(*gen);
    bool trivial_a = true;
    for (auto& c : a_dlog(*gen))
        if (c != 0) trivial_a = false;
    if (!trivial_a) return std::nullopt;
    // search the unit group for u with mod_data(u) = target
    const auto& units = cl_->units();
    Int e1 = 1;
    // exponent of the mod-data group bounds the search
    Int expo = mod_group_.is_trivial() ? Int(1) : mod_group_.exponent();
    for (Int t2 = 0; t2 < 2; ++t2) {
        for (Int k = 0; k < 2 * expo; ++k) {
            for (int sk : {1, -1}) {
                FieldElem u = units.fundamental.pow(sk * k.get_si());
                if (t2 == 1) u = -u;
                auto c = mod_data_dlog(u);
                if (c == target) {
                    auto x = *gen * u.inv();
                    // certificate
                    auto check = mod_data_dlog(x);
                    for (auto& cc : check)
                        if (cc != 0) throw internal_error("ray_generator: adjustment failed");
                    return x;
                }
            }
        }
    }
    throw internal_error("ray_generator: no unit adjustment found despite trivial class");
    (void)e1;
}

}  // namespace qcm
