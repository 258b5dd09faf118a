#include "qcm/classgroup.hpp"

#include <sstream>

namespace qcm {

namespace {

std::vector<Int> small_primes_up_to(const Int& bound) {
    std::vector<Int> out;
    for (Int p = 2; p <= bound; p = p == 2 ? Int(3) : p + 2)
        if (is_probable_prime(p)) out.push_back(p);
    return out;
}

}  // namespace

std::string ClassGroupData::ideal_key(const FracIdeal& a) {
    std::ostringstream os;
    os << a.den() << ";" << a.num();
    return os.str();
}

ClassGroupData ClassGroupData::compute(const FieldPtr& f) {
    ClassGroupData cg;
    cg.field_ = f;
    if (f->degree() == 4) {
        CMFieldPair pair{f, NumberField::quadratic(f->poly()[2], f->poly()[0])};
        cg.units_ = unit_group(pair);
    } else if (f->is_totally_real()) {
        cg.units_ = unit_group(f);
    } else {
        // imaginary quadratic: only torsion; the sweep ignores the unit
        cg.units_.field = f;
        cg.units_.torsion_gen = -f->one();
        cg.units_.fundamental = f->one();
        cg.units_.eps0 = f->one();
        cg.units_.eps0_plus = f->one();
        cg.units_.eps0_plus_case = 0;
    }
    cg.mb_ = minkowski_bound(f);

    // all primes of norm <= bound
    Int pb = cg.mb_.get_num();  // mb is an integer by construction
    for (const Int& p : small_primes_up_to(pb)) {
        for (auto& pr : prime_decomposition(f, p))
            if (Rat(pr.norm()) <= cg.mb_) cg.primes_.push_back(pr);
    }

    // materialize the subgroup generated by the prime classes:
    // class list starts with the trivial class
    struct Cls {
        FracIdeal rep;           // integral, norm <= bound
        std::vector<Int> word;   // in chosen generators
    };
    std::vector<Cls> classes{{FracIdeal::whole_ring(f), {}}};
    auto find_class = [&](const FracIdeal& a) -> long {
        for (std::size_t i = 0; i < classes.size(); ++i) {
            // [a] == [rep]  <=>  a * rep^{-1} principal
            FracIdeal q = a * classes[i].rep.inverse();
            if (principal_generator(q, cg.units_)) return long(i);
        }
        return -1;
    };
    auto reduce_to_small = [&](const FracIdeal& a) {
        // integral ideal of norm <= bound in the SAME class: reduce twice
        FracIdeal r1 = reduce_ideal(a, cg.units_, cg.mb_);
        FracIdeal r2 = reduce_ideal(r1, cg.units_, cg.mb_);
        return r2;
    };

    std::vector<std::size_t> gen_prime_idx;  // chosen generators among primes_
    std::vector<Int> gen_orders_rel;         // order of generator modulo previous subgroup
    std::vector<std::vector<Int>> relations; // relation columns in the chosen gens

    for (std::size_t pi = 0; pi < cg.primes_.size(); ++pi) {
        const FracIdeal& p = cg.primes_[pi].ideal;
        if (find_class(p) >= 0) continue;
        // new generator g_k
        std::size_t k = gen_prime_idx.size();
        gen_prime_idx.push_back(pi);
        cg.gen_ideals_.push_back(p);
        // find minimal e >= 1 with p^e in the current subgroup
        FracIdeal pe = p;
        Int e = 1;
        long hit = -1;
        for (;;) {
            hit = find_class(pe);
            if (hit >= 0) break;
            pe = reduce_to_small(reduce_to_small(pe * p));
            ++e;
        }
        // relation: e * g_k - word(hit) = 0
        std::vector<Int> rel(k + 1, Int(0));
        for (std::size_t i = 0; i < classes[hit].word.size(); ++i) rel[i] = -classes[hit].word[i];
        rel[k] = e;
        // pad earlier relations to the new generator count
        for (auto& r : relations) r.resize(k + 1, Int(0));
        relations.push_back(rel);
        // extend the materialized subgroup: multiply every class by p^j
        std::vector<Cls> extended = classes;
        FracIdeal pj = FracIdeal::whole_ring(f);
        for (Int j = 1; j < e; ++j) {
            pj = reduce_to_small(pj * p);
            for (auto& c : classes) {
                Cls nc;
                nc.rep = reduce_to_small(c.rep * pj);
                nc.word = c.word;
                nc.word.resize(k + 1, Int(0));
                nc.word[k] = j;
                extended.push_back(nc);
            }
        }
        for (auto& c : extended) c.word.resize(k + 1, Int(0));
        classes = std::move(extended);
    }

    std::size_t ngens = gen_prime_idx.size();
    for (auto& r : relations) r.resize(ngens, Int(0));
    IntMatrix relmat = ngens == 0 ? IntMatrix(0, 0)
                                  : IntMatrix::from_columns(ngens, relations);
    cg.group_ = FinGenAbGroup::from_relations(ngens, relmat);
    if (cg.group_.order() != Int(classes.size()))
        throw internal_error("class group: materialized size disagrees with presentation");

    // standard generator representatives
    for (std::size_t i = 0; i < cg.group_.rank(); ++i) {
        auto w = cg.group_.std_gen_word(i);
        FracIdeal rep = FracIdeal::whole_ring(f);
        for (std::size_t j = 0; j < ngens; ++j) {
            if (w[j] == 0) continue;
            rep = rep * cg.gen_ideals_[j].pow(w[j].get_si());
        }
        cg.std_reps_.push_back(reduce_to_small(reduce_to_small(reduce_to_small(rep))));
    }

    // dlog table for all small primes
    for (auto& pr : cg.primes_) {
        long idx = find_class(pr.ideal);
        if (idx < 0) throw internal_error("class group: prime class missing after closure");
        cg.prime_dlog_[ideal_key(pr.ideal)] = cg.group_.dlog_word(classes[idx].word);
    }
    return cg;
}

std::vector<Int> ClassGroupData::dlog_integral(const FracIdeal& a) const {
    // factor an integral ideal of norm <= bound into enumerated primes
    std::vector<Int> coords(group_.rank(), Int(0));
    FracIdeal cur = a;
    Rat nm = cur.norm();
    Int n = nm.get_num();
    for (auto& [p, e] : factorize(n)) {
        for (auto& pr : primes_) {
            if (pr.p != p) continue;
            long v = valuation(cur, pr);
            if (v == 0) continue;
            auto it = prime_dlog_.find(ideal_key(pr.ideal));
            if (it == prime_dlog_.end()) throw internal_error("dlog: prime missing from table");
            for (std::size_t i = 0; i < coords.size(); ++i) coords[i] += Int(v) * it->second[i];
        }
    }
    return group_.reduce(coords);
}

std::vector<Int> ClassGroupData::dlog(const FracIdeal& a) const {
    if (a.is_zero()) throw invalid_input("dlog: zero ideal");
    FracIdeal r = reduce_ideal(a, units_, mb_);  // [r] = -[a]
    auto c = dlog_integral(r);
    for (auto& x : c) x = -x;
    return group_.reduce(c);
}

bool ClassGroupData::is_principal_class(const FracIdeal& a) const {
    for (auto& c : dlog(a))
        if (c != 0) return false;
    return true;
}

std::optional<FieldElem> ClassGroupData::generator_if_principal(const FracIdeal& a) const {
    auto direct = principal_generator(a, units_);
    bool trivial = is_principal_class(a);
    if (direct.has_value() != trivial)
        throw internal_error("principality: search and dlog verdicts disagree");
    return direct;
}

FracIdeal ClassGroupData::reduced_in_class(const FracIdeal& a) const {
    FracIdeal r = reduce_ideal(a, units_, mb_);
    return reduce_ideal(r, units_, mb_);
}

}  // namespace qcm
