#include "qcm/principal.hpp"

#include <cmath>

namespace qcm {

namespace {

constexpr mpfr_prec_t kEmbedPrec = 128;

// real lattice coordinates of the ideal basis under the weighted embedding
// e^{-s/2} sigma_1, e^{s/2} sigma_2 (conjugate pairs contribute weight 2)
struct SweepData {
    std::size_t n;
    int sig;                       // 0: imaginary quadratic, 1: real quadratic, 2: cm quartic
    std::vector<std::vector<double>> emb;  // per basis vector: embedding parts
    double log_shift;              // log |s1(eps)^2 / s2(eps)^2| (0 if rank 0)
};

SweepData sweep_data(const FracIdeal& a, const UnitGroupData& units) {
    const auto& f = a.field();
    SweepData sd;
    sd.n = f->degree();
    auto es = f->embeddings(kEmbedPrec);
    auto basis = a.basis_elements();
    if (sd.n == 2 && f->is_totally_real()) {
        sd.sig = 1;
        for (auto& b : basis) {
            double v1 = es.eval(b, 0).re.to_double();
            double v2 = es.eval(b, 1).re.to_double();
            sd.emb.push_back({v1, v2});
        }
        double e1 = std::abs(es.eval(units.fundamental, 0).re.to_double());
        sd.log_shift = std::abs(4.0 * std::log(e1));
    } else if (sd.n == 2) {
        sd.sig = 0;
        for (auto& b : basis) {
            auto v = es.eval(b, 0);
            sd.emb.push_back({v.re.to_double(), v.im.to_double()});
        }
        sd.log_shift = 0;
    } else {
        sd.sig = 2;
        for (auto& b : basis) {
            auto v1 = es.eval(b, 0);  // i y1 embedding
            auto v2 = es.eval(b, 2);  // i y2 embedding
            sd.emb.push_back({v1.re.to_double(), v1.im.to_double(), v2.re.to_double(),
                              v2.im.to_double()});
        }
        auto e1 = es.eval(units.fundamental, 0).abs().to_double();
        auto e2 = es.eval(units.fundamental, 2).abs().to_double();
        sd.log_shift = std::abs(2.0 * (std::log(e1) - std::log(e2)));
    }
    return sd;
}

// Gram matrix of Q_s on the basis
std::vector<std::vector<double>> gram_at(const SweepData& sd, double s) {
    std::size_t n = sd.n;
    std::vector<std::vector<double>> g(n, std::vector<double>(n, 0.0));
    double w1 = std::exp(-s), w2 = std::exp(s);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            double v = 0;
            if (sd.sig == 1) {
                v = w1 * sd.emb[i][0] * sd.emb[j][0] + w2 * sd.emb[i][1] * sd.emb[j][1];
            } else if (sd.sig == 0) {
                v = sd.emb[i][0] * sd.emb[j][0] + sd.emb[i][1] * sd.emb[j][1];
            } else {
                v = 2.0 * w1 * (sd.emb[i][0] * sd.emb[j][0] + sd.emb[i][1] * sd.emb[j][1]) +
                    2.0 * w2 * (sd.emb[i][2] * sd.emb[j][2] + sd.emb[i][3] * sd.emb[j][3]);
            }
            g[i][j] = v;
        }
    return g;
}

// Fincke-Pohst enumeration of x != 0 with Q(x) <= bound; returns coordinate
// vectors. Symmetric pairs +-x are both reported (harmless).
void enumerate(const std::vector<std::vector<double>>& gram, double bound,
               std::vector<std::vector<long>>& out) {
    std::size_t n = gram.size();
    // Cholesky with fudge
    std::vector<std::vector<double>> r(n, std::vector<double>(n, 0.0));
    auto g = gram;
    for (std::size_t k = 0; k < n; ++k) {
        double d = g[k][k];
        for (std::size_t i = 0; i < k; ++i) d -= r[i][k] * r[i][k];
        if (d <= 0) return;  // degenerate under double precision
        r[k][k] = std::sqrt(d);
        for (std::size_t j = k + 1; j < n; ++j) {
            double v = g[k][j];
            for (std::size_t i = 0; i < k; ++i) v -= r[i][k] * r[i][j];
            r[k][j] = v / r[k][k];
        }
    }
    std::vector<long> x(n, 0);
    // recursive depth-first from the last coordinate
    struct Rec {
        std::size_t n;
        const std::vector<std::vector<double>>& r;
        double bound;
        std::vector<long>& x;
        std::vector<std::vector<long>>& out;
        void go(std::size_t level, double used, const std::vector<double>& proj) {
            // proj[i] = sum_{j > level} r[i][j] x[j]
            if (level == SIZE_MAX) return;
            double remain = bound - used;
            if (remain < 0) return;
            double c = -proj[level] / r[level][level];
            double half = std::sqrt(remain) / r[level][level];
            long lo = (long)std::ceil(c - half - 1e-9), hi = (long)std::floor(c + half + 1e-9);
            for (long v = lo; v <= hi; ++v) {
                x[level] = v;
                double t = r[level][level] * v + proj[level];
                double used2 = used + t * t;
                if (used2 > bound * (1 + 1e-9)) continue;
                if (level == 0) {
                    bool nz = false;
                    for (auto& xi : x) nz = nz || xi != 0;
                    if (nz) out.push_back(x);
                } else {
                    std::vector<double> proj2 = proj;
                    for (std::size_t i = 0; i < level; ++i) proj2[i] += r[i][level] * v;
                    go(level - 1, used2, proj2);
                }
            }
        }
    } rec{n, r, bound * 1.0000001, x, out};
    std::vector<double> proj(n, 0.0);
    rec.go(n - 1, 0.0, proj);
}

std::vector<double> sweep_grid(const SweepData& sd, double spacing) {
    std::vector<double> ss{0.0};
    if (sd.sig == 0) return ss;
    double lim = sd.log_shift / 4.0 + spacing;
    for (double s = spacing; s <= lim; s += spacing) {
        ss.push_back(s);
        ss.push_back(-s);
    }
    return ss;
}

}  // namespace

Rat minkowski_bound(const FieldPtr& f) {
    // (4/pi)^r2 (n!/n^n) sqrt(|disc|), rounded up a bit
    double n = double(f->degree());
    double r2 = f->is_totally_real() ? 0 : (f->degree() == 2 ? 1 : 2);
    double nf = 1;
    for (int i = 2; i <= f->degree(); ++i) nf *= i;
    Int ad = f->disc() < 0 ? Int(-f->disc()) : f->disc();
    double mb = std::pow(4.0 / M_PI, r2) * (nf / std::pow(n, n)) *
                std::sqrt(mpz_get_d(ad.get_mpz_t()));
    return Rat(Int((long long)std::ceil(mb + 1e-9)));
}

std::optional<FieldElem> principal_generator(const FracIdeal& a, const UnitGroupData& units) {
    if (a.is_zero()) throw invalid_input("principal_generator: zero ideal");
    const auto& f = a.field();
    // reduce to the integral lattice: a = L / den
    FracIdeal l = FracIdeal::from_lattice(f, a.num(), 1);
    Rat nl = l.norm();
    Int target = nl.get_num();
    double tn = mpz_get_d(target.get_mpz_t());

    SweepData sd = sweep_data(l, units);
    double spacing = 1.0;
    double base = sd.sig == 1   ? 2.0 * tn
                  : sd.sig == 0 ? tn
                                : 4.0 * std::sqrt(tn);
    double bound = base * std::cosh(spacing / 2.0) * 1.10;
    auto basis = l.basis_elements();
    for (double s : sweep_grid(sd, spacing)) {
        std::vector<std::vector<long>> found;
        enumerate(gram_at(sd, s), bound, found);
        for (auto& coords : found) {
            FieldElem x = f->zero();
            for (std::size_t i = 0; i < coords.size(); ++i)
                if (coords[i]) x = x + basis[i].scale(Rat(coords[i]));
            Rat nm = x.norm();
            if (nm == target || nm == -target) {
                // generator of a = L/den
                return x.scale(Rat(Int(1), a.den()));
            }
        }
    }
    return std::nullopt;
}

FieldElem small_element(const FracIdeal& a, const UnitGroupData& units, const Rat& mb) {
    if (a.is_zero()) throw invalid_input("small_element: zero ideal");
    const auto& f = a.field();
    FracIdeal l = FracIdeal::from_lattice(f, a.num(), 1);
    Rat nl = l.norm();
    Int nval = nl.get_num();
    double tn = mpz_get_d(nval.get_mpz_t());
    double mbd = mpq_get_d(mb.get_mpq_t());

    SweepData sd = sweep_data(l, units);
    double spacing = 1.0;
    auto basis = l.basis_elements();
    Int best_norm = 0;
    FieldElem best = f->zero();
    for (double factor = 1.0; factor <= 64.0; factor *= 2.0) {
        double base = sd.sig == 1   ? 2.0 * tn * mbd
                      : sd.sig == 0 ? tn * mbd
                                    : 4.0 * std::sqrt(tn * mbd);
        double bound = base * std::cosh(spacing / 2.0) * 1.10 * factor;
        for (double s : sweep_grid(sd, spacing)) {
            std::vector<std::vector<long>> found;
            enumerate(gram_at(sd, s), bound, found);
            for (auto& coords : found) {
                FieldElem x = f->zero();
                for (std::size_t i = 0; i < coords.size(); ++i)
                    if (coords[i]) x = x + basis[i].scale(Rat(coords[i]));
                Rat nm = x.norm();
                Int na = nm < 0 ? Int(-nm.get_num()) : nm.get_num();
                if (na == 0) continue;
                if (best_norm == 0 || na < best_norm) {
                    best_norm = na;
                    best = x;
                }
            }
        }
        if (best_norm != 0 && Rat(best_norm) <= mb * Rat(nval)) break;
    }
    if (best_norm == 0) throw internal_error("small_element: enumeration found nothing");
    // scale back to the fractional ideal
    return best.scale(Rat(Int(1), a.den()));
}

FracIdeal reduce_ideal(const FracIdeal& a, const UnitGroupData& units, const Rat& mb) {
    FieldElem x = small_element(a, units, mb);
    FracIdeal r = FracIdeal::principal(x) * a.inverse();
    if (!r.is_integral()) throw internal_error("reduce_ideal: quotient not integral");
    return r;
}

}  // namespace qcm
