#include "qcm/numfield.hpp"

#include <algorithm>
#include <sstream>

namespace qcm {

namespace {

using QVec = std::vector<Rat>;

QVec qvec(std::size_t n) { return QVec(n, Rat(0)); }

bool all_zero(const QVec& v) {
    return std::all_of(v.begin(), v.end(), [](const Rat& q) { return q == 0; });
}

// determinant of a small rational matrix by Gaussian elimination
Rat rat_det(std::vector<QVec> m) {
    std::size_t n = m.size();
    Rat det(1);
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t p = k;
        while (p < n && m[p][k] == 0) ++p;
        if (p == n) return Rat(0);
        if (p != k) {
            std::swap(m[p], m[k]);
            det = -det;
        }
        det *= m[k][k];
        for (std::size_t i = k + 1; i < n; ++i) {
            if (m[i][k] == 0) continue;
            Rat f = m[i][k] / m[k][k];
            for (std::size_t j = k; j < n; ++j) m[i][j] -= f * m[k][j];
        }
    }
    return det;
}

}  // namespace

// ---------------------------------------------------------------------------
// NumberField construction

FieldPtr NumberField::quadratic(const Int& a1, const Int& a0) {
    Int d = a1 * a1 - 4 * a0;
    if (d == 0 || is_square(d)) throw invalid_input("quadratic: reducible polynomial");
    return build({a0, a1});
}

FieldPtr NumberField::even_quartic(const Int& A, const Int& B) {
    Int d = A * A - 4 * B;
    if (B == 0 || is_square(d)) throw invalid_input("even_quartic: reducible polynomial");
    if (is_square(B)) {
        Int b = isqrt(B);
        if ((2 * b - A >= 0 && is_square(Int(2 * b - A))) ||
            (-2 * b - A >= 0 && is_square(Int(-2 * b - A))))
            throw invalid_input("even_quartic: reducible polynomial");
    }
    return build({B, Int(0), A, Int(0)});
}

FieldPtr NumberField::build(std::vector<Int> poly) {
    auto f = std::shared_ptr<NumberField>(new NumberField());
    f->poly_ = std::move(poly);
    f->n_ = f->poly_.size();

    // alpha^n .. alpha^{2n-2} reduced mod the defining polynomial
    std::size_t n = f->n_;
    QVec cur = qvec(n);
    for (std::size_t j = 0; j < n; ++j) cur[j] = -Rat(f->poly_[j]);  // alpha^n
    f->alpha_pow_.push_back(cur);
    for (std::size_t k = 1; k + 1 < n; ++k) {
        QVec next = qvec(n);
        // multiply by alpha
        Rat top = cur[n - 1];
        for (std::size_t j = n - 1; j >= 1; --j) next[j] = cur[j - 1];
        next[0] = 0;
        if (top != 0)
            for (std::size_t j = 0; j < n; ++j) next[j] += top * f->alpha_pow_[0][j];
        f->alpha_pow_.push_back(next);
        cur = next;
    }

    // power-sum traces via Newton's identities; trace-form determinant
    std::vector<Int> ps(2 * n - 1);
    ps[0] = Int(n);
    auto coef = [&](std::size_t i) { return i < n ? f->poly_[i] : Int(1); };
    for (std::size_t k = 1; k <= 2 * n - 2; ++k) {
        Int s = 0;
        for (std::size_t i = 1; i < k && i <= n; ++i) s += coef(n - i) * ps[k - i];
        if (k <= n) s += Int(k) * coef(n - k);
        ps[k] = -s;
    }
    IntMatrix tr(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) tr(i, j) = ps[i + j];
    f->poly_disc_ = tr.det();
    if (f->poly_disc_ == 0) throw invalid_input("NumberField: polynomial not separable/irreducible");

    f->compute_maximal_order();
    return f;
}

// Round-2 style saturation at every prime whose square divides the polynomial
// discriminant.
void NumberField::compute_maximal_order() {
    std::size_t n = n_;
    IntMatrix w = IntMatrix::identity(n);  // rows: basis in power coords over den
    Int den = 1;

    // multiplication of power-coordinate vectors mod the defining polynomial
    auto poly_mul = [&](const QVec& a, const QVec& b) {
        std::vector<Rat> prod(2 * n - 1, Rat(0));
        for (std::size_t i = 0; i < n; ++i) {
            if (a[i] == 0) continue;
            for (std::size_t j = 0; j < n; ++j) prod[i + j] += a[i] * b[j];
        }
        QVec out = qvec(n);
        for (std::size_t j = 0; j < n; ++j) out[j] = prod[j];
        for (std::size_t k = 0; k + 1 < n; ++k)
            if (prod[n + k] != 0)
                for (std::size_t j = 0; j < n; ++j) out[j] += prod[n + k] * alpha_pow_[k][j];
        return out;
    };

    struct OrderCtx {
        std::vector<QVec> basis;          // rational power coords
        std::vector<QVec> conv;           // power coords -> order coords matrix
    };
    auto make_ctx = [&](const IntMatrix& wm, const Int& d) {
        OrderCtx ctx;
        ctx.basis.assign(n, qvec(n));
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) {
                ctx.basis[i][j] = Rat(wm(i, j), d);
                ctx.basis[i][j].canonicalize();
            }
        // invert transpose(basis) by Gauss-Jordan
        std::vector<QVec> m(n, qvec(2 * n));
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j) m[i][j] = ctx.basis[j][i];
            m[i][n + i] = 1;
        }
        for (std::size_t k = 0; k < n; ++k) {
            std::size_t p = k;
            while (m[p][k] == 0) ++p;
            std::swap(m[p], m[k]);
            Rat piv = m[k][k];
            for (auto& x : m[k]) x /= piv;
            for (std::size_t i = 0; i < n; ++i) {
                if (i == k || m[i][k] == 0) continue;
                Rat far = m[i][k];
                for (std::size_t j = 0; j < 2 * n; ++j) m[i][j] -= far * m[k][j];
            }
        }
        ctx.conv.assign(n, qvec(n));
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) ctx.conv[i][j] = m[i][n + j];
        return ctx;
    };
    auto order_coords = [&](const OrderCtx& ctx, const QVec& powc) {
        QVec c = qvec(n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) c[i] += ctx.conv[i][j] * powc[j];
        return c;
    };
    // product of order basis elements, in order coords (integral for an order)
    auto basis_prod = [&](const OrderCtx& ctx, std::size_t i, std::size_t j) {
        return order_coords(ctx, poly_mul(ctx.basis[i], ctx.basis[j]));
    };

    auto fp_kernel = [&](const std::vector<std::vector<Int>>& mat, const Int& p) {
        // kernel over F_p of a (rows x n) matrix; returns basis vectors
        std::size_t rows = mat.size();
        std::vector<std::vector<Int>> m(rows, std::vector<Int>(n));
        for (std::size_t i = 0; i < rows; ++i)
            for (std::size_t j = 0; j < n; ++j) m[i][j] = fmod(mat[i][j], p);
        std::vector<long> pivot_col;
        std::size_t r = 0;
        for (std::size_t c = 0; c < n && r < rows; ++c) {
            std::size_t pr = r;
            while (pr < rows && m[pr][c] == 0) ++pr;
            if (pr == rows) continue;
            std::swap(m[pr], m[r]);
            Int inv_piv = pow_mod(m[r][c], p - 2, p);
            for (std::size_t j = 0; j < n; ++j) m[r][j] = fmod(m[r][j] * inv_piv, p);
            for (std::size_t i = 0; i < rows; ++i) {
                if (i == r || m[i][c] == 0) continue;
                Int fz = m[i][c];
                for (std::size_t j = 0; j < n; ++j) m[i][j] = fmod(m[i][j] - fz * m[r][j], p);
            }
            pivot_col.push_back(long(c));
            ++r;
        }
        std::vector<std::vector<Int>> ker;
        for (std::size_t c = 0; c < n; ++c) {
            if (std::find(pivot_col.begin(), pivot_col.end(), long(c)) != pivot_col.end()) continue;
            std::vector<Int> v(n, Int(0));
            v[c] = 1;
            for (std::size_t i = 0; i < pivot_col.size(); ++i)
                v[pivot_col[i]] = fmod(-m[i][c], p);
            ker.push_back(v);
        }
        return ker;
    };

    for (auto& [p, e] : factorize(poly_disc_)) {
        if (e < 2) continue;
        for (;;) {
            OrderCtx ctx = make_ctx(w, den);
            // Frobenius x -> x^(p^m), p^m >= n
            unsigned long m_exp = 1;
            Int pm = p;
            while (pm < Int(n)) {
                pm *= p;
                ++m_exp;
            }
            // columns: images of basis elements
            std::vector<std::vector<Int>> frob(n, std::vector<Int>(n));
            for (std::size_t j = 0; j < n; ++j) {
                // compute basis_j^(p^m) in order coords mod p by repeated p-th powers
                QVec cur_el = ctx.basis[j];
                for (unsigned long s = 0; s < m_exp; ++s) {
                    // p-th power by square and multiply in power coords
                    QVec acc = qvec(n);
                    acc[0] = 1;
                    QVec base = cur_el;
                    Int exp_left = p;
                    while (exp_left > 0) {
                        if (fmod(exp_left, 2) == 1) acc = poly_mul(acc, base);
                        exp_left = fdiv(exp_left, 2);
                        if (exp_left > 0) base = poly_mul(base, base);
                    }
                    // reduce order coords mod p to keep sizes down
                    QVec oc = order_coords(ctx, acc);
                    QVec red = qvec(n);
                    for (std::size_t i = 0; i < n; ++i) {
                        if (oc[i].get_den() != 1) throw internal_error("maximal order: non-integral product");
                        red[i] = Rat(fmod(oc[i].get_num(), p));
                    }
                    // back to power coords
                    QVec pw = qvec(n);
                    for (std::size_t i = 0; i < n; ++i)
                        if (red[i] != 0)
                            for (std::size_t jj = 0; jj < n; ++jj)
                                pw[jj] += red[i] * ctx.basis[i][jj];
                    cur_el = pw;
                }
                QVec oc = order_coords(ctx, cur_el);
                for (std::size_t i = 0; i < n; ++i) {
                    if (oc[i].get_den() != 1) throw internal_error("maximal order: non-integral frobenius");
                    frob[i][j] = fmod(oc[i].get_num(), p);
                }
            }
            auto rad = fp_kernel(frob, p);
            // radical ideal lattice I (order coords), contains p*Z^n
            std::vector<std::vector<Int>> icols = rad;
            IntMatrix imat = icols.empty() ? IntMatrix(n, 0) : IntMatrix::from_columns(n, icols);
            IntMatrix hi = hnf_with_modulus(imat.cols() ? imat : IntMatrix(n, 1), p);
            // multiplier ring of I: y with coords_I(y * g_k) = 0 mod p for all k
            std::vector<std::vector<Int>> stacked;
            for (std::size_t k = 0; k < n; ++k) {
                std::vector<Int> gk = hi.column(k);
                // matrix of y -> y*g_k in order coords: columns = basis_j * g_k
                for (std::size_t r = 0; r < n; ++r) stacked.emplace_back(n);
                std::size_t base_row = stacked.size() - n;
                for (std::size_t j = 0; j < n; ++j) {
                    QVec prod = qvec(n);
                    for (std::size_t i2 = 0; i2 < n; ++i2) {
                        if (gk[i2] == 0) continue;
                        QVec bp = basis_prod(ctx, j, i2);
                        for (std::size_t r = 0; r < n; ++r) prod[r] += Rat(gk[i2]) * bp[r];
                    }
                    // coords in I basis: solve hi * z = prod (hi upper echelon, integral)
                    std::vector<Int> pv(n);
                    for (std::size_t r = 0; r < n; ++r) {
                        if (prod[r].get_den() != 1) throw internal_error("maximal order: ideal product");
                        pv[r] = prod[r].get_num();
                    }
                    std::vector<Int> z;
                    if (!hnf_contains(hi, pv, &z)) throw internal_error("maximal order: not an ideal");
                    for (std::size_t r = 0; r < n; ++r) stacked[base_row + r][j] = fmod(z[r], p);
                }
            }
            auto ring = fp_kernel(stacked, p);
            // Y = lattice of solutions + p*Z^n; O' = (1/p) Y
            if (ring.empty()) break;  // p-maximal already
            IntMatrix ymat = IntMatrix::from_columns(n, ring);
            IntMatrix hy = hnf_with_modulus(ymat, p);
            Int dy = 1;
            for (std::size_t i = 0; i < n; ++i) dy *= hy(i, i);
            if (dy == pow_int(p, static_cast<unsigned long>(n))) break;  // Y = pO: stable
            // new basis rows: (1/(den*p)) * W^T * hy columns, transposed back to rows
            IntMatrix neww(n, n);
            for (std::size_t k = 0; k < n; ++k) {
                std::vector<Int> y = hy.column(k);
                for (std::size_t j = 0; j < n; ++j) {
                    Int s = 0;
                    for (std::size_t i = 0; i < n; ++i) s += Int(y[i]) * w(i, j);
                    neww(k, j) = s;
                }
            }
            w = neww;
            den *= p;
            // normalize: HNF on basis rows, divide out content
            IntMatrix h = hnf(w.transpose()).transpose();
            Int g = den;
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = 0; j < n; ++j) g = gcd(g, h(i, j));
            if (g > 1) {
                for (std::size_t i = 0; i < n; ++i)
                    for (std::size_t j = 0; j < n; ++j) h(i, j) = exact_div(h(i, j), g);
                den = exact_div(den, g);
            }
            w = h;
        }
    }

    // canonical ordered basis: columns of the column-HNF (ascending pivot rows)
    IntMatrix h = hnf(w.transpose());
    basis_num_ = h.transpose();
    basis_den_ = den;
    // index = den^n / |det|
    Int d = basis_num_.det();
    if (d < 0) d = -d;
    index_ = exact_div(pow_int(den, static_cast<unsigned long>(n)), d);
    disc_ = exact_div(poly_disc_, index_ * index_);

    // power -> integral coords transform: c = den * (W^T)^{-1} q = den*adj/det
    IntMatrix wt = basis_num_.transpose();
    Int dt = wt.det();
    IntMatrix adj(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            IntMatrix sub(n - 1, n - 1);
            for (std::size_t r = 0, rr = 0; r < n; ++r) {
                if (r == j) continue;
                for (std::size_t c = 0, cc = 0; c < n; ++c) {
                    if (c == i) continue;
                    sub(rr, cc) = wt(r, c);
                    ++cc;
                }
                ++rr;
            }
            Int cof = (n == 1) ? Int(1) : sub.det();
            if ((i + j) % 2) cof = -cof;
            adj(i, j) = cof;
        }
    // c = den * adj * q / dt
    to_int_num_ = adj.mul_scalar(den);
    to_int_den_ = dt;
    if (to_int_den_ < 0) {
        to_int_den_ = -to_int_den_;
        to_int_num_ = -to_int_num_;
    }
    Int g = to_int_den_;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) g = gcd(g, to_int_num_(i, j));
    if (g > 1) {
        to_int_den_ = exact_div(to_int_den_, g);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) to_int_num_(i, j) = exact_div(to_int_num_(i, j), g);
    }

    // integral multiplication table
    OrderCtx ctx = make_ctx(basis_num_, basis_den_);
    mult_table_.assign(n, std::vector<std::vector<Int>>(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j <= i; ++j) {
            QVec pr = basis_prod(ctx, i, j);
            std::vector<Int> c(n);
            for (std::size_t k = 0; k < n; ++k) {
                if (pr[k].get_den() != 1)
                    throw internal_error("maximal order: multiplication table not integral");
                c[k] = pr[k].get_num();
            }
            mult_table_[i][j] = c;
            mult_table_[j][i] = c;
        }
}

bool NumberField::is_totally_real() const {
    if (n_ != 2) return false;
    return poly_[1] * poly_[1] - 4 * poly_[0] > 0;
}

bool NumberField::is_cm_quartic() const {
    if (n_ != 4 || poly_[1] != 0 || poly_[3] != 0) return false;
    const Int &B = poly_[0], &A = poly_[2];
    Int d = A * A - 4 * B;
    return A > 0 && B > 0 && d > 0;
}

FieldElem NumberField::zero() const { return element(qvec(n_)); }

FieldElem NumberField::one() const {
    QVec c = qvec(n_);
    c[0] = 1;
    return element(c);
}

FieldElem NumberField::gen() const {
    QVec c = qvec(n_);
    c[1] = 1;
    return element(c);
}

FieldElem NumberField::element(std::vector<Rat> power_coords) const {
    return FieldElem(shared_from_this(), std::move(power_coords));
}

FieldElem NumberField::from_integral_coords(const std::vector<Rat>& coords) const {
    QVec pw = qvec(n_);
    for (std::size_t i = 0; i < n_; ++i)
        for (std::size_t j = 0; j < n_; ++j)
            pw[j] += coords[i] * [&] {
                Rat q(basis_num_(i, j), basis_den_);
                q.canonicalize();
                return q;
            }();
    return element(pw);
}

FieldElem NumberField::from_integral_coords(const std::vector<Int>& coords) const {
    QVec q(coords.begin(), coords.end());
    return from_integral_coords(q);
}

const std::vector<Int>& NumberField::basis_product(std::size_t i, std::size_t j) const {
    return mult_table_[i][j];
}

std::vector<std::vector<Rat>> NumberField::mul_matrix(const FieldElem& x) const {
    // columns j: power coords of x * alpha^j
    std::size_t n = n_;
    std::vector<QVec> cols(n, qvec(n));
    QVec cur = x.coords();
    cols[0] = cur;
    for (std::size_t j = 1; j < n; ++j) {
        QVec next = qvec(n);
        Rat top = cur[n - 1];
        for (std::size_t k = n - 1; k >= 1; --k) next[k] = cur[k - 1];
        next[0] = 0;
        if (top != 0)
            for (std::size_t k = 0; k < n; ++k) next[k] += top * alpha_pow_[0][k];
        cols[j] = next;
        cur = next;
    }
    // transpose to row-major matrix m with m[i][j] = cols[j][i]
    std::vector<QVec> m(n, qvec(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) m[i][j] = cols[j][i];
    return m;
}

EmbeddingSet NumberField::embeddings(mpfr_prec_t precision) const {
    if (precision < 64) throw invalid_input("embeddings: precision >= 64 required");
    mpfr_prec_t wp = precision + 64;
    EmbeddingSet es;
    es.field = shared_from_this();
    es.precision = precision;
    if (n_ == 2) {
        Real a1(poly_[1], wp), a0(poly_[0], wp), two(2.0, wp);
        Real d = a1 * a1 - Real(4.0, wp) * a0;
        if (d.sign() > 0) {
            Real s = d.sqrt();
            es.values.push_back(Complex((-a1 - s) / two, Real(0.0, wp)));
            es.values.push_back(Complex((-a1 + s) / two, Real(0.0, wp)));
        } else {
            Real s = (-d).sqrt();
            es.values.push_back(Complex(-a1 / two, s / two));
            es.values.push_back(Complex(-a1 / two, -(s / two)));
        }
        return es;
    }
    if (!is_cm_quartic()) throw invalid_input("embeddings: only quadratic or CM quartic fields");
    Real A(poly_[2], wp), B(poly_[0], wp), two(2.0, wp);
    Real d = A * A - Real(4.0, wp) * B;
    Real s = d.sqrt();
    // z = (-A -+ s)/2 both negative; y = sqrt(-z), y1 > y2 > 0
    Real y1 = ((A + s) / two).sqrt();
    Real y2 = ((A - s) / two).sqrt();
    Real zero(0.0, wp);
    es.values.push_back(Complex(zero, y1));
    es.values.push_back(Complex(zero, -y1));
    es.values.push_back(Complex(zero, y2));
    es.values.push_back(Complex(zero, -y2));
    return es;
}

Complex EmbeddingSet::eval(const FieldElem& x, std::size_t i) const {
    const Complex& r = values.at(i);
    mpfr_prec_t wp = r.prec();
    Complex acc(wp);
    const auto& c = x.coords();
    for (std::size_t k = c.size(); k-- > 0;) {
        acc = acc * r;
        acc.re += Real(c[k], wp);
    }
    return acc;
}

// ---------------------------------------------------------------------------
// FieldElem

FieldElem::FieldElem(FieldPtr field, std::vector<Rat> power_coords)
    : field_(std::move(field)), c_(std::move(power_coords)) {
    if (c_.size() != field_->degree()) throw invalid_input("FieldElem: wrong coordinate count");
    for (auto& q : c_) q.canonicalize();
}

bool FieldElem::is_zero() const { return all_zero(c_); }

bool FieldElem::is_rational() const {
    for (std::size_t i = 1; i < c_.size(); ++i)
        if (c_[i] != 0) return false;
    return true;
}

Rat FieldElem::rational_value() const {
    if (!is_rational()) throw invalid_input("rational_value: not rational");
    return c_[0];
}

FieldElem operator+(const FieldElem& a, const FieldElem& b) {
    if (a.field_ != b.field_) throw invalid_input("FieldElem: field mismatch");
    auto c = a.c_;
    for (std::size_t i = 0; i < c.size(); ++i) c[i] += b.c_[i];
    return FieldElem(a.field_, c);
}

FieldElem operator-(const FieldElem& a, const FieldElem& b) {
    if (a.field_ != b.field_) throw invalid_input("FieldElem: field mismatch");
    auto c = a.c_;
    for (std::size_t i = 0; i < c.size(); ++i) c[i] -= b.c_[i];
    return FieldElem(a.field_, c);
}

FieldElem FieldElem::operator-() const {
    auto c = c_;
    for (auto& q : c) q = -q;
    return FieldElem(field_, c);
}

FieldElem operator*(const FieldElem& a, const FieldElem& b) {
    if (a.field_ != b.field_) throw invalid_input("FieldElem: field mismatch");
    std::size_t n = a.c_.size();
    std::vector<Rat> prod(2 * n - 1, Rat(0));
    for (std::size_t i = 0; i < n; ++i) {
        if (a.c_[i] == 0) continue;
        for (std::size_t j = 0; j < n; ++j) prod[i + j] += a.c_[i] * b.c_[j];
    }
    std::vector<Rat> out(prod.begin(), prod.begin() + n);
    for (std::size_t k = 0; k + 1 < n; ++k)
        if (prod[n + k] != 0)
            for (std::size_t j = 0; j < n; ++j) out[j] += prod[n + k] * a.field_->alpha_pow_[k][j];
    return FieldElem(a.field_, out);
}

bool FieldElem::operator==(const FieldElem& o) const { return field_ == o.field_ && c_ == o.c_; }

FieldElem FieldElem::pow(long e) const {
    FieldElem base = e < 0 ? inv() : *this;
    unsigned long k = e < 0 ? -static_cast<unsigned long>(e) : e;
    FieldElem acc = field_->one();
    while (k) {
        if (k & 1) acc = acc * base;
        base = base * base;
        k >>= 1;
    }
    return acc;
}

FieldElem FieldElem::inv() const {
    if (is_zero()) throw invalid_input("FieldElem::inv: division by zero");
    // extended Euclid on (f, g) in Q[x]
    std::size_t n = c_.size();
    std::vector<Rat> f(n + 1), g(c_);
    for (std::size_t i = 0; i < n; ++i) f[i] = Rat(field_->poly()[i]);
    f[n] = 1;
    auto deg = [](const std::vector<Rat>& p) {
        for (std::size_t i = p.size(); i-- > 0;)
            if (p[i] != 0) return static_cast<long>(i);
        return -1L;
    };
    std::vector<Rat> r0 = f, r1 = g, s0{Rat(0)}, s1{Rat(1)};
    while (deg(r1) > 0) {
        long d0 = deg(r0), d1 = deg(r1);
        if (d0 < d1) {
            std::swap(r0, r1);
            std::swap(s0, s1);
            continue;
        }
        Rat q = r0[d0] / r1[d1];
        long shift = d0 - d1;
        // r0 -= q x^shift r1 ; s0 -= q x^shift s1
        for (long i = 0; i <= d1; ++i) r0[i + shift] -= q * r1[i];
        if (s0.size() < s1.size() + shift) s0.resize(s1.size() + shift, Rat(0));
        for (std::size_t i = 0; i < s1.size(); ++i) s0[i + shift] -= q * s1[i];
        if (deg(r0) < deg(r1)) {
            std::swap(r0, r1);
            std::swap(s0, s1);
        }
    }
    if (deg(r1) != 0) throw internal_error("FieldElem::inv: gcd not constant (reducible field?)");
    // s1 * g = r1 (mod f): inverse = s1 / r1
    std::vector<Rat> out(n, Rat(0));
    for (std::size_t i = 0; i < s1.size() && i < n; ++i) out[i] = s1[i] / r1[0];
    // s1 may have degree >= n in pathological paths; reduce just in case
    for (std::size_t i = n; i < s1.size(); ++i)
        if (s1[i] != 0) throw internal_error("FieldElem::inv: unreduced bezout");
    return FieldElem(field_, out);
}

FieldElem FieldElem::conjugate() const {
    std::size_t n = c_.size();
    if (n == 2) {
        // alpha -> -a1 - alpha
        std::vector<Rat> out{c_[0] - c_[1] * Rat(field_->poly()[1]), -c_[1]};
        return FieldElem(field_, out);
    }
    if (n == 4) {
        auto out = c_;
        out[1] = -out[1];
        out[3] = -out[3];
        return FieldElem(field_, out);
    }
    throw invalid_input("conjugate: unsupported degree");
}

Rat FieldElem::norm() const { return rat_det(field_->mul_matrix(*this)); }

Rat FieldElem::trace() const {
    auto m = field_->mul_matrix(*this);
    Rat t(0);
    for (std::size_t i = 0; i < m.size(); ++i) t += m[i][i];
    return t;
}

std::vector<Rat> FieldElem::integral_coords() const {
    std::size_t n = c_.size();
    std::vector<Rat> out(n, Rat(0));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) out[i] += Rat(field_->to_int_num_(i, j)) * c_[j];
        out[i] /= Rat(field_->to_int_den_);
        out[i].canonicalize();
    }
    return out;
}

bool FieldElem::is_integral() const {
    for (auto& q : integral_coords())
        if (q.get_den() != 1) return false;
    return true;
}

Int FieldElem::denominator() const {
    Int d = 1;
    for (auto& q : integral_coords()) d = lcm(d, q.get_den());
    return d;
}

FieldElem FieldElem::scale(const Rat& q) const {
    auto c = c_;
    for (auto& x : c) x *= q;
    return FieldElem(field_, c);
}

std::string FieldElem::str(const std::string& var) const {
    std::ostringstream os;
    bool first = true;
    for (std::size_t i = c_.size(); i-- > 0;) {
        if (c_[i] == 0) continue;
        Rat q = c_[i];
        if (!first) os << (q < 0 ? " - " : " + ");
        else if (q < 0) os << "-";
        Rat a = q < 0 ? Rat(-q) : q;
        bool unit_coeff = (a == 1) && i > 0;
        if (!unit_coeff) os << a;
        if (i > 0) {
            if (!unit_coeff) os << "*";
            os << var;
            if (i > 1) os << "^" << i;
        }
        first = false;
    }
    if (first) os << "0";
    return os.str();
}

// ---------------------------------------------------------------------------
// CM field pair

FieldElem CMFieldPair::to_quartic(const FieldElem& x0) const {
    const auto& c = x0.coords();
    return K->element({c[0], Rat(0), c[1], Rat(0)});
}

FieldElem CMFieldPair::to_subfield(const FieldElem& x) const {
    const auto& c = x.coords();
    if (c[1] != 0 || c[3] != 0) throw invalid_input("to_subfield: element not in the subfield");
    return K0->element({c[0], c[2]});
}

CMFieldPair make_cm_field(const Int& A, const Int& B) {
    Int d = A * A - 4 * B;
    if (d == 0 || is_square(d)) throw invalid_input("make_cm_field: reducible polynomial");
    if (is_square(B)) {
        Int b = isqrt(B);
        if ((2 * b - A >= 0 && is_square(Int(2 * b - A))) ||
            (-2 * b - A >= 0 && is_square(Int(-2 * b - A))))
            throw invalid_input("make_cm_field: reducible polynomial");
    }
    if (d < 0) throw invalid_input("make_cm_field: real subfield not totally real");
    if (A <= 0 || B <= 0) throw invalid_input("make_cm_field: field not totally imaginary");
    CMFieldPair pair;
    pair.K = NumberField::even_quartic(A, B);
    pair.K0 = NumberField::quadratic(A, B);
    return pair;
}

int sign_a_plus_b_sqrt(const Rat& a, const Rat& b, const Int& D) {
    if (b == 0) return a == 0 ? 0 : (a > 0 ? 1 : -1);
    if (a == 0) return b > 0 ? 1 : -1;
    if (a > 0 && b > 0) return 1;
    if (a < 0 && b < 0) return -1;
    Rat a2 = a * a, b2d = b * b * Rat(D);
    if (a2 == b2d) return 0;  // impossible for nonsquare D with a,b != 0
    if (a2 > b2d) return a > 0 ? 1 : -1;
    return b > 0 ? 1 : -1;
}

std::vector<int> real_signs(const FieldElem& x) {
    const auto& f = x.field();
    if (!f->is_totally_real()) throw invalid_input("real_signs: field not totally real");
    const Int& a1 = f->poly()[1];
    Int d = a1 * a1 - 4 * f->poly()[0];
    const Rat &a = x.coords()[0], &b = x.coords()[1];
    // value at root (-a1 -+ sqrt(d))/2, ascending order
    Rat t = 2 * a - Rat(a1) * b;
    return {sign_a_plus_b_sqrt(t, -b, d), sign_a_plus_b_sqrt(t, b, d)};
}

bool is_totally_positive(const FieldElem& x) {
    if (x.is_zero()) throw invalid_input("is_totally_positive: zero element");
    auto s = real_signs(x);
    return s[0] > 0 && s[1] > 0;
}

bool has_sqrt_in_quadratic(const FieldElem& y, FieldElem* root) {
    const auto& f = y.field();
    if (f->degree() != 2) throw invalid_input("has_sqrt_in_quadratic: not quadratic");
    const Rat &c = y.coords()[0], &d = y.coords()[1];
    Rat a1(f->poly()[1]), a0(f->poly()[0]);
    // q = 0 branch: y = c rational square
    if (d == 0) {
        Rat r;
        if (c >= 0 && is_square(c, &r)) {
            if (root) *root = f->element({r, Rat(0)});
            return true;
        }
    }
    // (p + q alpha)^2 = y: (disc) t^2 + (2 a1 d - 4c) t + d^2 = 0 with t = q^2
    Rat disc_q = a1 * a1 - 4 * a0;
    Rat bq = 2 * a1 * d - 4 * c, cq = d * d;
    Rat delta = bq * bq - 4 * disc_q * cq;
    Rat sq;
    if (!is_square(delta, &sq)) return false;
    for (int s : {1, -1}) {
        Rat t = (-bq + Rat(s) * sq) / (2 * disc_q);
        if (t < 0) continue;
        Rat q;
        if (!is_square(t, &q)) continue;
        if (q == 0) {
            if (d != 0) continue;
            Rat r;
            if (c >= 0 && is_square(c, &r)) {
                if (root) *root = f->element({r, Rat(0)});
                return true;
            }
            continue;
        }
        Rat p = (d / q + a1 * q) / 2;
        // verify
        Rat cc = p * p - a0 * q * q, dd = q * (2 * p - a1 * q);
        if (cc == c && dd == d) {
            if (root) *root = f->element({p, q});
            return true;
        }
        // the other sign of q
        Rat p2 = (d / (-q) + a1 * (-q)) / 2;
        cc = p2 * p2 - a0 * q * q;
        dd = (-q) * (2 * p2 + a1 * q);
        if (cc == c && dd == d) {
            if (root) *root = f->element({p2, -q});
            return true;
        }
    }
    return false;
}

}  // namespace qcm
