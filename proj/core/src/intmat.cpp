#include "qcm/intmat.hpp"

#include <algorithm>
#include <ostream>
#include <random>

namespace qcm {

std::map<Int, unsigned> factorize(Int n) {
    if (n < 0) n = -n;
    std::map<Int, unsigned> out;
    if (n <= 1) return out;
    for (long p : {2L, 3L, 5L, 7L, 11L, 13L}) {
        while (divides(p, n)) {
            ++out[p];
            n = exact_div(n, p);
        }
    }
    Int d = 17;
    while (n > 1 && d * d <= n && d < 1000000) {
        while (divides(d, n)) {
            ++out[d];
            n = exact_div(n, d);
        }
        d += 2;
    }
    // Remaining cofactor is prime, a prime square, or needs rho.
    std::vector<Int> stack;
    if (n > 1) stack.push_back(n);
    std::mt19937_64 rng(0x5eed);
    while (!stack.empty()) {
        Int m = stack.back();
        stack.pop_back();
        if (m == 1) continue;
        if (is_probable_prime(m)) {
            ++out[m];
            continue;
        }
        if (is_square(m)) {
            Int r = isqrt(m);
            stack.push_back(r);
            stack.push_back(r);
            continue;
        }
        // Pollard rho with random increment.
        Int factor = 0;
        while (factor == 0 || factor == m) {
            Int c = Int(rng() % 1000 + 1);
            Int x = Int(rng() % 1000 + 2), y = x, g = 1;
            while (g == 1) {
                x = fmod(x * x + c, m);
                y = fmod(y * y + c, m);
                y = fmod(y * y + c, m);
                g = gcd(x >= y ? x - y : y - x, m);
                if (x == y) break;
            }
            if (g != 1 && g != m) factor = g;
        }
        stack.push_back(factor);
        stack.push_back(exact_div(m, factor));
    }
    return out;
}

std::vector<Int> prime_divisors(const Int& n) {
    std::vector<Int> out;
    for (auto& [p, e] : factorize(n)) out.push_back(p);
    return out;
}

Int squarefree_part(const Int& n) {
    if (n == 0) return 0;
    Int m = n < 0 ? Int(-n) : n;
    Int sf = n < 0 ? Int(-1) : Int(1);
    for (auto& [p, e] : factorize(m))
        if (e % 2) sf *= p;
    return sf;
}

Int sqrt_mod_prime(const Int& a0, const Int& p) {
    Int a = fmod(a0, p);
    if (a == 0) return 0;
    if (p == 2) return a;
    if (kronecker(a, p) != 1) throw invalid_input("sqrt_mod_prime: nonresidue");
    if (fmod(p, 4) == 3) return pow_mod(a, (p + 1) / 4, p);
    // Tonelli-Shanks.
    Int q = p - 1;
    unsigned long s = 0;
    while (fmod(q, 2) == 0) {
        q /= 2;
        ++s;
    }
    Int z = 2;
    while (kronecker(z, p) != -1) ++z;
    Int m = s, c = pow_mod(z, q, p), t = pow_mod(a, q, p), r = pow_mod(a, (q + 1) / 2, p);
    while (t != 1) {
        Int tt = t;
        unsigned long i = 0;
        while (tt != 1) {
            tt = fmod(tt * tt, p);
            ++i;
        }
        Int b = c;
        for (Int j = 0; j < m - Int(i) - 1; ++j) b = fmod(b * b, p);
        m = Int(i);
        c = fmod(b * b, p);
        t = fmod(t * c, p);
        r = fmod(r * b, p);
    }
    return r;
}

IntMatrix::IntMatrix(std::initializer_list<std::initializer_list<Int>> rows) {
    rows_ = rows.size();
    cols_ = rows_ ? rows.begin()->size() : 0;
    a_.reserve(rows_ * cols_);
    for (auto& r : rows) {
        if (r.size() != cols_) throw invalid_input("IntMatrix: ragged initializer");
        for (auto& x : r) a_.push_back(x);
    }
}

IntMatrix IntMatrix::identity(std::size_t n) {
    IntMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
}

IntMatrix IntMatrix::diagonal(const std::vector<Int>& d) {
    IntMatrix m(d.size(), d.size());
    for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
    return m;
}

IntMatrix IntMatrix::from_columns(std::size_t rows, const std::vector<std::vector<Int>>& cols) {
    IntMatrix m(rows, cols.size());
    for (std::size_t j = 0; j < cols.size(); ++j) {
        if (cols[j].size() != rows) throw invalid_input("from_columns: bad column length");
        for (std::size_t i = 0; i < rows; ++i) m(i, j) = cols[j][i];
    }
    return m;
}

IntMatrix IntMatrix::transpose() const {
    IntMatrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
}

IntMatrix IntMatrix::operator*(const IntMatrix& o) const {
    if (cols_ != o.rows_) throw invalid_input("IntMatrix::mul: shape mismatch");
    IntMatrix r(rows_, o.cols_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t k = 0; k < cols_; ++k) {
            const Int& x = (*this)(i, k);
            if (x == 0) continue;
            for (std::size_t j = 0; j < o.cols_; ++j) r(i, j) += x * o(k, j);
        }
    return r;
}

IntMatrix IntMatrix::operator+(const IntMatrix& o) const {
    IntMatrix r(rows_, cols_);
    for (std::size_t i = 0; i < a_.size(); ++i) r.a_[i] = a_[i] + o.a_[i];
    return r;
}

IntMatrix IntMatrix::operator-(const IntMatrix& o) const {
    IntMatrix r(rows_, cols_);
    for (std::size_t i = 0; i < a_.size(); ++i) r.a_[i] = a_[i] - o.a_[i];
    return r;
}

IntMatrix IntMatrix::operator-() const {
    IntMatrix r(rows_, cols_);
    for (std::size_t i = 0; i < a_.size(); ++i) r.a_[i] = -a_[i];
    return r;
}

IntMatrix IntMatrix::mul_scalar(const Int& c) const {
    IntMatrix r(rows_, cols_);
    for (std::size_t i = 0; i < a_.size(); ++i) r.a_[i] = c * a_[i];
    return r;
}

std::vector<Int> IntMatrix::mul_vec(const std::vector<Int>& v) const {
    if (v.size() != cols_) throw invalid_input("mul_vec: shape mismatch");
    std::vector<Int> r(rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) r[i] += (*this)(i, j) * v[j];
    return r;
}

std::vector<Int> IntMatrix::column(std::size_t j) const {
    std::vector<Int> c(rows_);
    for (std::size_t i = 0; i < rows_; ++i) c[i] = (*this)(i, j);
    return c;
}

void IntMatrix::set_column(std::size_t j, const std::vector<Int>& c) {
    for (std::size_t i = 0; i < rows_; ++i) (*this)(i, j) = c[i];
}

IntMatrix IntMatrix::hstack(const IntMatrix& right) const {
    if (rows_ != right.rows_) throw invalid_input("hstack: row mismatch");
    IntMatrix r(rows_, cols_ + right.cols_);
    for (std::size_t i = 0; i < rows_; ++i) {
        for (std::size_t j = 0; j < cols_; ++j) r(i, j) = (*this)(i, j);
        for (std::size_t j = 0; j < right.cols_; ++j) r(i, cols_ + j) = right(i, j);
    }
    return r;
}

IntMatrix IntMatrix::submatrix(std::size_t i0, std::size_t j0, std::size_t nrows,
                               std::size_t ncols) const {
    IntMatrix r(nrows, ncols);
    for (std::size_t i = 0; i < nrows; ++i)
        for (std::size_t j = 0; j < ncols; ++j) r(i, j) = (*this)(i0 + i, j0 + j);
    return r;
}

bool IntMatrix::is_zero() const {
    return std::all_of(a_.begin(), a_.end(), [](const Int& x) { return x == 0; });
}

Int IntMatrix::det() const {
    if (!is_square()) throw invalid_input("det: not square");
    std::size_t n = rows_;
    if (n == 0) return 1;
    IntMatrix m = *this;
    Int prev = 1;
    int sign = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (m(k, k) == 0) {
            std::size_t piv = k + 1;
            while (piv < n && m(piv, k) == 0) ++piv;
            if (piv == n) return 0;
            for (std::size_t j = 0; j < n; ++j) std::swap(m(k, j), m(piv, j));
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i)
            for (std::size_t j = k + 1; j < n; ++j)
                m(i, j) = exact_div(m(k, k) * m(i, j) - m(i, k) * m(k, j), prev);
        prev = m(k, k);
    }
    return sign > 0 ? m(n - 1, n - 1) : Int(-m(n - 1, n - 1));
}

std::ostream& operator<<(std::ostream& os, const IntMatrix& m) {
    os << "[";
    for (std::size_t i = 0; i < m.rows(); ++i) {
        os << (i ? " [" : "[");
        for (std::size_t j = 0; j < m.cols(); ++j) os << (j ? "," : "") << m(i, j).get_str();
        os << "]" << (i + 1 < m.rows() ? ",\n" : "");
    }
    return os << "]";
}

namespace {

// Core column-HNF elimination shared by the plain, modular and transform
// variants. Works bottom row up, right to left; column ops only.
IntMatrix hnf_impl(const IntMatrix& m, const Int& modulus, IntMatrix* transform) {
    std::size_t n = m.rows();
    IntMatrix w = m;
    bool modular = modulus != 0;
    if (modular) {
        // Span contains modulus*Z^n; append those columns so reduction mod
        // modulus is a span-preserving operation. Only the original block is
        // pre-reduced (reducing the appended diagonal would erase it).
        for (std::size_t i = 0; i < w.rows(); ++i)
            for (std::size_t j = 0; j < w.cols(); ++j) w(i, j) = fmod(w(i, j), modulus);
        w = w.hstack(IntMatrix::diagonal(std::vector<Int>(n, modulus)));
        transform = nullptr;  // transform is meaningless with appended columns
    }
    std::size_t k = w.cols();
    IntMatrix t = IntMatrix::identity(k);

    auto reduce_entry = [&](Int& x) {
        if (modular) x = fmod(x, modulus);
    };

    // next column slot to fill, from the right
    std::size_t slot = k;
    std::vector<std::size_t> pivot_col;   // per processed row (descending), pivot col or npos
    std::vector<std::size_t> pivot_row;   // same length
    for (std::size_t ii = n; ii-- > 0;) {
        // Eliminate row ii among columns [0, slot).
        // Find a column with nonzero entry in row ii.
        std::size_t p = slot;
        for (std::size_t j = slot; j-- > 0;) {
            if (w(ii, j) != 0) {
                p = j;
                break;
            }
        }
        if (p == slot) continue;  // row has no pivot
        // Combine all other nonzero columns into gcd at column p.
        for (std::size_t j = p; j-- > 0;) {
            if (w(ii, j) == 0) continue;
            Int u, v;
            Int g = xgcd(w(ii, p), w(ii, j), u, v);
            Int a = exact_div(w(ii, p), g), b = exact_div(w(ii, j), g);
            // (col_p, col_j) <- (u*col_p + v*col_j, -b*col_p + a*col_j)
            for (std::size_t i = 0; i <= ii; ++i) {
                Int cp = w(i, p), cj = w(i, j);
                w(i, p) = u * cp + v * cj;
                w(i, j) = a * cj - b * cp;
                reduce_entry(w(i, p));
                reduce_entry(w(i, j));
            }
            if (transform)
                for (std::size_t i = 0; i < k; ++i) {
                    Int cp = t(i, p), cj = t(i, j);
                    t(i, p) = u * cp + v * cj;
                    t(i, j) = a * cj - b * cp;
                }
        }
        // In the modular path the gcd combination may have landed on 0 mod modulus.
        if (w(ii, p) == 0) {
            if (!modular) throw internal_error("hnf: lost pivot");
            // modulus*e_ii is in the span; reinstate it as the pivot column.
            w(ii, p) = modulus;
            for (std::size_t i = 0; i < ii; ++i) w(i, p) = 0;
        }
        // Make pivot positive.
        if (w(ii, p) < 0) {
            for (std::size_t i = 0; i <= ii; ++i) w(i, p) = -w(i, p);
            if (transform)
                for (std::size_t i = 0; i < k; ++i) t(i, p) = -t(i, p);
        }
        // Move pivot column into the rightmost free slot.
        --slot;
        if (p != slot) {
            for (std::size_t i = 0; i < n; ++i) std::swap(w(i, p), w(i, slot));
            if (transform)
                for (std::size_t i = 0; i < k; ++i) std::swap(t(i, p), t(i, slot));
        }
        pivot_col.push_back(slot);
        pivot_row.push_back(ii);
    }
    // Reduce entries right of each pivot: for pivot at (r, c), reduce w(r, j)
    // for j > c mod w(r, c).
    for (std::size_t idx = 0; idx < pivot_col.size(); ++idx) {
        std::size_t c = pivot_col[idx], r = pivot_row[idx];
        const Int piv = w(r, c);
        for (std::size_t j = c + 1; j < k; ++j) {
            Int q = fdiv(w(r, j), piv);
            if (q == 0) continue;
            for (std::size_t i = 0; i <= r; ++i) w(i, j) -= q * w(i, c);
            if (transform)
                for (std::size_t i = 0; i < k; ++i) t(i, j) -= q * t(i, c);
        }
    }
    if (transform) *transform = t;
    // Columns [slot, k) hold the echelon basis; leading columns are zero.
    IntMatrix h = w.submatrix(0, slot, n, k - slot);
    return h;
}

}  // namespace

IntMatrix hnf(const IntMatrix& m) { return hnf_impl(m, 0, nullptr); }

IntMatrix hnf_with_modulus(const IntMatrix& m, const Int& modulus) {
    if (modulus <= 0) throw invalid_input("hnf_with_modulus: modulus must be positive");
    return hnf_impl(m, modulus, nullptr);
}

IntMatrix hnf_transform(const IntMatrix& m, IntMatrix& transform) {
    return hnf_impl(m, 0, &transform);
}

SmithForm snf(const IntMatrix& m) {
    std::size_t nr = m.rows(), nc = m.cols();
    SmithForm s{m, IntMatrix::identity(nr), IntMatrix::identity(nc)};
    IntMatrix& d = s.d;
    std::size_t t = 0, steps = std::min(nr, nc);

    auto row_op = [&](std::size_t i1, std::size_t i2, const Int& u, const Int& v, const Int& a,
                      const Int& b) {
        // (row_i1, row_i2) <- (u*r1 + v*r2, -b*r1 + a*r2), applied to d and s.u
        for (std::size_t j = 0; j < nc; ++j) {
            Int x = d(i1, j), y = d(i2, j);
            d(i1, j) = u * x + v * y;
            d(i2, j) = a * y - b * x;
        }
        for (std::size_t j = 0; j < nr; ++j) {
            Int x = s.u(i1, j), y = s.u(i2, j);
            s.u(i1, j) = u * x + v * y;
            s.u(i2, j) = a * y - b * x;
        }
    };
    auto col_op = [&](std::size_t j1, std::size_t j2, const Int& u, const Int& v, const Int& a,
                      const Int& b) {
        for (std::size_t i = 0; i < nr; ++i) {
            Int x = d(i, j1), y = d(i, j2);
            d(i, j1) = u * x + v * y;
            d(i, j2) = a * y - b * x;
        }
        for (std::size_t i = 0; i < nc; ++i) {
            Int x = s.v(i, j1), y = s.v(i, j2);
            s.v(i, j1) = u * x + v * y;
            s.v(i, j2) = a * y - b * x;
        }
    };

    for (; t < steps; ++t) {
        // Find a nonzero entry in the remaining block.
        std::size_t pi = t, pj = t;
        bool found = false;
        for (std::size_t i = t; i < nr && !found; ++i)
            for (std::size_t j = t; j < nc && !found; ++j)
                if (d(i, j) != 0) {
                    pi = i;
                    pj = j;
                    found = true;
                }
        if (!found) break;
        if (pi != t) row_op(t, pi, 0, 1, 0, -1);  // swap rows (u v; -b a) = (0 1; -1 0)
        if (pj != t) col_op(t, pj, 0, 1, 0, -1);

        bool dirty = true;
        while (dirty) {
            dirty = false;
            for (std::size_t i = t + 1; i < nr; ++i) {
                if (d(i, t) == 0) continue;
                if (divides(d(t, t), d(i, t))) {
                    // plain subtraction keeps the pivot row untouched
                    row_op(t, i, 1, 0, 1, exact_div(d(i, t), d(t, t)));
                } else {
                    Int u, v;
                    Int g = xgcd(d(t, t), d(i, t), u, v);
                    row_op(t, i, u, v, exact_div(d(t, t), g), exact_div(d(i, t), g));
                    dirty = true;
                }
            }
            for (std::size_t j = t + 1; j < nc; ++j) {
                if (d(t, j) == 0) continue;
                if (divides(d(t, t), d(t, j))) {
                    col_op(t, j, 1, 0, 1, exact_div(d(t, j), d(t, t)));
                } else {
                    Int u, v;
                    Int g = xgcd(d(t, t), d(t, j), u, v);
                    col_op(t, j, u, v, exact_div(d(t, t), g), exact_div(d(t, j), g));
                    dirty = true;
                }
            }
            // exact column clears cannot re-dirty the pivot column, but a
            // non-exact one can; one more row sweep settles it
            for (std::size_t i = t + 1; i < nr && !dirty; ++i)
                if (d(i, t) != 0) dirty = true;
        }
        // Enforce divisibility of the remaining block by d(t,t).
        bool redo = false;
        for (std::size_t i = t + 1; i < nr && !redo; ++i)
            for (std::size_t j = t + 1; j < nc && !redo; ++j)
                if (!divides(d(t, t), d(i, j))) {
                    // add row i to row t, restart elimination at t
                    for (std::size_t jj = 0; jj < nc; ++jj) d(t, jj) += d(i, jj);
                    for (std::size_t jj = 0; jj < nr; ++jj) s.u(t, jj) += s.u(i, jj);
                    redo = true;
                }
        if (redo) {
            --t;
            continue;
        }
        if (d(t, t) < 0) {
            for (std::size_t j = 0; j < nc; ++j) d(t, j) = -d(t, j);
            for (std::size_t j = 0; j < nr; ++j) s.u(t, j) = -s.u(t, j);
        }
    }
    return s;
}

std::vector<Int> SmithForm::diag() const {
    std::vector<Int> out;
    std::size_t n = std::min(d.rows(), d.cols());
    for (std::size_t i = 0; i < n; ++i) out.push_back(d(i, i));
    return out;
}

IntMatrix kernel_basis(const IntMatrix& m) {
    SmithForm s = snf(m);
    std::size_t nc = m.cols();
    std::vector<std::vector<Int>> cols;
    std::size_t r = std::min(m.rows(), nc);
    for (std::size_t j = 0; j < nc; ++j) {
        bool zero_diag = j >= r || s.d(j, j) == 0;
        if (zero_diag) cols.push_back(s.v.column(j));
    }
    return IntMatrix::from_columns(nc, cols);
}

IntMatrix inverse_unimodular(const IntMatrix& m) {
    std::size_t n = m.rows();
    Int dt = m.det();
    if (dt != 1 && dt != -1) throw internal_error("inverse_unimodular: |det| != 1");
    // Solve m * X = I by integer Gaussian elimination on [m | I] using exact
    // rational-free steps: use adjugate via Bareiss on small sizes.
    // Sizes here are tiny (<= ~12), so cofactor expansion cost is acceptable.
    IntMatrix inv(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            // cofactor C_ji
            IntMatrix sub(n - 1, n - 1);
            for (std::size_t r = 0, rr = 0; r < n; ++r) {
                if (r == j) continue;
                for (std::size_t c = 0, cc = 0; c < n; ++c) {
                    if (c == i) continue;
                    sub(rr, cc) = m(r, c);
                    ++cc;
                }
                ++rr;
            }
            Int cof = (n == 1) ? Int(1) : sub.det();
            if ((i + j) % 2) cof = -cof;
            inv(i, j) = dt == 1 ? cof : Int(-cof);
        }
    return inv;
}

bool hnf_contains(const IntMatrix& h, const std::vector<Int>& v, std::vector<Int>* coeffs) {
    std::size_t n = h.rows(), k = h.cols();
    if (v.size() != n) throw invalid_input("hnf_contains: dimension mismatch");
    // Pivot row of column j = the bottom-most nonzero entry.
    std::vector<Int> rem = v, cf(k);
    for (std::size_t j = k; j-- > 0;) {
        std::size_t pr = n;
        for (std::size_t i = n; i-- > 0;)
            if (h(i, j) != 0) {
                pr = i;
                break;
            }
        if (pr == n) continue;
        // Entries of rem below pr must already be zero for solvability.
        if (!divides(h(pr, j), rem[pr])) return false;
        Int q = exact_div(rem[pr], h(pr, j));
        cf[j] = q;
        if (q != 0)
            for (std::size_t i = 0; i <= pr; ++i) rem[i] -= q * h(i, j);
    }
    for (auto& x : rem)
        if (x != 0) return false;
    if (coeffs) *coeffs = cf;
    return true;
}

}  // namespace qcm
