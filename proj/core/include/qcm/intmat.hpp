#pragma once

#include "qcm/integers.hpp"

#include <cstddef>
#include <initializer_list>
#include <iosfwd>
#include <vector>

namespace qcm {

// Dense matrix over Z with arbitrary-precision entries, row-major.
class IntMatrix {
  public:
    IntMatrix() : rows_(0), cols_(0) {}
    IntMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), a_(rows * cols) {}
    IntMatrix(std::initializer_list<std::initializer_list<Int>> rows);

    static IntMatrix identity(std::size_t n);
    static IntMatrix diagonal(const std::vector<Int>& d);
    static IntMatrix zero(std::size_t rows, std::size_t cols) { return IntMatrix(rows, cols); }
    static IntMatrix from_columns(std::size_t rows, const std::vector<std::vector<Int>>& cols);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    Int& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
    const Int& operator()(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

    bool operator==(const IntMatrix& o) const = default;

    IntMatrix transpose() const;
    IntMatrix operator*(const IntMatrix& o) const;
    IntMatrix operator+(const IntMatrix& o) const;
    IntMatrix operator-(const IntMatrix& o) const;
    IntMatrix operator-() const;
    IntMatrix mul_scalar(const Int& c) const;

    std::vector<Int> mul_vec(const std::vector<Int>& v) const;

    std::vector<Int> column(std::size_t j) const;
    void set_column(std::size_t j, const std::vector<Int>& c);
    IntMatrix hstack(const IntMatrix& right) const;
    IntMatrix submatrix(std::size_t i0, std::size_t j0, std::size_t nrows, std::size_t ncols) const;

    bool is_zero() const;
    bool is_square() const { return rows_ == cols_; }

    // Exact determinant (Bareiss fraction-free elimination).
    Int det() const;

    friend std::ostream& operator<<(std::ostream& os, const IntMatrix& m);

  private:
    std::size_t rows_, cols_;
    std::vector<Int> a_;
};

// Column Hermite normal form, upper-triangular convention: zero columns dropped,
// pivot rows strictly increasing left to right, pivots positive, entries to the
// right of each pivot reduced into [0, pivot).
IntMatrix hnf(const IntMatrix& m);

// As hnf(), additionally valid when the column span is known to contain
// modulus * Z^n: entries are reduced mod `modulus` throughout, which keeps
// intermediate coefficients bounded. Result is the HNF of span(m) + modulus*Z^n.
IntMatrix hnf_with_modulus(const IntMatrix& m, const Int& modulus);

// HNF with the unimodular column transform: m * transform has columns
// [0 ... 0 | h] where h = hnf(m).
IntMatrix hnf_transform(const IntMatrix& m, IntMatrix& transform);

// Smith normal form: u * m * v = d, u and v unimodular, d diagonal with
// d(0,0) | d(1,1) | ... (ascending divisibility), nonnegative entries.
struct SmithForm {
    IntMatrix d, u, v;
    std::vector<Int> diag() const;
};
SmithForm snf(const IntMatrix& m);

// Basis of the integer kernel {x : m x = 0}, as matrix columns (may be empty).
IntMatrix kernel_basis(const IntMatrix& m);

// Inverse of a matrix with det = +-1; throws internal_error otherwise.
IntMatrix inverse_unimodular(const IntMatrix& m);

// Membership of v in the column span of an HNF matrix h (upper echelon as
// produced by hnf()). If inside and coeffs != nullptr, the coefficient vector
// is stored there.
bool hnf_contains(const IntMatrix& h, const std::vector<Int>& v, std::vector<Int>* coeffs = nullptr);

}  // namespace qcm
