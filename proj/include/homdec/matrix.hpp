#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "scalar.hpp"

namespace homdec {

template <Field F>
using Vec = std::vector<F>;

// Dense row-major matrix over an exact field.
template <Field F>
class Matrix {
public:
    Matrix() : rows_(0), cols_(0) {}
    Matrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), a_(rows * cols, F(0)) {}
    Matrix(std::size_t rows, std::size_t cols, std::vector<F> entries)
        : rows_(rows), cols_(cols), a_(std::move(entries)) {
        require(a_.size() == rows_ * cols_, "matrix: entry count mismatch");
    }

    static Matrix identity(std::size_t n) {
        Matrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m.at(i, i) = F(1);
        return m;
    }
    static Matrix zero(std::size_t r, std::size_t c) { return Matrix(r, c); }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    F& at(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
    const F& at(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

    bool operator==(const Matrix& o) const {
        if (rows_ != o.rows_ || cols_ != o.cols_) return false;
        for (std::size_t i = 0; i < a_.size(); ++i)
            if (!(a_[i] == o.a_[i])) return false;
        return true;
    }
    bool operator!=(const Matrix& o) const { return !(*this == o); }

    bool is_zero() const {
        for (const F& x : a_)
            if (!x.is_zero()) return false;
        return true;
    }

    Matrix operator+(const Matrix& o) const {
        require(rows_ == o.rows_ && cols_ == o.cols_, "matrix: shape mismatch in +");
        Matrix r = *this;
        for (std::size_t i = 0; i < a_.size(); ++i) r.a_[i] += o.a_[i];
        return r;
    }
    Matrix operator-(const Matrix& o) const {
        require(rows_ == o.rows_ && cols_ == o.cols_, "matrix: shape mismatch in -");
        Matrix r = *this;
        for (std::size_t i = 0; i < a_.size(); ++i) r.a_[i] -= o.a_[i];
        return r;
    }
    Matrix operator-() const {
        Matrix r = *this;
        for (F& x : r.a_) x = -x;
        return r;
    }
    Matrix operator*(const Matrix& o) const {
        require(cols_ == o.rows_, "matrix: shape mismatch in *");
        Matrix r(rows_, o.cols_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t k = 0; k < cols_; ++k) {
                const F& x = at(i, k);
                if (x.is_zero()) continue;
                for (std::size_t j = 0; j < o.cols_; ++j)
                    r.at(i, j) += x * o.at(k, j);
            }
        return r;
    }
    Matrix scaled(const F& c) const {
        Matrix r = *this;
        for (F& x : r.a_) x = x * c;
        return r;
    }

    Vec<F> apply(const Vec<F>& v) const {
        require(v.size() == cols_, "matrix: vector length mismatch");
        Vec<F> r(rows_, F(0));
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j)
                if (!at(i, j).is_zero()) r[i] += at(i, j) * v[j];
        return r;
    }

    Matrix transposed() const {
        Matrix r(cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) r.at(j, i) = at(i, j);
        return r;
    }

    Matrix submatrix(std::size_t i0, std::size_t j0, std::size_t r, std::size_t c) const {
        require(i0 + r <= rows_ && j0 + c <= cols_, "matrix: submatrix out of range");
        Matrix m(r, c);
        for (std::size_t i = 0; i < r; ++i)
            for (std::size_t j = 0; j < c; ++j) m.at(i, j) = at(i0 + i, j0 + j);
        return m;
    }

    Matrix column(std::size_t j) const { return submatrix(0, j, rows_, 1); }

    Vec<F> column_vec(std::size_t j) const {
        Vec<F> v(rows_);
        for (std::size_t i = 0; i < rows_; ++i) v[i] = at(i, j);
        return v;
    }

    void set_column(std::size_t j, const Vec<F>& v) {
        require(v.size() == rows_, "matrix: set_column length mismatch");
        for (std::size_t i = 0; i < rows_; ++i) at(i, j) = v[i];
    }

    std::string str() const {
        std::string s = "[";
        for (std::size_t i = 0; i < rows_; ++i) {
            s += "[";
            for (std::size_t j = 0; j < cols_; ++j) {
                s += at(i, j).str();
                if (j + 1 < cols_) s += ",";
            }
            s += "]";
            if (i + 1 < rows_) s += ",";
        }
        return s + "]";
    }

private:
    std::size_t rows_, cols_;
    std::vector<F> a_;
};

template <Field F>
Matrix<F> hstack(const Matrix<F>& a, const Matrix<F>& b) {
    if (a.cols() == 0 && a.rows() == 0) return b;
    if (b.cols() == 0 && b.rows() == 0) return a;
    require(a.rows() == b.rows(), "matrix: hstack row mismatch");
    Matrix<F> r(a.rows(), a.cols() + b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) r.at(i, j) = a.at(i, j);
        for (std::size_t j = 0; j < b.cols(); ++j) r.at(i, a.cols() + j) = b.at(i, j);
    }
    return r;
}

template <Field F>
Matrix<F> vstack(const Matrix<F>& a, const Matrix<F>& b) {
    if (a.cols() == 0 && a.rows() == 0) return b;
    if (b.cols() == 0 && b.rows() == 0) return a;
    require(a.cols() == b.cols(), "matrix: vstack col mismatch");
    Matrix<F> r(a.rows() + b.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) r.at(i, j) = a.at(i, j);
    for (std::size_t i = 0; i < b.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) r.at(a.rows() + i, j) = b.at(i, j);
    return r;
}

// Kronecker product; kron(A,B) acts on vec(X) (column-major stacking of X's
// columns) as the map X -> B X A^T.
template <Field F>
Matrix<F> kron(const Matrix<F>& a, const Matrix<F>& b) {
    Matrix<F> r(a.rows() * b.rows(), a.cols() * b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) {
            if (a.at(i, j).is_zero()) continue;
            for (std::size_t k = 0; k < b.rows(); ++k)
                for (std::size_t l = 0; l < b.cols(); ++l)
                    r.at(i * b.rows() + k, j * b.cols() + l) = a.at(i, j) * b.at(k, l);
        }
    return r;
}

// Column-major vectorization: columns of m stacked top to bottom.
template <Field F>
Vec<F> vec_of(const Matrix<F>& m) {
    Vec<F> v(m.rows() * m.cols());
    for (std::size_t j = 0; j < m.cols(); ++j)
        for (std::size_t i = 0; i < m.rows(); ++i) v[j * m.rows() + i] = m.at(i, j);
    return v;
}

template <Field F>
Matrix<F> unvec(const Vec<F>& v, std::size_t rows, std::size_t cols) {
    require(v.size() == rows * cols, "matrix: unvec size mismatch");
    Matrix<F> m(rows, cols);
    for (std::size_t j = 0; j < cols; ++j)
        for (std::size_t i = 0; i < rows; ++i) m.at(i, j) = v[j * rows + i];
    return m;
}

template <Field F>
struct RrefResult {
    Matrix<F> reduced;
    std::vector<std::size_t> pivots;  // strictly increasing column indices
    std::size_t rank = 0;
};

// Reduced row echelon form. Deterministic pivot rule: sweep columns left to
// right, take the first unused row with a nonzero entry.
template <Field F>
RrefResult<F> rref(Matrix<F> m) {
    RrefResult<F> res;
    std::size_t lead = 0;
    for (std::size_t col = 0; col < m.cols() && lead < m.rows(); ++col) {
        std::size_t sel = lead;
        while (sel < m.rows() && m.at(sel, col).is_zero()) ++sel;
        if (sel == m.rows()) continue;
        if (sel != lead)
            for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m.at(sel, j), m.at(lead, j));
        F inv = F(1) / m.at(lead, col);
        for (std::size_t j = col; j < m.cols(); ++j) m.at(lead, j) = m.at(lead, j) * inv;
        for (std::size_t i = 0; i < m.rows(); ++i) {
            if (i == lead || m.at(i, col).is_zero()) continue;
            F c = m.at(i, col);
            for (std::size_t j = col; j < m.cols(); ++j)
                m.at(i, j) = m.at(i, j) - c * m.at(lead, j);
        }
        res.pivots.push_back(col);
        ++lead;
    }
    res.rank = res.pivots.size();
    res.reduced = std::move(m);
    return res;
}

template <Field F>
std::size_t rank_of(const Matrix<F>& m) {
    return rref(m).rank;
}

// Basis of the right kernel, one column per free column of m, ordered by the
// free column index; the free coordinate is set to 1.
template <Field F>
Matrix<F> kernel_basis(const Matrix<F>& m) {
    RrefResult<F> r = rref(m);
    std::vector<bool> is_pivot(m.cols(), false);
    for (std::size_t p : r.pivots) is_pivot[p] = true;
    std::size_t nfree = m.cols() - r.rank;
    Matrix<F> k(m.cols(), nfree);
    std::size_t out = 0;
    for (std::size_t j = 0; j < m.cols(); ++j) {
        if (is_pivot[j]) continue;
        k.at(j, out) = F(1);
        for (std::size_t i = 0; i < r.rank; ++i)
            k.at(r.pivots[i], out) = -r.reduced.at(i, j);
        ++out;
    }
    return k;
}

template <Field F>
struct SolveResult {
    bool solvable = false;
    Vec<F> solution;  // meaningful only when solvable
};

// One exact solution of m x = b, or a definite "no solution". The particular
// solution is pinned down by setting every non-pivot coordinate to zero.
template <Field F>
SolveResult<F> solve(const Matrix<F>& m, const Vec<F>& b) {
    require(b.size() == m.rows(), "solve: rhs length mismatch");
    Matrix<F> aug(m.rows(), m.cols() + 1);
    for (std::size_t i = 0; i < m.rows(); ++i) {
        for (std::size_t j = 0; j < m.cols(); ++j) aug.at(i, j) = m.at(i, j);
        aug.at(i, m.cols()) = b[i];
    }
    RrefResult<F> r = rref(aug);
    SolveResult<F> res;
    for (std::size_t p : r.pivots)
        if (p == m.cols()) return res;  // pivot in the rhs column: inconsistent
    res.solvable = true;
    res.solution.assign(m.cols(), F(0));
    for (std::size_t i = 0; i < r.pivots.size(); ++i)
        res.solution[r.pivots[i]] = r.reduced.at(i, m.cols());
    return res;
}

// Columnwise solve: X with m X = rhs, or nullopt if any column is inconsistent.
template <Field F>
std::optional<Matrix<F>> solve_matrix(const Matrix<F>& m, const Matrix<F>& rhs) {
    require(rhs.rows() == m.rows(), "solve_matrix: shape mismatch");
    Matrix<F> aug = hstack(m, rhs);
    RrefResult<F> r = rref(aug);
    for (std::size_t p : r.pivots)
        if (p >= m.cols()) return std::nullopt;
    Matrix<F> x(m.cols(), rhs.cols());
    for (std::size_t i = 0; i < r.pivots.size(); ++i)
        for (std::size_t j = 0; j < rhs.cols(); ++j)
            x.at(r.pivots[i], j) = r.reduced.at(i, m.cols() + j);
    return x;
}

template <Field F>
std::optional<Matrix<F>> inverse(const Matrix<F>& m) {
    require(m.rows() == m.cols(), "inverse: matrix not square");
    auto x = solve_matrix(m, Matrix<F>::identity(m.rows()));
    if (!x) return std::nullopt;
    if (rank_of(m) != m.rows()) return std::nullopt;
    return x;
}

// Independent columns of m spanning its column space: the pivot columns of m
// itself (deterministic, order-preserving).
template <Field F>
Matrix<F> column_space(const Matrix<F>& m) {
    RrefResult<F> r = rref(m);
    Matrix<F> b(m.rows(), r.rank);
    for (std::size_t i = 0; i < r.rank; ++i)
        for (std::size_t row = 0; row < m.rows(); ++row)
            b.at(row, i) = m.at(row, r.pivots[i]);
    return b;
}

// For an n x r matrix B of full column rank, pick standard coordinates that
// complete im(B) to a basis of F^n. Returns the coordinate indices C, the
// projection Q : F^n -> F^(n-r) with ker Q = im B and Q e_C = I, and the
// section S = E_C with Q S = I.
template <Field F>
struct ComplementData {
    std::vector<std::size_t> coords;
    Matrix<F> projection;  // (n-r) x n
    Matrix<F> section;     // n x (n-r)
};

template <Field F>
ComplementData<F> complement_of_column_space(const Matrix<F>& b, std::size_t n) {
    require(b.rows() == n, "complement: row count mismatch");
    RrefResult<F> rt = rref(b.transposed());
    std::vector<bool> covered(n, false);
    for (std::size_t p : rt.pivots) covered[p] = true;
    require(rt.rank == b.cols(), "complement: columns not independent");
    ComplementData<F> res;
    for (std::size_t i = 0; i < n; ++i)
        if (!covered[i]) res.coords.push_back(i);
    std::size_t m = res.coords.size();
    Matrix<F> ec(n, m);
    for (std::size_t j = 0; j < m; ++j) ec.at(res.coords[j], j) = F(1);
    Matrix<F> full = hstack(b, ec);
    auto inv = inverse(full);
    require(inv.has_value(), "complement: chosen coordinates do not complete a basis");
    res.projection = inv->submatrix(b.cols(), 0, m, n);
    res.section = ec;
    return res;
}

// Least nonzero monic relation among 1, x, x^2, ... under the linear action m;
// coefficients low-degree first, monic leading 1. Krylov on the whole space
// (i.e. the minimal polynomial of the matrix).
template <Field F>
std::vector<F> minimal_polynomial(const Matrix<F>& m) {
    require(m.rows() == m.cols(), "minpoly: matrix not square");
    std::size_t n = m.rows();
    std::vector<Matrix<F>> pows;
    pows.push_back(Matrix<F>::identity(n));
    for (std::size_t d = 1;; ++d) {
        pows.push_back(m * pows.back());
        Matrix<F> sys(n * n, d);
        for (std::size_t k = 0; k < d; ++k) {
            Vec<F> v = vec_of(pows[k]);
            for (std::size_t i = 0; i < v.size(); ++i) sys.at(i, k) = v[i];
        }
        auto sol = solve(sys, vec_of(pows[d]));
        if (sol.solvable) {
            std::vector<F> coeffs(d + 1, F(0));
            for (std::size_t k = 0; k < d; ++k) coeffs[k] = -sol.solution[k];
            coeffs[d] = F(1);
            return coeffs;
        }
        require(d <= n, "minpoly: no relation found (internal defect)");
    }
}

}  // namespace homdec
