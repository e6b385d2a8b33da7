// Dense exact linear algebra over Q and over the Laurent ring Q[t^{+-1}].
//
// Over Q the reduction is ordinary Gauss-Jordan with unit pivots. Over the
// Laurent ring it is fraction-free (Bareiss-style) Gauss-Jordan: every entry
// stays a minor of the input, every division is exact, and on exit all pivots
// equal one common value. Ranks and kernels computed this way are the ranks
// and kernels over the fraction field.
#pragma once

#include "relcat/laurent.hpp"
#include "relcat/rational.hpp"

#include <algorithm>
#include <cassert>
#include <stdexcept>
#include <vector>

namespace relcat {

template <class R>
struct RingTraits;

template <>
struct RingTraits<Rational> {
    static constexpr bool is_field = true;
    static bool is_zero(const Rational& x) { return x == 0; }
    static Rational div(const Rational& a, const Rational& b) { return a / b; }
};

template <>
struct RingTraits<LaurentPoly> {
    static constexpr bool is_field = false;
    static bool is_zero(const LaurentPoly& x) { return x.is_zero(); }
    static LaurentPoly div(const LaurentPoly& a, const LaurentPoly& b) { return exact_div(a, b); }
};

template <class R>
bool is_zero(const R& x)
{
    return RingTraits<R>::is_zero(x);
}

template <class R>
using Vector = std::vector<R>;

template <class R>
bool is_zero_vector(const Vector<R>& v)
{
    return std::all_of(v.begin(), v.end(), [](const R& x) { return is_zero(x); });
}

template <class R>
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, R(0)) {}

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    R& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const R& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    Matrix transpose() const
    {
        Matrix t(cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j)
                t(j, i) = (*this)(i, j);
        return t;
    }

    Matrix select(const std::vector<std::size_t>& row_idx, const std::vector<std::size_t>& col_idx) const
    {
        Matrix s(row_idx.size(), col_idx.size());
        for (std::size_t i = 0; i < row_idx.size(); ++i)
            for (std::size_t j = 0; j < col_idx.size(); ++j)
                s(i, j) = (*this)(row_idx[i], col_idx[j]);
        return s;
    }

    Vector<R> column(std::size_t j) const
    {
        Vector<R> c(rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            c[i] = (*this)(i, j);
        return c;
    }

    Vector<R> apply(const Vector<R>& x) const
    {
        if (x.size() != cols_)
            throw std::invalid_argument("matrix-vector size mismatch");
        Vector<R> y(rows_, R(0));
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j)
                if (!is_zero((*this)(i, j)) && !is_zero(x[j]))
                    y[i] += (*this)(i, j) * x[j];
        return y;
    }

    friend Matrix operator*(const Matrix& a, const Matrix& b)
    {
        if (a.cols_ != b.rows_)
            throw std::invalid_argument("matrix product size mismatch");
        Matrix c(a.rows_, b.cols_);
        for (std::size_t i = 0; i < a.rows_; ++i)
            for (std::size_t k = 0; k < a.cols_; ++k) {
                if (is_zero(a(i, k)))
                    continue;
                for (std::size_t j = 0; j < b.cols_; ++j)
                    if (!is_zero(b(k, j)))
                        c(i, j) += a(i, k) * b(k, j);
            }
        return c;
    }

    bool is_zero_matrix() const
    {
        return std::all_of(data_.begin(), data_.end(), [](const R& x) { return is_zero(x); });
    }

    /// Appends the columns of `other` (same row count).
    Matrix hcat(const Matrix& other) const
    {
        if (other.rows_ != rows_ && cols_ != 0 && other.cols_ != 0)
            throw std::invalid_argument("hcat row mismatch");
        std::size_t nr = cols_ ? rows_ : other.rows_;
        Matrix m(nr, cols_ + other.cols_);
        for (std::size_t i = 0; i < nr; ++i) {
            for (std::size_t j = 0; j < cols_; ++j)
                m(i, j) = (*this)(i, j);
            for (std::size_t j = 0; j < other.cols_; ++j)
                m(i, cols_ + j) = other(i, j);
        }
        return m;
    }

    static Matrix from_columns(std::size_t rows, const std::vector<Vector<R>>& cols)
    {
        Matrix m(rows, cols.size());
        for (std::size_t j = 0; j < cols.size(); ++j) {
            if (cols[j].size() != rows)
                throw std::invalid_argument("column length mismatch");
            for (std::size_t i = 0; i < rows; ++i)
                m(i, j) = cols[j][i];
        }
        return m;
    }

    template <class F>
    auto map(F&& f) const -> Matrix<decltype(f(std::declval<const R&>()))>
    {
        Matrix<decltype(f(std::declval<const R&>()))> m(rows_, cols_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j)
                m(i, j) = f((*this)(i, j));
        return m;
    }

    friend bool operator==(const Matrix& a, const Matrix& b)
    {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
    }

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<R> data_;
};

/// Reduced row echelon form, scaled so that every pivot equals `pivot_value`.
template <class R>
struct RowReduction {
    Matrix<R> form;
    std::vector<std::size_t> pivot_cols;  // pivot_cols[i] is the pivot column of row i
    R pivot_value = R(1);

    std::size_t rank() const { return pivot_cols.size(); }
};

template <class R>
RowReduction<R> row_reduce(Matrix<R> a)
{
    using T = RingTraits<R>;
    RowReduction<R> out;
    const std::size_t m = a.rows(), n = a.cols();
    std::size_t r = 0;
    R prev(1);
    for (std::size_t c = 0; c < n && r < m; ++c) {
        std::size_t p = r;
        if constexpr (T::is_field) {
            while (p < m && T::is_zero(a(p, c)))
                ++p;
        }
        else {
            // Sparsest nonzero pivot keeps intermediate polynomials small.
            std::size_t best = m;
            for (std::size_t i = r; i < m; ++i)
                if (!T::is_zero(a(i, c)) && (best == m || a(i, c).term_count() < a(best, c).term_count()))
                    best = i;
            p = best;
        }
        if (p == m)
            continue;
        if (p != r)
            for (std::size_t j = 0; j < n; ++j)
                std::swap(a(p, j), a(r, j));
        if constexpr (T::is_field) {
            R inv = R(1) / a(r, c);
            for (std::size_t j = c; j < n; ++j)
                a(r, j) *= inv;
            for (std::size_t i = 0; i < m; ++i) {
                if (i == r || T::is_zero(a(i, c)))
                    continue;
                R f = a(i, c);
                for (std::size_t j = c; j < n; ++j)
                    if (!T::is_zero(a(r, j)))
                        a(i, j) -= f * a(r, j);
            }
        }
        else {
            const R piv = a(r, c);
            for (std::size_t i = 0; i < m; ++i) {
                if (i == r)
                    continue;
                const R f = a(i, c);
                for (std::size_t j = 0; j < n; ++j) {
                    if (j == c)
                        continue;
                    R v = piv * a(i, j);
                    if (!T::is_zero(f) && !T::is_zero(a(r, j)))
                        v -= f * a(r, j);
                    a(i, j) = T::div(v, prev);
                }
                a(i, c) = R(0);
            }
            prev = piv;
        }
        out.pivot_cols.push_back(c);
        ++r;
    }
    out.pivot_value = T::is_field ? R(1) : prev;
    out.form = std::move(a);
    return out;
}

template <class R>
std::size_t rank(const Matrix<R>& a)
{
    if (a.rows() == 0 || a.cols() == 0)
        return 0;
    // Reduce along the shorter side.
    return a.rows() < a.cols() ? row_reduce(a.transpose()).rank() : row_reduce(a).rank();
}

/// Basis of {x : a x = 0}, one vector per free column, with entries in R.
template <class R>
std::vector<Vector<R>> kernel_basis(const Matrix<R>& a)
{
    std::vector<Vector<R>> basis;
    const std::size_t n = a.cols();
    if (a.rows() == 0) {
        for (std::size_t j = 0; j < n; ++j) {
            Vector<R> x(n, R(0));
            x[j] = R(1);
            basis.push_back(std::move(x));
        }
        return basis;
    }
    RowReduction<R> red = row_reduce(a);
    std::vector<bool> is_pivot(n, false);
    for (auto c : red.pivot_cols)
        is_pivot[c] = true;
    for (std::size_t j = 0; j < n; ++j) {
        if (is_pivot[j])
            continue;
        Vector<R> x(n, R(0));
        x[j] = red.pivot_value;
        for (std::size_t i = 0; i < red.pivot_cols.size(); ++i)
            x[red.pivot_cols[i]] = -red.form(i, j);
        basis.push_back(std::move(x));
    }
    return basis;
}

/// Membership tests against the span of a fixed set of vectors.
template <class R>
class SpanTester {
public:
    SpanTester() = default;

    /// `generators` are the columns of a dim x k matrix.
    explicit SpanTester(const Matrix<R>& generators) : dim_(generators.rows())
    {
        if (generators.cols() == 0 || generators.rows() == 0)
            return;
        reduction_ = row_reduce(generators.transpose());
    }

    std::size_t dimension() const { return reduction_.rank(); }

    /// Reduces v against the span; the result is zero iff v lies in the span.
    Vector<R> residual(Vector<R> v) const
    {
        using T = RingTraits<R>;
        if (v.size() != dim_)
            throw std::invalid_argument("span test dimension mismatch");
        for (std::size_t i = 0; i < reduction_.rank(); ++i) {
            const std::size_t pc = reduction_.pivot_cols[i];
            if (T::is_zero(v[pc]))
                continue;
            const R coeff = v[pc];
            for (std::size_t j = 0; j < dim_; ++j) {
                const R& rij = reduction_.form(i, j);
                if constexpr (T::is_field) {
                    if (!T::is_zero(rij))
                        v[j] -= coeff * rij;
                }
                else {
                    R val = reduction_.pivot_value * v[j];
                    if (!T::is_zero(rij))
                        val -= coeff * rij;
                    v[j] = std::move(val);
                }
            }
        }
        return v;
    }

    bool contains(const Vector<R>& v) const { return is_zero_vector(residual(v)); }

private:
    std::size_t dim_ = 0;
    RowReduction<R> reduction_;
};

}  // namespace relcat
