#pragma once

/* Dense exact linear algebra over a prime field F_p.
 *
 * Row-vector convention: vectors are rows and a matrix M acts by v -> v*M.
 * All elimination routines pick the leftmost available pivot and set free
 * variables to zero, so every output is bit-reproducible.
 */

#include <algorithm>
#include <cassert>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "syzygy/error.hpp"

namespace syzygy {

using Scalar = std::uint32_t;
using Vec = std::vector<Scalar>;

inline constexpr std::uint32_t kDefaultPrime = 32003;

/// Arithmetic in F_p. Residues are kept in [0, p).
struct Fp {
    std::uint32_t p;

    Scalar add(Scalar a, Scalar b) const
    {
        std::uint32_t s = a + b;
        return s >= p ? s - p : s;
    }
    Scalar sub(Scalar a, Scalar b) const { return a >= b ? a - b : a + p - b; }
    Scalar neg(Scalar a) const { return a == 0 ? 0 : p - a; }
    Scalar mul(Scalar a, Scalar b) const
    {
        return static_cast<Scalar>(static_cast<std::uint64_t>(a) * b % p);
    }
    Scalar pow(Scalar a, std::uint64_t e) const
    {
        Scalar r = 1 % p;
        while (e) {
            if (e & 1)
                r = mul(r, a);
            a = mul(a, a);
            e >>= 1;
        }
        return r;
    }
    Scalar inv(Scalar a) const
    {
        assert(a % p != 0);
        return pow(a, p - 2);
    }
    Scalar from_int(std::int64_t v) const
    {
        std::int64_t r = v % static_cast<std::int64_t>(p);
        return static_cast<Scalar>(r < 0 ? r + p : r);
    }
};

inline bool is_prime(std::uint64_t n)
{
    if (n < 2)
        return false;
    for (std::uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0)
            return false;
    return true;
}

inline bool is_zero(std::span<const Scalar> v)
{
    return std::all_of(v.begin(), v.end(), [](Scalar x) { return x == 0; });
}

/// y += c * x
inline void axpy(const Fp& f, Scalar c, std::span<const Scalar> x, std::span<Scalar> y)
{
    if (c == 0)
        return;
    for (std::size_t i = 0; i < x.size(); ++i)
        if (x[i])
            y[i] = f.add(y[i], f.mul(c, x[i]));
}

class Matrix {
public:
    Matrix() = default;
    Matrix(std::uint32_t p, std::size_t rows, std::size_t cols)
        : p_(p), rows_(rows), cols_(cols), data_(rows * cols, 0)
    {
    }

    static Matrix identity(std::uint32_t p, std::size_t n)
    {
        Matrix m(p, n, n);
        for (std::size_t i = 0; i < n; ++i)
            m(i, i) = 1 % p;
        return m;
    }

    /// Builds from integer rows, reducing every entry mod p.
    static Matrix from_rows(std::uint32_t p, const std::vector<std::vector<std::int64_t>>& rows,
                            std::size_t cols_if_empty = 0)
    {
        std::size_t c = rows.empty() ? cols_if_empty : rows.front().size();
        Matrix m(p, rows.size(), c);
        Fp f{p};
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (rows[i].size() != c)
                throw Error(ErrorKind::ShapeMismatch, "ragged matrix rows");
            for (std::size_t j = 0; j < c; ++j)
                m(i, j) = f.from_int(rows[i][j]);
        }
        return m;
    }

    static Matrix from_vecs(std::uint32_t p, const std::vector<Vec>& rows, std::size_t cols)
    {
        Matrix m(p, rows.size(), cols);
        for (std::size_t i = 0; i < rows.size(); ++i) {
            assert(rows[i].size() == cols);
            std::copy(rows[i].begin(), rows[i].end(), m.row(i).begin());
        }
        return m;
    }

    std::uint32_t prime() const { return p_; }
    Fp field() const { return Fp{p_}; }
    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool empty() const { return rows_ == 0 || cols_ == 0; }

    Scalar& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    Scalar operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    std::span<Scalar> row(std::size_t r) { return {data_.data() + r * cols_, cols_}; }
    std::span<const Scalar> row(std::size_t r) const { return {data_.data() + r * cols_, cols_}; }
    Vec row_vec(std::size_t r) const { return Vec(row(r).begin(), row(r).end()); }

    const std::vector<Scalar>& data() const { return data_; }
    std::vector<Scalar>& data() { return data_; }

    bool is_zero() const { return syzygy::is_zero(data_); }

    bool operator==(const Matrix& o) const
    {
        return p_ == o.p_ && rows_ == o.rows_ && cols_ == o.cols_ && data_ == o.data_;
    }

    Matrix transpose() const
    {
        Matrix t(p_, cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j)
                t(j, i) = (*this)(i, j);
        return t;
    }

    Matrix operator*(const Matrix& b) const
    {
        if (cols_ != b.rows_)
            throw Error(ErrorKind::ShapeMismatch, "matrix product shape");
        Matrix c(p_, rows_, b.cols_);
        // Products of residues below 2^16 fit 2^32, so a 64-bit accumulator
        // absorbs 2^32 terms before reduction.
        const bool lazy = p_ < (1u << 16);
        std::vector<std::uint64_t> acc(b.cols_);
        for (std::size_t i = 0; i < rows_; ++i) {
            std::fill(acc.begin(), acc.end(), 0);
            for (std::size_t k = 0; k < cols_; ++k) {
                std::uint64_t a = (*this)(i, k);
                if (!a)
                    continue;
                auto br = b.row(k);
                if (lazy) {
                    for (std::size_t j = 0; j < b.cols_; ++j)
                        acc[j] += a * br[j];
                } else {
                    for (std::size_t j = 0; j < b.cols_; ++j)
                        acc[j] = (acc[j] + a * br[j]) % p_;
                }
            }
            for (std::size_t j = 0; j < b.cols_; ++j)
                c(i, j) = static_cast<Scalar>(acc[j] % p_);
        }
        return c;
    }

    Matrix operator+(const Matrix& b) const
    {
        if (rows_ != b.rows_ || cols_ != b.cols_)
            throw Error(ErrorKind::ShapeMismatch, "matrix sum shape");
        Matrix c = *this;
        Fp f = field();
        for (std::size_t i = 0; i < data_.size(); ++i)
            c.data_[i] = f.add(c.data_[i], b.data_[i]);
        return c;
    }

    Matrix operator-(const Matrix& b) const
    {
        if (rows_ != b.rows_ || cols_ != b.cols_)
            throw Error(ErrorKind::ShapeMismatch, "matrix difference shape");
        Matrix c = *this;
        Fp f = field();
        for (std::size_t i = 0; i < data_.size(); ++i)
            c.data_[i] = f.sub(c.data_[i], b.data_[i]);
        return c;
    }

    Matrix scaled(Scalar s) const
    {
        Matrix c = *this;
        Fp f = field();
        for (auto& x : c.data_)
            x = f.mul(x, s);
        return c;
    }

    /// this += s * b
    void add_scaled(Scalar s, const Matrix& b)
    {
        assert(rows_ == b.rows_ && cols_ == b.cols_);
        axpy(field(), s, b.data_, data_);
    }

    Vec apply(std::span<const Scalar> v) const
    {
        assert(v.size() == rows_);
        Vec out(cols_, 0);
        Fp f = field();
        for (std::size_t k = 0; k < rows_; ++k)
            axpy(f, v[k], row(k), out);
        return out;
    }

    Matrix select_rows(std::span<const std::size_t> idx) const
    {
        Matrix m(p_, idx.size(), cols_);
        for (std::size_t i = 0; i < idx.size(); ++i)
            std::copy(row(idx[i]).begin(), row(idx[i]).end(), m.row(i).begin());
        return m;
    }

    Matrix select_cols(std::span<const std::size_t> idx) const
    {
        Matrix m(p_, rows_, idx.size());
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < idx.size(); ++j)
                m(i, j) = (*this)(i, idx[j]);
        return m;
    }

    Matrix block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const
    {
        Matrix m(p_, nr, nc);
        for (std::size_t i = 0; i < nr; ++i)
            for (std::size_t j = 0; j < nc; ++j)
                m(i, j) = (*this)(r0 + i, c0 + j);
        return m;
    }

    void set_block(std::size_t r0, std::size_t c0, const Matrix& b)
    {
        for (std::size_t i = 0; i < b.rows_; ++i)
            for (std::size_t j = 0; j < b.cols_; ++j)
                (*this)(r0 + i, c0 + j) = b(i, j);
    }

    static Matrix vstack(std::uint32_t p, std::span<const Matrix> parts, std::size_t cols)
    {
        std::size_t r = 0;
        for (const auto& m : parts)
            r += m.rows_;
        Matrix out(p, r, cols);
        std::size_t at = 0;
        for (const auto& m : parts) {
            assert(m.rows_ == 0 || m.cols_ == cols);
            out.set_block(at, 0, m);
            at += m.rows_;
        }
        return out;
    }

    static Matrix hstack(std::uint32_t p, std::span<const Matrix> parts, std::size_t rows)
    {
        std::size_t c = 0;
        for (const auto& m : parts)
            c += m.cols_;
        Matrix out(p, rows, c);
        std::size_t at = 0;
        for (const auto& m : parts) {
            assert(m.cols_ == 0 || m.rows_ == rows);
            out.set_block(0, at, m);
            at += m.cols_;
        }
        return out;
    }

    static Matrix block_diagonal(std::uint32_t p, std::span<const Matrix> parts)
    {
        std::size_t r = 0, c = 0;
        for (const auto& m : parts) {
            r += m.rows_;
            c += m.cols_;
        }
        Matrix out(p, r, c);
        std::size_t ar = 0, ac = 0;
        for (const auto& m : parts) {
            out.set_block(ar, ac, m);
            ar += m.rows_;
            ac += m.cols_;
        }
        return out;
    }

    /// Kronecker product: (u ⊗ v)(A ⊗ B) = uA ⊗ vB with index u*dim(v)+v.
    static Matrix kron(const Matrix& a, const Matrix& b)
    {
        Matrix out(a.p_, a.rows_ * b.rows_, a.cols_ * b.cols_);
        Fp f = a.field();
        for (std::size_t i = 0; i < a.rows_; ++i)
            for (std::size_t j = 0; j < a.cols_; ++j) {
                Scalar x = a(i, j);
                if (!x)
                    continue;
                for (std::size_t k = 0; k < b.rows_; ++k)
                    for (std::size_t l = 0; l < b.cols_; ++l)
                        out(i * b.rows_ + k, j * b.cols_ + l) = f.mul(x, b(k, l));
            }
        return out;
    }

    void append_row(std::span<const Scalar> v)
    {
        if (rows_ == 0 && cols_ == 0)
            cols_ = v.size();
        assert(v.size() == cols_);
        data_.insert(data_.end(), v.begin(), v.end());
        ++rows_;
    }

private:
    std::uint32_t p_ = kDefaultPrime;
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Scalar> data_;
};

struct RowEchelon {
    Matrix reduced;
    std::size_t rank = 0;
    std::vector<std::size_t> pivot_columns;
};

/// In-place Gauss-Jordan restricted to pivots in columns [0, pivot_limit).
/// Returns the pivot columns; rows [0, rank) carry the pivots.
inline std::vector<std::size_t> gauss_jordan(Matrix& m, std::size_t pivot_limit)
{
    Fp f = m.field();
    std::vector<std::size_t> pivots;
    std::size_t r = 0;
    for (std::size_t c = 0; c < pivot_limit && r < m.rows(); ++c) {
        std::size_t sel = r;
        while (sel < m.rows() && m(sel, c) == 0)
            ++sel;
        if (sel == m.rows())
            continue;
        if (sel != r)
            std::swap_ranges(m.row(sel).begin(), m.row(sel).end(), m.row(r).begin());
        Scalar inv = f.inv(m(r, c));
        for (auto& x : m.row(r))
            x = f.mul(x, inv);
        for (std::size_t i = 0; i < m.rows(); ++i) {
            if (i == r || m(i, c) == 0)
                continue;
            axpy(f, f.neg(m(i, c)), m.row(r), m.row(i));
        }
        pivots.push_back(c);
        ++r;
    }
    return pivots;
}

/// Unique reduced row-echelon form with leftmost-pivot selection.
inline RowEchelon row_reduce(const Matrix& m)
{
    RowEchelon out{m, 0, {}};
    out.pivot_columns = gauss_jordan(out.reduced, m.cols());
    out.rank = out.pivot_columns.size();
    return out;
}

inline std::size_t rank(const Matrix& m) { return row_reduce(m).rank; }

/// RREF with zero rows removed: a canonical basis of the row space.
inline Matrix row_space_basis(const Matrix& m)
{
    auto e = row_reduce(m);
    std::vector<std::size_t> keep(e.rank);
    for (std::size_t i = 0; i < e.rank; ++i)
        keep[i] = i;
    Matrix b = e.reduced.select_rows(keep);
    if (e.rank == 0)
        b = Matrix(m.prime(), 0, m.cols());
    return b;
}

/// Rows form the canonical (RREF) basis of the left kernel {x : x*m = 0}.
inline Matrix kernel_basis(const Matrix& m)
{
    const std::size_t n = m.rows();
    Matrix t = m.transpose();
    auto pivots = gauss_jordan(t, n);
    Fp f = m.field();
    std::vector<bool> is_pivot(n, false);
    for (auto c : pivots)
        is_pivot[c] = true;
    Matrix k(m.prime(), 0, n);
    for (std::size_t free = 0; free < n; ++free) {
        if (is_pivot[free])
            continue;
        Vec v(n, 0);
        v[free] = 1;
        for (std::size_t r = 0; r < pivots.size(); ++r)
            v[pivots[r]] = f.neg(t(r, free));
        k.append_row(v);
    }
    if (k.rows() == 0)
        return Matrix(m.prime(), 0, n);
    return row_space_basis(k);
}

/// One solution x of x*m = b (b may carry several right-hand sides as rows).
/// Free variables are zero. Throws Inconsistent when no solution exists.
inline Matrix solve_linear(const Matrix& m, const Matrix& b)
{
    if (b.cols() != m.cols())
        throw Error(ErrorKind::ShapeMismatch, "solve_linear: right-hand side width");
    const std::size_t n = m.rows();
    const std::size_t k = b.rows();
    // Transposed system m^T x^T = b^T, augmented.
    Matrix aug(m.prime(), m.cols(), n + k);
    for (std::size_t i = 0; i < m.cols(); ++i) {
        for (std::size_t j = 0; j < n; ++j)
            aug(i, j) = m(j, i);
        for (std::size_t j = 0; j < k; ++j)
            aug(i, n + j) = b(j, i);
    }
    auto pivots = gauss_jordan(aug, n);
    for (std::size_t r = pivots.size(); r < aug.rows(); ++r)
        for (std::size_t j = 0; j < k; ++j)
            if (aug(r, n + j) != 0)
                throw Error(ErrorKind::Inconsistent, "linear system has no solution");
    Matrix x(m.prime(), k, n);
    for (std::size_t r = 0; r < pivots.size(); ++r)
        for (std::size_t j = 0; j < k; ++j)
            x(j, pivots[r]) = aug(r, n + j);
    return x;
}

inline std::optional<Matrix> inverse(const Matrix& m)
{
    if (m.rows() != m.cols())
        return std::nullopt;
    const std::size_t n = m.rows();
    Matrix aug(m.prime(), n, 2 * n);
    aug.set_block(0, 0, m);
    aug.set_block(0, n, Matrix::identity(m.prime(), n));
    auto pivots = gauss_jordan(aug, n);
    if (pivots.size() != n)
        return std::nullopt;
    return aug.block(0, n, n, n);
}

/// Incrementally maintained RREF basis of a subspace. Rows stay fully reduced
/// against each other's pivots, so coordinates of a member are read off the
/// pivot entries.
class EchelonBasis {
public:
    EchelonBasis(std::uint32_t p, std::size_t width) : f_{p}, width_(width) {}

    std::size_t width() const { return width_; }
    std::size_t rank() const { return rows_.size(); }
    const std::vector<std::size_t>& pivots() const { return pivots_; }

    /// Reduces v against the basis in place; returns true if the result is zero.
    bool reduce(Vec& v) const
    {
        for (std::size_t r = 0; r < rows_.size(); ++r) {
            Scalar c = v[pivots_[r]];
            if (c)
                axpy(f_, f_.neg(c), rows_[r], v);
        }
        return syzygy::is_zero(v);
    }

    bool contains(Vec v) const { return reduce(v); }

    /// Adds v; returns true if the rank grew.
    bool add(Vec v)
    {
        if (reduce(v))
            return false;
        std::size_t piv = 0;
        while (v[piv] == 0)
            ++piv;
        Scalar inv = f_.inv(v[piv]);
        for (auto& x : v)
            x = f_.mul(x, inv);
        for (auto& r : rows_) {
            Scalar c = r[piv];
            if (c)
                axpy(f_, f_.neg(c), v, r);
        }
        rows_.push_back(std::move(v));
        pivots_.push_back(piv);
        return true;
    }

    /// Coordinates of v in the (unsorted, insertion-order) basis; nullopt if v is outside.
    std::optional<Vec> coordinates(const Vec& v) const
    {
        Vec c(rows_.size(), 0);
        Vec rest = v;
        for (std::size_t r = 0; r < rows_.size(); ++r) {
            c[r] = rest[pivots_[r]];
            if (c[r])
                axpy(f_, f_.neg(c[r]), rows_[r], rest);
        }
        if (!syzygy::is_zero(rest))
            return std::nullopt;
        return c;
    }

    /// Canonical RREF matrix of the span (rows sorted by pivot).
    Matrix matrix() const
    {
        std::vector<std::size_t> order(rows_.size());
        for (std::size_t i = 0; i < order.size(); ++i)
            order[i] = i;
        std::sort(order.begin(), order.end(),
                  [&](std::size_t a, std::size_t b) { return pivots_[a] < pivots_[b]; });
        Matrix m(f_.p, rows_.size(), width_);
        for (std::size_t i = 0; i < order.size(); ++i)
            std::copy(rows_[order[i]].begin(), rows_[order[i]].end(), m.row(i).begin());
        return m;
    }

private:
    Fp f_;
    std::size_t width_;
    std::vector<Vec> rows_;
    std::vector<std::size_t> pivots_;
};

/// Subspace with a canonical RREF basis.
struct Subspace {
    Matrix basis;                      ///< RREF rows
    std::vector<std::size_t> pivots;   ///< pivot column of each row

    std::size_t dim() const { return basis.rows(); }

    static Subspace span(const Matrix& rows)
    {
        auto e = row_reduce(rows);
        std::vector<std::size_t> keep(e.rank);
        for (std::size_t i = 0; i < e.rank; ++i)
            keep[i] = i;
        Subspace s;
        s.basis = e.rank ? e.reduced.select_rows(keep) : Matrix(rows.prime(), 0, rows.cols());
        s.pivots = e.pivot_columns;
        return s;
    }

    /// Coordinates of a member vector (read off the pivots; caller guarantees membership).
    Vec coords(std::span<const Scalar> v) const
    {
        Vec c(pivots.size());
        for (std::size_t i = 0; i < pivots.size(); ++i)
            c[i] = v[pivots[i]];
        return c;
    }

    /// Coordinates of every row of m (rows must lie in the subspace).
    Matrix coords(const Matrix& m) const { return m.select_cols(pivots); }

    bool contains(std::span<const Scalar> v) const
    {
        Vec rest(v.begin(), v.end());
        Fp f = basis.field();
        for (std::size_t i = 0; i < pivots.size(); ++i)
            axpy(f, f.neg(v[pivots[i]]), basis.row(i), rest);
        return syzygy::is_zero(rest);
    }

    bool contains_rows(const Matrix& m) const
    {
        for (std::size_t i = 0; i < m.rows(); ++i)
            if (!contains(m.row(i)))
                return false;
        return true;
    }
};

}  // namespace syzygy
