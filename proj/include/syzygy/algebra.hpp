#pragma once

/* Finite-dimensional algebras over F_p given by structure constants.
 *
 * Every algebra carries its Jacobson radical and a complete set of primitive
 * orthogonal idempotents. Constructors transport both; validate_algebra
 * re-certifies them. Only split basic algebras (A/rad A = k^n) are in scope.
 */

#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include "syzygy/matrix.hpp"

namespace syzygy {

struct Term {
    std::uint32_t index;
    Scalar coef;
    bool operator==(const Term&) const = default;
};

/// Sparse product table: entry i*dim+j lists b_i*b_j as a combination of the basis.
using ProductTable = std::vector<std::vector<Term>>;

class StructureAlgebra;
using AlgebraPtr = std::shared_ptr<const StructureAlgebra>;

/// U-V-bimodule. Row convention on both sides: u_i . m = m * left_action[i],
/// m . v_j = m * right_action[j].
struct Bimodule {
    AlgebraPtr left;
    AlgebraPtr right;
    std::size_t dim = 0;
    std::vector<Matrix> left_action;
    std::vector<Matrix> right_action;
};

/// Block data of an upper-triangular algebra [U M; 0 V] with canonical basis
/// order U-part, M-part, V-part.
struct TriangularBlocks {
    AlgebraPtr u;
    AlgebraPtr v;
    Bimodule m;
    std::size_t m_offset = 0;  ///< = dim U
    std::size_t v_offset = 0;  ///< = dim U + dim M
};

/// A radical generator g lying in e_source * J * e_target.
struct RadicalGenerator {
    Vec element;
    std::size_t source;
    std::size_t target;
};

/// Idempotents together with a basis of J/J^2 split by vertex pairs; jointly
/// they generate the algebra.
struct Generators {
    std::vector<Vec> idempotents;
    std::vector<RadicalGenerator> radical;
};

class StructureAlgebra {
public:
    StructureAlgebra(std::uint32_t p, std::vector<std::string> labels, ProductTable table, Vec unit,
                     Matrix radical, std::vector<Vec> idempotents,
                     std::vector<std::string> vertex_names,
                     std::shared_ptr<const TriangularBlocks> blocks = nullptr)
        : p_(p),
          labels_(std::move(labels)),
          table_(std::move(table)),
          unit_(std::move(unit)),
          radical_(std::move(radical)),
          idempotents_(std::move(idempotents)),
          vertex_names_(std::move(vertex_names)),
          blocks_(std::move(blocks)),
          cache_(std::make_shared<Cache>())
    {
        const std::size_t n = labels_.size();
        if (table_.size() != n * n || unit_.size() != n)
            throw Error(ErrorKind::ShapeMismatch, "structure constants do not match the basis size");
        if (radical_.rows() == 0)
            radical_ = Matrix(p, 0, n);
        if (vertex_names_.size() != idempotents_.size()) {
            vertex_names_.clear();
            for (std::size_t i = 0; i < idempotents_.size(); ++i)
                vertex_names_.push_back(std::to_string(i + 1));
        }
    }

    /// Builds the sparse table from dense constants c[i][j][k].
    static StructureAlgebra from_dense(std::uint32_t p, std::vector<std::string> labels,
                                       const std::vector<std::vector<Vec>>& c, Vec unit,
                                       Matrix radical, std::vector<Vec> idempotents,
                                       std::vector<std::string> vertex_names = {})
    {
        const std::size_t n = labels.size();
        ProductTable t(n * n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                for (std::size_t k = 0; k < n; ++k)
                    if (c[i][j][k] % p)
                        t[i * n + j].push_back({static_cast<std::uint32_t>(k), c[i][j][k] % p});
        return StructureAlgebra(p, std::move(labels), std::move(t), std::move(unit),
                                std::move(radical), std::move(idempotents), std::move(vertex_names));
    }

    std::uint32_t prime() const { return p_; }
    Fp field() const { return Fp{p_}; }
    std::size_t dim() const { return labels_.size(); }
    const std::vector<std::string>& labels() const { return labels_; }
    const ProductTable& table() const { return table_; }
    const std::vector<Term>& product_terms(std::size_t i, std::size_t j) const
    {
        return table_[i * dim() + j];
    }
    const Vec& unit() const { return unit_; }
    const Matrix& radical_basis() const { return radical_; }
    const std::vector<Vec>& idempotents() const { return idempotents_; }
    std::size_t vertex_count() const { return idempotents_.size(); }
    const std::vector<std::string>& vertex_names() const { return vertex_names_; }
    const std::shared_ptr<const TriangularBlocks>& blocks() const { return blocks_; }

    Scalar structure_constant(std::size_t i, std::size_t j, std::size_t k) const
    {
        for (const auto& t : product_terms(i, j))
            if (t.index == k)
                return t.coef;
        return 0;
    }

    Vec basis_vector(std::size_t i) const
    {
        Vec v(dim(), 0);
        v[i] = 1;
        return v;
    }

    Vec multiply(std::span<const Scalar> x, std::span<const Scalar> y) const
    {
        const std::size_t n = dim();
        Fp f = field();
        Vec r(n, 0);
        for (std::size_t i = 0; i < n; ++i) {
            if (!x[i])
                continue;
            for (std::size_t j = 0; j < n; ++j) {
                if (!y[j])
                    continue;
                Scalar c = f.mul(x[i], y[j]);
                for (const auto& t : table_[i * n + j])
                    r[t.index] = f.add(r[t.index], f.mul(c, t.coef));
            }
        }
        return r;
    }

    /// Matrix of v -> v * b_j (row i holds b_i * b_j).
    Matrix right_mult(std::size_t j) const
    {
        const std::size_t n = dim();
        Matrix m(p_, n, n);
        for (std::size_t i = 0; i < n; ++i)
            for (const auto& t : table_[i * n + j])
                m(i, t.index) = t.coef;
        return m;
    }

    /// Matrix of v -> b_i * v (row j holds b_i * b_j).
    Matrix left_mult(std::size_t i) const
    {
        const std::size_t n = dim();
        Matrix m(p_, n, n);
        for (std::size_t j = 0; j < n; ++j)
            for (const auto& t : table_[i * n + j])
                m(j, t.index) = t.coef;
        return m;
    }

    Matrix right_mult_by(std::span<const Scalar> a) const
    {
        Matrix m(p_, dim(), dim());
        for (std::size_t j = 0; j < dim(); ++j)
            if (a[j])
                m.add_scaled(a[j], right_mult(j));
        return m;
    }

    Matrix left_mult_by(std::span<const Scalar> a) const
    {
        Matrix m(p_, dim(), dim());
        for (std::size_t i = 0; i < dim(); ++i)
            if (a[i])
                m.add_scaled(a[i], left_mult(i));
        return m;
    }

    /// Sum of the primitive idempotents with the given indices.
    Vec idempotent_sum(std::span<const std::size_t> which) const
    {
        Vec e(dim(), 0);
        Fp f = field();
        for (auto i : which)
            for (std::size_t k = 0; k < dim(); ++k)
                e[k] = f.add(e[k], idempotents_[i][k]);
        return e;
    }

    /// Idempotent and radical generators. Requires a valid algebra.
    const Generators& generators() const
    {
        std::call_once(cache_->once, [this] { cache_->gens = compute_generators(); });
        return cache_->gens;
    }

    /// Structural equality (the triangular block annotation is ignored).
    bool operator==(const StructureAlgebra& o) const
    {
        return p_ == o.p_ && labels_ == o.labels_ && table_ == o.table_ && unit_ == o.unit_ &&
               radical_ == o.radical_ && idempotents_ == o.idempotents_ &&
               vertex_names_ == o.vertex_names_;
    }

    StructureAlgebra with_radical(Matrix radical) const
    {
        return StructureAlgebra(p_, labels_, table_, unit_, std::move(radical), idempotents_,
                                vertex_names_, blocks_);
    }

private:
    struct Cache {
        std::once_flag once;
        Generators gens;
    };

    Generators compute_generators() const
    {
        Generators g;
        g.idempotents = idempotents_;
        const std::size_t n = dim();
        EchelonBasis span(p_, n);
        for (std::size_t a = 0; a < radical_.rows(); ++a)
            for (std::size_t b = 0; b < radical_.rows(); ++b)
                span.add(multiply(radical_.row(a), radical_.row(b)));
        for (std::size_t i = 0; i < idempotents_.size(); ++i)
            for (std::size_t j = 0; j < idempotents_.size(); ++j)
                for (std::size_t a = 0; a < radical_.rows(); ++a) {
                    Vec x = multiply(multiply(idempotents_[i], radical_.row(a)), idempotents_[j]);
                    if (is_zero(x))
                        continue;
                    if (span.add(x))
                        g.radical.push_back({std::move(x), i, j});
                }
        return g;
    }

    std::uint32_t p_;
    std::vector<std::string> labels_;
    ProductTable table_;
    Vec unit_;
    Matrix radical_;
    std::vector<Vec> idempotents_;
    std::vector<std::string> vertex_names_;
    std::shared_ptr<const TriangularBlocks> blocks_;
    std::shared_ptr<Cache> cache_;
};

inline AlgebraPtr share(StructureAlgebra a) { return std::make_shared<const StructureAlgebra>(std::move(a)); }

inline bool same_algebra(const AlgebraPtr& a, const AlgebraPtr& b)
{
    return a == b || (a && b && *a == *b);
}

// ---------------------------------------------------------------------------
// Validation

struct ValidationReport {
    std::vector<std::string> violations;
    bool ok() const { return violations.empty(); }
};

namespace detail {

inline Matrix products_span(const StructureAlgebra& a, const Matrix& x, const Matrix& y)
{
    EchelonBasis span(a.prime(), a.dim());
    for (std::size_t i = 0; i < x.rows(); ++i)
        for (std::size_t j = 0; j < y.rows(); ++j)
            span.add(a.multiply(x.row(i), y.row(j)));
    return span.matrix();
}

inline Matrix with_rows(const Matrix& base, std::span<const Vec> extra, std::size_t cols)
{
    Matrix m = base.rows() ? base : Matrix(base.prime(), 0, cols);
    for (const auto& v : extra)
        m.append_row(v);
    return m;
}

}  // namespace detail

/// Powers J, J^2, ... of the span of `ideal` until zero; returns the nilpotency
/// index (first k with J^k = 0), or 0 if J^k never vanishes within dim+1 steps.
inline std::size_t nilpotency_index(const StructureAlgebra& a, const Matrix& ideal)
{
    if (rank(ideal) == 0)
        return 1;
    Matrix power = row_space_basis(ideal);
    for (std::size_t k = 2; k <= a.dim() + 1; ++k) {
        power = detail::products_span(a, power, ideal);
        if (power.rows() == 0)
            return k;
    }
    return 0;
}

/// Confirms every structural invariant: associativity, unit, radical as a
/// nilpotent two-sided ideal, idempotent family, split basic quotient.
inline ValidationReport validate_algebra(const StructureAlgebra& a)
{
    ValidationReport rep;
    const std::size_t n = a.dim();
    const auto p = a.prime();
    Fp f = a.field();
    if (!is_prime(p))
        rep.violations.push_back("modulus is not prime");

    for (std::size_t i = 0; i < n && rep.violations.size() < 8; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            const auto& ij = a.product_terms(i, j);
            for (std::size_t k = 0; k < n; ++k) {
                Vec lhs(n, 0), rhs(n, 0);
                for (const auto& t : ij)
                    for (const auto& u : a.product_terms(t.index, k))
                        lhs[u.index] = f.add(lhs[u.index], f.mul(t.coef, u.coef));
                for (const auto& t : a.product_terms(j, k))
                    for (const auto& u : a.product_terms(i, t.index))
                        rhs[u.index] = f.add(rhs[u.index], f.mul(t.coef, u.coef));
                if (lhs != rhs) {
                    rep.violations.push_back("associativity fails on (" + a.labels()[i] + "," +
                                             a.labels()[j] + "," + a.labels()[k] + ")");
                    goto assoc_done;
                }
            }
        }
assoc_done:

    for (std::size_t i = 0; i < n; ++i) {
        Vec b = a.basis_vector(i);
        if (a.multiply(a.unit(), b) != b || a.multiply(b, a.unit()) != b) {
            rep.violations.push_back("unit law fails on " + a.labels()[i]);
            break;
        }
    }

    const Matrix& rad = a.radical_basis();
    const std::size_t rad_dim = rank(rad);
    if (rad.rows() && rad.cols() != n) {
        rep.violations.push_back("radical basis has wrong width");
        return rep;
    }
    if (rad_dim != rad.rows())
        rep.violations.push_back("radical basis rows are linearly dependent");
    Subspace rad_space = Subspace::span(rad.rows() ? rad : Matrix(p, 0, n));
    bool ideal = true;
    for (std::size_t r = 0; r < rad.rows() && ideal; ++r)
        for (std::size_t k = 0; k < n && ideal; ++k) {
            Vec b = a.basis_vector(k);
            if (!rad_space.contains(a.multiply(b, rad.row(r))) ||
                !rad_space.contains(a.multiply(rad.row(r), b)))
                ideal = false;
        }
    if (!ideal)
        rep.violations.push_back("radical is not a two-sided ideal");
    else if (nilpotency_index(a, rad) == 0)
        rep.violations.push_back("radical is not nilpotent");

    const auto& es = a.idempotents();
    Vec sum(n, 0);
    for (const auto& e : es)
        if (e.size() != n) {
            rep.violations.push_back("idempotent has wrong width");
            return rep;
        }
    bool family_ok = true;
    for (std::size_t i = 0; i < es.size(); ++i) {
        for (std::size_t k = 0; k < n; ++k)
            sum[k] = f.add(sum[k], es[i][k]);
        for (std::size_t j = 0; j < es.size(); ++j) {
            Vec prod = a.multiply(es[i], es[j]);
            if ((i == j && prod != es[i]) || (i != j && !is_zero(prod)))
                family_ok = false;
        }
    }
    if (!family_ok)
        rep.violations.push_back("idempotents are not orthogonal idempotents");
    if (sum != a.unit())
        rep.violations.push_back("idempotents do not sum to the unit");

    bool split = n - rad_dim == es.size();
    for (std::size_t i = 0; i < es.size() && split; ++i)
        for (std::size_t j = 0; j < es.size() && split; ++j) {
            std::vector<Vec> corner;
            for (std::size_t k = 0; k < n; ++k)
                corner.push_back(a.multiply(a.multiply(es[i], a.basis_vector(k)), es[j]));
            std::size_t d = rank(detail::with_rows(rad, corner, n)) - rad_dim;
            if (d != (i == j ? 1u : 0u))
                split = false;
        }
    if (!split)
        rep.violations.push_back("quotient not semisimple-split (dim e_i (A/J) e_j != delta_ij)");
    return rep;
}

inline void require_valid(const StructureAlgebra& a, const char* where)
{
    auto rep = validate_algebra(a);
    if (!rep.ok())
        throw Error(ErrorKind::InvalidAlgebra, std::string(where) + ": " + rep.violations.front());
}

// ---------------------------------------------------------------------------
// Basic constructions

/// The field itself as a one-dimensional algebra.
inline StructureAlgebra ground_field(std::uint32_t p)
{
    return StructureAlgebra(p, {"1"}, ProductTable{{Term{0, 1}}}, Vec{1}, Matrix(p, 0, 1), {Vec{1}},
                            {"1"});
}

/// c'[i][j] = c[j][i]; radical and idempotents carried over unchanged.
inline StructureAlgebra opposite(const StructureAlgebra& a)
{
    const std::size_t n = a.dim();
    ProductTable t(n * n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            t[i * n + j] = a.product_terms(j, i);
    return StructureAlgebra(a.prime(), a.labels(), std::move(t), a.unit(), a.radical_basis(),
                            a.idempotents(), a.vertex_names());
}

namespace detail {

inline std::vector<Term> shifted(const std::vector<Term>& ts, std::size_t by)
{
    std::vector<Term> out = ts;
    for (auto& t : out)
        t.index += static_cast<std::uint32_t>(by);
    return out;
}

inline Vec padded(std::span<const Scalar> v, std::size_t before, std::size_t total)
{
    Vec out(total, 0);
    std::copy(v.begin(), v.end(), out.begin() + before);
    return out;
}

inline std::vector<Term> row_terms(std::span<const Scalar> row, std::size_t offset)
{
    std::vector<Term> out;
    for (std::size_t k = 0; k < row.size(); ++k)
        if (row[k])
            out.push_back({static_cast<std::uint32_t>(offset + k), row[k]});
    return out;
}

/// T(A) = A (+) A#, (x,y)(x',y') = (xx', xy' + yx'). With drop_right the yx'
/// term is omitted (negative-control mutant).
inline StructureAlgebra trivial_extension_impl(const StructureAlgebra& a, bool drop_right)
{
    const std::size_t n = a.dim();
    const std::size_t m = 2 * n;
    std::vector<std::string> labels = a.labels();
    for (const auto& l : a.labels())
        labels.push_back(l + "#");
    ProductTable t(m * m);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            const auto& ij = a.product_terms(i, j);
            t[i * m + j] = ij;
            t[i * m + (n + j)] = shifted(ij, n);
            if (!drop_right)
                t[(n + i) * m + j] = shifted(ij, n);
        }
    Matrix rad(a.prime(), 0, m);
    for (std::size_t r = 0; r < a.radical_basis().rows(); ++r)
        rad.append_row(padded(a.radical_basis().row(r), 0, m));
    for (std::size_t i = 0; i < n; ++i)
        rad.append_row(padded(a.basis_vector(i), n, m));
    std::vector<Vec> idem;
    for (const auto& e : a.idempotents())
        idem.push_back(padded(e, 0, m));
    return StructureAlgebra(a.prime(), std::move(labels), std::move(t), padded(a.unit(), 0, m),
                            std::move(rad), std::move(idem), a.vertex_names());
}

}  // namespace detail

/// Trivial extension T(A) = A ⋉ A with basis order A-part then #-part.
inline StructureAlgebra trivial_extension(const StructureAlgebra& a)
{
    return detail::trivial_extension_impl(a, false);
}

/// Upper-triangular algebra [U M; 0 V] on the basis U-part, M-part, V-part.
inline StructureAlgebra triangular(const AlgebraPtr& u, const AlgebraPtr& v, const Bimodule& m,
                                   const std::string& u_prefix = "u:",
                                   const std::string& v_prefix = "v:")
{
    if (!same_algebra(m.left, u) || !same_algebra(m.right, v))
        throw Error(ErrorKind::BimoduleMismatch, "bimodule algebras differ from the corners");
    if (m.left_action.size() != u->dim() || m.right_action.size() != v->dim())
        throw Error(ErrorKind::BimoduleMismatch, "bimodule action count mismatch");
    const std::size_t nu = u->dim(), dm = m.dim, nv = v->dim();
    const std::size_t n = nu + dm + nv;
    const std::size_t mo = nu, vo = nu + dm;
    const auto p = u->prime();
    std::vector<std::string> labels;
    for (const auto& l : u->labels())
        labels.push_back(u_prefix + l);
    for (std::size_t k = 0; k < dm; ++k)
        labels.push_back("m" + std::to_string(k + 1));
    for (const auto& l : v->labels())
        labels.push_back(v_prefix + l);

    ProductTable t(n * n);
    for (std::size_t i = 0; i < nu; ++i) {
        for (std::size_t j = 0; j < nu; ++j)
            t[i * n + j] = u->product_terms(i, j);
        for (std::size_t k = 0; k < dm; ++k)
            t[i * n + (mo + k)] = detail::row_terms(m.left_action[i].row(k), mo);
    }
    for (std::size_t k = 0; k < dm; ++k)
        for (std::size_t j = 0; j < nv; ++j)
            t[(mo + k) * n + (vo + j)] = detail::row_terms(m.right_action[j].row(k), mo);
    for (std::size_t i = 0; i < nv; ++i)
        for (std::size_t j = 0; j < nv; ++j)
            t[(vo + i) * n + (vo + j)] = detail::shifted(v->product_terms(i, j), vo);

    Vec unit(n, 0);
    std::copy(u->unit().begin(), u->unit().end(), unit.begin());
    std::copy(v->unit().begin(), v->unit().end(), unit.begin() + vo);
    Matrix rad(p, 0, n);
    for (std::size_t r = 0; r < u->radical_basis().rows(); ++r)
        rad.append_row(detail::padded(u->radical_basis().row(r), 0, n));
    for (std::size_t k = 0; k < dm; ++k) {
        Vec e(n, 0);
        e[mo + k] = 1;
        rad.append_row(e);
    }
    for (std::size_t r = 0; r < v->radical_basis().rows(); ++r)
        rad.append_row(detail::padded(v->radical_basis().row(r), vo, n));
    std::vector<Vec> idem;
    std::vector<std::string> names;
    for (std::size_t i = 0; i < u->vertex_count(); ++i) {
        idem.push_back(detail::padded(u->idempotents()[i], 0, n));
        names.push_back(u_prefix + u->vertex_names()[i]);
    }
    for (std::size_t i = 0; i < v->vertex_count(); ++i) {
        idem.push_back(detail::padded(v->idempotents()[i], vo, n));
        names.push_back(v_prefix + v->vertex_names()[i]);
    }
    auto blocks = std::make_shared<TriangularBlocks>(TriangularBlocks{u, v, m, mo, vo});
    return StructureAlgebra(p, std::move(labels), std::move(t), std::move(unit), std::move(rad),
                            std::move(idem), std::move(names), std::move(blocks));
}

/// Zero bimodule between u and v.
inline Bimodule zero_bimodule(const AlgebraPtr& u, const AlgebraPtr& v)
{
    Bimodule m{u, v, 0, {}, {}};
    for (std::size_t i = 0; i < u->dim(); ++i)
        m.left_action.emplace_back(u->prime(), 0, 0);
    for (std::size_t j = 0; j < v->dim(); ++j)
        m.right_action.emplace_back(u->prime(), 0, 0);
    return m;
}

// ---------------------------------------------------------------------------
// The semisimple quotient Σ = A/rad(A) and the cover constructions

/// Row k is the class of b_k in A/rad(A) = k^n, in the basis of idempotent images.
inline Matrix quotient_projection(const StructureAlgebra& a)
{
    const std::size_t n = a.dim(), s = a.vertex_count();
    Matrix stacked = detail::with_rows(Matrix(a.prime(), 0, n), a.idempotents(), n);
    for (std::size_t r = 0; r < a.radical_basis().rows(); ++r)
        stacked.append_row(a.radical_basis().row(r));
    Matrix coords = solve_linear(stacked, Matrix::identity(a.prime(), n));
    std::vector<std::size_t> first(s);
    for (std::size_t i = 0; i < s; ++i)
        first[i] = i;
    return coords.select_cols(first);
}

/// Σ = A/rad(A) as the algebra k^n with basis the images of the idempotents.
inline StructureAlgebra semisimple_quotient(const StructureAlgebra& a)
{
    const std::size_t s = a.vertex_count();
    ProductTable t(s * s);
    std::vector<Vec> idem;
    Vec unit(s, 1);
    for (std::size_t i = 0; i < s; ++i) {
        t[i * s + i] = {Term{static_cast<std::uint32_t>(i), 1}};
        Vec e(s, 0);
        e[i] = 1;
        idem.push_back(e);
    }
    return StructureAlgebra(a.prime(), a.vertex_names(), std::move(t), std::move(unit),
                            Matrix(a.prime(), 0, s), std::move(idem), a.vertex_names());
}

enum class QuotientSide {
    LeftViaA,   ///< A acts on the left through A ->> Σ, B = T(Σ) on the right (used by Λ)
    RightViaA,  ///< B acts on the left, A on the right through A ->> Σ (used by the cover)
};

namespace detail {

inline Matrix diagonal(std::uint32_t p, std::span<const Scalar> d)
{
    Matrix m(p, d.size(), d.size());
    for (std::size_t i = 0; i < d.size(); ++i)
        m(i, i) = d[i];
    return m;
}

/// Action matrices of B = T(Σ) on Σ through the projection (x, y) -> x.
inline std::vector<Matrix> trivext_quotient_actions(const StructureAlgebra& b, std::size_t s)
{
    std::vector<Matrix> out;
    for (std::size_t j = 0; j < b.dim(); ++j) {
        Vec d(s, 0);
        if (j < s)
            d[j] = 1;
        out.push_back(diagonal(b.prime(), d));
    }
    return out;
}

}  // namespace detail

/// Σ = A/rad(A) as a bimodule between A and B = T(Σ), both acting through the
/// canonical surjections. `b` must be trivial_extension(semisimple_quotient(a)).
inline Bimodule semisimple_quotient_bimodule(const AlgebraPtr& a, const AlgebraPtr& b,
                                             QuotientSide side)
{
    const std::size_t s = a->vertex_count();
    Matrix proj = quotient_projection(*a);
    std::vector<Matrix> a_actions;
    for (std::size_t k = 0; k < a->dim(); ++k)
        a_actions.push_back(detail::diagonal(a->prime(), proj.row(k)));
    auto b_actions = detail::trivext_quotient_actions(*b, s);
    if (side == QuotientSide::LeftViaA)
        return Bimodule{a, b, s, std::move(a_actions), std::move(b_actions)};
    return Bimodule{b, a, s, std::move(b_actions), std::move(a_actions)};
}

/// B = T(A/rad(A)).
inline AlgebraPtr quotient_trivial_extension(const StructureAlgebra& a)
{
    return share(trivial_extension(semisimple_quotient(a)));
}

/// The cover of A: the lower-triangular [A 0; Σ B] stored in upper-triangular
/// normal form [B Σ; 0 A] (basis order B-part, Σ-part, A-part).
inline StructureAlgebra build_cover(const AlgebraPtr& a, const AlgebraPtr& b)
{
    auto m = semisimple_quotient_bimodule(a, b, QuotientSide::RightViaA);
    return triangular(b, a, m, "b:", "a:");
}

inline StructureAlgebra build_cover(const AlgebraPtr& a) { return build_cover(a, quotient_trivial_extension(*a)); }

/// Λ = [A Σ; 0 B] (basis order A-part, Σ-part, B-part).
inline StructureAlgebra build_lambda(const AlgebraPtr& a, const AlgebraPtr& b)
{
    auto m = semisimple_quotient_bimodule(a, b, QuotientSide::LeftViaA);
    return triangular(a, b, m, "a:", "b:");
}

inline StructureAlgebra build_lambda(const AlgebraPtr& a) { return build_lambda(a, quotient_trivial_extension(*a)); }

/// Indices of the primitive idempotents belonging to the U corner (first) or
/// the V corner of a triangular algebra.
inline std::vector<std::size_t> corner_vertices(const StructureAlgebra& a, bool u_corner)
{
    const auto& bl = a.blocks();
    if (!bl)
        throw Error(ErrorKind::ShapeMismatch, "algebra is not triangular");
    std::vector<std::size_t> out;
    const std::size_t nu = bl->u->vertex_count();
    const std::size_t from = u_corner ? 0 : nu;
    const std::size_t to = u_corner ? nu : a.vertex_count();
    for (std::size_t i = from; i < to; ++i)
        out.push_back(i);
    return out;
}

/// eAe on the basis {e b_i e} thinned greedily to an independent set.
inline StructureAlgebra corner_algebra(const StructureAlgebra& a, const Vec& e)
{
    const std::size_t n = a.dim();
    const auto p = a.prime();
    if (a.multiply(e, e) != e)
        throw Error(ErrorKind::NotIdempotent, "corner element is not idempotent");
    EchelonBasis span(p, n);
    std::vector<Vec> basis;
    std::vector<std::string> labels;
    for (std::size_t i = 0; i < n; ++i) {
        Vec x = a.multiply(a.multiply(e, a.basis_vector(i)), e);
        if (span.add(x)) {
            labels.push_back(x == a.basis_vector(i) ? a.labels()[i] : "e(" + a.labels()[i] + ")e");
            basis.push_back(std::move(x));
        }
    }
    const std::size_t k = basis.size();
    Matrix w = Matrix::from_vecs(p, basis, n);
    Matrix prods(p, 0, n);
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j)
            prods.append_row(a.multiply(basis[i], basis[j]));
    Matrix coords = k ? solve_linear(w, prods) : Matrix(p, 0, 0);
    ProductTable t(k * k);
    for (std::size_t r = 0; r < k * k; ++r)
        t[r] = detail::row_terms(coords.row(r), 0);
    auto to_corner = [&](const Vec& v) { return solve_linear(w, Matrix::from_vecs(p, {v}, n)).row_vec(0); };
    Vec unit = k ? to_corner(e) : Vec{};
    Matrix rad_rows(p, 0, n);
    for (std::size_t r = 0; r < a.radical_basis().rows(); ++r)
        rad_rows.append_row(a.multiply(a.multiply(e, a.radical_basis().row(r)), e));
    Matrix rad = k && rad_rows.rows() ? row_space_basis(solve_linear(w, rad_rows)) : Matrix(p, 0, k);
    std::vector<Vec> idem;
    std::vector<std::string> names;
    for (std::size_t i = 0; i < a.vertex_count(); ++i) {
        const Vec& ei = a.idempotents()[i];
        if (!is_zero(ei) && a.multiply(e, ei) == ei && a.multiply(ei, e) == ei) {
            idem.push_back(to_corner(ei));
            names.push_back(a.vertex_names()[i]);
        }
    }
    return StructureAlgebra(p, std::move(labels), std::move(t), std::move(unit), std::move(rad),
                            std::move(idem), std::move(names));
}

/// True iff basis_map (row i = image of b_i) sends unit to unit and every
/// product of a onto the corresponding product of b.
inline bool canonical_iso_check(const StructureAlgebra& a, const StructureAlgebra& b,
                                const Matrix& basis_map)
{
    const std::size_t n = a.dim();
    if (b.dim() != n || basis_map.rows() != n || basis_map.cols() != n)
        throw Error(ErrorKind::DimensionMismatch, "algebras of different dimension");
    if (a.prime() != b.prime() || !inverse(basis_map))
        return false;
    if (basis_map.apply(a.unit()) != b.unit())
        return false;
    Fp f = a.field();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            Vec lhs(n, 0);
            for (const auto& t : a.product_terms(i, j))
                axpy(f, t.coef, basis_map.row(t.index), lhs);
            if (lhs != b.multiply(basis_map.row(i), basis_map.row(j)))
                return false;
        }
    return true;
}

/// The corner-swap permutation from opposite(build_lambda(A)) to
/// build_cover(opposite(A)): A-part -> last block, Σ-part -> middle, B-part -> first.
inline Matrix lambda_op_to_cover_permutation(const StructureAlgebra& a)
{
    const std::size_t na = a.dim(), s = a.vertex_count();
    const std::size_t n = na + 3 * s;
    Matrix perm(a.prime(), n, n);
    for (std::size_t i = 0; i < na; ++i)
        perm(i, 3 * s + i) = 1;
    for (std::size_t k = 0; k < s; ++k)
        perm(na + k, 2 * s + k) = 1;
    for (std::size_t j = 0; j < 2 * s; ++j)
        perm(na + s + j, j) = 1;
    return perm;
}

}  // namespace syzygy
