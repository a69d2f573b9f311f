#pragma once

/* Finite-dimensional right modules given by one action matrix per basis
 * element of the algebra, and the basic module-theoretic operations:
 * homomorphism spaces, submodules, quotients, socle, top, projective covers
 * and syzygies.
 *
 * Homomorphisms are plain matrices: h : X -> Y is a dim X by dim Y matrix
 * acting on row vectors.
 */

#include <numeric>

#include "syzygy/algebra.hpp"

namespace syzygy {

class RightModule {
public:
    RightModule() = default;

    RightModule(AlgebraPtr alg, std::size_t dim, std::vector<Matrix> action)
        : alg_(std::move(alg)), dim_(dim), action_(std::move(action))
    {
        if (action_.size() != alg_->dim())
            throw Error(ErrorKind::ShapeMismatch, "one action matrix per basis element required");
        for (const auto& m : action_)
            if (m.rows() != dim_ || m.cols() != dim_)
                throw Error(ErrorKind::ShapeMismatch, "action matrix has wrong size");
        const auto& g = alg_->generators();
        for (const auto& e : g.idempotents)
            idem_action_.push_back(action_of(e));
        for (const auto& r : g.radical)
            rad_action_.push_back(action_of(r.element));
    }

    static RightModule zero(const AlgebraPtr& alg)
    {
        return RightModule(alg, 0, std::vector<Matrix>(alg->dim(), Matrix(alg->prime(), 0, 0)));
    }

    /// A_A with b acting by right multiplication.
    static RightModule regular(const AlgebraPtr& alg)
    {
        std::vector<Matrix> act;
        for (std::size_t j = 0; j < alg->dim(); ++j)
            act.push_back(alg->right_mult(j));
        return RightModule(alg, alg->dim(), std::move(act));
    }

    const AlgebraPtr& algebra() const { return alg_; }
    std::uint32_t prime() const { return alg_->prime(); }
    std::size_t dim() const { return dim_; }
    const Matrix& action(std::size_t basis_index) const { return action_[basis_index]; }
    const std::vector<Matrix>& actions() const { return action_; }
    /// Actions of the primitive idempotents, in vertex order.
    const std::vector<Matrix>& idempotent_actions() const { return idem_action_; }
    /// Actions of the radical generators (see StructureAlgebra::generators).
    const std::vector<Matrix>& radical_generator_actions() const { return rad_action_; }

    Matrix action_of(std::span<const Scalar> element) const
    {
        Matrix m(prime(), dim_, dim_);
        for (std::size_t k = 0; k < element.size(); ++k)
            if (element[k])
                m.add_scaled(element[k], action_[k]);
        return m;
    }

    /// Actions of all algebra generators: idempotents then radical generators.
    std::vector<const Matrix*> generator_actions() const
    {
        std::vector<const Matrix*> out;
        for (const auto& m : idem_action_)
            out.push_back(&m);
        for (const auto& m : rad_action_)
            out.push_back(&m);
        return out;
    }

    /// dim(X e_i) for every vertex i.
    std::vector<std::size_t> dimension_vector() const
    {
        std::vector<std::size_t> dv;
        for (const auto& m : idem_action_)
            dv.push_back(rank(m));
        return dv;
    }

    bool is_zero() const { return dim_ == 0; }

    bool operator==(const RightModule& o) const
    {
        return same_algebra(alg_, o.alg_) && dim_ == o.dim_ && action_ == o.action_;
    }

private:
    AlgebraPtr alg_;
    std::size_t dim_ = 0;
    std::vector<Matrix> action_;
    std::vector<Matrix> idem_action_;
    std::vector<Matrix> rad_action_;
};

/// Checks unitality and multiplicativity on all basis pairs.
inline bool is_valid_module(const RightModule& x)
{
    const auto& a = *x.algebra();
    const std::size_t n = a.dim();
    if (x.action_of(a.unit()) != Matrix::identity(x.prime(), x.dim()))
        return false;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            Matrix lhs = x.action(i) * x.action(j);
            Matrix rhs(x.prime(), x.dim(), x.dim());
            for (const auto& t : a.product_terms(i, j))
                rhs.add_scaled(t.coef, x.action(t.index));
            if (lhs != rhs)
                return false;
        }
    return true;
}

/// h intertwines the actions of every basis element.
inline bool is_module_hom(const RightModule& x, const RightModule& y, const Matrix& h)
{
    if (h.rows() != x.dim() || h.cols() != y.dim())
        return false;
    for (std::size_t k = 0; k < x.algebra()->dim(); ++k)
        if (x.action(k) * h != h * y.action(k))
            return false;
    return true;
}

inline void require_same_algebra(const RightModule& x, const RightModule& y)
{
    if (!same_algebra(x.algebra(), y.algebra()))
        throw Error(ErrorKind::AlgebraMismatch, "modules over different algebras");
}

/// Right nullspace {v : eq * v^T = 0}, as rows.
inline Matrix nullspace(const Matrix& eq) { return kernel_basis(eq.transpose()); }

namespace detail {

/// Rows spanning X e_i for every vertex i, stacked: an idempotent-adapted basis.
struct AdaptedBasis {
    std::vector<Matrix> blocks;
    std::vector<Subspace> spaces;
    Matrix stacked;
};

inline AdaptedBasis adapted_basis(const RightModule& x)
{
    AdaptedBasis ab;
    std::vector<Matrix> parts;
    for (const auto& e : x.idempotent_actions()) {
        ab.spaces.push_back(Subspace::span(e));
        ab.blocks.push_back(ab.spaces.back().basis);
    }
    ab.stacked = Matrix::vstack(x.prime(), ab.blocks, x.dim());
    return ab;
}

}  // namespace detail

/// Basis of Hom_A(x, y). Homomorphisms preserve the idempotent splitting, so
/// the unknowns are the vertex blocks; each radical generator in e_i J e_j
/// contributes the equations (v g) H_j = (v H_i) g.
inline std::vector<Matrix> hom_space(const RightModule& x, const RightModule& y)
{
    require_same_algebra(x, y);
    const auto p = x.prime();
    if (x.dim() == 0 || y.dim() == 0)
        return {};
    const auto& gens = x.algebra()->generators();
    const std::size_t nv = gens.idempotents.size();
    auto ax = detail::adapted_basis(x);
    auto ay = detail::adapted_basis(y);
    std::vector<std::size_t> off(nv + 1, 0), xo(nv + 1, 0), yo(nv + 1, 0);
    for (std::size_t i = 0; i < nv; ++i) {
        off[i + 1] = off[i] + ax.blocks[i].rows() * ay.blocks[i].rows();
        xo[i + 1] = xo[i] + ax.blocks[i].rows();
        yo[i + 1] = yo[i] + ay.blocks[i].rows();
    }
    const std::size_t unknowns = off[nv];
    if (unknowns == 0)
        return {};
    Fp f{p};
    EchelonBasis eqs(p, unknowns);
    for (std::size_t g = 0; g < gens.radical.size(); ++g) {
        const std::size_t i = gens.radical[g].source, j = gens.radical[g].target;
        const std::size_t dxi = ax.blocks[i].rows(), dxj = ax.blocks[j].rows();
        const std::size_t dyi = ay.blocks[i].rows(), dyj = ay.blocks[j].rows();
        if (dxi == 0 || dyj == 0)
            continue;
        const Matrix& gx = x.radical_generator_actions()[g];
        const Matrix& gy = y.radical_generator_actions()[g];
        Matrix cx = ax.spaces[j].coords(ax.blocks[i] * gx);  // dxi x dxj
        Matrix cy = dyi ? ay.spaces[j].coords(ay.blocks[i] * gy) : Matrix(p, 0, dyj);  // dyi x dyj
        for (std::size_t a = 0; a < dxi; ++a)
            for (std::size_t b = 0; b < dyj; ++b) {
                Vec row(unknowns, 0);
                for (std::size_t c = 0; c < dxj; ++c)
                    row[off[j] + c * dyj + b] = f.add(row[off[j] + c * dyj + b], cx(a, c));
                for (std::size_t t = 0; t < dyi; ++t)
                    row[off[i] + a * dyi + t] = f.sub(row[off[i] + a * dyi + t], cy(t, b));
                if (!is_zero(row))
                    eqs.add(std::move(row));
            }
    }
    Matrix eq = eqs.rank() ? eqs.matrix() : Matrix(p, 0, unknowns);
    Matrix sol = eqs.rank() ? nullspace(eq) : Matrix::identity(p, unknowns);
    auto tx_inv = inverse(ax.stacked);
    std::vector<Matrix> out;
    for (std::size_t s = 0; s < sol.rows(); ++s) {
        Matrix hp(p, x.dim(), y.dim());
        for (std::size_t i = 0; i < nv; ++i) {
            const std::size_t dxi = ax.blocks[i].rows(), dyi = ay.blocks[i].rows();
            for (std::size_t a = 0; a < dxi; ++a)
                for (std::size_t b = 0; b < dyi; ++b)
                    hp(xo[i] + a, yo[i] + b) = sol(s, off[i] + a * dyi + b);
        }
        out.push_back(*tx_inv * hp * ay.stacked);
    }
    return out;
}

// ---------------------------------------------------------------------------
// Submodules and quotients

struct Submodule {
    RightModule module;
    Subspace space;  ///< canonical basis of the submodule inside the parent

    const Matrix& inclusion() const { return space.basis; }
};

/// The submodule on an action-stable subspace (stability is the caller's contract).
inline Submodule submodule_on(const RightModule& x, Subspace s)
{
    std::vector<Matrix> act;
    for (const auto& m : x.actions())
        act.push_back(s.dim() ? s.coords(s.basis * m) : Matrix(x.prime(), 0, 0));
    RightModule sub(x.algebra(), s.dim(), std::move(act));
    return {std::move(sub), std::move(s)};
}

/// Smallest action-stable subspace containing the rows of gens.
inline Submodule submodule_from_generators(const RightModule& x, const Matrix& gens)
{
    EchelonBasis span(x.prime(), x.dim());
    std::vector<Vec> queue;
    for (std::size_t r = 0; r < gens.rows(); ++r)
        if (span.add(gens.row_vec(r)))
            queue.push_back(gens.row_vec(r));
    auto acts = x.generator_actions();
    while (!queue.empty()) {
        Vec v = std::move(queue.back());
        queue.pop_back();
        for (const Matrix* g : acts) {
            Vec w = g->apply(v);
            if (span.add(w))
                queue.push_back(std::move(w));
        }
    }
    Subspace s;
    s.basis = span.rank() ? span.matrix() : Matrix(x.prime(), 0, x.dim());
    s.pivots.clear();
    for (std::size_t r = 0; r < s.basis.rows(); ++r) {
        std::size_t c = 0;
        while (s.basis(r, c) == 0)
            ++c;
        s.pivots.push_back(c);
    }
    return submodule_on(x, std::move(s));
}

inline bool is_stable(const RightModule& x, const Subspace& s)
{
    if (s.dim() == 0)
        return true;
    for (const Matrix* g : x.generator_actions())
        if (!s.contains_rows(s.basis * *g))
            return false;
    return true;
}

struct Quotient {
    RightModule module;
    Matrix projection;                   ///< dim parent x dim quotient
    std::vector<std::size_t> complement; ///< parent coordinates kept as quotient basis
};

namespace detail {

/// Projection of the ambient space onto the complement coordinates of s.
inline Matrix complement_projection(const Subspace& s, std::size_t width, std::uint32_t p,
                                    std::vector<std::size_t>& complement)
{
    std::vector<long> pos(width, -1);
    std::vector<bool> piv(width, false);
    for (auto c : s.pivots)
        piv[c] = true;
    complement.clear();
    for (std::size_t c = 0; c < width; ++c)
        if (!piv[c]) {
            pos[c] = static_cast<long>(complement.size());
            complement.push_back(c);
        }
    Fp f{p};
    Matrix proj(p, width, complement.size());
    for (std::size_t c = 0; c < width; ++c)
        if (!piv[c])
            proj(c, pos[c]) = 1;
    for (std::size_t r = 0; r < s.dim(); ++r)
        for (std::size_t k = 0; k < complement.size(); ++k)
            proj(s.pivots[r], k) = f.neg(s.basis(r, complement[k]));
    return proj;
}

}  // namespace detail

/// x / sub on deterministic complement coordinates. Throws NotStable.
inline Quotient quotient_module(const RightModule& x, const Subspace& sub)
{
    if (!is_stable(x, sub))
        throw Error(ErrorKind::NotStable, "subspace is not a submodule");
    Quotient q;
    q.projection = detail::complement_projection(sub, x.dim(), x.prime(), q.complement);
    std::vector<Matrix> act;
    for (const auto& m : x.actions())
        act.push_back(m.select_rows(q.complement) * q.projection);
    q.module = RightModule(x.algebra(), q.complement.size(), std::move(act));
    return q;
}

/// {v : v * rad(A) = 0}; the largest semisimple submodule for split basic algebras.
inline Submodule socle(const RightModule& x)
{
    const auto& gens = x.radical_generator_actions();
    if (gens.empty() || x.dim() == 0) {
        Subspace all = Subspace::span(Matrix::identity(x.prime(), x.dim()));
        return submodule_on(x, std::move(all));
    }
    Matrix stacked = Matrix::hstack(x.prime(), gens, x.dim());
    return submodule_on(x, Subspace::span(kernel_basis(stacked)));
}

/// x * rad(A).
inline Submodule radical_submodule(const RightModule& x)
{
    std::vector<Matrix> gens = x.radical_generator_actions();
    Matrix rows = Matrix::vstack(x.prime(), gens, x.dim());
    return submodule_from_generators(x, rows);
}

/// x / x rad(A).
inline Quotient top_of_module(const RightModule& x)
{
    return quotient_module(x, radical_submodule(x).space);
}

inline bool is_semisimple(const RightModule& x)
{
    for (const auto& g : x.radical_generator_actions())
        if (!g.is_zero())
            return false;
    return true;
}

// ---------------------------------------------------------------------------
// Canonical modules

/// e_i A as a submodule of the regular module.
inline Submodule indecomposable_projective(const AlgebraPtr& a, std::size_t vertex)
{
    auto reg = RightModule::regular(a);
    return submodule_from_generators(reg, Matrix::from_vecs(a->prime(), {a->idempotents()[vertex]}, a->dim()));
}

struct CanonicalModules {
    RightModule regular;
    std::vector<Submodule> projectives;
    std::vector<Quotient> simples;
};

inline CanonicalModules canonical_modules(const AlgebraPtr& a)
{
    CanonicalModules c{RightModule::regular(a), {}, {}};
    for (std::size_t i = 0; i < a->vertex_count(); ++i) {
        c.projectives.push_back(submodule_from_generators(
            c.regular, Matrix::from_vecs(a->prime(), {a->idempotents()[i]}, a->dim())));
        c.simples.push_back(top_of_module(c.projectives.back().module));
    }
    return c;
}

inline RightModule simple_module(const AlgebraPtr& a, std::size_t vertex)
{
    return top_of_module(indecomposable_projective(a, vertex).module).module;
}

// ---------------------------------------------------------------------------
// Direct sums

inline RightModule direct_sum(std::span<const RightModule> parts, const AlgebraPtr& alg)
{
    std::size_t d = 0;
    for (const auto& m : parts) {
        if (!same_algebra(m.algebra(), alg))
            throw Error(ErrorKind::AlgebraMismatch, "direct sum over different algebras");
        d += m.dim();
    }
    std::vector<Matrix> act;
    for (std::size_t k = 0; k < alg->dim(); ++k) {
        std::vector<Matrix> blocks;
        for (const auto& m : parts)
            blocks.push_back(m.action(k));
        act.push_back(d ? Matrix::block_diagonal(alg->prime(), blocks) : Matrix(alg->prime(), 0, 0));
    }
    return RightModule(alg, d, std::move(act));
}

inline RightModule direct_sum(const RightModule& x, const RightModule& y)
{
    std::vector<RightModule> parts{x, y};
    return direct_sum(parts, x.algebra());
}

/// The regular module repeated `copies` times.
inline RightModule free_module(const AlgebraPtr& a, std::size_t copies)
{
    std::vector<RightModule> parts(copies, RightModule::regular(a));
    return copies ? direct_sum(parts, a) : RightModule::zero(a);
}

// ---------------------------------------------------------------------------
// Projective covers and syzygies

struct ProjectiveCover {
    RightModule projective;
    Matrix map;                              ///< surjection projective -> x
    std::vector<std::size_t> multiplicity;   ///< copies of e_i A, per vertex
    std::vector<std::size_t> summand_vertex; ///< vertex of each summand, in order
};

/// Multiplicities of the simples in top(x), i.e. dim(top(x) e_i).
inline std::vector<std::size_t> top_multiplicities(const RightModule& x)
{
    return top_of_module(x).module.dimension_vector();
}

/// Minimal projective cover: one copy of e_i A for each simple S_i in top(x),
/// with generators lifted deterministically from the canonical top basis.
inline ProjectiveCover projective_cover(const RightModule& x)
{
    const auto& alg = x.algebra();
    const auto p = x.prime();
    ProjectiveCover c;
    auto top = top_of_module(x);
    std::vector<RightModule> parts;
    std::vector<Matrix> images;
    for (std::size_t i = 0; i < alg->vertex_count(); ++i) {
        Matrix tops = row_space_basis(top.module.idempotent_actions()[i]);
        c.multiplicity.push_back(tops.rows());
        if (tops.rows() == 0)
            continue;
        auto proj = indecomposable_projective(alg, i);
        Matrix lifts = solve_linear(top.projection, tops) * x.idempotent_actions()[i];
        for (std::size_t r = 0; r < lifts.rows(); ++r) {
            // Row k of vb is v * b_k, so the image of w in e_i A is w * vb.
            Matrix vb(p, alg->dim(), x.dim());
            Vec v = lifts.row_vec(r);
            for (std::size_t k = 0; k < alg->dim(); ++k) {
                Vec img = x.action(k).apply(v);
                std::copy(img.begin(), img.end(), vb.row(k).begin());
            }
            images.push_back(proj.inclusion() * vb);
            parts.push_back(proj.module);
            c.summand_vertex.push_back(i);
        }
    }
    c.projective = parts.empty() ? RightModule::zero(alg) : direct_sum(parts, alg);
    c.map = Matrix::vstack(p, images, x.dim());
    if (c.map.rows() != c.projective.dim())
        c.map = Matrix(p, c.projective.dim(), x.dim());
    return c;
}

/// Exact projectivity test: x is projective iff its projective cover has the same dimension.
inline bool is_projective(const RightModule& x)
{
    auto mult = top_multiplicities(x);
    std::size_t d = 0;
    for (std::size_t i = 0; i < mult.size(); ++i)
        if (mult[i])
            d += mult[i] * indecomposable_projective(x.algebra(), i).module.dim();
    return d == x.dim();
}

struct SyzygyStep {
    ProjectiveCover cover;
    Submodule kernel;  ///< Ω(x) inside the cover
};

inline SyzygyStep syzygy_step(const RightModule& x)
{
    auto cover = projective_cover(x);
    Matrix k = cover.projective.dim() ? kernel_basis(cover.map) : Matrix(x.prime(), 0, 0);
    auto kernel = submodule_on(cover.projective, Subspace::span(k));
    return {std::move(cover), std::move(kernel)};
}

/// Ω^s(x); Ω^0(x) = x.
inline RightModule syzygy(const RightModule& x, std::size_t s)
{
    RightModule cur = x;
    for (std::size_t i = 0; i < s; ++i) {
        if (cur.dim() == 0)
            break;
        cur = syzygy_step(cur).kernel.module;
    }
    return cur;
}

}  // namespace syzygy
