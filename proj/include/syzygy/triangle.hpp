#pragma once

/* Modules over a triangular algebra [U M; 0 V] as triples (X_U, Y_V, f) with
 * f : X (x)_U M -> Y a V-homomorphism. A flat module Z splits as
 * X = Z eps_U and Y = Z eps_V, and the M-part of the algebra maps X into Y.
 */

#include "syzygy/tensor.hpp"

namespace syzygy {

struct TriangleModule {
    RightModule x;  ///< over U
    RightModule y;  ///< over V
    Matrix f;       ///< dim(x (x)_U M) x dim y
};

enum class Corner { U, V };

namespace detail {

inline const TriangularBlocks& require_blocks(const StructureAlgebra& a)
{
    if (!a.blocks())
        throw Error(ErrorKind::ShapeMismatch, "algebra carries no triangular structure");
    return *a.blocks();
}

}  // namespace detail

/// The flat module on x (+) y: U acts on x, V on y, and m_k sends x to y via f.
inline RightModule triple_to_module(const TriangleModule& t, const AlgebraPtr& lam)
{
    const auto& bl = detail::require_blocks(*lam);
    if (!same_algebra(t.x.algebra(), bl.u) || !same_algebra(t.y.algebra(), bl.v))
        throw Error(ErrorKind::ShapeMismatch, "triple does not match the triangular corners");
    auto tens = tensor_over_algebra(t.x, bl.m);
    if (t.f.rows() != tens.module.dim() || t.f.cols() != t.y.dim())
        throw Error(ErrorKind::ShapeMismatch, "structure map has the wrong shape");
    if (!is_module_hom(tens.module, t.y, t.f))
        throw Error(ErrorKind::ShapeMismatch, "structure map is not V-linear");
    const auto p = lam->prime();
    const std::size_t dx = t.x.dim(), dy = t.y.dim(), d = dx + dy, dm = bl.m.dim;
    std::vector<Matrix> act;
    for (std::size_t i = 0; i < bl.u->dim(); ++i) {
        Matrix m(p, d, d);
        m.set_block(0, 0, t.x.action(i));
        act.push_back(std::move(m));
    }
    for (std::size_t k = 0; k < dm; ++k) {
        Matrix m(p, d, d);
        if (dx && dy) {
            std::vector<std::size_t> rows;
            for (std::size_t a = 0; a < dx; ++a)
                rows.push_back(a * dm + k);
            m.set_block(0, dx, tens.projection.select_rows(rows) * t.f);
        }
        act.push_back(std::move(m));
    }
    for (std::size_t j = 0; j < bl.v->dim(); ++j) {
        Matrix m(p, d, d);
        m.set_block(dx, dx, t.y.action(j));
        act.push_back(std::move(m));
    }
    return RightModule(lam, d, std::move(act));
}

struct TripleSplitting {
    TriangleModule triple;
    Subspace x_space;  ///< Z eps_U inside Z
    Subspace y_space;  ///< Z eps_V inside Z
};

namespace detail {

inline RightModule restrict_to_corner(const RightModule& z, const Subspace& s, const AlgebraPtr& corner,
                                      std::size_t offset)
{
    const auto p = z.prime();
    std::vector<Matrix> act;
    for (std::size_t i = 0; i < corner->dim(); ++i)
        act.push_back(s.dim() ? s.coords(s.basis * z.action(offset + i)) : Matrix(p, 0, 0));
    return RightModule(corner, s.dim(), std::move(act));
}

inline Subspace corner_space(const RightModule& z, Corner which)
{
    const auto& a = *z.algebra();
    Vec eps = a.idempotent_sum(corner_vertices(a, which == Corner::U));
    Matrix img = z.dim() ? z.action_of(eps) : Matrix(z.prime(), 0, 0);
    return Subspace::span(z.dim() ? img : Matrix(z.prime(), 0, 0));
}

}  // namespace detail

/// Splits a flat module into its triple; the splitting records the corner bases.
inline TripleSplitting module_to_triple(const RightModule& z)
{
    const auto& bl = detail::require_blocks(*z.algebra());
    const auto p = z.prime();
    TripleSplitting s;
    s.x_space = detail::corner_space(z, Corner::U);
    s.y_space = detail::corner_space(z, Corner::V);
    s.triple.x = detail::restrict_to_corner(z, s.x_space, bl.u, 0);
    s.triple.y = detail::restrict_to_corner(z, s.y_space, bl.v, bl.v_offset);
    auto tens = tensor_over_algebra(s.triple.x, bl.m);
    const std::size_t dm = bl.m.dim;
    Matrix f(p, tens.module.dim(), s.triple.y.dim());
    for (std::size_t r = 0; r < tens.complement.size(); ++r) {
        const std::size_t a = tens.complement[r] / dm, k = tens.complement[r] % dm;
        Vec img = z.action(bl.m_offset + k).apply(s.x_space.basis.row(a));
        Vec c = s.y_space.coords(img);
        std::copy(c.begin(), c.end(), f.row(r).begin());
    }
    s.triple.f = std::move(f);
    return s;
}

/// The U- or V-corner of a flat module (restriction along eps Lambda eps).
inline RightModule corner_restrict(const RightModule& z, Corner which)
{
    const auto& bl = detail::require_blocks(*z.algebra());
    auto s = detail::corner_space(z, which);
    return which == Corner::U ? detail::restrict_to_corner(z, s, bl.u, 0)
                              : detail::restrict_to_corner(z, s, bl.v, bl.v_offset);
}

/// The corner component of a homomorphism h : z -> w of flat modules.
inline Matrix corner_restrict_map(const RightModule& z, const RightModule& w, const Matrix& h,
                                  Corner which)
{
    auto sz = detail::corner_space(z, which);
    auto sw = detail::corner_space(w, which);
    if (sz.dim() == 0 || sw.dim() == 0)
        return Matrix(z.prime(), sz.dim(), sw.dim());
    return sw.coords(sz.basis * h);
}

}  // namespace syzygy
