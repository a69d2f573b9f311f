#pragma once

// Tensor products over an algebra, the dual (-)* = Hom_A(-, A), and the
// torsionless (embeds into a free module) test.

#include "syzygy/module.hpp"

namespace syzygy {

struct TensorProduct {
    RightModule module;                   ///< x (x)_U M as a right V-module
    Matrix projection;                    ///< x (x)_k M ->> x (x)_U M, index a*dim M + k
    std::vector<std::size_t> complement;  ///< kept coordinates of x (x)_k M
};

/// x (x)_U M for a right U-module x and a U-V-bimodule M: the quotient of
/// x (x)_k M by span{(v u) (x) w - v (x) (u w)}, with V acting on the right of M.
inline TensorProduct tensor_over_algebra(const RightModule& x, const Bimodule& m)
{
    if (!same_algebra(x.algebra(), m.left))
        throw Error(ErrorKind::AlgebraMismatch, "module and bimodule are over different algebras");
    const auto p = x.prime();
    const std::size_t n = x.dim() * m.dim;
    std::vector<Matrix> v_act;
    for (const auto& r : m.right_action)
        v_act.push_back(n ? Matrix::kron(Matrix::identity(p, x.dim()), r) : Matrix(p, 0, 0));
    RightModule total(m.right, n, std::move(v_act));
    if (n == 0)
        return {total, Matrix(p, 0, 0), {}};

    // Generators of U suffice for the balancing relations.
    const auto& gens = x.algebra()->generators();
    std::vector<Vec> us = gens.idempotents;
    for (const auto& g : gens.radical)
        us.push_back(g.element);
    EchelonBasis bal(p, n);
    const Matrix id_x = Matrix::identity(p, x.dim()), id_m = Matrix::identity(p, m.dim);
    for (const auto& u : us) {
        Matrix lu(p, m.dim, m.dim);
        for (std::size_t k = 0; k < u.size(); ++k)
            if (u[k])
                lu.add_scaled(u[k], m.left_action[k]);
        Matrix rel = Matrix::kron(x.action_of(u), id_m) - Matrix::kron(id_x, lu);
        for (std::size_t r = 0; r < n; ++r)
            bal.add(rel.row_vec(r));
    }
    Subspace s = Subspace::span(bal.rank() ? bal.matrix() : Matrix(p, 0, n));
    auto q = quotient_module(total, s);
    return {std::move(q.module), std::move(q.projection), std::move(q.complement)};
}

/// h (x) 1_M : x (x)_U M -> x' (x)_U M.
inline Matrix tensor_map(const TensorProduct& src, const TensorProduct& tgt, const Matrix& h,
                         std::size_t bimodule_dim)
{
    const auto p = h.prime();
    if (src.module.dim() == 0 || tgt.module.dim() == 0)
        return Matrix(p, src.module.dim(), tgt.module.dim());
    Matrix full = Matrix::kron(h, Matrix::identity(p, bimodule_dim));
    return full.select_rows(src.complement) * tgt.projection;
}

struct DualModule {
    RightModule module;          ///< x* as a right module over the opposite algebra
    std::vector<Matrix> basis;   ///< the homomorphisms x -> A_A the coordinates refer to
};

/// x* = Hom_A(x, A_A) with (h . a)(v) = a h(v), a right A^op-module.
/// `op` must be opposite(*x.algebra()).
inline DualModule dual_star(const RightModule& x, const AlgebraPtr& op)
{
    const auto& a = *x.algebra();
    const auto p = x.prime();
    if (op->dim() != a.dim())
        throw Error(ErrorKind::AlgebraMismatch, "dual needs the opposite algebra");
    auto homs = hom_space(x, RightModule::regular(x.algebra()));
    const std::size_t h = homs.size(), width = x.dim() * a.dim();
    // Flatten to rows and re-base on the reduced echelon form for determinism.
    Matrix flat(p, 0, width);
    for (const auto& m : homs)
        flat.append_row(Vec(m.data().begin(), m.data().end()));
    Subspace s = Subspace::span(h ? flat : Matrix(p, 0, width));
    DualModule d;
    for (std::size_t r = 0; r < h; ++r) {
        Matrix m(p, x.dim(), a.dim());
        std::copy(s.basis.row(r).begin(), s.basis.row(r).end(), m.data().begin());
        d.basis.push_back(std::move(m));
    }
    std::vector<Matrix> act;
    for (std::size_t k = 0; k < a.dim(); ++k) {
        Matrix ak(p, h, h);
        Matrix lk = a.left_mult(k);
        for (std::size_t r = 0; r < h; ++r) {
            Matrix img = d.basis[r] * lk;
            Vec c = s.coords(Vec(img.data().begin(), img.data().end()));
            std::copy(c.begin(), c.end(), ak.row(r).begin());
        }
        act.push_back(std::move(ak));
    }
    d.module = RightModule(op, h, std::move(act));
    return d;
}

struct TorsionlessResult {
    bool torsionless = false;
    Matrix embedding;     ///< x -> (A_A)^copies, injective when torsionless
    std::size_t copies = 0;
};

/// x is torsionless iff the homomorphisms to A_A jointly separate points. The
/// embedding uses a greedily chosen subset of a hom basis.
inline TorsionlessResult torsionless_test(const RightModule& x)
{
    const auto p = x.prime();
    TorsionlessResult r;
    if (x.dim() == 0) {
        r.torsionless = true;
        r.embedding = Matrix(p, 0, 0);
        return r;
    }
    std::vector<Matrix> chosen;
    std::size_t rk = 0;
    for (const auto& h : hom_space(x, RightModule::regular(x.algebra()))) {
        chosen.push_back(h);
        std::size_t nr = rank(Matrix::hstack(p, chosen, x.dim()));
        if (nr > rk)
            rk = nr;
        else
            chosen.pop_back();
        if (rk == x.dim())
            break;
    }
    r.torsionless = rk == x.dim();
    r.copies = chosen.size();
    r.embedding = chosen.empty() ? Matrix(p, x.dim(), 0) : Matrix::hstack(p, chosen, x.dim());
    return r;
}

}  // namespace syzygy
