#pragma once

/* Projective dimension and delooping level.
 *
 * del(X) is the least d such that Omega^d(X) is a direct summand of
 * P (+) Omega^{d+1}(M) for some projective P and module M. It is reported as
 * an interval: the lower end comes from torsionless-ness of the syzygies (a
 * summand of P (+) Omega^{d+1}(M) embeds in a projective), the upper end from
 * an explicit witness M found in a candidate pool.
 */

#include <map>
#include <optional>

#include "syzygy/krull_schmidt.hpp"
#include "syzygy/tensor.hpp"

namespace syzygy {

inline constexpr std::size_t kDefaultHorizon = 8;
inline constexpr std::size_t kDefaultPdCap = 32;

// ---------------------------------------------------------------------------
// Projective dimension

struct PdResult {
    enum class Kind { Finite, InfiniteCertified, Unknown };
    Kind kind = Kind::Unknown;
    std::size_t value = 0;    ///< d for Finite, the cap for Unknown
    std::size_t i = 0, j = 0; ///< Omega^i ~ Omega^j for InfiniteCertified
    Matrix witness;           ///< isomorphism Omega^i -> Omega^j

    bool finite() const { return kind == Kind::Finite; }
};

inline std::string to_string(const PdResult& r)
{
    switch (r.kind) {
    case PdResult::Kind::Finite: return std::to_string(r.value);
    case PdResult::Kind::InfiniteCertified:
        return "inf (Omega^" + std::to_string(r.i) + " ~ Omega^" + std::to_string(r.j) + ")";
    case PdResult::Kind::Unknown: return "unknown (> " + std::to_string(r.value) + ")";
    }
    return "?";
}

inline PdResult projective_dimension(const RightModule& x, std::size_t cap = kDefaultPdCap,
                                     std::uint64_t seed = 0)
{
    PdResult r;
    IsoClassRegistry reg(seed);
    std::vector<std::size_t> cls;  // iso class of Omega^k
    RightModule cur = x;
    for (std::size_t k = 0; k <= cap; ++k) {
        if (is_projective(cur)) {
            r.kind = PdResult::Kind::Finite;
            r.value = k;
            return r;
        }
        auto m = reg.classify(cur);
        if (!m.is_new) {
            for (std::size_t i = 0; i < k; ++i)
                if (cls[i] == m.id) {
                    // m.witness : cur -> representative = Omega^i (first of its class).
                    r.kind = PdResult::Kind::InfiniteCertified;
                    r.i = i;
                    r.j = k;
                    r.witness = *inverse(m.witness);
                    return r;
                }
        }
        cls.push_back(m.id);
        cur = syzygy_step(cur).kernel.module;
    }
    r.kind = PdResult::Kind::Unknown;
    r.value = cap;
    return r;
}

// ---------------------------------------------------------------------------
// Candidate pools

struct PoolEntry {
    RightModule module;
    std::string tag;     ///< simple | rad-of-projective | soc-of-projective | syzygy | embedding-quotient | self | user
    std::string recipe;  ///< reconstruction recipe, see check/recipe.hpp
};

struct CandidatePool {
    std::vector<PoolEntry> entries;

    /// Adds m unless it is zero or isomorphic to an entry already present.
    bool add(RightModule m, std::string tag, std::string recipe, IsoClassRegistry& reg)
    {
        if (m.dim() == 0)
            return false;
        if (!reg.classify(m).is_new)
            return false;
        entries.push_back({std::move(m), std::move(tag), std::move(recipe)});
        return true;
    }
};

struct EmbeddingQuotient {
    RightModule module;   ///< Q / x
    std::size_t copies;   ///< Q = (A_A)^copies
};

/// Q / x for the greedy embedding of a torsionless x into a free module.
inline std::optional<EmbeddingQuotient> embedding_quotient(const RightModule& x)
{
    auto t = torsionless_test(x);
    if (!t.torsionless || x.dim() == 0)
        return std::nullopt;
    auto q = free_module(x.algebra(), t.copies);
    auto sub = Subspace::span(t.embedding);
    return EmbeddingQuotient{quotient_module(q, sub).module, t.copies};
}

/// Simples, radicals and socles of the indecomposable projectives, syzygies
/// Omega^k(S_i) for k <= horizon, and embedding quotients of the torsionless
/// members; deduplicated by isomorphism class.
inline CandidatePool default_pool(const AlgebraPtr& a, std::size_t horizon = kDefaultHorizon,
                                  std::uint64_t seed = 0)
{
    CandidatePool pool;
    IsoClassRegistry reg(seed);
    const std::size_t n = a->vertex_count();
    for (std::size_t i = 0; i < n; ++i)
        pool.add(simple_module(a, i), "simple", "simple(" + std::to_string(i) + ")", reg);
    for (std::size_t i = 0; i < n; ++i) {
        auto p = indecomposable_projective(a, i).module;
        pool.add(radical_submodule(p).module, "rad-of-projective", "rad(proj(" + std::to_string(i) + "))", reg);
        pool.add(socle(p).module, "soc-of-projective", "soc(proj(" + std::to_string(i) + "))", reg);
    }
    for (std::size_t i = 0; i < n; ++i) {
        RightModule cur = simple_module(a, i);
        for (std::size_t k = 1; k <= horizon; ++k) {
            cur = syzygy_step(cur).kernel.module;
            if (cur.dim() == 0)
                break;
            pool.add(cur, "syzygy", "syz(" + std::to_string(k) + ",simple(" + std::to_string(i) + "))", reg);
        }
    }
    const std::size_t base = pool.entries.size();
    for (std::size_t e = 0; e < base; ++e) {
        auto q = embedding_quotient(pool.entries[e].module);
        if (q)
            pool.add(std::move(q->module), "embedding-quotient", "embq(" + pool.entries[e].recipe + ")", reg);
    }
    return pool;
}

// ---------------------------------------------------------------------------
// Delooping level

/// 1 + the largest i <= horizon with Omega^i(s) nonzero and not torsionless; 0 if none.
inline std::size_t torsionless_ladder_lower(const RightModule& s, std::size_t horizon = kDefaultHorizon)
{
    std::size_t lower = 0;
    RightModule cur = s;
    for (std::size_t i = 0; i <= horizon && cur.dim(); ++i) {
        if (!torsionless_test(cur).torsionless)
            lower = i + 1;
        if (i < horizon)
            cur = syzygy_step(cur).kernel.module;
    }
    return lower;
}

/// Whether x lies in add(A (+) Omega^2(mod A)). With phi : x -> Q the left
/// approximation by a free module (all maps x -> A side by side), this holds
/// iff phi(x) is a direct summand of K, the intersection of the kernels of the
/// maps Q -> A vanishing on phi(x). If x | ker(g : P -> P'), the inclusion
/// x -> P factors as h phi, ker(g h) contains K and a retraction pulls back;
/// conversely K is the kernel of a map into a free module.
inline bool in_second_syzygy_class(const RightModule& x)
{
    if (x.dim() == 0)
        return true;
    if (!torsionless_test(x).torsionless)
        return false;
    const auto& alg = x.algebra();
    const auto p = x.prime();
    const std::size_t n = alg->dim(), m = x.dim();
    auto homs = hom_space(x, RightModule::regular(alg));
    const std::size_t r = homs.size();
    Matrix phi(p, m, r * n);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t k = 0; k < m; ++k)
            for (std::size_t j = 0; j < n; ++j)
                phi(k, i * n + j) = homs[i](k, j);
    // psi : Q -> A is q -> sum_i a_i q_i; it kills phi(x) iff a lies in the left kernel of e.
    Matrix e(p, r * n, m * n);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t k = 0; k < m; ++k) {
            Matrix blk = alg->right_mult_by(homs[i].row_vec(k));
            for (std::size_t a = 0; a < n; ++a)
                for (std::size_t b = 0; b < n; ++b)
                    e(i * n + a, k * n + b) = blk(a, b);
        }
    Matrix sols = kernel_basis(e);
    Matrix psi(p, r * n, sols.rows() * n);
    for (std::size_t s = 0; s < sols.rows(); ++s)
        for (std::size_t i = 0; i < r; ++i) {
            const Vec row = sols.row_vec(s);
            Vec ai(row.begin() + static_cast<std::ptrdiff_t>(i * n), row.begin() + static_cast<std::ptrdiff_t>((i + 1) * n));
            Matrix blk = alg->left_mult_by(ai);
            for (std::size_t j = 0; j < n; ++j)
                for (std::size_t b = 0; b < n; ++b)
                    psi(i * n + j, s * n + b) = blk(j, b);
        }
    RightModule q = free_module(alg, r);
    Subspace ks = Subspace::span(sols.rows() ? kernel_basis(psi) : Matrix::identity(p, r * n));
    Matrix c = solve_linear(ks.basis, phi);
    RightModule k = submodule_on(q, ks).module;
    auto rs = hom_space(k, x);
    if (rs.empty())
        return false;
    // Need sum_t l_t (c rs_t) = id_x.
    Matrix g(p, rs.size(), m * m);
    for (std::size_t t = 0; t < rs.size(); ++t) {
        Matrix cr = c * rs[t];
        for (std::size_t a = 0; a < m * m; ++a)
            g(t, a) = cr.data()[a];
    }
    Matrix id(p, 1, m * m);
    for (std::size_t a = 0; a < m; ++a)
        id(0, a * m + a) = 1;
    try {
        solve_linear(g, id);
        return true;
    } catch (const Error& err) {
        if (err.kind() != ErrorKind::Inconsistent)
            throw;
        return false;
    }
}

/// Sound lower bound for del(s): the torsionless ladder, raised to 2 when
/// Omega(s) is outside add(A (+) Omega^2(mod A)).
inline std::size_t del_lower_bound(const RightModule& s, std::size_t horizon = kDefaultHorizon)
{
    std::size_t lower = torsionless_ladder_lower(s, horizon);
    if (horizon >= 1 && lower < 2 && !in_second_syzygy_class(syzygy_step(s).kernel.module))
        lower = 2;
    return lower;
}

struct DelUpper {
    std::optional<std::size_t> upper;
    RightModule witness;         ///< M with Omega^upper(s) | P (+) Omega^{upper+1}(M)
    std::string witness_recipe;  ///< "zero" for the projective shortcut
};

namespace detail {

/// Syzygy chains and their non-projective indecomposable classes, memoized
/// against a shared registry.
class SyzygyTable {
public:
    explicit SyzygyTable(std::uint64_t seed) : seed_(seed), reg_(seed) {}

    using ClassCount = std::map<std::size_t, std::size_t>;

    const RightModule& omega(std::size_t chain, std::size_t k)
    {
        auto& c = chains_[chain];
        while (c.omega.size() <= k)
            c.omega.push_back(c.omega.back().dim() ? syzygy_step(c.omega.back()).kernel.module : c.omega.back());
        return c.omega[k];
    }

    /// Non-projective indecomposable summands of Omega^k, by class.
    const ClassCount& nonprojective(std::size_t chain, std::size_t k)
    {
        omega(chain, k);
        auto& c = chains_[chain];
        if (c.classes.size() <= k)
            c.classes.resize(k + 1);
        if (!c.classes[k]) {
            ClassCount cc;
            auto dec = decompose(c.omega[k], seed_ + 31 * chain + k);
            for (std::size_t i = 0; i < dec.classes.size(); ++i) {
                auto m = reg_.classify(dec.classes[i]);
                if (m.id >= projective_.size())
                    projective_.push_back(is_projective(dec.classes[i]));
                if (!projective_[m.id])
                    cc[m.id] += dec.multiplicity[i];
            }
            c.classes[k] = std::move(cc);
        }
        return *c.classes[k];
    }

    std::size_t add_chain(RightModule m)
    {
        chains_.push_back(Chain{{std::move(m)}, {}});
        return chains_.size() - 1;
    }

private:
    struct Chain {
        std::vector<RightModule> omega;
        std::vector<std::optional<ClassCount>> classes;
    };
    std::uint64_t seed_;
    IsoClassRegistry reg_;
    std::vector<bool> projective_;
    std::vector<Chain> chains_;
};

inline RightModule assemble_witness(const CandidatePool& pool, const std::vector<std::size_t>& copies,
                                    const AlgebraPtr& alg, std::string& recipe)
{
    std::vector<RightModule> parts;
    std::vector<std::string> names;
    for (std::size_t e = 0; e < copies.size(); ++e)
        for (std::size_t c = 0; c < copies[e]; ++c) {
            parts.push_back(pool.entries[e].module);
            names.push_back(pool.entries[e].recipe);
        }
    if (names.size() == 1) {
        recipe = names[0];
    } else {
        recipe = "sum(";
        for (std::size_t i = 0; i < names.size(); ++i)
            recipe += (i ? "," : "") + names[i];
        recipe += ")";
    }
    return direct_sum(parts, alg);
}

}  // namespace detail

/// Searches d = 0..horizon for the least d with a witness. At d = 0 the
/// torsionless criterion is exact. For d >= 1 the witness is a direct sum of
/// pool members: Omega commutes with finite direct sums, so it suffices that
/// each non-projective class of Omega^d(s) occurs in Omega^{d+1} of some member.
inline DelUpper del_upper_search(const RightModule& s, std::size_t horizon, const CandidatePool& pool,
                                 std::uint64_t seed = 0)
{
    DelUpper r;
    const auto& alg = s.algebra();
    detail::SyzygyTable table(seed);
    const std::size_t self = table.add_chain(s);
    std::vector<std::size_t> members;
    for (const auto& e : pool.entries)
        members.push_back(table.add_chain(e.module));

    for (std::size_t d = 0; d <= horizon; ++d) {
        const RightModule& od = table.omega(self, d);
        if (is_projective(od)) {
            r.upper = d;
            r.witness = RightModule::zero(alg);
            r.witness_recipe = "zero";
            return r;
        }
        if (d == 0) {
            if (auto q = embedding_quotient(s)) {
                r.upper = 0;
                r.witness = std::move(q->module);
                r.witness_recipe = "embq(self)";
                return r;
            }
            continue;
        }
        const auto& need = table.nonprojective(self, d);
        std::vector<std::size_t> copies(members.size(), 0);
        bool ok = true;
        for (const auto& [cls, mult] : need) {
            bool found = false;
            for (std::size_t e = 0; e < members.size() && !found; ++e) {
                const auto& have = table.nonprojective(members[e], d + 1);
                auto it = have.find(cls);
                if (it == have.end())
                    continue;
                copies[e] = std::max(copies[e], (mult + it->second - 1) / it->second);
                found = true;
            }
            if (!found) {
                ok = false;
                break;
            }
        }
        if (ok) {
            r.upper = d;
            r.witness = detail::assemble_witness(pool, copies, alg, r.witness_recipe);
            return r;
        }
    }
    return r;
}

/// Exact evidence that Omega^d(s) = T (+) C with C projective and T a direct
/// summand of Omega^{d+1}(m). T is stored by its reduced echelon basis inside
/// Omega^d(s), so a checker can rebuild it without any choices.
struct DelCertificate {
    std::size_t d = 0;
    bool projective = false;  ///< Omega^d(s) is projective; nothing else to check
    Matrix target_basis;      ///< T inside Omega^d(s)
    Matrix retraction;        ///< Omega^d(s) -> T, the identity on T
    Matrix u, v;              ///< T -> Omega^{d+1}(m) -> T, composing to id_T
};

inline std::optional<DelCertificate> del_certificate(const RightModule& s, std::size_t d, const RightModule& m,
                                                     std::uint64_t seed = 0)
{
    DelCertificate c;
    c.d = d;
    RightModule od = syzygy::syzygy(s, d);
    if (is_projective(od)) {
        c.projective = true;
        return c;
    }
    const auto p = s.prime();
    auto dec = decompose(od, seed);
    Matrix idem(p, od.dim(), od.dim());
    for (const auto& sm : dec.summands)
        if (!is_projective(sm.module))
            idem = idem + sm.idempotent;
    Subspace t = Subspace::span(idem);
    c.target_basis = t.basis;
    c.retraction = idem.select_cols(t.pivots);
    RightModule target = submodule_on(od, t).module;
    RightModule om = syzygy::syzygy(m, d + 1);
    auto cert = summand_multiplicity(target, om, seed + 1);
    if (cert.multiplicity == 0 || !cert.verified)
        return std::nullopt;
    c.u = std::move(cert.u);
    c.v = std::move(cert.v);
    return c;
}

/// Exact check of a certificate: matrix identities plus projectivity of the complement.
inline bool check_del_certificate(const RightModule& s, const RightModule& m, const DelCertificate& c)
{
    RightModule od = syzygy::syzygy(s, c.d);
    if (c.projective)
        return is_projective(od);
    const auto p = s.prime();
    if (c.target_basis.rows() == 0 || c.target_basis.cols() != od.dim())
        return false;
    Subspace t = Subspace::span(c.target_basis);
    if (t.basis != c.target_basis || !is_stable(od, t))
        return false;
    RightModule target = submodule_on(od, t).module;
    if (c.retraction.rows() != od.dim() || c.retraction.cols() != target.dim() ||
        !is_module_hom(od, target, c.retraction) ||
        c.target_basis * c.retraction != Matrix::identity(p, target.dim()))
        return false;
    Matrix k = kernel_basis(c.retraction);
    RightModule complement = k.rows() ? submodule_on(od, Subspace::span(k)).module : RightModule::zero(s.algebra());
    if (!is_projective(complement))
        return false;
    return verify_summand_certificate(target, syzygy::syzygy(m, c.d + 1), c.u, c.v);
}

inline bool verify_del_witness(const RightModule& s, std::size_t d, const RightModule& m,
                               std::uint64_t seed = 0)
{
    auto c = del_certificate(s, d, m, seed);
    return c && check_del_certificate(s, m, *c);
}

struct DelBounds {
    std::size_t lower = 0;
    std::optional<std::size_t> upper;
    RightModule witness;
    std::string witness_recipe;
    std::size_t horizon = kDefaultHorizon;
    bool exact = false;
    bool witness_verified = false;
};

inline std::string to_string(const DelBounds& b)
{
    return "[" + std::to_string(b.lower) + "," + (b.upper ? std::to_string(*b.upper) : "?") + "]";
}

inline DelBounds del_bounds(const RightModule& s, std::size_t horizon, const CandidatePool& pool,
                            std::uint64_t seed = 0)
{
    DelBounds b;
    b.horizon = horizon;
    b.lower = del_lower_bound(s, horizon);
    auto up = del_upper_search(s, horizon, pool, seed);
    b.upper = up.upper;
    b.witness = std::move(up.witness);
    b.witness_recipe = std::move(up.witness_recipe);
    if (b.upper) {
        b.witness_verified = verify_del_witness(s, *b.upper, b.witness, seed);
        if (!b.witness_verified)
            b.upper.reset();
    }
    if (b.upper && *b.upper < b.lower)
        throw Error(ErrorKind::Inconsistent, "delooping upper bound below the lower bound");
    b.exact = b.upper && *b.upper == b.lower;
    return b;
}

struct AlgebraDel {
    DelBounds bounds;               ///< componentwise max over simples (no single witness)
    std::vector<DelBounds> per_simple;
};

inline AlgebraDel del_algebra(const AlgebraPtr& a, std::size_t horizon, const CandidatePool& pool,
                              std::uint64_t seed = 0)
{
    AlgebraDel r;
    r.bounds.horizon = horizon;
    r.bounds.upper = 0;
    r.bounds.exact = true;
    r.bounds.witness = RightModule::zero(a);
    for (std::size_t i = 0; i < a->vertex_count(); ++i) {
        auto b = del_bounds(simple_module(a, i), horizon, pool, seed + i);
        r.bounds.lower = std::max(r.bounds.lower, b.lower);
        if (r.bounds.upper && b.upper)
            r.bounds.upper = std::max(*r.bounds.upper, *b.upper);
        else
            r.bounds.upper.reset();
        r.bounds.exact = r.bounds.exact && b.exact;
        r.per_simple.push_back(std::move(b));
    }
    r.bounds.witness_verified = r.bounds.upper.has_value();
    return r;
}

inline AlgebraDel del_algebra(const AlgebraPtr& a, std::size_t horizon = kDefaultHorizon, std::uint64_t seed = 0)
{
    return del_algebra(a, horizon, default_pool(a, horizon, seed), seed);
}

/// Largest finite projective dimension over the sample: a lower bound for fd(A).
inline std::size_t fd_lower_estimate(const CandidatePool& sample, std::size_t cap = kDefaultPdCap,
                                     std::uint64_t seed = 0)
{
    std::size_t best = 0;
    for (std::size_t e = 0; e < sample.entries.size(); ++e) {
        auto r = projective_dimension(sample.entries[e].module, cap, seed + e);
        if (r.finite())
            best = std::max(best, r.value);
    }
    return best;
}

struct FdDelReport {
    std::size_t fd_lower = 0;
    AlgebraDel del_opposite;
    bool pass = false;
};

/// fd_lower(A) <= upper(del(A^op)), which must hold because fd(A) <= del(A^op).
inline FdDelReport fd_del_inequality_check(const AlgebraPtr& a, std::size_t horizon = kDefaultHorizon,
                                           std::size_t cap = kDefaultPdCap, std::uint64_t seed = 0)
{
    FdDelReport r;
    r.fd_lower = fd_lower_estimate(default_pool(a, horizon, seed), cap, seed);
    auto op = share(opposite(*a));
    r.del_opposite = del_algebra(op, horizon, seed);
    r.pass = r.del_opposite.bounds.upper && r.fd_lower <= *r.del_opposite.bounds.upper;
    return r;
}

}  // namespace syzygy
