#pragma once

/* Structural checks over one corpus algebra A. Notation: S = A/rad A,
 * B = T(S), the cover is [B S; 0 A] and Lambda is [A S; 0 B] (basis order of
 * triangular()). Every PASS carries certificates (certificate.hpp) written in
 * recipe language relative to A; every FAIL names the first failed condition.
 */

#include <atomic>
#include <chrono>
#include <exception>
#include <thread>

#include "syzygy/check/certificate.hpp"

namespace syzygy::check {

enum class Verdict { Pass, Fail, Skipped };

inline std::string to_string(Verdict v)
{
    switch (v) {
    case Verdict::Pass: return "PASS";
    case Verdict::Fail: return "FAIL";
    case Verdict::Skipped: return "SKIPPED";
    }
    return "?";
}

inline Verdict verdict_from_string(const std::string& s)
{
    if (s == "PASS")
        return Verdict::Pass;
    if (s == "FAIL")
        return Verdict::Fail;
    if (s == "SKIPPED")
        return Verdict::Skipped;
    throw Error(ErrorKind::Parse, "unknown verdict '" + s + "'");
}

struct CheckConfig {
    std::uint64_t seed = 0;
    std::size_t horizon = kDefaultHorizon;
    std::size_t pd_cap = kDefaultPdCap;
    std::size_t s_max = 4;
    std::size_t sample_size = 10;
    std::size_t iso_trials = kDefaultIsoTrials;
};

struct CheckReport {
    std::string check_id;
    std::string algebra_id;
    Verdict verdict = Verdict::Fail;
    std::string reason;  ///< counterexample for FAIL, cause for SKIPPED
    json evidence = json::object();
    json certificates = json::array();
    std::uint64_t seed = 0;
    double elapsed_ms = 0;
    std::optional<Verdict> expected;  ///< set for negative controls

    bool as_expected() const { return expected ? verdict == *expected : verdict != Verdict::Fail; }
};

/// Accumulates failures and certificates for one check.
class CheckRecorder {
public:
    CheckRecorder(std::string check, std::string algebra, std::uint64_t seed)
    {
        r_.check_id = std::move(check);
        r_.algebra_id = std::move(algebra);
        r_.seed = seed;
    }

    bool require(bool ok, const std::string& what)
    {
        if (!ok)
            failures_.push_back(what);
        return ok;
    }

    void certify(json c) { r_.certificates.push_back(std::move(c)); }
    void skip(std::string why) { skipped_ = std::move(why); }
    json& evidence() { return r_.evidence; }
    bool failed() const { return !failures_.empty(); }

    CheckReport finish()
    {
        if (!failures_.empty()) {
            r_.verdict = Verdict::Fail;
            r_.reason = failures_.front();
            r_.evidence["failures"] = failures_;
            r_.certificates = json::array();
        } else if (skipped_) {
            r_.verdict = Verdict::Skipped;
            r_.reason = *skipped_;
        } else {
            r_.verdict = Verdict::Pass;
        }
        return std::move(r_);
    }

private:
    CheckReport r_;
    std::vector<std::string> failures_;
    std::optional<std::string> skipped_;
};

namespace detail {

inline bool require_valid(CheckRecorder& rec, RecipeContext& ctx, const std::string& expr)
{
    auto rep = validate_algebra(*ctx.algebra(expr));
    if (!rep.ok()) {
        rec.evidence()["violations"][expr] = rep.violations;
        return rec.require(false, expr + " is not a valid algebra: " + rep.violations.front());
    }
    return true;
}

inline std::string expand_self(std::string witness, const std::string& self)
{
    const std::string tok = "(self)";
    for (auto pos = witness.find(tok); pos != std::string::npos; pos = witness.find(tok, pos + self.size() + 2))
        witness.replace(pos, tok.size(), "(" + self + ")");
    return witness;
}

inline json bounds_json(const DelBounds& b)
{
    json j{{"interval", to_string(b)}, {"lower", b.lower}, {"exact", b.exact}};
    j["upper"] = b.upper ? json(*b.upper) : json(nullptr);
    if (b.upper && !b.witness_recipe.empty())
        j["witness"] = b.witness_recipe;
    return j;
}

/// Recomputed lower bound for the lower end, exact summand certificate for the upper end.
inline void certify_bounds(CheckRecorder& rec, RecipeContext& ctx, const std::string& alg,
                           const std::string& s_recipe, const DelBounds& b, std::uint64_t seed)
{
    auto a = ctx.algebra(alg);
    rec.certify(predicate_certificate(alg, "del_lower",
                                      {{"module", s_recipe}, {"horizon", b.horizon}, {"value", b.lower}}));
    if (!b.upper)
        return;
    const std::string w = expand_self(b.witness_recipe, s_recipe);
    auto c = del_certificate(ctx.module(s_recipe, a), *b.upper, ctx.module(w, a), seed);
    if (rec.require(c.has_value(), "no exact certificate for the delooping witness of " + s_recipe + " over " + alg))
        rec.certify(del_certificate_json(alg, s_recipe, w, *c));
}

inline std::string simple_recipe(std::size_t i) { return "simple(" + std::to_string(i) + ")"; }

/// del over alg with every simple certified; returns the aggregate bounds.
inline AlgebraDel certified_del(CheckRecorder& rec, RecipeContext& ctx, const std::string& alg,
                                const CheckConfig& cfg)
{
    auto a = ctx.algebra(alg);
    auto pool = default_pool(a, cfg.horizon, cfg.seed);
    auto d = del_algebra(a, cfg.horizon, pool, cfg.seed);
    for (std::size_t i = 0; i < d.per_simple.size(); ++i)
        certify_bounds(rec, ctx, alg, simple_recipe(i), d.per_simple[i], cfg.seed + i);
    return d;
}

/// Triples (X, Y, F) for triple(X, Y, F): X from the pool of A, Y from the pool of B.
inline std::vector<std::string> sample_triples(RecipeContext& ctx, const CheckConfig& cfg, std::uint64_t salt)
{
    auto a = ctx.algebra("A");
    auto b = ctx.algebra("tsigma(A)");
    std::vector<std::string> xs{"regular"}, ys{"zero", "regular"};
    for (const auto& e : default_pool(a, cfg.horizon, cfg.seed).entries)
        xs.push_back(e.recipe);
    for (const auto& e : default_pool(b, cfg.horizon, cfg.seed).entries)
        ys.push_back(e.recipe);
    std::mt19937_64 rng(cfg.seed ^ salt);
    std::vector<std::string> out;
    for (std::size_t k = 0; k < cfg.sample_size; ++k) {
        const auto& x = xs[rng() % xs.size()];
        const auto& y = ys[rng() % ys.size()];
        out.push_back("triple(" + x + "," + y + "," + std::to_string(1 + rng() % 1000000007ull) + ")");
    }
    return out;
}

inline std::string interval(const DelBounds& b) { return to_string(b); }

}  // namespace detail

// ---------------------------------------------------------------------------

/// Over T = T(A/rad A): radical = #-part = socle of T_T, and top(T_T) ~ soc(T_T).
inline CheckReport check_trivext_radical(RecipeContext& ctx, const std::string& id, const CheckConfig& cfg)
{
    CheckRecorder rec("trivext_radical", id, cfg.seed);
    const std::string T = "tsigma(A)";
    if (!detail::require_valid(rec, ctx, "A") || !detail::require_valid(rec, ctx, T))
        return rec.finish();
    auto t = ctx.algebra(T);
    rec.certify(predicate_certificate(T, "valid_algebra"));
    auto r = trivext_radical(t);
    rec.evidence()["dim"] = r.dim;
    rec.evidence()["radical_dim"] = r.radical_dim;
    rec.evidence()["natural_dim"] = r.natural_dim;
    rec.evidence()["socle_dim"] = r.socle_dim;
    bool ok = rec.require(r.radical_is_natural, "radical of T (dim " + std::to_string(r.radical_dim) +
                                                    ") is not the #-part (dim " + std::to_string(r.natural_dim) + ")");
    ok = rec.require(r.socle_is_natural, "socle of T_T (dim " + std::to_string(r.socle_dim) +
                                             ") is not the #-part (dim " + std::to_string(r.natural_dim) + ")") &&
         ok;
    if (ok)
        rec.certify(predicate_certificate(T, "trivext_radical"));
    auto iso = iso_test(ctx.module("top(regular)", t), ctx.module("soc(regular)", t), cfg.iso_trials, cfg.seed);
    if (rec.require(iso.iso, "top(T_T) and soc(T_T) are not isomorphic (" + to_string(iso.reason) + ")"))
        rec.certify(module_iso_certificate(T, "top(regular)", "soc(regular)", iso.witness));
    return rec.finish();
}

/// The A-corner of the cover is A on the nose, and End(eC) ~ eCe by left multiplication.
inline CheckReport check_cover_corner(RecipeContext& ctx, const std::string& id, const CheckConfig& cfg)
{
    CheckRecorder rec("cover_corner", id, cfg.seed);
    const std::string C = "cover(A)", E = "ecorner_v(cover(A))", P = "cornerproj(v)";
    const std::string END = "end(" + C + "," + P + ")";
    if (!detail::require_valid(rec, ctx, "A") || !detail::require_valid(rec, ctx, C))
        return rec.finish();
    auto a = ctx.base();
    auto cov = ctx.algebra(C);
    auto corner = ctx.algebra(E);
    const auto p = a->prime();
    rec.evidence()["cover_dim"] = cov->dim();
    rec.evidence()["corner_dim"] = corner->dim();
    Matrix id_map = Matrix::identity(p, a->dim());
    if (rec.require(corner->dim() == a->dim() && canonical_iso_check(*corner, *a, id_map),
                    "eCe differs from A under the identity alignment"))
        rec.certify(algebra_iso_certificate(E, "A", id_map));

    // End(eC) on the same module the recipe builds.
    Vec e = cov->idempotent_sum(corner_vertices(*cov, false));
    auto sub = submodule_from_generators(RightModule::regular(cov), Matrix::from_vecs(p, {e}, cov->dim()));
    EndRing er(sub.module);
    auto end_alg = ctx.algebra(END);
    rec.evidence()["end_dim"] = er.dim();
    if (!rec.require(er.dim() == corner->dim(), "dim End(eC) = " + std::to_string(er.dim()) +
                                                    " but dim eCe = " + std::to_string(corner->dim())))
        return rec.finish();
    const std::size_t off = cov->blocks()->v_offset;
    Matrix map(p, corner->dim(), er.dim());
    for (std::size_t i = 0; i < corner->dim(); ++i) {
        Vec x = cov->basis_vector(off + i);
        Matrix lx(p, sub.module.dim(), sub.module.dim());
        for (std::size_t r = 0; r < sub.module.dim(); ++r) {
            Vec c = sub.space.coords(cov->multiply(x, sub.space.basis.row(r)));
            std::copy(c.begin(), c.end(), lx.row(r).begin());
        }
        if (!rec.require(er.contains(lx), "left multiplication by " + cov->labels()[off + i] +
                                              " is not an endomorphism of eC"))
            return rec.finish();
        Vec c = er.coords(lx);
        std::copy(c.begin(), c.end(), map.row(i).begin());
    }
    if (rec.require(canonical_iso_check(*corner, *end_alg, map), "left multiplication eCe -> End(eC) is not an "
                                                                 "algebra isomorphism"))
        rec.certify(algebra_iso_certificate(E, END, map));
    return rec.finish();
}

/// Every simple module of the cover embeds in a free module, and del(cover) = [0,0].
inline CheckReport check_cover_torsionless(RecipeContext& ctx, const std::string& id, const CheckConfig& cfg)
{
    CheckRecorder rec("cover_torsionless", id, cfg.seed);
    const std::string C = "cover(A)";
    if (!detail::require_valid(rec, ctx, "A") || !detail::require_valid(rec, ctx, C))
        return rec.finish();
    auto cov = ctx.algebra(C);
    for (std::size_t i = 0; i < cov->vertex_count(); ++i) {
        const auto s = detail::simple_recipe(i);
        auto t = torsionless_test(ctx.module(s, cov));
        if (rec.require(t.torsionless, "simple " + cov->vertex_names()[i] + " of the cover is not torsionless"))
            rec.certify(embedding_certificate(C, s, t));
    }
    auto d = detail::certified_del(rec, ctx, C, cfg);
    rec.evidence()["del"] = detail::bounds_json(d.bounds);
    rec.require(d.bounds.exact && d.bounds.upper == std::optional<std::size_t>(0),
                "del of the cover is " + detail::interval(d.bounds) + ", expected [0,0]");
    return rec.finish();
}

/// opposite(Lambda) equals cover(opposite(A)) under the block permutation, and its del is [0,0].
inline CheckReport check_lambda_opposite(RecipeContext& ctx, const std::string& id, const CheckConfig& cfg)
{
    CheckRecorder rec("lambda_opposite", id, cfg.seed);
    const std::string L = "opposite(lambda(A))", C = "cover(opposite(A))";
    if (!detail::require_valid(rec, ctx, "A") || !detail::require_valid(rec, ctx, L) ||
        !detail::require_valid(rec, ctx, C))
        return rec.finish();
    auto op = ctx.algebra(L);
    auto cov = ctx.algebra(C);
    Matrix perm = lambda_op_to_cover_permutation(*ctx.base());
    rec.evidence()["dim"] = op->dim();
    if (rec.require(op->dim() == cov->dim() && canonical_iso_check(*op, *cov, perm),
                    "the block permutation is not an isomorphism " + L + " -> " + C))
        rec.certify(algebra_iso_certificate(L, C, perm));
    auto d = detail::certified_del(rec, ctx, L, cfg);
    rec.evidence()["del"] = detail::bounds_json(d.bounds);
    rec.require(d.bounds.exact && d.bounds.upper == std::optional<std::size_t>(0),
                "del of " + L + " is " + detail::interval(d.bounds) + ", expected [0,0]");
    return rec.finish();
}

/// For P = e'Lambda (e' the B-corner): rad P, top P and Omega(top P) are all
/// (0, S, 0), and top P is its own delooping witness in degree 0.
inline CheckReport check_b_corner(RecipeContext& ctx, const std::string& id, const CheckConfig& cfg)
{
    CheckRecorder rec("b_corner", id, cfg.seed);
    const std::string L = "lambda(A)", P = "cornerproj(v)", Y0 = "triple(zero,top(regular),zero)";
    const std::string TOP = "top(" + P + ")";
    if (!detail::require_valid(rec, ctx, "A") || !detail::require_valid(rec, ctx, L))
        return rec.finish();
    auto lam = ctx.algebra(L);
    RightModule y0 = ctx.module(Y0, lam);
    rec.evidence()["projective_dim"] = ctx.module(P, lam).dim();
    rec.evidence()["sigma_dim"] = y0.dim();
    const std::pair<std::string, const char*> parts[] = {
        {"rad(" + P + ")", "radical of e'L"}, {TOP, "top of e'L"}, {"syz(1," + TOP + ")", "syzygy of top(e'L)"}};
    for (const auto& [recipe, what] : parts) {
        RightModule m = ctx.module(recipe, lam);
        auto iso = iso_test(m, y0, cfg.iso_trials, cfg.seed);
        if (rec.require(iso.iso, std::string(what) + " (dim " + std::to_string(m.dim()) + ") is not (0,S,0) (" +
                                     to_string(iso.reason) + ")"))
            rec.certify(module_iso_certificate(L, recipe, Y0, iso.witness));
    }
    RightModule top = ctx.module(TOP, lam);
    auto b = del_bounds(top, cfg.horizon, default_pool(lam, cfg.horizon, cfg.seed), cfg.seed);
    rec.evidence()["del_top"] = detail::bounds_json(b);
    if (rec.require(b.exact && b.upper == std::optional<std::size_t>(0),
                    "del(top e'L) is " + detail::interval(b) + ", expected [0,0]"))
        detail::certify_bounds(rec, ctx, L, TOP, b, cfg.seed);
    auto self = del_certificate(top, 0, top, cfg.seed);
    if (rec.require(self.has_value(), "top(e'L) is not a summand of its own first syzygy"))
        rec.certify(del_certificate_json(L, TOP, TOP, *self));
    return rec.finish();
}

/// Omega^s of a triple (X, Y, f) has zero structure map, U-part ~ Omega^s(X)
/// and semisimple V-part, for s = 1..s_max.
inline CheckReport check_syzygy_split(RecipeContext& ctx, const std::string& id, const CheckConfig& cfg)
{
    CheckRecorder rec("syzygy_split", id, cfg.seed);
    const std::string L = "lambda(A)";
    if (!detail::require_valid(rec, ctx, "A") || !detail::require_valid(rec, ctx, L))
        return rec.finish();
    auto a = ctx.base();
    auto lam = ctx.algebra(L);
    std::vector<std::string> triples;
    for (std::size_t i = 0; i < a->vertex_count(); ++i)
        triples.push_back("triple(" + detail::simple_recipe(i) + ",zero,zero)");
    triples.push_back("triple(zero,regular,zero)");
    const std::size_t fixed = triples.size();
    for (auto& t : detail::sample_triples(ctx, cfg, 0x5a17))
        triples.push_back(std::move(t));
    rec.evidence()["fixed_triples"] = fixed;
    rec.evidence()["sampled_triples"] = triples.size() - fixed;
    rec.evidence()["s_max"] = cfg.s_max;
    json per = json::array();
    for (const auto& t : triples) {
        const Term tt = parse_term(t);
        const std::string x = to_string(tt.args[0]);
        RightModule cur = ctx.module(t, lam);
        json dims = json::array();
        for (std::size_t s = 1; s <= cfg.s_max; ++s) {
            cur = cur.dim() ? syzygy_step(cur).kernel.module : cur;
            const std::string w = "syz(" + std::to_string(s) + "," + t + ")";
            auto split = module_to_triple(cur);
            const auto& tr = split.triple;
            dims.push_back({tr.x.dim(), tr.y.dim()});
            if (rec.require(tr.f.is_zero(), w + " has a nonzero structure map"))
                rec.certify(predicate_certificate(L, "split_triple", {{"module", w}}));
            const std::string xs = "in_u(syz(" + std::to_string(s) + "," + x + "))";
            auto iso = iso_test(tr.x, ctx.module(xs, lam), cfg.iso_trials, cfg.seed + s);
            if (rec.require(iso.iso, "U-part of " + w + " is not " + xs + " (" + to_string(iso.reason) + ")"))
                rec.certify(module_iso_certificate(L, "ucorner(" + w + ")", xs, iso.witness));
            if (rec.require(is_semisimple(tr.y), "V-part of " + w + " is not semisimple"))
                rec.certify(predicate_certificate(L, "semisimple", {{"module", "vcorner(" + w + ")"}}));
        }
        per.push_back({{"triple", t}, {"dims", dims}});
    }
    rec.evidence()["triples"] = per;
    return rec.finish();
}

/// The U-corner of a minimal projective cover of a Lambda-module is a minimal
/// projective cover of the U-corner.
inline CheckReport check_cover_restriction(RecipeContext& ctx, const std::string& id, const CheckConfig& cfg)
{
    CheckRecorder rec("cover_restriction", id, cfg.seed);
    const std::string L = "lambda(A)";
    if (!detail::require_valid(rec, ctx, "A") || !detail::require_valid(rec, ctx, L))
        return rec.finish();
    auto a = ctx.base();
    auto lam = ctx.algebra(L);
    std::vector<std::string> mods{"regular", "triple(zero,regular,zero)"};
    for (std::size_t i = 0; i < a->vertex_count(); ++i)
        mods.push_back("triple(" + detail::simple_recipe(i) + ",zero,zero)");
    for (auto& t : detail::sample_triples(ctx, cfg, 0xc0e7))
        mods.push_back(std::move(t));
    rec.evidence()["modules"] = mods.size();
    for (const auto& m : mods) {
        auto defect = cover_restriction_defect(ctx.module(m, lam));
        if (rec.require(defect.empty(), m + ": " + defect))
            rec.certify(predicate_certificate(L, "cover_restriction", {{"module", m}}));
    }
    return rec.finish();
}

/// lower(del A) <= upper(del Lambda); with both intervals exact, del A <= del Lambda.
inline CheckReport check_del_monotone(RecipeContext& ctx, const std::string& id, const CheckConfig& cfg)
{
    CheckRecorder rec("del_monotone", id, cfg.seed);
    const std::string L = "lambda(A)";
    if (!detail::require_valid(rec, ctx, "A") || !detail::require_valid(rec, ctx, L))
        return rec.finish();
    auto da = detail::certified_del(rec, ctx, "A", cfg);
    auto dl = detail::certified_del(rec, ctx, L, cfg);
    const bool strong = da.bounds.exact && dl.bounds.exact;
    rec.evidence()["del_a"] = detail::bounds_json(da.bounds);
    rec.evidence()["del_lambda"] = detail::bounds_json(dl.bounds);
    rec.evidence()["strength"] = strong ? "strong" : "weak";
    rec.evidence()["notes"] = {
        "the projective summand in the monotonicity argument is read as a projective B-module",
        "the module written N in the monotonicity argument is read as X"};
    if (!dl.bounds.upper) {
        rec.skip("no delooping witness for " + L + " within horizon " + std::to_string(cfg.horizon));
        return rec.finish();
    }
    rec.require(da.bounds.lower <= *dl.bounds.upper, "lower(del A) = " + std::to_string(da.bounds.lower) +
                                                         " exceeds upper(del L) = " + std::to_string(*dl.bounds.upper));
    if (strong)
        rec.require(*da.bounds.upper <= *dl.bounds.upper, "del A = " + std::to_string(*da.bounds.upper) +
                                                              " exceeds del L = " + std::to_string(*dl.bounds.upper));
    return rec.finish();
}

/// fd lower estimate of A <= upper(del A^op), for A and for A^op.
inline CheckReport check_fd_del(RecipeContext& ctx, const std::string& id, const CheckConfig& cfg)
{
    CheckRecorder rec("fd_del", id, cfg.seed);
    if (!detail::require_valid(rec, ctx, "A"))
        return rec.finish();
    for (const std::string side : {"A", "opposite(A)"}) {
        const std::string op = "opposite(" + side + ")";
        auto alg = ctx.algebra(side);
        auto r = fd_del_inequality_check(alg, cfg.horizon, cfg.pd_cap, cfg.seed);
        rec.evidence()[side] = {{"fd_lower", r.fd_lower}, {"del_opposite", detail::bounds_json(r.del_opposite.bounds)}};
        if (!rec.require(r.del_opposite.bounds.upper.has_value(), "no upper bound for del(" + op + ")"))
            continue;
        rec.require(r.pass, "fd lower estimate " + std::to_string(r.fd_lower) + " of " + side + " exceeds del(" + op +
                                ") <= " + std::to_string(*r.del_opposite.bounds.upper));
        // The sample module attaining the estimate.
        auto pool = default_pool(alg, cfg.horizon, cfg.seed);
        for (std::size_t e = 0; e < pool.entries.size(); ++e) {
            auto pd = projective_dimension(pool.entries[e].module, cfg.pd_cap, cfg.seed + e);
            if (pd.finite() && pd.value == r.fd_lower) {
                rec.certify(predicate_certificate(side, "pd", {{"module", pool.entries[e].recipe}, {"value", pd.value}}));
                break;
            }
        }
        for (std::size_t i = 0; i < r.del_opposite.per_simple.size(); ++i)
            detail::certify_bounds(rec, ctx, op, detail::simple_recipe(i), r.del_opposite.per_simple[i], cfg.seed + i);
    }
    return rec.finish();
}

/// del(top A_A) = del(A), and del(S (+) S') = max on exactly known simples.
inline CheckReport check_del_identities(RecipeContext& ctx, const std::string& id, const CheckConfig& cfg)
{
    CheckRecorder rec("del_identities", id, cfg.seed);
    if (!detail::require_valid(rec, ctx, "A"))
        return rec.finish();
    auto a = ctx.base();
    auto pool = default_pool(a, cfg.horizon, cfg.seed);
    auto da = del_algebra(a, cfg.horizon, pool, cfg.seed);
    auto bt = del_bounds(ctx.module("top(regular)", a), cfg.horizon, pool, cfg.seed);
    rec.evidence()["del_a"] = detail::bounds_json(da.bounds);
    rec.evidence()["del_top"] = detail::bounds_json(bt);
    if (rec.require(bt.lower == da.bounds.lower && bt.upper == da.bounds.upper,
                    "del(top A_A) = " + detail::interval(bt) + " but del(A) = " + detail::interval(da.bounds)))
        detail::certify_bounds(rec, ctx, "A", "top(regular)", bt, cfg.seed);
    std::size_t pairs = 0;
    for (std::size_t i = 0; i < da.per_simple.size(); ++i) {
        if (!da.per_simple[i].exact)
            continue;
        detail::certify_bounds(rec, ctx, "A", detail::simple_recipe(i), da.per_simple[i], cfg.seed + i);
        for (std::size_t j = i; j < da.per_simple.size(); ++j) {
            if (!da.per_simple[j].exact)
                continue;
            ++pairs;
            const std::string s = "sum(" + detail::simple_recipe(i) + "," + detail::simple_recipe(j) + ")";
            const std::size_t want = std::max(da.per_simple[i].lower, da.per_simple[j].lower);
            auto b = del_bounds(ctx.module(s, a), cfg.horizon, pool, cfg.seed);
            if (rec.require(b.exact && b.lower == want,
                            "del(" + s + ") = " + detail::interval(b) + ", expected " + std::to_string(want)))
                detail::certify_bounds(rec, ctx, "A", s, b, cfg.seed);
        }
    }
    rec.evidence()["exact_pairs"] = pairs;
    return rec.finish();
}

// ---------------------------------------------------------------------------
// Running a corpus

using CheckFn = CheckReport (*)(RecipeContext&, const std::string&, const CheckConfig&);

inline const std::vector<std::pair<std::string, CheckFn>>& all_checks()
{
    static const std::vector<std::pair<std::string, CheckFn>> checks{
        {"trivext_radical", check_trivext_radical},
        {"cover_corner", check_cover_corner},
        {"cover_torsionless", check_cover_torsionless},
        {"lambda_opposite", check_lambda_opposite},
        {"b_corner", check_b_corner},
        {"syzygy_split", check_syzygy_split},
        {"cover_restriction", check_cover_restriction},
        {"del_monotone", check_del_monotone},
        {"fd_del", check_fd_del},
        {"del_identities", check_del_identities},
    };
    return checks;
}

inline CheckFn find_check(const std::string& id)
{
    for (const auto& [name, fn] : all_checks())
        if (name == id)
            return fn;
    throw Error(ErrorKind::Parse, "unknown check '" + id + "'");
}

inline bool is_fatal(const Error& e) { return e.kind() == ErrorKind::CharTooSmall || e.kind() == ErrorKind::ResourceLimit; }

/// Runs one check; library errors other than CharTooSmall and ResourceLimit become a FAIL.
inline CheckReport run_check(const std::string& check_id, RecipeContext& ctx, const std::string& algebra_id,
                             const CheckConfig& cfg)
{
    CheckFn fn = find_check(check_id);
    auto t0 = std::chrono::steady_clock::now();
    CheckReport r;
    try {
        r = fn(ctx, algebra_id, cfg);
    } catch (const Error& e) {
        if (is_fatal(e))
            throw;
        CheckRecorder rec(check_id, algebra_id, cfg.seed);
        rec.require(false, e.what());
        r = rec.finish();
    }
    r.elapsed_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    return r;
}

struct RunOptions {
    CheckConfig config;
    std::vector<std::string> checks;  ///< empty: all
    std::optional<std::uint32_t> prime;
    std::size_t jobs = 1;
    std::size_t max_dim = 0;  ///< resource guard on every algebra a check builds; 0 = off
};

/// All selected checks on every entry, in corpus order then check order. Entries
/// run concurrently when jobs > 1; the result does not depend on jobs.
inline std::vector<CheckReport> run_corpus(Corpus& corpus, const RunOptions& opt)
{
    for (const auto& c : opt.checks)
        find_check(c);
    struct Job {
        std::string id;
        AlgebraPtr algebra;
        std::string build_error;
        bool mutate = false;
        std::vector<std::string> checks;
        std::optional<Verdict> expected;
        std::vector<CheckReport> out;
        std::exception_ptr error;
    };
    std::vector<Job> jobs;
    const std::vector<CorpusEntry> entries = corpus.entries();
    for (const auto& e : entries) {
        Job j;
        j.id = e.id;
        try {
            j.algebra = corpus.algebra(e.id, opt.prime);
            if (opt.max_dim && j.algebra->dim() > opt.max_dim)
                throw Error(ErrorKind::ResourceLimit, e.id + " has dimension " + std::to_string(j.algebra->dim()) +
                                                          ", above the limit " + std::to_string(opt.max_dim));
        } catch (const Error& err) {
            if (err.kind() == ErrorKind::Parse || is_fatal(err))
                throw;
            j.build_error = err.what();
        }
        std::vector<std::string> wanted;
        if (e.negative) {
            j.mutate = true;
            j.expected = Verdict::Fail;
            for (const auto& c : e.negative->expect_fail)
                find_check(c);
            wanted = e.negative->expect_fail;
        } else {
            for (const auto& c : all_checks())
                wanted.push_back(c.first);
        }
        for (const auto& c : wanted)
            if (opt.checks.empty() || std::find(opt.checks.begin(), opt.checks.end(), c) != opt.checks.end())
                j.checks.push_back(c);
        jobs.push_back(std::move(j));
    }

    auto run_job = [&](Job& j) {
        try {
            if (!j.algebra) {
                for (const auto& c : j.checks) {
                    CheckRecorder rec(c, j.id, opt.config.seed);
                    rec.require(false, j.build_error);
                    j.out.push_back(rec.finish());
                }
            } else {
                RecipeContext ctx(j.algebra, j.mutate);
                ctx.set_max_dim(opt.max_dim);
                for (const auto& c : j.checks)
                    j.out.push_back(run_check(c, ctx, j.id, opt.config));
            }
            for (auto& r : j.out)
                r.expected = j.expected;
        } catch (...) {
            j.error = std::current_exception();
        }
    };
    const std::size_t workers = std::max<std::size_t>(1, std::min(opt.jobs, jobs.size()));
    if (workers == 1) {
        for (auto& j : jobs)
            run_job(j);
    } else {
        std::atomic<std::size_t> next{0};
        std::vector<std::thread> pool;
        for (std::size_t w = 0; w < workers; ++w)
            pool.emplace_back([&] {
                for (std::size_t k = next++; k < jobs.size(); k = next++)
                    run_job(jobs[k]);
            });
        for (auto& t : pool)
            t.join();
    }
    std::vector<CheckReport> out;
    for (auto& j : jobs) {
        if (j.error)
            std::rethrow_exception(j.error);
        for (auto& r : j.out)
            out.push_back(std::move(r));
    }
    return out;
}

}  // namespace syzygy::check
