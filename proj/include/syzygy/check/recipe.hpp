#pragma once

/* Recipes name algebras and modules by how they are built, so reports can
 * refer to them and a checker can rebuild them exactly.
 *
 * Algebra expressions (relative to a base algebra A):
 *   A | opposite(E) | sigma(E) | tsigma(E) | trivext(E) | cover(E) | lambda(E)
 *   | corner_u(E) | corner_v(E) | ecorner_u(E) | ecorner_v(E) | end(E, M)
 * sigma is A/rad A, tsigma is T(sigma(E)); corner_* are the diagonal blocks of
 * a triangular algebra, ecorner_* the corner algebras eEe, end(E, M) the
 * endomorphism algebra of the E-module M.
 *
 * Module expressions (over a current algebra; vertex arguments are indices):
 *   zero | regular | free(k) | simple(i) | proj(i) | rad(M) | soc(M) | top(M)
 *   | syz(k, M) | embq(M) | sum(M, ...) | cornerproj(u|v)
 *   | in_u(M) | in_v(M) | ucorner(M) | vcorner(M) | triple(X, Y, F)
 * in_* evaluate M over a diagonal block, *corner restrict to one, and
 * triple(X, Y, F) is the flat module of (X_U, Y_V, f) with f = 0 when F is
 * "zero" and otherwise a random structure map drawn from seed F.
 */

#include <algorithm>
#include <cctype>
#include <map>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "syzygy/syzygy.hpp"

namespace syzygy::check {

struct Term {
    std::string head;
    std::vector<Term> args;

    bool is_leaf() const { return args.empty(); }
};

inline std::string to_string(const Term& t)
{
    if (t.args.empty())
        return t.head;
    std::string s = t.head + "(";
    for (std::size_t i = 0; i < t.args.size(); ++i)
        s += (i ? "," : "") + to_string(t.args[i]);
    return s + ")";
}

namespace detail {

class TermParser {
public:
    explicit TermParser(std::string_view s) : s_(s) {}

    Term parse()
    {
        Term t = term();
        skip();
        if (pos_ != s_.size())
            fail("trailing input");
        return t;
    }

private:
    Term term()
    {
        skip();
        std::size_t start = pos_;
        while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_'))
            ++pos_;
        if (pos_ == start)
            fail("expected a name");
        Term t{std::string(s_.substr(start, pos_ - start)), {}};
        skip();
        if (pos_ < s_.size() && s_[pos_] == '(') {
            ++pos_;
            t.args.push_back(term());
            skip();
            while (pos_ < s_.size() && s_[pos_] == ',') {
                ++pos_;
                t.args.push_back(term());
                skip();
            }
            if (pos_ >= s_.size() || s_[pos_] != ')')
                fail("expected ',' or ')'");
            ++pos_;
        }
        return t;
    }

    void skip()
    {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_])))
            ++pos_;
    }

    [[noreturn]] void fail(const std::string& what) const
    {
        throw Error(ErrorKind::Parse,
                    "recipe '" + std::string(s_) + "' column " + std::to_string(pos_ + 1) + ": " + what);
    }

    std::string_view s_;
    std::size_t pos_ = 0;
};

inline std::size_t to_index(const Term& t, const char* what)
{
    if (!t.is_leaf() || t.head.empty() ||
        !std::all_of(t.head.begin(), t.head.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }))
        throw Error(ErrorKind::Parse, std::string("expected an integer for ") + what + ", got '" + to_string(t) + "'");
    return std::stoull(t.head);
}

inline void arity(const Term& t, std::size_t n)
{
    if (t.args.size() != n)
        throw Error(ErrorKind::Parse, "'" + t.head + "' takes " + std::to_string(n) + " argument(s) in '" +
                                          to_string(t) + "'");
}

}  // namespace detail

inline Term parse_term(std::string_view s) { return detail::TermParser(s).parse(); }

/// A uniformly random structure map f : X (x)_U M -> Y for a triangular algebra.
inline Matrix random_structure_map(const RightModule& x, const RightModule& y, const AlgebraPtr& lam,
                                   std::uint64_t seed)
{
    const auto& bl = syzygy::detail::require_blocks(*lam);
    auto tens = tensor_over_algebra(x, bl.m);
    Matrix f(lam->prime(), tens.module.dim(), y.dim());
    if (tens.module.dim() == 0 || y.dim() == 0)
        return f;
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<Scalar> coef(0, lam->prime() - 1);
    for (const auto& h : hom_space(tens.module, y))
        f.add_scaled(coef(rng), h);
    return f;
}

/// Resolves recipes against one base algebra, memoizing algebras so that
/// repeated lookups return the same object.
class RecipeContext {
public:
    /// With mutate_trivext every tsigma(E) is built with the yx' term dropped.
    explicit RecipeContext(AlgebraPtr base, bool mutate_trivext = false)
        : base_(std::move(base)), mutate_(mutate_trivext)
    {
    }

    const AlgebraPtr& base() const { return base_; }
    bool mutated() const { return mutate_; }

    /// Algebras built above this dimension raise ResourceLimit; 0 disables the guard.
    void set_max_dim(std::size_t d) { max_dim_ = d; }

    AlgebraPtr algebra(const std::string& expr) { return algebra(parse_term(expr)); }

    AlgebraPtr algebra(const Term& t)
    {
        const std::string key = to_string(t);
        if (auto it = memo_.find(key); it != memo_.end())
            return it->second;
        AlgebraPtr a = build_algebra(t);
        if (max_dim_ && a->dim() > max_dim_)
            throw Error(ErrorKind::ResourceLimit, key + " has dimension " + std::to_string(a->dim()) +
                                                      ", above the limit " + std::to_string(max_dim_));
        memo_.emplace(key, a);
        return a;
    }

    RightModule module(const std::string& expr, const AlgebraPtr& over) { return module(parse_term(expr), over); }

    RightModule module(const Term& t, const AlgebraPtr& alg)
    {
        using detail::arity;
        const auto& h = t.head;
        if (h == "zero" && t.is_leaf())
            return RightModule::zero(alg);
        if (h == "regular" && t.is_leaf())
            return RightModule::regular(alg);
        if (h == "free") {
            arity(t, 1);
            return free_module(alg, detail::to_index(t.args[0], "free"));
        }
        if (h == "simple" || h == "proj") {
            arity(t, 1);
            std::size_t i = detail::to_index(t.args[0], "vertex");
            if (i >= alg->vertex_count())
                throw Error(ErrorKind::Parse, "vertex index out of range in '" + to_string(t) + "'");
            return h == "simple" ? simple_module(alg, i) : indecomposable_projective(alg, i).module;
        }
        if (h == "rad" || h == "soc" || h == "top" || h == "embq") {
            arity(t, 1);
            RightModule m = module(t.args[0], alg);
            if (h == "rad")
                return radical_submodule(m).module;
            if (h == "soc")
                return socle(m).module;
            if (h == "top")
                return top_of_module(m).module;
            if (m.dim() == 0)
                return m;
            auto q = embedding_quotient(m);
            if (!q)
                throw Error(ErrorKind::Inconsistent, "embq of a module that is not torsionless: " + to_string(t));
            return std::move(q->module);
        }
        if (h == "syz") {
            arity(t, 2);
            return syzygy::syzygy(module(t.args[1], alg), detail::to_index(t.args[0], "syz"));
        }
        if (h == "sum") {
            if (t.args.empty())
                return RightModule::zero(alg);
            std::vector<RightModule> parts;
            for (const auto& a : t.args)
                parts.push_back(module(a, alg));
            return direct_sum(parts, alg);
        }
        if (h == "cornerproj") {
            arity(t, 1);
            bool u = corner_flag(t.args[0]);
            Vec e = alg->idempotent_sum(corner_vertices(*alg, u));
            return submodule_from_generators(RightModule::regular(alg),
                                             Matrix::from_vecs(alg->prime(), {e}, alg->dim()))
                .module;
        }
        if (h == "in_u" || h == "in_v") {
            arity(t, 1);
            const auto& bl = syzygy::detail::require_blocks(*alg);
            return module(t.args[0], h == "in_u" ? bl.u : bl.v);
        }
        if (h == "ucorner" || h == "vcorner") {
            arity(t, 1);
            return corner_restrict(module(t.args[0], alg), h == "ucorner" ? Corner::U : Corner::V);
        }
        if (h == "triple") {
            arity(t, 3);
            const auto& bl = syzygy::detail::require_blocks(*alg);
            RightModule x = module(t.args[0], bl.u);
            RightModule y = module(t.args[1], bl.v);
            Matrix f = t.args[2].head == "zero" && t.args[2].is_leaf()
                           ? Matrix(alg->prime(), tensor_over_algebra(x, bl.m).module.dim(), y.dim())
                           : random_structure_map(x, y, alg, detail::to_index(t.args[2], "triple seed"));
            return triple_to_module({std::move(x), std::move(y), std::move(f)}, alg);
        }
        throw Error(ErrorKind::Parse, "unknown module recipe '" + to_string(t) + "'");
    }

private:
    static bool corner_flag(const Term& t)
    {
        if (t.is_leaf() && (t.head == "u" || t.head == "v"))
            return t.head == "u";
        throw Error(ErrorKind::Parse, "expected u or v, got '" + to_string(t) + "'");
    }

    AlgebraPtr build_algebra(const Term& t)
    {
        using detail::arity;
        const auto& h = t.head;
        if (h == "A" && t.is_leaf())
            return base_;
        if (h == "end") {
            arity(t, 2);
            AlgebraPtr e = algebra(t.args[0]);
            return share(end_ring(module(t.args[1], e)).structure_algebra());
        }
        arity(t, 1);
        AlgebraPtr e = algebra(t.args[0]);
        if (h == "opposite")
            return share(opposite(*e));
        if (h == "sigma")
            return share(semisimple_quotient(*e));
        if (h == "tsigma")
            return share(syzygy::detail::trivial_extension_impl(*algebra(Term{"sigma", {t.args[0]}}), mutate_));
        if (h == "trivext")
            return share(trivial_extension(*e));
        if (h == "cover")
            return share(build_cover(e, algebra(Term{"tsigma", {t.args[0]}})));
        if (h == "lambda")
            return share(build_lambda(e, algebra(Term{"tsigma", {t.args[0]}})));
        if (h == "corner_u" || h == "corner_v") {
            const auto& bl = syzygy::detail::require_blocks(*e);
            return h == "corner_u" ? bl.u : bl.v;
        }
        if (h == "ecorner_u" || h == "ecorner_v")
            return share(corner_algebra(*e, e->idempotent_sum(corner_vertices(*e, h == "ecorner_u"))));
        throw Error(ErrorKind::Parse, "unknown algebra recipe '" + to_string(t) + "'");
    }

    AlgebraPtr base_;
    bool mutate_;
    std::size_t max_dim_ = 0;
    std::map<std::string, AlgebraPtr> memo_;
};

}  // namespace syzygy::check
