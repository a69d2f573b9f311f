#pragma once

/* Certificates embedded in check reports. Each is a JSON object with a "kind",
 * an "algebra" recipe and recipes for the modules involved; verification
 * rebuilds everything from the recipes and uses exact linear algebra only.
 *
 *   algebra_iso  source, target, map   canonical_iso_check
 *   module_iso   x, y, map             x -> y is a bijective module map
 *   summand      x, y, u, v            u v = id_x with u, v module maps
 *   embedding    x, copies, map        injective module map x -> (A_A)^copies
 *   del          s, witness, d, ...    see DelCertificate
 *   predicate    name, module, ...     an exact property recomputed from scratch
 */

#include "syzygy/check/corpus.hpp"

namespace syzygy::check {

inline json to_json(const Matrix& m)
{
    return json{{"rows", m.rows()}, {"cols", m.cols()}, {"data", m.data()}};
}

inline Matrix matrix_from_json(const json& j, std::uint32_t p)
{
    const auto r = j.at("rows").get<std::size_t>(), c = j.at("cols").get<std::size_t>();
    auto data = j.at("data").get<std::vector<Scalar>>();
    if (data.size() != r * c)
        throw Error(ErrorKind::Parse, "certificate matrix has the wrong number of entries");
    Matrix m(p, r, c);
    for (std::size_t i = 0; i < data.size(); ++i) {
        if (data[i] >= p)
            throw Error(ErrorKind::Parse, "certificate matrix entry out of range");
        m.data()[i] = data[i];
    }
    return m;
}

// ---------------------------------------------------------------------------
// Exact predicates shared by the checks and the verifier

/// {x : tr(R_x R_y) = 0 for all y} for the right regular representation. It
/// is the Jacobson radical when p exceeds the dimension.
inline Subspace trace_form_radical(const StructureAlgebra& a)
{
    const std::size_t n = a.dim();
    if (a.prime() <= n)
        throw Error(ErrorKind::CharTooSmall, "trace form radical needs p > dim");
    std::vector<Matrix> r;
    for (std::size_t i = 0; i < n; ++i)
        r.push_back(a.right_mult(i));
    Fp f = a.field();
    Matrix g(a.prime(), n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j) {
            Matrix prod = r[i] * r[j];
            Scalar t = 0;
            for (std::size_t k = 0; k < n; ++k)
                t = f.add(t, prod(k, k));
            g(i, j) = g(j, i) = t;
        }
    return Subspace::span(kernel_basis(g));
}

struct TrivextRadical {
    std::size_t dim = 0, radical_dim = 0, natural_dim = 0, socle_dim = 0;
    bool radical_is_natural = false;
    bool socle_is_natural = false;
};

/// For T = T(S) on the basis S-part then #-part: compares the trace form
/// radical and the socle of T_T with the #-part.
inline TrivextRadical trivext_radical(const AlgebraPtr& t)
{
    TrivextRadical r;
    r.dim = t->dim();
    const std::size_t half = r.dim / 2;
    Matrix nat(t->prime(), half, r.dim);
    for (std::size_t i = 0; i < half; ++i)
        nat(i, half + i) = 1;
    Subspace natural = Subspace::span(nat);
    Subspace rad = trace_form_radical(*t);
    Subspace soc = socle(RightModule::regular(t)).space;
    r.radical_dim = rad.dim();
    r.natural_dim = natural.dim();
    r.socle_dim = soc.dim();
    r.radical_is_natural = rad.basis == natural.basis;
    r.socle_is_natural = soc.basis == natural.basis;
    return r;
}

/// Empty when the U-corner of the projective cover of z is a projective cover
/// of the U-corner of z; otherwise what failed.
inline std::string cover_restriction_defect(const RightModule& z)
{
    auto st = syzygy_step(z);
    const auto& p = st.cover.projective;
    RightModule pu = corner_restrict(p, Corner::U);
    RightModule zu = corner_restrict(z, Corner::U);
    Matrix pi = corner_restrict_map(p, z, st.cover.map, Corner::U);
    if (!is_projective(pu))
        return "corner of the projective cover is not projective";
    if (!is_module_hom(pu, zu, pi))
        return "restricted cover map is not a module map";
    if (rank(pi) != zu.dim())
        return "restricted cover map is not surjective";
    if (top_multiplicities(pu) != top_multiplicities(zu))
        return "restricted cover does not induce an isomorphism of tops";
    if (pu.dim() && !radical_submodule(pu).space.contains_rows(kernel_basis(pi)))
        return "kernel of the restricted cover is not in the radical";
    return {};
}

inline bool split_triple(const RightModule& z) { return module_to_triple(z).triple.f.is_zero(); }

/// Omega^value(x) is projective and Omega^{value-1}(x) is not.
inline bool pd_equals(const RightModule& x, std::size_t value)
{
    RightModule cur = x;
    for (std::size_t k = 0; k < value; ++k) {
        if (is_projective(cur))
            return false;
        cur = syzygy_step(cur).kernel.module;
    }
    return is_projective(cur);
}

// ---------------------------------------------------------------------------
// Builders

inline json module_iso_certificate(const std::string& alg, const std::string& x, const std::string& y,
                                   const Matrix& map)
{
    return json{{"kind", "module_iso"}, {"algebra", alg}, {"x", x}, {"y", y}, {"map", to_json(map)}};
}

inline json algebra_iso_certificate(const std::string& source, const std::string& target, const Matrix& map)
{
    return json{{"kind", "algebra_iso"}, {"source", source}, {"target", target}, {"map", to_json(map)}};
}

inline json embedding_certificate(const std::string& alg, const std::string& x, const TorsionlessResult& t)
{
    return json{{"kind", "embedding"}, {"algebra", alg},     {"x", x},
                {"copies", t.copies},  {"map", to_json(t.embedding)}};
}

inline json predicate_certificate(const std::string& alg, const std::string& name, json args = json::object())
{
    args["kind"] = "predicate";
    args["algebra"] = alg;
    args["name"] = name;
    return args;
}

inline json del_certificate_json(const std::string& alg, const std::string& s, const std::string& witness,
                                 const DelCertificate& c)
{
    json j{{"kind", "del"}, {"algebra", alg}, {"s", s}, {"witness", witness}, {"d", c.d}, {"projective", c.projective}};
    if (!c.projective) {
        j["target_basis"] = to_json(c.target_basis);
        j["retraction"] = to_json(c.retraction);
        j["u"] = to_json(c.u);
        j["v"] = to_json(c.v);
    }
    return j;
}

// ---------------------------------------------------------------------------
// Verification

/// Exact re-check of one certificate. Malformed certificates are false, not errors.
inline bool verify_certificate(const json& c, RecipeContext& ctx, std::string* why = nullptr)
{
    auto fail = [&](const std::string& w) {
        if (why)
            *why = w;
        return false;
    };
    try {
        const std::string kind = c.at("kind").get<std::string>();
        if (kind == "algebra_iso") {
            auto a = ctx.algebra(c.at("source").get<std::string>());
            auto b = ctx.algebra(c.at("target").get<std::string>());
            if (a->dim() != b->dim())
                return fail("algebras of different dimension");
            return canonical_iso_check(*a, *b, matrix_from_json(c.at("map"), a->prime())) ||
                   fail("structure constants differ under the map");
        }
        auto alg = ctx.algebra(c.at("algebra").get<std::string>());
        const auto p = alg->prime();
        auto mod = [&](const char* key) { return ctx.module(c.at(key).get<std::string>(), alg); };
        if (kind == "module_iso") {
            return verify_iso_witness(mod("x"), mod("y"), matrix_from_json(c.at("map"), p)) ||
                   fail("map is not a module isomorphism");
        }
        if (kind == "summand") {
            return verify_summand_certificate(mod("x"), mod("y"), matrix_from_json(c.at("u"), p),
                                              matrix_from_json(c.at("v"), p)) ||
                   fail("split maps do not compose to the identity");
        }
        if (kind == "embedding") {
            RightModule x = mod("x");
            RightModule q = free_module(alg, c.at("copies").get<std::size_t>());
            Matrix m = matrix_from_json(c.at("map"), p);
            if (m.rows() != x.dim() || m.cols() != q.dim())
                return fail("embedding has the wrong shape");
            return (is_module_hom(x, q, m) && rank(m) == x.dim()) || fail("not an injective module map");
        }
        if (kind == "del") {
            DelCertificate d;
            d.d = c.at("d").get<std::size_t>();
            d.projective = c.at("projective").get<bool>();
            if (!d.projective) {
                d.target_basis = matrix_from_json(c.at("target_basis"), p);
                d.retraction = matrix_from_json(c.at("retraction"), p);
                d.u = matrix_from_json(c.at("u"), p);
                d.v = matrix_from_json(c.at("v"), p);
            }
            return check_del_certificate(mod("s"), mod("witness"), d) || fail("delooping witness does not check");
        }
        if (kind == "predicate") {
            const std::string name = c.at("name").get<std::string>();
            if (name == "trivext_radical") {
                auto r = trivext_radical(alg);
                return (r.radical_is_natural && r.socle_is_natural) || fail("radical or socle differs from the #-part");
            }
            if (name == "valid_algebra")
                return validate_algebra(*alg).ok() || fail("algebra axioms fail");
            if (name == "semisimple")
                return is_semisimple(mod("module")) || fail("module is not semisimple");
            if (name == "split_triple")
                return split_triple(mod("module")) || fail("structure map is nonzero");
            if (name == "cover_restriction") {
                auto defect = cover_restriction_defect(mod("module"));
                return defect.empty() || fail(defect);
            }
            if (name == "del_lower") {
                auto v = del_lower_bound(mod("module"), c.at("horizon").get<std::size_t>());
                return v == c.at("value").get<std::size_t>() || fail("delooping lower bound differs");
            }
            if (name == "pd")
                return pd_equals(mod("module"), c.at("value").get<std::size_t>()) || fail("projective dimension differs");
            return fail("unknown predicate '" + name + "'");
        }
        return fail("unknown certificate kind '" + kind + "'");
    } catch (const Error& e) {
        if (e.kind() == ErrorKind::CharTooSmall || e.kind() == ErrorKind::ResourceLimit)
            throw;
        return fail(e.what());
    } catch (const std::exception& e) {
        return fail(e.what());
    }
}

}  // namespace syzygy::check
