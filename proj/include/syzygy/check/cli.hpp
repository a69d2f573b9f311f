#pragma once

/* Command-line front end. Exit codes: 0 all as expected, 1 a check failed (or
 * a certificate was rejected), 2 usage or parse error, 3 characteristic too
 * small or a resource limit hit.
 */

#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "syzygy/check/report.hpp"

namespace syzygy::check {

enum ExitCode : int { kExitOk = 0, kExitFail = 1, kExitUsage = 2, kExitResource = 3 };

namespace detail {

struct Loaded {
    Corpus corpus;
    std::string id;
    AlgebraPtr algebra;
};

inline Loaded load_algebra(const std::string& file, std::optional<std::uint32_t> prime, std::size_t max_dim)
{
    Loaded l;
    l.corpus = Corpus::load_file(file, l.id);
    l.algebra = l.corpus.algebra(l.id, prime);
    if (max_dim && l.algebra->dim() > max_dim)
        throw Error(ErrorKind::ResourceLimit, l.id + " has dimension " + std::to_string(l.algebra->dim()) +
                                                  ", above the limit " + std::to_string(max_dim));
    return l;
}

/// Vertex by exact name, then by name after a leading S, then by index.
inline std::size_t find_simple(const StructureAlgebra& a, const std::string& name)
{
    const auto& v = a.vertex_names();
    auto by_name = [&](const std::string& n) -> std::optional<std::size_t> {
        for (std::size_t i = 0; i < v.size(); ++i)
            if (v[i] == n)
                return i;
        return std::nullopt;
    };
    if (auto i = by_name(name))
        return *i;
    if (name.size() > 1 && (name[0] == 'S' || name[0] == 's'))
        if (auto i = by_name(name.substr(1)))
            return *i;
    if (!name.empty() && std::all_of(name.begin(), name.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); })) {
        auto i = std::stoull(name);
        if (i < a.vertex_count())
            return i;
    }
    throw Error(ErrorKind::Parse, "no simple module named '" + name + "'");
}

inline json algebra_json(const StructureAlgebra& a)
{
    json terms = json::array();
    for (std::size_t i = 0; i < a.dim(); ++i)
        for (std::size_t j = 0; j < a.dim(); ++j)
            for (const auto& t : a.product_terms(i, j))
                terms.push_back({i, j, t.index, t.coef});
    return json{{"prime", a.prime()},          {"dim", a.dim()},   {"basis", a.labels()},
                {"vertices", a.vertex_names()}, {"unit", a.unit()}, {"products", std::move(terms)}};
}

inline std::string algebra_text(const StructureAlgebra& a)
{
    std::ostringstream os;
    os << "dim " << a.dim() << " over F_" << a.prime() << ", " << a.vertex_count() << " vertices, radical dim "
       << a.radical_basis().rows() << "\nbasis:";
    for (const auto& l : a.labels())
        os << ' ' << l;
    os << "\n";
    for (std::size_t i = 0; i < a.dim(); ++i)
        for (std::size_t j = 0; j < a.dim(); ++j) {
            const auto& ts = a.product_terms(i, j);
            if (ts.empty())
                continue;
            os << a.labels()[i] << " * " << a.labels()[j] << " =";
            for (std::size_t k = 0; k < ts.size(); ++k)
                os << (k ? " + " : " ") << ts[k].coef << " " << a.labels()[ts[k].index];
            os << "\n";
        }
    return os.str();
}

inline void write_file(const std::string& path, const std::string& text)
{
    std::ofstream f(path, std::ios::binary);
    if (!f)
        throw Error(ErrorKind::Parse, path + ": cannot open for writing");
    f << text;
}

inline json read_json_file(const std::string& path)
{
    std::ifstream f(path, std::ios::binary);
    if (!f)
        throw Error(ErrorKind::Parse, path + ": cannot open");
    std::stringstream ss;
    ss << f.rdbuf();
    try {
        return json::parse(ss.str());
    } catch (const json::parse_error& e) {
        throw Error(ErrorKind::Parse, path + ": " + e.what());
    }
}

}  // namespace detail

inline int cli_main(int argc, const char* const* argv, std::ostream& out = std::cout, std::ostream& err = std::cerr)
{
    CLI::App app{"Finite-dimensional algebras over F_p: constructions, syzygies, delooping bounds and a check suite"};
    app.require_subcommand(1);
    app.set_version_flag("--version", kVersion);

    std::optional<std::uint32_t> prime;
    std::uint64_t seed = 0;
    bool seed_given = false;
    std::size_t horizon = kDefaultHorizon, cap = kDefaultPdCap, max_dim = 0;
    std::string file, format = "text", module_spec, simple, check_id, report_out, corpus_dir;
    std::size_t jobs = 1;
    bool timing = false, do_reverify = false;

    auto add_prime = [&](CLI::App* c) {
        c->add_option("--prime", prime, "override the field characteristic")->check(CLI::Range(2u, 0xFFFFFFFFu));
        c->add_option("--max-dim", max_dim, "refuse algebras above this dimension (0 = no limit)");
    };
    auto add_seed = [&](CLI::App* c) {
        c->add_option_function<std::uint64_t>(
            "--seed", [&](const std::uint64_t& s) { seed = s, seed_given = true; }, "random seed (default SYZYGY_SEED or 0)");
    };

    auto* alg = app.add_subcommand("algebra", "inspect an algebra file");
    alg->require_subcommand(1);
    auto* validate = alg->add_subcommand("validate", "parse, build and check the algebra axioms");
    validate->add_option("file", file)->required();
    add_prime(validate);
    std::string construction;
    auto* build = alg->add_subcommand("build", "apply a construction and print the result");
    build->add_option("file", file)->required();
    build->add_option("--construction", construction)
        ->required()
        ->check(CLI::IsMember({"opposite", "trivext", "cover", "lambda"}));
    build->add_option("--format", format)->check(CLI::IsMember({"text", "json"}));
    add_prime(build);

    auto* del = app.add_subcommand("del", "delooping level");
    del->require_subcommand(1);
    auto* bounds = del->add_subcommand("bounds", "certified interval for del of one simple or of the algebra");
    bounds->add_option("file", file)->required();
    bounds->add_option("--simple", simple, "vertex name, S<name> or index");
    bounds->add_option("--horizon", horizon);
    add_seed(bounds);
    add_prime(bounds);

    auto* pd = app.add_subcommand("pd", "projective dimension of a module");
    pd->add_option("file", file)->required();
    pd->add_option("--module", module_spec, "module recipe, e.g. simple(0) or rad(proj(1))")->required();
    pd->add_option("--cap", cap);
    add_seed(pd);
    add_prime(pd);

    auto* paper = app.add_subcommand("paper", "the check suite");
    paper->require_subcommand(1);
    auto* verify = paper->add_subcommand("verify", "run the check suite over a corpus directory");
    verify->add_option("corpus", corpus_dir)->required();
    verify->add_option("--check", check_id, "run only this check");
    verify->add_option("--report", report_out, "write the JSON report here");
    verify->add_option("--jobs", jobs)->check(CLI::PositiveNumber);
    verify->add_option("--horizon", horizon);
    verify->add_flag("--timing", timing, "record elapsed time per check (reports are then not reproducible)");
    add_seed(verify);
    add_prime(verify);

    auto* rep = app.add_subcommand("report", "print or re-verify a saved report");
    rep->add_option("file", file)->required();
    rep->add_option("--format", format)->check(CLI::IsMember({"text", "json"}));
    rep->add_flag("--reverify", do_reverify, "re-check every certificate exactly");
    rep->add_option("--corpus", corpus_dir, "corpus directory (default: the one recorded in the report)");
    rep->add_option("--max-dim", max_dim);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (!seed_given)
            seed = default_seed();

        if (validate->parsed()) {
            auto l = detail::load_algebra(file, prime, max_dim);
            auto r = validate_algebra(*l.algebra);
            if (!r.ok()) {
                for (const auto& v : r.violations)
                    err << file << ": " << v << "\n";
                return kExitFail;
            }
            out << l.id << ": valid, dim " << l.algebra->dim() << " over F_" << l.algebra->prime() << ", "
                << l.algebra->vertex_count() << " vertices\n";
            return kExitOk;
        }

        if (build->parsed()) {
            auto l = detail::load_algebra(file, prime, max_dim);
            RecipeContext ctx(l.algebra);
            ctx.set_max_dim(max_dim);
            auto a = ctx.algebra(construction + "(A)");
            out << (format == "json" ? detail::algebra_json(*a).dump(2) + "\n" : detail::algebra_text(*a));
            return kExitOk;
        }

        if (bounds->parsed()) {
            auto l = detail::load_algebra(file, prime, max_dim);
            auto pool = default_pool(l.algebra, horizon, seed);
            auto line = [&](const std::string& name, const DelBounds& b) {
                out << name << " " << to_string(b) << (b.exact ? " exact" : "");
                if (b.upper && !b.witness_recipe.empty())
                    out << " witness " << b.witness_recipe;
                out << "\n";
            };
            if (!simple.empty()) {
                auto i = detail::find_simple(*l.algebra, simple);
                line("S" + l.algebra->vertex_names()[i], del_bounds(simple_module(l.algebra, i), horizon, pool, seed + i));
                return kExitOk;
            }
            auto d = del_algebra(l.algebra, horizon, pool, seed);
            for (std::size_t i = 0; i < d.per_simple.size(); ++i)
                line("S" + l.algebra->vertex_names()[i], d.per_simple[i]);
            line("del(" + l.id + ")", d.bounds);
            return kExitOk;
        }

        if (pd->parsed()) {
            auto l = detail::load_algebra(file, prime, max_dim);
            RecipeContext ctx(l.algebra);
            auto m = ctx.module(module_spec, l.algebra);
            out << "pd " << module_spec << " = " << to_string(projective_dimension(m, cap, seed)) << "\n";
            return kExitOk;
        }

        if (verify->parsed()) {
            auto corpus = Corpus::load_directory(corpus_dir);
            RunOptions opt;
            opt.config.seed = seed;
            opt.config.horizon = horizon;
            opt.prime = prime;
            opt.jobs = jobs;
            opt.max_dim = max_dim;
            if (!check_id.empty())
                opt.checks = {check_id};
            auto reports = run_corpus(corpus, opt);
            ReportMeta meta{corpus_dir, prime, opt.config, timing};
            if (!report_out.empty())
                detail::write_file(report_out, serialize(make_report(reports, meta)));
            out << render_text(reports);
            return exit_status(reports);
        }

        if (rep->parsed()) {
            json report = detail::read_json_file(file);
            std::vector<CheckReport> reports;
            try {
                reports = reports_of(report);
            } catch (const json::exception& e) {
                throw Error(ErrorKind::Parse, file + ": not a report: " + e.what());
            }
            out << (format == "json" ? serialize(report) : render_text(reports));
            int status = exit_status(reports);
            if (do_reverify) {
                std::string dir = corpus_dir.empty() ? report.value("corpus", "") : corpus_dir;
                auto corpus = Corpus::load_directory(dir);
                auto res = reverify(report, corpus, max_dim);
                for (const auto& p : res.problems)
                    err << p << "\n";
                out << "reverify: " << res.certificates << " certificates over " << res.checks << " passing checks, "
                    << res.problems.size() << " rejected\n";
                if (!res.ok())
                    status = kExitFail;
            }
            return status;
        }
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        if (e.kind() == ErrorKind::CharTooSmall || e.kind() == ErrorKind::ResourceLimit)
            return kExitResource;
        if (e.kind() == ErrorKind::Parse || e.kind() == ErrorKind::NotAdmissible ||
            e.kind() == ErrorKind::NotFiniteDimensional)
            return kExitUsage;
        return kExitFail;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kExitFail;
    }
    return kExitUsage;
}

}  // namespace syzygy::check
