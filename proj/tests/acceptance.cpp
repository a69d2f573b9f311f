// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any fails.
// Everything is exact except the randomized iso tests, whose witnesses are
// re-verified exactly; there are no floating point tolerances to pin.

#include <chrono>
#include <functional>
#include <iostream>
#include <random>

#include "syzygy/check/report.hpp"

using namespace syzygy;
using namespace syzygy::check;

namespace {

constexpr std::uint64_t kSeed = 7;
constexpr std::uint64_t kOtherSeed = 1234;
constexpr std::size_t kSyzygyDepth = 4;       // s = 1..4
constexpr std::size_t kSampledTriples = 10;   // per algebra
constexpr std::size_t kSchanuelSamples = 20;
constexpr std::size_t kDecomposeSamples = 50;
constexpr double kTimeBudgetSeconds = 120.0;

const std::vector<std::string> kCorpusAlgebras{"a2",   "a3",       "cubic",  "dual",
                                               "field", "field_pair", "nakayama", "square"};

struct Outcome {
    bool pass = true;
    std::string detail;

    void require(bool ok, const std::string& why)
    {
        if (!ok && pass) {
            pass = false;
            detail = why;
        }
    }
};

struct Suite {
    Corpus corpus;
    RunOptions opt;
    std::vector<CheckReport> reports;
    json doc;

    const CheckReport* find(const std::string& check, const std::string& alg) const
    {
        for (const auto& r : reports)
            if (r.check_id == check && r.algebra_id == alg)
                return &r;
        return nullptr;
    }

    /// The check passes on every corpus algebra with all certificates re-verified.
    void all_pass(Outcome& o, const std::string& check)
    {
        json sub = doc;
        sub["checks"] = json::array();
        for (const auto& alg : kCorpusAlgebras) {
            const auto* r = find(check, alg);
            o.require(r != nullptr, check + " did not run on " + alg);
            if (!r)
                return;
            o.require(r->verdict == Verdict::Pass, check + " on " + alg + ": " + to_string(r->verdict) + " " + r->reason);
            sub["checks"].push_back(to_json(*r, false));
        }
        auto rv = reverify(sub, corpus);
        o.require(rv.ok(), check + ": " + (rv.problems.empty() ? "" : rv.problems.front()));
    }
};

std::size_t count_predicates(const CheckReport& r, const std::string& name)
{
    std::size_t n = 0;
    for (const auto& c : r.certificates)
        n += c.value("kind", "") == "predicate" && c.value("name", "") == name;
    return n;
}

Outcome criterion1(Suite& s)
{
    Outcome o;
    s.all_pass(o, "trivext_radical");
    const auto* m = s.find("trivext_radical", "zz_mutant_trivext");
    o.require(m && m->verdict == Verdict::Fail && m->expected == Verdict::Fail, "negative control did not FAIL");
    if (o.pass)
        o.detail = "8/8 corpus algebras PASS, negative control FAILs (" + m->reason + ")";
    return o;
}

Outcome criterion2(Suite& s)
{
    Outcome o;
    s.all_pass(o, "cover_torsionless");
    std::size_t embeddings = 0;
    for (const auto& alg : kCorpusAlgebras) {
        const auto* r = s.find("cover_torsionless", alg);
        if (!r)
            continue;
        o.require(r->evidence["del"]["interval"] == "[0,0]" && r->evidence["del"]["exact"] == true,
                  "del(cover) of " + alg + " is not exact [0,0]");
        for (const auto& c : r->certificates)
            embeddings += c["kind"] == "embedding";
    }
    if (o.pass)
        o.detail = "all simples of all 8 covers embed (" + std::to_string(embeddings) +
                   " embeddings re-verified), del = [0,0] exact";
    return o;
}

Outcome criterion3(Suite& s)
{
    Outcome o;
    s.all_pass(o, "cover_corner");
    if (o.pass)
        o.detail = "corner algebra and End(eC) match A exactly on all 8";
    return o;
}

Outcome criterion4(Suite& s)
{
    Outcome o;
    s.all_pass(o, "lambda_opposite");
    for (const auto& alg : kCorpusAlgebras)
        if (const auto* r = s.find("lambda_opposite", alg))
            o.require(r->evidence["del"]["interval"] == "[0,0]" && r->evidence["del"]["exact"] == true,
                      "del(opposite lambda) of " + alg + " is not exact [0,0]");
    if (o.pass)
        o.detail = "opposite(lambda(A)) = cover(opposite(A)) and del = [0,0] exact on all 8";
    return o;
}

Outcome criterion5(Suite& s)
{
    Outcome o;
    s.all_pass(o, "b_corner");
    // The 1-periodicity witness: top(e'L) certified as a summand of its own syzygy.
    for (const auto& alg : kCorpusAlgebras)
        if (const auto* r = s.find("b_corner", alg)) {
            bool self = false;
            for (const auto& c : r->certificates)
                self = self || (c["kind"] == "del" && c["s"] == c["witness"] && c["d"] == 0);
            o.require(self, "no periodicity certificate for " + alg);
        }
    if (o.pass)
        o.detail = "(0,S,0) shape and the periodic syzygy of top(e'L) certified on all 8";
    return o;
}

Outcome criterion6(Suite& s)
{
    Outcome o;
    s.all_pass(o, "cover_restriction");
    s.all_pass(o, "syzygy_split");
    o.require(s.opt.config.s_max == kSyzygyDepth && s.opt.config.sample_size >= kSampledTriples, "configuration");
    std::size_t semisimple = 0;
    for (const auto& alg : kCorpusAlgebras)
        if (const auto* r = s.find("syzygy_split", alg)) {
            const std::size_t sampled = r->evidence["sampled_triples"];
            const std::size_t fixed = r->evidence["fixed_triples"];
            o.require(sampled >= kSampledTriples, alg + ": only " + std::to_string(sampled) + " sampled triples");
            const std::size_t n = count_predicates(*r, "semisimple");
            o.require(n == (sampled + fixed) * kSyzygyDepth, alg + ": semisimplicity not certified every time");
            semisimple += n;
        }
    if (o.pass)
        o.detail = std::to_string(semisimple) + " semisimple Z_s certified, s = 1..4, >= 10 sampled triples each";
    return o;
}

Outcome criterion7(Suite& s)
{
    Outcome o;
    s.all_pass(o, "del_monotone");
    for (const char* alg : {"a2", "a3"}) {
        const auto* r = s.find("del_monotone", alg);
        if (!r)
            continue;
        o.require(r->evidence["strength"] == "strong", std::string(alg) + ": only the weak form (del L = " +
                                                           r->evidence["del_lambda"]["interval"].get<std::string>() + ")");
        o.require(r->evidence["del_a"]["interval"] == "[1,1]", std::string(alg) + ": del(A) is not exactly 1");
    }
    if (o.pass) {
        const auto* r = s.find("del_monotone", "a2");
        o.detail = "strong form for kA2 and kA3: del(A) = 1 <= del(L) = " +
                   r->evidence["del_lambda"]["upper"].dump() + " (both exact)";
    }
    return o;
}

Outcome criterion8(Suite& s)
{
    Outcome o;
    s.all_pass(o, "del_identities");
    s.all_pass(o, "fd_del");
    std::size_t pairs = 0;
    for (const auto& alg : kCorpusAlgebras)
        if (const auto* r = s.find("del_identities", alg))
            pairs += r->evidence["exact_pairs"].get<std::size_t>();
    if (o.pass)
        o.detail = std::to_string(pairs) + " exact pairs give the max, del(A) = del(top A_A), fd <= del(op) for A and A^op";
    return o;
}

// ---------------------------------------------------------------------------
// Criterion 9: engine soundness, independent of the check suite.

std::vector<AlgebraPtr> engine_algebras(Suite& s)
{
    std::vector<AlgebraPtr> out;
    for (const auto& id : kCorpusAlgebras)
        out.push_back(s.corpus.algebra(id));
    return out;
}

bool idempotents_exact(const RightModule& x, const Decomposition& d)
{
    const auto p = x.prime();
    Matrix total(p, x.dim(), x.dim());
    for (std::size_t i = 0; i < d.summands.size(); ++i) {
        const auto& e = d.summands[i].idempotent;
        if (!is_module_hom(x, x, e) || e * e != e)
            return false;
        if (d.summands[i].inclusion * d.summands[i].projection != Matrix::identity(p, d.summands[i].module.dim()))
            return false;
        for (std::size_t j = 0; j < d.summands.size(); ++j)
            if (i != j && !(e * d.summands[j].idempotent).is_zero())
                return false;
        total = total + e;
    }
    return total == Matrix::identity(p, x.dim());
}

Outcome criterion9(Suite& s)
{
    Outcome o;
    auto algs = engine_algebras(s);

    // Schanuel: x (+) P(Q/x) ~ Omega(Q/x) (+) Q for torsionless x inside Q.
    std::size_t schanuel = 0;
    for (const auto& a : algs) {
        auto pool = default_pool(a, 3, kSeed);
        for (const auto& e : pool.entries) {
            auto t = torsionless_test(e.module);
            if (!t.torsionless)
                continue;
            auto q = free_module(a, t.copies);
            auto quo = quotient_module(q, Subspace::span(t.embedding)).module;
            auto lhs = direct_sum(e.module, projective_cover(quo).projective);
            auto rhs = direct_sum(syzygy_step(quo).kernel.module, q);
            auto v = iso_test(lhs, rhs, 10, kSeed);
            o.require(v.iso && verify_iso_witness(lhs, rhs, v.witness), "Schanuel fails for " + e.recipe);
            ++schanuel;
        }
    }
    o.require(schanuel >= kSchanuelSamples, "only " + std::to_string(schanuel) + " torsionless samples");

    // Decompose random direct sums, check idempotents and reassembly exactly.
    std::mt19937_64 rng(kSeed);
    std::size_t sums = 0;
    for (std::size_t k = 0; k < kDecomposeSamples; ++k) {
        const auto& a = algs[k % algs.size()];
        auto pool = default_pool(a, 2, kSeed);
        std::vector<RightModule> parts;
        const std::size_t n = 2 + rng() % 2;
        for (std::size_t i = 0; i < n; ++i)
            parts.push_back(pool.entries[rng() % pool.entries.size()].module);
        auto x = direct_sum(parts, a);
        auto d = decompose(x, kSeed + k);
        o.require(d.idempotents_certified && idempotents_exact(x, d), "idempotents not exact for sample " + std::to_string(k));
        std::vector<RightModule> back;
        for (const auto& sm : d.summands)
            back.push_back(sm.module);
        auto y = direct_sum(back, a);
        auto v = iso_test(x, y, 10, kSeed + k);
        o.require(v.iso && verify_iso_witness(x, y, v.witness), "reassembly not isomorphic for sample " + std::to_string(k));
        ++sums;
    }

    // pd: k[x]/(x^2) simple is periodic; path algebra simples by hand resolution.
    auto dual = s.corpus.algebra("dual");
    auto pd0 = projective_dimension(simple_module(dual, 0), kDefaultPdCap, kSeed);
    o.require(pd0.kind == PdResult::Kind::InfiniteCertified, "pd of the k[x]/(x^2) simple is not certified infinite");
    if (pd0.kind == PdResult::Kind::InfiniteCertified) {
        auto oi = syzygy::syzygy(simple_module(dual, 0), pd0.i), oj = syzygy::syzygy(simple_module(dual, 0), pd0.j);
        o.require(pd0.i < pd0.j && verify_iso_witness(oi, oj, pd0.witness), "syzygy cycle witness does not verify");
    }
    // kA2: P2 = S2, 0 -> P2 -> P1 -> S1 -> 0. kA3: S3 projective, S2 and S1 have pd 1.
    const std::vector<std::pair<std::string, std::vector<std::size_t>>> hand{{"a2", {1, 0}}, {"a3", {1, 1, 0}}};
    for (const auto& [id, want] : hand) {
        auto a = s.corpus.algebra(id);
        for (std::size_t i = 0; i < want.size(); ++i) {
            auto r = projective_dimension(simple_module(a, i), kDefaultPdCap, kSeed);
            o.require(r.finite() && r.value == want[i], "pd of simple " + std::to_string(i) + " of " + id + " is " +
                                                            to_string(r) + ", expected " + std::to_string(want[i]));
        }
    }
    if (o.pass)
        o.detail = std::to_string(schanuel) + " Schanuel isos, " + std::to_string(sums) +
                   " decompositions with exact idempotents, pd oracles match";
    return o;
}

Outcome criterion10(Suite& s)
{
    Outcome o;
    auto again = run_corpus(s.corpus, s.opt);
    const ReportMeta meta{"corpus", std::nullopt, s.opt.config, false};
    o.require(serialize(make_report(again, meta)) == serialize(s.doc), "same seed gave different report bytes");
    auto other = s.opt;
    other.config.seed = kOtherSeed;
    other.jobs = 4;
    auto diff = run_corpus(s.corpus, other);
    o.require(diff.size() == s.reports.size(), "different number of checks with another seed");
    for (std::size_t i = 0; i < std::min(diff.size(), s.reports.size()); ++i)
        o.require(diff[i].check_id == s.reports[i].check_id && diff[i].verdict == s.reports[i].verdict,
                  diff[i].check_id + " on " + diff[i].algebra_id + " changed verdict with the seed");
    auto rv = reverify(s.doc, s.corpus);
    o.require(rv.ok(), rv.problems.empty() ? "" : rv.problems.front());
    if (o.pass)
        o.detail = "byte-identical reports for seed " + std::to_string(kSeed) + ", identical verdicts for seed " +
                   std::to_string(kOtherSeed) + ", " + std::to_string(rv.certificates) + " certificates re-verified";
    return o;
}

}  // namespace

int main()
{
    auto t0 = std::chrono::steady_clock::now();
    Suite s;
    try {
        s.corpus = Corpus::load_directory(SYZYGY_CORPUS_DIR);
        s.opt.config.seed = kSeed;
        s.opt.config.s_max = kSyzygyDepth;
        s.opt.config.sample_size = kSampledTriples;
        s.reports = run_corpus(s.corpus, s.opt);
        s.doc = make_report(s.reports, {"corpus", std::nullopt, s.opt.config, false});
    } catch (const std::exception& e) {
        std::cout << "FAIL setup: " << e.what() << "\n";
        return 1;
    }

    const std::vector<std::pair<const char*, std::function<Outcome(Suite&)>>> criteria{
        {"trivext radical and socle", criterion1},  {"cover simples torsionless", criterion2},
        {"cover corner", criterion3},               {"opposite of lambda", criterion4},
        {"B-corner projective", criterion5},        {"cover restriction and syzygy split", criterion6},
        {"del monotone", criterion7},               {"del identities and fd", criterion8},
        {"engine soundness", criterion9},           {"determinism", criterion10},
    };
    int failed = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        Outcome o;
        try {
            o = criteria[i].second(s);
        } catch (const std::exception& e) {
            o.pass = false;
            o.detail = std::string("exception: ") + e.what();
        }
        failed += !o.pass;
        std::cout << (o.pass ? "PASS" : "FAIL") << " criterion " << i + 1 << " (" << criteria[i].first
                  << "): " << o.detail << "\n";
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (secs > kTimeBudgetSeconds) {
        std::cout << "FAIL time budget: " << secs << " s\n";
        ++failed;
    }
    return failed ? 1 : 0;
}
