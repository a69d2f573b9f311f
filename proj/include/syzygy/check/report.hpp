#pragma once

/* Run reports: one JSON document per run. Keys are sorted (nlohmann's default
 * object type), timings appear only on request, so two runs with the same
 * corpus, config and seed serialize to the same bytes.
 */

#include <sstream>

#include "syzygy/check/checks.hpp"

namespace syzygy::check {

inline constexpr const char* kVersion = "0.1.0";

struct ReportMeta {
    std::string corpus;
    std::optional<std::uint32_t> prime;  ///< --prime override, if any
    CheckConfig config;
    bool timing = false;
};

inline json config_json(const CheckConfig& c)
{
    return json{{"horizon", c.horizon},         {"iso_trials", c.iso_trials}, {"pd_cap", c.pd_cap},
                {"sample_size", c.sample_size}, {"s_max", c.s_max},           {"seed", c.seed}};
}

inline json to_json(const CheckReport& r, bool timing)
{
    json j{{"check_id", r.check_id}, {"algebra_id", r.algebra_id}, {"verdict", to_string(r.verdict)},
           {"evidence", r.evidence}, {"certificates", r.certificates}, {"seed", r.seed}};
    if (!r.reason.empty())
        j["reason"] = r.reason;
    if (r.expected)
        j["expected"] = to_string(*r.expected);
    if (timing)
        j["elapsed_ms"] = r.elapsed_ms;
    return j;
}

inline CheckReport check_report_from_json(const json& j)
{
    CheckReport r;
    r.check_id = j.at("check_id").get<std::string>();
    r.algebra_id = j.at("algebra_id").get<std::string>();
    r.verdict = verdict_from_string(j.at("verdict").get<std::string>());
    r.reason = j.value("reason", "");
    r.evidence = j.value("evidence", json::object());
    r.certificates = j.value("certificates", json::array());
    r.seed = j.value("seed", std::uint64_t{0});
    r.elapsed_ms = j.value("elapsed_ms", 0.0);
    if (j.contains("expected"))
        r.expected = verdict_from_string(j.at("expected").get<std::string>());
    return r;
}

struct Summary {
    std::size_t total = 0, pass = 0, fail = 0, skipped = 0, unexpected = 0;

    bool ok() const { return unexpected == 0; }
};

inline Summary summarize(const std::vector<CheckReport>& reports)
{
    Summary s;
    for (const auto& r : reports) {
        ++s.total;
        s.pass += r.verdict == Verdict::Pass;
        s.fail += r.verdict == Verdict::Fail;
        s.skipped += r.verdict == Verdict::Skipped;
        s.unexpected += !r.as_expected();
    }
    return s;
}

inline json make_report(const std::vector<CheckReport>& reports, const ReportMeta& meta)
{
    json checks = json::array();
    for (const auto& r : reports)
        checks.push_back(to_json(r, meta.timing));
    auto s = summarize(reports);
    return json{{"tool", "syzygy"},
                {"version", kVersion},
                {"corpus", meta.corpus},
                {"prime", meta.prime ? json(*meta.prime) : json(nullptr)},
                {"config", config_json(meta.config)},
                {"checks", std::move(checks)},
                {"summary",
                 {{"total", s.total},
                  {"pass", s.pass},
                  {"fail", s.fail},
                  {"skipped", s.skipped},
                  {"unexpected", s.unexpected}}}};
}

inline std::string serialize(const json& report) { return report.dump(2) + "\n"; }

inline std::vector<CheckReport> reports_of(const json& report)
{
    std::vector<CheckReport> out;
    for (const auto& c : report.at("checks"))
        out.push_back(check_report_from_json(c));
    return out;
}

/// 0 when every verdict is as expected, 1 otherwise.
inline int exit_status(const std::vector<CheckReport>& reports) { return summarize(reports).ok() ? 0 : 1; }

inline std::string render_text(const std::vector<CheckReport>& reports)
{
    std::size_t wc = 5, wa = 7;
    for (const auto& r : reports) {
        wc = std::max(wc, r.check_id.size());
        wa = std::max(wa, r.algebra_id.size());
    }
    std::ostringstream os;
    for (const auto& r : reports) {
        std::string v = to_string(r.verdict);
        os << v << std::string(8 - v.size(), ' ') << r.check_id << std::string(wc + 2 - r.check_id.size(), ' ')
           << r.algebra_id << std::string(wa + 2 - r.algebra_id.size(), ' ');
        if (r.expected)
            os << "[expected " << to_string(*r.expected) << "] ";
        if (r.verdict == Verdict::Pass)
            os << r.certificates.size() << " certificate" << (r.certificates.size() == 1 ? "" : "s");
        else
            os << r.reason;
        if (r.evidence.contains("strength"))
            os << " (" << r.evidence["strength"].get<std::string>() << ")";
        os << "\n";
    }
    auto s = summarize(reports);
    os << "\n" << s.total << " checks: " << s.pass << " pass, " << s.fail << " fail, " << s.skipped << " skipped";
    if (s.unexpected)
        os << ", " << s.unexpected << " not as expected";
    os << "\n";
    return os.str();
}

struct ReverifyResult {
    std::size_t checks = 0, certificates = 0;
    std::vector<std::string> problems;

    bool ok() const { return problems.empty(); }
};

/// Rebuilds every certificate of every PASS from its recipes and checks it
/// exactly. A PASS without certificates is a problem in itself.
inline ReverifyResult reverify(const json& report, Corpus& corpus, std::size_t max_dim = 0)
{
    ReverifyResult res;
    std::optional<std::uint32_t> prime;
    if (report.contains("prime") && !report["prime"].is_null())
        prime = report["prime"].get<std::uint32_t>();
    std::map<std::string, std::unique_ptr<RecipeContext>> contexts;
    for (const auto& r : reports_of(report)) {
        if (r.verdict != Verdict::Pass)
            continue;
        ++res.checks;
        const std::string where = r.check_id + " on " + r.algebra_id;
        if (r.certificates.empty()) {
            res.problems.push_back(where + ": PASS without certificates");
            continue;
        }
        auto& ctx = contexts[r.algebra_id];
        if (!ctx) {
            const auto& e = corpus.entry(r.algebra_id);
            ctx = std::make_unique<RecipeContext>(corpus.algebra(r.algebra_id, prime), e.negative.has_value());
            ctx->set_max_dim(max_dim);
        }
        for (std::size_t k = 0; k < r.certificates.size(); ++k) {
            ++res.certificates;
            std::string why;
            try {
                if (!verify_certificate(r.certificates[k], *ctx, &why))
                    res.problems.push_back(where + ": certificate " + std::to_string(k) + " (" +
                                           r.certificates[k].value("kind", "?") + ") rejected: " + why);
            } catch (const Error& e) {
                if (is_fatal(e))
                    throw;
                res.problems.push_back(where + ": certificate " + std::to_string(k) + ": " + e.what());
            }
        }
    }
    return res;
}

}  // namespace syzygy::check
