#pragma once

/* Algebra definition files (*.alg), JSON documents of the form
 *
 *   { "field": {"p": 32003},
 *     "quiver": {"vertices": ["1", "2"], "arrows": [{"name": "a", "from": "1", "to": "2"}]},
 *     "relations": [[{"coef": 1, "path": ["a", "b"]}], ...] }
 *
 * or, instead of quiver/relations, "construction": {"op": "cover", "base": "a2"}
 * with op one of opposite|trivext|cover|lambda and base another entry id (the
 * file stem). Optional keys: "description" (free text) and "negative_control":
 * {"mutation": "trivext_drop_right", "expect_fail": [check ids]}.
 */

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <optional>
#include <set>
#include <sstream>

#include <json.hpp>

#include "syzygy/check/recipe.hpp"

namespace syzygy::check {

using json = nlohmann::json;

struct NegativeControl {
    std::string mutation;
    std::vector<std::string> expect_fail;
};

struct CorpusEntry {
    std::string id;
    std::string source;  ///< file the entry was read from
    std::string description;
    std::optional<std::uint32_t> prime;
    std::optional<QuiverPresentation> quiver;
    std::string op;    ///< construction op, empty for quiver entries
    std::string base;  ///< construction base id
    std::optional<NegativeControl> negative;
};

inline const std::vector<std::string>& construction_ops()
{
    static const std::vector<std::string> ops{"opposite", "trivext", "cover", "lambda"};
    return ops;
}

inline const std::vector<std::string>& mutations()
{
    static const std::vector<std::string> m{"trivext_drop_right"};
    return m;
}

/// SYZYGY_PRIME if set, else the library default.
inline std::uint32_t default_prime()
{
    if (const char* s = std::getenv("SYZYGY_PRIME"); s && *s) {
        char* end = nullptr;
        unsigned long v = std::strtoul(s, &end, 10);
        if (*end || v < 2 || v > 0xFFFFFFFFul)
            throw Error(ErrorKind::Parse, std::string("SYZYGY_PRIME is not a valid prime: ") + s);
        return static_cast<std::uint32_t>(v);
    }
    return kDefaultPrime;
}

/// SYZYGY_SEED, or 0.
inline std::uint64_t default_seed()
{
    if (const char* s = std::getenv("SYZYGY_SEED"); s && *s) {
        char* end = nullptr;
        unsigned long long v = std::strtoull(s, &end, 10);
        if (*end)
            throw Error(ErrorKind::Parse, std::string("SYZYGY_SEED is not an integer: ") + s);
        return v;
    }
    return 0;
}

namespace detail {

inline std::pair<std::size_t, std::size_t> line_column(std::string_view text, std::size_t byte)
{
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
        if (text[i] == '\n') {
            ++line;
            col = 1;
        } else {
            ++col;
        }
    }
    return {line, col};
}

class Schema {
public:
    explicit Schema(std::string source) : source_(std::move(source)) {}

    [[noreturn]] void fail(const std::string& path, const std::string& what) const
    {
        throw Error(ErrorKind::Parse, source_ + ": at " + (path.empty() ? "/" : path) + ": " + what);
    }

    const json& object(const json& j, const std::string& path) const
    {
        if (!j.is_object())
            fail(path, "expected an object");
        return j;
    }

    const json& array(const json& j, const std::string& path) const
    {
        if (!j.is_array())
            fail(path, "expected a list");
        return j;
    }

    std::string string(const json& j, const std::string& path) const
    {
        if (!j.is_string())
            fail(path, "expected a string");
        return j.get<std::string>();
    }

    std::int64_t integer(const json& j, const std::string& path) const
    {
        if (!j.is_number_integer())
            fail(path, "expected an integer");
        return j.get<std::int64_t>();
    }

    const json& member(const json& j, const std::string& key, const std::string& path) const
    {
        auto it = j.find(key);
        if (it == j.end())
            fail(path, "missing key '" + key + "'");
        return *it;
    }

    void only_keys(const json& j, std::initializer_list<const char*> keys, const std::string& path) const
    {
        for (auto it = j.begin(); it != j.end(); ++it)
            if (std::none_of(keys.begin(), keys.end(), [&](const char* k) { return it.key() == k; }))
                fail(path + "/" + it.key(), "unknown key");
    }

private:
    std::string source_;
};

}  // namespace detail

/// Parses one definition. Syntax errors report line:column, schema errors a JSON pointer.
inline CorpusEntry parse_entry(std::string_view text, std::string id, std::string source)
{
    json doc;
    try {
        doc = json::parse(text.begin(), text.end());
    } catch (const json::parse_error& e) {
        auto [line, col] = detail::line_column(text, e.byte ? e.byte - 1 : 0);
        std::string msg = e.what();
        if (auto pos = msg.find("parse error"); pos != std::string::npos) {
            msg = msg.substr(pos);
            // nlohmann repeats the position; keep only the description
            if (auto c = msg.find("column"); c != std::string::npos)
                if (auto k = msg.find(": ", c); k != std::string::npos)
                    msg = "parse error: " + msg.substr(k + 2);
        }
        throw Error(ErrorKind::Parse, source + ":" + std::to_string(line) + ":" + std::to_string(col) + ": " + msg);
    }
    detail::Schema sc(source);
    sc.object(doc, "");
    sc.only_keys(doc, {"field", "quiver", "relations", "construction", "description", "negative_control"}, "");

    CorpusEntry e;
    e.id = std::move(id);
    e.source = std::move(source);
    if (doc.contains("description"))
        e.description = sc.string(doc["description"], "/description");
    if (doc.contains("field")) {
        const auto& f = sc.object(doc["field"], "/field");
        sc.only_keys(f, {"p"}, "/field");
        auto p = sc.integer(sc.member(f, "p", "/field"), "/field/p");
        if (p < 2 || p > 0xFFFFFFFFll || !is_prime(static_cast<std::uint64_t>(p)))
            sc.fail("/field/p", "not a prime: " + std::to_string(p));
        e.prime = static_cast<std::uint32_t>(p);
    }

    const bool has_quiver = doc.contains("quiver"), has_construction = doc.contains("construction");
    if (has_quiver == has_construction)
        sc.fail("", "exactly one of 'quiver' and 'construction' is required");
    if (has_construction) {
        if (doc.contains("relations"))
            sc.fail("/relations", "relations are only allowed with a quiver");
        const auto& c = sc.object(doc["construction"], "/construction");
        sc.only_keys(c, {"op", "base"}, "/construction");
        e.op = sc.string(sc.member(c, "op", "/construction"), "/construction/op");
        const auto& ops = construction_ops();
        if (std::find(ops.begin(), ops.end(), e.op) == ops.end())
            sc.fail("/construction/op", "unknown construction '" + e.op + "'");
        e.base = sc.string(sc.member(c, "base", "/construction"), "/construction/base");
    } else {
        QuiverPresentation q;
        const auto& qj = sc.object(doc["quiver"], "/quiver");
        sc.only_keys(qj, {"vertices", "arrows"}, "/quiver");
        const auto& vs = sc.array(sc.member(qj, "vertices", "/quiver"), "/quiver/vertices");
        std::set<std::string> vnames, anames;
        for (std::size_t i = 0; i < vs.size(); ++i) {
            const std::string path = "/quiver/vertices/" + std::to_string(i);
            q.vertices.push_back(sc.string(vs[i], path));
            if (!vnames.insert(q.vertices.back()).second)
                sc.fail(path, "duplicate vertex '" + q.vertices.back() + "'");
        }
        if (qj.contains("arrows")) {
            const auto& as = sc.array(qj["arrows"], "/quiver/arrows");
            for (std::size_t i = 0; i < as.size(); ++i) {
                const std::string path = "/quiver/arrows/" + std::to_string(i);
                sc.object(as[i], path);
                sc.only_keys(as[i], {"name", "from", "to"}, path);
                Arrow a{sc.string(sc.member(as[i], "name", path), path + "/name"),
                        sc.string(sc.member(as[i], "from", path), path + "/from"),
                        sc.string(sc.member(as[i], "to", path), path + "/to")};
                if (!anames.insert(a.name).second)
                    sc.fail(path + "/name", "duplicate arrow '" + a.name + "'");
                if (!vnames.count(a.source))
                    sc.fail(path + "/from", "unknown vertex '" + a.source + "'");
                if (!vnames.count(a.target))
                    sc.fail(path + "/to", "unknown vertex '" + a.target + "'");
                q.arrows.push_back(std::move(a));
            }
        }
        if (doc.contains("relations")) {
            const auto& rs = sc.array(doc["relations"], "/relations");
            for (std::size_t i = 0; i < rs.size(); ++i) {
                const std::string rpath = "/relations/" + std::to_string(i);
                Relation rel;
                for (std::size_t k = 0; k < sc.array(rs[i], rpath).size(); ++k) {
                    const std::string path = rpath + "/" + std::to_string(k);
                    const auto& tj = sc.object(rs[i][k], path);
                    sc.only_keys(tj, {"coef", "path"}, path);
                    RelationTerm term{sc.integer(sc.member(tj, "coef", path), path + "/coef"), {}};
                    const auto& pj = sc.array(sc.member(tj, "path", path), path + "/path");
                    for (std::size_t m = 0; m < pj.size(); ++m) {
                        term.path.push_back(sc.string(pj[m], path + "/path/" + std::to_string(m)));
                        if (!anames.count(term.path.back()))
                            sc.fail(path + "/path/" + std::to_string(m), "unknown arrow '" + term.path.back() + "'");
                    }
                    rel.push_back(std::move(term));
                }
                q.relations.push_back(std::move(rel));
            }
        }
        e.quiver = std::move(q);
    }

    if (doc.contains("negative_control")) {
        const auto& n = sc.object(doc["negative_control"], "/negative_control");
        sc.only_keys(n, {"mutation", "expect_fail"}, "/negative_control");
        NegativeControl nc;
        nc.mutation = sc.string(sc.member(n, "mutation", "/negative_control"), "/negative_control/mutation");
        if (std::find(mutations().begin(), mutations().end(), nc.mutation) == mutations().end())
            sc.fail("/negative_control/mutation", "unknown mutation '" + nc.mutation + "'");
        const auto& ef = sc.array(sc.member(n, "expect_fail", "/negative_control"), "/negative_control/expect_fail");
        for (std::size_t i = 0; i < ef.size(); ++i)
            nc.expect_fail.push_back(sc.string(ef[i], "/negative_control/expect_fail/" + std::to_string(i)));
        if (nc.expect_fail.empty())
            sc.fail("/negative_control/expect_fail", "a negative control must name at least one check");
        e.negative = std::move(nc);
    }
    return e;
}

inline CorpusEntry load_entry_file(const std::filesystem::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw Error(ErrorKind::Parse, path.string() + ": cannot open file");
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_entry(ss.str(), path.stem().string(), path.string());
}

/// Entries by id with lazy, cycle-checked resolution of constructions.
class Corpus {
public:
    Corpus() = default;

    /// Every *.alg file of a directory, in file name order.
    static Corpus load_directory(const std::filesystem::path& dir)
    {
        if (!std::filesystem::is_directory(dir))
            throw Error(ErrorKind::Parse, dir.string() + ": not a directory");
        std::vector<std::filesystem::path> files;
        for (const auto& f : std::filesystem::directory_iterator(dir))
            if (f.is_regular_file() && f.path().extension() == ".alg")
                files.push_back(f.path());
        std::sort(files.begin(), files.end());
        Corpus c;
        c.dir_ = dir;
        for (const auto& f : files)
            c.add(load_entry_file(f));
        return c;
    }

    /// One file; construction bases are looked up next to it on demand.
    static Corpus load_file(const std::filesystem::path& file, std::string& id)
    {
        Corpus c;
        c.dir_ = file.parent_path();
        auto e = load_entry_file(file);
        id = e.id;
        c.add(std::move(e));
        return c;
    }

    void add(CorpusEntry e)
    {
        if (index_.count(e.id))
            throw Error(ErrorKind::Parse, e.source + ": duplicate entry id '" + e.id + "'");
        index_[e.id] = entries_.size();
        entries_.push_back(std::move(e));
    }

    const std::vector<CorpusEntry>& entries() const { return entries_; }
    const std::filesystem::path& directory() const { return dir_; }

    const CorpusEntry& entry(const std::string& id)
    {
        auto it = index_.find(id);
        if (it == index_.end()) {
            auto path = dir_ / (id + ".alg");
            if (dir_.empty() || !std::filesystem::exists(path))
                throw Error(ErrorKind::Parse, "unknown corpus entry '" + id + "'");
            add(load_entry_file(path));
            it = index_.find(id);
        }
        return entries_[it->second];
    }

    /// The algebra of an entry. `prime` overrides every field.p when set.
    AlgebraPtr algebra(const std::string& id, std::optional<std::uint32_t> prime = std::nullopt)
    {
        std::vector<std::string> stack;
        return resolve(id, prime, stack);
    }

private:
    AlgebraPtr resolve(const std::string& id, std::optional<std::uint32_t> prime, std::vector<std::string>& stack)
    {
        if (std::find(stack.begin(), stack.end(), id) != stack.end()) {
            std::string cyc;
            for (const auto& s : stack)
                cyc += s + " -> ";
            throw Error(ErrorKind::Parse, "construction cycle: " + cyc + id);
        }
        const CorpusEntry e = entry(id);
        std::uint32_t p = prime ? *prime : e.prime ? *e.prime : 0;
        const std::string key = id + "@" + std::to_string(p);
        if (auto it = cache_.find(key); it != cache_.end())
            return it->second;
        AlgebraPtr a;
        if (e.quiver) {
            a = share(from_quiver(*e.quiver, p ? p : default_prime()));
        } else {
            stack.push_back(id);
            AlgebraPtr b = resolve(e.base, p ? std::optional<std::uint32_t>(p) : std::nullopt, stack);
            stack.pop_back();
            if (e.prime && !prime && *e.prime != b->prime())
                throw Error(ErrorKind::Parse, e.source + ": field.p differs from the base entry '" + e.base + "'");
            if (e.op == "opposite")
                a = share(opposite(*b));
            else if (e.op == "trivext")
                a = share(trivial_extension(*b));
            else if (e.op == "cover")
                a = share(build_cover(b));
            else
                a = share(build_lambda(b));
        }
        cache_.emplace(key, a);
        return a;
    }

    std::filesystem::path dir_;
    std::vector<CorpusEntry> entries_;
    std::map<std::string, std::size_t> index_;
    std::map<std::string, AlgebraPtr> cache_;
};

}  // namespace syzygy::check
