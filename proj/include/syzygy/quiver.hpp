#pragma once

// Bound quiver algebras kQ/I on a basis of paths.

#include <algorithm>
#include <map>
#include <string>
#include <vector>

#include "syzygy/algebra.hpp"

namespace syzygy {

struct Arrow {
    std::string name;
    std::string source;
    std::string target;
};

struct RelationTerm {
    std::int64_t coef;
    std::vector<std::string> path;  ///< arrow names, composed left to right
};

using Relation = std::vector<RelationTerm>;

struct QuiverPresentation {
    std::vector<std::string> vertices;
    std::vector<Arrow> arrows;
    std::vector<Relation> relations;
};

namespace detail {

struct Path {
    std::size_t source;
    std::size_t target;
    std::vector<std::size_t> arrows;
};

struct ResolvedQuiver {
    std::vector<std::size_t> arrow_source, arrow_target;
    std::vector<std::vector<std::pair<std::int64_t, std::vector<std::size_t>>>> relations;
    std::vector<std::size_t> relation_source, relation_target, relation_min_length;
};

inline ResolvedQuiver resolve(const QuiverPresentation& q)
{
    std::map<std::string, std::size_t> vid, aid;
    for (std::size_t i = 0; i < q.vertices.size(); ++i)
        if (!vid.emplace(q.vertices[i], i).second)
            throw Error(ErrorKind::Parse, "duplicate vertex " + q.vertices[i]);
    ResolvedQuiver r;
    for (std::size_t i = 0; i < q.arrows.size(); ++i) {
        const auto& a = q.arrows[i];
        if (!aid.emplace(a.name, i).second)
            throw Error(ErrorKind::Parse, "duplicate arrow " + a.name);
        auto s = vid.find(a.source), t = vid.find(a.target);
        if (s == vid.end() || t == vid.end())
            throw Error(ErrorKind::Parse, "arrow " + a.name + " has an unknown endpoint");
        r.arrow_source.push_back(s->second);
        r.arrow_target.push_back(t->second);
    }
    for (const auto& rel : q.relations) {
        if (rel.empty())
            throw Error(ErrorKind::NotAdmissible, "empty relation");
        std::vector<std::pair<std::int64_t, std::vector<std::size_t>>> terms;
        std::size_t src = 0, tgt = 0, min_len = SIZE_MAX;
        for (std::size_t k = 0; k < rel.size(); ++k) {
            const auto& term = rel[k];
            if (term.path.size() < 2)
                throw Error(ErrorKind::NotAdmissible, "relation has a path of length < 2");
            std::vector<std::size_t> ids;
            for (const auto& name : term.path) {
                auto it = aid.find(name);
                if (it == aid.end())
                    throw Error(ErrorKind::Parse, "relation uses unknown arrow " + name);
                if (!ids.empty() && r.arrow_target[ids.back()] != r.arrow_source[it->second])
                    throw Error(ErrorKind::NotAdmissible, "relation path is not composable");
                ids.push_back(it->second);
            }
            std::size_t s = r.arrow_source[ids.front()], t = r.arrow_target[ids.back()];
            if (k == 0) {
                src = s;
                tgt = t;
            } else if (s != src || t != tgt) {
                throw Error(ErrorKind::NotAdmissible, "relation paths do not share endpoints");
            }
            min_len = std::min(min_len, ids.size());
            terms.emplace_back(term.coef, std::move(ids));
        }
        r.relations.push_back(std::move(terms));
        r.relation_source.push_back(src);
        r.relation_target.push_back(tgt);
        r.relation_min_length.push_back(min_len);
    }
    return r;
}

}  // namespace detail

/// kQ/I on a basis of paths. Works in kQ/J^{L+1} for L = 1, 2, ... and stops
/// at the first L for which every path of length L lies in the ideal; throws
/// NotFiniteDimensional if that never happens by max_path_length.
inline StructureAlgebra from_quiver(const QuiverPresentation& q, std::uint32_t p,
                                    std::size_t max_path_length = 16)
{
    auto rq = detail::resolve(q);
    const std::size_t nv = q.vertices.size();
    const std::size_t na = q.arrows.size();
    Fp f{p};

    std::vector<detail::Path> paths;
    std::map<std::pair<std::size_t, std::vector<std::size_t>>, std::size_t> index;
    auto add_path = [&](detail::Path path) {
        index.emplace(std::make_pair(path.source, path.arrows), paths.size());
        paths.push_back(std::move(path));
    };
    for (std::size_t v = 0; v < nv; ++v)
        add_path({v, v, {}});
    std::size_t level_begin = 0, level_end = paths.size();

    for (std::size_t len = 1; len <= max_path_length; ++len) {
        for (std::size_t i = level_begin; i < level_end; ++i)
            for (std::size_t a = 0; a < na; ++a)
                if (rq.arrow_source[a] == paths[i].target) {
                    detail::Path np = paths[i];
                    np.arrows.push_back(a);
                    np.target = rq.arrow_target[a];
                    add_path(std::move(np));
                }
        level_begin = level_end;
        level_end = paths.size();

        // Longer paths get earlier columns so ideal pivots land on them.
        const std::size_t np = paths.size();
        std::vector<std::size_t> col(np);
        {
            std::vector<std::size_t> order(np);
            for (std::size_t i = 0; i < np; ++i)
                order[i] = i;
            std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
                return paths[a].arrows.size() > paths[b].arrows.size();
            });
            for (std::size_t c = 0; c < np; ++c)
                col[order[c]] = c;
        }
        auto lookup = [&](std::size_t source, const std::vector<std::size_t>& arrows) -> std::optional<std::size_t> {
            auto it = index.find({source, arrows});
            if (it == index.end())
                return std::nullopt;
            return it->second;
        };

        EchelonBasis ideal(p, np);
        for (std::size_t r = 0; r < rq.relations.size(); ++r) {
            for (std::size_t u = 0; u < np; ++u) {
                if (paths[u].target != rq.relation_source[r])
                    continue;
                for (std::size_t w = 0; w < np; ++w) {
                    if (paths[w].source != rq.relation_target[r])
                        continue;
                    if (paths[u].arrows.size() + rq.relation_min_length[r] + paths[w].arrows.size() > len)
                        continue;
                    Vec v(np, 0);
                    for (const auto& [coef, arrows] : rq.relations[r]) {
                        std::vector<std::size_t> full = paths[u].arrows;
                        full.insert(full.end(), arrows.begin(), arrows.end());
                        full.insert(full.end(), paths[w].arrows.begin(), paths[w].arrows.end());
                        if (full.size() > len)
                            continue;
                        auto id = lookup(paths[u].source, full);
                        v[col[*id]] = f.add(v[col[*id]], f.from_int(coef));
                    }
                    ideal.add(std::move(v));
                }
            }
        }

        bool vanishes = true;
        for (std::size_t i = level_begin; i < level_end && vanishes; ++i) {
            Vec e(np, 0);
            e[col[i]] = 1;
            vanishes = ideal.contains(e);
        }
        if (!vanishes)
            continue;

        Matrix rref = ideal.matrix();
        std::vector<bool> pivot(np, false);
        std::vector<std::size_t> pivot_row(np, 0);
        for (std::size_t r = 0; r < ideal.rank(); ++r) {
            std::size_t c = 0;
            while (rref(r, c) == 0)
                ++c;
            pivot[c] = true;
            pivot_row[c] = r;
        }
        std::vector<std::size_t> basis;  // path indices, natural order
        std::vector<long> basis_pos(np, -1);
        for (std::size_t i = 0; i < np; ++i)
            if (!pivot[col[i]]) {
                basis_pos[i] = static_cast<long>(basis.size());
                basis.push_back(i);
            }
        const std::size_t n = basis.size();
        // Normal form of a single path as a combination of basis paths.
        auto normal_form = [&](std::size_t path) {
            std::vector<Term> out;
            std::size_t c = col[path];
            if (!pivot[c]) {
                out.push_back({static_cast<std::uint32_t>(basis_pos[path]), 1});
                return out;
            }
            auto row = rref.row(pivot_row[c]);
            for (std::size_t i = 0; i < np; ++i) {
                if (i == path || row[col[i]] == 0 || basis_pos[i] < 0)
                    continue;
                out.push_back({static_cast<std::uint32_t>(basis_pos[i]), f.neg(row[col[i]])});
            }
            std::sort(out.begin(), out.end(), [](const Term& a, const Term& b) { return a.index < b.index; });
            return out;
        };

        std::vector<std::string> labels;
        for (auto i : basis) {
            if (paths[i].arrows.empty()) {
                labels.push_back("e" + q.vertices[paths[i].source]);
            } else {
                std::string s;
                for (auto a : paths[i].arrows)
                    s += (s.empty() ? "" : "*") + q.arrows[a].name;
                labels.push_back(s);
            }
        }
        ProductTable t(n * n);
        for (std::size_t a = 0; a < n; ++a)
            for (std::size_t b = 0; b < n; ++b) {
                const auto& pa = paths[basis[a]];
                const auto& pb = paths[basis[b]];
                if (pa.target != pb.source)
                    continue;
                std::vector<std::size_t> full = pa.arrows;
                full.insert(full.end(), pb.arrows.begin(), pb.arrows.end());
                if (full.size() > len)
                    continue;
                t[a * n + b] = normal_form(*lookup(pa.source, full));
            }
        Vec unit(n, 0);
        std::vector<Vec> idem;
        Matrix rad(p, 0, n);
        for (std::size_t k = 0; k < n; ++k) {
            Vec e(n, 0);
            e[k] = 1;
            if (paths[basis[k]].arrows.empty()) {
                unit[k] = 1;
                idem.push_back(e);
            } else {
                rad.append_row(e);
            }
        }
        return StructureAlgebra(p, std::move(labels), std::move(t), std::move(unit), std::move(rad),
                                std::move(idem), q.vertices);
    }
    throw Error(ErrorKind::NotFiniteDimensional,
                "arrow ideal powers do not vanish by path length " + std::to_string(max_path_length));
}

}  // namespace syzygy
