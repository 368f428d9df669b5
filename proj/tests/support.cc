#include "support.hh"

#include <algorithm>
#include <numeric>
#include <string>

using std::string;
using std::vector;

namespace semicover::testing
{
    namespace
    {
        auto permutation(unsigned n, std::mt19937 & rng) -> vector<unsigned>
        {
            vector<unsigned> p(n);
            std::iota(p.begin(), p.end(), 0);
            std::shuffle(p.begin(), p.end(), rng);
            return p;
        }

        auto involution(unsigned n, std::mt19937 & rng) -> vector<unsigned>
        {
            auto order = permutation(n, rng);
            vector<unsigned> inv(n);
            std::iota(inv.begin(), inv.end(), 0);
            std::bernoulli_distribution pair_up(0.6);
            for (unsigned i = 0; i + 1 < n; i += 2)
                if (pair_up(rng)) {
                    inv[order[i]] = order[i + 1];
                    inv[order[i + 1]] = order[i];
                }
            return inv;
        }
    }

    auto random_lift(const Multigraph & h, unsigned n, std::mt19937 & rng) -> Lift
    {
        Lift out;
        auto & g = out.graph;
        auto name = [&](VertexIndex x, unsigned i) { return VertexIndex(x * n + i); };
        for (VertexIndex x = 0; x < h.num_vertices(); ++x)
            for (unsigned i = 0; i < n; ++i) {
                g.add_vertex(h.vertex_id(x) + "." + std::to_string(i));
                out.projection.vmap.push_back(x);
            }
        for (EdgeIndex t = 0; t < h.num_edges(); ++t) {
            const auto & te = h.edge(t);
            auto add = [&](const string & suffix, EdgeKind kind, VertexIndex a, VertexIndex b) {
                g.add_edge(te.id + "." + suffix, kind, a, b);
                out.projection.emap.push_back(t);
            };
            switch (te.kind) {
                case EdgeKind::ordinary: {
                    auto p = permutation(n, rng);
                    for (unsigned i = 0; i < n; ++i)
                        add(std::to_string(i), EdgeKind::ordinary, name(te.first, i), name(te.second, p[i]));
                    break;
                }
                case EdgeKind::loop: {
                    auto p = permutation(n, rng);
                    for (unsigned i = 0; i < n; ++i) {
                        if (p[i] == i)
                            add(std::to_string(i), EdgeKind::loop, name(te.first, i), name(te.first, i));
                        else
                            add(std::to_string(i), EdgeKind::ordinary, name(te.first, i), name(te.first, p[i]));
                    }
                    break;
                }
                case EdgeKind::semi: {
                    auto p = involution(n, rng);
                    for (unsigned i = 0; i < n; ++i) {
                        if (p[i] == i)
                            add(std::to_string(i), EdgeKind::semi, name(te.first, i), name(te.first, i));
                        else if (i < p[i])
                            add(std::to_string(i), EdgeKind::ordinary, name(te.first, i), name(te.first, p[i]));
                    }
                    break;
                }
            }
        }
        return out;
    }

    auto random_cubic(unsigned n, bool allow_specials, std::mt19937 & rng) -> Multigraph
    {
        Multigraph g;
        for (unsigned i = 0; i < n; ++i)
            g.add_vertex("v" + std::to_string(i));
        vector<unsigned> free(n, 3);
        unsigned next = 0;
        auto id = [&] { return "e" + std::to_string(next++); };
        std::uniform_int_distribution<int> coin(0, 9);
        if (allow_specials)
            for (VertexIndex v = 0; v < n; ++v) {
                auto r = coin(rng);
                if (r == 0) {
                    g.add_loop(id(), v);
                    free[v] -= 2;
                }
                else if (r <= 2) {
                    g.add_semi(id(), v);
                    --free[v];
                }
            }
        vector<VertexIndex> stubs;
        for (VertexIndex v = 0; v < n; ++v)
            for (unsigned i = 0; i < free[v]; ++i)
                stubs.push_back(v);
        std::shuffle(stubs.begin(), stubs.end(), rng);
        std::size_t i = 0;
        for (; i + 1 < stubs.size(); i += 2) {
            if (stubs[i] != stubs[i + 1])
                g.add_ordinary(id(), stubs[i], stubs[i + 1]);
            else if (allow_specials)
                g.add_loop(id(), stubs[i]);
            else {
                g.add_semi(id(), stubs[i]);
                g.add_semi(id(), stubs[i]);
            }
        }
        if (i < stubs.size())
            g.add_semi(id(), stubs[i]);
        return g;
    }

    auto random_simple_cubic(unsigned n, std::mt19937 & rng) -> Multigraph
    {
        while (true) {
            vector<VertexIndex> stubs;
            for (VertexIndex v = 0; v < n; ++v)
                for (int i = 0; i < 3; ++i)
                    stubs.push_back(v);
            std::shuffle(stubs.begin(), stubs.end(), rng);
            bool ok = true;
            vector<std::pair<VertexIndex, VertexIndex>> pairs;
            for (std::size_t i = 0; ok && i + 1 < stubs.size(); i += 2) {
                auto a = std::min(stubs[i], stubs[i + 1]), b = std::max(stubs[i], stubs[i + 1]);
                if (a == b || std::find(pairs.begin(), pairs.end(), std::pair{a, b}) != pairs.end())
                    ok = false;
                pairs.emplace_back(a, b);
            }
            if (! ok)
                continue;
            Multigraph g;
            for (unsigned i = 0; i < n; ++i)
                g.add_vertex("v" + std::to_string(i));
            unsigned next = 0;
            for (auto [a, b] : pairs)
                g.add_ordinary("e" + std::to_string(next++), a, b);
            return g;
        }
    }

    auto random_bipartite_cubic(unsigned half, std::mt19937 & rng) -> Multigraph
    {
        Multigraph g;
        for (unsigned i = 0; i < half; ++i)
            g.add_vertex("a" + std::to_string(i));
        for (unsigned i = 0; i < half; ++i)
            g.add_vertex("b" + std::to_string(i));
        unsigned next = 0;
        for (int round = 0; round < 3; ++round) {
            auto p = permutation(half, rng);
            for (unsigned i = 0; i < half; ++i)
                g.add_ordinary("e" + std::to_string(next++), i, half + p[i]);
        }
        return g;
    }

    auto random_lists(const Multigraph & g, const Multigraph & h, int density, std::mt19937 & rng) -> ListAssignment
    {
        ListAssignment lists;
        if (density == 0)
            return lists;
        std::bernoulli_distribution keep(0.5), constrain(0.6);
        auto pick = [&](std::size_t n) {
            vector<std::uint32_t> out;
            if (density == 2) {
                if (n > 0)
                    out.push_back(std::uniform_int_distribution<std::uint32_t>(0, std::uint32_t(n - 1))(rng));
            }
            else
                for (std::uint32_t i = 0; i < n; ++i)
                    if (keep(rng))
                        out.push_back(i);
            return out;
        };
        for (VertexIndex v = 0; v < g.num_vertices(); ++v)
            if (constrain(rng))
                lists.set_vertex(v, pick(h.num_vertices()));
        for (EdgeIndex e = 0; e < g.num_edges(); ++e)
            if (constrain(rng))
                lists.set_edge(e, pick(h.num_edges()));
        return lists;
    }

    auto brute_force(const Multigraph & g, const Multigraph & h, bool partial,
        const std::function<void(const CoverMap &)> & found) -> void
    {
        CoverMap f = CoverMap::unassigned(g);
        if (h.num_vertices() == 0) {
            if (g.num_vertices() == 0)
                found(f);
            return;
        }
        std::fill(f.vmap.begin(), f.vmap.end(), 0);
        std::fill(f.emap.begin(), f.emap.end(), 0);
        auto advance = [](auto & digits, std::size_t base) {
            for (auto & d : digits) {
                if (++d < base)
                    return true;
                d = 0;
            }
            return false;
        };
        do {
            if (h.num_edges() == 0) {
                if (g.num_edges() == 0 && (partial ? verify_partial_cover(g, h, f) : verify_cover(g, h, f)))
                    found(f);
                continue;
            }
            std::fill(f.emap.begin(), f.emap.end(), 0);
            do {
                if (partial ? bool(verify_partial_cover(g, h, f)) : bool(verify_cover(g, h, f)))
                    found(f);
            } while (advance(f.emap, h.num_edges()));
        } while (advance(f.vmap, h.num_vertices()));
    }

    auto brute_force_count(const Multigraph & g, const Multigraph & h, bool partial) -> std::size_t
    {
        std::size_t count = 0;
        brute_force(g, h, partial, [&](const CoverMap &) { ++count; });
        return count;
    }

    auto relabel(const Multigraph & g, std::mt19937 & rng) -> Multigraph
    {
        auto vp = permutation(unsigned(g.num_vertices()), rng);
        auto ep = permutation(unsigned(g.num_edges()), rng);
        Multigraph out;
        vector<VertexIndex> where(g.num_vertices());
        for (unsigned i = 0; i < vp.size(); ++i)
            where[vp[i]] = out.add_vertex("r" + std::to_string(vp[i]) + "_" + g.vertex_id(vp[i]));
        for (auto e : ep) {
            const auto & ed = g.edge(e);
            out.add_edge("r_" + ed.id, ed.kind, where[ed.first], where[ed.second]);
        }
        return out;
    }

    auto random_2regular(unsigned n, std::mt19937 & rng) -> Multigraph
    {
        Multigraph g;
        unsigned next_edge = 0;
        auto edge_id = [&] { return "f" + std::to_string(next_edge++); };
        unsigned placed = 0;
        while (placed < n) {
            unsigned len = std::uniform_int_distribution<unsigned>(1, n - placed)(rng);
            std::vector<VertexIndex> vs;
            for (unsigned i = 0; i < len; ++i)
                vs.push_back(g.add_vertex("v" + std::to_string(placed + i)));
            placed += len;
            for (unsigned i = 0; i + 1 < len; ++i)
                g.add_ordinary(edge_id(), vs[i], vs[i + 1]);
            if (rng() % 2) {
                if (len == 1)
                    g.add_loop(edge_id(), vs[0]);
                else
                    g.add_ordinary(edge_id(), vs[len - 1], vs[0]);
            }
            else {
                g.add_semi(edge_id(), vs[0]);
                g.add_semi(edge_id(), vs[len - 1]);
            }
        }
        return g;
    }
}
