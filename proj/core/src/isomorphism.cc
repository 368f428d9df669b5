#include <semicover/isomorphism.hh>

#include <algorithm>
#include <map>
#include <tuple>

using std::map;
using std::optional;
using std::pair;
using std::vector;

namespace semicover
{
    namespace
    {
        // neighbour -> number of parallel ordinary edges, sorted by neighbour
        using Multiplicities = vector<pair<VertexIndex, unsigned>>;

        struct Profile
        {
            vector<Multiplicities> neighbours;
            vector<unsigned> loops, semis;

            explicit Profile(const Multigraph & g) :
                neighbours(g.num_vertices()),
                loops(g.num_vertices()),
                semis(g.num_vertices())
            {
                vector<map<VertexIndex, unsigned>> counts(g.num_vertices());
                for (const auto & e : g.edges()) {
                    switch (e.kind) {
                        case EdgeKind::loop: ++loops[e.first]; break;
                        case EdgeKind::semi: ++semis[e.first]; break;
                        case EdgeKind::ordinary:
                            ++counts[e.first][e.second];
                            ++counts[e.second][e.first];
                            break;
                    }
                }
                for (VertexIndex v = 0; v < g.num_vertices(); ++v)
                    neighbours[v].assign(counts[v].begin(), counts[v].end());
            }

            auto multiplicity(VertexIndex v, VertexIndex w) const -> unsigned
            {
                auto & n = neighbours[v];
                auto i = std::lower_bound(n.begin(), n.end(), pair{w, 0u});
                return (i != n.end() && i->first == w) ? i->second : 0;
            }
        };

        using Signature = std::tuple<unsigned, vector<pair<unsigned, unsigned>>>;

        // Joint colour refinement; returns false when the colour histograms differ.
        auto refine(const Profile & pg, const Profile & ph, vector<unsigned> & cg, vector<unsigned> & ch) -> bool
        {
            map<std::tuple<unsigned, unsigned, unsigned>, unsigned> initial;
            auto seed = [&](const Profile & p, vector<unsigned> & c) {
                c.resize(p.loops.size());
                for (std::size_t v = 0; v < c.size(); ++v) {
                    unsigned deg = p.semis[v] + 2 * p.loops[v];
                    for (auto & [w, m] : p.neighbours[v])
                        deg += m;
                    c[v] = initial.emplace(std::tuple{deg, p.loops[v], p.semis[v]}, unsigned(initial.size())).first->second;
                }
            };
            seed(pg, cg);
            seed(ph, ch);

            std::size_t classes = initial.size();
            while (true) {
                map<Signature, unsigned> palette;
                auto step = [&](const Profile & p, const vector<unsigned> & old) {
                    vector<unsigned> next(old.size());
                    for (std::size_t v = 0; v < old.size(); ++v) {
                        vector<pair<unsigned, unsigned>> around;
                        for (auto & [w, m] : p.neighbours[v])
                            around.emplace_back(old[w], m);
                        std::sort(around.begin(), around.end());
                        next[v] = palette.emplace(Signature{old[v], std::move(around)}, unsigned(palette.size())).first->second;
                    }
                    return next;
                };
                auto ng = step(pg, cg);
                auto nh = step(ph, ch);
                cg = std::move(ng);
                ch = std::move(nh);
                if (palette.size() == classes)
                    break;
                classes = palette.size();
            }

            vector<unsigned> hist_g(classes + 1), hist_h(classes + 1);
            for (auto c : cg)
                ++hist_g[c];
            for (auto c : ch)
                ++hist_h[c];
            return hist_g == hist_h;
        }

        struct Search
        {
            const Profile & pg;
            const Profile & ph;
            const vector<unsigned> & cg;
            const vector<unsigned> & ch;
            vector<VertexIndex> order;
            vector<optional<VertexIndex>> forward, backward;

            auto consistent(VertexIndex v, VertexIndex x) const -> bool
            {
                for (auto & [w, m] : pg.neighbours[v])
                    if (forward[w] && ph.multiplicity(x, *forward[w]) != m)
                        return false;
                for (auto & [y, m] : ph.neighbours[x])
                    if (backward[y] && pg.multiplicity(v, *backward[y]) != m)
                        return false;
                return true;
            }

            auto run(std::size_t depth) -> bool
            {
                if (depth == order.size())
                    return true;
                auto v = order[depth];
                for (VertexIndex x = 0; x < backward.size(); ++x) {
                    if (backward[x] || ch[x] != cg[v] || ! consistent(v, x))
                        continue;
                    forward[v] = x;
                    backward[x] = v;
                    if (run(depth + 1))
                        return true;
                    forward[v].reset();
                    backward[x].reset();
                }
                return false;
            }
        };

        // Connected-first order: each vertex after the first of its component
        // has an already-ordered neighbour, rarest colours first.
        auto search_order(const Profile & pg, const vector<unsigned> & cg) -> vector<VertexIndex>
        {
            auto n = cg.size();
            map<unsigned, unsigned> frequency;
            for (auto c : cg)
                ++frequency[c];
            vector<VertexIndex> by_rarity(n);
            for (VertexIndex v = 0; v < n; ++v)
                by_rarity[v] = v;
            std::stable_sort(by_rarity.begin(), by_rarity.end(),
                [&](VertexIndex a, VertexIndex b) { return frequency[cg[a]] < frequency[cg[b]]; });

            vector<VertexIndex> order;
            vector<bool> placed(n, false);
            for (auto root : by_rarity) {
                if (placed[root])
                    continue;
                placed[root] = true;
                order.push_back(root);
                for (std::size_t i = order.size() - 1; i < order.size(); ++i)
                    for (auto & [w, m] : pg.neighbours[order[i]])
                        if (! placed[w]) {
                            placed[w] = true;
                            order.push_back(w);
                        }
            }
            return order;
        }
    }

    auto find_isomorphism(const Multigraph & g, const Multigraph & h) -> optional<Isomorphism>
    {
        if (g.num_vertices() != h.num_vertices() || g.num_edges() != h.num_edges())
            return std::nullopt;

        Profile pg(g), ph(h);
        vector<unsigned> cg, ch;
        if (! refine(pg, ph, cg, ch))
            return std::nullopt;

        Search search{pg, ph, cg, ch, search_order(pg, cg),
            vector<optional<VertexIndex>>(g.num_vertices()), vector<optional<VertexIndex>>(h.num_vertices())};
        if (! search.run(0))
            return std::nullopt;

        Isomorphism iso;
        iso.vertex_map.resize(g.num_vertices());
        for (VertexIndex v = 0; v < g.num_vertices(); ++v)
            iso.vertex_map[v] = *search.forward[v];

        // pair up edges of the same kind between corresponding endpoints, in id order
        map<std::tuple<EdgeKind, VertexIndex, VertexIndex>, vector<EdgeIndex>> pool;
        for (EdgeIndex f = 0; f < h.num_edges(); ++f) {
            const auto & e = h.edge(f);
            pool[{e.kind, std::min(e.first, e.second), std::max(e.first, e.second)}].push_back(f);
        }
        for (auto & [key, edges] : pool)
            std::reverse(edges.begin(), edges.end());
        iso.edge_map.resize(g.num_edges());
        for (EdgeIndex e = 0; e < g.num_edges(); ++e) {
            const auto & ed = g.edge(e);
            auto a = iso.vertex_map[ed.first], b = iso.vertex_map[ed.second];
            auto & bucket = pool[{ed.kind, std::min(a, b), std::max(a, b)}];
            if (bucket.empty())
                return std::nullopt;
            iso.edge_map[e] = bucket.back();
            bucket.pop_back();
        }
        return iso;
    }

    auto are_isomorphic(const Multigraph & g, const Multigraph & h) -> bool
    {
        return find_isomorphism(g, h).has_value();
    }

    auto verify_isomorphism(const Multigraph & g, const Multigraph & h, const Isomorphism & iso) -> bool
    {
        if (g.num_vertices() != h.num_vertices() || g.num_edges() != h.num_edges())
            return false;
        if (iso.vertex_map.size() != g.num_vertices() || iso.edge_map.size() != g.num_edges())
            return false;

        vector<bool> hit_v(h.num_vertices(), false), hit_e(h.num_edges(), false);
        for (auto x : iso.vertex_map) {
            if (x >= h.num_vertices() || hit_v[x])
                return false;
            hit_v[x] = true;
        }
        for (EdgeIndex e = 0; e < g.num_edges(); ++e) {
            auto f = iso.edge_map[e];
            if (f >= h.num_edges() || hit_e[f])
                return false;
            hit_e[f] = true;
            const auto & ge = g.edge(e);
            const auto & he = h.edge(f);
            if (ge.kind != he.kind)
                return false;
            auto a = iso.vertex_map[ge.first], b = iso.vertex_map[ge.second];
            if (! ((a == he.first && b == he.second) || (a == he.second && b == he.first)))
                return false;
        }
        return true;
    }
}
