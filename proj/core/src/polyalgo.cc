#include <semicover/constructions.hh>
#include <semicover/polyalgo.hh>

#include <algorithm>
#include <chrono>
#include <deque>
#include <limits>
#include <stdexcept>

using std::optional;
using std::vector;

namespace semicover
{
    auto to_string(PolyCase c) -> std::string_view
    {
        switch (c) {
            case PolyCase::F10_or_K2: return "F10_or_K2";
            case PolyCase::F01_loop: return "F01_loop";
            case PolyCase::F20_two_semis: return "F20_two_semis";
            case PolyCase::cycle_target: return "cycle_target";
            case PolyCase::open_path_target: return "open_path_target";
            case PolyCase::loop_plus_semi: return "loop_plus_semi";
            case PolyCase::none: return "none";
        }
        return "?";
    }

    namespace
    {
        auto count_kind(const Multigraph & g, EdgeKind k) -> unsigned
        {
            return unsigned(std::count_if(g.edges().begin(), g.edges().end(), [&](const Edge & e) { return e.kind == k; }));
        }

        auto elapsed(std::chrono::steady_clock::time_point start) -> double
        {
            return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        }
    }

    auto dispatch(const Multigraph & h) -> PolyCase
    {
        if (h.empty() || ! is_connected(h))
            throw DomainError("dispatch needs a connected target graph");
        auto degree = regular_degree(h);
        auto semis = count_kind(h, EdgeKind::semi), loops = count_kind(h, EdgeKind::loop);
        if (degree == 1u)
            return PolyCase::F10_or_K2;
        if (degree == 2u) {
            if (h.num_vertices() == 1)
                return loops == 1 ? PolyCase::F01_loop : PolyCase::F20_two_semis;
            return semis == 0 ? PolyCase::cycle_target : PolyCase::open_path_target;
        }
        if (degree == 3u && h.num_vertices() == 1 && semis == 1 && loops == 1)
            return PolyCase::loop_plus_semi;
        return PolyCase::none;
    }

    namespace
    {
        constexpr std::uint32_t no_dart = std::numeric_limits<std::uint32_t>::max();

        // Edge-ends of a graph of maximum degree 2. mate follows the edge
        // (a semi-edge end is its own mate), other stays at the vertex.
        struct Darts
        {
            vector<VertexIndex> vertex;
            vector<EdgeIndex> edge;
            vector<std::uint32_t> mate, other;
            vector<vector<std::uint32_t>> at;

            explicit Darts(const Multigraph & g) : at(g.num_vertices())
            {
                for (EdgeIndex e = 0; e < g.num_edges(); ++e) {
                    const auto & ed = g.edge(e);
                    auto add = [&](VertexIndex v) {
                        auto d = std::uint32_t(vertex.size());
                        vertex.push_back(v);
                        edge.push_back(e);
                        mate.push_back(d);
                        other.push_back(no_dart);
                        at[v].push_back(d);
                        return d;
                    };
                    if (ed.kind == EdgeKind::semi)
                        add(ed.first);
                    else {
                        auto a = add(ed.first), b = add(ed.second);
                        mate[a] = b;
                        mate[b] = a;
                    }
                }
                for (auto & ds : at)
                    if (ds.size() == 2) {
                        other[ds[0]] = ds[1];
                        other[ds[1]] = ds[0];
                    }
            }
        };

        // Tries to extend the assignment start -> image over the component of
        // start; writes into f and reports consistency (lists included).
        auto walk(const Darts & gd, const Darts & hd, std::uint32_t start, std::uint32_t image, const ListAssignment & lists,
            CoverMap & f, vector<std::uint32_t> & phi, vector<std::uint32_t> & touched) -> bool
        {
            std::deque<std::pair<std::uint32_t, std::uint32_t>> queue{{start, image}};
            while (! queue.empty()) {
                auto [d, delta] = queue.front();
                queue.pop_front();
                if (phi[d] != no_dart) {
                    if (phi[d] != delta)
                        return false;
                    continue;
                }
                phi[d] = delta;
                touched.push_back(d);
                auto v = gd.vertex[d];
                auto x = hd.vertex[delta];
                if (f.vmap[v] != unmapped_vertex && f.vmap[v] != x)
                    return false;
                if (! lists.allows_vertex(v, x))
                    return false;
                f.vmap[v] = x;
                auto e = gd.edge[d];
                auto t = hd.edge[delta];
                if (f.emap[e] != unmapped_edge && f.emap[e] != t)
                    return false;
                if (! lists.allows_edge(e, t))
                    return false;
                f.emap[e] = t;

                if ((gd.mate[d] == d) != (hd.mate[delta] == delta) && gd.mate[d] == d)
                    return false; // a semi-edge end can only land on a semi-edge end
                queue.emplace_back(gd.mate[d], hd.mate[delta]);
                if ((gd.other[d] == no_dart) != (hd.other[delta] == no_dart))
                    return false;
                if (gd.other[d] != no_dart)
                    queue.emplace_back(gd.other[d], hd.other[delta]);
            }
            return true;
        }

        auto decide_low_degree(const Multigraph & h, const Multigraph & g, const ListAssignment & lists, unsigned degree)
            -> SolveOutcome
        {
            auto start = std::chrono::steady_clock::now();
            SolveOutcome outcome;
            lists.validate(g, h);
            for (VertexIndex v = 0; v < g.num_vertices(); ++v)
                if (g.degree(v) != degree) {
                    outcome.status = Status::unsatisfiable;
                    outcome.stats.seconds = elapsed(start);
                    return outcome;
                }

            Darts gd(g), hd(h);
            auto f = CoverMap::unassigned(g);
            vector<std::uint32_t> phi(gd.vertex.size(), no_dart);
            auto components = connected_components(g);
            vector<vector<VertexIndex>> members;
            for (VertexIndex v = 0; v < g.num_vertices(); ++v) {
                if (components[v] >= members.size())
                    members.resize(components[v] + 1);
                members[components[v]].push_back(v);
            }

            for (auto & component : members) {
                auto root = component.front();
                if (gd.at[root].empty())
                    continue;

                // an open path is entered through a semi-edge end, a cycle anywhere
                std::uint32_t first = gd.at[root][0];
                for (auto v : component)
                    for (auto d : gd.at[v])
                        if (gd.mate[d] == d && gd.mate[first] != first)
                            first = d;

                // every candidate is examined; the first consistent one is kept
                vector<std::pair<VertexIndex, VertexIndex>> accepted_vertices;
                vector<std::pair<EdgeIndex, EdgeIndex>> accepted_edges;
                bool found = false;
                for (std::uint32_t delta = 0; delta < hd.vertex.size(); ++delta) {
                    if ((gd.mate[first] == first) && hd.mate[delta] != delta)
                        continue;
                    ++outcome.stats.candidates;
                    vector<std::uint32_t> touched;
                    bool ok = walk(gd, hd, first, delta, lists, f, phi, touched);
                    if (ok && ! found)
                        for (auto d : touched) {
                            accepted_vertices.emplace_back(gd.vertex[d], f.vmap[gd.vertex[d]]);
                            accepted_edges.emplace_back(gd.edge[d], f.emap[gd.edge[d]]);
                        }
                    for (auto d : touched) {
                        phi[d] = no_dart;
                        f.vmap[gd.vertex[d]] = unmapped_vertex;
                        f.emap[gd.edge[d]] = unmapped_edge;
                    }
                    found = found || ok;
                }
                if (! found) {
                    outcome.status = Status::unsatisfiable;
                    outcome.stats.seconds = elapsed(start);
                    return outcome;
                }
                for (auto [v, x] : accepted_vertices)
                    f.vmap[v] = x;
                for (auto [e, t] : accepted_edges)
                    f.emap[e] = t;
            }

            if (! verify_cover(g, h, f) || ! respects_lists(f, lists))
                throw std::logic_error("low-degree cover construction produced an invalid map");
            outcome.status = Status::satisfiable;
            outcome.witness = std::move(f);
            outcome.stats.seconds = elapsed(start);
            return outcome;
        }
    }

    auto decide_2regular(const Multigraph & h, const Multigraph & g, const ListAssignment & lists) -> SolveOutcome
    {
        auto c = dispatch(h);
        if (c != PolyCase::F01_loop && c != PolyCase::F20_two_semis && c != PolyCase::cycle_target
            && c != PolyCase::open_path_target)
            throw DomainError("decide_2regular needs a connected 2-regular target");
        return decide_low_degree(h, g, lists, 2);
    }

    auto decide_1regular(const Multigraph & h, const Multigraph & g, const ListAssignment & lists) -> SolveOutcome
    {
        if (dispatch(h) != PolyCase::F10_or_K2)
            throw DomainError("decide_1regular needs a connected 1-regular target");
        return decide_low_degree(h, g, lists, 1);
    }

    auto decide_poly(const Multigraph & h, const Multigraph & g, const ListAssignment & lists) -> SolveOutcome
    {
        switch (dispatch(h)) {
            case PolyCase::F10_or_K2: return decide_1regular(h, g, lists);
            case PolyCase::F01_loop:
            case PolyCase::F20_two_semis:
            case PolyCase::cycle_target:
            case PolyCase::open_path_target: return decide_2regular(h, g, lists);
            case PolyCase::loop_plus_semi: return decide_loop_semi(h, g, lists);
            case PolyCase::none: break;
        }
        throw DomainError("no polynomial-time procedure applies to this target");
    }

    auto maximum_matching(const Multigraph & g) -> Matching
    {
        auto n = g.num_vertices();
        vector<vector<VertexIndex>> adj(n);
        for (auto & e : g.edges())
            if (e.kind == EdgeKind::ordinary) {
                adj[e.first].push_back(e.second);
                adj[e.second].push_back(e.first);
            }

        constexpr auto none = std::numeric_limits<VertexIndex>::max();
        vector<VertexIndex> match(n, none), parent(n, none), base(n);
        vector<bool> used(n), blossom(n);

        auto lca = [&](VertexIndex a, VertexIndex b) {
            vector<bool> seen(n, false);
            while (true) {
                a = base[a];
                seen[a] = true;
                if (match[a] == none)
                    break;
                a = parent[match[a]];
            }
            while (true) {
                b = base[b];
                if (seen[b])
                    return b;
                b = parent[match[b]];
            }
        };

        auto mark_path = [&](VertexIndex v, VertexIndex b, VertexIndex child) {
            while (base[v] != b) {
                blossom[base[v]] = blossom[base[match[v]]] = true;
                parent[v] = child;
                child = match[v];
                v = parent[match[v]];
            }
        };

        auto find_path = [&](VertexIndex root) -> VertexIndex {
            std::fill(used.begin(), used.end(), false);
            std::fill(parent.begin(), parent.end(), none);
            for (VertexIndex i = 0; i < n; ++i)
                base[i] = i;
            used[root] = true;
            std::deque<VertexIndex> q{root};
            while (! q.empty()) {
                auto v = q.front();
                q.pop_front();
                for (auto to : adj[v]) {
                    if (base[v] == base[to] || match[v] == to)
                        continue;
                    if (to == root || (match[to] != none && parent[match[to]] != none)) {
                        auto b = lca(v, to);
                        std::fill(blossom.begin(), blossom.end(), false);
                        mark_path(v, b, to);
                        mark_path(to, b, v);
                        for (VertexIndex i = 0; i < n; ++i)
                            if (blossom[base[i]]) {
                                base[i] = b;
                                if (! used[i]) {
                                    used[i] = true;
                                    q.push_back(i);
                                }
                            }
                    }
                    else if (parent[to] == none) {
                        parent[to] = v;
                        if (match[to] == none)
                            return to;
                        used[match[to]] = true;
                        q.push_back(match[to]);
                    }
                }
            }
            return none;
        };

        for (VertexIndex v = 0; v < n; ++v)
            if (match[v] == none)
                for (auto w : adj[v])
                    if (match[w] == none) {
                        match[v] = w;
                        match[w] = v;
                        break;
                    }

        for (VertexIndex v = 0; v < n; ++v)
            if (match[v] == none) {
                auto end = find_path(v);
                while (end != none) {
                    auto pv = parent[end], next = match[pv];
                    match[end] = pv;
                    match[pv] = end;
                    end = next;
                }
            }

        Matching result;
        vector<bool> taken(n, false);
        for (EdgeIndex e = 0; e < g.num_edges(); ++e) {
            const auto & ed = g.edge(e);
            if (ed.kind == EdgeKind::ordinary && match[ed.first] == ed.second && ! taken[ed.first]) {
                taken[ed.first] = taken[ed.second] = true;
                result.edges.push_back(e);
            }
        }
        result.perfect = 2 * result.edges.size() == n;
        return result;
    }

    auto decide_loop_semi(const Multigraph & h, const Multigraph & g, const ListAssignment & lists,
        const LoopSemiOptions & options) -> SolveOutcome
    {
        if (dispatch(h) != PolyCase::loop_plus_semi)
            throw DomainError("decide_loop_semi needs a one-vertex target with one semi-edge and one loop");
        lists.validate(g, h);
        auto start = std::chrono::steady_clock::now();
        SolveOutcome outcome;
        auto reject = [&] {
            outcome.status = Status::unsatisfiable;
            outcome.stats.seconds = elapsed(start);
            return outcome;
        };

        EdgeIndex semi = h.edge(0).kind == EdgeKind::semi ? 0 : 1;
        EdgeIndex loop = 1 - semi;
        auto has_semi = [&](EdgeIndex e) { return lists.allows_edge(e, semi); };
        auto has_loop = [&](EdgeIndex e) { return lists.allows_edge(e, loop); };

        for (VertexIndex v = 0; v < g.num_vertices(); ++v)
            if (g.degree(v) != 3)
                return reject();

        // preprocessing (a)-(f)
        for (VertexIndex v = 0; v < g.num_vertices(); ++v)
            if (! lists.allows_vertex(v, 0))
                return reject();
        for (EdgeIndex e = 0; e < g.num_edges(); ++e)
            if (! has_semi(e) && ! has_loop(e))
                return reject();
        for (VertexIndex v = 0; v < g.num_vertices(); ++v) {
            unsigned semis = 0, ordinary_without_loop = 0;
            bool other_without_loop = false;
            for (auto e : g.incident(v)) {
                const auto & ed = g.edge(e);
                if (ed.kind == EdgeKind::semi)
                    ++semis;
                else if (! has_loop(e)) {
                    other_without_loop = true;
                    if (ed.kind == EdgeKind::ordinary)
                        ++ordinary_without_loop;
                }
            }
            if (semis >= 2 || (semis == 1 && other_without_loop) || ordinary_without_loop >= 2)
                return reject();
        }
        for (EdgeIndex e = 0; e < g.num_edges(); ++e) {
            const auto & ed = g.edge(e);
            if (ed.kind == EdgeKind::semi && ! has_semi(e))
                return reject();
            if (ed.kind == EdgeKind::loop && ! has_loop(e))
                return reject();
        }

        // the auxiliary graph; loops and semi-edges are never matching edges
        vector<bool> vertex_alive(g.num_vertices(), true), edge_alive(g.num_edges(), false);
        for (EdgeIndex e = 0; e < g.num_edges(); ++e)
            edge_alive[e] = g.edge(e).kind == EdgeKind::ordinary;

        bool changed = true;
        while (changed) {
            changed = false;
            for (auto step : options.order) {
                outcome.stats.nodes += step == AuxiliaryStep::delete_semi_vertices ? g.num_vertices() : g.num_edges();
                switch (step) {
                    case AuxiliaryStep::delete_semi_vertices:
                        for (VertexIndex v = 0; v < g.num_vertices(); ++v) {
                            if (! vertex_alive[v])
                                continue;
                            bool semi_here = false;
                            for (auto e : g.incident(v))
                                semi_here |= g.edge(e).kind == EdgeKind::semi;
                            if (semi_here) {
                                vertex_alive[v] = false;
                                changed = true;
                                for (auto e : g.incident(v))
                                    edge_alive[e] = false;
                            }
                        }
                        break;
                    case AuxiliaryStep::drop_edges_without_semi:
                        for (EdgeIndex e = 0; e < g.num_edges(); ++e)
                            if (edge_alive[e] && ! has_semi(e)) {
                                edge_alive[e] = false;
                                changed = true;
                            }
                        break;
                    case AuxiliaryStep::isolate_edges_without_loop:
                        for (EdgeIndex e = 0; e < g.num_edges(); ++e) {
                            if (! edge_alive[e] || has_loop(e))
                                continue;
                            const auto & ed = g.edge(e);
                            for (auto end : {ed.first, ed.second})
                                for (auto other : g.incident(end))
                                    if (other != e && edge_alive[other]) {
                                        edge_alive[other] = false;
                                        changed = true;
                                    }
                        }
                        break;
                }
            }
        }

        Multigraph aux;
        vector<VertexIndex> index(g.num_vertices(), 0);
        for (VertexIndex v = 0; v < g.num_vertices(); ++v)
            if (vertex_alive[v])
                index[v] = aux.add_vertex(g.vertex_id(v));
        vector<EdgeIndex> origin;
        for (EdgeIndex e = 0; e < g.num_edges(); ++e)
            if (edge_alive[e] && vertex_alive[g.edge(e).first] && vertex_alive[g.edge(e).second]) {
                aux.add_ordinary(g.edge(e).id, index[g.edge(e).first], index[g.edge(e).second]);
                origin.push_back(e);
            }

        auto matching = maximum_matching(aux);
        ++outcome.stats.candidates;
        if (! matching.perfect)
            return reject();

        CoverMap f;
        f.vmap.assign(g.num_vertices(), 0);
        f.emap.assign(g.num_edges(), loop);
        for (EdgeIndex e = 0; e < g.num_edges(); ++e)
            if (g.edge(e).kind == EdgeKind::semi)
                f.emap[e] = semi;
        for (auto m : matching.edges)
            f.emap[origin[m]] = semi;
        if (! verify_cover(g, h, f) || ! respects_lists(f, lists))
            throw std::logic_error("matching-based construction produced an invalid map");
        outcome.status = Status::satisfiable;
        outcome.witness = std::move(f);
        outcome.stats.seconds = elapsed(start);
        return outcome;
    }

    auto triple_edge_fast_path(const Multigraph & h, const Multigraph & g, const ListAssignment & lists)
        -> optional<SolveOutcome>
    {
        if (h.num_vertices() != 2 || h.num_edges() != 3 || regular_degree(h) != 3u || ! is_bipartite(h))
            return std::nullopt;
        if (! lists.is_full())
            return std::nullopt;
        auto sides = is_bipartite(g);
        if (! sides || (! g.empty() && regular_degree(g) != 3u))
            return std::nullopt;

        auto start = std::chrono::steady_clock::now();
        auto colouring = proper_edge_coloring(g, 3);
        if (! colouring)
            throw std::logic_error("bipartite cubic graph without a 3-edge-colouring");
        auto a = h.edge(0).first;
        CoverMap f;
        for (VertexIndex v = 0; v < g.num_vertices(); ++v)
            f.vmap.push_back(sides->side[v] == 0 ? a : 1 - a);
        for (EdgeIndex e = 0; e < g.num_edges(); ++e)
            f.emap.push_back(colouring->colour[e]);
        SolveOutcome outcome;
        outcome.status = Status::satisfiable;
        outcome.witness = std::move(f);
        outcome.stats.candidates = 1;
        outcome.stats.seconds = elapsed(start);
        return outcome;
    }
}
