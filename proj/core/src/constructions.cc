#include <semicover/constructions.hh>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <utility>

using std::optional;
using std::string;
using std::vector;

namespace semicover
{
    namespace
    {
        constexpr auto no_edge = std::numeric_limits<EdgeIndex>::max();

        auto check_colourable_shape(const Multigraph & g, unsigned k, const char * what) -> void
        {
            if (k == 0)
                throw DomainError(string(what) + " needs k >= 1");
            if (g.has_loops_or_semi_edges())
                throw DomainError(string(what) + " needs a graph without loops or semi-edges");
            for (VertexIndex v = 0; v < g.num_vertices(); ++v)
                if (g.degree(v) != k)
                    throw DomainError(string(what) + " needs a " + std::to_string(k) + "-regular graph, but vertex "
                        + g.vertex_id(v) + " has degree " + std::to_string(g.degree(v)));
        }

        // Perfect matching in the subgraph of active edges of a regular
        // bipartite graph, by augmenting paths (iterative, so deep paths are fine).
        auto bipartite_perfect_matching(const Multigraph & g, const Bipartition & bp, const vector<bool> & active)
            -> vector<EdgeIndex>
        {
            vector<EdgeIndex> mate(g.num_vertices(), no_edge);
            vector<unsigned> stamp(g.num_vertices(), 0);
            unsigned current = 0;

            vector<std::pair<VertexIndex, std::size_t>> stack;
            vector<EdgeIndex> path;
            for (auto s : bp.part[0]) {
                if (mate[s] != no_edge)
                    continue;

                // greedy first
                for (auto e : g.incident(s)) {
                    auto w = g.other_end(e, s);
                    if (active[e] && mate[w] == no_edge) {
                        mate[s] = mate[w] = e;
                        break;
                    }
                }
                if (mate[s] != no_edge)
                    continue;

                ++current;
                stack.assign(1, {s, 0});
                path.clear();
                bool augmented = false;
                while (! stack.empty() && ! augmented) {
                    auto & [v, pos] = stack.back();
                    auto inc = g.incident(v);
                    if (pos == inc.size()) {
                        stack.pop_back();
                        continue;
                    }
                    auto e = inc[pos++];
                    if (! active[e] || e == mate[v])
                        continue;
                    auto w = g.other_end(e, v);
                    if (stamp[w] == current)
                        continue;
                    stamp[w] = current;
                    path.resize(stack.size() - 1);
                    path.push_back(e);
                    if (mate[w] == no_edge) {
                        for (std::size_t i = 0; i < path.size(); ++i) {
                            auto left = stack[i].first;
                            auto right = g.other_end(path[i], left);
                            mate[left] = path[i];
                            mate[right] = path[i];
                        }
                        augmented = true;
                    }
                    else
                        stack.emplace_back(g.other_end(mate[w], w), 0);
                }
                if (! augmented)
                    return {};
            }

            vector<EdgeIndex> result;
            for (auto v : bp.part[0])
                result.push_back(mate[v]);
            return result;
        }

        class ColouringSearch
        {
        public:
            ColouringSearch(const Multigraph & g, unsigned k) :
                _g(g), _k(k), _used(g.num_vertices(), 0), _colour(g.num_edges(), 0)
            {
                // breadth-first edge order keeps constrained edges together
                vector<bool> seen_edge(g.num_edges(), false), seen_vertex(g.num_vertices(), false);
                for (VertexIndex r = 0; r < g.num_vertices(); ++r) {
                    if (seen_vertex[r])
                        continue;
                    vector<VertexIndex> queue{r};
                    seen_vertex[r] = true;
                    for (std::size_t i = 0; i < queue.size(); ++i)
                        for (auto e : g.incident(queue[i])) {
                            if (! seen_edge[e]) {
                                seen_edge[e] = true;
                                _order.push_back(e);
                            }
                            auto w = g.other_end(e, queue[i]);
                            if (! seen_vertex[w]) {
                                seen_vertex[w] = true;
                                queue.push_back(w);
                            }
                        }
                }
            }

            auto run() -> optional<EdgeColoring>
            {
                if (! search(0))
                    return std::nullopt;
                return EdgeColoring{_colour, _k};
            }

        private:
            const Multigraph & _g;
            unsigned _k;
            vector<std::uint64_t> _used;
            vector<unsigned> _colour;
            vector<EdgeIndex> _order;

            auto search(std::size_t i) -> bool
            {
                if (i == _order.size())
                    return true;
                auto e = _order[i];
                const auto & ed = _g.edge(e);
                auto blocked = _used[ed.first] | _used[ed.second];
                // the first edge may take colour 0 without loss of generality
                unsigned limit = i == 0 ? 1 : _k;
                for (unsigned c = 0; c < limit; ++c) {
                    auto bit = std::uint64_t{1} << c;
                    if (blocked & bit)
                        continue;
                    _used[ed.first] |= bit;
                    _used[ed.second] |= bit;
                    _colour[e] = c;
                    if (search(i + 1))
                        return true;
                    _used[ed.first] &= ~bit;
                    _used[ed.second] &= ~bit;
                }
                return false;
            }
        };

        auto tuple_id(const vector<ColoredFactor> & factors, const vector<VertexIndex> & digits) -> string
        {
            string id = "(";
            for (std::size_t i = 0; i < digits.size(); ++i) {
                if (i > 0)
                    id += ',';
                id += factors[i].graph.vertex_id(digits[i]);
            }
            id += ')';
            return id;
        }

        auto factorial(unsigned k) -> std::size_t
        {
            std::size_t r = 1;
            for (unsigned i = 2; i <= k; ++i)
                r *= i;
            return r;
        }

        auto has_parallel_edges(const Multigraph & g) -> bool
        {
            for (VertexIndex v = 0; v < g.num_vertices(); ++v) {
                vector<VertexIndex> nbrs;
                for (auto e : g.incident(v))
                    nbrs.push_back(g.other_end(e, v));
                std::sort(nbrs.begin(), nbrs.end());
                if (std::adjacent_find(nbrs.begin(), nbrs.end()) != nbrs.end())
                    return true;
            }
            return false;
        }

        auto check_multicover_target(const Multigraph & h) -> unsigned
        {
            if (h.empty() || ! is_connected(h))
                throw DomainError("multicover needs a connected non-empty target");
            if (h.has_loops_or_semi_edges())
                throw DomainError("multicover needs a target without loops or semi-edges");
            auto k = regular_degree(h);
            if (! k || *k == 0)
                throw DomainError("multicover needs a k-regular target with k >= 1");
            return *k;
        }
    }

    auto is_proper(const Multigraph & g, const EdgeColoring & c) -> bool
    {
        if (c.colour.size() != g.num_edges() || c.k > 64)
            return false;
        vector<std::uint64_t> used(g.num_vertices(), 0);
        for (EdgeIndex e = 0; e < g.num_edges(); ++e) {
            const auto & ed = g.edge(e);
            if (ed.kind != EdgeKind::ordinary || c.colour[e] >= c.k)
                return false;
            auto bit = std::uint64_t{1} << c.colour[e];
            if ((used[ed.first] & bit) || (used[ed.second] & bit))
                return false;
            used[ed.first] |= bit;
            used[ed.second] |= bit;
        }
        return true;
    }

    auto proper_edge_coloring(const Multigraph & g, unsigned k) -> optional<EdgeColoring>
    {
        check_colourable_shape(g, k, "proper_edge_coloring");
        if (k > 64)
            throw DomainError("proper_edge_coloring supports at most 64 colours");

        if (auto bp = is_bipartite(g)) {
            EdgeColoring result{vector<unsigned>(g.num_edges(), 0), k};
            vector<bool> active(g.num_edges(), true);
            for (unsigned c = 0; c < k; ++c) {
                auto matching = bipartite_perfect_matching(g, *bp, active);
                if (matching.size() != bp->part[0].size())
                    throw std::logic_error("regular bipartite graph without a perfect matching");
                for (auto e : matching) {
                    result.colour[e] = c;
                    active[e] = false;
                }
            }
            return result;
        }

        return ColouringSearch(g, k).run();
    }

    auto permute_colours(const EdgeColoring & c, const vector<unsigned> & perm) -> EdgeColoring
    {
        if (perm.size() != c.k)
            throw DomainError("colour permutation has the wrong length");
        EdgeColoring result{c.colour, c.k};
        for (auto & x : result.colour)
            x = perm.at(x);
        return result;
    }

    auto latin_square_factor(unsigned k) -> ColoredFactor
    {
        ColoredFactor f;
        for (unsigned i = 1; i <= k; ++i)
            f.graph.add_vertex("a" + std::to_string(i));
        for (unsigned i = 1; i <= k; ++i)
            f.graph.add_vertex("b" + std::to_string(i));
        f.coloring.k = k;
        for (unsigned i = 0; i < k; ++i)
            for (unsigned j = 0; j < k; ++j) {
                f.graph.add_ordinary("a" + std::to_string(i + 1) + "b" + std::to_string(j + 1), i, k + j);
                f.coloring.colour.push_back((i + j) % k);
            }
        return f;
    }

    auto colored_product(const vector<ColoredFactor> & factors) -> ProductResult
    {
        if (factors.empty())
            throw DomainError("colored_product needs at least one factor");
        unsigned k = factors.front().coloring.k;
        for (const auto & f : factors) {
            if (f.coloring.k != k)
                throw DomainError("colored_product factors use different colour counts");
            check_colourable_shape(f.graph, k, "colored_product");
            if (! is_proper(f.graph, f.coloring))
                throw DomainError("colored_product factor colouring is not proper");
        }

        auto m = factors.size();
        // by_colour[i][v][c]: the colour-c edge of factor i at v
        vector<vector<vector<EdgeIndex>>> by_colour(m);
        std::size_t total = 1;
        for (std::size_t i = 0; i < m; ++i) {
            const auto & g = factors[i].graph;
            by_colour[i].assign(g.num_vertices(), vector<EdgeIndex>(k, no_edge));
            for (EdgeIndex e = 0; e < g.num_edges(); ++e) {
                const auto & ed = g.edge(e);
                by_colour[i][ed.first][factors[i].coloring.colour[e]] = e;
                by_colour[i][ed.second][factors[i].coloring.colour[e]] = e;
            }
            if (total > std::numeric_limits<VertexIndex>::max() / std::max<std::size_t>(1, g.num_vertices()))
                throw DomainError("colored_product is too large");
            total *= g.num_vertices();
        }

        ProductResult result;
        result.coloring.k = k;
        result.projections.resize(m);
        for (auto & p : result.projections) {
            p.vmap.reserve(total);
            p.emap.reserve(total * k / 2);
        }

        vector<std::size_t> radix(m);
        for (std::size_t i = m; i-- > 0;)
            radix[i] = i + 1 == m ? 1 : radix[i + 1] * factors[i + 1].graph.num_vertices();

        auto digits_of = [&](std::size_t index) {
            vector<VertexIndex> d(m);
            for (std::size_t i = 0; i < m; ++i)
                d[i] = VertexIndex(index / radix[i] % factors[i].graph.num_vertices());
            return d;
        };

        if (total == 0)
            return result;

        for (std::size_t index = 0; index < total; ++index) {
            auto d = digits_of(index);
            result.product.add_vertex(tuple_id(factors, d));
            for (std::size_t i = 0; i < m; ++i)
                result.projections[i].vmap.push_back(d[i]);
        }

        for (std::size_t index = 0; index < total; ++index) {
            auto d = digits_of(index);
            for (unsigned c = 0; c < k; ++c) {
                std::size_t partner = 0;
                for (std::size_t i = 0; i < m; ++i) {
                    auto e = by_colour[i][d[i]][c];
                    partner += factors[i].graph.other_end(e, d[i]) * radix[i];
                }
                if (partner <= index)
                    continue;
                auto u = VertexIndex(index), w = VertexIndex(partner);
                result.product.add_ordinary("c" + std::to_string(c + 1) + ":" + result.product.vertex_id(u) + "-"
                        + result.product.vertex_id(w),
                    u, w);
                result.coloring.colour.push_back(c);
                for (std::size_t i = 0; i < m; ++i)
                    result.projections[i].emap.push_back(by_colour[i][d[i]][c]);
            }
        }
        return result;
    }

    auto demand_of(const Multigraph & g, VertexIndex u, const CoverMap & f) -> Demand
    {
        Demand d{f.vmap.at(u), {}};
        for (auto e : g.incident(u))
            d.edges.push_back(f.emap.at(e));
        return d;
    }

    auto all_demands(const Multigraph & h, unsigned degree) -> vector<Demand>
    {
        vector<Demand> result;
        for (VertexIndex x = 0; x < h.num_vertices(); ++x) {
            auto inc = h.incident(x);
            if (h.degree(x) != degree)
                continue;
            if (std::any_of(inc.begin(), inc.end(), [&](EdgeIndex e) { return h.edge(e).kind == EdgeKind::loop; }))
                throw DomainError("all_demands does not handle loops");
            vector<EdgeIndex> edges(inc.begin(), inc.end());
            std::sort(edges.begin(), edges.end());
            do
                result.push_back(Demand{x, edges});
            while (std::next_permutation(edges.begin(), edges.end()));
        }
        return result;
    }

    auto multicover_size_estimate(const Multigraph & h) -> string
    {
        auto k = check_multicover_target(h);
        auto copies = h.num_vertices() * factorial(k);
        auto estimate = std::to_string(h.num_vertices()) + "^" + std::to_string(copies);
        if (has_parallel_edges(h))
            estimate += "*" + std::to_string(2 * k);
        return estimate;
    }

    auto multicover(const Multigraph & h, const MulticoverOptions & options) -> Multicover
    {
        auto k = check_multicover_target(h);
        if (k > 12)
            throw DomainError("multicover supports k <= 12");
        auto colouring = proper_edge_coloring(h, k);
        if (! colouring)
            throw DomainError("multicover needs a k-edge-colourable target");

        if (options.plan == MulticoverPlan::self)
            return Multicover{h, 0, *colouring, {}, h.num_vertices()};

        auto n = h.num_vertices();
        auto copies = n * factorial(k);
        bool parallel = has_parallel_edges(h);
        double log_size = double(copies) * std::log10(double(n)) + (parallel ? std::log10(2.0 * k) : 0.0);
        if (log_size > std::log10(std::max(1.0, options.max_vertices)))
            throw SizeGuardExceeded("the default multicover plan would have " + multicover_size_estimate(h)
                + " vertices, above the bound of " + std::to_string(std::uint64_t(options.max_vertices)));

        vector<unsigned> perm(k);
        std::iota(perm.begin(), perm.end(), 0u);
        vector<vector<unsigned>> perms;
        do
            perms.push_back(perm);
        while (std::next_permutation(perm.begin(), perm.end()));

        vector<ColoredFactor> factors;
        vector<VertexIndex> u_digits;
        for (VertexIndex x = 0; x < n; ++x)
            for (const auto & p : perms) {
                factors.push_back(ColoredFactor{h, permute_colours(*colouring, p)});
                u_digits.push_back(x);
            }
        std::size_t h_factors = factors.size();
        if (parallel) {
            factors.push_back(latin_square_factor(k));
            u_digits.push_back(0);
        }

        auto product = colored_product(factors);
        std::size_t u_index = 0;
        for (std::size_t i = 0; i < factors.size(); ++i)
            u_index = u_index * factors[i].graph.num_vertices() + u_digits[i];

        auto component = connected_components(product.product);
        auto wanted = component[u_index];
        vector<VertexIndex> vertex_map(product.product.num_vertices(), unmapped_vertex);

        Multicover result;
        result.product_vertices = product.product.num_vertices();
        result.coloring.k = k;
        result.projections.resize(h_factors);
        for (VertexIndex v = 0; v < product.product.num_vertices(); ++v)
            if (component[v] == wanted) {
                vertex_map[v] = result.graph.add_vertex(product.product.vertex_id(v));
                for (std::size_t i = 0; i < h_factors; ++i)
                    result.projections[i].vmap.push_back(product.projections[i].vmap[v]);
            }
        for (EdgeIndex e = 0; e < product.product.num_edges(); ++e) {
            const auto & ed = product.product.edge(e);
            if (component[ed.first] != wanted)
                continue;
            result.graph.add_ordinary(ed.id, vertex_map[ed.first], vertex_map[ed.second]);
            result.coloring.colour.push_back(product.coloring.colour[e]);
            for (std::size_t i = 0; i < h_factors; ++i)
                result.projections[i].emap.push_back(product.projections[i].emap[e]);
        }
        result.u = vertex_map[u_index];
        return result;
    }

    auto split_vertex(const Multigraph & g, VertexIndex u) -> SplitGadget
    {
        if (u >= g.num_vertices())
            throw DomainError("split_vertex: no such vertex");
        for (auto e : g.incident(u))
            if (g.edge(e).kind != EdgeKind::ordinary)
                throw DomainError("split_vertex: vertex " + g.vertex_id(u) + " has a loop or semi-edge");

        SplitGadget s;
        s.origin = g.vertex_id(u);
        vector<VertexIndex> vertex_map(g.num_vertices(), unmapped_vertex);
        for (VertexIndex v = 0; v < g.num_vertices(); ++v)
            if (v != u)
                vertex_map[v] = s.graph.add_vertex(g.vertex_id(v));

        vector<VertexIndex> pendant_of(g.num_edges(), unmapped_vertex);
        for (auto e : g.incident(u)) {
            auto id = s.origin + "_" + g.edge(e).id;
            while (s.graph.find_vertex(id) || g.find_vertex(id))
                id += "'";
            pendant_of[e] = s.graph.add_vertex(id);
            s.pendant_vertices.push_back(pendant_of[e]);
        }

        for (EdgeIndex e = 0; e < g.num_edges(); ++e) {
            const auto & ed = g.edge(e);
            if (ed.first == u || ed.second == u) {
                auto other = g.other_end(e, u);
                s.graph.add_ordinary(ed.id, pendant_of[e], vertex_map[other]);
            }
            else
                s.graph.add_edge(ed.id, ed.kind, vertex_map[ed.first], vertex_map[ed.second]);
        }
        s.pendant_edges.assign(g.incident(u).begin(), g.incident(u).end());
        return s;
    }

    auto merge_pendants(const SplitGadget & s) -> Multigraph
    {
        const auto & g = s.graph;
        vector<bool> pendant(g.num_vertices(), false);
        for (auto p : s.pendant_vertices)
            pendant[p] = true;

        Multigraph result;
        vector<VertexIndex> vertex_map(g.num_vertices(), unmapped_vertex);
        for (VertexIndex v = 0; v < g.num_vertices(); ++v)
            if (! pendant[v])
                vertex_map[v] = result.add_vertex(g.vertex_id(v));
        auto merged = result.add_vertex(s.origin);
        for (auto p : s.pendant_vertices)
            vertex_map[p] = merged;
        for (const auto & ed : g.edges())
            result.add_edge(ed.id, ed.kind, vertex_map[ed.first], vertex_map[ed.second]);
        return result;
    }

    auto times_k2(const Multigraph & g) -> Multigraph
    {
        Multigraph result;
        for (VertexIndex v = 0; v < g.num_vertices(); ++v) {
            result.add_vertex("(" + g.vertex_id(v) + ",b)");
            result.add_vertex("(" + g.vertex_id(v) + ",w)");
        }
        for (const auto & ed : g.edges()) {
            auto b = [](VertexIndex v) { return 2 * v; };
            auto w = [](VertexIndex v) { return 2 * v + 1; };
            switch (ed.kind) {
                case EdgeKind::ordinary:
                    result.add_ordinary("(" + ed.id + ",b)", b(ed.first), w(ed.second));
                    result.add_ordinary("(" + ed.id + ",w)", w(ed.first), b(ed.second));
                    break;
                case EdgeKind::loop:
                    result.add_ordinary("(" + ed.id + ",b)", b(ed.first), w(ed.first));
                    result.add_ordinary("(" + ed.id + ",w)", b(ed.first), w(ed.first));
                    break;
                case EdgeKind::semi:
                    result.add_ordinary("(" + ed.id + ",bw)", b(ed.first), w(ed.first));
                    break;
            }
        }
        return result;
    }

    auto times_k2_projection(const Multigraph & g) -> CoverMap
    {
        CoverMap f;
        for (VertexIndex v = 0; v < g.num_vertices(); ++v) {
            f.vmap.push_back(v);
            f.vmap.push_back(v);
        }
        for (EdgeIndex e = 0; e < g.num_edges(); ++e) {
            f.emap.push_back(e);
            if (g.edge(e).kind != EdgeKind::semi)
                f.emap.push_back(e);
        }
        return f;
    }

    auto verify_gadget(const SplitGadget & s, const Multigraph & h, const GadgetCheckOptions & options) -> GadgetReport
    {
        GadgetReport report;
        auto k = unsigned(s.pendant_vertices.size());
        vector<EdgeIndex> pendant_edges;
        for (auto p : s.pendant_vertices)
            pendant_edges.push_back(s.graph.incident(p).front());

        SolverOptions pinned_options;
        pinned_options.mode = CoverMode::partial;
        pinned_options.budget = options.per_call;
        for (const auto & demand : all_demands(h, k)) {
            ListAssignment lists;
            for (unsigned i = 0; i < k; ++i) {
                lists.set_vertex(s.pendant_vertices[i], {demand.x});
                lists.set_edge(pendant_edges[i], {demand.edges[i]});
            }
            auto outcome = solve(s.graph, h, lists, pinned_options);
            if (outcome.status == Status::resource_limit)
                throw DomainError("verify_gadget: a pinned solve ran out of budget");
            ++report.demands;
            if (outcome.status == Status::unsatisfiable) {
                report.extends = false;
                report.unrealized.push_back(demand);
            }
        }

        SolverOptions enum_options;
        enum_options.mode = CoverMode::partial;
        bool over = false;
        auto enumeration = for_each_cover(
            s.graph, h, ListAssignment{},
            [&](const CoverMap & f) {
                if (report.partial_covers == options.max_partial_covers) {
                    over = true;
                    return false;
                }
                ++report.partial_covers;
                for (unsigned i = 1; i < k; ++i)
                    if (f.vmap[s.pendant_vertices[i]] != f.vmap[s.pendant_vertices[0]]) {
                        if (report.same_vertex)
                            report.same_vertex_counterexample = f;
                        report.same_vertex = false;
                        break;
                    }
                vector<EdgeIndex> images;
                for (auto e : pendant_edges)
                    images.push_back(f.emap[e]);
                std::sort(images.begin(), images.end());
                if (std::adjacent_find(images.begin(), images.end()) != images.end()) {
                    if (report.distinct_edges)
                        report.distinct_edges_counterexample = f;
                    report.distinct_edges = false;
                }
                return true;
            },
            enum_options);
        if (over)
            throw DomainError("verify_gadget: more than " + std::to_string(options.max_partial_covers)
                + " partial covers, enumeration bound exceeded");
        if (enumeration.status == Status::resource_limit)
            throw DomainError("verify_gadget: enumeration ran out of budget");
        return report;
    }
}
