#include <semicover/multigraph.hh>

#include <algorithm>
#include <deque>
#include <unordered_set>

using std::optional;
using std::string;
using std::string_view;
using std::vector;

namespace semicover
{
    auto to_string(EdgeKind k) -> string_view
    {
        switch (k) {
            case EdgeKind::ordinary: return "ordinary";
            case EdgeKind::loop: return "loop";
            case EdgeKind::semi: return "semi";
        }
        return "?";
    }

    auto parse_edge_kind(string_view s) -> optional<EdgeKind>
    {
        if (s == "ordinary") return EdgeKind::ordinary;
        if (s == "loop") return EdgeKind::loop;
        if (s == "semi") return EdgeKind::semi;
        return std::nullopt;
    }

    auto to_string(VertexClass c) -> string_view
    {
        switch (c) {
            case VertexClass::simple: return "simple";
            case VertexClass::semi_simple: return "semi-simple";
            case VertexClass::other: return "other";
        }
        return "?";
    }

    auto Multigraph::add_vertex(string id) -> VertexIndex
    {
        auto index = VertexIndex(_vertex_ids.size());
        if (! _vertex_lookup.emplace(id, index).second)
            throw DomainError("duplicate vertex id '" + id + "'");
        _vertex_ids.push_back(std::move(id));
        _incidence.emplace_back();
        return index;
    }

    auto Multigraph::add_edge(string id, EdgeKind kind, VertexIndex a, VertexIndex b) -> EdgeIndex
    {
        if (a >= num_vertices() || b >= num_vertices())
            throw DomainError("edge '" + id + "' references a vertex that does not exist");
        if (kind == EdgeKind::ordinary && a == b)
            throw DomainError("ordinary edge '" + id + "' needs two distinct endpoints");
        if (kind != EdgeKind::ordinary && a != b)
            throw DomainError("edge '" + id + "' of kind " + string(to_string(kind)) + " has exactly one endpoint");

        auto index = EdgeIndex(_edges.size());
        if (! _edge_lookup.emplace(id, index).second)
            throw DomainError("duplicate edge id '" + id + "'");
        _edges.push_back(Edge{std::move(id), kind, a, b});
        _incidence[a].push_back(index);
        if (a != b)
            _incidence[b].push_back(index);
        return index;
    }

    auto Multigraph::add_ordinary(string id, VertexIndex a, VertexIndex b) -> EdgeIndex
    {
        return add_edge(std::move(id), EdgeKind::ordinary, a, b);
    }

    auto Multigraph::add_loop(string id, VertexIndex v) -> EdgeIndex
    {
        return add_edge(std::move(id), EdgeKind::loop, v, v);
    }

    auto Multigraph::add_semi(string id, VertexIndex v) -> EdgeIndex
    {
        return add_edge(std::move(id), EdgeKind::semi, v, v);
    }

    auto Multigraph::find_vertex(string_view id) const -> optional<VertexIndex>
    {
        auto i = _vertex_lookup.find(string(id));
        if (i == _vertex_lookup.end())
            return std::nullopt;
        return i->second;
    }

    auto Multigraph::find_edge(string_view id) const -> optional<EdgeIndex>
    {
        auto i = _edge_lookup.find(string(id));
        if (i == _edge_lookup.end())
            return std::nullopt;
        return i->second;
    }

    auto Multigraph::vertex(string_view id) const -> VertexIndex
    {
        if (auto v = find_vertex(id))
            return *v;
        throw DomainError("unknown vertex '" + string(id) + "'");
    }

    auto Multigraph::edge_named(string_view id) const -> EdgeIndex
    {
        if (auto e = find_edge(id))
            return *e;
        throw DomainError("unknown edge '" + string(id) + "'");
    }

    auto Multigraph::degree(VertexIndex v) const -> unsigned
    {
        unsigned result = 0;
        for (auto e : _incidence[v])
            result += (_edges[e].kind == EdgeKind::loop) ? 2 : 1;
        return result;
    }

    auto Multigraph::has_loops_or_semi_edges() const -> bool
    {
        return std::any_of(_edges.begin(), _edges.end(), [](const Edge & e) { return e.kind != EdgeKind::ordinary; });
    }

    auto degree(const Multigraph & g, string_view v) -> unsigned
    {
        return g.degree(g.vertex(v));
    }

    auto classify_vertex(const Multigraph & g, VertexIndex v) -> VertexClass
    {
        if (v >= g.num_vertices())
            throw DomainError("unknown vertex index " + std::to_string(v));

        unsigned semis = 0;
        std::unordered_set<VertexIndex> neighbours;
        bool multiple = false;
        for (auto e : g.incident(v)) {
            const auto & ed = g.edge(e);
            switch (ed.kind) {
                case EdgeKind::loop: return VertexClass::other;
                case EdgeKind::semi: ++semis; break;
                case EdgeKind::ordinary:
                    if (! neighbours.insert(g.other_end(e, v)).second)
                        multiple = true;
                    break;
            }
        }
        if (multiple || semis > 1)
            return VertexClass::other;
        return semis == 0 ? VertexClass::simple : VertexClass::semi_simple;
    }

    auto classify_vertex(const Multigraph & g, string_view v) -> VertexClass
    {
        return classify_vertex(g, g.vertex(v));
    }

    auto regular_degree(const Multigraph & g) -> optional<unsigned>
    {
        if (g.empty())
            return 0u;
        auto d = g.degree(0);
        for (VertexIndex v = 1; v < g.num_vertices(); ++v)
            if (g.degree(v) != d)
                return std::nullopt;
        return d;
    }

    auto is_bipartite(const Multigraph & g) -> optional<Bipartition>
    {
        if (g.has_loops_or_semi_edges())
            return std::nullopt;

        constexpr std::uint8_t unset = 2;
        Bipartition result;
        result.side.assign(g.num_vertices(), unset);
        std::deque<VertexIndex> queue;
        for (VertexIndex s = 0; s < g.num_vertices(); ++s) {
            if (result.side[s] != unset)
                continue;
            result.side[s] = 0;
            queue.push_back(s);
            while (! queue.empty()) {
                auto v = queue.front();
                queue.pop_front();
                for (auto e : g.incident(v)) {
                    auto w = g.other_end(e, v);
                    if (result.side[w] == unset) {
                        result.side[w] = 1 - result.side[v];
                        queue.push_back(w);
                    }
                    else if (result.side[w] == result.side[v])
                        return std::nullopt;
                }
            }
        }
        for (VertexIndex v = 0; v < g.num_vertices(); ++v)
            result.part[result.side[v]].push_back(v);
        return result;
    }

    auto connected_components(const Multigraph & g) -> vector<unsigned>
    {
        constexpr auto unset = ~0u;
        vector<unsigned> component(g.num_vertices(), unset);
        unsigned next = 0;
        vector<VertexIndex> stack;
        for (VertexIndex s = 0; s < g.num_vertices(); ++s) {
            if (component[s] != unset)
                continue;
            component[s] = next;
            stack.push_back(s);
            while (! stack.empty()) {
                auto v = stack.back();
                stack.pop_back();
                for (auto e : g.incident(v)) {
                    auto w = g.other_end(e, v);
                    if (component[w] == unset) {
                        component[w] = next;
                        stack.push_back(w);
                    }
                }
            }
            ++next;
        }
        return component;
    }

    auto is_connected(const Multigraph & g) -> bool
    {
        auto c = connected_components(g);
        return std::all_of(c.begin(), c.end(), [](unsigned x) { return x == 0; });
    }

    auto induced_subgraph(const Multigraph & g, std::span<const VertexIndex> vertices) -> Multigraph
    {
        Multigraph result;
        vector<optional<VertexIndex>> renumber(g.num_vertices());
        for (auto v : vertices)
            renumber[v] = result.add_vertex(g.vertex_id(v));
        for (EdgeIndex e = 0; e < g.num_edges(); ++e) {
            const auto & ed = g.edge(e);
            if (renumber[ed.first] && renumber[ed.second])
                result.add_edge(ed.id, ed.kind, *renumber[ed.first], *renumber[ed.second]);
        }
        return result;
    }
}
