#include <semicover/covering.hh>

#include <algorithm>

using std::optional;
using std::string;
using std::vector;

namespace semicover
{
    namespace
    {
        template <typename T_>
        auto normalise(vector<T_> v) -> vector<T_>
        {
            std::sort(v.begin(), v.end());
            v.erase(std::unique(v.begin(), v.end()), v.end());
            return v;
        }

        template <typename T_>
        auto intersect(const vector<T_> & a, const vector<T_> & b) -> vector<T_>
        {
            vector<T_> out;
            std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
            return out;
        }

        template <typename T_>
        auto contains(const vector<T_> & sorted, T_ x) -> bool
        {
            return std::binary_search(sorted.begin(), sorted.end(), x);
        }
    }

    auto ListAssignment::set_vertex(VertexIndex v, vector<VertexIndex> targets) -> void
    {
        if (_vertices.size() <= v)
            _vertices.resize(v + 1);
        _vertices[v] = normalise(std::move(targets));
    }

    auto ListAssignment::set_edge(EdgeIndex e, vector<EdgeIndex> targets) -> void
    {
        if (_edges.size() <= e)
            _edges.resize(e + 1);
        _edges[e] = normalise(std::move(targets));
    }

    auto ListAssignment::restrict_vertex(VertexIndex v, const vector<VertexIndex> & targets) -> void
    {
        auto sorted = normalise(targets);
        if (v < _vertices.size() && _vertices[v])
            _vertices[v] = intersect(*_vertices[v], sorted);
        else
            set_vertex(v, std::move(sorted));
    }

    auto ListAssignment::restrict_edge(EdgeIndex e, const vector<EdgeIndex> & targets) -> void
    {
        auto sorted = normalise(targets);
        if (e < _edges.size() && _edges[e])
            _edges[e] = intersect(*_edges[e], sorted);
        else
            set_edge(e, std::move(sorted));
    }

    auto ListAssignment::vertex_list(VertexIndex v) const -> const optional<vector<VertexIndex>> &
    {
        static const optional<vector<VertexIndex>> full;
        return v < _vertices.size() ? _vertices[v] : full;
    }

    auto ListAssignment::edge_list(EdgeIndex e) const -> const optional<vector<EdgeIndex>> &
    {
        static const optional<vector<EdgeIndex>> full;
        return e < _edges.size() ? _edges[e] : full;
    }

    auto ListAssignment::allows_vertex(VertexIndex v, VertexIndex x) const -> bool
    {
        auto & l = vertex_list(v);
        return ! l || contains(*l, x);
    }

    auto ListAssignment::allows_edge(EdgeIndex e, EdgeIndex f) const -> bool
    {
        auto & l = edge_list(e);
        return ! l || contains(*l, f);
    }

    auto ListAssignment::is_full() const -> bool
    {
        return std::none_of(_vertices.begin(), _vertices.end(), [](auto & l) { return l.has_value(); })
            && std::none_of(_edges.begin(), _edges.end(), [](auto & l) { return l.has_value(); });
    }

    auto ListAssignment::validate(const Multigraph & g, const Multigraph & h) const -> void
    {
        for (std::size_t v = 0; v < _vertices.size(); ++v) {
            if (! _vertices[v])
                continue;
            if (v >= g.num_vertices())
                throw DomainError("list given for a vertex index outside the input graph");
            for (auto x : *_vertices[v])
                if (x >= h.num_vertices())
                    throw DomainError("list of vertex '" + g.vertex_id(VertexIndex(v)) + "' names a target outside the target graph");
        }
        for (std::size_t e = 0; e < _edges.size(); ++e) {
            if (! _edges[e])
                continue;
            if (e >= g.num_edges())
                throw DomainError("list given for an edge index outside the input graph");
            for (auto f : *_edges[e])
                if (f >= h.num_edges())
                    throw DomainError("list of edge '" + g.edge(EdgeIndex(e)).id + "' names a target outside the target graph");
        }
    }

    auto to_string(ViolationKind k) -> std::string_view
    {
        switch (k) {
            case ViolationKind::not_total: return "not-total";
            case ViolationKind::out_of_range: return "out-of-range";
            case ViolationKind::incidence: return "incidence";
            case ViolationKind::not_matching: return "not-matching";
            case ViolationKind::not_semi_union: return "not-semi-edge-union";
            case ViolationKind::not_cycle_union: return "not-cycle-union";
            case ViolationKind::not_spanning: return "not-spanning";
        }
        return "?";
    }

    auto to_string(FibreShape s) -> std::string_view
    {
        switch (s) {
            case FibreShape::vertex: return "vertices";
            case FibreShape::matching: return "matching";
            case FibreShape::semi_union: return "semi-edge-union";
            case FibreShape::cycle_union: return "cycle-union";
            case FibreShape::cycle_and_path_union: return "cycle-and-path-union";
        }
        return "?";
    }

    namespace
    {
        auto fail(ViolationKind kind, string target, string detail) -> Verdict
        {
            return Verdict{std::nullopt, Violation{kind, std::move(target), std::move(detail)}};
        }

        auto check_incidence(const Multigraph & g, const Multigraph & h, const CoverMap & f, EdgeIndex e) -> optional<string>
        {
            const auto & ge = g.edge(e);
            const auto & he = h.edge(f.emap[e]);
            auto a = f.vmap[ge.first], b = f.vmap[ge.second];
            switch (ge.kind) {
                case EdgeKind::semi:
                    if (he.kind != EdgeKind::semi)
                        return "semi-edge mapped onto a non-semi-edge";
                    if (he.first != a)
                        return "semi-edge mapped onto a semi-edge at a different vertex";
                    return std::nullopt;
                case EdgeKind::loop:
                    if (he.kind != EdgeKind::loop)
                        return "loop mapped onto a non-loop";
                    if (he.first != a)
                        return "loop mapped onto a loop at a different vertex";
                    return std::nullopt;
                case EdgeKind::ordinary:
                    if (he.kind == EdgeKind::ordinary) {
                        if (! ((a == he.first && b == he.second) || (a == he.second && b == he.first)))
                            return "endpoints not mapped onto the endpoints of the image edge";
                    }
                    else if (a != he.first || b != he.first)
                        return "ordinary edge onto a loop or semi-edge needs both endpoints in its fibre";
                    return std::nullopt;
            }
            return std::nullopt;
        }

        auto verify(const Multigraph & g, const Multigraph & h, const CoverMap & f, bool spanning) -> Verdict
        {
            if (f.vmap.size() != g.num_vertices() || f.emap.size() != g.num_edges())
                return fail(ViolationKind::not_total, "", "map size does not match the input graph");
            for (VertexIndex v = 0; v < g.num_vertices(); ++v) {
                if (f.vmap[v] == unmapped_vertex)
                    return fail(ViolationKind::not_total, g.vertex_id(v), "vertex has no image");
                if (f.vmap[v] >= h.num_vertices())
                    return fail(ViolationKind::out_of_range, g.vertex_id(v), "image index out of range");
            }
            for (EdgeIndex e = 0; e < g.num_edges(); ++e) {
                if (f.emap[e] == unmapped_edge)
                    return fail(ViolationKind::not_total, g.edge(e).id, "edge has no image");
                if (f.emap[e] >= h.num_edges())
                    return fail(ViolationKind::out_of_range, g.edge(e).id, "image index out of range");
                if (auto problem = check_incidence(g, h, f, e))
                    return fail(ViolationKind::incidence, g.edge(e).id, *problem + " (image " + h.edge(f.emap[e]).id + ")");
            }

            // At every vertex v, each target edge at f(v) must receive exactly
            // (at most, for partial covers) as many ends as it has at f(v).
            vector<unsigned> count(h.num_edges(), 0);
            for (VertexIndex v = 0; v < g.num_vertices(); ++v) {
                auto x = f.vmap[v];
                for (auto e : g.incident(v))
                    count[f.emap[e]] += ends_at(g.edge(e));
                for (auto t : h.incident(x)) {
                    const auto & te = h.edge(t);
                    auto need = ends_at(te);
                    auto got = count[t];
                    if (got > need || (spanning && got < need)) {
                        auto kind = got > need
                            ? (te.kind == EdgeKind::ordinary ? ViolationKind::not_matching
                                : te.kind == EdgeKind::semi ? ViolationKind::not_semi_union : ViolationKind::not_cycle_union)
                            : ViolationKind::not_spanning;
                        return fail(kind, te.id,
                            "vertex " + g.vertex_id(v) + " carries " + std::to_string(got) + " of " + std::to_string(need)
                                + " ends of the preimage");
                    }
                }
                for (auto e : g.incident(v))
                    count[f.emap[e]] = 0;
            }

            FibreReport report;
            report.vertex_fibres.resize(h.num_vertices());
            for (VertexIndex x = 0; x < h.num_vertices(); ++x)
                report.vertex_fibres[x] = Fibre{h.vertex_id(x), FibreShape::vertex, {}, true};
            for (VertexIndex v = 0; v < g.num_vertices(); ++v)
                report.vertex_fibres[f.vmap[v]].preimage.push_back(v);

            report.edge_fibres.resize(h.num_edges());
            for (EdgeIndex t = 0; t < h.num_edges(); ++t) {
                const auto & te = h.edge(t);
                auto shape = te.kind == EdgeKind::ordinary ? FibreShape::matching
                    : te.kind == EdgeKind::semi           ? FibreShape::semi_union
                    : spanning                            ? FibreShape::cycle_union
                                                          : FibreShape::cycle_and_path_union;
                report.edge_fibres[t] = Fibre{te.id, shape, {}, spanning};
            }
            for (EdgeIndex e = 0; e < g.num_edges(); ++e)
                report.edge_fibres[f.emap[e]].preimage.push_back(e);

            if (! spanning)
                for (auto & fibre : report.edge_fibres) {
                    auto t = h.edge_named(fibre.target);
                    const auto & te = h.edge(t);
                    std::size_t ends = 0;
                    for (auto e : fibre.preimage) {
                        const auto & ge = g.edge(e);
                        ends += (ge.kind == EdgeKind::ordinary) ? 2 : ends_at(ge);
                    }
                    std::size_t fibre_size = report.vertex_fibres[te.first].preimage.size();
                    if (te.kind == EdgeKind::ordinary)
                        fibre_size += report.vertex_fibres[te.second].preimage.size();
                    fibre.spanning = ends == fibre_size * ((te.kind == EdgeKind::loop) ? 2 : 1);
                }

            return Verdict{std::move(report), std::nullopt};
        }
    }

    auto verify_cover(const Multigraph & g, const Multigraph & h, const CoverMap & f) -> Verdict
    {
        return verify(g, h, f, true);
    }

    auto verify_partial_cover(const Multigraph & g, const Multigraph & h, const CoverMap & f) -> Verdict
    {
        return verify(g, h, f, false);
    }

    auto respects_lists(const CoverMap & f, const ListAssignment & lists) -> bool
    {
        for (VertexIndex v = 0; v < f.vmap.size(); ++v)
            if (! lists.allows_vertex(v, f.vmap[v]))
                return false;
        for (EdgeIndex e = 0; e < f.emap.size(); ++e)
            if (! lists.allows_edge(e, f.emap[e]))
                return false;
        return true;
    }
}
