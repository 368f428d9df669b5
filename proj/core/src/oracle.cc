#include <semicover/solver.hh>

#include <cmath>

using std::vector;

namespace semicover
{
    namespace
    {
        class Naive
        {
        public:
            Naive(const Multigraph & g, const Multigraph & h, const ListAssignment & lists, CoverMode mode) :
                _g(g), _h(h), _lists(lists), _mode(mode), _f(CoverMap::unassigned(g)),
                _used(g.num_vertices(), vector<unsigned>(h.num_edges(), 0))
            {
            }

            auto run() -> bool { return assign_vertex(0); }
            auto witness() const -> const CoverMap & { return _f; }
            auto nodes() const -> std::uint64_t { return _nodes; }

        private:
            const Multigraph & _g;
            const Multigraph & _h;
            const ListAssignment & _lists;
            CoverMode _mode;
            CoverMap _f;
            vector<vector<unsigned>> _used; // ends of G at v already sent to each H edge
            std::uint64_t _nodes = 0;

            auto assign_vertex(VertexIndex v) -> bool
            {
                ++_nodes;
                if (v == _g.num_vertices())
                    return assign_edge(0);
                for (VertexIndex x = 0; x < _h.num_vertices(); ++x) {
                    if (! _lists.allows_vertex(v, x))
                        continue;
                    auto dg = _g.degree(v), dh = _h.degree(x);
                    if (_mode == CoverMode::total ? dg != dh : dg > dh)
                        continue;
                    _f.vmap[v] = x;
                    if (assign_vertex(v + 1))
                        return true;
                }
                _f.vmap[v] = unmapped_vertex;
                return false;
            }

            auto incidence_ok(const Edge & ge, const Edge & he) const -> bool
            {
                auto a = _f.vmap[ge.first], b = _f.vmap[ge.second];
                switch (ge.kind) {
                    case EdgeKind::semi: return he.kind == EdgeKind::semi && he.first == a;
                    case EdgeKind::loop: return he.kind == EdgeKind::loop && he.first == a;
                    case EdgeKind::ordinary:
                        if (he.kind == EdgeKind::ordinary)
                            return (he.first == a && he.second == b) || (he.first == b && he.second == a);
                        return he.first == a && a == b;
                }
                return false;
            }

            auto assign_edge(EdgeIndex e) -> bool
            {
                ++_nodes;
                if (e == _g.num_edges()) {
                    auto verdict = _mode == CoverMode::total ? verify_cover(_g, _h, _f) : verify_partial_cover(_g, _h, _f);
                    return bool(verdict);
                }
                const auto & ge = _g.edge(e);
                unsigned ends = ge.kind == EdgeKind::loop ? 2 : 1;
                for (EdgeIndex t = 0; t < _h.num_edges(); ++t) {
                    const auto & he = _h.edge(t);
                    if (! _lists.allows_edge(e, t) || ! incidence_ok(ge, he))
                        continue;
                    unsigned capacity = he.kind == EdgeKind::loop ? 2 : 1;
                    auto & at_first = _used[ge.first][t];
                    auto & at_second = _used[ge.second][t];
                    bool two_ends = ge.kind == EdgeKind::ordinary;
                    if (at_first + ends > capacity || (two_ends && at_second + 1 > capacity))
                        continue;
                    at_first += ends;
                    if (two_ends)
                        at_second += 1;
                    _f.emap[e] = t;
                    bool done = assign_edge(e + 1);
                    at_first -= ends;
                    if (two_ends)
                        at_second -= 1;
                    if (done)
                        return true;
                }
                _f.emap[e] = unmapped_edge;
                return false;
            }
        };
    }

    auto oracle(const Multigraph & g, const Multigraph & h, const ListAssignment & lists, CoverMode mode, double max_search)
        -> SolveOutcome
    {
        lists.validate(g, h);
        double estimate = double(g.num_vertices()) * std::log10(std::max<double>(1, double(h.num_vertices())))
            + double(g.num_edges()) * std::log10(std::max<double>(1, double(h.num_edges())));
        if (estimate > std::log10(max_search))
            throw OracleRefusal("instance too large for the naive oracle (search space about 10^"
                + std::to_string(int(std::ceil(estimate))) + ")");

        auto start = std::chrono::steady_clock::now();
        Naive naive(g, h, lists, mode);
        SolveOutcome outcome;
        if (naive.run()) {
            outcome.status = Status::satisfiable;
            outcome.witness = naive.witness();
        }
        else
            outcome.status = Status::unsatisfiable;
        outcome.stats.nodes = naive.nodes();
        outcome.stats.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        return outcome;
    }
}
