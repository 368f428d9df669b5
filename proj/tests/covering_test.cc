#include "support.hh"

#include <semicover/generators.hh>

#include <doctest.h>

#include <map>

using namespace semicover;
using semicover::testing::brute_force;
using semicover::testing::brute_force_count;
using std::vector;

namespace
{
    auto identity(const Multigraph & g) -> CoverMap
    {
        CoverMap f = CoverMap::unassigned(g);
        for (VertexIndex v = 0; v < g.num_vertices(); ++v)
            f.vmap[v] = v;
        for (EdgeIndex e = 0; e < g.num_edges(); ++e)
            f.emap[e] = e;
        return f;
    }

    auto winding(unsigned n, unsigned t) -> CoverMap
    {
        CoverMap f;
        for (unsigned i = 0; i < n; ++i) {
            f.vmap.push_back(i % t);
            f.emap.push_back(i % t);
        }
        return f;
    }

    // local bijectivity counted with endpoint multiplicity
    auto locally_bijective(const Multigraph & g, const Multigraph & h, const CoverMap & f) -> bool
    {
        for (VertexIndex v = 0; v < g.num_vertices(); ++v) {
            std::map<EdgeIndex, unsigned> got, want;
            for (auto e : g.incident(v))
                got[f.emap[e]] += ends_at(g.edge(e));
            for (auto t : h.incident(f.vmap[v]))
                want[t] += ends_at(h.edge(t));
            if (got != want)
                return false;
        }
        return true;
    }
}

TEST_CASE("identity and winding covers")
{
    auto r = ring(3);
    CHECK(verify_cover(r, r, identity(r)));
    CHECK(verify_cover(cycle(6), cycle(3), winding(6, 3)));
    CHECK(brute_force_count(cycle(5), cycle(3)) == 0);
    CHECK(brute_force_count(cycle(6), cycle(3)) == 6);
}

TEST_CASE("cycles onto two semi-edges")
{
    auto h = one_vertex(2, 0);
    CoverMap f{{0, 0, 0, 0}, {0, 1, 0, 1}};
    auto verdict = verify_cover(cycle(4), h, f);
    REQUIRE(verdict);
    CHECK(verdict.report->edge_fibres[0].preimage == vector<std::uint32_t>{0, 2});
    CHECK(verdict.report->edge_fibres[0].shape == FibreShape::semi_union);
    CHECK(brute_force_count(cycle(3), h) == 0);
    CHECK(brute_force_count(cycle(4), h) == 2);
}

TEST_CASE("violations are reported with their kind")
{
    auto c4 = cycle(4);
    auto k2 = path(2);
    CoverMap bad = CoverMap::unassigned(c4);
    auto v = verify_cover(c4, cycle(4), bad);
    REQUIRE(v.violation);
    CHECK(v.violation->kind == ViolationKind::not_total);

    // two edges at x2 onto the same ordinary edge
    CoverMap twice{{0, 1, 0, 1}, {0, 0, 0, 0}};
    auto m = verify_partial_cover(c4, k2, twice);
    REQUIRE(m.violation);
    CHECK(m.violation->kind == ViolationKind::not_matching);

    CoverMap wrong_ends{{0, 1, 2, 3}, {1, 1, 2, 3}};
    auto w = verify_cover(c4, cycle(4), wrong_ends);
    REQUIRE(w.violation);
    CHECK(w.violation->kind == ViolationKind::incidence);

    // a semi-edge may only map onto a semi-edge
    auto semi = one_vertex(1, 0);
    auto loop = one_vertex(0, 1);
    auto s = verify_partial_cover(semi, loop, CoverMap{{0}, {0}});
    REQUIRE(s.violation);
    CHECK(s.violation->kind == ViolationKind::incidence);

    // a partial cover missing an end is not a cover
    auto p = path(2);
    auto single = one_vertex(1, 0);
    CoverMap half{{0}, {}};
    Multigraph lone;
    lone.add_vertex("v");
    CHECK(verify_partial_cover(lone, single, half));
    auto nv = verify_cover(lone, single, half);
    REQUIRE(nv.violation);
    CHECK(nv.violation->kind == ViolationKind::not_spanning);
    CHECK(verify_cover(p, single, CoverMap{{0, 0}, {0}}));
}

TEST_CASE("every cover is a partial cover and locally bijective")
{
    std::mt19937 rng(11);
    vector<Multigraph> targets{cycle(3), one_vertex(2, 0), one_vertex(1, 1), one_vertex(3, 0), triple_edge(), ring(2),
        one_vertex(1, 2), complete_bipartite(3)};
    for (auto & h : targets)
        for (unsigned n = 1; n <= 4; ++n) {
            auto lift = semicover::testing::random_lift(h, n, rng);
            auto verdict = verify_cover(lift.graph, h, lift.projection);
            REQUIRE(verdict);
            CHECK(verify_partial_cover(lift.graph, h, lift.projection));
            CHECK(locally_bijective(lift.graph, h, lift.projection));
            for (VertexIndex v = 0; v < lift.graph.num_vertices(); ++v)
                CHECK(lift.graph.degree(v) == h.degree(lift.projection.vmap[v]));
            for (auto & fibre : verdict.report->vertex_fibres)
                CHECK(fibre.preimage.size() == n);
            for (auto & fibre : verdict.report->edge_fibres)
                CHECK(fibre.spanning);
        }
}

TEST_CASE("brute force agrees with local bijectivity on tiny inputs")
{
    vector<std::pair<Multigraph, Multigraph>> pairs{{cycle(4), one_vertex(0, 1)}, {one_vertex(1, 1), one_vertex(1, 1)},
        {triple_edge(), one_vertex(1, 1)}, {path(2), one_vertex(1, 0)}, {cycle(2), one_vertex(2, 0)}};
    for (auto & [g, h] : pairs) {
        std::size_t accepted = 0;
        brute_force(g, h, false, [&](const CoverMap & f) {
            ++accepted;
            CHECK(locally_bijective(g, h, f));
        });
        CHECK(accepted > 0);
    }
}

TEST_CASE("lists")
{
    ListAssignment lists;
    CoverMap f{{0, 1}, {0}};
    CHECK(respects_lists(f, lists));
    CHECK(lists.is_full());
    lists.set_vertex(0, {0});
    CHECK(respects_lists(f, lists));
    lists.set_vertex(0, {1});
    CHECK_FALSE(respects_lists(f, lists));
    lists.restrict_edge(0, {0, 2});
    lists.restrict_edge(0, {2, 3});
    CHECK(lists.edge_list(0) == vector<EdgeIndex>{2});
    CHECK_THROWS_AS(lists.validate(path(2), path(2)), DomainError);
}
