#include "support.hh"

#include <semicover/generators.hh>
#include <semicover/solver.hh>

#include <doctest.h>

#include <set>

using namespace semicover;
using std::vector;

namespace
{
    auto check_witness(const Multigraph & g, const Multigraph & h, const ListAssignment & lists, const SolveOutcome & o)
        -> void
    {
        if (o.status == Status::satisfiable) {
            REQUIRE(o.witness);
            CHECK(verify_cover(g, h, *o.witness));
            CHECK(respects_lists(*o.witness, lists));
        }
    }
}

TEST_CASE("small decisions")
{
    ListAssignment full;
    auto a = solve(cycle(6), cycle(3), full);
    CHECK(a.status == Status::satisfiable);
    check_witness(cycle(6), cycle(3), full, a);

    auto b = solve(complete_graph(4), one_vertex(1, 1), full);
    CHECK(b.status == Status::satisfiable);
    check_witness(complete_graph(4), one_vertex(1, 1), full, b);

    CHECK(solve(cycle(3), one_vertex(2, 0), full).status == Status::unsatisfiable);
    CHECK(solve(cycle(5), cycle(3), full).status == Status::unsatisfiable);

    ListAssignment empty_list;
    empty_list.set_vertex(2, {});
    CHECK(solve(cycle(6), cycle(3), empty_list).status == Status::unsatisfiable);
    CHECK(oracle(cycle(6), cycle(3), empty_list).status == Status::unsatisfiable);
}

TEST_CASE("enumeration counts")
{
    ListAssignment full;
    auto six = enumerate(cycle(6), cycle(3), full, 100);
    CHECK(six.covers.size() == 6);
    CHECK_FALSE(six.truncated);
    std::set<vector<VertexIndex>> distinct;
    for (auto & f : six.covers) {
        CHECK(verify_cover(cycle(6), cycle(3), f));
        distinct.insert(f.vmap);
    }
    CHECK(distinct.size() == 6);

    auto k2 = path(2);
    CHECK(enumerate(k2, k2, full, 100).covers.size() == 2);
    CHECK(enumerate(k2, k2, full, 100).covers.size() == semicover::testing::brute_force_count(k2, k2));

    auto cut = enumerate(cycle(6), cycle(3), full, 4);
    CHECK(cut.covers.size() == 4);
    CHECK(cut.truncated);

    ListAssignment pinned;
    for (VertexIndex v = 0; v < 6; ++v)
        pinned.set_vertex(v, {v % 3});
    for (EdgeIndex e = 0; e < 6; ++e)
        pinned.set_edge(e, {e % 3});
    CHECK(enumerate(cycle(6), cycle(3), pinned, 100).covers.size() == 1);

    Multigraph nothing;
    auto e = enumerate_partial(nothing, complete_bipartite(3), full, 100);
    REQUIRE(e.covers.size() == 1);
    CHECK(e.covers[0].vmap.empty());
    CHECK(e.covers[0].emap.empty());
}

TEST_CASE("enumeration matches brute force on tiny inputs")
{
    vector<std::pair<Multigraph, Multigraph>> pairs{{cycle(4), one_vertex(0, 1)}, {one_vertex(1, 1), one_vertex(1, 1)},
        {triple_edge(), one_vertex(1, 1)}, {cycle(2), one_vertex(2, 0)}, {cycle(6), cycle(3)}, {cycle(4), cycle(2)},
        {triple_edge(), one_vertex(3, 0)}, {path(3), path(2)}};
    ListAssignment full;
    for (auto & [g, h] : pairs) {
        CHECK(enumerate(g, h, full, 100000).covers.size() == semicover::testing::brute_force_count(g, h));
        SolverOptions partial;
        partial.mode = CoverMode::partial;
        CHECK(enumerate(g, h, full, 100000, partial).covers.size() == semicover::testing::brute_force_count(g, h, true));
    }
}

TEST_CASE("solver agrees with the oracle and the pruning rules are safe")
{
    std::mt19937 rng(2024);
    vector<Multigraph> targets{cycle(3), cycle(4), one_vertex(2, 0), one_vertex(1, 1), one_vertex(3, 0), triple_edge(),
        path(2)};
    for (int round = 0; round < 120; ++round) {
        auto & h = targets[round % targets.size()];
        Multigraph g;
        if (round % 3 == 0)
            g = semicover::testing::random_lift(h, 1 + unsigned(rng() % 3), rng).graph;
        else if (regular_degree(h) == 3u)
            g = semicover::testing::random_cubic(2 + unsigned(rng() % 5), round % 2, rng);
        else
            g = semicover::testing::random_lift(one_vertex(0, 1), 1 + unsigned(rng() % 5), rng).graph;
        if (g.num_vertices() > 6)
            continue;
        auto lists = semicover::testing::random_lists(g, h, round % 3, rng);
        auto expected = oracle(g, h, lists);
        auto got = solve(g, h, lists);
        CHECK(got.status == expected.status);
        check_witness(g, h, lists, got);
        check_witness(g, h, lists, expected);

        for (int rule = 0; rule < 4; ++rule) {
            SolverOptions o;
            auto & p = o.pruning;
            (rule == 0 ? p.degree_filter : rule == 1 ? p.local_bijection : rule == 2 ? p.component_pinning : p.twin_symmetry) = false;
            CHECK(solve(g, h, lists, o).status == expected.status);
        }
    }
}

TEST_CASE("twin symmetry keeps verdicts and counts")
{
    std::mt19937 rng(77);
    auto h = complete_bipartite(3);
    ListAssignment full;
    SolverOptions plain;
    plain.pruning.twin_symmetry = false;
    for (int round = 0; round < 30; ++round) {
        auto g = semicover::testing::random_bipartite_cubic(3 + unsigned(rng() % 4), rng);
        auto lists = semicover::testing::random_lists(g, h, round % 3, rng);
        auto with = solve(g, h, lists), without = solve(g, h, lists, plain);
        CHECK(with.status == without.status);
        check_witness(g, h, lists, with);
        if (g.num_vertices() <= 8)
            CHECK(enumerate(g, h, lists, 1000000).covers.size() == enumerate(g, h, lists, 1000000, plain).covers.size());
    }
}

TEST_CASE("budget exhaustion is not unsatisfiability")
{
    std::mt19937 rng(5);
    auto g = semicover::testing::random_simple_cubic(40, rng);
    SolverOptions o;
    o.budget.node_limit = 3;
    auto outcome = solve(g, one_vertex(3, 0), ListAssignment{}, o);
    CHECK(outcome.status == Status::resource_limit);
    CHECK_FALSE(outcome.witness);
}

TEST_CASE("portfolio verdicts match")
{
    ListAssignment full;
    CHECK(solve_portfolio(cycle(6), cycle(3), full, {}, 3).status == Status::satisfiable);
    CHECK(solve_portfolio(cycle(5), cycle(3), full, {}, 3).status == Status::unsatisfiable);
}

TEST_CASE("oracle refuses large inputs")
{
    CHECK_THROWS_AS(oracle(cycle(60), cycle(3), ListAssignment{}), OracleRefusal);
}

TEST_CASE("determinism")
{
    std::mt19937 rng(9);
    auto lift = semicover::testing::random_lift(ring(3), 3, rng);
    auto a = solve(lift.graph, ring(3), ListAssignment{});
    auto b = solve(lift.graph, ring(3), ListAssignment{});
    REQUIRE(a.witness);
    CHECK(a.witness == b.witness);
}
