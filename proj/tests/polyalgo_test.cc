#include "support.hh"

#include <semicover/constructions.hh>
#include <semicover/generators.hh>
#include <semicover/polyalgo.hh>

#include <doctest.h>

#include <algorithm>
#include <random>

using namespace semicover;
using namespace semicover::testing;
using std::vector;

namespace
{
    auto targets_2regular() -> vector<Multigraph>
    {
        vector<Multigraph> hs;
        for (unsigned t = 1; t <= 4; ++t) {
            hs.push_back(cycle(t));
            hs.push_back(open_path(t));
        }
        return hs;
    }

    auto brute_matching_size(const Multigraph & g, EdgeIndex from, vector<bool> & used) -> unsigned
    {
        unsigned best = 0;
        for (EdgeIndex e = from; e < g.num_edges(); ++e) {
            const auto & ed = g.edge(e);
            if (ed.kind != EdgeKind::ordinary || used[ed.first] || used[ed.second])
                continue;
            used[ed.first] = used[ed.second] = true;
            best = std::max(best, 1 + brute_matching_size(g, e + 1, used));
            used[ed.first] = used[ed.second] = false;
        }
        return best;
    }

    auto is_matching(const Multigraph & g, const Matching & m) -> bool
    {
        vector<bool> used(g.num_vertices(), false);
        for (auto e : m.edges) {
            const auto & ed = g.edge(e);
            if (ed.kind != EdgeKind::ordinary || used[ed.first] || used[ed.second])
                return false;
            used[ed.first] = used[ed.second] = true;
        }
        return true;
    }
}

TEST_CASE("dispatch")
{
    CHECK(dispatch(one_vertex(1, 0)) == PolyCase::F10_or_K2);
    CHECK(dispatch(path(2)) == PolyCase::F10_or_K2);
    CHECK(dispatch(one_vertex(0, 1)) == PolyCase::F01_loop);
    CHECK(dispatch(one_vertex(2, 0)) == PolyCase::F20_two_semis);
    CHECK(dispatch(cycle(5)) == PolyCase::cycle_target);
    CHECK(dispatch(open_path(3)) == PolyCase::open_path_target);
    CHECK(dispatch(one_vertex(1, 1)) == PolyCase::loop_plus_semi);
    CHECK(dispatch(one_vertex(3, 0)) == PolyCase::none);
    CHECK(dispatch(complete_graph(4)) == PolyCase::none);
    CHECK(dispatch(triple_edge()) == PolyCase::none);
    CHECK_THROWS_AS(decide_poly(complete_graph(4), complete_graph(4), {}), DomainError);
}

TEST_CASE("cycle candidates")
{
    auto six = decide_2regular(cycle(3), cycle(6), {});
    CHECK(six.status == Status::satisfiable);
    CHECK(six.stats.candidates == 6);
    REQUIRE(six.witness);
    CHECK(verify_cover(cycle(6), cycle(3), *six.witness));

    CHECK(decide_2regular(cycle(3), cycle(5), {}).status == Status::unsatisfiable);
    CHECK(decide_2regular(cycle(3), cycle(4), {}).status == Status::unsatisfiable);
    CHECK(decide_2regular(one_vertex(0, 1), cycle(7), {}).status == Status::satisfiable);
    CHECK(decide_2regular(one_vertex(2, 0), open_path(5), {}).status == Status::satisfiable);
    CHECK(decide_2regular(one_vertex(2, 0), cycle(4), {}).status == Status::satisfiable);
    CHECK(decide_2regular(one_vertex(2, 0), cycle(3), {}).status == Status::unsatisfiable);
    CHECK(decide_2regular(one_vertex(0, 1), open_path(2), {}).status == Status::unsatisfiable);
    CHECK(decide_1regular(path(2), path(4), {}).status == Status::unsatisfiable);
    CHECK(decide_1regular(one_vertex(1, 0), path(2), {}).status == Status::satisfiable);
}

TEST_CASE("open path onto two semi-edges alternates")
{
    auto g = open_path(6);
    auto h = one_vertex(2, 0);
    auto all = enumerate(g, h, {}, 100);
    CHECK(all.covers.size() == 2);
    for (auto & f : all.covers)
        for (EdgeIndex e = 0; e + 1 < g.num_edges(); ++e)
            CHECK(f.emap[e] != f.emap[e + 1]);
}

TEST_CASE("low degree procedures agree with the oracle")
{
    std::mt19937 rng(71);
    auto hs = targets_2regular();
    unsigned disagreements = 0, rounds = 0;
    for (unsigned n = 1; n <= 8; ++n)
        for (const auto & h : hs)
            for (unsigned r = 0; r < 6; ++r) {
                auto g = random_2regular(n, rng);
                auto lists = random_lists(g, h, int(r % 3), rng);
                auto mine = decide_2regular(h, g, lists);
                auto expected = oracle(g, h, lists);
                ++rounds;
                if (mine.status != expected.status)
                    ++disagreements;
                if (mine.witness) {
                    CHECK(verify_cover(g, h, *mine.witness));
                    CHECK(respects_lists(*mine.witness, lists));
                }
            }
    CHECK(rounds > 300);
    CHECK(disagreements == 0);

    for (unsigned r = 0; r < 60; ++r) {
        auto h = r % 2 ? path(2) : one_vertex(1, 0);
        Multigraph g;
        unsigned n = 1 + rng() % 6;
        for (unsigned i = 0; i < n; ++i)
            g.add_vertex("v" + std::to_string(i));
        for (unsigned i = 0; i + 1 < n; i += 2)
            if (rng() % 2)
                g.add_ordinary("e" + std::to_string(i), i, i + 1);
            else {
                g.add_semi("s" + std::to_string(i), i);
                g.add_semi("s" + std::to_string(i + 1), i + 1);
            }
        if (n % 2)
            g.add_semi("last", n - 1);
        auto lists = random_lists(g, h, int(r % 3), rng);
        CHECK(decide_1regular(h, g, lists).status == oracle(g, h, lists).status);
    }
}

TEST_CASE("maximum matching")
{
    std::mt19937 rng(5);
    for (unsigned r = 0; r < 200; ++r) {
        unsigned n = 1 + rng() % 10;
        Multigraph g;
        for (unsigned i = 0; i < n; ++i)
            g.add_vertex("v" + std::to_string(i));
        unsigned m = rng() % (2 * n + 1);
        for (unsigned i = 0; i < m; ++i) {
            VertexIndex a = rng() % n, b = rng() % n;
            if (a == b)
                g.add_loop("l" + std::to_string(i), a);
            else
                g.add_ordinary("e" + std::to_string(i), a, b);
        }
        auto found = maximum_matching(g);
        vector<bool> used(n, false);
        CHECK(is_matching(g, found));
        CHECK(found.edges.size() == brute_matching_size(g, 0, used));
        CHECK(found.perfect == (2 * found.edges.size() == n));
    }

    auto p = maximum_matching(petersen());
    CHECK(p.perfect);
    CHECK(p.edges.size() == 5);
    CHECK_FALSE(maximum_matching(cycle(5)).perfect);
}

TEST_CASE("loop plus semi-edge")
{
    auto h = one_vertex(1, 1);
    auto k4 = decide_loop_semi(h, complete_graph(4), {});
    CHECK(k4.status == Status::satisfiable);
    REQUIRE(k4.witness);
    CHECK(verify_cover(complete_graph(4), h, *k4.witness));

    std::mt19937 rng(2024);
    vector<LoopSemiOptions> orders(1);
    std::array<AuxiliaryStep, 3> steps{AuxiliaryStep::delete_semi_vertices, AuxiliaryStep::drop_edges_without_semi,
        AuxiliaryStep::isolate_edges_without_loop};
    std::sort(steps.begin(), steps.end());
    orders.clear();
    do
        orders.push_back(LoopSemiOptions{steps});
    while (std::next_permutation(steps.begin(), steps.end()));

    unsigned sat = 0, unsat = 0;
    for (unsigned r = 0; r < 150; ++r) {
        unsigned n = 1 + rng() % 10;
        auto g = random_cubic(n, r % 2 == 0, rng);
        auto lists = random_lists(g, h, int(r % 3), rng);
        auto expected = oracle(g, h, lists).status;
        (expected == Status::satisfiable ? sat : unsat)++;
        for (const auto & o : orders) {
            auto mine = decide_loop_semi(h, g, lists, o);
            CHECK(mine.status == expected);
            if (mine.witness)
                CHECK(respects_lists(*mine.witness, lists));
        }
    }
    CHECK(sat > 10);
    CHECK(unsat > 10);
}

TEST_CASE("loop plus semi-edge work grows polynomially")
{
    std::mt19937 rng(77);
    auto h = one_vertex(1, 1);
    for (int density = 0; density < 2; ++density) {
        double previous = 0;
        for (unsigned n = 32; n <= 1024; n *= 2) {
            double total = 0;
            for (int r = 0; r < 5; ++r) {
                auto g = random_simple_cubic(n, rng);
                auto lists = random_lists(g, h, density, rng);
                auto o = decide_loop_semi(h, g, lists);
                auto size = double(g.num_vertices() + g.num_edges());
                CHECK(double(o.stats.nodes) <= 3 * (g.num_edges() + 1) * size);
                total += double(o.stats.nodes);
            }
            // linear or quadratic work per doubling, never the square of the previous amount
            if (previous > 0)
                CHECK(total <= 4.5 * previous);
            previous = total;
        }
    }
}

TEST_CASE("triple edge fast path")
{
    std::mt19937 rng(8);
    auto h = triple_edge();
    for (unsigned r = 0; r < 20; ++r) {
        auto g = random_bipartite_cubic(1 + rng() % 6, rng);
        auto outcome = triple_edge_fast_path(h, g, {});
        REQUIRE(outcome);
        CHECK(outcome->status == Status::satisfiable);
        REQUIRE(outcome->witness);
        CHECK(verify_cover(g, h, *outcome->witness));
    }
    CHECK_FALSE(triple_edge_fast_path(h, complete_graph(4), {}));
    ListAssignment pinned;
    pinned.set_vertex(0, {0});
    CHECK_FALSE(triple_edge_fast_path(h, complete_bipartite(3), pinned));
}
