#include "support.hh"

#include <semicover/constructions.hh>
#include <semicover/generators.hh>
#include <semicover/isomorphism.hh>
#include <semicover/polyalgo.hh>
#include <semicover/reductions.hh>
#include <semicover/solver.hh>

#include <CLI11.hpp>

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <optional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

using namespace semicover;
using namespace semicover::testing;

using std::set;
using std::string;
using std::vector;

namespace
{
    struct Result
    {
        bool pass = true;
        std::ostringstream detail;

        auto require(bool ok, const string & what) -> void
        {
            if (! ok && pass) {
                pass = false;
                detail << "failed: " << what << "; ";
            }
        }
    };

    class Stopwatch
    {
        std::chrono::steady_clock::time_point _start = std::chrono::steady_clock::now();

    public:
        auto seconds() const -> double
        {
            return std::chrono::duration<double>(std::chrono::steady_clock::now() - _start).count();
        }
    };

    auto fixed(double x) -> string
    {
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.2f", x);
        return buf;
    }

    auto witness_ok(const Multigraph & g, const Multigraph & h, const ListAssignment & lists, const SolveOutcome & o,
        CoverMode mode = CoverMode::total) -> bool
    {
        if (o.status != Status::satisfiable)
            return ! o.witness;
        if (! o.witness || ! respects_lists(*o.witness, lists))
            return false;
        return mode == CoverMode::total ? bool(verify_cover(g, h, *o.witness)) : bool(verify_partial_cover(g, h, *o.witness));
    }

    /// A random graph all of whose vertices have degree 1: single edges and semi-edges.
    auto random_1regular(unsigned n, std::mt19937 & rng) -> Multigraph
    {
        Multigraph g;
        for (unsigned i = 0; i < n; ++i)
            g.add_vertex("v" + std::to_string(i));
        for (unsigned i = 0; i < n; i += 2)
            if (i + 1 < n && rng() % 2)
                g.add_ordinary("e" + std::to_string(i), i, i + 1);
            else {
                g.add_semi("s" + std::to_string(i), i);
                if (i + 1 < n)
                    g.add_semi("s" + std::to_string(i + 1), i + 1);
            }
        return g;
    }

    auto oracle_equivalence(Result & r) -> void
    {
        std::mt19937 rng(1);
        vector<Multigraph> targets{cycle(3), cycle(4), one_vertex(2, 0), one_vertex(1, 1), one_vertex(0, 3), triple_edge(),
            path(2)};
        unsigned instances = 0, sat = 0, disagreements = 0;
        for (unsigned round = 0; round < 75; ++round)
            for (const auto & h : targets) {
                auto degree = *regular_degree(h);
                unsigned max_fold = 8 / h.num_vertices();
                Multigraph g;
                if (round % 2 == 0)
                    g = random_lift(h, 1 + unsigned(rng() % max_fold), rng).graph;
                else if (degree == 1)
                    g = random_1regular(1 + unsigned(rng() % 8), rng);
                else if (degree == 2)
                    g = random_2regular(1 + unsigned(rng() % 8), rng);
                else if (degree == 3)
                    g = random_cubic(1 + unsigned(rng() % 8), round % 4 == 1, rng);
                else
                    g = random_lift(one_vertex(2, 2), 1 + unsigned(rng() % 8), rng).graph;
                int density = int((round / 2) % 3);
                auto lists = random_lists(g, h, density, rng);
                auto expected = oracle(g, h, lists);
                auto got = solve(g, h, lists);
                ++instances;
                if (expected.status == Status::satisfiable)
                    ++sat;
                if (got.status != expected.status || ! witness_ok(g, h, lists, got) || ! witness_ok(g, h, lists, expected))
                    ++disagreements;
            }
        r.require(instances >= 500, "at least 500 instances");
        r.require(disagreements == 0, "solver and oracle agree");
        r.require(sat > 50 && instances - sat > 50, "both verdicts well represented");
        r.detail << instances << " instances, " << sat << " satisfiable, " << disagreements << " disagreements";
    }

    auto two_regular_coverage(Result & r) -> void
    {
        std::mt19937 rng(2);
        vector<Multigraph> targets;
        for (unsigned t = 1; t <= 4; ++t) {
            targets.push_back(cycle(t));
            targets.push_back(open_path(t));
        }
        unsigned instances = 0, disagreements = 0;
        for (unsigned n = 1; n <= 12; ++n)
            for (const auto & g : {cycle(n), open_path(n)})
                for (const auto & h : targets)
                    for (int density = 0; density < 3; ++density) {
                        auto lists = random_lists(g, h, density, rng);
                        auto mine = decide_2regular(h, g, lists);
                        auto expected = oracle(g, h, lists, CoverMode::total, 1e20);
                        ++instances;
                        if (mine.status != expected.status || ! witness_ok(g, h, lists, mine))
                            ++disagreements;
                    }
        r.require(disagreements == 0, "decide_2regular agrees with the oracle");

        auto c6 = cycle(6), c3 = cycle(3);
        auto counted = brute_force_count(c6, c3);
        auto enumerated = enumerate(c6, c3, {}, 100).covers.size();
        auto candidates = decide_2regular(c3, c6, {}).stats.candidates;
        r.require(counted == 6 && enumerated == 6, "C6 covers C3 in exactly 6 ways");
        r.require(candidates <= 6, "at most 2t candidates");
        r.detail << instances << " instances, " << disagreements << " disagreements; C6 onto C3: " << counted
                 << " covers, " << candidates << " candidates";
    }

    auto loop_semi(Result & r) -> void
    {
        std::mt19937 rng(3);
        auto h = one_vertex(1, 1);
        unsigned sat = 0, disagreements = 0;
        for (unsigned i = 0; i < 200; ++i) {
            auto g = random_cubic(1 + unsigned(rng() % 12), i % 2 == 0, rng);
            auto lists = random_lists(g, h, int(i % 3), rng);
            auto mine = decide_loop_semi(h, g, lists);
            auto expected = oracle(g, h, lists);
            if (expected.status == Status::satisfiable)
                ++sat;
            if (mine.status != expected.status || ! witness_ok(g, h, lists, mine))
                ++disagreements;
        }
        r.require(disagreements == 0, "decide_loop_semi agrees with the oracle");
        r.require(decide_loop_semi(h, complete_graph(4), {}).status == Status::satisfiable, "K4 is satisfiable");
        r.detail << "200 graphs, " << sat << " satisfiable, " << disagreements << " disagreements; K4 satisfiable";
    }

    auto coloured(const Multigraph & g) -> ColoredFactor
    {
        return ColoredFactor{g, *proper_edge_coloring(g, 3)};
    }

    auto product_projections(Result & r) -> void
    {
        std::mt19937 rng(4);
        vector<ColoredFactor> corpus{coloured(triple_edge()), coloured(complete_bipartite(3)), coloured(complete_graph(4))};
        unsigned checked = 0, failures = 0;
        for (unsigned i = 0; i < 50; ++i) {
            vector<ColoredFactor> factors;
            unsigned m = 2 + unsigned(rng() % 2);
            for (unsigned j = 0; j < m; ++j) {
                auto f = corpus[rng() % corpus.size()];
                vector<unsigned> perm{0, 1, 2};
                std::shuffle(perm.begin(), perm.end(), rng);
                f.coloring = permute_colours(f.coloring, perm);
                factors.push_back(std::move(f));
            }
            auto p = colored_product(factors);
            for (unsigned j = 0; j < m; ++j) {
                ++checked;
                if (! verify_cover(p.product, factors[j].graph, p.projections[j]))
                    ++failures;
            }
        }
        r.require(failures == 0, "every coordinate projection is a cover");
        r.detail << "50 products, " << checked << " projections, " << failures << " failures";
    }

    auto gadget_partials(Result & r) -> void
    {
        for (const auto & [name, h] : {std::pair{string("K33"), complete_bipartite(3)}, std::pair{string("triple edge"), triple_edge()}}) {
            Stopwatch clock;
            auto s = split_vertex(h, 0);
            std::size_t count = 0;
            bool same_vertex = true, distinct_edges = true;
            auto e = for_each_cover(
                s.graph, h, {},
                [&](const CoverMap & f) {
                    ++count;
                    set<VertexIndex> images;
                    set<EdgeIndex> edges;
                    for (auto v : s.pendant_vertices)
                        images.insert(f.vmap[v]);
                    for (auto pe : s.pendant_edges)
                        edges.insert(f.emap[pe]);
                    same_vertex = same_vertex && images.size() == 1;
                    distinct_edges = distinct_edges && edges.size() == s.pendant_edges.size();
                    return true;
                },
                SolverOptions{CoverMode::partial});
            auto seconds = clock.seconds();
            r.require(e.status == Status::satisfiable && ! e.truncated, name + " enumeration completes");
            r.require(same_vertex, name + " pendants share one image");
            r.require(distinct_edges, name + " pendant edges are distinct");
            r.require(seconds < 60, name + " under a minute");
            r.detail << "split " << name << ": " << count << " partial covers in " << fixed(seconds) << " s; ";
        }
    }

    auto multicovers(Result & r) -> void
    {
        auto h = complete_bipartite(3);
        auto m = multicover(h, {MulticoverPlan::self});
        auto s = split_vertex(m.graph, m.u);
        auto demands = all_demands(h, 3);
        unsigned realised = 0;
        double slowest = 0;
        for (const auto & d : demands) {
            ListAssignment lists;
            for (std::size_t i = 0; i < s.pendant_vertices.size(); ++i) {
                lists.set_vertex(s.pendant_vertices[i], {d.x});
                lists.set_edge(s.pendant_edges[i], {d.edges[i]});
            }
            Stopwatch clock;
            auto o = solve(s.graph, h, lists, SolverOptions{CoverMode::partial});
            slowest = std::max(slowest, clock.seconds());
            if (o.status == Status::satisfiable && witness_ok(s.graph, h, lists, o, CoverMode::partial))
                ++realised;
        }
        r.require(demands.size() == 36 && realised == 36, "all 36 demands realised");
        r.require(slowest < 1, "each pinned call under a second");
        r.detail << realised << "/" << demands.size() << " demands, slowest call " << fixed(slowest * 1000) << " ms; ";

        Stopwatch clock;
        auto t = triple_edge();
        auto big = multicover(t);
        unsigned verified = 0;
        for (const auto & p : big.projections)
            if (verify_cover(big.graph, t, p))
                ++verified;
        auto seconds = clock.seconds();
        r.require(big.product_vertices == 24576, "triple edge product has 24576 vertices");
        r.require(verified == big.projections.size() && verified > 0, "construction projections verify");
        r.require(seconds < 120, "built in under two minutes");
        r.detail << "triple edge: product " << big.product_vertices << " vertices, component " << big.graph.num_vertices()
                 << ", " << verified << " projections verified in " << fixed(seconds) << " s";
    }

    auto sausage_rings(Result & r) -> void
    {
        for (unsigned k = 2; k <= 5; ++k) {
            auto all = sausages(k);
            unsigned iso = 0;
            for (const auto & s : all)
                if (are_isomorphic(times_k2(s), ring(k)))
                    ++iso;
            r.require(! all.empty() && iso == all.size(), "every sausage for k=" + std::to_string(k) + " lifts to the ring");
            r.detail << "k=" << k << ": " << iso << "/" << all.size() << "; ";
        }
        r.require(sausages(3).size() == 2, "2 sausages for k=3");
        r.require(sausages(4).size() == 4, "4 sausages for k=4");
    }

    auto solve_reduction(const ReductionOutput & out, double & seconds) -> SolveOutcome
    {
        Stopwatch clock;
        auto o = solve(out.instance, out.target, out.lists);
        seconds = clock.seconds();
        return o;
    }

    auto ring_hom(Result & r) -> void
    {
        double t1 = 0, t2 = 0;
        auto yes = reduce_ring_hom(cycle(3), 0, 0);
        auto o = solve_reduction(yes, t1);
        r.require(o.status == Status::satisfiable && witness_ok(yes.instance, yes.target, yes.lists, o), "C3 satisfiable");
        if (o.witness)
            r.require(is_cycle_hom(cycle(3), 3, back_translate(yes, *o.witness)), "back-translated homomorphism");
        auto no = reduce_ring_hom(complete_graph(4), 0, 0);
        r.require(solve_reduction(no, t2).status == Status::unsatisfiable, "K4 unsatisfiable");
        r.require(t1 < 120 && t2 < 120, "each under two minutes");
        r.detail << "C3: " << yes.instance.num_vertices() << " vertices, " << fixed(t1) << " s; K4: "
                 << no.instance.num_vertices() << " vertices, " << fixed(t2) << " s";
    }

    /// Terminal images of every partial cover of the gadget onto the 4-ring
    /// with the left pair pinned to colour c, by exhaustive enumeration.
    auto enumerated_table(const GadgetSpec & gadget, unsigned c) -> set<vector<VertexIndex>>
    {
        auto h = ring(4);
        ListAssignment lists;
        lists.set_vertex(gadget.terminal("L"), {VertexIndex(2 * c)});
        lists.set_vertex(gadget.terminal("L'"), {VertexIndex(2 * c + 1)});
        set<vector<VertexIndex>> rows;
        for_each_cover(
            gadget.graph, h, lists,
            [&](const CoverMap & f) {
                vector<VertexIndex> row;
                for (const auto & t : gadget.terminals)
                    row.push_back(f.vmap[t.vertex]);
                rows.insert(row);
                return true;
            },
            SolverOptions{CoverMode::partial});
        return rows;
    }

    auto fourring(Result & r) -> void
    {
        double t1 = 0, t2 = 0;
        auto yes = reduce_fourring(complete_graph(4));
        auto o = solve_reduction(yes, t1);
        r.require(o.status == Status::satisfiable && witness_ok(yes.instance, yes.target, yes.lists, o), "K4 satisfiable");
        if (o.witness)
            r.require(is_proper_colouring(complete_graph(4), 4, back_translate(yes, *o.witness)), "back-translated colouring");
        auto no = reduce_fourring(complete_graph(5));
        r.require(solve_reduction(no, t2).status == Status::unsatisfiable, "K5 unsatisfiable");
        r.require(t1 < 600 && t2 < 600, "each under ten minutes");

        auto one = one_gadget(), zero_one = zero_one_gadget();
        bool tables = true;
        for (unsigned c = 0; c < 4; ++c) {
            VertexIndex l = 2 * c, next = 2 * ((c + 1) % 4);
            tables = tables && enumerated_table(one, c) == set<vector<VertexIndex>>{{l, l + 1, next, next + 1}};
            tables = tables
                && enumerated_table(zero_one, c) == set<vector<VertexIndex>>{{l, l + 1, l, l + 1}, {l, l + 1, next, next + 1}};
        }
        r.require(tables, "1-gadget and 0-1-gadget tables");
        r.detail << "K4: " << fixed(t1) << " s; K5: " << fixed(t2) << " s; gadget tables " << (tables ? "confirmed" : "wrong");
    }

    /// Independent brute force for list homomorphisms to the n-cycle.
    auto has_cycle_hom(const Multigraph & g, unsigned n, const vector<vector<unsigned>> & lists) -> bool
    {
        vector<unsigned> colour(g.num_vertices(), 0);
        std::function<bool(VertexIndex)> extend = [&](VertexIndex v) -> bool {
            if (v == g.num_vertices()) {
                for (const auto & e : g.edges()) {
                    auto d = (colour[e.first] + n - colour[e.second]) % n;
                    if (d != 1 && d != n - 1)
                        return false;
                }
                return true;
            }
            for (auto c : lists[v]) {
                colour[v] = c;
                if (extend(v + 1))
                    return true;
            }
            return false;
        };
        return extend(0);
    }

    auto ring_list(Result & r) -> void
    {
        std::mt19937 rng(10);
        unsigned sat = 0, disagreements = 0;
        Stopwatch clock;
        for (unsigned i = 0; i < 20; ++i) {
            auto g = path(2 + unsigned(rng() % 3));
            vector<vector<unsigned>> lists(g.num_vertices());
            for (auto & l : lists) {
                for (unsigned c = 0; c < 8; ++c)
                    if (rng() % 3 == 0)
                        l.push_back(c);
                if (l.empty())
                    l.push_back(unsigned(rng() % 8));
            }
            auto out = reduce_ring_list(g, lists, 3);
            auto o = solve(out.instance, out.target, out.lists);
            bool expected = has_cycle_hom(g, 8, lists);
            if (expected)
                ++sat;
            bool ok = (o.status == Status::satisfiable) == expected && witness_ok(out.instance, out.target, out.lists, o);
            if (ok && o.witness) {
                auto colour = back_translate(out, *o.witness);
                ok = is_cycle_hom(g, 8, colour);
                for (VertexIndex v = 0; v < g.num_vertices(); ++v)
                    ok = ok && std::find(lists[v].begin(), lists[v].end(), colour[v]) != lists[v].end();
            }
            if (! ok)
                ++disagreements;
        }
        auto seconds = clock.seconds();
        r.require(disagreements == 0, "agreement with brute force");
        r.require(sat > 0 && sat < 20, "both verdicts represented");
        r.require(seconds < 300, "under five minutes");
        r.detail << "20 instances, " << sat << " satisfiable, " << disagreements << " disagreements, " << fixed(seconds) << " s";
    }

    auto rainbow(Result & r) -> void
    {
        auto h = complete_bipartite(3);
        auto m = multicover(h, {MulticoverPlan::self});
        auto gadget = split_vertex(m.graph, m.u);
        double t1 = 0, t2 = 0;

        auto k4 = incidence_graph(complete_graph(4));
        auto yes = reduce_hypergraph(k4, h, gadget);
        auto o = solve_reduction(yes, t1);
        r.require(o.status == Status::satisfiable && witness_ok(yes.instance, yes.target, yes.lists, o), "K4 satisfiable");
        if (o.witness)
            r.require(is_rainbow(k4, 3, back_translate(yes, *o.witness)), "back-translated rainbow colouring");

        auto no = reduce_hypergraph(incidence_graph(petersen()), h, gadget);
        r.require(solve_reduction(no, t2).status == Status::unsatisfiable, "Petersen unsatisfiable");
        r.require(t1 + t2 < 600, "under ten minutes");
        r.detail << "K4: " << yes.instance.num_vertices() << " vertices, " << fixed(t1) << " s; Petersen: "
                 << no.instance.num_vertices() << " vertices, " << fixed(t2) << " s";
    }

    auto lifting(Result & r) -> void
    {
        std::mt19937 rng(12);
        unsigned instances = 0, sat = 0, disagreements = 0, rejected = 0;
        for (unsigned k : {3u, 4u}) {
            auto all = sausages(k);
            for (unsigned i = 0; i < 50; ++i) {
                const auto & s = all[i % all.size()];
                auto lifted = times_k2(s);
                // lifts of the ring with lists around the projection, or arbitrary bipartite cubic graphs
                Multigraph g;
                std::optional<CoverMap> projection;
                if (i % 2 == 0) {
                    auto lift = random_lift(lifted, 1 + unsigned(rng() % 3), rng);
                    g = std::move(lift.graph);
                    projection = std::move(lift.projection);
                }
                else
                    g = random_bipartite_cubic(k * (1 + unsigned(rng() % 2)), rng);
                ListAssignment lists;
                if (i % 4 >= 2)
                    for (VertexIndex v = 0; v < g.num_vertices(); ++v)
                        if (rng() % 3 == 0) {
                            auto x = projection ? projection->vmap[v] : VertexIndex(rng() % lifted.num_vertices());
                            lists.set_vertex(v, {x, VertexIndex((x + 1 + rng() % 3) % lifted.num_vertices())});
                        }
                auto via = lift_via_k2(g, lists, s,
                    [&](const Multigraph & g, const ListAssignment & l) { return solve(g, s, l); });
                // lifted is a copy of ring(k), and the lists name its vertices
                auto direct = solve(g, lifted, lists);
                ++instances;
                if (direct.status == Status::satisfiable)
                    ++sat;
                if (via.status != direct.status || ! witness_ok(g, lifted, lists, via))
                    ++disagreements;
            }

            for (const auto & bad : {complete_graph(4), cycle(3), random_cubic(6, false, rng)}) {
                if (is_bipartite(bad))
                    continue;
                unsigned calls = 0;
                auto o = lift_via_k2(bad, {}, all[0], [&](const Multigraph & g, const ListAssignment & l) {
                    ++calls;
                    return solve(g, all[0], l);
                });
                r.require(o.status == Status::unsatisfiable && calls == 0, "non-bipartite input rejected without calls");
                ++rejected;
            }
        }
        r.require(disagreements == 0, "lifted and direct verdicts agree");
        r.require(sat > 10 && instances - sat > 10, "both verdicts well represented");
        r.detail << instances << " instances, " << sat << " satisfiable, " << disagreements << " disagreements; " << rejected
                 << " non-bipartite inputs rejected";
    }
}

auto main(int argc, char * argv[]) -> int
{
    CLI::App app{"Runs the acceptance criteria and prints one line per criterion"};
    vector<unsigned> only;
    app.add_option("--only", only, "run just these criteria");
    CLI11_PARSE(app, argc, argv);

    vector<std::pair<string, std::function<void(Result &)>>> criteria{
        {"solver agrees with the naive oracle", oracle_equivalence},
        {"2-regular targets by the polynomial procedure", two_regular_coverage},
        {"loop plus semi-edge by matching", loop_semi},
        {"coloured product projections", product_projections},
        {"split gadget partial covers", gadget_partials},
        {"multicover demands and size", multicovers},
        {"sausages times K2 are rings", sausage_rings},
        {"odd cycle homomorphism reduction", ring_hom},
        {"four-colouring reduction and gadget tables", fourring},
        {"list C8 homomorphism reduction", ring_list},
        {"rainbow colouring reduction", rainbow},
        {"lifting through K2", lifting},
    };

    unsigned failures = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        if (! only.empty() && std::find(only.begin(), only.end(), i + 1) == only.end())
            continue;
        Result r;
        Stopwatch clock;
        try {
            criteria[i].second(r);
        }
        catch (const std::exception & e) {
            r.pass = false;
            r.detail << "exception: " << e.what();
        }
        if (! r.pass)
            ++failures;
        std::printf("criterion %2zu %-46s %s  %s [%s s]\n", i + 1, criteria[i].first.c_str(), r.pass ? "PASS" : "FAIL",
            r.detail.str().c_str(), fixed(clock.seconds()).c_str());
        std::fflush(stdout);
    }
    return failures == 0 ? 0 : 1;
}
