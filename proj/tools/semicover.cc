#include <semicover/constructions.hh>
#include <semicover/generators.hh>
#include <semicover/io.hh>
#include <semicover/isomorphism.hh>
#include <semicover/polyalgo.hh>
#include <semicover/reductions.hh>
#include <semicover/solver.hh>

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <fstream>
#include <iostream>
#include <numeric>
#include <random>
#include <string>
#include <vector>

using namespace semicover;

using nlohmann::ordered_json;
using std::string;
using std::string_view;
using std::vector;

namespace
{
    enum ExitCode
    {
        yes = 0,
        no = 1,
        usage = 2,
        out_of_budget = 3
    };

    auto load_graph(const string & path) -> GraphFile
    {
        try {
            return parse_graph(read_input(path));
        }
        catch (const ParseError & e) {
            throw ParseError(path + ": " + e.what());
        }
    }

    auto write_output(const string & path, const string & text) -> void
    {
        if (path == "-") {
            std::cout << text;
            return;
        }
        std::ofstream out(path);
        if (! out)
            throw DomainError("cannot write " + path);
        out << text;
    }

    /// The lists given by --lists, or else the ones embedded in g's file.
    auto lists_for(const GraphFile & g, const Multigraph & h, const string & lists_path) -> ListAssignment
    {
        if (! lists_path.empty()) {
            try {
                return resolve_lists(parse_lists(read_input(lists_path)), g.graph, h);
            }
            catch (const ParseError & e) {
                throw ParseError(lists_path + ": " + e.what());
            }
        }
        return resolve_lists(g.lists, g.graph, h);
    }

    auto result(string_view command) -> ordered_json
    {
        ordered_json doc;
        doc["format"] = "semicover/result";
        doc["version"] = 1;
        doc["command"] = string(command);
        return doc;
    }

    auto emit(const ordered_json & doc) -> void { std::cout << doc.dump(1) << "\n"; }

    auto stats_json(const SolveStats & s) -> ordered_json
    {
        ordered_json j;
        j["nodes"] = s.nodes;
        j["revisions"] = s.revisions;
        j["leaves"] = s.leaves;
        j["candidates"] = s.candidates;
        j["symmetric_skips"] = s.symmetric_skips;
        j["seconds"] = s.seconds;
        return j;
    }

    auto exit_for(Status s) -> int
    {
        switch (s) {
            case Status::satisfiable: return yes;
            case Status::unsatisfiable: return no;
            case Status::resource_limit: return out_of_budget;
        }
        return usage;
    }

    auto report_outcome(string_view command, const SolveOutcome & outcome, const GraphFile & g, const Multigraph & h,
        const string & witness_path, bool stats) -> int
    {
        auto doc = result(command);
        doc["verdict"] = string(to_string(outcome.status));
        if (stats)
            doc["stats"] = stats_json(outcome.stats);
        emit(doc);
        if (outcome.witness && ! witness_path.empty())
            write_output(witness_path, write_cover(g.graph, h, *outcome.witness));
        return exit_for(outcome.status);
    }

    auto random_lift(const Multigraph & h, unsigned n, std::mt19937 & rng) -> Multigraph
    {
        Multigraph g;
        for (VertexIndex x = 0; x < h.num_vertices(); ++x)
            for (unsigned i = 0; i < n; ++i)
                g.add_vertex(h.vertex_id(x) + "." + std::to_string(i));
        auto at = [&](VertexIndex x, unsigned i) { return VertexIndex(x * n + i); };
        for (const auto & e : h.edges()) {
            vector<unsigned> p(n);
            std::iota(p.begin(), p.end(), 0);
            std::shuffle(p.begin(), p.end(), rng);
            if (e.kind == EdgeKind::semi) {
                // pair up consecutive entries of the shuffle, leaving the odd one out
                vector<unsigned> q(n);
                std::iota(q.begin(), q.end(), 0);
                for (unsigned i = 0; i + 1 < n; i += 2) {
                    q[p[i]] = p[i + 1];
                    q[p[i + 1]] = p[i];
                }
                p = q;
            }
            for (unsigned i = 0; i < n; ++i) {
                auto id = e.id + "." + std::to_string(i);
                if (e.kind == EdgeKind::ordinary)
                    g.add_ordinary(id, at(e.first, i), at(e.second, p[i]));
                else if (p[i] == i)
                    g.add_edge(id, e.kind, at(e.first, i), at(e.first, i));
                else if (e.kind == EdgeKind::loop || i < p[i])
                    g.add_ordinary(id, at(e.first, i), at(e.first, p[i]));
            }
        }
        return g;
    }

    auto cover_json(const Multigraph & g, const Multigraph & h, const CoverMap & f) -> ordered_json
    {
        return ordered_json::parse(write_cover(g, h, f));
    }

    auto k33_self_gadget() -> SplitGadget
    {
        MulticoverOptions options;
        options.plan = MulticoverPlan::self;
        auto m = multicover(complete_bipartite(3), options);
        return split_vertex(m.graph, m.u);
    }

    struct Common
    {
        string lists;
        string witness;
        bool stats = false;
        std::uint64_t node_limit = 0;
        unsigned time_limit = 0;
        bool partial = false;

        auto add_to(CLI::App * app, bool with_witness) -> void
        {
            app->add_option("--lists", lists, "lists file (defaults to lists embedded in the input graph)");
            if (with_witness)
                app->add_option("--witness", witness, "write a witness cover here (- for standard output)");
            app->add_flag("--stats", stats, "report search statistics");
            app->add_option("--node-limit", node_limit, "stop after this many search nodes");
            app->add_option("--time-limit", time_limit, "stop after this many milliseconds");
        }

        auto options() const -> SolverOptions
        {
            SolverOptions o;
            if (node_limit)
                o.budget.node_limit = node_limit;
            if (time_limit)
                o.budget.time_limit = std::chrono::milliseconds(time_limit);
            if (partial)
                o.mode = CoverMode::partial;
            return o;
        }
    };
}

auto main(int argc, char * argv[]) -> int
{
    CLI::App app{"Covering projections of graphs with loops, semi-edges and multiple edges"};
    app.require_subcommand(1);
    app.fallthrough();
    app.set_version_flag("--version", "semicover 1.0.0");

    int exit_code = yes;
    unsigned seed = 1;
    app.add_option("--seed", seed, "seed for randomised generators")->capture_default_str();

    // generate
    auto generate = app.add_subcommand("generate", "write a named graph");
    string family;
    vector<string> params;
    generate->add_option("family", family,
                "ring K | sausage K INDEX | cycle N | path N | open-path N | one-vertex SEMIS LOOPS | complete N | "
                "complete-bipartite K | triple-edge | petersen | incidence GRAPH | random-lift GRAPH N")
        ->required();
    generate->add_option("params", params, "family parameters");
    generate->callback([&] {
        auto number = [&](std::size_t i) -> unsigned {
            if (i >= params.size())
                throw DomainError("generate " + family + ": missing parameter " + std::to_string(i + 1));
            try {
                return unsigned(std::stoul(params[i]));
            }
            catch (const std::exception &) {
                throw DomainError("generate " + family + ": '" + params[i] + "' is not a number");
            }
        };
        Multigraph g;
        if (family == "ring")
            g = ring(number(0));
        else if (family == "sausage") {
            auto all = sausages(number(0));
            auto i = number(1);
            if (i >= all.size())
                throw DomainError("there are only " + std::to_string(all.size()) + " sausages for that k");
            g = all[i];
        }
        else if (family == "cycle")
            g = cycle(number(0));
        else if (family == "path")
            g = path(number(0));
        else if (family == "open-path")
            g = open_path(number(0));
        else if (family == "one-vertex")
            g = one_vertex(number(0), number(1));
        else if (family == "complete")
            g = complete_graph(number(0));
        else if (family == "complete-bipartite")
            g = complete_bipartite(number(0));
        else if (family == "triple-edge")
            g = triple_edge();
        else if (family == "petersen")
            g = petersen();
        else if (family == "incidence") {
            if (params.empty())
                throw DomainError("generate incidence needs a graph file");
            g = incidence_graph(load_graph(params[0]).graph);
        }
        else if (family == "random-lift") {
            if (params.empty())
                throw DomainError("generate random-lift needs a graph file");
            std::mt19937 rng(seed);
            g = random_lift(load_graph(params[0]).graph, number(1), rng);
        }
        else
            throw DomainError("unknown family '" + family + "'");
        std::cout << write_graph(g);
    });

    // check, check-partial
    string g_path, h_path, cover_path;
    Common common;
    for (bool partial : {false, true}) {
        auto check = app.add_subcommand(partial ? "check-partial" : "check",
            partial ? "verify a partial covering projection" : "verify a covering projection");
        check->add_option("graph", g_path, "input graph")->required();
        check->add_option("target", h_path, "target graph")->required();
        check->add_option("cover", cover_path, "cover file")->required();
        check->add_option("--lists", common.lists, "also check the cover against these lists");
        check->callback([&, partial] {
            auto g = load_graph(g_path);
            auto h = load_graph(h_path).graph;
            auto f = parse_cover(read_input(cover_path), g.graph, h);
            auto verdict = partial ? verify_partial_cover(g.graph, h, f) : verify_cover(g.graph, h, f);
            auto lists = lists_for(g, h, common.lists);
            bool listed = respects_lists(f, lists);
            auto doc = result(partial ? "check-partial" : "check");
            doc["verdict"] = bool(verdict) && listed ? "accepted" : "rejected";
            if (verdict.violation) {
                doc["violation"]["kind"] = string(to_string(verdict.violation->kind));
                doc["violation"]["element"] = verdict.violation->target;
                doc["violation"]["detail"] = verdict.violation->detail;
            }
            else if (! listed)
                doc["violation"]["kind"] = "lists";
            emit(doc);
            exit_code = bool(verdict) && listed ? yes : no;
        });
    }

    // solve
    auto solve_cmd = app.add_subcommand("solve", "decide (List-)H-Cover by backtracking search");
    unsigned jobs = 1;
    solve_cmd->add_option("graph", g_path, "input graph (- for standard input)")->required();
    solve_cmd->add_option("target", h_path, "target graph")->required();
    common.add_to(solve_cmd, true);
    solve_cmd->add_flag("--partial", common.partial, "look for a partial covering projection");
    solve_cmd->add_option("--jobs", jobs, "portfolio workers")->check(CLI::Range(1u, 64u));
    solve_cmd->callback([&] {
        auto g = load_graph(g_path);
        auto h = load_graph(h_path).graph;
        auto lists = lists_for(g, h, common.lists);
        auto options = common.options();
        auto outcome = jobs > 1 ? solve_portfolio(g.graph, h, lists, options, jobs) : solve(g.graph, h, lists, options);
        exit_code = report_outcome("solve", outcome, g, h, common.witness, common.stats);
    });

    // enumerate
    auto enumerate_cmd = app.add_subcommand("enumerate", "list covering projections");
    std::size_t limit = 100;
    enumerate_cmd->add_option("graph", g_path, "input graph")->required();
    enumerate_cmd->add_option("target", h_path, "target graph")->required();
    enumerate_cmd->add_option("--limit", limit, "stop after this many")->capture_default_str();
    enumerate_cmd->add_flag("--partial", common.partial, "enumerate partial covering projections");
    common.add_to(enumerate_cmd, false);
    enumerate_cmd->callback([&] {
        auto g = load_graph(g_path);
        auto h = load_graph(h_path).graph;
        auto lists = lists_for(g, h, common.lists);
        auto e = common.partial ? enumerate_partial(g.graph, h, lists, limit, common.options())
                                : enumerate(g.graph, h, lists, limit, common.options());
        auto doc = result("enumerate");
        doc["count"] = e.covers.size();
        doc["truncated"] = e.truncated;
        doc["covers"] = ordered_json::array();
        for (auto & f : e.covers)
            doc["covers"].push_back(cover_json(g.graph, h, f));
        if (common.stats)
            doc["stats"] = stats_json(e.stats);
        emit(doc);
        exit_code = e.covers.empty() ? (e.status == Status::resource_limit ? out_of_budget : no) : yes;
    });

    // poly
    auto poly = app.add_subcommand("poly", "decide List-H-Cover with a polynomial procedure");
    poly->add_option("graph", g_path, "input graph")->required();
    poly->add_option("target", h_path, "target graph")->required();
    common.add_to(poly, true);
    poly->callback([&] {
        auto g = load_graph(g_path);
        auto h = load_graph(h_path).graph;
        auto lists = lists_for(g, h, common.lists);
        auto which = dispatch(h);
        if (which == PolyCase::none)
            throw DomainError("no polynomial procedure applies to this target");
        auto outcome = decide_poly(h, g.graph, lists);
        auto doc = result("poly");
        doc["case"] = string(to_string(which));
        doc["verdict"] = string(to_string(outcome.status));
        if (common.stats)
            doc["stats"] = stats_json(outcome.stats);
        emit(doc);
        if (outcome.witness && ! common.witness.empty())
            write_output(common.witness, write_cover(g.graph, h, *outcome.witness));
        exit_code = exit_for(outcome.status);
    });

    // matching
    auto matching = app.add_subcommand("matching", "maximum matching of the ordinary edges");
    matching->add_option("graph", g_path, "input graph")->required();
    matching->callback([&] {
        auto g = load_graph(g_path).graph;
        auto m = maximum_matching(g);
        auto doc = result("matching");
        doc["size"] = m.edges.size();
        doc["perfect"] = m.perfect;
        doc["edges"] = ordered_json::array();
        for (auto e : m.edges)
            doc["edges"].push_back(g.edge(e).id);
        emit(doc);
        exit_code = m.perfect ? yes : no;
    });

    // color-edges
    auto colour_edges = app.add_subcommand("color-edges", "proper k-edge-colouring of a k-regular graph");
    unsigned k = 0;
    colour_edges->add_option("graph", g_path, "input graph")->required();
    colour_edges->add_option("-k", k, "number of colours (defaults to the degree)");
    colour_edges->callback([&] {
        auto g = load_graph(g_path).graph;
        auto degree = regular_degree(g);
        if (! k) {
            if (! degree)
                throw DomainError("the graph is not regular; give -k");
            k = *degree;
        }
        auto c = proper_edge_coloring(g, k);
        auto doc = result("color-edges");
        doc["k"] = k;
        doc["verdict"] = c ? "coloured" : "none";
        if (c) {
            doc["colours"] = ordered_json::object();
            for (EdgeIndex e = 0; e < g.num_edges(); ++e)
                doc["colours"][g.edge(e).id] = c->colour[e];
        }
        emit(doc);
        exit_code = c ? yes : no;
    });

    // product
    auto product = app.add_subcommand("product", "coloured product of properly edge-coloured regular graphs");
    vector<string> factor_paths;
    unsigned latin = 0, latin_copies = 0;
    string projections_path;
    product->add_option("factors", factor_paths, "factor graphs, coloured by color-edges order");
    product->add_option("--latin", latin, "use latin-square factors K_{k,k} of this k");
    product->add_option("--copies", latin_copies, "number of latin-square factors")->needs("--latin");
    product->add_option("--projections", projections_path, "write the coordinate projections as a JSON array");
    product->callback([&] {
        vector<ColoredFactor> factors;
        for (unsigned i = 0; i < latin_copies; ++i)
            factors.push_back(latin_square_factor(latin));
        for (auto & path : factor_paths) {
            auto g = load_graph(path).graph;
            auto degree = regular_degree(g);
            if (! degree)
                throw DomainError(path + " is not regular");
            auto c = proper_edge_coloring(g, *degree);
            if (! c)
                throw DomainError(path + " has no proper " + std::to_string(*degree) + "-edge-colouring");
            factors.push_back(ColoredFactor{std::move(g), *c});
        }
        auto p = colored_product(factors);
        std::cout << write_graph(p.product);
        if (! projections_path.empty()) {
            auto all = ordered_json::array();
            for (std::size_t i = 0; i < factors.size(); ++i)
                all.push_back(cover_json(p.product, factors[i].graph, p.projections[i]));
            write_output(projections_path, all.dump(1) + "\n");
        }
    });

    // multicover
    auto multicover_cmd = app.add_subcommand("multicover", "a cover realising every local bijection at one vertex");
    string plan = "product";
    double max_vertices = 1e6;
    bool estimate = false;
    multicover_cmd->add_option("target", h_path, "target graph")->required();
    multicover_cmd->add_option("--plan", plan, "product or self")
        ->check(CLI::IsMember({"product", "self"}))
        ->capture_default_str();
    multicover_cmd->add_option("--max-vertices", max_vertices, "refuse larger products")->capture_default_str();
    multicover_cmd->add_flag("--estimate", estimate, "only report the size of the product plan");
    multicover_cmd->callback([&] {
        auto h = load_graph(h_path).graph;
        if (estimate) {
            auto doc = result("multicover");
            doc["estimate"] = multicover_size_estimate(h);
            emit(doc);
            return;
        }
        MulticoverOptions options;
        options.plan = plan == "self" ? MulticoverPlan::self : MulticoverPlan::product;
        options.max_vertices = max_vertices;
        auto m = multicover(h, options);
        std::cerr << "special vertex: " << m.graph.vertex_id(m.u) << "\n";
        std::cout << write_graph(m.graph);
    });

    // split
    auto split = app.add_subcommand("split", "split a vertex into pendant vertices");
    string vertex;
    split->add_option("graph", g_path, "input graph")->required();
    split->add_option("vertex", vertex, "vertex to split")->required();
    split->callback([&] {
        auto g = load_graph(g_path).graph;
        auto s = split_vertex(g, g.vertex(vertex));
        std::cout << write_graph(s.graph);
    });

    // times-k2
    auto times = app.add_subcommand("times-k2", "categorical product with K2");
    times->add_option("graph", g_path, "input graph")->required();
    times->callback([&] { std::cout << write_graph(times_k2(load_graph(g_path).graph)); });

    // verify-gadget
    auto verify = app.add_subcommand("verify-gadget", "check the split-gadget properties against a target");
    verify->add_option("graph", g_path, "a cover of the target")->required();
    verify->add_option("vertex", vertex, "vertex to split")->required();
    verify->add_option("target", h_path, "target graph")->required();
    verify->callback([&] {
        auto g = load_graph(g_path).graph;
        auto h = load_graph(h_path).graph;
        auto report = verify_gadget(split_vertex(g, g.vertex(vertex)), h);
        auto doc = result("verify-gadget");
        doc["extends"] = report.extends;
        doc["same_vertex"] = report.same_vertex;
        doc["distinct_edges"] = report.distinct_edges;
        doc["demands"] = report.demands;
        doc["partial_covers"] = report.partial_covers;
        doc["unrealized"] = report.unrealized.size();
        emit(doc);
        exit_code = report.extends && report.same_vertex && report.distinct_edges ? yes : no;
    });

    // reduce
    auto reduce = app.add_subcommand("reduce", "emit an instance of (List-)H-Cover from a source problem");
    reduce->require_subcommand(1);
    string source_path, manifest_path, target_out;
    unsigned alpha = 0, beta = 0, list_alpha = 3;
    auto emit_reduction = [&](const ReductionOutput & r) {
        std::cout << write_graph(r.instance, unresolve_lists(r.lists, r.instance, r.target));
        if (! manifest_path.empty())
            write_output(manifest_path, write_manifest(r.manifest));
        if (! target_out.empty())
            write_output(target_out, write_graph(r.target));
    };
    auto reduction = [&](const string & name, const string & description) {
        auto sub = reduce->add_subcommand(name, description);
        sub->add_option("source", source_path, "source graph")->required();
        sub->add_option("--manifest", manifest_path, "write the certificate manifest here");
        sub->add_option("--target", target_out, "write the target graph here");
        return sub;
    };

    auto ring_hom = reduction("ring-hom", "homomorphism to C_(2b+3) into cover of the 2^a(2b+3)-ring");
    ring_hom->add_option("--alpha", alpha, "a")->capture_default_str();
    ring_hom->add_option("--beta", beta, "b")->capture_default_str();
    ring_hom->callback([&] { emit_reduction(reduce_ring_hom(load_graph(source_path).graph, alpha, beta)); });

    auto ring_list = reduction("ring-list", "list homomorphism to C_(2^a) into list cover of the 2^a-ring");
    ring_list->add_option("--alpha", list_alpha, "a, at least 3")->capture_default_str();
    ring_list->add_option("--lists", common.lists,
        "lists file naming, per source vertex, colours 0..2^a-1 (defaults to embedded lists)");
    ring_list->callback([&] {
        auto source = load_graph(source_path);
        auto raw = common.lists.empty() ? source.lists : parse_lists(read_input(common.lists));
        vector<vector<unsigned>> lists;
        if (! raw.vertices.empty()) {
            lists.assign(source.graph.num_vertices(), {});
            vector<bool> seen(source.graph.num_vertices(), false);
            for (auto & [id, colours] : raw.vertices) {
                auto v = source.graph.vertex(id);
                seen[v] = true;
                for (auto & c : colours) {
                    try {
                        lists[v].push_back(unsigned(std::stoul(c)));
                    }
                    catch (const std::exception &) {
                        throw DomainError("list entry '" + c + "' of " + id + " is not a colour number");
                    }
                }
            }
            for (VertexIndex v = 0; v < seen.size(); ++v)
                if (! seen[v])
                    for (unsigned c = 0; c < (1u << std::min(list_alpha, 6u)); ++c)
                        lists[v].push_back(c);
        }
        emit_reduction(reduce_ring_list(source.graph, lists, list_alpha));
    });

    auto fourring = reduction("fourring", "4-colouring into cover of the 4-ring");
    fourring->callback([&] { emit_reduction(reduce_fourring(load_graph(source_path).graph)); });

    auto hypergraph = reduction("hypergraph", "rainbow colouring into List-H-Cover");
    string gadget_path, gadget_vertex;
    bool from_graph = false;
    hypergraph->add_option("--with-target", h_path, "target graph (defaults to K_{3,3})");
    hypergraph->add_option("--gadget", gadget_path, "a cover of the target to split (defaults to the target itself)");
    hypergraph->add_option("--at", gadget_vertex, "vertex of the gadget cover to split");
    hypergraph->add_flag("--incidence-of", from_graph, "the source is a simple graph; use its incidence graph");
    hypergraph->callback([&] {
        auto source = load_graph(source_path).graph;
        if (from_graph)
            source = incidence_graph(source);
        auto h = h_path.empty() ? complete_bipartite(3) : load_graph(h_path).graph;
        SplitGadget gadget;
        if (gadget_path.empty() && h_path.empty())
            gadget = k33_self_gadget();
        else {
            auto cover = gadget_path.empty() ? h : load_graph(gadget_path).graph;
            auto at = gadget_vertex.empty() ? VertexIndex(0) : cover.vertex(gadget_vertex);
            gadget = split_vertex(cover, at);
        }
        emit_reduction(reduce_hypergraph(source, h, gadget));
    });

    auto decode = reduce->add_subcommand("decode", "read a source certificate off a witness");
    decode->add_option("manifest", manifest_path, "manifest written by reduce")->required();
    decode->add_option("instance", g_path, "emitted instance")->required();
    decode->add_option("target", h_path, "target graph")->required();
    decode->add_option("cover", cover_path, "witness cover of the instance")->required();
    decode->callback([&] {
        auto m = parse_manifest(read_input(manifest_path));
        auto g = load_graph(g_path).graph;
        auto h = load_graph(h_path).graph;
        auto f = parse_cover(read_input(cover_path), g, h);
        if (! verify_cover(g, h, f))
            throw DomainError("the cover is not a covering projection of the instance");
        auto colours = back_translate(m, g, h, f);
        auto doc = result("decode");
        doc["kind"] = string(to_string(m.kind));
        doc["certificate"] = ordered_json::object();
        for (std::size_t i = 0; i < m.items.size(); ++i)
            doc["certificate"][m.items[i].source] = colours[i];
        emit(doc);
    });

    // isomorphic
    auto isomorphic = app.add_subcommand("isomorphic", "test two graphs for isomorphism");
    isomorphic->add_option("graph", g_path, "first graph")->required();
    isomorphic->add_option("other", h_path, "second graph")->required();
    isomorphic->callback([&] {
        auto g = load_graph(g_path).graph;
        auto h = load_graph(h_path).graph;
        auto iso = find_isomorphism(g, h);
        auto doc = result("isomorphic");
        doc["verdict"] = iso ? "isomorphic" : "not-isomorphic";
        if (iso) {
            doc["vmap"] = ordered_json::object();
            for (VertexIndex v = 0; v < g.num_vertices(); ++v)
                doc["vmap"][g.vertex_id(v)] = h.vertex_id(iso->vertex_map[v]);
        }
        emit(doc);
        exit_code = iso ? yes : no;
    });

    try {
        app.parse(argc, argv);
    }
    catch (const CLI::ParseError & e) {
        auto code = app.exit(e);
        return code == 0 ? yes : usage;
    }
    catch (const DomainError & e) {
        std::cerr << "semicover: " << e.what() << "\n";
        return usage;
    }
    return exit_code;
}
