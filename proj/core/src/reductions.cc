#include <semicover/generators.hh>
#include <semicover/io.hh>
#include <semicover/reductions.hh>

#include <json.hpp>

#include <algorithm>
#include <functional>
#include <set>
#include <stdexcept>

using std::map;
using std::optional;
using std::string;
using std::string_view;
using std::vector;

namespace semicover
{
    auto to_string(GadgetKind kind) -> string_view
    {
        switch (kind) {
            case GadgetKind::vertex: return "vertex";
            case GadgetKind::enforcing: return "enforcing";
            case GadgetKind::edge: return "edge";
            case GadgetKind::one: return "one";
            case GadgetKind::zero_one: return "zero_one";
        }
        return "?";
    }

    auto GadgetSpec::terminal(string_view name) const -> VertexIndex
    {
        for (const auto & t : terminals)
            if (t.name == name)
                return t.vertex;
        throw DomainError("gadget has no terminal named " + string(name));
    }

    namespace reductions_detail
    {
        class Builder
        {
        public:
            Multigraph graph;

            auto vertex(string id) -> VertexIndex { return graph.add_vertex(std::move(id)); }

            auto edge(string id, VertexIndex a, VertexIndex b) -> EdgeIndex
            {
                return graph.add_ordinary(std::move(id), a, b);
            }

            /// Copies part under the prefix; vertices of part found in bind
            /// are merged into the given existing vertices.
            auto copy(const Multigraph & part, const string & prefix, const map<VertexIndex, VertexIndex> & bind,
                std::optional<EdgeIndex> skip = std::nullopt) -> vector<VertexIndex>
            {
                vector<VertexIndex> image(part.num_vertices());
                for (VertexIndex v = 0; v < part.num_vertices(); ++v) {
                    auto b = bind.find(v);
                    image[v] = b != bind.end() ? b->second : graph.add_vertex(prefix + part.vertex_id(v));
                }
                for (EdgeIndex e = 0; e < part.num_edges(); ++e)
                    if (e != skip) {
                        const auto & ed = part.edge(e);
                        graph.add_edge(prefix + ed.id, ed.kind, image[ed.first], image[ed.second]);
                    }
                return image;
            }
        };
    }

    using reductions_detail::Builder;

    auto vertex_gadget(unsigned k, unsigned deg) -> GadgetSpec
    {
        if (k < 2 || deg < 1)
            throw DomainError("vertex_gadget needs k >= 2 and deg >= 1");
        auto l = 2 * k * deg;
        GadgetSpec spec{deg == 1 ? GadgetKind::enforcing : GadgetKind::vertex, k, {}, {}};
        auto & g = spec.graph;
        auto at = [&](unsigned c, unsigned i) { return VertexIndex((c - 1) * l + (i - 1)); };
        for (unsigned c = 1; c <= 2; ++c)
            for (unsigned i = 1; i <= l; ++i)
                g.add_vertex("p" + std::to_string(c) + "_" + std::to_string(i));

        auto deleted = [&](unsigned i) { return i % (2 * k) == 2 * k - 1; };
        for (unsigned c = 1; c <= 2; ++c)
            for (unsigned i = 1; i <= l; ++i) {
                if (c == 2 && deleted(i))
                    continue;
                g.add_ordinary("q" + std::to_string(c) + "_" + std::to_string(i), at(c, i), at(c, i % l + 1));
            }
        for (unsigned i = 1; i <= l / 2; ++i) {
            g.add_ordinary("x" + std::to_string(i), at(1, 2 * i - 1), at(2, 2 * i));
            g.add_ordinary("y" + std::to_string(i), at(2, 2 * i - 1), at(1, 2 * i));
        }
        for (unsigned j = 1; j <= deg; ++j) {
            auto js = std::to_string(j);
            auto black = g.add_vertex("black" + js);
            auto white = g.add_vertex("white" + js);
            g.add_ordinary("tb" + js, black, at(2, 2 * k * j - 1));
            g.add_ordinary("tw" + js, white, at(2, 2 * k * j));
            spec.terminals.push_back(Terminal{"black" + js, black});
            spec.terminals.push_back(Terminal{"white" + js, white});
        }
        return spec;
    }

    auto enforcing_gadget(unsigned k) -> GadgetSpec
    {
        return vertex_gadget(k, 1);
    }

    auto edge_gadget(unsigned k, unsigned shift) -> GadgetSpec
    {
        if (k < 2)
            throw DomainError("edge_gadget needs k >= 2");
        if (shift % 2 != 0 || shift < 2 || shift > 2 * k - 2)
            throw DomainError("edge_gadget needs an even shift between 2 and 2k-2");

        auto enforcing = enforcing_gadget(k);
        auto black = enforcing.terminal("black1"), white = enforcing.terminal("white1");
        Builder b;
        auto n = 2 * k;
        auto at = [&](unsigned j, unsigned i) { return VertexIndex((j - 1) * n + ((i - 1) % n)); };
        for (unsigned j = 1; j <= k; ++j)
            for (unsigned i = 1; i <= n; ++i)
                b.vertex("c" + std::to_string(j) + "_" + std::to_string(i));
        for (unsigned j = 1; j <= k; ++j)
            for (unsigned i = 1; i <= n; ++i)
                b.edge("r" + std::to_string(j) + "_" + std::to_string(i), at(j, i), at(j, i + 1));

        unsigned count = 0;
        auto link = [&](VertexIndex lower, VertexIndex upper) {
            b.copy(enforcing.graph, "eq" + std::to_string(++count) + "/", {{black, lower}, {white, upper}});
        };
        for (unsigned j = 1; j < k; ++j)
            for (unsigned i = (j % 2 == 1 ? 2 : 1); i <= n; i += 2)
                link(at(j, i), at(j + 1, i));
        for (unsigned i = 3; i <= n; i += 2)
            if (i != 1 + shift)
                link(at(1, i), at(k, i + k));

        GadgetSpec spec{GadgetKind::edge, k, std::move(b.graph), {}};
        spec.terminals = {Terminal{"a", at(1, 1)}, Terminal{"b", at(1, 1 + shift)}, Terminal{"a'", at(k, 1 + k)},
            Terminal{"b'", at(k, 1 + k + shift)}};
        for (VertexIndex v = 0; v < spec.graph.num_vertices(); ++v) {
            bool terminal = std::any_of(spec.terminals.begin(), spec.terminals.end(), [&](const Terminal & t) { return t.vertex == v; });
            if (spec.graph.degree(v) != (terminal ? 2u : 3u))
                throw std::logic_error("edge gadget has a vertex of unexpected degree");
        }
        return spec;
    }

    auto one_gadget() -> GadgetSpec
    {
        auto enforcing = enforcing_gadget(4);
        auto black = enforcing.terminal("black1"), white = enforcing.terminal("white1");
        Builder b;
        map<string, VertexIndex> at;
        for (string v : {"L", "L'", "R", "R'", "P", "Q", "S", "T", "W1", "W2", "B1", "B2", "Y1", "Y2", "Z1", "Z2"})
            at[v] = b.vertex(v);
        const std::pair<const char *, const char *> plain[] = {{"L'", "R"}, {"L", "W1"}, {"R'", "Z1"}, {"P", "Q"},
            {"P", "W2"}, {"T", "S"}, {"T", "Q"}, {"S", "Z2"}, {"W1", "B1"}, {"W1", "B2"}, {"W2", "B1"}, {"W2", "B2"},
            {"B1", "Y1"}, {"B2", "Y2"}, {"Y1", "Z1"}, {"Y1", "Z2"}, {"Y2", "Z1"}, {"Y2", "Z2"}};
        unsigned count = 0;
        for (auto [u, v] : plain)
            b.edge("e" + std::to_string(++count), at[u], at[v]);
        const std::pair<const char *, const char *> linked[] = {{"P", "L'"}, {"L", "Q"}, {"R", "S"}, {"T", "R'"}};
        count = 0;
        for (auto [u, v] : linked)
            b.copy(enforcing.graph, "eq" + std::to_string(++count) + "/", {{black, at[u]}, {white, at[v]}});

        GadgetSpec spec{GadgetKind::one, 4, std::move(b.graph), {}};
        for (string t : {"L", "L'", "R", "R'"})
            spec.terminals.push_back(Terminal{t, at[t]});
        return spec;
    }

    auto zero_one_gadget() -> GadgetSpec
    {
        // White (j,k) meets black (j-1,k), (j,k-1) and (j,k), indices mod 4;
        // the rungs at (0,0) and (0,1) are left out and their ends are the terminals.
        auto name = [](char side, unsigned j, unsigned k) -> string {
            if (j == 0 && k <= 1)
                return string(k == 0 ? "L" : "R") + (side == 'b' ? "'" : "");
            return side + std::to_string(j) + std::to_string(k);
        };
        Builder b;
        map<string, VertexIndex> at;
        for (char side : {'w', 'b'})
            for (unsigned j = 0; j < 4; ++j)
                for (unsigned k = 0; k < 4; ++k)
                    at[name(side, j, k)] = b.vertex(name(side, j, k));
        for (unsigned j = 0; j < 4; ++j)
            for (unsigned k = 0; k < 4; ++k) {
                auto w = at[name('w', j, k)];
                auto tag = std::to_string(j) + std::to_string(k);
                b.edge("s" + tag, w, at[name('b', (j + 3) % 4, k)]);
                b.edge("t" + tag, w, at[name('b', j, (k + 3) % 4)]);
                if (! (j == 0 && k <= 1))
                    b.edge("d" + tag, w, at[name('b', j, k)]);
            }

        GadgetSpec spec{GadgetKind::zero_one, 4, std::move(b.graph), {}};
        for (string t : {"L", "L'", "R", "R'"})
            spec.terminals.push_back(Terminal{t, at[t]});
        return spec;
    }

    auto gadget_behaviour(const GadgetSpec & gadget, const Multigraph & h,
        const vector<std::pair<string, VertexIndex>> & pins) -> std::set<vector<VertexIndex>>
    {
        ListAssignment lists;
        for (const auto & [name, x] : pins)
            lists.set_vertex(gadget.terminal(name), {x});
        SolverOptions options;
        options.mode = CoverMode::partial;

        std::set<vector<VertexIndex>> table;
        vector<VertexIndex> images;
        std::function<void(std::size_t, const ListAssignment &)> extend = [&](std::size_t i, const ListAssignment & current) {
            if (solve(gadget.graph, h, current, options).status != Status::satisfiable)
                return;
            if (i == gadget.terminals.size()) {
                table.insert(images);
                return;
            }
            auto v = gadget.terminals[i].vertex;
            for (VertexIndex x = 0; x < h.num_vertices(); ++x) {
                if (! current.allows_vertex(v, x))
                    continue;
                auto next = current;
                next.set_vertex(v, {x});
                images.push_back(x);
                extend(i + 1, next);
                images.pop_back();
            }
        };
        extend(0, lists);
        return table;
    }

    auto to_string(SourceKind kind) -> string_view
    {
        switch (kind) {
            case SourceKind::cycle_hom: return "cycle_hom";
            case SourceKind::cycle_list_hom: return "cycle_list_hom";
            case SourceKind::four_colouring: return "four_colouring";
            case SourceKind::rainbow: return "rainbow";
        }
        return "?";
    }

    auto parse_source_kind(string_view text) -> optional<SourceKind>
    {
        for (auto kind : {SourceKind::cycle_hom, SourceKind::cycle_list_hom, SourceKind::four_colouring, SourceKind::rainbow})
            if (to_string(kind) == text)
                return kind;
        return std::nullopt;
    }

    auto write_manifest(const Manifest & m) -> string
    {
        nlohmann::ordered_json doc;
        doc["format"] = "semicover/manifest";
        doc["version"] = 1;
        doc["kind"] = string(to_string(m.kind));
        doc["k"] = m.k;
        doc["shift"] = m.shift;
        doc["colours"] = m.colours;
        auto items = nlohmann::ordered_json::array();
        for (const auto & item : m.items) {
            nlohmann::ordered_json j;
            j["source"] = item.source;
            j["component"] = item.component;
            j["black"] = item.black;
            j["white"] = item.white;
            if (item.fixed)
                j["fixed"] = *item.fixed;
            items.push_back(std::move(j));
        }
        doc["items"] = std::move(items);
        if (m.kind == SourceKind::rainbow) {
            doc["colour_vertices"] = m.colour_vertices;
            doc["anchor"] = m.anchor;
            doc["anchored"] = m.anchored;
        }
        return doc.dump(2) + "\n";
    }

    namespace
    {
        using nlohmann::ordered_json;

        auto manifest_error(const string & pointer, const string & message) -> ParseError
        {
            return ParseError("at " + pointer + ": " + message);
        }

        auto read_unsigned(const ordered_json & doc, const string & key, const string & pointer) -> unsigned
        {
            auto f = doc.find(key);
            if (f == doc.end() || ! f->is_number_unsigned())
                throw manifest_error(pointer + "/" + key, "expected a non-negative integer");
            return f->get<unsigned>();
        }

        auto read_strings(const ordered_json & doc, const string & key, const string & pointer, bool required)
            -> vector<string>
        {
            auto f = doc.find(key);
            if (f == doc.end()) {
                if (required)
                    throw manifest_error(pointer + "/" + key, "missing");
                return {};
            }
            if (! f->is_array())
                throw manifest_error(pointer + "/" + key, "expected an array of strings");
            vector<string> out;
            for (std::size_t i = 0; i < f->size(); ++i) {
                if (! (*f)[i].is_string())
                    throw manifest_error(pointer + "/" + key + "/" + std::to_string(i), "expected a string");
                out.push_back((*f)[i].get<string>());
            }
            return out;
        }
    }

    auto parse_manifest(string_view text) -> Manifest
    {
        ordered_json doc;
        try {
            doc = ordered_json::parse(text);
        }
        catch (const ordered_json::parse_error & e) {
            throw ParseError("at byte " + std::to_string(e.byte) + ": malformed JSON");
        }
        if (! doc.is_object())
            throw manifest_error("/", "expected an object");
        auto f = doc.find("format");
        if (f == doc.end() || ! f->is_string() || f->get<string>() != "semicover/manifest")
            throw manifest_error("/format", "expected \"semicover/manifest\"");
        auto v = doc.find("version");
        if (v == doc.end() || ! v->is_number_integer() || v->get<int>() != 1)
            throw manifest_error("/version", "expected 1");

        Manifest m;
        auto kind = doc.find("kind");
        if (kind == doc.end() || ! kind->is_string() || ! parse_source_kind(kind->get<string>()))
            throw manifest_error("/kind", "expected one of cycle_hom, cycle_list_hom, four_colouring, rainbow");
        m.kind = *parse_source_kind(kind->get<string>());
        m.k = read_unsigned(doc, "k", "");
        m.shift = read_unsigned(doc, "shift", "");
        m.colours = read_unsigned(doc, "colours", "");

        auto items = doc.find("items");
        if (items == doc.end() || ! items->is_array())
            throw manifest_error("/items", "expected an array");
        for (std::size_t i = 0; i < items->size(); ++i) {
            auto pointer = "/items/" + std::to_string(i);
            const auto & j = (*items)[i];
            if (! j.is_object())
                throw manifest_error(pointer, "expected an object");
            Manifest::Item item;
            auto source = j.find("source");
            if (source == j.end() || ! source->is_string())
                throw manifest_error(pointer + "/source", "expected a string");
            item.source = source->get<string>();
            item.component = read_unsigned(j, "component", pointer);
            item.black = read_strings(j, "black", pointer, true);
            item.white = read_strings(j, "white", pointer, true);
            if (j.contains("fixed"))
                item.fixed = read_unsigned(j, "fixed", pointer);
            m.items.push_back(std::move(item));
        }
        if (m.kind == SourceKind::rainbow) {
            m.colour_vertices = read_strings(doc, "colour_vertices", "", true);
            auto anchor = doc.find("anchor");
            if (anchor == doc.end() || ! anchor->is_string())
                throw manifest_error("/anchor", "expected a string");
            m.anchor = anchor->get<string>();
            m.anchored = read_strings(doc, "anchored", "", true);
        }
        return m;
    }

    namespace
    {
        auto require_simple(const Multigraph & g, string_view what) -> void
        {
            if (g.has_loops_or_semi_edges())
                throw DomainError(string(what) + " needs a graph without loops and semi-edges");
            std::set<std::pair<VertexIndex, VertexIndex>> seen;
            for (const auto & e : g.edges())
                if (! seen.emplace(std::min(e.first, e.second), std::max(e.first, e.second)).second)
                    throw DomainError(string(what) + " needs a graph without parallel edges");
        }

        struct LeafPairs
        {
            vector<VertexIndex> black, white;
            unsigned used = 0;

            auto take() -> std::pair<VertexIndex, VertexIndex>
            {
                auto i = used++;
                return {black.at(i), white.at(i)};
            }
        };

        /// One vertex gadget per non-isolated source vertex, one manifest item per source vertex.
        auto place_vertex_gadgets(Builder & b, const Multigraph & g, unsigned k, Manifest & m) -> vector<LeafPairs>
        {
            auto components = connected_components(g);
            vector<LeafPairs> leaves(g.num_vertices());
            for (VertexIndex v = 0; v < g.num_vertices(); ++v) {
                Manifest::Item item;
                item.source = g.vertex_id(v);
                item.component = components[v];
                if (auto d = g.degree(v); d > 0) {
                    auto gadget = vertex_gadget(k, d);
                    auto image = b.copy(gadget.graph, "v:" + g.vertex_id(v) + "/", {});
                    for (unsigned j = 1; j <= d; ++j) {
                        auto black = image[gadget.terminal("black" + std::to_string(j))];
                        auto white = image[gadget.terminal("white" + std::to_string(j))];
                        leaves[v].black.push_back(black);
                        leaves[v].white.push_back(white);
                        item.black.push_back(b.graph.vertex_id(black));
                        item.white.push_back(b.graph.vertex_id(white));
                    }
                }
                m.items.push_back(std::move(item));
            }
            return leaves;
        }

        auto ring_output(Builder && b, ListAssignment lists, unsigned k, Manifest m) -> ReductionOutput
        {
            return ReductionOutput{std::move(b.graph), std::move(lists), ring(k), std::move(m)};
        }

        auto link_edge_gadgets(Builder & b, const Multigraph & g, vector<LeafPairs> & leaves, unsigned k, unsigned shift)
            -> void
        {
            auto gadget = edge_gadget(k, shift);
            for (EdgeIndex e = 0; e < g.num_edges(); ++e) {
                const auto & ed = g.edge(e);
                auto [bu, wu] = leaves[ed.first].take();
                auto [bv, wv] = leaves[ed.second].take();
                b.copy(gadget.graph, "e:" + ed.id + "/",
                    {{gadget.terminal("a"), bu}, {gadget.terminal("a'"), wu}, {gadget.terminal("b"), bv},
                        {gadget.terminal("b'"), wv}});
            }
        }
    }

    auto reduce_ring_hom(const Multigraph & g, unsigned alpha, unsigned beta) -> ReductionOutput
    {
        require_simple(g, "reduce_ring_hom");
        if (alpha > 4 || beta > 8)
            throw DomainError("reduce_ring_hom: alpha or beta too large for the solver's target size");
        unsigned colours = 2 * beta + 3;
        unsigned k = (1u << alpha) * colours;
        unsigned shift = 1u << (alpha + 1);

        Builder b;
        Manifest m;
        m.kind = SourceKind::cycle_hom;
        m.k = k;
        m.shift = shift;
        m.colours = colours;
        auto leaves = place_vertex_gadgets(b, g, k, m);
        for (VertexIndex v = 0; v < g.num_vertices(); ++v)
            if (g.degree(v) == 0)
                m.items[v].fixed = 0;
        link_edge_gadgets(b, g, leaves, k, shift);
        return ring_output(std::move(b), {}, k, std::move(m));
    }

    auto reduce_ring_list(const Multigraph & g, const vector<vector<unsigned>> & lists, unsigned alpha) -> ReductionOutput
    {
        require_simple(g, "reduce_ring_list");
        if (alpha < 3)
            throw DomainError("reduce_ring_list needs alpha >= 3");
        if (alpha > 4)
            throw DomainError("reduce_ring_list: alpha too large for the solver's target size");
        if (! lists.empty() && lists.size() != g.num_vertices())
            throw DomainError("reduce_ring_list needs one list per source vertex");
        unsigned k = 1u << alpha;
        for (const auto & l : lists)
            for (auto c : l)
                if (c >= k)
                    throw DomainError("reduce_ring_list: list entry " + std::to_string(c) + " is not a vertex of C_" +
                        std::to_string(k));

        Builder b;
        Manifest m;
        m.kind = SourceKind::cycle_list_hom;
        m.k = k;
        m.shift = 2;
        m.colours = k;
        auto leaves = place_vertex_gadgets(b, g, k, m);
        link_edge_gadgets(b, g, leaves, k, 2);

        ListAssignment out;
        for (VertexIndex v = 0; v < g.num_vertices(); ++v) {
            if (g.degree(v) == 0) {
                if (lists.empty() || ! lists[v].empty())
                    m.items[v].fixed = lists.empty() ? 0 : lists[v].front();
                else {
                    // K4 covers no ring
                    auto prefix = "void:" + g.vertex_id(v) + "/";
                    vector<VertexIndex> vs;
                    for (unsigned i = 0; i < 4; ++i)
                        vs.push_back(b.vertex(prefix + std::to_string(i)));
                    for (unsigned i = 0; i < 4; ++i)
                        for (unsigned j = i + 1; j < 4; ++j)
                            b.edge(prefix + std::to_string(i) + std::to_string(j), vs[i], vs[j]);
                }
                continue;
            }
            if (lists.empty())
                continue;
            vector<VertexIndex> black, white;
            for (auto c : lists[v]) {
                black.push_back(2 * c);
                white.push_back(2 * c + 1);
            }
            for (auto x : leaves[v].black)
                out.set_vertex(x, black);
            for (auto x : leaves[v].white)
                out.set_vertex(x, white);
        }
        return ring_output(std::move(b), std::move(out), k, std::move(m));
    }

    auto reduce_fourring(const Multigraph & g) -> ReductionOutput
    {
        require_simple(g, "reduce_fourring");
        Builder b;
        Manifest m;
        m.kind = SourceKind::four_colouring;
        m.k = 4;
        m.shift = 2;
        m.colours = 4;
        auto leaves = place_vertex_gadgets(b, g, 4, m);
        for (VertexIndex v = 0; v < g.num_vertices(); ++v)
            if (g.degree(v) == 0)
                m.items[v].fixed = 0;

        auto one = one_gadget(), zero_one = zero_one_gadget();
        auto middle = vertex_gadget(4, 2);
        auto left = [](const GadgetSpec & s, VertexIndex black, VertexIndex white) {
            return map<VertexIndex, VertexIndex>{{s.terminal("L"), black}, {s.terminal("L'"), white}};
        };
        auto right_of = [](const GadgetSpec & s, const vector<VertexIndex> & image) {
            return std::pair{image[s.terminal("R")], image[s.terminal("R'")]};
        };
        auto through = [&](const vector<VertexIndex> & image, const GadgetSpec & s, const string & prefix) {
            auto [r, r_] = right_of(s, image);
            auto mid = b.copy(middle.graph, prefix,
                {{middle.terminal("black1"), r}, {middle.terminal("white1"), r_}});
            return std::pair{mid[middle.terminal("black2")], mid[middle.terminal("white2")]};
        };

        for (EdgeIndex e = 0; e < g.num_edges(); ++e) {
            const auto & ed = g.edge(e);
            auto prefix = "e:" + ed.id + "/";
            auto [bu, wu] = leaves[ed.first].take();
            auto [bv, wv] = leaves[ed.second].take();
            auto first = b.copy(one.graph, prefix + "one/", left(one, bu, wu));
            auto [b1, w1] = through(first, one, prefix + "m1/");
            auto second = b.copy(zero_one.graph, prefix + "zo1/", left(zero_one, b1, w1));
            auto [b2, w2] = through(second, zero_one, prefix + "m2/");
            auto bind = left(zero_one, b2, w2);
            bind[zero_one.terminal("R")] = bv;
            bind[zero_one.terminal("R'")] = wv;
            b.copy(zero_one.graph, prefix + "zo2/", bind);
        }
        return ring_output(std::move(b), {}, 4, std::move(m));
    }

    namespace
    {
        /// A vertices (degree k-1) and B vertices (degree k) of a bi-regular incidence graph, in vertex order.
        auto incidence_sides(const Multigraph & incidence, unsigned k) -> std::pair<vector<VertexIndex>, vector<VertexIndex>>
        {
            require_simple(incidence, "the incidence graph");
            vector<VertexIndex> a, b;
            vector<int> side(incidence.num_vertices(), -1);
            for (VertexIndex v = 0; v < incidence.num_vertices(); ++v) {
                auto d = incidence.degree(v);
                if (d == k - 1) {
                    a.push_back(v);
                    side[v] = 0;
                }
                else if (d == k) {
                    b.push_back(v);
                    side[v] = 1;
                }
                else
                    throw DomainError("incidence vertex " + incidence.vertex_id(v) + " has degree " + std::to_string(d) +
                        ", expected " + std::to_string(k - 1) + " or " + std::to_string(k));
            }
            for (const auto & e : incidence.edges())
                if (side[e.first] == side[e.second])
                    throw DomainError("incidence edge " + e.id + " does not join an A vertex to a B vertex");
            return {a, b};
        }
    }

    auto reduce_hypergraph(const Multigraph & incidence, const Multigraph & h, const SplitGadget & gadget,
        const HypergraphOptions & options) -> ReductionOutput
    {
        auto degree = regular_degree(h);
        if (! degree || *degree < 3)
            throw DomainError("reduce_hypergraph needs a k-regular target with k >= 3");
        auto k = *degree;
        if (! is_bipartite(h) || ! is_connected(h))
            throw DomainError("reduce_hypergraph needs a connected bipartite target");
        auto neighbours_of = [&](VertexIndex y) {
            vector<VertexIndex> out;
            for (auto e : h.incident(y))
                out.push_back(h.other_end(e, y));
            return out;
        };
        auto simple = [&](VertexIndex y) {
            auto n = neighbours_of(y);
            return std::set<VertexIndex>(n.begin(), n.end()).size() == k;
        };
        auto x = h.find_vertex(gadget.origin);
        if (! x || ! simple(*x))
            for (VertexIndex y = 0; y < h.num_vertices() && ! (x && simple(*x)); ++y)
                x = y;
        if (! simple(*x))
            throw DomainError("reduce_hypergraph needs a target with a vertex whose k neighbours are distinct");
        auto neighbours = neighbours_of(*x);
        if (gadget.pendant_vertices.size() != k)
            throw DomainError("the gadget needs exactly k pendant vertices");
        auto [side_a, side_b] = incidence_sides(incidence, k);

        if (options.verify) {
            auto report = verify_gadget(gadget, h, options.check);
            if (! report.extends || ! report.same_vertex || ! report.distinct_edges)
                throw DomainError("the gadget fails verification against the target");
        }

        const auto & s = gadget.graph;
        vector<EdgeIndex> pendant_edge;
        vector<VertexIndex> inner;
        for (auto p : gadget.pendant_vertices) {
            pendant_edge.push_back(s.incident(p).front());
            inner.push_back(s.other_end(s.incident(p).front(), p));
        }

        Builder b;
        ListAssignment lists;
        Manifest m;
        m.kind = SourceKind::rainbow;
        m.k = k;
        m.colours = k;
        m.anchor = h.vertex_id(*x);
        for (auto y : neighbours)
            m.colour_vertices.push_back(h.vertex_id(y));
        auto anchor = [&](VertexIndex v) {
            lists.set_vertex(v, {*x});
            m.anchored.push_back(b.graph.vertex_id(v));
        };

        // per B vertex: B_v and a gadget copy whose t-th pendant u and its neighbour w serve the t-th incidence
        vector<VertexIndex> hub(incidence.num_vertices());
        vector<std::pair<VertexIndex, VertexIndex>> port(incidence.num_edges());
        for (auto v : side_b) {
            hub[v] = b.vertex("B:" + incidence.vertex_id(v));
            anchor(hub[v]);
            auto image = b.copy(s, "G:" + incidence.vertex_id(v) + "/", {});
            unsigned t = 0;
            for (auto e : incidence.incident(v)) {
                port[e] = {image[gadget.pendant_vertices[t]], image[inner[t]]};
                ++t;
            }
        }

        for (auto a : side_a) {
            const auto & id = incidence.vertex_id(a);
            vector<VertexIndex> ell, r;
            Manifest::Item item;
            item.source = id;
            for (unsigned i = 1; i < k; ++i) {
                ell.push_back(b.vertex("l:" + id + "/" + std::to_string(i)));
                r.push_back(b.vertex("r:" + id + "/" + std::to_string(i)));
                b.edge("m:" + id + "/" + std::to_string(i), ell.back(), r.back());
                anchor(ell.back());
                item.black.push_back(b.graph.vertex_id(r.back()));
            }
            for (auto e : incidence.incident(a)) {
                auto v = incidence.other_end(e, a);
                auto [u, w] = port[e];
                const auto & eid = incidence.edge(e).id;
                map<VertexIndex, VertexIndex> left{{gadget.pendant_vertices[0], hub[v]}};
                map<VertexIndex, VertexIndex> right{{gadget.pendant_vertices[0], w}, {inner[0], u}};
                for (unsigned i = 1; i < k; ++i) {
                    left[gadget.pendant_vertices[i]] = ell[i - 1];
                    right[gadget.pendant_vertices[i]] = r[i - 1];
                }
                b.copy(s, "GL:" + eid + "/", left);
                b.copy(s, "GR:" + eid + "/", right, pendant_edge[0]);
            }
            m.items.push_back(std::move(item));
        }
        return ReductionOutput{std::move(b.graph), std::move(lists), h, std::move(m)};
    }

    auto back_translate(const Manifest & m, const Multigraph & instance, const Multigraph & target,
        const CoverMap & witness) -> vector<unsigned>
    {
        if (witness.vmap.size() != instance.num_vertices())
            throw DomainError("the witness does not match the instance");
        auto image = [&](const string & id) {
            auto x = witness.vmap[instance.vertex(id)];
            if (x >= target.num_vertices())
                throw DomainError("the witness leaves " + id + " unmapped");
            return x;
        };

        vector<unsigned> colour;
        if (m.kind == SourceKind::rainbow) {
            vector<VertexIndex> palette;
            for (const auto & c : m.colour_vertices)
                palette.push_back(target.vertex(c));
            for (const auto & item : m.items) {
                if (item.black.empty())
                    throw DomainError("manifest item " + item.source + " has nothing to read");
                auto y = image(item.black.front());
                auto at = std::find(palette.begin(), palette.end(), y);
                if (at == palette.end())
                    throw DomainError("the witness maps " + item.black.front() + " off the anchor's neighbourhood");
                colour.push_back(unsigned(at - palette.begin()));
            }
            return colour;
        }

        auto positions = 2 * m.k;
        map<unsigned, unsigned> residue;
        for (const auto & item : m.items) {
            if (item.black.empty()) {
                if (! item.fixed)
                    throw DomainError("manifest item " + item.source + " has nothing to read");
                colour.push_back(*item.fixed);
                continue;
            }
            auto p = image(item.black.front());
            for (const auto & other : item.black)
                if (image(other) != p)
                    throw DomainError("the black leaves of " + item.source + " disagree");
            switch (m.kind) {
                case SourceKind::cycle_hom: {
                    auto r = residue.emplace(item.component, p % m.shift).first->second;
                    auto offset = (p + positions - r) % positions;
                    if (offset % m.shift != 0)
                        throw DomainError("the black leaves of " + item.source + " are off the colour grid");
                    colour.push_back((offset / m.shift) % m.colours);
                    break;
                }
                case SourceKind::cycle_list_hom:
                case SourceKind::four_colouring:
                    colour.push_back(p / 2);
                    break;
                case SourceKind::rainbow: break;
            }
        }
        return colour;
    }

    auto back_translate(const ReductionOutput & r, const CoverMap & witness) -> vector<unsigned>
    {
        return back_translate(r.manifest, r.instance, r.target, witness);
    }

    auto forward_hint(const ReductionOutput & r, const vector<unsigned> & certificate) -> ListAssignment
    {
        const auto & m = r.manifest;
        if (certificate.size() != m.items.size())
            throw DomainError("the certificate needs one colour per manifest item");
        auto lists = r.lists;
        for (std::size_t i = 0; i < m.items.size(); ++i) {
            auto c = certificate[i];
            if (c >= m.colours)
                throw DomainError("certificate colour " + std::to_string(c) + " is out of range");
            const auto & item = m.items[i];
            VertexIndex black = 0, white = 0;
            switch (m.kind) {
                case SourceKind::cycle_hom:
                    black = c * m.shift;
                    white = black + 1;
                    break;
                case SourceKind::cycle_list_hom:
                case SourceKind::four_colouring:
                    black = 2 * c;
                    white = black + 1;
                    break;
                case SourceKind::rainbow:
                    black = r.target.vertex(m.colour_vertices[c]);
                    break;
            }
            for (const auto & id : item.black)
                lists.restrict_vertex(r.instance.vertex(id), {black});
            for (const auto & id : item.white)
                lists.restrict_vertex(r.instance.vertex(id), {white});
        }
        return lists;
    }

    namespace
    {
        struct Component
        {
            Multigraph graph;
            vector<VertexIndex> vertices; // local -> global
            vector<EdgeIndex> edges;
        };

        auto split_components(const Multigraph & g) -> vector<Component>
        {
            auto label = connected_components(g);
            unsigned count = 0;
            for (auto c : label)
                count = std::max(count, c + 1);
            vector<Component> parts(count);
            vector<VertexIndex> local(g.num_vertices());
            for (VertexIndex v = 0; v < g.num_vertices(); ++v) {
                auto & part = parts[label[v]];
                local[v] = part.graph.add_vertex(g.vertex_id(v));
                part.vertices.push_back(v);
            }
            for (EdgeIndex e = 0; e < g.num_edges(); ++e) {
                const auto & ed = g.edge(e);
                auto & part = parts[label[ed.first]];
                part.graph.add_edge(ed.id, ed.kind, local[ed.first], local[ed.second]);
                part.edges.push_back(e);
            }
            return parts;
        }
    }

    auto lift_via_k2(const Multigraph & g, const ListAssignment & lists, const Multigraph & s,
        const std::function<SolveOutcome(const Multigraph &, const ListAssignment &)> & solve_s) -> SolveOutcome
    {
        auto lifted = times_k2(s);
        auto projection = times_k2_projection(s);
        lists.validate(g, lifted);

        SolveOutcome outcome;
        auto bipartition = is_bipartite(g);
        if (! bipartition)
            return outcome;

        vector<vector<EdgeIndex>> lifts(s.num_edges());
        for (EdgeIndex f = 0; f < lifted.num_edges(); ++f)
            lifts[projection.emap[f]].push_back(f);

        vector<optional<vector<EdgeIndex>>> edge_lists(g.num_edges());
        for (EdgeIndex e = 0; e < g.num_edges(); ++e) {
            const auto & l = lists.edge_list(e);
            if (! l)
                continue;
            std::set<EdgeIndex> image;
            for (auto f : *l)
                image.insert(projection.emap[f]);
            for (auto t : image)
                for (auto f : lifts[t])
                    if (! lists.allows_edge(e, f))
                        throw DomainError("the list of edge " + g.edge(e).id +
                            " is not closed under the projection onto the base graph");
            edge_lists[e].emplace(image.begin(), image.end());
        }

        auto witness = CoverMap::unassigned(g);
        bool out_of_budget = false;
        for (auto & part : split_components(g)) {
            bool found = false;
            for (unsigned flip = 0; flip < 2 && ! found; ++flip) {
                auto side = [&](VertexIndex local) -> unsigned { return bipartition->side[part.vertices[local]] ^ flip; };
                ListAssignment projected;
                for (VertexIndex v = 0; v < part.graph.num_vertices(); ++v) {
                    vector<VertexIndex> allowed;
                    for (VertexIndex y = 0; y < s.num_vertices(); ++y)
                        if (lists.allows_vertex(part.vertices[v], 2 * y + side(v)))
                            allowed.push_back(y);
                    projected.set_vertex(v, std::move(allowed));
                }
                for (EdgeIndex e = 0; e < part.graph.num_edges(); ++e)
                    if (edge_lists[part.edges[e]])
                        projected.set_edge(e, *edge_lists[part.edges[e]]);

                auto result = solve_s(part.graph, projected);
                outcome.stats.nodes += result.stats.nodes;
                outcome.stats.revisions += result.stats.revisions;
                outcome.stats.leaves += result.stats.leaves;
                outcome.stats.candidates += result.stats.candidates;
                outcome.stats.symmetric_skips += result.stats.symmetric_skips;
                outcome.stats.seconds += result.stats.seconds;
                if (result.status == Status::resource_limit)
                    out_of_budget = true;
                if (result.status != Status::satisfiable || ! result.witness)
                    continue;
                found = true;

                const auto & f = *result.witness;
                for (VertexIndex v = 0; v < part.graph.num_vertices(); ++v)
                    witness.vmap[part.vertices[v]] = 2 * f.vmap[v] + side(v);
                // edges onto a loop come in cycles; alternate the two parallel lifts along each one
                vector<int> parity(part.graph.num_edges(), -1);
                for (EdgeIndex e = 0; e < part.graph.num_edges(); ++e) {
                    auto t = f.emap[e];
                    const auto & ed = part.graph.edge(e);
                    auto from = witness.vmap[part.vertices[ed.first]], to = witness.vmap[part.vertices[ed.second]];
                    if (s.edge(t).kind != EdgeKind::loop) {
                        for (auto candidate : lifts[t]) {
                            const auto & le = lifted.edge(candidate);
                            if ((le.first == from && le.second == to) || (le.first == to && le.second == from))
                                witness.emap[part.edges[e]] = candidate;
                        }
                        continue;
                    }
                    if (parity[e] >= 0)
                        continue;
                    parity[e] = 0;
                    vector<EdgeIndex> stack{e};
                    while (! stack.empty()) {
                        auto c = stack.back();
                        stack.pop_back();
                        witness.emap[part.edges[c]] = lifts[t][parity[c]];
                        const auto & ce = part.graph.edge(c);
                        for (auto end : {ce.first, ce.second})
                            for (auto d : part.graph.incident(end))
                                if (d != c && f.emap[d] == t && parity[d] < 0) {
                                    parity[d] = 1 - parity[c];
                                    stack.push_back(d);
                                }
                    }
                }
            }
            if (! found) {
                outcome.status = out_of_budget ? Status::resource_limit : Status::unsatisfiable;
                return outcome;
            }
        }
        if (! verify_cover(g, lifted, witness) || ! respects_lists(witness, lists))
            throw std::logic_error("lift_via_k2 assembled an invalid covering projection");
        outcome.status = Status::satisfiable;
        outcome.witness = std::move(witness);
        return outcome;
    }

    auto is_cycle_hom(const Multigraph & g, unsigned n, const vector<unsigned> & colour) -> bool
    {
        if (colour.size() != g.num_vertices() || n == 0)
            return false;
        for (auto c : colour)
            if (c >= n)
                return false;
        for (const auto & e : g.edges()) {
            if (e.kind != EdgeKind::ordinary)
                return false;
            auto d = (colour[e.first] + n - colour[e.second]) % n;
            if (d != 1 && d != n - 1)
                return false;
        }
        return true;
    }

    auto is_proper_colouring(const Multigraph & g, unsigned colours, const vector<unsigned> & colour) -> bool
    {
        if (colour.size() != g.num_vertices())
            return false;
        for (auto c : colour)
            if (c >= colours)
                return false;
        for (const auto & e : g.edges())
            if (e.kind != EdgeKind::ordinary || colour[e.first] == colour[e.second])
                return false;
        return true;
    }

    auto is_rainbow(const Multigraph & incidence, unsigned k, const vector<unsigned> & colour) -> bool
    {
        auto [side_a, side_b] = incidence_sides(incidence, k);
        if (colour.size() != side_a.size())
            return false;
        vector<unsigned> of(incidence.num_vertices(), 0);
        for (std::size_t i = 0; i < side_a.size(); ++i) {
            if (colour[i] >= k)
                return false;
            of[side_a[i]] = colour[i];
        }
        for (auto v : side_b) {
            vector<bool> seen(k, false);
            for (auto e : incidence.incident(v)) {
                auto c = of[incidence.other_end(e, v)];
                if (seen[c])
                    return false;
                seen[c] = true;
            }
        }
        return true;
    }

    namespace
    {
        /// Backtracking over vertices in a breadth-first order, trying
        /// candidates(v) and keeping assignments that accept(v) approves.
        auto backtrack(const Multigraph & g, const std::function<vector<unsigned>(VertexIndex)> & candidates,
            const std::function<bool(VertexIndex, const vector<unsigned> &, const vector<bool> &)> & accept)
            -> optional<vector<unsigned>>
        {
            vector<VertexIndex> order;
            vector<bool> placed(g.num_vertices(), false);
            for (VertexIndex root = 0; root < g.num_vertices(); ++root) {
                if (placed[root])
                    continue;
                placed[root] = true;
                for (std::size_t head = order.size(), at = (order.push_back(root), head); at < order.size(); ++at)
                    for (auto e : g.incident(order[at])) {
                        auto w = g.other_end(e, order[at]);
                        if (! placed[w]) {
                            placed[w] = true;
                            order.push_back(w);
                        }
                    }
            }

            vector<unsigned> colour(g.num_vertices(), 0);
            vector<bool> assigned(g.num_vertices(), false);
            std::function<bool(std::size_t)> go = [&](std::size_t i) {
                if (i == order.size())
                    return true;
                auto v = order[i];
                for (auto c : candidates(v)) {
                    colour[v] = c;
                    assigned[v] = true;
                    if (accept(v, colour, assigned) && go(i + 1))
                        return true;
                    assigned[v] = false;
                }
                return false;
            };
            if (go(0))
                return colour;
            return std::nullopt;
        }

        auto all_below(unsigned n) -> vector<unsigned>
        {
            vector<unsigned> out(n);
            for (unsigned i = 0; i < n; ++i)
                out[i] = i;
            return out;
        }
    }

    auto brute_force_cycle_hom(const Multigraph & g, unsigned n, const vector<vector<unsigned>> & lists)
        -> optional<vector<unsigned>>
    {
        if (! lists.empty() && lists.size() != g.num_vertices())
            throw DomainError("brute_force_cycle_hom needs one list per vertex");
        if (g.has_loops_or_semi_edges())
            return std::nullopt;
        auto everything = all_below(n);
        return backtrack(
            g, [&](VertexIndex v) { return lists.empty() ? everything : lists[v]; },
            [&](VertexIndex v, const vector<unsigned> & colour, const vector<bool> & assigned) {
                for (auto e : g.incident(v)) {
                    auto w = g.other_end(e, v);
                    if (! assigned[w])
                        continue;
                    auto d = (colour[v] + n - colour[w]) % n;
                    if (d != 1 && d != n - 1)
                        return false;
                }
                return true;
            });
    }

    auto brute_force_colouring(const Multigraph & g, unsigned colours) -> optional<vector<unsigned>>
    {
        if (g.has_loops_or_semi_edges())
            return std::nullopt;
        auto everything = all_below(colours);
        return backtrack(
            g, [&](VertexIndex) { return everything; },
            [&](VertexIndex v, const vector<unsigned> & colour, const vector<bool> & assigned) {
                for (auto e : g.incident(v)) {
                    auto w = g.other_end(e, v);
                    if (assigned[w] && colour[w] == colour[v])
                        return false;
                }
                return true;
            });
    }

    auto brute_force_rainbow(const Multigraph & incidence, unsigned k) -> optional<vector<unsigned>>
    {
        auto [side_a, side_b] = incidence_sides(incidence, k);
        vector<bool> is_a(incidence.num_vertices(), false);
        for (auto a : side_a)
            is_a[a] = true;
        auto everything = all_below(k);
        auto result = backtrack(
            incidence, [&](VertexIndex v) { return is_a[v] ? everything : vector<unsigned>{0}; },
            [&](VertexIndex v, const vector<unsigned> & colour, const vector<bool> & assigned) {
                if (! is_a[v])
                    return true;
                for (auto e : incidence.incident(v)) {
                    auto hub = incidence.other_end(e, v);
                    for (auto f : incidence.incident(hub)) {
                        auto w = incidence.other_end(f, hub);
                        if (w != v && assigned[w] && colour[w] == colour[v])
                            return false;
                    }
                }
                return true;
            });
        if (! result)
            return std::nullopt;
        vector<unsigned> colour;
        for (auto a : side_a)
            colour.push_back((*result)[a]);
        return colour;
    }

    auto incidence_graph(const Multigraph & g) -> Multigraph
    {
        require_simple(g, "incidence_graph");
        Multigraph out;
        for (const auto & e : g.edges())
            out.add_vertex("e:" + e.id);
        for (VertexIndex v = 0; v < g.num_vertices(); ++v)
            out.add_vertex("v:" + g.vertex_id(v));
        auto m = VertexIndex(g.num_edges());
        for (EdgeIndex e = 0; e < g.num_edges(); ++e) {
            const auto & ed = g.edge(e);
            out.add_ordinary(ed.id + "@" + g.vertex_id(ed.first), e, m + ed.first);
            out.add_ordinary(ed.id + "@" + g.vertex_id(ed.second), e, m + ed.second);
        }
        return out;
    }
}
