#include <semicover/io.hh>

#include <json.hpp>

#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>

using nlohmann::ordered_json;
using std::string;
using std::string_view;
using std::vector;

namespace semicover
{
    namespace
    {
        auto at(const string & pointer, const string & message) -> ParseError
        {
            return ParseError("at " + (pointer.empty() ? string("/") : pointer) + ": " + message);
        }

        auto parse_document(string_view text) -> ordered_json
        {
            try {
                return ordered_json::parse(text);
            }
            catch (const ordered_json::parse_error & e) {
                throw ParseError("at byte " + std::to_string(e.byte) + ": malformed JSON");
            }
        }

        auto expect_envelope(const ordered_json & doc, string_view format) -> void
        {
            if (! doc.is_object())
                throw at("", "expected an object");
            auto f = doc.find("format");
            if (f == doc.end() || ! f->is_string() || f->get<string>() != format)
                throw at("/format", "expected \"" + string(format) + "\"");
            auto v = doc.find("version");
            if (v == doc.end() || ! v->is_number_integer() || v->get<int>() != 1)
                throw at("/version", "expected 1");
        }

        auto expect_string(const ordered_json & j, const string & pointer) -> string
        {
            if (! j.is_string())
                throw at(pointer, "expected a string");
            return j.get<string>();
        }

        auto read_map_of_lists(const ordered_json & j, const string & pointer)
            -> vector<std::pair<string, vector<string>>>
        {
            vector<std::pair<string, vector<string>>> out;
            if (! j.is_object())
                throw at(pointer, "expected an object");
            for (auto & [key, value] : j.items()) {
                auto here = pointer + "/" + key;
                if (! value.is_array())
                    throw at(here, "expected an array of ids");
                vector<string> targets;
                for (std::size_t i = 0; i < value.size(); ++i)
                    targets.push_back(expect_string(value[i], here + "/" + std::to_string(i)));
                out.emplace_back(key, std::move(targets));
            }
            return out;
        }

        auto read_lists_object(const ordered_json & j, const string & pointer) -> RawLists
        {
            RawLists lists;
            if (! j.is_object())
                throw at(pointer, "expected an object");
            for (auto & [key, value] : j.items()) {
                if (key == "vertices")
                    lists.vertices = read_map_of_lists(value, pointer + "/vertices");
                else if (key == "edges")
                    lists.edges = read_map_of_lists(value, pointer + "/edges");
                else
                    throw at(pointer + "/" + key, "unknown key");
            }
            return lists;
        }

        auto lists_object(const RawLists & lists) -> ordered_json
        {
            ordered_json j = ordered_json::object();
            j["vertices"] = ordered_json::object();
            for (auto & [k, v] : lists.vertices)
                j["vertices"][k] = v;
            j["edges"] = ordered_json::object();
            for (auto & [k, v] : lists.edges)
                j["edges"][k] = v;
            return j;
        }
    }

    auto parse_graph(string_view text) -> GraphFile
    {
        auto doc = parse_document(text);
        expect_envelope(doc, "semicover/graph");

        GraphFile out;
        auto vs = doc.find("vertices");
        if (vs == doc.end() || ! vs->is_array())
            throw at("/vertices", "expected an array of vertex ids");
        for (std::size_t i = 0; i < vs->size(); ++i) {
            auto pointer = "/vertices/" + std::to_string(i);
            auto id = expect_string((*vs)[i], pointer);
            if (out.graph.find_vertex(id))
                throw at(pointer, "duplicate vertex id '" + id + "'");
            out.graph.add_vertex(id);
        }

        auto es = doc.find("edges");
        if (es == doc.end() || ! es->is_array())
            throw at("/edges", "expected an array of edges");
        for (std::size_t i = 0; i < es->size(); ++i) {
            auto pointer = "/edges/" + std::to_string(i);
            auto & e = (*es)[i];
            if (! e.is_object())
                throw at(pointer, "expected an object");
            for (auto & [key, value] : e.items())
                if (key != "id" && key != "kind" && key != "ends")
                    throw at(pointer + "/" + key, "unknown key");
            if (! e.contains("id"))
                throw at(pointer, "missing \"id\"");
            auto id = expect_string(e["id"], pointer + "/id");
            if (out.graph.find_edge(id))
                throw at(pointer + "/id", "duplicate edge id '" + id + "'");
            if (! e.contains("kind"))
                throw at(pointer, "missing \"kind\"");
            auto kind_name = expect_string(e["kind"], pointer + "/kind");
            auto kind = parse_edge_kind(kind_name);
            if (! kind)
                throw at(pointer + "/kind", "unknown edge kind '" + kind_name + "'");
            if (! e.contains("ends") || ! e["ends"].is_array())
                throw at(pointer + "/ends", "expected an array of endpoint ids");
            auto & ends = e["ends"];
            std::size_t want = *kind == EdgeKind::ordinary ? 2 : 1;
            if (ends.size() != want)
                throw at(pointer + "/ends", "a " + kind_name + " edge needs " + std::to_string(want) + " endpoint(s)");
            vector<VertexIndex> vs_idx;
            for (std::size_t k = 0; k < want; ++k) {
                auto ep = pointer + "/ends/" + std::to_string(k);
                auto vid = expect_string(ends[k], ep);
                auto v = out.graph.find_vertex(vid);
                if (! v)
                    throw at(ep, "unknown vertex '" + vid + "'");
                vs_idx.push_back(*v);
            }
            if (want == 2 && vs_idx[0] == vs_idx[1])
                throw at(pointer + "/ends", "an ordinary edge needs two distinct endpoints");
            out.graph.add_edge(id, *kind, vs_idx[0], vs_idx.back());
        }

        for (auto & [key, value] : doc.items())
            if (key == "lists")
                out.lists = read_lists_object(value, "/lists");
            else if (key != "format" && key != "version" && key != "vertices" && key != "edges")
                throw at("/" + key, "unknown key");
        return out;
    }

    auto parse_lists(string_view text) -> RawLists
    {
        auto doc = parse_document(text);
        expect_envelope(doc, "semicover/lists");
        RawLists lists;
        for (auto & [key, value] : doc.items()) {
            if (key == "vertices")
                lists.vertices = read_map_of_lists(value, "/vertices");
            else if (key == "edges")
                lists.edges = read_map_of_lists(value, "/edges");
            else if (key != "format" && key != "version")
                throw at("/" + key, "unknown key");
        }
        return lists;
    }

    auto parse_cover(string_view text, const Multigraph & g, const Multigraph & h) -> CoverMap
    {
        auto doc = parse_document(text);
        expect_envelope(doc, "semicover/cover");
        auto f = CoverMap::unassigned(g);
        auto vm = doc.find("vmap");
        if (vm == doc.end() || ! vm->is_object())
            throw at("/vmap", "expected an object");
        for (auto & [key, value] : vm->items()) {
            auto pointer = "/vmap/" + key;
            auto v = g.find_vertex(key);
            if (! v)
                throw at(pointer, "unknown vertex '" + key + "' of the input graph");
            auto target = expect_string(value, pointer);
            auto x = h.find_vertex(target);
            if (! x)
                throw at(pointer, "unknown vertex '" + target + "' of the target graph");
            f.vmap[*v] = *x;
        }
        auto em = doc.find("emap");
        if (em == doc.end() || ! em->is_object())
            throw at("/emap", "expected an object");
        for (auto & [key, value] : em->items()) {
            auto pointer = "/emap/" + key;
            auto e = g.find_edge(key);
            if (! e)
                throw at(pointer, "unknown edge '" + key + "' of the input graph");
            auto target = expect_string(value, pointer);
            auto t = h.find_edge(target);
            if (! t)
                throw at(pointer, "unknown edge '" + target + "' of the target graph");
            f.emap[*e] = *t;
        }
        for (auto & [key, value] : doc.items())
            if (key != "format" && key != "version" && key != "vmap" && key != "emap")
                throw at("/" + key, "unknown key");
        return f;
    }

    auto write_graph(const Multigraph & g, const RawLists & lists) -> string
    {
        ordered_json doc;
        doc["format"] = "semicover/graph";
        doc["version"] = 1;
        doc["vertices"] = ordered_json::array();
        for (auto & id : g.vertex_ids())
            doc["vertices"].push_back(id);
        doc["edges"] = ordered_json::array();
        for (auto & e : g.edges()) {
            ordered_json j;
            j["id"] = e.id;
            j["kind"] = string(to_string(e.kind));
            j["ends"] = ordered_json::array();
            j["ends"].push_back(g.vertex_id(e.first));
            if (e.kind == EdgeKind::ordinary)
                j["ends"].push_back(g.vertex_id(e.second));
            doc["edges"].push_back(std::move(j));
        }
        if (! lists.empty())
            doc["lists"] = lists_object(lists);
        return doc.dump(1) + "\n";
    }

    auto write_lists(const RawLists & lists) -> string
    {
        ordered_json doc;
        doc["format"] = "semicover/lists";
        doc["version"] = 1;
        auto body = lists_object(lists);
        doc["vertices"] = body["vertices"];
        doc["edges"] = body["edges"];
        return doc.dump(1) + "\n";
    }

    auto write_cover(const Multigraph & g, const Multigraph & h, const CoverMap & f) -> string
    {
        ordered_json doc;
        doc["format"] = "semicover/cover";
        doc["version"] = 1;
        doc["vmap"] = ordered_json::object();
        for (VertexIndex v = 0; v < g.num_vertices(); ++v)
            if (v < f.vmap.size() && f.vmap[v] != unmapped_vertex)
                doc["vmap"][g.vertex_id(v)] = h.vertex_id(f.vmap[v]);
        doc["emap"] = ordered_json::object();
        for (EdgeIndex e = 0; e < g.num_edges(); ++e)
            if (e < f.emap.size() && f.emap[e] != unmapped_edge)
                doc["emap"][g.edge(e).id] = h.edge(f.emap[e]).id;
        return doc.dump(1) + "\n";
    }

    auto resolve_lists(const RawLists & raw, const Multigraph & g, const Multigraph & h) -> ListAssignment
    {
        ListAssignment lists;
        for (auto & [key, targets] : raw.vertices) {
            auto v = g.find_vertex(key);
            if (! v)
                throw DomainError("lists name unknown vertex '" + key + "'");
            vector<VertexIndex> xs;
            for (auto & t : targets) {
                auto x = h.find_vertex(t);
                if (! x)
                    throw DomainError("list of vertex '" + key + "' names unknown target vertex '" + t + "'");
                xs.push_back(*x);
            }
            lists.restrict_vertex(*v, xs);
        }
        for (auto & [key, targets] : raw.edges) {
            auto e = g.find_edge(key);
            if (! e)
                throw DomainError("lists name unknown edge '" + key + "'");
            vector<EdgeIndex> fs;
            for (auto & t : targets) {
                auto f = h.find_edge(t);
                if (! f)
                    throw DomainError("list of edge '" + key + "' names unknown target edge '" + t + "'");
                fs.push_back(*f);
            }
            lists.restrict_edge(*e, fs);
        }
        return lists;
    }

    auto unresolve_lists(const ListAssignment & lists, const Multigraph & g, const Multigraph & h) -> RawLists
    {
        RawLists raw;
        for (VertexIndex v = 0; v < g.num_vertices(); ++v)
            if (auto & l = lists.vertex_list(v)) {
                vector<string> ids;
                for (auto x : *l)
                    ids.push_back(h.vertex_id(x));
                raw.vertices.emplace_back(g.vertex_id(v), std::move(ids));
            }
        for (EdgeIndex e = 0; e < g.num_edges(); ++e)
            if (auto & l = lists.edge_list(e)) {
                vector<string> ids;
                for (auto t : *l)
                    ids.push_back(h.edge(t).id);
                raw.edges.emplace_back(g.edge(e).id, std::move(ids));
            }
        return raw;
    }

    auto read_input(const string & path) -> string
    {
        if (path == "-")
            return string(std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>());
        std::ifstream in(path, std::ios::binary);
        if (! in)
            throw DomainError("cannot open '" + path + "'");
        std::ostringstream ss;
        ss << in.rdbuf();
        return ss.str();
    }
}
