#ifndef SEMICOVER_MULTIGRAPH_HH
#define SEMICOVER_MULTIGRAPH_HH 1

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace semicover
{
    /// Thrown for precondition violations: unknown ids, malformed parameters,
    /// inputs outside an operation's contract.
    class DomainError : public std::invalid_argument
    {
    public:
        using std::invalid_argument::invalid_argument;
    };

    using VertexIndex = std::uint32_t;
    using EdgeIndex = std::uint32_t;

    enum class EdgeKind : std::uint8_t
    {
        ordinary,
        loop,
        semi
    };

    auto to_string(EdgeKind) -> std::string_view;
    auto parse_edge_kind(std::string_view) -> std::optional<EdgeKind>;

    struct Edge
    {
        std::string id;
        EdgeKind kind;
        VertexIndex first;
        VertexIndex second; // equal to first for loops and semi-edges
    };

    enum class VertexClass : std::uint8_t
    {
        simple,
        semi_simple,
        other
    };

    auto to_string(VertexClass) -> std::string_view;

    /// A graph in the most relaxed sense: ordinary edges, loops and
    /// semi-edges, all possibly parallel. Vertices and edges carry opaque
    /// string ids; indices follow insertion order.
    class Multigraph
    {
    public:
        auto add_vertex(std::string id) -> VertexIndex;
        auto add_edge(std::string id, EdgeKind kind, VertexIndex a, VertexIndex b) -> EdgeIndex;
        auto add_ordinary(std::string id, VertexIndex a, VertexIndex b) -> EdgeIndex;
        auto add_loop(std::string id, VertexIndex v) -> EdgeIndex;
        auto add_semi(std::string id, VertexIndex v) -> EdgeIndex;

        [[nodiscard]] auto num_vertices() const -> std::size_t { return _vertex_ids.size(); }
        [[nodiscard]] auto num_edges() const -> std::size_t { return _edges.size(); }
        [[nodiscard]] auto empty() const -> bool { return _vertex_ids.empty(); }

        [[nodiscard]] auto vertex_id(VertexIndex v) const -> const std::string & { return _vertex_ids[v]; }
        [[nodiscard]] auto edge(EdgeIndex e) const -> const Edge & { return _edges[e]; }
        [[nodiscard]] auto edges() const -> std::span<const Edge> { return _edges; }
        [[nodiscard]] auto vertex_ids() const -> std::span<const std::string> { return _vertex_ids; }

        [[nodiscard]] auto find_vertex(std::string_view id) const -> std::optional<VertexIndex>;
        [[nodiscard]] auto find_edge(std::string_view id) const -> std::optional<EdgeIndex>;
        /// As find_vertex, but throws DomainError for unknown ids.
        [[nodiscard]] auto vertex(std::string_view id) const -> VertexIndex;
        [[nodiscard]] auto edge_named(std::string_view id) const -> EdgeIndex;

        /// Edges incident with v; a loop is listed once.
        [[nodiscard]] auto incident(VertexIndex v) const -> std::span<const EdgeIndex> { return _incidence[v]; }

        /// Endpoint count at v: ordinary edges and semi-edges contribute 1, loops 2.
        [[nodiscard]] auto degree(VertexIndex v) const -> unsigned;

        /// The endpoint of e that is not v (v itself for loops and semi-edges).
        [[nodiscard]] auto other_end(EdgeIndex e, VertexIndex v) const -> VertexIndex
        {
            const auto & ed = _edges[e];
            return ed.first == v ? ed.second : ed.first;
        }

        [[nodiscard]] auto has_loops_or_semi_edges() const -> bool;

    private:
        std::vector<std::string> _vertex_ids;
        std::vector<Edge> _edges;
        std::vector<std::vector<EdgeIndex>> _incidence;
        std::unordered_map<std::string, VertexIndex> _vertex_lookup;
        std::unordered_map<std::string, EdgeIndex> _edge_lookup;
    };

    /// Degree of a vertex given by id; unknown ids are a DomainError.
    auto degree(const Multigraph & g, std::string_view v) -> unsigned;

    auto classify_vertex(const Multigraph & g, VertexIndex v) -> VertexClass;
    auto classify_vertex(const Multigraph & g, std::string_view v) -> VertexClass;

    /// Returns the common degree if g is regular (0 for the empty graph).
    auto regular_degree(const Multigraph & g) -> std::optional<unsigned>;

    struct Bipartition
    {
        std::vector<std::uint8_t> side; // per vertex, 0 or 1
        std::vector<VertexIndex> part[2];
    };

    /// A 2-colouring when g has no loops, no semi-edges and no odd cycle.
    auto is_bipartite(const Multigraph & g) -> std::optional<Bipartition>;

    /// Component number per vertex, numbered in order of first vertex.
    auto connected_components(const Multigraph & g) -> std::vector<unsigned>;
    auto is_connected(const Multigraph & g) -> bool;

    /// The subgraph induced by the given vertices, keeping ids.
    auto induced_subgraph(const Multigraph & g, std::span<const VertexIndex> vertices) -> Multigraph;
}

#endif
