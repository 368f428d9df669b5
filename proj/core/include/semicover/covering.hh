#ifndef SEMICOVER_COVERING_HH
#define SEMICOVER_COVERING_HH 1

#include <semicover/multigraph.hh>

#include <limits>
#include <optional>
#include <string>
#include <vector>

namespace semicover
{
    inline constexpr VertexIndex unmapped_vertex = std::numeric_limits<VertexIndex>::max();
    inline constexpr EdgeIndex unmapped_edge = std::numeric_limits<EdgeIndex>::max();

    /// A candidate covering projection G -> H, by index.
    struct CoverMap
    {
        std::vector<VertexIndex> vmap;
        std::vector<EdgeIndex> emap;

        static auto unassigned(const Multigraph & g) -> CoverMap
        {
            return CoverMap{std::vector<VertexIndex>(g.num_vertices(), unmapped_vertex),
                std::vector<EdgeIndex>(g.num_edges(), unmapped_edge)};
        }

        auto operator==(const CoverMap &) const -> bool = default;
    };

    /// Admissible targets per input vertex and edge. A missing entry (or
    /// std::nullopt) means the full list.
    class ListAssignment
    {
    public:
        auto set_vertex(VertexIndex v, std::vector<VertexIndex> targets) -> void;
        auto set_edge(EdgeIndex e, std::vector<EdgeIndex> targets) -> void;
        /// Intersects the existing list (full if absent) with the given targets.
        auto restrict_vertex(VertexIndex v, const std::vector<VertexIndex> & targets) -> void;
        auto restrict_edge(EdgeIndex e, const std::vector<EdgeIndex> & targets) -> void;

        [[nodiscard]] auto vertex_list(VertexIndex v) const -> const std::optional<std::vector<VertexIndex>> &;
        [[nodiscard]] auto edge_list(EdgeIndex e) const -> const std::optional<std::vector<EdgeIndex>> &;
        [[nodiscard]] auto allows_vertex(VertexIndex v, VertexIndex x) const -> bool;
        [[nodiscard]] auto allows_edge(EdgeIndex e, EdgeIndex f) const -> bool;

        [[nodiscard]] auto vertex_entries() const -> std::size_t { return _vertices.size(); }
        [[nodiscard]] auto edge_entries() const -> std::size_t { return _edges.size(); }
        [[nodiscard]] auto is_full() const -> bool;

        /// Checks that keys exist in g and targets exist in h.
        auto validate(const Multigraph & g, const Multigraph & h) const -> void;

    private:
        std::vector<std::optional<std::vector<VertexIndex>>> _vertices;
        std::vector<std::optional<std::vector<EdgeIndex>>> _edges;
    };

    enum class ViolationKind
    {
        not_total,
        out_of_range,
        incidence,
        not_matching,
        not_semi_union,
        not_cycle_union,
        not_spanning
    };

    auto to_string(ViolationKind) -> std::string_view;

    struct Violation
    {
        ViolationKind kind;
        std::string target; // offending element id (target id for fibre violations)
        std::string detail;
    };

    enum class FibreShape
    {
        vertex,
        matching,
        semi_union,
        cycle_union,
        cycle_and_path_union
    };

    auto to_string(FibreShape) -> std::string_view;

    struct Fibre
    {
        std::string target;
        FibreShape shape;
        std::vector<std::uint32_t> preimage; // vertex or edge indices of G
        bool spanning;
    };

    struct FibreReport
    {
        std::vector<Fibre> vertex_fibres; // one per vertex of H
        std::vector<Fibre> edge_fibres;   // one per edge of H
    };

    struct Verdict
    {
        std::optional<FibreReport> report;
        std::optional<Violation> violation;

        explicit operator bool() const { return report.has_value(); }
    };

    /// Accepts f iff it is a covering projection: incidences kept, each loop's
    /// preimage a spanning disjoint union of cycles, each semi-edge's preimage
    /// a spanning union of semi-edges and ordinary edges, each ordinary edge's
    /// preimage a perfect matching of the two endpoint fibres.
    auto verify_cover(const Multigraph & g, const Multigraph & h, const CoverMap & f) -> Verdict;

    /// As verify_cover without the spanning requirements: matchings, semi-edge
    /// unions and cycle/path unions inside the fibres.
    auto verify_partial_cover(const Multigraph & g, const Multigraph & h, const CoverMap & f) -> Verdict;

    auto respects_lists(const CoverMap & f, const ListAssignment & lists) -> bool;

    /// Number of ends of e at v: 2 for a loop, otherwise 1.
    inline auto ends_at(const Edge & e) -> unsigned { return e.kind == EdgeKind::loop ? 2 : 1; }
}

#endif
