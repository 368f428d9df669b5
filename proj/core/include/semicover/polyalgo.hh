#ifndef SEMICOVER_POLYALGO_HH
#define SEMICOVER_POLYALGO_HH 1

#include <semicover/covering.hh>
#include <semicover/solver.hh>

#include <array>
#include <optional>
#include <vector>

namespace semicover
{
    enum class PolyCase
    {
        F10_or_K2,
        F01_loop,
        F20_two_semis,
        cycle_target,
        open_path_target,
        loop_plus_semi,
        none
    };

    auto to_string(PolyCase) -> std::string_view;

    /// Which polynomial procedure (if any) decides List-H-Cover. h must be connected.
    auto dispatch(const Multigraph & h) -> PolyCase;

    /// Targets that are connected and 2-regular. Each component of g must be
    /// a cycle or an open path; its covering projections are determined by the
    /// image of one edge-end, so every candidate edge-end of h is tried.
    /// stats.candidates counts the candidate maps examined.
    auto decide_2regular(const Multigraph & h, const Multigraph & g, const ListAssignment & lists) -> SolveOutcome;

    /// Targets one_vertex(1,0) and K2.
    auto decide_1regular(const Multigraph & h, const Multigraph & g, const ListAssignment & lists) -> SolveOutcome;

    /// Runs decide_1regular, decide_2regular or decide_loop_semi per dispatch(h);
    /// DomainError when dispatch(h) is none.
    auto decide_poly(const Multigraph & h, const Multigraph & g, const ListAssignment & lists) -> SolveOutcome;

    struct Matching
    {
        std::vector<EdgeIndex> edges;
        bool perfect = false;
    };

    /// Maximum matching over the ordinary edges (loops and semi-edges are
    /// ignored), by augmenting paths with blossom contraction.
    auto maximum_matching(const Multigraph & g) -> Matching;

    enum class AuxiliaryStep
    {
        delete_semi_vertices,
        drop_edges_without_semi,
        isolate_edges_without_loop
    };

    struct LoopSemiOptions
    {
        /// Order in which the three reduction steps are applied (repeatedly, to a fixpoint).
        std::array<AuxiliaryStep, 3> order{
            AuxiliaryStep::delete_semi_vertices, AuxiliaryStep::drop_edges_without_semi, AuxiliaryStep::isolate_edges_without_loop};
    };

    /// h is a one-vertex graph with one semi-edge and one loop. Preprocessing
    /// rejections, then a perfect matching in the auxiliary graph.
    auto decide_loop_semi(const Multigraph & h, const Multigraph & g, const ListAssignment & lists,
        const LoopSemiOptions & options = {}) -> SolveOutcome;

    /// Full-list covers of the bipartite triple edge by bipartite cubic
    /// graphs, via a 3-edge-colouring. Returns nullopt when the fast path does
    /// not apply (lists present, g not bipartite or not cubic, h not a triple edge).
    auto triple_edge_fast_path(const Multigraph & h, const Multigraph & g, const ListAssignment & lists)
        -> std::optional<SolveOutcome>;
}

#endif
