#ifndef SEMICOVER_ISOMORPHISM_HH
#define SEMICOVER_ISOMORPHISM_HH 1

#include <semicover/multigraph.hh>

#include <optional>
#include <vector>

namespace semicover
{
    struct Isomorphism
    {
        std::vector<VertexIndex> vertex_map; // g vertex -> h vertex
        std::vector<EdgeIndex> edge_map;     // g edge -> h edge
    };

    /// Backtracking search with colour refinement on (degree, loops,
    /// semi-edges, neighbour multiplicities). Edge kinds and multiplicities
    /// are preserved; parallel semi-edges (and parallel loops) at a vertex
    /// are interchangeable. Intended for graphs of up to a few hundred
    /// vertices; highly symmetric adversarial inputs can take exponential time.
    auto find_isomorphism(const Multigraph & g, const Multigraph & h) -> std::optional<Isomorphism>;

    auto are_isomorphic(const Multigraph & g, const Multigraph & h) -> bool;

    /// Checks that iso is a bijection preserving incidence and edge kinds.
    auto verify_isomorphism(const Multigraph & g, const Multigraph & h, const Isomorphism & iso) -> bool;
}

#endif
