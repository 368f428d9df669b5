#ifndef SEMICOVER_CONSTRUCTIONS_HH
#define SEMICOVER_CONSTRUCTIONS_HH 1

#include <semicover/covering.hh>
#include <semicover/multigraph.hh>
#include <semicover/solver.hh>

#include <optional>
#include <string>
#include <vector>

namespace semicover
{
    /// Colours are 0 .. k-1, indexed by edge.
    struct EdgeColoring
    {
        std::vector<unsigned> colour;
        unsigned k = 0;
    };

    /// Every colour below k and no two edges at a vertex share a colour.
    /// Graphs with loops or semi-edges never have a proper colouring here.
    auto is_proper(const Multigraph & g, const EdgeColoring & c) -> bool;

    /// A proper k-edge-colouring of a k-regular graph without loops or
    /// semi-edges. Bipartite graphs always succeed (perfect matchings are
    /// peeled off one at a time); otherwise exhaustive backtracking decides,
    /// and nullopt means no such colouring exists.
    auto proper_edge_coloring(const Multigraph & g, unsigned k) -> std::optional<EdgeColoring>;

    /// Renames colours: colour c becomes perm[c].
    auto permute_colours(const EdgeColoring & c, const std::vector<unsigned> & perm) -> EdgeColoring;

    struct ColoredFactor
    {
        Multigraph graph;
        EdgeColoring coloring;
    };

    /// K_{k,k} with edge a<i>b<j> coloured (i + j) mod k.
    auto latin_square_factor(unsigned k) -> ColoredFactor;

    struct ProductResult
    {
        Multigraph product;
        EdgeColoring coloring;
        std::vector<CoverMap> projections; // one per factor
    };

    /// Vertices are tuples rendered "(v1,v2,...)" with the first factor
    /// varying slowest; the colour-j edge between u and w is named
    /// "c<j+1>:u-w". Throws DomainError for an empty factor list, mismatched
    /// colour counts, or factors that are not properly k-coloured and k-regular.
    auto colored_product(const std::vector<ColoredFactor> & factors) -> ProductResult;

    enum class MulticoverPlan
    {
        product, // colour-permuted copies of h, one group per vertex
        self     // h itself, with no projections provided
    };

    struct MulticoverOptions
    {
        MulticoverPlan plan = MulticoverPlan::product;
        double max_vertices = 1e6; // applies to the full product, before taking u's component
    };

    /// The plan would exceed MulticoverOptions::max_vertices.
    class SizeGuardExceeded : public DomainError
    {
    public:
        using DomainError::DomainError;
    };

    struct Multicover
    {
        Multigraph graph;
        VertexIndex u = 0;
        EdgeColoring coloring;
        std::vector<CoverMap> projections; // covering projections onto h known from the construction
        std::size_t product_vertices = 0;  // before taking u's component
    };

    /// A vertex of h together with the images of the edges at u, listed in
    /// the order of g.incident(u).
    struct Demand
    {
        VertexIndex x;
        std::vector<EdgeIndex> edges;

        auto operator<=>(const Demand &) const = default;
    };

    auto demand_of(const Multigraph & g, VertexIndex u, const CoverMap & f) -> Demand;

    /// Every (vertex, bijection) pair of h for a vertex of degree deg(u).
    auto all_demands(const Multigraph & h, unsigned degree) -> std::vector<Demand>;

    /// A connected cover of h with a vertex u such that every bijection from
    /// the edges at u onto the edges at any vertex of h extends to a covering
    /// projection. h must be connected, k-regular, k-edge-colourable and free
    /// of loops and semi-edges.
    auto multicover(const Multigraph & h, const MulticoverOptions & options = {}) -> Multicover;

    /// Rendered size of the product plan, e.g. "6^36" or "2^12*6".
    auto multicover_size_estimate(const Multigraph & h) -> std::string;

    struct SplitGadget
    {
        Multigraph graph;
        std::vector<VertexIndex> pendant_vertices; // in the order of the edges at u
        std::vector<EdgeIndex> pendant_edges;
        std::string origin; // id of the split vertex
    };

    /// Removes u and gives each edge at u its own fresh degree-1 end,
    /// named "<u>_<edge>". Edges keep their ids and order; the remaining
    /// vertices keep their relative order and the pendants follow them.
    auto split_vertex(const Multigraph & g, VertexIndex u) -> SplitGadget;

    /// Identifies the pendant vertices again into one vertex named origin.
    auto merge_pendants(const SplitGadget & s) -> Multigraph;

    /// Categorical product with K2. Vertex v becomes "(v,b)" at index 2v and
    /// "(v,w)" at index 2v+1. An ordinary edge e becomes "(e,b)" and "(e,w)",
    /// a loop becomes the parallel pair "(e,b)", "(e,w)", a semi-edge becomes
    /// the single edge "(e,bw)".
    auto times_k2(const Multigraph & g) -> Multigraph;

    /// The covering projection of times_k2(g) onto g.
    auto times_k2_projection(const Multigraph & g) -> CoverMap;

    struct GadgetCheckOptions
    {
        std::size_t max_partial_covers = 2'000'000;
        Budget per_call;
    };

    struct GadgetReport
    {
        bool extends = true;        // every pinned demand has a partial cover
        bool same_vertex = true;    // pendants share their image in every partial cover
        bool distinct_edges = true; // pendant edges have distinct images in every partial cover
        std::size_t demands = 0;
        std::size_t partial_covers = 0;
        std::vector<Demand> unrealized;
        std::optional<CoverMap> same_vertex_counterexample;
        std::optional<CoverMap> distinct_edges_counterexample;
    };

    /// Checks the three gadget properties of a split vertex against h by
    /// pinned partial solves and exhaustive partial enumeration. Throws
    /// DomainError when enumeration exceeds the bound or a solve runs out of budget.
    auto verify_gadget(const SplitGadget & s, const Multigraph & h, const GadgetCheckOptions & options = {})
        -> GadgetReport;
}

#endif
