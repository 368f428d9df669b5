#ifndef SEMICOVER_REDUCTIONS_HH
#define SEMICOVER_REDUCTIONS_HH 1

#include <semicover/constructions.hh>
#include <semicover/covering.hh>
#include <semicover/multigraph.hh>
#include <semicover/solver.hh>

#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace semicover
{
    // Ring positions: vertex j of the k-ring (1-based) sits at index 2(j-1)
    // and j' at 2(j-1)+1, matching ring(k). Colours of source problems are
    // 0-based throughout.

    enum class GadgetKind
    {
        vertex,
        enforcing,
        edge,
        one,
        zero_one
    };

    auto to_string(GadgetKind) -> std::string_view;

    struct Terminal
    {
        std::string name;
        VertexIndex vertex;
    };

    struct GadgetSpec
    {
        GadgetKind kind;
        unsigned k = 0;
        Multigraph graph;
        std::vector<Terminal> terminals;

        [[nodiscard]] auto terminal(std::string_view name) const -> VertexIndex;
    };

    /// Two cycles of length 2k*deg cross-linked into a cubic bipartite graph,
    /// with deg edges of the second cycle each replaced by a pair of leaves.
    /// Terminals "black<j>" and "white<j>" for j = 1..deg; a black leaf hangs
    /// off an odd-numbered cycle vertex, a white leaf off an even one.
    auto vertex_gadget(unsigned k, unsigned deg) -> GadgetSpec;

    /// The vertex gadget for degree 1; its two leaves always land on the two
    /// ends of one double edge of the ring.
    auto enforcing_gadget(unsigned k) -> GadgetSpec;

    /// k cycles of length 2k laced by enforcing gadgets. Terminals "a" (first
    /// vertex of the first cycle), "b" (vertex 1+shift of the first cycle),
    /// "a'" (vertex 1+k of the last cycle) and "b'" (vertex 1+k+shift of the
    /// last cycle) are the only vertices of degree 2. shift must be even and
    /// in 2..2k-2.
    auto edge_gadget(unsigned k, unsigned shift) -> GadgetSpec;

    /// 4-ring gadgets with terminals L, L' (left pair) and R, R' (right pair),
    /// all of degree 2; L and R lie in one colour class. With the left pair on
    /// (i, i') the right pair lands on (i+1, (i+1)') for the 1-gadget and on
    /// (i, i') or (i+1, (i+1)') for the 0-1-gadget.
    auto one_gadget() -> GadgetSpec;
    auto zero_one_gadget() -> GadgetSpec;

    /// Every tuple of terminal images (in terminal order) that some partial
    /// cover of the isolated gadget onto h realises, with the given
    /// terminals pinned. Found by pinned solver calls, pruned terminal by terminal.
    auto gadget_behaviour(const GadgetSpec & gadget, const Multigraph & h,
        const std::vector<std::pair<std::string, VertexIndex>> & pins) -> std::set<std::vector<VertexIndex>>;

    enum class SourceKind
    {
        cycle_hom,      // homomorphism to an odd cycle, ring cover without lists
        cycle_list_hom, // list homomorphism to C_k, list ring cover
        four_colouring, // 4-ring cover without lists
        rainbow         // rainbow colouring of a hypergraph incidence graph, list H-cover
    };

    auto to_string(SourceKind) -> std::string_view;
    auto parse_source_kind(std::string_view) -> std::optional<SourceKind>;

    /// What is needed to translate certificates between the emitted instance
    /// and the source problem, by instance vertex ids.
    struct Manifest
    {
        struct Item
        {
            std::string source;             // source vertex (or hyperedge) id
            std::vector<std::string> black; // read for the colour; pinned by hints
            std::vector<std::string> white; // pinned by hints to the partner position
            unsigned component = 0;         // component of the source graph
            std::optional<unsigned> fixed;  // colour of a source vertex that got no gadget
        };

        SourceKind kind = SourceKind::cycle_hom;
        unsigned k = 0;       // ring size or regular degree of the target
        unsigned shift = 0;   // ring positions between adjacent colours
        unsigned colours = 0; // size of the source colour set
        std::vector<Item> items;
        std::vector<std::string> colour_vertices; // rainbow: the target vertices naming colours
        std::string anchor;                       // rainbow: the target vertex x
        std::vector<std::string> anchored;        // rainbow: instance vertices listed to {x}
    };

    auto write_manifest(const Manifest &) -> std::string;
    auto parse_manifest(std::string_view text) -> Manifest;

    struct ReductionOutput
    {
        Multigraph instance;
        ListAssignment lists;
        Multigraph target;
        Manifest manifest;
    };

    /// Reads a source certificate off a covering projection of the instance:
    /// one colour per manifest item. DomainError when the witness does not
    /// have the shape the gadgets force.
    auto back_translate(const ReductionOutput & r, const CoverMap & witness) -> std::vector<unsigned>;
    auto back_translate(const Manifest & m, const Multigraph & instance, const Multigraph & target, const CoverMap & witness)
        -> std::vector<unsigned>;

    /// The instance lists narrowed by pins derived from a source certificate.
    auto forward_hint(const ReductionOutput & r, const std::vector<unsigned> & certificate) -> ListAssignment;

    /// Homomorphism to C_(2 beta + 3) reduced to cover of the k-ring with
    /// k = 2^alpha (2 beta + 3), without lists. g must be simple.
    auto reduce_ring_hom(const Multigraph & g, unsigned alpha, unsigned beta) -> ReductionOutput;

    /// List homomorphism to C_k reduced to list cover of the k-ring,
    /// k = 2^alpha with alpha >= 3. lists[v] holds 0-based vertices of C_k.
    auto reduce_ring_list(const Multigraph & g, const std::vector<std::vector<unsigned>> & lists, unsigned alpha)
        -> ReductionOutput;

    /// 4-colouring reduced to cover of the 4-ring, without lists.
    auto reduce_fourring(const Multigraph & g) -> ReductionOutput;

    struct HypergraphOptions
    {
        bool verify = true; // run verify_gadget on the gadget first
        GadgetCheckOptions check;
    };

    /// Rainbow k-colouring of the A side of a bipartite incidence graph
    /// (A of degree k-1, B of degree k) reduced to List-h-Cover, h a connected
    /// k-regular bipartite graph, using the split gadget. The certificate
    /// colours index the neighbours of the anchor x (the simple vertex the
    /// gadget was split at, or the first simple vertex of h).
    auto reduce_hypergraph(const Multigraph & incidence, const Multigraph & h, const SplitGadget & gadget,
        const HypergraphOptions & options = {}) -> ReductionOutput;

    /// Decides List-(s x K2)-Cover through two List-s-Cover calls. The lists
    /// are over times_k2(s); each edge list must be a union of fibres of the
    /// projection onto s (DomainError otherwise). Non-bipartite g is rejected
    /// without calling solve_s.
    auto lift_via_k2(const Multigraph & g, const ListAssignment & lists, const Multigraph & s,
        const std::function<SolveOutcome(const Multigraph &, const ListAssignment &)> & solve_s) -> SolveOutcome;

    // Certificate checkers and brute-force solvers for the source problems.

    auto is_cycle_hom(const Multigraph & g, unsigned n, const std::vector<unsigned> & colour) -> bool;
    auto is_proper_colouring(const Multigraph & g, unsigned colours, const std::vector<unsigned> & colour) -> bool;
    /// colour is indexed by the A vertices in order; every B vertex must see k distinct colours.
    auto is_rainbow(const Multigraph & incidence, unsigned k, const std::vector<unsigned> & colour) -> bool;

    /// A homomorphism to C_n respecting optional per-vertex lists, by backtracking.
    auto brute_force_cycle_hom(const Multigraph & g, unsigned n, const std::vector<std::vector<unsigned>> & lists = {})
        -> std::optional<std::vector<unsigned>>;
    auto brute_force_colouring(const Multigraph & g, unsigned colours) -> std::optional<std::vector<unsigned>>;
    auto brute_force_rainbow(const Multigraph & incidence, unsigned k) -> std::optional<std::vector<unsigned>>;

    /// The incidence graph of a simple graph: a vertex "e:<id>" per edge
    /// (the A side, listed first) and "v:<id>" per vertex.
    auto incidence_graph(const Multigraph & g) -> Multigraph;
}

#endif
