#ifndef SEMICOVER_SOLVER_HH
#define SEMICOVER_SOLVER_HH 1

#include <semicover/covering.hh>
#include <semicover/multigraph.hh>

#include <atomic>
#include <chrono>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace semicover
{
    enum class Status
    {
        satisfiable,
        unsatisfiable,
        resource_limit
    };

    auto to_string(Status) -> std::string_view;

    enum class CoverMode
    {
        total,
        partial
    };

    struct Budget
    {
        std::optional<std::uint64_t> node_limit;
        std::optional<std::chrono::milliseconds> time_limit;
    };

    /// Each rule is sound on its own; switching one off only costs time.
    struct Pruning
    {
        bool degree_filter = true;
        bool local_bijection = true;
        bool component_pinning = true;
        /// After a value fails at a vertex, skip any later value that a swap of
        /// twin target vertices maps onto it within a closed region of G.
        bool twin_symmetry = true;
    };

    struct SolverOptions
    {
        CoverMode mode = CoverMode::total;
        Budget budget;
        Pruning pruning;
        /// Values of a branching variable are tried starting from this offset
        /// (cyclically). Used by the portfolio; 0 gives the canonical order.
        unsigned value_rotation = 0;
        /// Polled during search; when set the search stops with resource_limit.
        const std::atomic<bool> * cancel = nullptr;
    };

    struct SolveStats
    {
        std::uint64_t nodes = 0;
        std::uint64_t revisions = 0;
        std::uint64_t leaves = 0;
        std::uint64_t candidates = 0;      // candidate maps examined by the polynomial procedures
        std::uint64_t symmetric_skips = 0; // values skipped by the twin symmetry rule
        double seconds = 0.0;
    };

    struct SolveOutcome
    {
        Status status = Status::unsatisfiable;
        std::optional<CoverMap> witness;
        SolveStats stats;
    };

    /// Decides List-H-Cover (or its partial variant) by backtracking over
    /// vertex and edge images with local-bijection propagation. A witness is
    /// always checked by the verifier before being returned. The target may
    /// have at most 64 vertices and 64 edges.
    auto solve(const Multigraph & g, const Multigraph & h, const ListAssignment & lists, const SolverOptions & options = {})
        -> SolveOutcome;

    /// Runs `jobs` solver instances with different value orders on separate
    /// threads; the first to finish decides. The verdict is the same as for
    /// solve, the witness may differ.
    auto solve_portfolio(const Multigraph & g, const Multigraph & h, const ListAssignment & lists,
        const SolverOptions & options, unsigned jobs) -> SolveOutcome;

    struct Enumeration
    {
        std::vector<CoverMap> covers;
        bool truncated = false;
        Status status = Status::unsatisfiable; // satisfiable iff any cover was found
        SolveStats stats;
    };

    /// Calls found on every covering projection (or partial one) respecting
    /// the lists, in search order, until it returns false.
    auto for_each_cover(const Multigraph & g, const Multigraph & h, const ListAssignment & lists,
        const std::function<bool(const CoverMap &)> & found, const SolverOptions & options = {}) -> Enumeration;

    auto enumerate(const Multigraph & g, const Multigraph & h, const ListAssignment & lists, std::size_t limit,
        const SolverOptions & options = {}) -> Enumeration;

    auto enumerate_partial(const Multigraph & g, const Multigraph & h, const ListAssignment & lists, std::size_t limit,
        SolverOptions options = {}) -> Enumeration;

    /// The instance is too large for the naive oracle.
    class OracleRefusal : public DomainError
    {
    public:
        using DomainError::DomainError;
    };

    /// Independent naive decision procedure: enumerates vertex maps, then
    /// edge maps restricted by incidence, and accepts via the verifier.
    /// Refuses when |V(H)|^|V(G)| * |E(H)|^|E(G)| exceeds max_search.
    auto oracle(const Multigraph & g, const Multigraph & h, const ListAssignment & lists, CoverMode mode = CoverMode::total,
        double max_search = 1e15) -> SolveOutcome;
}

#endif
