#ifndef SEMICOVER_TESTS_SUPPORT_HH
#define SEMICOVER_TESTS_SUPPORT_HH 1

#include <semicover/covering.hh>
#include <semicover/multigraph.hh>

#include <functional>
#include <random>
#include <vector>

namespace semicover::testing
{
    struct Lift
    {
        Multigraph graph;
        CoverMap projection;
    };

    /// A random n-fold cover of h built from random permutations (and
    /// involutions for semi-edges), with its projection.
    auto random_lift(const Multigraph & h, unsigned n, std::mt19937 & rng) -> Lift;

    /// A random multigraph of the given order whose degrees are all 3;
    /// uses ordinary edges, and when allow_specials also loops and semi-edges.
    auto random_cubic(unsigned n, bool allow_specials, std::mt19937 & rng) -> Multigraph;

    /// A random simple cubic graph on an even number of vertices (pairing model).
    auto random_simple_cubic(unsigned n, std::mt19937 & rng) -> Multigraph;

    /// A random bipartite multigraph whose degrees are all 3 (no loops or semi-edges).
    auto random_bipartite_cubic(unsigned half, std::mt19937 & rng) -> Multigraph;

    /// Disjoint cycles (including loops and digons) and open paths ending in
    /// semi-edges, on n vertices altogether.
    auto random_2regular(unsigned n, std::mt19937 & rng) -> Multigraph;

    /// Random lists of the given density: 0 full, 1 each target kept with
    /// probability 1/2, 2 a single target; density 1 and 2 may still
    /// leave some elements unconstrained.
    auto random_lists(const Multigraph & g, const Multigraph & h, int density, std::mt19937 & rng) -> ListAssignment;

    /// Exhaustive enumeration of every pair of maps V(G)->V(H), E(G)->E(H),
    /// calling back on the ones verify accepts. Only for tiny inputs.
    auto brute_force(const Multigraph & g, const Multigraph & h, bool partial,
        const std::function<void(const CoverMap &)> & found) -> void;

    auto brute_force_count(const Multigraph & g, const Multigraph & h, bool partial = false) -> std::size_t;

    /// Relabels all ids and shuffles vertex and edge order.
    auto relabel(const Multigraph & g, std::mt19937 & rng) -> Multigraph;
}

#endif
