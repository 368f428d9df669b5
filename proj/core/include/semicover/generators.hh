#ifndef SEMICOVER_GENERATORS_HH
#define SEMICOVER_GENERATORS_HH 1

#include <semicover/multigraph.hh>

#include <vector>

namespace semicover
{
    /// Cycle of length 2k with every second edge doubled. Vertices are named
    /// 1, 1', 2, 2', ..., k, k' clockwise; the double edges d<j>a, d<j>b join
    /// j and j', the single edge s<j> joins j' and j+1.
    auto ring(unsigned k) -> Multigraph;

    /// All pairwise non-isomorphic k-sausages, k >= 2: a path on k vertices
    /// with alternate edges doubled, end vertices brought up to degree 3 by
    /// a semi-edge, a loop, or two semi-edges.
    auto sausages(unsigned k) -> std::vector<Multigraph>;

    /// One vertex x carrying `semis` semi-edges s1.. and `loops` loops l1..
    auto one_vertex(unsigned semis, unsigned loops) -> Multigraph;

    /// C_n on x1..xn with e<i> joining x<i> and x<i+1>. C_1 is a loop, C_2 a digon.
    auto cycle(unsigned n) -> Multigraph;

    /// Open path: x1..xn, ordinary e1..e<n-1>, semi-edges e0 at x1 and e<n> at xn.
    auto open_path(unsigned n) -> Multigraph;

    /// Simple path on n vertices (no semi-edges).
    auto path(unsigned n) -> Multigraph;

    auto complete_bipartite(unsigned k) -> Multigraph;
    auto complete_graph(unsigned n) -> Multigraph;
    auto triple_edge() -> Multigraph;
    auto petersen() -> Multigraph;
}

#endif
