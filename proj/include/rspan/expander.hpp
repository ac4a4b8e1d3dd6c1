#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "rspan/rng.hpp"

namespace rspan {

/// Random bipartite graph: every right vertex sampled `degree` neighbours
/// from the left set (with replacement, then deduplicated).  When the
/// effective degree reaches |A| the graph is stored as `complete` instead:
/// every right vertex is adjacent to all of A (minus itself on self-pairs),
/// which is the neighbour set the sampling process saturates to.
struct BipartiteGraph {
    std::vector<int> left;   // sorted ids
    std::vector<int> right;  // sorted ids
    bool self_pair = false;  // left and right are the same ground set
    bool complete = false;
    int degree = 0;          // samples drawn per right vertex (sampled mode)
    // right-major adjacency, sampled mode only
    std::vector<int> off;  // size right.size()+1
    std::vector<int> adj;  // left ids, sorted within each right slot

    std::span<const int> nbrs(int right_pos) const {
        return {adj.data() + off[right_pos], static_cast<size_t>(off[right_pos + 1] - off[right_pos])};
    }
    long long edge_count() const;
};

/// Smallest integer strictly greater than k(1+ln l) + l(1+ln k).
int expand_degree(double k, double l);

/// Upper end of the x range in the shrink-degree search:
/// min(|B|, (1-1/k)|A|/tau).  The search is vacuous when this is < 1.
double shrink_x_max(double k, double tau, long long b_size, long long a_size);

/// Smallest integer degree for which
///   C(|A|, tau x) C(|B|, x) (tau x/|A|)^(degree x) < 1/|B|
/// holds for every x in 1..shrink_x_max, log-domain arithmetic.
/// Returns 1 when the x range is empty.
int shrink_degree(double k, double tau, long long b_size, long long a_size);

/// Each b in B draws `degree` uniform samples from A (with replacement,
/// deduplicated); self-loops dropped when A and B are the same id set.
/// A and B must be sorted.
BipartiteGraph build_bipartite(std::span<const int> A, std::span<const int> B, int degree,
                               Rng& rng);

/// Complete counterpart (every b adjacent to all of A minus itself).
BipartiteGraph build_complete(std::span<const int> A, std::span<const int> B);

/// Union of the adjacency sets of Y, undirected view of the graph.
std::vector<int> neighbourhood(const BipartiteGraph& g, std::span<const int> Y);

/// Vertices of `domain` all of whose neighbours lie in Y (a vertex without
/// neighbours is in every shadow), undirected view.
std::vector<int> shadow(const BipartiteGraph& g, std::span<const int> Y,
                        std::span<const int> domain);

/// Exhaustive: for every B' of size ceil(|B|/l) (larger subsets follow by
/// monotonicity), |N(B') в A| >= (1-1/k)|A|.  Throws when enumeration is
/// infeasible (|A| > 64 or too many subsets).
bool check_expansion(const BipartiteGraph& g, double k, double l);

/// Exhaustive over all A' with |A'| <= (1-1/k)|A|:
/// |{b : nbrs(b) subset of A'}| <= |A'|/tau.  Throws when |A| > 16.
bool check_shadow(const BipartiteGraph& g, double k, double tau);

bool expansion_check_feasible(const BipartiteGraph& g, double l);
bool shadow_check_feasible(const BipartiteGraph& g);

/// Construct-verify-resample wrapper.  Builds at the given degree; when the
/// instance is small enough to verify exhaustively (and the degree was not
/// scaled away from the formula), re-draws with derived seeds until the
/// property check passes, up to `max_attempts`.
struct CheckedBuild {
    BipartiteGraph g;
    int attempts = 1;      // draws consumed
    bool audited = false;  // exhaustive check ran
    bool passed = true;    // false only when audited and all attempts failed
};

CheckedBuild build_expand_checked(std::span<const int> A, std::span<const int> B, double k,
                                  double l, int degree, bool audit, uint64_t seed,
                                  int max_attempts = 100);

CheckedBuild build_shrink_checked(std::span<const int> A, std::span<const int> B, double k,
                                  double tau, int degree, bool audit, uint64_t seed,
                                  int max_attempts = 100);

}  // namespace rspan
