#pragma once

#include <cstdint>
#include <vector>

#include "rspan/expander.hpp"
#include "rspan/fst.hpp"
#include "rspan/graph.hpp"
#include "rspan/rng.hpp"

namespace rspan {

/// Smallest integer D with (3/2)^D >= n, exact arithmetic.
int ceil_log_3_2(long long n);

struct SpannerParams {
    double eps = 0;
    double t = 0;
    int s = 0;      // separation for the WSPD, derived from t and dim
    int kappa = 5;  // base-case clique size
    int Delta = 1;  // ceil(log_{3/2} n), fixed from the top-level n
    double alpha = 0, beta = 0, delta_dense = 0, a = 0, zeta = 0, eta = 0;
    double C = 0;  // path-length budget constant, 4d
    int dim = 0;
    int n_top = 0;
    double degree_scale = 1.0;  // < 1 is the experimental low-degree mode
    uint64_t seed = 0;

    /// eps in (0, 1/3), t > 1.  Sets alpha = eps/(eps+1), beta = eps/4,
    /// delta = eps/2, a = beta/2, zeta = beta/6, eta = a/3, C = 4d and
    /// s = ceil(2 d (2C+3) / (t-1)).
    static SpannerParams derive(double eps, double t, int dim, int n, uint64_t seed,
                                double degree_scale = 1.0);

    bool scaled() const { return degree_scale != 1.0; }
};

/// One node of the centroid recursion that builds G_T.  Shrink-expander
/// adjacency is kept because the abandoned-set recursion replays it.
struct RecEntry {
    int id = -1;
    int depth = 0;
    uint64_t path = 1;  // heap-style branch index, seeds derive from it
    bool base = false;
    std::vector<int> leaves;
    std::vector<int> u0_leaves;
    std::vector<int> t1_leaves;
    int child_u0 = -1, child_t1 = -1;
    BipartiteGraph shrink;  // left = u0_leaves, right = t1_leaves
    int shrink_degree_eff = 0, expand_degree_eff = 0;
    int shrink_attempts = 0, expand_attempts = 0;
    bool shrink_audited = false, expand_audited = false;
    bool shrink_ok = true, expand_ok = true;
    bool expand_complete = false;
};

struct HtBuild {
    BipartiteGraph shrink;  // (A = L(T_u0), B = L(T_1))
    BipartiteGraph expand;  // self-pair on L(T)
    int shrink_degree_eff = 0, expand_degree_eff = 0;
    int shrink_attempts = 0, expand_attempts = 0;
    bool shrink_audited = false, expand_audited = false;
    bool shrink_ok = true, expand_ok = true;

    std::vector<uint64_t> edges() const;  // packed union of both parts
};

/// The expander H_T for one recursion node: a shrink expander
/// (k = Delta/beta, tau = Delta/alpha) on (L(T_u0), L(T_1)) plus an expand
/// expander (k = Delta/eta, l = Delta/zeta) on the self-pair (L(T), L(T)).
/// Degrees come from the lemma formulas, scaled by degree_scale and capped
/// at |A| (achieving the cap switches to the complete neighbour set, which
/// the sampling process saturates to and which satisfies the properties
/// maximally).  Requires |T| > kappa at `top`.
HtBuild build_ht(const FairSplitTree& t, int top, int u0, const FairSplitTree& t1,
                 const SpannerParams& p, uint64_t shrink_seed, uint64_t expand_seed);

struct GtResult {
    std::vector<uint64_t> edges;  // packed, sorted, deduplicated
    std::vector<RecEntry> rec;
    bool complete_cover = false;  // some self-pair at the root covered all leaf pairs
};

/// Recursive construction of G_T: complete graph below kappa, otherwise
/// H_T plus recursion on T_u0 and the contracted remainder T_1.
GtResult build_gt(const FairSplitTree& t, const SpannerParams& p, const SeedSeq& seeds);

}  // namespace rspan
