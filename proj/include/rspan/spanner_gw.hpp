#pragma once

#include <cstdint>
#include <vector>

#include "rspan/expander.hpp"
#include "rspan/fst.hpp"
#include "rspan/graph.hpp"
#include "rspan/spanner_gt.hpp"
#include "rspan/wspd.hpp"

namespace rspan {

/// Pairs of W' anchored at one special node u: every pair has a_prime = u,
/// b_union is the union of their B sides.  The shrink adjacency is kept for
/// the abandoned-set computation.
struct GroupEntry {
    int node = -1;
    std::vector<int> pair_ids;
    std::vector<int> b_union;  // sorted point ids
    BipartiteGraph shrink;     // left = L(T_node), right = b_union
    int shrink_degree_eff = 0, expand_degree_eff = 0;
    int shrink_attempts = 0, expand_attempts = 0;
    bool shrink_audited = false, expand_audited = false;
    bool shrink_ok = true, expand_ok = true;
};

/// Fills a_prime on every pair: the root of the largest special subtree of
/// T_a, which keeps at least a (1-2 eps) fraction of the leaves.
void derive_wprime(Wspd& w, const FairSplitTree& t, double eps);

/// Partitions W' into groups keyed by a_prime (ascending node id) and
/// computes each group's b_union.  Expander fields are left empty.
std::vector<GroupEntry> group_pairs(const Wspd& w, const FairSplitTree& t);

struct HuBuild {
    BipartiteGraph shrink;  // (A = L(T_u), B = B'_u), k = 1/eps, tau = log_{1+eps}(n)/eps
    BipartiteGraph expand;  // self-pair on L(T_u), k = l = 1/eps
    int shrink_degree_eff = 0, expand_degree_eff = 0;
    int shrink_attempts = 0, expand_attempts = 0;
    bool shrink_audited = false, expand_audited = false;
    bool shrink_ok = true, expand_ok = true;
};

/// The expander H'_u for one group.
HuBuild build_hu(const FairSplitTree& t, int node, const std::vector<int>& b_union,
                 const SpannerParams& p, uint64_t shrink_seed, uint64_t expand_seed);

/// Everything faults/verify need to replay a build.
struct BuildTrace {
    SpannerParams params;
    uint64_t points_hash = 0;
    FairSplitTree tree;
    Wspd wspd;
    std::vector<RecEntry> rec;
    std::vector<GroupEntry> groups;
    std::vector<uint64_t> gt_edges;  // packed, deduplicated
    std::vector<uint64_t> gw_edges;  // packed, deduplicated, may be empty when covered
    bool complete_cover = false;

    std::vector<std::pair<int, int>> g_edge_pairs() const;  // union of both sets
    GeometricGraph g_t() const;
    GeometricGraph graph() const;
};

struct BuildResult {
    BuildTrace trace;
    GeometricGraph graph;
};

/// Full construction: fair-split tree, WSPD at the derived separation, G_T,
/// W', groups, all H'_u, and the deduplicated union G = G_T + G_W.
BuildResult build_spanner(const PointSet& pts, double eps, double t, uint64_t seed,
                          double degree_scale = 1.0);

}  // namespace rspan
