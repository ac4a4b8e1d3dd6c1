#pragma once

#include <optional>
#include <span>
#include <vector>

#include "rspan/faults.hpp"
#include "rspan/graph.hpp"
#include "rspan/spanner_gw.hpp"

namespace rspan {

/// Exact Dijkstra with Euclidean edge lengths on the vertex-deleted graph;
/// infinity when disconnected.  src and dst must not be removed.
double shortest_path(const GeometricGraph& g, const PointSet& pts, int src, int dst,
                     std::span<const int> removed);

struct StretchReport {
    long long checked_pairs = 0;
    double max_stretch = 0;  // 0 when no pair was checked
    double t_target = 0;
    struct Violation {
        int p, q;
        double stretch;  // infinity when disconnected
    };
    std::vector<Violation> violations;  // capped at 100 entries
    bool exhaustive = true;
    double coverage = 1.0;  // fraction of survivor pairs checked
    long long runtime_ms = 0;

    bool ok() const { return violations.empty(); }
};

/// Checks dist_{G-F}(p,q) <= t dist(p,q) for pairs of survivors P \ F_plus;
/// exhaustive when the survivor count is at most `exhaustive_limit`, else a
/// deterministic sample of sources with reported coverage.  Pairs joined by
/// a direct edge have stretch exactly 1 (edge lengths are the Euclidean
/// distances) and skip the Dijkstra.  Requires F to be a subset of F_plus.
StretchReport stretch_check(const GeometricGraph& g, const PointSet& pts,
                            std::span<const int> F, std::span<const int> F_plus, double t,
                            int exhaustive_limit = 1500, int threads = 0);

struct ExplodeReport {
    long long checked_points = 0;
    long long checked_ancestors = 0;
    struct Violation {
        int p;
        int node;
        double required;
        long long reached;
    };
    std::vector<Violation> violations;

    bool ok() const { return violations.empty(); }
};

/// For every survivor p (w.r.t. F_plus_T) and up to `max_ancestors` sampled
/// ancestors u of p's leaf (lowest and highest always included): the number
/// of q in L(T_u) within graph distance C diam'(T_u) of p in G_T - F must be
/// at least (1 - a/Delta)|T_u| - |F_plus_T cap L(T_u)|.
ExplodeReport explode_check(const BuildTrace& trace, const GeometricGraph& g_t,
                            const PointSet& pts, std::span<const int> F,
                            std::span<const int> F_plus_T, int max_ancestors = 8);

struct EdgeStats {
    long long edges = 0;
    double edges_per_vertex = 0;
    std::optional<double> normalized;  // |E| / (n log2^2 n log2 log2 n), n >= 4
    int max_degree = 0;
    double avg_degree = 0;
};

EdgeStats edge_stats(const GeometricGraph& g, int n);

/// Thread budget: RS_THREADS when set, else hardware concurrency, at least 1.
int thread_budget();

}  // namespace rspan
