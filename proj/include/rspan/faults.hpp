#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "rspan/spanner_gw.hpp"

namespace rspan {

struct FaultReport {
    std::vector<int> F;
    std::vector<int> F_plus_T;
    std::vector<int> D0, D1;  // tree node ids
    std::vector<int> F_plus_0, F_plus_1, F_plus;
    double ratio_T = 0, ratio = 0;  // |F+_T|/|F|, |F+|/|F|
    double fplus_t_bound = 0, fplus_bound = 0;
    bool fplus_t_bound_ok = true;  // |F+_T| <= (1 + eps rank(n)/Delta)|F|
    bool bound_ok = true;          // |F+|   <= (1+eps)^3/(1-3eps) |F|
    long long fplus_t_in_fplus = 0;  // containment statistic, not asserted
};

/// |L(T) cap F| >= (1 - delta rank /Delta) |T|.
bool is_f_dense(long long subtree_size, long long faults_in_subtree, int rank,
                const SpannerParams& p);

/// Replays the recursion of the build: dense nodes abandon all leaves,
/// otherwise recurse on T_u0 and T_1 and add either the shadow of F+_{T_u0}
/// in the shrink expander or, past the (1 - beta/Delta) threshold, all of
/// L(T_u0).  Base cases (|T| <= kappa) apply the density test at the node
/// and at leaf granularity, so faulty leaves are always abandoned.
std::vector<int> compute_fplus_t(const BuildTrace& trace, std::span<const int> F);

/// The abandoned set F+ = F+_0 cup F+_1: D0 collects F+_T-dense tree nodes,
/// D1 the nodes whose largest special subtree root landed in D0, F+_0 their
/// leaves, and F+_1 the shadows of F+_T in the group expanders of special
/// nodes outside D1.
FaultReport compute_fplus(const BuildTrace& trace, std::span<const int> F);

/// Seeded fault set: `count` distinct indices from [0, n).
std::vector<int> random_fault_set(int n, int count, uint64_t seed);

}  // namespace rspan
