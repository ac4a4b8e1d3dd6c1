#pragma once

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "rspan/fst.hpp"
#include "rspan/geometry.hpp"

namespace rspan {

struct WspdPair {
    int a = -1;        // tree node, |T_a| >= |T_b|
    int b = -1;        // tree node
    int a_prime = -1;  // root of the largest special subtree of a (filled later)
    bool size_tie = false;  // |A| == |B|; role broken by smaller node id as a
};

struct Wspd {
    double s = 0;
    std::vector<WspdPair> pairs;

    int m() const { return static_cast<int>(pairs.size()); }
};

/// Callahan-Kosaraju pairing over the fair-split tree.  A candidate pair is
/// emitted once dist(box_a, box_b) >= s * max(diag_a, diag_b), which implies
/// s-separation of the point sets; otherwise the side with larger diam' is
/// split (ties to the lower node id).
Wspd build_wspd(const FairSplitTree& t, double s);

struct WspdReport {
    struct SeparationViolation {
        int pair_index;
        double distance, required;
    };
    struct CoverageViolation {
        int p, q, count;  // count != 1
    };
    long long checked_pairs = 0;
    std::vector<SeparationViolation> separation;
    std::vector<CoverageViolation> coverage;

    bool ok() const { return separation.empty() && coverage.empty(); }
};

/// Exhaustive check: every pair s-separated using exact set diameters and
/// brute-force set distance, and every unordered point pair covered exactly
/// once.
WspdReport verify_wspd(const PointSet& pts, const FairSplitTree& t, const Wspd& w, double s);

/// sum over pairs of min(|A_i|, |B_i|) = sum |B_i| under the ordering
/// convention.
long long min_size_sum(const FairSplitTree& t, const Wspd& w);

/// Text dump, one line per pair: `a_node b_node |A| |B|`.
void dump_wspd(const FairSplitTree& t, const Wspd& w, std::ostream& out);

}  // namespace rspan
