#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "rspan/geometry.hpp"

namespace rspan {

struct TreeNode {
    int parent = -1;
    int left = -1, right = -1;  // -1/-1 for leaves
    int size = 0;               // leaf count of the subtree
    int point = -1;             // point index, leaves only
    Box box;                    // minimum bounding box of the subtree's points

    bool is_leaf() const { return left < 0; }
};

/// Full binary tree over a point set.  Leaves carry point indices of the
/// original PointSet, which makes detached/contracted trees interchangeable
/// with the tree they came from.
struct FairSplitTree {
    std::vector<TreeNode> nodes;
    int root = -1;

    int size() const { return root < 0 ? 0 : nodes[root].size; }
    int node_count() const { return static_cast<int>(nodes.size()); }

    /// Point indices under node u, ascending.
    std::vector<int> leaves(int u) const;

    /// Leaf node id for each point index (-1 when the point is absent).
    std::vector<int> leaf_of_point(int n_points) const;

    /// Debug dump, preorder: `id parent size lo.. hi.. [point]`.
    void dump(std::ostream& out) const;
};

/// Builds the tree by recursive midpoint bisection of the longest box side;
/// points exactly on the splitting plane go to the low side.
FairSplitTree build_fst(const PointSet& pts);

/// Node u0 of the subtree rooted at `top` with
/// |T|/3 <= |T_u0| <= 2|T|/3, found by descending toward the larger child.
/// Requires subtree size > kappa.
int centroid_node(const FairSplitTree& t, int top, int kappa);
int centroid_node(const FairSplitTree& t, int kappa);  // top = root

struct Detached {
    FairSplitTree subtree;  // copy of T_u0
    FairSplitTree rest;     // T1 = T - T_u0 with the single-child node contracted
};

/// Splits the tree at u0 (u0 must not be the root).  Both results are fresh
/// trees whose leaves keep the original point indices.  Nodes of `rest`
/// keep the boxes they had in the input tree, so the fair-split property is
/// preserved under contraction.
Detached detach(const FairSplitTree& t, int u0);

/// Contracted remainder only (what detach()'s `rest` is), cheaper when the
/// subtree copy is not needed.
FairSplitTree detach_rest(const FairSplitTree& t, int u0);

/// Contracted remainder of the subtree rooted at `top` after removing the
/// subtree at u0 (u0 strictly inside).
FairSplitTree subtree_rest(const FairSplitTree& t, int top, int u0);

/// floor(log_{3/2} size), exact integer arithmetic.
int rank_of_size(long long size);

/// floor(log_{1+eps} size); requires 0 < eps < 1/2.
int label_of_size(long long size, double eps);

/// Per-node labels for the whole tree.
std::vector<int> node_labels(const FairSplitTree& t, double eps);

/// True at nodes that are leaves or whose label differs from both children.
std::vector<char> special_mask(const FairSplitTree& t, double eps);
std::vector<int> special_nodes(const FairSplitTree& t, double eps);

/// Root of the largest special subtree inside T_u: the special node of
/// maximum size within u's equal-label subtree, ties to the lower node id.
int largest_special_subtree(const FairSplitTree& t, int u, double eps);

/// largest_special_subtree for every node at once (O(n)).
std::vector<int> largest_special_all(const FairSplitTree& t, double eps);

/// Checks fullness, size sums, leaf bijection and the fair-split ratio
/// diam'(child) <= (1 - 1/(2d)) diam'(parent); throws on violation.
void validate_tree(const FairSplitTree& t);

}  // namespace rspan
