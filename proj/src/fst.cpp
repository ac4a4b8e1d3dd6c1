#include "rspan/fst.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <ostream>
#include <stdexcept>

namespace rspan {

std::vector<int> FairSplitTree::leaves(int u) const {
    std::vector<int> out;
    std::vector<int> stack{u};
    while (!stack.empty()) {
        int v = stack.back();
        stack.pop_back();
        const TreeNode& nd = nodes[v];
        if (nd.is_leaf()) {
            out.push_back(nd.point);
        } else {
            stack.push_back(nd.right);
            stack.push_back(nd.left);
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<int> FairSplitTree::leaf_of_point(int n_points) const {
    std::vector<int> map(n_points, -1);
    for (int v = 0; v < node_count(); ++v)
        if (nodes[v].is_leaf()) map[nodes[v].point] = v;
    return map;
}

FairSplitTree build_fst(const PointSet& pts) {
    const int n = pts.size();
    const int d = pts.dim;
    if (n < 1) throw std::invalid_argument("build_fst: empty point set");

    FairSplitTree t;
    t.nodes.reserve(2 * n - 1);

    std::vector<int> idx(n);
    std::iota(idx.begin(), idx.end(), 0);

    struct Task {
        int begin, end, parent;
        bool is_left;
    };
    std::vector<Task> stack{{0, n, -1, false}};
    while (!stack.empty()) {
        Task task = stack.back();
        stack.pop_back();
        int id = t.node_count();
        t.nodes.emplace_back();
        TreeNode& nd = t.nodes.back();
        nd.parent = task.parent;
        nd.size = task.end - task.begin;
        if (task.parent < 0) {
            t.root = id;
        } else if (task.is_left) {
            t.nodes[task.parent].left = id;
        } else {
            t.nodes[task.parent].right = id;
        }

        std::span<const int> span(idx.data() + task.begin, static_cast<size_t>(nd.size));
        nd.box = bounding_box(pts, span);
        if (nd.size == 1) {
            nd.point = idx[task.begin];
            continue;
        }

        int axis = 0;
        double extent = nd.box.hi[0] - nd.box.lo[0];
        for (int j = 1; j < d; ++j) {
            double e = nd.box.hi[j] - nd.box.lo[j];
            if (e > extent) {
                extent = e;
                axis = j;
            }
        }
        if (extent <= 0) throw std::invalid_argument("build_fst: duplicate points");

        // bisect the longest side; points exactly on the plane go low
        double mid = nd.box.lo[axis] + extent / 2;
        int* first = idx.data() + task.begin;
        int* last = idx.data() + task.end;
        int* cut = std::partition(first, last, [&](int i) { return pts.pt(i)[axis] <= mid; });
        int k = static_cast<int>(cut - first);
        if (k == 0 || k == nd.size)
            throw std::invalid_argument("build_fst: degenerate split (duplicate points?)");

        // right pushed first so the left subtree gets the next preorder ids
        stack.push_back({task.begin + k, task.end, id, false});
        stack.push_back({task.begin, task.begin + k, id, true});
    }
    return t;
}

int centroid_node(const FairSplitTree& t, int top, int kappa) {
    const long long total = t.nodes[top].size;
    if (total <= kappa)
        throw std::invalid_argument("centroid_node: subtree size <= kappa");
    int v = top;
    while (3LL * t.nodes[v].size > 2LL * total) {
        const TreeNode& nd = t.nodes[v];
        v = (t.nodes[nd.left].size >= t.nodes[nd.right].size) ? nd.left : nd.right;
    }
    if (3LL * t.nodes[v].size < total)
        throw std::logic_error("centroid_node: walk left the 1/3 bound");
    return v;
}

int centroid_node(const FairSplitTree& t, int kappa) { return centroid_node(t, t.root, kappa); }

namespace {

// Clones the subtree at `src` into `out` (preorder), skipping nothing.
int clone_subtree(const FairSplitTree& t, int src, FairSplitTree& out, int parent) {
    int id = out.node_count();
    out.nodes.push_back(t.nodes[src]);
    out.nodes[id].parent = parent;
    out.nodes[id].left = out.nodes[id].right = -1;
    if (!t.nodes[src].is_leaf()) {
        int l = clone_subtree(t, t.nodes[src].left, out, id);
        out.nodes[id].left = l;
        int r = clone_subtree(t, t.nodes[src].right, out, id);
        out.nodes[id].right = r;
        out.nodes[id].size = out.nodes[l].size + out.nodes[r].size;
    }
    return id;
}

// Clones the tree while replacing the parent of `skip` by `skip`'s sibling.
int clone_without(const FairSplitTree& t, int src, int skip, FairSplitTree& out, int parent) {
    const TreeNode& nd = t.nodes[src];
    if (!nd.is_leaf() && (nd.left == skip || nd.right == skip)) {
        int sibling = (nd.left == skip) ? nd.right : nd.left;
        return clone_without(t, sibling, skip, out, parent);
    }
    int id = out.node_count();
    out.nodes.push_back(nd);
    out.nodes[id].parent = parent;
    out.nodes[id].left = out.nodes[id].right = -1;
    if (!nd.is_leaf()) {
        int l = clone_without(t, nd.left, skip, out, id);
        out.nodes[id].left = l;
        int r = clone_without(t, nd.right, skip, out, id);
        out.nodes[id].right = r;
        out.nodes[id].size = out.nodes[l].size + out.nodes[r].size;
    }
    return id;
}

}  // namespace

FairSplitTree subtree_rest(const FairSplitTree& t, int top, int u0) {
    if (u0 == top) throw std::invalid_argument("detach: u0 must be strictly inside");
    FairSplitTree rest;
    rest.nodes.reserve(2 * (t.nodes[top].size - t.nodes[u0].size));
    rest.root = clone_without(t, top, u0, rest, -1);
    return rest;
}

FairSplitTree detach_rest(const FairSplitTree& t, int u0) {
    return subtree_rest(t, t.root, u0);
}

Detached detach(const FairSplitTree& t, int u0) {
    Detached d;
    d.subtree.nodes.reserve(2 * t.nodes[u0].size - 1);
    d.subtree.root = clone_subtree(t, u0, d.subtree, -1);
    d.rest = detach_rest(t, u0);
    return d;
}

int rank_of_size(long long size) {
    if (size < 1) throw std::invalid_argument("rank: size must be >= 1");
    // largest r with 3^r <= size * 2^r
    int r = 0;
    unsigned __int128 num = 3, den = 2;
    while (num <= static_cast<unsigned __int128>(size) * den) {
        ++r;
        num *= 3;
        den *= 2;
    }
    return r;
}

int label_of_size(long long size, double eps) {
    if (size < 1) throw std::invalid_argument("label: size must be >= 1");
    if (!(eps > 0 && eps < 0.5)) throw std::invalid_argument("label: eps must be in (0, 1/2)");
    int l = static_cast<int>(std::floor(std::log(static_cast<double>(size)) / std::log1p(eps) + 1e-9));
    if (l < 0) l = 0;
    while (std::pow(1 + eps, l + 1) <= static_cast<double>(size)) ++l;
    while (l > 0 && std::pow(1 + eps, l) > static_cast<double>(size)) --l;
    return l;
}

std::vector<int> node_labels(const FairSplitTree& t, double eps) {
    std::vector<int> lbl(t.node_count());
    for (int v = 0; v < t.node_count(); ++v) lbl[v] = label_of_size(t.nodes[v].size, eps);
    return lbl;
}

std::vector<char> special_mask(const FairSplitTree& t, double eps) {
    std::vector<int> lbl = node_labels(t, eps);
    std::vector<char> sp(t.node_count(), 0);
    for (int v = 0; v < t.node_count(); ++v) {
        const TreeNode& nd = t.nodes[v];
        if (nd.is_leaf())
            sp[v] = 1;
        else
            sp[v] = (lbl[v] != lbl[nd.left] && lbl[v] != lbl[nd.right]) ? 1 : 0;
    }
    return sp;
}

std::vector<int> special_nodes(const FairSplitTree& t, double eps) {
    std::vector<char> sp = special_mask(t, eps);
    std::vector<int> out;
    for (int v = 0; v < t.node_count(); ++v)
        if (sp[v]) out.push_back(v);
    return out;
}

std::vector<int> largest_special_all(const FairSplitTree& t, double eps) {
    std::vector<int> lbl = node_labels(t, eps);
    std::vector<char> sp = special_mask(t, eps);
    std::vector<int> best(t.node_count(), -1);
    // preorder ids: children come after parents, so a reverse sweep sees
    // children first
    for (int v = t.node_count() - 1; v >= 0; --v) {
        if (sp[v]) {
            best[v] = v;
            continue;
        }
        const TreeNode& nd = t.nodes[v];
        int cand = -1;
        for (int c : {nd.left, nd.right}) {
            if (c < 0 || lbl[c] != lbl[v]) continue;
            int b = best[c];
            if (b < 0) continue;
            if (cand < 0 || t.nodes[b].size > t.nodes[cand].size ||
                (t.nodes[b].size == t.nodes[cand].size && b < cand))
                cand = b;
        }
        if (cand < 0) throw std::logic_error("largest_special_all: no candidate in label class");
        best[v] = cand;
    }
    return best;
}

int largest_special_subtree(const FairSplitTree& t, int u, double eps) {
    const int lbl_u = label_of_size(t.nodes[u].size, eps);
    int best = -1;
    std::vector<int> stack{u};
    while (!stack.empty()) {
        int v = stack.back();
        stack.pop_back();
        if (label_of_size(t.nodes[v].size, eps) != lbl_u) continue;
        const TreeNode& nd = t.nodes[v];
        bool special = nd.is_leaf() ||
                       (label_of_size(t.nodes[nd.left].size, eps) != lbl_u &&
                        label_of_size(t.nodes[nd.right].size, eps) != lbl_u);
        if (special) {
            if (best < 0 || nd.size > t.nodes[best].size ||
                (nd.size == t.nodes[best].size && v < best))
                best = v;
        }
        if (!nd.is_leaf()) {
            stack.push_back(nd.left);
            stack.push_back(nd.right);
        }
    }
    if (best < 0) throw std::logic_error("largest_special_subtree: none found");
    return best;
}

void validate_tree(const FairSplitTree& t) {
    if (t.root < 0 || t.root >= t.node_count())
        throw std::logic_error("tree: bad root");
    if (t.nodes[t.root].parent != -1) throw std::logic_error("tree: root has a parent");
    std::vector<int> seen_points;
    for (int v = 0; v < t.node_count(); ++v) {
        const TreeNode& nd = t.nodes[v];
        if (nd.is_leaf()) {
            if (nd.right >= 0 || nd.size != 1 || nd.point < 0)
                throw std::logic_error("tree: bad leaf");
            seen_points.push_back(nd.point);
            continue;
        }
        if (nd.right < 0) throw std::logic_error("tree: node with one child");
        if (t.nodes[nd.left].parent != v || t.nodes[nd.right].parent != v)
            throw std::logic_error("tree: bad parent link");
        if (nd.size != t.nodes[nd.left].size + t.nodes[nd.right].size)
            throw std::logic_error("tree: bad size sum");
        const double dp = diam_prime(nd.box);
        const double limit = (1.0 - 1.0 / (2.0 * nd.box.dim())) * dp * (1 + 1e-12);
        for (int c : {nd.left, nd.right}) {
            if (diam_prime(t.nodes[c].box) > limit)
                throw std::logic_error("tree: fair-split ratio violated");
            for (int j = 0; j < nd.box.dim(); ++j)
                if (t.nodes[c].box.lo[j] < nd.box.lo[j] - 1e-12 ||
                    t.nodes[c].box.hi[j] > nd.box.hi[j] + 1e-12)
                    throw std::logic_error("tree: child box not contained");
        }
    }
    std::sort(seen_points.begin(), seen_points.end());
    if (std::adjacent_find(seen_points.begin(), seen_points.end()) != seen_points.end())
        throw std::logic_error("tree: duplicate leaf point");
    if (static_cast<int>(seen_points.size()) != t.size())
        throw std::logic_error("tree: leaf count mismatch");
}

void FairSplitTree::dump(std::ostream& out) const {
    char buf[64];
    std::vector<int> stack{root};
    while (!stack.empty()) {
        int v = stack.back();
        stack.pop_back();
        const TreeNode& nd = nodes[v];
        out << v << ' ' << nd.parent << ' ' << nd.size;
        for (double x : nd.box.lo) {
            std::snprintf(buf, sizeof buf, "%.17g", x);
            out << ' ' << buf;
        }
        for (double x : nd.box.hi) {
            std::snprintf(buf, sizeof buf, "%.17g", x);
            out << ' ' << buf;
        }
        if (nd.is_leaf()) out << ' ' << nd.point;
        out << '\n';
        if (!nd.is_leaf()) {
            stack.push_back(nd.right);
            stack.push_back(nd.left);
        }
    }
}

}  // namespace rspan
