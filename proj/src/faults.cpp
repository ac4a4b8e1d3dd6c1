#include "rspan/faults.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace rspan {

bool is_f_dense(long long subtree_size, long long faults_in_subtree, int rank,
                const SpannerParams& p) {
    double threshold = (1.0 - p.delta_dense * rank / p.Delta) * static_cast<double>(subtree_size);
    return static_cast<double>(faults_in_subtree) >= threshold;
}

namespace {

struct FplusTEval {
    const BuildTrace& trace;
    const std::vector<char>& fmask;

    std::vector<int> eval(int id, std::vector<char>& scratch) const {
        const RecEntry& e = trace.rec[id];
        long long cnt = 0;
        for (int x : e.leaves) cnt += fmask[x];
        const long long sz = static_cast<long long>(e.leaves.size());
        if (is_f_dense(sz, cnt, rank_of_size(sz), trace.params)) return e.leaves;
        if (e.base) {
            std::vector<int> out;
            for (int x : e.leaves)
                if (fmask[x]) out.push_back(x);
            return out;
        }
        std::vector<int> a = eval(e.child_u0, scratch);
        std::vector<int> b = eval(e.child_t1, scratch);
        std::vector<int> out;
        out.reserve(a.size() + b.size());
        std::merge(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));

        double threshold = (1.0 - trace.params.beta / trace.params.Delta) *
                           static_cast<double>(e.u0_leaves.size());
        if (static_cast<double>(a.size()) <= threshold) {
            // step 3(a): abandoned part of T_1 = shadow of F+_{T_u0} in the
            // shrink expander
            for (int x : a) scratch[x] = 1;
            std::vector<int> sh;
            if (e.shrink.complete) {
                bool all = std::all_of(e.shrink.left.begin(), e.shrink.left.end(),
                                       [&](int v) { return scratch[v] != 0; });
                if (all) sh = e.shrink.right;
            } else {
                for (size_t pos = 0; pos < e.shrink.right.size(); ++pos) {
                    auto nb = e.shrink.nbrs(static_cast<int>(pos));
                    bool inside = std::all_of(nb.begin(), nb.end(),
                                              [&](int v) { return scratch[v] != 0; });
                    if (inside) sh.push_back(e.shrink.right[pos]);
                }
            }
            for (int x : a) scratch[x] = 0;
            if (!sh.empty()) {
                std::vector<int> merged;
                merged.reserve(out.size() + sh.size());
                std::merge(out.begin(), out.end(), sh.begin(), sh.end(),
                           std::back_inserter(merged));
                merged.erase(std::unique(merged.begin(), merged.end()), merged.end());
                out = std::move(merged);
            }
        } else {
            // step 3(b): too much of T_u0 is already abandoned
            std::vector<int> merged;
            merged.reserve(out.size() + e.u0_leaves.size());
            std::merge(out.begin(), out.end(), e.u0_leaves.begin(), e.u0_leaves.end(),
                       std::back_inserter(merged));
            merged.erase(std::unique(merged.begin(), merged.end()), merged.end());
            out = std::move(merged);
        }
        return out;
    }
};

std::vector<char> make_mask(int n, std::span<const int> ids, const char* what) {
    std::vector<char> mask(n, 0);
    for (int x : ids) {
        if (x < 0 || x >= n)
            throw std::invalid_argument(std::string(what) + ": index out of range");
        mask[x] = 1;
    }
    return mask;
}

}  // namespace

std::vector<int> compute_fplus_t(const BuildTrace& trace, std::span<const int> F) {
    if (trace.rec.empty()) throw std::invalid_argument("compute_fplus_t: empty trace");
    const int n = trace.params.n_top;
    std::vector<char> fmask = make_mask(n, F, "fault set");
    std::vector<char> scratch(n, 0);
    return FplusTEval{trace, fmask}.eval(0, scratch);
}

FaultReport compute_fplus(const BuildTrace& trace, std::span<const int> F) {
    const SpannerParams& p = trace.params;
    if (!(p.eps < 1.0 / 3))
        throw std::invalid_argument("compute_fplus: eps must be < 1/3");
    const int n = p.n_top;
    const FairSplitTree& t = trace.tree;

    FaultReport rep;
    rep.F.assign(F.begin(), F.end());
    std::sort(rep.F.begin(), rep.F.end());
    rep.F_plus_T = compute_fplus_t(trace, F);
    std::vector<char> fpt_mask = make_mask(n, rep.F_plus_T, "F_plus_T");

    // |F+_T cap L(T_u)| for every tree node, children before parents
    std::vector<long long> cnt(t.node_count(), 0);
    for (int v = t.node_count() - 1; v >= 0; --v) {
        const TreeNode& nd = t.nodes[v];
        cnt[v] = nd.is_leaf() ? fpt_mask[nd.point] : cnt[nd.left] + cnt[nd.right];
    }

    // D0: F+_T-dense nodes (strict threshold)
    std::vector<char> d0(t.node_count(), 0);
    for (int v = 0; v < t.node_count(); ++v) {
        double threshold = (1.0 - 3 * p.eps) * t.nodes[v].size;
        if (static_cast<double>(cnt[v]) > threshold + 1e-9) {
            d0[v] = 1;
            rep.D0.push_back(v);
        }
    }

    // D1: nodes whose largest special subtree root is in D0
    std::vector<int> lss = largest_special_all(t, p.eps);
    std::vector<char> d1(t.node_count(), 0);
    for (int v = 0; v < t.node_count(); ++v) {
        if (d0[lss[v]]) {
            d1[v] = 1;
            rep.D1.push_back(v);
        }
    }

    // F+_0: leaves under the topmost D1 nodes
    {
        std::vector<int> stack{t.root};
        while (!stack.empty()) {
            int v = stack.back();
            stack.pop_back();
            if (d1[v]) {
                std::vector<int> ls = t.leaves(v);
                rep.F_plus_0.insert(rep.F_plus_0.end(), ls.begin(), ls.end());
                continue;
            }
            if (!t.nodes[v].is_leaf()) {
                stack.push_back(t.nodes[v].right);
                stack.push_back(t.nodes[v].left);
            }
        }
        std::sort(rep.F_plus_0.begin(), rep.F_plus_0.end());
    }

    // F+_1: shadows of F+_T in the group expanders at special nodes not in
    // D1.  The shadow argument is F+_T cap L(T_u) (within (PR3)'s domain
    // because u is outside D1); neighbour sets are subsets of L(T_u), so
    // membership reduces to the F+_T mask.
    {
        std::vector<char> sp = special_mask(t, p.eps);
        std::vector<int> group_of(t.node_count(), -1);
        for (size_t gi = 0; gi < trace.groups.size(); ++gi)
            group_of[trace.groups[gi].node] = static_cast<int>(gi);
        for (int v = 0; v < t.node_count(); ++v) {
            if (!sp[v] || d1[v] || group_of[v] < 0) continue;
            const GroupEntry& g = trace.groups[group_of[v]];
            if (g.shrink.complete) {
                bool all = std::all_of(g.shrink.left.begin(), g.shrink.left.end(),
                                       [&](int x) { return fpt_mask[x] != 0; });
                if (all)
                    rep.F_plus_1.insert(rep.F_plus_1.end(), g.shrink.right.begin(),
                                        g.shrink.right.end());
            } else {
                for (size_t pos = 0; pos < g.shrink.right.size(); ++pos) {
                    auto nb = g.shrink.nbrs(static_cast<int>(pos));
                    bool inside = std::all_of(nb.begin(), nb.end(),
                                              [&](int x) { return fpt_mask[x] != 0; });
                    if (inside) rep.F_plus_1.push_back(g.shrink.right[pos]);
                }
            }
        }
        std::sort(rep.F_plus_1.begin(), rep.F_plus_1.end());
        rep.F_plus_1.erase(std::unique(rep.F_plus_1.begin(), rep.F_plus_1.end()),
                           rep.F_plus_1.end());
    }

    rep.F_plus.reserve(rep.F_plus_0.size() + rep.F_plus_1.size());
    std::merge(rep.F_plus_0.begin(), rep.F_plus_0.end(), rep.F_plus_1.begin(),
               rep.F_plus_1.end(), std::back_inserter(rep.F_plus));
    rep.F_plus.erase(std::unique(rep.F_plus.begin(), rep.F_plus.end()), rep.F_plus.end());

    const double nf = static_cast<double>(rep.F.size());
    if (!rep.F.empty()) {
        rep.ratio_T = rep.F_plus_T.size() / nf;
        rep.ratio = rep.F_plus.size() / nf;
        rep.fplus_t_bound = (1.0 + p.eps * rank_of_size(p.n_top) / p.Delta) * nf;
        rep.fplus_bound = std::pow(1 + p.eps, 3) / (1 - 3 * p.eps) * nf;
        rep.fplus_t_bound_ok = rep.F_plus_T.size() <= rep.fplus_t_bound + 1e-9;
        rep.bound_ok = rep.F_plus.size() <= rep.fplus_bound + 1e-9;
    }
    for (int x : rep.F_plus_T)
        rep.fplus_t_in_fplus += std::binary_search(rep.F_plus.begin(), rep.F_plus.end(), x);
    return rep;
}

std::vector<int> random_fault_set(int n, int count, uint64_t seed) {
    if (count < 0 || count > n)
        throw std::invalid_argument("random_fault_set: bad count");
    std::vector<int> ids(n);
    std::iota(ids.begin(), ids.end(), 0);
    Rng rng(SeedSeq{seed}.sub(kTagFaultGen, static_cast<uint64_t>(n) * 31 + count));
    for (int i = 0; i < count; ++i) {
        int j = i + static_cast<int>(rng.below(n - i));
        std::swap(ids[i], ids[j]);
    }
    ids.resize(count);
    std::sort(ids.begin(), ids.end());
    return ids;
}

}  // namespace rspan
