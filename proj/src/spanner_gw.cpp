#include "rspan/spanner_gw.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

namespace rspan {

void derive_wprime(Wspd& w, const FairSplitTree& t, double eps) {
    std::vector<int> lss = largest_special_all(t, eps);
    for (WspdPair& p : w.pairs) p.a_prime = lss[p.a];
}

std::vector<GroupEntry> group_pairs(const Wspd& w, const FairSplitTree& t) {
    std::map<int, std::vector<int>> by_node;
    for (int i = 0; i < w.m(); ++i) {
        if (w.pairs[i].a_prime < 0)
            throw std::invalid_argument("group_pairs: a_prime not derived");
        by_node[w.pairs[i].a_prime].push_back(i);
    }
    std::vector<GroupEntry> groups;
    groups.reserve(by_node.size());
    for (auto& [node, ids] : by_node) {
        GroupEntry g;
        g.node = node;
        g.pair_ids = std::move(ids);
        for (int i : g.pair_ids) {
            std::vector<int> bs = t.leaves(w.pairs[i].b);
            g.b_union.insert(g.b_union.end(), bs.begin(), bs.end());
        }
        std::sort(g.b_union.begin(), g.b_union.end());
        g.b_union.erase(std::unique(g.b_union.begin(), g.b_union.end()), g.b_union.end());
        groups.push_back(std::move(g));
    }
    return groups;
}

namespace {

int scaled_degree(int raw, double scale) {
    long long eff = std::llround(raw * scale);
    return static_cast<int>(std::max(1LL, eff));
}

void append_graph_edges(const BipartiteGraph& g, std::vector<uint64_t>& out) {
    if (g.complete) {
        if (g.self_pair) {
            for (size_t i = 0; i < g.left.size(); ++i)
                for (size_t j = i + 1; j < g.left.size(); ++j)
                    out.push_back(pack_edge(g.left[i], g.left[j]));
        } else {
            for (int b : g.right)
                for (int a : g.left) out.push_back(pack_edge(a, b));
        }
        return;
    }
    for (size_t pos = 0; pos < g.right.size(); ++pos)
        for (int a : g.nbrs(pos)) out.push_back(pack_edge(a, g.right[pos]));
}

}  // namespace

HuBuild build_hu(const FairSplitTree& t, int node, const std::vector<int>& b_union,
                 const SpannerParams& p, uint64_t shrink_seed, uint64_t expand_seed) {
    if (b_union.empty()) throw std::invalid_argument("build_hu: empty group");
    HuBuild h;
    std::vector<int> A = t.leaves(node);
    const bool audit = !p.scaled();

    // (PR3): shrink expander on (L(T_u), B'_u)
    {
        double k = 1.0 / p.eps;
        double tau = std::log(static_cast<double>(p.n_top)) / std::log1p(p.eps) / p.eps;
        if (tau < 1) tau = 1;
        int raw;
        if (shrink_x_max(k, tau, static_cast<long long>(b_union.size()),
                         static_cast<long long>(A.size())) < 1) {
            raw = static_cast<int>(A.size());
        } else {
            raw = shrink_degree(k, tau, static_cast<long long>(b_union.size()),
                                static_cast<long long>(A.size()));
        }
        int eff = scaled_degree(raw, p.degree_scale);
        CheckedBuild cb = build_shrink_checked(A, b_union, k, tau, eff, audit, shrink_seed);
        h.shrink = std::move(cb.g);
        h.shrink_degree_eff = h.shrink.complete ? static_cast<int>(A.size()) : eff;
        h.shrink_attempts = cb.attempts;
        h.shrink_audited = cb.audited;
        h.shrink_ok = cb.passed;
    }

    // (PR4): expand expander on the self-pair (L(T_u), L(T_u))
    {
        double k = 1.0 / p.eps;
        int raw = expand_degree(k, k);
        int eff = scaled_degree(raw, p.degree_scale);
        CheckedBuild cb = build_expand_checked(A, A, k, k, eff, audit, expand_seed);
        h.expand = std::move(cb.g);
        h.expand_degree_eff = h.expand.complete ? static_cast<int>(A.size()) : eff;
        h.expand_attempts = cb.attempts;
        h.expand_audited = cb.audited;
        h.expand_ok = cb.passed;
    }
    return h;
}

std::vector<std::pair<int, int>> BuildTrace::g_edge_pairs() const {
    std::vector<uint64_t> all;
    all.reserve(gt_edges.size() + gw_edges.size());
    all.insert(all.end(), gt_edges.begin(), gt_edges.end());
    all.insert(all.end(), gw_edges.begin(), gw_edges.end());
    normalize_edges(all);
    std::vector<std::pair<int, int>> out;
    out.reserve(all.size());
    for (uint64_t e : all)
        out.emplace_back(static_cast<int>(e >> 32), static_cast<int>(e & 0xffffffffu));
    return out;
}

GeometricGraph BuildTrace::g_t() const {
    std::vector<std::pair<int, int>> out;
    out.reserve(gt_edges.size());
    for (uint64_t e : gt_edges)
        out.emplace_back(static_cast<int>(e >> 32), static_cast<int>(e & 0xffffffffu));
    return GeometricGraph::from_edges(params.n_top, out);
}

GeometricGraph BuildTrace::graph() const {
    return GeometricGraph::from_edges(params.n_top, g_edge_pairs());
}

BuildResult build_spanner(const PointSet& pts, double eps, double t, uint64_t seed,
                          double degree_scale) {
    BuildResult res;
    BuildTrace& tr = res.trace;
    tr.params = SpannerParams::derive(eps, t, pts.dim, pts.size(), seed, degree_scale);
    tr.points_hash = pts.content_hash();
    tr.tree = build_fst(pts);

    SeedSeq seeds{seed};
    tr.wspd = build_wspd(tr.tree, tr.params.s);

    GtResult gt = build_gt(tr.tree, tr.params, seeds);
    tr.rec = std::move(gt.rec);
    tr.gt_edges = std::move(gt.edges);
    tr.complete_cover = gt.complete_cover;

    derive_wprime(tr.wspd, tr.tree, eps);
    tr.groups = group_pairs(tr.wspd, tr.tree);

    std::vector<uint64_t> gw;
    for (GroupEntry& g : tr.groups) {
        HuBuild h = build_hu(tr.tree, g.node, g.b_union, tr.params,
                             seeds.sub(kTagGroupShrink, g.node),
                             seeds.sub(kTagGroupExpand, g.node));
        if (!tr.complete_cover) {
            append_graph_edges(h.shrink, gw);
            append_graph_edges(h.expand, gw);
        }
        g.shrink = std::move(h.shrink);
        g.shrink_degree_eff = h.shrink_degree_eff;
        g.expand_degree_eff = h.expand_degree_eff;
        g.shrink_attempts = h.shrink_attempts;
        g.expand_attempts = h.expand_attempts;
        g.shrink_audited = h.shrink_audited;
        g.expand_audited = h.expand_audited;
        g.shrink_ok = h.shrink_ok;
        g.expand_ok = h.expand_ok;
    }
    normalize_edges(gw);
    tr.gw_edges = std::move(gw);

    res.graph = tr.graph();
    return res;
}

}  // namespace rspan
