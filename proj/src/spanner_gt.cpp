#include "rspan/spanner_gt.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace rspan {

int ceil_log_3_2(long long n) {
    if (n < 1) throw std::invalid_argument("ceil_log_3_2: n must be >= 1");
    int d = 0;
    unsigned __int128 num = 1, den = 1;
    while (num < static_cast<unsigned __int128>(n) * den) {
        ++d;
        num *= 3;
        den *= 2;
    }
    return d;
}

SpannerParams SpannerParams::derive(double eps, double t, int dim, int n, uint64_t seed,
                                    double degree_scale) {
    if (!(eps > 0 && eps < 1.0 / 3))
        throw std::invalid_argument("params: eps must be in (0, 1/3)");
    if (!(t > 1)) throw std::invalid_argument("params: t must be > 1");
    if (dim < 1) throw std::invalid_argument("params: dim must be >= 1");
    if (n < 1) throw std::invalid_argument("params: n must be >= 1");
    if (!(degree_scale > 0 && degree_scale <= 1))
        throw std::invalid_argument("params: degree_scale must be in (0, 1]");
    SpannerParams p;
    p.eps = eps;
    p.t = t;
    p.dim = dim;
    p.n_top = n;
    p.seed = seed;
    p.degree_scale = degree_scale;
    p.kappa = 5;
    p.Delta = std::max(1, ceil_log_3_2(n));
    p.alpha = eps / (eps + 1);
    p.beta = eps / 4;
    p.delta_dense = eps / 2;
    p.a = p.beta / 2;
    p.zeta = p.beta / 6;
    p.eta = p.a / 3;
    p.C = 4.0 * dim;
    p.s = static_cast<int>(std::ceil(2.0 * dim * (2 * p.C + 3) / (t - 1)));
    if (p.s < 1) p.s = 1;
    return p;
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

std::vector<uint64_t> HtBuild::edges() const {
    std::vector<uint64_t> out;
    append_graph_edges(shrink, out);
    append_graph_edges(expand, out);
    normalize_edges(out);
    return out;
}

HtBuild build_ht(const FairSplitTree& t, int top, int u0, const FairSplitTree& t1,
                 const SpannerParams& p, uint64_t shrink_seed, uint64_t expand_seed) {
    if (t.nodes[top].size <= p.kappa)
        throw std::invalid_argument("build_ht: |T| must exceed kappa");
    HtBuild h;
    std::vector<int> A = t.leaves(u0);
    std::vector<int> B = t1.leaves(t1.root);
    std::vector<int> all = t.leaves(top);

    const bool audit = !p.scaled();

    // (PR1): shrink expander on (L(T_u0), L(T_1))
    {
        double k = p.Delta / p.beta;
        double tau = p.Delta / p.alpha;
        int raw;
        if (shrink_x_max(k, tau, static_cast<long long>(B.size()),
                         static_cast<long long>(A.size())) < 1) {
            // degenerate search range: the shadow bound forces empty shadows,
            // which only the complete neighbour set delivers
            raw = static_cast<int>(A.size());
        } else {
            raw = shrink_degree(k, tau, static_cast<long long>(B.size()),
                                static_cast<long long>(A.size()));
        }
        int eff = scaled_degree(raw, p.degree_scale);
        CheckedBuild cb = build_shrink_checked(A, B, k, tau, eff, audit, shrink_seed);
        h.shrink = std::move(cb.g);
        h.shrink_degree_eff = h.shrink.complete ? static_cast<int>(A.size()) : eff;
        h.shrink_attempts = cb.attempts;
        h.shrink_audited = cb.audited;
        h.shrink_ok = cb.passed;
    }

    // (PR2): expand expander on the self-pair (L(T), L(T))
    {
        double k = p.Delta / p.eta;
        double l = p.Delta / p.zeta;
        int raw = expand_degree(k, l);
        int eff = scaled_degree(raw, p.degree_scale);
        CheckedBuild cb = build_expand_checked(all, all, k, l, eff, audit, expand_seed);
        h.expand = std::move(cb.g);
        h.expand_degree_eff = h.expand.complete ? static_cast<int>(all.size()) : eff;
        h.expand_attempts = cb.attempts;
        h.expand_audited = cb.audited;
        h.expand_ok = cb.passed;
    }
    return h;
}

namespace {

struct GtBuilder {
    const SpannerParams& p;
    const SeedSeq& seeds;
    std::vector<uint64_t> edges;
    std::vector<RecEntry> rec;

    int recurse(const FairSplitTree& t, int top, int depth, uint64_t path, bool covered) {
        const int id = static_cast<int>(rec.size());
        rec.emplace_back();
        rec[id].id = id;
        rec[id].depth = depth;
        rec[id].path = path;
        rec[id].leaves = t.leaves(top);

        if (t.nodes[top].size <= p.kappa) {
            rec[id].base = true;
            if (!covered) {
                const auto& ls = rec[id].leaves;
                for (size_t i = 0; i < ls.size(); ++i)
                    for (size_t j = i + 1; j < ls.size(); ++j)
                        edges.push_back(pack_edge(ls[i], ls[j]));
            }
            return id;
        }

        int u0 = centroid_node(t, top, p.kappa);
        FairSplitTree t1 = subtree_rest(t, top, u0);
        HtBuild h = build_ht(t, top, u0, t1, p, seeds.sub(kTagHtShrink, path),
                             seeds.sub(kTagHtExpand, path));
        if (!covered) {
            append_graph_edges(h.shrink, edges);
            append_graph_edges(h.expand, edges);
        }
        {
            RecEntry& e = rec[id];
            e.u0_leaves = t.leaves(u0);
            e.t1_leaves = t1.leaves(t1.root);
            e.shrink = std::move(h.shrink);
            e.shrink_degree_eff = h.shrink_degree_eff;
            e.expand_degree_eff = h.expand_degree_eff;
            e.shrink_attempts = h.shrink_attempts;
            e.expand_attempts = h.expand_attempts;
            e.shrink_audited = h.shrink_audited;
            e.expand_audited = h.expand_audited;
            e.shrink_ok = h.shrink_ok;
            e.expand_ok = h.expand_ok;
            e.expand_complete = h.expand.complete;
        }
        bool covered_below = covered || h.expand.complete;
        int cu = recurse(t, u0, depth + 1, 2 * path, covered_below);
        rec[id].child_u0 = cu;
        int ct = recurse(t1, t1.root, depth + 1, 2 * path + 1, covered_below);
        rec[id].child_t1 = ct;
        return id;
    }
};

}  // namespace

GtResult build_gt(const FairSplitTree& t, const SpannerParams& p, const SeedSeq& seeds) {
    GtResult res;
    GtBuilder b{p, seeds, {}, {}};
    b.recurse(t, t.root, 0, 1, false);
    normalize_edges(b.edges);
    res.edges = std::move(b.edges);
    res.rec = std::move(b.rec);
    res.complete_cover = !res.rec.empty() && (res.rec[0].expand_complete ||
                                              (res.rec[0].base && t.size() > 0));
    return res;
}

}  // namespace rspan
