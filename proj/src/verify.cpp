#include "rspan/verify.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <queue>
#include <stdexcept>
#include <thread>

namespace rspan {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct Csr {
    int n = 0;
    std::vector<long long> off;
    std::vector<int> nbr;
    std::vector<double> len;

    static Csr build(const GeometricGraph& g, const PointSet& pts) {
        Csr c;
        c.n = g.n;
        c.off.assign(g.n + 1, 0);
        long long total = 0;
        for (int i = 0; i < g.n; ++i) {
            total += static_cast<long long>(g.adj[i].size());
            c.off[i + 1] = total;
        }
        c.nbr.reserve(total);
        c.len.reserve(total);
        for (int i = 0; i < g.n; ++i)
            for (int j : g.adj[i]) {
                c.nbr.push_back(j);
                c.len.push_back(dist(pts, i, j));
            }
        return c;
    }
};

void dijkstra(const Csr& c, int src, const std::vector<char>& removed,
              std::vector<double>& dist_out) {
    dist_out.assign(c.n, kInf);
    using Item = std::pair<double, int>;
    std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
    dist_out[src] = 0;
    heap.emplace(0.0, src);
    while (!heap.empty()) {
        auto [d, v] = heap.top();
        heap.pop();
        if (d > dist_out[v]) continue;
        for (long long e = c.off[v]; e < c.off[v + 1]; ++e) {
            int w = c.nbr[e];
            if (removed[w]) continue;
            double nd = d + c.len[e];
            if (nd < dist_out[w]) {
                dist_out[w] = nd;
                heap.emplace(nd, w);
            }
        }
    }
}

std::vector<char> mask_of(int n, std::span<const int> ids, const char* what) {
    std::vector<char> m(n, 0);
    for (int x : ids) {
        if (x < 0 || x >= n) throw std::invalid_argument(std::string(what) + ": index out of range");
        m[x] = 1;
    }
    return m;
}

}  // namespace

int thread_budget() {
    if (const char* env = std::getenv("RS_THREADS")) {
        int v = std::atoi(env);
        if (v >= 1) return v;
    }
    unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : static_cast<int>(hw);
}

double shortest_path(const GeometricGraph& g, const PointSet& pts, int src, int dst,
                     std::span<const int> removed) {
    std::vector<char> rm = mask_of(g.n, removed, "removed set");
    if (src < 0 || src >= g.n || dst < 0 || dst >= g.n)
        throw std::invalid_argument("shortest_path: vertex out of range");
    if (rm[src] || rm[dst])
        throw std::invalid_argument("shortest_path: src/dst removed");
    if (src == dst) return 0;
    Csr c = Csr::build(g, pts);
    std::vector<double> d;
    dijkstra(c, src, rm, d);
    return d[dst];
}

StretchReport stretch_check(const GeometricGraph& g, const PointSet& pts,
                            std::span<const int> F, std::span<const int> F_plus, double t,
                            int exhaustive_limit, int threads) {
    auto t0 = std::chrono::steady_clock::now();
    StretchReport rep;
    rep.t_target = t;
    const int n = g.n;
    std::vector<char> fmask = mask_of(n, F, "F");
    std::vector<char> fpmask = mask_of(n, F_plus, "F_plus");
    for (int x : F)
        if (!fpmask[x]) throw std::invalid_argument("stretch_check: F not contained in F_plus");

    std::vector<int> survivors;
    for (int v = 0; v < n; ++v)
        if (!fpmask[v]) survivors.push_back(v);
    const long long s = static_cast<long long>(survivors.size());
    if (s < 2) {
        rep.coverage = 1;
        return rep;
    }

    std::vector<int> sources = survivors;
    if (s > exhaustive_limit) {
        // deterministic sample: evenly spaced sources, full target sweep each
        long long want = std::max<long long>(
            1, static_cast<long long>(exhaustive_limit) * exhaustive_limit / s);
        want = std::min(want, s);
        sources.clear();
        for (long long i = 0; i < want; ++i)
            sources.push_back(survivors[static_cast<size_t>(i * s / want)]);
        sources.erase(std::unique(sources.begin(), sources.end()), sources.end());
        rep.exhaustive = false;
    }
    const bool exhaustive = rep.exhaustive;

    Csr csr = Csr::build(g, pts);
    const int nthreads = std::max(1, threads > 0 ? threads : thread_budget());

    struct Local {
        long long pairs = 0;
        double max_stretch = 0;
        std::vector<StretchReport::Violation> viol;
    };
    std::vector<Local> locals(nthreads);
    std::atomic<size_t> next{0};

    auto worker = [&](int tid) {
        Local& loc = locals[tid];
        std::vector<double> dist_arr;
        std::vector<int> missing;
        std::vector<char> adj_mask(n, 0);
        while (true) {
            size_t i = next.fetch_add(1);
            if (i >= sources.size()) break;
            int p = sources[i];
            for (int q : g.adj[p]) adj_mask[q] = 1;
            // pairs (p, q) with q > p when exhaustive; all q != p when sampled
            missing.clear();
            long long targets = 0;
            for (int q : survivors) {
                if (exhaustive ? q <= p : q == p) continue;
                ++targets;
                if (!adj_mask[q]) missing.push_back(q);
            }
            for (int q : g.adj[p]) adj_mask[q] = 0;
            if (targets == 0) continue;
            loc.pairs += targets;
            // direct edges realize stretch exactly 1
            loc.max_stretch = std::max(loc.max_stretch, 1.0);
            if (missing.empty()) continue;
            dijkstra(csr, p, fmask, dist_arr);
            for (int q : missing) {
                double ratio = dist_arr[q] / dist(pts, p, q);
                loc.max_stretch = std::max(loc.max_stretch, ratio);
                if (!(ratio <= t * (1 + 1e-9)) && loc.viol.size() < 100)
                    loc.viol.push_back({p, q, ratio});
            }
        }
    };
    if (nthreads == 1) {
        worker(0);
    } else {
        std::vector<std::thread> pool;
        for (int i = 0; i < nthreads; ++i) pool.emplace_back(worker, i);
        for (auto& th : pool) th.join();
    }
    for (const Local& loc : locals) {
        rep.checked_pairs += loc.pairs;
        rep.max_stretch = std::max(rep.max_stretch, loc.max_stretch);
        for (const auto& v : loc.viol)
            if (rep.violations.size() < 100) rep.violations.push_back(v);
    }
    std::sort(rep.violations.begin(), rep.violations.end(),
              [](const auto& a, const auto& b) {
                  return a.p != b.p ? a.p < b.p : a.q < b.q;
              });
    // unordered survivor pairs touched by at least one sampled source
    const double total_pairs = static_cast<double>(s) * (s - 1) / 2;
    if (rep.exhaustive) {
        rep.coverage = 1.0;
    } else {
        const double rest = static_cast<double>(s) - static_cast<double>(sources.size());
        rep.coverage = (total_pairs - rest * (rest - 1) / 2) / total_pairs;
    }
    rep.runtime_ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                         std::chrono::steady_clock::now() - t0)
                         .count();
    return rep;
}

ExplodeReport explode_check(const BuildTrace& trace, const GeometricGraph& g_t,
                            const PointSet& pts, std::span<const int> F,
                            std::span<const int> F_plus_T, int max_ancestors) {
    ExplodeReport rep;
    const FairSplitTree& t = trace.tree;
    const SpannerParams& p = trace.params;
    const int n = pts.size();
    std::vector<char> fmask = mask_of(n, F, "F");
    std::vector<char> fpt = mask_of(n, F_plus_T, "F_plus_T");

    std::vector<int> leaf_of = t.leaf_of_point(n);
    // |F+_T cap L(T_u)| per node
    std::vector<long long> cnt(t.node_count(), 0);
    for (int v = t.node_count() - 1; v >= 0; --v) {
        const TreeNode& nd = t.nodes[v];
        cnt[v] = nd.is_leaf() ? fpt[nd.point] : cnt[nd.left] + cnt[nd.right];
    }
    std::vector<double> dprime(t.node_count());
    for (int v = 0; v < t.node_count(); ++v) dprime[v] = diam_prime(t.nodes[v].box);

    Csr csr = Csr::build(g_t, pts);
    std::vector<double> dist_arr;
    std::vector<int> chain, picked;

    for (int pt_id = 0; pt_id < n; ++pt_id) {
        if (fpt[pt_id]) continue;
        rep.checked_points++;
        chain.clear();
        for (int v = leaf_of[pt_id]; v >= 0; v = t.nodes[v].parent) chain.push_back(v);
        picked.clear();
        if (static_cast<int>(chain.size()) <= max_ancestors) {
            picked = chain;
        } else {
            // lowest and highest always included, evenly spaced between
            for (int i = 0; i < max_ancestors; ++i) {
                size_t idx = static_cast<size_t>(
                    std::llround(static_cast<double>(i) * (chain.size() - 1) / (max_ancestors - 1)));
                picked.push_back(chain[idx]);
            }
            picked.erase(std::unique(picked.begin(), picked.end()), picked.end());
        }

        bool have_dist = false;
        for (int u : picked) {
            rep.checked_ancestors++;
            const double budget = p.C * dprime[u];
            const std::vector<int> lu = t.leaves(u);
            const double required = (1.0 - p.a / p.Delta) * static_cast<double>(lu.size()) -
                                    static_cast<double>(cnt[u]);
            long long reached = 0;
            // direct edges suffice when |pq| <= budget; count the rest via
            // one Dijkstra per point, run on demand
            long long unresolved = 0;
            for (int q : lu) {
                if (q == pt_id) {
                    ++reached;
                } else if (fmask[q]) {
                    // removed vertex, unreachable
                } else if (g_t.has_edge(pt_id, q) && dist(pts, pt_id, q) <= budget * (1 + 1e-9)) {
                    ++reached;
                } else {
                    ++unresolved;
                }
            }
            if (unresolved > 0 && static_cast<double>(reached) < required - 1e-9) {
                if (!have_dist) {
                    dijkstra(csr, pt_id, fmask, dist_arr);
                    have_dist = true;
                }
                reached = 0;
                for (int q : lu) {
                    if (q == pt_id)
                        ++reached;
                    else if (!fmask[q] && dist_arr[q] <= budget * (1 + 1e-9))
                        ++reached;
                }
            }
            if (static_cast<double>(reached) < required - 1e-9)
                rep.violations.push_back({pt_id, u, required, reached});
        }
    }
    return rep;
}

EdgeStats edge_stats(const GeometricGraph& g, int n) {
    EdgeStats st;
    st.edges = g.edge_count();
    if (n > 0) {
        st.edges_per_vertex = static_cast<double>(st.edges) / n;
        st.avg_degree = 2.0 * st.edges / n;
    }
    for (const auto& a : g.adj) st.max_degree = std::max(st.max_degree, static_cast<int>(a.size()));
    if (n >= 4) {
        double l2 = std::log2(static_cast<double>(n));
        double denom = n * l2 * l2 * std::log2(l2);
        if (denom > 0) st.normalized = st.edges / denom;
    }
    return st;
}

}  // namespace rspan
