#include "rspan/wspd.hpp"

#include <algorithm>
#include <ostream>
#include <stdexcept>

namespace rspan {

namespace {

struct NodeGeom {
    double diam_prime;
    double diag;
};

}  // namespace

Wspd build_wspd(const FairSplitTree& t, double s) {
    if (s < 1) throw std::invalid_argument("build_wspd: s must be >= 1");
    Wspd w;
    w.s = s;

    std::vector<NodeGeom> geom(t.node_count());
    for (int v = 0; v < t.node_count(); ++v)
        geom[v] = {diam_prime(t.nodes[v].box), box_diag(t.nodes[v].box)};

    auto separated = [&](int u, int v) {
        double need = s * std::max(geom[u].diag, geom[v].diag);
        return box_distance(t.nodes[u].box, t.nodes[v].box) >= need;
    };

    std::vector<std::pair<int, int>> stack;
    for (int v = 0; v < t.node_count(); ++v)
        if (!t.nodes[v].is_leaf()) stack.emplace_back(t.nodes[v].left, t.nodes[v].right);

    while (!stack.empty()) {
        auto [u, v] = stack.back();
        stack.pop_back();
        if (separated(u, v)) {
            WspdPair p;
            int su = t.nodes[u].size, sv = t.nodes[v].size;
            if (su > sv) {
                p.a = u;
                p.b = v;
            } else if (sv > su) {
                p.a = v;
                p.b = u;
            } else {
                p.a = std::min(u, v);
                p.b = std::max(u, v);
                p.size_tie = true;
            }
            w.pairs.push_back(p);
            continue;
        }
        bool split_u;
        if (geom[u].diam_prime > geom[v].diam_prime)
            split_u = true;
        else if (geom[v].diam_prime > geom[u].diam_prime)
            split_u = false;
        else
            split_u = u < v;
        int x = split_u ? u : v;
        int y = split_u ? v : u;
        stack.emplace_back(t.nodes[x].right, y);
        stack.emplace_back(t.nodes[x].left, y);
    }
    return w;
}

WspdReport verify_wspd(const PointSet& pts, const FairSplitTree& t, const Wspd& w, double s) {
    WspdReport rep;
    const int n = pts.size();

    // exact diameters once per tree node
    std::vector<double> dexact(t.node_count(), -1);
    auto node_diam = [&](int v) {
        if (dexact[v] < 0) {
            std::vector<int> ls = t.leaves(v);
            dexact[v] = diam_exact(pts, ls);
        }
        return dexact[v];
    };

    std::vector<uint16_t> cover(static_cast<size_t>(n) * n, 0);
    for (int i = 0; i < w.m(); ++i) {
        const WspdPair& p = w.pairs[i];
        std::vector<int> A = t.leaves(p.a);
        std::vector<int> B = t.leaves(p.b);
        double need = s * std::max(node_diam(p.a), node_diam(p.b));
        double got = set_distance(pts, A, B);
        rep.checked_pairs++;
        if (got < need * (1 - 1e-9))
            rep.separation.push_back({i, got, need});
        for (int a : A)
            for (int b : B) {
                size_t k1 = static_cast<size_t>(std::min(a, b)) * n + std::max(a, b);
                if (cover[k1] < 0xffff) cover[k1]++;
            }
    }
    for (int p = 0; p < n; ++p)
        for (int q = p + 1; q < n; ++q) {
            int c = cover[static_cast<size_t>(p) * n + q];
            if (c != 1) rep.coverage.push_back({p, q, c});
        }
    return rep;
}

void dump_wspd(const FairSplitTree& t, const Wspd& w, std::ostream& out) {
    for (const WspdPair& p : w.pairs)
        out << p.a << ' ' << p.b << ' ' << t.nodes[p.a].size << ' ' << t.nodes[p.b].size
            << '\n';
}

long long min_size_sum(const FairSplitTree& t, const Wspd& w) {
    long long sum = 0;
    for (const WspdPair& p : w.pairs)
        sum += std::min(t.nodes[p.a].size, t.nodes[p.b].size);
    return sum;
}

}  // namespace rspan
