#include "rspan/expander.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <stdexcept>
#include <unordered_set>

namespace rspan {

long long BipartiteGraph::edge_count() const {
    if (!complete) return static_cast<long long>(adj.size());
    long long n = 0;
    if (self_pair) {
        n = static_cast<long long>(right.size()) * (static_cast<long long>(left.size()) - 1);
    } else {
        n = static_cast<long long>(right.size()) * static_cast<long long>(left.size());
    }
    return n;
}

int expand_degree(double k, double l) {
    if (k < 2 || l < 2) throw std::invalid_argument("expand_degree: k and l must be >= 2");
    double x = k * (1 + std::log(l)) + l * (1 + std::log(k));
    return static_cast<int>(std::floor(x)) + 1;
}

double shrink_x_max(double k, double tau, long long b_size, long long a_size) {
    return std::min(static_cast<double>(b_size), (1 - 1 / k) * static_cast<double>(a_size) / tau);
}

namespace {

double log_choose(double n, double r) {
    return std::lgamma(n + 1) - std::lgamma(r + 1) - std::lgamma(n - r + 1);
}

}  // namespace

int shrink_degree(double k, double tau, long long b_size, long long a_size) {
    if (k < 2) throw std::invalid_argument("shrink_degree: k must be >= 2");
    if (tau < 1) throw std::invalid_argument("shrink_degree: tau must be >= 1");
    if (b_size < 1 || a_size < 1)
        throw std::invalid_argument("shrink_degree: sizes must be >= 1");
    const double a = static_cast<double>(a_size);
    const double b = static_cast<double>(b_size);
    const double xmax = shrink_x_max(k, tau, b_size, a_size);
    if (xmax < 1) return 1;
    int best = 1;
    for (long long x = 1; x <= static_cast<long long>(std::floor(xmax + 1e-12)); ++x) {
        double L = log_choose(a, tau * x) + log_choose(b, static_cast<double>(x)) + std::log(b);
        double den = x * std::log(a / (tau * x));
        int cand = static_cast<int>(std::floor(L / den)) + 1;
        best = std::max(best, cand);
    }
    return best;
}

BipartiteGraph build_bipartite(std::span<const int> A, std::span<const int> B, int degree,
                               Rng& rng) {
    if (A.empty() || B.empty())
        throw std::invalid_argument("build_bipartite: empty side");
    if (degree < 1) throw std::invalid_argument("build_bipartite: degree must be >= 1");
    BipartiteGraph g;
    g.left.assign(A.begin(), A.end());
    g.right.assign(B.begin(), B.end());
    g.self_pair = (A.size() == B.size() && std::equal(A.begin(), A.end(), B.begin()));
    g.degree = degree;
    g.off.reserve(B.size() + 1);
    g.off.push_back(0);
    g.adj.reserve(B.size() * std::min<size_t>(degree, A.size()));
    std::vector<int> draw;
    for (int b : B) {
        draw.clear();
        for (int s = 0; s < degree; ++s)
            draw.push_back(A[static_cast<size_t>(rng.below(A.size()))]);
        std::sort(draw.begin(), draw.end());
        draw.erase(std::unique(draw.begin(), draw.end()), draw.end());
        for (int a : draw)
            if (!(g.self_pair && a == b)) g.adj.push_back(a);
        g.off.push_back(static_cast<int>(g.adj.size()));
    }
    return g;
}

BipartiteGraph build_complete(std::span<const int> A, std::span<const int> B) {
    if (A.empty() || B.empty()) throw std::invalid_argument("build_complete: empty side");
    BipartiteGraph g;
    g.left.assign(A.begin(), A.end());
    g.right.assign(B.begin(), B.end());
    g.self_pair = (A.size() == B.size() && std::equal(A.begin(), A.end(), B.begin()));
    g.complete = true;
    g.degree = static_cast<int>(A.size());
    return g;
}

namespace {

// Materialized neighbour list of the right vertex at `pos`.
template <typename Fn>
void for_each_right_nbr(const BipartiteGraph& g, int pos, Fn&& fn) {
    if (g.complete) {
        int self = g.self_pair ? g.right[pos] : -1;
        for (int a : g.left)
            if (a != self) fn(a);
    } else {
        for (int a : g.nbrs(pos)) fn(a);
    }
}

}  // namespace

std::vector<int> neighbourhood(const BipartiteGraph& g, std::span<const int> Y) {
    std::unordered_set<int> y(Y.begin(), Y.end());
    std::unordered_set<int> out;
    for (size_t pos = 0; pos < g.right.size(); ++pos) {
        bool right_in_y = y.count(g.right[pos]) > 0;
        for_each_right_nbr(g, static_cast<int>(pos), [&](int a) {
            if (right_in_y) out.insert(a);
            if (y.count(a)) out.insert(g.right[pos]);
        });
    }
    std::vector<int> res(out.begin(), out.end());
    std::sort(res.begin(), res.end());
    return res;
}

std::vector<int> shadow(const BipartiteGraph& g, std::span<const int> Y,
                        std::span<const int> domain) {
    std::unordered_set<int> y(Y.begin(), Y.end());
    std::unordered_set<int> dom(domain.begin(), domain.end());
    // neighbour lists for domain vertices, undirected view
    std::unordered_set<int> keep(domain.begin(), domain.end());
    auto drop_if_outside = [&](int v, int nbr) {
        if (keep.count(v) && !y.count(nbr)) keep.erase(v);
    };
    for (size_t pos = 0; pos < g.right.size(); ++pos) {
        int r = g.right[pos];
        for_each_right_nbr(g, static_cast<int>(pos), [&](int a) {
            drop_if_outside(r, a);
            drop_if_outside(a, r);
        });
    }
    std::vector<int> res(keep.begin(), keep.end());
    std::sort(res.begin(), res.end());
    return res;
}

bool expansion_check_feasible(const BipartiteGraph& g, double l) {
    if (g.left.size() > 64) return false;
    size_t nb = g.right.size();
    size_t m0 = std::max<size_t>(1, static_cast<size_t>(std::ceil(nb / l - 1e-12)));
    if (m0 > nb) return false;
    double combos = 1;
    for (size_t i = 0; i < m0; ++i) combos *= static_cast<double>(nb - i) / (i + 1);
    return combos <= 2e5;
}

bool shadow_check_feasible(const BipartiteGraph& g) { return g.left.size() <= 16; }

bool check_expansion(const BipartiteGraph& g, double k, double l) {
    if (!expansion_check_feasible(g, l))
        throw std::invalid_argument("check_expansion: instance too large for enumeration");
    const size_t na = g.left.size(), nb = g.right.size();
    // left-position masks per right vertex
    std::vector<uint64_t> mask(nb, 0);
    for (size_t pos = 0; pos < nb; ++pos) {
        for_each_right_nbr(g, static_cast<int>(pos), [&](int a) {
            size_t ap = std::lower_bound(g.left.begin(), g.left.end(), a) - g.left.begin();
            mask[pos] |= 1ULL << ap;
        });
    }
    const size_t m0 = std::max<size_t>(1, static_cast<size_t>(std::ceil(nb / l - 1e-12)));
    const double need = (1 - 1 / k) * static_cast<double>(na);
    // enumerate size-m0 subsets; larger ones only grow the neighbourhood
    std::vector<size_t> pick(m0);
    for (size_t i = 0; i < m0; ++i) pick[i] = i;
    while (true) {
        uint64_t u = 0;
        for (size_t i : pick) u |= mask[i];
        if (static_cast<double>(std::popcount(u)) < need - 1e-9) return false;
        size_t i = m0;
        while (i > 0 && pick[i - 1] == nb - (m0 - i) - 1) --i;
        if (i == 0) break;
        ++pick[i - 1];
        for (size_t j = i; j < m0; ++j) pick[j] = pick[j - 1] + 1;
    }
    return true;
}

bool check_shadow(const BipartiteGraph& g, double k, double tau) {
    if (!shadow_check_feasible(g))
        throw std::invalid_argument("check_shadow: instance too large for enumeration");
    const size_t na = g.left.size(), nb = g.right.size();
    std::vector<uint32_t> mask(nb, 0);
    for (size_t pos = 0; pos < nb; ++pos) {
        for_each_right_nbr(g, static_cast<int>(pos), [&](int a) {
            size_t ap = std::lower_bound(g.left.begin(), g.left.end(), a) - g.left.begin();
            mask[pos] |= 1u << ap;
        });
    }
    const int max_size = static_cast<int>(std::floor((1 - 1 / k) * static_cast<double>(na) + 1e-12));
    for (uint32_t sub = 0; sub < (1u << na); ++sub) {
        int sz = std::popcount(sub);
        if (sz > max_size) continue;
        int sh = 0;
        for (size_t pos = 0; pos < nb; ++pos)
            if ((mask[pos] & ~sub) == 0) ++sh;
        if (static_cast<double>(sh) > static_cast<double>(sz) / tau + 1e-9) return false;
    }
    return true;
}

CheckedBuild build_expand_checked(std::span<const int> A, std::span<const int> B, double k,
                                  double l, int degree, bool audit, uint64_t seed,
                                  int max_attempts) {
    CheckedBuild out;
    if (degree >= static_cast<int>(A.size())) {
        out.g = build_complete(A, B);
        out.attempts = 0;
        return out;
    }
    SeedSeq ss{seed};
    for (int attempt = 0; attempt < max_attempts; ++attempt) {
        Rng rng(ss.sub(kTagResample, attempt));
        out.g = build_bipartite(A, B, degree, rng);
        out.attempts = attempt + 1;
        if (!audit || !expansion_check_feasible(out.g, l)) return out;
        // a self-pair vertex cannot reach itself, so cap the checkable k
        double k_eff = out.g.self_pair ? std::min(k, static_cast<double>(A.size())) : k;
        out.audited = true;
        if (check_expansion(out.g, k_eff, l)) return out;
    }
    out.passed = false;
    return out;
}

CheckedBuild build_shrink_checked(std::span<const int> A, std::span<const int> B, double k,
                                  double tau, int degree, bool audit, uint64_t seed,
                                  int max_attempts) {
    CheckedBuild out;
    if (degree >= static_cast<int>(A.size())) {
        out.g = build_complete(A, B);
        out.attempts = 0;
        return out;
    }
    SeedSeq ss{seed};
    for (int attempt = 0; attempt < max_attempts; ++attempt) {
        Rng rng(ss.sub(kTagResample, attempt));
        out.g = build_bipartite(A, B, degree, rng);
        out.attempts = attempt + 1;
        if (!audit || !shadow_check_feasible(out.g)) return out;
        out.audited = true;
        if (check_shadow(out.g, k, tau)) return out;
    }
    out.passed = false;
    return out;
}

}  // namespace rspan
