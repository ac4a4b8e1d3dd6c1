#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <numeric>

#include "rspan/expander.hpp"

using namespace rspan;

namespace {

std::vector<int> iota_ids(int n, int start = 0) {
    std::vector<int> v(n);
    std::iota(v.begin(), v.end(), start);
    return v;
}

// independent oracle: increment the degree and test the displayed
// inequality for every x in log domain
int shrink_degree_oracle(double k, double tau, long long b_size, long long a_size) {
    auto log_choose = [](double n, double r) {
        return std::lgamma(n + 1) - std::lgamma(r + 1) - std::lgamma(n - r + 1);
    };
    double xmax = std::min(static_cast<double>(b_size),
                           (1 - 1 / k) * static_cast<double>(a_size) / tau);
    if (xmax < 1) return 1;
    for (int degree = 1;; ++degree) {
        bool ok = true;
        for (long long x = 1; x <= static_cast<long long>(std::floor(xmax + 1e-12)); ++x) {
            double lhs = log_choose(a_size, tau * x) + log_choose(b_size, x) +
                         degree * x * std::log(tau * x / a_size);
            if (!(lhs < -std::log(static_cast<double>(b_size)))) {
                ok = false;
                break;
            }
        }
        if (ok) return degree;
    }
}

}  // namespace

TEST_CASE("expand_degree formula values") {
    CHECK(expand_degree(2, 2) == 7);    // 4(1+ln2) = 6.77
    CHECK(expand_degree(2, 4) == 12);   // 2(1+ln4)+4(1+ln2) = 11.55
    CHECK_THROWS_AS(expand_degree(1.5, 2), std::invalid_argument);
    // monotone in k
    for (double l : {2.0, 3.0, 8.0})
        for (double k = 2; k < 12; k += 1)
            CHECK(expand_degree(k, l) <= expand_degree(k + 1, l));
}

TEST_CASE("shrink_degree empty range returns 1") {
    // tau > (1-1/k)|A|: x range empty
    CHECK(shrink_degree(2.0, 2.0, 4, 2) == 1);
    CHECK(shrink_x_max(2.0, 2.0, 4, 2) < 1);
}

TEST_CASE("shrink_degree matches the incremental oracle") {
    struct Case {
        double k, tau;
        long long b, a;
    };
    for (const Case& c : {Case{2, 2, 16, 16}, Case{2, 3, 12, 12}, Case{3, 2, 20, 40},
                          Case{4, 1.5, 10, 30}, Case{2, 1, 8, 8}, Case{6, 2, 25, 50}}) {
        CAPTURE(c.k);
        CAPTURE(c.tau);
        CHECK(shrink_degree(c.k, c.tau, c.b, c.a) == shrink_degree_oracle(c.k, c.tau, c.b, c.a));
    }
}

TEST_CASE("shrink_degree is O(k log tau + tau log k + log b)") {
    // fitted constant over a parameter sweep
    double c0 = 0;
    for (double k : {2.0, 4.0, 8.0, 16.0})
        for (double tau : {1.5, 2.0, 4.0, 8.0}) {
            long long a = 4096, b = 2048;
            int d = shrink_degree(k, tau, b, a);
            double budget = k * std::log(tau) + tau * std::log(k) + std::log((double)b);
            c0 = std::max(c0, d / budget);
        }
    // frozen after measuring: the ratio stays small across the sweep
    CHECK(c0 <= 6.0);
}

TEST_CASE("build_bipartite basics") {
    std::vector<int> A{10};
    std::vector<int> B{20, 21, 22};
    Rng rng(1);
    BipartiteGraph g = build_bipartite(A, B, 3, rng);
    for (size_t pos = 0; pos < B.size(); ++pos) {
        REQUIRE(g.nbrs(pos).size() == 1);
        CHECK(g.nbrs(pos)[0] == 10);
    }
    CHECK_THROWS_AS(build_bipartite(A, B, 0, rng), std::invalid_argument);
}

TEST_CASE("degree above |A| dedups to at most |A| neighbours") {
    std::vector<int> A = iota_ids(4);
    std::vector<int> B = iota_ids(6, 100);
    Rng rng(7);
    BipartiteGraph g = build_bipartite(A, B, 50, rng);
    for (size_t pos = 0; pos < B.size(); ++pos) {
        CHECK(g.nbrs(pos).size() <= 4);
        CHECK(g.nbrs(pos).size() >= 1);
        CHECK(std::is_sorted(g.nbrs(pos).begin(), g.nbrs(pos).end()));
    }
}

TEST_CASE("identical seeds give identical edge sets") {
    std::vector<int> A = iota_ids(8);
    std::vector<int> B = iota_ids(8, 8);
    Rng r1(42), r2(42), r3(43);
    BipartiteGraph g1 = build_bipartite(A, B, 3, r1);
    BipartiteGraph g2 = build_bipartite(A, B, 3, r2);
    BipartiteGraph g3 = build_bipartite(A, B, 3, r3);
    CHECK(g1.adj == g2.adj);
    CHECK(g1.off == g2.off);
    CHECK(g1.adj != g3.adj);
}

TEST_CASE("self pair drops self loops") {
    std::vector<int> A = iota_ids(6);
    Rng rng(3);
    BipartiteGraph g = build_bipartite(A, A, 4, rng);
    CHECK(g.self_pair);
    for (size_t pos = 0; pos < A.size(); ++pos)
        for (int a : g.nbrs(pos)) CHECK(a != A[pos]);

    BipartiteGraph c = build_complete(A, A);
    CHECK(c.complete);
    CHECK(c.edge_count() == 6 * 5);
}

TEST_CASE("neighbourhood") {
    std::vector<int> A{0};
    std::vector<int> B{1};
    Rng rng(1);
    BipartiteGraph g = build_bipartite(A, B, 1, rng);  // single edge 0-1
    CHECK(neighbourhood(g, std::vector<int>{}) == std::vector<int>{});
    CHECK(neighbourhood(g, std::vector<int>{0}) == std::vector<int>{1});
    CHECK(neighbourhood(g, std::vector<int>{1}) == std::vector<int>{0});

    // complete bipartite K_{2,2}: one right vertex sees both left vertices
    std::vector<int> A2{0, 1};
    std::vector<int> B2{2, 3};
    BipartiteGraph k22 = build_complete(A2, B2);
    CHECK(neighbourhood(k22, std::vector<int>{2}) == std::vector<int>{0, 1});

    // monotone: Y subset Y' implies N(Y) subset N(Y')
    std::vector<int> A3 = iota_ids(6);
    std::vector<int> B3 = iota_ids(6, 6);
    Rng rng2(5);
    BipartiteGraph g3 = build_bipartite(A3, B3, 2, rng2);
    std::vector<int> y1{6, 7};
    std::vector<int> y2{6, 7, 8, 0};
    std::vector<int> n1 = neighbourhood(g3, y1);
    std::vector<int> n2 = neighbourhood(g3, y2);
    CHECK(std::includes(n2.begin(), n2.end(), n1.begin(), n1.end()));
}

TEST_CASE("shadow") {
    std::vector<int> A{0};
    std::vector<int> B{1};
    Rng rng(1);
    BipartiteGraph g = build_bipartite(A, B, 1, rng);
    std::vector<int> domain{0};
    // Y = all vertices: shadow = domain
    CHECK(shadow(g, std::vector<int>{0, 1}, domain) == domain);
    // Y empty: 0 has neighbour 1 outside Y
    CHECK(shadow(g, std::vector<int>{}, domain) == std::vector<int>{});
    // isolated vertex is in every shadow (vacuous containment)
    std::vector<int> domain2{0, 99};
    CHECK(shadow(g, std::vector<int>{}, domain2) == std::vector<int>{99});

    // monotone: Y superset Y' implies shadow(Y) superset shadow(Y')
    std::vector<int> A3 = iota_ids(8);
    std::vector<int> B3 = iota_ids(8, 8);
    Rng rng2(9);
    BipartiteGraph g3 = build_bipartite(A3, B3, 2, rng2);
    std::vector<int> small{0, 1, 2};
    std::vector<int> large{0, 1, 2, 3, 4};
    std::vector<int> s1 = shadow(g3, small, B3);
    std::vector<int> s2 = shadow(g3, large, B3);
    CHECK(std::includes(s2.begin(), s2.end(), s1.begin(), s1.end()));
}

TEST_CASE("check_expansion") {
    std::vector<int> A = iota_ids(6);
    std::vector<int> B = iota_ids(6, 6);
    BipartiteGraph complete = build_complete(A, B);
    CHECK(check_expansion(complete, 2, 2));
    CHECK(check_expansion(complete, 8, 3));

    // empirically empty graph: degree-1 sampling into a single far vertex is
    // impossible to produce via the builder, so hand-roll an empty one
    BipartiteGraph empty;
    empty.left = A;
    empty.right = B;
    empty.off.assign(B.size() + 1, 0);
    CHECK(!check_expansion(empty, 2, 2));

    // formula degree passes on |A|=|B|=12 within 100 attempts
    std::vector<int> A2 = iota_ids(12);
    std::vector<int> B2 = iota_ids(12, 12);
    int deg = expand_degree(2, 2);
    bool passed = false;
    SeedSeq ss{2024};
    for (int attempt = 0; attempt < 100 && !passed; ++attempt) {
        Rng rng(ss.sub(kTagResample, attempt));
        BipartiteGraph g = build_bipartite(A2, B2, deg, rng);
        passed = check_expansion(g, 2, 2);
    }
    CHECK(passed);

    BipartiteGraph huge;
    huge.left = iota_ids(100);
    huge.right = iota_ids(100, 100);
    huge.off.assign(101, 0);
    CHECK_THROWS_AS(check_expansion(huge, 2, 2), std::invalid_argument);
}

TEST_CASE("check_shadow") {
    std::vector<int> A = iota_ids(6);
    std::vector<int> B = iota_ids(6, 6);
    BipartiteGraph complete = build_complete(A, B);
    CHECK(check_shadow(complete, 2, 2));

    // an isolated right vertex lies in every shadow, breaking the bound
    BipartiteGraph bad;
    bad.left = A;
    bad.right = B;
    bad.off.assign(B.size() + 1, 0);
    for (size_t i = 0; i < B.size() - 1; ++i) {
        bad.adj.push_back(static_cast<int>(i));
        bad.off[i + 1] = static_cast<int>(bad.adj.size());
    }
    bad.off[B.size()] = static_cast<int>(bad.adj.size());  // last b isolated
    CHECK(!check_shadow(bad, 2, 2));

    // formula degree passes on |A|=|B|=12, k=2, tau=3 within 100 attempts
    std::vector<int> A2 = iota_ids(12);
    std::vector<int> B2 = iota_ids(12, 12);
    int deg = shrink_degree(2, 3, 12, 12);
    bool passed = false;
    SeedSeq ss{77};
    for (int attempt = 0; attempt < 100 && !passed; ++attempt) {
        Rng rng(ss.sub(kTagResample, attempt));
        BipartiteGraph g = build_bipartite(A2, B2, deg, rng);
        passed = check_shadow(g, 2, 3);
    }
    CHECK(passed);

    BipartiteGraph wide;
    wide.left = iota_ids(20);
    wide.right = iota_ids(4, 20);
    wide.off.assign(5, 0);
    CHECK_THROWS_AS(check_shadow(wide, 2, 2), std::invalid_argument);
}

TEST_CASE("checked builders resample deterministically") {
    std::vector<int> A = iota_ids(10);
    std::vector<int> B = iota_ids(10, 10);
    CheckedBuild c1 = build_shrink_checked(A, B, 2, 2, shrink_degree(2, 2, 10, 10), true, 5);
    CheckedBuild c2 = build_shrink_checked(A, B, 2, 2, shrink_degree(2, 2, 10, 10), true, 5);
    CHECK(c1.attempts == c2.attempts);
    CHECK(c1.g.adj == c2.g.adj);
    CHECK(c1.passed);
    if (c1.audited) CHECK(check_shadow(c1.g, 2, 2));

    // degree at |A| switches to the complete neighbour set
    CheckedBuild c3 = build_expand_checked(A, A, 4, 4, 10, true, 5);
    CHECK(c3.g.complete);
    CHECK(c3.attempts == 0);
}
