#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <sstream>

#include "rspan/geometry.hpp"
#include "rspan/rng.hpp"

using namespace rspan;

namespace {

PointSet make_points(int dim, std::initializer_list<double> coords) {
    PointSet ps;
    ps.dim = dim;
    ps.coords = coords;
    return ps;
}

}  // namespace

TEST_CASE("dist basics") {
    PointSet ps = make_points(2, {0, 0, 3, 4, 1, 1});
    CHECK(dist(ps, 0, 1) == doctest::Approx(5.0));
    CHECK(dist(ps, 0, 0) == 0.0);
    CHECK(dist(ps, 1, 0) == dist(ps, 0, 1));

    PointSet one = make_points(1, {1, 4});
    CHECK(dist(one, 0, 1) == doctest::Approx(3.0));
}

TEST_CASE("dist triangle inequality on sampled triples") {
    PointSet ps = PointSet::random_uniform(64, 3, 99);
    Rng rng(123);
    for (int it = 0; it < 500; ++it) {
        int a = static_cast<int>(rng.below(64));
        int b = static_cast<int>(rng.below(64));
        int c = static_cast<int>(rng.below(64));
        CHECK(dist(ps, a, c) <= dist(ps, a, b) + dist(ps, b, c) + 1e-12);
    }
}

TEST_CASE("bounding_box") {
    PointSet ps = make_points(2, {0, 0, 2, 1});
    std::vector<int> all{0, 1};
    Box b = bounding_box(ps, all);
    CHECK(b.lo == std::vector<double>{0, 0});
    CHECK(b.hi == std::vector<double>{2, 1});

    PointSet single = make_points(2, {5, 5});
    std::vector<int> one{0};
    Box s = bounding_box(single, one);
    CHECK(s.lo == s.hi);

    PointSet tri = make_points(2, {0, 3, 1, 0, 2, 2});
    std::vector<int> three{0, 1, 2};
    Box t = bounding_box(tri, three);
    CHECK(t.lo == std::vector<double>{0, 0});
    CHECK(t.hi == std::vector<double>{2, 3});

    CHECK_THROWS_AS(bounding_box(ps, std::span<const int>{}), std::invalid_argument);
}

TEST_CASE("diam_prime") {
    Box b{{0, 0}, {3, 4}};
    CHECK(diam_prime(b) == doctest::Approx(7.0));
    Box deg{{1, 2}, {1, 2}};
    CHECK(diam_prime(deg) == 0.0);
    Box cube{{0, 0, 0}, {1, 1, 1}};
    CHECK(diam_prime(cube) == doctest::Approx(3.0));
}

TEST_CASE("diam_exact") {
    PointSet ps = make_points(2, {0, 0, 3, 4, 1, 1});
    std::vector<int> all{0, 1, 2};
    CHECK(diam_exact(ps, all) == doctest::Approx(5.0));
    std::vector<int> one{0};
    CHECK(diam_exact(ps, one) == 0.0);

    PointSet line = make_points(1, {0, 1, 2, 3, 4, 5, 6, 7, 8, 9});
    std::vector<int> ten{0, 1, 2, 3, 4, 5, 6, 7, 8, 9};
    CHECK(diam_exact(line, ten) == doctest::Approx(9.0));
    CHECK_THROWS_AS(diam_exact(ps, std::span<const int>{}), std::invalid_argument);
}

TEST_CASE("box distance and diagonal") {
    Box a{{0, 0}, {1, 1}};
    Box b{{4, 5}, {6, 6}};
    CHECK(box_distance(a, b) == doctest::Approx(5.0));  // gap (3, 4)
    CHECK(box_distance(a, a) == 0.0);
    CHECK(box_diag(a) == doctest::Approx(std::sqrt(2.0)));
}

TEST_CASE("point file parsing") {
    std::istringstream in("# comment\n0 0\n3 4\n\n  # another\n1 1\n");
    PointSet ps = PointSet::parse(in);
    CHECK(ps.dim == 2);
    CHECK(ps.size() == 3);
    CHECK(ps.pt(1)[0] == 3.0);

    std::istringstream ragged("1 2\n3\n");
    CHECK_THROWS_AS(PointSet::parse(ragged), std::invalid_argument);

    std::istringstream dup("1 2\n1 2\n");
    CHECK_THROWS_AS(PointSet::parse(dup), std::invalid_argument);

    std::istringstream empty("# nothing\n");
    CHECK_THROWS_AS(PointSet::parse(empty), std::invalid_argument);

    std::istringstream bad("1 2\n3 x\n");
    CHECK_THROWS_AS(PointSet::parse(bad), std::invalid_argument);

    std::istringstream inf_in("1 2\n3 inf\n");
    CHECK_THROWS_AS(PointSet::parse(inf_in), std::invalid_argument);
}

TEST_CASE("random_uniform deterministic and distinct") {
    PointSet a = PointSet::random_uniform(128, 2, 7);
    PointSet b = PointSet::random_uniform(128, 2, 7);
    CHECK(a.coords == b.coords);
    PointSet c = PointSet::random_uniform(128, 2, 8);
    CHECK(a.coords != c.coords);
    CHECK(a.content_hash() == b.content_hash());
    CHECK(a.content_hash() != c.content_hash());
}
