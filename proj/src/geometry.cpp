#include "rspan/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <fstream>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "rspan/rng.hpp"

namespace rspan {

double dist(const double* a, const double* b, int dim) {
    double s = 0;
    for (int j = 0; j < dim; ++j) {
        double d = a[j] - b[j];
        s += d * d;
    }
    return std::sqrt(s);
}

double dist(const PointSet& pts, int i, int j) {
    return dist(pts.pt(i), pts.pt(j), pts.dim);
}

Box bounding_box(const PointSet& pts, std::span<const int> idx) {
    if (idx.empty()) throw std::invalid_argument("bounding_box: empty point set");
    const int d = pts.dim;
    Box b;
    b.lo.assign(pts.pt(idx[0]), pts.pt(idx[0]) + d);
    b.hi = b.lo;
    for (int i : idx) {
        const double* p = pts.pt(i);
        for (int j = 0; j < d; ++j) {
            b.lo[j] = std::min(b.lo[j], p[j]);
            b.hi[j] = std::max(b.hi[j], p[j]);
        }
    }
    return b;
}

double diam_prime(const Box& b) {
    double s = 0;
    for (int j = 0; j < b.dim(); ++j) s += b.hi[j] - b.lo[j];
    return s;
}

double box_diag(const Box& b) {
    double s = 0;
    for (int j = 0; j < b.dim(); ++j) {
        double e = b.hi[j] - b.lo[j];
        s += e * e;
    }
    return std::sqrt(s);
}

double box_distance(const Box& a, const Box& b) {
    double s = 0;
    for (int j = 0; j < a.dim(); ++j) {
        double gap = 0;
        if (a.hi[j] < b.lo[j])
            gap = b.lo[j] - a.hi[j];
        else if (b.hi[j] < a.lo[j])
            gap = a.lo[j] - b.hi[j];
        s += gap * gap;
    }
    return std::sqrt(s);
}

double diam_exact(const PointSet& pts, std::span<const int> idx) {
    if (idx.empty()) throw std::invalid_argument("diam_exact: empty point set");
    double best = 0;
    for (size_t i = 0; i < idx.size(); ++i)
        for (size_t j = i + 1; j < idx.size(); ++j)
            best = std::max(best, dist(pts, idx[i], idx[j]));
    return best;
}

double set_distance(const PointSet& pts, std::span<const int> a, std::span<const int> b) {
    if (a.empty() || b.empty()) throw std::invalid_argument("set_distance: empty set");
    double best = std::numeric_limits<double>::infinity();
    for (int i : a)
        for (int j : b) best = std::min(best, dist(pts, i, j));
    return best;
}

PointSet PointSet::parse(std::istream& in) {
    PointSet ps;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        size_t first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos || line[first] == '#') continue;
        std::istringstream ls(line);
        std::vector<double> row;
        double v;
        while (ls >> v) row.push_back(v);
        if (!ls.eof()) {
            std::string tok;
            ls.clear();
            ls >> tok;
            throw std::invalid_argument("point file line " + std::to_string(lineno) +
                                        ": bad token '" + tok + "'");
        }
        if (row.empty()) continue;
        for (double x : row)
            if (!std::isfinite(x))
                throw std::invalid_argument("point file line " + std::to_string(lineno) +
                                            ": non-finite coordinate");
        if (ps.dim == 0) {
            ps.dim = static_cast<int>(row.size());
        } else if (static_cast<int>(row.size()) != ps.dim) {
            throw std::invalid_argument("point file line " + std::to_string(lineno) +
                                        ": expected " + std::to_string(ps.dim) +
                                        " coordinates, got " + std::to_string(row.size()));
        }
        ps.coords.insert(ps.coords.end(), row.begin(), row.end());
    }
    if (ps.size() == 0) throw std::invalid_argument("point file: no points");

    // duplicate rejection: fair-split recursion needs splittable boxes
    std::vector<int> order(ps.size());
    std::iota(order.begin(), order.end(), 0);
    const int d = ps.dim;
    auto less = [&](int a, int b) {
        return std::lexicographical_compare(ps.pt(a), ps.pt(a) + d, ps.pt(b), ps.pt(b) + d);
    };
    std::sort(order.begin(), order.end(), less);
    for (size_t i = 1; i < order.size(); ++i) {
        if (std::equal(ps.pt(order[i - 1]), ps.pt(order[i - 1]) + d, ps.pt(order[i]))) {
            throw std::invalid_argument("point file: duplicate point at indices " +
                                        std::to_string(order[i - 1]) + " and " +
                                        std::to_string(order[i]));
        }
    }
    return ps;
}

PointSet PointSet::load_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open point file: " + path);
    return parse(in);
}

void PointSet::save_file(const std::string& path) const {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write point file: " + path);
    char buf[64];
    for (int i = 0; i < size(); ++i) {
        for (int j = 0; j < dim; ++j) {
            std::snprintf(buf, sizeof buf, "%.17g", pt(i)[j]);
            out << buf << (j + 1 == dim ? '\n' : ' ');
        }
    }
}

PointSet PointSet::random_uniform(int n, int dim, uint64_t seed) {
    if (n < 1 || dim < 1) throw std::invalid_argument("random_uniform: n and dim must be positive");
    PointSet ps;
    ps.dim = dim;
    ps.coords.reserve(static_cast<size_t>(n) * dim);
    Rng rng(SeedSeq{seed}.sub(kTagPointGen, static_cast<uint64_t>(n) * 131 + dim));
    for (int i = 0; i < n * dim; ++i) ps.coords.push_back(rng.uniform01());
    return ps;
}

uint64_t PointSet::content_hash() const {
    uint64_t h = 0xcbf29ce484222325ULL;
    auto mix = [&h](uint64_t v) {
        for (int b = 0; b < 8; ++b) {
            h ^= (v >> (8 * b)) & 0xff;
            h *= 0x100000001b3ULL;
        }
    };
    mix(static_cast<uint64_t>(dim));
    for (double x : coords) {
        uint64_t bits;
        std::memcpy(&bits, &x, 8);
        mix(bits);
    }
    return h;
}

}  // namespace rspan
