#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace rspan {

/// Immutable d-dimensional point set.  Indices 0..n-1 are the stable point
/// identifiers used by every other module.
struct PointSet {
    int dim = 0;
    std::vector<double> coords;  // n * dim, row per point

    int size() const { return dim == 0 ? 0 : static_cast<int>(coords.size()) / dim; }

    const double* pt(int i) const { return coords.data() + static_cast<size_t>(i) * dim; }

    std::span<const double> operator[](int i) const { return {pt(i), static_cast<size_t>(dim)}; }

    /// Parses the plain-text point format: one point per line, whitespace
    /// separated coordinates, `#` starts a comment line.  The dimension is
    /// inferred from the first data line.  Rejects ragged lines, non-finite
    /// values and duplicate points.
    static PointSet parse(std::istream& in);
    static PointSet load_file(const std::string& path);

    void save_file(const std::string& path) const;

    /// Seeded uniform points in [0,1)^d, distinct.
    static PointSet random_uniform(int n, int dim, uint64_t seed);

    /// FNV-1a over the coordinate bit patterns; used to tie trace files to
    /// the point file they came from.
    uint64_t content_hash() const;
};

struct Box {
    std::vector<double> lo, hi;

    int dim() const { return static_cast<int>(lo.size()); }
};

double dist(const double* a, const double* b, int dim);
double dist(const PointSet& pts, int i, int j);

/// Smallest axis-aligned box containing the given points; `idx` non-empty.
Box bounding_box(const PointSet& pts, std::span<const int> idx);

/// Sum of the side lengths of the box.
double diam_prime(const Box& b);

/// Euclidean length of the box diagonal.
double box_diag(const Box& b);

/// Distance between two boxes (0 when they intersect).
double box_distance(const Box& a, const Box& b);

/// Max pairwise distance by exhaustive scan; `idx` non-empty.
double diam_exact(const PointSet& pts, std::span<const int> idx);

/// Min pairwise distance between two index sets, brute force.
double set_distance(const PointSet& pts, std::span<const int> a, std::span<const int> b);

}  // namespace rspan
