#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "rspan/geometry.hpp"

namespace rspan {

/// Undirected simple graph over point indices; edge lengths are Euclidean
/// distances of the endpoints, computed on demand.
struct GeometricGraph {
    int n = 0;
    std::vector<std::vector<int>> adj;  // sorted neighbour lists

    static GeometricGraph from_edges(int n, const std::vector<std::pair<int, int>>& edges);

    long long edge_count() const;
    bool has_edge(int i, int j) const;
    std::vector<std::pair<int, int>> edge_list() const;  // i < j, lexicographic

    void save_file(const std::string& path) const;
    static GeometricGraph load_file(const std::string& path);
};

/// Sorts, deduplicates and drops self-loops from a packed edge accumulator.
void normalize_edges(std::vector<uint64_t>& packed);

inline uint64_t pack_edge(int i, int j) {
    if (i > j) std::swap(i, j);
    return (static_cast<uint64_t>(static_cast<uint32_t>(i)) << 32) | static_cast<uint32_t>(j);
}

}  // namespace rspan
