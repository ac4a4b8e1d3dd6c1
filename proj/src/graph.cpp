#include "rspan/graph.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace rspan {

void normalize_edges(std::vector<uint64_t>& packed) {
    std::sort(packed.begin(), packed.end());
    packed.erase(std::unique(packed.begin(), packed.end()), packed.end());
    packed.erase(std::remove_if(packed.begin(), packed.end(),
                                [](uint64_t e) { return (e >> 32) == (e & 0xffffffffu); }),
                 packed.end());
}

GeometricGraph GeometricGraph::from_edges(int n, const std::vector<std::pair<int, int>>& edges) {
    GeometricGraph g;
    g.n = n;
    g.adj.assign(n, {});
    for (auto [i, j] : edges) {
        if (i == j) continue;
        if (i < 0 || j < 0 || i >= n || j >= n)
            throw std::invalid_argument("graph: edge endpoint out of range");
        g.adj[i].push_back(j);
        g.adj[j].push_back(i);
    }
    for (auto& v : g.adj) {
        std::sort(v.begin(), v.end());
        v.erase(std::unique(v.begin(), v.end()), v.end());
    }
    return g;
}

long long GeometricGraph::edge_count() const {
    long long s = 0;
    for (const auto& v : adj) s += static_cast<long long>(v.size());
    return s / 2;
}

bool GeometricGraph::has_edge(int i, int j) const {
    const auto& v = adj[i];
    return std::binary_search(v.begin(), v.end(), j);
}

std::vector<std::pair<int, int>> GeometricGraph::edge_list() const {
    std::vector<std::pair<int, int>> out;
    out.reserve(edge_count());
    for (int i = 0; i < n; ++i)
        for (int j : adj[i])
            if (i < j) out.emplace_back(i, j);
    return out;
}

void GeometricGraph::save_file(const std::string& path) const {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write graph file: " + path);
    auto edges = edge_list();
    out << n << ' ' << edges.size() << '\n';
    for (auto [i, j] : edges) out << i << ' ' << j << '\n';
}

GeometricGraph GeometricGraph::load_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open graph file: " + path);
    int n;
    long long m;
    if (!(in >> n >> m)) throw std::runtime_error("graph file: bad header");
    std::vector<std::pair<int, int>> edges;
    edges.reserve(m);
    for (long long e = 0; e < m; ++e) {
        int i, j;
        if (!(in >> i >> j)) throw std::runtime_error("graph file: truncated edge list");
        edges.emplace_back(i, j);
    }
    return from_edges(n, edges);
}

}  // namespace rspan
