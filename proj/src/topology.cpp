#include "cdsa/topology.hpp"

#include <algorithm>
#include <queue>
#include <stdexcept>

namespace cdsa {

namespace {

void finalize(Topology& t) {
    for (auto& [i, j] : t.edges) {
        if (i > j) std::swap(i, j);
    }
    std::sort(t.edges.begin(), t.edges.end());
    t.edges.erase(std::unique(t.edges.begin(), t.edges.end()), t.edges.end());
    t.degree.assign(t.n, 0);
    for (const auto& [i, j] : t.edges) {
        ++t.degree[i];
        ++t.degree[j];
    }
}

}  // namespace

Topology build_topology(TopologyKind kind, int n) {
    if (n < 2) throw std::invalid_argument("topology requires n >= 2");
    Topology t;
    t.kind = kind;
    t.n = n;
    switch (kind) {
        case TopologyKind::path:
            for (int i = 0; i + 1 < n; ++i) t.edges.emplace_back(i, i + 1);
            break;
        case TopologyKind::cycle:
            for (int i = 0; i + 1 < n; ++i) t.edges.emplace_back(i, i + 1);
            if (n > 2) t.edges.emplace_back(n - 1, 0);
            break;
        case TopologyKind::complete:
            for (int i = 0; i < n; ++i)
                for (int j = i + 1; j < n; ++j) t.edges.emplace_back(i, j);
            break;
        case TopologyKind::mesh2d:
            // No automatic factorization of n; a prime n would silently
            // degenerate the grid otherwise.
            throw std::invalid_argument("mesh2d requires explicit rows x cols; use build_mesh2d");
        case TopologyKind::custom:
            throw std::invalid_argument("custom topology requires an edge list; use build_custom");
    }
    finalize(t);
    return t;
}

Topology build_mesh2d(int rows, int cols) {
    if (rows < 1 || cols < 1 || rows * cols < 2)
        throw std::invalid_argument("mesh2d requires rows*cols >= 2");
    Topology t;
    t.kind = TopologyKind::mesh2d;
    t.n = rows * cols;
    t.rows = rows;
    t.cols = cols;
    for (int r = 0; r < rows; ++r) {
        for (int c = 0; c < cols; ++c) {
            int id = r * cols + c;
            if (c + 1 < cols) t.edges.emplace_back(id, id + 1);
            if (r + 1 < rows) t.edges.emplace_back(id, id + cols);
        }
    }
    finalize(t);
    return t;
}

Topology build_custom(int n, const std::vector<std::pair<int, int>>& edges) {
    if (n < 2) throw std::invalid_argument("topology requires n >= 2");
    Topology t;
    t.kind = TopologyKind::custom;
    t.n = n;
    for (const auto& [i, j] : edges) {
        if (i == j) throw std::invalid_argument("custom topology contains a self-loop");
        if (i < 0 || j < 0 || i >= n || j >= n)
            throw std::invalid_argument("custom topology edge references a vertex outside [0, n)");
        t.edges.emplace_back(i, j);
    }
    finalize(t);
    if (!check_connected(t)) throw std::invalid_argument("custom topology is not connected");
    return t;
}

bool check_connected(const Topology& t) {
    if (t.n <= 0) return false;
    std::vector<std::vector<int>> adj(t.n);
    for (const auto& [i, j] : t.edges) {
        adj[i].push_back(j);
        adj[j].push_back(i);
    }
    std::vector<char> seen(t.n, 0);
    std::queue<int> frontier;
    frontier.push(0);
    seen[0] = 1;
    int reached = 1;
    while (!frontier.empty()) {
        int v = frontier.front();
        frontier.pop();
        for (int u : adj[v]) {
            if (!seen[u]) {
                seen[u] = 1;
                ++reached;
                frontier.push(u);
            }
        }
    }
    return reached == t.n;
}

TopologyKind topology_kind_from_string(std::string_view s) {
    if (s == "path") return TopologyKind::path;
    if (s == "cycle") return TopologyKind::cycle;
    if (s == "mesh2d" || s == "mesh") return TopologyKind::mesh2d;
    if (s == "complete") return TopologyKind::complete;
    if (s == "custom") return TopologyKind::custom;
    throw std::invalid_argument("unknown topology kind '" + std::string(s) + "'");
}

std::string to_string(TopologyKind kind) {
    switch (kind) {
        case TopologyKind::path: return "path";
        case TopologyKind::cycle: return "cycle";
        case TopologyKind::mesh2d: return "mesh2d";
        case TopologyKind::complete: return "complete";
        case TopologyKind::custom: return "custom";
    }
    return "?";
}

}  // namespace cdsa
