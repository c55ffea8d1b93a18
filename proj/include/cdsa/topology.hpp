#pragma once

#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace cdsa {

enum class TopologyKind { path, cycle, mesh2d, complete, custom };

// Undirected communication graph on vertices 0..n-1. Edges are stored
// normalized (i < j, sorted, unique); `degree[v]` counts incident edges.
struct Topology {
    TopologyKind kind = TopologyKind::custom;
    int n = 0;
    int rows = 0;  // mesh2d only
    int cols = 0;  // mesh2d only
    std::vector<std::pair<int, int>> edges;
    std::vector<int> degree;
};

// Named graph families. Throws std::invalid_argument for n < 2 and for
// mesh2d (which needs explicit rows/cols, see build_mesh2d).
Topology build_topology(TopologyKind kind, int n);

// 4-neighbor grid on rows x cols vertices, id = r * cols + c.
Topology build_mesh2d(int rows, int cols);

// Arbitrary edge list; rejects self-loops, out-of-range ids, and graphs
// that are not connected.
Topology build_custom(int n, const std::vector<std::pair<int, int>>& edges);

// BFS from vertex 0 reaches all n vertices.
bool check_connected(const Topology& t);

TopologyKind topology_kind_from_string(std::string_view s);
std::string to_string(TopologyKind kind);

}  // namespace cdsa
