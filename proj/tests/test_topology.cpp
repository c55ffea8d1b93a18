#include <doctest.h>

#include <stdexcept>

#include "cdsa/topology.hpp"

using namespace cdsa;

namespace {
using Edges = std::vector<std::pair<int, int>>;
}

TEST_CASE("named families produce the expected edge sets") {
    CHECK(build_topology(TopologyKind::path, 3).edges == Edges{{0, 1}, {1, 2}});
    CHECK(build_topology(TopologyKind::complete, 3).edges == Edges{{0, 1}, {0, 2}, {1, 2}});
    CHECK(build_mesh2d(2, 2).edges == Edges{{0, 1}, {0, 2}, {1, 3}, {2, 3}});
    CHECK(build_topology(TopologyKind::cycle, 4).edges == Edges{{0, 1}, {0, 3}, {1, 2}, {2, 3}});
    // cycle on two vertices degenerates to a single edge, not a multi-edge
    CHECK(build_topology(TopologyKind::cycle, 2).edges == Edges{{0, 1}});
}

TEST_CASE("degrees are consistent with the edge list") {
    auto t = build_topology(TopologyKind::path, 5);
    CHECK(t.degree == std::vector<int>{1, 2, 2, 2, 1});
    auto m = build_mesh2d(3, 3);
    CHECK(m.degree[4] == 4);  // center
    CHECK(m.degree[0] == 2);  // corner
}

TEST_CASE("invalid constructions are rejected") {
    CHECK_THROWS_AS(build_topology(TopologyKind::path, 1), std::invalid_argument);
    CHECK_THROWS_AS(build_topology(TopologyKind::mesh2d, 6), std::invalid_argument);
    CHECK_THROWS_AS(build_custom(4, {{0, 0}}), std::invalid_argument);
    CHECK_THROWS_AS(build_custom(4, {{0, 5}}), std::invalid_argument);
    CHECK_THROWS_AS(build_custom(4, {{0, 1}, {2, 3}}), std::invalid_argument);  // disconnected
}

TEST_CASE("connectivity check") {
    CHECK(check_connected(build_topology(TopologyKind::path, 5)));
    CHECK(check_connected(build_topology(TopologyKind::complete, 2)));

    Topology two_islands;
    two_islands.kind = TopologyKind::custom;
    two_islands.n = 4;
    two_islands.edges = {{0, 1}, {2, 3}};
    CHECK_FALSE(check_connected(two_islands));
}

TEST_CASE("custom topologies normalize and deduplicate edges") {
    auto t = build_custom(3, {{1, 0}, {0, 1}, {2, 1}});
    CHECK(t.edges == Edges{{0, 1}, {1, 2}});
    CHECK(t.degree == std::vector<int>{1, 2, 1});
}

TEST_CASE("kind round-trips through strings") {
    for (auto kind : {TopologyKind::path, TopologyKind::cycle, TopologyKind::mesh2d,
                      TopologyKind::complete, TopologyKind::custom})
        CHECK(topology_kind_from_string(to_string(kind)) == kind);
    CHECK_THROWS_AS(topology_kind_from_string("ring"), std::invalid_argument);
}
