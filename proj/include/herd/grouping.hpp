#pragma once

#include <vector>

#include "herd/vec2.hpp"

namespace herd {

// One cohesion-connected sub-swarm and its local centre of mass.
struct SubSwarm {
    std::vector<std::size_t> members;  // sorted sheep indices
    Vec2 lcm;
};

// Partitions sheep into the connected components of the graph with an edge
// between any two sheep at distance <= r_cohesion. Components are ordered by
// ascending distance of their closest member to sheep 0.
std::vector<SubSwarm> group_sheep(const std::vector<Vec2>& positions, double r_cohesion);

Vec2 compute_lcm(const SubSwarm& sub, const std::vector<Vec2>& positions);

}  // namespace herd
