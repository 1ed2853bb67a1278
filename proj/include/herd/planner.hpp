#pragma once

#include <optional>
#include <span>
#include <vector>

#include "herd/world.hpp"

namespace herd {

struct CostWeights {
    double alpha1 = 1.0;    // path length weight
    double alpha2 = 100.0;  // threat weight
};

struct PlannedPath {
    std::vector<Vec2> waypoints;  // cell centres; first=start, last=goal
    double length_cost = 0.0;     // sum of segment lengths
    double threat_cost = 0.0;     // threatened segment count
    double combined_cost(const CostWeights& w) const {
        return w.alpha1 * length_cost + w.alpha2 * threat_cost;
    }
};

// Continuous threat region: one disc of radius `radius` per sheep position.
struct ThreatField {
    std::vector<Vec2> centers;
    double radius = 4.0;

    bool segment_threatened(const Vec2& a, const Vec2& b) const;
};

// Marks every cell whose centre lies within r_threat of a non-excluded sheep.
// `exclude` holds sheep indices into `sheep_positions`.
void mark_threat(GridMap& grid, std::span<const Vec2> sheep_positions,
                 std::span<const std::size_t> exclude, double r_threat);

// Clears threat flags on cells whose centre is within `radius` of `center`
// (keeps the drive point reachable).
void clear_threat_near(GridMap& grid, const Vec2& center, double radius);

// 8-connected A* with edge cost alpha1*step + alpha2*[destination cell is
// threatened]; no diagonal corner cutting. Returns nullopt when no path
// exists or an endpoint is blocked.
std::optional<PlannedPath> astar(const GridMap& grid, const Vec2& start, const Vec2& goal,
                                 const CostWeights& weights);

// Path cost with the continuous segment-vs-circle threat rule.
double evaluate_path_cost(const PlannedPath& path, const CostWeights& weights,
                          const ThreatField& threat);

// Greedy forward line-of-sight pruning. Output is collision-free against the
// environment obstacles and never longer than the input.
PlannedPath prune_path(const PlannedPath& path, const Environment& env);

}  // namespace herd
