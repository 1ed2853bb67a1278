#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "herd/world.hpp"

namespace herd {

// Force-model weights and ranges; defaults follow the Strombom lineage.
struct ModelParams {
    double w_inertia = 0.5;        // previous-force weight
    double w_attract = 1.05;       // attraction to neighbours
    double w_dog = 1.0;            // repulsion from sheepdogs
    double w_sheep = 2.0;          // repulsion from nearby sheep
    double w_obstacle = 3.0;       // repulsion from obstacles
    double w_noise_sheep = 0.3;
    double w_noise_dog = 0.3;
    double r_cohesion = 4.0;       // R_Lambda
    double r_dog_influence = 8.0;  // R_pi_beta
    double r_sheep_avoid = 0.4;    // R_pi_pi
    double r_obstacle_avoid = 2.0; // R_pi_o
    double r_safe = 4.0;           // R_s, dog standoff from sheep
    double sheep_speed = 1.0;      // S_pi, units per step
    double dog_speed = 1.5;        // S_beta
};

// Flock-radius threshold deciding drive vs collect.
inline double neighbourhood_range(const ModelParams& p, std::size_t flock_size) {
    return p.r_sheep_avoid * std::sqrt(2.0 * static_cast<double>(flock_size));
}

enum class HerdKind { Drive, Collect };

struct HerdingTarget {
    Vec2 point;
    HerdKind kind;
};

// Total force on sheep i at the world's current step. Pure; draws the noise
// term from the counter-based stream keyed by (seed, sheep index, t).
Vec2 sheep_force(std::size_t i, const WorldState& world, const ModelParams& params);

// Sheepdog steering force toward a target plus noise (reactive motion only;
// planner-following dogs move along waypoints without noise).
Vec2 dog_force(const DogState& dog, std::size_t dog_index, const Vec2& target,
               const WorldState& world, const ModelParams& params);

// Drive/collect decision for an arbitrary set of sheep indices against a goal.
// Empty `members` means the whole flock.
HerdingTarget herding_target(const Vec2& goal, std::span<const std::size_t> members,
                             const WorldState& world, const ModelParams& params);

// Batch force evaluation for all sheep; parallel kernel plus a serial
// reference used by tests and the benchmark. Both produce identical output.
void compute_sheep_forces(const WorldState& world, const ModelParams& params,
                          std::vector<Vec2>& out);
void compute_sheep_forces_serial(const WorldState& world, const ModelParams& params,
                                 std::vector<Vec2>& out);

// Advances every sheep by its force and every dog toward its waypoint
// (std::nullopt = dog holds position). Clamps to bounds, resolves obstacle
// penetration, accumulates dog path length, increments t.
void step_agents(WorldState& world, std::span<const std::optional<Vec2>> dog_targets,
                 const ModelParams& params);

// One full reactive-shepherding step (Method 1): every dog herds the whole
// flock toward the environment goal, then all agents advance.
void reactive_step(WorldState& world, const ModelParams& params);

// Pushes p out of any obstacle containing it (to the nearest boundary point).
Vec2 resolve_obstacle_penetration(const Vec2& p, const Environment& env);

}  // namespace herd
