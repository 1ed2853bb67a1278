#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "herd/vec2.hpp"

namespace herd {

// Axis-aligned rectangular obstacle.
struct Obstacle {
    Vec2 lo;  // min corner
    Vec2 hi;  // max corner

    bool contains(const Vec2& p) const {
        return p.x >= lo.x && p.x <= hi.x && p.y >= lo.y && p.y <= hi.y;
    }
    // Strict interior (boundary excluded).
    bool contains_open(const Vec2& p) const {
        return p.x > lo.x && p.x < hi.x && p.y > lo.y && p.y < hi.y;
    }
    Vec2 nearest_point(const Vec2& p) const {
        return {std::clamp(p.x, lo.x, hi.x), std::clamp(p.y, lo.y, hi.y)};
    }
    Obstacle inflated(double r) const {
        return {{lo.x - r, lo.y - r}, {hi.x + r, hi.y + r}};
    }
};

struct Environment {
    double width = 0.0;
    double height = 0.0;
    std::vector<Obstacle> obstacles;
    Vec2 goal;
    double goal_radius = 0.0;

    bool inside(const Vec2& p) const {
        return p.x >= 0.0 && p.x <= width && p.y >= 0.0 && p.y <= height;
    }
    Vec2 clamp(const Vec2& p) const {
        return {std::clamp(p.x, 0.0, width), std::clamp(p.y, 0.0, height)};
    }
    bool in_obstacle(const Vec2& p) const {
        for (const auto& o : obstacles)
            if (o.contains(p)) return true;
        return false;
    }
};

// Rasterized occupancy with an independent threat layer.
struct GridMap {
    double cell_size = 1.0;
    int cols = 0;
    int rows = 0;
    std::vector<std::uint8_t> blocked;  // rows*cols, row-major
    std::vector<std::uint8_t> threat;

    int index(int cx, int cy) const { return cy * cols + cx; }
    bool in_bounds(int cx, int cy) const {
        return cx >= 0 && cx < cols && cy >= 0 && cy < rows;
    }
    bool is_blocked(int cx, int cy) const { return blocked[index(cx, cy)] != 0; }
    bool is_threat(int cx, int cy) const { return threat[index(cx, cy)] != 0; }

    Vec2 cell_center(int cx, int cy) const {
        return {(cx + 0.5) * cell_size, (cy + 0.5) * cell_size};
    }
    int cell_x(const Vec2& p) const {
        return std::min(cols - 1, std::max(0, static_cast<int>(p.x / cell_size)));
    }
    int cell_y(const Vec2& p) const {
        return std::min(rows - 1, std::max(0, static_cast<int>(p.y / cell_size)));
    }
};

struct Cluster {
    Vec2 center;
    double radius = 0.0;
    int count = 0;
};

struct ScenarioSpec {
    Environment env;
    int n_sheep = 0;
    std::vector<Cluster> clusters;
    std::vector<Vec2> dog_starts;
    std::uint64_t seed = 0;
};

struct SheepState {
    Vec2 pos;
    Vec2 prev_force;  // total force from the previous step
};

struct DogState {
    Vec2 pos;
    double speed = 1.5;
    double path_length_accum = 0.0;
};

struct WorldState {
    Environment env;
    std::vector<SheepState> sheep;
    std::vector<DogState> dogs;
    std::uint64_t seed = 0;
    std::int64_t t = 0;
};

// Exact segment vs. inflated-rectangle intersection (closed: touching counts).
bool segment_collides(const Vec2& p0, const Vec2& p1, const Environment& env,
                      double inflation = 0.0);

// Occupancy rasterization; a cell is blocked iff its square overlaps an
// obstacle with positive area (boundary touching does not block).
GridMap rasterize(const Environment& env, double cell_size);

// Seeded scenario instantiation. Identical spec+seed gives identical output.
// Throws std::runtime_error if a cluster cannot be sampled free of obstacles.
WorldState generate_scenario(const ScenarioSpec& spec);

// Scenario file round-trip (JSON on disk).
ScenarioSpec load_scenario(const std::string& path);
void save_scenario(const ScenarioSpec& spec, const std::string& path);
ScenarioSpec scenario_from_json_text(const std::string& text);
std::string scenario_to_json_text(const ScenarioSpec& spec);

}  // namespace herd
