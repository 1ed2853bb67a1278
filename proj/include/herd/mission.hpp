#pragma once

#include <cstdint>
#include <vector>

#include "herd/flock.hpp"
#include "herd/grouping.hpp"
#include "herd/planner.hpp"
#include "herd/tsp.hpp"
#include "herd/world.hpp"

namespace herd {

enum class Method { Reactive, TaskPlan, Full };

enum class DogMode { NoInteraction = 0, Interaction = 1 };

struct MissionConfig {
    double r_threat = 4.0;
    CostWeights weights{1.0, 100.0};
    int replan_period = 10;
    double cell_size = 1.0;
    std::int64_t t_max_override = 0;  // 0 = 300 + 20*N
    MmasParams mmas;
};

struct ModeTransition {
    std::int64_t t;
    std::size_t dog;
    DogMode from;
    DogMode to;
    int q_from;
    int q_to;
};

// Per-dog planning state within a mission.
struct DogPlan {
    std::vector<std::size_t> route;  // sub-swarm ids in push order
    int q = 0;                       // current sub-task index into route
    DogMode mode = DogMode::NoInteraction;
    PlannedPath subswarm_path;       // cached LCM -> next-target path
    std::size_t path_progress = 1;   // lowest waypoint not yet reached by the LCM
    Vec2 subgoal;
    bool done = false;
};

struct MissionState {
    WorldState world;
    Method method = Method::Full;
    MissionConfig cfg;
    GridMap base_grid;  // occupancy only; threat layers are stamped per query
    std::vector<std::vector<std::size_t>> swarm_members;  // dynamic, merged in place
    std::vector<DogPlan> dogs;
    std::int64_t t_max = 0;
    std::vector<ModeTransition> transitions;
    bool plan_failed = false;
    bool success = false;
};

struct RunMetrics {
    bool success = false;
    std::int64_t steps = 0;
    std::vector<double> per_dog_path_length;
    double max_path_length = 0.0;
    double total_path_length = 0.0;
    std::uint64_t seed = 0;
};

struct StepRecord {
    std::int64_t t;
    char kind;  // 'S' sheep, 'D' dog
    int id;
    double x;
    double y;
    int mode;
    int q;
};

struct RunRecord {
    RunMetrics metrics;
    std::vector<StepRecord> rows;  // populated only when trajectory recording is on
    std::vector<ModeTransition> transitions;
};

// Offline planning: grouping, TSP construction (Euclidean cost when the
// environment is obstacle-free, pruned-path cost otherwise), MMAS sequencing,
// bi-dog tour split. Throws on unreachable city pairs.
MissionState plan_mission(const WorldState& world, const ModelParams& params,
                          const MissionConfig& cfg, Method method);

// Driving point behind a sub-swarm relative to its sub-goal (offset R_n+R_s).
Vec2 subswarm_driving_point(const Vec2& lcm, const Vec2& subgoal, std::size_t n_members,
                            const ModelParams& params);

// True iff the closest pair across the two member sets is within r_cohesion.
bool check_merge(const std::vector<std::size_t>& a, const std::vector<std::size_t>& b,
                 const std::vector<SheepState>& sheep, double r_cohesion);

// Advances the mission by one simulation step (all dogs, then all sheep).
void engine_step(MissionState& state, const ModelParams& params,
                 std::vector<StepRecord>* rows = nullptr);

// Runs a full mission for any method; reactive runs plain Strombom steps.
RunRecord run_mission(const WorldState& initial, const ModelParams& params,
                      const MissionConfig& cfg, Method method, bool record_trajectory);

}  // namespace herd
