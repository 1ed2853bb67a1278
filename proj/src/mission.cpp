#include "herd/mission.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <optional>
#include <stdexcept>

namespace herd {

namespace {

Vec2 members_com(const std::vector<std::size_t>& members,
                 const std::vector<SheepState>& sheep) {
    Vec2 sum{0.0, 0.0};
    for (std::size_t i : members) sum += sheep[i].pos;
    return sum / static_cast<double>(members.size());
}

bool all_within_goal(const WorldState& w) {
    const double r2 = w.env.goal_radius * w.env.goal_radius;
    for (const auto& s : w.sheep)
        if ((s.pos - w.env.goal).norm2() > r2) return false;
    return true;
}

// Nearest unblocked cell centre when the requested point is inside an
// obstacle (BFS ring expansion on the occupancy grid).
Vec2 project_to_free(const Vec2& p, const GridMap& grid, const Environment& env) {
    const Vec2 q = env.clamp(p);
    int cx = grid.cell_x(q), cy = grid.cell_y(q);
    if (!grid.is_blocked(cx, cy)) return q;

    std::vector<bool> seen(static_cast<std::size_t>(grid.cols) * grid.rows, false);
    std::deque<std::pair<int, int>> frontier{{cx, cy}};
    seen[grid.index(cx, cy)] = true;
    while (!frontier.empty()) {
        auto [x, y] = frontier.front();
        frontier.pop_front();
        if (!grid.is_blocked(x, y)) return grid.cell_center(x, y);
        for (int dy = -1; dy <= 1; ++dy)
            for (int dx = -1; dx <= 1; ++dx) {
                const int nx = x + dx, ny = y + dy;
                if (grid.in_bounds(nx, ny) && !seen[grid.index(nx, ny)]) {
                    seen[grid.index(nx, ny)] = true;
                    frontier.emplace_back(nx, ny);
                }
            }
    }
    return q;  // fully blocked grid; give up
}

// Route interior (sub-swarm ids) from an endpoint-fixed city list.
std::vector<std::size_t> route_from_cities(const std::vector<std::size_t>& cities,
                                           std::size_t goal_city) {
    std::vector<std::size_t> r;
    for (std::size_t c : cities)
        if (c != 0 && c != goal_city && c != goal_city + 1) r.push_back(c - 1);
    return r;
}

}  // namespace

Vec2 subswarm_driving_point(const Vec2& lcm, const Vec2& subgoal, std::size_t n_members,
                            const ModelParams& params) {
    if (subgoal == lcm)
        throw std::invalid_argument("subswarm_driving_point: subgoal coincides with LCM");
    const double rn = neighbourhood_range(params, n_members);
    return lcm - (rn + params.r_safe) * (subgoal - lcm).normalized();
}

bool check_merge(const std::vector<std::size_t>& a, const std::vector<std::size_t>& b,
                 const std::vector<SheepState>& sheep, double r_cohesion) {
    const double r2 = r_cohesion * r_cohesion;
    for (std::size_t i : a)
        for (std::size_t j : b)
            if ((sheep[i].pos - sheep[j].pos).norm2() <= r2) return true;
    return false;
}

MissionState plan_mission(const WorldState& world, const ModelParams& params,
                          const MissionConfig& cfg, Method method) {
    if (world.sheep.empty()) throw std::invalid_argument("plan_mission: no sheep");
    if (world.dogs.empty() || world.dogs.size() > 2)
        throw std::invalid_argument("plan_mission: need 1 or 2 dogs");

    MissionState s;
    s.world = world;
    s.method = method;
    s.cfg = cfg;
    s.t_max = cfg.t_max_override > 0
                  ? cfg.t_max_override
                  : 300 + 20 * static_cast<std::int64_t>(world.sheep.size());
    s.base_grid = rasterize(world.env, cfg.cell_size);

    std::vector<Vec2> positions;
    positions.reserve(world.sheep.size());
    for (const auto& sh : world.sheep) positions.push_back(sh.pos);

    const auto groups = group_sheep(positions, params.r_cohesion);
    std::vector<Vec2> lcms;
    for (const auto& g : groups) {
        s.swarm_members.push_back(g.members);
        lcms.push_back(g.lcm);
    }

    CostFn cost_fn;
    if (world.env.obstacles.empty()) {
        cost_fn = euclidean_cost;
    } else {
        // Offline matrix: planned-path length with an empty threat layer.
        const GridMap* grid = &s.base_grid;
        const Environment* env = &world.env;
        cost_fn = [grid, env](const Vec2& a, const Vec2& b) {
            const auto p = astar(*grid, a, b, CostWeights{1.0, 0.0});
            if (!p) return std::numeric_limits<double>::quiet_NaN();
            return prune_path(*p, *env).length_cost;
        };
    }

    MmasParams mmas = cfg.mmas;
    if (world.dogs.size() == 1) {
        const auto inst = build_single_instance(world.dogs[0].pos, lcms, world.env.goal, cost_fn);
        const auto tour = mmas_solve(inst, mmas, world.seed);
        DogPlan dp;
        dp.route = route_from_cities(tour.order, inst.goal_city());
        s.dogs.push_back(std::move(dp));
    } else {
        const auto inst = build_bi_instance(world.dogs[0].pos, world.dogs[1].pos, lcms,
                                            world.env.goal, cost_fn);
        const auto tour = mmas_solve(inst, mmas, world.seed);
        const auto routes = split_bi_tour(tour, inst.n_subswarms);
        DogPlan d1, d2;
        d1.route = route_from_cities(routes.route1, inst.goal_city());
        d2.route = route_from_cities(routes.route2, inst.goal_city());
        d1.done = d1.route.empty();
        d2.done = d2.route.empty();
        s.dogs.push_back(std::move(d1));
        s.dogs.push_back(std::move(d2));
    }
    return s;
}

namespace {

// Sub-goal selection per dog: periodic replanning of the sub-swarm path and
// LCM-progress waypoint advancement in between.
void select_subgoal(MissionState& s, std::size_t j, const ModelParams& params,
                    const Vec2& lcm, const Vec2& target,
                    const std::vector<std::size_t>& members) {
    DogPlan& dp = s.dogs[j];
    if (s.method != Method::Full) {
        dp.subgoal = target;  // task planning only: straight-line sub-goals
        return;
    }

    const bool replan = dp.mode == DogMode::NoInteraction ||
                        (s.world.t % s.cfg.replan_period) == 1 ||
                        dp.subswarm_path.waypoints.empty();
    if (replan) {
        const auto p = astar(s.base_grid, lcm, target, CostWeights{s.cfg.weights.alpha1, 0.0});
        if (!p) {
            s.plan_failed = true;
            dp.subgoal = target;
            return;
        }
        dp.subswarm_path = prune_path(*p, s.world.env);
        dp.path_progress = std::min<std::size_t>(1, dp.subswarm_path.waypoints.size() - 1);
    } else {
        const double rn = neighbourhood_range(params, members.size());
        const auto& wp = dp.subswarm_path.waypoints;
        while (dp.path_progress + 1 < wp.size() &&
               distance(lcm, wp[dp.path_progress]) <= rn)
            ++dp.path_progress;
    }
    // Intermediate waypoints are static detour corners, but the endpoint is a
    // moving target (next sub-swarm's LCM); always steer at the live value.
    if (dp.path_progress + 1 >= dp.subswarm_path.waypoints.size())
        dp.subgoal = target;
    else
        dp.subgoal = dp.subswarm_path.waypoints[dp.path_progress];
}

// One planner query for the dog itself; returns the immediate waypoint to
// move toward. Threat-aware in no-interaction mode, length-only otherwise.
Vec2 dog_waypoint(MissionState& s, std::size_t j, const Vec2& point, bool threat_aware,
                  const ModelParams& params) {
    if (s.method != Method::Full) return point;  // direct motion for Method 2

    GridMap grid = s.base_grid;
    CostWeights w{s.cfg.weights.alpha1, 0.0};
    if (threat_aware) {
        std::vector<Vec2> pos;
        pos.reserve(s.world.sheep.size());
        for (const auto& sh : s.world.sheep) pos.push_back(sh.pos);
        mark_threat(grid, pos, {}, s.cfg.r_threat);
        clear_threat_near(grid, point, params.r_safe);
        w.alpha2 = s.cfg.weights.alpha2;
    }
    const auto p = astar(grid, s.world.dogs[j].pos, point, w);
    if (!p || p->waypoints.size() < 2) return point;
    const auto pruned = prune_path(*p, s.world.env);
    // With direct line of sight steer at the exact point, not the centre of
    // its grid cell; only intermediate detour corners are cell-quantized.
    if (pruned.waypoints.size() <= 2) return point;
    return pruned.waypoints[1];
}

}  // namespace

void engine_step(MissionState& s, const ModelParams& params, std::vector<StepRecord>* rows) {
    if (s.success || s.plan_failed) return;

    std::vector<std::optional<Vec2>> targets(s.world.dogs.size());
    std::vector<std::optional<Vec2>> drive_points(s.world.dogs.size());

    for (std::size_t j = 0; j < s.dogs.size(); ++j) {
        DogPlan& dp = s.dogs[j];

        if (!dp.done) {
            // Merge with the next sub-swarm, or finish the route at the goal.
            if (dp.q + 1 < static_cast<int>(dp.route.size())) {
                auto& cur = s.swarm_members[dp.route[dp.q]];
                auto& nxt = s.swarm_members[dp.route[dp.q + 1]];
                if (check_merge(cur, nxt, s.world.sheep, params.r_cohesion)) {
                    nxt.insert(nxt.end(), cur.begin(), cur.end());
                    std::sort(nxt.begin(), nxt.end());
                    cur.clear();
                    s.transitions.push_back({s.world.t, j, dp.mode, DogMode::NoInteraction,
                                             dp.q, dp.q + 1});
                    ++dp.q;
                    dp.mode = DogMode::NoInteraction;
                    dp.subswarm_path = {};
                }
            } else {
                const auto& cur = s.swarm_members[dp.route[dp.q]];
                const double r2 = s.world.env.goal_radius * s.world.env.goal_radius;
                bool in = true;
                for (std::size_t i : cur)
                    if ((s.world.sheep[i].pos - s.world.env.goal).norm2() > r2) {
                        in = false;
                        break;
                    }
                if (in) dp.done = true;
            }
        }

        if (dp.done) {
            // A finished dog yields: holding a goal-side post would wall off
            // another dog's approach lane with its repulsion field. Back away
            // from any sheep that comes within influence range, else hold.
            const Vec2 dogp = s.world.dogs[j].pos;
            double best = std::numeric_limits<double>::infinity();
            Vec2 nearest{};
            for (const auto& sh : s.world.sheep) {
                const double d = distance(sh.pos, dogp);
                if (d < best) {
                    best = d;
                    nearest = sh.pos;
                }
            }
            if (best < params.r_dog_influence + params.r_safe && best > 1e-12)
                targets[j] = dogp + params.dog_speed * (dogp - nearest).normalized();
            else
                targets[j] = dogp;
            continue;
        }

        const auto& members = s.swarm_members[dp.route[dp.q]];
        const Vec2 lcm = members_com(members, s.world.sheep);
        Vec2 target =
            dp.q + 1 < static_cast<int>(dp.route.size())
                ? members_com(s.swarm_members[dp.route[dp.q + 1]], s.world.sheep)
                : s.world.env.goal;
        // Keep merge targets a driving-offset margin away from the walls so
        // the behind position stays inside the world; otherwise a sub-swarm
        // that drifts into a corner pins the pursuing flock there for good.
        if (dp.q + 1 < static_cast<int>(dp.route.size())) {
            const double margin =
                neighbourhood_range(params, members.size()) + params.r_safe;
            target.x = std::clamp(target.x, margin, s.world.env.width - margin);
            target.y = std::clamp(target.y, margin, s.world.env.height - margin);
        }

        select_subgoal(s, j, params, lcm, target, members);
        if (s.plan_failed) return;

        if (dp.mode == DogMode::NoInteraction) {
            Vec2 drive = dp.subgoal == lcm
                             ? lcm
                             : subswarm_driving_point(lcm, dp.subgoal, members.size(), params);
            drive = project_to_free(drive, s.base_grid, s.world.env);
            drive_points[j] = drive;
            targets[j] = dog_waypoint(s, j, drive, /*threat_aware=*/true, params);
        } else {
            const auto ht = herding_target(dp.subgoal, members, s.world, params);
            const Vec2 pt = project_to_free(ht.point, s.base_grid, s.world.env);
            const Vec2 wp = dog_waypoint(s, j, pt, /*threat_aware=*/false, params);
            // Herding motion keeps the jitter term; it breaks up stand-offs
            // behind large flocks where the drive point sits at the edge of
            // the dog's influence range.
            const Vec2 f = dog_force(s.world.dogs[j], j, wp, s.world, params);
            targets[j] = s.world.dogs[j].pos + params.dog_speed * f.normalized();
        }
    }

    step_agents(s.world, targets, params);

    // Arrival at the drive point flips no-interaction into interaction.
    for (std::size_t j = 0; j < s.dogs.size(); ++j) {
        DogPlan& dp = s.dogs[j];
        if (dp.done || dp.mode != DogMode::NoInteraction || !drive_points[j]) continue;
        if (distance(s.world.dogs[j].pos, *drive_points[j]) <= params.dog_speed) {
            s.transitions.push_back({s.world.t, j, DogMode::NoInteraction,
                                     DogMode::Interaction, dp.q, dp.q});
            dp.mode = DogMode::Interaction;
        }
    }

    if (rows) {
        for (std::size_t i = 0; i < s.world.sheep.size(); ++i)
            rows->push_back({s.world.t, 'S', static_cast<int>(i), s.world.sheep[i].pos.x,
                             s.world.sheep[i].pos.y, -1, -1});
        for (std::size_t j = 0; j < s.world.dogs.size(); ++j)
            rows->push_back({s.world.t, 'D', static_cast<int>(j), s.world.dogs[j].pos.x,
                             s.world.dogs[j].pos.y, static_cast<int>(s.dogs[j].mode),
                             s.dogs[j].q});
    }

    if (all_within_goal(s.world)) s.success = true;
}

RunRecord run_mission(const WorldState& initial, const ModelParams& params,
                      const MissionConfig& cfg, Method method, bool record_trajectory) {
    RunRecord rec;
    rec.metrics.seed = initial.seed;

    const std::int64_t t_max =
        cfg.t_max_override > 0 ? cfg.t_max_override
                               : 300 + 20 * static_cast<std::int64_t>(initial.sheep.size());

    if (method == Method::Reactive) {
        WorldState w = initial;
        bool ok = false;
        while (w.t < t_max) {
            reactive_step(w, params);
            if (record_trajectory) {
                for (std::size_t i = 0; i < w.sheep.size(); ++i)
                    rec.rows.push_back({w.t, 'S', static_cast<int>(i), w.sheep[i].pos.x,
                                        w.sheep[i].pos.y, -1, -1});
                for (std::size_t j = 0; j < w.dogs.size(); ++j)
                    rec.rows.push_back({w.t, 'D', static_cast<int>(j), w.dogs[j].pos.x,
                                        w.dogs[j].pos.y, 1, 0});
            }
            if (all_within_goal(w)) {
                ok = true;
                break;
            }
        }
        rec.metrics.success = ok;
        rec.metrics.steps = w.t;
        for (const auto& d : w.dogs) rec.metrics.per_dog_path_length.push_back(d.path_length_accum);
    } else {
        MissionState s;
        try {
            s = plan_mission(initial, params, cfg, method);
        } catch (const std::exception&) {
            rec.metrics.success = false;
            rec.metrics.steps = t_max;
            rec.metrics.per_dog_path_length.assign(initial.dogs.size(), 0.0);
            rec.metrics.max_path_length = 0.0;
            rec.metrics.total_path_length = 0.0;
            return rec;
        }
        while (s.world.t < s.t_max && !s.success && !s.plan_failed)
            engine_step(s, params, record_trajectory ? &rec.rows : nullptr);
        rec.metrics.success = s.success;
        rec.metrics.steps = s.world.t;
        for (const auto& d : s.world.dogs)
            rec.metrics.per_dog_path_length.push_back(d.path_length_accum);
        rec.transitions = std::move(s.transitions);
    }

    for (double l : rec.metrics.per_dog_path_length) {
        rec.metrics.max_path_length = std::max(rec.metrics.max_path_length, l);
        rec.metrics.total_path_length += l;
    }
    return rec;
}

}  // namespace herd
