#include "herd/flock.hpp"

#include <cmath>
#include <numeric>

#include "herd/rng.hpp"

namespace herd {

Vec2 resolve_obstacle_penetration(const Vec2& p, const Environment& env) {
    Vec2 q = p;
    for (const auto& o : env.obstacles) {
        if (!o.contains_open(q)) continue;
        // Push to the nearest face, nudged just outside.
        const double dl = q.x - o.lo.x, dr = o.hi.x - q.x;
        const double db = q.y - o.lo.y, dt = o.hi.y - q.y;
        const double m = std::min({dl, dr, db, dt});
        constexpr double eps = 1e-9;
        if (m == dl) q.x = o.lo.x - eps;
        else if (m == dr) q.x = o.hi.x + eps;
        else if (m == db) q.y = o.lo.y - eps;
        else q.y = o.hi.y + eps;
    }
    return env.clamp(q);
}

Vec2 sheep_force(std::size_t i, const WorldState& world, const ModelParams& p) {
    const Vec2 pos = world.sheep[i].pos;
    Vec2 total{0.0, 0.0};

    // Inertia: direction of the previous total force.
    total += p.w_inertia * world.sheep[i].prev_force.normalized();

    // Attraction toward the mean of neighbours within the cohesion range.
    {
        Vec2 sum{0.0, 0.0};
        std::size_t n = 0;
        const double r2 = p.r_cohesion * p.r_cohesion;
        for (std::size_t k = 0; k < world.sheep.size(); ++k) {
            if (k == i) continue;
            if ((world.sheep[k].pos - pos).norm2() <= r2) {
                sum += world.sheep[k].pos;
                ++n;
            }
        }
        if (n > 0) {
            const Vec2 mean = sum / static_cast<double>(n);
            total += p.w_attract * (mean - pos).normalized();
        }
    }

    // Repulsion from every sheepdog in range.
    {
        const double r2 = p.r_dog_influence * p.r_dog_influence;
        for (const auto& d : world.dogs) {
            if ((pos - d.pos).norm2() <= r2)
                total += p.w_dog * (pos - d.pos).normalized();
        }
    }

    // Repulsion from nearby sheep.
    {
        const double r2 = p.r_sheep_avoid * p.r_sheep_avoid;
        for (std::size_t k = 0; k < world.sheep.size(); ++k) {
            if (k == i) continue;
            if ((pos - world.sheep[k].pos).norm2() <= r2)
                total += p.w_sheep * (pos - world.sheep[k].pos).normalized();
        }
    }

    // Repulsion from obstacles, directed away from the nearest point.
    {
        const double r2 = p.r_obstacle_avoid * p.r_obstacle_avoid;
        for (const auto& o : world.env.obstacles) {
            const Vec2 np = o.nearest_point(pos);
            Vec2 away = pos - np;
            if (away.norm2() <= r2) {
                if (away.norm2() == 0.0) away = pos - (o.lo + o.hi) * 0.5;  // inside the rect
                total += p.w_obstacle * away.normalized();
            }
        }
    }

    // Random jitter, keyed by (seed, sheep index, step).
    if (p.w_noise_sheep > 0.0) {
        total += p.w_noise_sheep *
                 rng::unit_vector(world.seed, rng::kSheepStream + i,
                                  static_cast<std::uint64_t>(world.t));
    }
    return total;
}

Vec2 dog_force(const DogState& dog, std::size_t dog_index, const Vec2& target,
               const WorldState& world, const ModelParams& p) {
    Vec2 f = (target - dog.pos).normalized();
    if (p.w_noise_dog > 0.0) {
        f += p.w_noise_dog * rng::unit_vector(world.seed, rng::kDogStream + dog_index,
                                              static_cast<std::uint64_t>(world.t));
    }
    return f;
}

HerdingTarget herding_target(const Vec2& goal, std::span<const std::size_t> members,
                             const WorldState& world, const ModelParams& p) {
    std::vector<std::size_t> all;
    if (members.empty()) {
        all.resize(world.sheep.size());
        std::iota(all.begin(), all.end(), 0);
        members = all;
    }

    Vec2 com{0.0, 0.0};
    for (std::size_t i : members) com += world.sheep[i].pos;
    com = com / static_cast<double>(members.size());

    double furthest_d2 = -1.0;
    Vec2 furthest_pos;
    for (std::size_t i : members) {
        const double d2 = (world.sheep[i].pos - com).norm2();
        if (d2 > furthest_d2) {
            furthest_d2 = d2;
            furthest_pos = world.sheep[i].pos;
        }
    }

    const double rn = neighbourhood_range(p, members.size());
    if (std::sqrt(furthest_d2) > rn) {
        // Collect from behind the furthest sheep so it gets pushed back in.
        return {furthest_pos + p.r_safe * (furthest_pos - com).normalized(), HerdKind::Collect};
    }
    // Drive from behind the flock, relative to the goal.
    return {com - (rn + p.r_safe) * (goal - com).normalized(), HerdKind::Drive};
}

void compute_sheep_forces_serial(const WorldState& world, const ModelParams& params,
                                 std::vector<Vec2>& out) {
    out.resize(world.sheep.size());
    for (std::size_t i = 0; i < world.sheep.size(); ++i)
        out[i] = sheep_force(i, world, params);
}

void compute_sheep_forces(const WorldState& world, const ModelParams& params,
                          std::vector<Vec2>& out) {
    out.resize(world.sheep.size());
    const std::int64_t n = static_cast<std::int64_t>(world.sheep.size());
#pragma omp parallel for schedule(static)
    for (std::int64_t i = 0; i < n; ++i)
        out[i] = sheep_force(static_cast<std::size_t>(i), world, params);
}

void step_agents(WorldState& world, std::span<const std::optional<Vec2>> dog_targets,
                 const ModelParams& params) {
    std::vector<Vec2> forces;
    compute_sheep_forces(world, params, forces);

    for (std::size_t i = 0; i < world.sheep.size(); ++i) {
        const Vec2 f = forces[i];
        Vec2 next = world.sheep[i].pos + params.sheep_speed * f.normalized();
        next = world.env.clamp(next);
        next = resolve_obstacle_penetration(next, world.env);
        world.sheep[i].pos = next;
        world.sheep[i].prev_force = f;
    }

    for (std::size_t j = 0; j < world.dogs.size(); ++j) {
        if (j >= dog_targets.size() || !dog_targets[j].has_value()) continue;
        DogState& d = world.dogs[j];
        const Vec2 to = *dog_targets[j] - d.pos;
        const double dist = to.norm();
        Vec2 next;
        if (dist <= params.dog_speed) {
            next = *dog_targets[j];  // land exactly on the waypoint, no overshoot
        } else {
            next = d.pos + to * (params.dog_speed / dist);
        }
        next = world.env.clamp(next);
        next = resolve_obstacle_penetration(next, world.env);
        d.path_length_accum += (next - d.pos).norm();
        d.pos = next;
    }

    ++world.t;
}

void reactive_step(WorldState& world, const ModelParams& params) {
    std::vector<std::optional<Vec2>> targets(world.dogs.size());
    for (std::size_t j = 0; j < world.dogs.size(); ++j) {
        const auto ht = herding_target(world.env.goal, {}, world, params);
        const Vec2 f = dog_force(world.dogs[j], j, ht.point, world, params);
        targets[j] = world.dogs[j].pos + params.dog_speed * f.normalized();
    }
    step_agents(world, targets, params);
}

}  // namespace herd
