#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <set>

#include "herd/bench.hpp"
#include "herd/mission.hpp"
#include "herd/rng.hpp"

using namespace herd;

namespace {

WorldState make_world(double side, const std::vector<Vec2>& sheep_pos,
                      const std::vector<Vec2>& dog_pos, std::uint64_t seed,
                      Vec2 goal = {0, 0}, double goal_radius = 10.0) {
    WorldState w;
    w.env.width = side;
    w.env.height = side;
    w.env.goal = (goal == Vec2{0, 0}) ? Vec2{side - 10, side - 10} : goal;
    w.env.goal_radius = goal_radius;
    for (const auto& p : sheep_pos) w.sheep.push_back({p, {0, 0}});
    for (const auto& p : dog_pos) w.dogs.push_back({p, 1.5, 0.0});
    w.seed = seed;
    return w;
}

// Small clump of sheep around a centre.
void add_cluster(std::vector<Vec2>& out, Vec2 c, int n, double r, std::uint64_t seed) {
    rng::Stream rs(seed, 0);
    for (int i = 0; i < n; ++i) {
        const double a = rs.u01() * 2 * std::numbers::pi;
        const double d = r * std::sqrt(rs.u01());
        out.push_back({c.x + d * std::cos(a), c.y + d * std::sin(a)});
    }
}

}  // namespace

TEST_CASE("default time budget scales with flock size") {
    std::vector<Vec2> sheep;
    add_cluster(sheep, {30, 30}, 20, 2.0, 5);
    const auto w = make_world(100, sheep, {{5, 5}}, 1);
    const auto s = plan_mission(w, {}, {}, Method::Full);
    CHECK(s.t_max == 700);  // 300 + 20*20

    MissionConfig cfg;
    cfg.t_max_override = 1234;
    CHECK(plan_mission(w, {}, cfg, Method::Full).t_max == 1234);
}

TEST_CASE("driving point sits behind the sub-swarm") {
    const ModelParams p;
    // 8 members: R_n = 0.4*sqrt(16) = 1.6, offset 5.6.
    const Vec2 d = subswarm_driving_point({20, 20}, {20, 90}, 8, p);
    CHECK(d.x == doctest::Approx(20.0));
    CHECK(d.y == doctest::Approx(14.4));

    // Singleton: R_n = 0.4*sqrt(2), offset ~4.5657.
    const Vec2 s = subswarm_driving_point({0, 0}, {10, 0}, 1, p);
    CHECK(s.x == doctest::Approx(-(0.4 * std::sqrt(2.0) + 4.0)));
    CHECK(s.y == doctest::Approx(0.0));

    CHECK_THROWS(subswarm_driving_point({5, 5}, {5, 5}, 3, p));
}

TEST_CASE("check_merge thresholds on the cohesion radius") {
    std::vector<SheepState> sheep{{{0, 0}, {}}, {{3.9, 0}, {}}, {{8.1, 0}, {}}};
    CHECK(check_merge({0}, {1}, sheep, 4.0));
    CHECK_FALSE(check_merge({1}, {2}, sheep, 4.0));
    sheep[2].pos = {7.9, 0};
    CHECK(check_merge({1}, {2}, sheep, 4.0));
    sheep[1].pos = {4.0, 0};
    CHECK(check_merge({0}, {1}, sheep, 4.0));  // boundary inclusive
}

TEST_CASE("plan covers every sub-swarm exactly once") {
    std::vector<Vec2> sheep;
    add_cluster(sheep, {20, 70}, 8, 2.0, 11);
    add_cluster(sheep, {50, 20}, 8, 2.0, 12);
    add_cluster(sheep, {75, 60}, 8, 2.0, 13);
    const auto w = make_world(100, sheep, {{5, 5}}, 42);
    const auto s = plan_mission(w, {}, {}, Method::Full);
    REQUIRE(s.swarm_members.size() == 3);
    REQUIRE(s.dogs.size() == 1);
    std::set<std::size_t> ids(s.dogs[0].route.begin(), s.dogs[0].route.end());
    CHECK(ids == std::set<std::size_t>{0, 1, 2});
    CHECK(s.dogs[0].route.size() == 3);
}

TEST_CASE("planned route order matches the exhaustive oracle") {
    for (int trial = 0; trial < 10; ++trial) {
        rng::Stream rs(600, trial);
        std::vector<Vec2> sheep;
        std::vector<Vec2> centres;
        for (int c = 0; c < 5; ++c) {
            Vec2 ctr{15.0 + rs.u01() * 70.0, 15.0 + rs.u01() * 70.0};
            bool far = true;
            for (const auto& o : centres)
                if (distance(ctr, o) < 14.0) far = false;
            if (!far) {
                --c;
                continue;
            }
            centres.push_back(ctr);
            add_cluster(sheep, ctr, 6, 2.0, 100 + trial * 10 + c);
        }
        const Vec2 dog{2.0, 2.0};
        auto w = make_world(100, sheep, {dog}, 7000 + trial);

        const auto s = plan_mission(w, {}, {}, Method::Full);
        REQUIRE(s.swarm_members.size() == 5);

        std::vector<Vec2> lcms;
        for (const auto& m : s.swarm_members) {
            Vec2 acc{0, 0};
            for (auto i : m) acc += w.sheep[i].pos;
            lcms.push_back(acc / static_cast<double>(m.size()));
        }
        const auto inst = build_single_instance(dog, lcms, w.env.goal, euclidean_cost);
        const auto opt = brute_force_tour(inst);

        double got_cost = inst.cost[0][s.dogs[0].route[0] + 1];
        for (std::size_t k = 0; k + 1 < s.dogs[0].route.size(); ++k)
            got_cost += inst.cost[s.dogs[0].route[k] + 1][s.dogs[0].route[k + 1] + 1];
        got_cost += inst.cost[s.dogs[0].route.back() + 1][inst.end()];
        CHECK(got_cost == doctest::Approx(opt.cost).epsilon(1e-9));
    }
}

TEST_CASE("single sub-swarm degenerates cleanly") {
    std::vector<Vec2> sheep;
    add_cluster(sheep, {40, 40}, 10, 2.0, 3);
    const auto w = make_world(100, sheep, {{5, 5}}, 9);
    const auto s = plan_mission(w, {}, {}, Method::Full);
    REQUIRE(s.swarm_members.size() == 1);
    CHECK(s.dogs[0].route == std::vector<std::size_t>{0});
}

TEST_CASE("bi-dog routes partition the sub-swarms") {
    std::vector<Vec2> sheep;
    add_cluster(sheep, {20, 20}, 6, 2.0, 21);
    add_cluster(sheep, {20, 80}, 6, 2.0, 22);
    add_cluster(sheep, {80, 20}, 6, 2.0, 23);
    add_cluster(sheep, {80, 80}, 6, 2.0, 24);
    const auto w = make_world(100, sheep, {{5, 50}, {95, 50}}, 17, {50, 50}, 12.0);
    const auto s = plan_mission(w, {}, {}, Method::Full);
    REQUIRE(s.swarm_members.size() == 4);
    REQUIRE(s.dogs.size() == 2);

    std::vector<std::size_t> all = s.dogs[0].route;
    all.insert(all.end(), s.dogs[1].route.begin(), s.dogs[1].route.end());
    std::sort(all.begin(), all.end());
    CHECK(all == std::vector<std::size_t>{0, 1, 2, 3});
}

TEST_CASE("mode automaton invariants hold over a full run") {
    std::vector<Vec2> sheep;
    add_cluster(sheep, {15, 35}, 6, 2.0, 31);
    add_cluster(sheep, {35, 15}, 6, 2.0, 32);
    const auto w = make_world(50, sheep, {{3, 3}}, 99, {42, 42}, 9.0);

    MissionConfig cfg;
    const auto rec = run_mission(w, {}, cfg, Method::Full, false);

    std::vector<int> q_at(1, 0);
    for (const auto& tr : rec.transitions) {
        if (tr.to == DogMode::NoInteraction) {
            // Merge: the sub-task index advances by exactly one.
            CHECK(tr.q_to == tr.q_from + 1);
        } else {
            // Engagement: no-interaction flips to interaction at the same q.
            CHECK(tr.from == DogMode::NoInteraction);
            CHECK(tr.q_to == tr.q_from);
        }
        CHECK(tr.q_from >= q_at[tr.dog]);  // q never decreases
        q_at[tr.dog] = tr.q_to;
        CHECK(tr.t >= 1);
    }
}

TEST_CASE("full method gathers a split flock into the goal") {
    std::vector<Vec2> sheep;
    add_cluster(sheep, {15, 35}, 6, 2.0, 41);
    add_cluster(sheep, {35, 15}, 6, 2.0, 42);
    const auto w = make_world(50, sheep, {{3, 3}}, 7, {42, 42}, 9.0);

    const auto rec = run_mission(w, {}, {}, Method::Full, false);
    CHECK(rec.metrics.success);
    CHECK(rec.metrics.steps < 540);  // within the 300 + 20*12 budget
    CHECK(rec.metrics.per_dog_path_length.size() == 1);
    CHECK(rec.metrics.max_path_length > 0.0);
    CHECK(rec.metrics.total_path_length == doctest::Approx(rec.metrics.max_path_length));
}

TEST_CASE("task-plan method also completes the simple split case") {
    std::vector<Vec2> sheep;
    add_cluster(sheep, {15, 35}, 6, 2.0, 41);
    add_cluster(sheep, {35, 15}, 6, 2.0, 42);
    const auto w = make_world(50, sheep, {{3, 3}}, 7, {42, 42}, 9.0);
    const auto rec = run_mission(w, {}, {}, Method::TaskPlan, false);
    CHECK(rec.metrics.success);
}

TEST_CASE("identical seeds give identical trajectories and metrics") {
    std::vector<Vec2> sheep;
    add_cluster(sheep, {15, 35}, 6, 2.0, 51);
    add_cluster(sheep, {35, 15}, 6, 2.0, 52);
    const auto w = make_world(50, sheep, {{3, 3}}, 123, {42, 42}, 9.0);

    const auto a = run_mission(w, {}, {}, Method::Full, true);
    const auto b = run_mission(w, {}, {}, Method::Full, true);
    CHECK(a.metrics.success == b.metrics.success);
    CHECK(a.metrics.steps == b.metrics.steps);
    REQUIRE(a.rows.size() == b.rows.size());
    for (std::size_t i = 0; i < a.rows.size(); ++i) {
        CHECK(a.rows[i].x == b.rows[i].x);
        CHECK(a.rows[i].y == b.rows[i].y);
        CHECK(a.rows[i].mode == b.rows[i].mode);
    }
}

TEST_CASE("trajectory rows cover every agent at every recorded step") {
    std::vector<Vec2> sheep;
    add_cluster(sheep, {20, 20}, 5, 2.0, 61);
    const auto w = make_world(50, sheep, {{3, 3}}, 5, {40, 40}, 9.0);
    const auto rec = run_mission(w, {}, {}, Method::Full, true);
    REQUIRE(!rec.rows.empty());
    CHECK(rec.rows.size() % (sheep.size() + 1) == 0);
    const auto steps = rec.rows.size() / (sheep.size() + 1);
    CHECK(static_cast<std::int64_t>(steps) == rec.metrics.steps);
}

TEST_CASE("plan_mission validates its inputs") {
    const auto w0 = make_world(50, {}, {{3, 3}}, 1);
    CHECK_THROWS(plan_mission(w0, {}, {}, Method::Full));
    const auto w1 = make_world(50, {{10, 10}}, {}, 1);
    CHECK_THROWS(plan_mission(w1, {}, {}, Method::Full));
    const auto w3 = make_world(50, {{10, 10}}, {{1, 1}, {2, 2}, {3, 3}}, 1);
    CHECK_THROWS(plan_mission(w3, {}, {}, Method::Full));
}

TEST_CASE("run_case orders results by seed and summarizes them") {
    ScenarioSpec spec;
    spec.env.width = 50;
    spec.env.height = 50;
    spec.env.goal = {42, 42};
    spec.env.goal_radius = 9.0;
    spec.n_sheep = 10;
    spec.clusters = {{{18, 30}, 3.0, 5}, {{30, 18}, 3.0, 5}};
    spec.dog_starts = {{3, 3}, {47, 3}};

    const auto ms = run_case(spec, Method::Full, 1, 4, 1000);
    REQUIRE(ms.size() == 4);
    for (std::size_t k = 0; k < ms.size(); ++k) CHECK(ms[k].seed == 1000 + k);

    const auto cs = summarize(ms);
    CHECK(cs.sr >= 0.0);
    CHECK(cs.sr <= 1.0);

    CHECK_THROWS(run_case(spec, Method::Full, 3, 1, 0));
}
