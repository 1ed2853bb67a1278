#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <queue>

#include "herd/planner.hpp"
#include "herd/rng.hpp"

using namespace herd;

namespace {

// Independent Dijkstra over the same 8-connected grid and edge costs.
double dijkstra_cost(const GridMap& g, int sx, int sy, int gx, int gy,
                     const CostWeights& w) {
    const int n = g.cols * g.rows;
    std::vector<double> dist(n, std::numeric_limits<double>::infinity());
    using QN = std::pair<double, int>;
    std::priority_queue<QN, std::vector<QN>, std::greater<>> pq;
    const int s = g.index(sx, sy);
    dist[s] = 0.0;
    pq.emplace(0.0, s);
    static constexpr int dx[8] = {1, -1, 0, 0, 1, 1, -1, -1};
    static constexpr int dy[8] = {0, 0, 1, -1, 1, -1, 1, -1};
    while (!pq.empty()) {
        const auto [d, u] = pq.top();
        pq.pop();
        if (d > dist[u]) continue;
        const int ux = u % g.cols, uy = u / g.cols;
        for (int k = 0; k < 8; ++k) {
            const int vx = ux + dx[k], vy = uy + dy[k];
            if (!g.in_bounds(vx, vy) || g.is_blocked(vx, vy)) continue;
            if (dx[k] != 0 && dy[k] != 0 &&
                (g.is_blocked(ux + dx[k], uy) || g.is_blocked(ux, uy + dy[k])))
                continue;
            const double step = (k < 4 ? 1.0 : std::numbers::sqrt2) * g.cell_size;
            const double edge = w.alpha1 * step + (g.is_threat(vx, vy) ? w.alpha2 : 0.0);
            if (dist[u] + edge < dist[g.index(vx, vy)]) {
                dist[g.index(vx, vy)] = dist[u] + edge;
                pq.emplace(dist[g.index(vx, vy)], g.index(vx, vy));
            }
        }
    }
    return dist[g.index(gx, gy)];
}

Environment empty_env(double w, double h) {
    Environment e;
    e.width = w;
    e.height = h;
    e.goal = {w - 1, h - 1};
    e.goal_radius = 2;
    return e;
}

}  // namespace

TEST_CASE("mark_threat covers cell centres within range") {
    auto env = empty_env(20, 20);
    auto g = rasterize(env, 1.0);
    const std::vector<Vec2> sheep{{5, 5}};
    mark_threat(g, sheep, {}, 4.0);
    CHECK(g.is_threat(5, 5));                    // centre (5.5,5.5), dist ~0.7
    CHECK_FALSE(g.is_threat(10, 10));            // centre (10.5,10.5), far
    CHECK(g.is_threat(8, 5));                    // centre (8.5,5.5), dist 3.5
    CHECK_FALSE(g.is_threat(9, 9));              // dist ~5.66
}

TEST_CASE("mark_threat union equals per-cell brute force") {
    auto env = empty_env(30, 30);
    auto g = rasterize(env, 1.0);
    const std::vector<Vec2> sheep{{8, 8}, {11, 9}, {25, 3}};
    mark_threat(g, sheep, {}, 4.0);
    for (int cy = 0; cy < g.rows; ++cy)
        for (int cx = 0; cx < g.cols; ++cx) {
            bool expect = false;
            for (const auto& s : sheep)
                if (distance(g.cell_center(cx, cy), s) <= 4.0) expect = true;
            CHECK(g.is_threat(cx, cy) == expect);
        }
}

TEST_CASE("mark_threat honours exclusions") {
    auto env = empty_env(20, 20);
    auto g = rasterize(env, 1.0);
    const std::vector<Vec2> sheep{{5, 5}, {15, 15}};
    const std::vector<std::size_t> excl{0};
    mark_threat(g, sheep, excl, 4.0);
    CHECK_FALSE(g.is_threat(5, 5));
    CHECK(g.is_threat(15, 15));
}

TEST_CASE("astar start equals goal") {
    const auto g = rasterize(empty_env(10, 10), 1.0);
    const auto p = astar(g, {3.2, 3.7}, {3.4, 3.1}, {1.0, 0.0});
    REQUIRE(p.has_value());
    CHECK(p->waypoints.size() == 1);
    CHECK(p->length_cost == 0.0);
    CHECK(p->threat_cost == 0.0);
}

TEST_CASE("astar diagonal across an empty grid") {
    const auto g = rasterize(empty_env(5, 5), 1.0);
    const auto p = astar(g, {0.5, 0.5}, {4.5, 4.5}, {1.0, 0.0});
    REQUIRE(p.has_value());
    CHECK(p->length_cost == doctest::Approx(4.0 * std::numbers::sqrt2));
}

TEST_CASE("astar detours around a threatened corridor cell") {
    auto env = empty_env(11, 3);
    auto g = rasterize(env, 1.0);
    const std::vector<Vec2> sheep{{5.5, 1.5}};
    mark_threat(g, sheep, {}, 0.4);  // only the single central cell
    REQUIRE(g.is_threat(5, 1));
    const CostWeights w{1.0, 100.0};
    const auto p = astar(g, {0.5, 1.5}, {10.5, 1.5}, w);
    REQUIRE(p.has_value());
    CHECK(p->threat_cost == 0.0);  // detour is cheaper than 100
    const double oracle = dijkstra_cost(g, 0, 1, 10, 1, w);
    CHECK(p->combined_cost(w) == doctest::Approx(oracle).epsilon(1e-12));
}

TEST_CASE("astar equals dijkstra on random grids with random threat") {
    int feasible = 0;
    for (int trial = 0; trial < 100; ++trial) {
        rng::Stream rs(4242, trial);
        auto env = empty_env(50, 50);
        auto g = rasterize(env, 1.0);
        for (int c = 0; c < g.cols * g.rows; ++c)
            if (rs.u01() < 0.20) g.blocked[c] = 1;
        std::vector<Vec2> sheep;
        const int n_sheep = 1 + static_cast<int>(rs.below(8));
        for (int i = 0; i < n_sheep; ++i) sheep.push_back({rs.u01() * 50, rs.u01() * 50});
        mark_threat(g, sheep, {}, 4.0);

        int sx = static_cast<int>(rs.below(50)), sy = static_cast<int>(rs.below(50));
        int gx = static_cast<int>(rs.below(50)), gy = static_cast<int>(rs.below(50));
        g.blocked[g.index(sx, sy)] = 0;
        g.blocked[g.index(gx, gy)] = 0;

        const CostWeights w{1.0, 100.0};
        const auto p = astar(g, g.cell_center(sx, sy), g.cell_center(gx, gy), w);
        const double oracle = dijkstra_cost(g, sx, sy, gx, gy, w);
        if (std::isinf(oracle)) {
            CHECK_FALSE(p.has_value());
        } else {
            ++feasible;
            REQUIRE(p.has_value());
            CHECK(p->combined_cost(w) ==
                  doctest::Approx(oracle).epsilon(1e-9));
        }
    }
    CHECK(feasible > 20);  // the comparison actually exercised real paths
}

TEST_CASE("evaluate_path_cost continuous threat rule") {
    PlannedPath p;
    p.waypoints = {{0, 0}};
    CHECK(evaluate_path_cost(p, {1, 100}, {}) == 0.0);

    p.waypoints = {{0, 0}, {3, 0}, {3, 4}};
    ThreatField none;
    CHECK(evaluate_path_cost(p, {1, 100}, none) == doctest::Approx(7.0));

    // One circle cut by the first segment only; counted once per segment.
    ThreatField tf;
    tf.centers = {{1.5, 0.5}};
    tf.radius = 1.0;
    CHECK(evaluate_path_cost(p, {1, 100}, tf) == doctest::Approx(107.0));

    // Two circles on one segment still count once for that segment.
    tf.centers = {{1.0, 0.2}, {2.0, -0.2}};
    CHECK(evaluate_path_cost(p, {1, 100}, tf) == doctest::Approx(107.0));
}

TEST_CASE("prune_path collapses collinear runs") {
    Environment env = empty_env(10, 10);
    PlannedPath p;
    p.waypoints = {{0, 0}, {1, 1}, {2, 2}};
    p.length_cost = 2 * std::numbers::sqrt2;
    const auto out = prune_path(p, env);
    REQUIRE(out.waypoints.size() == 2);
    CHECK(out.waypoints.front() == Vec2{0, 0});
    CHECK(out.waypoints.back() == Vec2{2, 2});
    CHECK(out.length_cost <= p.length_cost + 1e-12);
}

TEST_CASE("prune_path leaves two-waypoint paths unchanged") {
    Environment env = empty_env(10, 10);
    PlannedPath p;
    p.waypoints = {{0, 0}, {5, 5}};
    const auto out = prune_path(p, env);
    CHECK(out.waypoints == p.waypoints);
}

TEST_CASE("prune_path keeps the corner around a blocking rectangle") {
    Environment env = empty_env(20, 20);
    env.obstacles.push_back({{5, 0}, {7, 10}});
    PlannedPath p;
    p.waypoints = {{2, 2}, {3, 6}, {4, 10.5}, {6, 11.5}, {9, 10.5}, {10, 6}, {11, 2}};
    for (std::size_t k = 1; k < p.waypoints.size(); ++k)
        p.length_cost += distance(p.waypoints[k - 1], p.waypoints[k]);
    const auto out = prune_path(p, env);
    CHECK(out.length_cost <= p.length_cost + 1e-12);
    CHECK(out.waypoints.front() == p.waypoints.front());
    CHECK(out.waypoints.back() == p.waypoints.back());
    for (std::size_t k = 1; k < out.waypoints.size(); ++k)
        CHECK_FALSE(segment_collides(out.waypoints[k - 1], out.waypoints[k], env, 0.0));
    CHECK(out.waypoints.size() < p.waypoints.size());
}

TEST_CASE("prune_path on random astar outputs stays collision-free and shorter") {
    for (int trial = 0; trial < 50; ++trial) {
        rng::Stream rs(919, trial);
        Environment env = empty_env(40, 40);
        for (int o = 0; o < 6; ++o) {
            const double x = rs.u01() * 34, y = rs.u01() * 34;
            env.obstacles.push_back({{x, y}, {x + 2 + rs.u01() * 4, y + 2 + rs.u01() * 4}});
        }
        const auto g = rasterize(env, 1.0);
        const auto p =
            astar(g, {0.5, 0.5}, {39.5, 39.5}, {1.0, 0.0});
        if (!p) continue;
        const auto out = prune_path(*p, env);
        CHECK(out.length_cost <= p->length_cost + 1e-9);
        for (std::size_t k = 1; k < out.waypoints.size(); ++k)
            CHECK_FALSE(segment_collides(out.waypoints[k - 1], out.waypoints[k], env, 0.0));
    }
}

TEST_CASE("threat monotonicity: larger threat radius never lowers the cost") {
    rng::Stream rs(31, 0);
    auto env = empty_env(30, 30);
    auto g0 = rasterize(env, 1.0);
    std::vector<Vec2> sheep;
    for (int i = 0; i < 6; ++i) sheep.push_back({5.0 + rs.u01() * 20, 5.0 + rs.u01() * 20});
    const CostWeights w{1.0, 100.0};
    double prev = 0.0;
    for (double rth = 2.0; rth <= 8.0; rth += 2.0) {
        auto g = g0;
        mark_threat(g, sheep, {}, rth);
        const auto p = astar(g, {0.5, 0.5}, {29.5, 29.5}, w);
        REQUIRE(p.has_value());
        const double c = p->combined_cost(w);
        CHECK(c >= prev - 1e-9);
        prev = c;
    }
}
