#include "herd/planner.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <queue>
#include <tuple>

namespace herd {

namespace {

double point_segment_dist(const Vec2& p, const Vec2& a, const Vec2& b) {
    const Vec2 ab = b - a;
    const double l2 = ab.norm2();
    if (l2 == 0.0) return distance(p, a);
    const double t = std::clamp((p - a).dot(ab) / l2, 0.0, 1.0);
    return distance(p, a + ab * t);
}

}  // namespace

bool ThreatField::segment_threatened(const Vec2& a, const Vec2& b) const {
    for (const auto& c : centers)
        if (point_segment_dist(c, a, b) <= radius) return true;
    return false;
}

void mark_threat(GridMap& grid, std::span<const Vec2> sheep_positions,
                 std::span<const std::size_t> exclude, double r_threat) {
    std::vector<bool> skip(sheep_positions.size(), false);
    for (std::size_t i : exclude)
        if (i < skip.size()) skip[i] = true;

    const double r2 = r_threat * r_threat;
    for (std::size_t i = 0; i < sheep_positions.size(); ++i) {
        if (skip[i]) continue;
        const Vec2 p = sheep_positions[i];
        const int x0 = std::max(0, static_cast<int>((p.x - r_threat) / grid.cell_size) - 1);
        const int x1 = std::min(grid.cols - 1,
                                static_cast<int>((p.x + r_threat) / grid.cell_size) + 1);
        const int y0 = std::max(0, static_cast<int>((p.y - r_threat) / grid.cell_size) - 1);
        const int y1 = std::min(grid.rows - 1,
                                static_cast<int>((p.y + r_threat) / grid.cell_size) + 1);
        for (int cy = y0; cy <= y1; ++cy)
            for (int cx = x0; cx <= x1; ++cx)
                if ((grid.cell_center(cx, cy) - p).norm2() <= r2)
                    grid.threat[grid.index(cx, cy)] = 1;
    }
}

void clear_threat_near(GridMap& grid, const Vec2& center, double radius) {
    const double r2 = radius * radius;
    const int x0 = std::max(0, static_cast<int>((center.x - radius) / grid.cell_size) - 1);
    const int x1 =
        std::min(grid.cols - 1, static_cast<int>((center.x + radius) / grid.cell_size) + 1);
    const int y0 = std::max(0, static_cast<int>((center.y - radius) / grid.cell_size) - 1);
    const int y1 =
        std::min(grid.rows - 1, static_cast<int>((center.y + radius) / grid.cell_size) + 1);
    for (int cy = y0; cy <= y1; ++cy)
        for (int cx = x0; cx <= x1; ++cx)
            if ((grid.cell_center(cx, cy) - center).norm2() <= r2)
                grid.threat[grid.index(cx, cy)] = 0;
}

std::optional<PlannedPath> astar(const GridMap& grid, const Vec2& start, const Vec2& goal,
                                 const CostWeights& weights) {
    const int sx = grid.cell_x(start), sy = grid.cell_y(start);
    const int gx = grid.cell_x(goal), gy = grid.cell_y(goal);
    if (grid.is_blocked(sx, sy) || grid.is_blocked(gx, gy)) return std::nullopt;

    const int n = grid.cols * grid.rows;
    const int start_idx = grid.index(sx, sy);
    const int goal_idx = grid.index(gx, gy);

    if (start_idx == goal_idx) {
        PlannedPath p;
        p.waypoints = {grid.cell_center(sx, sy)};
        return p;
    }

    const Vec2 goal_c = grid.cell_center(gx, gy);
    auto heuristic = [&](int cx, int cy) {
        return weights.alpha1 * distance(grid.cell_center(cx, cy), goal_c);
    };

    std::vector<double> g(n, std::numeric_limits<double>::infinity());
    std::vector<int> parent(n, -1);
    std::vector<bool> closed(n, false);

    // (f, h, cell index) with ties broken by smaller h, then smaller index.
    using Node = std::tuple<double, double, int>;
    std::priority_queue<Node, std::vector<Node>, std::greater<>> open;

    g[start_idx] = 0.0;
    open.emplace(heuristic(sx, sy), heuristic(sx, sy), start_idx);

    static constexpr int dx[8] = {1, -1, 0, 0, 1, 1, -1, -1};
    static constexpr int dy[8] = {0, 0, 1, -1, 1, -1, 1, -1};
    const double diag = std::numbers::sqrt2 * grid.cell_size;

    while (!open.empty()) {
        const auto [f, h, idx] = open.top();
        open.pop();
        if (closed[idx]) continue;
        closed[idx] = true;
        if (idx == goal_idx) break;

        const int cx = idx % grid.cols;
        const int cy = idx / grid.cols;
        for (int k = 0; k < 8; ++k) {
            const int nx = cx + dx[k], ny = cy + dy[k];
            if (!grid.in_bounds(nx, ny) || grid.is_blocked(nx, ny)) continue;
            // Diagonal moves need both adjacent orthogonal cells free.
            if (dx[k] != 0 && dy[k] != 0 &&
                (grid.is_blocked(cx + dx[k], cy) || grid.is_blocked(cx, cy + dy[k])))
                continue;
            const int nidx = grid.index(nx, ny);
            if (closed[nidx]) continue;
            const double step = (k < 4 ? grid.cell_size : diag);
            const double edge =
                weights.alpha1 * step + (grid.is_threat(nx, ny) ? weights.alpha2 : 0.0);
            const double ng = g[idx] + edge;
            if (ng < g[nidx]) {
                g[nidx] = ng;
                parent[nidx] = idx;
                const double nh = heuristic(nx, ny);
                open.emplace(ng + nh, nh, nidx);
            }
        }
    }

    if (!closed[goal_idx]) return std::nullopt;

    std::vector<int> cells;
    for (int c = goal_idx; c != -1; c = parent[c]) cells.push_back(c);
    std::reverse(cells.begin(), cells.end());

    PlannedPath p;
    p.waypoints.reserve(cells.size());
    for (int c : cells) p.waypoints.push_back(grid.cell_center(c % grid.cols, c / grid.cols));
    for (std::size_t k = 1; k < cells.size(); ++k) {
        p.length_cost += distance(p.waypoints[k - 1], p.waypoints[k]);
        if (grid.threat[cells[k]] != 0) p.threat_cost += 1.0;
    }
    return p;
}

double evaluate_path_cost(const PlannedPath& path, const CostWeights& weights,
                          const ThreatField& threat) {
    if (path.waypoints.size() < 2) return 0.0;
    double length = 0.0;
    double threatened = 0.0;
    for (std::size_t k = 1; k < path.waypoints.size(); ++k) {
        length += distance(path.waypoints[k - 1], path.waypoints[k]);
        if (threat.segment_threatened(path.waypoints[k - 1], path.waypoints[k]))
            threatened += 1.0;
    }
    return weights.alpha1 * length + weights.alpha2 * threatened;
}

PlannedPath prune_path(const PlannedPath& path, const Environment& env) {
    if (path.waypoints.size() <= 2) return path;

    PlannedPath out;
    out.waypoints.push_back(path.waypoints.front());
    std::size_t i = 0;
    const std::size_t last = path.waypoints.size() - 1;
    while (i < last) {
        // Extend as far as line of sight allows from node i.
        std::size_t far = i + 1;
        for (std::size_t j = i + 2; j <= last; ++j) {
            if (segment_collides(path.waypoints[i], path.waypoints[j], env)) break;
            far = j;
        }
        out.waypoints.push_back(path.waypoints[far]);
        i = far;
    }
    for (std::size_t k = 1; k < out.waypoints.size(); ++k)
        out.length_cost += distance(out.waypoints[k - 1], out.waypoints[k]);
    // Threat is a search-time quantity; callers re-evaluate continuously.
    out.threat_cost = 0.0;
    return out;
}

}  // namespace herd
