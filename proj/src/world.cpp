#include "herd/world.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "herd/rng.hpp"
#include "json.hpp"

namespace herd {

namespace {

// Liang-Barsky style slab clipping of segment against a closed AABB.
bool segment_hits_rect(const Vec2& p0, const Vec2& p1, const Obstacle& r) {
    const Vec2 d = p1 - p0;
    double t0 = 0.0, t1 = 1.0;

    auto clip = [&](double p, double q) {
        // p*t <= q half-plane
        if (p == 0.0) return q >= 0.0;
        const double t = q / p;
        if (p < 0.0) {
            if (t > t1) return false;
            if (t > t0) t0 = t;
        } else {
            if (t < t0) return false;
            if (t < t1) t1 = t;
        }
        return true;
    };

    return clip(-d.x, p0.x - r.lo.x) && clip(d.x, r.hi.x - p0.x) &&
           clip(-d.y, p0.y - r.lo.y) && clip(d.y, r.hi.y - p0.y);
}

}  // namespace

bool segment_collides(const Vec2& p0, const Vec2& p1, const Environment& env,
                      double inflation) {
    for (const auto& o : env.obstacles) {
        if (segment_hits_rect(p0, p1, o.inflated(inflation))) return true;
    }
    return false;
}

GridMap rasterize(const Environment& env, double cell_size) {
    if (!(cell_size > 0.0)) throw std::invalid_argument("rasterize: cell_size must be > 0");
    GridMap g;
    g.cell_size = cell_size;
    g.cols = static_cast<int>(std::ceil(env.width / cell_size));
    g.rows = static_cast<int>(std::ceil(env.height / cell_size));
    g.blocked.assign(static_cast<std::size_t>(g.cols) * g.rows, 0);
    g.threat.assign(static_cast<std::size_t>(g.cols) * g.rows, 0);

    for (const auto& o : env.obstacles) {
        // Candidate cell range, then an open-interval overlap test per cell.
        const int x0 = std::max(0, static_cast<int>(std::floor(o.lo.x / cell_size)));
        const int x1 = std::min(g.cols - 1, static_cast<int>(std::floor(o.hi.x / cell_size)));
        const int y0 = std::max(0, static_cast<int>(std::floor(o.lo.y / cell_size)));
        const int y1 = std::min(g.rows - 1, static_cast<int>(std::floor(o.hi.y / cell_size)));
        for (int cy = y0; cy <= y1; ++cy) {
            for (int cx = x0; cx <= x1; ++cx) {
                const double cx0 = cx * cell_size, cx1 = (cx + 1) * cell_size;
                const double cy0 = cy * cell_size, cy1 = (cy + 1) * cell_size;
                const bool overlap =
                    cx0 < o.hi.x && cx1 > o.lo.x && cy0 < o.hi.y && cy1 > o.lo.y;
                if (overlap) g.blocked[g.index(cx, cy)] = 1;
            }
        }
    }
    return g;
}

WorldState generate_scenario(const ScenarioSpec& spec) {
    int total = 0;
    for (const auto& c : spec.clusters) total += c.count;
    if (total != spec.n_sheep)
        throw std::runtime_error("generate_scenario: cluster counts do not sum to n_sheep");

    constexpr int kMaxAttempts = 1000;

    WorldState w;
    w.env = spec.env;
    w.seed = spec.seed;
    w.sheep.reserve(spec.n_sheep);

    int sheep_idx = 0;
    for (std::size_t ci = 0; ci < spec.clusters.size(); ++ci) {
        const Cluster& c = spec.clusters[ci];
        for (int k = 0; k < c.count; ++k, ++sheep_idx) {
            rng::Stream rs(spec.seed, rng::kScenarioStream + sheep_idx);
            bool placed = false;
            for (int attempt = 0; attempt < kMaxAttempts; ++attempt) {
                // Uniform in the disc via rejection against the unit square.
                const double ux = 2.0 * rs.u01() - 1.0;
                const double uy = 2.0 * rs.u01() - 1.0;
                if (ux * ux + uy * uy > 1.0) continue;
                const Vec2 p = c.center + Vec2{ux, uy} * c.radius;
                if (!spec.env.inside(p) || spec.env.in_obstacle(p)) continue;
                w.sheep.push_back({p, {0.0, 0.0}});
                placed = true;
                break;
            }
            if (!placed) {
                std::ostringstream os;
                os << "generate_scenario: infeasible cluster " << ci
                   << " (no obstacle-free sample after " << kMaxAttempts << " attempts)";
                throw std::runtime_error(os.str());
            }
        }
    }

    for (const auto& d : spec.dog_starts) w.dogs.push_back({d, 1.5, 0.0});
    return w;
}

using nlohmann::json;

ScenarioSpec scenario_from_json_text(const std::string& text) {
    const json j = json::parse(text);
    ScenarioSpec s;
    s.env.width = j.at("width").get<double>();
    s.env.height = j.at("height").get<double>();
    s.env.goal = {j.at("goal").at("x").get<double>(), j.at("goal").at("y").get<double>()};
    s.env.goal_radius = j.at("goal").at("radius").get<double>();
    for (const auto& o : j.value("obstacles", json::array())) {
        s.env.obstacles.push_back({{o.at("xmin").get<double>(), o.at("ymin").get<double>()},
                                   {o.at("xmax").get<double>(), o.at("ymax").get<double>()}});
    }
    for (const auto& c : j.value("clusters", json::array())) {
        s.clusters.push_back({{c.at("cx").get<double>(), c.at("cy").get<double>()},
                              c.at("r").get<double>(),
                              c.at("count").get<int>()});
        s.n_sheep += s.clusters.back().count;
    }
    for (const auto& d : j.value("dogs", json::array())) {
        s.dog_starts.push_back({d.at("x").get<double>(), d.at("y").get<double>()});
    }
    s.seed = j.value("seed", 0ULL);
    return s;
}

std::string scenario_to_json_text(const ScenarioSpec& spec) {
    json j;
    j["width"] = spec.env.width;
    j["height"] = spec.env.height;
    j["goal"] = {{"x", spec.env.goal.x}, {"y", spec.env.goal.y}, {"radius", spec.env.goal_radius}};
    j["obstacles"] = json::array();
    for (const auto& o : spec.env.obstacles) {
        j["obstacles"].push_back(
            {{"xmin", o.lo.x}, {"ymin", o.lo.y}, {"xmax", o.hi.x}, {"ymax", o.hi.y}});
    }
    j["clusters"] = json::array();
    for (const auto& c : spec.clusters) {
        j["clusters"].push_back(
            {{"cx", c.center.x}, {"cy", c.center.y}, {"r", c.radius}, {"count", c.count}});
    }
    j["dogs"] = json::array();
    for (const auto& d : spec.dog_starts) j["dogs"].push_back({{"x", d.x}, {"y", d.y}});
    j["seed"] = spec.seed;
    return j.dump(2);
}

ScenarioSpec load_scenario(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open scenario file: " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return scenario_from_json_text(ss.str());
}

void save_scenario(const ScenarioSpec& spec, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write scenario file: " + path);
    out << scenario_to_json_text(spec) << "\n";
}

}  // namespace herd
