#include "herd/bench.hpp"

#include <algorithm>
#include <cinttypes>
#include <cstdio>
#include <fstream>
#include <map>
#include <stdexcept>

namespace herd {

Method parse_method(const std::string& name) {
    if (name == "reactive") return Method::Reactive;
    if (name == "taskplan") return Method::TaskPlan;
    if (name == "full") return Method::Full;
    throw std::invalid_argument("unknown method: " + name +
                                " (expected reactive|taskplan|full)");
}

std::string method_name(Method m) {
    switch (m) {
        case Method::Reactive: return "reactive";
        case Method::TaskPlan: return "taskplan";
        case Method::Full: return "full";
    }
    return "?";
}

std::vector<RunMetrics> run_case(const ScenarioSpec& scenario, Method method, int n_dogs,
                                 int runs, std::uint64_t base_seed, const ModelParams& params,
                                 const MissionConfig& cfg) {
    if (n_dogs < 1 || n_dogs > 2) throw std::invalid_argument("run_case: n_dogs must be 1 or 2");
    if (static_cast<std::size_t>(n_dogs) > scenario.dog_starts.size())
        throw std::invalid_argument("run_case: scenario provides too few dog starts");

    std::vector<RunMetrics> out(static_cast<std::size_t>(std::max(0, runs)));
#pragma omp parallel for schedule(dynamic)
    for (int k = 0; k < runs; ++k) {
        ScenarioSpec spec = scenario;
        spec.seed = base_seed + static_cast<std::uint64_t>(k);
        spec.dog_starts.resize(static_cast<std::size_t>(n_dogs));
        try {
            const WorldState w = generate_scenario(spec);
            out[static_cast<std::size_t>(k)] =
                run_mission(w, params, cfg, method, /*record_trajectory=*/false).metrics;
        } catch (const std::exception&) {
            RunMetrics m;
            m.success = false;
            m.seed = spec.seed;
            out[static_cast<std::size_t>(k)] = m;
        }
        out[static_cast<std::size_t>(k)].seed = spec.seed;
    }
    return out;
}

CaseSummary summarize(const std::vector<RunMetrics>& metrics) {
    CaseSummary s;
    if (metrics.empty()) return s;
    std::vector<double> steps, max_path, total_path;
    std::size_t ok = 0;
    for (const auto& m : metrics) {
        if (!m.success) continue;
        ++ok;
        steps.push_back(static_cast<double>(m.steps));
        max_path.push_back(m.max_path_length);
        total_path.push_back(m.total_path_length);
    }
    s.sr = static_cast<double>(ok) / static_cast<double>(metrics.size());
    if (ok > 0) {
        s.steps = sample_stats(steps);
        s.max_path = sample_stats(max_path);
        s.total_path = sample_stats(total_path);
    }
    return s;
}

namespace {

void write_row(std::FILE* f, const StepRecord& r) {
    std::fprintf(f, "%" PRId64 ",%c,%d,%.17g,%.17g,%d,%d\n", r.t, r.kind, r.id, r.x, r.y,
                 r.mode, r.q);
}

}  // namespace

void export_csv(const RunRecord& rec, const std::string& path) {
    std::FILE* f = std::fopen(path.c_str(), "wb");
    if (!f) throw std::runtime_error("export_csv: cannot write " + path);
    std::fputs("t,kind,id,x,y,mode,q\n", f);
    for (const auto& r : rec.rows) write_row(f, r);
    std::fclose(f);
}

void export_jsonl(const RunRecord& rec, const std::string& path) {
    std::FILE* f = std::fopen(path.c_str(), "wb");
    if (!f) throw std::runtime_error("export_jsonl: cannot write " + path);
    for (const auto& r : rec.rows) {
        std::fprintf(f,
                     "{\"t\":%" PRId64 ",\"kind\":\"%c\",\"id\":%d,\"x\":%.17g,"
                     "\"y\":%.17g,\"mode\":%d,\"q\":%d}\n",
                     r.t, r.kind, r.id, r.x, r.y, r.mode, r.q);
    }
    std::fclose(f);
}

std::vector<StepRecord> parse_trajectory_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("parse_trajectory_csv: cannot open " + path);
    std::vector<StepRecord> rows;
    std::string line;
    std::getline(in, line);  // header
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        StepRecord r{};
        char kind;
        if (std::sscanf(line.c_str(), "%" SCNd64 " ,%c,%d,%lg,%lg,%d,%d", &r.t, &kind, &r.id,
                        &r.x, &r.y, &r.mode, &r.q) != 7 &&
            std::sscanf(line.c_str(), "%" SCNd64 ",%c,%d,%lg,%lg,%d,%d", &r.t, &kind, &r.id,
                        &r.x, &r.y, &r.mode, &r.q) != 7)
            throw std::runtime_error("parse_trajectory_csv: bad row: " + line);
        r.kind = kind;
        rows.push_back(r);
    }
    return rows;
}

void export_svg(const RunRecord& rec, const Environment& env, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("export_svg: cannot write " + path);

    const double scale = 8.0;
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << env.width * scale
        << "\" height=\"" << env.height * scale << "\" viewBox=\"0 0 " << env.width << " "
        << env.height << "\">\n";
    out << "<rect width=\"" << env.width << "\" height=\"" << env.height
        << "\" fill=\"white\"/>\n";
    for (const auto& o : env.obstacles) {
        out << "<rect x=\"" << o.lo.x << "\" y=\"" << o.lo.y << "\" width=\""
            << o.hi.x - o.lo.x << "\" height=\"" << o.hi.y - o.lo.y << "\" fill=\"black\"/>\n";
    }
    out << "<circle cx=\"" << env.goal.x << "\" cy=\"" << env.goal.y << "\" r=\""
        << env.goal_radius << "\" fill=\"none\" stroke=\"blue\" stroke-width=\"0.3\"/>\n";

    // One polyline per agent; sheep grey, dogs blue.
    std::map<std::pair<char, int>, std::vector<std::pair<double, double>>> tracks;
    for (const auto& r : rec.rows) tracks[{r.kind, r.id}].emplace_back(r.x, r.y);
    for (const auto& [key, pts] : tracks) {
        out << "<polyline fill=\"none\" stroke=\""
            << (key.first == 'S' ? "#999999" : "#1f4fd8") << "\" stroke-width=\""
            << (key.first == 'S' ? 0.1 : 0.25) << "\" points=\"";
        for (const auto& [x, y] : pts) out << x << "," << y << " ";
        out << "\"/>\n";
    }
    out << "</svg>\n";
}

}  // namespace herd
