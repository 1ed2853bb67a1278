// Command-line front end: batch runs, scenario suites, TSP/path queries and
// trajectory export for the shepherding simulator.

#include <cinttypes>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "herd/bench.hpp"
#include "herd/mission.hpp"
#include "herd/stats.hpp"

namespace fs = std::filesystem;
using namespace herd;

namespace {

struct RunArgs {
    std::string case_file;
    std::string method = "full";
    int dogs = 1;
    int runs = 20;
    std::uint64_t seed = 1;
    std::string out_dir = ".";
};

void write_metrics_csv(const std::vector<RunMetrics>& ms, const std::string& path) {
    std::FILE* f = std::fopen(path.c_str(), "wb");
    if (!f) throw std::runtime_error("cannot write " + path);
    std::fputs("seed,success,steps,max_path_length,total_path_length\n", f);
    for (const auto& m : ms)
        std::fprintf(f, "%" PRIu64 ",%d,%" PRId64 ",%.17g,%.17g\n", m.seed,
                     m.success ? 1 : 0, m.steps, m.max_path_length, m.total_path_length);
    std::fclose(f);
}

void append_summary_row(std::FILE* f, const std::string& label, const CaseSummary& cs) {
    std::fprintf(f, "%s,%.4f", label.c_str(), cs.sr);
    if (cs.steps)
        std::fprintf(f, ",%.2f,%.2f", cs.steps->mean, cs.steps->stddev);
    else
        std::fputs(",,", f);
    if (cs.max_path)
        std::fprintf(f, ",%.2f,%.2f", cs.max_path->mean, cs.max_path->stddev);
    else
        std::fputs(",,", f);
    if (cs.total_path)
        std::fprintf(f, ",%.2f,%.2f\n", cs.total_path->mean, cs.total_path->stddev);
    else
        std::fputs(",,\n", f);
}

constexpr const char* kSummaryHeader =
    "label,sr,steps_mean,steps_std,max_path_mean,max_path_std,total_path_mean,"
    "total_path_std\n";

int cmd_run(const RunArgs& a) {
    const auto spec = load_scenario(a.case_file);
    const Method method = parse_method(a.method);
    fs::create_directories(a.out_dir);

    const auto ms = run_case(spec, method, a.dogs, a.runs, a.seed);
    write_metrics_csv(ms, a.out_dir + "/metrics.csv");

    const auto cs = summarize(ms);
    std::FILE* f = std::fopen((a.out_dir + "/summary.csv").c_str(), "wb");
    if (!f) throw std::runtime_error("cannot write " + a.out_dir + "/summary.csv");
    std::fputs(kSummaryHeader, f);
    append_summary_row(f, fs::path(a.case_file).stem().string() + "-" + a.method, cs);
    std::fclose(f);

    std::printf("%s %s dogs=%d runs=%d: SR %.2f", a.case_file.c_str(), a.method.c_str(),
                a.dogs, a.runs, cs.sr);
    if (cs.steps) std::printf(", steps %.2f+-%.2f", cs.steps->mean, cs.steps->stddev);
    if (cs.max_path)
        std::printf(", path %.2f+-%.2f", cs.max_path->mean, cs.max_path->stddev);
    std::printf("\n");
    return 0;
}

std::vector<int> group_cases(int group) {
    switch (group) {
        case 1: return {1, 2, 3, 4, 5, 6};
        case 2: return {7, 8, 9, 10, 11, 12, 13};
        case 3: return {14, 15, 16, 17, 18, 19, 20};
    }
    throw std::invalid_argument("group must be 1, 2 or 3");
}

int cmd_suite(int group, const std::string& cases_dir, int dogs, int runs,
              std::uint64_t seed, const std::string& out_dir) {
    fs::create_directories(out_dir);
    const std::string out = out_dir + "/suite_group" + std::to_string(group) + ".csv";
    std::FILE* f = std::fopen(out.c_str(), "wb");
    if (!f) throw std::runtime_error("cannot write " + out);
    std::fputs(kSummaryHeader, f);

    for (int c : group_cases(group)) {
        char name[32];
        std::snprintf(name, sizeof name, "case%02d.json", c);
        const auto spec = load_scenario(cases_dir + "/" + name);
        for (Method m : {Method::Reactive, Method::TaskPlan, Method::Full}) {
            const auto ms = run_case(spec, m, dogs, runs, seed);
            const auto cs = summarize(ms);
            const std::string label =
                "case" + std::to_string(c) + "-" + method_name(m);
            append_summary_row(f, label, cs);
            std::printf("%-22s SR %.2f", label.c_str(), cs.sr);
            if (cs.steps)
                std::printf("  steps %.2f+-%.2f", cs.steps->mean, cs.steps->stddev);
            std::printf("\n");
            std::fflush(f);
        }
    }
    std::fclose(f);
    std::printf("wrote %s\n", out.c_str());
    return 0;
}

int cmd_solve_tsp(const std::string& case_file, int dogs, std::uint64_t seed) {
    auto spec = load_scenario(case_file);
    spec.seed = seed;
    if (static_cast<std::size_t>(dogs) > spec.dog_starts.size())
        throw std::invalid_argument("scenario provides too few dog starts");
    spec.dog_starts.resize(static_cast<std::size_t>(dogs));
    const auto world = generate_scenario(spec);
    const auto s = plan_mission(world, {}, {}, Method::Full);

    std::printf("sub-swarms: %zu\n", s.swarm_members.size());
    for (std::size_t q = 0; q < s.swarm_members.size(); ++q) {
        Vec2 lcm{0, 0};
        for (auto i : s.swarm_members[q]) lcm += world.sheep[i].pos;
        lcm = lcm / static_cast<double>(s.swarm_members[q].size());
        std::printf("  %zu: %zu sheep, lcm (%.2f, %.2f)\n", q,
                    s.swarm_members[q].size(), lcm.x, lcm.y);
    }
    for (std::size_t j = 0; j < s.dogs.size(); ++j) {
        std::printf("dog %zu route:", j);
        for (auto q : s.dogs[j].route) std::printf(" %zu", q);
        std::printf(" -> goal\n");
    }
    return 0;
}

int cmd_plan_path(const std::string& case_file, std::uint64_t seed, double fx, double fy,
                  double tx, double ty, double alpha2, double r_threat) {
    auto spec = load_scenario(case_file);
    spec.seed = seed;
    const auto world = generate_scenario(spec);
    auto grid = rasterize(world.env, 1.0);
    if (alpha2 > 0.0) {
        std::vector<Vec2> pos;
        for (const auto& sh : world.sheep) pos.push_back(sh.pos);
        mark_threat(grid, pos, {}, r_threat);
    }
    const auto p = astar(grid, {fx, fy}, {tx, ty}, {1.0, alpha2});
    if (!p) {
        std::fprintf(stderr, "no path from (%g, %g) to (%g, %g)\n", fx, fy, tx, ty);
        return 2;
    }
    const auto pruned = prune_path(*p, world.env);
    std::printf("raw: %zu waypoints, length %.4f, threat entries %.0f\n",
                p->waypoints.size(), p->length_cost,
                alpha2 > 0.0 ? p->threat_cost / alpha2 : 0.0);
    std::printf("pruned: %zu waypoints, length %.4f\n", pruned.waypoints.size(),
                pruned.length_cost);
    for (const auto& w : pruned.waypoints) std::printf("  %.4f %.4f\n", w.x, w.y);
    return 0;
}

int cmd_export(const RunArgs& a, const std::string& format, const std::string& out_file) {
    auto spec = load_scenario(a.case_file);
    spec.seed = a.seed;
    if (static_cast<std::size_t>(a.dogs) > spec.dog_starts.size())
        throw std::invalid_argument("scenario provides too few dog starts");
    spec.dog_starts.resize(static_cast<std::size_t>(a.dogs));
    const auto world = generate_scenario(spec);
    const auto rec = run_mission(world, {}, {}, parse_method(a.method), true);

    if (format == "csv")
        export_csv(rec, out_file);
    else if (format == "jsonl")
        export_jsonl(rec, out_file);
    else if (format == "svg")
        export_svg(rec, world.env, out_file);
    else
        throw std::invalid_argument("format must be csv, jsonl or svg");
    std::printf("%s run seed %" PRIu64 ": %s in %" PRId64 " steps, wrote %s\n",
                a.method.c_str(), a.seed, rec.metrics.success ? "success" : "failure",
                rec.metrics.steps, out_file.c_str());
    return 0;
}

int cmd_sweep(const RunArgs& a) {
    const auto spec = load_scenario(a.case_file);
    fs::create_directories(a.out_dir);
    const std::string out = a.out_dir + "/sweep.csv";
    std::FILE* f = std::fopen(out.c_str(), "wb");
    if (!f) throw std::runtime_error("cannot write " + out);
    std::fputs("r_threat,alpha2,sr,steps_mean,steps_std,max_path_mean,max_path_std\n", f);
    for (double rth = 4.0; rth <= 8.0; rth += 1.0) {
        for (double a2 = 0.0; a2 <= 100.0; a2 += 20.0) {
            MissionConfig cfg;
            cfg.r_threat = rth;
            cfg.weights.alpha2 = a2;
            const auto cs = summarize(
                run_case(spec, Method::Full, a.dogs, a.runs, a.seed, {}, cfg));
            std::fprintf(f, "%.0f,%.0f,%.4f", rth, a2, cs.sr);
            if (cs.steps)
                std::fprintf(f, ",%.2f,%.2f", cs.steps->mean, cs.steps->stddev);
            else
                std::fputs(",,", f);
            if (cs.max_path)
                std::fprintf(f, ",%.2f,%.2f\n", cs.max_path->mean, cs.max_path->stddev);
            else
                std::fputs(",,\n", f);
        }
    }
    std::fclose(f);
    std::printf("wrote %s\n", out.c_str());
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Swarm-shepherding simulator and mission planner"};
    app.require_subcommand(1);

    RunArgs ra;
    auto* run = app.add_subcommand("run", "Run one case and write metrics/summary CSVs");
    run->add_option("--case", ra.case_file, "Scenario JSON file")->required();
    run->add_option("--method", ra.method, "reactive|taskplan|full");
    run->add_option("--dogs", ra.dogs, "Number of sheepdogs (1 or 2)");
    run->add_option("--runs", ra.runs, "Independent runs");
    run->add_option("--seed", ra.seed, "Base seed");
    run->add_option("--out", ra.out_dir, "Output directory");

    int group = 1, suite_dogs = 1, suite_runs = 20;
    std::uint64_t suite_seed = 1;
    std::string cases_dir = "cases", suite_out = "suite_out";
    auto* suite = app.add_subcommand("suite", "Run every case of one benchmark group");
    suite->add_option("--group", group, "1 | 2 | 3")->required();
    suite->add_option("--cases", cases_dir, "Directory with caseNN.json files");
    suite->add_option("--dogs", suite_dogs, "Number of sheepdogs");
    suite->add_option("--runs", suite_runs, "Runs per case and method");
    suite->add_option("--seed", suite_seed, "Base seed");
    suite->add_option("--out", suite_out, "Output directory");

    std::string tsp_case;
    int tsp_dogs = 1;
    std::uint64_t tsp_seed = 1;
    auto* tsp = app.add_subcommand("solve-tsp", "Group a scenario and print the routes");
    tsp->add_option("--case", tsp_case, "Scenario JSON file")->required();
    tsp->add_option("--dogs", tsp_dogs, "Number of sheepdogs");
    tsp->add_option("--seed", tsp_seed, "Seed");

    std::string pp_case;
    std::uint64_t pp_seed = 1;
    std::vector<double> pp_from, pp_to;
    double pp_alpha2 = 0.0, pp_rth = 4.0;
    auto* pp = app.add_subcommand("plan-path", "Plan a single threat-aware path");
    pp->add_option("--case", pp_case, "Scenario JSON file")->required();
    pp->add_option("--seed", pp_seed, "Seed for the sheep layout");
    pp->add_option("--from", pp_from, "Start x y")->expected(2)->required();
    pp->add_option("--to", pp_to, "Goal x y")->expected(2)->required();
    pp->add_option("--alpha2", pp_alpha2, "Threat cost weight (0 disables threat)");
    pp->add_option("--r-threat", pp_rth, "Threat radius around each sheep");

    RunArgs ea;
    std::string format = "csv", out_file = "run.csv";
    auto* exp = app.add_subcommand("export", "Run once and export the trajectory");
    exp->add_option("--case", ea.case_file, "Scenario JSON file")->required();
    exp->add_option("--method", ea.method, "reactive|taskplan|full");
    exp->add_option("--dogs", ea.dogs, "Number of sheepdogs");
    exp->add_option("--seed", ea.seed, "Seed");
    exp->add_option("--format", format, "csv|jsonl|svg")->required();
    exp->add_option("--out", out_file, "Output file");

    RunArgs sa;
    auto* sweep = app.add_subcommand("sweep",
                                     "Threat radius / threat weight parameter sweep");
    sweep->add_option("--case", sa.case_file, "Scenario JSON file")->required();
    sweep->add_option("--dogs", sa.dogs, "Number of sheepdogs");
    sweep->add_option("--runs", sa.runs, "Runs per configuration");
    sweep->add_option("--seed", sa.seed, "Base seed");
    sweep->add_option("--out", sa.out_dir, "Output directory");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*run) return cmd_run(ra);
        if (*suite)
            return cmd_suite(group, cases_dir, suite_dogs, suite_runs, suite_seed, suite_out);
        if (*tsp) return cmd_solve_tsp(tsp_case, tsp_dogs, tsp_seed);
        if (*pp)
            return cmd_plan_path(pp_case, pp_seed, pp_from[0], pp_from[1], pp_to[0],
                                 pp_to[1], pp_alpha2, pp_rth);
        if (*exp) return cmd_export(ea, format, out_file);
        if (*sweep) return cmd_sweep(sa);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
