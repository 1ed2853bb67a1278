#pragma once

#include <optional>
#include <string>
#include <vector>

#include "herd/mission.hpp"
#include "herd/stats.hpp"

namespace herd {

struct CaseSummary {
    double sr = 0.0;
    // Step/path statistics over successful runs only; absent when none succeed.
    std::optional<SampleStats> steps;
    std::optional<SampleStats> max_path;
    std::optional<SampleStats> total_path;
};

Method parse_method(const std::string& name);  // reactive|taskplan|full
std::string method_name(Method m);

// Executes `runs` independent simulations with seeds base_seed..base_seed+runs-1.
// Planner failures are recorded as unsuccessful runs. Results are ordered by seed.
std::vector<RunMetrics> run_case(const ScenarioSpec& scenario, Method method, int n_dogs,
                                 int runs, std::uint64_t base_seed,
                                 const ModelParams& params = {},
                                 const MissionConfig& cfg = {});

CaseSummary summarize(const std::vector<RunMetrics>& metrics);

// Trajectory export. Rows are (t, agent_kind, agent_id, x, y, mode, subtask_q).
void export_csv(const RunRecord& rec, const std::string& path);
void export_jsonl(const RunRecord& rec, const std::string& path);
void export_svg(const RunRecord& rec, const Environment& env, const std::string& path);
std::vector<StepRecord> parse_trajectory_csv(const std::string& path);

}  // namespace herd
