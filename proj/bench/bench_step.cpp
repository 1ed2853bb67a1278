// Compares the parallel sheep-force kernel against the serial reference and
// times a batch of independent mission runs.

#include <chrono>
#include <cstdio>
#include <vector>

#include "herd/bench.hpp"
#include "herd/flock.hpp"
#include "herd/rng.hpp"

using namespace herd;
using clk = std::chrono::steady_clock;

namespace {

double ms_since(clk::time_point t0) {
    return std::chrono::duration<double, std::milli>(clk::now() - t0).count();
}

WorldState random_world(std::size_t n_sheep, std::uint64_t seed) {
    WorldState w;
    w.env.width = 100;
    w.env.height = 100;
    w.env.goal = {90, 90};
    w.env.goal_radius = 15;
    w.seed = seed;
    rng::Stream rs(seed, 1);
    for (std::size_t i = 0; i < n_sheep; ++i)
        w.sheep.push_back({{rs.u01() * 100, rs.u01() * 100}, {0, 0}});
    w.dogs.push_back({{5, 5}, 1.5, 0.0});
    return w;
}

}  // namespace

int main() {
    const ModelParams params;

    std::printf("force kernel, serial vs parallel (100 evaluations each)\n");
    std::printf("%8s %12s %12s %8s %s\n", "N", "serial ms", "parallel ms", "speedup",
                "identical");
    for (std::size_t n : {100UL, 1000UL, 5000UL, 20000UL}) {
        const auto w = random_world(n, 42);
        std::vector<Vec2> a, b;

        auto t0 = clk::now();
        for (int r = 0; r < 100; ++r) compute_sheep_forces_serial(w, params, a);
        const double serial = ms_since(t0);

        t0 = clk::now();
        for (int r = 0; r < 100; ++r) compute_sheep_forces(w, params, b);
        const double parallel = ms_since(t0);

        bool same = a.size() == b.size();
        for (std::size_t i = 0; same && i < a.size(); ++i)
            same = a[i].x == b[i].x && a[i].y == b[i].y;

        std::printf("%8zu %12.2f %12.2f %7.2fx %s\n", n, serial, parallel,
                    serial / parallel, same ? "yes" : "NO");
        if (!same) return 1;
    }

    std::printf("\nbatch of 8 full-method missions (N=20, 50x50)\n");
    ScenarioSpec spec;
    spec.env.width = 50;
    spec.env.height = 50;
    spec.env.goal = {42, 42};
    spec.env.goal_radius = 9;
    spec.n_sheep = 20;
    spec.clusters = {{{15, 30}, 4.0, 10}, {{30, 15}, 4.0, 10}};
    spec.dog_starts = {{3, 3}};
    const auto t0 = clk::now();
    const auto ms = run_case(spec, Method::Full, 1, 8, 100);
    const double elapsed = ms_since(t0);
    int ok = 0;
    for (const auto& m : ms) ok += m.success ? 1 : 0;
    std::printf("%d/8 succeeded in %.1f ms total\n", ok, elapsed);
    return 0;
}
