#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "herd/vec2.hpp"

namespace herd {

// Shepherding-transformed TSP. City 0 is the fixed start (first dog); the
// last city is the fixed end (goal for single-dog, second dog for bi-dog
// where the goal sits at index Q+1).
struct TspInstance {
    std::vector<Vec2> city_pos;
    std::vector<std::vector<double>> cost;  // symmetric, zero diagonal
    int n_dogs = 1;
    int n_subswarms = 0;  // Q

    std::size_t size() const { return city_pos.size(); }
    std::size_t start() const { return 0; }
    std::size_t end() const { return city_pos.size() - 1; }
    std::size_t goal_city() const { return static_cast<std::size_t>(n_subswarms) + 1; }
};

struct Tour {
    std::vector<std::size_t> order;  // order.front()==start, order.back()==end
    double cost = 0.0;
};

struct MmasParams {
    int iterations = 600;
    int colony_size = 0;  // 0 = problem dimension
    double alpha = 1.0;   // pheromone exponent
    double gamma = 2.0;   // heuristic exponent
    double rho_evap = 0.02;
    // tau limits default to [1/D, 1] at solve time when unset (<=0).
    double tau_min = 0.0;
    double tau_max = 0.0;
    // Throws if any pheromone leaves [tau_min, tau_max] after an update.
    bool verify_clamp = false;
};

// Pairwise travel-cost callback (Euclidean or planned-path cost).
using CostFn = std::function<double(const Vec2&, const Vec2&)>;

double euclidean_cost(const Vec2& a, const Vec2& b);

TspInstance build_single_instance(const Vec2& dog, const std::vector<Vec2>& lcms,
                                  const Vec2& goal, const CostFn& cost_fn);
TspInstance build_bi_instance(const Vec2& dog1, const Vec2& dog2,
                              const std::vector<Vec2>& lcms, const Vec2& goal,
                              const CostFn& cost_fn);

// Total cost of an endpoint-fixed permutation; throws on invalid tours.
double tour_cost(const TspInstance& inst, const std::vector<std::size_t>& order);

// MAX-MIN Ant System: iteration-best deposit, clamped pheromones, best-so-far
// result. Optional per-iteration best-cost curve for the CLI.
Tour mmas_solve(const TspInstance& inst, const MmasParams& params, std::uint64_t seed,
                std::vector<double>* best_curve = nullptr);

// Exhaustive oracle; rejects instances with more than 10 interior cities.
// Ties break toward the lexicographically smallest order.
Tour brute_force_tour(const TspInstance& inst);

// Splits a bi-dog tour at the goal city: route1 = prefix ending at the goal,
// route2 = reversed suffix (dog2 first) with the goal appended.
struct BiRoutes {
    std::vector<std::size_t> route1;
    std::vector<std::size_t> route2;
};
BiRoutes split_bi_tour(const Tour& tour, int n_subswarms);

}  // namespace herd
