#include "herd/tsp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "herd/rng.hpp"

namespace herd {

namespace {

constexpr double kEtaCeiling = 1e12;  // heuristic cap for zero-cost edges

std::vector<std::vector<double>> build_cost_matrix(const std::vector<Vec2>& cities,
                                                   const CostFn& cost_fn) {
    const std::size_t n = cities.size();
    std::vector<std::vector<double>> c(n, std::vector<double>(n, 0.0));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            const double d = cost_fn(cities[i], cities[j]);
            if (!std::isfinite(d) || d < 0.0)
                throw std::runtime_error("tsp: unreachable or invalid cost between cities " +
                                         std::to_string(i) + " and " + std::to_string(j));
            c[i][j] = d;
            c[j][i] = d;
        }
    }
    return c;
}

void validate_order(const TspInstance& inst, const std::vector<std::size_t>& order) {
    if (order.size() != inst.size() || order.front() != inst.start() ||
        order.back() != inst.end())
        throw std::invalid_argument("tsp: order is not an endpoint-fixed permutation");
    std::vector<bool> seen(inst.size(), false);
    for (std::size_t c : order) {
        if (c >= inst.size() || seen[c])
            throw std::invalid_argument("tsp: order is not a permutation");
        seen[c] = true;
    }
}

}  // namespace

double euclidean_cost(const Vec2& a, const Vec2& b) { return distance(a, b); }

TspInstance build_single_instance(const Vec2& dog, const std::vector<Vec2>& lcms,
                                  const Vec2& goal, const CostFn& cost_fn) {
    if (lcms.empty()) throw std::invalid_argument("build_single_instance: no sub-swarms");
    TspInstance inst;
    inst.n_dogs = 1;
    inst.n_subswarms = static_cast<int>(lcms.size());
    inst.city_pos.push_back(dog);
    inst.city_pos.insert(inst.city_pos.end(), lcms.begin(), lcms.end());
    inst.city_pos.push_back(goal);
    inst.cost = build_cost_matrix(inst.city_pos, cost_fn);
    return inst;
}

TspInstance build_bi_instance(const Vec2& dog1, const Vec2& dog2,
                              const std::vector<Vec2>& lcms, const Vec2& goal,
                              const CostFn& cost_fn) {
    if (lcms.empty()) throw std::invalid_argument("build_bi_instance: no sub-swarms");
    TspInstance inst;
    inst.n_dogs = 2;
    inst.n_subswarms = static_cast<int>(lcms.size());
    inst.city_pos.push_back(dog1);
    inst.city_pos.insert(inst.city_pos.end(), lcms.begin(), lcms.end());
    inst.city_pos.push_back(goal);
    inst.city_pos.push_back(dog2);
    inst.cost = build_cost_matrix(inst.city_pos, cost_fn);
    return inst;
}

double tour_cost(const TspInstance& inst, const std::vector<std::size_t>& order) {
    validate_order(inst, order);
    double total = 0.0;
    for (std::size_t k = 0; k + 1 < order.size(); ++k)
        total += inst.cost[order[k]][order[k + 1]];
    return total;
}

Tour mmas_solve(const TspInstance& inst, const MmasParams& params, std::uint64_t seed,
                std::vector<double>* best_curve) {
    const std::size_t n = inst.size();
    if (n < 3) throw std::invalid_argument("mmas_solve: degenerate instance");

    const double dim = static_cast<double>(n);
    const double tau_max = params.tau_max > 0.0 ? params.tau_max : 1.0;
    const double tau_min = params.tau_min > 0.0 ? params.tau_min : 1.0 / dim;
    const int colony = params.colony_size > 0 ? params.colony_size : static_cast<int>(n);

    // eta = 1/C with a finite ceiling for zero-cost edges.
    std::vector<std::vector<double>> eta(n, std::vector<double>(n, 0.0));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (i != j) eta[i][j] = inst.cost[i][j] > 0.0
                                        ? std::min(kEtaCeiling, 1.0 / inst.cost[i][j])
                                        : kEtaCeiling;

    std::vector<std::vector<double>> tau(n, std::vector<double>(n, tau_max));

    // Interior cities: everything except the fixed endpoints.
    std::vector<std::size_t> interior;
    for (std::size_t c = 1; c + 1 < n; ++c) interior.push_back(c);

    Tour best;
    best.cost = std::numeric_limits<double>::infinity();

    std::vector<std::vector<std::size_t>> ant_orders(colony);
    std::vector<double> ant_costs(colony);

    for (int it = 0; it < params.iterations; ++it) {
#pragma omp parallel for schedule(static)
        for (int a = 0; a < colony; ++a) {
            rng::Stream rs(seed, rng::kMmasStream +
                                     static_cast<std::uint64_t>(it) * colony + a);
            std::vector<std::size_t> order;
            order.reserve(n);
            order.push_back(inst.start());
            std::vector<std::size_t> remaining = interior;
            std::size_t cur = inst.start();
            while (!remaining.empty()) {
                std::vector<double> w(remaining.size());
                double wsum = 0.0;
                for (std::size_t k = 0; k < remaining.size(); ++k) {
                    w[k] = std::pow(tau[cur][remaining[k]], params.alpha) *
                           std::pow(eta[cur][remaining[k]], params.gamma);
                    wsum += w[k];
                }
                std::size_t pick;
                if (!(wsum > 0.0) || !std::isfinite(wsum)) {
                    pick = rs.below(remaining.size());  // underflow fallback
                } else {
                    const double r = rs.u01() * wsum;
                    double acc = 0.0;
                    pick = remaining.size() - 1;
                    for (std::size_t k = 0; k < remaining.size(); ++k) {
                        acc += w[k];
                        if (r < acc) {
                            pick = k;
                            break;
                        }
                    }
                }
                cur = remaining[pick];
                order.push_back(cur);
                remaining.erase(remaining.begin() + static_cast<std::ptrdiff_t>(pick));
            }
            order.push_back(inst.end());
            double cost = 0.0;
            for (std::size_t k = 0; k + 1 < order.size(); ++k)
                cost += inst.cost[order[k]][order[k + 1]];
            ant_orders[a] = std::move(order);
            ant_costs[a] = cost;
        }

        int it_best = 0;
        for (int a = 1; a < colony; ++a)
            if (ant_costs[a] < ant_costs[it_best]) it_best = a;

        if (ant_costs[it_best] < best.cost) {
            best.cost = ant_costs[it_best];
            best.order = ant_orders[it_best];
        }

        // Evaporate everywhere, deposit on the iteration-best edges, clamp.
        const double deposit = 1.0 / std::max(ant_costs[it_best], 1e-300);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) tau[i][j] *= (1.0 - params.rho_evap);
        const auto& bo = ant_orders[it_best];
        for (std::size_t k = 0; k + 1 < bo.size(); ++k) {
            tau[bo[k]][bo[k + 1]] += deposit;
            tau[bo[k + 1]][bo[k]] += deposit;
        }
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                tau[i][j] = std::clamp(tau[i][j], tau_min, tau_max);

        if (params.verify_clamp) {
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = 0; j < n; ++j)
                    if (tau[i][j] < tau_min || tau[i][j] > tau_max)
                        throw std::logic_error("mmas_solve: pheromone left its clamp range");
        }

        if (best_curve) best_curve->push_back(best.cost);
    }
    return best;
}

Tour brute_force_tour(const TspInstance& inst) {
    const std::size_t n = inst.size();
    if (n < 3) throw std::invalid_argument("brute_force_tour: degenerate instance");
    if (n - 2 > 10) throw std::invalid_argument("brute_force_tour: instance too large");

    std::vector<std::size_t> interior;
    for (std::size_t c = 1; c + 1 < n; ++c) interior.push_back(c);
    std::sort(interior.begin(), interior.end());

    Tour best;
    best.cost = std::numeric_limits<double>::infinity();
    do {
        double cost = inst.cost[inst.start()][interior.front()];
        for (std::size_t k = 0; k + 1 < interior.size(); ++k)
            cost += inst.cost[interior[k]][interior[k + 1]];
        cost += inst.cost[interior.back()][inst.end()];
        // Strict improvement keeps the lexicographically smallest optimum.
        if (cost < best.cost) {
            best.cost = cost;
            best.order.clear();
            best.order.push_back(inst.start());
            best.order.insert(best.order.end(), interior.begin(), interior.end());
            best.order.push_back(inst.end());
        }
    } while (std::next_permutation(interior.begin(), interior.end()));
    return best;
}

BiRoutes split_bi_tour(const Tour& tour, int n_subswarms) {
    const std::size_t goal = static_cast<std::size_t>(n_subswarms) + 1;
    const auto it = std::find(tour.order.begin(), tour.order.end(), goal);
    if (it == tour.order.end())
        throw std::invalid_argument("split_bi_tour: goal city missing from tour");

    BiRoutes r;
    r.route1.assign(tour.order.begin(), it + 1);
    r.route2.assign(it + 1, tour.order.end());
    std::reverse(r.route2.begin(), r.route2.end());
    r.route2.push_back(goal);
    return r;
}

}  // namespace herd
