#include "herd/grouping.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace herd {

namespace {

class UnionFind {
  public:
    explicit UnionFind(std::size_t n) : parent_(n), rank_(n, 0) {
        std::iota(parent_.begin(), parent_.end(), 0);
    }
    std::size_t find(std::size_t x) {
        while (parent_[x] != x) {
            parent_[x] = parent_[parent_[x]];
            x = parent_[x];
        }
        return x;
    }
    void merge(std::size_t a, std::size_t b) {
        a = find(a);
        b = find(b);
        if (a == b) return;
        if (rank_[a] < rank_[b]) std::swap(a, b);
        parent_[b] = a;
        if (rank_[a] == rank_[b]) ++rank_[a];
    }

  private:
    std::vector<std::size_t> parent_;
    std::vector<std::size_t> rank_;
};

}  // namespace

std::vector<SubSwarm> group_sheep(const std::vector<Vec2>& positions, double r_cohesion) {
    const std::size_t n = positions.size();
    if (n == 0) throw std::invalid_argument("group_sheep: empty swarm");
    if (!(r_cohesion > 0.0)) throw std::invalid_argument("group_sheep: r_cohesion must be > 0");

    UnionFind uf(n);
    const double r2 = r_cohesion * r_cohesion;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if ((positions[i] - positions[j]).norm2() <= r2) uf.merge(i, j);

    // Collect components keyed by root, members in index order.
    std::vector<std::vector<std::size_t>> comps;
    std::vector<std::size_t> root_slot(n, std::numeric_limits<std::size_t>::max());
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t r = uf.find(i);
        if (root_slot[r] == std::numeric_limits<std::size_t>::max()) {
            root_slot[r] = comps.size();
            comps.emplace_back();
        }
        comps[root_slot[r]].push_back(i);
    }

    // Deterministic order: ascending distance of the closest member to sheep 0.
    std::vector<double> key(comps.size());
    for (std::size_t c = 0; c < comps.size(); ++c) {
        double best = std::numeric_limits<double>::infinity();
        for (std::size_t i : comps[c])
            best = std::min(best, (positions[i] - positions[0]).norm2());
        key[c] = best;
    }
    std::vector<std::size_t> order(comps.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        if (key[a] != key[b]) return key[a] < key[b];
        return comps[a][0] < comps[b][0];  // tie-break on smallest member index
    });

    std::vector<SubSwarm> result;
    result.reserve(comps.size());
    for (std::size_t c : order) {
        SubSwarm s;
        s.members = std::move(comps[c]);
        s.lcm = compute_lcm(s, positions);
        result.push_back(std::move(s));
    }
    return result;
}

Vec2 compute_lcm(const SubSwarm& sub, const std::vector<Vec2>& positions) {
    if (sub.members.empty()) throw std::invalid_argument("compute_lcm: empty sub-swarm");
    Vec2 sum{0.0, 0.0};
    for (std::size_t i : sub.members) sum += positions[i];
    return sum / static_cast<double>(sub.members.size());
}

}  // namespace herd
