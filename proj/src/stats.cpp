#include "herd/stats.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <numeric>
#include <stdexcept>

namespace herd {

SampleStats sample_stats(const std::vector<double>& xs) {
    SampleStats s;
    s.n = xs.size();
    if (xs.empty()) return s;
    s.mean = std::accumulate(xs.begin(), xs.end(), 0.0) / static_cast<double>(xs.size());
    if (xs.size() > 1) {
        double acc = 0.0;
        for (double x : xs) acc += (x - s.mean) * (x - s.mean);
        s.stddev = std::sqrt(acc / static_cast<double>(xs.size() - 1));
    }
    return s;
}

namespace {

// Average ranks of the combined sample (ties get the midrank).
std::vector<double> midranks(std::vector<double> combined) {
    const std::size_t n = combined.size();
    std::vector<std::size_t> idx(n);
    std::iota(idx.begin(), idx.end(), 0);
    std::sort(idx.begin(), idx.end(),
              [&](std::size_t i, std::size_t j) { return combined[i] < combined[j]; });
    std::vector<double> rank(n);
    std::size_t i = 0;
    while (i < n) {
        std::size_t j = i;
        while (j + 1 < n && combined[idx[j + 1]] == combined[idx[i]]) ++j;
        const double r = 0.5 * static_cast<double>(i + j) + 1.0;
        for (std::size_t k = i; k <= j; ++k) rank[idx[k]] = r;
        i = j + 1;
    }
    return rank;
}

// Exact permutation distribution of the group-1 rank sum, conditioned on the
// observed (possibly tied) values. Counts assignments with sum <= and >= obs.
void count_subsets(const std::vector<double>& rank, std::size_t pos, std::size_t left,
                   double acc, double obs, double eps, std::uint64_t& le,
                   std::uint64_t& ge, std::uint64_t& total) {
    if (left == 0) {
        ++total;
        if (acc <= obs + eps) ++le;
        if (acc >= obs - eps) ++ge;
        return;
    }
    if (rank.size() - pos < left) return;
    count_subsets(rank, pos + 1, left - 1, acc + rank[pos], obs, eps, le, ge, total);
    count_subsets(rank, pos + 1, left, acc, obs, eps, le, ge, total);
}

}  // namespace

double rank_sum_test(const std::vector<double>& a, const std::vector<double>& b) {
    if (a.empty() || b.empty())
        throw std::invalid_argument("rank_sum_test: both samples must be non-empty");

    const std::size_t n1 = a.size(), n2 = b.size(), n = n1 + n2;
    std::vector<double> combined = a;
    combined.insert(combined.end(), b.begin(), b.end());
    const std::vector<double> rank = midranks(combined);

    double r1 = 0.0;
    for (std::size_t i = 0; i < n1; ++i) r1 += rank[i];

    if (n <= 20) {
        std::uint64_t le = 0, ge = 0, total = 0;
        count_subsets(rank, 0, n1, 0.0, r1, 1e-9, le, ge, total);
        const double p_lo = static_cast<double>(le) / static_cast<double>(total);
        const double p_hi = static_cast<double>(ge) / static_cast<double>(total);
        return std::min(1.0, 2.0 * std::min(p_lo, p_hi));
    }

    // Normal approximation with tie correction.
    const double u1 = r1 - 0.5 * static_cast<double>(n1) * (n1 + 1);
    const double mean = 0.5 * static_cast<double>(n1) * static_cast<double>(n2);

    std::vector<double> sorted = combined;
    std::sort(sorted.begin(), sorted.end());
    double tie_term = 0.0;
    std::size_t i = 0;
    while (i < sorted.size()) {
        std::size_t j = i;
        while (j + 1 < sorted.size() && sorted[j + 1] == sorted[i]) ++j;
        const double t = static_cast<double>(j - i + 1);
        tie_term += t * t * t - t;
        i = j + 1;
    }
    const double nn = static_cast<double>(n);
    const double var = (static_cast<double>(n1) * n2 / 12.0) *
                       ((nn + 1.0) - tie_term / (nn * (nn - 1.0)));
    if (var <= 0.0) return 1.0;

    const double z = (std::abs(u1 - mean) - 0.5) / std::sqrt(var);
    return std::min(1.0, std::erfc(z / std::numbers::sqrt2));
}

}  // namespace herd
