#pragma once

#include <optional>
#include <vector>

namespace herd {

struct SampleStats {
    double mean = 0.0;
    double stddev = 0.0;  // sample standard deviation (n-1)
    std::size_t n = 0;
};

SampleStats sample_stats(const std::vector<double>& xs);

// Two-sided Mann-Whitney / Wilcoxon rank-sum p-value. Exact enumeration of
// rank assignments for small samples (n1+n2 <= 20), normal approximation
// with tie correction otherwise. All-equal degenerate samples give p = 1.
double rank_sum_test(const std::vector<double>& a, const std::vector<double>& b);

}  // namespace herd
