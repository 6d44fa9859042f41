#pragma once

#include <algorithm>
#include <cmath>
#include <span>
#include <vector>

#include "errors.hpp"

namespace pra::stats {

/// Empirical CDF of a sample: right-continuous step function with a jump at
/// every distinct value. Evaluation below the smallest jump is 0, at or above
/// the largest is 1.
struct Ecdf {
    std::vector<double> jump_points;         // distinct sorted values
    std::vector<double> cumulative_fractions; // fraction of sample <= jump_points[k]
    std::size_t sample_size = 0;

    double operator()(double x) const {
        auto it = std::upper_bound(jump_points.begin(), jump_points.end(), x);
        if (it == jump_points.begin()) return 0.0;
        return cumulative_fractions[static_cast<std::size_t>(it - jump_points.begin()) - 1];
    }
};

inline Ecdf make_ecdf(std::span<const double> sample) {
    if (sample.empty()) throw EmptySample("make_ecdf: empty sample");
    for (double v : sample)
        if (!std::isfinite(v)) throw InvalidSample("make_ecdf: non-finite value in sample");

    std::vector<double> sorted(sample.begin(), sample.end());
    std::sort(sorted.begin(), sorted.end());

    Ecdf f;
    f.sample_size = sorted.size();
    std::size_t consumed = 0;
    while (consumed < sorted.size()) {
        std::size_t run = consumed;
        while (run < sorted.size() && sorted[run] == sorted[consumed]) ++run;
        f.jump_points.push_back(sorted[consumed]);
        f.cumulative_fractions.push_back(static_cast<double>(run) /
                                         static_cast<double>(sorted.size()));
        consumed = run;
    }
    return f;
}

} // namespace pra::stats
