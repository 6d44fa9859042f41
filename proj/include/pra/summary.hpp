#pragma once

#include <cmath>
#include <span>

#include "errors.hpp"

namespace pra::stats {

struct Summary {
    double mean = 0.0;
    double stddev = 0.0; // population form (divide by n)
};

/// Mean and population standard deviation. The population form is the point:
/// the group of pairwise correlations is treated as the complete population
/// of comparisons the corpus affords, not a sample from something larger,
/// and the reported spreads only reproduce under this convention.
inline Summary summarize(std::span<const double> sample) {
    if (sample.empty()) throw EmptySample("summarize: empty sample");
    for (double v : sample)
        if (!std::isfinite(v)) throw InvalidSample("summarize: non-finite value");

    Summary s;
    for (double v : sample) s.mean += v;
    s.mean /= static_cast<double>(sample.size());
    double acc = 0.0;
    for (double v : sample) acc += (v - s.mean) * (v - s.mean);
    s.stddev = std::sqrt(acc / static_cast<double>(sample.size()));
    return s;
}

} // namespace pra::stats
