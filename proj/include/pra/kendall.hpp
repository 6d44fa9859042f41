#pragma once

#include <cmath>
#include <cstdint>
#include <map>

#include "decimal.hpp"
#include "errors.hpp"

namespace pra::stats {

/// Everything Kendall's tau-b produces for one pair of score vectors.
/// The counts are kept because downstream diagnostics report them directly
/// (n_discordant is the "crossing count" between two benchmark rankings).
struct TauRecord {
    double tau = 0.0;
    std::int64_t n_concordant = 0;
    std::int64_t n_discordant = 0;
    std::int64_t n0 = 0;        // N(N-1)/2 pairs total
    std::int64_t n1 = 0;        // sum over x tie groups of t(t-1)/2
    std::int64_t n2 = 0;        // same for y
    std::int64_t n_xy_tied = 0; // pairs tied in x or y (or both)
};

/// Kendall tau-b between two aligned score vectors.
///
/// Deliberately the O(N^2) pair walk rather than a merge-sort count: N is the
/// number of algorithms (ten in the shipped corpus), ties must be classified
/// pair by pair anyway, and the quadratic form keeps every count exact and
/// auditable. Comparisons happen on the fixed-point values, so ties are the
/// ties printed in the source tables, not float accidents.
///
/// Throws LengthMismatch, TooShort (N < 2), DegenerateVector (a vector whose
/// values are all equal has no ranking to correlate; tau-b would divide by
/// zero, and quietly returning 0 or NaN would poison the group statistics).
inline TauRecord kendall_tau_b(const ScoreVector& x, const ScoreVector& y) {
    if (x.size() != y.size())
        throw LengthMismatch("kendall_tau_b: vectors have sizes " +
                             std::to_string(x.size()) + " and " + std::to_string(y.size()));
    const std::int64_t n = static_cast<std::int64_t>(x.size());
    if (n < 2) throw TooShort("kendall_tau_b: need at least 2 entries, got " + std::to_string(n));

    bool x_flat = true, y_flat = true;
    for (std::size_t i = 1; i < x.size(); ++i) {
        x_flat = x_flat && x[i] == x[0];
        y_flat = y_flat && y[i] == y[0];
    }
    if (x_flat || y_flat)
        throw DegenerateVector(std::string("kendall_tau_b: all values equal in ") +
                               (x_flat ? "x" : "y") + ", ranking is undefined");

    TauRecord r;
    r.n0 = n * (n - 1) / 2;
    for (std::size_t i = 0; i + 1 < x.size(); ++i) {
        for (std::size_t j = i + 1; j < x.size(); ++j) {
            const auto dx = x[i] <=> x[j];
            const auto dy = y[i] <=> y[j];
            if (dx == 0 || dy == 0) {
                ++r.n_xy_tied;
            } else if ((dx < 0) == (dy < 0)) {
                ++r.n_concordant;
            } else {
                ++r.n_discordant;
            }
        }
    }

    // Tie-group sums for the tau-b denominator.
    const auto tie_sum = [](const ScoreVector& v) {
        std::map<std::int64_t, std::int64_t> groups;
        for (const auto& d : v) ++groups[d.micro()];
        std::int64_t s = 0;
        for (const auto& [value, count] : groups) s += count * (count - 1) / 2;
        return s;
    };
    r.n1 = tie_sum(x);
    r.n2 = tie_sum(y);

    // One sqrt over the exact integer product, not sqrt(a)*sqrt(b): when the
    // product is a perfect square (tie-free, or matching tie patterns) the
    // correctly rounded sqrt is exact and perfect agreement lands on +/-1.0.
    const double denom = std::sqrt(static_cast<double>(r.n0 - r.n1) *
                                   static_cast<double>(r.n0 - r.n2));
    r.tau = static_cast<double>(r.n_concordant - r.n_discordant) / denom;
    return r;
}

} // namespace pra::stats
