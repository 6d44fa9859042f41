#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <span>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "errors.hpp"

namespace pra::stats {

namespace detail {

/// Scaled two-sample KS statistic: T = max over pooled values of
/// |i*m - j*n|, where i of the n values in `a` and j of the m values in `b`
/// are <= the evaluation point. D = T / (n*m). Working on the integer lattice
/// sidesteps float noise entirely and is what the Monte Carlo resampler
/// compares against trial after trial.
///
/// Ties across the pool are handled simultaneously: the ECDF difference is
/// only examined after *all* copies of an equal value, from both samples,
/// have been consumed. Splitting a tied step in two would manufacture a
/// spurious supremum in between.
inline std::int64_t scaled_ks_distance(std::span<const double> a_sorted,
                                       std::span<const double> b_sorted) {
    const auto n = static_cast<std::int64_t>(a_sorted.size());
    const auto m = static_cast<std::int64_t>(b_sorted.size());
    std::size_t i = 0, j = 0;
    std::int64_t best = 0;
    while (i < a_sorted.size() || j < b_sorted.size()) {
        double v;
        if (j >= b_sorted.size() || (i < a_sorted.size() && a_sorted[i] <= b_sorted[j]))
            v = a_sorted[i];
        else
            v = b_sorted[j];
        while (i < a_sorted.size() && a_sorted[i] == v) ++i;
        while (j < b_sorted.size() && b_sorted[j] == v) ++j;
        const std::int64_t gap = std::abs(static_cast<std::int64_t>(i) * m -
                                          static_cast<std::int64_t>(j) * n);
        best = std::max(best, gap);
    }
    return best;
}

inline std::vector<double> checked_sorted(std::span<const double> sample, const char* who) {
    if (sample.empty()) throw EmptySample(std::string(who) + ": empty sample");
    for (double v : sample)
        if (!std::isfinite(v)) throw InvalidSample(std::string(who) + ": non-finite value");
    std::vector<double> sorted(sample.begin(), sample.end());
    std::sort(sorted.begin(), sorted.end());
    return sorted;
}

} // namespace detail

/// Two-sample Kolmogorov-Smirnov statistic D = sup |F_a - F_b|.
inline double ks_statistic(std::span<const double> a, std::span<const double> b) {
    const auto sa = detail::checked_sorted(a, "ks_statistic");
    const auto sb = detail::checked_sorted(b, "ks_statistic");
    const auto t = detail::scaled_ks_distance(sa, sb);
    return static_cast<double>(t) /
           (static_cast<double>(sa.size()) * static_cast<double>(sb.size()));
}

/// Rejection threshold c(alpha) * sqrt((n + m) / (n * m)), written in the
/// equivalent form sqrt(-ln(alpha/2) * (1 + m/n) / (2m)). Reject when
/// D > threshold.
inline double ks_threshold(double alpha, std::size_t n, std::size_t m) {
    if (!(alpha > 0.0) || !(alpha < 1.0))
        throw InvalidAlpha("ks_threshold: alpha must lie in (0, 1), got " + std::to_string(alpha));
    if (n == 0 || m == 0) throw InvalidSize("ks_threshold: sample sizes must be positive");
    const double nn = static_cast<double>(n), mm = static_cast<double>(m);
    return std::sqrt(-std::log(alpha / 2.0) * (1.0 + mm / nn) / (2.0 * mm));
}

/// Asymptotic p-value: p = Q(lambda) with lambda = D * sqrt(nm / (n + m)) and
/// Q(lambda) = 2 * sum_{k>=1} (-1)^{k-1} exp(-2 k^2 lambda^2). The alternating
/// series collapses fast; terms below 1e-12 are dropped. Result clamped to
/// [0, 1] (the two-term partial sum can poke above 1 for tiny lambda).
inline double ks_pvalue_asymptotic(double d, std::size_t n, std::size_t m) {
    if (!(d >= 0.0) || !(d <= 1.0))
        throw InvalidD("ks_pvalue_asymptotic: D must lie in [0, 1], got " + std::to_string(d));
    if (n == 0 || m == 0) throw InvalidSize("ks_pvalue_asymptotic: sample sizes must be positive");
    if (d == 0.0) return 1.0;
    const double nn = static_cast<double>(n), mm = static_cast<double>(m);
    const double lambda = d * std::sqrt(nn * mm / (nn + mm));
    double sum = 0.0;
    double sign = 1.0;
    for (int k = 1;; ++k) {
        const double term = std::exp(-2.0 * static_cast<double>(k) * k * lambda * lambda);
        sum += sign * term;
        sign = -sign;
        if (term < 1e-12) break;
    }
    return std::clamp(2.0 * sum, 0.0, 1.0);
}

/// Exact two-sample p-value P(D_{n,m} >= d) under the null that both samples
/// come from one continuous distribution.
///
/// Every interleaving of the pooled sample is a monotone lattice path from
/// (0,0) to (n,m); the path's KS distance is max |i*m - j*n| over the lattice
/// points it visits. Dynamic programming counts the paths that stay strictly
/// inside the band |i*m - j*n| < t, and p = 1 - inside / C(n+m, n). Counts
/// are exact big integers: C(n+m, n) overflows 64 bits long before the n*m
/// budget does, and a single rounded count silently corrupts the tail.
///
/// The band bound t is the smallest integer with t / (n*m) >= d, computed as
/// floor(d*n*m - 1e-7) + 1 so that a D that *is* an attainable lattice value
/// (up to float representation) is classified as reaching the band rather
/// than falling a hair short of it.
///
/// Cost is O(n*m) big-integer additions; refuse anything beyond `budget`
/// (default 10,000 lattice cells) rather than stall.
inline double ks_pvalue_exact(double d, std::size_t n, std::size_t m,
                              std::size_t budget = 10'000) {
    if (!(d >= 0.0) || !(d <= 1.0))
        throw InvalidD("ks_pvalue_exact: D must lie in [0, 1], got " + std::to_string(d));
    if (n == 0 || m == 0) throw InvalidSize("ks_pvalue_exact: sample sizes must be positive");
    if (n * m > budget)
        throw BudgetExceeded("ks_pvalue_exact: n*m = " + std::to_string(n * m) +
                             " exceeds the budget of " + std::to_string(budget));

    using boost::multiprecision::cpp_int;
    const auto nn = static_cast<std::int64_t>(n);
    const auto mm = static_cast<std::int64_t>(m);
    const std::int64_t t =
        static_cast<std::int64_t>(std::floor(d * static_cast<double>(nn * mm) - 1e-7)) + 1;

    const auto inside = [&](std::int64_t i, std::int64_t j) {
        return std::abs(i * mm - j * nn) < t;
    };

    // dp[j] = number of admissible paths from (0,0) to (i,j), rolled over i.
    std::vector<cpp_int> dp(m + 1);
    if (!inside(0, 0)) return 1.0; // t <= 0: every path reaches the band at once
    dp[0] = 1;
    for (std::int64_t j = 1; j <= mm; ++j) dp[j] = inside(0, j) ? cpp_int(dp[j - 1]) : cpp_int(0);
    for (std::int64_t i = 1; i <= nn; ++i) {
        if (!inside(i, 0)) dp[0] = 0;
        for (std::int64_t j = 1; j <= mm; ++j)
            dp[j] = inside(i, j) ? cpp_int(dp[j] + dp[j - 1]) : cpp_int(0);
    }

    cpp_int total = 1;
    for (std::int64_t k = 1; k <= nn; ++k) {
        total *= mm + k;
        total /= k;
    }

    const cpp_int outside = total - dp[m];
    // Exact rational outside/total, pushed through floats only at the very end.
    const auto ratio =
        boost::multiprecision::cpp_rational(outside, total).convert_to<double>();
    return std::clamp(ratio, 0.0, 1.0);
}

inline constexpr std::uint64_t kDefaultMcSeed = 123456789;
inline constexpr std::uint64_t kDefaultMcTrials = 100'000;

/// Monte Carlo permutation p-value: pool both samples, deal the pool into a
/// random n/m split `trials` times, and report the fraction of splits whose
/// KS distance reaches the observed one. Ties between and within samples are
/// honored, because the actual pooled values are resampled, so on tied data
/// this estimates a different (conditional) null than ks_pvalue_exact.
///
/// The shuffle is a hand-rolled Fisher-Yates over std::mt19937_64 with
/// rejection sampling for the index draw. std::shuffle and
/// std::uniform_int_distribution are implementation-defined, and the same
/// (seed, trials) must give the same estimate on every platform.
inline double ks_pvalue_montecarlo(std::span<const double> a, std::span<const double> b,
                                   std::uint64_t trials = kDefaultMcTrials,
                                   std::uint64_t seed = kDefaultMcSeed) {
    if (trials < 1'000)
        throw TooFewTrials("ks_pvalue_montecarlo: need at least 1000 trials, got " +
                           std::to_string(trials));
    const auto sa = detail::checked_sorted(a, "ks_pvalue_montecarlo");
    const auto sb = detail::checked_sorted(b, "ks_pvalue_montecarlo");
    const std::int64_t observed = detail::scaled_ks_distance(sa, sb);

    std::vector<double> pool;
    pool.reserve(sa.size() + sb.size());
    pool.insert(pool.end(), sa.begin(), sa.end());
    pool.insert(pool.end(), sb.begin(), sb.end());

    std::mt19937_64 rng(seed);
    const auto draw_below = [&rng](std::uint64_t bound) {
        // Unbiased uniform draw from [0, bound) by rejecting the ragged tail.
        const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                                    std::numeric_limits<std::uint64_t>::max() % bound;
        std::uint64_t raw;
        do {
            raw = rng();
        } while (raw >= limit);
        return raw % bound;
    };

    std::vector<double> ta(sa.size()), tb(sb.size());
    std::uint64_t hits = 0;
    for (std::uint64_t trial = 0; trial < trials; ++trial) {
        for (std::size_t k = pool.size() - 1; k > 0; --k)
            std::swap(pool[k], pool[draw_below(static_cast<std::uint64_t>(k) + 1)]);
        std::copy(pool.begin(), pool.begin() + static_cast<std::ptrdiff_t>(ta.size()),
                  ta.begin());
        std::copy(pool.begin() + static_cast<std::ptrdiff_t>(ta.size()), pool.end(),
                  tb.begin());
        std::sort(ta.begin(), ta.end());
        std::sort(tb.begin(), tb.end());
        if (detail::scaled_ks_distance(ta, tb) >= observed) ++hits;
    }
    return static_cast<double>(hits) / static_cast<double>(trials);
}

enum class PMethod { auto_select, exact, asymptotic, montecarlo };

enum class Decision { accept_null, reject_null };

/// Full record of one two-sample KS comparison. `decision` follows the
/// p-value rule (p < alpha rejects) and is the one verdicts are built from;
/// the fixed-threshold rule is evaluated alongside and `rules_agree` flags
/// the rare configurations where the two disagree.
struct KSResult {
    double d_statistic = 0.0;
    std::size_t n = 0;
    std::size_t m = 0;
    double alpha = 0.0;
    double threshold = 0.0;
    double p_value = 0.0;
    PMethod p_method_used = PMethod::exact;
    Decision decision = Decision::accept_null;          // from the p-value rule
    Decision threshold_decision = Decision::accept_null; // from D vs threshold
    bool rules_agree = true;
};

struct KSOptions {
    double alpha = 0.05;
    PMethod p_method = PMethod::auto_select;
    std::size_t exact_budget = 10'000;
    std::uint64_t mc_trials = kDefaultMcTrials;
    std::uint64_t mc_seed = kDefaultMcSeed;
};

/// Run the whole comparison: statistic, threshold, p-value by the requested
/// method (auto picks exact while n*m fits the budget, asymptotic beyond),
/// and both decision rules.
inline KSResult run_ks_test(std::span<const double> a, std::span<const double> b,
                            const KSOptions& opt = {}) {
    KSResult r;
    r.n = a.size();
    r.m = b.size();
    r.alpha = opt.alpha;
    r.d_statistic = ks_statistic(a, b);
    r.threshold = ks_threshold(opt.alpha, r.n, r.m);

    PMethod method = opt.p_method;
    if (method == PMethod::auto_select)
        method = (r.n * r.m <= opt.exact_budget) ? PMethod::exact : PMethod::asymptotic;
    switch (method) {
    case PMethod::exact:
        r.p_value = ks_pvalue_exact(r.d_statistic, r.n, r.m, opt.exact_budget);
        break;
    case PMethod::asymptotic:
        r.p_value = ks_pvalue_asymptotic(r.d_statistic, r.n, r.m);
        break;
    case PMethod::montecarlo:
        r.p_value = ks_pvalue_montecarlo(a, b, opt.mc_trials, opt.mc_seed);
        break;
    case PMethod::auto_select:
        break; // unreachable
    }
    r.p_method_used = method;

    r.decision = (r.p_value < opt.alpha) ? Decision::reject_null : Decision::accept_null;
    r.threshold_decision =
        (r.d_statistic > r.threshold) ? Decision::reject_null : Decision::accept_null;
    r.rules_agree = r.decision == r.threshold_decision;
    return r;
}

} // namespace pra::stats
