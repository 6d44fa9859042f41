#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "pra/kendall.hpp"

using namespace pra;
using stats::kendall_tau_b;
using stats::TauRecord;

namespace {

ScoreVector vec(std::initializer_list<double> tenthsish) {
    // Convenience: build score vectors from values with at most 3 decimals.
    ScoreVector v;
    for (double d : tenthsish)
        v.push_back(Decimal::from_micro(static_cast<std::int64_t>(std::llround(d * 1000)) * 1000));
    return v;
}

// Definition-level reference: classify every index pair directly.
TauRecord brute(const ScoreVector& x, const ScoreVector& y) {
    TauRecord r;
    const auto n = static_cast<std::int64_t>(x.size());
    r.n0 = n * (n - 1) / 2;
    for (std::size_t i = 0; i < x.size(); ++i) {
        for (std::size_t j = i + 1; j < x.size(); ++j) {
            if (x[i] == x[j] || y[i] == y[j]) {
                ++r.n_xy_tied;
            } else if ((x[i] < x[j]) == (y[i] < y[j])) {
                ++r.n_concordant;
            } else {
                ++r.n_discordant;
            }
            if (x[i] == x[j]) ++r.n1;
            if (y[i] == y[j]) ++r.n2;
        }
    }
    r.tau = static_cast<double>(r.n_concordant - r.n_discordant) /
            std::sqrt(static_cast<double>(r.n0 - r.n1) * static_cast<double>(r.n0 - r.n2));
    return r;
}

} // namespace

TEST_CASE("perfect agreement and perfect reversal") {
    const auto x = vec({1, 2, 3, 4, 5});
    auto y = x;
    CHECK(kendall_tau_b(x, y).tau == 1.0);
    std::reverse(y.begin(), y.end());
    CHECK(kendall_tau_b(x, y).tau == -1.0);
}

TEST_CASE("distinct-value example with one discordant pair") {
    // Scores for ten systems on two benchmarks that agree everywhere except
    // one swapped pair: tau = (44 - 1) / 45.
    const auto x = vec({6.1, 7.7, 8.3, 11.0, 27.9, 27.5, 16.1, 28.0, 46.9, 46.8});
    const auto y = vec({37.9, 40.4, 43.2, 47.4, 58.9, 58.5, 57.5, 63.9, 68.5, 70.0});
    const auto r = kendall_tau_b(x, y);
    CHECK(r.n0 == 45);
    CHECK(r.n_concordant == 44);
    CHECK(r.n_discordant == 1);
    CHECK(r.n1 == 0);
    CHECK(r.n2 == 0);
    CHECK(r.n_xy_tied == 0);
    CHECK(r.tau == Catch::Approx(43.0 / 45.0).margin(1e-12));
}

TEST_CASE("tie in one vector takes the tau-b denominator path") {
    // x carries one tied pair (15.7 twice), y none: n1 = 1, and the tied
    // pair is excluded from both concordant and discordant counts.
    const auto x = vec({1.6, 2.4, 2.5, 3.4, 9.1, 8.9, 5.2, 9.3, 15.7, 15.7});
    const auto y = vec({17.1, 19.1, 20.6, 22.7, 31.0, 30.1, 32.8, 37.4, 37.1, 40.5});
    const auto r = kendall_tau_b(x, y);
    CHECK(r.n0 == 45);
    CHECK(r.n1 == 1);
    CHECK(r.n2 == 0);
    CHECK(r.n_xy_tied == 1);
    CHECK(r.n_concordant == 41);
    CHECK(r.n_discordant == 3);
    CHECK(r.tau == Catch::Approx(38.0 / std::sqrt(44.0 * 45.0)).margin(1e-12));
}

TEST_CASE("argument validation") {
    CHECK_THROWS_AS(kendall_tau_b(vec({1, 2}), vec({1, 2, 3})), LengthMismatch);
    CHECK_THROWS_AS(kendall_tau_b(vec({1}), vec({2})), TooShort);
    CHECK_THROWS_AS(kendall_tau_b(vec({}), vec({})), TooShort);
    CHECK_THROWS_AS(kendall_tau_b(vec({3, 3, 3}), vec({1, 2, 3})), DegenerateVector);
    CHECK_THROWS_AS(kendall_tau_b(vec({1, 2, 3}), vec({5, 5, 5})), DegenerateVector);
}

TEST_CASE("pair classification conserves the total") {
    std::mt19937_64 rng(2024);
    for (int trial = 0; trial < 500; ++trial) {
        const auto n = 2 + rng() % 12;
        ScoreVector x, y;
        for (std::size_t i = 0; i < n; ++i) {
            // Small value range on purpose: force plenty of ties.
            x.push_back(Decimal::from_micro(static_cast<std::int64_t>(rng() % 6) * 100'000));
            y.push_back(Decimal::from_micro(static_cast<std::int64_t>(rng() % 6) * 100'000));
        }
        bool x_flat = std::all_of(x.begin(), x.end(), [&](auto d) { return d == x[0]; });
        bool y_flat = std::all_of(y.begin(), y.end(), [&](auto d) { return d == y[0]; });
        if (x_flat || y_flat) continue;

        const auto r = kendall_tau_b(x, y);
        const auto b = brute(x, y);
        CHECK(r.n_concordant + r.n_discordant + r.n_xy_tied == r.n0);
        CHECK(r.n_concordant == b.n_concordant);
        CHECK(r.n_discordant == b.n_discordant);
        CHECK(r.n1 == b.n1);
        CHECK(r.n2 == b.n2);
        CHECK(r.tau == Catch::Approx(b.tau).margin(1e-12));
        CHECK(r.tau >= -1.0);
        CHECK(r.tau <= 1.0);
    }
}

TEST_CASE("symmetry and monotone invariance") {
    std::mt19937_64 rng(99);
    for (int trial = 0; trial < 200; ++trial) {
        const auto n = 3 + rng() % 9;
        ScoreVector x, y;
        for (std::size_t i = 0; i < n; ++i) {
            x.push_back(Decimal::from_micro(static_cast<std::int64_t>(rng() % 1000) * 1000));
            y.push_back(Decimal::from_micro(static_cast<std::int64_t>(rng() % 1000) * 1000));
        }
        bool x_flat = std::all_of(x.begin(), x.end(), [&](auto d) { return d == x[0]; });
        bool y_flat = std::all_of(y.begin(), y.end(), [&](auto d) { return d == y[0]; });
        if (x_flat || y_flat) continue;

        const auto r = kendall_tau_b(x, y);
        const auto s = kendall_tau_b(y, x);
        CHECK(r.tau == s.tau);
        CHECK(r.n1 == s.n2);

        // Strictly increasing transform of x: 3v + 7. Order-isomorphic, so
        // every pairwise comparison, and hence tau, is unchanged.
        ScoreVector tx;
        for (const auto& d : x) tx.push_back(Decimal::from_micro(3 * d.micro() + 7'000'000));
        const auto t = kendall_tau_b(tx, y);
        CHECK(t.tau == r.tau);
        CHECK(t.n_concordant == r.n_concordant);
        CHECK(t.n_discordant == r.n_discordant);
    }
}
