#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <vector>

#include "pra/summary.hpp"

using namespace pra;
using stats::summarize;

TEST_CASE("mean and population spread") {
    const std::vector<double> v{2.0, 4.0, 4.0, 4.0, 5.0, 5.0, 7.0, 9.0};
    const auto s = summarize(v);
    CHECK(s.mean == 5.0);
    CHECK(s.stddev == 2.0); // population form; the sample form would give 2.138
}

TEST_CASE("single observation has zero spread") {
    const auto s = summarize(std::vector{3.25});
    CHECK(s.mean == 3.25);
    CHECK(s.stddev == 0.0);
}

TEST_CASE("summary input validation") {
    CHECK_THROWS_AS(summarize(std::vector<double>{}), EmptySample);
    CHECK_THROWS_AS(summarize(std::vector{1.0, std::nan("")}), InvalidSample);
}

TEST_CASE("shift and scale behave like moments") {
    const std::vector<double> v{0.1, 0.5, 0.9, 0.2, 0.7};
    const auto s = summarize(v);
    std::vector<double> w;
    for (double x : v) w.push_back(3.0 * x + 1.0);
    const auto t = summarize(w);
    CHECK(t.mean == Catch::Approx(3.0 * s.mean + 1.0).margin(1e-12));
    CHECK(t.stddev == Catch::Approx(3.0 * s.stddev).margin(1e-12));
}
