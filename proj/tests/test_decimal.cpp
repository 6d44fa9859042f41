#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "pra/decimal.hpp"

using pra::BadNumber;
using pra::Decimal;

TEST_CASE("decimal parses plain and fractional forms") {
    CHECK(Decimal::parse("0").micro() == 0);
    CHECK(Decimal::parse("15.7").micro() == 15'700'000);
    CHECK(Decimal::parse("46.9").micro() == 46'900'000);
    CHECK(Decimal::parse("-4.5").micro() == -4'500'000);
    CHECK(Decimal::parse("0.060061").micro() == 60'061);
    CHECK(Decimal::parse("123").micro() == 123'000'000);
    CHECK(Decimal::parse("0.000001").micro() == 1);
}

TEST_CASE("decimal rejects malformed input") {
    CHECK_THROWS_AS(Decimal::parse(""), BadNumber);
    CHECK_THROWS_AS(Decimal::parse("-"), BadNumber);
    CHECK_THROWS_AS(Decimal::parse("."), BadNumber);
    CHECK_THROWS_AS(Decimal::parse("1."), BadNumber);
    CHECK_THROWS_AS(Decimal::parse(".5"), BadNumber);
    CHECK_THROWS_AS(Decimal::parse("1.2345678"), BadNumber); // 7 fractional digits
    CHECK_THROWS_AS(Decimal::parse("1e3"), BadNumber);
    CHECK_THROWS_AS(Decimal::parse("+1"), BadNumber);
    CHECK_THROWS_AS(Decimal::parse("1,5"), BadNumber);
    CHECK_THROWS_AS(Decimal::parse("NaN"), BadNumber);
    CHECK_THROWS_AS(Decimal::parse(" 1"), BadNumber);
}

TEST_CASE("equal table values compare equal, unlike their float images") {
    // 46.9 and 46.90 denote the same score.
    CHECK(Decimal::parse("46.9") == Decimal::parse("46.90"));
    CHECK(Decimal::parse("0.1") != Decimal::parse("0.10001"));
    CHECK(Decimal::parse("2.5") < Decimal::parse("2.50001"));
    CHECK(Decimal::parse("-1.5") < Decimal::parse("0"));
}

TEST_CASE("canonical text round-trips") {
    for (const char* s : {"0", "15.7", "-4.5", "0.060061", "123", "99.999999", "-0.000001"}) {
        const auto d = Decimal::parse(s);
        CHECK(d.str() == s);
        CHECK(Decimal::parse(d.str()) == d);
    }
    // Non-canonical spellings normalize.
    CHECK(Decimal::parse("46.90").str() == "46.9");
    CHECK(Decimal::parse("7.000").str() == "7");
}

TEST_CASE("parse/str round-trip holds on random values") {
    std::mt19937_64 rng(7);
    for (int i = 0; i < 2000; ++i) {
        const auto micro = static_cast<std::int64_t>(rng() % 200'000'000'000ULL) - 100'000'000'000LL;
        const auto d = Decimal::from_micro(micro);
        CAPTURE(micro, d.str());
        CHECK(Decimal::parse(d.str()) == d);
        CHECK(Decimal::parse(d.str()).str() == d.str());
    }
}

TEST_CASE("value() lands within half an ulp of the decimal") {
    CHECK(Decimal::parse("46.9").value() == Catch::Approx(46.9).margin(1e-9));
    CHECK(Decimal::parse("-0.25").value() == -0.25);
}
