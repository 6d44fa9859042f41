#pragma once

#include <array>
#include <cctype>
#include <compare>
#include <cstdint>
#include <cstdio>
#include <string>
#include <string_view>
#include <vector>

#include "errors.hpp"

namespace pra {

/// Fixed-point decimal with six fractional digits, stored as a scaled int64.
///
/// Benchmark scores arrive as short decimal strings ("46.9", "15.75") and the
/// whole pipeline depends on *exact* equality between them: a tie that exists
/// in the published table must register as a tie here, and no binary float
/// carries "46.9" exactly. So values are parsed straight into millionths and
/// never touch a double until a statistic actually needs one.
class Decimal {
public:
    static constexpr std::int64_t kScale = 1'000'000;

    Decimal() = default;

    static Decimal from_int(std::int64_t units) { return Decimal(units * kScale); }

    /// Raw constructor: `micro` is the value times 10^6.
    static Decimal from_micro(std::int64_t micro) { return Decimal(micro); }

    /// Parse "123", "-4.5", "0.060061". At most six fractional digits, no
    /// exponents, no leading '+', no stray characters. Throws BadNumber.
    static Decimal parse(std::string_view text) {
        std::string_view rest = text;
        bool negative = false;
        if (!rest.empty() && rest.front() == '-') {
            negative = true;
            rest.remove_prefix(1);
        }
        if (rest.empty()) throw BadNumber(bad(text, "empty numeric field"));

        std::int64_t units = 0;
        std::size_t i = 0;
        while (i < rest.size() && rest[i] != '.') {
            if (!is_digit(rest[i])) throw BadNumber(bad(text, "unexpected character"));
            units = units * 10 + (rest[i] - '0');
            if (units > kMaxUnits) throw BadNumber(bad(text, "integer part out of range"));
            ++i;
        }
        if (i == 0) throw BadNumber(bad(text, "missing digits before the decimal point"));

        std::int64_t frac = 0;
        if (i < rest.size()) {
            ++i; // consume '.'
            std::size_t digits = 0;
            std::int64_t place = kScale;
            while (i < rest.size()) {
                if (!is_digit(rest[i])) throw BadNumber(bad(text, "unexpected character"));
                if (++digits > 6) throw BadNumber(bad(text, "more than six fractional digits"));
                place /= 10;
                frac += (rest[i] - '0') * place;
                ++i;
            }
            if (digits == 0) throw BadNumber(bad(text, "missing digits after the decimal point"));
        }

        std::int64_t micro = units * kScale + frac;
        return Decimal(negative ? -micro : micro);
    }

    std::int64_t micro() const { return micro_; }

    /// The closest double; fine for statistics, never used for tie detection.
    double value() const { return static_cast<double>(micro_) / kScale; }

    /// Canonical text: minimal digits, no trailing zeros, no '+'.
    /// parse(str()) reproduces the value and str(parse(s)) is a fixed point.
    std::string str() const {
        std::int64_t m = micro_;
        std::string out;
        if (m < 0) {
            out += '-';
            m = -m;
        }
        out += std::to_string(m / kScale);
        std::int64_t frac = m % kScale;
        if (frac != 0) {
            char buf[8];
            std::snprintf(buf, sizeof buf, "%06lld", static_cast<long long>(frac));
            std::string digits = buf;
            while (digits.back() == '0') digits.pop_back();
            out += '.';
            out += digits;
        }
        return out;
    }

    friend auto operator<=>(const Decimal&, const Decimal&) = default;

private:
    explicit Decimal(std::int64_t micro) : micro_(micro) {}

    static bool is_digit(char c) { return c >= '0' && c <= '9'; }

    static std::string bad(std::string_view text, const char* why) {
        return "bad number '" + std::string(text) + "': " + why;
    }

    // Keep units small enough that units * kScale cannot overflow.
    static constexpr std::int64_t kMaxUnits = 9'000'000'000'000LL;

    std::int64_t micro_ = 0;
};

/// One algorithm-indexed column of scores, e.g. the ten R1 values a single
/// (train, test) cell contributes. Order matches the corpus algorithm list.
using ScoreVector = std::vector<Decimal>;

} // namespace pra
