#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace pra {

// Base class for everything this library throws on purpose.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// -- numeric / statistical preconditions ------------------------------------

struct LengthMismatch : Error { using Error::Error; };
struct TooShort : Error { using Error::Error; };
struct DegenerateVector : Error { using Error::Error; };
struct EmptySample : Error { using Error::Error; };
struct InvalidSample : Error { using Error::Error; };
struct InvalidAlpha : Error { using Error::Error; };
struct InvalidSize : Error { using Error::Error; };
struct InvalidD : Error { using Error::Error; };
struct BudgetExceeded : Error { using Error::Error; };
struct TooFewTrials : Error { using Error::Error; };

// -- data / pipeline ---------------------------------------------------------

struct BadNumber : Error { using Error::Error; };
struct UnknownDataset : Error { using Error::Error; };
struct InvalidRegistry : Error { using Error::Error; };
struct EmptyGroup : Error { using Error::Error; };

// Parsers collect everything wrong with the input instead of bailing at the
// first offense; the full list rides along with the exception.
struct ValidationError : Error {
    std::vector<std::string> issues;

    explicit ValidationError(std::vector<std::string> found)
        : Error(join(found)), issues(std::move(found)) {}

private:
    static std::string join(const std::vector<std::string>& found) {
        std::string all;
        for (const auto& one : found) {
            if (!all.empty()) all += '\n';
            all += one;
        }
        return all;
    }
};

struct ConfigError : ValidationError {
    using ValidationError::ValidationError;
};

} // namespace pra
