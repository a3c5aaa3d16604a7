#pragma once

#include <stdexcept>
#include <string>

namespace mexp {

/// Base class for all library errors.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct EmptyError : Error { using Error::Error; };
struct OverlapError : Error { using Error::Error; };
struct NoGapError : Error { using Error::Error; };
struct DomainError : Error { using Error::Error; };
struct NotFoundError : Error { using Error::Error; };

struct SpectrumMismatchError : Error { using Error::Error; };
struct NotSubUnionError : Error { using Error::Error; };
struct NotAZeroError : Error { using Error::Error; };
struct DegreeCapError : Error { using Error::Error; };

struct RangeError : Error { using Error::Error; };
struct InfeasibleError : Error { using Error::Error; };
struct UnsupportedError : Error { using Error::Error; };

struct SizeError : Error { using Error::Error; };

struct IllConditionedError : Error {
    IllConditionedError(const std::string& what, double ratio)
        : Error(what), eigenvalue_ratio(ratio) {}
    double eigenvalue_ratio;
};

struct DegenerateError : Error { using Error::Error; };
struct AnchorError : Error { using Error::Error; };
struct NullElementError : Error { using Error::Error; };

struct ParseError : Error { using Error::Error; };

} // namespace mexp
