#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace nonloc {

/// Exact rational scalar used wherever a classical bound or an LHV
/// membership verdict must be free of floating-point tolerance disputes.
using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

/// Invalid input or violated invariant (bad dimensions, non-normalized
/// tables, out-of-range labels). CLI maps this to exit code 2.
struct ValidationError : std::runtime_error {
    explicit ValidationError(const std::string& what) : std::runtime_error(what) {}
};

/// Malformed serialized data (JSON syntax, missing or mistyped fields).
/// CLI maps this to exit code 3.
struct ParseError : std::runtime_error {
    explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

/// A brute-force enumeration or tableau would exceed the configured cap.
struct CapExceededError : ValidationError {
    explicit CapExceededError(const std::string& what) : ValidationError(what) {}
};

// Validation tolerances. Probability comparisons against exact zeros
// (Hardy's forbidden outcomes) are done at 1e-12; everything else at 1e-9.
inline constexpr double kEpsNorm = 1e-9;
inline constexpr double kEpsHerm = 1e-9;
inline constexpr double kEpsProb = 1e-9;
inline constexpr double kEpsSupport = 1e-9;
inline constexpr double kEpsLp = 1e-9;
inline constexpr double kEpsExactZero = 1e-12;

/// Hard cap on the total Hilbert-space dimension of composite systems.
/// Everything downstream is brute-force; the cap keeps that explicit.
inline constexpr int kMaxTotalDim = 81;

inline constexpr std::uint64_t kDefaultEnumCap = 10'000'000;

/// Deterministic-strategy enumeration cap. Defaults to 10^7 strategies,
/// overridable through the NONLOCALITY_ENUM_CAP environment variable.
std::uint64_t enum_cap();

}  // namespace nonloc
