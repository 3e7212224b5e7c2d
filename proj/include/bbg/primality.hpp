#pragma once

#include <cstdint>
#include <optional>
#include <utility>

#include "bbg/backends.hpp"

namespace bbg {

/// How a single x behaved under the involution test in (Z/nZ)^* with the
/// assumed exponent n - 1.
enum class RoundOutcome {
  Pass,            // i(x) is 1 or -1
  NonInvolution,   // i(x) is an involution other than -1
  NoReturn,        // x^(n-1) != 1: the squaring sequence never reaches 1
  SharedFactor,    // gcd(x, n) > 1, so x is not even a unit
};

const char* round_outcome_name(RoundOutcome r) noexcept;

// One round of the test on a residue x in [1, n).
RoundOutcome involution_round(const ModularUnits& units, std::uint64_t x);

struct PrimalityVerdict {
  enum class Kind { Composite, ProbablyPrime };

  Kind kind;
  std::uint32_t rounds;      // rounds actually run
  RoundOutcome reason;       // Pass for ProbablyPrime
  std::optional<std::uint64_t> witness;  // the exposing x (Composite only)

  // 4^-rounds, exact in binary floating point for rounds <= 511.
  double error_bound() const;
};

// The Miller-Rabin test in its involution form: for `rounds` random x,
// compute i(x) under the working hypothesis E = n - 1; any failure or any
// i(x) outside {1, -1} proves n composite. x is uniform on [2, n-2].
// Throws ConfigError for even n or n < 3, or rounds == 0.
PrimalityVerdict miller_rabin(std::uint64_t n, std::uint32_t rounds, std::uint64_t seed);
PrimalityVerdict miller_rabin(const ModularUnits& units, std::uint32_t rounds, std::uint64_t seed);

// (gcd(n, x - 1), gcd(n, x + 1)) for a non-trivial square root x of 1
// modulo n. Throws PreconditionError unless x^2 = 1 and x != +-1 (mod n).
std::pair<std::uint64_t, std::uint64_t> factor_from_involution(std::uint64_t n, std::uint64_t x);

// Number of x in [1, n) with x^2 = 1 mod n, by exhaustive scan. n odd,
// 3 <= n <= 10^6.
std::uint64_t count_involutions(std::uint64_t n);

}  // namespace bbg
