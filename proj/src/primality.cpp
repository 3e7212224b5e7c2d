#include "bbg/primality.hpp"

#include <cmath>
#include <numeric>

#include "bbg/error.hpp"
#include "bbg/random.hpp"

namespace bbg {

const char* round_outcome_name(RoundOutcome r) noexcept {
  switch (r) {
    case RoundOutcome::Pass: return "pass";
    case RoundOutcome::NonInvolution: return "non-trivial-involution";
    case RoundOutcome::NoReturn: return "no-return-to-identity";
    case RoundOutcome::SharedFactor: return "shared-factor";
  }
  return "unknown";
}

RoundOutcome involution_round(const ModularUnits& units, std::uint64_t x) {
  const std::uint64_t n = units.modulus();
  if (std::gcd(x % n, n) != 1) return RoundOutcome::SharedFactor;
  auto i = try_involution_from(units, units.from_residue(x));
  if (!i) return RoundOutcome::NoReturn;
  const std::uint64_t r = units.residue(*i);
  return (r == 1 || r == n - 1) ? RoundOutcome::Pass : RoundOutcome::NonInvolution;
}

double PrimalityVerdict::error_bound() const {
  if (kind == Kind::Composite) return 0.0;
  return std::ldexp(1.0, -2 * static_cast<int>(rounds));
}

PrimalityVerdict miller_rabin(std::uint64_t n, std::uint32_t rounds, std::uint64_t seed) {
  if (n < 3 || n % 2 == 0) throw ConfigError("miller_rabin: n must be odd and >= 3");
  return miller_rabin(ModularUnits(n), rounds, seed);
}

PrimalityVerdict miller_rabin(const ModularUnits& units, std::uint32_t rounds, std::uint64_t seed) {
  if (rounds == 0) throw ConfigError("miller_rabin: rounds must be >= 1");
  const std::uint64_t n = units.modulus();
  Rng rng(seed);
  for (std::uint32_t round = 1; round <= rounds; ++round) {
    // [2, n-2] is empty for n = 3; there the only non-identity unit is 2.
    const std::uint64_t x = n == 3 ? 2 : 2 + rng.bounded(n - 3);
    const RoundOutcome outcome = involution_round(units, x);
    if (outcome != RoundOutcome::Pass)
      return {PrimalityVerdict::Kind::Composite, round, outcome, x};
  }
  return {PrimalityVerdict::Kind::ProbablyPrime, rounds, RoundOutcome::Pass, std::nullopt};
}

std::pair<std::uint64_t, std::uint64_t> factor_from_involution(std::uint64_t n, std::uint64_t x) {
  if (n < 3) throw PreconditionError("factor_from_involution: n must be >= 3");
  x %= n;
  const auto sq = static_cast<std::uint64_t>(static_cast<unsigned __int128>(x) * x % n);
  if (sq != 1 || x == 1 || x == n - 1)
    throw PreconditionError("factor_from_involution: x must satisfy x^2 = 1 and x != +-1 mod n");
  return {std::gcd(n, x - 1), std::gcd(n, x + 1)};
}

std::uint64_t count_involutions(std::uint64_t n) {
  if (n < 3 || n % 2 == 0 || n > 1'000'000)
    throw ConfigError("count_involutions: n must be odd and in [3, 10^6]");
  std::uint64_t count = 0;
  for (std::uint64_t x = 1; x < n; ++x)
    if (x * x % n == 1) ++count;
  return count;
}

}  // namespace bbg
