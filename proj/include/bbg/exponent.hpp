#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace bbg {

struct PrimePower {
  std::uint64_t base;
  std::uint32_t multiplicity;

  friend bool operator==(const PrimePower&, const PrimePower&) = default;
};

/// A global exponent E stored as a pairwise-coprime factor base.
///
/// The bases need not be prime; they are the finest split obtainable by
/// gcd refinement of whatever factors the group parameters supply. The
/// 2-part is always split out as the explicit base 2, so E = 2^t * m with
/// m odd can be read off directly.
class FactoredExponent {
 public:
  FactoredExponent() = default;

  // Factors sorted by base. Requires pairwise coprime bases >= 2.
  explicit FactoredExponent(std::vector<PrimePower> factors);

  const std::vector<PrimePower>& factors() const noexcept { return factors_; }
  std::uint64_t value() const noexcept { return value_; }
  std::uint32_t two_part() const noexcept { return two_part_; }
  std::uint64_t odd_part() const noexcept { return odd_part_; }

  // "2^4 * 35"
  std::string to_string() const;

  friend bool operator==(const FactoredExponent& a, const FactoredExponent& b) {
    return a.factors_ == b.factors_;
  }

 private:
  std::vector<PrimePower> factors_;
  std::uint64_t value_ = 1;
  std::uint32_t two_part_ = 0;
  std::uint64_t odd_part_ = 1;
};

// Splits the product of the raw factors into a pairwise-coprime base by
// repeated gcd splitting. Throws NumericGuardError if the product does not
// fit in 64 bits, ConfigError if a raw integer is < 2.
FactoredExponent coprime_refine(
    const std::vector<std::pair<std::uint64_t, std::uint32_t>>& raw);

// Checked arithmetic helpers shared by the exponent code.
std::uint64_t checked_mul(std::uint64_t a, std::uint64_t b);
std::uint64_t checked_pow(std::uint64_t base, std::uint32_t e);

}  // namespace bbg
