#include "bbg/exponent.hpp"

#include <algorithm>
#include <bit>
#include <numeric>
#include <sstream>

#include "bbg/error.hpp"

namespace bbg {

std::uint64_t checked_mul(std::uint64_t a, std::uint64_t b) {
  std::uint64_t r;
  if (__builtin_mul_overflow(a, b, &r))
    throw NumericGuardError("exponent does not fit in 64 bits");
  return r;
}

std::uint64_t checked_pow(std::uint64_t base, std::uint32_t e) {
  std::uint64_t r = 1;
  for (std::uint32_t i = 0; i < e; ++i) r = checked_mul(r, base);
  return r;
}

FactoredExponent::FactoredExponent(std::vector<PrimePower> factors)
    : factors_(std::move(factors)) {
  std::sort(factors_.begin(), factors_.end(),
            [](const PrimePower& a, const PrimePower& b) { return a.base < b.base; });
  for (std::size_t a = 0; a < factors_.size(); ++a) {
    if (factors_[a].base < 2 || factors_[a].multiplicity == 0)
      throw ConfigError("factor base entries must have base >= 2 and multiplicity >= 1");
    for (std::size_t b = a + 1; b < factors_.size(); ++b)
      if (std::gcd(factors_[a].base, factors_[b].base) != 1)
        throw ConfigError("factor bases must be pairwise coprime");
  }
  for (const auto& f : factors_) {
    std::uint64_t pp = checked_pow(f.base, f.multiplicity);
    value_ = checked_mul(value_, pp);
    if (f.base == 2)
      two_part_ = f.multiplicity;
    else if (f.base % 2 == 0)
      throw ConfigError("the 2-part must be split out as base 2");
    else
      odd_part_ = checked_mul(odd_part_, pp);
  }
}

std::string FactoredExponent::to_string() const {
  if (factors_.empty()) return "1";
  std::ostringstream os;
  for (std::size_t i = 0; i < factors_.size(); ++i) {
    if (i) os << " * ";
    os << factors_[i].base;
    if (factors_[i].multiplicity > 1) os << '^' << factors_[i].multiplicity;
  }
  return os.str();
}

namespace {

struct Entry {
  std::uint64_t base;
  std::uint64_t mult;  // wide: multiplicities add up during splitting
};

void push_merge(std::vector<Entry>& out, std::uint64_t base, std::uint64_t mult) {
  if (base == 1 || mult == 0) return;
  for (auto& e : out)
    if (e.base == base) {
      e.mult += mult;
      return;
    }
  out.push_back({base, mult});
}

}  // namespace

FactoredExponent coprime_refine(
    const std::vector<std::pair<std::uint64_t, std::uint32_t>>& raw) {
  std::vector<Entry> odd;
  std::uint64_t twos = 0;
  for (auto [n, m] : raw) {
    if (n < 2) throw ConfigError("coprime_refine: integers must be >= 2");
    if (m == 0) continue;
    int s = std::countr_zero(n);
    twos += static_cast<std::uint64_t>(s) * m;
    push_merge(odd, n >> s, m);
  }

  // Split any pair with a common factor g into g, a/g, b/g until the base
  // is pairwise coprime. Each split strictly decreases the sum of logs of
  // the non-coprime part, so this terminates.
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t a = 0; a < odd.size() && !changed; ++a) {
      for (std::size_t b = a + 1; b < odd.size() && !changed; ++b) {
        std::uint64_t g = std::gcd(odd[a].base, odd[b].base);
        if (g == 1) continue;
        Entry ea = odd[a], eb = odd[b];
        odd.erase(odd.begin() + static_cast<std::ptrdiff_t>(b));
        odd.erase(odd.begin() + static_cast<std::ptrdiff_t>(a));
        push_merge(odd, g, ea.mult + eb.mult);
        push_merge(odd, ea.base / g, ea.mult);
        push_merge(odd, eb.base / g, eb.mult);
        changed = true;
      }
    }
  }

  std::vector<PrimePower> factors;
  if (twos > 0) factors.push_back({2, static_cast<std::uint32_t>(twos)});
  for (const auto& e : odd) {
    if (e.mult > 64) throw NumericGuardError("exponent does not fit in 64 bits");
    factors.push_back({e.base, static_cast<std::uint32_t>(e.mult)});
  }
  if (twos > 64) throw NumericGuardError("exponent does not fit in 64 bits");
  return FactoredExponent(std::move(factors));
}

}  // namespace bbg
