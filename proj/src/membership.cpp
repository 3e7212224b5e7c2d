#include "bbg/membership.hpp"

#include <numeric>

#include "bbg/error.hpp"

namespace bbg {

MembershipVerdict contains(const BlackBox& bb, RandomSource& y_source, const OrderFunction& order,
                           const GroupElement& u, std::uint64_t k) {
  if (k == 0) throw ConfigError("membership test needs k >= 1 samples");
  std::uint64_t d = 0;
  for (std::uint64_t s = 1; s <= k; ++s) {
    d = std::gcd(d, order(bb.multiply(u, y_source.next())));
    if (d == 1) return {MembershipKind::DefiniteIn, 1, s};
  }
  return {MembershipKind::ProbablyOut, d, k};
}

MembershipVerdict quotient_equal(const BlackBox& bb, RandomSource& y_source,
                                 const OrderFunction& order, const GroupElement& u,
                                 const GroupElement& v, std::uint64_t k) {
  return contains(bb, y_source, order, bb.multiply(u, bb.invert(v)), k);
}

OrderFunction backend_order(const BlackBox& bb) {
  return [&bb](const GroupElement& x) { return bb.order(x); };
}

}  // namespace bbg
