#include "bbg/black_box.hpp"

#include <bit>

#include "bbg/error.hpp"

namespace bbg {

GroupElement BlackBox::conjugate(const GroupElement& x, const GroupElement& g) const {
  return multiply(multiply(invert(g), x), g);
}

std::uint64_t BlackBox::order(const GroupElement& x) const {
  return pseudo_order(*this, x);
}

GroupElement pow(const BlackBox& bb, const GroupElement& x, std::uint64_t e) {
  if (e == 0) return bb.identity();
  GroupElement acc = x;
  for (int bit = std::bit_width(e) - 2; bit >= 0; --bit) {
    acc = bb.multiply(acc, acc);
    if ((e >> bit) & 1u) acc = bb.multiply(acc, x);
  }
  return acc;
}

std::uint64_t pseudo_order(const BlackBox& bb, const GroupElement& x) {
  const FactoredExponent& E = bb.exponent();
  if (!bb.is_identity(pow(bb, x, E.value())))
    throw ExponentError("pseudo_order: x^E != 1; element outside the claimed group");
  std::uint64_t l = E.value();
  for (const auto& f : E.factors()) {
    for (std::uint32_t k = 0; k < f.multiplicity; ++k) {
      std::uint64_t candidate = l / f.base;
      if (!bb.is_identity(pow(bb, x, candidate))) break;
      l = candidate;
    }
  }
  return l;
}

bool has_odd_order(const BlackBox& bb, const GroupElement& x) {
  return bb.is_identity(pow(bb, x, bb.exponent().odd_part()));
}

std::optional<GroupElement> try_involution_from(const BlackBox& bb,
                                                const GroupElement& x) {
  GroupElement y = pow(bb, x, bb.exponent().odd_part());
  if (bb.is_identity(y)) return y;
  for (std::uint32_t s = 0; s < bb.exponent().two_part(); ++s) {
    GroupElement sq = bb.multiply(y, y);
    if (bb.is_identity(sq)) return y;
    y = std::move(sq);
  }
  return std::nullopt;
}

GroupElement involution_from(const BlackBox& bb, const GroupElement& x) {
  auto i = try_involution_from(bb, x);
  if (!i)
    throw ExponentError(
        "involution_from: squaring sequence did not reach the identity; "
        "exponent is wrong for this group");
  return std::move(*i);
}

GroupElement sqrt_odd_order(const BlackBox& bb, const GroupElement& x) {
  const std::uint64_t r = bb.exponent().odd_part();
  if (!bb.is_identity(pow(bb, x, r)))
    throw PreconditionError("sqrt_odd_order: x does not have odd order");
  return pow(bb, x, r / 2 + 1);  // (r+1)/2 for odd r
}

}  // namespace bbg
