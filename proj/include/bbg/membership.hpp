#pragma once

#include <cstdint>
#include <functional>

#include "bbg/black_box.hpp"
#include "bbg/source.hpp"

namespace bbg {

enum class MembershipKind { DefiniteIn, ProbablyOut };

struct MembershipVerdict {
  MembershipKind kind;
  std::uint64_t witness_gcd;  // the accumulated gcd D; 1 iff DefiniteIn
  std::uint64_t samples_used;
};

using OrderFunction = std::function<std::uint64_t(const GroupElement&)>;

inline constexpr std::uint64_t default_membership_samples = 32;

// Leedham-Green's test for membership in a simple normal subgroup Y:
// D = gcd(o(u y_1), ..., o(u y_k)) over random y_j from Y. D = 1 proves
// u in Y, since otherwise the order of uY in X/Y divides every o(u y_j).
// Stops early once D reaches 1.
MembershipVerdict contains(const BlackBox& bb, RandomSource& y_source, const OrderFunction& order,
                           const GroupElement& u, std::uint64_t k);

// u = v in X/Y, tested as u v^-1 in Y.
MembershipVerdict quotient_equal(const BlackBox& bb, RandomSource& y_source,
                                 const OrderFunction& order, const GroupElement& u,
                                 const GroupElement& v, std::uint64_t k);

// The backend's own order oracle (true order for permutations, pseudo-order
// otherwise).
OrderFunction backend_order(const BlackBox& bb);

}  // namespace bbg
