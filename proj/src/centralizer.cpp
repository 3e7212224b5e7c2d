#include "bbg/centralizer.hpp"

#include <cmath>

#include "bbg/error.hpp"

namespace bbg {

namespace {

// z = i * i^x
GroupElement dihedral_product(const BlackBox& bb, const GroupElement& i, const GroupElement& x) {
  return bb.multiply(i, bb.conjugate(i, x));
}

GroupElement zeta1_from(const BlackBox& bb, const GroupElement& z, const GroupElement& x) {
  const std::uint64_t r = bb.exponent().odd_part();
  return bb.multiply(pow(bb, z, r / 2 + 1), bb.invert(x));
}

}  // namespace

std::optional<GroupElement> zeta1(const BlackBox& bb, const GroupElement& i,
                                  const GroupElement& x) {
  const GroupElement z = dihedral_product(bb, i, x);
  if (!has_odd_order(bb, z)) return std::nullopt;
  return zeta1_from(bb, z, x);
}

std::optional<GroupElement> zeta0(const BlackBox& bb, const GroupElement& i,
                                  const GroupElement& x) {
  const GroupElement z = dihedral_product(bb, i, x);
  if (has_odd_order(bb, z)) return std::nullopt;
  return involution_from(bb, z);
}

std::uint64_t transposition_discard(unsigned n) {
  return static_cast<std::uint64_t>(std::ceil(0.5 * n * std::log(static_cast<double>(n))));
}

CentralizerOracle::CentralizerOracle(std::shared_ptr<const BlackBox> bb, GroupElement involution,
                                     std::unique_ptr<RandomSource> source,
                                     CentralizerOptions options)
    : bb_(std::move(bb)),
      i_(std::move(involution)),
      source_(std::move(source)),
      options_(options),
      cumulative_(bb_->identity()) {
  if (!source_) throw ConfigError("centraliser oracle needs a random source");
  if (bb_->is_identity(i_) || !bb_->is_identity(bb_->multiply(i_, i_)))
    throw ConfigError("centraliser oracle needs an involution (i^2 = 1, i != 1)");
  if (options_.rejection_budget == 0) throw ConfigError("rejection budget must be >= 1");
}

GroupElement CentralizerOracle::draw_defined(bool odd) {
  for (std::uint64_t attempt = 0; attempt < options_.rejection_budget; ++attempt) {
    GroupElement x = source_->next();
    ++draws_;
    auto value = odd ? zeta1(*bb_, i_, x) : zeta0(*bb_, i_, x);
    if (value) return std::move(*value);
    ++undefined_;
  }
  throw StarvationError(std::string(odd ? "zeta1" : "zeta0") + " undefined on " +
                        std::to_string(options_.rejection_budget) +
                        " consecutive draws (rejection budget exhausted)");
}

GroupElement CentralizerOracle::step() {
  switch (options_.mode) {
    case CentralizerMode::Odd:
      return draw_defined(true);
    case CentralizerMode::Even:
      cumulative_ = bb_->multiply(cumulative_, draw_defined(false));
      return cumulative_;
    case CentralizerMode::Mixed: {
      GroupElement x = source_->next();
      ++draws_;
      const GroupElement z = dihedral_product(*bb_, i_, x);
      const GroupElement factor =
          has_odd_order(*bb_, z) ? zeta1_from(*bb_, z, x) : involution_from(*bb_, z);
      cumulative_ = bb_->multiply(cumulative_, factor);
      return cumulative_;
    }
  }
  throw std::logic_error("unreachable centraliser mode");
}

GroupElement CentralizerOracle::next() {
  if (!discarded_ && options_.mode != CentralizerMode::Odd) {
    discarded_ = true;
    for (std::uint64_t s = 0; s < options_.discard; ++s) step();
  }
  return step();
}

GroupElement find_involution(const BlackBox& bb, RandomSource& source, std::uint64_t budget) {
  if (budget == 0) throw ConfigError("find_involution: budget must be >= 1");
  for (std::uint64_t attempt = 0; attempt < budget; ++attempt) {
    GroupElement i = involution_from(bb, source.next());
    if (!bb.is_identity(i)) return i;
  }
  throw StarvationError("find_involution: no element of even order in " + std::to_string(budget) +
                        " draws (the group may have odd order)");
}

ShareEstimate odd_order_share(const BlackBox& bb, const GroupElement& i, RandomSource& source,
                              std::uint64_t trials) {
  if (trials == 0) throw ConfigError("odd_order_share: trials must be >= 1");
  ShareEstimate est;
  est.trials = trials;
  for (std::uint64_t t = 0; t < trials; ++t)
    if (has_odd_order(bb, dihedral_product(bb, i, source.next()))) ++est.odd;
  const double p = static_cast<double>(est.odd) / static_cast<double>(trials);
  est.estimate = p;
  est.standard_error = std::sqrt(p * (1.0 - p) / static_cast<double>(trials));
  return est;
}

ExactShare odd_order_share_exact(const EnumeratedGroup& group, const GroupElement& i) {
  ExactShare share;
  const BlackBox& bb = group.box();
  for (const auto& x : group.elements()) {
    ++share.total;
    if (has_odd_order(bb, dihedral_product(bb, i, x))) ++share.odd;
  }
  return share;
}

}  // namespace bbg
