#include "bbg/randgen.hpp"

#include "bbg/error.hpp"

namespace bbg {

UniformSource::UniformSource(std::shared_ptr<const std::vector<GroupElement>> elements,
                             std::uint64_t seed)
    : elements_(std::move(elements)), rng_(seed) {
  if (!elements_ || elements_->empty()) throw ConfigError("uniform source needs a nonempty element list");
}

ProductReplacement::ProductReplacement(std::shared_ptr<const BlackBox> bb,
                                       std::vector<GroupElement> generators, std::size_t k,
                                       std::uint64_t seed)
    : bb_(std::move(bb)), cumulative_(bb_->identity()), rng_(seed) {
  if (generators.empty()) throw ConfigError("product replacement needs at least one generator");
  if (k < 2 || k < generators.size())
    throw ConfigError("tuple size k must be >= max(2, number of generators)");
  tuple_.reserve(k);
  for (std::size_t s = 0; s < k; ++s) tuple_.push_back(generators[s % generators.size()]);
}

void ProductReplacement::apply(const ReplacementMove& move) {
  const GroupElement other =
      move.inverse ? bb_->invert(tuple_[move.other]) : tuple_[move.other];
  GroupElement& x = tuple_[move.target];
  x = move.left ? bb_->multiply(other, x) : bb_->multiply(x, other);
}

ReplacementMove ProductReplacement::step() {
  const std::size_t k = tuple_.size();
  // Uniform ordered pair i != j: draw j from the k - 1 slots other than i.
  const std::size_t i = rng_.bounded(k);
  std::size_t j = rng_.bounded(k - 1);
  if (j >= i) ++j;
  const std::uint64_t shape = rng_.bounded(4);
  ReplacementMove move{i, j, (shape & 1u) != 0, (shape & 2u) != 0};
  apply(move);
  cumulative_ = bb_->multiply(cumulative_, tuple_[i]);
  ++steps_;
  return move;
}

GroupElement ProductReplacement::next(PraMode mode) {
  step();
  if (mode == PraMode::Cumulative) return cumulative_;
  return tuple_[rng_.bounded(tuple_.size())];
}

std::unique_ptr<PraSource> make_pra_source(std::shared_ptr<const BlackBox> bb,
                                           std::vector<GroupElement> generators,
                                           std::uint64_t seed) {
  const std::size_t k = ProductReplacement::default_k(generators.size());
  ProductReplacement pra(std::move(bb), std::move(generators), k, seed);
  pra.burn_in(ProductReplacement::default_burn_in(k));
  return std::make_unique<PraSource>(std::move(pra), PraMode::Cumulative);
}

}  // namespace bbg
