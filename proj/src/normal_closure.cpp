#include "bbg/normal_closure.hpp"

#include "bbg/error.hpp"

namespace bbg {

AndrewsCurtis::AndrewsCurtis(std::shared_ptr<const BlackBox> bb,
                             std::unique_ptr<RandomSource> ambient,
                             std::vector<GroupElement> normal_generators, std::size_t k,
                             std::uint64_t seed, double conjugated_share)
    : bb_(std::move(bb)),
      ambient_(std::move(ambient)),
      cumulative_(bb_->identity()),
      rng_(seed),
      conjugated_share_(conjugated_share) {
  if (normal_generators.empty()) throw ConfigError("normal closure needs at least one generator");
  if (k < 2 || k < normal_generators.size())
    throw ConfigError("tuple size k must be >= max(2, number of normal generators)");
  if (!(conjugated_share >= 0.0 && conjugated_share <= 1.0))
    throw ConfigError("conjugated move share must lie in [0, 1]");
  if (!ambient_) throw ConfigError("normal closure needs an ambient random source");
  for (std::size_t s = 0; s < k; ++s) tuple_.push_back(normal_generators[s % normal_generators.size()]);
}

void AndrewsCurtis::apply(const AcMove& move, const GroupElement& conjugator) {
  GroupElement other = tuple_[move.other];
  if (move.conjugated) other = bb_->conjugate(other, conjugator);
  if (move.inverse) other = bb_->invert(other);
  GroupElement& x = tuple_[move.target];
  x = move.left ? bb_->multiply(other, x) : bb_->multiply(x, other);
}

AcMove AndrewsCurtis::step_tuple() {
  const std::size_t k = tuple_.size();
  const std::size_t i = rng_.bounded(k);
  std::size_t j = rng_.bounded(k - 1);
  if (j >= i) ++j;
  const bool conjugated = rng_.uniform01() < conjugated_share_;
  const std::uint64_t shape = rng_.bounded(4);
  AcMove move{i, j, (shape & 1u) != 0, (shape & 2u) != 0, conjugated};
  apply(move, conjugated ? ambient_->next() : bb_->identity());
  return move;
}

GroupElement AndrewsCurtis::next() {
  const AcMove move = step_tuple();
  cumulative_ = bb_->multiply(cumulative_, tuple_[move.target]);
  return cumulative_;
}

CayleyConjugateWalk::CayleyConjugateWalk(std::shared_ptr<const BlackBox> bb,
                                         std::unique_ptr<RandomSource> ambient,
                                         std::vector<GroupElement> normal_generators,
                                         std::uint64_t seed)
    : bb_(std::move(bb)),
      ambient_(std::move(ambient)),
      gens_(std::move(normal_generators)),
      current_(bb_->identity()),
      rng_(seed) {
  if (gens_.empty()) throw ConfigError("normal closure needs at least one generator");
  if (!ambient_) throw ConfigError("Cayley walk needs an ambient random source");
}

GroupElement CayleyConjugateWalk::next() {
  const GroupElement& y = gens_[rng_.bounded(gens_.size())];
  current_ = bb_->multiply(current_, bb_->conjugate(y, ambient_->next()));
  return current_;
}

}  // namespace bbg
