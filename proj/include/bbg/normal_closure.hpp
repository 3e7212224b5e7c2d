#pragma once

#include <cstdint>
#include <memory>
#include <vector>

#include "bbg/black_box.hpp"
#include "bbg/random.hpp"
#include "bbg/source.hpp"

namespace bbg {

// An Andrews-Curtis move on the tuple: x_target is multiplied on the left
// or right by x_other^(+-1), optionally conjugated by w first.
struct AcMove {
  std::size_t target;
  std::size_t other;
  bool left;
  bool inverse;
  bool conjugated;
};

/**
 * Random elements of the normal closure N = <y_1^X, ..., y_m^X> of some
 * elements of an ambient black box group X.
 *
 * The state is a k-tuple of elements of N. Each call picks i != j and one
 * of eight replacements for x_i: x_i x_j^(+-1), x_j^(+-1) x_i, and the same
 * four with x_j replaced by a conjugate x_j^w for a fresh ambient element w.
 * The new x_i is multiplied into the cumulative product, which is returned.
 *
 * `conjugated_share` is the probability of choosing one of the four
 * conjugated shapes; 0.5 gives the flat distribution over all eight.
 */
class AndrewsCurtis final : public RandomSource {
 public:
  AndrewsCurtis(std::shared_ptr<const BlackBox> bb, std::unique_ptr<RandomSource> ambient,
                std::vector<GroupElement> normal_generators, std::size_t k, std::uint64_t seed,
                double conjugated_share = 0.5);

  GroupElement next() override;

  // Draws a random move and applies it to the tuple (no cumulative update).
  AcMove step_tuple();
  void apply(const AcMove& move, const GroupElement& conjugator);

  void discard(std::uint64_t outputs) {
    for (std::uint64_t s = 0; s < outputs; ++s) next();
  }

  const std::vector<GroupElement>& tuple() const noexcept { return tuple_; }
  const GroupElement& cumulative() const noexcept { return cumulative_; }

 private:
  std::shared_ptr<const BlackBox> bb_;
  std::unique_ptr<RandomSource> ambient_;
  std::vector<GroupElement> tuple_;
  GroupElement cumulative_;
  Rng rng_;
  double conjugated_share_;
};

// Baseline: random walk on the Cayley graph of N with respect to the
// conjugates of the normal generators, cur := cur * y_j^w with j uniform
// and w drawn from the ambient source.
class CayleyConjugateWalk final : public RandomSource {
 public:
  CayleyConjugateWalk(std::shared_ptr<const BlackBox> bb, std::unique_ptr<RandomSource> ambient,
                      std::vector<GroupElement> normal_generators, std::uint64_t seed);
  GroupElement next() override;

 private:
  std::shared_ptr<const BlackBox> bb_;
  std::unique_ptr<RandomSource> ambient_;
  std::vector<GroupElement> gens_;
  GroupElement current_;
  Rng rng_;
};

}  // namespace bbg
