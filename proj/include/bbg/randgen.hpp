#pragma once

#include <algorithm>
#include <cstdint>
#include <memory>
#include <vector>

#include "bbg/black_box.hpp"
#include "bbg/random.hpp"
#include "bbg/source.hpp"

namespace bbg {

enum class PraMode { Component, Cumulative };

// One edge of the product replacement graph: x_target is replaced by
// x_other^(+-1) * x_target (left) or x_target * x_other^(+-1) (right).
struct ReplacementMove {
  std::size_t target;
  std::size_t other;
  bool left;
  bool inverse;

  // The move that undoes this one.
  ReplacementMove inverted() const noexcept { return {target, other, left, !inverse}; }
  friend bool operator==(const ReplacementMove&, const ReplacementMove&) = default;
};

/**
 * The product replacement algorithm: a random walk on generating k-tuples
 * whose moves are the four replacements x_i := x_j^(+-1) x_i and
 * x_i := x_i x_j^(+-1) for a uniformly random ordered pair i != j.
 *
 * Every step also multiplies the changed entry into a running cumulative
 * product, which can be emitted instead of a tuple component.
 *
 * The tuple is initialised with the generators repeated cyclically up to
 * length k. No burn-in is applied by the constructor.
 */
class ProductReplacement {
 public:
  ProductReplacement(std::shared_ptr<const BlackBox> bb, std::vector<GroupElement> generators,
                     std::size_t k, std::uint64_t seed);

  static std::size_t default_k(std::size_t generator_count) {
    return std::max<std::size_t>(10, generator_count + 5);
  }
  static std::uint64_t default_burn_in(std::size_t k) {
    return std::max<std::uint64_t>(100, 20 * k);
  }

  // One random move; returns it. The cumulative product absorbs the new x_i.
  ReplacementMove step();

  // Applies a move to the tuple only (the cumulative product is untouched).
  void apply(const ReplacementMove& move);

  void burn_in(std::uint64_t steps) {
    for (std::uint64_t s = 0; s < steps; ++s) step();
  }

  // One step, then a uniformly chosen tuple entry or the cumulative product.
  GroupElement next(PraMode mode);

  const std::vector<GroupElement>& tuple() const noexcept { return tuple_; }
  const GroupElement& cumulative() const noexcept { return cumulative_; }
  std::size_t k() const noexcept { return tuple_.size(); }
  std::uint64_t steps_taken() const noexcept { return steps_; }
  const BlackBox& box() const noexcept { return *bb_; }
  const std::shared_ptr<const BlackBox>& shared_box() const noexcept { return bb_; }

 private:
  std::shared_ptr<const BlackBox> bb_;
  std::vector<GroupElement> tuple_;
  GroupElement cumulative_;
  Rng rng_;
  std::uint64_t steps_ = 0;
};

// A ProductReplacement exposed as a RandomSource in a fixed output mode.
class PraSource final : public RandomSource {
 public:
  PraSource(ProductReplacement pra, PraMode mode) : pra_(std::move(pra)), mode_(mode) {}
  GroupElement next() override { return pra_.next(mode_); }
  ProductReplacement& oracle() noexcept { return pra_; }

 private:
  ProductReplacement pra_;
  PraMode mode_;
};

// Convenience: default k, default burn-in, cumulative output.
std::unique_ptr<PraSource> make_pra_source(std::shared_ptr<const BlackBox> bb,
                                           std::vector<GroupElement> generators,
                                           std::uint64_t seed);

}  // namespace bbg
