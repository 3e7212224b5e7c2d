#pragma once

#include <cstdint>
#include <memory>
#include <vector>

#include "bbg/element.hpp"
#include "bbg/random.hpp"

namespace bbg {

// Anything that emits (pseudo-)random elements of some group: the product
// replacement oracle, the normal-closure and centraliser oracles, or a
// uniform sampler over an explicit list.
class RandomSource {
 public:
  virtual ~RandomSource() = default;
  virtual GroupElement next() = 0;
};

// Independent uniform draws from an explicit element list. Only usable on
// groups small enough to enumerate; serves as the "ideal" source in tests
// and exact experiments.
class UniformSource final : public RandomSource {
 public:
  UniformSource(std::shared_ptr<const std::vector<GroupElement>> elements,
                std::uint64_t seed);
  GroupElement next() override { return (*elements_)[rng_.bounded(elements_->size())]; }

 private:
  std::shared_ptr<const std::vector<GroupElement>> elements_;
  Rng rng_;
};

}  // namespace bbg
