#pragma once

#include <memory>
#include <string>
#include <vector>

#include "bbg/backends.hpp"
#include "bbg/enumerate.hpp"
#include "bbg/random.hpp"
#include "bbg/source.hpp"

namespace bbg::test {

inline std::shared_ptr<const PermutationGroup> sym(unsigned n) {
  return std::make_shared<const PermutationGroup>(n);
}

inline std::shared_ptr<const MatrixGroup> matrices(MatrixFamily f, unsigned n, std::uint64_t p) {
  return std::make_shared<const MatrixGroup>(f, n, p);
}

inline EnumeratedGroup whole(const BlackBox& bb) {
  return EnumeratedGroup::closure(bb, bb.standard_generators());
}

inline std::unique_ptr<UniformSource> uniform_source(const EnumeratedGroup& g, std::uint64_t seed) {
  return std::make_unique<UniformSource>(g.shared_elements(), seed);
}

// Alt_n as the closure of the 3-cycles (1 2 k).
inline EnumeratedGroup alternating(const PermutationGroup& s) {
  std::vector<GroupElement> gens;
  for (unsigned k = 3; k <= s.degree(); ++k)
    gens.push_back(s.parse("(1 2 " + std::to_string(k) + ")"));
  return EnumeratedGroup::closure(s, gens);
}

// Sign of a permutation by counting inversions; independent of the
// backend's cycle code.
inline int sign(const PermutationGroup& s, const GroupElement& x) {
  auto img = s.images(x);
  int inv = 0;
  for (std::size_t a = 0; a < img.size(); ++a)
    for (std::size_t b = a + 1; b < img.size(); ++b)
      if (img[a] > img[b]) ++inv;
  return inv % 2 ? -1 : 1;
}

}  // namespace bbg::test
