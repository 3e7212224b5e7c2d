#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <unordered_map>
#include <vector>

#include "bbg/black_box.hpp"

namespace bbg {

/// An explicitly listed finite group (or subgroup) of a black box, sorted
/// by encoding. The black box must outlive this object.
///
/// This is the brute-force side of every exhaustive check: nothing here
/// uses the oracles under test.
class EnumeratedGroup {
 public:
  // Breadth-first closure of the generators under right multiplication.
  // Throws NumericGuardError beyond max_size elements.
  static EnumeratedGroup closure(const BlackBox& bb, const std::vector<GroupElement>& gens,
                                 std::size_t max_size = 1'000'000);

  // Takes the listed elements as the group (deduplicated, sorted).
  static EnumeratedGroup from_elements(const BlackBox& bb, std::vector<GroupElement> elements);

  const BlackBox& box() const noexcept { return *bb_; }
  std::size_t size() const noexcept { return elements_->size(); }
  const std::vector<GroupElement>& elements() const noexcept { return *elements_; }
  std::shared_ptr<const std::vector<GroupElement>> shared_elements() const { return elements_; }
  const GroupElement& operator[](std::size_t k) const { return (*elements_)[k]; }

  std::optional<std::uint32_t> index_of(const GroupElement& x) const;
  bool contains(const GroupElement& x) const { return index_.count(x) != 0; }

  // row[k] = index of elements[k] * g. Throws if g does not normalise the
  // listed set (a product leaves the group).
  std::vector<std::uint32_t> right_translation(const GroupElement& g) const;
  // row[k] = index of g * elements[k].
  std::vector<std::uint32_t> left_translation(const GroupElement& g) const;

  // Equality as sets.
  friend bool operator==(const EnumeratedGroup& a, const EnumeratedGroup& b) {
    return a.elements() == b.elements();
  }

 private:
  EnumeratedGroup(const BlackBox& bb, std::vector<GroupElement> sorted);

  const BlackBox* bb_;
  std::shared_ptr<const std::vector<GroupElement>> elements_;
  std::unordered_map<GroupElement, std::uint32_t> index_;
};

// Normal closure of `normal_gens` inside `ambient`: the closure of all
// conjugates y^g, g in ambient.
EnumeratedGroup normal_closure_bruteforce(const EnumeratedGroup& ambient,
                                          const std::vector<GroupElement>& normal_gens);

// C(i) = { g in group : g i = i g }, by filtering.
EnumeratedGroup centralizer_bruteforce(const EnumeratedGroup& group, const GroupElement& i);

// Order by repeated multiplication: least k >= 1 with x^k = 1. Guarded.
std::uint64_t naive_order(const BlackBox& bb, const GroupElement& x,
                          std::uint64_t limit = 1'000'000);

// All powers x^0, x^1, ..., x^(o-1).
std::vector<GroupElement> naive_powers(const BlackBox& bb, const GroupElement& x);

}  // namespace bbg
