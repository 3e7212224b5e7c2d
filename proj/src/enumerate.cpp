#include "bbg/enumerate.hpp"

#include <algorithm>
#include <deque>
#include <unordered_set>

#include "bbg/error.hpp"

namespace bbg {

EnumeratedGroup::EnumeratedGroup(const BlackBox& bb, std::vector<GroupElement> sorted)
    : bb_(&bb), elements_(std::make_shared<const std::vector<GroupElement>>(std::move(sorted))) {
  index_.reserve(elements_->size());
  for (std::uint32_t k = 0; k < elements_->size(); ++k) index_.emplace((*elements_)[k], k);
}

EnumeratedGroup EnumeratedGroup::closure(const BlackBox& bb,
                                         const std::vector<GroupElement>& gens,
                                         std::size_t max_size) {
  std::unordered_set<GroupElement> seen{bb.identity()};
  std::deque<GroupElement> frontier{bb.identity()};
  while (!frontier.empty()) {
    GroupElement x = std::move(frontier.front());
    frontier.pop_front();
    for (const auto& g : gens) {
      GroupElement y = bb.multiply(x, g);
      if (seen.insert(y).second) {
        if (seen.size() > max_size)
          throw NumericGuardError("group closure exceeds " + std::to_string(max_size) + " elements");
        frontier.push_back(std::move(y));
      }
    }
  }
  std::vector<GroupElement> out(seen.begin(), seen.end());
  std::sort(out.begin(), out.end());
  return EnumeratedGroup(bb, std::move(out));
}

EnumeratedGroup EnumeratedGroup::from_elements(const BlackBox& bb,
                                               std::vector<GroupElement> elements) {
  std::sort(elements.begin(), elements.end());
  elements.erase(std::unique(elements.begin(), elements.end()), elements.end());
  return EnumeratedGroup(bb, std::move(elements));
}

std::optional<std::uint32_t> EnumeratedGroup::index_of(const GroupElement& x) const {
  auto it = index_.find(x);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::vector<std::uint32_t> EnumeratedGroup::right_translation(const GroupElement& g) const {
  std::vector<std::uint32_t> row(size());
  for (std::size_t k = 0; k < size(); ++k) {
    auto idx = index_of(bb_->multiply((*elements_)[k], g));
    if (!idx) throw PreconditionError("right translation leaves the enumerated group");
    row[k] = *idx;
  }
  return row;
}

std::vector<std::uint32_t> EnumeratedGroup::left_translation(const GroupElement& g) const {
  std::vector<std::uint32_t> row(size());
  for (std::size_t k = 0; k < size(); ++k) {
    auto idx = index_of(bb_->multiply(g, (*elements_)[k]));
    if (!idx) throw PreconditionError("left translation leaves the enumerated group");
    row[k] = *idx;
  }
  return row;
}

EnumeratedGroup normal_closure_bruteforce(const EnumeratedGroup& ambient,
                                          const std::vector<GroupElement>& normal_gens) {
  const BlackBox& bb = ambient.box();
  std::unordered_set<GroupElement> conjugates;
  for (const auto& y : normal_gens)
    for (const auto& g : ambient.elements()) conjugates.insert(bb.conjugate(y, g));
  return EnumeratedGroup::closure(bb, {conjugates.begin(), conjugates.end()});
}

EnumeratedGroup centralizer_bruteforce(const EnumeratedGroup& group, const GroupElement& i) {
  const BlackBox& bb = group.box();
  std::vector<GroupElement> out;
  for (const auto& g : group.elements())
    if (bb.multiply(g, i) == bb.multiply(i, g)) out.push_back(g);
  return EnumeratedGroup::from_elements(bb, std::move(out));
}

std::uint64_t naive_order(const BlackBox& bb, const GroupElement& x, std::uint64_t limit) {
  GroupElement y = x;
  for (std::uint64_t k = 1; k <= limit; ++k) {
    if (bb.is_identity(y)) return k;
    y = bb.multiply(y, x);
  }
  throw NumericGuardError("naive_order: no return to the identity within the limit");
}

std::vector<GroupElement> naive_powers(const BlackBox& bb, const GroupElement& x) {
  std::vector<GroupElement> out{bb.identity()};
  for (GroupElement y = x; !bb.is_identity(y); y = bb.multiply(y, x)) {
    out.push_back(y);
    if (out.size() > 1'000'000) throw NumericGuardError("naive_powers: order too large");
  }
  return out;
}

}  // namespace bbg
