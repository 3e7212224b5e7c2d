#include <numeric>
#include <sstream>

#include "bbg/backends.hpp"
#include "bbg/error.hpp"
#include "bbg/simd/kernels.hpp"
#include "text_util.hpp"

namespace bbg {

namespace {

unsigned checked_degree(unsigned n) {
  // lcm(1..47) no longer fits the 64-bit exponent.
  if (n < 1 || n > PermutationGroup::kMaxDegree)
    throw ConfigError("permutation degree must be in 1.." + std::to_string(PermutationGroup::kMaxDegree));
  return n;
}

FactoredExponent sym_exponent(unsigned n) {
  checked_degree(n);
  // lcm(1..n) = prod over primes p <= n of p^floor(log_p n)
  std::vector<PrimePower> factors;
  for (unsigned p = 2; p <= n; ++p) {
    bool prime = true;
    for (unsigned d = 2; d * d <= p; ++d)
      if (p % d == 0) {
        prime = false;
        break;
      }
    if (!prime) continue;
    std::uint32_t k = 0;
    for (std::uint64_t q = p; q <= n; q *= p) ++k;
    factors.push_back({p, k});
  }
  return FactoredExponent(std::move(factors));
}

GroupElement identity_perm(unsigned n) {
  std::string bytes(n, '\0');
  for (unsigned p = 0; p < n; ++p) bytes[p] = static_cast<char>(p);
  return GroupElement(std::move(bytes));
}

}  // namespace

std::uint64_t perm_order(std::span<const std::uint8_t> images) {
  std::vector<bool> seen(images.size(), false);
  std::uint64_t order = 1;
  for (std::size_t start = 0; start < images.size(); ++start) {
    if (seen[start]) continue;
    std::uint64_t len = 0;
    for (std::size_t p = start; !seen[p]; p = images[p]) {
      seen[p] = true;
      ++len;
    }
    order = std::lcm(order, len);
  }
  return order;
}

PermutationGroup::PermutationGroup(unsigned degree)
    : BlackBox(identity_perm(checked_degree(degree)), sym_exponent(degree)),
      degree_(degree) {}

GroupElement PermutationGroup::do_multiply(const GroupElement& a,
                                           const GroupElement& b) const {
  std::string out(degree_, '\0');
  simd::compose_bytes(a.data(), b.data(),
                      {reinterpret_cast<std::uint8_t*>(out.data()), out.size()});
  return GroupElement(std::move(out));
}

GroupElement PermutationGroup::do_invert(const GroupElement& x) const {
  auto img = x.data();
  std::string out(degree_, '\0');
  for (unsigned p = 0; p < degree_; ++p) out[img[p]] = static_cast<char>(p);
  return GroupElement(std::move(out));
}

std::uint64_t PermutationGroup::order(const GroupElement& x) const {
  return perm_order(x.data());
}

GroupElement PermutationGroup::from_images(const std::vector<unsigned>& images) const {
  if (images.size() != degree_)
    throw ConfigError("permutation has " + std::to_string(images.size()) +
                      " images, expected " + std::to_string(degree_));
  std::string bytes(degree_, '\0');
  std::vector<bool> hit(degree_, false);
  for (unsigned p = 0; p < degree_; ++p) {
    unsigned im = images[p];
    if (im < 1 || im > degree_ || hit[im - 1])
      throw ConfigError("images do not form a permutation of 1.." + std::to_string(degree_));
    hit[im - 1] = true;
    bytes[p] = static_cast<char>(im - 1);
  }
  return GroupElement(std::move(bytes));
}

std::vector<unsigned> PermutationGroup::images(const GroupElement& x) const {
  std::vector<unsigned> out;
  out.reserve(degree_);
  for (auto b : x.data()) out.push_back(b + 1u);
  return out;
}

std::string PermutationGroup::format(const GroupElement& x) const {
  auto img = x.data();
  std::vector<bool> seen(degree_, false);
  std::ostringstream os;
  bool any = false;
  for (unsigned start = 0; start < degree_; ++start) {
    if (seen[start] || img[start] == start) continue;
    any = true;
    os << '(';
    for (unsigned p = start; !seen[p]; p = img[p]) {
      if (p != start) os << ' ';
      seen[p] = true;
      os << p + 1;
    }
    os << ')';
  }
  if (!any) return "()";
  return os.str();
}

std::string PermutationGroup::format_images(const GroupElement& x) const {
  std::ostringstream os;
  os << '[';
  auto img = x.data();
  for (unsigned p = 0; p < degree_; ++p) os << (p ? "," : "") << img[p] + 1u;
  os << ']';
  return os.str();
}

GroupElement PermutationGroup::parse(std::string_view text) const {
  text = detail::trim(text);
  if (text.empty()) throw ConfigError("empty permutation literal");

  if (text.front() == '[') {
    if (text.back() != ']') throw ConfigError("unterminated one-line permutation");
    std::vector<unsigned> images;
    for (auto piece : detail::split_any(text.substr(1, text.size() - 2), ", "))
      images.push_back(static_cast<unsigned>(detail::parse_u64(piece, "point")));
    return from_images(images);
  }

  // Product of cycles, multiplied left to right.
  GroupElement result = identity();
  std::size_t pos = 0;
  while (pos < text.size()) {
    if (text[pos] == ' ' || text[pos] == '*') {
      ++pos;
      continue;
    }
    if (text[pos] != '(') throw ConfigError("expected '(' in cycle notation: " + std::string(text));
    auto close = text.find(')', pos);
    if (close == std::string_view::npos) throw ConfigError("unterminated cycle: " + std::string(text));
    std::vector<unsigned> cycle;
    for (auto piece : detail::split_any(text.substr(pos + 1, close - pos - 1), ", ")) {
      auto pt = detail::parse_u64(piece, "point");
      if (pt < 1 || pt > degree_)
        throw ConfigError("point " + std::to_string(pt) + " outside 1.." + std::to_string(degree_));
      cycle.push_back(static_cast<unsigned>(pt));
    }
    std::vector<unsigned> img(degree_);
    std::iota(img.begin(), img.end(), 1u);
    std::vector<bool> used(degree_ + 1, false);
    for (std::size_t k = 0; k < cycle.size(); ++k) {
      if (used[cycle[k]]) throw ConfigError("repeated point in cycle: " + std::string(text));
      used[cycle[k]] = true;
      img[cycle[k] - 1] = cycle[(k + 1) % cycle.size()];
    }
    result = do_multiply(result, from_images(img));
    pos = close + 1;
  }
  return result;
}

std::vector<GroupElement> PermutationGroup::standard_generators() const {
  if (degree_ == 1) return {identity()};
  std::vector<unsigned> swap(degree_), cycle(degree_);
  std::iota(swap.begin(), swap.end(), 1u);
  std::swap(swap[0], swap[1]);
  for (unsigned p = 0; p < degree_; ++p) cycle[p] = (p + 1) % degree_ + 1;
  if (degree_ == 2) return {from_images(swap)};
  return {from_images(swap), from_images(cycle)};
}

std::string PermutationGroup::describe() const { return "sym:" + std::to_string(degree_); }

GroupElement PermutationGroup::decode(std::string_view bytes) const {
  if (bytes.size() != degree_) throw ConfigError("encoding has wrong length for " + describe());
  std::vector<unsigned> img;
  for (unsigned char c : bytes) img.push_back(c + 1u);
  return from_images(img);
}

}  // namespace bbg
