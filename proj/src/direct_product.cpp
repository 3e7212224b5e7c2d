#include <sstream>

#include "bbg/backends.hpp"
#include "bbg/error.hpp"
#include "text_util.hpp"

namespace bbg {

namespace {

GroupElement concat_identities(const std::vector<std::shared_ptr<const BlackBox>>& factors) {
  if (factors.empty()) throw ConfigError("direct product needs at least one factor");
  std::string bytes;
  for (const auto& f : factors) bytes += f->identity().bytes();
  return GroupElement(std::move(bytes));
}

// All factors share one exponent in the common case (powers of one group);
// otherwise the product of the exponents is still a valid exponent.
FactoredExponent product_exponent(const std::vector<std::shared_ptr<const BlackBox>>& factors) {
  bool all_same = true;
  for (const auto& f : factors) all_same = all_same && f->exponent() == factors[0]->exponent();
  if (all_same) return factors[0]->exponent();
  std::vector<std::pair<std::uint64_t, std::uint32_t>> raw;
  for (const auto& f : factors)
    for (const auto& pp : f->exponent().factors()) raw.emplace_back(pp.base, pp.multiplicity);
  return coprime_refine(raw);
}

}  // namespace

DirectProduct::DirectProduct(std::vector<std::shared_ptr<const BlackBox>> factors)
    : BlackBox(concat_identities(factors), product_exponent(factors)),
      factors_(std::move(factors)) {
  std::size_t off = 0;
  for (const auto& f : factors_) {
    offsets_.push_back(off);
    off += f->encoding_length();
  }
  offsets_.push_back(off);
}

std::vector<GroupElement> DirectProduct::split(const GroupElement& x) const {
  std::vector<GroupElement> parts;
  parts.reserve(factors_.size());
  for (std::size_t k = 0; k < factors_.size(); ++k)
    parts.emplace_back(std::string(x.bytes().substr(offsets_[k], offsets_[k + 1] - offsets_[k])));
  return parts;
}

GroupElement DirectProduct::combine(const std::vector<GroupElement>& parts) const {
  if (parts.size() != factors_.size()) throw ConfigError("wrong number of direct-product components");
  std::string bytes;
  bytes.reserve(offsets_.back());
  for (std::size_t k = 0; k < parts.size(); ++k) {
    if (parts[k].size() != factors_[k]->encoding_length())
      throw ConfigError("direct-product component has wrong encoding length");
    bytes += parts[k].bytes();
  }
  return GroupElement(std::move(bytes));
}

GroupElement DirectProduct::do_multiply(const GroupElement& a, const GroupElement& b) const {
  auto pa = split(a), pb = split(b);
  std::vector<GroupElement> out;
  out.reserve(pa.size());
  // Component products are not counted separately; one call is one multiplication.
  for (std::size_t k = 0; k < pa.size(); ++k) out.push_back(factors_[k]->multiply(pa[k], pb[k]));
  return combine(out);
}

GroupElement DirectProduct::do_invert(const GroupElement& x) const {
  auto parts = split(x);
  for (std::size_t k = 0; k < parts.size(); ++k) parts[k] = factors_[k]->invert(parts[k]);
  return combine(parts);
}

std::string DirectProduct::format(const GroupElement& x) const {
  auto parts = split(x);
  std::string out;
  for (std::size_t k = 0; k < parts.size(); ++k) {
    if (k) out += " | ";
    out += factors_[k]->format(parts[k]);
  }
  return out;
}

GroupElement DirectProduct::parse(std::string_view text) const {
  std::vector<GroupElement> parts;
  std::size_t start = 0;
  for (std::size_t k = 0; k < factors_.size(); ++k) {
    auto bar = text.find('|', start);
    if ((bar == std::string_view::npos) != (k + 1 == factors_.size()))
      throw ConfigError("direct-product literal needs " + std::to_string(factors_.size()) +
                        " components separated by '|'");
    parts.push_back(factors_[k]->parse(text.substr(start, bar == text.npos ? text.npos : bar - start)));
    start = bar + 1;
  }
  return combine(parts);
}

std::vector<GroupElement> DirectProduct::standard_generators() const {
  std::vector<GroupElement> gens;
  for (std::size_t k = 0; k < factors_.size(); ++k) {
    std::vector<GroupElement> parts;
    for (const auto& f : factors_) parts.push_back(f->identity());
    for (const auto& g : factors_[k]->standard_generators()) {
      parts[k] = g;
      gens.push_back(combine(parts));
    }
  }
  return gens;
}

std::string DirectProduct::describe() const {
  bool all_same = true;
  for (const auto& f : factors_) all_same = all_same && f->describe() == factors_[0]->describe();
  if (all_same) return factors_[0]->describe() + "^" + std::to_string(factors_.size());
  std::string out;
  for (std::size_t k = 0; k < factors_.size(); ++k) out += (k ? " x " : "") + factors_[k]->describe();
  return out;
}

GroupElement DirectProduct::decode(std::string_view bytes) const {
  if (bytes.size() != offsets_.back()) throw ConfigError("encoding has wrong length for " + describe());
  std::vector<GroupElement> parts;
  for (std::size_t k = 0; k < factors_.size(); ++k)
    parts.push_back(factors_[k]->decode(bytes.substr(offsets_[k], offsets_[k + 1] - offsets_[k])));
  return combine(parts);
}

}  // namespace bbg
