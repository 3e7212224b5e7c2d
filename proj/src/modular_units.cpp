#include <numeric>
#include <utility>

#include "bbg/backends.hpp"
#include "bbg/error.hpp"
#include "text_util.hpp"

namespace bbg {

namespace {

std::uint64_t checked_modulus(std::uint64_t n) {
  if (n < 3 || n % 2 == 0 || n >= (std::uint64_t{1} << 62))
    throw ConfigError("modular units need an odd modulus in [3, 2^62), got " + std::to_string(n));
  return n;
}

GroupElement encode_residue(std::uint64_t r) {
  std::string bytes(8, '\0');
  for (int k = 0; k < 8; ++k) bytes[k] = static_cast<char>((r >> (8 * k)) & 0xff);
  return GroupElement(std::move(bytes));
}

}  // namespace

ModularUnits::ModularUnits(std::uint64_t modulus)
    : BlackBox(encode_residue(1), coprime_refine({{checked_modulus(modulus) - 1, 1}})),
      n_(modulus) {}

std::uint64_t ModularUnits::residue(const GroupElement& x) const {
  std::uint64_t r = 0;
  auto d = x.data();
  for (int k = 7; k >= 0; --k) r = (r << 8) | d[k];
  return r;
}

GroupElement ModularUnits::from_residue(std::uint64_t r) const {
  r %= n_;
  if (std::gcd(r, n_) != 1)
    throw ConfigError(std::to_string(r) + " is not a unit modulo " + std::to_string(n_));
  return encode_residue(r);
}

GroupElement ModularUnits::do_multiply(const GroupElement& a, const GroupElement& b) const {
  const unsigned __int128 prod = static_cast<unsigned __int128>(residue(a)) * residue(b);
  return encode_residue(static_cast<std::uint64_t>(prod % n_));
}

GroupElement ModularUnits::do_invert(const GroupElement& x) const {
  // Extended Euclid on (residue, n).
  std::int64_t t = 0, new_t = 1;
  auto r = static_cast<std::int64_t>(n_), new_r = static_cast<std::int64_t>(residue(x));
  while (new_r != 0) {
    const std::int64_t q = r / new_r;
    t = std::exchange(new_t, t - q * new_t);
    r = std::exchange(new_r, r - q * new_r);
  }
  if (t < 0) t += static_cast<std::int64_t>(n_);
  return encode_residue(static_cast<std::uint64_t>(t));
}

std::string ModularUnits::format(const GroupElement& x) const { return std::to_string(residue(x)); }

GroupElement ModularUnits::parse(std::string_view text) const {
  const std::int64_t v = detail::parse_i64(text, "residue");
  const auto n = static_cast<std::int64_t>(n_);
  return from_residue(static_cast<std::uint64_t>(((v % n) + n) % n));
}

std::vector<GroupElement> ModularUnits::standard_generators() const {
  // Without factoring n there is no cheap generating set; small moduli get
  // every unit, larger ones the first 16 units, which generate in practice.
  std::vector<GroupElement> gens;
  const std::size_t limit = n_ <= 64 ? n_ : 16;
  for (std::uint64_t r = 2; r < n_ && gens.size() < limit; ++r)
    if (std::gcd(r, n_) == 1) gens.push_back(encode_residue(r));
  if (gens.empty()) gens.push_back(identity());
  return gens;
}

std::string ModularUnits::describe() const { return "units:" + std::to_string(n_); }

GroupElement ModularUnits::decode(std::string_view bytes) const {
  if (bytes.size() != 8) throw ConfigError("encoding has wrong length for " + describe());
  GroupElement raw{std::string(bytes)};
  const std::uint64_t r = residue(raw);
  if (r >= n_) throw ConfigError("residue out of range in encoding");
  return from_residue(r);
}

}  // namespace bbg
