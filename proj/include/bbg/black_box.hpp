#pragma once

#include <atomic>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "bbg/element.hpp"
#include "bbg/exponent.hpp"

namespace bbg {

/**
 * A black box group: elements are opaque canonical encodings, and the only
 * access to the group is through multiplication, inversion, equality and
 * the identity, together with a known global exponent E (x^E = 1 for all x).
 *
 * Conjugation is x^g = g^-1 * x * g throughout the library.
 *
 * Arithmetic is pure apart from the multiplication counter, which is a
 * relaxed atomic so instances may be shared between threads.
 */
class BlackBox {
 public:
  BlackBox(const BlackBox&) = delete;
  BlackBox& operator=(const BlackBox&) = delete;
  virtual ~BlackBox() = default;

  GroupElement multiply(const GroupElement& a, const GroupElement& b) const {
    mults_.fetch_add(1, std::memory_order_relaxed);
    return do_multiply(a, b);
  }
  GroupElement invert(const GroupElement& x) const { return do_invert(x); }
  const GroupElement& identity() const noexcept { return identity_; }
  bool is_identity(const GroupElement& x) const { return x == identity_; }
  const FactoredExponent& exponent() const noexcept { return exponent_; }

  // x^g = g^-1 x g
  GroupElement conjugate(const GroupElement& x, const GroupElement& g) const;

  std::size_t encoding_length() const noexcept { return identity_.size(); }

  // The order oracle used by the membership test. Backends with a true
  // order oracle (permutations) override this; the default is the
  // pseudo-order over the exponent's factor base.
  virtual std::uint64_t order(const GroupElement& x) const;

  // Element literal I/O. parse() throws ConfigError on malformed text.
  virtual std::string format(const GroupElement& x) const = 0;
  virtual GroupElement parse(std::string_view text) const = 0;

  // A generating set for the whole group this backend models.
  virtual std::vector<GroupElement> standard_generators() const = 0;

  // Backend spec string, e.g. "sym:5".
  virtual std::string describe() const = 0;

  // Throws ConfigError unless the bytes are a valid canonical encoding.
  virtual GroupElement decode(std::string_view bytes) const = 0;

  std::uint64_t multiplications() const noexcept {
    return mults_.load(std::memory_order_relaxed);
  }
  void reset_multiplications() noexcept { mults_.store(0, std::memory_order_relaxed); }

 protected:
  BlackBox(GroupElement identity, FactoredExponent exponent)
      : identity_(std::move(identity)), exponent_(std::move(exponent)) {}

  virtual GroupElement do_multiply(const GroupElement& a,
                                   const GroupElement& b) const = 0;
  virtual GroupElement do_invert(const GroupElement& x) const = 0;

 private:
  GroupElement identity_;
  FactoredExponent exponent_;
  mutable std::atomic<std::uint64_t> mults_{0};
};

// x^e by left-to-right square-and-multiply: at most 2*floor(log2 e)
// multiplications.
GroupElement pow(const BlackBox& bb, const GroupElement& x, std::uint64_t e);

// Least l over the exponent's factor base with x^l = 1. Throws
// ExponentError if x^E != 1.
std::uint64_t pseudo_order(const BlackBox& bb, const GroupElement& x);

// True when x^m = 1 for the odd part m of E, i.e. x has odd order.
bool has_odd_order(const BlackBox& bb, const GroupElement& x);

// i(x): the last non-identity term of x^m, (x^m)^2, ..., (x^m)^(2^t), or the
// identity if x^m = 1. Returns nullopt if the sequence does not reach the
// identity within t squarings.
std::optional<GroupElement> try_involution_from(const BlackBox& bb,
                                                const GroupElement& x);

// As above; throws ExponentError instead of returning nullopt.
GroupElement involution_from(const BlackBox& bb, const GroupElement& x);

// y = x^((m+1)/2), so y^2 = x. Throws PreconditionError when x^m != 1.
GroupElement sqrt_odd_order(const BlackBox& bb, const GroupElement& x);

}  // namespace bbg
