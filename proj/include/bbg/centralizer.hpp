#pragma once

#include <cstdint>
#include <memory>
#include <optional>

#include "bbg/black_box.hpp"
#include "bbg/enumerate.hpp"
#include "bbg/source.hpp"

namespace bbg {

// The dihedral trick. For an involution i and any x, z = i * i^x is
// inverted by both i and i^x.
//
// zeta1: if z has odd order, y = z^((r+1)/2) satisfies i^y = i^x, so
// y * x^-1 centralises i. Returns nullopt when z has even order.
std::optional<GroupElement> zeta1(const BlackBox& bb, const GroupElement& i,
                                  const GroupElement& x);

// zeta0: if z has even order, its involution i(z) is central in <i, i^x>.
// Returns nullopt when z has odd order (including z = 1).
std::optional<GroupElement> zeta0(const BlackBox& bb, const GroupElement& i,
                                  const GroupElement& x);

enum class CentralizerMode { Odd, Even, Mixed };

struct CentralizerOptions {
  CentralizerMode mode = CentralizerMode::Odd;
  // Draws allowed per output before reporting starvation (odd and even modes).
  std::uint64_t rejection_budget = 256;
  // Outputs of the cumulative product skipped before the first emission
  // (even and mixed modes).
  std::uint64_t discard = 100;
};

// ceil(n log n / 2): the cutoff for products of random transpositions in
// Sym_n, used as the even-mode discard for symmetric groups.
std::uint64_t transposition_discard(unsigned n);

/**
 * A black box for C_X(i) built from a random-element source for X.
 *
 *  - Odd: rejection-samples x until zeta1(x) is defined and returns it.
 *    With an ideal source the outputs are uniform and independent in C_X(i).
 *  - Even: cumulative product of zeta0 values, a random walk on
 *    C°_X(i) = <zeta0(x) : x in X>.
 *  - Mixed: cumulative product that multiplies in zeta0(x) or zeta1(x)
 *    according to the parity of o(i * i^x).
 *
 * Throws StarvationError when a budget is exhausted.
 */
class CentralizerOracle final : public RandomSource {
 public:
  CentralizerOracle(std::shared_ptr<const BlackBox> bb, GroupElement involution,
                    std::unique_ptr<RandomSource> source, CentralizerOptions options = {});

  GroupElement next() override;

  const GroupElement& involution() const noexcept { return i_; }
  const CentralizerOptions& options() const noexcept { return options_; }
  const GroupElement& cumulative() const noexcept { return cumulative_; }

  // Source draws so far, and how many of them left the active zeta undefined.
  std::uint64_t draws() const noexcept { return draws_; }
  std::uint64_t undefined() const noexcept { return undefined_; }

 private:
  GroupElement draw_defined(bool odd);
  GroupElement step();

  std::shared_ptr<const BlackBox> bb_;
  GroupElement i_;
  std::unique_ptr<RandomSource> source_;
  CentralizerOptions options_;
  GroupElement cumulative_;
  bool discarded_ = false;
  std::uint64_t draws_ = 0;
  std::uint64_t undefined_ = 0;
};

// Applies involution_from to source outputs until it yields a non-identity
// element. Throws StarvationError after `budget` draws.
GroupElement find_involution(const BlackBox& bb, RandomSource& source, std::uint64_t budget);

struct ShareEstimate {
  std::uint64_t trials = 0;
  std::uint64_t odd = 0;
  double estimate = 0.0;
  double standard_error = 0.0;  // sqrt(p (1 - p) / trials)
};

// Monte Carlo estimate of P(o(i * i^x) odd) over x drawn from the source.
ShareEstimate odd_order_share(const BlackBox& bb, const GroupElement& i, RandomSource& source,
                              std::uint64_t trials);

// Exact count of x in the enumerated group with o(i * i^x) odd.
struct ExactShare {
  std::uint64_t odd = 0;
  std::uint64_t total = 0;
  double value() const { return total ? static_cast<double>(odd) / static_cast<double>(total) : 0.0; }
};
ExactShare odd_order_share_exact(const EnumeratedGroup& group, const GroupElement& i);

}  // namespace bbg
