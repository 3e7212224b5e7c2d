#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "bbg/backends.hpp"
#include "bbg/black_box.hpp"
#include "bbg/enumerate.hpp"

namespace bbg {

using Rational = boost::multiprecision::cpp_rational;

// ---------------------------------------------------------------------------
// Censuses

struct SampleCensus {
  std::map<GroupElement, std::uint64_t> counts;  // ordered by encoding bytes
  std::uint64_t n_samples = 0;

  void add(const GroupElement& x, std::uint64_t times = 1) {
    counts[x] += times;
    n_samples += times;
  }
  void merge(const SampleCensus& other);
  std::size_t support_size() const noexcept { return counts.size(); }
};

// ---------------------------------------------------------------------------
// Distributions

/// Probability masses keyed by element encoding; absent keys have mass 0.
/// Masses are floating point and must sum to 1 within 1e-9.
class Distribution {
 public:
  Distribution() = default;
  explicit Distribution(std::map<GroupElement, double> masses);

  static Distribution point(const GroupElement& x);
  static Distribution uniform(const std::vector<GroupElement>& elements);
  static Distribution empirical(const SampleCensus& census);

  const std::map<GroupElement, double>& masses() const noexcept { return masses_; }
  double mass(const GroupElement& x) const;
  std::size_t support_size() const noexcept { return masses_.size(); }

 private:
  std::map<GroupElement, double> masses_;
};

/// Exact rational masses summing to exactly 1.
class ExactDistribution {
 public:
  ExactDistribution() = default;
  explicit ExactDistribution(std::map<GroupElement, Rational> masses);

  static ExactDistribution point(const GroupElement& x);
  static ExactDistribution uniform(const std::vector<GroupElement>& elements);

  const std::map<GroupElement, Rational>& masses() const noexcept { return masses_; }
  Rational mass(const GroupElement& x) const;
  std::size_t support_size() const noexcept { return masses_.size(); }
  Distribution to_floating() const;

  friend bool operator==(const ExactDistribution&, const ExactDistribution&) = default;

 private:
  std::map<GroupElement, Rational> masses_;
};

// Random transposition measures on Sym_n.
//  lazy = true:  choose s, t uniformly and independently and apply (s t),
//                so the identity has mass 1/n and each transposition 2/n^2.
//  lazy = false: uniform on the n(n-1)/2 transpositions (a period-2 walk).
ExactDistribution transposition_measure(const PermutationGroup& sym, bool lazy);

// Half the L1 distance. Throws ConfigError when supports come from groups
// with different encoding lengths.
double tv_distance(const Distribution& p, const Distribution& q);
Rational tv_distance(const ExactDistribution& p, const ExactDistribution& q);

// (P*Q)(x) = sum_y P(x y^-1) Q(y), i.e. the law of a*b with a ~ P, b ~ Q.
// Throws NumericGuardError when |supp P| * |supp Q| > 10^8.
Distribution convolve(const Distribution& p, const Distribution& q, const BlackBox& bb);
ExactDistribution convolve(const ExactDistribution& p, const ExactDistribution& q,
                           const BlackBox& bb);

// P^{*k} = P * P^{*(k-1)}, k >= 1.
Distribution convolution_power(const Distribution& p, std::uint64_t k, const BlackBox& bb);
ExactDistribution convolution_power(const ExactDistribution& p, std::uint64_t k,
                                    const BlackBox& bb);

// ---------------------------------------------------------------------------
// Dense distributions over an enumerated group (the vectorised path)

class DenseDistribution {
 public:
  DenseDistribution(const EnumeratedGroup& group, std::vector<double> mass);
  static DenseDistribution from(const EnumeratedGroup& group, const Distribution& p);
  static DenseDistribution uniform(const EnumeratedGroup& group);

  const EnumeratedGroup& group() const noexcept { return *group_; }
  const std::vector<double>& mass() const noexcept { return mass_; }
  Distribution to_sparse() const;

 private:
  const EnumeratedGroup* group_;
  std::vector<double> mass_;
};

// P * R, computed as R translated on the left by each a in supp P:
// (P*R)(x) = sum_a P(a) R(a^-1 x).
DenseDistribution convolve(const DenseDistribution& p, const DenseDistribution& r);
double tv_distance(const DenseDistribution& p, const DenseDistribution& q);

// TV(P^{*k}, U) for k = 1..k_max, U uniform on the enumerated group.
std::vector<double> tv_to_uniform_profile(const DenseDistribution& p, std::uint64_t k_max);

// Least k with TV(P^{*k}, U) < threshold. Throws NumericGuardError if no k
// up to k_cap qualifies (periodic walk, or P confined to a proper coset).
std::uint64_t mixing_time(const DenseDistribution& p, double threshold = 0.36787944117144233,
                          std::uint64_t k_cap = 10'000);

// ---------------------------------------------------------------------------
// Hypothesis tests

struct ChiSquare {
  double statistic;
  double p_value;
  std::uint64_t degrees_of_freedom;
};

// Pearson's statistic against the uniform law on `domain_size` cells
// (unobserved cells count with observed 0). p-value is the regularised
// upper incomplete gamma Q((d-1)/2, stat/2). Throws PreconditionError
// unless n_samples >= 5 * domain_size and the census fits in the domain.
ChiSquare chi_square_uniform(const SampleCensus& census, std::uint64_t domain_size);

// max over c of TV(P, P^c) for the empirical law P of the census, where
// P^c(g^c) = P(g).
double conjugation_invariance(const SampleCensus& census, const BlackBox& bb,
                              const std::vector<GroupElement>& conjugators);

// ---------------------------------------------------------------------------
// CSV: header line, then "hex-encoding,value" rows ordered by encoding.

void write_census_csv(std::ostream& out, const SampleCensus& census);
SampleCensus read_census_csv(std::istream& in);
void write_distribution_csv(std::ostream& out, const Distribution& p);
Distribution read_distribution_csv(std::istream& in);

}  // namespace bbg
