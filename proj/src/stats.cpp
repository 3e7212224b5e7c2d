#include "bbg/stats.hpp"

#include <boost/math/special_functions/gamma.hpp>
#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <string>

#include "bbg/error.hpp"
#include "bbg/simd/kernels.hpp"
#include "text_util.hpp"

namespace bbg {

namespace {

constexpr double kMassTolerance = 1e-9;
constexpr std::uint64_t kConvolutionGuard = 100'000'000;

template <typename Map>
void check_same_group(const Map& a, const Map& b) {
  if (a.empty() || b.empty()) return;
  if (a.begin()->first.size() != b.begin()->first.size())
    throw ConfigError("distributions live on different groups (encoding lengths differ)");
}

void check_guard(std::size_t a, std::size_t b) {
  if (static_cast<unsigned __int128>(a) * b > kConvolutionGuard)
    throw NumericGuardError("convolution support product exceeds 10^8");
}

// Merge-walk over two ordered maps, calling f(p_mass, q_mass) for every key
// in either support.
template <typename Map, typename F>
void for_each_union(const Map& p, const Map& q, typename Map::mapped_type zero, F f) {
  auto a = p.begin(), b = q.begin();
  while (a != p.end() || b != q.end()) {
    if (b == q.end() || (a != p.end() && a->first < b->first)) {
      f(a->second, zero);
      ++a;
    } else if (a == p.end() || b->first < a->first) {
      f(zero, b->second);
      ++b;
    } else {
      f(a->second, b->second);
      ++a;
      ++b;
    }
  }
}

}  // namespace

void SampleCensus::merge(const SampleCensus& other) {
  for (const auto& [x, c] : other.counts) counts[x] += c;
  n_samples += other.n_samples;
}

// ---------------------------------------------------------------------------

Distribution::Distribution(std::map<GroupElement, double> masses) {
  double total = 0.0;
  for (auto& [x, m] : masses) {
    if (!(m >= 0.0)) throw ConfigError("distribution has a negative or NaN mass");
    if (m > 0.0) masses_.emplace(x, m);
    total += m;
  }
  if (std::fabs(total - 1.0) > kMassTolerance)
    throw ConfigError("distribution masses sum to " + std::to_string(total) + ", not 1");
}

Distribution Distribution::point(const GroupElement& x) { return Distribution({{x, 1.0}}); }

Distribution Distribution::uniform(const std::vector<GroupElement>& elements) {
  std::map<GroupElement, double> m;
  for (const auto& x : elements) m[x] = 1.0 / static_cast<double>(elements.size());
  return Distribution(std::move(m));
}

Distribution Distribution::empirical(const SampleCensus& census) {
  if (census.n_samples == 0) throw ConfigError("empty census");
  std::map<GroupElement, double> m;
  for (const auto& [x, c] : census.counts)
    m.emplace(x, static_cast<double>(c) / static_cast<double>(census.n_samples));
  return Distribution(std::move(m));
}

double Distribution::mass(const GroupElement& x) const {
  auto it = masses_.find(x);
  return it == masses_.end() ? 0.0 : it->second;
}

ExactDistribution::ExactDistribution(std::map<GroupElement, Rational> masses) {
  Rational total = 0;
  for (auto& [x, m] : masses) {
    if (m < 0) throw ConfigError("distribution has a negative mass");
    if (m > 0) masses_.emplace(x, m);
    total += m;
  }
  if (total != 1) throw ConfigError("exact distribution masses do not sum to 1");
}

ExactDistribution ExactDistribution::point(const GroupElement& x) {
  return ExactDistribution({{x, Rational(1)}});
}

ExactDistribution ExactDistribution::uniform(const std::vector<GroupElement>& elements) {
  std::map<GroupElement, Rational> m;
  const Rational each(1, static_cast<long long>(elements.size()));
  for (const auto& x : elements) m[x] = each;
  return ExactDistribution(std::move(m));
}

Rational ExactDistribution::mass(const GroupElement& x) const {
  auto it = masses_.find(x);
  return it == masses_.end() ? Rational(0) : it->second;
}

Distribution ExactDistribution::to_floating() const {
  std::map<GroupElement, double> m;
  for (const auto& [x, r] : masses_) m.emplace(x, r.convert_to<double>());
  // Rounding can leave the total a few ulps from 1, well inside tolerance.
  return Distribution(std::move(m));
}

ExactDistribution transposition_measure(const PermutationGroup& sym, bool lazy) {
  const unsigned n = sym.degree();
  if (n < 2) throw ConfigError("transposition measure needs degree >= 2");
  std::map<GroupElement, Rational> m;
  std::vector<unsigned> img(n);
  for (unsigned s = 0; s < n; ++s)
    for (unsigned t = s + 1; t < n; ++t) {
      for (unsigned p = 0; p < n; ++p) img[p] = p + 1;
      std::swap(img[s], img[t]);
      m[sym.from_images(img)] = lazy ? Rational(2, n * n) : Rational(2, n * (n - 1));
    }
  if (lazy) m[sym.identity()] = Rational(1, n);
  return ExactDistribution(std::move(m));
}

double tv_distance(const Distribution& p, const Distribution& q) {
  check_same_group(p.masses(), q.masses());
  double sum = 0.0;
  for_each_union(p.masses(), q.masses(), 0.0, [&](double a, double b) { sum += std::fabs(a - b); });
  return 0.5 * sum;
}

Rational tv_distance(const ExactDistribution& p, const ExactDistribution& q) {
  check_same_group(p.masses(), q.masses());
  Rational sum = 0;
  for_each_union(p.masses(), q.masses(), Rational(0),
                 [&](const Rational& a, const Rational& b) { sum += a > b ? a - b : b - a; });
  return sum / 2;
}

Distribution convolve(const Distribution& p, const Distribution& q, const BlackBox& bb) {
  check_same_group(p.masses(), q.masses());
  check_guard(p.support_size(), q.support_size());
  std::map<GroupElement, double> out;
  for (const auto& [a, pa] : p.masses())
    for (const auto& [b, qb] : q.masses()) out[bb.multiply(a, b)] += pa * qb;
  return Distribution(std::move(out));
}

ExactDistribution convolve(const ExactDistribution& p, const ExactDistribution& q,
                           const BlackBox& bb) {
  check_same_group(p.masses(), q.masses());
  check_guard(p.support_size(), q.support_size());
  std::map<GroupElement, Rational> out;
  for (const auto& [a, pa] : p.masses())
    for (const auto& [b, qb] : q.masses()) out[bb.multiply(a, b)] += pa * qb;
  return ExactDistribution(std::move(out));
}

Distribution convolution_power(const Distribution& p, std::uint64_t k, const BlackBox& bb) {
  if (k == 0) throw ConfigError("convolution power needs k >= 1");
  Distribution acc = p;
  for (std::uint64_t s = 1; s < k; ++s) acc = convolve(p, acc, bb);
  return acc;
}

ExactDistribution convolution_power(const ExactDistribution& p, std::uint64_t k,
                                    const BlackBox& bb) {
  if (k == 0) throw ConfigError("convolution power needs k >= 1");
  ExactDistribution acc = p;
  for (std::uint64_t s = 1; s < k; ++s) acc = convolve(p, acc, bb);
  return acc;
}

// ---------------------------------------------------------------------------

DenseDistribution::DenseDistribution(const EnumeratedGroup& group, std::vector<double> mass)
    : group_(&group), mass_(std::move(mass)) {
  if (mass_.size() != group.size()) throw ConfigError("dense distribution has wrong length");
}

DenseDistribution DenseDistribution::from(const EnumeratedGroup& group, const Distribution& p) {
  std::vector<double> mass(group.size(), 0.0);
  for (const auto& [x, m] : p.masses()) {
    auto idx = group.index_of(x);
    if (!idx) throw ConfigError("distribution support is not contained in the enumerated group");
    mass[*idx] = m;
  }
  return DenseDistribution(group, std::move(mass));
}

DenseDistribution DenseDistribution::uniform(const EnumeratedGroup& group) {
  return DenseDistribution(group,
                           std::vector<double>(group.size(), 1.0 / static_cast<double>(group.size())));
}

Distribution DenseDistribution::to_sparse() const {
  std::map<GroupElement, double> m;
  for (std::size_t k = 0; k < mass_.size(); ++k)
    if (mass_[k] != 0.0) m.emplace((*group_)[k], mass_[k]);
  return Distribution(std::move(m));
}

namespace {

// The left translations x -> a^-1 x for each a in supp P, with P(a).
struct LeftPlan {
  std::vector<std::vector<std::uint32_t>> rows;
  std::vector<double> weights;
};

LeftPlan plan_left(const DenseDistribution& p) {
  const EnumeratedGroup& g = p.group();
  LeftPlan plan;
  for (std::size_t a = 0; a < g.size(); ++a) {
    if (p.mass()[a] == 0.0) continue;
    plan.rows.push_back(g.left_translation(g.box().invert(g[a])));
    plan.weights.push_back(p.mass()[a]);
  }
  return plan;
}

std::vector<double> apply_plan(const LeftPlan& plan, const std::vector<double>& r) {
  std::vector<double> out(r.size(), 0.0);
  for (std::size_t s = 0; s < plan.rows.size(); ++s)
    simd::gather_axpy(out, r, plan.rows[s], plan.weights[s]);
  return out;
}

}  // namespace

DenseDistribution convolve(const DenseDistribution& p, const DenseDistribution& r) {
  if (&p.group() != &r.group() && !(p.group() == r.group()))
    throw ConfigError("dense distributions over different groups");
  return DenseDistribution(p.group(), apply_plan(plan_left(p), r.mass()));
}

double tv_distance(const DenseDistribution& p, const DenseDistribution& q) {
  if (p.mass().size() != q.mass().size())
    throw ConfigError("dense distributions over different groups");
  return 0.5 * simd::abs_diff_sum(p.mass(), q.mass());
}

std::vector<double> tv_to_uniform_profile(const DenseDistribution& p, std::uint64_t k_max) {
  const LeftPlan plan = plan_left(p);
  const std::vector<double> u(p.mass().size(), 1.0 / static_cast<double>(p.mass().size()));
  std::vector<double> profile;
  std::vector<double> acc = p.mass();
  for (std::uint64_t k = 1; k <= k_max; ++k) {
    if (k > 1) acc = apply_plan(plan, acc);
    profile.push_back(0.5 * simd::abs_diff_sum(acc, u));
  }
  return profile;
}

std::uint64_t mixing_time(const DenseDistribution& p, double threshold, std::uint64_t k_cap) {
  const LeftPlan plan = plan_left(p);
  const std::vector<double> u(p.mass().size(), 1.0 / static_cast<double>(p.mass().size()));
  std::vector<double> acc = p.mass();
  for (std::uint64_t k = 1; k <= k_cap; ++k) {
    if (k > 1) acc = apply_plan(plan, acc);
    if (0.5 * simd::abs_diff_sum(acc, u) < threshold) return k;
  }
  throw NumericGuardError("mixing_time: no convergence within " + std::to_string(k_cap) +
                          " steps (periodic walk or support confined to a coset)");
}

// ---------------------------------------------------------------------------

ChiSquare chi_square_uniform(const SampleCensus& census, std::uint64_t domain_size) {
  if (domain_size < 2) throw PreconditionError("chi-square needs a domain of at least 2 cells");
  if (census.n_samples < 5 * domain_size)
    throw PreconditionError("chi-square needs at least 5 expected samples per cell");
  if (census.counts.size() > domain_size)
    throw PreconditionError("census has more distinct elements than the domain");
  const double n = static_cast<double>(census.n_samples);
  const double expected = n / static_cast<double>(domain_size);
  double stat = 0.0;
  for (const auto& [x, c] : census.counts) {
    const double d = static_cast<double>(c) - expected;
    stat += d * d / expected;
  }
  stat += static_cast<double>(domain_size - census.counts.size()) * expected;
  const std::uint64_t dof = domain_size - 1;
  const double p = boost::math::gamma_q(0.5 * static_cast<double>(dof), 0.5 * stat);
  return {stat, p, dof};
}

double conjugation_invariance(const SampleCensus& census, const BlackBox& bb,
                              const std::vector<GroupElement>& conjugators) {
  const Distribution p = Distribution::empirical(census);
  double worst = 0.0;
  for (const auto& c : conjugators) {
    std::map<GroupElement, double> moved;
    for (const auto& [g, m] : p.masses()) moved[bb.conjugate(g, c)] += m;
    worst = std::max(worst, tv_distance(p, Distribution(std::move(moved))));
  }
  return worst;
}

// ---------------------------------------------------------------------------

void write_census_csv(std::ostream& out, const SampleCensus& census) {
  out << "encoding,count\n";
  for (const auto& [x, c] : census.counts) out << x.hex() << ',' << c << '\n';
}

SampleCensus read_census_csv(std::istream& in) {
  SampleCensus census;
  std::string line;
  if (!std::getline(in, line) || detail::trim(line) != "encoding,count")
    throw ConfigError("census CSV must start with 'encoding,count'");
  while (std::getline(in, line)) {
    if (detail::trim(line).empty()) continue;
    auto comma = line.find(',');
    if (comma == std::string::npos) throw ConfigError("malformed census CSV row: " + line);
    census.add(GroupElement::from_hex(detail::trim(std::string_view(line).substr(0, comma))),
               detail::parse_u64(std::string_view(line).substr(comma + 1), "count"));
  }
  return census;
}

void write_distribution_csv(std::ostream& out, const Distribution& p) {
  out << "encoding,mass\n";
  char buf[32];
  for (const auto& [x, m] : p.masses()) {
    std::snprintf(buf, sizeof buf, "%.17g", m);
    out << x.hex() << ',' << buf << '\n';
  }
}

Distribution read_distribution_csv(std::istream& in) {
  std::map<GroupElement, double> m;
  std::string line;
  if (!std::getline(in, line) || detail::trim(line) != "encoding,mass")
    throw ConfigError("distribution CSV must start with 'encoding,mass'");
  while (std::getline(in, line)) {
    if (detail::trim(line).empty()) continue;
    auto comma = line.find(',');
    if (comma == std::string::npos) throw ConfigError("malformed distribution CSV row: " + line);
    std::size_t used = 0;
    const std::string value = line.substr(comma + 1);
    double mass = 0.0;
    try {
      mass = std::stod(value, &used);
    } catch (const std::exception&) {
      throw ConfigError("malformed mass in distribution CSV: " + value);
    }
    m[GroupElement::from_hex(detail::trim(std::string_view(line).substr(0, comma)))] = mass;
  }
  return Distribution(std::move(m));
}

}  // namespace bbg
