#include <boost/math/special_functions/gamma.hpp>
#include <cmath>
#include <sstream>

#include "bbg/error.hpp"
#include "bbg/stats.hpp"
#include "doctest.h"
#include "helpers.hpp"

using namespace bbg;

namespace {

Distribution random_distribution(const EnumeratedGroup& g, Rng& rng, double sparsity) {
  std::map<GroupElement, double> m;
  double total = 0.0;
  for (const auto& x : g.elements())
    if (rng.uniform01() >= sparsity) {
      const double w = rng.uniform01() + 1e-3;
      m[x] = w;
      total += w;
    }
  if (m.empty()) return Distribution::point(g[0]);
  for (auto& [x, w] : m) w /= total;
  return Distribution(std::move(m));
}

ExactDistribution random_exact(const EnumeratedGroup& g, Rng& rng) {
  std::map<GroupElement, Rational> m;
  long long total = 0;
  std::vector<long long> w(g.size());
  for (auto& v : w) total += (v = static_cast<long long>(rng.bounded(5)));
  if (total == 0) return ExactDistribution::point(g[0]);
  for (std::size_t k = 0; k < g.size(); ++k)
    if (w[k]) m[g[k]] = Rational(w[k], total);
  return ExactDistribution(std::move(m));
}

}  // namespace

TEST_CASE("distribution validation") {
  auto s3 = test::sym(3);
  CHECK_THROWS_AS(Distribution({{s3->identity(), 0.5}}), ConfigError);
  CHECK_THROWS_AS(Distribution({{s3->identity(), -0.5}, {s3->parse("(1 2)"), 1.5}}), ConfigError);
  CHECK_NOTHROW(Distribution({{s3->identity(), 1.0 + 1e-12}}));
  CHECK_THROWS_AS(ExactDistribution({{s3->identity(), Rational(1, 2)}}), ConfigError);
}

TEST_CASE("tv_distance examples") {
  auto s4 = test::sym(4);
  const auto g = test::whole(*s4);
  const auto u = Distribution::uniform(g.elements());
  CHECK(tv_distance(u, u) == 0.0);
  CHECK(tv_distance(Distribution::point(s4->identity()), u) == doctest::Approx(1.0 - 1.0 / 24));
  CHECK(tv_distance(ExactDistribution::point(s4->identity()), ExactDistribution::uniform(g.elements())) ==
        Rational(23, 24));
  CHECK_THROWS_AS(tv_distance(u, Distribution::point(test::sym(3)->identity())), ConfigError);

  auto src = test::uniform_source(g, 5);
  SampleCensus census;
  for (int k = 0; k < 1'000'000; ++k) census.add(src->next());
  CHECK(tv_distance(Distribution::empirical(census), u) < 0.01);
}

TEST_CASE("tv_distance is a metric (random distributions on Sym_4)") {
  auto s4 = test::sym(4);
  const auto g = test::whole(*s4);
  Rng rng(8);
  for (int trial = 0; trial < 200; ++trial) {
    const auto p = random_distribution(g, rng, 0.5);
    const auto q = random_distribution(g, rng, 0.3);
    const auto r = random_distribution(g, rng, 0.7);
    const double pq = tv_distance(p, q);
    CHECK(pq >= 0.0);
    CHECK(pq <= 1.0 + 1e-12);
    CHECK(pq == tv_distance(q, p));
    CHECK(tv_distance(p, p) == 0.0);
    CHECK(pq <= tv_distance(p, r) + tv_distance(r, q) + 1e-12);
  }
  for (int trial = 0; trial < 50; ++trial) {
    const auto p = random_exact(g, rng);
    const auto q = random_exact(g, rng);
    CHECK((tv_distance(p, q) == 0) == (p == q));
  }
}

TEST_CASE("convolution examples") {
  auto s3 = test::sym(3);
  const auto g = test::whole(*s3);
  const auto a = s3->parse("(1 2)");
  const auto b = s3->parse("(1 2 3)");
  CHECK(convolve(ExactDistribution::point(a), ExactDistribution::point(b), *s3) ==
        ExactDistribution::point(s3->multiply(a, b)));

  const auto u = ExactDistribution::uniform(g.elements());
  Rng rng(1);
  for (int trial = 0; trial < 20; ++trial) {
    const auto p = random_exact(g, rng);
    CHECK(convolve(u, p, *s3) == u);
    CHECK(convolve(p, u, *s3) == u);
  }

  // Uniform on transpositions, squared: identity 1/3, each 3-cycle 1/3.
  const auto t = transposition_measure(*s3, false);
  const auto t2 = convolve(t, t, *s3);
  CHECK(t2.mass(s3->identity()) == Rational(1, 3));
  CHECK(t2.mass(s3->parse("(1 2 3)")) == Rational(1, 3));
  CHECK(t2.mass(s3->parse("(1 3 2)")) == Rational(1, 3));
  CHECK(t2.mass(a) == 0);

  // Lazy measure on Sym_3: identity 1/3, each transposition 2/9.
  const auto lazy = transposition_measure(*s3, true);
  CHECK(lazy.mass(s3->identity()) == Rational(1, 3));
  CHECK(lazy.mass(a) == Rational(2, 9));
  const auto l2 = convolve(lazy, lazy, *s3);
  // 1/9 + 3 * 4/81 at the identity; 2 * 1/3 * 2/9 at a transposition;
  // 3 * 4/81 at a 3-cycle.
  CHECK(l2.mass(s3->identity()) == Rational(7, 27));
  CHECK(l2.mass(a) == Rational(4, 27));
  CHECK(l2.mass(b) == Rational(4, 27));
}

TEST_CASE("convolution agrees with exhaustive pair enumeration") {
  auto s3 = test::sym(3);
  const auto g = test::whole(*s3);
  Rng rng(2);
  for (int trial = 0; trial < 20; ++trial) {
    const auto p = random_exact(g, rng);
    const auto q = random_exact(g, rng);
    const auto pq = convolve(p, q, *s3);
    for (const auto& x : g.elements()) {
      Rational expect = 0;
      for (const auto& y : g.elements())
        expect += p.mass(s3->multiply(x, s3->invert(y))) * q.mass(y);
      CHECK(pq.mass(x) == expect);
    }
  }
}

TEST_CASE("convolution is associative in exact arithmetic on Sym_3") {
  auto s3 = test::sym(3);
  const auto g = test::whole(*s3);
  Rng rng(3);
  for (int trial = 0; trial < 50; ++trial) {
    const auto p = random_exact(g, rng);
    const auto q = random_exact(g, rng);
    const auto r = random_exact(g, rng);
    CHECK(convolve(convolve(p, q, *s3), r, *s3) == convolve(p, convolve(q, r, *s3), *s3));
  }
}

TEST_CASE("convolution powers") {
  auto s4 = test::sym(4);
  const auto x = s4->parse("(1 2 3 4)");
  const auto p = ExactDistribution::point(x);
  for (std::uint64_t k = 1; k <= 9; ++k)
    CHECK(convolution_power(p, k, *s4) == ExactDistribution::point(pow(*s4, x, k)));
  const auto t = transposition_measure(*s4, true);
  CHECK(convolution_power(t, 1, *s4) == t);
  // P^{*k} = P^{*(k-1)} * P as well (the powers of one measure commute).
  CHECK(convolution_power(t, 5, *s4) == convolve(convolution_power(t, 4, *s4), t, *s4));
  CHECK_THROWS_AS(convolution_power(t, 0, *s4), ConfigError);
}

TEST_CASE("convolution size guard") {
  auto s8 = test::sym(8);
  const auto g = test::whole(*s8);
  const auto u = Distribution::uniform(g.elements());
  CHECK_THROWS_AS(convolve(u, u, *s8), NumericGuardError);
}

TEST_CASE("dense convolution matches the sparse one") {
  auto s4 = test::sym(4);
  const auto g = test::whole(*s4);
  Rng rng(4);
  for (int trial = 0; trial < 20; ++trial) {
    const auto p = random_distribution(g, rng, 0.6);
    const auto q = random_distribution(g, rng, 0.2);
    const auto sparse = convolve(p, q, *s4);
    const auto dense =
        convolve(DenseDistribution::from(g, p), DenseDistribution::from(g, q)).to_sparse();
    CHECK(tv_distance(sparse, dense) < 1e-12);
  }
}

TEST_CASE("TV to uniform is non-increasing for the transposition walk (Sym_3..Sym_5)") {
  for (unsigned n = 3; n <= 5; ++n) {
    auto s = test::sym(n);
    const auto g = test::whole(*s);
    const auto u = ExactDistribution::uniform(g.elements());
    const auto t = transposition_measure(*s, true);
    ExactDistribution acc = t;
    Rational prev = tv_distance(acc, u);
    for (int k = 2; k <= 12; ++k) {
      acc = convolve(t, acc, *s);
      const Rational cur = tv_distance(acc, u);
      CHECK(cur <= prev);
      prev = cur;
    }
  }
}

TEST_CASE("mixing_time") {
  auto s3 = test::sym(3);
  const auto g = test::whole(*s3);
  CHECK(mixing_time(DenseDistribution::uniform(g)) == 1);
  const auto lazy = DenseDistribution::from(g, transposition_measure(*s3, true).to_floating());
  const auto k = mixing_time(lazy);
  const auto profile = tv_to_uniform_profile(lazy, k);
  CHECK(profile.back() < 1.0 / std::exp(1.0));
  if (k > 1) CHECK(profile[k - 2] >= 1.0 / std::exp(1.0));
  // A point mass on an involution alternates between two elements.
  const auto flip = DenseDistribution::from(g, Distribution::point(s3->parse("(1 2)")));
  CHECK_THROWS_AS(mixing_time(flip, 1.0 / std::exp(1.0), 500), NumericGuardError);
  // The non-lazy transposition walk is periodic: odd at odd k.
  const auto pure = DenseDistribution::from(g, transposition_measure(*s3, false).to_floating());
  CHECK_THROWS_AS(mixing_time(pure, 1.0 / std::exp(1.0), 500), NumericGuardError);
}

TEST_CASE("chi_square_uniform") {
  auto s3 = test::sym(3);
  const auto g = test::whole(*s3);
  SampleCensus balanced;
  for (const auto& x : g.elements()) balanced.add(x, 100);
  auto r = chi_square_uniform(balanced, 6);
  CHECK(r.statistic == 0.0);
  CHECK(r.p_value == doctest::Approx(1.0));
  CHECK(r.degrees_of_freedom == 5);

  SampleCensus point;
  point.add(g[0], 600);
  CHECK(chi_square_uniform(point, 6).p_value < 1e-9);

  SampleCensus three;
  three.add(g[0], 30);
  three.add(g[1], 30);
  three.add(g[2], 30);
  r = chi_square_uniform(three, 3);
  CHECK(r.p_value == doctest::Approx(1.0));
  // dof 2 and statistic 2 ln 20 give p = exp(-ln 20) = 0.05.
  CHECK(boost::math::gamma_q(1.0, std::log(20.0)) == doctest::Approx(0.05));
  // Counts 40, 30, 20 against 30 expected: stat 20/3, p = exp(-10/3).
  SampleCensus skew;
  skew.add(g[0], 40);
  skew.add(g[1], 30);
  skew.add(g[2], 20);
  r = chi_square_uniform(skew, 3);
  CHECK(r.statistic == doctest::Approx(20.0 / 3));
  CHECK(r.p_value == doctest::Approx(std::exp(-10.0 / 3)));

  SampleCensus small;
  small.add(g[0], 10);
  CHECK_THROWS_AS(chi_square_uniform(small, 6), PreconditionError);
}

TEST_CASE("conjugation_invariance") {
  auto s4 = test::sym(4);
  const auto g = test::whole(*s4);
  SampleCensus classwise;
  for (const auto& x : g.elements()) classwise.add(x, 3);
  CHECK(conjugation_invariance(classwise, *s4, s4->standard_generators()) == 0.0);

  SampleCensus one;
  one.add(s4->parse("(1 2)"), 10);
  CHECK(conjugation_invariance(one, *s4, {s4->parse("(2 3)")}) == doctest::Approx(1.0));
  CHECK(conjugation_invariance(one, *s4, {s4->parse("(3 4)")}) == 0.0);
}

TEST_CASE("census merge and CSV round trips") {
  auto s4 = test::sym(4);
  const auto g = test::whole(*s4);
  auto src = test::uniform_source(g, 7);
  SampleCensus a, b;
  for (int k = 0; k < 500; ++k) a.add(src->next());
  for (int k = 0; k < 300; ++k) b.add(src->next());
  SampleCensus merged = a;
  merged.merge(b);
  CHECK(merged.n_samples == 800);

  std::stringstream ss;
  write_census_csv(ss, merged);
  const std::string text = ss.str();
  CHECK(text.rfind("encoding,count\n", 0) == 0);
  const auto back = read_census_csv(ss);
  CHECK(back.counts == merged.counts);
  CHECK(back.n_samples == merged.n_samples);

  const auto p = Distribution::empirical(merged);
  std::stringstream ds;
  write_distribution_csv(ds, p);
  const auto q = read_distribution_csv(ds);
  CHECK(q.masses() == p.masses());

  std::stringstream bad("count,encoding\n");
  CHECK_THROWS_AS(read_census_csv(bad), ConfigError);
}
