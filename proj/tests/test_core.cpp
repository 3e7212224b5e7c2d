#include <algorithm>
#include <bit>
#include <numeric>

#include "bbg/black_box.hpp"
#include "bbg/error.hpp"
#include "doctest.h"
#include "helpers.hpp"

using namespace bbg;
using bbg::test::sym;

TEST_CASE("pow: examples") {
  auto s3 = sym(3);
  const auto c = s3->parse("(1 2 3)");
  CHECK(pow(*s3, c, 0) == s3->identity());
  CHECK(pow(*s3, c, 3) == s3->identity());

  ModularUnits z17(17);
  CHECK(z17.residue(pow(z17, z17.from_residue(2), 4)) == 16);
}

TEST_CASE("pow: multiplication count is at most 2 floor(log2 e) + 1") {
  ModularUnits z(1'000'003);
  const auto x = z.from_residue(5);
  for (std::uint64_t e : {1ull, 2ull, 3ull, 7ull, 64ull, 255ull, 1'000'002ull, 0xffffffffull}) {
    z.reset_multiplications();
    pow(z, x, e);
    CHECK(z.multiplications() <= 2ull * (std::bit_width(e) - 1) + 1);
  }
}

TEST_CASE("pow agrees with repeated multiplication for e <= 64") {
  auto s7 = sym(7);
  auto g = test::whole(*s7);
  Rng rng(11);
  for (int trial = 0; trial < 50; ++trial) {
    const auto x = g[rng.bounded(g.size())];
    GroupElement naive = s7->identity();
    for (std::uint64_t e = 0; e <= 64; ++e) {
      CHECK(pow(*s7, x, e) == naive);
      naive = s7->multiply(naive, x);
    }
  }
}

TEST_CASE("coprime_refine: examples") {
  auto a = coprime_refine({{6, 1}, {4, 1}});
  CHECK(a.factors() == std::vector<PrimePower>{{2, 3}, {3, 1}});
  CHECK(a.two_part() == 3);
  CHECK(a.odd_part() == 3);
  CHECK(a.value() == 24);

  auto b = coprime_refine({{7, 2}});
  CHECK(b.factors() == std::vector<PrimePower>{{7, 2}});
  CHECK(b.two_part() == 0);
  CHECK(b.odd_part() == 49);

  auto c = coprime_refine({{2, 3}});
  CHECK(c.factors() == std::vector<PrimePower>{{2, 3}});
  CHECK(c.two_part() == 3);
  CHECK(c.odd_part() == 1);
}

TEST_CASE("coprime_refine: random inputs give a coprime base with the same product") {
  Rng rng(5);
  for (int trial = 0; trial < 300; ++trial) {
    std::vector<std::pair<std::uint64_t, std::uint32_t>> raw;
    unsigned __int128 product = 1;
    const auto count = 1 + rng.bounded(4);
    for (std::uint64_t k = 0; k < count; ++k) {
      const std::uint64_t n = 2 + rng.bounded(200);
      const auto m = static_cast<std::uint32_t>(1 + rng.bounded(2));
      raw.emplace_back(n, m);
      for (std::uint32_t r = 0; r < m; ++r) product *= n;
    }
    if (product >> 63) continue;
    auto e = coprime_refine(raw);
    CHECK(e.value() == static_cast<std::uint64_t>(product));
    for (std::size_t i = 0; i < e.factors().size(); ++i)
      for (std::size_t j = i + 1; j < e.factors().size(); ++j)
        CHECK(std::gcd(e.factors()[i].base, e.factors()[j].base) == 1);
    CHECK(e.value() == (std::uint64_t{1} << e.two_part()) * e.odd_part());
    CHECK(e.odd_part() % 2 == 1);
  }
}

TEST_CASE("coprime_refine rejects integers below 2 and overflowing products") {
  CHECK_THROWS_AS(coprime_refine({{1, 1}}), ConfigError);
  CHECK_THROWS_AS(coprime_refine({{3, 50}}), NumericGuardError);
}

TEST_CASE("pseudo_order: examples") {
  auto s5 = sym(5);
  CHECK(pseudo_order(*s5, s5->identity()) == 1);
  CHECK(pseudo_order(*s5, s5->parse("(1 2 3)(4 5)")) == 6);
  ModularUnits z7(7);
  CHECK(pseudo_order(z7, z7.from_residue(2)) == 3);
}

TEST_CASE("pseudo_order signals elements outside the claimed group") {
  // 2 has order 10 modulo 11, but units:21 claims exponent 20, and
  // 2^20 = 4 mod 21 is not 1.
  ModularUnits z21(21);
  CHECK_THROWS_AS(pseudo_order(z21, z21.from_residue(2)), ExponentError);
}

TEST_CASE("pseudo_order properties on Sym_6 and GL_2(F_3)") {
  auto s6 = sym(6);
  auto gl = test::matrices(MatrixFamily::GL, 2, 3);
  for (const BlackBox* bb : {static_cast<const BlackBox*>(s6.get()), static_cast<const BlackBox*>(gl.get())}) {
    const auto group = test::whole(*bb);
    const std::uint64_t E = bb->exponent().value();
    for (const auto& x : group.elements()) {
      const std::uint64_t l = pseudo_order(*bb, x);
      CHECK(E % l == 0);
      CHECK(bb->is_identity(pow(*bb, x, l)));
      for (const auto& f : bb->exponent().factors())
        if (l % f.base == 0) CHECK_FALSE(bb->is_identity(pow(*bb, x, l / f.base)));
    }
  }
}

TEST_CASE("involution_from: examples") {
  auto s4 = sym(4);
  CHECK(involution_from(*s4, s4->parse("(1 2 3)")) == s4->identity());
  CHECK(s4->format(involution_from(*s4, s4->parse("(1 2 3 4)"))) == "(1 3)(2 4)");
  ModularUnits z17(17);
  CHECK(z17.residue(involution_from(z17, z17.from_residue(2))) == 16);
}

TEST_CASE("involution_from fails when the exponent is wrong") {
  ModularUnits z15(15);  // claims exponent 14; 2 has order 4
  CHECK_FALSE(try_involution_from(z15, z15.from_residue(2)).has_value());
  CHECK_THROWS_AS(involution_from(z15, z15.from_residue(2)), ExponentError);
}

TEST_CASE("involution_from lies in <x> and squares to 1 (exhaustive Sym_5)") {
  auto s5 = sym(5);
  const auto group = test::whole(*s5);
  for (const auto& x : group.elements()) {
    const auto i = involution_from(*s5, x);
    CHECK(s5->is_identity(s5->multiply(i, i)));
    const auto powers = naive_powers(*s5, x);
    CHECK(std::find(powers.begin(), powers.end(), i) != powers.end());
    CHECK(s5->is_identity(i) == (naive_order(*s5, x) % 2 == 1));
  }
}

TEST_CASE("sqrt_odd_order: examples and errors") {
  auto s3 = sym(3);
  CHECK(sqrt_odd_order(*s3, s3->identity()) == s3->identity());
  const auto x = s3->parse("(1 2 3)");
  const auto y = sqrt_odd_order(*s3, x);
  CHECK(y == s3->multiply(x, x));
  CHECK(s3->multiply(y, y) == x);
  CHECK_THROWS_AS(sqrt_odd_order(*s3, s3->parse("(1 2)")), PreconditionError);
}

TEST_CASE("multiplication counter is shared but not part of element identity") {
  auto s4 = sym(4);
  s4->multiply(s4->identity(), s4->identity());
  CHECK(s4->multiplications() >= 1);
  const auto a = s4->parse("(1 2)");
  const auto b = s4->parse("(1 2)");
  CHECK(a == b);
  CHECK(std::hash<GroupElement>{}(a) == std::hash<GroupElement>{}(b));
}

TEST_CASE("GroupElement hex round trip") {
  GroupElement x(std::string("\x00\x01\xfe\x7f", 4));
  CHECK(x.hex() == "0001fe7f");
  CHECK(GroupElement::from_hex("0001FE7F") == x);
  CHECK_THROWS_AS(GroupElement::from_hex("0g"), ConfigError);
  CHECK_THROWS_AS(GroupElement::from_hex("abc"), ConfigError);
}
