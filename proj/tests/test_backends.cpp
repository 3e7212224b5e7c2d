#include <numeric>
#include <vector>

#include "bbg/backends.hpp"
#include "bbg/error.hpp"
#include "doctest.h"
#include "helpers.hpp"

using namespace bbg;

namespace {

void check_axioms(const BlackBox& bb, const EnumeratedGroup& g, std::uint64_t seed, int triples) {
  Rng rng(seed);
  const auto e = bb.identity();
  for (int t = 0; t < triples; ++t) {
    const auto& a = g[rng.bounded(g.size())];
    const auto& b = g[rng.bounded(g.size())];
    const auto& c = g[rng.bounded(g.size())];
    REQUIRE(bb.multiply(bb.multiply(a, b), c) == bb.multiply(a, bb.multiply(b, c)));
    REQUIRE(bb.multiply(a, e) == a);
    REQUIRE(bb.multiply(e, a) == a);
    REQUIRE(bb.is_identity(bb.multiply(a, bb.invert(a))));
    REQUIRE(bb.is_identity(bb.multiply(bb.invert(a), a)));
  }
}

}  // namespace

TEST_CASE("group axioms on random triples") {
  auto s6 = test::sym(6);
  check_axioms(*s6, test::whole(*s6), 1, 10'000);
  auto gl = test::matrices(MatrixFamily::GL, 2, 5);
  check_axioms(*gl, test::whole(*gl), 2, 10'000);
  auto psl = test::matrices(MatrixFamily::PSL, 2, 7);
  check_axioms(*psl, test::whole(*psl), 3, 10'000);
  auto sl3 = test::matrices(MatrixFamily::SL, 3, 3);
  check_axioms(*sl3, test::whole(*sl3), 4, 10'000);
  ModularUnits z(1009);
  std::vector<GroupElement> units;
  for (std::uint64_t r = 1; r < 1009; ++r) units.push_back(z.from_residue(r));
  check_axioms(z, EnumeratedGroup::from_elements(z, units), 5, 10'000);
}

TEST_CASE("group orders of the small instances") {
  CHECK(test::whole(*test::sym(5)).size() == 120);
  CHECK(test::whole(*test::matrices(MatrixFamily::GL, 2, 3)).size() == 48);
  CHECK(test::whole(*test::matrices(MatrixFamily::SL, 2, 3)).size() == 24);
  CHECK(test::whole(*test::matrices(MatrixFamily::SL, 2, 5)).size() == 120);
  CHECK(test::whole(*test::matrices(MatrixFamily::PSL, 2, 7)).size() == 168);
  CHECK(test::matrices(MatrixFamily::GL, 2, 3)->all_elements().size() == 48);
  CHECK(test::matrices(MatrixFamily::PSL, 2, 5)->all_elements().size() == 60);
}

TEST_CASE("permutation arithmetic: product applies the left factor first") {
  auto s3 = test::sym(3);
  const auto a = s3->parse("(1 2)");
  const auto b = s3->parse("(2 3)");
  // 1 -> 2 -> 3, 3 -> 3 -> 2, 2 -> 1 -> 1
  CHECK(s3->format(s3->multiply(a, b)) == "(1 3 2)");
  CHECK(s3->parse("(1 2)(2 3)") == s3->multiply(a, b));
  CHECK(s3->format_images(s3->parse("(1 2 3)")) == "[2,3,1]");
  CHECK(s3->parse("[2,3,1]") == s3->parse("(1 2 3)"));
  CHECK(s3->format(s3->identity()) == "()");
  CHECK(PermutationGroup(46).exponent().value() == 9419588158802421600ull);
  CHECK(s3->conjugate(a, b) == s3->parse("(1 3)"));
}

TEST_CASE("permutation parsing rejects bad literals") {
  auto s4 = test::sym(4);
  CHECK_THROWS_AS(s4->parse("(1 5)"), ConfigError);
  CHECK_THROWS_AS(s4->parse("(1 1)"), ConfigError);
  CHECK_THROWS_AS(s4->parse("[1,1,2,3]"), ConfigError);
  CHECK_THROWS_AS(s4->parse("(1 2"), ConfigError);
  CHECK_THROWS_AS(PermutationGroup(0), ConfigError);
  CHECK_THROWS_AS(PermutationGroup(47), ConfigError);
}

TEST_CASE("perm_order equals pseudo_order on Sym_n, n <= 6") {
  for (unsigned n = 1; n <= 6; ++n) {
    auto s = test::sym(n);
    const auto g = test::whole(*s);
    for (const auto& x : g.elements()) {
      CHECK(perm_order(x.data()) == pseudo_order(*s, x));
      CHECK(s->order(x) == naive_order(*s, x));
    }
  }
}

TEST_CASE("matrix pseudo_order equals naive order on GL_2(F_3)") {
  auto gl = test::matrices(MatrixFamily::GL, 2, 3);
  const auto g = test::whole(*gl);
  REQUIRE(g.size() == 48);
  for (const auto& x : g.elements()) CHECK(pseudo_order(*gl, x) == naive_order(*gl, x));
}

TEST_CASE("gl_exponent values") {
  CHECK(gl_exponent(1, 3).value() == 2);
  CHECK(gl_exponent(2, 3).value() == 48);
  CHECK(gl_exponent(2, 5).value() == 480);
}

TEST_CASE("matrix inverse and determinant examples") {
  using M = MatrixGroup::Matrix;
  CHECK(matrix_invert(M{2, 0, 0, 3}, 2, 5) == M{3, 0, 0, 2});
  CHECK(matrix_invert(M{1, 1, 0, 1}, 2, 5) == M{1, 4, 0, 1});
  CHECK_THROWS_AS(matrix_invert(M{1, 2, 2, 4}, 2, 5), PreconditionError);
  CHECK(matrix_determinant(M{1, 2, 3, 4}, 2, 5) == 3);  // -2 mod 5
  CHECK(matrix_determinant(M{2, 0, 0, 0, 3, 0, 0, 0, 4}, 3, 7) == 3);
}

TEST_CASE("SL and PSL families") {
  auto sl = test::matrices(MatrixFamily::SL, 2, 5);
  CHECK_THROWS_AS(sl->from_matrix({2, 0, 0, 2}), ConfigError);
  CHECK_NOTHROW(sl->from_matrix({2, 0, 0, 3}));
  auto psl = test::matrices(MatrixFamily::PSL, 2, 7);
  // M and -M are the same element of PSL.
  CHECK(psl->from_matrix({1, 1, 0, 1}) == psl->from_matrix({6, 6, 0, 6}));
  CHECK(psl->is_identity(psl->from_matrix({6, 0, 0, 6})));
  CHECK_THROWS_AS(MatrixGroup(MatrixFamily::PSL, 3, 7), ConfigError);
  CHECK_THROWS_AS(MatrixGroup(MatrixFamily::GL, 2, 9), ConfigError);
}

TEST_CASE("matrix text format") {
  auto gl = test::matrices(MatrixFamily::GL, 2, 5);
  const auto x = gl->parse("[1,2,3,4]");
  CHECK(gl->format(x) == "[1,2,3,4]");
  CHECK(gl->matrix(x) == MatrixGroup::Matrix{1, 2, 3, 4});
  CHECK_THROWS_AS(gl->parse("[1,2,2,4]"), ConfigError);
  CHECK_THROWS_AS(gl->parse("[1,2,3]"), ConfigError);
}

TEST_CASE("modular units") {
  ModularUnits z(15);
  CHECK(z.residue(z.multiply(z.from_residue(4), z.from_residue(4))) == 1);
  CHECK(z.residue(z.invert(z.from_residue(2))) == 8);
  CHECK_THROWS_AS(z.from_residue(3), ConfigError);
  CHECK_THROWS_AS(ModularUnits(10), ConfigError);
  CHECK(z.format(z.parse("7")) == "7");
  const auto e = ModularUnits(561).exponent();
  CHECK(e.value() == 560);
  CHECK(e.two_part() == 4);
  CHECK(e.odd_part() == 35);
}

TEST_CASE("direct products") {
  auto y = test::matrices(MatrixFamily::PSL, 2, 7);
  DirectProduct yy({y, y});
  const auto a = y->parse("[1,1,0,1]");
  const auto b = y->parse("[0,1,6,0]");
  const auto ab = yy.combine({a, b});
  CHECK(yy.split(ab) == std::vector<GroupElement>{a, b});
  CHECK(yy.multiply(ab, ab) == yy.combine({y->multiply(a, a), y->multiply(b, b)}));
  CHECK(yy.parse(yy.format(ab)) == ab);
  CHECK(pseudo_order(yy, ab) == std::lcm(pseudo_order(*y, a), pseudo_order(*y, b)));
}

TEST_CASE("encodings round-trip on every element of small instances") {
  std::vector<std::shared_ptr<const BlackBox>> boxes = {
      make_backend("sym:5"), make_backend("gl:2:3"), make_backend("sl:2:5"),
      make_backend("psl:2:7"), make_backend("sym:3^2")};
  for (const auto& bb : boxes) {
    const auto g = test::whole(*bb);
    for (const auto& x : g.elements()) {
      CHECK(bb->decode(x.bytes()) == x);
      CHECK(bb->parse(bb->format(x)) == x);
      CHECK(GroupElement::from_hex(x.hex()) == x);
    }
  }
  ModularUnits z(101);
  for (std::uint64_t r = 1; r < 101; ++r) {
    const auto x = z.from_residue(r);
    CHECK(z.decode(x.bytes()) == x);
    CHECK(z.parse(z.format(x)) == x);
  }
}

TEST_CASE("decode rejects malformed encodings") {
  auto s3 = test::sym(3);
  CHECK_THROWS_AS(s3->decode(std::string("\x00\x00\x01", 3)), ConfigError);
  CHECK_THROWS_AS(s3->decode(std::string("\x00\x01", 2)), ConfigError);
  auto gl = test::matrices(MatrixFamily::GL, 2, 3);
  CHECK_THROWS_AS(gl->decode(std::string(8, '\0')), ConfigError);
}

TEST_CASE("make_backend specs") {
  CHECK(make_backend("sym:4")->describe() == "sym:4");
  CHECK(make_backend("psl:2:7")->describe() == "psl:2:7");
  CHECK(make_backend("units:561")->describe() == "units:561");
  CHECK(make_backend("psl:2:7^2")->describe() == "psl:2:7^2");
  for (const char* bad : {"", "sym", "sym:0", "gl:2:4", "foo:3", "sym:3^0", "units:8", "sym:x"})
    CHECK_THROWS_AS(make_backend(bad), ConfigError);
}

TEST_CASE("conjugation convention x^g = g^-1 x g") {
  auto s4 = test::sym(4);
  const auto x = s4->parse("(1 2)");
  const auto g = s4->parse("(1 2 3 4)");
  CHECK(s4->conjugate(x, g) == s4->multiply(s4->multiply(s4->invert(g), x), g));
  // Relabelling: (1 2)^g = (g(1) g(2)).
  CHECK(s4->conjugate(x, g) == s4->parse("(2 3)"));
}
