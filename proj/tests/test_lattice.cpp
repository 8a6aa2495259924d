#include <doctest.h>

#include <random>

#include "isocount/lattice.hpp"

using namespace isocount;

TEST_CASE("k3 lattice construction") {
  GramLattice l = k3_lattice();
  CHECK(l.rank == 22);
  CHECK(l.even);
  for (int i = 0; i < 22; ++i) CHECK(l.gram(i, i) % 2 == 0);
  CHECK(l.signature == Inertia{3, 0, 19});
  CHECK(l.determinant == -1);
  // fixed basis order: three hyperbolic blocks first
  for (int b = 0; b < 3; ++b) {
    CHECK(l.gram(2 * b, 2 * b) == 0);
    CHECK(l.gram(2 * b, 2 * b + 1) == 1);
  }
  CHECK(is_even_unimodular(l.gram));
}

TEST_CASE("e8 block is even unimodular definite") {
  Mat<i64> e8 = e8_gram();
  CHECK(is_even_unimodular(e8));
  CHECK(det_bareiss(to_int_mat(e8)) == 1);
  CHECK(inertia_exact(to_rat_mat(to_int_mat(e8))) == Inertia{8, 0, 0});
}

TEST_CASE("diagonal lattices") {
  GramLattice l = diagonal_lattice(2, 3);
  CHECK(l.rank == 5);
  CHECK(l.gram(0, 0) == 1);
  CHECK(l.gram(4, 4) == -1);
  CHECK(l.signature == Inertia{2, 0, 3});
  CHECK_FALSE(l.excluded_from_asymptotic);

  GramLattice u = diagonal_lattice(1, 1);
  CHECK(u.gram(0, 0) == 1);
  CHECK(u.gram(1, 1) == -1);

  GramLattice ex = diagonal_lattice(2, 2);
  CHECK(ex.excluded_from_asymptotic);

  CHECK_THROWS_AS(diagonal_lattice(0, 3), PreconditionError);
}

TEST_CASE("quadratic and bilinear values") {
  GramLattice l = k3_lattice();
  IVec f(22, 0), g(22, 0);
  f[0] = 1;
  g[1] = 1;
  CHECK(quadratic_value(l, f) == 0);
  CHECK(quadratic_value(l, g) == 0);
  CHECK(bilinear_value(l, f, g) == 1);

  IVec zero(22, 0);
  CHECK(quadratic_value(l, zero) == 0);

  IVec fg(22, 0);
  fg[0] = fg[1] = 1;
  CHECK(quadratic_value(l, fg) == 2);

  IVec bad(5, 1);
  CHECK_THROWS_AS(quadratic_value(l, bad), PreconditionError);
}

TEST_CASE("bilinear polarization identity on an even lattice") {
  GramLattice l = k3_lattice();
  REQUIRE(l.even);
  std::mt19937 rng(7);
  for (int trial = 0; trial < 20; ++trial) {
    ZVec v(22), w(22);
    for (int i = 0; i < 22; ++i) {
      v[i] = static_cast<long>(rng() % 7) - 3;
      w[i] = static_cast<long>(rng() % 7) - 3;
    }
    ZVec vw(22);
    for (int i = 0; i < 22; ++i) vw[i] = v[i] + w[i];
    Int lhs = 2 * bilinear_value(l, v, w);
    Int rhs = quadratic_value(l, vw) - quadratic_value(l, v) - quadratic_value(l, w);
    CHECK(lhs == rhs);
  }
}

TEST_CASE("primitivity") {
  CHECK(is_primitive(IVec{1, 0, 0}));
  CHECK_FALSE(is_primitive(IVec{2, 4, 6}));
  CHECK(is_primitive(IVec{2, 3}));
  CHECK_THROWS_AS(is_primitive(IVec{0, 0}), PreconditionError);
}

TEST_CASE("exact inertia") {
  Mat<Rat> u(2, 2);
  u(0, 1) = u(1, 0) = 1;
  CHECK(inertia_exact(u) == Inertia{1, 0, 1});

  Mat<i64> e8 = e8_gram();
  Mat<Rat> neg(8, 8);
  for (int i = 0; i < 8; ++i)
    for (int j = 0; j < 8; ++j) neg(i, j) = Rat(-e8(i, j));
  CHECK(inertia_exact(neg) == Inertia{0, 0, 8});

  Mat<Rat> zero(2, 2);
  CHECK(inertia_exact(zero) == Inertia{0, 2, 0});

  Mat<Rat> ns(2, 2);
  ns(0, 1) = 1;
  CHECK_THROWS_AS(inertia_exact(ns), PreconditionError);
}

TEST_CASE("even unimodular predicate") {
  Mat<i64> u(2, 2);
  u(0, 1) = u(1, 0) = 1;
  CHECK(is_even_unimodular(u));

  Mat<i64> odd(2, 2);
  odd(0, 0) = 1;
  odd(1, 1) = -1;
  CHECK_FALSE(is_even_unimodular(odd));

  Mat<i64> big(2, 2);
  big(0, 0) = 2;
  big(1, 1) = -2;
  CHECK_FALSE(is_even_unimodular(big));  // determinant -4
}

TEST_CASE("dual pairing solve") {
  GramLattice l = k3_lattice();
  ZVec w(22, Int(0));
  w[0] = 1;  // f1
  ZVec x = dual_pairing_solve(l, w);
  CHECK(bilinear_value(l, x, w) == 1);

  ZVec w2(22, Int(0));
  w2[0] = 1;
  w2[1] = 3;  // f + 3g
  ZVec x2 = dual_pairing_solve(l, w2);
  CHECK(bilinear_value(l, x2, w2) == 1);

  ZVec w3(22, Int(0));
  w3[0] = 2;  // not primitive
  CHECK_THROWS_AS(dual_pairing_solve(l, w3), PreconditionError);

  GramLattice nonuni = make_lattice([] {
    Mat<i64> g(2, 2);
    g(0, 0) = 2;
    g(1, 1) = -2;
    return g;
  }());
  ZVec w4{Int(1), Int(0)};
  CHECK_THROWS_AS(dual_pairing_solve(nonuni, w4), PreconditionError);
}

TEST_CASE("saturated kernel basis") {
  SUBCASE("single unit row in rank 22") {
    Mat<Int> m(1, 22);
    m(0, 0) = 1;
    Mat<Int> b = saturated_kernel_basis(m);
    CHECK(b.rows == 21);
    for (int i = 0; i < b.rows; ++i) CHECK(b(i, 0) == 0);
    CHECK(has_unit_elementary_divisors(b));
  }
  SUBCASE("saturation: (2,0) kernel is (0,1) not (0,2)") {
    Mat<Int> m(1, 2);
    m(0, 0) = 2;
    Mat<Int> b = saturated_kernel_basis(m);
    REQUIRE(b.rows == 1);
    CHECK(abs(b(0, 1)) == 1);
    CHECK(b(0, 0) == 0);
  }
  SUBCASE("pairing rows of f1 in the k3 lattice") {
    GramLattice l = k3_lattice();
    ZVec w(22, Int(0)), x1(22, Int(0));
    w[0] = 1;
    x1[1] = 1;
    Mat<Int> g = to_int_mat(l.gram);
    ZVec gw = mul(g, w), gx = mul(g, x1);
    Mat<Int> m(2, 22);
    for (int j = 0; j < 22; ++j) {
      m(0, j) = gw[j];
      m(1, j) = gx[j];
    }
    Mat<Int> b = saturated_kernel_basis(m);
    REQUIRE(b.rows == 20);
    // M B^T == 0
    Mat<Int> prod = mul(m, transpose(b));
    for (const Int& v : prod.a) CHECK(v == 0);
    CHECK(has_unit_elementary_divisors(b));
    // complement gram is the U^2 + (-E8)^2 block matrix
    Mat<Int> cg = mul(mul(b, g), transpose(b));
    Mat<i64> cg64(20, 20);
    for (size_t i = 0; i < cg.a.size(); ++i) cg64.a[i] = cg.a[i].get_si();
    CHECK(is_even_unimodular(cg64));
    CHECK(inertia_exact(to_rat_mat(cg)) == Inertia{2, 0, 18});
  }
}

TEST_CASE("lattice text format round trip") {
  GramLattice l = diagonal_lattice(2, 3);
  std::string txt = lattice_to_text(l);
  GramLattice back = lattice_from_text(txt);
  CHECK(back.gram == l.gram);
  CHECK(back.signature == l.signature);
  CHECK_THROWS_AS(lattice_from_text("not a lattice"), ConfigError);
  CHECK_THROWS_AS(lattice_from_text("3\n1 2 3\n4 5"), ConfigError);
}

TEST_CASE("determinant") {
  CHECK(det_bareiss(to_int_mat(k3_lattice().gram)) == -1);
  Mat<Int> s(3, 3);
  s(0, 1) = 2;
  s(1, 0) = 3;
  s(2, 2) = 5;
  CHECK(det_bareiss(s) == -30);
}
