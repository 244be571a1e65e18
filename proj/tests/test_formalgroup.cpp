#include "doctest.h"

#include <chrono>
#include <random>

#include "cyclelab/error.hpp"
#include "cyclelab/formalgroup.hpp"

using namespace cyclelab;

TEST_CASE("multiplicative group multiplication maps") {
  auto ring = LocalRing::make(fields::cyclotomic(3, 1, 12));
  auto G = multiplicative_group(ring, 12);
  auto one = mult_by(G, 1);
  CHECK(one.height == 0);
  CHECK(one.D == Valuation(0));
  auto three = mult_by(G, 3);
  CHECK(three.height == 1);
  CHECK(three.D == Valuation(2));  // v(3) = e
  CHECK(three.a_p_residue == 1);
  CHECK(three.series.reduce_mod_m()[3] == 1);
  CHECK(height_one_bounds_hold(three));
  auto ks = kernel_valuations(three);
  REQUIRE(ks.size() == 1);
  CHECK(ks[0] == KernelSlope{Rational(1), 2});
}

TEST_CASE("kernel of [p^n] on the multiplicative group") {
  // Q_2(i): [4] has roots i-1, -i-1 (v = 1) and -2 (v = 2)
  auto ring = LocalRing::make(fields::cyclotomic(2, 2, 16));
  auto four = mult_by(multiplicative_group(ring, 8), 4);
  CHECK(four.height == 2);
  auto ks = kernel_valuations(four);
  REQUIRE(ks.size() == 2);
  CHECK(ks[0] == KernelSlope{Rational(2), 1});
  CHECK(ks[1] == KernelSlope{Rational(1), 2});
  // Q_2: [2] has the single root -2
  auto q2 = LocalRing::make(fields::rational(2, 1, 10));
  auto two = mult_by(multiplicative_group(q2, 6), 2);
  CHECK(kernel_valuations(two) == std::vector<KernelSlope>{{Rational(1), 1}});
}

TEST_CASE("insufficient precision in the Newton polygon") {
  auto ring = LocalRing::make(fields::cyclotomic(2, 2, 2));
  auto four = mult_by(multiplicative_group(ring, 8), 4);
  CHECK_THROWS_AS(kernel_valuations(four), Error);
}

TEST_CASE("elliptic formal groups satisfy the axioms") {
  std::mt19937 rng(5);
  struct Curve {
    std::int64_t p;
    Weierstrass w;
    int height;
  };
  std::vector<Curve> curves = {
      {3, {0, 0, 0, 1, 0}, 2},   // y^2 = x^3 + x over Q_3
      {5, {0, 0, 0, 0, 1}, 2},   // y^2 = x^3 + 1 over Q_5
      {5, {0, 0, 0, 1, 0}, 1},   // y^2 = x^3 + x over Q_5
      {7, {0, 0, 0, 0, 1}, 1},   // y^2 = x^3 + 1 over Q_7
      {2, {0, 0, 1, 0, 0}, 2},   // y^2 + y = x^3 over Q_2
      {2, {1, 0, 0, 0, 1}, 1},   // y^2 + xy = x^3 + 1 over Q_2
  };
  for (const auto& c : curves) {
    CAPTURE(c.p);
    CHECK(c.w.discriminant() % c.p != 0);
    auto ring = LocalRing::make(fields::rational(c.p, 0, 6));
    auto F = elliptic_formal_group(ring, c.w);
    CHECK(F.t_precision() == 2 * c.p * c.p + 2);
    CHECK(F.law.coeff(1, 1).equals(ring->from_int(-c.w.a1)));
    CHECK(check_axioms(F, rng).ok());
    auto mp = mult_by(F, static_cast<int>(c.p));
    CHECK(mp.height == c.height);
    if (mp.height == 1) CHECK(height_one_bounds_hold(mp));
  }
}

TEST_CASE("supersingular reduction of y^2 = x^3 + 1 at 5") {
  auto ring = LocalRing::make(fields::rational(5, 0, 6));
  auto F = elliptic_formal_group(ring, {0, 0, 0, 0, 1});
  auto five = mult_by(F, 5);
  auto r = five.series.reduce_mod_m();
  CHECK(r[5] == 0);
  CHECK(r[25] != 0);
  for (int k = 1; k < 25; ++k) CHECK(r[k] == 0);
}

TEST_CASE("quotient isogenies") {
  auto ring = LocalRing::make(fields::cyclotomic(3, 1, 30));
  auto G = multiplicative_group(ring, 8);
  auto pi = ring->pi();
  auto trivial = quotient_isogeny(G, {});
  CHECK(trivial.psi.series.equals(TruncSeries::identity(ring, 8)));
  CHECK(trivial.G.law.equals(G.law));
  auto q = quotient_isogeny(G, {pi, pi * pi + pi.scaled(2)});
  CHECK(q.psi.height == 1);
  CHECK(q.psi.series.equals(mult_by(G, 3).series));
  CHECK(q.G.law.equals(G.law));
  try {
    quotient_isogeny(G, {pi});
    FAIL("expected NotASubgroup");
  } catch (const Error& err) {
    CHECK(err.kind() == ErrorKind::NotASubgroup);
  }
  // p = 2: psi = -((1+T)^2 - 1), quotient law X + Y - XY
  auto r2 = LocalRing::make(fields::rational(2, 1, 20));
  auto q2 = quotient_isogeny(multiplicative_group(r2, 6), {r2->from_int(-2)});
  CHECK(q2.psi.series.equals(-mult_by(multiplicative_group(r2, 6), 2).series));
  auto X = BiSeries::X(r2, 6), Y = BiSeries::Y(r2, 6);
  CHECK(q2.G.law.equals(X + Y - X * Y));
}

TEST_CASE("canonical chain recursion") {
  // n = 1, v_a >= pe/(p+1): kernel valuation e/(p^2-1)
  auto c1 = canonical_chain(Rational(5), 6, 1, 2);
  CHECK(c1.t() == std::vector<std::int64_t>{2});
  // n = 1, v_a < pe/(p+1): (e - v_a)/(p-1)
  auto c2 = canonical_chain(Rational(1), 6, 1, 2);
  CHECK(c2.t() == std::vector<std::int64_t>{5});
  // p = 5, n = 2, e = 600: t_2 = 100, t_1 = 20
  auto ex = canonical_chain(Rational(500), 600, 2, 5);
  CHECK(ex.t() == std::vector<std::int64_t>{20, 100});
  CHECK(ex.warnings.empty());
  CHECK(ex.c_phi(1) == Rational(25));
  CHECK(ex.c_phi(2) == Rational(145));
  CHECK(ex.dual().t() == std::vector<std::int64_t>{500, 580});
  CHECK_THROWS_AS(canonical_chain(Rational(500), 60, 2, 5), Error);
  // tie v_a = e/(p+1) continues at the bound
  auto tie = canonical_chain(Rational(4), 12, 2, 2);
  CHECK(tie.log[0].find("at e/(p+1)") != std::string::npos);
  CHECK(tie.t() == std::vector<std::int64_t>{4, 8});
}

TEST_CASE("chain invariants warn or throw") {
  auto c = chain_from_t(5, 600, {24, 100});
  CHECK(!c.warnings.empty());
  CHECK_THROWS_AS(chain_from_t(5, 600, {24, 100}, true), Error);
  CHECK_THROWS_AS(chain_from_t(5, 600, {22}), Error);
  auto m = multiplication_chain(3, 6, 2);
  CHECK(m.c_phi_int(2) == 15);
}
