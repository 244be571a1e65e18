#include "doctest.h"

#include <random>

#include "cyclelab/error.hpp"
#include "cyclelab/localfield.hpp"

using namespace cyclelab;

TEST_CASE("field spec validation") {
  CHECK_THROWS_AS(make_field_spec(4, 1, 1, 0, 5), Error);
  try {
    make_field_spec(3, 1, 1, 1, 5);
    FAIL("expected NonIntegralE0");
  } catch (const Error& err) {
    CHECK(err.kind() == ErrorKind::NonIntegralE0);
  }
  try {
    make_field_spec(3, 2, 1, 2, 10);
    FAIL("expected ZetaRamification");
  } catch (const Error& err) {
    CHECK(err.kind() == ErrorKind::ZetaRamification);
  }
  auto s = make_field_spec(5, 600, 1, 2, 0);
  CHECK(s.e0() == Rational(150));
  CHECK(s.c_int(2) == 1350);
}

TEST_CASE("cyclotomic presets") {
  auto q3 = fields::cyclotomic(3, 1);
  CHECK(q3.e == 2);
  CHECK(q3.eisenstein == std::vector<std::int64_t>{3, 3});
  auto q2 = fields::cyclotomic(2, 2);
  CHECK(q2.eisenstein == std::vector<std::int64_t>{2, 2});
  auto q9 = fields::cyclotomic(3, 2);
  CHECK(q9.e == 6);
}

TEST_CASE("pi-adic arithmetic") {
  auto ring = LocalRing::make(fields::cyclotomic(3, 1, 10));
  auto pi = ring->pi();
  CHECK(pi.valuation() == Valuation(1));
  CHECK(ring->from_int(3).valuation() == Valuation(2));
  CHECK(ring->from_int(9).valuation() == Valuation(4));
  CHECK(pi.pow(10).is_zero());
  CHECK(ring->zero().valuation().is_infinite());
  // pi^2 + 3 pi + 3 = 0
  CHECK((pi * pi + pi.scaled(3) + ring->from_int(3)).is_zero());
  // 3 / pi has valuation 1
  auto q = ring->from_int(3).divide_by_pi(1);
  CHECK(q.valuation() == Valuation(1));
  CHECK((q * pi).equals(ring->from_int(3)));
  CHECK(q.precision() == 9);
  CHECK_THROWS_AS(pi.inverse(), Error);
  CHECK_THROWS_AS(pi.divide_by_pi(2), Error);
  CHECK(pi.pow(3).divide_by_pi(3).equals(ring->one()));
}

TEST_CASE("precision exhaustion") {
  auto ring = LocalRing::make(fields::rational(2, 1, 3));
  auto x = ring->zero();
  CHECK_THROWS_AS(x.divide_by_pi(3), Error);
}

TEST_CASE("random field identities") {
  std::mt19937 rng(7);
  for (auto spec : {fields::cyclotomic(2, 2, 14), fields::cyclotomic(3, 1, 12), fields::cyclotomic(5, 1, 12),
                    fields::q2_sqrt_minus2(12), fields::rational(7, 0, 6)}) {
    auto ring = LocalRing::make(spec);
    std::uniform_int_distribution<std::int64_t> d(0, ring->modulus() - 1);
    for (int it = 0; it < 200; ++it) {
      std::vector<std::int64_t> a(spec.e), b(spec.e), c(spec.e);
      for (int i = 0; i < spec.e; ++i) {
        a[i] = d(rng);
        b[i] = d(rng);
        c[i] = d(rng);
      }
      auto x = ring->from_coeffs(a), y = ring->from_coeffs(b), z = ring->from_coeffs(c);
      CHECK(((x + y) * z).equals(x * z + y * z));
      CHECK(((x * y) * z).equals(x * (y * z)));
      if (x.valuation() != Valuation::infinity() && !x.valuation().is_infinite()) {
        CHECK(x.valuation() + y.valuation() <= (x * y).valuation());
      }
      if (x.is_unit()) CHECK((x * x.inverse()).equals(ring->one()));
      if (y.is_unit() && !(x * y).is_zero()) CHECK((x * y).divide(y).equals(x.with_precision((x * y).divide(y).precision())));
    }
  }
}

TEST_CASE("unit grades by enumeration and presentation agree") {
  // Q_2, n = 1: orders [2, 2, 2, 1, ...]
  auto q2 = fields::rational(2, 1, 6);
  auto en = unit_group_presentation(q2, 1);
  CHECK(en.method == OracleMethod::Enumeration);
  CHECK(en.log_orders == std::vector<int>{1, 1, 1, 0});
  CHECK(en.log_total == 3);
  auto pr = unit_group_presentation(q2, 1, std::nullopt, OracleOptions{{}, 1u << 20, OracleMethod::Presentation});
  CHECK(pr.log_orders == en.log_orders);
  CHECK(pr.log_total == en.log_total);

  // Q_2(i): support {0, 1, 3, 4}, total 2^4
  auto q2i = fields::cyclotomic(2, 2, 0);
  for (auto m : {OracleMethod::Enumeration, OracleMethod::Presentation}) {
    auto g = unit_group_presentation(make_field_spec(2, 2, 1, 1, 8, q2i.eisenstein), 1, std::nullopt,
                                     OracleOptions{{}, 1u << 20, m});
    CHECK(g.log_orders == std::vector<int>{1, 1, 0, 1, 1, 0});
    CHECK(g.log_total == 4);
  }
}

TEST_CASE("oracle budget") {
  auto spec = fields::cyclotomic(5, 1, 12);
  CHECK_THROWS_AS(unit_group_presentation(spec, 1, std::nullopt, OracleOptions{100, 1u << 20, {}}), Error);
}
