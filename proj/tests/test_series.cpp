#include "doctest.h"

#include <random>

#include "cyclelab/error.hpp"
#include "cyclelab/series.hpp"

using namespace cyclelab;

namespace {

// (1+T)^m - 1 as a polynomial
TruncSeries binomial_minus_one(const std::shared_ptr<const LocalRing>& ring, int m, int M) {
  std::vector<std::int64_t> c(m + 1, 0);
  std::int64_t b = 1;
  for (int k = 0; k <= m; ++k) {
    c[k] = b;
    b = b * (m - k) / (k + 1);
  }
  c[0] = 0;
  return TruncSeries::from_ints(ring, c, M);
}

TruncSeries random_series(const std::shared_ptr<const LocalRing>& ring, int M, std::mt19937& rng, bool constant) {
  std::uniform_int_distribution<std::int64_t> d(0, ring->modulus() - 1);
  std::vector<RingElement> c;
  for (int k = 0; k <= M; ++k) {
    std::vector<std::int64_t> digits(ring->e());
    for (auto& x : digits) x = d(rng);
    c.push_back(k == 0 && !constant ? ring->zero() : ring->from_coeffs(digits));
  }
  return TruncSeries::from_elements(ring, c, M, false);
}

}  // namespace

TEST_CASE("composition examples") {
  auto ring = LocalRing::make(fields::rational(2, 1, 12));
  auto sq = binomial_minus_one(ring, 2, 8);
  auto four = binomial_minus_one(ring, 4, 8);
  CHECK(compose(sq, sq).equals(four));
  CHECK(compose(TruncSeries::identity(ring, 8), sq).equals(sq));
  CHECK(compose(sq, TruncSeries::identity(ring, 8)).equals(sq));
  auto f5 = sq.truncated(5);
  CHECK(compose(f5, binomial_minus_one(ring, 3, 5)).t_precision() == 5);
  auto with_const = TruncSeries::from_ints(ring, {1, 1}, 5);
  CHECK_THROWS_AS(compose(sq, with_const), Error);
}

TEST_CASE("reduction to the residue field") {
  auto ring = LocalRing::make(fields::cyclotomic(3, 1, 10));
  auto cube = binomial_minus_one(ring, 3, 6);
  auto r = cube.reduce_mod_m();
  CHECK(r == std::vector<std::int64_t>{0, 0, 0, 1, 0, 0, 0});
  auto s = TruncSeries::from_elements(ring, {ring->zero(), ring->one(), ring->pi()}, 4);
  CHECK(s.reduce_mod_m() == std::vector<std::int64_t>{0, 1, 0, 0, 0});
}

TEST_CASE("composition is associative on random series") {
  std::mt19937 rng(11);
  for (auto spec : {fields::rational(3, 0, 6), fields::cyclotomic(2, 2, 8)}) {
    auto ring = LocalRing::make(spec);
    for (int it = 0; it < 20; ++it) {
      auto f = random_series(ring, 7, rng, true);
      auto g = random_series(ring, 7, rng, false);
      auto h = random_series(ring, 7, rng, false);
      CHECK(compose(compose(f, g), h).equals(compose(f, compose(g, h))));
      CHECK(compose(f, TruncSeries::identity(ring, 7)).equals(f));
    }
  }
}

TEST_CASE("two-variable substitution and inverse") {
  auto ring = LocalRing::make(fields::rational(5, 0, 8));
  const int M = 8;
  auto X = BiSeries::X(ring, M), Y = BiSeries::Y(ring, M);
  auto F = X + Y + X * Y;
  auto one = BiSeries::constant(ring, M, 1);
  auto inv = (one + X).inverse();
  CHECK(((one + X) * inv).equals(one));
  // F((1+T)^2-1, T) = (1+T)^3 - 1
  auto sq = binomial_minus_one(ring, 2, M);
  CHECK(F.substitute(sq, TruncSeries::identity(ring, M)).equals(binomial_minus_one(ring, 3, M)));
  // [5](F(X,Y)) = F([5]X, [5]Y) for the multiplicative law
  auto five = binomial_minus_one(ring, 5, M);
  CHECK(F.apply_outer(five).equals(F.apply_inner(five)));
}

TEST_CASE("undetermined coefficients") {
  auto ring = LocalRing::make(fields::cyclotomic(3, 1, 40));
  const int M = 8;
  auto X = BiSeries::X(ring, M), Y = BiSeries::Y(ring, M);
  auto F = X + Y + X * Y;
  auto G = solve_undetermined(TruncSeries::identity(ring, M), F, M);
  CHECK(G.equals(F));
  auto psi = binomial_minus_one(ring, 3, M);
  auto G2 = solve_undetermined(psi, F, M);
  CHECK(G2.equals(F));
  CHECK(G2.pi_precision() <= 40 - 2 * M + 2);
  CHECK(G2.apply_inner(psi).equals(F.apply_outer(psi)));

  auto low = LocalRing::make(fields::cyclotomic(3, 1, 9));
  auto psi_low = binomial_minus_one(low, 3, M);
  auto F_low = BiSeries::X(low, M) + BiSeries::Y(low, M) + BiSeries::X(low, M) * BiSeries::Y(low, M);
  try {
    solve_undetermined(psi_low, F_low, M);
    FAIL("expected PrecisionExhausted");
  } catch (const Error& err) {
    CHECK(err.kind() == ErrorKind::PrecisionExhausted);
  }
}

TEST_CASE("non-integral solution") {
  // T(T - pi) comes from the non-subgroup {0, pi}
  auto ring = LocalRing::make(fields::cyclotomic(3, 1, 30));
  const int M = 6;
  auto F = BiSeries::X(ring, M) + BiSeries::Y(ring, M) + BiSeries::X(ring, M) * BiSeries::Y(ring, M);
  auto psi = TruncSeries::from_elements(ring, {ring->zero(), -ring->pi(), ring->one()}, M);
  try {
    solve_undetermined(psi, F, M);
    FAIL("expected NonIntegralSolution");
  } catch (const Error& err) {
    CHECK(err.kind() == ErrorKind::NonIntegralSolution);
  }
}
