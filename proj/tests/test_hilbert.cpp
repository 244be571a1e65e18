#include "doctest.h"

#include <random>

#include "cyclelab/error.hpp"
#include "cyclelab/graded.hpp"
#include "cyclelab/hilbert.hpp"

using namespace cyclelab;

namespace {

// symbol of two rationals by bimultiplicativity
int h2(std::int64_t xn, std::int64_t xd, std::int64_t yn, std::int64_t yd) {
  return hilbert_2adic(xn, yn) * hilbert_2adic(xn, yd) * hilbert_2adic(xd, yn) * hilbert_2adic(xd, yd);
}

IndexSet set_of(std::vector<std::int64_t> v, std::int64_t bound) { return IndexSet(std::move(v), bound, "test"); }

}  // namespace

TEST_CASE("pairing levels") {
  CHECK(pairing_level(1, 1, 2) == 2);
  CHECK(pairing_level(2, 2, 2) == 5);
  CHECK(pairing_level(0, 4, 2) == 4);
  CHECK(pairing_level(3, 6, 3) == 10);
  CHECK_THROWS_AS(pairing_level(-1, 2, 2), Error);
}

TEST_CASE("symbol orders") {
  const auto q2 = fields::rational(2, 1);
  CHECK(symbol_order(3, 0, q2, 1) == 0);
  CHECK(symbol_order(1, 1, q2, 1) == 1);
  CHECK(symbol_order(0, 0, q2, 1) == 1);

  // p | s, p | t, s + t = c_i lands one step above c_i
  const auto k = make_field_spec(5, 120, 1, 2, 0);
  CHECK(symbol_order(75, 75, k, 2) == 1);
  CHECK(symbol_order(74, 76, k, 2) == 2);
  CHECK(symbol_order(150, 119, k, 2) == 1);
  CHECK(symbol_order(150, 120, k, 2) == 0);
  CHECK(symbol_order(150, 121, k, 2) == 0);

  for (const auto& spec : {q2, k, fields::cyclotomic(3, 1), fields::cyclotomic(2, 2)}) {
    const int n = spec.zeta_level;
    const std::int64_t cn = spec.c_int(n);
    for (std::int64_t s = 0; s <= cn + 3; ++s) {
      CHECK((symbol_order(s, 0, spec, n) == 0) == (s > cn));
      for (std::int64_t t = 0; t <= 6; ++t) CHECK(symbol_order(s, t, spec, n) == symbol_order(t, s, spec, n));
    }
  }
}

TEST_CASE("R sets") {
  const auto q2 = fields::rational(2, 1);
  auto r = r_set(1, q2);
  CHECK(r == std::vector<IndexPair>{{1, 1}, {0, 2}, {2, 0}});

  const auto k = make_field_spec(5, 120, 1, 2, 0);
  auto r1 = r_set(1, k);
  CHECK(r1.size() == 120 + 2);  // 149 inner values minus 29 multiples of 5
  for (auto [s, t] : r1) {
    CHECK(s + t == 150);
    CHECK(symbol_order(s, t, k, 2) == 2);
  }
}

TEST_CASE("alpha count") {
  const auto q2i = fields::cyclotomic(2, 2);  // e = 2, c_1 = 4, c_2 = 6
  const int n = 2;
  const auto full = units_support(q2i, n);
  auto res = alpha_count(full, full, q2i, n);
  CHECK(res.alpha == n);
  CHECK(res.alpha_max == n);

  const std::int64_t cn = q2i.c_int(n);
  std::vector<std::int64_t> o;
  for (auto m : full.elems)
    if (m >= 1) o.push_back(m);
  const auto O = set_of(o, cn);
  const auto Our = set_of({q2i.c_int(1), q2i.c_int(2)}, cn);
  res = alpha_count(O, Our, q2i, n);
  CHECK(res.alpha == 0);
  CHECK(res.alpha_max >= res.alpha);

  CHECK(alpha_count(IndexSet({}, cn, "empty"), full, q2i, n).alpha == 0);
  CHECK(alpha_count(full, IndexSet({}, cn, "empty"), q2i, n).alpha_max == 0);
}

TEST_CASE("2-adic symbol: closed form") {
  CHECK(hilbert_2adic(3, 3) == -1);
  CHECK(hilbert_2adic(5, 2) == -1);
  CHECK(hilbert_2adic(2, 2) == 1);
  CHECK(hilbert_2adic(-1, -1) == -1);
  for (std::int64_t a : {1, 2, 3, 5, 6, 7, 10, 12, -3, -14, 96}) CHECK(hilbert_2adic(a, -a) == 1);
  CHECK_THROWS_AS(hilbert_2adic(0, 3), Error);
}

TEST_CASE("2-adic symbol: brute force agrees on every square class") {
  for (std::int64_t a : {1, 3, 5, 7, 2, 6, 10, 14}) {
    for (std::int64_t b : {1, 3, 5, 7, 2, 6, 10, 14}) {
      CHECK(brute_hilbert_2adic(a, b) == hilbert_2adic(a, b));
      CHECK(brute_hilbert_2adic(4 * a, 9 * b) == hilbert_2adic(a, b));
    }
  }
  std::mt19937 rng(7);
  std::uniform_int_distribution<std::int64_t> d(-5000, 5000);
  for (int k = 0; k < 500; ++k) {
    std::int64_t a = d(rng), b = d(rng), c = d(rng);
    if (a == 0 || b == 0 || c == 0) continue;
    CHECK(brute_hilbert_2adic(a, b) == hilbert_2adic(a, b));
    // bimultiplicative
    CHECK(hilbert_2adic(a * c, b) == hilbert_2adic(a, b) * hilbert_2adic(c, b));
  }
}

TEST_CASE("2-adic oracle matches symbol orders on the grid") {
  const auto q2 = fields::rational(2, 1);
  for (std::int64_t s = 0; s <= 5; ++s) {
    for (std::int64_t t = 0; t <= 5; ++t) {
      CAPTURE(s);
      CAPTURE(t);
      CHECK(q2_symbol_exponent(s, t) == symbol_order(s, t, q2, 1));
    }
  }
}

TEST_CASE("rearrangement of (1 + a 2^s, 1 + b 2^t) on random inputs") {
  std::mt19937 rng(2026);
  std::uniform_int_distribution<std::int64_t> coef(-200, 200);
  std::uniform_int_distribution<int> expo(1, 6);
  int done = 0;
  while (done < 1000) {
    const std::int64_t a = coef(rng), b = coef(rng);
    const int s = expo(rng), t = expo(rng);
    const std::int64_t as = a << s, bt = b << t;
    const std::int64_t x = 1 + as, y = 1 + bt, ab = a * b << (s + t);
    const std::int64_t lhs_x = 1 + as * y;  // 1 + a pi^s (1 + b pi^t)
    if (a == 0 || b == 0 || x == 0 || y == 0 || lhs_x == 0 || 1 + ab == 0) continue;
    const int lhs = hilbert_2adic(x, y);
    const int mid = hilbert_2adic(lhs_x, -as) * hilbert_2adic(1 + ab, y);
    // 1 + ab pi^{s+t} / (1 + a pi^s) = (1 + a pi^s + ab pi^{s+t}) / (1 + a pi^s)
    const int rhs = h2(x + ab, x, -as, 1) * hilbert_2adic(1 + ab, y);
    CHECK(lhs == mid);
    CHECK(lhs == rhs);
    ++done;
  }
}
