#include "doctest.h"

#include <set>

#include "cyclelab/error.hpp"
#include "cyclelab/graded.hpp"
#include "cyclelab/milnork.hpp"

using namespace cyclelab;

namespace {

std::shared_ptr<const GaloisField> gf(std::int64_t p, int f = 1) { return std::make_shared<GaloisField>(p, f); }

// every monomial generator of degree j on the window
std::vector<LaurentForm> generators(const std::shared_ptr<const GaloisField>& k, int r, int j, std::int64_t W,
                                    std::int64_t c = 1) {
  std::vector<LaurentForm> out;
  std::vector<std::int64_t> a(static_cast<std::size_t>(r), -W);
  std::vector<std::vector<int>> subsets;
  for (unsigned m = 0; m < (1u << r); ++m) {
    std::vector<int> J;
    for (int i = 0; i < r; ++i)
      if ((m >> i) & 1u) J.push_back(i);
    if (static_cast<int>(J.size()) == j) subsets.push_back(J);
  }
  while (true) {
    for (const auto& J : subsets) out.push_back(LaurentForm::monomial(k, r, c, a, J));
    int i = 0;
    while (i < r && a[static_cast<std::size_t>(i)] == W) a[static_cast<std::size_t>(i++)] = -W;
    if (i == r) break;
    ++a[static_cast<std::size_t>(i)];
  }
  return out;
}

}  // namespace

TEST_CASE("finite fields") {
  auto k4 = gf(2, 2);
  CHECK(k4->size() == 4);
  // every nonzero element has order dividing 3, and Frobenius is bijective
  for (std::int64_t x = 1; x < 4; ++x) {
    CHECK(k4->pow(x, 3) == 1);
    CHECK(k4->frobenius_inverse(k4->frobenius(x)) == x);
  }
  auto k9 = gf(3, 2);
  std::set<std::int64_t> image;
  for (std::int64_t x = 0; x < 9; ++x) image.insert(k9->frobenius(x));
  CHECK(image.size() == 9);
  CHECK(k9->frobenius(2) == 2);  // prime field fixed
  CHECK_THROWS_AS(GaloisField(4, 1), Error);
}

TEST_CASE("differential and Cartier on monomials") {
  auto k = gf(2);
  auto w = LaurentForm::monomial(k, 1, 1, {3}, {});
  CHECK(differential(w) == LaurentForm::monomial(k, 1, 1, {3}, {0}));
  CHECK(differential(LaurentForm::monomial(k, 1, 1, {3}, {0})).is_zero());
  CHECK(differential(LaurentForm::monomial(k, 2, 1, {2, 0}, {})).is_zero());

  auto k3 = gf(3);
  auto dl = LaurentForm::monomial(k3, 1, 1, {2}, {0});
  CHECK(inverse_cartier(dl) == LaurentForm::monomial(k3, 1, 1, {6}, {0}));
  CHECK(cartier(LaurentForm::monomial(k3, 1, 1, {6}, {0})) == dl);
  CHECK(cartier(LaurentForm::monomial(k3, 1, 1, {2}, {0})).is_zero());
  CHECK_THROWS_AS(cartier(LaurentForm::monomial(k3, 1, 1, {2}, {})), Error);

  // coefficient Frobenius
  auto k9 = gf(3, 2);
  auto c = LaurentForm::monomial(k9, 1, 4, {1}, {0});
  CHECK(inverse_cartier(c).terms().begin()->second == k9->frobenius(4));

  // sign of the wedge: d(t1 dlog t2) = dlog t1 ^ dlog t2 ; d(t2 dlog t1) = -dlog t1 ^ dlog t2
  auto x = differential(LaurentForm::monomial(k3, 2, 1, {1, 0}, {1}));
  auto y = differential(LaurentForm::monomial(k3, 2, 1, {0, 1}, {0}));
  CHECK(x == LaurentForm::monomial(k3, 2, 1, {1, 0}, {0, 1}));
  CHECK(y == LaurentForm::monomial(k3, 2, 1, {0, 1}, {1, 0}));
}

TEST_CASE("B and Z towers, one variable") {
  auto k = gf(2);
  CHECK(membership(LaurentForm::monomial(k, 1, 1, {3}, {0}), Tower::B, 1));
  for (int s = 0; s <= 4; ++s) CHECK(!membership(LaurentForm::monomial(k, 1, 1, {0}, {0}), Tower::B, s));
  for (std::int64_t a = -20; a <= 20; ++a) {
    for (int s = 0; s <= 4; ++s) {
      const bool expect = a % (std::int64_t{1} << s) != 0;
      CHECK(membership(LaurentForm::monomial(k, 1, 1, {a}, {0}), Tower::B, s) == expect);
      CHECK(membership(LaurentForm::monomial(k, 1, 1, {a}, {0}), Tower::Z, s));  // top degree
    }
  }
}

TEST_CASE("operator identities on windows") {
  for (std::int64_t p : {2, 3}) {
    for (int f : {1, 2}) {
      auto k = gf(p, f);
      const std::int64_t W = p * p * p;
      for (int r : {1, 2}) {
        for (int j = 0; j <= r; ++j) {
          for (const auto& w : generators(k, r, j, W, f == 2 ? 2 : 1)) {
            CHECK(differential(differential(w)).is_zero());
            CHECK(cartier(inverse_cartier(w)) == w);
            CHECK(!inverse_cartier(w).is_zero());
            for (int s = 0; s <= 2; ++s) {
              const bool b0 = membership(w, Tower::B, s), b1 = membership(w, Tower::B, s + 1);
              const bool z0 = membership(w, Tower::Z, s), z1 = membership(w, Tower::Z, s + 1);
              CHECK((!b0 || b1));
              CHECK((!b1 || z1));
              CHECK((!z1 || z0));
            }
          }
        }
      }
    }
  }
}

TEST_CASE("line dimensions two ways") {
  for (std::int64_t p : {2, 3}) {
    auto k = gf(p);
    for (int r : {1, 2}) {
      for (int j = 0; j <= r; ++j) {
        for (std::int64_t a0 = -9; a0 <= 9; ++a0) {
          for (std::int64_t a1 = -3; a1 <= 3; ++a1) {
            std::vector<std::int64_t> a = r == 1 ? std::vector<std::int64_t>{a0} : std::vector<std::int64_t>{a0, a1};
            for (int s = 0; s <= 3; ++s) {
              CHECK(line_dim_enumerated(k, a, j, Tower::B, s) == line_dim_closed_form(p, a, j, Tower::B, s));
              CHECK(line_dim_enumerated(k, a, j, Tower::Z, s) == line_dim_closed_form(p, a, j, Tower::Z, s));
            }
          }
        }
      }
    }
  }
}

TEST_CASE("theta") {
  const auto spec = make_field_spec(3, 6, 1, 2, 0);  // c = 9, 15
  auto k = gf(3);
  // q = 2, s = 0: theta(t^a) = (d t^a, (m - ie) t^a)
  auto w = LaurentForm::monomial(k, 1, 1, {2}, {});
  auto [first, second] = theta_map(w, 10, 1, 0, 2, spec);
  CHECK(first == differential(w));
  CHECK(second == w.scaled(k->from_int(4)));
  CHECK_THROWS_AS(theta_map(w, 9, 1, 0, 2, spec), Error);   // m = c_1
  CHECK_THROWS_AS(theta_map(w, 12, 1, 1, 2, spec), Error);  // n - i = 1 = s
  CHECK_THROWS_AS(theta_map(w, 10, 1, 1, 2, spec), Error);  // s != v_p(m)
  // s = 1, i = 0: m = 3, lambda = 1
  auto [f2, s2] = theta_map(w, 3, 0, 1, 2, spec);
  CHECK(f2 == inverse_cartier(differential(w)));
  CHECK(s2 == inverse_cartier(w));
}

TEST_CASE("graded structure, finite residue field, q = 1") {
  const std::vector<std::pair<LocalFieldSpec, int>> specs = {{fields::rational(2, 1), 1},
                                                             {fields::cyclotomic(2, 2), 1},
                                                             {fields::cyclotomic(2, 2), 2},
                                                             {fields::cyclotomic(3, 1), 1}};
  for (const auto& [spec, n] : specs) {
    for (std::int64_t m = 1; m <= spec.c_int(n) + 2; ++m) {
      CAPTURE(m);
      auto g = milnor_graded_structure(m, n, 1, spec);
      CHECK(g.finite_field_log == units_grade_structure(spec, n, m).log_order(spec.f));
    }
  }
  const auto k = make_field_spec(2, 12, 1, 2, 0);
  CHECK(milnor_graded_structure(k.c_int(1), 2, 1, k).finite_field_log == 1);
  CHECK(milnor_graded_structure(k.c_int(2) + 1, 2, 3, k).branch == MilnorGraded::Branch::Zero);
}

TEST_CASE("shift lemma") {
  const auto spec = make_field_spec(3, 6, 1, 2, 0);
  CHECK(lemmaA1_shift(15, 2, spec) == std::pair<std::int64_t, int>{9, 1});
  CHECK_THROWS_AS(lemmaA1_shift(9, 2, spec), Error);
  CHECK_THROWS_AS(lemmaA1_shift(12, 1, spec), Error);
  for (std::int64_t m = 10; m <= 16; ++m) {
    auto [m2, n2] = lemmaA1_shift(m, 2, spec);
    for (int q = 1; q <= 3; ++q) {
      auto a = milnor_graded_structure(m, 2, q, spec, LaurentWindow{2, 9});
      auto b = milnor_graded_structure(m2, n2, q, spec, LaurentWindow{2, 9});
      CAPTURE(m);
      CHECK(a.same_structure(b));
      CHECK(a.window_dim == b.window_dim);
    }
  }
}

TEST_CASE("branch windows two ways") {
  for (std::int64_t p : {2, 3}) {
    auto k = gf(p);
    const std::int64_t W = p * p * p;
    for (int r : {1, 2}) {
      for (int q = 1; q <= r + 2; ++q) {
        for (int s = 0; s <= 2; ++s) {
          auto c = coker_theta_window(k, r, q, s, 1, W);
          CHECK(c.ok());
          auto c0 = coker_theta_window(k, r, q, s, 0, W);
          CHECK(c0.ok());
          auto z = z_quotient_window(k, r, q, s + 1, W);
          CHECK(z.ok());
        }
      }
    }
  }
}
