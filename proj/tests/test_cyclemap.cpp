#include "doctest.h"

#include "cyclelab/cyclemap.hpp"
#include "cyclelab/error.hpp"

using namespace cyclelab;

namespace {

std::vector<int> alphas(const CycleImageReport& r) {
  std::vector<int> out;
  for (const auto& c : r.components) out.push_back(c.alpha.alpha);
  return out;
}

}  // namespace

TEST_CASE("abelian p-groups") {
  auto g = AbelianPGroup::from({1, 0, 2, 1});
  CHECK(g.exps == std::vector<int>{2, 1, 1});
  CHECK(g.log_order() == 4);
  CHECK(g.str() == "Z/p^2 + Z/p + Z/p");
  CHECK(AbelianPGroup::from({0, 0}).str() == "0");
}

TEST_CASE("kummer images") {
  const auto k = make_field_spec(2, 12, 1, 2, 0);  // c = 24, 36
  const int n = 2;
  auto split = kummer_image(ReductionType::split(), k, n);
  CHECK(split.first == units_support(k, n));
  CHECK(split.first.contains(0));
  CHECK(split.second.empty());
  CHECK(kummer_image(ReductionType::split(true), k, n).first.empty());

  auto ord = kummer_image(ReductionType::ordinary(), k, n);
  CHECK(!ord.first.contains(0));
  CHECK(ord.second.elems == std::vector<std::int64_t>{24, 36});

  auto ss = kummer_image(ReductionType::supersingular(Rational(8)), k, n);
  REQUIRE(ss.chain);
  CHECK(ss.first.elems.back() == 36);
  CHECK(ss.second.elems.back() == 36);

  CHECK_THROWS_AS(kummer_image(ReductionType::ordinary(), k, 3), Error);
}

TEST_CASE("worked example") {
  auto w = worked_example();
  CHECK(w.report.group.exps == std::vector<int>{2, 1, 1});
  CHECK(alphas(w.report) == std::vector<int>{0, 1, 1, 2});
  const auto& chain = *w.report.image_E.chain;
  CHECK(chain.t() == std::vector<std::int64_t>{20, 100});
  CHECK(w.report.image_E.first.elems.front() == 726);
  CHECK(w.report.image_E.second.elems.front() == 126);
  for (const auto& c : w.report.components) CHECK(c.witnesses_verified);
  bool saw = false;
  for (const auto& line : w.trace) saw = saw || line.find("(29/6 e0, 5 e0] u (41/5 e0, 9 e0]") != std::string::npos;
  CHECK(saw);
}

TEST_CASE("reduction-type table") {
  for (std::int64_t p : {2, 3, 5}) {
    for (int n : {1, 2}) {
      const std::int64_t e = minimal_supersingular_e(p, n);
      const auto spec = make_field_spec(p, static_cast<int>(e), 1, n, 0);
      const auto ss = ReductionType::supersingular(Rational(p * e, p + 1).ceil());
      const std::vector<ReductionType> easy = {ReductionType::split(), ReductionType::ordinary()};
      CAPTURE(p);
      CAPTURE(n);
      for (const auto& a : easy) {
        for (const auto& b : easy) CHECK(cycle_image(a, b, spec, n).group.exps == std::vector<int>{n});
        CHECK(cycle_image(ss, a, spec, n).group.exps == std::vector<int>{n, n});
        CHECK(cycle_image(a, ss, spec, n).group.exps == std::vector<int>{n, n});
      }
    }
  }
  CHECK(minimal_supersingular_e(2, 1) == 3);
  CHECK(minimal_supersingular_e(5, 2) == 600);  // e0 = 150, the worked example
}

TEST_CASE("symmetry") {
  const auto k = make_field_spec(2, 12, 1, 2, 0);
  const std::vector<ReductionType> all = {ReductionType::split(), ReductionType::ordinary(),
                                          ReductionType::supersingular(Rational(8)),
                                          ReductionType::supersingular(Rational(3))};
  for (const auto& a : all) {
    for (const auto& b : all) {
      CHECK(cycle_image(a, b, k, 1).group == cycle_image(b, a, k, 1).group);
    }
  }
}

TEST_CASE("p-torsion trichotomy") {
  const auto k = make_field_spec(2, 12, 1, 1, 0);
  int cases = 0;
  for (int a = 1; a <= 7; ++a) {
    for (int b = 1; b <= 7; ++b) {
      auto r = supersingular_p_case(Rational(a), Rational(b), k);
      CAPTURE(a);
      CAPTURE(b);
      CHECK(r.agree);
      ++cases;
    }
  }
  CHECK(cases >= 20);
  CHECK(supersingular_p_case(Rational(6), Rational(6), k).engine.exps.empty());
  CHECK(supersingular_p_case(Rational(5), Rational(5), k).engine.exps == std::vector<int>{1});
  CHECK(supersingular_p_case(Rational(5), Rational(7), k).engine.exps == std::vector<int>{1});
  CHECK(supersingular_p_case(Rational(2), Rational(5), k).engine.exps == std::vector<int>{1, 1});
}

TEST_CASE("mattuck telescoping") {
  for (std::int64_t p : {2, 3, 5}) {
    for (int n : {1, 2}) {
      const std::int64_t e = minimal_supersingular_e(p, n);
      const auto spec = make_field_spec(p, static_cast<int>(e), 1, n, 0);
      for (const auto& red : {ReductionType::ordinary(), ReductionType::supersingular(Rational(p * e, p + 1).ceil())}) {
        auto m = mattuck_check(red, spec, n, kummer_image(red, spec, n));
        CHECK(m.ok());
      }
      auto s = ReductionType::split();
      CHECK(!mattuck_check(s, spec, n, kummer_image(s, spec, n)).applicable);
    }
  }
  const auto k = make_field_spec(2, 12, 1, 1, 0);
  for (int a = 1; a <= 7; ++a) {
    auto red = ReductionType::supersingular(Rational(a));
    CHECK(mattuck_check(red, k, 1, kummer_image(red, k, 1)).ok());
  }
}
