#include "doctest.h"

#include "cyclelab/error.hpp"
#include "cyclelab/graded.hpp"

using namespace cyclelab;

namespace {

std::vector<int> predicted(const LocalFieldSpec& spec, int n, int top) {
  std::vector<int> out;
  for (int m = 0; m <= top; ++m) out.push_back(*units_grade_structure(spec, n, m).log_order(spec.f));
  return out;
}

}  // namespace

TEST_CASE("units grades match the oracle") {
  struct Case {
    LocalFieldSpec spec;
    int n;
  };
  std::vector<Case> cases = {
      {fields::rational(2, 1), 1},
      {fields::cyclotomic(2, 2), 1},
      {fields::cyclotomic(2, 2), 2},
      {fields::cyclotomic(3, 1), 1},
  };
  for (const auto& c : cases) {
    CAPTURE(c.spec.e);
    CAPTURE(c.n);
    const int top = static_cast<int>(c.spec.c_int(c.n)) + 2;
    auto oracle = unit_group_presentation(c.spec, c.n, top);
    CHECK(oracle.log_orders == predicted(c.spec, c.n, top));
    int total = 0;
    for (int x : oracle.log_orders) total += x;
    CHECK(total == c.n * (c.spec.e * c.spec.f + 2));
    CHECK(oracle.log_total == total);
  }
}

TEST_CASE("graded pieces of chains") {
  auto q2i = fields::cyclotomic(2, 2);
  CHECK(units_support(make_field_spec(2, 2, 1, 1, 0), 1).elems == std::vector<std::int64_t>{0, 1, 3, 4});
  CHECK(units_grade_structure(q2i, 1, 4) == GradedPiece::cyclic_p());
  CHECK(units_grade_structure(q2i, 1, 4, FieldClass::SeparablyClosed).is_zero());
  CHECK(units_grade_structure(q2i, 1, 4, FieldClass::Generic).kind == GradedPiece::Kind::CartierCokernel);
  CHECK(units_grade_structure(q2i, 1, 0) == GradedPiece::full_cyclic(1));
  auto ch = chain_from_t(5, 30, {4, 24});
  CHECK(ch.c_phi_int(1) == 5);
  CHECK(ch.c_phi_int(2) == 34);
  CHECK(gr_phi_structure(ch, Rational(7)) == GradedPiece::residue_line());
  CHECK(gr_phi_structure(ch, Rational(10)).is_zero());
  CHECK(gr_phi_structure(ch, Rational(35)).is_zero());
  CHECK(gr_phi_structure(ch, Rational(7, 2)).is_zero());
}

TEST_CASE("step maps of height-one isogenies") {
  auto q2 = LocalRing::make(fields::rational(2, 1, 12));
  auto two = mult_by(multiplicative_group(q2, 6), 2);
  auto at = gr_step_map(two, 1);
  CHECK(at.which == StepMap::Case::AtBreak);
  CHECK(at.kernel_log == 1);
  CHECK(at.target == 2);
  auto above = gr_step_map(two, 2);
  CHECK(above.which == StepMap::Case::AboveBreak);
  CHECK(above.target == 3);
  CHECK(above.bijective);
  // t = 2(p-1) over Q_2(i): m = 1 sits below the break
  auto q2i = LocalRing::make(fields::cyclotomic(2, 2, 16));
  auto sq = mult_by(multiplicative_group(q2i, 8), 2);
  CHECK(sq.t() == 2);
  auto below = gr_step_map(sq, 1);
  CHECK(below.which == StepMap::Case::BelowBreak);
  CHECK(below.target == 2);
  CHECK(below.map == "x -> a_p x^p");
  auto four = mult_by(multiplicative_group(q2i, 8), 4);
  CHECK_THROWS_AS(gr_step_map(four, 1), Error);
}

TEST_CASE("kummer shifts and supports") {
  auto spec = make_field_spec(5, 600, 1, 2, 0);
  auto chain = canonical_chain(Rational(500), 600, 2, 5);
  auto S = image_support(chain, spec, 2);
  auto iv = S.intervals();
  CHECK(S.elems.front() == 726);
  CHECK(S.elems.back() == 1350);
  CHECK(S.contains(750));
  CHECK(!S.contains(725));
  CHECK(!S.contains(1230));
  CHECK(S.contains(1231));
  auto Sh = image_support(chain.dual(), spec, 2);
  CHECK(Sh.elems.front() == 126);
  CHECK(Sh.contains(751));
  CHECK(kummer_grade_shift(multiplication_chain(5, 600, 2), 17, spec, 2) == 17);
  CHECK_THROWS_AS(kummer_grade_shift(chain, 146, spec, 2), Error);
  // n = 1 shift is p e0 - p t/(p-1) + m
  auto s1 = make_field_spec(3, 6, 1, 1, 0);
  auto c1 = chain_from_t(3, 6, {2});
  CHECK(kummer_grade_shift(c1, 2, s1, 1) == 3 * 3 - 3 * 1 + 2);
}

TEST_CASE("herbrand jumps") {
  auto c = multiplication_chain(2, 1, 1);
  auto j = herbrand_jumps(c, 1);
  CHECK(j.upper == std::vector<Rational>{Rational(1)});
  CHECK(j.herbrand_of_lower == j.upper);
  // Q_2(sqrt 3) = Q_2(pi), pi^2 + 2 pi - 2 = 0: lower jump 1
  CHECK(quadratic_lower_jump({-2, 2}) == 1);
  CHECK_THROWS_AS(herbrand_jumps(c, 2), Error);
  auto ch = chain_from_t(5, 600, {20, 100});
  auto jj = herbrand_jumps(ch, 3);
  CHECK(jj.herbrand_of_lower == jj.upper);
  CHECK(jj.upper[1] == Rational(142));
}
