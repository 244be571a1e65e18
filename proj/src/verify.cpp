#include "cyclelab/verify.hpp"

#include <bit>
#include <chrono>
#include <functional>
#include <random>
#include <sstream>

#include "cyclelab/cyclemap.hpp"
#include "cyclelab/descriptor.hpp"
#include "cyclelab/error.hpp"
#include "cyclelab/formalgroup.hpp"
#include "cyclelab/graded.hpp"
#include "cyclelab/hilbert.hpp"
#include "cyclelab/milnork.hpp"

namespace cyclelab {

namespace {

// Collects mismatches; the first few go into the detail line.
struct Tally {
  int checks = 0;
  int failures = 0;
  std::ostringstream first;

  void expect(bool ok, const std::string& what) {
    ++checks;
    if (ok) return;
    if (failures++ < 3) first << (failures > 1 ? "; " : "") << what;
  }
  std::pair<bool, std::string> result(const std::string& summary) const {
    if (failures == 0) return {true, summary + " (" + std::to_string(checks) + " checks)"};
    return {false, std::to_string(failures) + "/" + std::to_string(checks) + " failed: " + first.str()};
  }
};

std::string vec_str(const std::vector<int>& v) {
  std::string s = "[";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
  return s + "]";
}

struct Spec {
  LocalFieldSpec spec;
  int n;
};

std::vector<Spec> oracle_specs() {
  return {{fields::rational(2, 1), 1},
          {fields::cyclotomic(2, 2), 1},
          {fields::cyclotomic(2, 2), 2},
          {fields::cyclotomic(3, 1), 1}};
}

std::pair<bool, std::string> worked_example_check() {
  const std::string text = R"({"p": 5, "n": 2, "field": {"e0": 150},
    "curve_E": {"type": "supersingular", "v_a": "500"},
    "curve_E2": {"type": "supersingular", "v_a": "500"}})";
  const ExperimentDescriptor d = parse_descriptor(text);
  const CycleImageReport r = cycle_image(d.curve_E, d.curve_E2, d.spec(), d.n, d.strict);
  Tally t;
  t.expect(r.group.exps == std::vector<int>{2, 1, 1}, "group " + r.group.str());
  const int want[4] = {0, 1, 1, 2};
  for (int i = 0; i < 4; ++i) {
    t.expect(r.components[static_cast<std::size_t>(i)].alpha.alpha == want[i],
             r.components[static_cast<std::size_t>(i)].label + " alpha");
    t.expect(r.components[static_cast<std::size_t>(i)].witnesses_verified, "witnesses");
  }
  t.expect(run_cycle_image(d)["result"] == Json::array({2, 1, 1}), "report result");
  const WorkedExample w = worked_example();
  bool band = false;
  for (const auto& line : w.trace) band = band || line.find("(29/6 e0, 5 e0] u (41/5 e0, 9 e0]") != std::string::npos;
  t.expect(band, "trace bands");
  return t.result("Z/p^2 + Z/p + Z/p, alphas (0,1,1,2)");
}

std::pair<bool, std::string> reduction_table_check() {
  Tally t;
  for (std::int64_t p : {2, 3, 5}) {
    for (int n : {1, 2}) {
      const std::int64_t e = minimal_supersingular_e(p, n);
      const auto spec = make_field_spec(p, static_cast<int>(e), 1, n, 0);
      const auto ss = ReductionType::supersingular(Rational(p * e, p + 1).ceil());
      const std::vector<ReductionType> easy = {ReductionType::split(), ReductionType::ordinary()};
      const std::string where = "p=" + std::to_string(p) + " n=" + std::to_string(n) + " ";
      for (const auto& a : easy) {
        for (const auto& b : easy) {
          const auto g = cycle_image(a, b, spec, n).group.exps;
          t.expect(g == std::vector<int>{n}, where + a.str() + "x" + b.str() + " " + vec_str(g));
        }
        const auto g1 = cycle_image(ss, a, spec, n).group.exps;
        const auto g2 = cycle_image(a, ss, spec, n).group.exps;
        t.expect(g1 == std::vector<int>{n, n}, where + "ss x " + a.str() + " " + vec_str(g1));
        t.expect(g2 == std::vector<int>{n, n}, where + a.str() + " x ss " + vec_str(g2));
      }
    }
  }
  return t.result("p in {2,3,5}, n in {1,2}");
}

std::pair<bool, std::string> trichotomy_check() {
  const auto k = make_field_spec(2, 12, 1, 1, 0);
  Tally t;
  for (int a = 1; a <= 7; ++a) {
    for (int b = 1; b <= 7; ++b) {
      const auto r = supersingular_p_case(Rational(a), Rational(b), k);
      t.expect(r.agree, "v_a=" + std::to_string(a) + "," + std::to_string(b) + " engine " + vec_str(r.engine.exps) +
                            " rule " + vec_str(r.trichotomy.exps));
    }
  }
  return t.result("p=2, e=12, 49 pairs");
}

std::pair<bool, std::string> hilbert_check() {
  const auto spec = fields::rational(2, 1);
  Tally t;
  for (int s = 0; s <= 5; ++s) {
    for (int u = 0; u <= 5; ++u) {
      const int a = symbol_order(s, u, spec, 1), b = q2_symbol_exponent(s, u);
      t.expect(a == b, "(" + std::to_string(s) + "," + std::to_string(u) + ")");
    }
  }
  return t.result("Q_2, s,t <= 5");
}

std::pair<bool, std::string> units_oracle_check() {
  Tally t;
  for (const auto& [spec, n] : oracle_specs()) {
    const int top = static_cast<int>(spec.c_int(n)) + 2;
    const auto orc = unit_group_presentation(spec, n, top);
    for (int m = 0; m <= top; ++m) {
      const auto lo = units_grade_structure(spec, n, m).log_order(spec.f);
      t.expect(lo && *lo == orc.log_orders.at(static_cast<std::size_t>(m)),
               "e=" + std::to_string(spec.e) + " n=" + std::to_string(n) + " m=" + std::to_string(m));
    }
  }
  return t.result("Q_2, Q_2(i) n=1,2, Q_3(zeta_3)");
}

std::pair<bool, std::string> formal_group_check() {
  std::mt19937 rng(5);
  struct Curve {
    std::int64_t p;
    Weierstrass w;
    int height;
  };
  const std::vector<Curve> curves = {
      {3, {0, 0, 0, 1, 0}, 2},  // y^2 = x^3 + x, Q_3
      {5, {0, 0, 0, 0, 1}, 2},  // y^2 = x^3 + 1, Q_5
      {5, {0, 0, 0, 1, 0}, 1},
      {7, {0, 0, 0, 0, 1}, 1},
      {2, {0, 0, 1, 0, 0}, 2},
      {2, {1, 0, 0, 0, 1}, 1},
  };
  Tally t;
  int height_one = 0;
  for (const auto& c : curves) {
    const std::string where = "p=" + std::to_string(c.p);
    t.expect(c.w.discriminant() % c.p != 0, where + " bad reduction");
    auto ring = LocalRing::make(fields::rational(c.p, 0, 6));
    auto F = elliptic_formal_group(ring, c.w);
    t.expect(F.t_precision() == 2 * c.p * c.p + 2, where + " degree");
    t.expect(check_axioms(F, rng).ok(), where + " axioms");
    const auto mp = mult_by(F, static_cast<int>(c.p));
    t.expect(mp.height == c.height, where + " height " + std::to_string(mp.height));
    if (mp.height == 1) {
      ++height_one;
      t.expect(height_one_bounds_hold(mp), where + " lemma on [p]");
    }
  }
  // height-one isogenies on the multiplicative group and a quotient
  auto r3 = LocalRing::make(fields::cyclotomic(3, 1, 30));
  auto G = multiplicative_group(r3, 8);
  const auto three = mult_by(G, 3);
  t.expect(three.height == 1 && height_one_bounds_hold(three), "[3] on G_m");
  auto pi = r3->pi();
  const auto q = quotient_isogeny(G, {pi, pi * pi + pi.scaled(2)});
  t.expect(q.psi.height == 1 && height_one_bounds_hold(q.psi), "quotient by mu_3");
  height_one += 2;
  return t.result(std::to_string(curves.size()) + " curves, " + std::to_string(height_one) + " height-one maps");
}

std::pair<bool, std::string> kernel_check() {
  Tally t;
  for (int n : {1, 2}) {
    const auto spec = n == 1 ? fields::rational(2, 1, 10) : fields::cyclotomic(2, 2, 16);
    auto ring = LocalRing::make(spec);
    const auto phi = mult_by(multiplicative_group(ring, 4 * n + 2), 1 << n);
    std::vector<KernelSlope> want;
    for (int i = 1; i <= n; ++i) {
      const std::int64_t deg = ipow(2, i - 1);  // p^{i-1}(p-1)
      want.push_back({Rational(spec.e, deg), static_cast<int>(deg)});
    }
    t.expect(kernel_valuations(phi) == want, "[2^" + std::to_string(n) + "]");
  }
  return t.result("[2] over Q_2, [4] over Q_2(i)");
}

std::pair<bool, std::string> jump_check() {
  const auto h = herbrand_jumps(multiplication_chain(2, 1, 1), 1);
  Tally t;
  t.expect(h.lower == std::vector<Rational>{Rational(1)}, "lower jumps");
  t.expect(h.upper == std::vector<Rational>{Rational(1)}, "upper jumps");
  t.expect(h.herbrand_of_lower == h.upper, "phi(lower) = upper");
  t.expect(quadratic_lower_jump({-2, 2}) == 1, "Q_2(sqrt 3) from the different");
  return t.result("jump 1");
}

std::pair<bool, std::string> milnor_check() {
  Tally t;
  // (a)
  for (const auto& [spec, n] : oracle_specs()) {
    for (std::int64_t m = 1; m <= spec.c_int(n) + 2; ++m) {
      const auto g = milnor_graded_structure(m, n, 1, spec);
      t.expect(g.finite_field_log == units_grade_structure(spec, n, m).log_order(spec.f),
               "q=1 e=" + std::to_string(spec.e) + " m=" + std::to_string(m));
    }
  }
  // (b)
  for (std::int64_t p : {2, 3}) {
    const std::int64_t W = p * p * p;
    auto k = std::make_shared<const GaloisField>(p, 1);
    for (int r : {1, 2}) {
      for (int j = 0; j <= r; ++j) {
        std::vector<std::int64_t> a(static_cast<std::size_t>(r), -W);
        while (true) {
          for (unsigned mask = 0; mask < (1u << r); ++mask) {
            if (std::popcount(mask) != j) continue;
            std::vector<int> J;
            for (int i = 0; i < r; ++i)
              if ((mask >> i) & 1u) J.push_back(i);
            const auto w = LaurentForm::monomial(k, r, 1, a, J);
            t.expect(differential(differential(w)).is_zero(), "d^2");
            t.expect(cartier(inverse_cartier(w)) == w, "C C^-1");
            for (int s = 0; s <= 2; ++s) {
              const bool b0 = membership(w, Tower::B, s), b1 = membership(w, Tower::B, s + 1);
              const bool z0 = membership(w, Tower::Z, s), z1 = membership(w, Tower::Z, s + 1);
              t.expect((!b0 || b1) && (!b1 || z1) && (!z1 || z0), "tower inclusions");
            }
          }
          int i = 0;
          while (i < r && a[static_cast<std::size_t>(i)] == W) a[static_cast<std::size_t>(i++)] = -W;
          if (i == r) break;
          ++a[static_cast<std::size_t>(i)];
        }
      }
      for (int q = 1; q <= r + 2; ++q) {
        for (int s = 0; s <= 2; ++s) {
          t.expect(coker_theta_window(k, r, q, s, 1, W).ok(), "coker theta window");
          t.expect(coker_theta_window(k, r, q, s, 0, W).ok(), "coker theta window, lambda = 0");
          t.expect(z_quotient_window(k, r, q, s + 1, W).ok(), "Z quotient window");
        }
      }
    }
  }
  // (c)
  struct Shift {
    std::int64_t p;
    int e;
    std::int64_t lo, hi;
  };
  int pairs = 0;
  for (const auto& sh : {Shift{3, 6, 10, 16}, Shift{2, 2, 5, 6}, Shift{2, 4, 9, 12}}) {
    const auto spec = make_field_spec(sh.p, sh.e, 1, 2, 0);
    for (std::int64_t m = sh.lo; m <= sh.hi; ++m) {
      ++pairs;
      const auto [m2, n2] = lemmaA1_shift(m, 2, spec);
      for (int q = 1; q <= 3; ++q) {
        const auto a = milnor_graded_structure(m, 2, q, spec, LaurentWindow{2, 9});
        const auto b = milnor_graded_structure(m2, n2, q, spec, LaurentWindow{2, 9});
        t.expect(a.same_structure(b) && a.window_dim == b.window_dim,
                 "shift p=" + std::to_string(sh.p) + " m=" + std::to_string(m) + " q=" + std::to_string(q));
      }
    }
  }
  t.expect(pairs >= 10, "fewer than 10 shift pairs");
  return t.result(std::to_string(pairs) + " shift pairs");
}

std::pair<bool, std::string> mattuck_suite() {
  Tally t;
  for (std::int64_t p : {2, 3, 5}) {
    for (int n : {1, 2}) {
      const std::int64_t e = minimal_supersingular_e(p, n);
      const auto spec = make_field_spec(p, static_cast<int>(e), 1, n, 0);
      for (const auto& red : {ReductionType::ordinary(), ReductionType::supersingular(Rational(p * e, p + 1).ceil())}) {
        const auto m = mattuck_check(red, spec, n, kummer_image(red, spec, n));
        t.expect(m.ok(), "p=" + std::to_string(p) + " n=" + std::to_string(n) + " " + red.str());
      }
    }
  }
  const auto k = make_field_spec(2, 12, 1, 1, 0);
  for (int a = 1; a <= 7; ++a) {
    const auto red = ReductionType::supersingular(Rational(a));
    t.expect(mattuck_check(red, k, 1, kummer_image(red, k, 1)).ok(), "p=2 e=12 v_a=" + std::to_string(a));
  }
  return t.result("sum = n(ef+2)");
}

struct Entry {
  const char* name;
  double budget;
  std::function<std::pair<bool, std::string>()> fn;
};

const std::vector<Entry>& entries() {
  static const std::vector<Entry> e = {
      {"worked example p=5, n=2, e0=150", 2, worked_example_check},
      {"reduction-type table", 10, reduction_table_check},
      {"p-torsion trichotomy grid", 10, trichotomy_check},
      {"Hilbert symbol orders vs 2-adic brute force", 1, hilbert_check},
      {"unit grades vs brute-force unit groups", 30, units_oracle_check},
      {"formal groups: axioms, heights, height-one lemma", 30, formal_group_check},
      {"kernel valuations of [p^n] on G_m", 10, kernel_check},
      {"ramification jump of Q_2(sqrt 3)", 5, jump_check},
      {"Milnor K graded pieces", 30, milnor_check},
      {"Mattuck telescoping", 10, mattuck_suite},
  };
  return e;
}

}  // namespace

int acceptance_count() { return static_cast<int>(entries().size()); }

CheckResult run_check(int id) {
  if (id < 1 || id > acceptance_count()) {
    throw Error(ErrorKind::PreconditionViolated, "verify", "no check " + std::to_string(id));
  }
  const Entry& e = entries()[static_cast<std::size_t>(id - 1)];
  CheckResult r;
  r.id = id;
  r.name = e.name;
  r.budget = e.budget;
  const auto start = std::chrono::steady_clock::now();
  try {
    auto [ok, detail] = e.fn();
    r.passed = ok;
    r.detail = detail;
  } catch (const Error& ex) {
    r.detail = std::string(to_string(ex.kind())) + " [" + ex.contract() + "]: " + ex.what();
  } catch (const std::exception& ex) {
    r.detail = ex.what();
  }
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (r.passed && r.seconds > r.budget) {
    r.passed = false;
    r.detail += "; over the time budget";
  }
  return r;
}

std::vector<CheckResult> run_acceptance() {
  std::vector<CheckResult> out;
  for (int i = 1; i <= acceptance_count(); ++i) out.push_back(run_check(i));
  return out;
}

}  // namespace cyclelab
