#include "cyclelab/cyclemap.hpp"

#include <algorithm>
#include <sstream>

#include "cyclelab/error.hpp"

namespace cyclelab {

ReductionType ReductionType::split(bool tate_trivial) {
  ReductionType r;
  r.kind = Kind::Split;
  r.tate_trivial = tate_trivial;
  return r;
}

ReductionType ReductionType::ordinary() { return {}; }

ReductionType ReductionType::supersingular(const Rational& v_a) {
  ReductionType r;
  r.kind = Kind::Supersingular;
  r.v_a = v_a;
  return r;
}

ReductionType ReductionType::supersingular_chain(std::vector<std::int64_t> t) {
  ReductionType r;
  r.kind = Kind::Supersingular;
  r.t = std::move(t);
  return r;
}

IsogenyChain ReductionType::chain(const LocalFieldSpec& spec, int n, bool strict) const {
  const std::string contract = "ReductionType::chain";
  if (kind != Kind::Supersingular) throw Error(ErrorKind::PreconditionViolated, contract, "only supersingular curves carry a chain");
  IsogenyChain c;
  if (t) {
    c = chain_from_t(spec.p, spec.e, *t, strict);
  } else if (v_a) {
    c = canonical_chain(*v_a, spec.e, n, spec.p, strict);
  } else {
    throw Error(ErrorKind::PreconditionViolated, contract, "supersingular curve needs v_a or t");
  }
  if (c.n() != n) {
    throw Error(ErrorKind::PreconditionViolated, contract,
                "chain has " + std::to_string(c.n()) + " steps, expected n = " + std::to_string(n));
  }
  return c;
}

std::string to_string(ReductionType::Kind k) {
  switch (k) {
    case ReductionType::Kind::Split:
      return "split";
    case ReductionType::Kind::Ordinary:
      return "ordinary";
    case ReductionType::Kind::Supersingular:
      return "supersingular";
  }
  return "?";
}

std::string ReductionType::str() const {
  std::ostringstream os;
  os << to_string(kind);
  if (kind == Kind::Split && tate_trivial) os << "(tate-trivial)";
  if (v_a) os << "(v_a=" << v_a->str() << ")";
  if (t) {
    os << "(t=";
    for (std::size_t i = 0; i < t->size(); ++i) os << (i ? "," : "") << (*t)[i];
    os << ")";
  }
  return os.str();
}

namespace {

void fill_chain_side(const IsogenyChain& chain, const LocalFieldSpec& spec, int n, IndexSet& set,
                     std::map<std::int64_t, GradedPiece>& pieces, const std::string& name) {
  set = image_support(chain, spec, n);
  set.provenance = name + ": " + set.provenance;
  for (std::int64_t m = 1; m <= chain.c_phi_int(n); ++m) {
    GradedPiece g = gr_phi_structure(chain, Rational(m));
    if (!g.is_zero()) pieces[kummer_grade_shift(chain, m, spec, n)] = g;
  }
}

}  // namespace

KummerImageGrading kummer_image(const ReductionType& red, const LocalFieldSpec& spec, int n, bool strict) {
  if (n < 1 || spec.zeta_level < n) {
    throw Error(ErrorKind::PreconditionViolated, "kummer_image", "need 1 <= n <= zeta_level");
  }
  KummerImageGrading out;
  const std::int64_t cn = spec.c_int(n);
  switch (red.kind) {
    case ReductionType::Kind::Split: {
      out.second = IndexSet({}, cn, "1");
      if (red.tate_trivial) {
        out.first = IndexSet({}, cn, "1 (Tate parameter is a p^n-th power on E[phi])");
        break;
      }
      std::vector<std::int64_t> s;
      for (std::int64_t m = 0; m <= cn; ++m) {
        GradedPiece g = units_grade_structure(spec, n, m);
        if (g.is_zero()) continue;
        s.push_back(m);
        out.first_pieces[m] = g;
      }
      out.first = IndexSet(std::move(s), cn, "M = gr(p^n)");
      break;
    }
    case ReductionType::Kind::Ordinary: {
      std::vector<std::int64_t> s;
      for (std::int64_t m = 1; m <= cn; ++m) {
        GradedPiece g = units_grade_structure(spec, n, m);
        if (g.is_zero()) continue;
        s.push_back(m);
        out.first_pieces[m] = g;
      }
      out.first = IndexSet(std::move(s), cn, "O = gr(p^n) in degrees >= 1");
      std::vector<std::int64_t> c;
      for (int i = 1; i <= n; ++i) {
        c.push_back(spec.c_int(i));
        out.second_pieces[spec.c_int(i)] = GradedPiece::cyclic_p();
      }
      out.second = IndexSet(std::move(c), cn, "O_ur = {c_i}");
      break;
    }
    case ReductionType::Kind::Supersingular: {
      IsogenyChain chain = red.chain(spec, n, strict);
      fill_chain_side(chain, spec, n, out.first, out.first_pieces, "S");
      fill_chain_side(chain.dual(), spec, n, out.second, out.second_pieces, "S^");
      out.chain = std::move(chain);
      break;
    }
  }
  return out;
}

AbelianPGroup AbelianPGroup::from(std::vector<int> e) {
  AbelianPGroup g;
  for (int x : e) {
    if (x < 0) throw Error(ErrorKind::PreconditionViolated, "AbelianPGroup", "negative exponent");
    if (x > 0) g.exps.push_back(x);
  }
  std::sort(g.exps.begin(), g.exps.end(), std::greater<>());
  return g;
}

int AbelianPGroup::log_order() const {
  int s = 0;
  for (int x : exps) s += x;
  return s;
}

std::string AbelianPGroup::str() const {
  if (exps.empty()) return "0";
  std::ostringstream os;
  for (std::size_t i = 0; i < exps.size(); ++i) {
    os << (i ? " + " : "") << "Z/p";
    if (exps[i] > 1) os << "^" << exps[i];
  }
  return os.str();
}

namespace {

std::pair<std::string, std::string> side_names(const ReductionType& r, bool primed) {
  const std::string q = primed ? "'" : "";
  switch (r.kind) {
    case ReductionType::Kind::Split:
      return {"M" + q, "1" + q};
    case ReductionType::Kind::Ordinary:
      return {"O" + q, "O_ur" + q};
    case ReductionType::Kind::Supersingular:
      return {"S" + q, "S^" + q};
  }
  return {"?", "?"};
}

std::string proof_case(ReductionType::Kind a, ReductionType::Kind b) {
  using K = ReductionType::Kind;
  auto has = [&](K x, K y) { return (a == x && b == y) || (a == y && b == x); };
  if (has(K::Split, K::Split)) return "split x split";
  if (has(K::Ordinary, K::Ordinary)) return "ordinary x ordinary";
  if (has(K::Ordinary, K::Split)) return "ordinary x split";
  if (has(K::Supersingular, K::Split)) return "supersingular x split";
  if (has(K::Supersingular, K::Ordinary)) return "supersingular x ordinary";
  return "supersingular x supersingular";
}

bool verify_witnesses(const AlphaResult& r, const IndexSet& A, const IndexSet& B, const LocalFieldSpec& spec,
                      int n) {
  for (std::size_t i = 0; i < r.r_witness.size(); ++i) {
    const auto& w = r.r_witness[i];
    if (!w) continue;
    if (!A.contains(w->first) || !B.contains(w->second)) return false;
    if (pairing_level(w->first, w->second, spec.p) != spec.c_int(static_cast<int>(i) + 1)) return false;
  }
  if (r.max_witness) {
    const auto& w = *r.max_witness;
    if (!A.contains(w.first) || !B.contains(w.second)) return false;
    if (symbol_order(w.first, w.second, spec, n) != r.alpha_max) return false;
  }
  return true;
}

}  // namespace

CycleImageReport cycle_image(const ReductionType& E, const ReductionType& E2, const LocalFieldSpec& spec, int n,
                             bool strict) {
  CycleImageReport rep;
  rep.image_E = kummer_image(E, spec, n, strict);
  rep.image_E2 = kummer_image(E2, spec, n, strict);
  rep.proof_case = proof_case(E.kind, E2.kind);
  for (const auto* img : {&rep.image_E, &rep.image_E2}) {
    if (img->chain) {
      for (const auto& w : img->chain->warnings) rep.warnings.push_back(w);
    }
  }

  const auto [a1, a2] = side_names(E, false);
  const auto [b1, b2] = side_names(E2, true);
  const IndexSet* lhs[2] = {&rep.image_E.first, &rep.image_E.second};
  const IndexSet* rhs[2] = {&rep.image_E2.first, &rep.image_E2.second};
  const std::string ln[2] = {a1, a2};
  const std::string rn[2] = {b1, b2};
  std::vector<int> alphas;
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      ComponentReport& c = rep.components[static_cast<std::size_t>(2 * i + j)];
      c.label = ln[i] + " x " + rn[j];
      c.alpha = alpha_count(*lhs[i], *rhs[j], spec, n);
      c.witnesses_verified = verify_witnesses(c.alpha, *lhs[i], *rhs[j], spec, n);
      alphas.push_back(c.alpha.alpha);
    }
  }

  rep.cyclic = E.kind != ReductionType::Kind::Supersingular && E2.kind != ReductionType::Kind::Supersingular;
  if (rep.cyclic) {
    const int top = *std::max_element(alphas.begin(), alphas.end());
    rep.group = AbelianPGroup::from({top});
    const auto nonzero = std::count_if(alphas.begin(), alphas.end(), [](int a) { return a > 0; });
    if (nonzero > 1) {
      rep.warnings.push_back("several nonzero components with no supersingular curve; combined as one cyclic summand");
    }
  } else {
    rep.group = AbelianPGroup::from(alphas);
  }
  return rep;
}

PCaseResult supersingular_p_case(const Rational& v_a, const Rational& v_a2, const LocalFieldSpec& spec) {
  PCaseResult out;
  out.report = cycle_image(ReductionType::supersingular(v_a), ReductionType::supersingular(v_a2), spec, 1);
  out.engine = out.report.group;

  const Rational P(spec.p);
  const Rational cap = P * Rational(spec.e) / (P + 1);
  auto eff = [&](const Rational& v) { return (v < cap ? v : cap) / (P - 1); };
  out.a = eff(v_a);
  out.a2 = eff(v_a2);
  const Rational e0 = spec.e0();
  if (out.a == out.a2) {
    if (out.a + out.a2 == e0) {
      out.branch = "a = a2, a + a2 = e0";
      out.trichotomy = AbelianPGroup::from({});
    } else {
      out.branch = "a = a2, a + a2 != e0";
      out.trichotomy = AbelianPGroup::from({1});
    }
  } else if (out.a + out.a2 == e0) {
    out.branch = "a != a2, a + a2 = e0";
    out.trichotomy = AbelianPGroup::from({1});
  } else {
    out.branch = "a != a2, a + a2 != e0";
    out.trichotomy = AbelianPGroup::from({1, 1});
  }
  out.agree = out.engine == out.trichotomy;
  if (!out.agree) {
    out.report.warnings.push_back("engine " + out.engine.str() + " differs from three-way rule " + out.branch + " " +
                                  out.trichotomy.str());
  }
  return out;
}

WorkedExample worked_example() {
  WorkedExample w;
  w.spec = make_field_spec(5, 600, 1, 2, 0);
  w.n = 2;
  w.v_a = Rational(5 * 600, 6);
  const auto red = ReductionType::supersingular(w.v_a);
  w.report = cycle_image(red, red, w.spec, w.n);

  const Rational e0 = w.spec.e0();
  const IsogenyChain& chain = *w.report.image_E.chain;
  for (const auto& line : chain.log) w.trace.push_back(line);
  auto bands = [&](const IsogenyChain& c, const std::string& name) {
    std::ostringstream os;
    os << name << " = ";
    for (int i = 1; i <= w.n; ++i) {
      const Rational lo = w.spec.c(i) - c.c_phi(i) + c.c_phi(i - 1);
      os << (i > 1 ? " u " : "") << "(" << (lo / e0).str() << " e0, " << (w.spec.c(i) / e0).str() << " e0]";
    }
    os << ", p-divisible indices removed";
    w.trace.push_back(os.str());
  };
  bands(chain, "S");
  bands(chain.dual(), "S^");
  for (const auto& c : w.report.components) {
    std::ostringstream os;
    os << c.label << ": alpha = " << c.alpha.alpha;
    for (std::size_t i = 0; i < c.alpha.r_witness.size(); ++i) {
      const auto& r = c.alpha.r_witness[i];
      os << "; R_" << i + 1 << " ";
      if (r) {
        os << "meets at (" << r->first << "," << r->second << ")";
      } else {
        os << "empty";
      }
    }
    w.trace.push_back(os.str());
  }
  return w;
}

MattuckResult mattuck_check(const ReductionType& red, const LocalFieldSpec& spec, int n,
                            const KummerImageGrading& image) {
  MattuckResult r;
  r.expected = static_cast<std::int64_t>(n) * (static_cast<std::int64_t>(spec.e) * spec.f + 2);
  if (red.kind == ReductionType::Kind::Split) return r;
  r.applicable = true;
  auto sum = [&](const std::map<std::int64_t, GradedPiece>& pieces) {
    std::int64_t s = 0;
    for (const auto& [m, g] : pieces) {
      auto o = g.log_order(spec.f);
      if (!o) throw Error(ErrorKind::PreconditionViolated, "mattuck_check", "piece order depends on the residue field");
      s += *o;
    }
    return s;
  };
  r.first_sum = sum(image.first_pieces);
  r.second_sum = sum(image.second_pieces);
  return r;
}

std::int64_t minimal_supersingular_e(std::int64_t p, int n) {
  const std::int64_t step = ipow(p, n - 1) * (p - 1);
  for (std::int64_t e = step; e <= 1000000; e += step) {
    try {
      make_field_spec(p, static_cast<int>(e), 1, n, 0);
      canonical_chain(Rational(p * e, p + 1).ceil(), e, n, p, true);
      return e;
    } catch (const Error&) {
    }
  }
  throw Error(ErrorKind::OutOfRange, "minimal_supersingular_e", "no valid e below 10^6");
}

}  // namespace cyclelab
