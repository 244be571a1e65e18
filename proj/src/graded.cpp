#include "cyclelab/graded.hpp"

#include <algorithm>
#include <sstream>

#include "cyclelab/error.hpp"

namespace cyclelab {

std::string to_string(FieldClass fc) {
  switch (fc) {
    case FieldClass::QuasiFinite:
      return "quasi-finite";
    case FieldClass::SeparablyClosed:
      return "separably-closed";
    case FieldClass::Generic:
      return "generic";
  }
  return "?";
}

GradedPiece GradedPiece::cartier_cokernel(FieldClass fc) {
  switch (fc) {
    case FieldClass::QuasiFinite:
      return cyclic_p();
    case FieldClass::SeparablyClosed:
      return zero();
    case FieldClass::Generic:
      break;
  }
  return of(Kind::CartierCokernel);
}

std::optional<int> GradedPiece::log_order(int f) const {
  switch (kind) {
    case Kind::Zero:
      return 0;
    case Kind::ResidueLine:
      return f;
    case Kind::CyclicP:
      return 1;
    case Kind::FullCyclic:
      return n;
    case Kind::CartierCokernel:
      return std::nullopt;
  }
  return std::nullopt;
}

std::string GradedPiece::str() const {
  switch (kind) {
    case Kind::Zero:
      return "0";
    case Kind::ResidueLine:
      return "k";
    case Kind::CyclicP:
      return "Z/p";
    case Kind::FullCyclic:
      return "Z/p^" + std::to_string(n);
    case Kind::CartierCokernel:
      return "k/(a+a_p C^-1)k";
  }
  return "?";
}

IndexSet::IndexSet(std::vector<std::int64_t> e, std::int64_t b, std::string prov)
    : elems(std::move(e)), bound(b), provenance(std::move(prov)) {
  std::sort(elems.begin(), elems.end());
  elems.erase(std::unique(elems.begin(), elems.end()), elems.end());
}

bool IndexSet::contains(std::int64_t m) const { return std::binary_search(elems.begin(), elems.end(), m); }

std::vector<std::pair<std::int64_t, std::int64_t>> IndexSet::intervals() const {
  std::vector<std::pair<std::int64_t, std::int64_t>> out;
  for (auto x : elems) {
    if (!out.empty() && out.back().second + 1 == x) {
      out.back().second = x;
    } else {
      out.emplace_back(x, x);
    }
  }
  return out;
}

std::string IndexSet::str() const {
  std::ostringstream os;
  os << "{";
  bool first = true;
  for (auto [lo, hi] : intervals()) {
    if (!first) os << ", ";
    first = false;
    if (lo == hi) {
      os << lo;
    } else {
      os << lo << ".." << hi;
    }
  }
  os << "}";
  return os.str();
}

StepMap gr_step_map(const IsogenyData& phi, std::int64_t m) {
  const std::string contract = "gr_step_map";
  if (phi.height != 1) {
    throw Error(ErrorKind::NotHeightOne, contract, "isogeny has height " + std::to_string(phi.height));
  }
  if (m < 1) throw Error(ErrorKind::PreconditionViolated, contract, "m must be >= 1");
  const std::int64_t p = phi.series.ring()->p();
  const std::int64_t t = phi.t();
  StepMap out;
  out.break_point = Rational(t, p - 1);
  out.source = m;
  const Rational M(m);
  if (M < out.break_point) {
    out.which = StepMap::Case::BelowBreak;
    out.target = m * p;
    out.map = "x -> a_p x^p";
    out.bijective = true;
  } else if (M == out.break_point) {
    out.which = StepMap::Case::AtBreak;
    out.target = t + out.break_point.num();
    out.map = "x -> a x + a_p x^p";
    // on F_p, a x + b x^p = (a + b) x, so the kernel is everything or nothing
    const bool degenerate = ((phi.a_residue + phi.a_p_residue) % p + p) % p == 0;
    out.kernel_log = degenerate ? 1 : 0;
    out.bijective = !degenerate;
  } else {
    out.which = StepMap::Case::AboveBreak;
    out.target = m + t;
    out.map = "x -> a x";
    out.bijective = true;
  }
  return out;
}

GradedPiece gr_phi_structure(const IsogenyChain& chain, const Rational& m, FieldClass fc) {
  if (!m.is_integer() || m < Rational(1)) return GradedPiece::zero();
  const int n = chain.n();
  const std::int64_t p = chain.p();
  for (int i = 0; i < n; ++i) {
    const Rational lo = chain.c_phi(i);
    const Rational hi = chain.c_phi(i + 1);
    if (lo < m && m < hi) {
      return m.num() % ipow(p, n - i) == 0 ? GradedPiece::zero() : GradedPiece::residue_line();
    }
    if (m == hi) return GradedPiece::cartier_cokernel(fc);
  }
  return GradedPiece::zero();
}

GradedPiece units_grade_structure(const LocalFieldSpec& spec, int n, std::int64_t m, FieldClass fc) {
  if (spec.zeta_level < n) {
    throw Error(ErrorKind::PreconditionViolated, "units_grade_structure", "zeta_level must be >= n");
  }
  if (m == 0) return GradedPiece::full_cyclic(n);
  return gr_phi_structure(multiplication_chain(spec.p, spec.e, n), Rational(m), fc);
}

std::int64_t kummer_grade_shift(const IsogenyChain& chain, std::int64_t m, const LocalFieldSpec& spec, int n) {
  const std::string contract = "kummer_grade_shift";
  if (chain.n() != n) throw Error(ErrorKind::PreconditionViolated, contract, "chain height differs from n");
  for (int i = 1; i <= n; ++i) {
    const std::int64_t lo = chain.c_phi_int(i - 1), hi = chain.c_phi_int(i);
    if (lo < m && m <= hi) return spec.c_int(i) - hi + m;
  }
  throw Error(ErrorKind::OutOfRange, contract,
              "m = " + std::to_string(m) + " outside (0, c_n(phi)] = (0, " + std::to_string(chain.c_phi_int(n)) + "]");
}

IndexSet units_support(const LocalFieldSpec& spec, int n) {
  std::vector<std::int64_t> s;
  const std::int64_t cn = spec.c_int(n);
  for (std::int64_t m = 0; m <= cn; ++m) {
    if (!units_grade_structure(spec, n, m).is_zero()) s.push_back(m);
  }
  return IndexSet(std::move(s), cn, "gr(p^n)");
}

IndexSet image_support(const IsogenyChain& chain, const LocalFieldSpec& spec, int n, FieldClass fc) {
  std::vector<std::int64_t> s;
  const std::int64_t top = chain.c_phi_int(n);
  for (std::int64_t m = 1; m <= top; ++m) {
    if (gr_phi_structure(chain, Rational(m), fc).is_zero()) continue;
    s.push_back(kummer_grade_shift(chain, m, spec, n));
  }
  std::ostringstream prov;
  prov << "image of gr(phi), t = (";
  for (int i = 1; i <= chain.n(); ++i) prov << (i > 1 ? "," : "") << chain.t(i);
  prov << ")";
  return IndexSet(std::move(s), spec.c_int(n), prov.str());
}

Rational herbrand_phi(const std::vector<Rational>& lower_jumps, std::int64_t p, const Rational& x) {
  // integral of dt / (G_0 : G_t); the index gains a factor p past each jump
  Rational acc(0);
  Rational prev(0);
  std::int64_t index = 1;
  for (const auto& l : lower_jumps) {
    if (!(prev < x)) break;
    const Rational upto = x < l ? x : l;
    if (prev < upto) acc += (upto - prev) / Rational(index);
    prev = l;
    index *= p;
  }
  if (prev < x) acc += (x - prev) / Rational(index);
  return acc;
}

HerbrandJumps herbrand_jumps(const IsogenyChain& chain, std::int64_t m) {
  const std::string contract = "herbrand_jumps";
  const std::int64_t p = chain.p();
  if (m < 1 || !(Rational(m) < chain.c_phi(1)) || m % p == 0) {
    throw Error(ErrorKind::PreconditionViolated, contract,
                "need 1 <= m < c_1(phi) = " + chain.c_phi(1).str() + " and p not dividing m");
  }
  HerbrandJumps out;
  for (int i = 1; i <= chain.n(); ++i) {
    out.upper.push_back(chain.c_phi(i) - Rational(m));
    out.lower.push_back(Rational(ipow(p, i)) * Rational(chain.t(i), p - 1) - Rational(m));
  }
  for (const auto& l : out.lower) out.herbrand_of_lower.push_back(herbrand_phi(out.lower, p, l));
  return out;
}

std::int64_t quadratic_lower_jump(const std::vector<std::int64_t>& eisenstein, int precision) {
  if (eisenstein.size() != 2) throw Error(ErrorKind::PreconditionViolated, "quadratic_lower_jump", "degree must be 2");
  auto ring = LocalRing::make(make_field_spec(2, 2, 1, 0, precision, eisenstein));
  // g(x) = x^2 + c1 x + c0, g'(pi) = 2 pi + c1
  RingElement gp = ring->pi().scaled(2) + ring->from_int(eisenstein[1]);
  Valuation d = gp.valuation();
  if (d.is_infinite()) throw Error(ErrorKind::InsufficientPrecision, "quadratic_lower_jump", "different vanishes");
  // v_L(different) = (p - 1)(l + 1) for a cyclic degree-p extension
  return d.value() - 1;
}

}  // namespace cyclelab
