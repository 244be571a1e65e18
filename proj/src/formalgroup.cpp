#include "cyclelab/formalgroup.hpp"

#include <algorithm>
#include <sstream>

#include "cyclelab/error.hpp"

namespace cyclelab {

FormalGroupLaw multiplicative_group(std::shared_ptr<const LocalRing> ring, int t_precision) {
  auto X = BiSeries::X(ring, t_precision);
  auto Y = BiSeries::Y(ring, t_precision);
  return {X + Y + X * Y, "multiplicative"};
}

std::int64_t Weierstrass::discriminant() const {
  const __int128 b2 = a1 * a1 + 4 * a2;
  const __int128 b4 = 2 * a4 + a1 * a3;
  const __int128 b6 = a3 * a3 + 4 * a6;
  const __int128 b8 = a1 * a1 * a6 + 4 * a2 * a6 - a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4;
  const __int128 d = -b2 * b2 * b8 - 8 * b4 * b4 * b4 - 27 * b6 * b6 + 9 * b2 * b4 * b6;
  return static_cast<std::int64_t>(d);
}

FormalGroupLaw elliptic_formal_group(std::shared_ptr<const LocalRing> ring, const Weierstrass& w, int t_precision) {
  const std::int64_t p = ring->p();
  const int M = t_precision > 0 ? t_precision : static_cast<int>(2 * p * p + 2);
  const int W = M + 1;
  auto c = [&](std::int64_t v) { return ring->from_int(v); };

  // w(z) = z^3 + a1 z w + a2 z^2 w + a3 w^2 + a4 z w^2 + a6 w^3, by fixed point
  TruncSeries z = TruncSeries::identity(ring, W);
  TruncSeries z2 = z * z;
  TruncSeries z3 = z2 * z;
  TruncSeries ws(ring, W);
  for (int it = 0; it <= W; ++it) {
    TruncSeries w2 = ws * ws;
    TruncSeries next = z3 + (z * ws).scaled(c(w.a1)) + (z2 * ws).scaled(c(w.a2)) + w2.scaled(c(w.a3)) +
                       (z * w2).scaled(c(w.a4)) + (w2 * ws).scaled(c(w.a6));
    const bool done = next.equals(ws);
    ws = next;
    if (done) break;
  }
  ws.set_exact(false);

  // chord slope lambda = sum_n A_n (z2^n - z1^n)/(z2 - z1) and intercept nu
  BiSeries lambda(ring, M), wz1(ring, M);
  for (int n = 3; n <= W; ++n) {
    RingElement A = ws.coeff(n);
    if (A.is_zero()) continue;
    for (int i = 0; i <= n - 1; ++i) lambda.set_coeff(i, n - 1 - i, A);
    if (n <= M) wz1.set_coeff(n, 0, A);
  }
  lambda.set_exact(false);
  wz1.set_exact(false);
  const BiSeries X = BiSeries::X(ring, M), Y = BiSeries::Y(ring, M);
  const BiSeries one = BiSeries::constant(ring, M, 1);
  const BiSeries nu = wz1 - lambda * X;
  const BiSeries l2 = lambda * lambda;
  const BiSeries l3 = l2 * lambda;
  const BiSeries lnu = lambda * nu;
  const BiSeries l2nu = l2 * nu;

  // z1 + z2 + z3 = -(z^2 coefficient)/(z^3 coefficient) on the line w = lambda z + nu
  BiSeries num(ring, M);
  if (w.a1) num = num - lambda.scaled(w.a1);
  if (w.a3) num = num - l2.scaled(w.a3);
  if (w.a2) num = num - nu.scaled(w.a2);
  if (w.a4) num = num - lnu.scaled(2 * w.a4);
  if (w.a6) num = num - l2nu.scaled(3 * w.a6);
  BiSeries den = one;
  if (w.a2) den = den + lambda.scaled(w.a2);
  if (w.a4) den = den + l2.scaled(w.a4);
  if (w.a6) den = den + l3.scaled(w.a6);

  const BiSeries zsum = -X - Y + num * den.inverse();
  const BiSeries wsum = lambda * zsum + nu;
  // the group law adds to the third point's inverse: z/(a1 z + a3 w - 1)
  const BiSeries denom = zsum.scaled(w.a1) + wsum.scaled(w.a3) - one;
  BiSeries F = zsum * denom.inverse();
  F.set_exact(false);
  std::ostringstream name;
  name << "elliptic[" << w.a1 << "," << w.a2 << "," << w.a3 << "," << w.a4 << "," << w.a6 << "]";
  return {F, name.str()};
}

AxiomCheck check_axioms(const FormalGroupLaw& F, std::mt19937& rng, int trials) {
  const auto& law = F.law;
  auto ring = F.ring();
  const int M = law.t_precision();
  AxiomCheck out;
  out.unit = true;
  out.commutative = true;
  for (int d = 0; d <= M; ++d) {
    for (int j = 0; j <= d; ++j) {
      const int i = d - j;
      if (j == 0 && !law.coeff(i, 0).equals(ring->from_int(i == 1 ? 1 : 0))) out.unit = false;
      if (i == 0 && !law.coeff(0, j).equals(ring->from_int(j == 1 ? 1 : 0))) out.unit = false;
      if (!law.coeff(i, j).equals(law.coeff(j, i))) out.commutative = false;
    }
  }
  std::uniform_int_distribution<std::int64_t> dist(0, ring->modulus() - 1);
  auto random_line = [&]() {
    std::vector<std::int64_t> digits(ring->e());
    for (auto& x : digits) x = dist(rng);
    return TruncSeries::identity(ring, M).scaled(ring->from_coeffs(digits));
  };
  out.associative = true;
  for (int k = 0; k < trials; ++k) {
    TruncSeries a = random_line(), b = random_line(), c = random_line();
    TruncSeries left = law.substitute(law.substitute(a, b), c);
    TruncSeries right = law.substitute(a, law.substitute(b, c));
    if (!left.equals(right)) out.associative = false;
  }
  return out;
}

IsogenyData isogeny_data(const TruncSeries& phi) {
  const std::string contract = "isogeny_data";
  if (phi.has_constant_term()) throw Error(ErrorKind::ConstantTermPresent, contract, "phi(0) != 0");
  auto ring = phi.ring();
  const std::int64_t p = ring->p();
  IsogenyData out;
  out.series = phi;
  out.D = phi.D().valuation();
  if (!out.D.is_infinite()) out.a_residue = phi.D().divide_by_pi(static_cast<int>(out.D.value())).residue();
  if (p <= phi.t_precision()) out.a_p_residue = phi.coeff(static_cast<int>(p)).residue();
  const auto r = phi.reduce_mod_m();
  int first = -1;
  for (int k = 1; k < static_cast<int>(r.size()); ++k) {
    if (r[k] != 0) {
      first = k;
      break;
    }
  }
  if (first < 0) {
    throw Error(ErrorKind::InsufficientPrecision, contract,
                "reduction vanishes up to T^" + std::to_string(phi.t_precision()) + "; raise t_precision");
  }
  int h = 0;
  std::int64_t q = 1;
  while (q < first) {
    q *= p;
    ++h;
  }
  if (q != first) {
    throw Error(ErrorKind::PreconditionViolated, contract,
                "first unit coefficient sits at T^" + std::to_string(first) + ", not a power of p");
  }
  out.height = h;
  return out;
}

IsogenyData mult_by(const FormalGroupLaw& F, int m) {
  if (m < 1) throw Error(ErrorKind::PreconditionViolated, "mult_by", "m must be >= 1");
  auto ring = F.ring();
  const int M = F.t_precision();
  const TruncSeries T = TruncSeries::identity(ring, M);
  TruncSeries cur = T;
  int top = 0;
  while ((m >> (top + 1)) != 0) ++top;
  for (int b = top - 1; b >= 0; --b) {
    cur = F.law.substitute(cur, cur);
    if ((m >> b) & 1) cur = F.law.substitute(cur, T);
  }
  return isogeny_data(cur);
}

bool height_one_bounds_hold(const IsogenyData& phi) {
  if (phi.height != 1) return true;
  const auto& s = phi.series;
  const std::int64_t p = s.ring()->p();
  if (p > s.t_precision() || !s.coeff(static_cast<int>(p)).is_unit()) return false;
  for (int m = 2; m <= s.t_precision(); ++m) {
    if (m % p == 0) continue;
    if (s.coeff(m).valuation() < phi.D) return false;
  }
  return true;
}

std::vector<KernelSlope> kernel_valuations(const IsogenyData& phi) {
  const std::string contract = "kernel_valuations";
  if (phi.height == 0) return {};
  const auto& s = phi.series;
  const std::int64_t p = s.ring()->p();
  const std::int64_t top = ipow(p, phi.height);
  if (top > s.t_precision()) {
    throw Error(ErrorKind::InsufficientPrecision, contract, "series too short to reach T^{p^h}");
  }
  if (phi.D.is_infinite()) throw Error(ErrorKind::InsufficientPrecision, contract, "D(phi) vanishes to precision");
  // points (k-1, v(a_k)); unknown valuations are only bounded below by pi_precision
  struct Pt {
    std::int64_t x;
    std::int64_t y;
  };
  std::vector<Pt> known;
  std::vector<std::int64_t> unknown_x;
  for (std::int64_t k = 1; k <= top; ++k) {
    Valuation v = s.coeff(static_cast<int>(k)).valuation();
    if (v.is_infinite()) {
      unknown_x.push_back(k - 1);
    } else {
      known.push_back({k - 1, v.value()});
    }
  }
  // lower convex hull (x increasing)
  std::vector<Pt> hull;
  auto cross = [](const Pt& o, const Pt& a, const Pt& b) {
    return static_cast<__int128>(a.x - o.x) * (b.y - o.y) - static_cast<__int128>(a.y - o.y) * (b.x - o.x);
  };
  for (const auto& pt : known) {
    while (hull.size() >= 2 && cross(hull[hull.size() - 2], hull.back(), pt) <= 0) hull.pop_back();
    hull.push_back(pt);
  }
  // a coefficient known only to be >= pi_precision could sink below the hull
  for (auto x : unknown_x) {
    for (std::size_t i = 0; i + 1 < hull.size(); ++i) {
      if (hull[i].x <= x && x <= hull[i + 1].x) {
        const Rational hx = Rational(hull[i].y) + Rational(hull[i + 1].y - hull[i].y, hull[i + 1].x - hull[i].x) *
                                                      Rational(x - hull[i].x);
        if (Rational(s.pi_precision()) < hx) {
          throw Error(ErrorKind::InsufficientPrecision, contract,
                      "coefficient of T^" + std::to_string(x + 1) + " vanishes to precision " +
                          std::to_string(s.pi_precision()) + " below the polygon");
        }
      }
    }
  }
  std::vector<KernelSlope> out;
  for (std::size_t i = 0; i + 1 < hull.size(); ++i) {
    const std::int64_t dx = hull[i + 1].x - hull[i].x;
    const std::int64_t dy = hull[i].y - hull[i + 1].y;
    out.push_back({Rational(dy, dx), static_cast<int>(dx)});
  }
  std::sort(out.begin(), out.end(), [](const KernelSlope& a, const KernelSlope& b) { return b.valuation < a.valuation; });
  return out;
}

QuotientIsogeny quotient_isogeny(const FormalGroupLaw& F, const std::vector<RingElement>& kernel_points, int degree) {
  const std::string contract = "quotient_isogeny";
  auto ring = F.ring();
  std::vector<RingElement> H{ring->zero()};
  for (const auto& x : kernel_points) {
    if (x.valuation() < Valuation(1)) throw Error(ErrorKind::NotASubgroup, contract, "point outside m_K: " + x.str());
    bool seen = false;
    for (const auto& y : H) seen = seen || y.equals(x);
    if (!seen) H.push_back(x);
  }
  auto member = [&](const RingElement& z) {
    for (const auto& y : H) {
      if (y.equals(z)) return true;
    }
    return false;
  };
  for (const auto& x : H) {
    for (const auto& y : H) {
      if (!member(F.law.evaluate(x, y))) {
        throw Error(ErrorKind::NotASubgroup, contract, "F(" + x.str() + ", " + y.str() + ") leaves the set");
      }
    }
  }
  std::int64_t order = static_cast<std::int64_t>(H.size());
  int h = 0;
  while (order % ring->p() == 0) {
    order /= ring->p();
    ++h;
  }
  if (order != 1) throw Error(ErrorKind::NotASubgroup, contract, "order is not a power of p");

  TruncSeries psi = TruncSeries::identity(ring, F.t_precision());
  for (std::size_t k = 1; k < H.size(); ++k) psi = psi * F.law.at_second(H[k]);
  IsogenyData data = isogeny_data(psi);
  if (data.D.is_infinite()) throw Error(ErrorKind::PrecisionExhausted, contract, "D(psi) vanishes");
  int deg = degree;
  if (deg <= 0) {
    const auto t = data.D.value();
    deg = psi.t_precision();
    while (deg > 1 && ring->precision() - deg * t < 1) --deg;
  }
  BiSeries G = solve_undetermined(psi, F.law, deg);
  return {{G, F.name + "/H" + std::to_string(H.size())}, data};
}

// ---------------------------------------------------------------------------

IsogenyChain::IsogenyChain(std::int64_t p, std::int64_t e, std::vector<std::int64_t> t)
    : p_(p), e_(e), t_(std::move(t)) {}

Rational IsogenyChain::c_phi(int i) const {
  if (i == 0) return Rational(0);
  Rational s(0);
  for (int k = 1; k <= i; ++k) s += Rational(t(k));
  return s + Rational(t(i), p_ - 1);
}

std::int64_t IsogenyChain::c_phi_int(int i) const {
  Rational c = c_phi(i);
  if (!c.is_integer()) throw Error(ErrorKind::NonIntegralT, "IsogenyChain", "c_" + std::to_string(i) + "(phi) = " + c.str());
  return c.num();
}

IsogenyChain IsogenyChain::dual() const {
  std::vector<std::int64_t> th(t_.size());
  const int nn = n();
  for (int i = 1; i <= nn; ++i) th[i - 1] = e_ - t(nn - i + 1);
  return IsogenyChain(p_, e_, th);
}

std::vector<std::string> IsogenyChain::invariant_violations() const {
  std::vector<std::string> out;
  const int nn = n();
  for (int i = 1; i < nn; ++i) {
    if (t(i) > t(i + 1)) {
      out.push_back("t_" + std::to_string(i) + " = " + std::to_string(t(i)) + " > t_" + std::to_string(i + 1) +
                    " = " + std::to_string(t(i + 1)));
    }
    const std::int64_t d = ipow(p_, nn - i);
    if (t(i) % d != 0) {
      out.push_back("p^" + std::to_string(nn - i) + " = " + std::to_string(d) + " does not divide t_" +
                    std::to_string(i) + " = " + std::to_string(t(i)));
    }
  }
  return out;
}

IsogenyChain multiplication_chain(std::int64_t p, std::int64_t e, int n) {
  IsogenyChain c(p, e, std::vector<std::int64_t>(static_cast<std::size_t>(n), e));
  c.log.push_back("[p^" + std::to_string(n) + "] on the multiplicative group: t_i = e");
  return c;
}

namespace {

void apply_strictness(IsogenyChain& chain, bool strict) {
  for (auto& v : chain.invariant_violations()) {
    if (strict) throw Error(ErrorKind::ChainInvariant, "chain invariants", v);
    chain.warnings.push_back("chain invariant: " + v);
  }
}

}  // namespace

IsogenyChain chain_from_t(std::int64_t p, std::int64_t e, std::vector<std::int64_t> t, bool strict) {
  const std::string contract = "chain_from_t";
  if (t.empty()) throw Error(ErrorKind::PreconditionViolated, contract, "empty chain");
  for (std::size_t i = 0; i < t.size(); ++i) {
    const std::string name = "t_" + std::to_string(i + 1);
    if (t[i] <= 0) throw Error(ErrorKind::PreconditionViolated, contract, name + " must be positive");
    if (t[i] % (p - 1) != 0) {
      throw Error(ErrorKind::NonIntegralT, contract, name + "/(p-1) = " + Rational(t[i], p - 1).str() + " is not integral");
    }
    if (t[i] >= e) throw Error(ErrorKind::PreconditionViolated, contract, name + " must be < e for a height-2 group");
  }
  IsogenyChain chain(p, e, std::move(t));
  chain.log.push_back("explicit chain");
  apply_strictness(chain, strict);
  return chain;
}

IsogenyChain canonical_chain(const Rational& v_a, std::int64_t e, int n, std::int64_t p, bool strict) {
  const std::string contract = "canonical_chain";
  if (!is_prime(p)) throw Error(ErrorKind::NotPrime, contract, std::to_string(p) + " is not prime");
  if (n < 1 || e < 1) throw Error(ErrorKind::PreconditionViolated, contract, "need n >= 1 and e >= 1");
  if (!(Rational(0) < v_a)) throw Error(ErrorKind::PreconditionViolated, contract, "supersingular needs v_a > 0");

  const Rational E(e);
  const Rational P(p);
  const Rational threshold = P * E / (P + 1);  // pe/(p+1)
  const Rational lower = E / (P + 1);          // e/(p+1)
  std::vector<std::int64_t> t(static_cast<std::size_t>(n));
  std::vector<std::string> log;
  Rational va = v_a;
  bool forbidden = false;  // canonical subgroup of the current group is the dual kernel

  for (int step = n; step >= 1; --step) {
    Rational kv;
    std::ostringstream os;
    os << "phi_" << step << ": v_a = " << va.str();
    if (!(va < threshold)) {
      kv = E / (P * P - 1);
      os << " >= pe/(p+1) = " << threshold.str() << ", all kernels have v = e/(p^2-1) = " << kv.str();
      va = lower;
      forbidden = true;
    } else if (!forbidden) {
      kv = (E - va) / (P - 1);
      os << " < pe/(p+1), canonical subgroup v = (e - v_a)/(p-1) = " << kv.str();
      if (va < lower) {
        va = P * va;
        forbidden = false;
        os << "; below e/(p+1), next v_a = p*v_a = " << va.str();
      } else if (va == lower) {
        va = P * va;
        forbidden = false;
        os << "; at e/(p+1), next v_a only known to be >= pe/(p+1), continuing as if equal";
      } else {
        va = E - va;
        forbidden = true;
        os << "; above e/(p+1), next v_a = e - v_a = " << va.str();
      }
    } else {
      kv = va / (P * P - P);
      os << ", canonical subgroup excluded, other kernels v = v_a/(p^2-p) = " << kv.str();
      va = va / P;
      os << "; next v_a = v_a/p = " << va.str();
    }
    if (!kv.is_integer()) {
      throw Error(ErrorKind::NonIntegralT, contract,
                  "kernel valuation " + kv.str() + " of phi_" + std::to_string(step) +
                      " is not an integer, so the torsion cannot be rational over K");
    }
    t[static_cast<std::size_t>(step - 1)] = (P - 1).num() * kv.num();
    os << "; t_" << step << " = " << t[static_cast<std::size_t>(step - 1)];
    log.push_back(os.str());
  }
  IsogenyChain chain(p, e, std::move(t));
  chain.log = std::move(log);
  apply_strictness(chain, strict);
  return chain;
}

}  // namespace cyclelab
