#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "cyclelab/rational.hpp"
#include "cyclelab/series.hpp"

namespace cyclelab {

struct FormalGroupLaw {
  BiSeries law;
  std::string name;

  const std::shared_ptr<const LocalRing>& ring() const { return law.ring(); }
  int t_precision() const { return law.t_precision(); }
};

/// X + Y + XY.
FormalGroupLaw multiplicative_group(std::shared_ptr<const LocalRing> ring, int t_precision);

/// y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6.
struct Weierstrass {
  std::int64_t a1 = 0, a2 = 0, a3 = 0, a4 = 0, a6 = 0;
  std::int64_t discriminant() const;
};

/// Formal group of E at the origin in the parameter z = -x/y, to total
/// degree t_precision (default 2p^2 + 2).
FormalGroupLaw elliptic_formal_group(std::shared_ptr<const LocalRing> ring, const Weierstrass& w,
                                     int t_precision = 0);

struct AxiomCheck {
  bool unit = false;
  bool commutative = false;
  bool associative = false;
  bool ok() const { return unit && commutative && associative; }
};

/// Unit and commutativity coefficientwise; associativity along random lines
/// X = aT, Y = bT, Z = cT.
AxiomCheck check_axioms(const FormalGroupLaw& F, std::mt19937& rng, int trials = 3);

struct IsogenyData {
  TruncSeries series;
  /// v_K(D(phi)) = t; infinite only if D vanishes to precision.
  Valuation D = Valuation::infinity();
  /// residue of D(phi) / pi^t
  std::int64_t a_residue = 0;
  /// residue of the T^p coefficient
  std::int64_t a_p_residue = 0;
  int height = 0;

  std::int64_t t() const { return D.value(); }
};

/// Reads D, a, a_p and the height off a series with phi(0) = 0.
IsogenyData isogeny_data(const TruncSeries& phi);

/// [m](T) on F.
IsogenyData mult_by(const FormalGroupLaw& F, int m);

/// a_p is a unit and v(a_1) <= v(a_m) for p not dividing m (height one only).
bool height_one_bounds_hold(const IsogenyData& phi);

struct KernelSlope {
  Rational valuation;
  int multiplicity = 0;
  friend bool operator==(const KernelSlope&, const KernelSlope&) = default;
};

/// Valuations of the nonzero roots of phi, from the Newton polygon of
/// phi(T)/T up to degree p^h - 1.
/// Errors: InsufficientPrecision.
std::vector<KernelSlope> kernel_valuations(const IsogenyData& phi);

struct QuotientIsogeny {
  FormalGroupLaw G;
  IsogenyData psi;
};

/// F / H for the finite subgroup H = {0} + kernel_points. The quotient law is
/// solved up to total degree `degree` (0 selects the largest degree the
/// precision allows).
/// Errors: NotASubgroup, PrecisionExhausted, NonIntegralSolution.
QuotientIsogeny quotient_isogeny(const FormalGroupLaw& F, const std::vector<RingElement>& kernel_points,
                                 int degree = 0);

/// Invariants (t_1, ..., t_n) of a height-n isogeny split into height-one
/// steps.
class IsogenyChain {
 public:
  IsogenyChain() = default;
  IsogenyChain(std::int64_t p, std::int64_t e, std::vector<std::int64_t> t);

  std::int64_t p() const { return p_; }
  std::int64_t e() const { return e_; }
  int n() const { return static_cast<int>(t_.size()); }
  const std::vector<std::int64_t>& t() const { return t_; }
  std::int64_t t(int i) const { return t_.at(static_cast<std::size_t>(i - 1)); }

  /// c_i(phi) = t_1 + ... + t_i + t_i/(p-1), c_0 = 0.
  Rational c_phi(int i) const;
  std::int64_t c_phi_int(int i) const;
  /// t-hat_i = e - t_{n-i+1}.
  IsogenyChain dual() const;

  /// Monotone and p^{n-i} | t_i. Returns the failures.
  std::vector<std::string> invariant_violations() const;

  std::vector<std::string> log;
  std::vector<std::string> warnings;

  friend bool operator==(const IsogenyChain& a, const IsogenyChain& b) {
    return a.p_ == b.p_ && a.e_ == b.e_ && a.t_ == b.t_;
  }

 private:
  std::int64_t p_ = 2;
  std::int64_t e_ = 1;
  std::vector<std::int64_t> t_;
};

/// [p^n] on the multiplicative group: t_i = e.
IsogenyChain multiplication_chain(std::int64_t p, std::int64_t e, int n);

/// Explicit chain; checks positivity, (p-1) | t_i and t_i < e. Invariant
/// violations are warnings unless strict.
IsogenyChain chain_from_t(std::int64_t p, std::int64_t e, std::vector<std::int64_t> t, bool strict = false);

/// Canonical-subgroup recursion for a supersingular formal group with
/// v(a) = v_a, where a is the T^p coefficient of [p].
/// Errors: NonIntegralT, PreconditionViolated, ChainInvariant (strict only).
IsogenyChain canonical_chain(const Rational& v_a, std::int64_t e, int n, std::int64_t p, bool strict = false);

}  // namespace cyclelab
