#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "cyclelab/formalgroup.hpp"
#include "cyclelab/graded.hpp"
#include "cyclelab/hilbert.hpp"
#include "cyclelab/localfield.hpp"
#include "cyclelab/rational.hpp"

namespace cyclelab {

struct ReductionType {
  enum class Kind { Split, Ordinary, Supersingular };

  Kind kind = Kind::Ordinary;
  /// split only: the Tate parameter has a p^n-th root in E[phi], so the
  /// Kummer factor collapses
  bool tate_trivial = false;
  /// supersingular only: exactly one of these is set
  std::optional<Rational> v_a;
  std::optional<std::vector<std::int64_t>> t;

  static ReductionType split(bool tate_trivial = false);
  static ReductionType ordinary();
  static ReductionType supersingular(const Rational& v_a);
  static ReductionType supersingular_chain(std::vector<std::int64_t> t);

  /// Chain of the height-n isogeny. Errors: PreconditionViolated unless
  /// supersingular, plus chain errors.
  IsogenyChain chain(const LocalFieldSpec& spec, int n, bool strict = false) const;
  std::string str() const;

  friend bool operator==(const ReductionType&, const ReductionType&) = default;
};

std::string to_string(ReductionType::Kind k);

/// Supports of the two K^x/p^n factors of Im(delta), with the graded piece
/// at every index.
struct KummerImageGrading {
  IndexSet first;
  IndexSet second;
  std::map<std::int64_t, GradedPiece> first_pieces;
  std::map<std::int64_t, GradedPiece> second_pieces;
  std::optional<IsogenyChain> chain;
};

/// Errors: PreconditionViolated (zeta_level < n), chain errors.
KummerImageGrading kummer_image(const ReductionType& red, const LocalFieldSpec& spec, int n, bool strict = false);

/// sum_j Z/p^{exps_j}, exponents sorted descending, no zeros.
struct AbelianPGroup {
  std::vector<int> exps;

  static AbelianPGroup from(std::vector<int> e);
  int log_order() const;
  std::string str() const;
  friend bool operator==(const AbelianPGroup&, const AbelianPGroup&) = default;
};

struct ComponentReport {
  std::string label;  // e.g. "S x S-hat'"
  AlphaResult alpha;
  /// every witness pair re-checked against the two index sets
  bool witnesses_verified = false;
};

struct CycleImageReport {
  AbelianPGroup group;
  /// (a)..(e) for the mixed cases, "ss" when both curves are supersingular
  std::string proof_case;
  KummerImageGrading image_E;
  KummerImageGrading image_E2;
  std::array<ComponentReport, 4> components;
  /// neither curve supersingular: the image is cyclic of order p^max(alpha)
  bool cyclic = false;
  std::vector<std::string> warnings;
};

/// Errors: CountMismatch, chain errors.
CycleImageReport cycle_image(const ReductionType& E, const ReductionType& E2, const LocalFieldSpec& spec, int n,
                             bool strict = false);

struct PCaseResult {
  AbelianPGroup engine;
  AbelianPGroup trichotomy;
  /// which of the three cases applies, as a condition on a and a2
  std::string branch;
  /// a(E) read as min(v_a, pe/(p+1)) / (p-1)
  Rational a;
  Rational a2;
  bool agree = false;
  CycleImageReport report;
};

/// n = 1, both supersingular: the engine against the three-way rule.
PCaseResult supersingular_p_case(const Rational& v_a, const Rational& v_a2, const LocalFieldSpec& spec);

struct WorkedExample {
  LocalFieldSpec spec;
  int n = 2;
  Rational v_a;
  CycleImageReport report;
  /// band endpoints as multiples of e0, and remarks
  std::vector<std::string> trace;
};

/// p = 5, n = 2, e = 600 (e0 = 150), v_a = 5e/6 for both curves.
WorkedExample worked_example();

struct MattuckResult {
  bool applicable = false;
  std::int64_t first_sum = 0;
  std::int64_t second_sum = 0;
  std::int64_t expected = 0;  // n(ef + 2)
  bool ok() const { return applicable && first_sum + second_sum == expected; }
};

MattuckResult mattuck_check(const ReductionType& red, const LocalFieldSpec& spec, int n,
                            const KummerImageGrading& image);

/// Smallest e admitting zeta_{p^n} and an integral strict canonical chain
/// for v_a >= pe/(p+1).
std::int64_t minimal_supersingular_e(std::int64_t p, int n);

}  // namespace cyclelab
