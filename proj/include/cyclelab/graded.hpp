#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "cyclelab/formalgroup.hpp"
#include "cyclelab/localfield.hpp"
#include "cyclelab/rational.hpp"

namespace cyclelab {

enum class FieldClass { QuasiFinite, SeparablyClosed, Generic };

std::string to_string(FieldClass fc);

/// One graded quotient, described up to isomorphism.
struct GradedPiece {
  enum class Kind { Zero, ResidueLine, CyclicP, FullCyclic, CartierCokernel };

  Kind kind = Kind::Zero;
  /// exponent for FullCyclic
  int n = 0;
  /// residues of a and a_p for an uncollapsed CartierCokernel, when known
  std::optional<std::int64_t> a;
  std::optional<std::int64_t> a_p;

  static GradedPiece of(Kind k, int n = 0) {
    GradedPiece g;
    g.kind = k;
    g.n = n;
    return g;
  }
  static GradedPiece zero() { return {}; }
  static GradedPiece residue_line() { return of(Kind::ResidueLine); }
  static GradedPiece cyclic_p() { return of(Kind::CyclicP); }
  static GradedPiece full_cyclic(int n) { return of(Kind::FullCyclic, n); }
  /// k/(a + a_p C^{-1})k, collapsed according to the residue field.
  static GradedPiece cartier_cokernel(FieldClass fc);

  bool is_zero() const { return kind == Kind::Zero; }
  /// log_p of the order when the residue field is F_{p^f}; nullopt for an
  /// uncollapsed Cartier cokernel.
  std::optional<int> log_order(int f) const;
  std::string str() const;

  friend bool operator==(const GradedPiece& x, const GradedPiece& y) { return x.kind == y.kind && x.n == y.n; }
};

/// Sorted finite set of filtration indices with the name of what produced it.
struct IndexSet {
  std::vector<std::int64_t> elems;
  std::int64_t bound = 0;
  std::string provenance;

  IndexSet() = default;
  IndexSet(std::vector<std::int64_t> e, std::int64_t b, std::string prov);

  bool contains(std::int64_t m) const;
  bool empty() const { return elems.empty(); }
  std::size_t size() const { return elems.size(); }
  /// Maximal runs [lo, hi] of consecutive members.
  std::vector<std::pair<std::int64_t, std::int64_t>> intervals() const;
  std::string str() const;

  friend bool operator==(const IndexSet& a, const IndexSet& b) { return a.elems == b.elems; }
};

/// Induced map gr^m(F) -> gr^target(G) of a height-one isogeny.
struct StepMap {
  enum class Case { BelowBreak, AtBreak, AboveBreak };
  Case which = Case::AboveBreak;
  Rational break_point;  // t/(p-1)
  std::int64_t source = 0;
  std::int64_t target = 0;
  std::string map;
  bool bijective = false;
  /// log_p of the kernel on the residue field (F_p model, f = 1)
  int kernel_log = 0;
};

/// Errors: NotHeightOne, PreconditionViolated.
StepMap gr_step_map(const IsogenyData& phi, std::int64_t m);

/// gr^m of the cokernel filtration of a chain (m may be rational; non-integral
/// grades are zero).
GradedPiece gr_phi_structure(const IsogenyChain& chain, const Rational& m, FieldClass fc = FieldClass::QuasiFinite);

/// gr^m(p^n) of K^x/(K^x)^{p^n}.
GradedPiece units_grade_structure(const LocalFieldSpec& spec, int n, std::int64_t m,
                                  FieldClass fc = FieldClass::QuasiFinite);

/// j = c_i - c_i(phi) + m for c_{i-1}(phi) < m <= c_i(phi).
/// Errors: OutOfRange.
std::int64_t kummer_grade_shift(const IsogenyChain& chain, std::int64_t m, const LocalFieldSpec& spec, int n);

/// Support of gr(p^n) over all m in [0, c_n] (grade 0 included).
IndexSet units_support(const LocalFieldSpec& spec, int n);

/// { shift(m) : gr^m(phi) != 0, 1 <= m <= c_n(phi) }.
IndexSet image_support(const IsogenyChain& chain, const LocalFieldSpec& spec, int n,
                       FieldClass fc = FieldClass::QuasiFinite);

struct HerbrandJumps {
  std::vector<Rational> lower;
  std::vector<Rational> upper;
  /// phi_{L/K}(lower_i), which must equal upper_i
  std::vector<Rational> herbrand_of_lower;
};

/// Herbrand function of a cyclic p^n extension with lower jumps l_1 < ... < l_n.
Rational herbrand_phi(const std::vector<Rational>& lower_jumps, std::int64_t p, const Rational& x);

/// Errors: PreconditionViolated (need 1 <= m < c_1(phi), p not dividing m).
HerbrandJumps herbrand_jumps(const IsogenyChain& chain, std::int64_t m);

/// Lower ramification jump of the quadratic extension cut out by a
/// degree-2 Eisenstein polynomial over Q_2, from v_L of the different.
std::int64_t quadratic_lower_jump(const std::vector<std::int64_t>& eisenstein, int precision = 12);

}  // namespace cyclelab
