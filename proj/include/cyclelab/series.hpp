#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "cyclelab/localfield.hpp"

namespace cyclelab {

/// Power series sum_{k<=M} a_k T^k over O_K/pi^N, known modulo T^{M+1}.
///
/// Coefficients are packed as raw Eisenstein digits; a single pi_precision
/// (the minimum over all coefficients) is tracked for the whole series.
/// `exact` marks a polynomial whose true degree is <= M, i.e. nothing was
/// truncated away in T.
class TruncSeries {
 public:
  TruncSeries() = default;
  TruncSeries(std::shared_ptr<const LocalRing> ring, int t_precision);

  static TruncSeries from_elements(std::shared_ptr<const LocalRing> ring, const std::vector<RingElement>& coeffs,
                                   int t_precision, bool exact = true);
  static TruncSeries from_ints(std::shared_ptr<const LocalRing> ring, const std::vector<std::int64_t>& coeffs,
                               int t_precision, bool exact = true);
  /// T itself.
  static TruncSeries identity(std::shared_ptr<const LocalRing> ring, int t_precision);

  const std::shared_ptr<const LocalRing>& ring() const { return ring_; }
  int t_precision() const { return m_; }
  int pi_precision() const { return pi_prec_; }
  bool exact() const { return exact_; }
  void set_exact(bool exact) { exact_ = exact; }
  /// Highest k with a_k nonzero to precision, -1 for the zero series.
  int degree() const;

  RingElement coeff(int k) const;
  void set_coeff(int k, const RingElement& c);
  /// D(phi), the linear coefficient.
  RingElement D() const { return coeff(1); }
  bool has_constant_term() const { return !coeff(0).is_zero(); }

  TruncSeries operator+(const TruncSeries& o) const;
  TruncSeries operator-(const TruncSeries& o) const;
  TruncSeries operator-() const;
  TruncSeries operator*(const TruncSeries& o) const;
  TruncSeries scaled(const RingElement& c) const;
  TruncSeries pow(int k) const;
  TruncSeries truncated(int t_precision) const;
  TruncSeries with_pi_precision(int prec) const;
  /// T^k * this, keeping the t_precision.
  TruncSeries shifted(int k) const;

  /// phi(x) for v(x) >= 1. Truncation error lowers the result precision to
  /// v(x)(M+1) unless the series is exact.
  RingElement evaluate(const RingElement& x) const;

  /// Residue classes of a_0..a_M.
  std::vector<std::int64_t> reduce_mod_m() const;

  /// Agreement modulo T^{min M + 1} and the smaller pi-precision.
  bool equals(const TruncSeries& o) const;
  std::string str() const;

  // raw access for the two-variable code
  const std::int64_t* raw(int k) const { return d_.data() + static_cast<std::size_t>(k) * e_; }
  std::int64_t* raw(int k) { return d_.data() + static_cast<std::size_t>(k) * e_; }

 private:
  friend class BiSeries;
  void normalize();

  std::shared_ptr<const LocalRing> ring_;
  int m_ = 0;
  int e_ = 1;
  int pi_prec_ = 0;
  bool exact_ = true;
  std::vector<std::int64_t> d_;
};

/// f(g(T)); g must have zero constant term.
TruncSeries compose(const TruncSeries& f, const TruncSeries& g);

/// Two-variable series sum_{i+j<=M} F_ij X^i Y^j stored as a triangular table.
class BiSeries {
 public:
  BiSeries() = default;
  BiSeries(std::shared_ptr<const LocalRing> ring, int t_precision);

  static BiSeries X(std::shared_ptr<const LocalRing> ring, int t_precision);
  static BiSeries Y(std::shared_ptr<const LocalRing> ring, int t_precision);
  static BiSeries constant(std::shared_ptr<const LocalRing> ring, int t_precision, std::int64_t c);

  const std::shared_ptr<const LocalRing>& ring() const { return ring_; }
  int t_precision() const { return m_; }
  int pi_precision() const { return pi_prec_; }
  bool exact() const { return exact_; }
  void set_exact(bool exact) { exact_ = exact; }
  int total_degree() const;

  RingElement coeff(int i, int j) const;
  void set_coeff(int i, int j, const RingElement& c);

  BiSeries operator+(const BiSeries& o) const;
  BiSeries operator-(const BiSeries& o) const;
  BiSeries operator-() const;
  BiSeries operator*(const BiSeries& o) const;
  BiSeries scaled(const RingElement& c) const;
  BiSeries scaled(std::int64_t c) const;
  /// 1/F for F with unit constant term.
  BiSeries inverse() const;
  BiSeries swapped() const;
  BiSeries truncated(int t_precision) const;
  BiSeries with_pi_precision(int prec) const;

  /// F(f(T), g(T)).
  TruncSeries substitute(const TruncSeries& f, const TruncSeries& g) const;
  /// f(F(X,Y)) for univariate f with f(0) = 0.
  BiSeries apply_outer(const TruncSeries& f) const;
  /// F(f(X), f(Y)).
  BiSeries apply_inner(const TruncSeries& f) const;
  /// F(T, x) for a ring element x with v(x) >= 1.
  TruncSeries at_second(const RingElement& x) const;
  /// F(x, y) for v(x), v(y) >= 1.
  RingElement evaluate(const RingElement& x, const RingElement& y) const;

  bool equals(const BiSeries& o) const;
  std::string str() const;

 private:
  static std::size_t index(int i, int j) { return static_cast<std::size_t>((i + j) * (i + j + 1) / 2 + j); }
  const std::int64_t* raw(int i, int j) const { return d_.data() + index(i, j) * e_; }
  std::int64_t* raw(int i, int j) { return d_.data() + index(i, j) * e_; }
  void normalize();

  std::shared_ptr<const LocalRing> ring_;
  int m_ = 0;
  int e_ = 1;
  int pi_prec_ = 0;
  bool exact_ = true;
  std::vector<std::int64_t> d_;
};

/// Finds G with G(psi(X), psi(Y)) = psi(F(X,Y)) degree by degree up to
/// total degree `degree`. Each degree d divides by D(psi)^d, so the returned
/// pi-precision drops by d * v(D(psi)).
/// Errors: PrecisionExhausted, NonIntegralSolution.
BiSeries solve_undetermined(const TruncSeries& psi, const BiSeries& F, int degree);

}  // namespace cyclelab
