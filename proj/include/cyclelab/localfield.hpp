#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "cyclelab/rational.hpp"

namespace cyclelab {

bool is_prime(std::int64_t n);
/// v_p(n) for n != 0.
int p_adic_valuation(std::int64_t n, std::int64_t p);
std::int64_t ipow(std::int64_t base, int exp);

/// Arithmetic shape of a finite extension K/Q_p.
///
/// `eisenstein` optionally holds the non-leading coefficients c_0..c_{e-1} of a
/// monic Eisenstein polynomial for the uniformizer; it is only needed when
/// concrete element arithmetic is requested (see LocalRing).
struct LocalFieldSpec {
  std::int64_t p = 2;
  int e = 1;
  int f = 1;
  int zeta_level = 0;
  int precision = 1;
  std::vector<std::int64_t> eisenstein;

  /// e / (p - 1); integral whenever zeta_level >= 1.
  Rational e0() const { return Rational(e, p - 1); }
  /// Break levels c_i = i*e + e0 of the mu_{p^n} filtration, c_0 = 0.
  Rational c(int i) const { return i == 0 ? Rational(0) : Rational(i) * e + e0(); }
  /// c(i) for specs where it is known to be integral.
  std::int64_t c_int(int i) const;
  /// Default working precision c_n + n + 4.
  static int default_precision(std::int64_t p, int e, int n);

  friend bool operator==(const LocalFieldSpec&, const LocalFieldSpec&) = default;
};

/// Validates the standing hypotheses and returns the spec. A precision of 0
/// selects default_precision(p, e, zeta_level).
LocalFieldSpec make_field_spec(std::int64_t p, int e, int f, int zeta_level, int precision,
                               std::vector<std::int64_t> eisenstein = {});

/// Eisenstein data for common fields.
namespace fields {
/// Q_p itself, pi = p.
LocalFieldSpec rational(std::int64_t p, int zeta_level, int precision = 0);
/// Q_p(zeta_{p^n}) with pi = zeta_{p^n} - 1.
LocalFieldSpec cyclotomic(std::int64_t p, int n, int precision = 0);
/// Q_2(sqrt(-2)), pi^2 = -2.
LocalFieldSpec q2_sqrt_minus2(int precision = 12);
}  // namespace fields

/// Discrete valuation value; the valuation of zero is +infinity, ordered above
/// every integer.
class Valuation {
 public:
  constexpr Valuation(std::int64_t v) : value_(v) {}  // NOLINT(google-explicit-constructor)
  static constexpr Valuation infinity() { return Valuation(); }

  bool is_infinite() const { return infinite_; }
  std::int64_t value() const;

  friend constexpr bool operator==(const Valuation&, const Valuation&) = default;
  friend constexpr std::strong_ordering operator<=>(const Valuation& a, const Valuation& b) {
    if (a.infinite_ || b.infinite_) return a.infinite_ <=> b.infinite_;
    return a.value_ <=> b.value_;
  }
  friend Valuation operator+(const Valuation& a, const Valuation& b) {
    if (a.infinite_ || b.infinite_) return infinity();
    return Valuation(a.value_ + b.value_);
  }

 private:
  constexpr Valuation() : infinite_(true) {}
  std::int64_t value_ = 0;
  bool infinite_ = false;
};

std::string to_string(const Valuation& v);

class RingElement;

/// O_K / pi^N for f = 1, realized as Z_p[x]/(Eisenstein) with coefficients
/// stored modulo p^K, K = ceil(N/e) + 1.
class LocalRing : public std::enable_shared_from_this<LocalRing> {
 public:
  static std::shared_ptr<const LocalRing> make(const LocalFieldSpec& spec);

  const LocalFieldSpec& spec() const { return spec_; }
  std::int64_t p() const { return spec_.p; }
  int e() const { return spec_.e; }
  int precision() const { return spec_.precision; }
  std::int64_t modulus() const { return modulus_; }

  RingElement zero() const;
  RingElement one() const;
  RingElement from_int(std::int64_t n) const;
  RingElement pi() const;
  /// Element sum_i coeffs[i] * pi^i (i < e), at full precision.
  RingElement from_coeffs(std::span<const std::int64_t> coeffs) const;

  /// Number of elements of O_K / pi^N.
  std::optional<std::uint64_t> size() const;
  /// Visits every element of O_K / pi^prec once.
  void for_each_element(int prec, const std::function<void(const RingElement&)>& fn) const;

  // Internal helpers shared with RingElement.
  std::int64_t mod(__int128 v) const;
  std::int64_t mulmod(std::int64_t a, std::int64_t b) const;
  std::vector<std::int64_t> reduce_poly(std::vector<std::int64_t> poly) const;
  std::vector<std::int64_t> canonical(std::vector<std::int64_t> a, int prec) const;
  const std::vector<std::int64_t>& p_over_pi() const { return p_over_pi_; }
  const std::vector<std::int64_t>& eisenstein_mod() const { return eis_; }
  /// Wraps raw digits (already reduced mod p^K) at the given precision.
  RingElement element(std::vector<std::int64_t> digits, int prec) const;

 private:
  explicit LocalRing(LocalFieldSpec spec);

  LocalFieldSpec spec_;
  int digits_ = 1;
  std::int64_t modulus_ = 1;
  std::vector<std::int64_t> eis_;        // c_0..c_{e-1} mod p^K
  std::vector<std::int64_t> p_over_pi_;  // p / pi as a polynomial in pi
  std::vector<std::int64_t> digit_moduli_;
};

/// Element of O_K known modulo pi^precision(). Arithmetic is exact modulo the
/// tracked precision; operations that lose significance (division by non-units)
/// shrink it.
class RingElement {
 public:
  RingElement() = default;

  const std::shared_ptr<const LocalRing>& ring() const { return ring_; }
  int precision() const { return prec_; }
  const std::vector<std::int64_t>& coeffs() const { return a_; }

  /// Zero to the tracked precision reports +infinity.
  Valuation valuation() const;
  bool is_zero() const;
  bool is_unit() const;
  /// Class of x modulo pi, in [0, p).
  std::int64_t residue() const;
  /// Residue class of x / pi^v(x); requires x nonzero.
  std::int64_t leading_residue() const;

  RingElement operator+(const RingElement& o) const;
  RingElement operator-(const RingElement& o) const;
  RingElement operator-() const;
  RingElement operator*(const RingElement& o) const;
  RingElement& operator+=(const RingElement& o) { return *this = *this + o; }
  RingElement& operator-=(const RingElement& o) { return *this = *this - o; }
  RingElement& operator*=(const RingElement& o) { return *this = *this * o; }
  RingElement scaled(std::int64_t k) const;

  /// Inverse of a unit; NonUnitInverse otherwise.
  RingElement inverse() const;
  /// x / pi^k; NonIntegral when v(x) < k, PrecisionExhausted when no digit survives.
  RingElement divide_by_pi(int k) const;
  /// Exact quotient x / y with v(y) <= v(x).
  RingElement divide(const RingElement& y) const;
  RingElement pow(std::uint64_t k) const;
  RingElement with_precision(int prec) const;

  /// Equal modulo the smaller of the two precisions.
  bool equals(const RingElement& o) const;
  /// Mixed-radix code of the canonical representative (for hashing small rings).
  std::uint64_t key() const;
  std::string str() const;

 private:
  friend class LocalRing;
  RingElement(std::shared_ptr<const LocalRing> ring, std::vector<std::int64_t> a, int prec);
  void check_same(const RingElement& o) const;

  std::shared_ptr<const LocalRing> ring_;
  std::vector<std::int64_t> a_;
  int prec_ = 0;
};

// ---------------------------------------------------------------------------
// Brute-force unit-group oracle.

enum class OracleMethod { Enumeration, Presentation };

struct OracleOptions {
  /// Largest ring size #(O_K/pi^N) the oracle accepts; defaults to the
  /// CYCLELAB_BUDGET environment variable or 2^40.
  std::optional<std::uint64_t> budget;
  /// Enumerate when the ring has at most this many elements.
  std::uint64_t enumeration_limit = std::uint64_t{1} << 20;
  std::optional<OracleMethod> force;
};

std::uint64_t default_oracle_budget();

/// Orders of gr^m(p^n) = U_n^m / U_n^{m+1} in K^x/(K^x)^{p^n}, computed
/// directly from the ring.
struct UnitGradeOracle {
  OracleMethod method = OracleMethod::Enumeration;
  int n = 1;
  /// log_p of #gr^m(p^n) for m = 0..max_m.
  std::vector<int> log_orders;
  /// log_p of #(K^x / (K^x)^{p^n}).
  int log_total = 0;
};

/// Requires concrete arithmetic (f = 1, Eisenstein data) and N > c_n + n.
UnitGradeOracle unit_group_presentation(const LocalFieldSpec& spec, int n,
                                        std::optional<int> max_m = std::nullopt,
                                        const OracleOptions& options = {});

}  // namespace cyclelab
