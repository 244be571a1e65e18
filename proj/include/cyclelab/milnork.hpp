#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "cyclelab/localfield.hpp"

namespace cyclelab {

/// F_{p^f}; elements are integers in [0, p^f) read as base-p digit vectors
/// of polynomials modulo a fixed monic irreducible.
class GaloisField {
 public:
  /// Errors: NotPrime, BudgetExceeded when p^f > 2^20.
  GaloisField(std::int64_t p, int f);

  std::int64_t p() const { return p_; }
  int f() const { return f_; }
  std::int64_t size() const { return q_; }
  const std::vector<std::int64_t>& modulus() const { return modulus_; }

  std::int64_t add(std::int64_t x, std::int64_t y) const;
  std::int64_t neg(std::int64_t x) const;
  std::int64_t mul(std::int64_t x, std::int64_t y) const;
  std::int64_t pow(std::int64_t x, std::int64_t k) const;
  std::int64_t from_int(std::int64_t k) const;
  std::int64_t frobenius(std::int64_t x) const { return pow(x, p_); }
  std::int64_t frobenius_inverse(std::int64_t x) const { return pow(x, q_ / p_); }

 private:
  std::vector<std::int64_t> digits(std::int64_t x) const;
  std::int64_t pack(const std::vector<std::int64_t>& d) const;

  std::int64_t p_;
  int f_;
  std::int64_t q_;
  std::vector<std::int64_t> modulus_;  // low to high, leading 1 omitted
};

/// Sum of c * t^a * dlog t_J over F_{p^f}[t_1^{+-1}, ..., t_r^{+-1}].
class LaurentForm {
 public:
  using Exponent = std::vector<std::int64_t>;
  /// (exponent, J as a bitmask over 0..r-1)
  using Key = std::pair<Exponent, unsigned>;

  LaurentForm(std::shared_ptr<const GaloisField> k, int r, int q);

  static LaurentForm monomial(std::shared_ptr<const GaloisField> k, int r, std::int64_t c, Exponent a,
                              const std::vector<int>& J);

  const std::shared_ptr<const GaloisField>& field() const { return k_; }
  int r() const { return r_; }
  int degree() const { return q_; }
  const std::map<Key, std::int64_t>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  void add_term(const Exponent& a, unsigned J, std::int64_t c);
  LaurentForm operator+(const LaurentForm& o) const;
  LaurentForm operator-(const LaurentForm& o) const;
  LaurentForm scaled(std::int64_t c) const;

  std::string str() const;
  friend bool operator==(const LaurentForm& x, const LaurentForm& y) {
    return x.r_ == y.r_ && x.q_ == y.q_ && x.terms_ == y.terms_;
  }

 private:
  std::shared_ptr<const GaloisField> k_;
  int r_;
  int q_;
  std::map<Key, std::int64_t> terms_;
};

LaurentForm differential(const LaurentForm& w);
LaurentForm inverse_cartier(const LaurentForm& w, int times = 1);
/// Errors: NotClosed.
LaurentForm cartier(const LaurentForm& w);

enum class Tower { B, Z };
/// w in B_s (resp. Z_s), by w in X_{s+1} <=> dw = 0 and C(w) in X_s.
bool membership(const LaurentForm& w, Tower tower, int s);

/// C^{-s} d w and (-1)^q (m - ie)/p^s C^{-s} w for w of degree q - 2.
/// Errors: PreconditionViolated (band, s = v_p(m), n - i > s, p^s | m - ie).
std::pair<LaurentForm, LaurentForm> theta_map(const LaurentForm& w, std::int64_t m, int i, int s, int n,
                                              const LocalFieldSpec& spec);

struct LaurentWindow {
  int r = 1;
  std::int64_t W = 8;
};

struct MilnorGraded {
  enum class Branch { Zero, CokerTheta, ZQuotient, CartierQuotient };
  Branch branch = Branch::Zero;
  /// band index with c_i < m < c_{i+1}, or m = c_i
  int i = 0;
  int s = 0;  // v_p(m)
  /// s for CokerTheta, n - i for the other two
  int level = 0;
  /// (-1)^q (m - ie)/p^s mod p, CokerTheta only
  std::optional<std::int64_t> lambda;
  std::string formula;
  /// log_p of the order when the residue field is F_{p^f} itself (q <= 2)
  std::optional<int> finite_field_log;
  /// summed F_{p^f}-dimensions over the window lines; absent for the
  /// Cartier branch, where (1 + aC) mixes lines
  std::optional<std::int64_t> window_dim;

  /// Everything except window and formula text.
  bool same_structure(const MilnorGraded& o) const {
    return branch == o.branch && level == o.level && lambda == o.lambda && finite_field_log == o.finite_field_log;
  }
};

std::string to_string(MilnorGraded::Branch b);

/// gr^m k_{q,n} for m >= 1. Errors: PreconditionViolated.
MilnorGraded milnor_graded_structure(std::int64_t m, int n, int q, const LocalFieldSpec& spec,
                                     std::optional<LaurentWindow> window = std::nullopt);

/// (m - e, n - 1). Errors: PreconditionViolated (n > 1 and m > e + e0).
std::pair<std::int64_t, int> lemmaA1_shift(std::int64_t m, int n, const LocalFieldSpec& spec);

// Per-line bookkeeping on the Laurent model, exposed for the window checks.

/// F_{p^f}-dimension of X_s in degree j on the exponent line a, by
/// enumerating F_p-combinations and testing membership.
int line_dim_enumerated(const std::shared_ptr<const GaloisField>& k, const LaurentForm::Exponent& a, int j, Tower tower, int s);
/// The same from v_p(a): C(r-1, j-1) when v_p(a) < s, else 0 (B) or C(r, j) (Z).
int line_dim_closed_form(std::int64_t p, const LaurentForm::Exponent& a, int j, Tower tower, int s);

struct WindowComparison {
  std::int64_t enumerated = 0;
  std::int64_t closed_form = 0;
  bool ok() const { return enumerated == closed_form; }
};

/// Coker(theta) dimension over the window lines, two ways.
WindowComparison coker_theta_window(const std::shared_ptr<const GaloisField>& k, int r, int q, int s, std::int64_t lambda, std::int64_t W);
/// Omega^{q-1}/Z_l + Omega^{q-2}/Z_l over the window, two ways.
WindowComparison z_quotient_window(const std::shared_ptr<const GaloisField>& k, int r, int q, int l, std::int64_t W);

}  // namespace cyclelab
