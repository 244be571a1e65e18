#include "cyclelab/milnork.hpp"

#include <bit>
#include <sstream>

#include "cyclelab/error.hpp"

namespace cyclelab {

// ---------------------------------------------------------------------------
// F_{p^f}

GaloisField::GaloisField(std::int64_t p, int f) : p_(p), f_(f) {
  const std::string contract = "GaloisField";
  if (!is_prime(p)) throw Error(ErrorKind::NotPrime, contract, std::to_string(p) + " is not prime");
  if (f < 1) throw Error(ErrorKind::PreconditionViolated, contract, "f must be >= 1");
  q_ = 1;
  for (int i = 0; i < f; ++i) {
    q_ *= p;
    if (q_ > (1 << 20)) throw Error(ErrorKind::BudgetExceeded, contract, "p^f too large for the table model");
  }
  if (f == 1) {
    modulus_ = {0};  // x
    return;
  }
  // first monic irreducible of degree f; trial division by every monic of
  // degree 1..f/2 is cheap at these sizes
  auto poly_mod_zero = [p](std::vector<std::int64_t> a, const std::vector<std::int64_t>& b) {
    // b monic, both low to high with explicit leading coefficient
    const std::size_t db = b.size() - 1;
    for (std::size_t d = a.size(); d-- > db;) {
      const std::int64_t c = a[d] % p;
      if (c == 0) continue;
      for (std::size_t k = 0; k <= db; ++k) a[d - db + k] = ((a[d - db + k] - c * b[k]) % p + p) % p;
    }
    for (auto x : a)
      if (x % p != 0) return false;
    return true;
  };
  for (std::int64_t code = 0; code < q_; ++code) {
    std::vector<std::int64_t> cand(static_cast<std::size_t>(f) + 1, 0);
    std::int64_t c = code;
    for (int i = 0; i < f; ++i) {
      cand[static_cast<std::size_t>(i)] = c % p;
      c /= p;
    }
    cand[static_cast<std::size_t>(f)] = 1;
    if (cand[0] == 0) continue;
    bool irreducible = true;
    for (int d = 1; d <= f / 2 && irreducible; ++d) {
      std::int64_t count = 1;
      for (int i = 0; i < d; ++i) count *= p;
      for (std::int64_t dc = 0; dc < count && irreducible; ++dc) {
        std::vector<std::int64_t> div(static_cast<std::size_t>(d) + 1, 0);
        std::int64_t x = dc;
        for (int i = 0; i < d; ++i) {
          div[static_cast<std::size_t>(i)] = x % p;
          x /= p;
        }
        div[static_cast<std::size_t>(d)] = 1;
        if (poly_mod_zero(cand, div)) irreducible = false;
      }
    }
    if (irreducible) {
      modulus_.assign(cand.begin(), cand.end() - 1);
      return;
    }
  }
  throw Error(ErrorKind::PreconditionViolated, contract, "no irreducible polynomial found");
}

std::vector<std::int64_t> GaloisField::digits(std::int64_t x) const {
  std::vector<std::int64_t> d(static_cast<std::size_t>(f_));
  for (int i = 0; i < f_; ++i) {
    d[static_cast<std::size_t>(i)] = x % p_;
    x /= p_;
  }
  return d;
}

std::int64_t GaloisField::pack(const std::vector<std::int64_t>& d) const {
  std::int64_t x = 0;
  for (int i = f_ - 1; i >= 0; --i) x = x * p_ + d[static_cast<std::size_t>(i)];
  return x;
}

std::int64_t GaloisField::add(std::int64_t x, std::int64_t y) const {
  auto a = digits(x), b = digits(y);
  for (int i = 0; i < f_; ++i) a[static_cast<std::size_t>(i)] = (a[static_cast<std::size_t>(i)] + b[static_cast<std::size_t>(i)]) % p_;
  return pack(a);
}

std::int64_t GaloisField::neg(std::int64_t x) const {
  auto a = digits(x);
  for (auto& v : a) v = (p_ - v) % p_;
  return pack(a);
}

std::int64_t GaloisField::mul(std::int64_t x, std::int64_t y) const {
  auto a = digits(x), b = digits(y);
  std::vector<std::int64_t> c(static_cast<std::size_t>(2 * f_ - 1), 0);
  for (int i = 0; i < f_; ++i)
    for (int j = 0; j < f_; ++j)
      c[static_cast<std::size_t>(i + j)] =
          (c[static_cast<std::size_t>(i + j)] + a[static_cast<std::size_t>(i)] * b[static_cast<std::size_t>(j)]) % p_;
  // x^f = -modulus
  for (int d = 2 * f_ - 2; d >= f_; --d) {
    const std::int64_t v = c[static_cast<std::size_t>(d)];
    if (v == 0) continue;
    c[static_cast<std::size_t>(d)] = 0;
    for (int k = 0; k < f_; ++k) {
      auto& slot = c[static_cast<std::size_t>(d - f_ + k)];
      slot = ((slot - v * modulus_[static_cast<std::size_t>(k)]) % p_ + p_) % p_;
    }
  }
  c.resize(static_cast<std::size_t>(f_));
  return pack(c);
}

std::int64_t GaloisField::pow(std::int64_t x, std::int64_t k) const {
  std::int64_t r = 1;
  while (k > 0) {
    if (k & 1) r = mul(r, x);
    x = mul(x, x);
    k >>= 1;
  }
  return r;
}

std::int64_t GaloisField::from_int(std::int64_t k) const { return ((k % p_) + p_) % p_; }

// ---------------------------------------------------------------------------
// forms

LaurentForm::LaurentForm(std::shared_ptr<const GaloisField> k, int r, int q) : k_(std::move(k)), r_(r), q_(q) {
  if (r < 0 || r > 16) throw Error(ErrorKind::PreconditionViolated, "LaurentForm", "need 0 <= r <= 16");
}

LaurentForm LaurentForm::monomial(std::shared_ptr<const GaloisField> k, int r, std::int64_t c, Exponent a,
                                  const std::vector<int>& J) {
  if (static_cast<int>(a.size()) != r) throw Error(ErrorKind::PreconditionViolated, "LaurentForm", "exponent length differs from r");
  unsigned mask = 0;
  for (int j : J) {
    if (j < 0 || j >= r || (mask >> j) & 1u) throw Error(ErrorKind::PreconditionViolated, "LaurentForm", "bad index set");
    mask |= 1u << j;
  }
  LaurentForm w(std::move(k), r, static_cast<int>(J.size()));
  // J given in any order: sort with the sign of the permutation
  int inversions = 0;
  for (std::size_t x = 0; x < J.size(); ++x)
    for (std::size_t y = x + 1; y < J.size(); ++y)
      if (J[x] > J[y]) ++inversions;
  if (inversions % 2) c = w.k_->neg(c);
  w.add_term(a, mask, c);
  return w;
}

void LaurentForm::add_term(const Exponent& a, unsigned J, std::int64_t c) {
  if (c == 0) return;
  Key key{a, J};
  auto it = terms_.find(key);
  if (it == terms_.end()) {
    terms_.emplace(std::move(key), c);
    return;
  }
  it->second = k_->add(it->second, c);
  if (it->second == 0) terms_.erase(it);
}

LaurentForm LaurentForm::operator+(const LaurentForm& o) const {
  LaurentForm out = *this;
  for (const auto& [key, c] : o.terms_) out.add_term(key.first, key.second, c);
  return out;
}

LaurentForm LaurentForm::operator-(const LaurentForm& o) const { return *this + o.scaled(k_->neg(1)); }

LaurentForm LaurentForm::scaled(std::int64_t c) const {
  LaurentForm out(k_, r_, q_);
  for (const auto& [key, v] : terms_) out.add_term(key.first, key.second, k_->mul(v, c));
  return out;
}

std::string LaurentForm::str() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [key, c] : terms_) {
    if (!first) os << " + ";
    first = false;
    os << c << "*t^(";
    for (std::size_t i = 0; i < key.first.size(); ++i) os << (i ? "," : "") << key.first[i];
    os << ")";
    for (int j = 0; j < r_; ++j)
      if ((key.second >> j) & 1u) os << " dlog t" << j + 1;
  }
  return os.str();
}

LaurentForm differential(const LaurentForm& w) {
  const auto& k = w.field();
  LaurentForm out(k, w.r(), w.degree() + 1);
  for (const auto& [key, c] : w.terms()) {
    const auto& [a, J] = key;
    for (int j = 0; j < w.r(); ++j) {
      if ((J >> j) & 1u) continue;
      std::int64_t coef = k->mul(c, k->from_int(a[static_cast<std::size_t>(j)]));
      if (coef == 0) continue;
      // dlog t_j in front, then move it into place
      if (std::popcount(J & ((1u << j) - 1u)) % 2) coef = k->neg(coef);
      out.add_term(a, J | (1u << j), coef);
    }
  }
  return out;
}

LaurentForm inverse_cartier(const LaurentForm& w, int times) {
  LaurentForm cur = w;
  for (int t = 0; t < times; ++t) {
    const auto& k = cur.field();
    LaurentForm out(k, cur.r(), cur.degree());
    for (const auto& [key, c] : cur.terms()) {
      LaurentForm::Exponent a = key.first;
      for (auto& x : a) x *= k->p();
      out.add_term(a, key.second, k->frobenius(c));
    }
    cur = std::move(out);
  }
  return cur;
}

namespace {

bool divisible(const LaurentForm::Exponent& a, std::int64_t m) {
  for (auto x : a)
    if (x % m != 0) return false;
  return true;
}

// C on a form already known to be closed
LaurentForm cartier_closed(const LaurentForm& w) {
  const auto& k = w.field();
  const std::int64_t p = k->p();
  LaurentForm out(k, w.r(), w.degree());
  for (const auto& [key, c] : w.terms()) {
    // lines with p not dividing a are closed only on exact forms, which C kills
    if (!divisible(key.first, p)) continue;
    LaurentForm::Exponent a = key.first;
    for (auto& x : a) x /= p;
    out.add_term(a, key.second, k->frobenius_inverse(c));
  }
  return out;
}

}  // namespace

LaurentForm cartier(const LaurentForm& w) {
  if (!differential(w).is_zero()) throw Error(ErrorKind::NotClosed, "cartier", "form is not closed: " + w.str());
  return cartier_closed(w);
}

bool membership(const LaurentForm& w, Tower tower, int s) {
  if (s < 0) throw Error(ErrorKind::PreconditionViolated, "membership", "s must be >= 0");
  if (s == 0) return tower == Tower::Z || w.is_zero();
  if (!differential(w).is_zero()) return false;
  return membership(cartier_closed(w), tower, s - 1);
}

std::pair<LaurentForm, LaurentForm> theta_map(const LaurentForm& w, std::int64_t m, int i, int s, int n,
                                              const LocalFieldSpec& spec) {
  const std::string contract = "theta_map";
  const std::int64_t p = spec.p;
  if (i < 0 || i >= n) throw Error(ErrorKind::PreconditionViolated, contract, "need 0 <= i < n");
  if (!(spec.c_int(i) < m && m < spec.c_int(i + 1))) {
    throw Error(ErrorKind::PreconditionViolated, contract, "m is not strictly inside (c_i, c_{i+1})");
  }
  if (s != p_adic_valuation(m, p)) throw Error(ErrorKind::PreconditionViolated, contract, "s must be v_p(m)");
  if (n - i <= s) throw Error(ErrorKind::PreconditionViolated, contract, "theta is only used when n - i > s");
  const std::int64_t ps = ipow(p, s);
  const std::int64_t num = m - static_cast<std::int64_t>(i) * spec.e;
  if (num % ps != 0) throw Error(ErrorKind::PreconditionViolated, contract, "p^s does not divide m - ie");
  const int q = w.degree() + 2;
  std::int64_t lambda = num / ps;
  if (q % 2) lambda = -lambda;
  const auto& k = w.field();
  return {inverse_cartier(differential(w), s), inverse_cartier(w, s).scaled(k->from_int(lambda))};
}

std::string to_string(MilnorGraded::Branch b) {
  switch (b) {
    case MilnorGraded::Branch::Zero:
      return "zero";
    case MilnorGraded::Branch::CokerTheta:
      return "coker-theta";
    case MilnorGraded::Branch::ZQuotient:
      return "z-quotient";
    case MilnorGraded::Branch::CartierQuotient:
      return "cartier-quotient";
  }
  return "?";
}

namespace {

std::int64_t binom(int n, int k) {
  if (k < 0 || n < 0 || k > n) return 0;
  std::int64_t r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

// v_p of an exponent vector; -1 stands for the zero vector
int vec_valuation(const LaurentForm::Exponent& a, std::int64_t p) {
  int v = -1;
  for (auto x : a) {
    if (x == 0) continue;
    const int w = p_adic_valuation(x, p);
    if (v < 0 || w < v) v = w;
  }
  return v;
}

template <class F>
void for_each_line(int r, std::int64_t W, F&& fn) {
  LaurentForm::Exponent a(static_cast<std::size_t>(r), -W);
  if (r == 0) {
    fn(a);
    return;
  }
  while (true) {
    fn(a);
    int j = 0;
    while (j < r && a[static_cast<std::size_t>(j)] == W) a[static_cast<std::size_t>(j++)] = -W;
    if (j == r) return;
    ++a[static_cast<std::size_t>(j)];
  }
}

std::int64_t theta_rank_closed(std::int64_t p, const LaurentForm::Exponent& a, int r, int q, int s,
                               std::int64_t lambda) {
  if (!divisible(a, ipow(p, s))) return 0;
  if (((lambda % p) + p) % p != 0) return binom(r, q - 2);
  LaurentForm::Exponent b = a;
  for (auto& x : b) x /= ipow(p, s);
  return divisible(b, p) ? 0 : binom(r - 1, q - 2);
}

std::int64_t coker_line_closed(std::int64_t p, const LaurentForm::Exponent& a, int r, int q, int s,
                               std::int64_t lambda) {
  return binom(r, q - 1) - line_dim_closed_form(p, a, q - 1, Tower::B, s) + binom(r, q - 2) -
         line_dim_closed_form(p, a, q - 2, Tower::B, s) - theta_rank_closed(p, a, r, q, s, lambda);
}

std::int64_t zq_line_closed(std::int64_t p, const LaurentForm::Exponent& a, int r, int q, int l) {
  return binom(r, q - 1) - line_dim_closed_form(p, a, q - 1, Tower::Z, l) + binom(r, q - 2) -
         line_dim_closed_form(p, a, q - 2, Tower::Z, l);
}

std::vector<unsigned> masks_of_size(int r, int j) {
  std::vector<unsigned> out;
  if (j < 0 || j > r) return out;
  for (unsigned m = 0; m < (1u << r); ++m)
    if (std::popcount(m) == j) out.push_back(m);
  return out;
}

// log_p of the number of F_p-combinations of the basis on line a (degree j)
// satisfying pred
template <class Pred>
int enumerate_log(const std::shared_ptr<const GaloisField>& k, const LaurentForm::Exponent& a, int j, Pred&& pred) {
  const int r = static_cast<int>(a.size());
  const auto basis = masks_of_size(r, j);
  const std::int64_t p = k->p();
  std::int64_t total = 1;
  for (std::size_t i = 0; i < basis.size(); ++i) total *= p;
  std::int64_t count = 0;
  for (std::int64_t code = 0; code < total; ++code) {
    LaurentForm w(k, r, j);
    std::int64_t c = code;
    for (unsigned mask : basis) {
      w.add_term(a, mask, c % p);
      c /= p;
    }
    if (pred(w)) ++count;
  }
  int log = 0;
  while (count > 1) {
    if (count % p != 0) throw Error(ErrorKind::PreconditionViolated, "line enumeration", "count is not a p-power");
    count /= p;
    ++log;
  }
  return log;
}

}  // namespace

int line_dim_closed_form(std::int64_t p, const LaurentForm::Exponent& a, int j, Tower tower, int s) {
  const int r = static_cast<int>(a.size());
  if (j < 0 || j > r) return 0;
  const int v = vec_valuation(a, p);
  const bool below = v >= 0 && v < s;
  if (below) return static_cast<int>(binom(r - 1, j - 1));
  return tower == Tower::B ? 0 : static_cast<int>(binom(r, j));
}

int line_dim_enumerated(const std::shared_ptr<const GaloisField>& k, const LaurentForm::Exponent& a, int j,
                        Tower tower, int s) {
  return enumerate_log(k, a, j, [&](const LaurentForm& w) { return membership(w, tower, s); });
}

WindowComparison coker_theta_window(const std::shared_ptr<const GaloisField>& k, int r, int q, int s,
                                    std::int64_t lambda, std::int64_t W) {
  WindowComparison out;
  const std::int64_t p = k->p();
  const std::int64_t ps = ipow(p, s);
  for_each_line(r, W, [&](const LaurentForm::Exponent& a) {
    out.closed_form += coker_line_closed(p, a, r, q, s, lambda);
    std::int64_t dim = binom(r, q - 1) - line_dim_enumerated(k, a, q - 1, Tower::B, s) + binom(r, q - 2) -
                       line_dim_enumerated(k, a, q - 2, Tower::B, s);
    if (divisible(a, ps) && q >= 2) {
      LaurentForm::Exponent b = a;
      for (auto& x : b) x /= ps;
      // kernel of theta into the quotient, line b -> line a
      const int ker = enumerate_log(k, b, q - 2, [&](const LaurentForm& w) {
        const LaurentForm first = inverse_cartier(differential(w), s);
        const LaurentForm second = inverse_cartier(w, s).scaled(k->from_int(lambda));
        return membership(first, Tower::B, s) && membership(second, Tower::B, s);
      });
      dim -= binom(r, q - 2) - ker;
    }
    out.enumerated += dim;
  });
  return out;
}

WindowComparison z_quotient_window(const std::shared_ptr<const GaloisField>& k, int r, int q, int l,
                                   std::int64_t W) {
  WindowComparison out;
  const std::int64_t p = k->p();
  for_each_line(r, W, [&](const LaurentForm::Exponent& a) {
    out.closed_form += zq_line_closed(p, a, r, q, l);
    out.enumerated += binom(r, q - 1) - line_dim_enumerated(k, a, q - 1, Tower::Z, l) + binom(r, q - 2) -
                      line_dim_enumerated(k, a, q - 2, Tower::Z, l);
  });
  return out;
}

MilnorGraded milnor_graded_structure(std::int64_t m, int n, int q, const LocalFieldSpec& spec,
                                     std::optional<LaurentWindow> window) {
  const std::string contract = "milnor_graded_structure";
  if (m < 1) throw Error(ErrorKind::PreconditionViolated, contract, "m must be >= 1");
  if (q < 1) throw Error(ErrorKind::PreconditionViolated, contract, "q must be >= 1");
  if (n < 1 || spec.zeta_level < n) throw Error(ErrorKind::PreconditionViolated, contract, "need 1 <= n <= zeta_level");
  const std::int64_t p = spec.p;
  MilnorGraded g;
  g.s = p_adic_valuation(m, p);
  const int f = spec.f;

  if (m > spec.c_int(n)) {
    g.branch = MilnorGraded::Branch::Zero;
    g.i = n;
    g.formula = "U^m k_{q,n} = 0";
    g.finite_field_log = 0;
    if (window) g.window_dim = 0;
    return g;
  }
  for (int i = 1; i <= n; ++i) {
    if (m != spec.c_int(i)) continue;
    g.branch = MilnorGraded::Branch::CartierQuotient;
    g.i = i;
    g.level = n - i;
    g.formula = "Omega^{q-1}/(1+aC)Z_" + std::to_string(n - i) + " + Omega^{q-2}/(1+aC)Z_" + std::to_string(n - i);
    // over a finite field only k = Omega^0 survives, and k/(1+aC)k is Z/p
    g.finite_field_log = (q == 1 || q == 2) ? 1 : 0;
    return g;
  }
  int i = 0;
  while (!(m < spec.c_int(i + 1))) ++i;
  g.i = i;
  if (n - i > g.s) {
    g.branch = MilnorGraded::Branch::CokerTheta;
    g.level = g.s;
    const std::int64_t ps = ipow(p, g.s);
    const std::int64_t num = m - static_cast<std::int64_t>(i) * spec.e;
    if (num % ps != 0) {
      throw Error(ErrorKind::PreconditionViolated, contract,
                  "p^s does not divide m - ie (m = " + std::to_string(m) + ", i = " + std::to_string(i) + ")");
    }
    std::int64_t lambda = num / ps;
    if (q % 2) lambda = -lambda;
    g.lambda = ((lambda % p) + p) % p;
    g.formula = "Coker(theta: Omega^{q-2} -> Omega^{q-1}/B_" + std::to_string(g.s) + " + Omega^{q-2}/B_" +
                std::to_string(g.s) + ")";
    // finite field: Omega^0 = k, B^0 = 0; for q = 2 theta hits k unless lambda = 0
    if (q == 1) {
      g.finite_field_log = f;
    } else if (q == 2) {
      g.finite_field_log = *g.lambda == 0 ? f : 0;
    } else {
      g.finite_field_log = 0;
    }
    if (window) {
      std::int64_t d = 0;
      for_each_line(window->r, window->W,
                    [&](const LaurentForm::Exponent& a) { d += coker_line_closed(p, a, window->r, q, g.s, *g.lambda); });
      g.window_dim = d;
    }
  } else {
    g.branch = MilnorGraded::Branch::ZQuotient;
    g.level = n - i;
    g.formula = "Omega^{q-1}/Z_" + std::to_string(n - i) + " + Omega^{q-2}/Z_" + std::to_string(n - i);
    g.finite_field_log = 0;  // Z_l = k on a perfect field
    if (window) {
      std::int64_t d = 0;
      for_each_line(window->r, window->W,
                    [&](const LaurentForm::Exponent& a) { d += zq_line_closed(p, a, window->r, q, g.level); });
      g.window_dim = d;
    }
  }
  return g;
}

std::pair<std::int64_t, int> lemmaA1_shift(std::int64_t m, int n, const LocalFieldSpec& spec) {
  if (n <= 1) throw Error(ErrorKind::PreconditionViolated, "lemmaA1_shift", "need n > 1");
  if (m <= spec.c_int(1)) throw Error(ErrorKind::PreconditionViolated, "lemmaA1_shift", "need m > e + e0");
  return {m - spec.e, n - 1};
}

}  // namespace cyclelab
