#include "cyclelab/localfield.hpp"

#include <algorithm>
#include <cstdlib>
#include <sstream>
#include <unordered_set>

#include "cyclelab/error.hpp"

namespace cyclelab {

bool is_prime(std::int64_t n) {
  if (n < 2) return false;
  for (std::int64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

int p_adic_valuation(std::int64_t n, std::int64_t p) {
  if (n == 0) throw std::domain_error("p-adic valuation of zero");
  int v = 0;
  while (n % p == 0) {
    n /= p;
    ++v;
  }
  return v;
}

std::int64_t ipow(std::int64_t base, int exp) {
  __int128 r = 1;
  for (int i = 0; i < exp; ++i) {
    r *= base;
    if (r > INT64_MAX || r < INT64_MIN) throw std::overflow_error("ipow overflow");
  }
  return static_cast<std::int64_t>(r);
}

std::int64_t LocalFieldSpec::c_int(int i) const {
  Rational ci = c(i);
  if (!ci.is_integer()) {
    throw Error(ErrorKind::NonIntegralE0, "field spec", "c_" + std::to_string(i) + " = " + ci.str() +
                                                            " is not an integer");
  }
  return ci.num();
}

int LocalFieldSpec::default_precision(std::int64_t p, int e, int n) {
  Rational cn = n == 0 ? Rational(0) : Rational(n) * e + Rational(e, p - 1);
  return static_cast<int>(cn.ceil()) + n + 4;
}

LocalFieldSpec make_field_spec(std::int64_t p, int e, int f, int zeta_level, int precision,
                               std::vector<std::int64_t> eisenstein) {
  const std::string contract = "make_field_spec";
  if (!is_prime(p)) throw Error(ErrorKind::NotPrime, contract, std::to_string(p) + " is not prime");
  if (e < 1 || f < 1 || zeta_level < 0 || precision < 0) {
    throw Error(ErrorKind::PreconditionViolated, contract, "e, f must be >= 1 and n, N >= 0");
  }
  if (zeta_level >= 1) {
    if (e % (p - 1) != 0) {
      throw Error(ErrorKind::NonIntegralE0, contract,
                  "e0 = e/(p-1) = " + Rational(e, p - 1).str() + " is not an integer, so zeta_" +
                      std::to_string(p) + " cannot lie in K");
    }
    std::int64_t ram = ipow(p, zeta_level - 1) * (p - 1);
    if (e % ram != 0) {
      throw Error(ErrorKind::ZetaRamification, contract,
                  "p^(n-1)(p-1) = " + std::to_string(ram) + " does not divide e = " + std::to_string(e));
    }
  }
  if (!eisenstein.empty()) {
    if (f != 1) throw Error(ErrorKind::PreconditionViolated, contract, "element arithmetic needs f = 1");
    if (static_cast<int>(eisenstein.size()) != e) {
      throw Error(ErrorKind::PreconditionViolated, contract, "Eisenstein polynomial must have degree e");
    }
    for (auto c : eisenstein) {
      if (c % p != 0) throw Error(ErrorKind::PreconditionViolated, contract, "polynomial is not Eisenstein");
    }
    if ((eisenstein[0] / p) % p == 0) {
      throw Error(ErrorKind::PreconditionViolated, contract, "constant term must be exactly divisible by p");
    }
  }
  LocalFieldSpec spec;
  spec.p = p;
  spec.e = e;
  spec.f = f;
  spec.zeta_level = zeta_level;
  spec.precision = precision == 0 ? LocalFieldSpec::default_precision(p, e, zeta_level) : precision;
  spec.eisenstein = std::move(eisenstein);
  return spec;
}

namespace fields {

LocalFieldSpec rational(std::int64_t p, int zeta_level, int precision) {
  return make_field_spec(p, 1, 1, zeta_level, precision, {-p});
}

LocalFieldSpec cyclotomic(std::int64_t p, int n, int precision) {
  // Phi_{p^n}(y) = sum_{k<p} y^{k p^{n-1}}, then substitute y = x + 1.
  const int e = static_cast<int>(ipow(p, n - 1) * (p - 1));
  const std::int64_t step = ipow(p, n - 1);
  std::vector<__int128> poly(e + 1, 0);
  // binomial rows computed exactly; degrees here stay tiny in practice
  std::vector<std::vector<__int128>> binom(e + 1);
  for (int d = 0; d <= e; ++d) {
    binom[d].assign(d + 1, 1);
    for (int k = 1; k < d; ++k) binom[d][k] = binom[d - 1][k - 1] + binom[d - 1][k];
  }
  for (std::int64_t k = 0; k < p; ++k) {
    const int d = static_cast<int>(k * step);
    for (int j = 0; j <= d; ++j) poly[j] += binom[d][j];
  }
  std::vector<std::int64_t> eis(e);
  for (int j = 0; j < e; ++j) {
    if (poly[j] > INT64_MAX) throw std::overflow_error("cyclotomic coefficient overflow");
    eis[j] = static_cast<std::int64_t>(poly[j]);
  }
  return make_field_spec(p, e, 1, n, precision, std::move(eis));
}

LocalFieldSpec q2_sqrt_minus2(int precision) { return make_field_spec(2, 2, 1, 1, precision, {2, 0}); }

}  // namespace fields

std::int64_t Valuation::value() const {
  if (infinite_) throw std::logic_error("value() of infinite valuation");
  return value_;
}

std::string to_string(const Valuation& v) { return v.is_infinite() ? "inf" : std::to_string(v.value()); }

// ---------------------------------------------------------------------------

LocalRing::LocalRing(LocalFieldSpec spec) : spec_(std::move(spec)) {
  const int e = spec_.e;
  const int n = spec_.precision;
  digits_ = (n + e - 1) / e + 1;
  __int128 m = 1;
  for (int i = 0; i < digits_; ++i) {
    m *= spec_.p;
    if (m > (std::int64_t{1} << 62)) {
      throw Error(ErrorKind::BudgetExceeded, "LocalRing",
                  "p^" + std::to_string(digits_) + " exceeds the 62-bit coefficient budget");
    }
  }
  modulus_ = static_cast<std::int64_t>(m);
  eis_.resize(e);
  for (int j = 0; j < e; ++j) eis_[j] = mod(spec_.eisenstein[j]);
  digit_moduli_.resize(e);
  for (int i = 0; i < e; ++i) {
    int k = std::max(0, (n - i + e - 1) / e);
    digit_moduli_[i] = ipow(spec_.p, k);
  }
  // p = pi * h(pi), h = -(pi^{e-1} + c_{e-1} pi^{e-2} + ... + c_1) / u0, c_0 = p*u0.
  std::int64_t u0 = spec_.eisenstein[0] / spec_.p;
  // inverse of u0 modulo p^K via extended Euclid
  __int128 a = mod(u0), b = modulus_, x0 = 1, x1 = 0;
  while (b != 0) {
    __int128 q = a / b;
    __int128 t = a - q * b;
    a = b;
    b = t;
    t = x0 - q * x1;
    x0 = x1;
    x1 = t;
  }
  std::int64_t u0_inv = mod(x0);
  p_over_pi_.assign(e, 0);
  for (int j = 1; j < e; ++j) p_over_pi_[j - 1] = mulmod(mod(-eis_[j]), u0_inv);
  p_over_pi_[e - 1] = mod(-static_cast<__int128>(u0_inv));
}

std::shared_ptr<const LocalRing> LocalRing::make(const LocalFieldSpec& spec) {
  if (spec.f != 1 || spec.eisenstein.empty()) {
    throw Error(ErrorKind::PreconditionViolated, "element arithmetic",
                "concrete arithmetic needs f = 1 and an Eisenstein polynomial");
  }
  return std::shared_ptr<const LocalRing>(new LocalRing(spec));
}

std::int64_t LocalRing::mod(__int128 v) const {
  __int128 r = v % modulus_;
  if (r < 0) r += modulus_;
  return static_cast<std::int64_t>(r);
}

std::int64_t LocalRing::mulmod(std::int64_t a, std::int64_t b) const {
  if (modulus_ < (std::int64_t{1} << 31)) {
    return static_cast<std::int64_t>(static_cast<std::uint64_t>(a) * static_cast<std::uint64_t>(b) %
                                     static_cast<std::uint64_t>(modulus_));
  }
  return mod(static_cast<__int128>(a) * b);
}

RingElement LocalRing::element(std::vector<std::int64_t> digits, int prec) const {
  prec = std::min(prec, spec_.precision);
  return RingElement(shared_from_this(), canonical(std::move(digits), prec), prec);
}

std::vector<std::int64_t> LocalRing::reduce_poly(std::vector<std::int64_t> poly) const {
  const int e = spec_.e;
  for (int k = static_cast<int>(poly.size()) - 1; k >= e; --k) {
    std::int64_t c = poly[k];
    if (c == 0) continue;
    poly[k] = 0;
    for (int j = 0; j < e; ++j) {
      poly[k - e + j] = mod(static_cast<__int128>(poly[k - e + j]) - static_cast<__int128>(c) * eis_[j]);
    }
  }
  poly.resize(e, 0);
  return poly;
}

std::vector<std::int64_t> LocalRing::canonical(std::vector<std::int64_t> a, int prec) const {
  const int e = spec_.e;
  a.resize(e, 0);
  for (int i = 0; i < e; ++i) {
    int k = std::max(0, (prec - i + e - 1) / e);
    std::int64_t m = ipow(spec_.p, k);
    std::int64_t r = a[i] % m;
    if (r < 0) r += m;
    a[i] = r;
  }
  return a;
}

RingElement LocalRing::zero() const { return from_int(0); }
RingElement LocalRing::one() const { return from_int(1); }

RingElement LocalRing::from_int(std::int64_t n) const {
  std::vector<std::int64_t> a(spec_.e, 0);
  a[0] = mod(n);
  return RingElement(shared_from_this(), canonical(std::move(a), spec_.precision), spec_.precision);
}

RingElement LocalRing::pi() const {
  std::vector<std::int64_t> a(spec_.e, 0);
  if (spec_.e == 1) {
    a[0] = mod(-static_cast<__int128>(eis_[0]));
  } else {
    a[1] = 1;
  }
  return RingElement(shared_from_this(), canonical(std::move(a), spec_.precision), spec_.precision);
}

RingElement LocalRing::from_coeffs(std::span<const std::int64_t> coeffs) const {
  std::vector<std::int64_t> poly;
  for (auto c : coeffs) poly.push_back(mod(c));
  auto a = reduce_poly(std::move(poly));
  return RingElement(shared_from_this(), canonical(std::move(a), spec_.precision), spec_.precision);
}

std::optional<std::uint64_t> LocalRing::size() const {
  __int128 s = 1;
  for (int i = 0; i < spec_.precision; ++i) {
    s *= spec_.p;
    if (s > (static_cast<__int128>(1) << 63)) return std::nullopt;
  }
  return static_cast<std::uint64_t>(s);
}

void LocalRing::for_each_element(int prec, const std::function<void(const RingElement&)>& fn) const {
  const int e = spec_.e;
  std::vector<std::int64_t> bound(e);
  for (int i = 0; i < e; ++i) bound[i] = ipow(spec_.p, std::max(0, (prec - i + e - 1) / e));
  std::vector<std::int64_t> a(e, 0);
  auto self = shared_from_this();
  while (true) {
    fn(RingElement(self, a, prec));
    int i = 0;
    while (i < e) {
      if (++a[i] < bound[i]) break;
      a[i] = 0;
      ++i;
    }
    if (i == e) break;
  }
}

// ---------------------------------------------------------------------------

RingElement::RingElement(std::shared_ptr<const LocalRing> ring, std::vector<std::int64_t> a, int prec)
    : ring_(std::move(ring)), a_(std::move(a)), prec_(prec) {}

void RingElement::check_same(const RingElement& o) const {
  if (!ring_ || ring_ != o.ring_) {
    if (!ring_ || !o.ring_ || !(ring_->spec() == o.ring_->spec())) {
      throw std::invalid_argument("ring elements from different rings");
    }
  }
}

Valuation RingElement::valuation() const {
  const int e = ring_->e();
  std::optional<std::int64_t> best;
  for (int i = 0; i < e; ++i) {
    if (a_[i] == 0) continue;
    std::int64_t v = static_cast<std::int64_t>(e) * p_adic_valuation(a_[i], ring_->p()) + i;
    if (!best || v < *best) best = v;
  }
  if (!best || *best >= prec_) return Valuation::infinity();
  return Valuation(*best);
}

bool RingElement::is_zero() const { return valuation().is_infinite(); }
bool RingElement::is_unit() const { return prec_ >= 1 && a_[0] % ring_->p() != 0; }

std::int64_t RingElement::residue() const {
  if (prec_ < 1) throw Error(ErrorKind::PrecisionExhausted, "residue", "no digits known");
  return a_[0] % ring_->p();
}

std::int64_t RingElement::leading_residue() const {
  Valuation v = valuation();
  if (v.is_infinite()) throw Error(ErrorKind::PreconditionViolated, "leading_residue", "element is zero");
  return divide_by_pi(static_cast<int>(v.value())).residue();
}

RingElement RingElement::operator+(const RingElement& o) const {
  check_same(o);
  const int prec = std::min(prec_, o.prec_);
  std::vector<std::int64_t> r(a_.size());
  for (std::size_t i = 0; i < r.size(); ++i) r[i] = ring_->mod(static_cast<__int128>(a_[i]) + o.a_[i]);
  return RingElement(ring_, ring_->canonical(std::move(r), prec), prec);
}

RingElement RingElement::operator-() const {
  std::vector<std::int64_t> r(a_.size());
  for (std::size_t i = 0; i < r.size(); ++i) r[i] = ring_->mod(-static_cast<__int128>(a_[i]));
  return RingElement(ring_, ring_->canonical(std::move(r), prec_), prec_);
}

RingElement RingElement::operator-(const RingElement& o) const { return *this + (-o); }

RingElement RingElement::operator*(const RingElement& o) const {
  check_same(o);
  auto eff = [](const RingElement& x) {
    Valuation v = x.valuation();
    return v.is_infinite() ? static_cast<std::int64_t>(x.prec_) : v.value();
  };
  const std::int64_t bound = std::min<std::int64_t>(prec_ + eff(o), o.prec_ + eff(*this));
  const int prec = static_cast<int>(std::min<std::int64_t>(bound, ring_->precision()));
  const std::size_t e = a_.size();
  std::vector<std::int64_t> poly(2 * e - 1, 0);
  for (std::size_t i = 0; i < e; ++i) {
    if (a_[i] == 0) continue;
    for (std::size_t j = 0; j < e; ++j) {
      if (o.a_[j] == 0) continue;
      poly[i + j] = ring_->mod(static_cast<__int128>(poly[i + j]) +
                               static_cast<__int128>(ring_->mulmod(a_[i], o.a_[j])));
    }
  }
  auto r = ring_->reduce_poly(std::move(poly));
  return RingElement(ring_, ring_->canonical(std::move(r), prec), prec);
}

RingElement RingElement::scaled(std::int64_t k) const { return *this * ring_->from_int(k); }

RingElement RingElement::inverse() const {
  if (!is_unit()) {
    throw Error(ErrorKind::NonUnitInverse, "element_arithmetic", "inverse of non-unit " + str());
  }
  const std::int64_t p = ring_->p();
  std::int64_t r = residue();
  std::int64_t rinv = 1;
  for (std::int64_t k = 1; k < p; ++k) {
    if ((r * k) % p == 1) {
      rinv = k;
      break;
    }
  }
  RingElement y = ring_->from_int(rinv).with_precision(prec_);
  RingElement two = ring_->from_int(2);
  for (int it = 0; it < 64; ++it) {
    RingElement prod = *this * y;
    if ((prod - ring_->one()).is_zero()) break;
    y = y * (two - prod);
  }
  return y.with_precision(prec_);
}

RingElement RingElement::divide_by_pi(int k) const {
  if (k < 0) throw std::invalid_argument("divide_by_pi with negative exponent");
  Valuation v = valuation();
  if (!v.is_infinite() && v.value() < k) {
    throw Error(ErrorKind::NonIntegral, "element_arithmetic",
                "valuation " + std::to_string(v.value()) + " < " + std::to_string(k));
  }
  if (prec_ - k < 1 && k > 0) {
    throw Error(ErrorKind::PrecisionExhausted, "element_arithmetic",
                "dividing by pi^" + std::to_string(k) + " leaves no significant digits (precision " +
                    std::to_string(prec_) + ")");
  }
  const int e = ring_->e();
  const std::int64_t p = ring_->p();
  std::vector<std::int64_t> a = a_;
  int prec = prec_;
  for (int step = 0; step < k; ++step) {
    std::vector<std::int64_t> next(e, 0);
    for (int i = 1; i < e; ++i) next[i - 1] = a[i];
    std::int64_t b = a[0] / p;  // a[0] is divisible by p since v >= 1
    if (e == 1) {
      // pi = p * w for e = 1 with pi = -c_0; p/pi is stored in p_over_pi.
      next[0] = ring_->mulmod(b, ring_->p_over_pi()[0]);
    } else {
      const auto& h = ring_->p_over_pi();
      for (int j = 0; j < e; ++j) next[j] = ring_->mod(static_cast<__int128>(next[j]) + ring_->mulmod(b, h[j]));
    }
    --prec;
    a = ring_->canonical(std::move(next), prec);
  }
  return RingElement(ring_, std::move(a), prec);
}

RingElement RingElement::divide(const RingElement& y) const {
  check_same(y);
  Valuation vy = y.valuation();
  if (vy.is_infinite()) {
    throw Error(ErrorKind::PrecisionExhausted, "element_arithmetic", "division by zero-to-precision element");
  }
  const int k = static_cast<int>(vy.value());
  return divide_by_pi(k) * y.divide_by_pi(k).inverse();
}

RingElement RingElement::pow(std::uint64_t k) const {
  RingElement result = ring_->one();
  RingElement base = *this;
  while (k > 0) {
    if (k & 1) result *= base;
    k >>= 1;
    if (k) base *= base;
  }
  return result;
}

RingElement RingElement::with_precision(int prec) const {
  int q = std::min(prec, prec_);
  return RingElement(ring_, ring_->canonical(a_, q), q);
}

bool RingElement::equals(const RingElement& o) const { return (*this - o).is_zero(); }

std::uint64_t RingElement::key() const {
  std::uint64_t k = 0;
  std::uint64_t mult = 1;
  const int e = ring_->e();
  for (int i = 0; i < e; ++i) {
    k += static_cast<std::uint64_t>(a_[i]) * mult;
    mult *= static_cast<std::uint64_t>(ipow(ring_->p(), std::max(0, (prec_ - i + e - 1) / e)));
  }
  return k;
}

std::string RingElement::str() const {
  std::ostringstream os;
  bool first = true;
  for (std::size_t i = 0; i < a_.size(); ++i) {
    if (a_[i] == 0) continue;
    if (!first) os << " + ";
    first = false;
    os << a_[i];
    if (i == 1) os << "*pi";
    if (i > 1) os << "*pi^" << i;
  }
  if (first) os << "0";
  os << " + O(pi^" << prec_ << ")";
  return os.str();
}

// ---------------------------------------------------------------------------

std::uint64_t default_oracle_budget() {
  if (const char* env = std::getenv("CYCLELAB_BUDGET")) {
    char* end = nullptr;
    unsigned long long v = std::strtoull(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return v;
  }
  return std::uint64_t{1} << 40;
}

namespace {

int exact_log(std::uint64_t value, std::int64_t p) {
  int k = 0;
  while (value > 1) {
    if (value % static_cast<std::uint64_t>(p) != 0) {
      throw std::logic_error("group order is not a power of p");
    }
    value /= static_cast<std::uint64_t>(p);
    ++k;
  }
  return k;
}

// Filtered basis of a subgroup of U^1 / U^N, one slot per level (f = 1).
class FilteredSubgroup {
 public:
  FilteredSubgroup(std::shared_ptr<const LocalRing> ring, int levels)
      : ring_(std::move(ring)), slots_(levels) {}

  void insert(const RingElement& g) {
    std::vector<RingElement> queue{g};
    while (!queue.empty()) {
      RingElement h = queue.back();
      queue.pop_back();
      while (true) {
        RingElement d = h - ring_->one();
        Valuation v = d.valuation();
        if (v.is_infinite()) break;
        const auto j = static_cast<std::size_t>(v.value());
        const std::int64_t r = d.leading_residue();
        if (!slots_[j]) {
          slots_[j] = Slot{h, r};
          queue.push_back(h.pow(static_cast<std::uint64_t>(ring_->p())));
          break;
        }
        // h * b^{-k} kills the leading term, k = r / r_j mod p
        const std::int64_t p = ring_->p();
        std::int64_t k = 0;
        for (std::int64_t c = 1; c < p; ++c) {
          if ((slots_[j]->lead * c) % p == r % p) {
            k = c;
            break;
          }
        }
        h = h * slots_[j]->element.inverse().pow(static_cast<std::uint64_t>(k));
      }
    }
  }

  /// log_p #(H ∩ U^m).
  int log_order_from(int m) const {
    int c = 0;
    for (std::size_t j = static_cast<std::size_t>(std::max(m, 0)); j < slots_.size(); ++j) c += slots_[j] ? 1 : 0;
    return c;
  }

 private:
  struct Slot {
    RingElement element;
    std::int64_t lead;
  };
  std::shared_ptr<const LocalRing> ring_;
  std::vector<std::optional<Slot>> slots_;
};

}  // namespace

UnitGradeOracle unit_group_presentation(const LocalFieldSpec& spec, int n, std::optional<int> max_m,
                                        const OracleOptions& options) {
  const std::string contract = "unit_group_presentation";
  if (n < 1 || spec.zeta_level < n) {
    throw Error(ErrorKind::PreconditionViolated, contract, "requires 1 <= n <= zeta level");
  }
  auto ring = LocalRing::make(spec);
  const int big_n = spec.precision;
  const std::int64_t cn = spec.c_int(n);
  if (big_n <= cn + n) {
    throw Error(ErrorKind::PreconditionViolated, contract,
                "precision N = " + std::to_string(big_n) + " must exceed c_n + n = " + std::to_string(cn + n));
  }
  const int top = max_m.value_or(static_cast<int>(cn) + 1);
  if (top + 1 >= big_n) {
    throw Error(ErrorKind::PreconditionViolated, contract, "max grade must stay below N - 1");
  }
  const std::int64_t p = spec.p;
  auto size = ring->size();
  const std::uint64_t budget = options.budget.value_or(default_oracle_budget());
  if (!size || *size > budget) {
    throw Error(ErrorKind::BudgetExceeded, contract,
                "ring O_K/pi^" + std::to_string(big_n) + " exceeds the oracle budget " + std::to_string(budget));
  }
  OracleMethod method = options.force.value_or(*size <= options.enumeration_limit ? OracleMethod::Enumeration
                                                                                   : OracleMethod::Presentation);
  const std::uint64_t pn = static_cast<std::uint64_t>(ipow(p, n));

  // log_p #(P ∩ U^m) for m = 1..N, and log_p #(O^x / P), P = p^n-th powers.
  std::vector<int> log_powers_from(big_n + 1, 0);
  int log_unit_quotient = 0;

  if (method == OracleMethod::Enumeration) {
    std::unordered_set<std::uint64_t> seen;
    std::vector<std::uint64_t> level_counts(big_n + 1, 0);
    std::uint64_t units = 0;
    ring->for_each_element(big_n, [&](const RingElement& x) {
      if (!x.is_unit()) return;
      ++units;
      RingElement y = x.pow(pn);
      if (!seen.insert(y.key()).second) return;
      Valuation v = (y - ring->one()).valuation();
      int level = v.is_infinite() ? big_n : static_cast<int>(v.value());
      ++level_counts[static_cast<std::size_t>(level)];
    });
    std::uint64_t acc = 0;
    for (int m = big_n; m >= 1; --m) {
      acc += level_counts[static_cast<std::size_t>(m)];
      log_powers_from[static_cast<std::size_t>(m)] = exact_log(acc, p);
    }
    // units = (p-1) p^{N-1}; #P carries the same prime-to-p factor
    std::uint64_t ratio_num = units;
    std::uint64_t ratio_den = seen.size();
    if (ratio_num % ratio_den != 0) throw std::logic_error("power subgroup index is not integral");
    log_unit_quotient = exact_log(ratio_num / ratio_den, p);
  } else {
    FilteredSubgroup powers(ring, big_n);
    RingElement pi_i = ring->pi();
    for (int i = 1; i < big_n; ++i) {
      powers.insert((ring->one() + pi_i).pow(pn));
      pi_i = pi_i * ring->pi();
    }
    for (int m = 1; m <= big_n; ++m) log_powers_from[static_cast<std::size_t>(m)] = powers.log_order_from(m);
    log_unit_quotient = (big_n - 1) - log_powers_from[1];
  }

  // log_p #U_n^m for m >= 1: #(U^m/U^N) / #(P ∩ U^m).
  auto log_u = [&](int m) -> int {
    if (m == 0) return n + log_unit_quotient;
    return (big_n - m) - log_powers_from[static_cast<std::size_t>(m)];
  };
  UnitGradeOracle out;
  out.method = method;
  out.n = n;
  out.log_total = log_u(0);
  for (int m = 0; m <= top; ++m) out.log_orders.push_back(log_u(m) - log_u(m + 1));
  return out;
}

}  // namespace cyclelab
