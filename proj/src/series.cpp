#include "cyclelab/series.hpp"

#include <algorithm>
#include <limits>
#include <sstream>

#include "cyclelab/error.hpp"

namespace cyclelab {

namespace {

// Digit-level arithmetic on packed coefficients. Everything stays reduced
// modulo p^K; canonical reduction to a pi-precision happens in normalize().
struct Digits {
  const LocalRing& ring;
  int e;
  std::vector<std::int64_t> scratch;

  explicit Digits(const LocalRing& r) : ring(r), e(r.e()), scratch(2 * static_cast<std::size_t>(r.e())) {}

  static bool zero(const std::int64_t* a, int e) {
    for (int i = 0; i < e; ++i) {
      if (a[i] != 0) return false;
    }
    return true;
  }

  void add(std::int64_t* dst, const std::int64_t* a) const {
    for (int i = 0; i < e; ++i) dst[i] = ring.mod(static_cast<__int128>(dst[i]) + a[i]);
  }
  void sub(std::int64_t* dst, const std::int64_t* a) const {
    for (int i = 0; i < e; ++i) dst[i] = ring.mod(static_cast<__int128>(dst[i]) - a[i]);
  }

  // dst += a * b
  void mul_acc(std::int64_t* dst, const std::int64_t* a, const std::int64_t* b) {
    if (e == 1) {
      dst[0] = ring.mod(static_cast<__int128>(dst[0]) + ring.mulmod(a[0], b[0]));
      return;
    }
    std::fill(scratch.begin(), scratch.end(), 0);
    for (int i = 0; i < e; ++i) {
      if (a[i] == 0) continue;
      for (int j = 0; j < e; ++j) {
        if (b[j] == 0) continue;
        scratch[i + j] = ring.mod(static_cast<__int128>(scratch[i + j]) + ring.mulmod(a[i], b[j]));
      }
    }
    const auto& eis = ring.eisenstein_mod();
    for (int k = 2 * e - 2; k >= e; --k) {
      const std::int64_t c = scratch[k];
      if (c == 0) continue;
      scratch[k] = 0;
      for (int j = 0; j < e; ++j) {
        scratch[k - e + j] = ring.mod(static_cast<__int128>(scratch[k - e + j]) - ring.mulmod(c, eis[j]));
      }
    }
    for (int i = 0; i < e; ++i) dst[i] = ring.mod(static_cast<__int128>(dst[i]) + scratch[i]);
  }
};

std::vector<std::int64_t> digit_moduli(const LocalRing& ring, int prec) {
  const int e = ring.e();
  std::vector<std::int64_t> m(e);
  for (int i = 0; i < e; ++i) m[i] = ipow(ring.p(), std::max(0, (prec - i + e - 1) / e));
  return m;
}

void canonicalize_entry(std::int64_t* a, const LocalRing& ring, int prec) {
  const auto mods = digit_moduli(ring, prec);
  for (std::size_t i = 0; i < mods.size(); ++i) a[i] %= mods[i];
}

void canonicalize(std::vector<std::int64_t>& d, const LocalRing& ring, int prec) {
  const auto mods = digit_moduli(ring, prec);
  const std::size_t e = mods.size();
  for (std::size_t k = 0; k < d.size(); ++k) d[k] %= mods[k % e];
}

}  // namespace

// ---------------------------------------------------------------------------
// TruncSeries

TruncSeries::TruncSeries(std::shared_ptr<const LocalRing> ring, int t_precision)
    : ring_(std::move(ring)), m_(t_precision), e_(ring_->e()), pi_prec_(ring_->precision()) {
  if (t_precision < 0) throw std::invalid_argument("negative t_precision");
  d_.assign(static_cast<std::size_t>(m_ + 1) * e_, 0);
}

TruncSeries TruncSeries::from_elements(std::shared_ptr<const LocalRing> ring, const std::vector<RingElement>& coeffs,
                                       int t_precision, bool exact) {
  TruncSeries s(std::move(ring), t_precision);
  s.exact_ = exact && static_cast<int>(coeffs.size()) <= t_precision + 1;
  for (std::size_t k = 0; k < coeffs.size() && static_cast<int>(k) <= t_precision; ++k) {
    s.set_coeff(static_cast<int>(k), coeffs[k]);
  }
  return s;
}

TruncSeries TruncSeries::from_ints(std::shared_ptr<const LocalRing> ring, const std::vector<std::int64_t>& coeffs,
                                   int t_precision, bool exact) {
  std::vector<RingElement> el;
  for (auto c : coeffs) el.push_back(ring->from_int(c));
  return from_elements(std::move(ring), el, t_precision, exact);
}

TruncSeries TruncSeries::identity(std::shared_ptr<const LocalRing> ring, int t_precision) {
  TruncSeries s(ring, t_precision);
  if (t_precision >= 1) s.set_coeff(1, ring->one());
  return s;
}

void TruncSeries::normalize() { canonicalize(d_, *ring_, pi_prec_); }

int TruncSeries::degree() const {
  for (int k = m_; k >= 0; --k) {
    if (!Digits::zero(raw(k), e_)) return k;
  }
  return -1;
}

RingElement TruncSeries::coeff(int k) const {
  if (k < 0 || k > m_) throw std::out_of_range("series coefficient beyond t_precision");
  return ring_->element(std::vector<std::int64_t>(raw(k), raw(k) + e_), pi_prec_);
}

void TruncSeries::set_coeff(int k, const RingElement& c) {
  if (k < 0 || k > m_) throw std::out_of_range("series coefficient beyond t_precision");
  const auto& a = c.coeffs();
  std::copy(a.begin(), a.end(), raw(k));
  if (c.precision() < pi_prec_) {
    pi_prec_ = c.precision();
    normalize();
  } else {
    canonicalize_entry(raw(k), *ring_, pi_prec_);
  }
}

TruncSeries TruncSeries::operator+(const TruncSeries& o) const {
  TruncSeries r(ring_, std::min(m_, o.m_));
  r.pi_prec_ = std::min(pi_prec_, o.pi_prec_);
  Digits dg(*ring_);
  for (int k = 0; k <= r.m_; ++k) {
    std::copy(raw(k), raw(k) + e_, r.raw(k));
    dg.add(r.raw(k), o.raw(k));
  }
  r.exact_ = exact_ && o.exact_ && degree() <= r.m_ && o.degree() <= r.m_;
  r.normalize();
  return r;
}

TruncSeries TruncSeries::operator-() const {
  TruncSeries r(ring_, m_);
  r.pi_prec_ = pi_prec_;
  r.exact_ = exact_;
  Digits dg(*ring_);
  for (int k = 0; k <= m_; ++k) dg.sub(r.raw(k), raw(k));
  r.normalize();
  return r;
}

TruncSeries TruncSeries::operator-(const TruncSeries& o) const { return *this + (-o); }

TruncSeries TruncSeries::operator*(const TruncSeries& o) const {
  const int m = std::min(m_, o.m_);
  TruncSeries r(ring_, m);
  r.pi_prec_ = std::min(pi_prec_, o.pi_prec_);
  Digits dg(*ring_);
  for (int i = 0; i <= m; ++i) {
    if (Digits::zero(raw(i), e_)) continue;
    for (int j = 0; i + j <= m; ++j) {
      if (Digits::zero(o.raw(j), e_)) continue;
      dg.mul_acc(r.raw(i + j), raw(i), o.raw(j));
    }
  }
  const int da = degree(), db = o.degree();
  r.exact_ = exact_ && o.exact_ && da <= m && db <= m && da + db <= m;
  r.normalize();
  return r;
}

TruncSeries TruncSeries::scaled(const RingElement& c) const {
  TruncSeries r(ring_, m_);
  r.pi_prec_ = std::min(pi_prec_, c.precision());
  r.exact_ = exact_;
  Digits dg(*ring_);
  for (int k = 0; k <= m_; ++k) dg.mul_acc(r.raw(k), raw(k), c.coeffs().data());
  r.normalize();
  return r;
}

TruncSeries TruncSeries::pow(int k) const {
  if (k < 0) throw std::invalid_argument("negative series power");
  TruncSeries result(ring_, m_);
  result.set_coeff(0, ring_->one());
  result.pi_prec_ = pi_prec_;
  TruncSeries base = *this;
  while (k > 0) {
    if (k & 1) result = result * base;
    k >>= 1;
    if (k) base = base * base;
  }
  return result;
}

TruncSeries TruncSeries::truncated(int t_precision) const {
  const int m = std::min(m_, t_precision);
  TruncSeries r(ring_, m);
  r.pi_prec_ = pi_prec_;
  std::copy(d_.begin(), d_.begin() + static_cast<std::ptrdiff_t>((m + 1) * e_), r.d_.begin());
  r.exact_ = exact_ && degree() <= m;
  return r;
}

TruncSeries TruncSeries::with_pi_precision(int prec) const {
  TruncSeries r = *this;
  r.pi_prec_ = std::min(pi_prec_, prec);
  r.normalize();
  return r;
}

TruncSeries TruncSeries::shifted(int k) const {
  TruncSeries r(ring_, m_);
  r.pi_prec_ = pi_prec_;
  for (int i = 0; i + k <= m_; ++i) std::copy(raw(i), raw(i) + e_, r.raw(i + k));
  r.exact_ = exact_ && degree() + k <= m_;
  return r;
}

RingElement TruncSeries::evaluate(const RingElement& x) const {
  Valuation v = x.valuation();
  if (v < Valuation(1)) throw Error(ErrorKind::PreconditionViolated, "series evaluation", "argument must lie in m_K");
  RingElement acc = coeff(m_);
  for (int k = m_ - 1; k >= 0; --k) acc = acc * x + coeff(k);
  int prec = pi_prec_;
  if (!exact_ && !v.is_infinite()) {
    prec = static_cast<int>(std::min<std::int64_t>(prec, v.value() * (m_ + 1)));
  }
  return acc.with_precision(prec);
}

std::vector<std::int64_t> TruncSeries::reduce_mod_m() const {
  std::vector<std::int64_t> r(m_ + 1);
  for (int k = 0; k <= m_; ++k) r[k] = pi_prec_ >= 1 ? raw(k)[0] % ring_->p() : 0;
  return r;
}

bool TruncSeries::equals(const TruncSeries& o) const {
  const int m = std::min(m_, o.m_);
  for (int k = 0; k <= m; ++k) {
    if (!coeff(k).equals(o.coeff(k))) return false;
  }
  return true;
}

std::string TruncSeries::str() const {
  std::ostringstream os;
  bool first = true;
  for (int k = 0; k <= m_; ++k) {
    if (Digits::zero(raw(k), e_)) continue;
    if (!first) os << " + ";
    first = false;
    os << "(" << coeff(k).str() << ")*T^" << k;
  }
  if (first) os << "0";
  os << " + O(T^" << m_ + 1 << ")";
  return os.str();
}

TruncSeries compose(const TruncSeries& f, const TruncSeries& g) {
  if (g.has_constant_term()) {
    throw Error(ErrorKind::ConstantTermPresent, "compose", "inner series has a nonzero constant term");
  }
  const int m = std::min(f.t_precision(), g.t_precision());
  TruncSeries inner = g.truncated(m);
  TruncSeries acc(f.ring(), m);
  acc.set_coeff(0, f.coeff(m));
  for (int k = m - 1; k >= 0; --k) {
    acc = acc * inner;
    TruncSeries c(f.ring(), m);
    c.set_coeff(0, f.coeff(k));
    acc = acc + c;
  }
  TruncSeries out = acc.with_pi_precision(std::min(f.pi_precision(), g.pi_precision()));
  // exactness: polynomial f of degree df composed with g of degree dg
  const int df = f.degree(), dg = g.degree();
  const bool exact = f.exact() && g.exact() && df >= 0 && dg >= 0 && df * dg <= m;
  out.set_exact(exact);
  return out;
}

// ---------------------------------------------------------------------------
// BiSeries

BiSeries::BiSeries(std::shared_ptr<const LocalRing> ring, int t_precision)
    : ring_(std::move(ring)), m_(t_precision), e_(ring_->e()), pi_prec_(ring_->precision()) {
  if (t_precision < 0) throw std::invalid_argument("negative t_precision");
  d_.assign(index(0, m_ + 1) * e_, 0);
}

BiSeries BiSeries::X(std::shared_ptr<const LocalRing> ring, int t_precision) {
  BiSeries s(ring, t_precision);
  if (t_precision >= 1) s.set_coeff(1, 0, ring->one());
  return s;
}

BiSeries BiSeries::Y(std::shared_ptr<const LocalRing> ring, int t_precision) {
  BiSeries s(ring, t_precision);
  if (t_precision >= 1) s.set_coeff(0, 1, ring->one());
  return s;
}

BiSeries BiSeries::constant(std::shared_ptr<const LocalRing> ring, int t_precision, std::int64_t c) {
  BiSeries s(ring, t_precision);
  s.set_coeff(0, 0, ring->from_int(c));
  return s;
}

void BiSeries::normalize() { canonicalize(d_, *ring_, pi_prec_); }

int BiSeries::total_degree() const {
  for (int d = m_; d >= 0; --d) {
    for (int j = 0; j <= d; ++j) {
      if (!Digits::zero(raw(d - j, j), e_)) return d;
    }
  }
  return -1;
}

RingElement BiSeries::coeff(int i, int j) const {
  if (i < 0 || j < 0 || i + j > m_) throw std::out_of_range("coefficient beyond total degree");
  return ring_->element(std::vector<std::int64_t>(raw(i, j), raw(i, j) + e_), pi_prec_);
}

void BiSeries::set_coeff(int i, int j, const RingElement& c) {
  if (i < 0 || j < 0 || i + j > m_) throw std::out_of_range("coefficient beyond total degree");
  std::copy(c.coeffs().begin(), c.coeffs().end(), raw(i, j));
  if (c.precision() < pi_prec_) {
    pi_prec_ = c.precision();
    normalize();
  } else {
    canonicalize_entry(raw(i, j), *ring_, pi_prec_);
  }
}

BiSeries BiSeries::operator+(const BiSeries& o) const {
  BiSeries r(ring_, std::min(m_, o.m_));
  r.pi_prec_ = std::min(pi_prec_, o.pi_prec_);
  Digits dg(*ring_);
  for (int d = 0; d <= r.m_; ++d) {
    for (int j = 0; j <= d; ++j) {
      std::copy(raw(d - j, j), raw(d - j, j) + e_, r.raw(d - j, j));
      dg.add(r.raw(d - j, j), o.raw(d - j, j));
    }
  }
  r.exact_ = exact_ && o.exact_ && total_degree() <= r.m_ && o.total_degree() <= r.m_;
  r.normalize();
  return r;
}

BiSeries BiSeries::operator-() const {
  BiSeries r(ring_, m_);
  r.pi_prec_ = pi_prec_;
  r.exact_ = exact_;
  Digits dg(*ring_);
  for (std::size_t k = 0; k < d_.size(); k += e_) dg.sub(r.d_.data() + k, d_.data() + k);
  r.normalize();
  return r;
}

BiSeries BiSeries::operator-(const BiSeries& o) const { return *this + (-o); }

BiSeries BiSeries::operator*(const BiSeries& o) const {
  const int m = std::min(m_, o.m_);
  BiSeries r(ring_, m);
  r.pi_prec_ = std::min(pi_prec_, o.pi_prec_);
  Digits dg(*ring_);
  // list nonzero entries of the right factor once
  std::vector<std::pair<int, int>> nz;
  for (int d = 0; d <= m; ++d) {
    for (int l = 0; l <= d; ++l) {
      if (!Digits::zero(o.raw(d - l, l), e_)) nz.emplace_back(d - l, l);
    }
  }
  for (int d = 0; d <= m; ++d) {
    for (int j = 0; j <= d; ++j) {
      const int i = d - j;
      const std::int64_t* a = raw(i, j);
      if (Digits::zero(a, e_)) continue;
      for (auto [k, l] : nz) {
        if (d + k + l > m) break;  // nz is sorted by total degree
        dg.mul_acc(r.raw(i + k, j + l), a, o.raw(k, l));
      }
    }
  }
  const int da = total_degree(), db = o.total_degree();
  r.exact_ = exact_ && o.exact_ && da <= m && db <= m && da + db <= m;
  r.normalize();
  return r;
}

BiSeries BiSeries::scaled(const RingElement& c) const {
  BiSeries r(ring_, m_);
  r.pi_prec_ = std::min(pi_prec_, c.precision());
  r.exact_ = exact_;
  Digits dg(*ring_);
  for (std::size_t k = 0; k < d_.size(); k += e_) dg.mul_acc(r.d_.data() + k, d_.data() + k, c.coeffs().data());
  r.normalize();
  return r;
}

BiSeries BiSeries::scaled(std::int64_t c) const { return scaled(ring_->from_int(c)); }

BiSeries BiSeries::inverse() const {
  RingElement c0 = coeff(0, 0);
  if (!c0.is_unit()) throw Error(ErrorKind::NonUnitInverse, "series inverse", "constant term is not a unit");
  RingElement u = c0.inverse();
  RingElement neg_u = -u;
  BiSeries g(ring_, m_);
  g.pi_prec_ = pi_prec_;
  Digits dg(*ring_);
  std::copy(u.coeffs().begin(), u.coeffs().end(), g.raw(0, 0));
  std::vector<std::int64_t> acc(e_);
  for (int d = 1; d <= m_; ++d) {
    for (int b = 0; b <= d; ++b) {
      const int a = d - b;
      std::fill(acc.begin(), acc.end(), 0);
      for (int i = 0; i <= a; ++i) {
        for (int j = 0; j <= b; ++j) {
          if (i == 0 && j == 0) continue;
          const std::int64_t* f = raw(i, j);
          if (Digits::zero(f, e_)) continue;
          dg.mul_acc(acc.data(), f, g.raw(a - i, b - j));
        }
      }
      dg.mul_acc(g.raw(a, b), acc.data(), neg_u.coeffs().data());
    }
  }
  g.exact_ = false;
  g.normalize();
  return g;
}

BiSeries BiSeries::swapped() const {
  BiSeries r(ring_, m_);
  r.pi_prec_ = pi_prec_;
  r.exact_ = exact_;
  for (int d = 0; d <= m_; ++d) {
    for (int j = 0; j <= d; ++j) std::copy(raw(d - j, j), raw(d - j, j) + e_, r.raw(j, d - j));
  }
  return r;
}

BiSeries BiSeries::truncated(int t_precision) const {
  const int m = std::min(m_, t_precision);
  BiSeries r(ring_, m);
  r.pi_prec_ = pi_prec_;
  std::copy(d_.begin(), d_.begin() + static_cast<std::ptrdiff_t>(r.d_.size()), r.d_.begin());
  r.exact_ = exact_ && total_degree() <= m;
  return r;
}

BiSeries BiSeries::with_pi_precision(int prec) const {
  BiSeries r = *this;
  r.pi_prec_ = std::min(pi_prec_, prec);
  r.normalize();
  return r;
}

TruncSeries BiSeries::substitute(const TruncSeries& f, const TruncSeries& g) const {
  if (f.has_constant_term() || g.has_constant_term()) {
    throw Error(ErrorKind::ConstantTermPresent, "substitute", "substituted series must vanish at 0");
  }
  const int m = std::min({m_, f.t_precision(), g.t_precision()});
  const TruncSeries ft = f.truncated(m), gt = g.truncated(m);
  std::vector<TruncSeries> gp;
  gp.reserve(m + 1);
  gp.push_back(TruncSeries(ring_, m));
  gp[0].set_coeff(0, ring_->one());
  for (int j = 1; j <= m; ++j) gp.push_back(gp.back() * gt);
  Digits dg(*ring_);
  // h_i = sum_j F_ij g^j, then Horner in f
  TruncSeries acc(ring_, m);
  for (int i = m; i >= 0; --i) {
    TruncSeries h(ring_, m);
    for (int j = 0; i + j <= m; ++j) {
      const std::int64_t* c = raw(i, j);
      if (Digits::zero(c, e_)) continue;
      for (int k = j; k <= m; ++k) dg.mul_acc(h.raw(k), c, gp[j].raw(k));
    }
    acc = (i == m) ? h : acc * ft + h;
  }
  acc = acc.with_pi_precision(std::min({pi_prec_, f.pi_precision(), g.pi_precision()}));
  const int dF = total_degree();
  const int dfg = std::max(f.degree(), g.degree());
  const bool exact = exact_ && f.exact() && g.exact() && dF >= 0 && dF * std::max(dfg, 0) <= m;
  acc.set_exact(exact);
  return acc;
}

BiSeries BiSeries::apply_outer(const TruncSeries& f) const {
  if (f.has_constant_term()) throw Error(ErrorKind::ConstantTermPresent, "apply_outer", "outer series has constant term");
  if (!coeff(0, 0).is_zero()) {
    throw Error(ErrorKind::ConstantTermPresent, "apply_outer", "inner series has constant term");
  }
  const int m = std::min(m_, f.t_precision());
  BiSeries inner = truncated(m);
  BiSeries acc(ring_, m);
  acc.set_coeff(0, 0, f.coeff(m));
  for (int k = m - 1; k >= 0; --k) {
    acc = acc * inner;
    BiSeries c(ring_, m);
    c.set_coeff(0, 0, f.coeff(k));
    acc = acc + c;
  }
  acc = acc.with_pi_precision(std::min(pi_prec_, f.pi_precision()));
  acc.exact_ = exact_ && f.exact() && total_degree() * std::max(f.degree(), 0) <= m;
  return acc;
}

BiSeries BiSeries::apply_inner(const TruncSeries& f) const {
  if (f.has_constant_term()) throw Error(ErrorKind::ConstantTermPresent, "apply_inner", "series has constant term");
  const int m = std::min(m_, f.t_precision());
  std::vector<TruncSeries> pw;
  pw.push_back(TruncSeries(ring_, m));
  pw[0].set_coeff(0, ring_->one());
  const TruncSeries ft = f.truncated(m);
  for (int i = 1; i <= m; ++i) pw.push_back(pw.back() * ft);
  BiSeries r(ring_, m);
  r.pi_prec_ = std::min(pi_prec_, f.pi_precision());
  Digits dg(*ring_);
  std::vector<std::int64_t> tmp(e_);
  for (int d = 0; d <= m; ++d) {
    for (int j = 0; j <= d; ++j) {
      const int i = d - j;
      const std::int64_t* c = raw(i, j);
      if (Digits::zero(c, e_)) continue;
      // pw[i] starts at degree >= i since f(0) = 0
      for (int a = i; a <= m; ++a) {
        if (Digits::zero(pw[i].raw(a), e_)) continue;
        std::fill(tmp.begin(), tmp.end(), 0);
        dg.mul_acc(tmp.data(), c, pw[i].raw(a));
        for (int b = j; a + b <= m; ++b) {
          if (Digits::zero(pw[j].raw(b), e_)) continue;
          dg.mul_acc(r.raw(a, b), tmp.data(), pw[j].raw(b));
        }
      }
    }
  }
  r.exact_ = exact_ && f.exact() && total_degree() * std::max(f.degree(), 0) <= m;
  r.normalize();
  return r;
}

TruncSeries BiSeries::at_second(const RingElement& x) const {
  Valuation v = x.valuation();
  if (v < Valuation(1)) throw Error(ErrorKind::PreconditionViolated, "at_second", "argument must lie in m_K");
  int m = m_;
  int prec = pi_prec_;
  if (!exact_) {
    // coefficient of T^i misses terms x^j with j > M - i
    m = m_ / 2;
    if (!v.is_infinite()) prec = static_cast<int>(std::min<std::int64_t>(prec, v.value() * (m_ - m + 1)));
  }
  std::vector<RingElement> xp{ring_->one()};
  for (int j = 1; j <= m_; ++j) xp.push_back(xp.back() * x);
  std::vector<RingElement> coeffs;
  for (int i = 0; i <= m; ++i) {
    RingElement s = ring_->zero();
    for (int j = 0; i + j <= m_; ++j) {
      if (Digits::zero(raw(i, j), e_)) continue;
      s += coeff(i, j) * xp[j];
    }
    coeffs.push_back(s.with_precision(prec));
  }
  return TruncSeries::from_elements(ring_, coeffs, m, exact_);
}

RingElement BiSeries::evaluate(const RingElement& x, const RingElement& y) const {
  Valuation vx = x.valuation(), vy = y.valuation();
  if (vx < Valuation(1) || vy < Valuation(1)) {
    throw Error(ErrorKind::PreconditionViolated, "evaluate", "arguments must lie in m_K");
  }
  std::vector<RingElement> xp{ring_->one()}, yp{ring_->one()};
  for (int j = 1; j <= m_; ++j) {
    xp.push_back(xp.back() * x);
    yp.push_back(yp.back() * y);
  }
  RingElement s = ring_->zero();
  for (int d = 0; d <= m_; ++d) {
    for (int j = 0; j <= d; ++j) {
      if (Digits::zero(raw(d - j, j), e_)) continue;
      s += coeff(d - j, j) * xp[d - j] * yp[j];
    }
  }
  int prec = pi_prec_;
  if (!exact_) {
    Valuation vmin = std::min(vx, vy);
    if (!vmin.is_infinite()) prec = static_cast<int>(std::min<std::int64_t>(prec, vmin.value() * (m_ + 1)));
  }
  return s.with_precision(prec);
}

bool BiSeries::equals(const BiSeries& o) const {
  const int m = std::min(m_, o.m_);
  for (int d = 0; d <= m; ++d) {
    for (int j = 0; j <= d; ++j) {
      if (!coeff(d - j, j).equals(o.coeff(d - j, j))) return false;
    }
  }
  return true;
}

std::string BiSeries::str() const {
  std::ostringstream os;
  bool first = true;
  for (int d = 0; d <= m_; ++d) {
    for (int j = 0; j <= d; ++j) {
      if (Digits::zero(raw(d - j, j), e_)) continue;
      if (!first) os << " + ";
      first = false;
      os << "(" << coeff(d - j, j).str() << ")*X^" << d - j << "*Y^" << j;
    }
  }
  if (first) os << "0";
  return os.str();
}

// ---------------------------------------------------------------------------

BiSeries solve_undetermined(const TruncSeries& psi, const BiSeries& F, int degree) {
  const std::string contract = "solve_undetermined";
  if (psi.has_constant_term()) throw Error(ErrorKind::ConstantTermPresent, contract, "psi(0) != 0");
  const int m = std::min({degree, psi.t_precision(), F.t_precision()});
  auto ring = psi.ring();
  const RingElement a1 = psi.D();
  const Valuation vt = a1.valuation();
  if (vt.is_infinite()) throw Error(ErrorKind::PrecisionExhausted, contract, "D(psi) vanishes to precision");
  const int t = static_cast<int>(vt.value());
  const RingElement unit_inv = a1.divide_by_pi(t).inverse();

  const BiSeries rhs = F.truncated(m).apply_outer(psi.truncated(m));

  // pw[i][a] = coefficient of T^a in psi^i
  std::vector<std::vector<RingElement>> pw(m + 1);
  TruncSeries power(ring, m);
  power.set_coeff(0, ring->one());
  for (int i = 0; i <= m; ++i) {
    for (int a = 0; a <= m; ++a) pw[i].push_back(power.coeff(a));
    power = power * psi.truncated(m);
  }

  std::vector<std::vector<RingElement>> g(m + 1, std::vector<RingElement>(m + 1));
  std::vector<std::vector<bool>> known(m + 1, std::vector<bool>(m + 1, false));
  g[0][0] = ring->zero();
  known[0][0] = true;
  int min_prec = ring->precision();
  for (int d = 1; d <= m; ++d) {
    if (ring->precision() - d * t < 1) {
      throw Error(ErrorKind::PrecisionExhausted, contract,
                  "degree " + std::to_string(d) + " needs pi-precision above " + std::to_string(d * t) + ", have " +
                      std::to_string(ring->precision()));
    }
    RingElement scale = unit_inv.pow(static_cast<std::uint64_t>(d));
    for (int b = 0; b <= d; ++b) {
      const int a = d - b;
      RingElement lower = ring->zero();
      for (int i = 0; i <= a; ++i) {
        for (int j = 0; j <= b; ++j) {
          if ((i == 0 && j == 0) || i + j >= d || !known[i][j]) continue;
          if (g[i][j].is_zero() && g[i][j].precision() >= ring->precision()) continue;
          lower += g[i][j] * pw[i][a] * pw[j][b];
        }
      }
      RingElement num = rhs.coeff(a, b) - lower;
      RingElement q;
      try {
        q = num.divide_by_pi(d * t) * scale;
      } catch (const Error& err) {
        if (err.kind() == ErrorKind::NonIntegral) {
          throw Error(ErrorKind::NonIntegralSolution, contract,
                      "coefficient of X^" + std::to_string(a) + " Y^" + std::to_string(b) +
                          " is not integral: the kernel is not a subgroup");
        }
        throw;
      }
      g[a][b] = q;
      known[a][b] = true;
      min_prec = std::min(min_prec, q.precision());
    }
  }
  BiSeries G(ring, m);
  for (int d = 0; d <= m; ++d) {
    for (int b = 0; b <= d; ++b) G.set_coeff(d - b, b, g[d - b][b].with_precision(min_prec));
  }
  G = G.with_pi_precision(min_prec);
  G.set_exact(false);
  return G;
}

}  // namespace cyclelab
