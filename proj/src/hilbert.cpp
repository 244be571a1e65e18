#include "cyclelab/hilbert.hpp"

#include <array>
#include <mutex>

#include "cyclelab/error.hpp"

namespace cyclelab {

std::int64_t pairing_level(std::int64_t s, std::int64_t t, std::int64_t p) {
  if (s < 0 || t < 0) throw Error(ErrorKind::PreconditionViolated, "pairing_level", "s, t must be >= 0");
  if (s > 0 && t > 0 && s % p == 0 && t % p == 0) return s + t + 1;
  return s + t;
}

int mu_filtration_exponent(std::int64_t m, const LocalFieldSpec& spec, int n) {
  if (m <= 0) return n;
  for (int i = 0; i < n; ++i) {
    if (m <= spec.c_int(i + 1)) return n - i;
  }
  return 0;
}

int symbol_order(std::int64_t s, std::int64_t t, const LocalFieldSpec& spec, int n) {
  return mu_filtration_exponent(pairing_level(s, t, spec.p), spec, n);
}

std::vector<IndexPair> r_set(int i, const LocalFieldSpec& spec) {
  if (i < 1) throw Error(ErrorKind::PreconditionViolated, "r_set", "i must be >= 1");
  const std::int64_t c = spec.c_int(i);
  std::vector<IndexPair> out;
  for (std::int64_t s = 1; s < c; ++s) {
    if (s % spec.p != 0) out.emplace_back(s, c - s);
  }
  out.emplace_back(0, c);
  out.emplace_back(c, 0);
  return out;
}

AlphaResult alpha_count(const IndexSet& A, const IndexSet& B, const LocalFieldSpec& spec, int n) {
  AlphaResult out;
  out.r_witness.assign(static_cast<std::size_t>(n), std::nullopt);
  for (auto s : A.elems) {
    for (auto t : B.elems) {
      const int o = symbol_order(s, t, spec, n);
      if (!out.max_witness || o > out.alpha_max) {
        out.alpha_max = o;
        out.max_witness = IndexPair{s, t};
      }
      // a pair lands on grade c_i exactly when its level is c_i; since p | c_i
      // this is the same as membership in R_i
      const std::int64_t lv = pairing_level(s, t, spec.p);
      for (int i = 1; i <= n; ++i) {
        auto& w = out.r_witness[static_cast<std::size_t>(i - 1)];
        if (!w && lv == spec.c_int(i)) w = IndexPair{s, t};
      }
    }
  }
  for (const auto& w : out.r_witness) out.alpha += w ? 1 : 0;
  if (out.alpha > out.alpha_max) {
    throw Error(ErrorKind::CountMismatch, "alpha_count",
                "grade count " + std::to_string(out.alpha) + " exceeds minimal-level bound " +
                    std::to_string(out.alpha_max));
  }
  return out;
}

namespace {

struct TwoAdic {
  int v;
  std::int64_t u8;  // unit part mod 8
};

TwoAdic split2(std::int64_t a) {
  if (a == 0) throw Error(ErrorKind::PreconditionViolated, "hilbert_2adic", "arguments must be nonzero");
  int v = 0;
  while (a % 2 == 0) {
    a /= 2;
    ++v;
  }
  return {v, ((a % 8) + 8) % 8};
}

int eps(std::int64_t u8) { return static_cast<int>(((u8 - 1) / 2) % 2); }
int omega(std::int64_t u8) { return static_cast<int>(((u8 * u8 - 1) / 8) % 2); }

constexpr int kSearchBits = 6;

// square class index: (v mod 2) * 4 + (u8 - 1) / 2
int class_index(const TwoAdic& x) { return (x.v % 2) * 4 + static_cast<int>((x.u8 - 1) / 2); }

std::int64_t class_value(int idx) { return (idx >= 4 ? 2 : 1) * (2 * (idx % 4) + 1); }

bool has_primitive_solution(std::int64_t a, std::int64_t b) {
  const std::int64_t mod = std::int64_t{1} << kSearchBits;
  auto r = [mod](std::int64_t x) { return ((x % mod) + mod) % mod; };
  for (std::int64_t x = 0; x < mod; ++x) {
    for (std::int64_t y = 0; y < mod; ++y) {
      const std::int64_t rhs = r(a * x * x + b * y * y);
      for (std::int64_t z = 0; z < mod; ++z) {
        if (x % 2 == 0 && y % 2 == 0 && z % 2 == 0) continue;
        if (r(z * z) == rhs) return true;
      }
    }
  }
  return false;
}

}  // namespace

int hilbert_2adic(std::int64_t a, std::int64_t b) {
  const TwoAdic x = split2(a), y = split2(b);
  const int e = eps(x.u8) * eps(y.u8) + x.v * omega(y.u8) + y.v * omega(x.u8);
  return e % 2 == 0 ? 1 : -1;
}

int brute_hilbert_2adic(std::int64_t a, std::int64_t b) {
  static std::array<std::array<int, 8>, 8> table{};
  static std::once_flag once;
  std::call_once(once, [] {
    for (int i = 0; i < 8; ++i) {
      for (int j = 0; j < 8; ++j) table[i][j] = has_primitive_solution(class_value(i), class_value(j)) ? 1 : -1;
    }
  });
  return table[class_index(split2(a))][class_index(split2(b))];
}

std::vector<std::int64_t> q2_unit_representatives(std::int64_t s) {
  if (s < 0) throw Error(ErrorKind::PreconditionViolated, "q2_unit_representatives", "s must be >= 0");
  if (s == 0) return {1, 3, 5, 7, 2, 6, 10, 14};
  if (s == 1) return {1, 3, 5, 7};
  if (s == 2) return {1, 5};
  return {1};
}

int q2_symbol_exponent(std::int64_t s, std::int64_t t) {
  for (auto x : q2_unit_representatives(s)) {
    for (auto y : q2_unit_representatives(t)) {
      if (brute_hilbert_2adic(x, y) == -1) return 1;
    }
  }
  return 0;
}

}  // namespace cyclelab
