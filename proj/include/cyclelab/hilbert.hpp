#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "cyclelab/graded.hpp"
#include "cyclelab/localfield.hpp"

namespace cyclelab {

/// Level m with (U_n^s, U_n^t)_n = M^m: s + t, plus one when s, t > 0 are
/// both divisible by p.
std::int64_t pairing_level(std::int64_t s, std::int64_t t, std::int64_t p);

/// log_p #M^m for the filtration M^0 = mu_{p^n}, M^m = mu_{p^{n-i}} on
/// c_i < m <= c_{i+1}.
int mu_filtration_exponent(std::int64_t m, const LocalFieldSpec& spec, int n);

/// log_p #(U_n^s, U_n^t)_n.
int symbol_order(std::int64_t s, std::int64_t t, const LocalFieldSpec& spec, int n);

using IndexPair = std::pair<std::int64_t, std::int64_t>;

/// R_i: the pairs landing exactly on grade c_i.
std::vector<IndexPair> r_set(int i, const LocalFieldSpec& spec);

struct AlphaResult {
  /// #{i : (A x B) meets R_i}
  int alpha = 0;
  /// max over A x B of symbol_order; an upper bound for alpha
  int alpha_max = 0;
  /// for every i in 1..n, a pair of A x B in R_i if one exists
  std::vector<std::optional<IndexPair>> r_witness;
  /// a pair realising alpha_max
  std::optional<IndexPair> max_witness;
};

/// Order exponent of the symbol image of two graded supports.
/// Errors: CountMismatch when alpha exceeds alpha_max.
AlphaResult alpha_count(const IndexSet& A, const IndexSet& B, const LocalFieldSpec& spec, int n);

// ---------------------------------------------------------------------------
// 2-adic quadratic Hilbert symbol, used as an oracle.

/// Closed form (-1)^{eps(u)eps(v) + alpha omega(v) + beta omega(u)} for
/// a = 2^alpha u, b = 2^beta v. Requires a, b != 0.
int hilbert_2adic(std::int64_t a, std::int64_t b);

/// Same symbol decided by searching for a primitive solution of
/// z^2 = a x^2 + b y^2 modulo a power of 2 (after reduction to square
/// classes).
int brute_hilbert_2adic(std::int64_t a, std::int64_t b);

/// Representatives of U_1^s in Q_2^x / (Q_2^x)^2.
std::vector<std::int64_t> q2_unit_representatives(std::int64_t s);

/// log_2 of the subgroup of {+-1} generated by symbols of U^s and U^t reps.
int q2_symbol_exponent(std::int64_t s, std::int64_t t);

}  // namespace cyclelab
