#pragma once

#include <optional>
#include <string>

#include "json.hpp"

#include "cyclelab/cyclemap.hpp"
#include "cyclelab/localfield.hpp"

namespace cyclelab {

using Json = nlohmann::json;

/// JSON experiment description:
///   {"p": 5, "n": 2, "field": {"e": 600, "f": 1},
///    "curve_E": {"type": "supersingular", "v_a": "500"},
///    "curve_E2": {"type": "split", "tate_flag": false},
///    "options": {"strict": false, "oracle": false, "window": 8}}
/// "field" may give "e0" instead of "e"; supersingular curves give "v_a"
/// (a rational string or integer) or "t" (a list).
struct ExperimentDescriptor {
  std::int64_t p = 2;
  int n = 1;
  int e = 1;
  int f = 1;
  ReductionType curve_E;
  ReductionType curve_E2;
  bool strict = false;
  bool oracle = false;
  int window = 8;

  LocalFieldSpec spec() const;
  Json to_json() const;
  friend bool operator==(const ExperimentDescriptor&, const ExperimentDescriptor&) = default;
};

/// Errors: ParseError (with line:column), ValidationError (names the field
/// and the violated invariant).
ExperimentDescriptor parse_descriptor(const std::string& text);
ExperimentDescriptor descriptor_from_json(const Json& j);

Json reduction_to_json(const ReductionType& r);
Json chain_to_json(const IsogenyChain& c);
Json index_set_to_json(const IndexSet& s);
Json kummer_image_to_json(const KummerImageGrading& k);
Json alpha_to_json(const AlphaResult& a);
Json cycle_report_to_json(const CycleImageReport& r);

/// Full cycle-image report for a descriptor.
Json run_cycle_image(const ExperimentDescriptor& d);
/// Kummer images of both curves with the Mattuck comparison.
Json run_kummer_image(const ExperimentDescriptor& d);

/// Closed-form grading of K^x/p^n, plus the brute-force oracle when asked
/// (needs a concrete model: e = 1 or e = p^{n-1}(p-1) with f = 1).
Json run_grade_units(std::int64_t p, int e, int f, int n, bool oracle);
/// gr of a chain given by t or by v_a.
Json run_isogeny_grades(std::int64_t p, int e, int n, const std::optional<Rational>& v_a,
                        const std::optional<std::vector<std::int64_t>>& t, bool strict);
/// symbol_order matrix for 0 <= s, t <= c_1 + 1 (with the 2-adic oracle
/// when K = Q_2, n = 1).
Json run_hilbert_orders(std::int64_t p, int e, int n);
/// Herbrand data of a chain (default: [p^n] on the multiplicative group).
Json run_jumps(std::int64_t p, int e, int n, std::int64_t m, const std::optional<std::vector<std::int64_t>>& t,
               const std::optional<std::vector<std::int64_t>>& eisenstein);
/// gr^m k_{q,n} for one m, or for every m in [1, c_n + 1] when m is absent.
Json run_milnor(std::int64_t p, int e, int n, int q, std::optional<std::int64_t> m, int r, std::int64_t window);

/// Deterministic text: sorted keys, two-space indent.
std::string dump(const Json& j);

}  // namespace cyclelab
