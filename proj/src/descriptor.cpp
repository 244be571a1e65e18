#include "cyclelab/descriptor.hpp"

#include <set>

#include "cyclelab/error.hpp"
#include "cyclelab/formalgroup.hpp"
#include "cyclelab/graded.hpp"
#include "cyclelab/hilbert.hpp"
#include "cyclelab/milnork.hpp"

namespace cyclelab {

namespace {

const std::string kParse = "parse_descriptor";

[[noreturn]] void invalid(const std::string& where, const std::string& what) {
  throw Error(ErrorKind::ValidationError, kParse, where + ": " + what);
}

void only_keys(const Json& j, const std::string& where, std::initializer_list<const char*> allowed) {
  if (!j.is_object()) invalid(where, "expected an object");
  std::set<std::string> ok(allowed.begin(), allowed.end());
  for (const auto& [k, v] : j.items()) {
    if (!ok.count(k)) invalid(where, "unknown key '" + k + "'");
  }
}

std::int64_t get_int(const Json& j, const std::string& key, const std::string& where) {
  if (!j.contains(key)) invalid(where, "missing '" + key + "'");
  const Json& v = j.at(key);
  if (!v.is_number_integer()) invalid(where + "." + key, "expected an integer");
  return v.get<std::int64_t>();
}

bool get_bool(const Json& j, const std::string& key, bool dflt, const std::string& where) {
  if (!j.contains(key)) return dflt;
  if (!j.at(key).is_boolean()) invalid(where + "." + key, "expected true or false");
  return j.at(key).get<bool>();
}

Rational get_rational(const Json& v, const std::string& where) {
  if (v.is_number_integer()) return Rational(v.get<std::int64_t>());
  if (v.is_string()) {
    auto r = Rational::parse(v.get<std::string>());
    if (r) return *r;
  }
  invalid(where, "expected an integer or a rational string \"a/b\"");
}

ReductionType parse_curve(const Json& j, const std::string& where) {
  only_keys(j, where, {"type", "tate_flag", "v_a", "t"});
  if (!j.contains("type") || !j.at("type").is_string()) invalid(where, "missing string 'type'");
  const std::string type = j.at("type").get<std::string>();
  if (type == "split") {
    if (j.contains("v_a") || j.contains("t")) invalid(where, "split curves take no v_a or t");
    return ReductionType::split(get_bool(j, "tate_flag", false, where));
  }
  if (j.contains("tate_flag")) invalid(where, "tate_flag only applies to split curves");
  if (type == "ordinary") {
    if (j.contains("v_a") || j.contains("t")) invalid(where, "ordinary curves take no v_a or t");
    return ReductionType::ordinary();
  }
  if (type == "supersingular") {
    if (j.contains("v_a") == j.contains("t")) invalid(where, "supersingular needs exactly one of v_a, t");
    if (j.contains("v_a")) {
      Rational v = get_rational(j.at("v_a"), where + ".v_a");
      if (!(Rational(0) < v)) invalid(where + ".v_a", "v_a must be positive");
      return ReductionType::supersingular(v);
    }
    const Json& t = j.at("t");
    if (!t.is_array() || t.empty()) invalid(where + ".t", "expected a non-empty list of integers");
    std::vector<std::int64_t> out;
    for (const auto& x : t) {
      if (!x.is_number_integer()) invalid(where + ".t", "expected integers");
      out.push_back(x.get<std::int64_t>());
    }
    return ReductionType::supersingular_chain(std::move(out));
  }
  invalid(where + ".type", "unknown reduction type '" + type + "' (split, ordinary, supersingular)");
}

std::string kind_name(ErrorKind k) { return std::string(to_string(k)); }

Json rationals(const std::vector<Rational>& v) {
  Json a = Json::array();
  for (const auto& r : v) a.push_back(r.str());
  return a;
}

Json pair_or_null(const std::optional<IndexPair>& p) {
  if (!p) return nullptr;
  return Json::array({p->first, p->second});
}

// concrete Eisenstein model for the oracle
std::optional<LocalFieldSpec> concrete_model(std::int64_t p, int e, int f, int n) {
  if (f != 1) return std::nullopt;
  if (e == 1) return fields::rational(p, n);
  std::int64_t pk = 1;
  for (int k = 1; k <= 30; ++k) {
    const std::int64_t ek = pk * (p - 1);
    if (ek == e && k >= n) return fields::cyclotomic(p, k);
    if (ek > e) break;
    pk *= p;
  }
  return std::nullopt;
}

}  // namespace

LocalFieldSpec ExperimentDescriptor::spec() const { return make_field_spec(p, e, f, n, 0); }

Json reduction_to_json(const ReductionType& r) {
  Json j;
  j["type"] = to_string(r.kind);
  if (r.kind == ReductionType::Kind::Split) j["tate_flag"] = r.tate_trivial;
  if (r.v_a) j["v_a"] = r.v_a->str();
  if (r.t) j["t"] = *r.t;
  return j;
}

Json ExperimentDescriptor::to_json() const {
  Json j;
  j["p"] = p;
  j["n"] = n;
  j["field"] = {{"e", e}, {"f", f}};
  j["curve_E"] = reduction_to_json(curve_E);
  j["curve_E2"] = reduction_to_json(curve_E2);
  j["options"] = {{"strict", strict}, {"oracle", oracle}, {"window", window}};
  return j;
}

ExperimentDescriptor descriptor_from_json(const Json& j) {
  only_keys(j, "descriptor", {"p", "n", "field", "curve_E", "curve_E2", "options"});
  ExperimentDescriptor d;
  d.p = get_int(j, "p", "descriptor");
  d.n = static_cast<int>(get_int(j, "n", "descriptor"));
  if (d.n < 1) invalid("n", "must be >= 1");
  if (!j.contains("field")) invalid("descriptor", "missing 'field'");
  const Json& fld = j.at("field");
  only_keys(fld, "field", {"e", "e0", "f"});
  if (fld.contains("e") == fld.contains("e0")) invalid("field", "give exactly one of e, e0");
  if (fld.contains("e")) {
    d.e = static_cast<int>(get_int(fld, "e", "field"));
  } else {
    d.e = static_cast<int>(get_int(fld, "e0", "field") * (d.p - 1));
  }
  d.f = fld.contains("f") ? static_cast<int>(get_int(fld, "f", "field")) : 1;
  if (!j.contains("curve_E")) invalid("descriptor", "missing 'curve_E'");
  if (!j.contains("curve_E2")) invalid("descriptor", "missing 'curve_E2'");
  d.curve_E = parse_curve(j.at("curve_E"), "curve_E");
  d.curve_E2 = parse_curve(j.at("curve_E2"), "curve_E2");
  if (j.contains("options")) {
    const Json& o = j.at("options");
    only_keys(o, "options", {"strict", "oracle", "window"});
    d.strict = get_bool(o, "strict", false, "options");
    d.oracle = get_bool(o, "oracle", false, "options");
    if (o.contains("window")) {
      d.window = static_cast<int>(get_int(o, "window", "options"));
      if (d.window < 1) invalid("options.window", "must be >= 1");
    }
  }

  LocalFieldSpec spec;
  try {
    spec = d.spec();
  } catch (const Error& ex) {
    invalid("field", kind_name(ex.kind()) + ": " + ex.what());
  }
  const std::pair<const ReductionType*, const char*> curves[] = {{&d.curve_E, "curve_E"}, {&d.curve_E2, "curve_E2"}};
  for (const auto& [c, name] : curves) {
    if (c->kind != ReductionType::Kind::Supersingular) continue;
    try {
      c->chain(spec, d.n, d.strict);
    } catch (const Error& ex) {
      invalid(name, kind_name(ex.kind()) + ": " + ex.what());
    }
  }
  return d;
}

ExperimentDescriptor parse_descriptor(const std::string& text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const Json::parse_error& ex) {
    // byte offset -> line:column
    std::size_t line = 1, col = 1;
    const std::size_t upto = std::min<std::size_t>(ex.byte == 0 ? 0 : ex.byte - 1, text.size());
    for (std::size_t i = 0; i < upto; ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    throw Error(ErrorKind::ParseError, kParse,
                "line " + std::to_string(line) + ", column " + std::to_string(col) + ": " + ex.what());
  }
  return descriptor_from_json(j);
}

Json chain_to_json(const IsogenyChain& c) {
  Json j;
  j["t"] = c.t();
  std::vector<Rational> cp;
  for (int i = 1; i <= c.n(); ++i) cp.push_back(c.c_phi(i));
  j["c_phi"] = rationals(cp);
  j["dual_t"] = c.dual().t();
  j["log"] = c.log;
  j["warnings"] = c.warnings;
  return j;
}

Json index_set_to_json(const IndexSet& s) {
  Json j;
  j["name"] = s.provenance;
  j["elems"] = s.elems;
  Json iv = Json::array();
  for (auto [lo, hi] : s.intervals()) iv.push_back(Json::array({lo, hi}));
  j["intervals"] = iv;
  j["bound"] = s.bound;
  return j;
}

Json kummer_image_to_json(const KummerImageGrading& k) {
  Json j;
  j["first"] = index_set_to_json(k.first);
  j["second"] = index_set_to_json(k.second);
  if (k.chain) j["chain"] = chain_to_json(*k.chain);
  auto counts = [](const std::map<std::int64_t, GradedPiece>& pieces) {
    Json c = Json::object();
    for (const auto& [m, g] : pieces) {
      const std::string key = g.str();
      c[key] = c.value(key, 0) + 1;
    }
    return c;
  };
  j["first_piece_counts"] = counts(k.first_pieces);
  j["second_piece_counts"] = counts(k.second_pieces);
  return j;
}

Json alpha_to_json(const AlphaResult& a) {
  Json j;
  j["alpha"] = a.alpha;
  j["alpha_max"] = a.alpha_max;
  Json w = Json::array();
  for (const auto& x : a.r_witness) w.push_back(pair_or_null(x));
  j["r_witness"] = w;
  j["max_witness"] = pair_or_null(a.max_witness);
  return j;
}

Json cycle_report_to_json(const CycleImageReport& r) {
  Json j;
  j["group"] = {{"exps", r.group.exps}, {"str", r.group.str()}};
  j["proof_case"] = r.proof_case;
  j["cyclic"] = r.cyclic;
  Json comps = Json::array();
  for (const auto& c : r.components) {
    Json x = alpha_to_json(c.alpha);
    x["label"] = c.label;
    x["witnesses_verified"] = c.witnesses_verified;
    comps.push_back(x);
  }
  j["components"] = comps;
  j["kummer_E"] = kummer_image_to_json(r.image_E);
  j["kummer_E2"] = kummer_image_to_json(r.image_E2);
  j["warnings"] = r.warnings;
  return j;
}

namespace {

Json mattuck_json(const MattuckResult& m) {
  return {{"applicable", m.applicable},
          {"first_sum", m.first_sum},
          {"second_sum", m.second_sum},
          {"expected", m.expected},
          {"ok", m.ok()}};
}

Json derived_json(const LocalFieldSpec& spec, int n) {
  std::vector<Rational> c;
  for (int i = 1; i <= n; ++i) c.push_back(spec.c(i));
  return {{"e0", spec.e0().str()}, {"c", rationals(c)}};
}

}  // namespace

Json run_cycle_image(const ExperimentDescriptor& d) {
  const LocalFieldSpec spec = d.spec();
  const CycleImageReport rep = cycle_image(d.curve_E, d.curve_E2, spec, d.n, d.strict);
  Json j;
  j["inputs"] = d.to_json();
  j["derived"] = derived_json(spec, d.n);
  j["report"] = cycle_report_to_json(rep);
  j["result"] = rep.group.exps;
  j["mattuck"] = {{"E", mattuck_json(mattuck_check(d.curve_E, spec, d.n, rep.image_E))},
                  {"E2", mattuck_json(mattuck_check(d.curve_E2, spec, d.n, rep.image_E2))}};
  if (d.n == 1 && d.curve_E.kind == ReductionType::Kind::Supersingular && d.curve_E.v_a &&
      d.curve_E2.kind == ReductionType::Kind::Supersingular && d.curve_E2.v_a) {
    const PCaseResult pc = supersingular_p_case(*d.curve_E.v_a, *d.curve_E2.v_a, spec);
    j["p_torsion_rule"] = {{"branch", pc.branch},
                           {"a", pc.a.str()},
                           {"a2", pc.a2.str()},
                           {"rule", pc.trichotomy.exps},
                           {"agree", pc.agree},
                           {"note", "a read as min(v_a, pe/(p+1))/(p-1)"}};
  }
  if (d.oracle) j["oracle"] = run_grade_units(d.p, d.e, d.f, d.n, true);
  return j;
}

Json run_kummer_image(const ExperimentDescriptor& d) {
  const LocalFieldSpec spec = d.spec();
  Json j;
  j["inputs"] = d.to_json();
  j["derived"] = derived_json(spec, d.n);
  const std::pair<const ReductionType*, const char*> curves[] = {{&d.curve_E, "E"}, {&d.curve_E2, "E2"}};
  for (const auto& [c, name] : curves) {
    const KummerImageGrading k = kummer_image(*c, spec, d.n, d.strict);
    Json x = kummer_image_to_json(k);
    x["mattuck"] = mattuck_json(mattuck_check(*c, spec, d.n, k));
    j[name] = x;
  }
  return j;
}

Json run_grade_units(std::int64_t p, int e, int f, int n, bool oracle) {
  const LocalFieldSpec spec = make_field_spec(p, e, f, n, 0);
  const std::int64_t cn = spec.c_int(n);
  Json j;
  j["inputs"] = {{"p", p}, {"e", e}, {"f", f}, {"n", n}, {"oracle", oracle}};
  j["derived"] = derived_json(spec, n);
  std::optional<UnitGradeOracle> orc;
  if (oracle) {
    auto model = concrete_model(p, e, f, n);
    if (!model) {
      throw Error(ErrorKind::ValidationError, "grade-units",
                  "the oracle needs f = 1 and e = 1 or e = p^(k-1)(p-1) with k >= n");
    }
    orc = unit_group_presentation(*model, n, static_cast<int>(cn + 2));
    j["oracle_method"] = orc->method == OracleMethod::Enumeration ? "enumeration" : "presentation";
    j["oracle_log_total"] = orc->log_total;
  }
  Json rows = Json::array();
  bool agree = true;
  int total = 0;
  for (std::int64_t m = 0; m <= cn + 2; ++m) {
    const GradedPiece g = units_grade_structure(spec, n, m);
    Json row;
    row["m"] = m;
    row["piece"] = g.str();
    const auto lo = g.log_order(f);
    row["log_order"] = lo ? Json(*lo) : Json(nullptr);
    if (lo) total += *lo;
    if (orc) {
      const int o = orc->log_orders.at(static_cast<std::size_t>(m));
      row["oracle_log_order"] = o;
      row["agree"] = lo && *lo == o;
      agree = agree && lo && *lo == o;
    }
    rows.push_back(row);
  }
  j["rows"] = rows;
  j["log_total"] = total;
  j["expected_log_total"] = n * (e * f + 2);
  if (orc) j["agree"] = agree;
  return j;
}

Json run_isogeny_grades(std::int64_t p, int e, int n, const std::optional<Rational>& v_a,
                        const std::optional<std::vector<std::int64_t>>& t, bool strict) {
  IsogenyChain chain;
  if (t) {
    chain = chain_from_t(p, e, *t, strict);
  } else if (v_a) {
    chain = canonical_chain(*v_a, e, n, p, strict);
  } else {
    throw Error(ErrorKind::ValidationError, "isogeny-grades", "give --t or --v-a");
  }
  const LocalFieldSpec spec = make_field_spec(p, e, 1, chain.n(), 0);
  Json j;
  j["inputs"] = {{"p", p}, {"e", e}, {"n", chain.n()}};
  if (v_a) j["inputs"]["v_a"] = v_a->str();
  j["chain"] = chain_to_json(chain);
  j["derived"] = derived_json(spec, chain.n());
  Json rows = Json::array();
  for (std::int64_t m = 1; m <= chain.c_phi_int(chain.n()); ++m) {
    const GradedPiece g = gr_phi_structure(chain, Rational(m));
    if (g.is_zero()) continue;
    rows.push_back({{"m", m}, {"piece", g.str()}, {"shift", kummer_grade_shift(chain, m, spec, chain.n())}});
  }
  j["rows"] = rows;
  j["image_support"] = index_set_to_json(image_support(chain, spec, chain.n()));
  j["dual_image_support"] = index_set_to_json(image_support(chain.dual(), spec, chain.n()));
  return j;
}

Json run_hilbert_orders(std::int64_t p, int e, int n) {
  const LocalFieldSpec spec = make_field_spec(p, e, 1, n, 0);
  const std::int64_t L = spec.c_int(1) + 1;
  Json j;
  j["inputs"] = {{"p", p}, {"e", e}, {"n", n}};
  j["derived"] = derived_json(spec, n);
  Json mat = Json::array();
  for (std::int64_t s = 0; s <= L; ++s) {
    Json row = Json::array();
    for (std::int64_t t = 0; t <= L; ++t) row.push_back(symbol_order(s, t, spec, n));
    mat.push_back(row);
  }
  j["orders"] = mat;
  Json rs = Json::object();
  for (int i = 1; i <= n; ++i) {
    if (spec.c_int(i) > 40) break;
    Json pairs = Json::array();
    for (auto [s, t] : r_set(i, spec)) pairs.push_back(Json::array({s, t}));
    rs[std::to_string(i)] = pairs;
  }
  j["r_sets"] = rs;
  if (p == 2 && e == 1 && n == 1) {
    Json om = Json::array();
    bool agree = true;
    for (std::int64_t s = 0; s <= L; ++s) {
      Json row = Json::array();
      for (std::int64_t t = 0; t <= L; ++t) {
        const int o = q2_symbol_exponent(s, t);
        row.push_back(o);
        agree = agree && o == symbol_order(s, t, spec, n);
      }
      om.push_back(row);
    }
    j["oracle_orders"] = om;
    j["agree"] = agree;
  }
  return j;
}

Json run_jumps(std::int64_t p, int e, int n, std::int64_t m, const std::optional<std::vector<std::int64_t>>& t,
               const std::optional<std::vector<std::int64_t>>& eisenstein) {
  const IsogenyChain chain = t ? chain_from_t(p, e, *t) : multiplication_chain(p, e, n);
  const HerbrandJumps h = herbrand_jumps(chain, m);
  Json j;
  j["inputs"] = {{"p", p}, {"e", e}, {"m", m}};
  j["chain"] = chain_to_json(chain);
  j["lower"] = rationals(h.lower);
  j["upper"] = rationals(h.upper);
  j["phi_of_lower"] = rationals(h.herbrand_of_lower);
  j["consistent"] = h.herbrand_of_lower == h.upper;
  if (eisenstein) {
    const std::int64_t l = quadratic_lower_jump(*eisenstein);
    j["quadratic_lower_jump"] = l;
    j["matches_first_lower"] = !h.lower.empty() && h.lower.front() == Rational(l);
  }
  return j;
}

Json run_milnor(std::int64_t p, int e, int n, int q, std::optional<std::int64_t> m, int r, std::int64_t window) {
  const LocalFieldSpec spec = make_field_spec(p, e, 1, n, 0);
  Json j;
  j["inputs"] = {{"p", p}, {"e", e}, {"n", n}, {"q", q}, {"r", r}, {"window", window}};
  j["derived"] = derived_json(spec, n);
  std::vector<std::int64_t> ms;
  if (m) {
    ms.push_back(*m);
  } else {
    for (std::int64_t x = 1; x <= spec.c_int(n) + 1; ++x) ms.push_back(x);
  }
  Json rows = Json::array();
  for (auto x : ms) {
    const MilnorGraded g = milnor_graded_structure(x, n, q, spec, LaurentWindow{r, window});
    Json row;
    row["m"] = x;
    row["branch"] = to_string(g.branch);
    row["i"] = g.i;
    row["s"] = g.s;
    row["level"] = g.level;
    row["lambda"] = g.lambda ? Json(*g.lambda) : Json(nullptr);
    row["formula"] = g.formula;
    row["finite_field_log"] = g.finite_field_log ? Json(*g.finite_field_log) : Json(nullptr);
    row["window_dim"] = g.window_dim ? Json(*g.window_dim) : Json(nullptr);
    if (n > 1 && x > spec.c_int(1)) {
      auto [m2, n2] = lemmaA1_shift(x, n, spec);
      const MilnorGraded h = milnor_graded_structure(m2, n2, q, spec, LaurentWindow{r, window});
      row["shift"] = Json::array({m2, n2});
      row["shift_agrees"] = g.same_structure(h) && g.window_dim == h.window_dim;
    }
    rows.push_back(row);
  }
  j["rows"] = rows;
  return j;
}

std::string dump(const Json& j) { return j.dump(2); }

}  // namespace cyclelab
