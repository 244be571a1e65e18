#include <cstdio>
#include <fstream>
#include <future>
#include <iostream>
#include <iterator>
#include <sstream>

#include "CLI11.hpp"

#include "cyclelab/descriptor.hpp"
#include "cyclelab/error.hpp"
#include "cyclelab/verify.hpp"

using namespace cyclelab;

namespace {

std::string read_input(const std::string& path) {
  if (path.empty() || path == "-") {
    return {std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>()};
  }
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::ParseError, "read_input", "cannot open " + path);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

std::vector<std::int64_t> int_list(const std::string& s, const std::string& flag) {
  std::vector<std::int64_t> out;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stoll(tok, &used));
      if (used != tok.size()) throw std::invalid_argument(tok);
    } catch (const std::exception&) {
      throw Error(ErrorKind::ValidationError, flag, "expected comma-separated integers, got '" + s + "'");
    }
  }
  if (out.empty()) throw Error(ErrorKind::ValidationError, flag, "empty list");
  return out;
}

std::string scalar(const Json& v) {
  if (v.is_string()) return v.get<std::string>();
  return v.dump();
}

bool is_table(const Json& v) {
  if (!v.is_array() || v.empty()) return false;
  for (const auto& x : v)
    if (!x.is_object()) return false;
  return true;
}

void table(std::ostream& os, const Json& rows, const std::string& indent) {
  std::vector<std::string> cols;
  for (const auto& r : rows)
    for (const auto& [k, v] : r.items())
      if (std::find(cols.begin(), cols.end(), k) == cols.end()) cols.push_back(k);
  std::vector<std::size_t> width(cols.size());
  for (std::size_t c = 0; c < cols.size(); ++c) {
    width[c] = cols[c].size();
    for (const auto& r : rows)
      if (r.contains(cols[c])) width[c] = std::max(width[c], scalar(r[cols[c]]).size());
  }
  auto line = [&](auto cell) {
    os << indent;
    for (std::size_t c = 0; c < cols.size(); ++c) {
      std::string s = cell(c);
      os << s << std::string(width[c] - s.size() + 2, ' ');
    }
    os << "\n";
  };
  line([&](std::size_t c) { return cols[c]; });
  line([&](std::size_t c) { return std::string(width[c], '-'); });
  for (const auto& r : rows) line([&](std::size_t c) { return r.contains(cols[c]) ? scalar(r[cols[c]]) : ""; });
}

// Scalars first, then tables, then nested objects.
void pretty(std::ostream& os, const Json& j, const std::string& indent = "") {
  if (!j.is_object()) {
    if (is_table(j)) {
      table(os, j, indent);
    } else {
      os << indent << j.dump() << "\n";
    }
    return;
  }
  for (const auto& [k, v] : j.items()) {
    if (v.is_object() || is_table(v)) continue;
    if (v.is_array() && !v.empty() && v[0].is_array() && v.size() > 1) {
      os << indent << k << ":\n";
      for (const auto& row : v) os << indent << "  " << row.dump() << "\n";
    } else {
      os << indent << k << ": " << scalar(v) << "\n";
    }
  }
  for (const auto& [k, v] : j.items()) {
    if (is_table(v)) {
      os << indent << k << ":\n";
      table(os, v, indent + "  ");
    }
  }
  for (const auto& [k, v] : j.items()) {
    if (v.is_object()) {
      os << indent << "[" << k << "]\n";
      pretty(os, v, indent + "  ");
    }
  }
}

int exit_code(ErrorKind k) {
  switch (k) {
    case ErrorKind::CountMismatch:
    case ErrorKind::ChainInvariant:
      return 3;
    case ErrorKind::NotPrime:
    case ErrorKind::NonIntegralE0:
    case ErrorKind::ZetaRamification:
    case ErrorKind::NonIntegralT:
    case ErrorKind::OutOfRange:
    case ErrorKind::PreconditionViolated:
    case ErrorKind::ParseError:
    case ErrorKind::ValidationError:
    case ErrorKind::BudgetExceeded:
      return 2;
    default:
      return 1;
  }
}

Json error_json(const Error& ex) {
  return {{"error", std::string(to_string(ex.kind()))}, {"contract", ex.contract()}, {"message", ex.what()}};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"cycle map on products of elliptic curves over p-adic fields"};
  app.require_subcommand(1);
  app.fallthrough();
  bool pretty_out = false;
  app.add_flag("--pretty", pretty_out, "aligned tables instead of JSON");

  std::string path;
  auto* ci = app.add_subcommand("cycle-image", "image of the cycle map for a descriptor");
  ci->add_option("descriptor", path, "descriptor file (default: stdin)");
  auto* ki = app.add_subcommand("kummer-image", "Kummer image gradings of both curves");
  ki->add_option("descriptor", path, "descriptor file (default: stdin)");

  std::int64_t p = 2, m = 1;
  int e = 1, f = 1, n = 1, q = 2, r = 1;
  std::optional<std::int64_t> e0, milnor_m;
  std::int64_t window = 8;
  bool oracle = false, strict = false;
  std::string v_a, t_list, eis;

  auto field_opts = [&](CLI::App* s, bool with_f) {
    s->add_option("--p", p, "residue characteristic")->required();
    auto* eo = s->add_option("--e", e, "absolute ramification index");
    s->add_option("--e0", e0, "e/(p-1), instead of --e")->excludes(eo);
    if (with_f) s->add_option("--f", f, "residue degree");
    s->add_option("--n", n, "p^n torsion level");
  };

  auto* gu = app.add_subcommand("grade-units", "graded pieces of K^x/p^n");
  field_opts(gu, true);
  gu->add_flag("--oracle", oracle, "compare with the brute-force unit group");

  auto* ig = app.add_subcommand("isogeny-grades", "graded pieces of a height-n isogeny chain");
  field_opts(ig, false);
  ig->add_option("--v-a", v_a, "valuation of a, as \"a/b\"");
  ig->add_option("--t", t_list, "explicit t_1,...,t_n");
  ig->add_flag("--strict", strict, "chain invariant violations are errors");

  auto* ho = app.add_subcommand("hilbert-orders", "orders of symbols {U^s, U^t}");
  field_opts(ho, false);

  auto* jp = app.add_subcommand("jumps", "ramification jumps of the Kummer extension");
  field_opts(jp, false);
  jp->add_option("--m", m, "index of the unit, p not dividing m");
  jp->add_option("--t", t_list, "explicit chain t_1,...,t_n (default [p^n] on G_m)");
  jp->add_option("--eisenstein", eis, "a_0,a_1 of x^2 + a_1 x + a_0 over Q_2");

  auto* mk = app.add_subcommand("milnor", "graded pieces of k_{q,n}");
  field_opts(mk, false);
  mk->add_option("--q", q, "Milnor degree");
  mk->add_option("--m", milnor_m, "one index (default: all up to c_n + 1)");
  mk->add_option("--r", r, "variables of the Laurent window");
  mk->add_option("--window", window, "exponent window W");

  int only = 0;
  auto* vf = app.add_subcommand("verify", "run the acceptance checks");
  vf->add_option("--only", only, "run a single check by id");

  std::vector<std::string> batch;
  int jobs = 1;
  auto* sw = app.add_subcommand("sweep", "cycle-image over many descriptors, output in input order");
  sw->add_option("descriptors", batch, "files, each holding a descriptor or a list of them")->required();
  sw->add_option("--jobs", jobs, "concurrent runs");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& ex) {
    // bad flags count as input errors
    return app.exit(ex) == 0 ? 0 : 2;
  }

  auto emit = [&](const Json& j) {
    if (pretty_out) {
      pretty(std::cout, j);
    } else {
      std::cout << dump(j) << "\n";
    }
  };

  try {
    if (e0) e = static_cast<int>(*e0 * (p - 1));
    if (*ci) {
      emit(run_cycle_image(parse_descriptor(read_input(path))));
    } else if (*ki) {
      emit(run_kummer_image(parse_descriptor(read_input(path))));
    } else if (*gu) {
      emit(run_grade_units(p, e, f, n, oracle));
    } else if (*ig) {
      std::optional<Rational> va;
      if (!v_a.empty()) {
        va = Rational::parse(v_a);
        if (!va) throw Error(ErrorKind::ValidationError, "--v-a", "expected a rational \"a/b\", got '" + v_a + "'");
      }
      std::optional<std::vector<std::int64_t>> t;
      if (!t_list.empty()) t = int_list(t_list, "--t");
      emit(run_isogeny_grades(p, e, n, va, t, strict));
    } else if (*ho) {
      emit(run_hilbert_orders(p, e, n));
    } else if (*jp) {
      std::optional<std::vector<std::int64_t>> t, ep;
      if (!t_list.empty()) t = int_list(t_list, "--t");
      if (!eis.empty()) ep = int_list(eis, "--eisenstein");
      emit(run_jumps(p, e, n, m, t, ep));
    } else if (*mk) {
      emit(run_milnor(p, e, n, q, milnor_m, r, window));
    } else if (*vf) {
      std::vector<CheckResult> results;
      if (only) {
        results.push_back(run_check(only));
      } else {
        results = run_acceptance();
      }
      Json rows = Json::array();
      bool all = true;
      for (const auto& c : results) {
        rows.push_back({{"id", c.id},
                        {"name", c.name},
                        {"passed", c.passed},
                        {"detail", c.detail},
                        {"seconds", std::round(c.seconds * 1000) / 1000},
                        {"budget", c.budget}});
        all = all && c.passed;
      }
      emit({{"checks", rows}, {"passed", all}});
      return all ? 0 : 1;
    } else if (*sw) {
      std::vector<Json> inputs;
      for (const auto& file : batch) {
        Json j;
        try {
          j = Json::parse(read_input(file));
        } catch (const Json::parse_error& ex) {
          throw Error(ErrorKind::ParseError, "sweep", file + ": " + ex.what());
        }
        if (j.is_array()) {
          for (auto& x : j) inputs.push_back(x);
        } else {
          inputs.push_back(j);
        }
      }
      auto one = [](const Json& j) -> Json {
        try {
          return run_cycle_image(descriptor_from_json(j));
        } catch (const Error& ex) {
          return error_json(ex);
        }
      };
      std::vector<Json> out(inputs.size());
      const std::size_t step = static_cast<std::size_t>(std::max(1, jobs));
      for (std::size_t lo = 0; lo < inputs.size(); lo += step) {
        std::vector<std::future<Json>> fut;
        for (std::size_t i = lo; i < std::min(inputs.size(), lo + step); ++i)
          fut.push_back(std::async(std::launch::async, one, std::cref(inputs[i])));
        for (std::size_t i = 0; i < fut.size(); ++i) out[lo + i] = fut[i].get();
      }
      emit(Json(out));
    }
  } catch (const Error& ex) {
    std::cerr << "error: " << to_string(ex.kind()) << " [" << ex.contract() << "]: " << ex.what() << "\n";
    return exit_code(ex.kind());
  } catch (const std::exception& ex) {
    std::cerr << "error: " << ex.what() << "\n";
    return 1;
  }
  return 0;
}
