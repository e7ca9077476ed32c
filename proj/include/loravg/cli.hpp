#pragma once

// Command-line driver. Exit codes: 0 success with all contracts passing,
// 1 a contract failed (the report is still written), 2 usage or input error.

#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <iterator>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "loravg/averaging.hpp"
#include "loravg/compactness.hpp"
#include "loravg/error.hpp"
#include "loravg/io.hpp"
#include "loravg/norms.hpp"
#include "loravg/rearrange.hpp"
#include "loravg/space.hpp"
#include "loravg/svg.hpp"

namespace loravg::cli {

inline constexpr int kOk = 0;
inline constexpr int kContractFailed = 1;
inline constexpr int kUsageError = 2;

/// Input problem that maps to exit code 2.
class usage_error : public error {
public:
  using error::error;
};

/// FNV-1a 64-bit digest, hex encoded.
inline std::string digest(const std::string& bytes) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw usage_error("cannot read \"" + path + "\"");
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

inline json parse_json(const std::string& text, const std::string& path) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i + 1 < e.byte && i < text.size(); ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    throw usage_error("malformed JSON in \"" + path + "\" at line " + std::to_string(line) + ", column " +
                      std::to_string(col) + ": " + e.what());
  }
}

inline double parse_extended(const std::string& s, const char* name) {
  if (s == "inf" || s == "infinity" || s == "Inf" || s == "INF") return kInf;
  try {
    std::size_t used = 0;
    const double v = std::stod(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw usage_error(std::string("--") + name + " expects a number or \"inf\", got \"" + s + "\"");
  }
}

inline Variant parse_variant(const std::string& s) {
  if (s == "plain") return Variant::plain;
  if (s == "double-star") return Variant::double_star;
  throw usage_error("--variant must be plain or double-star, got \"" + s + "\"");
}

/// Options shared by the subcommands; each subcommand registers the subset it uses.
struct Options {
  std::string space_path;
  std::optional<std::size_t> lattice;
  std::string fn_path;
  std::string out_path;
  std::string p = "2", q = "2", variant = "plain";
  double r = 1.0;
  std::optional<std::uint64_t> seed;
  bool skip_validation = false;

  // subcommand specific
  std::string plot_path, plot_distribution_path;
  std::string lemma;
  std::optional<double> t;
  std::optional<std::size_t> x, y;
  std::size_t k = 5;
  std::string family;
  double epsilon = 0.3;
  std::size_t n = 200;
  std::string svg_path;
  std::optional<double> approx_r;
};

struct Context {
  std::ostream& out;
  std::ostream& err;
  std::vector<std::string> argv;
  json inputs = json::object();
};

inline NormSpec spec_of(const Options& o) {
  NormSpec s{parse_extended(o.p, "p"), parse_extended(o.q, "q"), parse_variant(o.variant)};
  s.validate();
  return s;
}

inline MetricMeasureSpace load_space(const Options& o, Context& ctx, std::optional<std::size_t> fallback_atoms = {}) {
  if (o.lattice) {
    ctx.inputs["space"] = "lattice:" + std::to_string(*o.lattice);
    return MetricMeasureSpace::lattice(*o.lattice);
  }
  if (o.space_path.empty()) {
    if (fallback_atoms && *fallback_atoms > 0) {
      ctx.inputs["space"] = "lattice:" + std::to_string(*fallback_atoms - 1);
      return MetricMeasureSpace::lattice(*fallback_atoms - 1);
    }
    throw usage_error("a space is required: pass --space FILE or --lattice L");
  }
  const std::string text = read_file(o.space_path);
  ctx.inputs["space"] = digest(text);
  BuildOptions opts;
  opts.skip_validation = o.skip_validation;
  return space_from_json(parse_json(text, o.space_path), opts);
}

inline FunctionOnSpace load_function(const Options& o, Context& ctx) {
  const std::string text = read_file(o.fn_path);
  ctx.inputs["fn"] = digest(text);
  return function_from_json(parse_json(text, o.fn_path));
}

/// i.i.d. uniform values in [-1, 1].
inline FunctionOnSpace random_function(std::size_t atoms, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  FunctionOnSpace f(atoms, 0.0);
  for (auto& v : f.values) v = u(rng);
  return f;
}

/// --fn if given, otherwise a seeded random function; no seed is an error.
inline FunctionOnSpace function_or_random(const Options& o, Context& ctx, const MetricMeasureSpace& space) {
  if (!o.fn_path.empty()) return load_function(o, ctx);
  if (!o.seed) throw usage_error("randomized run needs --seed (or pass --fn)");
  ctx.inputs["fn"] = "random:seed=" + std::to_string(*o.seed);
  return random_function(space.size(), *o.seed);
}

inline void emit(const Options& o, Context& ctx, const std::string& text) {
  if (o.out_path.empty())
    ctx.out << text;
  else
    write_atomic(o.out_path, text);
}

inline void emit_json(const Options& o, Context& ctx, const json& j) { emit(o, ctx, j.dump(2) + "\n"); }

inline json check_entry(const std::string& name, const json& constants, double lhs, double rhs, bool pass) {
  return {{"name", name}, {"constants", constants}, {"lhs", lhs}, {"rhs", rhs}, {"margin", rhs - lhs}, {"pass", pass}};
}

inline json run_report(const Context& ctx, const std::string& command) {
  return {{"command", command}, {"argv", ctx.argv}, {"inputs", ctx.inputs}};
}

// ---------------------------------------------------------------------------

inline int cmd_build_space(const Options& o, Context& ctx) {
  const auto space = load_space(o, ctx);
  emit_json(o, ctx, space_to_json(space));
  return kOk;
}

inline int cmd_norm(const Options& o, Context& ctx) {
  const auto f = load_function(o, ctx);
  const auto space = load_space(o, ctx, f.size());
  const auto spec = spec_of(o);
  emit_json(o, ctx, {{"value", lorentz_norm(space, f, spec)}, {"normable", spec.normable()}});
  return kOk;
}

inline int cmd_rearrange(const Options& o, Context& ctx) {
  const auto f = load_function(o, ctx);
  const auto space = load_space(o, ctx, f.size());
  const auto fstar = rearrangement(space, f);
  const auto mu = distribution_function(space, f);
  const MaximalProfile prof(fstar);
  json j = {{"distribution", step_to_json(mu)},
            {"rearrangement", step_to_json(fstar)},
            {"maximal_profile",
             {{"breakpoints", std::vector<double>(prof.breakpoints().begin(), prof.breakpoints().end())},
              {"node_values", std::vector<double>(prof.node_values().begin(), prof.node_values().end())},
              {"slopes", std::vector<double>(prof.slopes().begin(), prof.slopes().end())}}}};
  if (!o.plot_path.empty()) emit_step_svg(fstar, o.plot_path, "t", "f*(t)");
  if (!o.plot_distribution_path.empty()) emit_step_svg(mu, o.plot_distribution_path, "t", "mu_f(t)");
  emit_json(o, ctx, j);
  return kOk;
}

inline int cmd_avg(const Options& o, Context& ctx) {
  const auto f = load_function(o, ctx);
  const auto space = load_space(o, ctx, f.size());
  emit_json(o, ctx, function_to_json(average(space, f, o.r)));
  return kOk;
}

inline int cmd_verify(const Options& o, Context& ctx) {
  const auto space = load_space(o, ctx);
  const auto f = function_or_random(o, ctx, space);
  check_bound(space, f);
  json rep = run_report(ctx, "verify");
  rep["lemma"] = o.lemma;
  json checks = json::array();
  bool pass = true;
  json constant = nullptr;
  double worst = 0.0;

  if (o.lemma == "distribution") {
    const auto r = o.t ? verify_distribution_inequality(space, f, o.r, *o.t) : verify_distribution_sweep(space, f, o.r);
    const json k = {{"gamma1", r.constant.gamma1}, {"gamma2", r.constant.gamma2}, {"gamma3", r.constant.gamma3},
                    {"c", r.constant.c}, {"t", nullptr}};
    for (const auto& pt : r.points) {
      json kk = k;
      kk["t"] = pt.t;
      checks.push_back(check_entry("distribution", kk, pt.lhs, pt.rhs, distribution_point_holds(pt)));
    }
    constant = r.constant.c;
    worst = r.worst_ratio;
    pass = r.pass;
  } else if (o.lemma == "rearrange") {
    const auto r = verify_rearrangement_bound(space, f, o.r);
    checks.push_back(check_entry("rearrangement", {{"c", r.c}, {"points", r.points_checked}}, r.max_ratio, r.c, r.pass));
    constant = r.c;
    worst = r.max_ratio;
    pass = r.pass;
  } else if (o.lemma == "operator-bound") {
    const auto spec = spec_of(o);
    const auto r = verify_operator_bound(space, f, o.r, spec);
    checks.push_back(check_entry("operator-bound", {{"c", r.c}, {"factor", r.factor}}, r.lhs, r.rhs, r.pass));
    constant = r.c;
    worst = r.rhs > 0 ? r.lhs / r.rhs : 0.0;
    pass = r.pass;
  } else if (o.lemma == "equicontinuity") {
    const auto spec = spec_of(o);
    const double fnorm = lorentz_norm(space, f, spec);
    const auto avg = average(space, f, o.r);
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    if (o.x && o.y) {
      space.check_atom(*o.x);
      space.check_atom(*o.y);
      pairs.emplace_back(*o.x, *o.y);
    } else {
      for (std::size_t a = 0; a < space.size(); ++a)
        for (std::size_t b = a + 1; b < space.size(); ++b) pairs.emplace_back(a, b);
    }
    for (const auto& [a, b] : pairs) {
      const auto m = equicontinuity_modulus(space, a, b, o.r, spec);
      const double lhs = std::abs(avg[a] - avg[b]);
      const double rhs = m.bound * fnorm;
      const bool ok = lhs <= rhs * (1.0 + 1e-12) + 1e-15;
      json k = {{"x", a}, {"y", b}, {"modulus_bound", m.bound}, {"exact_modulus", nullptr}};
      if (m.exact) {
        k["exact_modulus"] = *m.exact;
        const bool exact_ok = *m.exact <= m.bound * (1.0 + 1e-12);
        checks.push_back(check_entry("exact-modulus", k, *m.exact, m.bound, exact_ok));
        pass = pass && exact_ok;
      }
      checks.push_back(check_entry("equicontinuity", k, lhs, rhs, ok));
      if (rhs > 0) worst = std::max(worst, lhs / rhs);
      pass = pass && ok;
    }
  } else {
    throw usage_error("--lemma must be one of distribution, rearrange, operator-bound, equicontinuity");
  }
  rep["inputs"] = ctx.inputs;
  rep["constant_c"] = constant;
  rep["worst_ratio"] = worst;
  rep["checks"] = checks;
  rep["pass"] = pass;
  emit_json(o, ctx, rep);
  return pass ? kOk : kContractFailed;
}

inline int cmd_witness(const Options& o, Context& ctx) {
  const auto space = load_space(o, ctx);
  const auto spec = spec_of(o);
  const auto w = witness_sequence(space, o.r, o.k, spec);
  json rep = run_report(ctx, "witness");
  rep["centers"] = w.centers;
  rep["bounded_regime"] = w.bounded_regime;
  rep["c_lower"] = w.c_lower;
  rep["min_distance"] = w.min_distance ? json(*w.min_distance) : json(nullptr);
  rep["distances"] = w.distances;
  rep["witness_norms"] = w.witness_norms;
  rep["norm_cap"] = w.norm_cap;
  rep["supports_disjoint"] = w.supports_disjoint;
  rep["pass"] = w.pass;
  emit_json(o, ctx, rep);
  return w.pass ? kOk : kContractFailed;
}

/// "lattice:L" or "lattice:start:stop:step".
inline std::vector<LabeledSpace> parse_family(const std::string& text) {
  std::vector<std::string> parts;
  std::stringstream ss(text);
  for (std::string item; std::getline(ss, item, ':');) parts.push_back(item);
  if (parts.empty() || parts[0] != "lattice" || (parts.size() != 2 && parts.size() != 4))
    throw usage_error("--family expects lattice:L or lattice:start:stop:step, got \"" + text + "\"");
  std::vector<long long> nums;
  for (std::size_t i = 1; i < parts.size(); ++i) {
    try {
      std::size_t used = 0;
      nums.push_back(std::stoll(parts[i], &used));
      if (used != parts[i].size()) throw std::invalid_argument(parts[i]);
    } catch (const std::exception&) {
      throw usage_error("--family: \"" + parts[i] + "\" is not an integer");
    }
  }
  const long long start = nums[0];
  const long long stop = nums.size() == 3 ? nums[1] : start;
  const long long step = nums.size() == 3 ? nums[2] : 1;
  if (start < 0 || stop < start || step <= 0) throw usage_error("--family: need 0 <= start <= stop and step > 0");
  std::vector<LabeledSpace> fam;
  for (long long L = start; L <= stop; L += step)
    fam.push_back({static_cast<double>(L), MetricMeasureSpace::lattice(static_cast<std::size_t>(L))});
  return fam;
}

inline std::string probe_csv(const std::vector<ProbeRow>& rows) {
  std::string s = "L,k,witness_min,c_lower,witness_k\n";
  char buf[64];
  for (const auto& r : rows) {
    std::snprintf(buf, sizeof buf, "%.17g", r.label);
    s += buf;
    s += "," + std::to_string(r.k) + ",";
    if (r.witness_min) {
      std::snprintf(buf, sizeof buf, "%.17g", *r.witness_min);
      s += buf;
    }
    std::snprintf(buf, sizeof buf, ",%.17g,", r.c_lower);
    s += buf;
    s += std::to_string(r.witness_k) + "\n";
  }
  return s;
}

inline int cmd_probe(const Options& o, Context& ctx) {
  if (!o.seed) throw usage_error("probe is randomized and needs --seed");
  if (o.family.empty()) throw usage_error("probe needs --family");
  const auto spec = spec_of(o);
  const auto fam = parse_family(o.family);
  const auto rows = compactness_probe(fam, o.r, spec, o.epsilon, o.n, *o.seed);
  emit(o, ctx, probe_csv(rows));
  if (!o.svg_path.empty()) {
    Series k{"covering number k", "steelblue", {}}, wk{"separated witness images", "firebrick", {}};
    for (const auto& r : rows) {
      k.points.emplace_back(r.label, static_cast<double>(r.k));
      wk.points.emplace_back(r.label, static_cast<double>(r.witness_k));
    }
    write_atomic(o.svg_path, line_chart_svg({k, wk}, "L", "count"));
  }
  return kOk;
}

inline int cmd_approx(const Options& o, Context& ctx) {
  const auto f = load_function(o, ctx);
  const auto space = load_space(o, ctx, f.size());
  check_bound(space, f);
  const auto spec = spec_of(o);
  const FunctionOnSpace g = o.approx_r ? average(space, f, *o.approx_r) : f;
  const auto a = simple_approximation(space, g, o.epsilon, spec);
  json balls = json::array();
  for (std::size_t i = 0; i < a.balls.size(); ++i)
    balls.push_back({{"center", a.balls[i].center}, {"radius", a.balls[i].radius}, {"coefficient", a.coefficients[i]}});
  json rep = run_report(ctx, "approx");
  rep["epsilon"] = o.epsilon;
  rep["balls"] = balls;
  rep["approximation"] = a.approximation.values;
  rep["oscillation_tolerance"] = a.oscillation_tolerance;
  rep["remainder_norm"] = a.remainder_norm;
  rep["error"] = a.error;
  emit_json(o, ctx, rep);
  return kOk;
}

// ---------------------------------------------------------------------------

inline int dispatch(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  const auto start = std::chrono::steady_clock::now();
  Options o;
  CLI::App app{"loravg: averaging operators, rearrangements and Lorentz norms on finite metric measure spaces"};
  app.require_subcommand(1);

  auto add_space = [&](CLI::App* sc) {
    sc->add_option("--space", o.space_path, "space JSON file");
    sc->add_option("--lattice", o.lattice, "use lattice(L) instead of --space");
    sc->add_flag("--skip-validation", o.skip_validation, "skip the metric axiom check for matrix inputs");
  };
  auto add_fn = [&](CLI::App* sc, bool required) {
    auto* opt = sc->add_option("--fn", o.fn_path, "function JSON file {\"values\": [...]}");
    if (required) opt->required();
  };
  auto add_spec = [&](CLI::App* sc) {
    sc->add_option("--p", o.p, "Lorentz exponent p (number or inf)");
    sc->add_option("--q", o.q, "Lorentz exponent q (number or inf)");
    sc->add_option("--variant", o.variant, "plain | double-star");
  };
  auto add_out = [&](CLI::App* sc) { sc->add_option("--out", o.out_path, "write output here instead of stdout"); };

  auto* build = app.add_subcommand("build-space", "validate a space and print its canonical matrix form");
  add_space(build);
  add_out(build);

  auto* norm = app.add_subcommand("norm", "Lorentz norm of a function");
  add_space(norm);
  add_fn(norm, true);
  add_spec(norm);
  add_out(norm);

  auto* rearr = app.add_subcommand("rearrange", "distribution function, f* and f**");
  add_space(rearr);
  add_fn(rearr, true);
  rearr->add_option("--plot", o.plot_path, "SVG step plot of f*");
  rearr->add_option("--plot-distribution", o.plot_distribution_path, "SVG step plot of mu_f");
  add_out(rearr);

  auto* avg = app.add_subcommand("avg", "apply the averaging operator A_r");
  add_space(avg);
  add_fn(avg, true);
  avg->add_option("--r", o.r, "radius")->required();
  add_out(avg);

  auto* verify = app.add_subcommand("verify", "check an estimate for A_r on one function");
  add_space(verify);
  add_fn(verify, false);
  add_spec(verify);
  verify->add_option("--lemma", o.lemma, "distribution | rearrange | operator-bound | equicontinuity")->required();
  verify->add_option("--r", o.r, "radius")->required();
  verify->add_option("--seed", o.seed, "seed for a random f when --fn is absent");
  verify->add_option("--t", o.t, "single threshold for the distribution inequality");
  verify->add_option("--x", o.x, "first atom for equicontinuity");
  verify->add_option("--y", o.y, "second atom for equicontinuity");
  add_out(verify);

  auto* witness = app.add_subcommand("witness", "separated witness sequence for non-compactness");
  add_space(witness);
  add_spec(witness);
  witness->add_option("--r", o.r, "radius")->required();
  witness->add_option("--k", o.k, "number of witnesses");
  add_out(witness);

  auto* probe = app.add_subcommand("probe", "covering numbers and witness separation over a family of lattices");
  probe->add_option("--family", o.family, "lattice:start:stop:step")->required();
  add_spec(probe);
  probe->add_option("--r", o.r, "radius");
  probe->add_option("--epsilon", o.epsilon, "net radius");
  probe->add_option("--n", o.n, "samples per space");
  probe->add_option("--seed", o.seed, "base seed (space i uses seed + i)");
  probe->add_option("--svg", o.svg_path, "line chart of the table");
  add_out(probe);

  auto* approx = app.add_subcommand("approx", "ball-wise simple-function approximation");
  add_space(approx);
  add_fn(approx, true);
  add_spec(approx);
  approx->add_option("--r", o.approx_r, "approximate A_r f instead of f");
  approx->add_option("--epsilon", o.epsilon, "target accuracy")->required();
  add_out(approx);

  Context ctx{out, err, std::vector<std::string>(argv + 1, argv + argc)};
  int code = kOk;
  try {
    app.parse(argc, argv);
    if (*build) code = cmd_build_space(o, ctx);
    else if (*norm) code = cmd_norm(o, ctx);
    else if (*rearr) code = cmd_rearrange(o, ctx);
    else if (*avg) code = cmd_avg(o, ctx);
    else if (*verify) code = cmd_verify(o, ctx);
    else if (*witness) code = cmd_witness(o, ctx);
    else if (*probe) code = cmd_probe(o, ctx);
    else if (*approx) code = cmd_approx(o, ctx);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? kOk : kUsageError;
  } catch (const metric_violation& e) {
    err << "error: " << e.what() << " [witness (" << e.i() << "," << e.j() << "," << e.k() << ")]\n";
    return kUsageError;
  } catch (const error& e) {
    err << "error: " << e.what() << "\n";
    return kUsageError;
  } catch (const json::exception& e) {
    err << "error: unexpected JSON content: " << e.what() << "\n";
    return kUsageError;
  }
  const auto ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  err << "wall time: " << ms << " ms\n";
  return code;
}

} // namespace loravg::cli
