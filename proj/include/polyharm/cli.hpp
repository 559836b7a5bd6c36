#pragma once

#include "polyharm/eigenmap.hpp"
#include "polyharm/json_io.hpp"
#include "polyharm/numeric_oracle.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#ifndef POLYHARM_VERSION
#define POLYHARM_VERSION "1.0.0"
#endif

namespace polyharm {

namespace cli {

inline constexpr int kExitPass = 0;
inline constexpr int kExitFail = 1;
inline constexpr int kExitInvalid = 2;

/// Thrown for out-of-range or inconsistent user input.
class InvalidInput : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct GlobalOptions {
  std::string format = "json";
  std::string output;
  std::uint64_t seed = 42;
  std::optional<double> tolerance;
  std::size_t points = 100;
  double h = 1e-4;
  double r_min = 0.3;
  bool richardson = false;
  bool allow_formal = false;
  bool allow_large = false;
};

struct PairOptions {
  int ell = 1;
  int m = 1;
};

/// Schema shared by every command.
struct RunReport {
  std::string command;
  Json parameters = Json::object();
  bool pass = true;
  Json payload = Json::object();

  void check(const std::string& name, bool ok) {
    payload["checks"][name] = ok;
    pass = pass && ok;
  }
};

inline ConstructionLimits limits_for(const GlobalOptions& g) {
  return g.allow_large ? ConstructionLimits{kMaxDimension, kMaxDimension} : ConstructionLimits{};
}

inline SamplePlan plan_for(const GlobalOptions& g, int m) { return {m, g.points, g.seed, g.r_min}; }

inline FDConfig fd_for(const GlobalOptions& g) { return {g.h, g.richardson}; }

inline void require_map(const PairOptions& p) {
  if (p.ell > p.m) throw InvalidInput("no Nakauchi map exists for ell > m");
}

inline Json pair_json(const PairOptions& p) { return Json{{"ell", p.ell}, {"m", p.m}}; }

inline std::string scalar_text(const Json& v) { return v.is_string() ? v.get<std::string>() : v.dump(); }

/// key: value lines; nested values are printed as compact JSON.
inline void write_text(std::ostream& out, const Json& j, const std::string& prefix = "") {
  for (auto it = j.begin(); it != j.end(); ++it) {
    const std::string key = prefix.empty() ? it.key() : prefix + "." + it.key();
    if (it->is_object())
      write_text(out, *it, key);
    else
      out << key << ": " << scalar_text(*it) << "\n";
  }
}

inline std::string csv_enumeration(const std::vector<AdmissibilityRecord>& records) {
  std::ostringstream out;
  out << "ell,m,solvable,branch,t_minus,t_plus,map_exists\n";
  for (const auto& r : records) {
    std::string t_minus, t_plus;
    if (r.kind == EquationKind::biharmonic) {
      if (!r.roots.empty()) t_minus = r.roots[0].t.to_string();
    } else if (r.roots.size() == 2) {
      t_minus = r.roots[0].t.to_string();
      t_plus = r.roots[1].t.to_string();
    }
    out << r.ell << ',' << r.m << ',' << (r.equation_solvable ? "true" : "false") << ',' << to_string(r.which_branch)
        << ',' << t_minus << ',' << t_plus << ',' << (r.map_exists ? "true" : "false") << '\n';
  }
  return out.str();
}

// ---------------------------------------------------------------------------
// Commands

inline RunReport cmd_construct(const GlobalOptions& g, const PairOptions& p) {
  require_map(p);
  RunReport rep;
  rep.command = "construct";
  rep.parameters = pair_json(p);
  const TensorMap t = construct_nakauchi(p.ell, p.m, limits_for(g));
  rep.payload = to_json(t);
  rep.check("unit_norm", verify_unit_norm(t).pass);
  return rep;
}

inline RunReport cmd_verify_nakauchi(const GlobalOptions& g, const PairOptions& p, const std::string& mode, int k_max) {
  require_map(p);
  RunReport rep;
  rep.command = "verify nakauchi";
  rep.parameters = pair_json(p);
  rep.parameters["mode"] = mode;
  rep.parameters["k_max"] = k_max;
  const TensorMap t = construct_nakauchi(p.ell, p.m, limits_for(g));
  Json reports = Json::array();
  auto add = [&](const ResidualReport& r) {
    reports.push_back(to_json(r));
    rep.check(r.equation, r.pass);
  };
  if (mode == "symbolic") {
    add(verify_unit_norm(t));
    add(verify_energy_density(t));
    add(verify_harmonicity(t));
    add(verify_radial_orthogonality(t));
    for (int k = 1; k <= k_max; ++k) add(verify_iterated_laplacian(t, k));
  } else {
    const double tol = g.tolerance.value_or(1e-5);
    for (int k = 1; k <= k_max; ++k) add(crosscheck_laplacian(t, k, plan_for(g, p.m), fd_for(g), tol));
    add(numeric_tension(t, plan_for(g, p.m), fd_for(g), tol));
  }
  rep.payload["reports"] = reports;
  return rep;
}

inline RunReport cmd_verify_harmonic(const GlobalOptions& g, const PairOptions& p, const std::string& mode,
                                     const std::optional<std::string>& t_text) {
  require_map(p);
  RunReport rep;
  rep.command = "verify harmonic";
  rep.parameters = pair_json(p);
  rep.parameters["mode"] = mode;
  const TensorMap base = construct_nakauchi(p.ell, p.m, limits_for(g));
  if (!t_text) {
    const ResidualReport r =
        mode == "symbolic" ? tension_residual(base)
                           : numeric_tension(base, plan_for(g, p.m), fd_for(g), g.tolerance.value_or(1e-5));
    rep.payload["report"] = to_json(r);
    rep.check("harmonic", r.pass);
    return rep;
  }
  const QuadExt t = parse_quad_ext(*t_text);
  if (t.sign() < 0 || QuadExt(Rational(1)) < t) throw InvalidInput("t must lie in [0, 1]");
  rep.parameters["t"] = t.to_string();
  if (mode == "symbolic") {
    const ResidualReport r = tension_residual(DeformedMap{base, t});
    rep.payload["report"] = to_json(r);
    rep.check("harmonic", r.pass);
  } else {
    const ResidualReport r = numeric_residual(base, t.to_long_double(), ResidualEquation::harmonic, plan_for(g, p.m),
                                              Expectation::vanish, g.tolerance.value_or(1e-9));
    rep.payload["report"] = to_json(r);
    rep.check("harmonic", r.pass);
  }
  return rep;
}

namespace detail {

/// Numeric residual at each target t (must vanish) and at an off-root t (must
/// not vanish).
inline void numeric_root_checks(RunReport& rep, const GlobalOptions& g, const TensorMap& base, ResidualEquation eq,
                                const std::vector<QuadExt>& targets) {
  const double tol = g.tolerance.value_or(1e-9);
  Json reports = Json::array();
  for (const auto& t : targets) {
    ResidualReport r = numeric_residual(base, t.to_long_double(), eq, plan_for(g, base.m), Expectation::vanish, tol);
    Json j = to_json(r);
    j["t"] = to_json(t);
    reports.push_back(j);
    rep.check("vanishes_at_" + t.to_string(), r.pass);
  }
  long double off = 0.9L;
  for (const auto& t : targets)
    if (std::fabs(t.to_long_double() - off) < 0.05L) off = 0.3L;
  const double threshold = 1e-3;
  ResidualReport r = numeric_residual(base, off, eq, plan_for(g, base.m), Expectation::nonvanish, threshold);
  Json j = to_json(r);
  j["t"] = static_cast<double>(off);
  reports.push_back(j);
  rep.check("nonvanishing_off_root", r.pass);
  rep.payload["numeric"] = reports;
}

inline std::vector<QuadExt> admissible_values(const std::vector<DeformationParameter>& roots) {
  std::vector<QuadExt> out;
  for (const auto& r : roots)
    if (r.admissible()) out.push_back(r.t);
  return out;
}

}  // namespace detail

inline RunReport cmd_verify_biharmonic(const GlobalOptions& g, const PairOptions& p, const std::string& mode,
                                       const std::optional<std::string>& t_text) {
  require_map(p);
  RunReport rep;
  rep.command = "verify biharmonic";
  rep.parameters = pair_json(p);
  rep.parameters["mode"] = mode;
  const TensorMap base = construct_nakauchi(p.ell, p.m, limits_for(g));
  const AdmissibilityRecord record = biharmonic_admissible(p.ell, p.m);
  rep.payload["admissibility"] = to_json(record);

  std::vector<QuadExt> targets;
  if (t_text) {
    targets.push_back(parse_quad_ext(*t_text));
    if (!(targets[0].sign() > 0 && targets[0] < QuadExt(Rational(1)))) throw InvalidInput("t must lie in (0, 1)");
    rep.parameters["t"] = targets[0].to_string();
  } else {
    targets = detail::admissible_values(record.roots);
    rep.check("admissible_root_exists", !targets.empty());
  }

  if (mode == "symbolic") {
    const BitensionAnalysis a = analyze_biharmonic(base);
    rep.check("middle_term_vanishes", a.middle_term_vanishes);
    rep.check("residual_factors", a.poly.has_value() && a.full_block_poly.has_value());
    if (a.poly) rep.payload["c_t"] = to_json(*a.poly);
    if (a.full_block_poly) rep.payload["full_block_c_t"] = to_json(*a.full_block_poly);
    if (a.root) {
      rep.payload["root"] = to_json(QuadExt(*a.root));
      if (!record.degenerate) rep.check("root_matches_closed_form", *a.root == biharmonic_t(p.ell, p.m));
    }
    for (const auto& t : targets) {
      rep.check("vanishes_at_" + t.to_string(), block_vanishes_at(a.reduced, t) && vanishes_at(a.full, t));
      rep.check("proper_at_" + t.to_string(), properness_check(base, t));
    }
  } else {
    detail::numeric_root_checks(rep, g, base, ResidualEquation::biharmonic, targets);
  }
  return rep;
}

inline RunReport cmd_verify_triharmonic(const GlobalOptions& g, const PairOptions& p, const std::string& mode,
                                        const std::optional<std::string>& t_text) {
  require_map(p);
  RunReport rep;
  rep.command = "verify triharmonic";
  rep.parameters = pair_json(p);
  rep.parameters["mode"] = mode;
  const TensorMap base = construct_nakauchi(p.ell, p.m, limits_for(g));
  const AdmissibilityRecord record = triharmonic_admissible(p.ell, p.m);
  rep.payload["admissibility"] = to_json(record);

  std::vector<QuadExt> targets;
  if (t_text) {
    targets.push_back(parse_quad_ext(*t_text));
    if (!(targets[0].sign() > 0 && targets[0] < QuadExt(Rational(1)))) throw InvalidInput("t must lie in (0, 1)");
    rep.parameters["t"] = targets[0].to_string();
  } else {
    targets = detail::admissible_values(record.roots);
    rep.check("admissible_root_exists", !targets.empty());
  }

  if (mode == "symbolic") {
    const TritensionAnalysis a = analyze_triharmonic(base);
    rep.payload["term_table"] = to_json(a.table);
    rep.check("term_table_matches", a.table.all_match());
    rep.check("residual_factors", a.poly.has_value());
    if (a.poly) rep.payload["c_t"] = to_json(*a.poly);
    rep.check("proportional_to_constraint", a.proportionality.has_value() && *a.proportionality != 0);
    if (a.proportionality) rep.payload["proportionality_constant"] = a.proportionality->get_str();
    for (const auto& t : targets) {
      rep.check("vanishes_at_" + t.to_string(), block_vanishes_at(a.residual, t));
      rep.check("proper_at_" + t.to_string(), properness_check(base, t));
    }
  } else {
    detail::numeric_root_checks(rep, g, base, ResidualEquation::triharmonic, targets);
  }
  return rep;
}

inline RunReport cmd_solve(const PairOptions& p, EquationKind kind) {
  RunReport rep;
  rep.command = kind == EquationKind::biharmonic ? "solve bih" : "solve tri";
  rep.parameters = pair_json(p);
  if (kind == EquationKind::biharmonic) {
    const AdmissibilityRecord r = biharmonic_admissible(p.ell, p.m);
    rep.payload = to_json(r);
    if (!r.roots.empty()) rep.payload["t"] = to_json(r.roots[0].t);
    return rep;
  }
  const AdmissibilityRecord r = triharmonic_admissible(p.ell, p.m);
  rep.payload = to_json(r);
  rep.payload["constraint"] = to_json(triharmonic_poly(p.ell, p.m));
  if (r.roots.size() == 2) {
    rep.payload["t_minus"] = to_json(r.roots[0].t);
    rep.payload["t_plus"] = to_json(r.roots[1].t);
    const ConstraintPoly c = triharmonic_poly(p.ell, p.m);
    rep.check("roots_satisfy_constraint", c(r.roots[0].t).sign() == 0 && c(r.roots[1].t).sign() == 0);
    const auto closed = triharmonic_roots_closed_form(p.ell, p.m);
    rep.check("closed_form_agrees",
              closed.size() == 2 && closed[0].t == r.roots[0].t && closed[1].t == r.roots[1].t);
  }
  return rep;
}

inline RunReport cmd_enumerate(EquationKind kind, int ell_max, int m_max, bool require_map) {
  RunReport rep;
  rep.command = kind == EquationKind::biharmonic ? "enumerate bih" : "enumerate tri";
  rep.parameters = Json{{"ell_max", ell_max}, {"m_max", m_max}, {"require_map", require_map}};
  const auto records = enumerate_admissible(kind, ell_max, m_max, require_map);
  Json rows = Json::array();
  for (const auto& r : records) rows.push_back(to_json(r));
  rep.payload["records"] = rows;
  if (require_map) {
    const auto gaps = corollary_gaps(records, m_max);
    rep.payload["corollary_gaps"] = gaps;
    rep.check("every_dimension_from_3_has_a_map", gaps.empty());
  }
  return rep;
}

inline RunReport cmd_laplacian(const GlobalOptions& g, const PairOptions& p, int k, const std::string& mode) {
  if (k < 1) throw InvalidInput("k must be at least 1");
  RunReport rep;
  rep.command = "laplacian";
  rep.parameters = pair_json(p);
  rep.parameters["k"] = k;
  rep.parameters["mode"] = mode;
  const LaplacianFormula f = iterated_laplacian_coefficient(p.ell, p.m, k);
  rep.payload["coefficient"] = f.coefficient.get_str();
  rep.payload["radial_exponent"] = f.radial_exponent;
  if (p.ell == 1) {
    const Rational proj = radial_projection_laplacian_coefficient(p.m, k);
    rep.payload["radial_projection_coefficient"] = proj.get_str();
    rep.check("specializes_to_radial_projection", proj == f.coefficient);
  }
  if (p.ell > p.m) {
    if (!g.allow_formal) throw InvalidInput("no Nakauchi map exists for ell > m (pass --allow-formal for the formula only)");
    rep.payload["formal"] = true;
    return rep;
  }
  const TensorMap t = construct_nakauchi(p.ell, p.m, limits_for(g));
  const ResidualReport r = mode == "symbolic"
                               ? verify_iterated_laplacian(t, k)
                               : crosscheck_laplacian(t, k, plan_for(g, p.m), fd_for(g), g.tolerance.value_or(1e-5));
  rep.payload["report"] = to_json(r);
  rep.check(r.equation, r.pass);
  return rep;
}

inline RunReport cmd_polyenergy(int r, std::optional<double> delta, bool critical, std::optional<double> lambda,
                                std::optional<int> m) {
  if (r < 2) throw InvalidInput("r must be at least 2");
  if (delta && critical) throw InvalidInput("pass either --delta or --critical");
  if (lambda.has_value() != m.has_value()) throw InvalidInput("--lambda and --m go together");
  if (lambda && !(*lambda > 0)) throw InvalidInput("lambda must be positive");
  RunReport rep;
  rep.command = "polyenergy";
  rep.parameters = Json{{"r", r}};
  const double dc = critical_delta(r);
  const double d = delta ? *delta : dc;
  if (!(d > 0 && d < std::numbers::pi / 2)) throw InvalidInput("delta must lie in (0, pi/2)");
  rep.parameters["delta"] = delta ? Json(*delta) : Json("critical");
  if (lambda) {
    rep.parameters["lambda"] = *lambda;
    rep.parameters["m"] = *m;
  }
  const auto der = epsilon_r_derivatives(d, r);
  rep.payload["epsilon"] = epsilon_r(d, r);
  rep.payload["d1"] = der.first;
  rep.payload["d2"] = der.second;
  rep.payload["delta_critical"] = dc;
  rep.payload["sin2_delta_critical"] = make_rational(1, r).get_str();
  rep.payload["energy"] = lambda ? Json(r_energy(*lambda, r, d, *m)) : Json(nullptr);
  if (!delta) {
    rep.payload["stable"] = !(der.second < 0);
    rep.check("critical", std::fabs(der.first) < 1e-12);
    rep.check("unstable", der.second < 0);
  } else {
    rep.payload["stable"] = nullptr;
  }
  return rep;
}

}  // namespace cli

/// Entry point for the `polyharm` tool. Writes the report to `out` (or
/// --output) and diagnostics to `err`; returns 0 pass, 1 fail, 2 invalid input.
inline int run_cli(int argc, const char* const* argv, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
  using namespace cli;
  CLI::App app{"Exact verification of polyharmonic maps to spheres", "polyharm"};
  app.require_subcommand(1);
  app.set_help_flag("--help", "print help");
  app.set_version_flag("--version", POLYHARM_VERSION);
  GlobalOptions g;
  std::optional<double> tolerance;
  app.add_option("--format", g.format, "json, csv or text")->check(CLI::IsMember({"json", "csv", "text"}));
  app.add_option("--output", g.output, "write the report to FILE");
  app.add_option("--seed", g.seed, "sampler seed");
  app.add_option("--tolerance", tolerance, "numeric tolerance")->check(CLI::PositiveNumber);
  app.add_option("--points", g.points, "sample points")->check(CLI::Range(std::size_t{1}, std::size_t{1000000}));
  app.add_option("--h", g.h, "relative FD step")->check(CLI::Range(1e-12, 0.1));
  app.add_option("--r-min", g.r_min, "minimum sample radius")->check(CLI::Range(0.0, 0.99));
  app.add_flag("--richardson", g.richardson, "Richardson-extrapolated FD");
  app.add_flag("--allow-formal", g.allow_formal, "closed forms for ell > m");
  app.add_flag("--allow-large", g.allow_large, "lift the construction size guard");
  app.fallthrough();

  PairOptions pair;
  std::string mode = "symbolic";
  std::optional<std::string> t_text;
  int k = 1, k_max = 3;
  auto add_pair = [&](CLI::App* sub) {
    sub->add_option("--ell", pair.ell, "order ell")->required()->check(CLI::Range(1, 1000));
    sub->add_option("--m", pair.m, "dimension m")->required()->check(CLI::Range(1, 1000));
    sub->fallthrough();
  };
  auto add_mode = [&](CLI::App* sub) {
    sub->add_option("--mode", mode, "symbolic or numeric")->check(CLI::IsMember({"symbolic", "numeric"}));
  };

  auto* construct = app.add_subcommand("construct", "build u^(ell) and print its components");
  add_pair(construct);

  auto* verify = app.add_subcommand("verify", "exact or numeric residual checks");
  verify->require_subcommand(1);
  verify->fallthrough();
  auto* v_nak = verify->add_subcommand("nakauchi", "defining identities and iterated Laplacians");
  add_pair(v_nak);
  add_mode(v_nak);
  v_nak->add_option("--k-max", k_max, "largest Laplacian power")->check(CLI::Range(1, 6));
  std::vector<CLI::App*> v_eq;
  for (const char* name : {"harmonic", "biharmonic", "triharmonic"}) {
    auto* sub = verify->add_subcommand(name, std::string(name) + " equation for the (deformed) map");
    add_pair(sub);
    add_mode(sub);
    sub->add_option("--t", t_text, "exact sin^2 of the angle, e.g. 1/2 or 14/15-1/15*sqrt(61)");
    v_eq.push_back(sub);
  }

  auto* solve = app.add_subcommand("solve", "solve the angle constraint");
  solve->require_subcommand(1);
  solve->fallthrough();
  auto* s_bih = solve->add_subcommand("bih", "biharmonic constraint");
  auto* s_tri = solve->add_subcommand("tri", "triharmonic constraint");
  add_pair(s_bih);
  add_pair(s_tri);

  int ell_max = 10, m_max = 30;
  bool no_require_map = false;
  auto* enumerate = app.add_subcommand("enumerate", "classify solvability over a range");
  enumerate->require_subcommand(1);
  enumerate->fallthrough();
  auto* e_bih = enumerate->add_subcommand("bih", "biharmonic table");
  auto* e_tri = enumerate->add_subcommand("tri", "triharmonic table");
  for (auto* sub : {e_bih, e_tri}) {
    sub->add_option("--ell-max", ell_max, "largest ell")->check(CLI::Range(1, 1000));
    sub->add_option("--m-max", m_max, "largest m")->check(CLI::Range(1, 1000));
    sub->add_flag("--no-require-map", no_require_map, "keep pairs with ell > m");
    sub->fallthrough();
  }

  auto* lap = app.add_subcommand("laplacian", "closed-form iterated Laplacian of u^(ell)");
  add_pair(lap);
  add_mode(lap);
  lap->add_option("--k", k, "power of the Laplacian")->check(CLI::Range(1, 8));

  int r_order = 2;
  std::optional<double> delta, lambda;
  std::optional<int> sphere_m;
  bool critical = false;
  auto* energy = app.add_subcommand("polyenergy", "r-energy of a deformed eigenmap");
  energy->add_option("--r", r_order, "energy order")->required();
  energy->add_option("--delta", delta, "deformation angle in radians");
  energy->add_flag("--critical", critical, "use the critical angle (default)");
  energy->add_option("--lambda", lambda, "eigenmap energy density");
  energy->add_option("--m", sphere_m, "domain sphere dimension")->check(CLI::Range(0, 1000));
  energy->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    std::ostringstream help_out, help_err;
    const int code = app.exit(e, help_out, help_err);
    out << help_out.str();
    err << help_err.str();
    return code;
  } catch (const CLI::ParseError& e) {
    std::ostringstream help_out, help_err;
    app.exit(e, help_out, help_err);
    err << help_err.str();
    return kExitInvalid;
  }
  g.tolerance = tolerance;

  RunReport rep;
  std::optional<std::string> csv;
  try {
    if (*construct) {
      rep = cmd_construct(g, pair);
    } else if (*v_nak) {
      rep = cmd_verify_nakauchi(g, pair, mode, k_max);
    } else if (*v_eq[0]) {
      rep = cmd_verify_harmonic(g, pair, mode, t_text);
    } else if (*v_eq[1]) {
      rep = cmd_verify_biharmonic(g, pair, mode, t_text);
    } else if (*v_eq[2]) {
      rep = cmd_verify_triharmonic(g, pair, mode, t_text);
    } else if (*s_bih || *s_tri) {
      rep = cmd_solve(pair, *s_bih ? EquationKind::biharmonic : EquationKind::triharmonic);
    } else if (*e_bih || *e_tri) {
      const EquationKind kind = *e_bih ? EquationKind::biharmonic : EquationKind::triharmonic;
      rep = cmd_enumerate(kind, ell_max, m_max, !no_require_map);
      if (g.format == "csv") csv = csv_enumeration(enumerate_admissible(kind, ell_max, m_max, !no_require_map));
    } else if (*lap) {
      rep = cmd_laplacian(g, pair, k, mode);
    } else if (*energy) {
      rep = cmd_polyenergy(r_order, delta, critical, lambda, sphere_m);
    }
    if (g.format == "csv" && !csv) throw InvalidInput("--format csv is only available for enumerate");
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kExitInvalid;
  } catch (const std::domain_error& e) {
    err << "error: " << e.what() << "\n";
    return kExitInvalid;
  }

  std::string text;
  if (csv) {
    text = *csv;
  } else {
    Json report{{"command", rep.command},
                {"parameters", rep.parameters},
                {"status", rep.pass ? "pass" : "fail"},
                {"payload", rep.payload},
                {"version", POLYHARM_VERSION},
                {"seed", g.seed}};
    if (g.format == "json") {
      text = report.dump(2) + "\n";
    } else {
      std::ostringstream s;
      write_text(s, report);
      text = s.str();
    }
  }
  if (g.output.empty()) {
    out << text;
  } else {
    std::ofstream file(g.output);
    if (!file) {
      err << "error: cannot write " << g.output << "\n";
      return kExitInvalid;
    }
    file << text;
  }
  return rep.pass ? kExitPass : kExitFail;
}

}  // namespace polyharm
