// Command-line front end: parse JSON inputs, dispatch to the library,
// emit machine-readable JSON reports.
//
// Exit codes: 0 success, 1 computational failure, 2 malformed JSON,
// 3 input validation failure.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "polycanon/polycanon.hpp"

namespace {

using namespace polycanon;

struct flag_set {
  std::string input;
  int trunc = 16;
  double radius = 0.75;
  double outer = 1.0;
  int samples = 1024;
  double tol = 1e-8;
  std::uint64_t seed = 0;
  bool pretty = false;

  void validate() const {
    if (trunc < 0 || trunc > 64) throw validation_error("trunc", "must be in 0..64");
    if (samples < 64 || samples > 65536) throw validation_error("samples", "must be in 64..65536");
    if (!(radius > 0.0) || !(radius < outer)) throw validation_error("radius", "need 0 < radius < outer");
    if (!(tol > 0.0)) throw validation_error("tol", "must be positive");
  }

  disk_spec disk() const { return disk_spec{outer, radius, samples}; }

  ordered_json echo() const {
    ordered_json j;
    j["trunc"] = trunc;
    j["radius"] = radius;
    j["outer"] = outer;
    j["samples"] = samples;
    j["tol"] = tol;
    j["seed"] = seed;
    return j;
  }
};

json load_input(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw validation_error("input", "cannot open file: " + path);
  return json::parse(in);  // parse_error carries the byte position
}

void emit(const ordered_json& j, const flag_set& flags) {
  std::cout << (flags.pretty ? j.dump(2) : j.dump()) << "\n";
}

ordered_json cplx_json(cplx v) { return ordered_json::array({v.real(), v.imag()}); }

root_config config_from_input(const json& in, const flag_set& flags) {
  if (!in.contains("roots")) throw validation_error("roots", "missing");
  try {
    return root_config(roots_from_json(in["roots"]), flags.disk());
  } catch (const std::invalid_argument& e) {
    throw validation_error("roots", e.what());
  }
}

// fixed probe points with |t'| <= 0.05 for the transfer check
std::vector<std::vector<cplx>> probe_points(int dim) {
  std::vector<std::vector<cplx>> pts;
  const std::vector<cplx> bases{{0.05, 0.0}, {0.02, 0.03}, {-0.01, 0.04}};
  for (cplx b : bases) {
    std::vector<cplx> p(static_cast<std::size_t>(dim), cplx{0.0, 0.0});
    for (int i = 0; i < dim; ++i) p[static_cast<std::size_t>(i)] = b / static_cast<double>(i + 1);
    pts.push_back(std::move(p));
  }
  return pts;
}

int run_weierstrass(const flag_set& flags) {
  const json in = load_input(flags.input);
  const multi_series u = series_from_json(in);
  const weierstrass_form form = weierstrass_prepare(u, flags.trunc);
  ordered_json out = weierstrass_to_json(form);
  out["residual"] = weierstrass_residual(u, form).max_abs_coeff();
  out["flags"] = flags.echo();
  emit(out, flags);
  return 0;
}

int run_levinson_decompose(const flag_set& flags) {
  const json in = load_input(flags.input);
  const multi_series u = series_from_json(in);
  const levinson_form form = levinson_decompose(u, flags.trunc);
  ordered_json out = levinson_to_json(form);
  out["residual"] = levinson_residual(u, form).max_abs_coeff();
  out["flags"] = flags.echo();
  emit(out, flags);
  return 0;
}

int run_levinson_verify(const flag_set& flags) {
  const json in = load_input(flags.input);
  const multi_series u = series_from_json(in);
  const levinson_form a = levinson_decompose(u, flags.trunc);
  const levinson_form b = levinson_decompose(u, flags.trunc, {true, flags.seed});
  const match_report mr = uniqueness_check(a, b, flags.tol);

  double transfer_dev = 0.0;
  for (const auto& p : probe_points(u.nvars() - 1)) {
    const uni_series y = transfer_series(a, b, p, flags.trunc);
    transfer_dev = std::max(transfer_dev, max_deviation(y, uni_series::identity(y.trunc())));
  }

  ordered_json out;
  out["k"] = a.k;
  out["v_match"] = mr.v_match;
  out["x_match"] = mr.x_match;
  out["max_dev"] = mr.max_dev;
  out["transfer_dev"] = transfer_dev;
  out["residual"] = levinson_residual(u, a).max_abs_coeff();
  out["residual_permuted"] = levinson_residual(u, b).max_abs_coeff();
  out["flags"] = flags.echo();
  emit(out, flags);
  return 0;
}

int run_fe_residual(const flag_set& flags) {
  const json in = load_input(flags.input);
  const root_config cfg = config_from_input(in, flags);
  if (!in.contains("y")) throw validation_error("y", "missing perturbed series");
  const uni_series y = uni_from_json(in["y"]);
  ordered_json out;
  out["residual"] = functional_residual(y, cfg);
  out["k"] = cfg.k();
  out["rho"] = cfg.rho;
  out["flags"] = flags.echo();
  emit(out, flags);
  return 0;
}

int run_fe_gap(const flag_set& flags) {
  const json in = load_input(flags.input);
  const root_config cfg = config_from_input(in, flags);

  uni_series y(0);
  if (in.contains("y")) {
    y = uni_from_json(in["y"]);
  } else {
    // deterministic perturbation of sampled norm delta/2 from the seed
    const double c = stability_constant(cfg);
    const double quad = std::pow(1.0 + 2.0 / (cfg.disk.working_radius - cfg.rho), cfg.k());
    const double delta = std::min(1.0, cfg.k() * c / quad);
    std::mt19937_64 rng(flags.seed);
    const uni_series f = perturbation_with_norm(rng, flags.trunc, cfg.disk.working_radius,
                                                delta / 2.0, cfg.disk.samples);
    y = uni_series::identity(flags.trunc) + f;
  }

  const gap_report rep = uniqueness_gap(y, cfg);
  ordered_json out;
  out["lhs"] = rep.lhs;
  out["rhs_bound"] = rep.rhs_bound;
  out["rhs_bound_coarse"] = rep.rhs_bound_coarse;
  out["c"] = rep.c;
  out["quad_const"] = rep.quad_const;
  out["delta"] = rep.delta;
  out["perturbation_norm"] = rep.perturbation_norm;
  out["verdict"] = rep.verdict;
  out["flags"] = flags.echo();
  emit(out, flags);
  return 0;
}

int run_fe_check_a(const flag_set& flags) {
  const json in = load_input(flags.input);
  if (!in.contains("P") || !in.contains("Q") || !in.contains("y")) {
    throw validation_error("input", "need P, Q and y");
  }
  const poly p = poly_from_json(in["P"]);
  const poly q = poly_from_json(in["Q"]);
  const uni_series y = uni_from_json(in["y"]);
  const containment_report rep = root_containment_check(p, q, y, flags.disk(), flags.tol);
  ordered_json out;
  out["holds"] = rep.holds;
  out["containment"] = rep.containment;
  out["undecided"] = rep.undecided;
  out["agree"] = rep.agree;
  out["q"] = cplx_json(rep.lead);
  ordered_json mapped = ordered_json::array();
  for (cplx w : rep.mapped_roots) mapped.push_back(cplx_json(w));
  out["mapped_roots"] = std::move(mapped);
  out["premise_residual"] = rep.premise_residual;
  out["factor_residual"] = rep.factor_residual;
  out["flags"] = flags.echo();
  emit(out, flags);
  return 0;
}

int run_fe_operators(const flag_set& flags) {
  const json in = load_input(flags.input);
  const root_config cfg = config_from_input(in, flags);
  const auto alphas = root_power_means(cfg, flags.trunc);
  const auto betas = reciprocal_coeffs(alphas);
  const double c = stability_constant(cfg);
  const double quad = std::pow(1.0 + 2.0 / (cfg.disk.working_radius - cfg.rho), cfg.k());
  ordered_json out;
  ordered_json ja = ordered_json::array(), jb = ordered_json::array();
  for (cplx v : alphas) ja.push_back(cplx_json(v));
  for (cplx v : betas) jb.push_back(cplx_json(v));
  out["alphas"] = std::move(ja);
  out["betas"] = std::move(jb);
  out["c"] = c;
  out["quad_const"] = quad;
  out["delta"] = std::min(1.0, cfg.k() * c / quad);
  out["rho"] = cfg.rho;
  out["flags"] = flags.echo();
  emit(out, flags);
  return 0;
}

int run_mp_exact(const flag_set& flags) {
  const json in = load_input(flags.input);
  const factor_system sys = factor_system_from_json(in);
  const cplx v = exact_coefficient(sys);
  ordered_json out;
  out["exact"] = v.real();
  out["exact_imag"] = v.imag();
  out["flags"] = flags.echo();
  emit(out, flags);
  return 0;
}

int run_mp_estimate(const flag_set& flags) {
  const json in = load_input(flags.input);
  const factor_system sys = factor_system_from_json(in);
  const coefficient_estimate est = estimate_coefficient(sys, 1.0, flags.samples);

  ordered_json out;
  bool have_exact = true;
  for (const uni_series& f : sys.factors) have_exact = have_exact && f.trunc() >= sys.target_power;
  if (have_exact) {
    const double exact = exact_coefficient(sys).real();
    out["exact"] = exact;
    out["rel_err"] = exact != 0.0 ? std::abs(est.estimate / exact - 1.0) : 0.0;
    out["gaussian_rel_err"] = exact != 0.0 ? std::abs(est.gaussian_leading / exact - 1.0) : 0.0;
  } else {
    out["exact"] = nullptr;
    out["rel_err"] = nullptr;
  }
  out["estimate"] = est.estimate;
  out["gaussian"] = est.gaussian_leading;
  out["prefactor"] = est.prefactor;
  out["integral"] = est.integral;
  out["curvature"] = est.curvature;
  out["nodes"] = est.nodes;
  out["x"] = est.cp.x;
  out["residual"] = est.cp.residual;
  out["flags"] = flags.echo();
  emit(out, flags);
  return 0;
}

int run_mp_sweep(const flag_set& flags) {
  const json in = load_input(flags.input);
  const factor_system sys = factor_system_from_json(in);
  const int grid = std::max(5, flags.samples / 64);  // modest direction grid

  ordered_json rows = ordered_json::array();
  double prev_x = 0.0;
  double max_adjacent = 0.0;
  bool first = true;
  for (int g = 0; g < grid; ++g) {
    const double t0 = 0.2 + 0.6 * g / (grid - 1);
    direction dir;
    dir.t0 = t0;
    const double rest = 1.0 - t0;
    double wsum = 0.0;
    for (long long w : sys.weights) wsum += static_cast<double>(w);
    for (long long w : sys.weights) dir.t.push_back(rest * static_cast<double>(w) / wsum);

    ordered_json row;
    row["t0"] = t0;
    try {
      const critical_point cp = find_critical_point(sys, dir, 1.0);
      const minimality_report mr = check_minimality(sys, cp, flags.samples);
      row["x"] = cp.x;
      row["residual"] = cp.residual;
      row["minimal"] = mr.strict;
      row["margin"] = mr.margin;
      if (!first) max_adjacent = std::max(max_adjacent, std::abs(cp.x - prev_x));
      prev_x = cp.x;
      first = false;
    } catch (const std::exception& e) {
      row["error"] = e.what();
    }
    rows.push_back(std::move(row));
  }
  ordered_json out;
  out["rows"] = std::move(rows);
  out["max_adjacent_dev"] = max_adjacent;
  out["flags"] = flags.echo();
  emit(out, flags);
  return 0;
}

int run_gen(const flag_set& flags, const std::string& kind, double coef_re, double coef_im,
            bool as_system, long long weight, long long n0) {
  const cplx coef{coef_re, coef_im};
  uni_series s(0);
  if (kind == "geometric") {
    s = geometric_series(flags.trunc, coef);
  } else if (kind == "exp") {
    s = exp_series(flags.trunc, coef);
  } else if (kind == "binomial") {
    s = binomial_factor(flags.trunc, coef);
  } else {
    throw validation_error("kind", "expected geometric, exp or binomial");
  }
  if (as_system) {
    factor_system sys;
    sys.factors.push_back(s);
    sys.weights.push_back(weight);
    sys.target_power = n0;
    sys.validate();
    emit(factor_system_to_json(sys), flags);
  } else {
    emit(uni_to_json(s), flags);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"polynomial canonical representations and saddle-point coefficient estimates"};
  app.require_subcommand(1);

  flag_set flags;
  std::string gen_kind = "geometric";
  double coef_re = 1.0, coef_im = 0.0;
  bool as_system = false;
  long long gen_weight = 1, gen_n0 = 0;

  auto add_common = [&](CLI::App* cmd, bool needs_input = true) {
    if (needs_input) cmd->add_option("-i,--input", flags.input, "input JSON file")->required();
    cmd->add_option("--trunc", flags.trunc, "truncation order");
    cmd->add_option("--radius", flags.radius, "working radius r");
    cmd->add_option("--outer", flags.outer, "outer radius R");
    cmd->add_option("--samples", flags.samples, "circle sample count");
    cmd->add_option("--tol", flags.tol, "comparison tolerance");
    cmd->add_option("--seed", flags.seed, "random seed");
    cmd->add_flag("--pretty", flags.pretty, "indent the JSON output");
    cmd->add_flag("--json", [](std::int64_t) {}, "compact JSON output (default)");
  };

  auto* weier = app.add_subcommand("weierstrass", "Weierstrass preparation of a germ");
  add_common(weier);
  auto* lev = app.add_subcommand("levinson", "polynomial canonical representation");
  lev->require_subcommand(1);
  auto* lev_dec = lev->add_subcommand("decompose", "compute the representation");
  add_common(lev_dec);
  auto* lev_ver = lev->add_subcommand("verify", "uniqueness regression on two runs");
  add_common(lev_ver);
  auto* fe_res = app.add_subcommand("fe-residual", "functional-equation defect of a series");
  add_common(fe_res);
  auto* fe_gap = app.add_subcommand("fe-gap", "lower-bound certificate for the defect");
  add_common(fe_gap);
  auto* fe_chk = app.add_subcommand("fe-check-a", "root-containment equivalence check");
  add_common(fe_chk);
  auto* fe_ops = app.add_subcommand("fe-operators", "operator coefficient data and constants");
  add_common(fe_ops);
  auto* mp_ex = app.add_subcommand("mp-exact", "exact mixed-power coefficient");
  add_common(mp_ex);
  auto* mp_est = app.add_subcommand("mp-estimate", "saddle-point estimate of the coefficient");
  add_common(mp_est);
  auto* mp_sw = app.add_subcommand("mp-sweep", "critical points over a direction grid");
  add_common(mp_sw);
  auto* gen = app.add_subcommand("gen", "emit a common factor series");
  add_common(gen, false);
  gen->add_option("--kind", gen_kind, "geometric, exp or binomial");
  gen->add_option("--coef-re", coef_re, "factor parameter, real part");
  gen->add_option("--coef-im", coef_im, "factor parameter, imaginary part");
  gen->add_flag("--as-system", as_system, "wrap into a one-factor system");
  gen->add_option("--weight", gen_weight, "factor weight for --as-system");
  gen->add_option("--n0", gen_n0, "target power for --as-system");

  CLI11_PARSE(app, argc, argv);

  try {
    flags.validate();
    if (weier->parsed()) return run_weierstrass(flags);
    if (lev->parsed()) {
      if (lev_dec->parsed()) return run_levinson_decompose(flags);
      if (lev_ver->parsed()) return run_levinson_verify(flags);
    }
    if (fe_res->parsed()) return run_fe_residual(flags);
    if (fe_gap->parsed()) return run_fe_gap(flags);
    if (fe_chk->parsed()) return run_fe_check_a(flags);
    if (fe_ops->parsed()) return run_fe_operators(flags);
    if (mp_ex->parsed()) return run_mp_exact(flags);
    if (mp_est->parsed()) return run_mp_estimate(flags);
    if (mp_sw->parsed()) return run_mp_sweep(flags);
    if (gen->parsed()) return run_gen(flags, gen_kind, coef_re, coef_im, as_system, gen_weight, gen_n0);
    std::cerr << "no subcommand\n";
    return 1;
  } catch (const polycanon::json::parse_error& e) {
    std::cerr << "parse error at byte " << e.byte << ": " << e.what() << "\n";
    return 2;
  } catch (const polycanon::validation_error& e) {
    std::cerr << "validation error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
