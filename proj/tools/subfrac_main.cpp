// subfrac: generalized substantial fractional integrals/derivatives, the
// associated Caputo-type IVP solvers, and quantitative well-posedness
// experiments, exposed as CSV/JSON-emitting subcommands.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "subfrac/subfrac.hpp"

namespace {

using nlohmann::ordered_json;

constexpr int kExitOk = 0;
constexpr int kExitValidation = 1;
constexpr int kExitNumerical = 2;

std::string iso_timestamp() {
  auto now = std::chrono::system_clock::now();
  std::time_t tt = std::chrono::system_clock::to_time_t(now);
  std::tm tm{};
  gmtime_r(&tt, &tm);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

void write_manifest(const std::string& command, const std::map<std::string, std::string>& params,
                    const std::vector<std::string>& outputs, const std::string& path) {
  ordered_json j;
  j["command"] = command;
  j["parameters"] = params;
  j["outputs"] = outputs;
  j["versions"] = subfrac::version_string;
  j["timestamp"] = iso_timestamp();
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  out << j.dump(2) << '\n';
}

struct Sweep {
  std::string param;
  std::vector<double> values;
};

Sweep parse_sweep(const std::string& text) {
  auto eq = text.find('=');
  if (eq == std::string::npos)
    throw std::invalid_argument("--sweep expects param=start:stop:step");
  Sweep sw;
  sw.param = text.substr(0, eq);
  if (sw.param != "alpha" && sw.param != "rho" && sw.param != "sigma" && sw.param != "beta")
    throw std::invalid_argument("--sweep parameter must be alpha, rho, sigma or beta");
  std::string rest = text.substr(eq + 1);
  double start, stop, step;
  if (std::sscanf(rest.c_str(), "%lf:%lf:%lf", &start, &stop, &step) != 3)
    throw std::invalid_argument("--sweep expects param=start:stop:step");
  if (!(step > 0.0) || stop < start) throw std::invalid_argument("--sweep needs stop >= start, step > 0");
  int count = static_cast<int>(std::round((stop - start) / step));
  for (int i = 0; i <= count; ++i) sw.values.push_back(start + i * step);
  return sw;
}

subfrac::RhsFn parse_rhs(const std::string& text, double* lipschitz_hint) {
  if (text == "zero") {
    if (lipschitz_hint) *lipschitz_hint = 1e-9;
    return [](double, double) { return 0.0; };
  }
  if (text == "example2") {
    if (lipschitz_hint) *lipschitz_hint = 0.0;  // caller probes
    return [](double t, double y) { return t * std::exp(-t * t) * y * y / (1.0 + y * y); };
  }
  if (text.rfind("linear:", 0) == 0) {
    double lam = std::stod(text.substr(7));
    if (lipschitz_hint) *lipschitz_hint = std::max(std::abs(lam), 1e-9);
    return [lam](double, double y) { return lam * y; };
  }
  if (text.rfind("shifted:", 0) == 0) {
    double lam, c;
    if (std::sscanf(text.c_str(), "shifted:%lf:%lf", &lam, &c) != 2)
      throw std::invalid_argument("rhs grammar: shifted:<lambda>:<c>");
    if (lipschitz_hint) *lipschitz_hint = std::max(std::abs(lam), 1e-9);
    return [lam, c](double, double y) { return lam * y + c; };
  }
  throw std::invalid_argument("unknown rhs '" + text + "' (zero | linear:<l> | example2 | shifted:<l>:<c>)");
}

std::vector<double> parse_number_list(const std::string& text) {
  std::vector<double> out;
  std::istringstream is(text);
  std::string item;
  while (std::getline(is, item, ',')) out.push_back(std::stod(item));
  if (out.empty()) throw std::invalid_argument("expected comma-separated numbers, got '" + text + "'");
  return out;
}

std::string default_manifest_path(const std::string& out) { return out + ".manifest.json"; }

// sweep column labels keep one decimal on integral values: alpha_1.0, rho_2.0
std::string sweep_label(double v) {
  if (v == std::floor(v) && std::abs(v) < 1e6) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.1f", v);
    return buf;
  }
  return subfrac::format_double(v);
}

// ---------------------------------------------------------------- integrate / derive

struct FieldFlags {
  double alpha = 0.5, rho = 1.0, sigma = 0.0, a = 0.0, beta = 1.0, t_end = 1.0;
  int n = 512;
  std::string func_csv;
  std::string scheme = "trapezoid";
  std::string sweep_text;
  std::string out = "out.csv";
  std::string manifest;
};

subfrac::QuadratureConfig quad_config(const std::string& scheme) {
  subfrac::QuadratureConfig cfg;
  if (scheme == "rectangle")
    cfg.scheme = subfrac::QuadScheme::product_rectangle;
  else if (scheme == "trapezoid")
    cfg.scheme = subfrac::QuadScheme::product_trapezoid;
  else
    throw std::invalid_argument("--scheme must be rectangle or trapezoid");
  return cfg;
}

void add_field_flags(CLI::App* cmd, FieldFlags& ff) {
  cmd->add_option("--alpha", ff.alpha, "fractional order");
  cmd->add_option("--rho", ff.rho, "power exponent");
  cmd->add_option("--sigma", ff.sigma, "tempering rate");
  cmd->add_option("--a", ff.a, "lower limit");
  cmd->add_option("--beta", ff.beta, "power of the built-in power-exp input");
  cmd->add_option("--func", ff.func_csv, "CSV `t,value` input instead of --beta");
  cmd->add_option("--t-end", ff.t_end, "right endpoint");
  cmd->add_option("--n", ff.n, "grid intervals");
  cmd->add_option("--scheme", ff.scheme, "rectangle | trapezoid");
  cmd->add_option("--sweep", ff.sweep_text, "param=start:stop:step, one column per value");
  cmd->add_option("-o,--out", ff.out, "output CSV path");
  cmd->add_option("--manifest", ff.manifest, "manifest path (default <out>.manifest.json)");
}

enum class FieldOp { integrate, derive_rl, derive_caputo };

std::vector<double> eval_field_column(const FieldFlags& ff, FieldOp op,
                                      const subfrac::OperatorParams& params,
                                      const subfrac::Grid& base_grid,
                                      const std::vector<std::pair<double, double>>& tabulated) {
  subfrac::QuadratureConfig cfg = quad_config(ff.scheme);
  subfrac::Grid grid = params.rho == base_grid.rho()
                           ? base_grid
                           : subfrac::Grid(ff.a, ff.t_end, ff.n, params.rho);
  subfrac::GridFunction f =
      tabulated.empty()
          ? subfrac::sample_power_exp(subfrac::PowerExpSpec{ff.beta, params}, grid)
          : subfrac::interpolate_onto(grid, tabulated);
  subfrac::GridFunction result = [&] {
    switch (op) {
      case FieldOp::integrate:
        return subfrac::substantial_integral(params, f, cfg);
      case FieldOp::derive_rl:
        return subfrac::substantial_rl_derivative(params, f, cfg);
      default:
        return subfrac::substantial_caputo_derivative(params, f, cfg);
    }
  }();
  if (params.rho == base_grid.rho()) return result.values;
  // sweep over rho: resample the result onto the shared output grid
  std::vector<std::pair<double, double>> pts(result.values.size());
  for (std::size_t i = 0; i < result.values.size(); ++i)
    pts[i] = {result.grid.t(static_cast<int>(i)), result.values[i]};
  return subfrac::interpolate_onto(base_grid, pts).values;
}

int run_field_command(const std::string& name, const FieldFlags& ff, FieldOp op) {
  subfrac::OperatorParams base{ff.sigma, ff.rho, ff.alpha, ff.a};
  base.validate();
  subfrac::Grid grid(ff.a, ff.t_end, ff.n, ff.rho);
  std::vector<std::pair<double, double>> tabulated;
  if (!ff.func_csv.empty()) tabulated = subfrac::read_tv_csv(ff.func_csv);

  std::vector<std::string> names;
  std::vector<std::vector<double>> cols;
  if (ff.sweep_text.empty()) {
    names.push_back("value");
    cols.push_back(eval_field_column(ff, op, base, grid, tabulated));
  } else {
    Sweep sw = parse_sweep(ff.sweep_text);
    if (sw.param == "beta" && !tabulated.empty())
      throw std::invalid_argument("--sweep beta=... conflicts with --func");
    for (double v : sw.values) {
      FieldFlags local = ff;
      subfrac::OperatorParams params = base;
      if (sw.param == "alpha") params.alpha = v;
      if (sw.param == "rho") params.rho = v;
      if (sw.param == "sigma") params.sigma = v;
      if (sw.param == "beta") local.beta = v;
      names.push_back(sw.param + "_" + sweep_label(v));
      cols.push_back(eval_field_column(local, op, params, grid, tabulated));
    }
  }
  subfrac::write_multi_csv(grid, names, cols, ff.out);

  std::map<std::string, std::string> mp{{"alpha", subfrac::format_double(ff.alpha)},
                                        {"rho", subfrac::format_double(ff.rho)},
                                        {"sigma", subfrac::format_double(ff.sigma)},
                                        {"a", subfrac::format_double(ff.a)},
                                        {"t_end", subfrac::format_double(ff.t_end)},
                                        {"n", std::to_string(ff.n)},
                                        {"scheme", ff.scheme}};
  if (ff.func_csv.empty())
    mp["beta"] = subfrac::format_double(ff.beta);
  else
    mp["func"] = ff.func_csv;
  if (!ff.sweep_text.empty()) mp["sweep"] = ff.sweep_text;
  write_manifest(name, mp, {ff.out},
                 ff.manifest.empty() ? default_manifest_path(ff.out) : ff.manifest);
  return kExitOk;
}

// ---------------------------------------------------------------- solve

struct SolveFlags {
  double alpha = 0.5, rho = 1.0, sigma = 0.0;
  std::string b0 = "1";
  std::string rhs = "zero";
  double h = 0.0;
  bool auto_h = false;
  double K = 0.0, M = 0.0, L = 0.0, h_star = 0.0, h_tilde = 0.0;
  int n = 512;
  std::string method = "picard";
  bool force_horizon = false;
  double picard_tol = 1e-10;
  int picard_max_iters = 100;
  int corrector_iters = 2;
  std::string example;
  std::string out = "solution.csv";
  std::string manifest;
};

void add_solve_flags(CLI::App* cmd, SolveFlags& sf) {
  cmd->add_option("--alpha", sf.alpha, "fractional order");
  cmd->add_option("--rho", sf.rho, "power exponent");
  cmd->add_option("--sigma", sf.sigma, "tempering rate");
  cmd->add_option("--b0", sf.b0, "initial data b_0[,b_1,...]");
  cmd->add_option("--rhs", sf.rhs, "zero | linear:<l> | example2 | shifted:<l>:<c>");
  cmd->add_option("--h", sf.h, "horizon");
  cmd->add_flag("--auto-h", sf.auto_h, "derive the horizon from --h-tilde/--K/--M/--L/--h-star");
  cmd->add_option("--K", sf.K, "tube radius (default 1)");
  cmd->add_option("--M", sf.M, "sup bound of |rhs| on the tube (default: sampled estimate)");
  cmd->add_option("--L", sf.L, "Lipschitz constant (default: derived from --rhs or probed)");
  cmd->add_option("--h-star", sf.h_star, "tube horizon (default: requested horizon)");
  cmd->add_option("--h-tilde", sf.h_tilde, "contraction horizon for --auto-h");
  cmd->add_option("--n", sf.n, "grid intervals");
  cmd->add_option("--method", sf.method, "picard | step");
  cmd->add_flag("--force-horizon", sf.force_horizon, "run outside the guaranteed existence interval");
  cmd->add_option("--picard-tol", sf.picard_tol, "Picard stopping tolerance");
  cmd->add_option("--picard-max-iters", sf.picard_max_iters, "Picard iteration cap");
  cmd->add_option("--corrector-iters", sf.corrector_iters, "corrector passes per node");
  cmd->add_option("--example", sf.example, "named reproduction: stability");
  cmd->add_option("-o,--out", sf.out, "output CSV path");
  cmd->add_option("--manifest", sf.manifest, "manifest path (default <out>.manifest.json)");
}

subfrac::SolveMethod parse_method(const std::string& m) {
  if (m == "picard") return subfrac::SolveMethod::picard;
  if (m == "step" || m == "product_step") return subfrac::SolveMethod::product_step;
  throw std::invalid_argument("--method must be picard or step");
}

subfrac::SolverConfig solver_config(const SolveFlags& sf) {
  subfrac::SolverConfig cfg;
  cfg.n = sf.n;
  cfg.picard_tol = sf.picard_tol;
  cfg.picard_max_iters = sf.picard_max_iters;
  cfg.corrector_iters = sf.corrector_iters;
  cfg.method = parse_method(sf.method);
  cfg.allow_outside_existence = sf.force_horizon;
  return cfg;
}

// Fills the hypothesis constants that were not supplied on the command line.
subfrac::IvpProblem build_problem(const SolveFlags& sf, double horizon) {
  subfrac::IvpProblem pb;
  pb.params = subfrac::OperatorParams{sf.sigma, sf.rho, sf.alpha, 0.0};
  double l_hint = 0.0;
  pb.rhs = parse_rhs(sf.rhs, &l_hint);
  pb.initial.b = parse_number_list(sf.b0);
  pb.K = sf.K > 0.0 ? sf.K : 1.0;
  pb.h_star = sf.h_star > 0.0 ? sf.h_star : horizon;
  double probe_h = std::max(pb.h_star, horizon);
  if (sf.L > 0.0)
    pb.L = sf.L;
  else if (l_hint > 0.0)
    pb.L = l_hint;
  else
    pb.L = std::max(1e-9, 1.05 * subfrac::lipschitz_probe(
                              pb.rhs, {pb.params, pb.initial, pb.K, probe_h}, 512));
  if (sf.M > 0.0) {
    pb.M = sf.M;
  } else {
    double m_est = 1e-12;
    for (int i = 0; i <= 256; ++i) {
      double t = probe_h * i / 256.0;
      double center = subfrac::initial_series(pb.params, pb.initial, t);
      for (double y : {center - pb.K, center, center + pb.K})
        m_est = std::max(m_est, std::abs(pb.rhs(t, y)));
    }
    pb.M = m_est;
  }
  pb.validate();
  return pb;
}

void append_solution_diag(ordered_json& j, const subfrac::Solution& sol) {
  j["method"] = sol.method == subfrac::SolveMethod::picard ? "picard" : "product_step";
  j["iterations"] = sol.iterations_used;
  j["contraction_estimate"] = sol.contraction_estimate;
  j["error_estimate"] = sol.error_estimate;
}

int run_solve(const SolveFlags& sf) {
  if (!sf.example.empty() && sf.example != "stability")
    throw std::invalid_argument("unknown --example (supported: stability)");

  if (sf.example == "stability") {
    // four linear problems, shared operator (sigma=1, rho=0.5, alpha=0.5)
    SolveFlags base = sf;
    base.alpha = 0.5;
    base.rho = 0.5;
    base.sigma = 1.0;
    base.rhs = "linear:0.9";
    const double horizon = sf.h > 0.0 ? sf.h : 1.0;
    subfrac::SolverConfig cfg = solver_config(base);
    cfg.allow_outside_existence = true;
    std::vector<std::string> names;
    std::vector<std::vector<double>> cols;
    ordered_json diag = ordered_json::array();
    std::optional<subfrac::Grid> grid;
    for (double b0 : {1.0, 1.2, 1.4, 1.6}) {
      SolveFlags local = base;
      local.b0 = subfrac::format_double(b0);
      subfrac::IvpProblem pb = build_problem(local, horizon);
      subfrac::Solution sol = subfrac::solve(pb, horizon, cfg);
      names.push_back("b0_" + sweep_label(b0));
      cols.push_back(sol.grid_fn.values);
      if (!grid) grid = sol.grid_fn.grid;
      ordered_json d;
      d["b0"] = b0;
      append_solution_diag(d, sol);
      diag.push_back(d);
    }
    subfrac::write_multi_csv(*grid, names, cols, sf.out);
    std::map<std::string, std::string> mp{{"example", "stability"},
                                          {"n", std::to_string(sf.n)},
                                          {"h", subfrac::format_double(horizon)},
                                          {"method", sf.method}};
    std::string manifest_path =
        sf.manifest.empty() ? default_manifest_path(sf.out) : sf.manifest;
    ordered_json j;
    j["command"] = "solve";
    j["parameters"] = mp;
    j["outputs"] = std::vector<std::string>{sf.out};
    j["diagnostics"] = diag;
    j["versions"] = subfrac::version_string;
    j["timestamp"] = iso_timestamp();
    std::ofstream mf(manifest_path);
    if (!mf) throw std::runtime_error("cannot open for writing: " + manifest_path);
    mf << j.dump(2) << '\n';
    return kExitOk;
  }

  double horizon = sf.h;
  if (sf.auto_h &&
      !(sf.h_tilde > 0.0 && sf.K > 0.0 && sf.M > 0.0 && sf.L > 0.0 && sf.h_star > 0.0))
    throw std::invalid_argument(
        "--auto-h takes the hypothesis constants as given: supply --K --M --L --h-star --h-tilde");
  subfrac::IvpProblem pb = build_problem(sf, horizon > 0.0 ? horizon : 1.0);
  if (sf.auto_h) horizon = subfrac::existence_h(pb, sf.h_tilde);
  if (!(horizon > 0.0)) throw std::invalid_argument("provide --h or --auto-h");

  subfrac::SolverConfig cfg = solver_config(sf);
  subfrac::Solution sol = subfrac::solve(pb, horizon, cfg);
  subfrac::write_grid_csv(sol.grid_fn, sf.out);

  std::map<std::string, std::string> mp{
      {"alpha", subfrac::format_double(sf.alpha)}, {"rho", subfrac::format_double(sf.rho)},
      {"sigma", subfrac::format_double(sf.sigma)}, {"b0", sf.b0},
      {"rhs", sf.rhs},                             {"h", subfrac::format_double(horizon)},
      {"n", std::to_string(sf.n)},                 {"method", sf.method},
      {"K", subfrac::format_double(pb.K)},         {"M", subfrac::format_double(pb.M)},
      {"L", subfrac::format_double(pb.L)},         {"h_star", subfrac::format_double(pb.h_star)}};
  std::string manifest_path = sf.manifest.empty() ? default_manifest_path(sf.out) : sf.manifest;
  ordered_json j;
  j["command"] = "solve";
  j["parameters"] = mp;
  j["outputs"] = std::vector<std::string>{sf.out};
  ordered_json d;
  append_solution_diag(d, sol);
  j["diagnostics"] = d;
  j["versions"] = subfrac::version_string;
  j["timestamp"] = iso_timestamp();
  std::ofstream mf(manifest_path);
  if (!mf) throw std::runtime_error("cannot open for writing: " + manifest_path);
  mf << j.dump(2) << '\n';
  return kExitOk;
}

// ---------------------------------------------------------------- perturb

struct PerturbFlags {
  SolveFlags solve;
  std::string kind = "initial";
  std::string c;            // initial: perturbed data list
  double epsilon = 0.0;     // initial: shift of b_0 when --c absent
  std::string rhs_tilde;    // force
  double alpha_tilde = 0.0; // order
  std::string b_extra;      // order
  std::string out = "report.json";
};

int run_perturb(const PerturbFlags& pf) {
  const SolveFlags& sf = pf.solve;
  double horizon = sf.h > 0.0 ? sf.h : 1.0;
  subfrac::IvpProblem pb = build_problem(sf, horizon);
  subfrac::SolverConfig cfg = solver_config(sf);

  subfrac::PerturbationReport rep;
  if (pf.kind == "initial") {
    subfrac::InitialData c;
    if (!pf.c.empty())
      c.b = parse_number_list(pf.c);
    else {
      c.b = pb.initial.b;
      c.b[0] += pf.epsilon;
    }
    rep = subfrac::dependence_initial(pb, c, horizon, cfg);
  } else if (pf.kind == "force") {
    if (pf.rhs_tilde.empty()) throw std::invalid_argument("perturb force requires --rhs-tilde");
    rep = subfrac::dependence_force(pb, parse_rhs(pf.rhs_tilde, nullptr), horizon, cfg);
  } else if (pf.kind == "order") {
    if (!(pf.alpha_tilde > 0.0)) throw std::invalid_argument("perturb order requires --alpha-tilde");
    subfrac::InitialData extra;
    if (!pf.b_extra.empty()) extra.b = parse_number_list(pf.b_extra);
    rep = subfrac::dependence_order(pb, pf.alpha_tilde, extra, horizon, cfg);
  } else {
    throw std::invalid_argument("--kind must be initial, force or order");
  }

  std::ofstream out(pf.out);
  if (!out) throw std::runtime_error("cannot open for writing: " + pf.out);
  out << subfrac::to_json(rep) << '\n';

  std::map<std::string, std::string> mp{{"kind", pf.kind},
                                        {"alpha", subfrac::format_double(sf.alpha)},
                                        {"rho", subfrac::format_double(sf.rho)},
                                        {"sigma", subfrac::format_double(sf.sigma)},
                                        {"rhs", sf.rhs},
                                        {"b0", sf.b0},
                                        {"h", subfrac::format_double(horizon)},
                                        {"n", std::to_string(sf.n)},
                                        {"method", sf.method}};
  if (pf.kind == "initial") mp["c"] = pf.c.empty() ? "b0+" + subfrac::format_double(pf.epsilon) : pf.c;
  if (pf.kind == "force") mp["rhs_tilde"] = pf.rhs_tilde;
  if (pf.kind == "order") mp["alpha_tilde"] = subfrac::format_double(pf.alpha_tilde);
  write_manifest("perturb", mp, {pf.out},
                 sf.manifest.empty() ? default_manifest_path(pf.out) : sf.manifest);
  return kExitOk;
}

// ---------------------------------------------------------------- check

int run_check(const std::vector<std::string>& only, double tolerance_scale, std::uint64_t seed,
              const std::string& out_path) {
  std::vector<subfrac::CheckResult> results = subfrac::run_checks(only, tolerance_scale, seed);
  ordered_json j;
  j["versions"] = subfrac::version_string;
  j["tolerance_scale"] = tolerance_scale;
  j["seed"] = seed;
  ordered_json arr = ordered_json::array();
  for (const auto& r : results) {
    ordered_json e;
    e["group"] = r.group;
    e["name"] = r.name;
    e["measured"] = r.measured;
    e["tolerance"] = r.tolerance;
    e["pass"] = r.pass;
    arr.push_back(e);
  }
  j["checks"] = arr;
  bool ok = subfrac::all_passed(results);
  j["passed"] = ok;

  std::string text = j.dump(2);
  if (out_path.empty()) {
    std::cout << text << '\n';
  } else {
    std::ofstream out(out_path);
    if (!out) throw std::runtime_error("cannot open for writing: " + out_path);
    out << text << '\n';
  }
  if (!ok) {
    for (const auto& r : results)
      if (!r.pass)
        std::cerr << "FAIL " << r.group << " / " << r.name << ": measured " << r.measured
                  << " > tolerance " << r.tolerance << '\n';
  }
  return ok ? kExitOk : kExitNumerical;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"generalized substantial fractional calculus toolkit"};
  app.set_help_flag("--help", "print help and exit");
  app.require_subcommand(1);

  FieldFlags integrate_flags;
  CLI::App* integrate_cmd =
      app.add_subcommand("integrate", "fractional integral of a sampled or built-in function");
  add_field_flags(integrate_cmd, integrate_flags);

  FieldFlags derive_flags;
  std::string derive_kind = "rl";
  CLI::App* derive_cmd = app.add_subcommand("derive", "RL or Caputo fractional derivative");
  add_field_flags(derive_cmd, derive_flags);
  derive_cmd->add_option("--kind", derive_kind, "rl | caputo");

  SolveFlags solve_flags;
  CLI::App* solve_cmd = app.add_subcommand("solve", "solve the Caputo-type IVP");
  solve_cmd->set_help_flag("--help", "print help and exit");
  add_solve_flags(solve_cmd, solve_flags);

  PerturbFlags perturb_flags;
  CLI::App* perturb_cmd =
      app.add_subcommand("perturb", "continuous-dependence experiment (initial | force | order)");
  perturb_cmd->set_help_flag("--help", "print help and exit");
  add_solve_flags(perturb_cmd, perturb_flags.solve);
  perturb_cmd->add_option("--kind", perturb_flags.kind, "initial | force | order");
  perturb_cmd->add_option("--c", perturb_flags.c, "perturbed initial data (initial)");
  perturb_cmd->add_option("--epsilon", perturb_flags.epsilon, "shift applied to b_0 (initial)");
  perturb_cmd->add_option("--rhs-tilde", perturb_flags.rhs_tilde, "perturbed rhs (force)");
  perturb_cmd->add_option("--alpha-tilde", perturb_flags.alpha_tilde, "perturbed order (order)");
  perturb_cmd->add_option("--b-extra", perturb_flags.b_extra, "extra initial values (order)");
  perturb_cmd->add_option("--report", perturb_flags.out, "report JSON path");

  std::vector<std::string> check_only;
  double check_scale = 1.0;
  std::uint64_t check_seed = 0x5eedf00dULL;
  std::string check_out;
  CLI::App* check_cmd = app.add_subcommand("check", "run the numerical invariant suite");
  check_cmd->add_option("--only", check_only, "restrict to named groups");
  check_cmd->add_option("--tolerance-scale", check_scale, "multiply all tolerances");
  check_cmd->add_option("--seed", check_seed, "PRNG seed for the random draws");
  check_cmd->add_option("-o,--out", check_out, "summary JSON path (default stdout)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (integrate_cmd->parsed()) return run_field_command("integrate", integrate_flags, FieldOp::integrate);
    if (derive_cmd->parsed()) {
      if (derive_kind != "rl" && derive_kind != "caputo")
        throw std::invalid_argument("--kind must be rl or caputo");
      return run_field_command("derive", derive_flags,
                               derive_kind == "rl" ? FieldOp::derive_rl : FieldOp::derive_caputo);
    }
    if (solve_cmd->parsed()) return run_solve(solve_flags);
    if (perturb_cmd->parsed()) return run_perturb(perturb_flags);
    if (check_cmd->parsed()) return run_check(check_only, check_scale, check_seed, check_out);
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitValidation;
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitValidation;
  } catch (const subfrac::ConvergenceError& e) {
    std::cerr << "numerical failure: " << e.what() << '\n';
    return kExitNumerical;
  } catch (const std::exception& e) {
    std::cerr << "numerical failure: " << e.what() << '\n';
    return kExitNumerical;
  }
  return kExitOk;
}
