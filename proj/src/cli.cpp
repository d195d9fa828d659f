#include "imexstab/cli.hpp"

#include <CLI11.hpp>
#include <cmath>
#include <fstream>
#include <iostream>
#include <limits>
#include <memory>
#include <sstream>

#include "imexstab/io.hpp"
#include "imexstab/problems.hpp"

namespace imexstab::cli {

namespace {

using io::format_sci17;
using io::OutputMeta;

double parse_single_value(const std::string& token) {
  const auto caret = token.find('^');
  if (caret != std::string::npos) {
    const double base = std::stod(token.substr(0, caret));
    const double expo = std::stod(token.substr(caret + 1));
    return std::pow(base, expo);
  }
  return std::stod(token);
}

std::vector<std::string> split(const std::string& text, const std::string& sep) {
  std::vector<std::string> parts;
  std::size_t pos = 0;
  while (true) {
    const std::size_t hit = text.find(sep, pos);
    if (hit == std::string::npos) {
      parts.push_back(text.substr(pos));
      return parts;
    }
    parts.push_back(text.substr(pos, hit - pos));
    pos = hit + sep.size();
  }
}

}  // namespace

std::vector<double> parse_value_grid(const std::string& spec) {
  std::vector<double> out;
  try {
    for (const std::string& token : split(spec, ",")) {
      const auto dots = token.find("..");
      if (dots == std::string::npos) {
        out.push_back(parse_single_value(token));
        continue;
      }
      const double start = parse_single_value(token.substr(0, dots));
      const double stop = parse_single_value(token.substr(dots + 2));
      if (!(start > 0.0) || !(stop > 0.0) || !(start > stop))
        throw std::invalid_argument("range must run from a larger to a smaller positive value");
      for (double v = start; v > stop * (1.0 - 1e-12); v /= 2.0) out.push_back(v);
      if (std::abs(out.back() - stop) > 1e-9 * stop)
        throw std::invalid_argument("range endpoint is not reachable by halving");
    }
  } catch (const std::invalid_argument&) {
    throw;
  } catch (const std::exception&) {
    throw std::invalid_argument("cannot parse value grid '" + spec + "'");
  }
  if (out.empty()) throw std::invalid_argument("empty value grid");
  return out;
}

std::vector<int> parse_orders(const std::string& spec) {
  std::vector<int> out;
  try {
    for (const std::string& token : split(spec, ",")) {
      const auto dots = token.find("..");
      if (dots == std::string::npos) {
        out.push_back(std::stoi(token));
        continue;
      }
      const int lo = std::stoi(token.substr(0, dots));
      const int hi = std::stoi(token.substr(dots + 2));
      if (lo > hi) throw std::invalid_argument("order range must be ascending");
      for (int r = lo; r <= hi; ++r) out.push_back(r);
    }
  } catch (const std::invalid_argument&) {
    throw;
  } catch (const std::exception&) {
    throw std::invalid_argument("cannot parse order list '" + spec + "'");
  }
  for (int r : out)
    if (r < 1 || r > 5) throw std::invalid_argument("orders must lie in 1..5");
  if (out.empty()) throw std::invalid_argument("empty order list");
  return out;
}

namespace {

class OutputTarget {
 public:
  explicit OutputTarget(const std::string& path) {
    if (!path.empty()) {
      file_.open(path);
      if (!file_) throw std::invalid_argument("cannot open output file: " + path);
    }
  }
  std::ostream& stream() { return file_.is_open() ? file_ : std::cout; }

 private:
  std::ofstream file_;
};

struct ProblemOptions {
  std::string name;  // paper-scalar | paper-gte | paper-vardiff, or empty
  int N = 100;
  double alpha = 2.5;
  std::string matrix_a, matrix_b;
};

void add_problem_options(CLI::App* cmd, ProblemOptions& opt) {
  cmd->add_option("--problem", opt.name,
                  "built-in problem: paper-scalar, paper-gte or paper-vardiff");
  cmd->add_option("--N", opt.N, "interior grid size for paper-vardiff");
  cmd->add_option("--alpha", opt.alpha, "implicit weight for paper-vardiff");
  cmd->add_option("--matrix-a", opt.matrix_a, "path to the implicit matrix A");
  cmd->add_option("--matrix-b", opt.matrix_b, "path to the explicit matrix B");
}

Splitting load_splitting(const ProblemOptions& opt, OutputMeta& meta) {
  meta.config["problem"] = opt.name.empty() ? "matrix-files" : opt.name;
  if (!opt.matrix_a.empty() || !opt.matrix_b.empty()) {
    if (opt.matrix_a.empty() || opt.matrix_b.empty())
      throw std::invalid_argument("both --matrix-a and --matrix-b are required");
    meta.config["matrix_a"] = opt.matrix_a;
    meta.config["matrix_b"] = opt.matrix_b;
    return validate_splitting(io::read_matrix(opt.matrix_a), io::read_matrix(opt.matrix_b));
  }
  if (opt.name == "paper-scalar")
    return scalar_problem(catalog::kScalarLambdaA, catalog::kScalarLambdaB).split;
  if (opt.name == "paper-gte")
    return scalar_problem(catalog::kGteLambdaA, catalog::kGteLambdaB).split;
  if (opt.name == "paper-vardiff") {
    meta.config["N"] = std::to_string(opt.N);
    meta.config["alpha"] = format_sci17(opt.alpha);
    return diffusion_splitting(opt.N, catalog::vardiff_coefficient, opt.alpha).split;
  }
  throw std::invalid_argument("unknown problem '" + opt.name +
                              "' (expected paper-scalar, paper-gte, paper-vardiff or matrix files)");
}

// ---- coeffs -------------------------------------------------------------

int cmd_coeffs(int r, double delta, const std::string& format, const std::string& out) {
  const ImExScheme sch = build_scheme(r, delta);
  const double residual = order_condition_residual(sch);
  const ZeroStabilityResult zs = zero_stability(sch);

  OutputMeta meta;
  meta.command = "coeffs";
  meta.config["r"] = std::to_string(r);
  meta.config["delta"] = format_sci17(delta);
  meta.config["order_condition_residual"] = format_sci17(residual);
  meta.config["zero_stable"] = zs.stable ? "true" : "false";

  OutputTarget target(out);
  if (format == "csv") {
    std::vector<std::vector<std::string>> rows;
    for (int j = 0; j <= r; ++j)
      rows.push_back({std::to_string(j), format_sci17(sch.a[j]), format_sci17(sch.b[j]),
                      format_sci17(sch.c[j])});
    io::write_csv(target.stream(), meta, {"j", "a", "b", "c"}, rows);
    return 0;
  }

  nlohmann::json j;
  j["meta"] = io::meta_json(meta);
  j["r"] = r;
  j["delta"] = delta;
  j["a"] = std::vector<double>(sch.a.data(), sch.a.data() + sch.a.size());
  j["b"] = std::vector<double>(sch.b.data(), sch.b.data() + sch.b.size());
  j["c"] = std::vector<double>(sch.c.data(), sch.c.data() + sch.c.size());
  j["order_condition_residual"] = residual;
  j["zero_stable"] = zs.stable;
  auto roots = nlohmann::json::array();
  for (Eigen::Index i = 0; i < zs.a_roots.size(); ++i)
    roots.push_back({{"re", zs.a_roots[i].real()}, {"im", zs.a_roots[i].imag()}});
  j["a_roots"] = roots;
  target.stream() << j.dump(2) << "\n";
  return 0;
}

// ---- region -------------------------------------------------------------

int cmd_region(int r, double delta, int n, const std::string& y_spec, bool with_g,
               int g_ny, int g_ntheta, const std::string& out,
               const std::string& summary_out) {
  OutputMeta meta;
  meta.command = "region";
  meta.config["r"] = std::to_string(r);
  meta.config["delta"] = format_sci17(delta);
  meta.config["n"] = std::to_string(n);
  if (!y_spec.empty()) meta.config["y"] = y_spec;

  const ImExScheme sch = build_scheme(r, delta);
  std::vector<std::vector<std::string>> rows;

  const ComplexCurve exact = exact_boundary(r, delta, n);
  for (std::size_t i = 0; i < exact.points.size(); ++i)
    rows.push_back({format_sci17(exact.points[i].real()), format_sci17(exact.points[i].imag()),
                    "exact", format_sci17(exact.thetas[i]), ""});

  if (!y_spec.empty()) {
    for (const std::string& token : split(y_spec, ",")) {
      double y;
      std::string label;
      if (token == "inf" || token == "-inf") {
        y = -std::numeric_limits<double>::infinity();
        label = "-inf";
      } else {
        y = std::stod(token);
        if (!(y < 0.0)) throw std::invalid_argument("locus y values must be negative");
        label = format_sci17(y);
      }
      const ComplexCurve locus = boundary_locus(y, sch, n);
      for (std::size_t i = 0; i < locus.points.size(); ++i)
        rows.push_back({format_sci17(locus.points[i].real()),
                        format_sci17(locus.points[i].imag()), "locus",
                        format_sci17(locus.thetas[i]), label});
    }
  }

  OutputTarget target(out);
  io::write_csv(target.stream(), meta, {"re", "im", "source", "theta", "y"}, rows);

  const RegionSummary summary = region_summary(r, delta);
  nlohmann::json j;
  j["meta"] = io::meta_json(meta);
  j["m_l"] = summary.m_l;
  j["m_r"] = summary.m_r;
  j["circle_center"] = summary.circle_center;
  j["circle_radius"] = summary.circle_radius;
  j["z0"] = {{"re", summary.z0.real()}, {"im", summary.z0.imag()}};
  if (with_g) {
    j["g"] = g_function(delta, r, g_ny, g_ntheta);
    j["g_grid"] = {g_ny, g_ntheta};
  }
  if (!summary_out.empty()) {
    OutputTarget starget(summary_out);
    starget.stream() << j.dump(2) << "\n";
  } else if (!out.empty()) {
    std::cout << j.dump(2) << "\n";
  }
  return 0;
}

// ---- wrange -------------------------------------------------------------

int cmd_wrange(const ProblemOptions& popt, double p, int n_angles, const std::string& out) {
  OutputMeta meta;
  meta.command = "wrange";
  const Splitting split = load_splitting(popt, meta);
  meta.config["p"] = format_sci17(p);
  meta.config["n_angles"] = std::to_string(n_angles);

  const RangeBoundary wp = wp_set(split, p, n_angles);
  const Eigen::VectorXcd spectrum = generalized_spectrum(split);

  std::vector<std::vector<std::string>> rows;
  for (std::size_t i = 0; i < wp.points.points.size(); ++i)
    rows.push_back({"boundary", format_sci17(wp.points.points[i].real()),
                    format_sci17(wp.points.points[i].imag()),
                    format_sci17(wp.points.thetas[i])});
  for (Eigen::Index i = 0; i < spectrum.size(); ++i)
    rows.push_back({"eigenvalue", format_sci17(spectrum[i].real()),
                    format_sci17(spectrum[i].imag()), ""});

  OutputTarget target(out);
  io::write_csv(target.stream(), meta, {"kind", "re", "im", "theta"}, rows);
  return 0;
}

// ---- certify ------------------------------------------------------------

int cmd_certify(const ProblemOptions& popt, int r, double delta, double p, int n_angles,
                const std::string& out) {
  OutputMeta meta;
  meta.command = "certify";
  const Splitting split = load_splitting(popt, meta);
  meta.config["r"] = std::to_string(r);
  meta.config["delta"] = format_sci17(delta);
  meta.config["p"] = format_sci17(p);
  meta.config["n_angles"] = std::to_string(n_angles);

  const StabilityVerdict verdict = certify(split, r, delta, p, n_angles);

  nlohmann::json j;
  j["meta"] = io::meta_json(meta);
  j["status"] = to_string(verdict.status);
  if (verdict.witness)
    j["witness"] = {{"re", verdict.witness->real()}, {"im", verdict.witness->imag()}};
  else
    j["witness"] = nullptr;
  j["p"] = verdict.p_used;
  j["delta"] = verdict.delta;
  j["r"] = verdict.r;
  j["n_range_points"] = verdict.n_range_points;

  OutputTarget target(out);
  target.stream() << j.dump(2) << "\n";
  return 0;
}

// ---- simulate -----------------------------------------------------------

int cmd_simulate(const ProblemOptions& popt, int r, double delta, double k, int steps,
                 const std::string& out) {
  OutputMeta meta;
  meta.command = "simulate";

  SteppingPlan plan;
  plan.scheme = build_scheme(r, delta);
  plan.k = k;
  plan.n_steps = steps;
  plan.t0 = -(r - 1) * k;
  plan.store_states = false;

  if (popt.name == "paper-vardiff" && popt.matrix_a.empty()) {
    const DiffusionProblem problem =
        diffusion_splitting(popt.N, catalog::vardiff_coefficient, popt.alpha);
    meta.config["problem"] = popt.name;
    meta.config["N"] = std::to_string(popt.N);
    meta.config["alpha"] = format_sci17(popt.alpha);
    plan.split = problem.split;
    plan.forcing =
        manufactured_forcing(problem, catalog::vardiff_u_star, catalog::vardiff_u_star_t);
    for (int j = 0; j < r; ++j)
      plan.initial.push_back(
          sample_interior(problem, catalog::vardiff_u_star, plan.t0 + j * k));
  } else {
    plan.split = load_splitting(popt, meta);
    if (popt.name == "paper-scalar" || popt.name == "paper-gte") {
      const double rate = plan.split.A(0, 0) + plan.split.B(0, 0);
      for (int j = 0; j < r; ++j) {
        Eigen::VectorXd v(1);
        v << std::exp(rate * (plan.t0 + j * k));
        plan.initial.push_back(v);
      }
    } else {
      for (int j = 0; j < r; ++j)
        plan.initial.push_back(Eigen::VectorXd::Ones(plan.split.size()));
    }
  }

  meta.config["r"] = std::to_string(r);
  meta.config["delta"] = format_sci17(delta);
  meta.config["k"] = format_sci17(k);
  meta.config["steps"] = std::to_string(steps);

  const Trajectory traj = run(plan);
  meta.config["overflow"] = traj.overflow ? "true" : "false";

  std::vector<std::vector<std::string>> rows;
  for (std::size_t i = 0; i < traj.norms.size(); ++i)
    rows.push_back({std::to_string(i), format_sci17(traj.times[i]),
                    format_sci17(traj.norms[i])});

  OutputTarget target(out);
  io::write_csv(target.stream(), meta, {"index", "time", "sup_norm"}, rows);
  return 0;
}

// ---- convergence and gte tables ------------------------------------------

void write_rate_table(std::ostream& os, OutputMeta& meta, const std::string& x_label,
                      const std::vector<int>& orders,
                      const std::vector<ConvergenceReport>& reports) {
  std::vector<std::string> columns{x_label};
  for (std::size_t c = 0; c < orders.size(); ++c) {
    columns.push_back("error_r" + std::to_string(orders[c]));
    columns.push_back("rate_r" + std::to_string(orders[c]));
  }
  std::vector<std::vector<std::string>> rows;
  const std::size_t nrows = reports.front().rows.size();
  for (std::size_t i = 0; i < nrows; ++i) {
    std::vector<std::string> row{format_sci17(reports.front().rows[i].x)};
    for (const ConvergenceReport& rep : reports) {
      row.push_back(format_sci17(rep.rows[i].error));
      row.push_back(std::isnan(rep.rows[i].rate) ? "" : format_sci17(rep.rows[i].rate));
    }
    rows.push_back(std::move(row));
  }
  io::write_csv(os, meta, columns, rows);
}

int cmd_convergence(const ProblemOptions& popt, double delta, const std::string& orders_spec,
                    const std::string& k_spec, double t_final, const std::string& out) {
  if (popt.name != "paper-vardiff")
    throw std::invalid_argument("convergence studies run on --problem paper-vardiff");
  const std::vector<int> orders = parse_orders(orders_spec);
  const std::vector<double> k_list = parse_value_grid(k_spec);

  OutputMeta meta;
  meta.command = "convergence";
  meta.config["problem"] = popt.name;
  meta.config["N"] = std::to_string(popt.N);
  meta.config["alpha"] = format_sci17(popt.alpha);
  meta.config["delta"] = format_sci17(delta);
  meta.config["orders"] = orders_spec;
  meta.config["k"] = k_spec;
  meta.config["t_final"] = format_sci17(t_final);

  const DiffusionProblem problem =
      diffusion_splitting(popt.N, catalog::vardiff_coefficient, popt.alpha);

  std::vector<ConvergenceReport> reports;
  for (int r : orders)
    reports.push_back(convergence_study(r, delta, problem, catalog::vardiff_u_star,
                                        catalog::vardiff_u_star_t, k_list, t_final));

  OutputTarget target(out);
  write_rate_table(target.stream(), meta, "k", orders, reports);
  return 0;
}

int cmd_gte(const std::string& mode, double k, double ratio, const std::string& deltas_spec,
            const std::string& orders_spec, double t_final, const std::string& out) {
  const std::vector<int> orders = parse_orders(orders_spec);
  const std::vector<double> deltas = parse_value_grid(deltas_spec);

  OutputMeta meta;
  meta.command = "gte";
  meta.config["mode"] = mode;
  meta.config["deltas"] = deltas_spec;
  meta.config["orders"] = orders_spec;
  meta.config["t_final"] = format_sci17(t_final);

  std::vector<ConvergenceReport> reports;
  if (mode == "fixed-k") {
    meta.config["k"] = format_sci17(k);
    for (int r : orders) reports.push_back(gte_study_fixed_k(r, k, deltas, t_final));
  } else if (mode == "k-prop-delta") {
    meta.config["ratio"] = format_sci17(ratio);
    for (int r : orders)
      reports.push_back(gte_study_k_prop_delta(r, ratio, deltas, t_final));
  } else {
    throw std::invalid_argument("gte --mode must be fixed-k or k-prop-delta");
  }

  OutputTarget target(out);
  write_rate_table(target.stream(), meta, "delta", orders, reports);
  return 0;
}

}  // namespace

int run(int argc, const char* const* argv) {
  CLI::App app{"unconditionally stable ImEx multistep schemes: coefficients, "
               "stability regions, numerical ranges, certification and runs"};
  app.require_subcommand(1);

  // coeffs
  auto* coeffs = app.add_subcommand("coeffs", "scheme coefficient tables");
  int co_r = 1;
  double co_delta = 1.0;
  std::string co_format = "json", co_out;
  coeffs->add_option("--r", co_r, "order (1..5)")->required();
  coeffs->add_option("--delta", co_delta, "family parameter in (0,1]")->required();
  coeffs->add_option("--format", co_format, "json or csv")
      ->check(CLI::IsMember({"json", "csv"}));
  coeffs->add_option("--out", co_out, "output path (default stdout)");

  // region
  auto* region = app.add_subcommand("region", "stability-region boundary data");
  int re_r = 2, re_n = 512, re_gny = 400, re_gnt = 400;
  double re_delta = 1.0;
  bool re_g = false;
  std::string re_y, re_out, re_summary;
  region->add_option("--r", re_r, "order (1..5)")->required();
  region->add_option("--delta", re_delta, "family parameter in (0,1]")->required();
  region->add_option("--n", re_n, "samples per curve");
  region->add_option("--y", re_y, "comma list of locus y values; 'inf' for the limit");
  region->add_flag("--g", re_g, "also evaluate the G(delta) certificate");
  region->add_option("--g-ny", re_gny, "G grid: ytilde points");
  region->add_option("--g-ntheta", re_gnt, "G grid: angle points");
  region->add_option("--out", re_out, "boundary CSV path (default stdout)");
  region->add_option("--summary-out", re_summary, "summary JSON path");

  // wrange
  auto* wrange = app.add_subcommand("wrange", "generalized numerical range");
  ProblemOptions wr_prob;
  double wr_p = 1.0;
  int wr_angles = 256;
  std::string wr_out;
  add_problem_options(wrange, wr_prob);
  wrange->add_option("--p", wr_p, "range weight exponent");
  wrange->add_option("--n-angles", wr_angles, "support angles");
  wrange->add_option("--out", wr_out, "output path (default stdout)");

  // certify
  auto* certify_cmd = app.add_subcommand("certify", "unconditional-stability verdict");
  ProblemOptions ce_prob;
  int ce_r = 1, ce_angles = 256;
  double ce_delta = 1.0, ce_p = 1.0;
  std::string ce_out;
  add_problem_options(certify_cmd, ce_prob);
  certify_cmd->add_option("--r", ce_r, "order (1..5)")->required();
  certify_cmd->add_option("--delta", ce_delta, "family parameter")->required();
  certify_cmd->add_option("--p", ce_p, "range weight exponent");
  certify_cmd->add_option("--n-angles", ce_angles, "support angles");
  certify_cmd->add_option("--out", ce_out, "output path (default stdout)");

  // simulate
  auto* simulate = app.add_subcommand("simulate", "time-stepping run, norm history");
  ProblemOptions si_prob;
  int si_r = 1, si_steps = 100;
  double si_delta = 1.0, si_k = 0.1;
  std::string si_out;
  add_problem_options(simulate, si_prob);
  simulate->add_option("--r", si_r, "order (1..5)")->required();
  simulate->add_option("--delta", si_delta, "family parameter")->required();
  simulate->add_option("--k", si_k, "time step")->required();
  simulate->add_option("--steps", si_steps, "number of steps")->required();
  simulate->add_option("--out", si_out, "output path (default stdout)");

  // convergence
  auto* conv = app.add_subcommand("convergence", "temporal convergence table");
  ProblemOptions cv_prob;
  double cv_delta = 0.12, cv_tfinal = 1.0;
  std::string cv_orders = "1..5", cv_k = "2^-6..2^-13", cv_out;
  add_problem_options(conv, cv_prob);
  conv->add_option("--delta", cv_delta, "family parameter")->required();
  conv->add_option("--orders", cv_orders, "orders, e.g. 1..5");
  conv->add_option("--k", cv_k, "step sizes, e.g. 2^-6..2^-13");
  conv->add_option("--t-final", cv_tfinal, "final time");
  conv->add_option("--out", cv_out, "output path (default stdout)");

  // gte
  auto* gte = app.add_subcommand("gte", "scalar decay-test error table");
  double gt_k = 1e-3, gt_ratio = 0.2, gt_tfinal = 1.0;
  std::string gt_mode = "fixed-k", gt_deltas = "2^0..2^-6", gt_orders = "1..3", gt_out;
  gte->add_option("--mode", gt_mode, "fixed-k or k-prop-delta");
  gte->add_option("--k", gt_k, "time step for fixed-k mode");
  gte->add_option("--ratio", gt_ratio, "k/delta for k-prop-delta mode");
  gte->add_option("--deltas", gt_deltas, "delta values, e.g. 2^0..2^-6");
  gte->add_option("--orders", gt_orders, "orders, e.g. 1..3");
  gte->add_option("--t-final", gt_tfinal, "final time");
  gte->add_option("--out", gt_out, "output path (default stdout)");

  try {
    app.parse(argc, argv);
    if (coeffs->parsed()) return cmd_coeffs(co_r, co_delta, co_format, co_out);
    if (region->parsed())
      return cmd_region(re_r, re_delta, re_n, re_y, re_g, re_gny, re_gnt, re_out, re_summary);
    if (wrange->parsed()) return cmd_wrange(wr_prob, wr_p, wr_angles, wr_out);
    if (certify_cmd->parsed())
      return cmd_certify(ce_prob, ce_r, ce_delta, ce_p, ce_angles, ce_out);
    if (simulate->parsed())
      return cmd_simulate(si_prob, si_r, si_delta, si_k, si_steps, si_out);
    if (conv->parsed())
      return cmd_convergence(cv_prob, cv_delta, cv_orders, cv_k, cv_tfinal, cv_out);
    if (gte->parsed())
      return cmd_gte(gt_mode, gt_k, gt_ratio, gt_deltas, gt_orders, gt_tfinal, gt_out);
    return 2;
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "validation error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "numerical error: " << e.what() << "\n";
    return 3;
  }
}

int run(const std::vector<std::string>& args) {
  std::vector<std::string> owned;
  owned.reserve(args.size() + 1);
  owned.push_back("imexstab");
  owned.insert(owned.end(), args.begin(), args.end());
  std::vector<const char*> argv;
  argv.reserve(owned.size());
  for (const std::string& s : owned) argv.push_back(s.c_str());
  return run(int(argv.size()), argv.data());
}

}  // namespace imexstab::cli
