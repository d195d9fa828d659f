#include "imexstab/problems.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "imexstab/parallel.hpp"

namespace imexstab {

namespace {

const double kPi = std::numbers::pi;
const double kNaN = std::numeric_limits<double>::quiet_NaN();

}  // namespace

ChebyshevGrid chebyshev_grid(int N) {
  if (N < 1) throw std::invalid_argument("chebyshev grid needs N >= 1 interior points");
  const int m = N + 1;  // polynomial degree of the collocation space
  ChebyshevGrid grid;
  grid.n_interior = N;
  grid.nodes.resize(N + 2);
  for (int j = 0; j <= m; ++j) grid.nodes[j] = std::cos(j * kPi / m);

  Eigen::VectorXd cvec = Eigen::VectorXd::Ones(N + 2);
  cvec[0] = 2.0;
  cvec[m] = 2.0;
  for (int j = 0; j <= m; ++j)
    if (j % 2 == 1) cvec[j] = -cvec[j];

  grid.diff.resize(N + 2, N + 2);
  for (int i = 0; i <= m; ++i) {
    double offdiag_sum = 0.0;
    for (int j = 0; j <= m; ++j) {
      if (i == j) continue;
      grid.diff(i, j) = (cvec[i] / cvec[j]) / (grid.nodes[i] - grid.nodes[j]);
      offdiag_sum += grid.diff(i, j);
    }
    grid.diff(i, i) = -offdiag_sum;  // rows annihilate constants exactly
  }
  return grid;
}

DiffusionProblem diffusion_splitting(int N, const std::function<double(double)>& d,
                                     double alpha) {
  if (!(alpha > 0.0)) throw std::invalid_argument("alpha must be positive");

  DiffusionProblem problem;
  problem.grid = chebyshev_grid(N);
  problem.alpha = alpha;
  problem.d_values.resize(N + 2);
  for (int j = 0; j < N + 2; ++j) {
    problem.d_values[j] = d(problem.grid.nodes[j]);
    if (!(problem.d_values[j] > 0.0))
      throw std::invalid_argument("diffusion coefficient must be positive at every node");
  }

  const Eigen::MatrixXd& D = problem.grid.diff;
  const Eigen::MatrixXd L_full = D * problem.d_values.asDiagonal() * D;
  const Eigen::MatrixXd D2_full = D * D;
  problem.L_interior = L_full.block(1, 1, N, N);
  const Eigen::MatrixXd D2i = D2_full.block(1, 1, N, N);

  const Eigen::MatrixXd A = 0.5 * alpha * (D2i + D2i.transpose());
  const Eigen::MatrixXd B = problem.L_interior - A;
  problem.split = validate_splitting(A, B);
  return problem;
}

Eigen::VectorXd sample_interior(const DiffusionProblem& problem, const SpaceTimeFn& fn,
                                double t) {
  const Eigen::VectorXd x = problem.interior_nodes();
  Eigen::VectorXd out(x.size());
  for (Eigen::Index i = 0; i < x.size(); ++i) out[i] = fn(x[i], t);
  return out;
}

std::function<Eigen::VectorXd(double)> manufactured_forcing(const DiffusionProblem& problem,
                                                            const SpaceTimeFn& u_star,
                                                            const SpaceTimeFn& u_star_t) {
  // self-contained closure: copies of the operator and node set
  return [L = problem.L_interior, x = problem.interior_nodes(), u_star,
          u_star_t](double t) {
    Eigen::VectorXd u(x.size()), ut(x.size());
    for (Eigen::Index i = 0; i < x.size(); ++i) {
      u[i] = u_star(x[i], t);
      ut[i] = u_star_t(x[i], t);
    }
    return Eigen::VectorXd(ut - L * u);
  };
}

ConvergenceReport convergence_study(int r, double delta, const DiffusionProblem& problem,
                                    const SpaceTimeFn& u_star, const SpaceTimeFn& u_star_t,
                                    const std::vector<double>& k_list, double t_final) {
  for (std::size_t i = 0; i + 1 < k_list.size(); ++i)
    if (!(k_list[i] > k_list[i + 1]))
      throw std::invalid_argument("k list must be strictly descending");

  ConvergenceReport report;
  report.r = r;
  report.delta = delta;
  report.x_label = "k";
  report.N = problem.grid.n_interior;
  report.alpha = problem.alpha;
  report.t_final = t_final;
  report.rows.resize(k_list.size());

  const ImExScheme scheme = build_scheme(r, delta);
  const auto forcing = manufactured_forcing(problem, u_star, u_star_t);

  parallel_for(std::ptrdiff_t(k_list.size()), [&](std::ptrdiff_t i) {
    const double k = k_list[i];
    SteppingPlan plan;
    plan.scheme = scheme;
    plan.split = problem.split;
    plan.k = k;
    plan.t0 = -(r - 1) * k;
    plan.n_steps = int(std::llround(t_final / k));
    plan.store_states = false;
    plan.forcing = forcing;
    for (int j = 0; j < r; ++j)
      plan.initial.push_back(sample_interior(problem, u_star, plan.t0 + j * k));
    const auto exact = [&](double t) { return sample_interior(problem, u_star, t); };
    report.rows[i].x = k;
    report.rows[i].error = global_error(plan, exact);
  });

  for (std::size_t i = 0; i < report.rows.size(); ++i)
    report.rows[i].rate =
        i == 0 ? kNaN : std::log2(report.rows[i - 1].error / report.rows[i].error);
  return report;
}

ScalarProblem scalar_problem(double lamA, double lamB) {
  if (!(lamA < 0.0)) throw std::invalid_argument("implicit eigenvalue must be negative");
  Eigen::MatrixXd A(1, 1), B(1, 1);
  A << lamA;
  B << lamB;
  ScalarProblem problem;
  problem.split = validate_splitting(A, B);
  const double rate = lamA + lamB;
  problem.exact = [rate](double t) { return std::exp(rate * t); };
  return problem;
}

namespace {

ConvergenceReport gte_study(int r, const std::vector<double>& deltas,
                            const std::function<double(double)>& k_of_delta,
                            double t_final) {
  ConvergenceReport report;
  report.r = r;
  report.delta = kNaN;
  report.x_label = "delta";
  report.t_final = t_final;
  report.N = 1;
  report.rows.resize(deltas.size());

  const ScalarProblem problem = scalar_problem(catalog::kGteLambdaA, catalog::kGteLambdaB);

  parallel_for(std::ptrdiff_t(deltas.size()), [&](std::ptrdiff_t i) {
    const double delta = deltas[i];
    const double k = k_of_delta(delta);
    SteppingPlan plan;
    plan.scheme = build_scheme(r, delta);
    plan.split = problem.split;
    plan.k = k;
    plan.t0 = -(r - 1) * k;
    plan.n_steps = int(std::llround(t_final / k));
    plan.store_states = false;
    for (int j = 0; j < r; ++j) {
      Eigen::VectorXd v(1);
      v << problem.exact(plan.t0 + j * k);
      plan.initial.push_back(v);
    }
    const auto exact = [&](double t) {
      Eigen::VectorXd v(1);
      v << problem.exact(t);
      return v;
    };
    report.rows[i].x = delta;
    report.rows[i].error = global_error(plan, exact);
  });

  for (std::size_t i = 0; i < report.rows.size(); ++i)
    report.rows[i].rate =
        i == 0 ? kNaN : std::log2(report.rows[i - 1].error / report.rows[i].error);
  return report;
}

}  // namespace

ConvergenceReport gte_study_fixed_k(int r, double k, const std::vector<double>& deltas,
                                    double t_final) {
  if (!(k > 0.0)) throw std::invalid_argument("time step must be positive");
  return gte_study(r, deltas, [k](double) { return k; }, t_final);
}

ConvergenceReport gte_study_k_prop_delta(int r, double ratio,
                                         const std::vector<double>& deltas,
                                         double t_final) {
  if (!(ratio > 0.0)) throw std::invalid_argument("step ratio must be positive");
  return gte_study(r, deltas, [ratio](double delta) { return ratio * delta; }, t_final);
}

namespace catalog {

double vardiff_u_star(double x, double t) {
  const double sx = std::sin(2.0 * kPi * x);
  return std::sin(20.0 * t) * sx * std::exp(sx);
}

double vardiff_u_star_t(double x, double t) {
  const double sx = std::sin(2.0 * kPi * x);
  return 20.0 * std::cos(20.0 * t) * sx * std::exp(sx);
}

}  // namespace catalog
}  // namespace imexstab
