#pragma once

#include <cmath>
#include <functional>
#include <numbers>
#include <string>
#include <vector>

#include "imexstab/stepping.hpp"

namespace imexstab {

/// Chebyshev collocation grid with N interior points: N + 2 nodes
/// x_j = cos(j pi / (N+1)), descending from 1 to -1, with the full-grid
/// spectral differentiation matrix.
struct ChebyshevGrid {
  int n_interior = 0;
  Eigen::VectorXd nodes;  ///< size N + 2
  Eigen::MatrixXd diff;   ///< (N+2) x (N+2)
};

ChebyshevGrid chebyshev_grid(int N);

using SpaceTimeFn = std::function<double(double x, double t)>;

/// Variable-coefficient diffusion (d(x) u_x)_x on (-1, 1) with homogeneous
/// Dirichlet conditions, discretized as L = D diag(d(x_j)) D restricted to
/// the interior nodes. The splitting takes A = (alpha/2)(D2 + D2^T) with D2
/// the interior block of the full-grid Laplacian, and B = L - A.
struct DiffusionProblem {
  ChebyshevGrid grid;
  double alpha = 0.0;
  Eigen::VectorXd d_values;    ///< diffusion coefficient at all nodes
  Eigen::MatrixXd L_interior;  ///< N x N
  Splitting split;
  Eigen::VectorXd interior_nodes() const {
    return grid.nodes.segment(1, grid.n_interior);
  }
};

DiffusionProblem diffusion_splitting(int N, const std::function<double(double)>& d,
                                     double alpha);

/// Discrete manufactured forcing f_h(t) = du*/dt - L u* sampled on the
/// interior nodes, making the grid samples of u* solve the semi-discrete
/// system exactly (measured errors are purely temporal).
std::function<Eigen::VectorXd(double)> manufactured_forcing(const DiffusionProblem& problem,
                                                            const SpaceTimeFn& u_star,
                                                            const SpaceTimeFn& u_star_t);

/// Samples u*(x_j, t) on the interior nodes.
Eigen::VectorXd sample_interior(const DiffusionProblem& problem, const SpaceTimeFn& fn,
                                double t);

struct ConvergenceRow {
  double x = 0.0;      ///< step size k, or delta for the GTE studies
  double error = 0.0;  ///< sup-norm error at the final time
  double rate = 0.0;   ///< log2(previous error / this error); NaN on the first row
};

struct ConvergenceReport {
  int r = 0;
  double delta = 0.0;
  std::string x_label;  ///< "k" or "delta"
  std::vector<ConvergenceRow> rows;
  int N = 0;
  double alpha = 0.0;
  double t_final = 0.0;
};

/// Temporal convergence study against a manufactured solution: exact initial
/// data u_j = u*(., t0 + j k) with t0 = -(r-1) k, integration to t_final.
ConvergenceReport convergence_study(int r, double delta, const DiffusionProblem& problem,
                                    const SpaceTimeFn& u_star, const SpaceTimeFn& u_star_t,
                                    const std::vector<double>& k_list, double t_final);

/// 1x1 splitting u' = lamA u + lamB u with exact solution e^{(lamA+lamB) t}.
struct ScalarProblem {
  Splitting split;
  std::function<double(double)> exact;
};
ScalarProblem scalar_problem(double lamA, double lamB);

/// Scalar decay-test error tables: fixed step size over a delta list, and
/// step size locked to a fixed fraction of delta.
ConvergenceReport gte_study_fixed_k(int r, double k, const std::vector<double>& deltas,
                                    double t_final = 1.0);
ConvergenceReport gte_study_k_prop_delta(int r, double ratio,
                                         const std::vector<double>& deltas,
                                         double t_final = 1.0);

/// Named configurations used by the command-line tool.
namespace catalog {

inline double vardiff_coefficient(double x) {
  return 4.0 + 3.0 * std::cos(2.0 * std::numbers::pi * x);
}
double vardiff_u_star(double x, double t);
double vardiff_u_star_t(double x, double t);
constexpr double kScalarLambdaA = -1.0;
constexpr double kScalarLambdaB = -9.0;
constexpr double kGteLambdaA = -1.0;
constexpr double kGteLambdaB = 0.0;

}  // namespace catalog
}  // namespace imexstab
