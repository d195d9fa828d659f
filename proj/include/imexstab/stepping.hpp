#pragma once

#include <functional>
#include <vector>

#include "imexstab/splitting.hpp"

namespace imexstab {

/// One time-stepping run: scheme, splitting, step size, horizon, the s
/// starting vectors (at times t0, t0 + k, ..., t0 + (s-1) k) and an optional
/// forcing f(t). Exact starting data with negative t0 lets a run reach a
/// final time that is a multiple of k.
struct SteppingPlan {
  ImExScheme scheme;
  Splitting split;
  double k = 0.0;
  int n_steps = 0;
  std::vector<Eigen::VectorXd> initial;
  std::function<Eigen::VectorXd(double)> forcing;  ///< empty = no forcing
  double t0 = 0.0;
  bool store_states = true;  ///< keep every state; the last s are always kept
};

struct Trajectory {
  std::vector<Eigen::VectorXd> states;  ///< all states, or the final s when not stored
  std::vector<double> times;            ///< time of every state, including initial ones
  std::vector<double> norms;            ///< sup norm of every state
  bool overflow = false;  ///< run stopped early: norm exceeded 1e12 x initial
  const Eigen::VectorXd& final_state() const { return states.back(); }
  double final_time() const { return times.back(); }
};

/// Executes the recursion
///   (a_s I - k c_s A) u_{n+s} = sum_j [ -a_j u_{n+j}
///        + k (c_j A u_{n+j} + b_j B u_{n+j} + b_j f((n+j) k + t0)) ].
/// The implicit operator is factored once per plan; each step then costs one
/// solve and one explicit multiply. For the delta family the operator is
/// symmetric positive definite and a Cholesky factorization is used.
Trajectory run(const SteppingPlan& plan);

/// Dense one-step transfer matrix of the stacked recursion,
/// V^n = W V^{n-1} with V^n = (u_{n+s}, ..., u_{n+1}).
struct CompanionMatrix {
  Eigen::MatrixXd W;
  double k = 0.0;
};
CompanionMatrix companion_matrix(const ImExScheme& scheme, const Splitting& split,
                                 double k);

struct StabilitySample {
  double k = 0.0;
  bool stable = false;
  double spectral_radius = 0.0;
};

/// Eigenvalue test of the companion matrix per step size: stable iff all
/// |zeta| <= 1 + 1e-9, with moduli in [1 - 1e-7, 1 + 1e-9] additionally
/// screened for defective (polynomial) growth by power iteration. Dense;
/// requires s*N <= 2000.
std::vector<StabilitySample> empirical_stability(const ImExScheme& scheme,
                                                 const Splitting& split,
                                                 const std::vector<double>& k_grid);

/// Sup-norm difference between the final computed state and exact(t_final).
/// Throws when the run overflows.
double global_error(const SteppingPlan& plan,
                    const std::function<Eigen::VectorXd(double)>& exact);

}  // namespace imexstab
