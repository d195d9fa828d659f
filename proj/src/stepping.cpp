#include "imexstab/stepping.hpp"

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>
#include <Eigen/LU>
#include <cmath>
#include <deque>
#include <stdexcept>

namespace imexstab {

namespace {

constexpr double kOverflowFactor = 1e12;

// Factorization of the implicit operator a_s I - k c_s A. Cholesky for the
// delta family (the operator is SPD there), pivoted LU otherwise.
class ImplicitSolver {
 public:
  ImplicitSolver(const ImExScheme& scheme, const Splitting& split, double k) {
    const int s = scheme.s;
    const Eigen::MatrixXd M =
        scheme.a[s] * Eigen::MatrixXd::Identity(split.size(), split.size()) -
        (k * scheme.c[s]) * split.A;
    if (scheme.delta.has_value()) {
      llt_.compute(M);
      spd_ = llt_.info() == Eigen::Success;
      if (spd_) return;
    }
    lu_.compute(M);
    if (!lu_.isInvertible())
      throw std::runtime_error("implicit operator a_s I - k c_s A is singular");
  }

  Eigen::MatrixXd solve(const Eigen::MatrixXd& rhs) const {
    if (spd_) return llt_.solve(rhs);
    return lu_.solve(rhs);
  }

 private:
  Eigen::LLT<Eigen::MatrixXd> llt_;
  Eigen::FullPivLU<Eigen::MatrixXd> lu_;
  bool spd_ = false;
};

}  // namespace

Trajectory run(const SteppingPlan& plan) {
  const ImExScheme& sch = plan.scheme;
  const int s = sch.s;
  const Eigen::Index n = plan.split.size();
  if (int(plan.initial.size()) != s)
    throw std::invalid_argument("plan needs exactly s starting vectors");
  for (const auto& v : plan.initial)
    if (v.size() != n) throw std::invalid_argument("starting vector dimension mismatch");
  if (!(plan.k > 0.0)) throw std::invalid_argument("time step must be positive");

  const ImplicitSolver solver(sch, plan.split, plan.k);

  struct Slot {
    Eigen::VectorXd u, Au, Bu, f;
  };
  auto make_slot = [&](const Eigen::VectorXd& u, double t) {
    Slot slot;
    slot.u = u;
    slot.Au = plan.split.A * u;
    slot.Bu = plan.split.B * u;
    slot.f = plan.forcing ? plan.forcing(t) : Eigen::VectorXd::Zero(n);
    if (plan.forcing && slot.f.size() != n)
      throw std::invalid_argument("forcing dimension mismatch");
    return slot;
  };

  Trajectory traj;
  traj.times.reserve(s + plan.n_steps);
  traj.norms.reserve(s + plan.n_steps);

  std::deque<Slot> window;
  double initial_norm = 0.0;
  for (int j = 0; j < s; ++j) {
    const double t = plan.t0 + j * plan.k;
    window.push_back(make_slot(plan.initial[j], t));
    traj.times.push_back(t);
    const double nrm = plan.initial[j].lpNorm<Eigen::Infinity>();
    traj.norms.push_back(nrm);
    initial_norm = std::max(initial_norm, nrm);
    if (plan.store_states) traj.states.push_back(plan.initial[j]);
  }
  const double bound = kOverflowFactor * std::max(initial_norm, 1e-300);

  for (int step = 0; step < plan.n_steps; ++step) {
    Eigen::VectorXd rhs = Eigen::VectorXd::Zero(n);
    for (int j = 0; j < s; ++j) {
      const Slot& slot = window[j];
      rhs.noalias() += -sch.a[j] * slot.u + plan.k * (sch.c[j] * slot.Au +
                       sch.b[j] * (slot.Bu + slot.f));
    }
    Eigen::VectorXd next = solver.solve(rhs);

    const double t_next = plan.t0 + (step + s) * plan.k;
    const double nrm = next.lpNorm<Eigen::Infinity>();
    traj.times.push_back(t_next);
    traj.norms.push_back(nrm);
    if (plan.store_states) traj.states.push_back(next);

    if (!std::isfinite(nrm) || nrm > bound) {
      traj.overflow = true;
      if (!plan.store_states) {
        traj.states.clear();
        for (int j = 1; j < s; ++j) traj.states.push_back(window[j].u);
        traj.states.push_back(std::move(next));
      }
      return traj;
    }

    window.pop_front();
    window.push_back(make_slot(next, t_next));
  }

  if (!plan.store_states)
    for (const Slot& slot : window) traj.states.push_back(slot.u);
  return traj;
}

CompanionMatrix companion_matrix(const ImExScheme& sch, const Splitting& split,
                                 double k) {
  const int s = sch.s;
  const Eigen::Index n = split.size();
  const ImplicitSolver solver(sch, split, k);
  const Eigen::MatrixXd eye = Eigen::MatrixXd::Identity(n, n);

  CompanionMatrix cm;
  cm.k = k;
  cm.W = Eigen::MatrixXd::Zero(s * n, s * n);
  // top block row: M^{-1} C_{s-1}, ..., M^{-1} C_0 with
  // C_j = k c_j A + k b_j B - a_j I and V ordered newest first
  for (int col = 0; col < s; ++col) {
    const int j = s - 1 - col;
    const Eigen::MatrixXd Cj = k * sch.c[j] * split.A + k * sch.b[j] * split.B -
                               sch.a[j] * eye;
    cm.W.block(0, col * n, n, n) = solver.solve(Cj);
  }
  for (int i = 1; i < s; ++i) cm.W.block(i * n, (i - 1) * n, n, n) = eye;
  return cm;
}

namespace {

// Power-iteration screen for defective near-unit eigenvalues: polynomial
// growth shows as late, sustained norm increase well past any transient.
bool defective_growth(const Eigen::MatrixXd& W) {
  constexpr int kIters = 10000;
  Eigen::VectorXd x = Eigen::VectorXd::Ones(W.rows());
  for (Eigen::Index i = 0; i < x.size(); ++i) x[i] += 1e-3 * double(i % 7);
  x /= x.lpNorm<Eigen::Infinity>();

  double baseline = 1.0;
  double half_norm = 1.0;
  for (int m = 1; m <= kIters; ++m) {
    x = W * x;
    const double nrm = x.lpNorm<Eigen::Infinity>();
    if (!std::isfinite(nrm)) return true;
    if (m <= 100) baseline = std::max(baseline, nrm);
    if (m == kIters / 2) half_norm = nrm;
  }
  const double final_norm = x.lpNorm<Eigen::Infinity>();
  return final_norm > 1e3 * baseline && final_norm > 2.0 * half_norm;
}

}  // namespace

std::vector<StabilitySample> empirical_stability(const ImExScheme& sch,
                                                 const Splitting& split,
                                                 const std::vector<double>& k_grid) {
  if (sch.s * split.size() > 2000)
    throw std::invalid_argument("empirical stability is dense-only: s*N <= 2000");

  std::vector<StabilitySample> out;
  out.reserve(k_grid.size());
  for (double k : k_grid) {
    const CompanionMatrix cm = companion_matrix(sch, split, k);
    Eigen::EigenSolver<Eigen::MatrixXd> es(cm.W, /*computeEigenvectors=*/false);
    if (es.info() != Eigen::Success)
      throw std::runtime_error("companion eigensolver failed");
    const Eigen::VectorXcd evs = es.eigenvalues();

    StabilitySample sample;
    sample.k = k;
    sample.spectral_radius = evs.cwiseAbs().maxCoeff();
    sample.stable = sample.spectral_radius <= 1.0 + 1e-9;
    if (sample.stable) {
      bool near_circle = false;
      for (Eigen::Index i = 0; i < evs.size(); ++i) {
        const double mod = std::abs(evs[i]);
        if (mod >= 1.0 - 1e-7 && mod <= 1.0 + 1e-9) near_circle = true;
      }
      if (near_circle && defective_growth(cm.W)) sample.stable = false;
    }
    out.push_back(sample);
  }
  return out;
}

double global_error(const SteppingPlan& plan,
                    const std::function<Eigen::VectorXd(double)>& exact) {
  const Trajectory traj = run(plan);
  if (traj.overflow)
    throw std::runtime_error("time stepping overflowed: no meaningful global error");
  const Eigen::VectorXd reference = exact(traj.final_time());
  return (traj.final_state() - reference).lpNorm<Eigen::Infinity>();
}

}  // namespace imexstab
