#include "imexstab/splitting.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "imexstab/parallel.hpp"

namespace imexstab {

namespace {

const double kPi = std::numbers::pi;

// (-A)^e through the cached eigendecomposition of -A.
struct NegAPowers {
  Eigen::MatrixXd U;
  Eigen::VectorXd lambda;  // eigenvalues of -A, all positive

  explicit NegAPowers(const Eigen::MatrixXd& A) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(-A);
    if (es.info() != Eigen::Success)
      throw std::runtime_error("eigendecomposition of -A failed");
    U = es.eigenvectors();
    lambda = es.eigenvalues();
    const double top = lambda.maxCoeff();
    if (lambda.minCoeff() < 1e-12 * top)
      throw std::runtime_error(
          "fractional powers of -A are ill conditioned: eigenvalue below 1e-12 * ||A||");
  }

  Eigen::MatrixXd pow(double e) const {
    return U * lambda.array().pow(e).matrix().asDiagonal() * U.transpose();
  }
};

}  // namespace

Splitting validate_splitting(const Eigen::MatrixXd& A, const Eigen::MatrixXd& B) {
  if (A.rows() != A.cols() || B.rows() != B.cols() || A.rows() != B.rows())
    throw std::invalid_argument("splitting requires square matrices of equal dimension");
  if (A.rows() == 0) throw std::invalid_argument("splitting requires a nonempty matrix");

  const double scale = A.cwiseAbs().maxCoeff();
  if ((A - A.transpose()).cwiseAbs().maxCoeff() > 1e-12 * scale)
    throw std::invalid_argument("A is not symmetric");

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(A, Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success)
    throw std::runtime_error("eigendecomposition of A failed");
  const double top = es.eigenvalues().maxCoeff();
  const double norm = es.eigenvalues().cwiseAbs().maxCoeff();
  if (!(top < -1e-12 * norm))
    throw std::invalid_argument("A is not negative definite (largest eigenvalue " +
                                std::to_string(top) + ")");
  return Splitting{A, B};
}

RangeBoundary numerical_range_boundary(const Eigen::MatrixXcd& X, int n_angles) {
  if (n_angles < 8) throw std::invalid_argument("numerical range needs n_angles >= 8");
  if (X.rows() != X.cols() || X.rows() == 0)
    throw std::invalid_argument("numerical range needs a square matrix");

  std::vector<Complex> raw(n_angles);
  std::vector<double> angles(n_angles);
  parallel_for(n_angles, [&](std::ptrdiff_t k) {
    const double theta = 2.0 * kPi * double(k) / n_angles;
    angles[k] = theta;
    const Eigen::MatrixXcd M = std::polar(1.0, theta) * X;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(0.5 * (M + M.adjoint()));
    if (es.info() != Eigen::Success)
      throw std::runtime_error("Hermitian eigensolver failed in numerical range");
    const Eigen::VectorXcd v = es.eigenvectors().col(X.rows() - 1);
    raw[k] = (v.adjoint() * X * v)(0);
  });

  RangeBoundary rb;
  rb.support_angles = std::move(angles);
  rb.points.closed = true;
  rb.points.meta = "numerical range support points, " + std::to_string(n_angles) + " angles";
  for (int k = 0; k < n_angles; ++k) {
    if (!rb.points.points.empty() &&
        std::abs(raw[k] - rb.points.points.back()) <= 1e-14 * (1.0 + std::abs(raw[k])))
      continue;  // degenerate range: drop duplicate support points
    rb.points.points.push_back(raw[k]);
    rb.points.thetas.push_back(rb.support_angles[k]);
  }
  if (rb.points.points.size() > 1) {
    const Complex first = rb.points.points.front(), last = rb.points.points.back();
    if (std::abs(first - last) <= 1e-14 * (1.0 + std::abs(first))) {
      rb.points.points.pop_back();
      rb.points.thetas.pop_back();
    }
  }
  return rb;
}

std::vector<double> support_values(const Eigen::MatrixXcd& X,
                                   const std::vector<double>& angles) {
  std::vector<double> out(angles.size());
  parallel_for(std::ptrdiff_t(angles.size()), [&](std::ptrdiff_t k) {
    const Eigen::MatrixXcd M = std::polar(1.0, angles[k]) * X;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(0.5 * (M + M.adjoint()),
                                                       Eigen::EigenvaluesOnly);
    if (es.info() != Eigen::Success)
      throw std::runtime_error("Hermitian eigensolver failed in support function");
    out[k] = es.eigenvalues().maxCoeff();
  });
  return out;
}

RangeBoundary wp_set(const Splitting& split, double p, int n_angles) {
  const NegAPowers powers(split.A);
  const Eigen::MatrixXd X = powers.pow(p / 2.0 - 1.0) * split.B * powers.pow(-p / 2.0);
  RangeBoundary rb = numerical_range_boundary(X.cast<Complex>(), n_angles);
  rb.p = p;
  return rb;
}

Eigen::VectorXcd generalized_spectrum(const Splitting& split) {
  const NegAPowers powers(split.A);
  const Eigen::MatrixXd X = powers.pow(-0.5) * split.B * powers.pow(-0.5);
  Eigen::EigenSolver<Eigen::MatrixXd> es(X, /*computeEigenvectors=*/false);
  if (es.info() != Eigen::Success)
    throw std::runtime_error("generalized spectrum eigensolver failed");
  return es.eigenvalues();
}

const char* to_string(CertifyStatus status) {
  switch (status) {
    case CertifyStatus::CertifiedSufficient: return "certified_sufficient";
    case CertifyStatus::ViolatesNecessary: return "violates_necessary";
    case CertifyStatus::Inconclusive: return "inconclusive";
  }
  return "unknown";
}

StabilityVerdict certify(const Splitting& split, int r, double delta, double p,
                         int n_angles) {
  const ImExScheme scheme = build_scheme(r, delta);
  const RangeBoundary wp = wp_set(split, p, n_angles);

  // Support points plus midpoints of consecutive support points; both lie in
  // the convex range, so membership failures are genuine excursions.
  std::vector<Complex> probes = wp.points.points;
  const std::size_t m = wp.points.points.size();
  if (m > 1)
    for (std::size_t i = 0; i < m; ++i)
      probes.push_back(0.5 * (wp.points.points[i] + wp.points.points[(i + 1) % m]));

  StabilityVerdict verdict;
  verdict.p_used = p;
  verdict.delta = delta;
  verdict.r = r;
  verdict.n_range_points = int(probes.size());

  std::vector<char> inside(probes.size());
  parallel_for(std::ptrdiff_t(probes.size()), [&](std::ptrdiff_t i) {
    inside[i] = member_unconditional(probes[i], scheme) ? 1 : 0;
  });

  std::vector<Complex> excursions;
  for (std::size_t i = 0; i < probes.size(); ++i)
    if (!inside[i]) excursions.push_back(probes[i]);

  if (excursions.empty()) {
    verdict.status = CertifyStatus::CertifiedSufficient;
    return verdict;
  }

  const ComplexCurve locus = boundary_locus(-std::numeric_limits<double>::infinity(),
                                            scheme, 4096);
  auto locus_distance = [&locus](Complex point) {
    double best = std::numeric_limits<double>::infinity();
    for (const Complex& q : locus.points) best = std::min(best, std::abs(point - q));
    return best;
  };

  const double scale = std::max(std::abs(extreme_points(r, delta).first), 1.0);
  const Eigen::VectorXcd evs = generalized_spectrum(split);
  std::optional<Complex> worst_eig;
  double worst_eig_dist = 0.0;
  for (Eigen::Index i = 0; i < evs.size(); ++i) {
    if (member_infinite(evs[i], scheme)) continue;
    const double dist = locus_distance(evs[i]);
    if (dist > 1e-6 * scale && dist > worst_eig_dist) {
      worst_eig = evs[i];
      worst_eig_dist = dist;
    }
  }
  if (worst_eig) {
    verdict.status = CertifyStatus::ViolatesNecessary;
    verdict.witness = worst_eig;
    return verdict;
  }

  verdict.status = CertifyStatus::Inconclusive;
  Complex worst = excursions.front();
  double worst_dist = -1.0;
  for (const Complex& e : excursions) {
    const double dist = locus_distance(e);
    if (dist > worst_dist) {
      worst_dist = dist;
      worst = e;
    }
  }
  verdict.witness = worst;
  return verdict;
}

std::optional<double> largest_stable_delta(const Splitting& split, int r, double p,
                                           const std::vector<double>& delta_grid,
                                           int n_angles) {
  for (std::size_t i = 0; i + 1 < delta_grid.size(); ++i)
    if (!(delta_grid[i] > delta_grid[i + 1]))
      throw std::invalid_argument("delta grid must be strictly descending");
  for (double delta : delta_grid)
    if (certify(split, r, delta, p, n_angles).status == CertifyStatus::CertifiedSufficient)
      return delta;
  return std::nullopt;
}

}  // namespace imexstab
