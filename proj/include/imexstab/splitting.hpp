#pragma once

#include <optional>
#include <vector>

#include "imexstab/region.hpp"

namespace imexstab {

/// Validated matrix splitting u' = A u + B u with A real symmetric negative
/// definite.
struct Splitting {
  Eigen::MatrixXd A, B;
  Eigen::Index size() const { return A.rows(); }
};

/// Checks dimensions, symmetry of A (max |A - A^T| <= 1e-12 ||A||) and
/// negative definiteness (largest eigenvalue < -1e-12 ||A||); throws
/// std::invalid_argument otherwise.
Splitting validate_splitting(const Eigen::MatrixXd& A, const Eigen::MatrixXd& B);

/// Sampled boundary of a numerical range.
struct RangeBoundary {
  double p = 1.0;                      ///< weight exponent (when from wp_set)
  ComplexCurve points;                 ///< support points, convex closed curve
  std::vector<double> support_angles;  ///< angles at which supports were taken
};

/// Boundary of the numerical range W(X) = { <x, X x> : ||x|| = 1 } by
/// support points: for each angle the top eigenvector v of the Hermitian
/// part of e^{i theta} X contributes <v, X v>. Consecutive duplicate points
/// (degenerate ranges) are merged. Requires n_angles >= 8.
RangeBoundary numerical_range_boundary(const Eigen::MatrixXcd& X, int n_angles);

/// Support function values max Re(e^{i theta} W(X)) at the given angles.
std::vector<double> support_values(const Eigen::MatrixXcd& X,
                                   const std::vector<double>& angles);

/// Generalized range W_p = W((-A)^(p/2-1) B (-A)^(-p/2)), fractional powers
/// via the symmetric eigendecomposition of -A.
RangeBoundary wp_set(const Splitting& split, double p, int n_angles);

/// Eigenvalues mu of mu (-A) u = B u, computed from the similar matrix
/// (-A)^(-1/2) B (-A)^(-1/2).
Eigen::VectorXcd generalized_spectrum(const Splitting& split);

enum class CertifyStatus { CertifiedSufficient, ViolatesNecessary, Inconclusive };

struct StabilityVerdict {
  CertifyStatus status = CertifyStatus::Inconclusive;
  std::optional<Complex> witness;  ///< range point outside the region, or an
                                   ///< eigenvalue violating the necessary condition
  double p_used = 1.0;
  double delta = 0.0;
  int r = 0;
  int n_range_points = 0;  ///< sampling density of the range boundary test
};

/// Certification against the order-r, parameter-delta scheme:
///   - CertifiedSufficient when every sampled W_p boundary point (support
///     points plus their midpoints) lies in the unconditional-stability
///     region;
///   - ViolatesNecessary when some generalized eigenvalue is outside the
///     region and farther than 1e-6 * max(|m_l|, 1) from the sampled
///     limiting locus;
///   - Inconclusive otherwise, with the worst excursion as witness.
StabilityVerdict certify(const Splitting& split, int r, double delta,
                         double p = 1.0, int n_angles = 256);

/// Largest grid value whose certification is CertifiedSufficient; the grid
/// must be descending. Returns nullopt when no grid point certifies.
std::optional<double> largest_stable_delta(const Splitting& split, int r, double p,
                                           const std::vector<double>& delta_grid,
                                           int n_angles = 256);

const char* to_string(CertifyStatus status);

}  // namespace imexstab
