#pragma once

#include <string>
#include <utility>
#include <vector>

#include "imexstab/scheme.hpp"

namespace imexstab {

/// Sampled curve in the complex plane.
struct ComplexCurve {
  std::vector<Complex> points;  ///< ordered samples
  std::vector<double> thetas;   ///< unit-circle parameter of each sample
  bool closed = false;
  std::string meta;  ///< parameterization source and range, skipped samples
};

/// Closed-form geometry of the unconditional-stability region of the
/// delta family at order r.
struct RegionSummary {
  int r = 0;
  double delta = 0.0;
  double m_l = 0.0, m_r = 0.0;          ///< extreme real boundary points
  double circle_center = 0.0;           ///< asymptotic circle, on the real axis
  double circle_radius = 0.0;
  Complex z0;                           ///< boundary parameter start point
};

enum class Membership { Inside, Boundary, Outside };

/// Classification of mu against the limiting region: roots of c - mu b,
/// strictly inside meaning |z| < 1 - 1e-10 for every root. Root moduli in
/// [1 - 1e-10, 1 + 1e-10] classify as Boundary. A leading-coefficient drop
/// counts as a root at infinity (Outside).
Membership classify_infinite(Complex mu, const ImExScheme& scheme);

/// True iff classify_infinite returns Inside.
bool member_infinite(Complex mu, const ImExScheme& scheme);

/// Stability of a(z) - y c(z) + y mu b(z) for one finite y < 0: all roots
/// strictly inside the unit circle.
bool member_finite(Complex mu, double y, const ImExScheme& scheme);

/// Logarithmic y-grid specification used for generic (non-delta-family)
/// schemes.
struct YSampling {
  int count = 64;
  double y_min = -1e8;   ///< most negative y
  double y_max = -1e-8;  ///< least negative y
  std::vector<double> values() const;
};

struct UnconditionalMembership {
  bool member = false;
  /// True when the answer is exact for the family (the limiting region
  /// equals the full region); false when it was sampled over a y-grid.
  bool certified = false;
};

UnconditionalMembership member_unconditional_detail(Complex mu, const ImExScheme& scheme,
                                                    const YSampling& ys = {});
bool member_unconditional(Complex mu, const ImExScheme& scheme, const YSampling& ys = {});

/// Image of the unit circle under mu = (c(z) - a(z)/y) / b(z) at n uniform
/// angles; pass y = -infinity for the limiting locus c(z)/b(z). Samples with
/// |b(z)| < 1e-13 are skipped and counted in meta. Requires n >= 64.
ComplexCurve boundary_locus(double y, const ImExScheme& scheme, int n);

/// One point of the locus at angle theta (z = e^{i theta}).
Complex locus_point(double y, const ImExScheme& scheme, double theta);

/// Exact boundary of the limiting region for the delta family:
/// mu(z) = (z-1+delta)^r / ((z-1+delta)^r - (z-1)^r) on the arc
/// arg z0 <= arg z <= 2pi - arg z0. Sampled at n uniform angles inclusive of
/// the endpoints (n is bumped to the next odd value so the midpoint theta=pi
/// is hit exactly), plus 16 extra samples geometrically clustered at each
/// endpoint to resolve the corner at m_r.
ComplexCurve exact_boundary(int r, double delta, int n);

Complex boundary_start_point(int r, double delta);  ///< z0 of the arc
std::pair<double, double> extreme_points(int r, double delta);       ///< (m_l, m_r)
std::pair<double, double> asymptotic_circle(int r, double delta);    ///< (center, radius)

RegionSummary region_summary(int r, double delta);

/// Scaled distance of the finite-y boundary loci from the limiting region:
/// G = inf over ytilde in (0,1), theta of
///     (Re phi(w) - (1 - delta/2)) * (1 - y) / delta^2,
/// with w the locus point, phi(w) = (w/(w-1))^(1/r) on the principal branch
/// and y = 1 - 1/ytilde. Evaluated on an n_y x n_theta grid of cell
/// midpoints. Positive values certify that the limiting region is the full
/// unconditional-stability region. Requires 2 <= r <= 5.
double g_function(double delta, int r, int n_y = 400, int n_theta = 400);

}  // namespace imexstab
