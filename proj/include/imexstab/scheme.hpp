#pragma once

#include <Eigen/Dense>
#include <optional>

#include "imexstab/polynomial.hpp"

namespace imexstab {

/// ImEx multistep coefficient set (a_j, b_j, c_j), j = 0..r, with s = r steps.
/// The scheme is implicit in A (c_s != 0) and explicit in B (b_s = 0), and c
/// is kept monic. Instances are immutable value types; every operation below
/// is a pure function.
struct ImExScheme {
  int r = 0;  ///< order
  int s = 0;  ///< step count; equal to r for every scheme constructed here
  std::optional<double> delta;  ///< family parameter; empty for generic root-built schemes
  Eigen::VectorXd a, b, c;      ///< monomial coefficients, ascending, size r+1

  /// Construction-exact data in the (z-1) basis. The roots of c cluster at
  /// z = 1 when delta is small, and the monomial basis loses all relative
  /// accuracy there; the stability code prefers these representations.
  Eigen::VectorXd a_shift, c_shift;

  bool has_shift_data() const {
    return a_shift.size() == r + 1 && c_shift.size() == r + 1;
  }

  /// c(1); equals delta^r exactly for the delta family when shift data is present.
  double c_at_1() const { return has_shift_data() ? c_shift[0] : c.sum(); }
  /// b(1); equals c(1) because b = c - (z-1)^r coefficientwise.
  double b_at_1() const { return has_shift_data() ? c_shift[0] : b.sum(); }
  /// a(1); exactly zero for constructor-produced schemes (first order condition).
  double a_at_1() const { return has_shift_data() ? a_shift[0] : a.sum(); }
};

/// Scheme of order r with the r-fold implicit root at z = 1 - delta:
/// c(z) = (z-1+delta)^r, b(z) = c(z) - (z-1)^r, and a(z) the degree-r Taylor
/// polynomial about z = 1 of ln(z) * c(z). Requires 1 <= r <= 5 and
/// 0 < delta <= 1.
ImExScheme build_scheme(int r, double delta);

/// Same coefficients, obtained by evaluating the closed-form polynomials in
/// delta (hard-coded tables), independent of the Taylor-series path.
ImExScheme tabulated_scheme(int r, double delta);

/// Generic scheme defined by the roots of c(z). Roots must be closed under
/// conjugation (real coefficients) and satisfy |root| <= 1. When every root
/// equals one common real value 1 - delta, the result coincides with
/// build_scheme(r, delta) and the delta field is populated.
ImExScheme scheme_from_c_roots(const Eigen::VectorXcd& roots);

/// Maximum absolute violation over the 2r+1 order conditions:
/// sum a_j = 0;  sum j^q/q! a_j = sum j^(q-1)/(q-1)! c_j
///                             = sum j^(q-1)/(q-1)! b_j,  q = 1..r.
double order_condition_residual(const ImExScheme& scheme);

struct ZeroStabilityResult {
  bool stable = false;
  Eigen::VectorXcd a_roots;
};

/// Root condition on a(z): every simple root within |z| <= 1 + 1e-9, every
/// repeated root within |z| < 1 - 1e-9. Multiplicity is detected by
/// clustering roots at distance 1e-7.
ZeroStabilityResult zero_stability(const ImExScheme& scheme);

struct ErrorConstants {
  double C_I = 0.0, C_E = 0.0;  ///< leading GTE constants, R / c(1) and R / b(1)
  double R_I = 0.0, R_E = 0.0;  ///< residuals of the (r+1)-th order conditions
};

/// Leading-order error constants; throws if b(1) = 0 or c(1) = 0.
ErrorConstants error_constants(const ImExScheme& scheme);

}  // namespace imexstab
