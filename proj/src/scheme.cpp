#include "imexstab/scheme.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace imexstab {

namespace {

double binomial(int n, int k) {
  double v = 1.0;
  for (int i = 1; i <= k; ++i) v = v * double(n - k + i) / double(i);
  return v;
}

// Coefficients of (z-1)^r in the monomial basis, ascending.
Eigen::VectorXd z_minus_one_pow(int r) {
  Eigen::VectorXd p(r + 1);
  for (int j = 0; j <= r; ++j)
    p[j] = binomial(r, j) * (((r - j) % 2 == 0) ? 1.0 : -1.0);
  return p;
}

// Degree-r truncation of ln(z) * c(z) in the (z-1) basis, from the (z-1)
// basis coefficients of c. ln z = sum_{m>=1} (-1)^(m+1) (z-1)^m / m.
Eigen::VectorXd log_times_truncated(const Eigen::VectorXd& c_shift, int r) {
  Eigen::VectorXd aw = Eigen::VectorXd::Zero(r + 1);
  for (int m = 1; m <= r; ++m) {
    const double coef = ((m % 2 == 1) ? 1.0 : -1.0) / double(m);
    for (int j = 0; j + m <= r; ++j) aw[m + j] += coef * c_shift[j];
  }
  return aw;
}

Eigen::VectorXd to_monomial(const Eigen::VectorXd& shifted) {
  ComplexPolynomial q = shifted.cast<Complex>();
  return poly::unshift_from_center_one(q).real();
}

void check_order(int r) {
  if (r < 1 || r > 5) throw std::invalid_argument("order r must be in 1..5");
}

void check_delta(double delta) {
  if (!(delta > 0.0) || !(delta <= 1.0))
    throw std::invalid_argument("delta must lie in (0, 1]");
}

ImExScheme assemble_from_shift(int r, const Eigen::VectorXd& c_shift,
                               const Eigen::VectorXd& c_monomial) {
  ImExScheme sch;
  sch.r = r;
  sch.s = r;
  sch.c = c_monomial;
  sch.b = c_monomial - z_minus_one_pow(r);
  sch.c_shift = c_shift;
  sch.a_shift = log_times_truncated(c_shift, r);
  sch.a = to_monomial(sch.a_shift);
  return sch;
}

}  // namespace

ImExScheme build_scheme(int r, double delta) {
  check_order(r);
  check_delta(delta);

  // c(z) = (z-1+delta)^r: binomial expansions in both bases.
  Eigen::VectorXd c_shift(r + 1), c_mono(r + 1);
  for (int j = 0; j <= r; ++j) {
    c_shift[j] = binomial(r, j) * std::pow(delta, r - j);
    c_mono[j] = binomial(r, j) * std::pow(delta - 1.0, r - j);
  }
  ImExScheme sch = assemble_from_shift(r, c_shift, c_mono);
  sch.delta = delta;
  return sch;
}

ImExScheme tabulated_scheme(int r, double delta) {
  check_order(r);
  check_delta(delta);
  const double d = delta;
  const double d2 = d * d, d3 = d2 * d, d4 = d3 * d, d5 = d4 * d;
  const double e = d - 1.0;

  ImExScheme sch;
  sch.r = r;
  sch.s = r;
  sch.delta = delta;
  sch.a.resize(r + 1);
  sch.b.resize(r + 1);
  sch.c.resize(r + 1);

  switch (r) {
    case 1:
      sch.a << -d, d;
      sch.c << e, 1;
      sch.b << d, 0;
      break;
    case 2:
      sch.a << 2 * d - 1.5 * d2, -4 * d + 2 * d2, 2 * d - 0.5 * d2;
      sch.c << e * e, 2 * e, 1;
      sch.b << e * e - 1, 2 * d, 0;
      break;
    case 3:
      sch.a << -3 * d + 4.5 * d2 - (11.0 / 6.0) * d3,
               9 * d - 10.5 * d2 + 3 * d3,
               -9 * d + 7.5 * d2 - 1.5 * d3,
               3 * d - 1.5 * d2 + (1.0 / 3.0) * d3;
      sch.c << e * e * e, 3 * e * e, 3 * e, 1;
      sch.b << e * e * e + 1, -6 * d + 3 * d2, 3 * d, 0;
      break;
    case 4:
      sch.a << 4 * d - 9 * d2 + (22.0 / 3.0) * d3 - (25.0 / 12.0) * d4,
               -16 * d + 30 * d2 - (58.0 / 3.0) * d3 + 4 * d4,
               24 * d - 36 * d2 + 18 * d3 - 3 * d4,
               -16 * d + 18 * d2 - (22.0 / 3.0) * d3 + (4.0 / 3.0) * d4,
               4 * d - 3 * d2 + (4.0 / 3.0) * d3 - 0.25 * d4;
      sch.c << e * e * e * e, 4 * e * e * e, 6 * e * e, 4 * e, 1;
      sch.b << e * e * e * e - 1, 12 * d - 12 * d2 + 4 * d3, -12 * d + 6 * d2,
               4 * d, 0;
      break;
    case 5:
      sch.a << -5 * d + 15 * d2 - (55.0 / 3.0) * d3 + (125.0 / 12.0) * d4 - (137.0 / 60.0) * d5,
               25 * d - 65 * d2 + (200.0 / 3.0) * d3 - (365.0 / 12.0) * d4 + 5 * d5,
               -50 * d + 110 * d2 - (280.0 / 3.0) * d3 + 35 * d4 - 5 * d5,
               50 * d - 90 * d2 + (190.0 / 3.0) * d3 - (65.0 / 3.0) * d4 + (10.0 / 3.0) * d5,
               -25 * d + 35 * d2 - (65.0 / 3.0) * d3 + (95.0 / 12.0) * d4 - 1.25 * d5,
               5 * d - 5 * d2 + (10.0 / 3.0) * d3 - 1.25 * d4 + 0.2 * d5;
      sch.c << e * e * e * e * e, 5 * e * e * e * e, 10 * e * e * e, 10 * e * e,
               5 * e, 1;
      sch.b << e * e * e * e * e + 1, -20 * d + 30 * d2 - 20 * d3 + 5 * d4,
               30 * d - 30 * d2 + 10 * d3, -20 * d + 10 * d2, 5 * d, 0;
      break;
  }

  // Derived (z-1)-basis data; the constant term of a_shift is pinned to the
  // exact order-condition value a(1) = 0.
  Eigen::VectorXd c_shift(r + 1);
  for (int j = 0; j <= r; ++j) c_shift[j] = binomial(r, j) * std::pow(d, r - j);
  sch.c_shift = c_shift;
  sch.a_shift = poly::shift_to_center_one(sch.a.cast<Complex>()).real();
  sch.a_shift[0] = 0.0;
  return sch;
}

ImExScheme scheme_from_c_roots(const Eigen::VectorXcd& roots) {
  const int r = int(roots.size());
  check_order(r);

  for (int i = 0; i < r; ++i)
    if (std::abs(roots[i]) > 1.0 + 1e-12)
      throw std::invalid_argument("roots of c must satisfy |root| <= 1");

  // Conjugate closure: every nonreal root needs an unused conjugate partner.
  {
    std::vector<bool> used(r, false);
    for (int i = 0; i < r; ++i) {
      if (used[i] || std::abs(roots[i].imag()) <= 1e-12) continue;
      bool found = false;
      for (int j = 0; j < r; ++j) {
        if (used[j] || j == i) continue;
        if (std::abs(roots[j] - std::conj(roots[i])) <= 1e-10) {
          used[i] = used[j] = true;
          found = true;
          break;
        }
      }
      if (!found)
        throw std::invalid_argument("root set is not closed under conjugation");
    }
  }

  // c in both bases; the shifted roots 1 - root keep small offsets exact.
  Eigen::VectorXcd shifted_roots(r);
  for (int i = 0; i < r; ++i) shifted_roots[i] = -(Complex(1.0, 0.0) - roots[i]);
  const ComplexPolynomial c_shift_c = poly::from_roots(shifted_roots);
  const ComplexPolynomial c_mono_c = poly::from_roots(roots);
  if (c_shift_c.imag().cwiseAbs().maxCoeff() > 1e-12 ||
      c_mono_c.imag().cwiseAbs().maxCoeff() > 1e-12)
    throw std::invalid_argument("root set does not define a real polynomial");

  ImExScheme sch = assemble_from_shift(r, c_shift_c.real(), c_mono_c.real());

  // Detect the locked-root family: all roots equal to one real value in [0, 1).
  bool locked = true;
  for (int i = 0; i < r; ++i)
    if (std::abs(roots[i] - roots[0]) > 1e-12 || std::abs(roots[i].imag()) > 1e-12)
      locked = false;
  if (locked) {
    const double delta = 1.0 - roots[0].real();
    if (delta > 0.0 && delta <= 1.0) sch.delta = delta;
  }
  return sch;
}

double order_condition_residual(const ImExScheme& scheme) {
  const int r = scheme.r;
  double worst = std::abs(scheme.a.sum());
  double fact_q = 1.0;    // q!
  double fact_qm1 = 1.0;  // (q-1)!
  for (int q = 1; q <= r; ++q) {
    fact_q *= q;
    double sa = 0.0, sb = 0.0, sc = 0.0;
    for (int j = 0; j <= r; ++j) {
      const double jqm1 = std::pow(double(j), q - 1);  // 0^0 == 1
      sa += scheme.a[j] * jqm1 * double(j) / fact_q;
      sc += scheme.c[j] * jqm1 / fact_qm1;
      sb += scheme.b[j] * jqm1 / fact_qm1;
    }
    worst = std::max({worst, std::abs(sa - sc), std::abs(sa - sb)});
    fact_qm1 *= q;
  }
  return worst;
}

ZeroStabilityResult zero_stability(const ImExScheme& scheme) {
  constexpr double kCircleTol = 1e-9;
  constexpr double kClusterTol = 1e-7;

  ZeroStabilityResult result;
  if (scheme.has_shift_data()) {
    // a(1) = 0 exactly, so factor the root at z = 1 out of the shifted form
    // and solve the remaining degree r-1 polynomial near w = 0.
    const Eigen::VectorXd& aw = scheme.a_shift;
    ComplexPolynomial reduced = aw.tail(aw.size() - 1).cast<Complex>();
    Eigen::VectorXcd w = poly::roots(reduced);
    result.a_roots.resize(w.size() + 1);
    result.a_roots[0] = Complex(1.0, 0.0);
    for (Eigen::Index i = 0; i < w.size(); ++i) result.a_roots[i + 1] = 1.0 + w[i];
  } else {
    result.a_roots = poly::roots(scheme.a.cast<Complex>());
  }

  const Eigen::Index n = result.a_roots.size();
  std::vector<int> multiplicity(n, 1);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j)
      if (i != j && std::abs(result.a_roots[i] - result.a_roots[j]) < kClusterTol)
        ++multiplicity[i];

  result.stable = true;
  for (Eigen::Index i = 0; i < n; ++i) {
    const double mod = std::abs(result.a_roots[i]);
    if (multiplicity[i] == 1) {
      if (mod > 1.0 + kCircleTol) result.stable = false;
    } else {
      if (mod >= 1.0 - kCircleTol) result.stable = false;
    }
  }
  return result;
}

ErrorConstants error_constants(const ImExScheme& scheme) {
  const int r = scheme.r;
  double factrp1 = 1.0;
  for (int i = 2; i <= r + 1; ++i) factrp1 *= i;

  ErrorConstants ec;
  for (int j = 0; j <= r; ++j) {
    const double jr = std::pow(double(j), r);
    const double jr1 = jr * double(j);
    ec.R_I += scheme.a[j] * jr1 - (r + 1) * scheme.c[j] * jr;
    ec.R_E += scheme.a[j] * jr1 - (r + 1) * scheme.b[j] * jr;
  }
  ec.R_I /= factrp1;
  ec.R_E /= factrp1;

  const double c1 = scheme.c_at_1();
  const double b1 = scheme.b_at_1();
  if (c1 == 0.0 || b1 == 0.0)
    throw std::invalid_argument("error constants undefined: b(1) or c(1) vanishes");
  ec.C_I = ec.R_I / c1;
  ec.C_E = ec.R_E / b1;
  return ec;
}

}  // namespace imexstab
