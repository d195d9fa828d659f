#pragma once

#include <Eigen/Dense>
#include <complex>

namespace imexstab {

using Complex = std::complex<double>;

/// Dense univariate polynomial, coefficients ascending in degree:
/// p(z) = coeffs[0] + coeffs[1] z + ... + coeffs[n] z^n.
using ComplexPolynomial = Eigen::VectorXcd;

namespace poly {

/// Horner evaluation.
template <typename Derived>
Complex eval(const Eigen::MatrixBase<Derived>& p, Complex z) {
  Complex acc(0.0, 0.0);
  for (Eigen::Index j = p.size() - 1; j >= 0; --j) acc = acc * z + Complex(p[j]);
  return acc;
}

/// Monic polynomial with the given roots.
ComplexPolynomial from_roots(const Eigen::VectorXcd& roots);

ComplexPolynomial derivative(const ComplexPolynomial& p);

/// Rewrite p(z) as q(w) with z = 1 + w (Horner shift).
ComplexPolynomial shift_to_center_one(const ComplexPolynomial& p);

/// Inverse of shift_to_center_one: q(w) -> p(z) = q(z - 1).
ComplexPolynomial unshift_from_center_one(const ComplexPolynomial& q);

/// All roots of p, computed as the eigenvalues of the balanced companion
/// matrix of the monic-normalized polynomial. Coefficients whose magnitude
/// falls below 1e-14 * max|coeff| at the leading end are trimmed first;
/// *degree_dropped reports whether trimming lowered the nominal degree.
Eigen::VectorXcd roots(const ComplexPolynomial& p, bool* degree_dropped = nullptr);

}  // namespace poly
}  // namespace imexstab
