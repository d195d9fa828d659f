#include "imexstab/polynomial.hpp"

#include <Eigen/Eigenvalues>
#include <stdexcept>

namespace imexstab::poly {

ComplexPolynomial from_roots(const Eigen::VectorXcd& roots) {
  ComplexPolynomial p(1);
  p[0] = Complex(1.0, 0.0);
  for (Eigen::Index i = 0; i < roots.size(); ++i) {
    ComplexPolynomial q = ComplexPolynomial::Zero(p.size() + 1);
    q.tail(p.size()) = p;           // z * p(z)
    q.head(p.size()) -= roots[i] * p;
    p.swap(q);
  }
  return p;
}

ComplexPolynomial derivative(const ComplexPolynomial& p) {
  if (p.size() <= 1) return ComplexPolynomial::Zero(1);
  ComplexPolynomial d(p.size() - 1);
  for (Eigen::Index j = 1; j < p.size(); ++j) d[j - 1] = double(j) * p[j];
  return d;
}

ComplexPolynomial shift_to_center_one(const ComplexPolynomial& p) {
  // q(w) = p(1 + w), built by Horner: q <- q*(w + 1) + p[j], j descending.
  ComplexPolynomial q = ComplexPolynomial::Zero(p.size());
  for (Eigen::Index j = p.size() - 1; j >= 0; --j) {
    for (Eigen::Index i = q.size() - 1; i >= 1; --i) q[i] += q[i - 1];
    q[0] += p[j];
  }
  return q;
}

ComplexPolynomial unshift_from_center_one(const ComplexPolynomial& q) {
  // p(z) = q(z - 1), built by Horner: p <- p*(z - 1) + q[j], j descending.
  ComplexPolynomial p = ComplexPolynomial::Zero(q.size());
  for (Eigen::Index j = q.size() - 1; j >= 0; --j) {
    for (Eigen::Index i = p.size() - 1; i >= 1; --i) p[i] = p[i - 1] - p[i];
    p[0] = q[j] - p[0];
  }
  return p;
}

namespace {

// Parlett-Reinsch balancing (radix 2), in place. A similarity transform,
// so eigenvalues are unchanged.
void balance(Eigen::MatrixXcd& A) {
  const Eigen::Index n = A.rows();
  bool done = false;
  while (!done) {
    done = true;
    for (Eigen::Index i = 0; i < n; ++i) {
      double c = 0.0, r = 0.0;
      for (Eigen::Index j = 0; j < n; ++j) {
        if (j == i) continue;
        c += std::abs(A(j, i));
        r += std::abs(A(i, j));
      }
      if (c == 0.0 || r == 0.0) continue;
      double f = 1.0;
      const double s = c + r;
      while (c < r / 2.0) { c *= 2.0; r /= 2.0; f *= 2.0; }
      while (c > r * 2.0) { c /= 2.0; r *= 2.0; f /= 2.0; }
      if (f != 1.0 && c + r < 0.95 * s) {
        done = false;
        A.row(i) /= f;
        A.col(i) *= f;
      }
    }
  }
}

}  // namespace

Eigen::VectorXcd roots(const ComplexPolynomial& p, bool* degree_dropped) {
  if (degree_dropped) *degree_dropped = false;
  if (p.size() == 0) throw std::invalid_argument("polynomial has no coefficients");
  const double scale = p.cwiseAbs().maxCoeff();
  if (scale == 0.0) throw std::invalid_argument("zero polynomial has no root set");

  Eigen::Index deg = p.size() - 1;
  while (deg > 0 && std::abs(p[deg]) <= 1e-14 * scale) --deg;
  if (degree_dropped) *degree_dropped = (deg != p.size() - 1);
  if (deg == 0) return Eigen::VectorXcd(0);
  if (deg == 1) {
    Eigen::VectorXcd out(1);
    out[0] = -p[0] / p[1];
    return out;
  }

  Eigen::MatrixXcd C = Eigen::MatrixXcd::Zero(deg, deg);
  for (Eigen::Index i = 1; i < deg; ++i) C(i, i - 1) = 1.0;
  for (Eigen::Index i = 0; i < deg; ++i) C(i, deg - 1) = -p[i] / p[deg];
  balance(C);

  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(C, /*computeEigenvectors=*/false);
  if (es.info() != Eigen::Success) throw std::runtime_error("companion eigensolver failed");
  return es.eigenvalues();
}

}  // namespace imexstab::poly
