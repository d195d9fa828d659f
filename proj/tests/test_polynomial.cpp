#include <doctest.h>

#include <random>

#include "imexstab/polynomial.hpp"

using namespace imexstab;

TEST_CASE("from_roots builds monic polynomials") {
  Eigen::VectorXcd roots(2);
  roots << Complex(2.0, 0.0), Complex(-3.0, 0.0);
  const ComplexPolynomial p = poly::from_roots(roots);  // (z-2)(z+3) = z^2+z-6
  CHECK(p[2] == Complex(1.0, 0.0));
  CHECK(p[1].real() == doctest::Approx(1.0));
  CHECK(p[0].real() == doctest::Approx(-6.0));
}

TEST_CASE("basis shift round trip") {
  std::mt19937_64 rng(11);
  std::normal_distribution<double> gauss;
  for (int trial = 0; trial < 20; ++trial) {
    ComplexPolynomial p(6);
    for (int j = 0; j < 6; ++j) p[j] = Complex(gauss(rng), gauss(rng));
    const ComplexPolynomial q = poly::shift_to_center_one(p);
    const ComplexPolynomial back = poly::unshift_from_center_one(q);
    CHECK((back - p).cwiseAbs().maxCoeff() < 1e-13 * p.cwiseAbs().maxCoeff());

    // q(w) must equal p(1 + w)
    const Complex w(0.3, -0.7);
    CHECK(std::abs(poly::eval(q, w) - poly::eval(p, 1.0 + w)) < 1e-13);
  }
}

TEST_CASE("companion roots recover known factorizations") {
  Eigen::VectorXcd roots(3);
  roots << Complex(0.5, 0.5), Complex(0.5, -0.5), Complex(-0.25, 0.0);
  const ComplexPolynomial p = poly::from_roots(roots);
  Eigen::VectorXcd computed = poly::roots(p);
  REQUIRE(computed.size() == 3);
  for (Eigen::Index i = 0; i < 3; ++i) {
    double best = 1e9;
    for (Eigen::Index j = 0; j < 3; ++j) best = std::min(best, std::abs(computed[i] - roots[j]));
    CHECK(best < 1e-12);
  }
}

TEST_CASE("roots reports degree drop from tiny leading coefficients") {
  ComplexPolynomial p(3);
  p << Complex(-1.0, 0.0), Complex(1.0, 0.0), Complex(1e-300, 0.0);
  bool dropped = false;
  const Eigen::VectorXcd r = poly::roots(p, &dropped);
  CHECK(dropped);
  REQUIRE(r.size() == 1);
  CHECK(std::abs(r[0] - Complex(1.0, 0.0)) < 1e-12);
}

TEST_CASE("roots survive badly scaled coefficients") {
  // 1e8 (z - 0.5)(z - 2): balancing keeps the root positions accurate
  Eigen::VectorXcd roots(2);
  roots << Complex(0.5, 0.0), Complex(2.0, 0.0);
  ComplexPolynomial p = 1e8 * poly::from_roots(roots);
  const Eigen::VectorXcd computed = poly::roots(p);
  REQUIRE(computed.size() == 2);
  const double lo = std::min(std::abs(computed[0]), std::abs(computed[1]));
  const double hi = std::max(std::abs(computed[0]), std::abs(computed[1]));
  CHECK(lo == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(hi == doctest::Approx(2.0).epsilon(1e-12));
}
