#include <doctest.h>

#include <cmath>
#include <random>

#include "helpers.hpp"
#include "imexstab/scheme.hpp"

using namespace imexstab;

namespace {

double max_coeff_diff(const ImExScheme& x, const ImExScheme& y) {
  return std::max({(x.a - y.a).cwiseAbs().maxCoeff(), (x.b - y.b).cwiseAbs().maxCoeff(),
                   (x.c - y.c).cwiseAbs().maxCoeff()});
}

}  // namespace

TEST_CASE("order one is the forward/backward Euler pair") {
  const ImExScheme s = build_scheme(1, 1.0);
  CHECK(s.a[0] == doctest::Approx(-1.0));
  CHECK(s.a[1] == doctest::Approx(1.0));
  CHECK(s.c[0] == doctest::Approx(0.0));
  CHECK(s.c[1] == doctest::Approx(1.0));
  CHECK(s.b[0] == doctest::Approx(1.0));
  CHECK(s.b[1] == 0.0);
}

TEST_CASE("order two at delta=1 is SBDF2") {
  const ImExScheme s = build_scheme(2, 1.0);
  CHECK(s.a[0] == doctest::Approx(0.5));
  CHECK(s.a[1] == doctest::Approx(-2.0));
  CHECK(s.a[2] == doctest::Approx(1.5));
  CHECK(s.c[0] == doctest::Approx(0.0));
  CHECK(s.c[1] == doctest::Approx(0.0));
  CHECK(s.c[2] == doctest::Approx(1.0));
  CHECK(s.b[0] == doctest::Approx(-1.0));
  CHECK(s.b[1] == doctest::Approx(2.0));
  CHECK(s.b[2] == 0.0);
}

TEST_CASE("order three leading coefficient matches the closed form") {
  const ImExScheme s = build_scheme(3, 0.5);
  // 3 d - (3/2) d^2 + (1/3) d^3 at d = 1/2
  CHECK(s.a[3] == doctest::Approx(7.0 / 6.0).epsilon(1e-14));
}

TEST_CASE("tabulated coefficients: order one row in closed form") {
  const double d = 0.37;
  const ImExScheme s = tabulated_scheme(1, d);
  CHECK(s.a[0] == doctest::Approx(-d));
  CHECK(s.a[1] == doctest::Approx(d));
  CHECK(s.c[0] == doctest::Approx(d - 1.0));
  CHECK(s.c[1] == 1.0);
  CHECK(s.b[0] == doctest::Approx(d));
  CHECK(s.b[1] == 0.0);
}

TEST_CASE("tabulated coefficients: order two row in closed form") {
  const double d = 0.81;
  const ImExScheme s = tabulated_scheme(2, d);
  CHECK(s.a[0] == doctest::Approx(2 * d - 1.5 * d * d).epsilon(1e-14));
  CHECK(s.a[1] == doctest::Approx(-4 * d + 2 * d * d).epsilon(1e-14));
  CHECK(s.a[2] == doctest::Approx(2 * d - 0.5 * d * d).epsilon(1e-14));
}

TEST_CASE("the two construction paths agree across orders and deltas") {
  for (int r = 1; r <= 5; ++r) {
    for (int i = 1; i <= 50; ++i) {
      const double delta = double(i) / 50.0;
      const ImExScheme built = build_scheme(r, delta);
      const ImExScheme table = tabulated_scheme(r, delta);
      CHECK(max_coeff_diff(built, table) < 1e-12);
    }
  }
}

TEST_CASE("delta=1 recovers the classical SBDF family") {
  for (int r = 1; r <= 5; ++r) {
    const ImExScheme s = build_scheme(r, 1.0);
    for (int j = 0; j <= r; ++j) {
      CHECK(s.a[j] == doctest::Approx(testutil::kSbdfA[r][j]).epsilon(1e-13));
      CHECK(s.b[j] == doctest::Approx(testutil::kSbdfB[r][j]).epsilon(1e-13));
      CHECK(s.c[j] == doctest::Approx(j == r ? 1.0 : 0.0).epsilon(1e-13));
    }
  }
}

TEST_CASE("construction rejects out-of-range parameters") {
  CHECK_THROWS_AS(build_scheme(0, 0.5), std::invalid_argument);
  CHECK_THROWS_AS(build_scheme(6, 0.5), std::invalid_argument);
  CHECK_THROWS_AS(build_scheme(3, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(build_scheme(3, 1.5), std::invalid_argument);
  CHECK_THROWS_AS(build_scheme(3, -0.1), std::invalid_argument);
  CHECK_THROWS_AS(tabulated_scheme(6, 0.5), std::invalid_argument);
}

TEST_CASE("scheme from repeated real roots matches the direct construction") {
  for (int r = 1; r <= 5; ++r) {
    const double delta = 0.3;
    const Eigen::VectorXcd roots = Eigen::VectorXcd::Constant(r, Complex(1.0 - delta, 0.0));
    const ImExScheme from_roots = scheme_from_c_roots(roots);
    const ImExScheme direct = build_scheme(r, delta);
    CHECK(max_coeff_diff(from_roots, direct) < 1e-13);
    REQUIRE(from_roots.delta.has_value());
    CHECK(*from_roots.delta == doctest::Approx(delta));
  }
}

TEST_CASE("conjugate root pair yields the linear explicit polynomial") {
  const Complex sigma(0.9, 0.1);
  Eigen::VectorXcd roots(2);
  roots << sigma, std::conj(sigma);
  const ImExScheme s = scheme_from_c_roots(roots);
  // b(z) = A z - B with A = 2 - 2 Re sigma, B = 1 - |sigma|^2
  CHECK(s.b[0] == doctest::Approx(-0.18).epsilon(1e-13));
  CHECK(s.b[1] == doctest::Approx(0.2).epsilon(1e-13));
  CHECK(s.b[2] == 0.0);
  CHECK_FALSE(s.delta.has_value());
}

TEST_CASE("scheme from roots validates its input") {
  Eigen::VectorXcd off_circle(2);
  off_circle << Complex(1.2, 0.0), Complex(0.5, 0.0);
  CHECK_THROWS_AS(scheme_from_c_roots(off_circle), std::invalid_argument);

  Eigen::VectorXcd unpaired(2);
  unpaired << Complex(0.5, 0.3), Complex(0.5, 0.2);
  CHECK_THROWS_AS(scheme_from_c_roots(unpaired), std::invalid_argument);
}

TEST_CASE("order-condition residuals of constructed schemes") {
  CHECK(order_condition_residual(build_scheme(3, 0.3)) <= 1e-12);
  CHECK(order_condition_residual(build_scheme(5, 0.04)) <= 1e-10);
}

TEST_CASE("perturbing a coefficient shows up as exactly that residual") {
  ImExScheme s = build_scheme(2, 1.0);
  s.a[0] += 1e-3;
  CHECK(order_condition_residual(s) == doctest::Approx(1e-3).epsilon(1e-9));
}

TEST_CASE("structure invariants of the family") {
  for (int r = 1; r <= 5; ++r) {
    for (double delta : {0.04, 0.12, 0.3, 0.7, 1.0}) {
      const ImExScheme s = build_scheme(r, delta);
      CHECK(s.b[r] == 0.0);  // exactly
      CHECK(s.a_at_1() == 0.0);
      const double dr = std::pow(delta, r);
      CHECK(s.c_at_1() == doctest::Approx(dr).epsilon(1e-12));
      CHECK(s.b_at_1() == doctest::Approx(dr).epsilon(1e-12));
      // consistency identity c - b = (z-1)^r, coefficientwise
      for (int j = 0; j <= r; ++j) {
        double binom = 1.0;
        for (int i = 1; i <= j; ++i) binom = binom * double(r - j + i) / double(i);
        const double sign = ((r - j) % 2 == 0) ? 1.0 : -1.0;
        CHECK(s.c[j] - s.b[j] == doctest::Approx(binom * sign).epsilon(1e-13));
      }
    }
  }
}

TEST_CASE("zero stability of SBDF2: roots at 1 and 1/3") {
  const ZeroStabilityResult zs = zero_stability(build_scheme(2, 1.0));
  CHECK(zs.stable);
  REQUIRE(zs.a_roots.size() == 2);
  std::vector<double> mods{std::abs(zs.a_roots[0]), std::abs(zs.a_roots[1])};
  std::sort(mods.begin(), mods.end());
  CHECK(mods[0] == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
  CHECK(mods[1] == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("zero stability across the full parameter grid") {
  for (int r = 1; r <= 5; ++r) {
    for (int i = 1; i <= 20; ++i) {
      const double delta = 0.05 * i;
      const ZeroStabilityResult zs = zero_stability(build_scheme(r, delta));
      CHECK(zs.stable);
      // one simple root at z = 1, the rest strictly inside
      int inside = 0, at_one = 0;
      for (Eigen::Index j = 0; j < zs.a_roots.size(); ++j) {
        if (std::abs(zs.a_roots[j] - Complex(1.0, 0.0)) < 1e-9) ++at_one;
        else if (std::abs(zs.a_roots[j]) < 1.0 - 1e-9) ++inside;
      }
      CHECK(at_one == 1);
      CHECK(inside == r - 1);
    }
  }
}

TEST_CASE("a scheme violating the root condition is flagged") {
  ImExScheme s = build_scheme(2, 1.0);
  // a(z) = (z - 1.2)(z - 0.1): simple root outside the unit circle
  s.a << 0.12, -1.3, 1.0;
  s.a_shift.resize(0);
  s.c_shift.resize(0);
  CHECK_FALSE(zero_stability(s).stable);
}

TEST_CASE("backward Euler error constant") {
  const ErrorConstants ec = error_constants(build_scheme(1, 1.0));
  CHECK(ec.R_I == doctest::Approx(-0.5).epsilon(1e-14));
  CHECK(ec.C_I == doctest::Approx(-0.5).epsilon(1e-14));
}

TEST_CASE("error constants against closed forms in delta") {
  // R_I(r=2) = -(d^2 - 3d + 3)/3, R_E(r=2) = -d(d - 3)/3
  for (double d : {0.1, 0.333, 0.5, 0.9, 1.0}) {
    const ErrorConstants ec = error_constants(build_scheme(2, d));
    CHECK(ec.R_I == doctest::Approx(-(d * d - 3 * d + 3) / 3.0).epsilon(1e-12));
    CHECK(ec.R_E == doctest::Approx(-d * (d - 3) / 3.0).epsilon(1e-12));
    CHECK(ec.C_I * d * d == doctest::Approx(ec.R_I).epsilon(1e-12));
  }
  // delta = 1 gives the classical -1/(r+1) implicit constants
  for (int r = 1; r <= 5; ++r)
    CHECK(error_constants(build_scheme(r, 1.0)).C_I ==
          doctest::Approx(-1.0 / (r + 1)).epsilon(1e-12));
}

TEST_CASE("scaled residuals stay of moderate size over the delta range") {
  for (int r = 1; r <= 5; ++r) {
    double lo = 1e300, hi = 0.0;
    for (int i = 1; i <= 50; ++i) {
      const double delta = double(i) / 50.0;
      const ErrorConstants ec = error_constants(build_scheme(r, delta));
      CHECK(ec.C_I * std::pow(delta, r) == doctest::Approx(ec.R_I).epsilon(1e-10));
      lo = std::min(lo, std::abs(ec.R_I));
      hi = std::max(hi, std::abs(ec.R_I));
    }
    CHECK(hi / lo < 100.0);
    CHECK(std::isfinite(hi));
  }
}

TEST_CASE("error constants reject schemes with c(1) = 0") {
  Eigen::VectorXcd roots(2);
  roots << Complex(1.0, 0.0), Complex(1.0, 0.0);
  const ImExScheme s = scheme_from_c_roots(roots);
  CHECK_THROWS_AS(error_constants(s), std::invalid_argument);
}

TEST_CASE("second-order root family: implicit constant closed form") {
  // for roots sigma = sigma-bar = 1 - d (real):
  // C_I * d^2 = -1 + d - d^2/3
  for (double d : {0.05, 0.2, 0.5, 1.0}) {
    Eigen::VectorXcd roots = Eigen::VectorXcd::Constant(2, Complex(1.0 - d, 0.0));
    const ErrorConstants ec = error_constants(scheme_from_c_roots(roots));
    CHECK(ec.C_I == doctest::Approx((-1.0 + d - d * d / 3.0) / (d * d)).epsilon(1e-11));
  }
}
