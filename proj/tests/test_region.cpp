#include <doctest.h>

#include <cmath>
#include <limits>
#include <numbers>
#include <random>

#include "imexstab/region.hpp"

using namespace imexstab;

namespace {

const double kInf = std::numeric_limits<double>::infinity();
const double kPi = std::numbers::pi;

// Independent membership route for the locked-root family: the region is the
// preimage of the half-plane-bounded wedge under phi(mu) = (mu/(mu-1))^(1/r).
bool member_by_conformal_map(Complex mu, int r, double delta) {
  const Complex v = mu / (mu - 1.0);
  const Complex phi = std::polar(std::pow(std::abs(v), 1.0 / r), std::arg(v) / r);
  if (std::abs(phi) == 0.0) return true;
  const double ang = std::arg(phi);
  if (!(ang > -kPi / r && ang <= kPi / r + 1e-15)) return false;
  return phi.real() < 1.0 - delta / 2.0;
}

}  // namespace

TEST_CASE("the origin is always a member") {
  for (int r = 1; r <= 5; ++r)
    for (double delta : {1e-6, 0.04, 0.5, 1.0})
      CHECK(member_infinite(Complex(0.0, 0.0), build_scheme(r, delta)));
}

TEST_CASE("mu = -9 against order five") {
  CHECK(member_infinite(Complex(-9.0, 0.0), build_scheme(5, 0.04)));
  CHECK_FALSE(member_infinite(Complex(-9.0, 0.0), build_scheme(5, 1.0)));
}

TEST_CASE("limit membership agrees with the conformal-map route") {
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> re(-12.0, 3.0), im(-8.0, 8.0);
  for (int r = 1; r <= 5; ++r) {
    for (double delta : {0.04, 0.3, 1.0}) {
      const ImExScheme sch = build_scheme(r, delta);
      const auto [ml, mr] = extreme_points(r, delta);
      int compared = 0;
      while (compared < 300) {
        const Complex mu(re(rng), im(rng));
        const Complex v = mu / (mu - 1.0);
        const Complex phi = std::polar(std::pow(std::abs(v), 1.0 / r), std::arg(v) / r);
        // skip points too close to the region boundary for either route
        if (std::abs(phi.real() - (1.0 - delta / 2.0)) < 1e-6) continue;
        if (std::abs(std::abs(std::arg(phi)) - kPi / r) < 1e-9) continue;
        ++compared;
        CHECK(member_infinite(mu, sch) == member_by_conformal_map(mu, r, delta));
      }
    }
  }
}

TEST_CASE("finite-y membership: the order-one disk") {
  const ImExScheme sch = build_scheme(1, 1.0);
  CHECK(member_finite(Complex(-2.9, 0.0), -1.0, sch));
  CHECK_FALSE(member_finite(Complex(-3.5, 0.0), -1.0, sch));

  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  int tested = 0;
  while (tested < 1000) {
    const double delta = 0.02 + 0.98 * unit(rng);
    const double y = -std::pow(10.0, -6.0 + 12.0 * unit(rng));
    const double radius = 1.0 / delta - 1.0 / y;
    const double center = 1.0 - radius;
    const Complex mu(center + radius * (4.0 * unit(rng) - 2.0),
                     radius * (3.0 * unit(rng) - 1.5));
    if (std::abs(std::abs(mu - center) - radius) < 1e-8 * std::max(1.0, radius)) continue;
    ++tested;
    const bool in_disk = std::abs(mu - center) < radius;
    CHECK(member_finite(mu, y, build_scheme(1, delta)) == in_disk);
  }
}

TEST_CASE("mu = 0 is in every finite-y region") {
  for (int r = 1; r <= 5; ++r)
    for (double delta : {0.1, 0.5, 1.0})
      for (double y : YSampling{16}.values())
        CHECK(member_finite(Complex(0.0, 0.0), y, build_scheme(r, delta)));
}

TEST_CASE("unconditional membership near the real extremes") {
  for (int r = 2; r <= 5; ++r) {
    for (double delta : {0.04, 0.5, 1.0}) {
      const ImExScheme sch = build_scheme(r, delta);
      const auto [ml, mr] = extreme_points(r, delta);
      CHECK_FALSE(member_unconditional(Complex(ml - 0.01, 0.0), sch));
      CHECK(member_unconditional(Complex(ml + 0.01 * std::abs(ml), 0.0), sch));
    }
  }
  CHECK(member_unconditional(Complex(0.99, 0.0), build_scheme(2, 1.0)));
  CHECK(extreme_points(2, 1.0).second == doctest::Approx(1.0));
}

TEST_CASE("unconditional membership for a generic root scheme is sampled") {
  Eigen::VectorXcd roots(2);
  roots << Complex(0.6, 0.25), Complex(0.6, -0.25);
  const ImExScheme sch = scheme_from_c_roots(roots);
  const UnconditionalMembership inside = member_unconditional_detail(Complex(0.0, 0.0), sch);
  CHECK(inside.member);
  CHECK_FALSE(inside.certified);

  const ImExScheme family = build_scheme(2, 0.5);
  CHECK(member_unconditional_detail(Complex(0.0, 0.0), family).certified);
}

TEST_CASE("membership is symmetric under conjugation") {
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> re(-10.0, 2.0), im(0.1, 6.0);
  for (int trial = 0; trial < 200; ++trial) {
    const int r = 1 + int(trial % 5);
    const ImExScheme sch = build_scheme(r, 0.1 + 0.9 * (trial % 7) / 7.0);
    const Complex mu(re(rng), im(rng));
    CHECK(member_infinite(mu, sch) == member_infinite(std::conj(mu), sch));
  }
}

TEST_CASE("limiting locus values at distinguished angles") {
  // order 2, delta 1: c(-1)/b(-1) = 1/(-3) = m_l
  CHECK(locus_point(-kInf, build_scheme(2, 1.0), kPi).real() ==
        doctest::Approx(-1.0 / 3.0).epsilon(1e-13));
  // order 1: c(1)/b(1) = 1 = m_r
  CHECK(locus_point(-kInf, build_scheme(1, 1.0), 0.0).real() ==
        doctest::Approx(1.0).epsilon(1e-13));
}

TEST_CASE("boundary locus approaches the asymptotic circle away from the cusp") {
  const ImExScheme sch = build_scheme(3, 0.2);
  const ComplexCurve locus = boundary_locus(-kInf, sch, 512);
  const auto [center, radius] = asymptotic_circle(3, 0.2);
  CHECK(center == doctest::Approx(-1.0).epsilon(1e-14));
  CHECK(radius == doctest::Approx(5.0 / 3.0).epsilon(1e-14));
  double worst = 0.0;
  for (const Complex& p : locus.points)
    if (p.real() < center) worst = std::max(worst, std::abs(std::abs(p - center) - radius));
  CHECK(worst < 0.5);
}

TEST_CASE("boundary locus input validation") {
  const ImExScheme sch = build_scheme(2, 0.5);
  CHECK_THROWS_AS(boundary_locus(-1.0, sch, 16), std::invalid_argument);
  CHECK_THROWS_AS(boundary_locus(0.5, sch, 128), std::invalid_argument);
}

TEST_CASE("exact boundary endpoints and midpoint hit the extreme points") {
  for (int r = 1; r <= 5; ++r) {
    for (double delta : {0.04, 0.12, 0.5, 1.0}) {
      const ComplexCurve curve = exact_boundary(r, delta, 257);
      const auto [ml, mr] = extreme_points(r, delta);
      CHECK(std::abs(curve.points.front() - Complex(mr, 0.0)) < 1e-10);
      CHECK(std::abs(curve.points.back() - Complex(mr, 0.0)) < 1e-10);
      bool found_pi = false;
      for (std::size_t i = 0; i < curve.thetas.size(); ++i) {
        if (std::abs(curve.thetas[i] - kPi) < 1e-12) {
          found_pi = true;
          CHECK(std::abs(curve.points[i] - Complex(ml, 0.0)) < 1e-10);
        }
      }
      CHECK(found_pi);
    }
  }
}

TEST_CASE("order-one boundary is exactly the asymptotic circle") {
  for (double delta : {0.04, 0.5, 1.0}) {
    const ComplexCurve curve = exact_boundary(1, delta, 256);
    const auto [center, radius] = asymptotic_circle(1, delta);
    for (const Complex& p : curve.points)
      CHECK(std::abs(std::abs(p - center) - radius) < 1e-9);
    const auto [ml, mr] = extreme_points(1, delta);
    CHECK(ml == doctest::Approx(-(2.0 - delta) / delta).epsilon(1e-14));
    CHECK(mr == 1.0);
  }
}

TEST_CASE("exact boundary coincides with the limiting locus on the arc") {
  for (int r = 2; r <= 5; ++r) {
    const double delta = 0.3;
    const ImExScheme sch = build_scheme(r, delta);
    const ComplexCurve curve = exact_boundary(r, delta, 129);
    for (std::size_t i = 0; i < curve.points.size(); ++i)
      CHECK(std::abs(curve.points[i] - locus_point(-kInf, sch, curve.thetas[i])) < 1e-10);
  }
}

TEST_CASE("known extreme points") {
  {
    const auto [ml, mr] = extreme_points(1, 1.0);
    CHECK(ml == doctest::Approx(-1.0));
    CHECK(mr == doctest::Approx(1.0));
  }
  {
    const auto [ml, mr] = extreme_points(2, 1.0);
    CHECK(ml == doctest::Approx(-1.0 / 3.0).epsilon(1e-14));
    CHECK(mr == doctest::Approx(1.0).epsilon(1e-14));
  }
  {
    const auto [ml, mr] = extreme_points(5, 1.0);
    CHECK(ml == doctest::Approx(-1.0 / 31.0).epsilon(1e-12));
    const double c5 = std::pow(std::cos(kPi / 5.0), 5.0);
    CHECK(mr == doctest::Approx(1.0 / (1.0 + 32.0 * c5)).epsilon(1e-12));
  }
  // left endpoint is monotone increasing in delta (regions shrink)
  for (int r = 1; r <= 5; ++r) {
    double prev = -1e308;
    for (int i = 1; i <= 20; ++i) {
      const double ml = extreme_points(r, 0.05 * i).first;
      CHECK(ml > prev);
      prev = ml;
    }
  }
}

TEST_CASE("boundary start point sits on the unit circle") {
  for (int r = 2; r <= 5; ++r)
    for (double delta : {0.04, 0.3, 1.0})
      CHECK(std::abs(boundary_start_point(r, delta)) == doctest::Approx(1.0).epsilon(1e-13));
  CHECK(boundary_start_point(1, 0.7) == Complex(1.0, 0.0));
}

TEST_CASE("probes displaced along the boundary normal classify correctly") {
  for (int r = 1; r <= 5; ++r) {
    for (double delta : {0.04, 0.5, 1.0}) {
      const ImExScheme sch = build_scheme(r, delta);
      const ComplexCurve curve = exact_boundary(r, delta, 301);
      const double ml = extreme_points(r, delta).first;
      const double eps = 1e-3 * std::abs(ml);

      // curve orientation from the signed area
      double area = 0.0;
      for (std::size_t i = 0; i + 1 < curve.points.size(); ++i) {
        const Complex& u = curve.points[i];
        const Complex& v = curve.points[i + 1];
        area += u.real() * v.imag() - v.real() * u.imag();
      }
      const double inward_sign = area > 0.0 ? 1.0 : -1.0;

      const std::size_t n = curve.points.size();
      for (int probe = 0; probe < 64; ++probe) {
        const std::size_t i = 1 + std::size_t((n - 3) * double(probe) / 63.0);
        const Complex tangent = curve.points[i + 1] - curve.points[i - 1];
        const Complex normal =
            inward_sign * Complex(0.0, 1.0) * tangent / std::abs(tangent);
        CHECK(member_infinite(curve.points[i] + eps * normal, sch));
        CHECK_FALSE(member_infinite(curve.points[i] - eps * normal, sch));
      }
    }
  }
}

TEST_CASE("half-plane coverage in the small-delta limit") {
  // Re mu < (r+1)/(2r) is inside the limiting region; with |mu| <= 50 a
  // parameter of 1e-6 makes the enclosing circle large enough.
  const ImExScheme sch = build_scheme(5, 1e-6);
  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> re(-50.0, 0.55), im(-50.0, 50.0);
  int tested = 0;
  while (tested < 200) {
    const Complex mu(re(rng), im(rng));
    if (std::abs(mu) > 50.0) continue;
    ++tested;
    CHECK(member_unconditional(mu, sch));
  }
  // and the real half-line bound is respected on the other side
  CHECK_FALSE(member_infinite(Complex(0.80, 0.0), sch));
}

TEST_CASE("nesting: limit members stay members for every finite y") {
  std::mt19937_64 rng(5150);
  const YSampling ys{64};
  for (int r = 2; r <= 5; ++r) {
    const double delta = 0.5;
    const ImExScheme sch = build_scheme(r, delta);
    const auto [ml, mr] = extreme_points(r, delta);
    const double radius = asymptotic_circle(r, delta).second;
    std::uniform_real_distribution<double> re(ml, mr), im(-radius, radius);
    int found = 0;
    while (found < 60) {
      const Complex mu(re(rng), im(rng));
      if (classify_infinite(mu, sch) != Membership::Inside) continue;
      ++found;
      for (double y : ys.values()) CHECK(member_finite(mu, y, sch));
    }
  }
}

TEST_CASE("G certificate is positive and grid-stable") {
  for (int r = 2; r <= 5; ++r)
    for (double delta : {0.05, 0.4, 1.0})
      CHECK(g_function(delta, r, 150, 150) > 0.0);

  const double coarse = g_function(0.3, 3, 200, 200);
  const double fine = g_function(0.3, 3, 400, 400);
  CHECK(std::abs(fine - coarse) < 0.1 * std::abs(fine));
  CHECK_THROWS_AS(g_function(0.5, 1), std::invalid_argument);
  CHECK_THROWS_AS(g_function(0.5, 6), std::invalid_argument);
}

TEST_CASE("region summary bundles the closed-form geometry") {
  const RegionSummary s = region_summary(3, 0.2);
  CHECK(s.m_l < 0.0);
  CHECK(s.m_r > 0.0);
  CHECK(s.circle_center == doctest::Approx(-1.0));
  CHECK(s.circle_radius == doctest::Approx(5.0 / 3.0));
  CHECK(s.circle_radius == doctest::Approx(1.0 / (3 * 0.2)));
}
