#include "imexstab/region.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "imexstab/parallel.hpp"

namespace imexstab {

namespace {

constexpr double kStrictTol = 1e-10;
constexpr double kBSkipTol = 1e-13;
const double kPi = std::numbers::pi;

bool is_neg_infinity(double y) { return std::isinf(y) && y < 0.0; }

// Stability polynomial c - mu b. With construction-exact shift data the
// identity b = c - (z-1)^r gives (1-mu) c(w) + mu w^r in the w = z-1 basis,
// which stays well conditioned when the roots of c cluster at z = 1.
ComplexPolynomial infinite_poly(Complex mu, const ImExScheme& sch, bool* shifted) {
  if (sch.has_shift_data()) {
    *shifted = true;
    ComplexPolynomial p = (1.0 - mu) * sch.c_shift.cast<Complex>();
    p[sch.r] += mu;
    return p;
  }
  *shifted = false;
  return sch.c.cast<Complex>() - mu * sch.b.cast<Complex>();
}

// a - y c + y mu b, same basis policy.
ComplexPolynomial finite_poly(Complex mu, double y, const ImExScheme& sch, bool* shifted) {
  if (sch.has_shift_data()) {
    *shifted = true;
    ComplexPolynomial p = sch.a_shift.cast<Complex>() -
                          y * (1.0 - mu) * sch.c_shift.cast<Complex>();
    p[sch.r] -= y * mu;
    return p;
  }
  *shifted = false;
  return sch.a.cast<Complex>() - y * sch.c.cast<Complex>() +
         (y * mu) * sch.b.cast<Complex>();
}

Membership classify_roots(const ComplexPolynomial& p, int expected_degree, bool shifted) {
  bool dropped = false;
  const Eigen::VectorXcd rts = poly::roots(p, &dropped);
  if (dropped || rts.size() != Eigen::Index(expected_degree)) return Membership::Outside;

  Membership result = Membership::Inside;
  for (Eigen::Index i = 0; i < rts.size(); ++i) {
    const double mod = shifted ? std::abs(Complex(1.0, 0.0) + rts[i]) : std::abs(rts[i]);
    if (mod > 1.0 + kStrictTol) return Membership::Outside;
    if (mod >= 1.0 - kStrictTol) result = Membership::Boundary;
  }
  return result;
}

// phi(w) = (w / (w-1))^(1/r), principal branch (-pi, pi].
Complex phi_of(Complex v, int r) {
  const double mag = std::pow(std::abs(v), 1.0 / r);
  const double ang = std::arg(v) / r;
  return std::polar(mag, ang);
}

void check_order_delta(int r, double delta) {
  if (r < 1 || r > 5) throw std::invalid_argument("order r must be in 1..5");
  if (!(delta > 0.0) || !(delta <= 1.0))
    throw std::invalid_argument("delta must lie in (0, 1]");
}

}  // namespace

Membership classify_infinite(Complex mu, const ImExScheme& sch) {
  bool shifted = false;
  const ComplexPolynomial p = infinite_poly(mu, sch, &shifted);
  return classify_roots(p, sch.r, shifted);
}

bool member_infinite(Complex mu, const ImExScheme& sch) {
  return classify_infinite(mu, sch) == Membership::Inside;
}

bool member_finite(Complex mu, double y, const ImExScheme& sch) {
  if (!(y < 0.0) || !std::isfinite(y))
    throw std::invalid_argument("member_finite requires finite y < 0");
  bool shifted = false;
  const ComplexPolynomial p = finite_poly(mu, y, sch, &shifted);
  return classify_roots(p, sch.r, shifted) == Membership::Inside;
}

std::vector<double> YSampling::values() const {
  std::vector<double> ys(count);
  const double l0 = std::log(-y_min), l1 = std::log(-y_max);
  for (int i = 0; i < count; ++i) {
    const double t = count == 1 ? 0.0 : double(i) / (count - 1);
    ys[i] = -std::exp(l0 + (l1 - l0) * t);
  }
  return ys;
}

UnconditionalMembership member_unconditional_detail(Complex mu, const ImExScheme& sch,
                                                    const YSampling& ys) {
  if (sch.delta.has_value())
    return {member_infinite(mu, sch), true};

  if (!member_infinite(mu, sch)) return {false, false};
  for (double y : ys.values())
    if (!member_finite(mu, y, sch)) return {false, false};
  return {true, false};
}

bool member_unconditional(Complex mu, const ImExScheme& sch, const YSampling& ys) {
  return member_unconditional_detail(mu, sch, ys).member;
}

Complex locus_point(double y, const ImExScheme& sch, double theta) {
  const Complex z = std::polar(1.0, theta);
  Complex av, bv, cv;
  if (sch.has_shift_data()) {
    const Complex w = z - 1.0;
    av = poly::eval(sch.a_shift.cast<Complex>(), w);
    cv = poly::eval(sch.c_shift.cast<Complex>(), w);
    bv = cv - std::pow(w, sch.r);
  } else {
    av = poly::eval(sch.a.cast<Complex>(), z);
    bv = poly::eval(sch.b.cast<Complex>(), z);
    cv = poly::eval(sch.c.cast<Complex>(), z);
  }
  if (is_neg_infinity(y)) return cv / bv;
  return (cv - av / y) / bv;
}

ComplexCurve boundary_locus(double y, const ImExScheme& sch, int n) {
  if (n < 64) throw std::invalid_argument("boundary locus needs n >= 64 samples");
  if (!is_neg_infinity(y) && !(y < 0.0))
    throw std::invalid_argument("boundary locus requires y < 0 or y = -inf");

  ComplexCurve curve;
  curve.closed = true;
  curve.points.reserve(n);
  curve.thetas.reserve(n);
  int skipped = 0;
  for (int k = 0; k < n; ++k) {
    const double theta = 2.0 * kPi * k / n;
    const Complex z = std::polar(1.0, theta);
    Complex bv;
    if (sch.has_shift_data()) {
      const Complex w = z - 1.0;
      bv = poly::eval(sch.c_shift.cast<Complex>(), w) - std::pow(w, sch.r);
    } else {
      bv = poly::eval(sch.b.cast<Complex>(), z);
    }
    if (std::abs(bv) < kBSkipTol) {
      ++skipped;
      continue;
    }
    curve.points.push_back(locus_point(y, sch, theta));
    curve.thetas.push_back(theta);
  }
  curve.meta = "boundary locus, y = " +
               (is_neg_infinity(y) ? std::string("-inf") : std::to_string(y)) +
               ", " + std::to_string(n) + " uniform angles, " +
               std::to_string(skipped) + " skipped near b(z) = 0";
  return curve;
}

Complex boundary_start_point(int r, double delta) {
  check_order_delta(r, delta);
  if (r == 1) return Complex(1.0, 0.0);
  const Complex e = std::cos(kPi / r) * std::polar(1.0, kPi / r);
  return (2.0 - delta - 2.0 * (1.0 - delta) * e) / (2.0 - delta - 2.0 * e);
}

std::pair<double, double> extreme_points(int r, double delta) {
  check_order_delta(r, delta);
  if (r == 1) return {-(2.0 - delta) / delta, 1.0};
  const double p = std::pow(2.0 - delta, r);
  const double two_r = std::pow(2.0, r);
  const double cr = std::pow(std::cos(kPi / r), r);
  return {-p / (two_r - p), p / (p + two_r * cr)};
}

std::pair<double, double> asymptotic_circle(int r, double delta) {
  check_order_delta(r, delta);
  const double radius = 1.0 / (r * delta);
  return {(r + 1.0) / (2.0 * r) - radius, radius};
}

ComplexCurve exact_boundary(int r, double delta, int n) {
  check_order_delta(r, delta);
  if (n < 16) throw std::invalid_argument("exact boundary needs n >= 16 samples");
  if (n % 2 == 0) ++n;  // odd count puts a sample at theta = pi exactly

  const double theta0 = std::abs(std::arg(boundary_start_point(r, delta)));
  const double span = 2.0 * kPi - 2.0 * theta0;

  std::vector<double> thetas;
  thetas.reserve(n + 32);
  for (int k = 0; k < n; ++k) thetas.push_back(theta0 + span * k / (n - 1));
  // extra resolution at the endpoints, geometrically clustered
  for (int j = 1; j <= 16; ++j) {
    const double off = span * std::ldexp(1.0, -j) / 8.0;
    thetas.push_back(theta0 + off);
    thetas.push_back(theta0 + span - off);
  }
  std::sort(thetas.begin(), thetas.end());
  thetas.erase(std::unique(thetas.begin(), thetas.end(),
                           [](double u, double v) { return std::abs(u - v) < 1e-15; }),
               thetas.end());

  ComplexCurve curve;
  curve.closed = true;
  curve.points.reserve(thetas.size());
  for (double theta : thetas) {
    const Complex w = std::polar(1.0, theta) - 1.0;
    Complex A(1.0, 0.0), B(1.0, 0.0);
    for (int i = 0; i < r; ++i) {
      A *= w + delta;
      B *= w;
    }
    curve.points.push_back(A / (A - B));
  }
  curve.thetas = std::move(thetas);
  curve.meta = "exact boundary, theta in [arg z0, 2pi - arg z0], " +
               std::to_string(curve.points.size()) +
               " samples (uniform plus 16 clustered per endpoint)";
  return curve;
}

RegionSummary region_summary(int r, double delta) {
  RegionSummary s;
  s.r = r;
  s.delta = delta;
  std::tie(s.m_l, s.m_r) = extreme_points(r, delta);
  std::tie(s.circle_center, s.circle_radius) = asymptotic_circle(r, delta);
  s.z0 = boundary_start_point(r, delta);
  return s;
}

double g_function(double delta, int r, int n_y, int n_theta) {
  if (r < 2 || r > 5)
    throw std::invalid_argument("G(delta) is defined for orders 2..5");
  if (!(delta > 0.0) || !(delta <= 1.0))
    throw std::invalid_argument("delta must lie in (0, 1]");
  if (n_y < 2 || n_theta < 2) throw std::invalid_argument("grid too small");

  const ImExScheme sch = build_scheme(r, delta);
  const Eigen::VectorXcd aw = sch.a_shift.cast<Complex>();
  const Eigen::VectorXcd cw = sch.c_shift.cast<Complex>();

  // Precompute the theta-dependent factors. The angles are cell midpoints:
  // theta = 0 maps to the locus point w = 1 where phi has a removable
  // singularity (the curve crosses vertically, so Re phi -> +inf), and
  // rounding can put the evaluated point on the wrong side of the branch
  // cut. Midpoint sampling never lands there.
  std::vector<Complex> av(n_theta), bv(n_theta), wr(n_theta);
  for (int k = 0; k < n_theta; ++k) {
    const double theta = 2.0 * kPi * (k + 0.5) / n_theta;
    const Complex w = std::polar(1.0, theta) - 1.0;
    av[k] = poly::eval(aw, w);
    const Complex cv = poly::eval(cw, w);
    wr[k] = std::pow(w, r);
    bv[k] = cv - wr[k];
  }

  const double shift = 1.0 - delta / 2.0;
  const double inv_d2 = 1.0 / (delta * delta);
  std::vector<double> row_min(n_y, std::numeric_limits<double>::infinity());

  parallel_for(n_y, [&](std::ptrdiff_t i) {
    const double ytilde = (double(i) + 0.5) / n_y;
    const double y = 1.0 - 1.0 / ytilde;
    const double factor = (1.0 - y) * inv_d2;
    double best = std::numeric_limits<double>::infinity();
    for (int k = 0; k < n_theta; ++k) {
      if (std::abs(bv[k]) < kBSkipTol) continue;
      // g = w_locus - 1 evaluated without cancellation:
      // mu - 1 = ((z-1)^r - a(z)/y) / b(z).
      const Complex g = (wr[k] - av[k] / y) / bv[k];
      const Complex v = (1.0 + g) / g;
      const double val = (phi_of(v, r).real() - shift) * factor;
      if (std::isfinite(val)) best = std::min(best, val);
    }
    row_min[i] = best;
  });

  return *std::min_element(row_min.begin(), row_min.end());
}

}  // namespace imexstab
