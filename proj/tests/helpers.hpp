#pragma once

#include <array>
#include <complex>
#include <random>
#include <vector>

#include <Eigen/Dense>

namespace testutil {

// Classical SBDF coefficient sets (delta = 1), monic c(z) = z^r.
// a recovers the BDF polynomials, b the extrapolation weights.
inline const std::array<std::vector<double>, 6> kSbdfA = {{
    {},
    {-1.0, 1.0},
    {0.5, -2.0, 1.5},
    {-1.0 / 3.0, 1.5, -3.0, 11.0 / 6.0},
    {0.25, -4.0 / 3.0, 3.0, -4.0, 25.0 / 12.0},
    {-0.2, 1.25, -10.0 / 3.0, 5.0, -5.0, 137.0 / 60.0},
}};

inline const std::array<std::vector<double>, 6> kSbdfB = {{
    {},
    {1.0, 0.0},
    {-1.0, 2.0, 0.0},
    {1.0, -3.0, 3.0, 0.0},
    {-1.0, 4.0, -6.0, 4.0, 0.0},
    {1.0, -5.0, 10.0, -10.0, 5.0, 0.0},
}};

inline Eigen::MatrixXd random_spd(int n, std::mt19937_64& rng, double shift = 0.5) {
  std::normal_distribution<double> gauss;
  Eigen::MatrixXd M(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) M(i, j) = gauss(rng);
  return M * M.transpose() + shift * Eigen::MatrixXd::Identity(n, n);
}

inline Eigen::MatrixXd random_dense(int n, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss;
  Eigen::MatrixXd M(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) M(i, j) = gauss(rng);
  return M;
}

inline Eigen::MatrixXcd random_complex(int n, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss;
  Eigen::MatrixXcd M(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) M(i, j) = std::complex<double>(gauss(rng), gauss(rng));
  return M;
}

}  // namespace testutil
