#pragma once

// Reference values computed without the quadrature engine.

#include <cmath>
#include <cstddef>
#include <numbers>

namespace oracle {

inline constexpr double kPi = std::numbers::pi;

// Radial CDFs of the full-ball SLD and Kubo-Mori priors.
inline double sld_cdf(double r) {
  if (r >= 1.0) return 1.0;
  return (std::asin(r) - r * std::sqrt(1.0 - r * r)) / 2.0 / (kPi / 4.0);
}

inline double km_cdf(double r) {
  if (r >= 1.0) return 1.0;
  const double l = std::log((1.0 + r) / (1.0 - r));
  return (2.0 * std::asin(r) - std::sqrt(1.0 - r * r) * l) / kPi;
}

// Cell-mass KL between the SLD and KM priors on an n^3 spherical grid:
// shells r_i = 1 - (1 - i/n)^3, polar bands equal in cos(theta), equal
// azimuth bands.
inline double grid_kl_sld_km(std::size_t n) {
  double total = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double lo = 1.0 - std::pow(1.0 - double(i) / n, 3);
    const double hi = i + 1 == n ? 1.0 : 1.0 - std::pow(1.0 - double(i + 1) / n, 3);
    const double shell_p = sld_cdf(hi) - sld_cdf(lo);
    const double shell_q = km_cdf(hi) - km_cdf(lo);
    for (std::size_t j = 0; j < n; ++j) {
      const double band = (std::cos(kPi * j / n) - std::cos(kPi * (j + 1) / n)) / 2.0;
      for (std::size_t k = 0; k < n; ++k) {
        const double p = shell_p * band / n;
        const double q = shell_q * band / n;
        if (p > 0.0) total += p * std::log(p / q);
      }
    }
  }
  return total;
}

// Sphere average of log((1 + r u)/2) over u uniform on [-1, 1].
inline double mean_log_half_one_plus(double r) {
  if (r == 0.0) return -std::numbers::ln2;
  if (r == 1.0) return -1.0;
  return ((1.0 + r) * std::log1p(r) - (1.0 - r) * std::log1p(-r)) / (2.0 * r) - 1.0 -
         std::numbers::ln2;
}

// Sphere average of (1 - x^2)(1 - y^2)(1 - z^2) at radius r.
inline double mean_balanced_product(double r) {
  const double r2 = r * r;
  return 1.0 - r2 + r2 * r2 / 5.0 - r2 * r2 * r2 / 105.0;
}

}  // namespace oracle
