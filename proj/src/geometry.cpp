#include "blochprior/geometry.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "blochprior/errors.hpp"

namespace blochprior {

Radius Radius::from_r(double r) {
  if (!(r >= 0.0 && r <= 1.0)) {
    throw DomainError("radius outside [0, 1]: " + std::to_string(r));
  }
  return Radius(r, 1.0 - r);
}

Radius Radius::from_gap(double gap) {
  if (!(gap >= 0.0 && gap <= 1.0)) {
    throw DomainError("radius complement outside [0, 1]: " +
                      std::to_string(gap));
  }
  return Radius(1.0 - gap, gap);
}

Radius Radius::exact(double r, double gap) { return Radius(r, gap); }

double Radius::log_ratio() const {
  if (r_ < 0.5) return 2.0 * std::atanh(r_);
  return std::log((1.0 + r_) / gap_);
}

double Radius::log_ratio_over_r() const {
  if (r_ < 1e-4) {
    const double r2 = r_ * r_;
    return 2.0 * (1.0 + r2 * (1.0 / 3.0 + r2 / 5.0));
  }
  return log_ratio() / r_;
}

Support Support::from_gap(double gap) {
  if (!(gap >= 0.0 && gap < 1.0)) {
    throw DomainError("support gap must lie in [0, 1): " + std::to_string(gap));
  }
  return Support(gap);
}

Support Support::from_radius(double radius) {
  if (!(radius > 0.0 && radius <= 1.0)) {
    throw DomainError("support radius must lie in (0, 1]: " +
                      std::to_string(radius));
  }
  return Support(1.0 - radius);
}

BlochPoint BlochPoint::cartesian(double x, double y, double z) {
  const double r = std::hypot(x, y, z);
  if (!(r <= 1.0)) {
    throw DomainError("point outside the Bloch ball (r = " + std::to_string(r) +
                      ")");
  }
  BlochPoint pt;
  pt.x_ = x;
  pt.y_ = y;
  pt.z_ = z;
  pt.radius_ = Radius::from_r(r);
  if (r > 0.0) {
    pt.cos_theta_ = z / r;
    pt.sin_theta_ = std::hypot(x, y) / r;
  }
  return pt;
}

BlochPoint BlochPoint::spherical(double r, double theta, double phi) {
  return spherical(Radius::from_r(r), theta, phi);
}

BlochPoint BlochPoint::spherical(const Radius& radius, double theta,
                                 double phi) {
  BlochPoint pt;
  pt.radius_ = radius;
  pt.sin_theta_ = std::sin(theta);
  pt.cos_theta_ = std::cos(theta);
  const double r = radius.r();
  pt.x_ = r * std::cos(phi) * pt.sin_theta_;
  pt.y_ = r * std::sin(phi) * pt.sin_theta_;
  pt.z_ = r * pt.cos_theta_;
  return pt;
}

double BlochPoint::theta() const { return std::atan2(sin_theta_, cos_theta_); }

double BlochPoint::phi() const {
  if (x_ == 0.0 && y_ == 0.0) return 0.0;
  double phi = std::atan2(y_, x_);
  if (phi < 0.0) phi += 2.0 * std::numbers::pi;
  return phi;
}

Matrix2c density_matrix(const BlochPoint& pt) {
  using C = std::complex<double>;
  return {{{C(0.5 * (1.0 + pt.z()), 0.0), C(0.5 * pt.x(), -0.5 * pt.y())},
           {C(0.5 * pt.x(), 0.5 * pt.y()), C(0.5 * (1.0 - pt.z()), 0.0)}}};
}

std::array<double, 2> hermitian_eigenvalues(const Matrix2c& m) {
  const double a = m[0][0].real();
  const double d = m[1][1].real();
  const double half_diff = 0.5 * (a - d);
  const double disc = std::sqrt(half_diff * half_diff + std::norm(m[0][1]));
  const double mean = 0.5 * (a + d);
  return {mean - disc, mean + disc};
}

}  // namespace blochprior
