#pragma once

#include <array>
#include <complex>

namespace blochprior {

/// A radius in [0, 1] carried together with its complement 1 - r.
///
/// Near the pure-state surface the complement is the meaningful quantity:
/// at r = 1 - 1e-10 a bare double keeps only ~6 significant digits of
/// 1 - r, while every radial density depends on it through 1 - r^2.
class Radius {
 public:
  constexpr Radius() = default;

  static Radius from_r(double r);
  static Radius from_gap(double gap);
  /// Both representations supplied by a caller that computed them exactly.
  static Radius exact(double r, double gap);

  constexpr double r() const { return r_; }
  /// 1 - r.
  constexpr double gap() const { return gap_; }
  /// 1 - r^2, computed as (1 - r)(1 + r).
  double one_minus_r2() const { return gap_ * (1.0 + r_); }
  /// log((1 + r) / (1 - r)) = 2 artanh(r).
  double log_ratio() const;
  /// log((1 + r) / (1 - r)) / r, with its limit 2 at r = 0.
  double log_ratio_over_r() const;

 private:
  constexpr Radius(double r, double gap) : r_(r), gap_(gap) {}
  double r_ = 0.0;
  double gap_ = 1.0;
};

/// A ball of radius R = 1 - gap centred at the maximally mixed state.
class Support {
 public:
  constexpr Support() = default;

  static constexpr Support full() { return Support(0.0); }
  static Support from_gap(double gap);
  static Support from_radius(double radius);

  constexpr double gap() const { return gap_; }
  double radius() const { return 1.0 - gap_; }
  bool is_full() const { return gap_ == 0.0; }
  Radius outer() const { return Radius::from_gap(gap_); }
  bool contains(const Radius& rad) const { return rad.gap() >= gap_; }
  /// True when this ball lies inside `other`.
  bool within(const Support& other) const { return gap_ >= other.gap_; }

  friend bool operator==(const Support&, const Support&) = default;

 private:
  constexpr explicit Support(double gap) : gap_(gap) {}
  double gap_ = 0.0;
};

/// A point of the Bloch ball, x^2 + y^2 + z^2 <= 1.
///
/// Spherical convention: x = r cos(phi) sin(theta), y = r sin(phi) sin(theta),
/// z = r cos(theta), theta in [0, pi], phi in [0, 2 pi).
class BlochPoint {
 public:
  BlochPoint() = default;

  static BlochPoint cartesian(double x, double y, double z);
  static BlochPoint spherical(double r, double theta, double phi);
  static BlochPoint spherical(const Radius& radius, double theta, double phi);

  double x() const { return x_; }
  double y() const { return y_; }
  double z() const { return z_; }
  const Radius& radius() const { return radius_; }
  double r() const { return radius_.r(); }
  double theta() const;
  double phi() const;
  double sin_theta() const { return sin_theta_; }
  double cos_theta() const { return cos_theta_; }

 private:
  double x_ = 0.0;
  double y_ = 0.0;
  double z_ = 0.0;
  Radius radius_;
  double sin_theta_ = 0.0;
  double cos_theta_ = 1.0;
};

using Matrix2c = std::array<std::array<std::complex<double>, 2>, 2>;

/// rho = (1/2) [[1 + z, x - iy], [x + iy, 1 - z]].
Matrix2c density_matrix(const BlochPoint& pt);

/// Eigenvalues of a 2x2 Hermitian matrix, ascending.
std::array<double, 2> hermitian_eigenvalues(const Matrix2c& m);

}  // namespace blochprior
