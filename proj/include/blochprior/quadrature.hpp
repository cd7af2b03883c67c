#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <span>

#include "blochprior/geometry.hpp"

namespace blochprior {

/// How the radial direction is mapped before adaptive integration.
enum class RadialStrategy {
  /// Sine substitution for exponents in (-1, 0), graded otherwise.
  Auto,
  /// Integrate in d = 1 - r with breakpoints at 10^-k toward the outer radius.
  Graded,
  /// r = cos(v): removes a (1 - r^2)^(-1/2) endpoint factor exactly.
  SineSubstitution,
};

struct QuadratureConfig {
  double rel_tol = 1e-8;
  double abs_tol = 1e-12;
  /// Cap for each one-dimensional pass; nested passes report their total.
  std::size_t max_evaluations = 21 * 4000;
  /// Power alpha such that the radial integrand behaves like (1 - r^2)^alpha
  /// near the outer radius.
  std::optional<double> singularity_exponent;
  RadialStrategy radial_strategy = RadialStrategy::Auto;
  /// The integrand is invariant under x, y, z sign flips: integrate one
  /// octant and multiply by 8.
  bool octant_symmetry = false;

  /// Throws DomainError unless tolerances are positive and the budget holds
  /// at least one 21-point rule.
  void validate() const;
  /// Tolerances used for the angular passes nested under a radial node.
  QuadratureConfig inner() const;
};

struct QuadratureResult {
  double value = 0.0;
  double error_estimate = 0.0;
  std::size_t evaluations = 0;
  bool converged = true;

  /// Sum of two independent estimates.
  QuadratureResult& operator+=(const QuadratureResult& other);
};

/// Adaptive Gauss-Kronrod (21-point) with epsilon-extrapolation over [a, b].
/// Optional interior breakpoints mark known trouble spots.
QuadratureResult integrate_interval(const std::function<double(double)>& fn,
                                    double a, double b,
                                    const QuadratureConfig& cfg,
                                    std::span<const double> breakpoints = {});

/// Integral of fn over [0, R], R = 1 - support.gap(). The integrand receives
/// the radius with an exact complement, see Radius.
QuadratureResult integrate_radial(const std::function<double(const Radius&)>& fn,
                                  const Support& support,
                                  const QuadratureConfig& cfg);

QuadratureResult integrate_radial(const std::function<double(double)>& fn,
                                  double outer_radius,
                                  const QuadratureConfig& cfg);

/// Integral over the ball of radius R in spherical coordinates,
///   int_0^R int_0^pi int_0^2pi fn dphi dtheta dr,
/// so fn carries its own r^2 sin(theta) Jacobian. Passes are nested with phi
/// innermost; theta and phi ranges are split at multiples of pi/2 where
/// axis-aligned likelihood factors vanish.
QuadratureResult integrate_ball(const std::function<double(const BlochPoint&)>& fn,
                                const Support& support,
                                const QuadratureConfig& cfg);

/// Bisection root of a sign-changing function on [a, b]; the returned point
/// lies inside a final bracket of width <= tol. Throws NoSignChange.
double crossover_root(const std::function<double(double)>& h, double a,
                      double b, double tol);

}  // namespace blochprior
