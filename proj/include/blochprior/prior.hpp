#pragma once

#include <functional>
#include <optional>
#include <string>
#include <string_view>

#include "blochprior/geometry.hpp"
#include "blochprior/monotone.hpp"

namespace blochprior {

/// Built-in priors. Stable string labels: "sld", "km", "mc", "ld", "p0",
/// "p1", "p2".
enum class PriorKind { SLD, KM, MC, LD, P0, P1, P2, Custom };

std::string_view prior_label(PriorKind kind);
/// Throws ParseError for anything but the seven built-in labels.
PriorKind parse_prior_kind(std::string_view label);

/// Default truncation gap 1 - R for the Petz-family priors p0, p1, p2.
inline constexpr double kDefaultTruncationGap = 1e-10;

Support default_support(PriorKind kind);

/// Unnormalized radial density induced by f through the volume element
///   r^2 (1 - r^2)^(-1/2) (1 + r)^(-1) / f((1 - r)/(1 + r)).
/// Throws DomainError for r outside [0, 1).
double volume_element(const MonotoneFunction& f, double r);
double volume_element(const MonotoneFunction& f, const Radius& rad);

enum class DensityConvention {
  /// c g(r) sin(theta), per dr dtheta dphi.
  Spherical,
  /// c g(r) / r^2, per unit Cartesian volume.
  Cartesian,
};

/// A normalized, spherically symmetric density on a ball of radius R:
///   p(r, theta, phi) = c g(r) sin(theta).
/// The profile g includes the r^2 Jacobian. Immutable.
class PriorDensity {
 public:
  using Profile = std::function<double(const Radius&)>;

  /// `cartesian_profile` is g(r)/r^2, which stays finite at r = 0.
  PriorDensity(PriorKind kind, std::string name, Support support,
               Profile cartesian_profile, double singularity_exponent,
               double normalization);

  PriorKind kind() const { return kind_; }
  const std::string& name() const { return name_; }
  const Support& support() const { return support_; }
  double normalization() const { return normalization_; }
  double singularity_exponent() const { return singularity_exponent_; }

  /// g(r).
  double radial_profile(const Radius& rad) const;
  /// g(r) / r^2.
  double cartesian_profile(const Radius& rad) const;
  /// Normalized marginal density of r alone: 4 pi c g(r). Integrates to one
  /// over [0, R].
  double radial_marginal(const Radius& rad) const;

 private:
  PriorKind kind_;
  std::string name_;
  Support support_;
  Profile cartesian_;
  double singularity_exponent_;
  double normalization_;
};

/// Normalized built-in prior on `support` (default: full ball for sld, km,
/// mc, ld; R = 1 - 1e-10 for p0, p1, p2). Throws ImproperPrior for p0 or p1
/// on the full ball.
PriorDensity make_prior(PriorKind kind, std::optional<Support> support = {});

/// Prior proportional to the volume element of an arbitrary function f,
/// normalized numerically. The endpoint exponent is read off the power of
/// f near t = 0.
PriorDensity make_prior(const MonotoneFunction& f, const Support& support);

/// Throws OutOfSupport when the point lies outside the prior's ball.
double density_at(const PriorDensity& prior, const BlochPoint& pt,
                  DensityConvention convention = DensityConvention::Spherical);

}  // namespace blochprior
