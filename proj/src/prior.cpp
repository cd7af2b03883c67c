#include "blochprior/prior.hpp"

#include <gsl/gsl_sf_dilog.h>

#include <array>
#include <cmath>
#include <numbers>
#include <utility>

#include "blochprior/errors.hpp"
#include "blochprior/quadrature.hpp"

namespace blochprior {
namespace {

using std::numbers::pi;

constexpr std::array<std::pair<PriorKind, std::string_view>, 7> kLabels{{
    {PriorKind::SLD, "sld"},
    {PriorKind::KM, "km"},
    {PriorKind::MC, "mc"},
    {PriorKind::LD, "ld"},
    {PriorKind::P0, "p0"},
    {PriorKind::P1, "p1"},
    {PriorKind::P2, "p2"},
}};

// g(r) / r^2 for the built-in priors, in the forms the constants refer to:
//   sld  r^2 (1-r^2)^(-1/2)          km  r (1-r^2)^(-1/2) L
//   mc   (1-r^2)^(-1/2) L^2          ld  r^2
//   p0   r^2 (1-r^2)^(-3/2)          p1  r (1-r^2)^(-1) L
//   p2   (1-r^2)^(-1/2) L^2
// with L = log((1+r)/(1-r)).
PriorDensity::Profile builtin_profile(PriorKind kind) {
  switch (kind) {
    case PriorKind::SLD:
      return [](const Radius& a) { return 1.0 / std::sqrt(a.one_minus_r2()); };
    case PriorKind::KM:
      return [](const Radius& a) {
        return a.log_ratio_over_r() / std::sqrt(a.one_minus_r2());
      };
    case PriorKind::MC:
    case PriorKind::P2:
      return [](const Radius& a) {
        const double l = a.log_ratio_over_r();
        return l * l / std::sqrt(a.one_minus_r2());
      };
    case PriorKind::LD:
      return [](const Radius&) { return 1.0; };
    case PriorKind::P0:
      return [](const Radius& a) {
        const double w = a.one_minus_r2();
        return 1.0 / (w * std::sqrt(w));
      };
    case PriorKind::P1:
      return [](const Radius& a) { return a.log_ratio_over_r() / a.one_minus_r2(); };
    case PriorKind::Custom:
      break;
  }
  throw DomainError("no built-in profile for a custom prior");
}

double builtin_exponent(PriorKind kind) {
  switch (kind) {
    case PriorKind::P0:
      return -1.5;
    case PriorKind::P1:
      return -1.0;
    case PriorKind::LD:
      return 0.0;
    default:
      return -0.5;
  }
}

// arcsin(R) with R = 1 - gap, keeping precision for tiny gaps.
double arcsin_outer(const Support& s) {
  return 0.5 * pi - 2.0 * std::asin(std::sqrt(0.5 * s.gap()));
}

// Closed-form int_0^R g(r) dr where one exists.
std::optional<double> closed_form_mass(PriorKind kind, const Support& s) {
  const Radius outer = s.outer();
  const double radius = outer.r();
  const double root = std::sqrt(outer.one_minus_r2());
  switch (kind) {
    case PriorKind::SLD:
      return 0.5 * (arcsin_outer(s) - radius * root);
    case PriorKind::KM:
      if (s.is_full()) return pi;
      return 2.0 * arcsin_outer(s) - root * outer.log_ratio();
    case PriorKind::MC:
    case PriorKind::P2:
      if (s.is_full()) return 0.5 * pi * pi * pi;
      return std::nullopt;
    case PriorKind::LD:
      return radius * radius * radius / 3.0;
    case PriorKind::P0:
      return radius / root - arcsin_outer(s);
    case PriorKind::P1: {
      // int_0^R r L / (1 - r^2) dr via dilogarithms; Li2((1+R)/2) is
      // reflected so that only Li2 of the small argument gap/2 appears.
      const double g = s.gap();
      const double lg = std::log(g);
      const double lp = std::log1p(radius);
      const double ln2 = std::numbers::ln2;
      const double li_small = gsl_sf_dilog(0.5 * g);
      const double li_large = pi * pi / 6.0 -
                              std::log(0.5 * (1.0 + radius)) * std::log(0.5 * g) -
                              li_small;
      return 0.5 * (-ln2 * lg + li_small + 0.5 * lg * lg - 0.5 * lp * lp +
                    ln2 * lp - li_large);
    }
    case PriorKind::Custom:
      break;
  }
  return std::nullopt;
}

double numerical_mass(const PriorDensity::Profile& cartesian, const Support& s,
                      double exponent) {
  QuadratureConfig cfg;
  cfg.rel_tol = 1e-13;
  cfg.abs_tol = 1e-300;
  cfg.singularity_exponent = exponent;
  const auto res = integrate_radial(
      [&](const Radius& a) { return a.r() * a.r() * cartesian(a); }, s, cfg);
  if (!res.converged || !(res.value > 0.0)) {
    throw ImproperPrior("normalization integral did not converge");
  }
  return res.value;
}

}  // namespace

std::string_view prior_label(PriorKind kind) {
  for (const auto& [k, label] : kLabels) {
    if (k == kind) return label;
  }
  return "custom";
}

PriorKind parse_prior_kind(std::string_view label) {
  for (const auto& [k, name] : kLabels) {
    if (name == label) return k;
  }
  throw ParseError("unknown prior label '" + std::string(label) +
                   "' (expected sld, km, mc, ld, p0, p1 or p2)");
}

Support default_support(PriorKind kind) {
  switch (kind) {
    case PriorKind::P0:
    case PriorKind::P1:
    case PriorKind::P2:
      return Support::from_gap(kDefaultTruncationGap);
    default:
      return Support::full();
  }
}

double volume_element(const MonotoneFunction& f, const Radius& rad) {
  if (!(rad.gap() > 0.0) || !(rad.r() >= 0.0)) {
    throw DomainError("volume element needs 0 <= r < 1");
  }
  const double r = rad.r();
  if (r == 0.0) return 0.0;
  const double t = rad.gap() / (1.0 + r);
  return r * r / (std::sqrt(rad.one_minus_r2()) * (1.0 + r) * f(t));
}

double volume_element(const MonotoneFunction& f, double r) {
  if (!(r >= 0.0 && r < 1.0)) throw DomainError("volume element needs 0 <= r < 1");
  return volume_element(f, Radius::from_r(r));
}

PriorDensity::PriorDensity(PriorKind kind, std::string name, Support support,
                           Profile cartesian_profile,
                           double singularity_exponent, double normalization)
    : kind_(kind),
      name_(std::move(name)),
      support_(support),
      cartesian_(std::move(cartesian_profile)),
      singularity_exponent_(singularity_exponent),
      normalization_(normalization) {}

double PriorDensity::cartesian_profile(const Radius& rad) const {
  return cartesian_(rad);
}

double PriorDensity::radial_profile(const Radius& rad) const {
  const double r = rad.r();
  return r == 0.0 ? 0.0 : r * r * cartesian_(rad);
}

double PriorDensity::radial_marginal(const Radius& rad) const {
  return 4.0 * pi * normalization_ * radial_profile(rad);
}

PriorDensity make_prior(PriorKind kind, std::optional<Support> support) {
  if (kind == PriorKind::Custom) {
    throw DomainError("custom priors are built from a MonotoneFunction");
  }
  const Support s = support.value_or(default_support(kind));
  const double exponent = builtin_exponent(kind);
  if (s.is_full() && exponent <= -1.0) {
    throw ImproperPrior("prior '" + std::string(prior_label(kind)) +
                        "' is not normalizable over the full Bloch ball; "
                        "choose R < 1");
  }
  auto profile = builtin_profile(kind);
  const auto closed = closed_form_mass(kind, s);
  const double mass = closed ? *closed : numerical_mass(profile, s, exponent);
  return PriorDensity(kind, std::string(prior_label(kind)), s,
                      std::move(profile), exponent, 1.0 / (4.0 * pi * mass));
}

PriorDensity make_prior(const MonotoneFunction& f, const Support& support) {
  // f(t) ~ t^beta as t -> 0 gives g(r) ~ (1 - r^2)^(-1/2 - beta) at r -> 1.
  const double t1 = 1e-10;
  const double t2 = 1e-12;
  const double beta = std::log(f(t1) / f(t2)) / std::log(t1 / t2);
  const double exponent = -0.5 - std::round(2.0 * beta) / 2.0;
  if (support.is_full() && exponent <= -1.0) {
    throw ImproperPrior("volume element of '" + f.name() +
                        "' is not normalizable over the full Bloch ball");
  }
  PriorDensity::Profile profile = [f](const Radius& a) {
    const double r = a.r();
    const double t = a.gap() / (1.0 + r);
    return 1.0 / (std::sqrt(a.one_minus_r2()) * (1.0 + r) * f(t));
  };
  const double mass = numerical_mass(profile, support, exponent);
  return PriorDensity(PriorKind::Custom, f.name(), support, std::move(profile),
                      exponent, 1.0 / (4.0 * pi * mass));
}

double density_at(const PriorDensity& prior, const BlochPoint& pt,
                  DensityConvention convention) {
  if (!prior.support().contains(pt.radius())) {
    throw OutOfSupport("point at r = " + std::to_string(pt.r()) +
                       " lies outside the support of prior '" + prior.name() +
                       "'");
  }
  const double c = prior.normalization();
  if (convention == DensityConvention::Cartesian) {
    return c * prior.cartesian_profile(pt.radius());
  }
  return c * prior.radial_profile(pt.radius()) * pt.sin_theta();
}

}  // namespace blochprior
