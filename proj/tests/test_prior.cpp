#include <doctest.h>

#include <cmath>
#include <numbers>

#include "blochprior/errors.hpp"
#include "blochprior/prior.hpp"
#include "blochprior/quadrature.hpp"

using namespace blochprior;

namespace {

constexpr double kPi = std::numbers::pi;

const PriorKind kAll[] = {PriorKind::SLD, PriorKind::KM, PriorKind::MC, PriorKind::LD,
                          PriorKind::P0,  PriorKind::P1, PriorKind::P2};

double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

}  // namespace

TEST_CASE("labels round trip") {
  for (PriorKind k : kAll) CHECK(parse_prior_kind(prior_label(k)) == k);
  CHECK_THROWS_AS(parse_prior_kind("jeffreys"), ParseError);
}

TEST_CASE("volume element examples") {
  for (double r : {0.1, 0.5, 0.9}) {
    CAPTURE(r);
    CHECK(rel(volume_element(MonotoneFunction::sld(), r), r * r / std::sqrt(1 - r * r)) <
          1e-14);
    CHECK(rel(volume_element(MonotoneFunction::kubo_mori(), r),
              r / 2 / std::sqrt(1 - r * r) * std::log((1 + r) / (1 - r))) < 1e-13);
  }
  CHECK(volume_element(MonotoneFunction::kubo_mori(), 0.0) == 0.0);
  CHECK_THROWS_AS(volume_element(MonotoneFunction::sld(), 1.0), DomainError);
}

TEST_CASE("Petz n = 0 volume element is r^2 (1 - r^2)^(-3/2)") {
  for (int i = 1; i <= 20; ++i) {
    const double r = 0.049 * i;
    CAPTURE(r);
    CHECK(rel(volume_element(MonotoneFunction::petz(0), r),
              r * r * std::pow(1 - r * r, -1.5)) < 1e-13);
  }
}

TEST_CASE("volume element pipeline reproduces the bare factor") {
  const auto f = MonotoneFunction::sld();
  for (int i = 1; i < 50; ++i) {
    const double r = i / 50.0;
    const double bare = r * r / std::sqrt(1 - r * r);
    CHECK(rel(volume_element(f, r) * (1 + r) * f((1 - r) / (1 + r)), bare) < 1e-13);
  }
}

TEST_CASE("normalization constants") {
  CHECK(rel(make_prior(PriorKind::SLD).normalization(), 1 / (kPi * kPi)) < 1e-14);
  CHECK(rel(make_prior(PriorKind::KM).normalization(), 1 / (4 * kPi * kPi)) < 1e-14);
  CHECK(rel(make_prior(PriorKind::LD).normalization(), 3 / (4 * kPi)) < 1e-14);
  CHECK(rel(make_prior(PriorKind::MC).normalization(), 1 / (2 * std::pow(kPi, 4))) < 1e-14);
  CHECK(rel(make_prior(PriorKind::MC).normalization(), 0.00513299) < 1e-6);
  CHECK(rel(make_prior(PriorKind::P0).normalization(), 1.12542e-6) < 1e-5);
  CHECK(rel(make_prior(PriorKind::P1).normalization(), 5.69121e-4) < 1e-5);
  CHECK(rel(make_prior(PriorKind::P2).normalization(), 5.13611e-3) < 1e-5);
}

TEST_CASE("p0 constant follows from the closed-form mass") {
  const double gap = 1e-10;
  const double big_r = 1 - gap;
  const double asin_r = kPi / 2 - 2 * std::asin(std::sqrt(gap / 2));
  const double mass = big_r / std::sqrt(gap * (2 - gap)) - asin_r;
  CHECK(rel(mass, 7.07091e4) < 1e-5);
  CHECK(rel(make_prior(PriorKind::P0).normalization(), 1 / (4 * kPi * mass)) < 1e-12);
}

TEST_CASE("improper priors on the full ball") {
  CHECK_THROWS_AS(make_prior(PriorKind::P0, Support::full()), ImproperPrior);
  CHECK_THROWS_AS(make_prior(PriorKind::P1, Support::full()), ImproperPrior);
  CHECK_NOTHROW(make_prior(PriorKind::P2, Support::full()));
  CHECK(rel(make_prior(PriorKind::P2, Support::full()).normalization(),
            make_prior(PriorKind::MC).normalization()) < 1e-14);
}

TEST_CASE("singularity exponents") {
  CHECK(make_prior(PriorKind::SLD).singularity_exponent() == -0.5);
  CHECK(make_prior(PriorKind::KM).singularity_exponent() == -0.5);
  CHECK(make_prior(PriorKind::MC).singularity_exponent() == -0.5);
  CHECK(make_prior(PriorKind::LD).singularity_exponent() == 0.0);
  CHECK(make_prior(PriorKind::P0).singularity_exponent() == -1.5);
  CHECK(make_prior(PriorKind::P1).singularity_exponent() == -1.0);
  CHECK(make_prior(PriorKind::P2).singularity_exponent() == -0.5);
}

TEST_CASE("every built-in prior integrates to one over its ball") {
  QuadratureConfig cfg;
  cfg.rel_tol = 1e-10;
  for (PriorKind k : kAll) {
    const PriorDensity p = make_prior(k);
    CAPTURE(p.name());
    auto local = cfg;
    local.singularity_exponent = p.singularity_exponent();
    local.octant_symmetry = true;
    const auto res = integrate_ball(
        [&](const BlochPoint& pt) { return density_at(p, pt); }, p.support(), local);
    CHECK(res.converged);
    CHECK(std::abs(res.value - 1.0) < 1e-7);
  }
}

TEST_CASE("density conventions") {
  const auto ld = make_prior(PriorKind::LD);
  CHECK(rel(density_at(ld, BlochPoint::cartesian(0.1, -0.5, 0.3), DensityConvention::Cartesian),
            3 / (4 * kPi)) < 1e-14);
  const auto sld = make_prior(PriorKind::SLD);
  const auto pt = BlochPoint::cartesian(0.0, 0.36, 0.48);
  CHECK(rel(density_at(sld, pt, DensityConvention::Cartesian), 1.25 / (kPi * kPi)) < 1e-14);
  CHECK(rel(density_at(sld, pt, DensityConvention::Spherical),
            1.25 / (kPi * kPi) * 0.36 * pt.sin_theta()) < 1e-14);
  const auto p0 = make_prior(PriorKind::P0);
  CHECK_THROWS_AS(density_at(p0, BlochPoint::spherical(Radius::from_gap(1e-11), 0.3, 0.2)),
                  OutOfSupport);
  CHECK_NOTHROW(density_at(p0, BlochPoint::spherical(Radius::from_gap(1e-10), 0.3, 0.2)));
}

TEST_CASE("MC prior and the prior of Petz n = 2 agree pointwise") {
  const auto mc = make_prior(PriorKind::MC);
  const auto p2 = make_prior(MonotoneFunction::petz(2), Support::full());
  for (int i = 1; i < 40; ++i) {
    const Radius rad = Radius::from_r(i / 40.0);
    CAPTURE(rad.r());
    CHECK(rel(mc.radial_marginal(rad), p2.radial_marginal(rad)) < 1e-12);
  }
}

TEST_CASE("priors from arbitrary functions") {
  const auto sld = make_prior(MonotoneFunction::sld(), Support::full());
  CHECK(rel(sld.normalization() * sld.radial_profile(Radius::from_r(0.4)),
            make_prior(PriorKind::SLD).normalization() *
                make_prior(PriorKind::SLD).radial_profile(Radius::from_r(0.4))) < 1e-10);
  CHECK(sld.singularity_exponent() == doctest::Approx(-0.5).epsilon(1e-3));
  CHECK_THROWS_AS(make_prior(MonotoneFunction::petz(0), Support::full()), ImproperPrior);
}

TEST_CASE("radial ordering near the surface beyond the crossovers") {
  const auto sld = make_prior(PriorKind::SLD);
  const auto km = make_prior(PriorKind::KM);
  const auto mc = make_prior(PriorKind::MC);
  for (int i = 0; i < 50; ++i) {
    const Radius rad = Radius::from_gap(0.015 * std::pow(10.0, -i / 5.0));
    CAPTURE(rad.r());
    CHECK(mc.radial_marginal(rad) > km.radial_marginal(rad));
    CHECK(km.radial_marginal(rad) > sld.radial_marginal(rad));
  }
}
