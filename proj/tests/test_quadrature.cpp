#include <doctest.h>

#include <cmath>
#include <numbers>

#include "blochprior/errors.hpp"
#include "blochprior/infotheory.hpp"
#include "blochprior/quadrature.hpp"

using namespace blochprior;

namespace {

constexpr double kPi = std::numbers::pi;

QuadratureConfig with_exponent(double alpha) {
  QuadratureConfig cfg;
  cfg.singularity_exponent = alpha;
  return cfg;
}

}  // namespace

TEST_CASE("config validation") {
  QuadratureConfig cfg;
  CHECK_NOTHROW(cfg.validate());
  cfg.rel_tol = 0.0;
  CHECK_THROWS_AS(cfg.validate(), DomainError);
  cfg = {};
  cfg.abs_tol = -1.0;
  CHECK_THROWS_AS(cfg.validate(), DomainError);
  cfg = {};
  cfg.max_evaluations = 20;
  CHECK_THROWS_AS(cfg.validate(), DomainError);
}

TEST_CASE("radial oracles with honest error estimates") {
  struct Case {
    std::function<double(const Radius&)> fn;
    Support support;
    double alpha;
    double exact;
  };
  const double gap = 1e-10;
  const double asin_r = kPi / 2 - 2 * std::asin(std::sqrt(gap / 2));
  const Case cases[] = {
      {[](const Radius& r) { return r.r() * r.r(); }, Support::full(), 0.0, 1.0 / 3.0},
      {[](const Radius& r) { return r.r() * r.r() / std::sqrt(r.one_minus_r2()); },
       Support::full(), -0.5, kPi / 4},
      {[](const Radius& r) { return r.r() * r.r() * std::pow(r.one_minus_r2(), -1.5); },
       Support::from_gap(gap), -1.5, (1 - gap) / std::sqrt(gap * (2 - gap)) - asin_r},
  };
  for (const auto& c : cases) {
    CAPTURE(c.exact);
    const auto res = integrate_radial(c.fn, c.support, with_exponent(c.alpha));
    CHECK(res.converged);
    CHECK(res.evaluations > 0);
    const double err = std::abs(res.value - c.exact);
    CHECK(err <= std::max(1e-8 * c.exact, 1e-12));
    CHECK(err <= 10.0 * res.error_estimate + 1e-15 * c.exact);
    CHECK(res.error_estimate <= std::max(1e-8 * std::abs(res.value), 1e-12));
  }
  CHECK(std::abs(integrate_radial([](double r) { return r * r; }, 1.0, {}).value - 1.0 / 3.0) <
        1e-14);
}

TEST_CASE("sine substitution agrees with graded integration") {
  for (double gap : {1e-6, 1e-3, 0.1}) {
    CAPTURE(gap);
    auto fn = [](const Radius& r) {
      const double x = r.r();
      return (1 + 2 * x - 3 * x * x * x + x * x * x * x * x) / std::sqrt(r.one_minus_r2());
    };
    QuadratureConfig sine = with_exponent(-0.5);
    sine.rel_tol = 1e-12;
    sine.radial_strategy = RadialStrategy::SineSubstitution;
    QuadratureConfig graded = sine;
    graded.radial_strategy = RadialStrategy::Graded;
    const auto a = integrate_radial(fn, Support::from_gap(gap), sine);
    const auto b = integrate_radial(fn, Support::from_gap(gap), graded);
    CHECK(std::abs(a.value - b.value) <= 1e-10 * std::abs(a.value));
  }
}

TEST_CASE("full-ball exponent at or below -1 is rejected") {
  CHECK_THROWS_AS(integrate_radial([](const Radius&) { return 1.0; }, Support::full(),
                                   with_exponent(-1.0)),
                  DomainError);
}

TEST_CASE("ball integrals") {
  const auto ld = make_prior(PriorKind::LD);
  const auto one = integrate_ball([&](const BlochPoint& pt) { return density_at(ld, pt); },
                                  Support::full(), {});
  CHECK(one.value == doctest::Approx(1.0).epsilon(1e-12));

  const auto sld = make_prior(PriorKind::SLD);
  const auto km = make_prior(PriorKind::KM);
  QuadratureConfig cfg = with_exponent(-0.5);
  const auto d = integrate_ball(
      [&](const BlochPoint& pt) {
        const double p = density_at(sld, pt);
        if (p == 0.0) return 0.0;
        return p * std::log(density_at(sld, pt, DensityConvention::Cartesian) /
                            density_at(km, pt, DensityConvention::Cartesian));
      },
      Support::full(), cfg);
  CHECK(d.value == doctest::Approx(0.0891523).epsilon(1e-6));

  const auto b6 = MeasurementRecord::balanced6();
  const auto z = integrate_ball(
      [&](const BlochPoint& pt) { return density_at(sld, pt) * likelihood(b6, pt); },
      Support::full(), cfg);
  CHECK(z.value == doctest::Approx(71.0 / (64.0 * 192.0)).epsilon(1e-10));
}

TEST_CASE("octant symmetry agrees with the full domain on balanced KL integrands") {
  const auto b6 = MeasurementRecord::balanced6();
  QuadratureConfig tight;
  tight.rel_tol = 1e-9;
  const auto post = posterior(make_prior(PriorKind::KM), b6, tight);
  const auto sld = PosteriorDensity(make_prior(PriorKind::SLD));
  auto fn = [&](const BlochPoint& pt) {
    const double p = post.density(pt);
    if (p == 0.0) return 0.0;
    return p * std::log(post.density(pt, DensityConvention::Cartesian) /
                        sld.density(pt, DensityConvention::Cartesian));
  };
  QuadratureConfig octant = tight;
  octant.singularity_exponent = -0.5;
  octant.octant_symmetry = true;
  QuadratureConfig whole = octant;
  whole.octant_symmetry = false;
  const auto a = integrate_ball(fn, Support::full(), octant);
  const auto b = integrate_ball(fn, Support::full(), whole);
  CHECK(a.value == doctest::Approx(0.0603743).epsilon(1e-5));
  CHECK(std::abs(a.value - b.value) <= 1e-8 * std::abs(b.value));
}

TEST_CASE("results are bit-identical across runs") {
  const auto p0 = make_prior(PriorKind::P0);
  const auto p1 = make_prior(PriorKind::P1);
  const auto a = relative_entropy(p0, p1);
  const auto b = relative_entropy(p0, p1);
  CHECK(a.value == b.value);
  CHECK(a.error_estimate == b.error_estimate);
  CHECK(a.evaluations == b.evaluations);
}

TEST_CASE("evaluation budget exhaustion is a soft failure") {
  QuadratureConfig cfg;
  cfg.max_evaluations = 21 * 2;
  cfg.rel_tol = 1e-14;
  cfg.abs_tol = 1e-300;
  const auto res = integrate_interval([](double x) { return std::sin(1 / x); }, 1e-4, 1.0, cfg);
  CHECK_FALSE(res.converged);
  CHECK(std::isfinite(res.value));
}

TEST_CASE("interval integration with breakpoints") {
  const double pts[] = {0.5};
  const auto res = integrate_interval([](double x) { return std::abs(x - 0.5); }, 0.0, 1.0,
                                      {}, pts);
  CHECK(res.value == doctest::Approx(0.25).epsilon(1e-14));
  CHECK(integrate_interval([](double) { return 1.0; }, 2.0, 2.0, {}).value == 0.0);
}

TEST_CASE("crossover root") {
  CHECK(crossover_root([](double r) { return r - 0.5; }, 0.0, 1.0, 1e-14) ==
        doctest::Approx(0.5).epsilon(1e-13));
  CHECK_THROWS_AS(crossover_root([](double r) { return r + 1.0; }, 0.0, 1.0, 1e-12),
                  NoSignChange);
  const auto km = make_prior(PriorKind::KM);
  const auto sld = make_prior(PriorKind::SLD);
  const double r = crossover_root(
      [&](double x) {
        const Radius rad = Radius::from_r(x);
        return km.radial_marginal(rad) - sld.radial_marginal(rad);
      },
      0.5, 1 - 1e-9, 1e-13);
  CHECK(r == doctest::Approx(0.957504).epsilon(1e-6));
}
