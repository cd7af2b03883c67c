#include <doctest.h>

#include <cmath>

#include "blochprior/errors.hpp"
#include "blochprior/monotone.hpp"

using namespace blochprior;

namespace {

std::vector<MonotoneFunction> built_ins() {
  return {MonotoneFunction::sld(),      MonotoneFunction::kubo_mori(),
          MonotoneFunction::morozova_chentsov(), MonotoneFunction::petz(0),
          MonotoneFunction::petz(1),    MonotoneFunction::petz(2),
          MonotoneFunction::larson_dukes_generator()};
}

}  // namespace

TEST_CASE("normalization f(1) = 1 is exact for every metric generator") {
  for (const auto& f : built_ins()) {
    if (f.kind() == MonotoneKind::LarsonDukesGenerator) continue;
    CAPTURE(f.name());
    CHECK(f(1.0) == 1.0);
  }
  CHECK(MonotoneFunction::larson_dukes_generator()(1.0) == 4.0);
}

TEST_CASE("symmetry f(t) = t f(1/t) on [1e-6, 1e6]") {
  for (const auto& f : built_ins()) {
    CAPTURE(f.name());
    for (double t : log_grid(1e-6, 1e6, 10)) {
      CAPTURE(t);
      CHECK(std::abs(f(t) - t * f(1.0 / t)) <= 1e-12 * f(t));
    }
  }
}

TEST_CASE("Petz n = 2 is the Morozova-Chentsov function") {
  const auto mc = MonotoneFunction::morozova_chentsov();
  const auto p2 = MonotoneFunction::petz(2);
  for (double t : log_grid(1e-6, 1e6, 10)) {
    CAPTURE(t);
    CHECK(std::abs(mc(t) - p2(t)) <= 1e-14 * mc(t));
  }
}

TEST_CASE("closed forms of the named functions") {
  CHECK(MonotoneFunction::sld()(3.0) == doctest::Approx(2.0));
  CHECK(MonotoneFunction::kubo_mori()(std::exp(1.0)) ==
        doctest::Approx(std::exp(1.0) - 1.0).epsilon(1e-15));
  CHECK(MonotoneFunction::petz(0)(3.0) == doctest::Approx(1.5).epsilon(1e-15));
  const double t = 0.2;
  CHECK(MonotoneFunction::morozova_chentsov()(t) ==
        doctest::Approx(2 * (t - 1) * (t - 1) / ((1 + t) * std::log(t) * std::log(t)))
            .epsilon(1e-14));
  CHECK(MonotoneFunction::larson_dukes_generator()(4.0) == doctest::Approx(12.5));
}

TEST_CASE("removable singularity at t = 1 is continuous") {
  const auto km = MonotoneFunction::kubo_mori();
  const auto mc = MonotoneFunction::morozova_chentsov();
  for (double d : {1e-9, 1e-7, 5e-7, 2e-6, 1e-5}) {
    CAPTURE(d);
    const long double ld = d;
    const double km_up = static_cast<double>(ld / std::log1p(ld));
    const double km_down = static_cast<double>(-ld / std::log1p(-ld));
    const double mc_up = static_cast<double>(2 * ld * ld / ((2 + ld) * std::pow(std::log1p(ld), 2)));
    CHECK(km(1.0 + d) == doctest::Approx(km_up).epsilon(1e-12));
    CHECK(km(1.0 - d) == doctest::Approx(km_down).epsilon(1e-12));
    CHECK(mc(1.0 + d) == doctest::Approx(mc_up).epsilon(1e-10));
  }
}

TEST_CASE("monotone function check") {
  const MonotoneCheck all{true, true, true};
  CHECK(check_monotone_function(MonotoneFunction::sld()) == all);
  CHECK(check_monotone_function(MonotoneFunction::kubo_mori()) == all);
  CHECK(check_monotone_function(MonotoneFunction::morozova_chentsov()) == all);
  for (int n = 0; n <= 2; ++n) {
    CAPTURE(n);
    CHECK(check_monotone_function(MonotoneFunction::petz(n)) == all);
  }
  CHECK(check_monotone_function(MonotoneFunction::larson_dukes_generator()) ==
        MonotoneCheck{false, true, false});
}

TEST_CASE("custom functions and domain errors") {
  const auto sqrt_f = MonotoneFunction::custom("sqrt", [](double t) { return std::sqrt(t); });
  CHECK(check_monotone_function(sqrt_f) == MonotoneCheck{true, true, true});
  const auto bad = MonotoneFunction::custom("bad", [](double t) { return 1.0 / (t - 2.0); });
  CHECK_THROWS_AS(bad(2.0), DomainError);
  CHECK_THROWS_AS(MonotoneFunction::sld()(0.0), DomainError);
  CHECK_THROWS_AS(MonotoneFunction::sld()(-1.0), DomainError);
  CHECK_THROWS_AS(MonotoneFunction::petz(3), DomainError);
}

TEST_CASE("log grid includes 1 and the endpoints") {
  const auto g = log_grid(1e-2, 1e2, 10);
  CHECK(g.size() == 41);
  CHECK(g.front() == doctest::Approx(1e-2));
  CHECK(g.back() == doctest::Approx(1e2));
  CHECK(g[20] == 1.0);
}
