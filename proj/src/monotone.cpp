#include "blochprior/monotone.hpp"

#include <cmath>
#include <stdexcept>
#include <utility>

#include "blochprior/errors.hpp"

namespace blochprior {
namespace {

// (t - 1) / log t with the removable singularity at t = 1 resolved by its
// series in x = t - 1 inside |x| < 1e-6.
double log_mean(double t) {
  const double x = t - 1.0;
  if (std::abs(x) < 1e-6) {
    return 1.0 + x * (0.5 + x * (-1.0 / 12.0 + x / 24.0));
  }
  if (t > 0.5 && t < 2.0) return x / std::log1p(x);
  return x / std::log(t);
}

}  // namespace

MonotoneFunction::MonotoneFunction(MonotoneKind kind, std::string name,
                                   int petz_order)
    : kind_(kind), name_(std::move(name)), petz_order_(petz_order) {}

MonotoneFunction MonotoneFunction::sld() {
  return {MonotoneKind::SLD, "sld"};
}

MonotoneFunction MonotoneFunction::kubo_mori() {
  return {MonotoneKind::KuboMori, "kubo-mori"};
}

MonotoneFunction MonotoneFunction::morozova_chentsov() {
  return {MonotoneKind::MorozovaChentsov, "morozova-chentsov"};
}

MonotoneFunction MonotoneFunction::petz(int n) {
  if (n < 0 || n > 2) {
    throw DomainError("Petz family order must be 0, 1 or 2, got " +
                      std::to_string(n));
  }
  return {MonotoneKind::PetzFamily, "petz-" + std::to_string(n), n};
}

MonotoneFunction MonotoneFunction::larson_dukes_generator() {
  return {MonotoneKind::LarsonDukesGenerator, "larson-dukes"};
}

MonotoneFunction MonotoneFunction::custom(
    std::string name, std::function<double(double)> evaluator) {
  if (!evaluator) throw DomainError("custom monotone function has no evaluator");
  MonotoneFunction f(MonotoneKind::Custom, std::move(name));
  f.custom_ = std::move(evaluator);
  return f;
}

double MonotoneFunction::operator()(double t) const {
  if (!(t > 0.0) || !std::isfinite(t)) {
    throw DomainError(name_ + ": argument must be positive and finite");
  }
  double value = 0.0;
  switch (kind_) {
    case MonotoneKind::SLD:
      value = 0.5 * (1.0 + t);
      break;
    case MonotoneKind::KuboMori:
      value = log_mean(t);
      break;
    case MonotoneKind::MorozovaChentsov: {
      const double x = t - 1.0;
      if (std::abs(x) < 1e-6) {
        const double m = log_mean(t);
        value = 2.0 * m * m / (1.0 + t);
      } else {
        const double lt = (t > 0.5 && t < 2.0) ? std::log1p(x) : std::log(t);
        value = 2.0 * x * x / ((1.0 + t) * lt * lt);
      }
      break;
    }
    case MonotoneKind::PetzFamily:
      value = 2.0 * std::pow(t, 0.5 * (2 - petz_order_)) *
              std::pow(log_mean(t), petz_order_) / (1.0 + t);
      break;
    case MonotoneKind::LarsonDukesGenerator:
      value = (1.0 + t) * (1.0 + t) / std::sqrt(t);
      break;
    case MonotoneKind::Custom:
      value = custom_(t);
      break;
  }
  if (!std::isfinite(value)) {
    throw DomainError(name_ + ": non-finite value at t = " + std::to_string(t));
  }
  return value;
}

std::vector<double> log_grid(double lo, double hi, int per_decade) {
  if (!(lo > 0.0 && hi > lo && per_decade > 0)) {
    throw DomainError("log_grid: need 0 < lo < hi and per_decade > 0");
  }
  const double step = 1.0 / per_decade;
  const auto first = static_cast<long>(std::ceil(std::log10(lo) * per_decade - 1e-9));
  const auto last = static_cast<long>(std::floor(std::log10(hi) * per_decade + 1e-9));
  std::vector<double> grid;
  grid.reserve(static_cast<std::size_t>(last - first + 1));
  for (long k = first; k <= last; ++k) {
    grid.push_back(std::pow(10.0, static_cast<double>(k) * step));
  }
  return grid;
}

MonotoneCheck check_monotone_function(const MonotoneFunction& f) {
  constexpr double kTol = 1e-12;
  MonotoneCheck report;
  report.normalized = std::abs(f(1.0) - 1.0) <= kTol;

  const auto grid = log_grid(1e-6, 1e6, 10);
  std::vector<double> values;
  values.reserve(grid.size());
  for (double t : grid) values.push_back(f(t));

  report.symmetric = true;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double mirrored = grid[i] * f(1.0 / grid[i]);
    if (std::abs(values[i] - mirrored) > kTol * std::abs(values[i])) {
      report.symmetric = false;
      break;
    }
  }

  report.scalar_monotone = true;
  for (std::size_t i = 1; i < values.size(); ++i) {
    if (values[i] < values[i - 1] - 1e-14 * std::abs(values[i - 1])) {
      report.scalar_monotone = false;
      break;
    }
  }
  return report;
}

}  // namespace blochprior
