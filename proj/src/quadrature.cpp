#include "blochprior/quadrature.hpp"

#include <gsl/gsl_errno.h>
#include <gsl/gsl_integration.h>

#include <algorithm>
#include <cmath>
#include <memory>
#include <numbers>
#include <vector>

#include "blochprior/errors.hpp"

namespace blochprior {
namespace {

constexpr std::size_t kRuleSize = 21;
constexpr double kHalfPi = 0.5 * std::numbers::pi;

struct WorkspaceDeleter {
  void operator()(gsl_integration_workspace* ws) const {
    gsl_integration_workspace_free(ws);
  }
};
using Workspace = std::unique_ptr<gsl_integration_workspace, WorkspaceDeleter>;

// One workspace per nesting depth, reused across calls on this thread.
class WorkspacePool {
 public:
  class Lease {
   public:
    Lease(WorkspacePool& pool, std::size_t limit) : pool_(pool) {
      const std::size_t depth = pool_.depth_++;
      if (pool_.slots_.size() <= depth) pool_.slots_.resize(depth + 1);
      Workspace& slot = pool_.slots_[depth];
      if (!slot || slot->limit < limit) {
        slot.reset(gsl_integration_workspace_alloc(limit));
      }
      ws_ = slot.get();
    }
    ~Lease() { --pool_.depth_; }
    Lease(const Lease&) = delete;
    Lease& operator=(const Lease&) = delete;
    gsl_integration_workspace* get() const { return ws_; }

   private:
    WorkspacePool& pool_;
    gsl_integration_workspace* ws_ = nullptr;
  };

 private:
  std::vector<Workspace> slots_;
  std::size_t depth_ = 0;
};

thread_local WorkspacePool workspace_pool;

void silence_gsl() {
  static const bool once = [] {
    gsl_set_error_handler_off();
    return true;
  }();
  (void)once;
}

struct Counted {
  const std::function<double(double)>* fn;
  std::size_t count = 0;
};

double trampoline(double x, void* params) {
  auto* counted = static_cast<Counted*>(params);
  ++counted->count;
  return (*counted->fn)(x);
}

bool within_tolerance(double value, double error, const QuadratureConfig& cfg) {
  return error <= std::max(cfg.rel_tol * std::abs(value), cfg.abs_tol);
}

// Points v0 + w, w = span * 10^-k, graded toward the left end v0.
std::vector<double> graded_points(double left, double right, int levels) {
  std::vector<double> pts;
  pts.push_back(left);
  const double span = right - left;
  for (int k = levels; k >= 1; --k) {
    const double p = left + span * std::pow(10.0, -k);
    if (p > pts.back() && p < right) pts.push_back(p);
  }
  pts.push_back(right);
  return pts;
}

RadialStrategy resolve(const QuadratureConfig& cfg, const Support& support) {
  if (cfg.radial_strategy != RadialStrategy::Auto) return cfg.radial_strategy;
  if (cfg.singularity_exponent) {
    const double alpha = *cfg.singularity_exponent;
    if (alpha < 0.0 && alpha > -1.0) return RadialStrategy::SineSubstitution;
  }
  (void)support;
  return RadialStrategy::Graded;
}

// One-dimensional radial pass; `node` turns a radius into the integrand value.
QuadratureResult radial_pass(const std::function<double(const Radius&)>& node,
                             const Support& support,
                             const QuadratureConfig& cfg) {
  cfg.validate();
  if (support.is_full() && cfg.singularity_exponent &&
      *cfg.singularity_exponent <= -1.0) {
    throw DomainError(
        "radial integrand with (1 - r^2)^alpha, alpha <= -1, is not integrable "
        "up to r = 1");
  }
  const double gap = support.gap();
  if (resolve(cfg, support) == RadialStrategy::SineSubstitution) {
    // r = cos v, 1 - r = 2 sin^2(v/2), dr = sin v dv.
    const double v0 = 2.0 * std::asin(std::sqrt(0.5 * gap));
    const auto pts = graded_points(v0, kHalfPi, 12);
    std::function<double(double)> f = [&](double v) {
      const double s = std::sin(0.5 * v);
      const Radius rad = Radius::exact(std::cos(v), 2.0 * s * s);
      const double value = node(rad);
      return value == 0.0 ? 0.0 : value * std::sin(v);
    };
    return integrate_interval(f, v0, kHalfPi, cfg,
                              std::span(pts).subspan(1, pts.size() - 2));
  }
  // d = 1 - r over [gap, 1], graded toward d = gap.
  std::vector<double> pts{gap};
  for (int k = 15; k >= 1; --k) {
    const double p = std::pow(10.0, -k);
    if (p > gap * 1.5 && p < 1.0) pts.push_back(p);
  }
  pts.push_back(1.0);
  std::function<double(double)> f = [&](double d) {
    return node(Radius::exact(1.0 - d, d));
  };
  return integrate_interval(f, gap, 1.0, cfg,
                            std::span(pts).subspan(1, pts.size() - 2));
}

}  // namespace

void QuadratureConfig::validate() const {
  if (!(rel_tol > 0.0) || !(abs_tol > 0.0)) {
    throw DomainError("quadrature tolerances must be positive");
  }
  if (max_evaluations < kRuleSize) {
    throw DomainError("max_evaluations below the 21-point rule size");
  }
}

QuadratureConfig QuadratureConfig::inner() const {
  QuadratureConfig cfg = *this;
  cfg.rel_tol = std::max(rel_tol * 1e-2, 1e-13);
  cfg.abs_tol = std::max(abs_tol * 1e-3, 1e-300);
  cfg.singularity_exponent.reset();
  return cfg;
}

QuadratureResult& QuadratureResult::operator+=(const QuadratureResult& other) {
  value += other.value;
  error_estimate += other.error_estimate;
  evaluations += other.evaluations;
  converged = converged && other.converged;
  return *this;
}

QuadratureResult integrate_interval(const std::function<double(double)>& fn,
                                    double a, double b,
                                    const QuadratureConfig& cfg,
                                    std::span<const double> breakpoints) {
  cfg.validate();
  silence_gsl();
  QuadratureResult result;
  if (a == b) return result;

  const std::size_t limit =
      std::max<std::size_t>(cfg.max_evaluations / kRuleSize,
                            breakpoints.size() + 1);
  WorkspacePool::Lease ws(workspace_pool, limit);
  Counted counted{&fn};
  gsl_function gf{&trampoline, &counted};
  double value = 0.0;
  double error = 0.0;
  int status = 0;
  if (breakpoints.empty()) {
    status = gsl_integration_qags(&gf, a, b, cfg.abs_tol, cfg.rel_tol, limit,
                                  ws.get(), &value, &error);
  } else {
    std::vector<double> pts;
    pts.reserve(breakpoints.size() + 2);
    pts.push_back(a);
    pts.insert(pts.end(), breakpoints.begin(), breakpoints.end());
    pts.push_back(b);
    status = gsl_integration_qagp(&gf, pts.data(), pts.size(), cfg.abs_tol,
                                  cfg.rel_tol, limit, ws.get(), &value, &error);
  }
  result.value = value;
  result.error_estimate = error;
  result.evaluations = counted.count;
  // GSL_EROUND: the requested tolerance lies below what roundoff allows.
  const bool at_roundoff_floor =
      status == GSL_EROUND &&
      error <= 100.0 * std::max(cfg.rel_tol * std::abs(value), cfg.abs_tol);
  result.converged = std::isfinite(value) &&
                     (status == GSL_SUCCESS || at_roundoff_floor ||
                      within_tolerance(value, error, cfg));
  return result;
}

QuadratureResult integrate_radial(const std::function<double(const Radius&)>& fn,
                                  const Support& support,
                                  const QuadratureConfig& cfg) {
  return radial_pass(fn, support, cfg);
}

QuadratureResult integrate_radial(const std::function<double(double)>& fn,
                                  double outer_radius,
                                  const QuadratureConfig& cfg) {
  return radial_pass([&](const Radius& rad) { return fn(rad.r()); },
                     Support::from_radius(outer_radius), cfg);
}

QuadratureResult integrate_ball(const std::function<double(const BlochPoint&)>& fn,
                                const Support& support,
                                const QuadratureConfig& cfg) {
  const QuadratureConfig inner = cfg.inner();
  const double pi = std::numbers::pi;
  std::size_t inner_evaluations = 0;
  bool inner_converged = true;

  const int theta_pieces = cfg.octant_symmetry ? 1 : 2;
  const int phi_pieces = cfg.octant_symmetry ? 1 : 4;
  const double multiplicity = cfg.octant_symmetry ? 8.0 : 1.0;

  auto angular = [&](const Radius& rad) {
    double total = 0.0;
    std::function<double(double)> over_theta = [&](double theta) {
      double sum = 0.0;
      std::function<double(double)> over_phi = [&](double phi) {
        return fn(BlochPoint::spherical(rad, theta, phi));
      };
      for (int k = 0; k < phi_pieces; ++k) {
        const auto res = integrate_interval(over_phi, k * kHalfPi,
                                            (k + 1) * kHalfPi, inner);
        inner_evaluations += res.evaluations;
        inner_converged = inner_converged && res.converged;
        sum += res.value;
      }
      return sum;
    };
    for (int k = 0; k < theta_pieces; ++k) {
      const auto res = integrate_interval(over_theta, k * kHalfPi,
                                          std::min((k + 1) * kHalfPi, pi),
                                          inner);
      inner_converged = inner_converged && res.converged;
      total += res.value;
    }
    return multiplicity * total;
  };

  QuadratureResult result = radial_pass(angular, support, cfg);
  result.evaluations = inner_evaluations;
  result.converged = result.converged && inner_converged;
  return result;
}

double crossover_root(const std::function<double(double)>& h, double a,
                      double b, double tol) {
  if (!(tol > 0.0) || !(a < b)) throw DomainError("crossover_root: bad bracket");
  double fa = h(a);
  const double fb = h(b);
  if (fa == 0.0) return a;
  if (fb == 0.0) return b;
  if ((fa < 0.0) == (fb < 0.0)) {
    throw NoSignChange("no sign change of the crossover function on [" +
                       std::to_string(a) + ", " + std::to_string(b) + "]");
  }
  for (int iter = 0; iter < 400 && b - a > tol; ++iter) {
    const double mid = 0.5 * (a + b);
    if (mid <= a || mid >= b) break;
    const double fm = h(mid);
    if (fm == 0.0) return mid;
    if ((fm < 0.0) == (fa < 0.0)) {
      a = mid;
      fa = fm;
    } else {
      b = mid;
    }
  }
  return 0.5 * (a + b);
}

}  // namespace blochprior
