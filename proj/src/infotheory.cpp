#include "blochprior/infotheory.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>
#include <vector>

#include "blochprior/errors.hpp"

namespace blochprior {
namespace {

constexpr double kHalfPi = 0.5 * std::numbers::pi;

void check_supports(const Support& first, const Support& second,
                    SupportPolicy policy, std::string_view p_name,
                    std::string_view q_name) {
  const bool ok = policy == SupportPolicy::RequireEqual ? first == second
                                                        : first.within(second);
  if (!ok) {
    auto radius = [](const Support& s) {
      std::ostringstream r;
      r << "R = 1";
      if (!s.is_full()) r << " - " << s.gap();
      return r.str();
    };
    std::ostringstream msg;
    msg << "supports of '" << p_name << "' (" << radius(first) << ") and '" << q_name
        << "' (" << radius(second) << ") differ";
    throw SupportMismatch(msg.str());
  }
}

// log(c_p h_p(r) / (c_q h_q(r))): the log ratio of Cartesian prior densities.
double log_prior_ratio(const PriorDensity& p, const PriorDensity& q,
                       const Radius& rad) {
  return std::log((p.normalization() * p.cartesian_profile(rad)) /
                  (q.normalization() * q.cartesian_profile(rad)));
}

std::vector<double> graded_toward(double end, int levels) {
  std::vector<double> pts;
  for (int k = 1; k <= levels; ++k) pts.push_back(end - end * std::pow(10.0, -k));
  return pts;
}

}  // namespace

std::string_view variant_name(Variant v) {
  return v == Variant::Paper ? "paper" : "clarke";
}

std::string_view verdict_name(Verdict v) {
  switch (v) {
    case Verdict::FirstMoreNoninformative:
      return "FirstMoreNoninformative";
    case Verdict::SecondMoreNoninformative:
      return "SecondMoreNoninformative";
    case Verdict::Inconclusive:
      break;
  }
  return "Inconclusive";
}

static QuadratureResult with_evidence_cost(QuadratureResult result,
                                    const PosteriorDensity& p,
                                    const PosteriorDensity& q) {
  result.converged = result.converged && p.evidence_quadrature().converged &&
                     q.evidence_quadrature().converged;
  result.evaluations +=
      p.evidence_quadrature().evaluations + q.evidence_quadrature().evaluations;
  return result;
}

QuadratureResult relative_entropy(const PosteriorDensity& p,
                                  const PosteriorDensity& q,
                                  const QuadratureConfig& cfg,
                                  SupportPolicy policy) {
  if (!p.spherically_symmetric()) return relative_entropy_ball(p, q, cfg, policy);
  check_supports(p.support(), q.support(), policy, p.prior().name(),
                 q.prior().name());
  const PriorDensity& pp = p.prior();
  const PriorDensity& qp = q.prior();
  QuadratureConfig local = cfg;
  local.singularity_exponent = pp.singularity_exponent();
  const double log_evidence = std::log(q.evidence());
  const auto result = integrate_radial(
      [&](const Radius& rad) {
        const double mass = pp.radial_marginal(rad);
        if (mass == 0.0) return 0.0;
        return mass * (log_prior_ratio(pp, qp, rad) + log_evidence -
                       sphere_average_log_likelihood(q.record(), rad));
      },
      p.support(), local);
  return with_evidence_cost(result, p, q);
}

QuadratureResult relative_entropy_ball(const PosteriorDensity& p,
                                       const PosteriorDensity& q,
                                       const QuadratureConfig& cfg,
                                       SupportPolicy policy) {
  check_supports(p.support(), q.support(), policy, p.prior().name(),
                 q.prior().name());
  const PriorDensity& pp = p.prior();
  const PriorDensity& qp = q.prior();
  QuadratureConfig local = cfg;
  local.singularity_exponent = pp.singularity_exponent();
  local.octant_symmetry =
      p.record().sign_symmetric() && q.record().sign_symmetric();
  const double log_evidence_ratio = std::log(q.evidence() / p.evidence());
  const auto result = integrate_ball(
      [&](const BlochPoint& pt) {
        const double density = p.density(pt);
        if (density == 0.0) return 0.0;
        const double log_ratio = log_prior_ratio(pp, qp, pt.radius()) +
                                 log_likelihood(p.record(), pt) -
                                 log_likelihood(q.record(), pt) +
                                 log_evidence_ratio;
        return density * log_ratio;
      },
      p.support(), local);
  return with_evidence_cost(result, p, q);
}

QuadratureResult relative_entropy(const PriorDensity& p, const PriorDensity& q,
                                  const QuadratureConfig& cfg,
                                  SupportPolicy policy) {
  return relative_entropy(PosteriorDensity(p), PosteriorDensity(q), cfg, policy);
}

QuadratureResult relative_entropy_vs_posterior(const PriorDensity& p,
                                               const PriorDensity& q,
                                               const MeasurementRecord& rec,
                                               PosteriorSide side,
                                               const QuadratureConfig& cfg) {
  check_supports(p.support(), q.support(), SupportPolicy::RequireEqual, p.name(),
                 q.name());
  if (side == PosteriorSide::SecondIsPosterior) {
    return relative_entropy(PosteriorDensity(p), posterior(q, rec, cfg), cfg);
  }
  return relative_entropy(posterior(p, rec, cfg), PosteriorDensity(q), cfg);
}

Verdict decide_verdict(Variant variant, double d_pq, double d_qp,
                       double d_p_post_q, double d_q_post_p) {
  // Baselines: the same divergence with the posterior replaced by its prior.
  const double base_p = variant == Variant::Paper ? d_pq : d_qp;
  const double base_q = variant == Variant::Paper ? d_qp : d_pq;
  const double move_p = d_p_post_q - base_p;
  const double move_q = d_q_post_p - base_q;
  if (move_p > kVerdictMargin && move_q < -kVerdictMargin) {
    return Verdict::FirstMoreNoninformative;
  }
  if (move_q > kVerdictMargin && move_p < -kVerdictMargin) {
    return Verdict::SecondMoreNoninformative;
  }
  return Verdict::Inconclusive;
}

ComparisonReport noninformativity_verdict(const PriorDensity& p,
                                          const PriorDensity& q,
                                          const MeasurementRecord& rec,
                                          Variant variant,
                                          const QuadratureConfig& cfg) {
  ComparisonReport report;
  report.p_name = p.name();
  report.q_name = q.name();
  report.record = rec;
  report.variant = variant;
  report.rel_tol = cfg.rel_tol;
  report.abs_tol = cfg.abs_tol;

  auto absorb = [&](const QuadratureResult& r) {
    report.evaluations += r.evaluations;
    report.converged = report.converged && r.converged;
    return r.value;
  };
  report.d_pq = absorb(relative_entropy(p, q, cfg));
  report.d_qp = absorb(relative_entropy(q, p, cfg));

  const PosteriorDensity post_p = posterior(p, rec, cfg);
  const PosteriorDensity post_q = posterior(q, rec, cfg);
  if (variant == Variant::Paper) {
    report.d_p_post_q = absorb(relative_entropy(PosteriorDensity(p), post_q, cfg));
    report.d_q_post_p = absorb(relative_entropy(PosteriorDensity(q), post_p, cfg));
  } else {
    report.d_p_post_q = absorb(relative_entropy(post_q, PosteriorDensity(p), cfg));
    report.d_q_post_p = absorb(relative_entropy(post_p, PosteriorDensity(q), cfg));
  }
  report.verdict = decide_verdict(variant, report.d_pq, report.d_qp,
                                  report.d_p_post_q, report.d_q_post_p);
  return report;
}

QuadratureResult information_gain(const PriorDensity& p,
                                  const MeasurementRecord& rec,
                                  const QuadratureConfig& cfg) {
  if (rec.empty()) return {};
  return relative_entropy(posterior(p, rec, cfg), PosteriorDensity(p), cfg);
}

QuadratureResult variance_z(const PriorDensity& p, const QuadratureConfig& cfg) {
  QuadratureConfig local = cfg;
  local.singularity_exponent = p.singularity_exponent();
  // <z^2> = <r^2> <cos^2 theta> = <r^2> / 3 for spherically symmetric p.
  return integrate_radial(
      [&](const Radius& rad) {
        return p.radial_marginal(rad) * rad.r() * rad.r() / 3.0;
      },
      p.support(), local);
}

QuadratureResult variance_z(const PosteriorDensity& p, const QuadratureConfig& cfg) {
  if (p.spherically_symmetric()) return variance_z(p.prior(), cfg);
  QuadratureConfig local = cfg;
  local.singularity_exponent = p.prior().singularity_exponent();
  local.octant_symmetry = p.record().sign_symmetric();
  return integrate_ball(
      [&](const BlochPoint& pt) { return pt.z() * pt.z() * p.density(pt); },
      p.support(), local);
}

double crossover_radius(const PriorDensity& p, const PriorDensity& q) {
  const Support& sp = p.support();
  const Support& sq = q.support();
  const double gap = std::max({sp.gap(), sq.gap(), 1e-9});
  const double hi = 1.0 - gap;
  return crossover_root(
      [&](double r) {
        const Radius rad = r == hi ? Radius::from_gap(gap) : Radius::from_r(r);
        return log_prior_ratio(p, q, rad);
      },
      0.5, hi, 1e-13);
}

double density_ratio_at(const PriorDensity& p, const PriorDensity& q,
                        const Radius& rad) {
  if (!p.support().contains(rad) || !q.support().contains(rad)) {
    throw OutOfSupport("radius " + std::to_string(rad.r()) +
                       " outside the support of '" + p.name() + "' or '" +
                       q.name() + "'");
  }
  const double denominator = q.radial_marginal(rad);
  if (denominator == 0.0) {
    throw DivisionByZero("density of '" + q.name() + "' vanishes at r = " +
                         std::to_string(rad.r()));
  }
  return p.radial_marginal(rad) / denominator;
}

double density_ratio_at(const PriorDensity& p, const PriorDensity& q, double r) {
  return density_ratio_at(p, q, Radius::from_r(r));
}

QuadratureResult bivariate_marginal(const PriorDensity& p, double x, double y,
                                    const QuadratureConfig& cfg) {
  const double rho2 = x * x + y * y;
  const Radius outer = p.support().outer();
  const double outer_w = outer.one_minus_r2();  // 1 - R^2
  const double zmax2 = (1.0 - rho2) - outer_w;  // R^2 - rho^2
  if (!(zmax2 > 0.0)) {
    throw OutOfSupport("(x, y) = (" + std::to_string(x) + ", " + std::to_string(y) +
                       ") lies outside the disk of radius R");
  }
  const double zmax = std::sqrt(zmax2);
  const double c = p.normalization();
  // z = zmax sin(u); 1 - r^2 = (1 - R^2) + zmax^2 cos^2(u); both halves of
  // the chord contribute equally.
  std::function<double(double)> fn = [&](double u) {
    const double cu = std::cos(u);
    const double w = outer_w + zmax2 * cu * cu;
    const double r = std::sqrt(1.0 - w);
    const Radius rad = Radius::exact(r, w / (1.0 + r));
    return 2.0 * c * p.cartesian_profile(rad) * zmax * cu;
  };
  const auto pts = graded_toward(kHalfPi, 10);
  QuadratureConfig local = cfg;
  local.singularity_exponent.reset();
  return integrate_interval(fn, 0.0, kHalfPi, local, pts);
}

double conditional_x(double x) {
  if (!(std::abs(x) < 1.0)) {
    throw OutOfSupport("conditional density needs |x| < 1");
  }
  return 1.0 / (std::numbers::pi * std::sqrt((1.0 - x) * (1.0 + x)));
}

QuadratureResult conditional_x(const PriorDensity& p, double x,
                               const QuadratureConfig& cfg) {
  const double radius = p.support().radius();
  if (!(std::abs(x) < radius)) {
    throw OutOfSupport("conditional density needs |x| < R");
  }
  QuadratureResult numerator = bivariate_marginal(p, x, 0.0, cfg);
  QuadratureConfig inner = cfg.inner();
  std::size_t evaluations = 0;
  bool converged = true;
  // x' = R sin(u) over the chord y = 0, doubled by symmetry.
  std::function<double(double)> fn = [&](double u) {
    const double xs = radius * std::sin(u);
    if (!(xs < radius)) return 0.0;
    const auto m = bivariate_marginal(p, xs, 0.0, inner);
    evaluations += m.evaluations;
    converged = converged && m.converged;
    return 2.0 * m.value * radius * std::cos(u);
  };
  const auto pts = graded_toward(kHalfPi, 8);
  QuadratureResult norm = integrate_interval(fn, 0.0, kHalfPi, cfg, pts);
  QuadratureResult out;
  out.value = numerator.value / norm.value;
  out.error_estimate = std::abs(out.value) *
                       (numerator.error_estimate / std::abs(numerator.value) +
                        norm.error_estimate / std::abs(norm.value));
  out.evaluations = numerator.evaluations + evaluations;
  out.converged = numerator.converged && norm.converged && converged;
  return out;
}

}  // namespace blochprior
