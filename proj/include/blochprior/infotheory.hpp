#pragma once

#include <string_view>

#include "blochprior/measurement.hpp"
#include "blochprior/prior.hpp"
#include "blochprior/quadrature.hpp"

namespace blochprior {

/// Relative entropies are reported in nats; 1 nat = 1/log 2 bits.
inline constexpr double kBitsPerNat = 1.4426950408889634;

inline double nats_to_bits(double nats) { return nats * kBitsPerNat; }

enum class SupportPolicy {
  /// Both densities must live on the same ball.
  RequireEqual,
  /// The first density's ball may lie strictly inside the second's.
  AllowSubset,
};

/// D(p || q) = int p log(p / q), nats. When p is spherically symmetric the
/// likelihood of q enters only through its sphere average and the integral
/// is radial; otherwise it runs over the ball. Throws SupportMismatch per
/// `policy`.
QuadratureResult relative_entropy(const PosteriorDensity& p,
                                  const PosteriorDensity& q,
                                  const QuadratureConfig& cfg = {},
                                  SupportPolicy policy = SupportPolicy::RequireEqual);

QuadratureResult relative_entropy(const PriorDensity& p, const PriorDensity& q,
                                  const QuadratureConfig& cfg = {},
                                  SupportPolicy policy = SupportPolicy::RequireEqual);

/// Same quantity, always integrated over the ball.
QuadratureResult relative_entropy_ball(const PosteriorDensity& p,
                                       const PosteriorDensity& q,
                                       const QuadratureConfig& cfg = {},
                                       SupportPolicy policy = SupportPolicy::RequireEqual);

enum class PosteriorSide {
  /// D(p || Posterior(q, rec)).
  SecondIsPosterior,
  /// D(Posterior(p, rec) || q).
  FirstIsPosterior,
};

QuadratureResult relative_entropy_vs_posterior(const PriorDensity& p,
                                               const PriorDensity& q,
                                               const MeasurementRecord& rec,
                                               PosteriorSide side,
                                               const QuadratureConfig& cfg = {});

enum class Variant { Paper, ClarkeStrict };
enum class Verdict { FirstMoreNoninformative, SecondMoreNoninformative, Inconclusive };

std::string_view variant_name(Variant v);
std::string_view verdict_name(Verdict v);

/// Deltas smaller than this many nats never decide a verdict.
inline constexpr double kVerdictMargin = 1e-6;

/// The four statistics behind a comparison of priors p and q under a record.
///
/// Paper variant:   d_p_post_q = D(p || P_q),  d_q_post_p = D(q || P_p).
/// Clarke-strict:   d_p_post_q = D(P_q || p),  d_q_post_p = D(P_p || q).
/// p is more noninformative when adding the record to q moves it away from p
/// while adding it to p moves p toward q:
///   paper:  D(p||P_q) > D(p||q)  and  D(q||P_p) < D(q||p)
///   clarke: D(P_q||p) > D(q||p)  and  D(P_p||q) < D(p||q)
struct ComparisonReport {
  std::string p_name;
  std::string q_name;
  MeasurementRecord record;
  Variant variant = Variant::Paper;
  double d_pq = 0.0;
  double d_qp = 0.0;
  double d_p_post_q = 0.0;
  double d_q_post_p = 0.0;
  Verdict verdict = Verdict::Inconclusive;
  double rel_tol = 0.0;
  double abs_tol = 0.0;
  std::size_t evaluations = 0;
  bool converged = true;
};

ComparisonReport noninformativity_verdict(const PriorDensity& p,
                                          const PriorDensity& q,
                                          const MeasurementRecord& rec,
                                          Variant variant,
                                          const QuadratureConfig& cfg = {});

/// Applies the paired rule to four already computed statistics.
Verdict decide_verdict(Variant variant, double d_pq, double d_qp,
                       double d_p_post_q, double d_q_post_p);

/// D(Posterior(p, rec) || p).
QuadratureResult information_gain(const PriorDensity& p,
                                  const MeasurementRecord& rec,
                                  const QuadratureConfig& cfg = {});

/// <z^2>; the mean of z vanishes for every spherically symmetric prior.
QuadratureResult variance_z(const PriorDensity& p, const QuadratureConfig& cfg = {});
QuadratureResult variance_z(const PosteriorDensity& p,
                            const QuadratureConfig& cfg = {});

/// Radius in (0.5, R) at which the normalized radial densities of p and q
/// coincide; p dominates beyond it. Throws NoSignChange.
double crossover_radius(const PriorDensity& p, const PriorDensity& q);

/// Ratio of normalized radial densities p(r)/q(r). Throws DivisionByZero when
/// q vanishes there and OutOfSupport outside either ball.
double density_ratio_at(const PriorDensity& p, const PriorDensity& q,
                        const Radius& rad);
double density_ratio_at(const PriorDensity& p, const PriorDensity& q, double r);

/// int p_cart(x, y, z) dz, the density of (x, y). Requires x^2 + y^2 < R^2.
QuadratureResult bivariate_marginal(const PriorDensity& p, double x, double y,
                                    const QuadratureConfig& cfg = {});

/// Arc-sine density (1 - x^2)^(-1/2) / pi: x given y = 0 under the R -> 1
/// limit (1 - x^2 - y^2)^(-1/2) / (2 pi) of the p0 marginal.
double conditional_x(double x);

/// Numerical conditioning of p's bivariate marginal on y = 0.
QuadratureResult conditional_x(const PriorDensity& p, double x,
                               const QuadratureConfig& cfg = {});

}  // namespace blochprior
