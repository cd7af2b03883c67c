#pragma once

#include <array>
#include <string>
#include <string_view>

#include "blochprior/geometry.hpp"
#include "blochprior/prior.hpp"
#include "blochprior/quadrature.hpp"

namespace blochprior {

enum class Axis { X = 0, Y = 1, Z = 2 };
enum class Outcome { Up = 0, Down = 1 };

/// Up/down counts of projective spin measurements along X, Y and Z.
/// Repetition and addition act on counts, so squaring the likelihood and
/// doubling the measurement set are the same operation.
class MeasurementRecord {
 public:
  MeasurementRecord() = default;

  /// One up and one down along each axis (six measurements).
  static MeasurementRecord balanced6();
  static MeasurementRecord single(Axis axis, Outcome outcome);

  int count(Axis axis, Outcome outcome) const;
  /// Throws DomainError for a negative resulting count.
  MeasurementRecord& add(Axis axis, Outcome outcome, int n);
  int total() const;
  bool empty() const { return total() == 0; }
  /// up == down on every axis: the likelihood is even in x, y and z.
  bool sign_symmetric() const;
  const std::array<int, 6>& counts() const { return counts_; }

  MeasurementRecord& operator+=(const MeasurementRecord& other);
  friend MeasurementRecord operator+(MeasurementRecord a,
                                     const MeasurementRecord& b) {
    return a += b;
  }
  friend bool operator==(const MeasurementRecord&,
                         const MeasurementRecord&) = default;

 private:
  static std::size_t slot(Axis axis, Outcome outcome) {
    return 2 * static_cast<std::size_t>(axis) + static_cast<std::size_t>(outcome);
  }
  std::array<int, 6> counts_{};
};

/// prod_a ((1 + s_a)/2)^up_a ((1 - s_a)/2)^down_a with s = (x, y, z).
double likelihood(const MeasurementRecord& rec, const BlochPoint& pt);
/// log of likelihood(); -inf where a factor vanishes.
double log_likelihood(const MeasurementRecord& rec, const BlochPoint& pt);

/// Average of log_likelihood() over the sphere of radius r. Every factor
/// contributes the same amount, so only the total count matters.
double sphere_average_log_likelihood(const MeasurementRecord& rec,
                                     const Radius& rad);

/// Every count multiplied by k >= 1.
MeasurementRecord repeat(const MeasurementRecord& rec, int k);

/// Grammar: token (',' token)*, token = axis{X,Y,Z} sign{+,-} ':' count.
/// Aliases: "balanced6", "balanced6^k", "empty". Throws ParseError.
MeasurementRecord parse_record(std::string_view spec);
/// Canonical spec string; "empty" for the empty record.
std::string format_record(const MeasurementRecord& rec);

/// prior x likelihood / evidence, evaluated lazily from its parts.
class PosteriorDensity {
 public:
  /// The prior viewed as a posterior of the empty record (evidence 1).
  explicit PosteriorDensity(PriorDensity prior);
  PosteriorDensity(PriorDensity prior, MeasurementRecord record,
                   QuadratureResult evidence);

  const PriorDensity& prior() const { return prior_; }
  const MeasurementRecord& record() const { return record_; }
  const Support& support() const { return prior_.support(); }
  double evidence() const { return evidence_.value; }
  /// 1 / evidence.
  double normalization_factor() const { return 1.0 / evidence_.value; }
  const QuadratureResult& evidence_quadrature() const { return evidence_; }

  double density(const BlochPoint& pt,
                 DensityConvention convention = DensityConvention::Spherical) const;
  bool spherically_symmetric() const { return record_.empty(); }

 private:
  PriorDensity prior_;
  MeasurementRecord record_;
  QuadratureResult evidence_;
};

/// Bayes update. Throws ZeroEvidence when the evidence falls below 1e-300.
PosteriorDensity posterior(const PriorDensity& prior,
                           const MeasurementRecord& rec,
                           const QuadratureConfig& cfg = {});

/// Sequential update: the evidence of `rec` is integrated against the
/// current posterior and multiplied into the accumulated evidence.
PosteriorDensity posterior(const PosteriorDensity& current,
                           const MeasurementRecord& rec,
                           const QuadratureConfig& cfg = {});

}  // namespace blochprior
