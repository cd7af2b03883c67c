#pragma once

#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "blochprior/infotheory.hpp"
#include "blochprior/measurement.hpp"
#include "blochprior/prior.hpp"
#include "blochprior/quadrature.hpp"

namespace blochprior {

enum class ToleranceClass { ExactRational, SixDigit, FourDigit };

std::string_view tolerance_class_name(ToleranceClass c);
/// Relative tolerance: 1e-9, 1e-3 and 5e-3.
double tolerance_of(ToleranceClass c);

struct ReproductionRow {
  std::string quantity_id;
  double paper_value = 0.0;
  double computed_value = 0.0;
  double abs_diff = 0.0;
  double rel_diff = 0.0;
  ToleranceClass tolerance_class = ToleranceClass::SixDigit;
  bool pass = false;
  /// Empty unless the computation threw; then computed_value is NaN.
  std::string error;
};

/// Fills the diffs and the pass flag.
ReproductionRow make_row(std::string quantity_id, double paper_value,
                         double computed_value, ToleranceClass c);

struct SweepResult {
  std::vector<int> ks;
  std::vector<double> statistics;
  int argmin_k = 0;
  bool converged = true;
};

/// D(p || Posterior(q, k * base)) for k = 1..k_max.
SweepResult repeat_sweep(const PriorDensity& p, const PriorDensity& q,
                         const MeasurementRecord& base, int k_max,
                         const QuadratureConfig& cfg = {});

enum class SearchConstraintKind {
  Any,
  /// up == down on every axis.
  BalancedAxes,
  /// k * base for k >= 1.
  RepeatedBase,
};

struct SearchConstraint {
  SearchConstraintKind kind = SearchConstraintKind::BalancedAxes;
  MeasurementRecord base = MeasurementRecord::balanced6();
};

struct SearchResult {
  MeasurementRecord record;
  double value = 0.0;
  std::size_t candidates = 0;
  bool converged = true;
};

inline constexpr int kSearchMaxTotal = 30;
inline constexpr std::size_t kDefaultCandidateCap = 256;

/// Every record admitted by `constraint` with total <= max_total, ordered by
/// total and then lexicographically by count vector (X+, X-, Y+, Y-, Z+, Z-).
std::vector<MeasurementRecord> enumerate_records(int max_total,
                                                 const SearchConstraint& constraint);

/// Minimizes D(Posterior(p, rec) || q) (or D(p || Posterior(q, rec)) with
/// SecondIsPosterior) over enumerate_records(). Ties within 1e-12 go to the
/// earlier candidate. Throws DomainError for max_total outside [0, 30] and
/// BudgetExceeded when there are more than `candidate_cap` candidates.
SearchResult search_min_record(const PriorDensity& p, const PriorDensity& q,
                               int max_total, const SearchConstraint& constraint,
                               PosteriorSide side = PosteriorSide::FirstIsPosterior,
                               const QuadratureConfig& cfg = {},
                               std::size_t candidate_cap = kDefaultCandidateCap);

enum class ReproductionTable { All, S21, S22, S23, S3 };

std::string_view table_name(ReproductionTable t);
/// Throws ParseError.
ReproductionTable parse_table(std::string_view text);

/// Every tabulated quantity of the selected sections. A row whose
/// computation throws is recorded as failed; the table is never aborted.
/// Rows are computed on up to `threads` workers (0: hardware concurrency)
/// and returned in a fixed order.
std::vector<ReproductionRow> reproduce(ReproductionTable table,
                                       const QuadratureConfig& cfg = {},
                                       unsigned threads = 0);

void write_csv(std::ostream& out, const std::vector<ReproductionRow>& rows);
void write_json(std::ostream& out, const std::vector<ReproductionRow>& rows);

}  // namespace blochprior
