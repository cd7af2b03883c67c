#pragma once

#include <functional>
#include <string>
#include <string_view>
#include <vector>

namespace blochprior {

enum class MonotoneKind {
  SLD,
  KuboMori,
  MorozovaChentsov,
  PetzFamily,
  LarsonDukesGenerator,
  Custom,
};

/// A scalar function f on (0, inf) generating a metric on 2x2 density
/// matrices. Built-in kinds have closed forms; Custom wraps any evaluator
/// and is admitted without a proof of operator monotonicity.
class MonotoneFunction {
 public:
  /// f(t) = (1 + t) / 2, the minimal monotone (Bures) function.
  static MonotoneFunction sld();
  /// f(t) = (t - 1) / log t.
  static MonotoneFunction kubo_mori();
  /// f(t) = 2 (t - 1)^2 / ((1 + t) (log t)^2).
  static MonotoneFunction morozova_chentsov();
  /// f(t) = 2 t^((2 - n)/2) (t - 1)^n / ((1 + t) (log t)^n), n in {0, 1, 2}.
  /// n = 0 is the maximal monotone function 2t / (1 + t).
  static MonotoneFunction petz(int n);
  /// f(t) = (1 + t)^2 / sqrt(t). Reproduces the uniform density but is not
  /// operator monotone (and f(1) = 4).
  static MonotoneFunction larson_dukes_generator();
  static MonotoneFunction custom(std::string name,
                                 std::function<double(double)> evaluator);

  /// Throws DomainError for t <= 0 or a non-finite value.
  double operator()(double t) const;

  MonotoneKind kind() const { return kind_; }
  /// Only meaningful for PetzFamily.
  int petz_order() const { return petz_order_; }
  const std::string& name() const { return name_; }

 private:
  MonotoneFunction(MonotoneKind kind, std::string name, int petz_order = -1);

  MonotoneKind kind_;
  std::string name_;
  int petz_order_ = -1;
  std::function<double(double)> custom_;
};

struct MonotoneCheck {
  bool normalized = false;
  bool symmetric = false;
  bool scalar_monotone = false;

  friend bool operator==(const MonotoneCheck&, const MonotoneCheck&) = default;
};

/// Log-spaced grid with `per_decade` points per decade; includes t = 1
/// exactly when 1 lies inside [lo, hi].
std::vector<double> log_grid(double lo, double hi, int per_decade);

/// Necessary conditions only: f(1) = 1, f(t) = t f(1/t) on a log grid over
/// [1e-6, 1e6] (1e-12 relative), and f nondecreasing on that grid.
MonotoneCheck check_monotone_function(const MonotoneFunction& f);

}  // namespace blochprior
