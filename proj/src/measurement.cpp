#include "blochprior/measurement.hpp"

#include <charconv>
#include <cmath>
#include <limits>
#include <numbers>
#include <utility>

#include "blochprior/errors.hpp"

namespace blochprior {
namespace {

constexpr std::array<Axis, 3> kAxes{Axis::X, Axis::Y, Axis::Z};

double coordinate(const BlochPoint& pt, Axis axis) {
  switch (axis) {
    case Axis::X:
      return pt.x();
    case Axis::Y:
      return pt.y();
    case Axis::Z:
      return pt.z();
  }
  return 0.0;
}

int parse_positive(std::string_view text, std::string_view context) {
  int value = 0;
  const auto* first = text.data();
  const auto* last = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(first, last, value);
  if (text.empty() || ec != std::errc() || ptr != last || value <= 0) {
    throw ParseError("expected a positive integer in '" + std::string(context) +
                     "'");
  }
  return value;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
  return s;
}

}  // namespace

MeasurementRecord MeasurementRecord::balanced6() {
  MeasurementRecord rec;
  rec.counts_.fill(1);
  return rec;
}

MeasurementRecord MeasurementRecord::single(Axis axis, Outcome outcome) {
  MeasurementRecord rec;
  rec.add(axis, outcome, 1);
  return rec;
}

int MeasurementRecord::count(Axis axis, Outcome outcome) const {
  return counts_[slot(axis, outcome)];
}

MeasurementRecord& MeasurementRecord::add(Axis axis, Outcome outcome, int n) {
  int& c = counts_[slot(axis, outcome)];
  if (c + n < 0) throw DomainError("measurement counts must stay nonnegative");
  c += n;
  return *this;
}

int MeasurementRecord::total() const {
  int sum = 0;
  for (int c : counts_) sum += c;
  return sum;
}

bool MeasurementRecord::sign_symmetric() const {
  for (Axis a : kAxes) {
    if (count(a, Outcome::Up) != count(a, Outcome::Down)) return false;
  }
  return true;
}

MeasurementRecord& MeasurementRecord::operator+=(const MeasurementRecord& other) {
  for (std::size_t i = 0; i < counts_.size(); ++i) counts_[i] += other.counts_[i];
  return *this;
}

double likelihood(const MeasurementRecord& rec, const BlochPoint& pt) {
  double value = 1.0;
  for (Axis a : kAxes) {
    const double s = coordinate(pt, a);
    if (int up = rec.count(a, Outcome::Up)) value *= std::pow(0.5 * (1.0 + s), up);
    if (int down = rec.count(a, Outcome::Down)) value *= std::pow(0.5 * (1.0 - s), down);
  }
  return value;
}

double log_likelihood(const MeasurementRecord& rec, const BlochPoint& pt) {
  double value = 0.0;
  for (Axis a : kAxes) {
    const double s = coordinate(pt, a);
    if (int up = rec.count(a, Outcome::Up)) {
      value += up * (std::log1p(s) - std::numbers::ln2);
    }
    if (int down = rec.count(a, Outcome::Down)) {
      value += down * (std::log1p(-s) - std::numbers::ln2);
    }
  }
  return value;
}

double sphere_average_log_likelihood(const MeasurementRecord& rec,
                                     const Radius& rad) {
  if (rec.empty()) return 0.0;
  const double r = rad.r();
  double mean_log1p;  // (1/2) int_{-1}^{1} log(1 + r u) du
  if (r < 1e-3) {
    const double r2 = r * r;
    mean_log1p = -r2 * (1.0 / 6.0 + r2 * (1.0 / 20.0 + r2 / 42.0));
  } else {
    const double gap = rad.gap();
    const double tail = gap > 0.0 ? gap * std::log(gap) : 0.0;
    mean_log1p = ((1.0 + r) * std::log1p(r) - tail) / (2.0 * r) - 1.0;
  }
  return rec.total() * (mean_log1p - std::numbers::ln2);
}

MeasurementRecord repeat(const MeasurementRecord& rec, int k) {
  if (k < 1) throw DomainError("repeat factor must be >= 1");
  MeasurementRecord out;
  for (Axis a : kAxes) {
    out.add(a, Outcome::Up, k * rec.count(a, Outcome::Up));
    out.add(a, Outcome::Down, k * rec.count(a, Outcome::Down));
  }
  return out;
}

MeasurementRecord parse_record(std::string_view spec) {
  spec = trim(spec);
  if (spec.empty()) throw ParseError("empty measurement record spec");
  if (spec == "empty") return {};
  constexpr std::string_view kBalanced = "balanced6";
  if (spec.starts_with(kBalanced)) {
    std::string_view rest = spec.substr(kBalanced.size());
    if (rest.empty()) return MeasurementRecord::balanced6();
    if (rest.front() != '^') {
      throw ParseError("malformed alias '" + std::string(spec) +
                       "' (expected balanced6 or balanced6^k)");
    }
    return repeat(MeasurementRecord::balanced6(), parse_positive(rest.substr(1), spec));
  }

  MeasurementRecord rec;
  while (!spec.empty()) {
    const auto comma = spec.find(',');
    const std::string_view token = trim(spec.substr(0, comma));
    spec = comma == std::string_view::npos ? std::string_view{} : spec.substr(comma + 1);
    if (comma != std::string_view::npos && trim(spec).empty()) {
      throw ParseError("trailing comma in measurement record spec");
    }
    if (token.size() < 4) {
      throw ParseError("malformed record token '" + std::string(token) + "'");
    }
    Axis axis;
    switch (token.front()) {
      case 'X':
      case 'x':
        axis = Axis::X;
        break;
      case 'Y':
      case 'y':
        axis = Axis::Y;
        break;
      case 'Z':
      case 'z':
        axis = Axis::Z;
        break;
      default:
        throw ParseError("unknown axis in record token '" + std::string(token) + "'");
    }
    std::string_view rest = token.substr(1);
    Outcome outcome;
    if (rest.front() == '+') {
      outcome = Outcome::Up;
      rest.remove_prefix(1);
    } else if (rest.front() == '-') {
      outcome = Outcome::Down;
      rest.remove_prefix(1);
    } else if (rest.starts_with("−")) {
      outcome = Outcome::Down;
      rest.remove_prefix(std::string_view("−").size());
    } else {
      throw ParseError("expected '+' or '-' in record token '" + std::string(token) + "'");
    }
    if (rest.empty() || rest.front() != ':') {
      throw ParseError("expected ':' in record token '" + std::string(token) + "'");
    }
    rec.add(axis, outcome, parse_positive(rest.substr(1), token));
  }
  return rec;
}

std::string format_record(const MeasurementRecord& rec) {
  if (rec.empty()) return "empty";
  std::string out;
  constexpr std::array<char, 3> names{'X', 'Y', 'Z'};
  for (Axis a : kAxes) {
    for (Outcome o : {Outcome::Up, Outcome::Down}) {
      const int c = rec.count(a, o);
      if (c == 0) continue;
      if (!out.empty()) out += ',';
      out += names[static_cast<std::size_t>(a)];
      out += o == Outcome::Up ? '+' : '-';
      out += ':';
      out += std::to_string(c);
    }
  }
  return out;
}

PosteriorDensity::PosteriorDensity(PriorDensity prior)
    : prior_(std::move(prior)), evidence_{1.0, 0.0, 0, true} {}

PosteriorDensity::PosteriorDensity(PriorDensity prior, MeasurementRecord record,
                                   QuadratureResult evidence)
    : prior_(std::move(prior)), record_(record), evidence_(evidence) {}

double PosteriorDensity::density(const BlochPoint& pt,
                                 DensityConvention convention) const {
  const double base = density_at(prior_, pt, convention);
  if (record_.empty()) return base / evidence_.value;
  return base * likelihood(record_, pt) / evidence_.value;
}

PosteriorDensity posterior(const PosteriorDensity& current,
                           const MeasurementRecord& rec,
                           const QuadratureConfig& cfg) {
  if (rec.empty()) return current;
  QuadratureConfig ball = cfg;
  ball.octant_symmetry = current.record().sign_symmetric() && rec.sign_symmetric();
  ball.singularity_exponent = current.prior().singularity_exponent();
  const auto step = integrate_ball(
      [&](const BlochPoint& pt) {
        return current.density(pt) * likelihood(rec, pt);
      },
      current.support(), ball);
  if (!(step.value >= 1e-300)) {
    throw ZeroEvidence("evidence of record '" + format_record(rec) +
                       "' vanishes under prior '" + current.prior().name() + "'");
  }
  QuadratureResult evidence = step;
  evidence.value = step.value * current.evidence();
  evidence.error_estimate = step.error_estimate * current.evidence();
  evidence.converged = step.converged && current.evidence_quadrature().converged;
  return PosteriorDensity(current.prior(), current.record() + rec, evidence);
}

PosteriorDensity posterior(const PriorDensity& prior,
                           const MeasurementRecord& rec,
                           const QuadratureConfig& cfg) {
  return posterior(PosteriorDensity(prior), rec, cfg);
}

}  // namespace blochprior
