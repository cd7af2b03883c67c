#include "blochprior/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <functional>
#include <iomanip>
#include <limits>
#include <numbers>
#include <thread>

#include <json.hpp>

#include "blochprior/errors.hpp"

namespace blochprior {
namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTieEpsilon = 1e-12;

double statistic(const PriorDensity& p, const PriorDensity& q,
                 const MeasurementRecord& rec, PosteriorSide side,
                 const QuadratureConfig& cfg, bool& converged) {
  if (rec.empty()) {
    const auto r = relative_entropy(p, q, cfg);
    converged = converged && r.converged;
    return r.value;
  }
  const auto r = relative_entropy_vs_posterior(p, q, rec, side, cfg);
  converged = converged && r.converged;
  return r.value;
}

// All count vectors (c_0..c_5) with sum == total, lexicographic.
void compositions(int total, std::size_t slot, std::array<int, 6>& counts,
                  std::vector<std::array<int, 6>>& out) {
  if (slot == 5) {
    counts[5] = total;
    out.push_back(counts);
    return;
  }
  for (int c = total; c >= 0; --c) {
    counts[slot] = c;
    compositions(total - c, slot + 1, counts, out);
  }
}

MeasurementRecord from_counts(const std::array<int, 6>& counts) {
  MeasurementRecord rec;
  const Axis axes[] = {Axis::X, Axis::Y, Axis::Z};
  for (std::size_t i = 0; i < 6; ++i) {
    rec.add(axes[i / 2], i % 2 == 0 ? Outcome::Up : Outcome::Down, counts[i]);
  }
  return rec;
}

struct RowSpec {
  std::string id;
  ReproductionTable section;
  double paper;
  ToleranceClass cls;
  std::function<double()> compute;
};

std::vector<RowSpec> row_specs(const QuadratureConfig& cfg) {
  QuadratureConfig exact = cfg;
  exact.rel_tol = std::min(cfg.rel_tol, 1e-11);
  exact.abs_tol = std::min(cfg.abs_tol, 1e-14);

  using K = PriorKind;
  using T = ToleranceClass;
  using S = ReproductionTable;
  const auto b6 = MeasurementRecord::balanced6();
  const auto z_up = MeasurementRecord::single(Axis::Z, Outcome::Up);

  auto prior = [](K k) { return make_prior(k); };
  auto label = [](K k) { return std::string(prior_label(k)); };
  auto constant = [](K k) {
    return [k] { return make_prior(k).normalization(); };
  };
  auto kl = [cfg](K p, K q) {
    return [=] { return relative_entropy(make_prior(p), make_prior(q), cfg).value; };
  };
  auto kl_post = [cfg](K p, K q, MeasurementRecord rec, PosteriorSide side) {
    return [=] {
      return relative_entropy_vs_posterior(make_prior(p), make_prior(q), rec, side,
                                           cfg)
          .value;
    };
  };
  auto factor = [](K k, MeasurementRecord rec, QuadratureConfig c) {
    return [=] { return posterior(make_prior(k), rec, c).normalization_factor(); };
  };
  auto gain = [](K k, MeasurementRecord rec, QuadratureConfig c) {
    return [=] { return information_gain(make_prior(k), rec, c).value; };
  };
  auto var = [](K k, QuadratureConfig c) {
    return [=] { return variance_z(make_prior(k), c).value; };
  };
  auto cross = [prior](K p, K q) {
    return [=] { return crossover_radius(prior(p), prior(q)); };
  };
  auto ratio = [](K p, K q) {
    return [=] {
      const auto a = make_prior(p);
      return density_ratio_at(a, make_prior(q), a.support().outer());
    };
  };
  auto marginal = [](K k, double x, double y, QuadratureConfig c) {
    return [=] { return bivariate_marginal(make_prior(k), x, y, c).value; };
  };
  auto conditional = [](K k, double x, QuadratureConfig c) {
    return [=] { return conditional_x(make_prior(k), x, c).value; };
  };

  std::vector<RowSpec> rows;
  auto add = [&](std::string id, S s, double paper, T cls, std::function<double()> f) {
    rows.push_back({std::move(id), s, paper, cls, std::move(f)});
  };
  auto d_id = [&](K p, K q) { return "d." + label(p) + "." + label(q); };
  auto second_id = [&](K p, K q, std::string_view rec) {
    return "d." + label(p) + ".P_" + label(q) + "." + std::string(rec);
  };
  auto first_id = [&](K p, K q, std::string_view rec) {
    return "d.P_" + label(p) + "." + label(q) + "." + std::string(rec);
  };
  const auto second = PosteriorSide::SecondIsPosterior;
  const auto first = PosteriorSide::FirstIsPosterior;

  // s21: SLD and Kubo-Mori.
  add("const.sld", S::S21, 1.0 / (kPi * kPi), T::ExactRational, constant(K::SLD));
  add("const.km", S::S21, 1.0 / (4.0 * kPi * kPi), T::ExactRational, constant(K::KM));
  add(d_id(K::SLD, K::KM), S::S21, 0.0891523, T::SixDigit, kl(K::SLD, K::KM));
  add(d_id(K::KM, K::SLD), S::S21, 0.0975976, T::SixDigit, kl(K::KM, K::SLD));
  add("z.sld.balanced6", S::S21, 64.0 * 192.0 / 71.0, T::ExactRational,
      factor(K::SLD, b6, exact));
  add("z.km.balanced6", S::S21, 64.0 * 19600.0 / 6047.0, T::ExactRational,
      factor(K::KM, b6, exact));
  add(second_id(K::SLD, K::KM, "balanced6"), S::S21, 0.0720681, T::SixDigit,
      kl_post(K::SLD, K::KM, b6, second));
  add(second_id(K::KM, K::SLD, "balanced6"), S::S21, 0.457259, T::SixDigit,
      kl_post(K::KM, K::SLD, b6, second));
  add(second_id(K::SLD, K::KM, "balanced6^2"), S::S21, 0.334699, T::SixDigit,
      kl_post(K::SLD, K::KM, repeat(b6, 2), second));
  add(first_id(K::KM, K::SLD, "balanced6"), S::S21, 0.0603743, T::SixDigit,
      kl_post(K::KM, K::SLD, b6, first));
  add(first_id(K::SLD, K::KM, "balanced6"), S::S21, 0.399442, T::SixDigit,
      kl_post(K::SLD, K::KM, b6, first));
  add("gain.km.balanced6", S::S21, 0.151575, T::SixDigit, gain(K::KM, b6, cfg));
  add("gain.sld.balanced6", S::S21, 4693.0 / 1420.0 + std::log(3.0 / 71.0),
      T::ExactRational, gain(K::SLD, b6, exact));
  add("gain.km.Z+", S::S21, 0.157404, T::SixDigit, gain(K::KM, z_up, cfg));
  add("gain.sld.Z+", S::S21, 5.0 / 6.0 - std::numbers::ln2, T::ExactRational,
      gain(K::SLD, z_up, exact));
  add("cross.km.sld", S::S21, 0.957504, T::FourDigit, cross(K::KM, K::SLD));
  add("units.bits_per_nat", S::S21, 1.4227, T::SixDigit,
      [] { return nats_to_bits(1.0); });

  // s22: Morozova-Chentsov and Larson-Dukes.
  add("const.mc", S::S22, 0.00513299, T::SixDigit, constant(K::MC));
  add("const.ld", S::S22, 3.0 / (4.0 * kPi), T::ExactRational, constant(K::LD));
  add(d_id(K::KM, K::MC), S::S22, 0.112421, T::SixDigit, kl(K::KM, K::MC));
  add(d_id(K::MC, K::KM), S::S22, 0.117982, T::SixDigit, kl(K::MC, K::KM));
  add(second_id(K::KM, K::MC, "balanced6"), S::S22, 0.106655, T::SixDigit,
      kl_post(K::KM, K::MC, b6, second));
  add(second_id(K::MC, K::KM, "balanced6"), S::S22, 0.482023, T::SixDigit,
      kl_post(K::MC, K::KM, b6, second));
  add(first_id(K::MC, K::KM, "balanced6"), S::S22, 0.0910048, T::SixDigit,
      kl_post(K::MC, K::KM, b6, first));
  add(first_id(K::KM, K::MC, "balanced6"), S::S22, 0.452794, T::SixDigit,
      kl_post(K::KM, K::MC, b6, first));
  add("cross.mc.km", S::S22, 0.9846, T::FourDigit, cross(K::MC, K::KM));
  add(d_id(K::SLD, K::MC), S::S22, 0.388323, T::SixDigit, kl(K::SLD, K::MC));
  add(d_id(K::MC, K::SLD), S::S22, 0.445981, T::SixDigit, kl(K::MC, K::SLD));
  add(second_id(K::SLD, K::MC, "balanced6"), S::S22, 0.186964, T::SixDigit,
      kl_post(K::SLD, K::MC, b6, second));
  add(second_id(K::MC, K::SLD, "balanced6"), S::S22, 0.991175, T::SixDigit,
      kl_post(K::MC, K::SLD, b6, second));
  add("cross.mc.sld", S::S22, 0.973932, T::FourDigit, cross(K::MC, K::SLD));
  add(d_id(K::LD, K::MC), S::S22, 1.07895, T::SixDigit, kl(K::LD, K::MC));
  add(d_id(K::MC, K::LD), S::S22, 1.98719, T::SixDigit, kl(K::MC, K::LD));
  add(second_id(K::LD, K::MC, "balanced6"), S::S22, 0.559829, T::SixDigit,
      kl_post(K::LD, K::MC, b6, second));
  add(second_id(K::MC, K::LD, "balanced6"), S::S22, 2.79851, T::SixDigit,
      kl_post(K::MC, K::LD, b6, second));
  add("cross.mc.ld", S::S22, 0.948724, T::FourDigit, cross(K::MC, K::LD));
  const double sweep_paper[] = {0.310686, 0.307632, 0.529577};
  for (int k = 2; k <= 4; ++k) {
    add(second_id(K::LD, K::MC, "balanced6^" + std::to_string(k)), S::S22,
        sweep_paper[k - 2], T::SixDigit, kl_post(K::LD, K::MC, repeat(b6, k), second));
  }
  add("var_z.mc", S::S22, 0.301762, T::SixDigit, var(K::MC, cfg));
  add("var_z.km", S::S22, 5.0 / 18.0, T::ExactRational, var(K::KM, exact));
  add("var_z.sld", S::S22, 0.25, T::ExactRational, var(K::SLD, exact));
  add("var_z.ld", S::S22, 0.2, T::ExactRational, var(K::LD, exact));

  // s23: truncated Petz family at R = 1 - 1e-10.
  add("const.p0", S::S23, 1.12542e-6, T::SixDigit, constant(K::P0));
  add("const.p1", S::S23, 5.69121e-4, T::SixDigit, constant(K::P1));
  add("const.p2", S::S23, 5.13611e-3, T::SixDigit, constant(K::P2));
  add(d_id(K::P0, K::P1), S::S23, 0.867442, T::SixDigit, kl(K::P0, K::P1));
  add(d_id(K::P0, K::P2), S::S23, 5.76086, T::SixDigit, kl(K::P0, K::P2));
  add(d_id(K::P1, K::P0), S::S23, 1.654, T::FourDigit, kl(K::P1, K::P0));
  add(d_id(K::P1, K::P2), S::S23, 2.37198, T::SixDigit, kl(K::P1, K::P2));
  add(d_id(K::P2, K::P0), S::S23, 7.06816, T::SixDigit, kl(K::P2, K::P0));
  add(d_id(K::P2, K::P1), S::S23, 1.52109, T::SixDigit, kl(K::P2, K::P1));
  add("z.p0.balanced6", S::S23, 335.987, T::SixDigit, factor(K::P0, b6, cfg));
  add("z.p1.balanced6", S::S23, 327.546, T::SixDigit, factor(K::P1, b6, cfg));
  add("z.p2.balanced6", S::S23, 249.378, T::SixDigit, factor(K::P2, b6, cfg));
  const std::pair<std::pair<K, K>, double> truncated[] = {
      {{K::P0, K::P1}, 1.07576}, {{K::P0, K::P2}, 6.24184},
      {{K::P1, K::P0}, 1.53564}, {{K::P1, K::P2}, 2.55172},
      {{K::P2, K::P0}, 6.94979}, {{K::P2, K::P1}, 1.42817},
  };
  for (const auto& [pair, paper] : truncated) {
    add(second_id(pair.first, pair.second, "balanced6"), S::S23, paper, T::SixDigit,
        kl_post(pair.first, pair.second, b6, second));
  }
  add("ratio.p0.p1", S::S23, 5.89521, T::SixDigit, ratio(K::P0, K::P1));
  add("ratio.p0.p2", S::S23, 1947.41, T::SixDigit, ratio(K::P0, K::P2));
  add("ratio.p1.p2", S::S23, 330.338, T::SixDigit, ratio(K::P1, K::P2));

  // s3: marginals.
  add("marginal.sld.0_0", S::S3, 1.0 / kPi, T::ExactRational,
      marginal(K::SLD, 0.0, 0.0, exact));
  add("marginal.sld.0.3_0.4", S::S3, 1.0 / kPi, T::ExactRational,
      marginal(K::SLD, 0.3, 0.4, exact));
  add("marginal.p0.0_0", S::S3, 1.0 / (2.0 * kPi), T::SixDigit,
      marginal(K::P0, 0.0, 0.0, cfg));
  add("marginal.p0.0.3_0.4", S::S3, 1.0 / (2.0 * kPi * std::sqrt(0.75)), T::SixDigit,
      marginal(K::P0, 0.3, 0.4, cfg));
  add("conditional.p0.0", S::S3, 1.0 / kPi, T::SixDigit, conditional(K::P0, 0.0, cfg));
  add("conditional.p0.0.5", S::S3, 1.0 / (kPi * std::sqrt(0.75)), T::SixDigit,
      conditional(K::P0, 0.5, cfg));
  return rows;
}

}  // namespace

std::string_view tolerance_class_name(ToleranceClass c) {
  switch (c) {
    case ToleranceClass::ExactRational:
      return "exact-rational";
    case ToleranceClass::SixDigit:
      return "six-digit";
    case ToleranceClass::FourDigit:
      break;
  }
  return "four-digit";
}

double tolerance_of(ToleranceClass c) {
  switch (c) {
    case ToleranceClass::ExactRational:
      return 1e-9;
    case ToleranceClass::SixDigit:
      return 1e-3;
    case ToleranceClass::FourDigit:
      break;
  }
  return 5e-3;
}

ReproductionRow make_row(std::string quantity_id, double paper_value,
                         double computed_value, ToleranceClass c) {
  ReproductionRow row;
  row.quantity_id = std::move(quantity_id);
  row.paper_value = paper_value;
  row.computed_value = computed_value;
  row.tolerance_class = c;
  row.abs_diff = std::abs(computed_value - paper_value);
  row.rel_diff = row.abs_diff / std::abs(paper_value);
  row.pass = std::isfinite(computed_value) && row.rel_diff <= tolerance_of(c);
  return row;
}

SweepResult repeat_sweep(const PriorDensity& p, const PriorDensity& q,
                         const MeasurementRecord& base, int k_max,
                         const QuadratureConfig& cfg) {
  if (k_max < 1) throw DomainError("repeat_sweep: k_max must be >= 1");
  if (base.empty()) throw DomainError("repeat_sweep: empty base record");
  SweepResult result;
  double best = std::numeric_limits<double>::infinity();
  for (int k = 1; k <= k_max; ++k) {
    const double d = statistic(p, q, repeat(base, k), PosteriorSide::SecondIsPosterior,
                               cfg, result.converged);
    result.ks.push_back(k);
    result.statistics.push_back(d);
    if (d < best - kTieEpsilon) {
      best = d;
      result.argmin_k = k;
    }
  }
  return result;
}

std::vector<MeasurementRecord> enumerate_records(int max_total,
                                                 const SearchConstraint& constraint) {
  if (max_total < 0 || max_total > kSearchMaxTotal) {
    throw DomainError("max_total must lie in [0, " + std::to_string(kSearchMaxTotal) +
                      "]");
  }
  std::vector<MeasurementRecord> out;
  if (constraint.kind == SearchConstraintKind::RepeatedBase) {
    const int step = constraint.base.total();
    if (step == 0) throw DomainError("RepeatedBase needs a nonempty base record");
    for (int k = 1; k * step <= max_total; ++k) out.push_back(repeat(constraint.base, k));
    return out;
  }
  for (int total = 0; total <= max_total; ++total) {
    std::vector<std::array<int, 6>> vectors;
    std::array<int, 6> counts{};
    compositions(total, 0, counts, vectors);
    std::sort(vectors.begin(), vectors.end());
    for (const auto& v : vectors) {
      if (constraint.kind == SearchConstraintKind::BalancedAxes &&
          (v[0] != v[1] || v[2] != v[3] || v[4] != v[5])) {
        continue;
      }
      out.push_back(from_counts(v));
    }
  }
  return out;
}

SearchResult search_min_record(const PriorDensity& p, const PriorDensity& q,
                               int max_total, const SearchConstraint& constraint,
                               PosteriorSide side, const QuadratureConfig& cfg,
                               std::size_t candidate_cap) {
  const auto candidates = enumerate_records(max_total, constraint);
  if (candidates.size() > candidate_cap) {
    throw BudgetExceeded("search would evaluate " + std::to_string(candidates.size()) +
                         " records; cap is " + std::to_string(candidate_cap));
  }
  if (candidates.empty()) throw DomainError("no record satisfies the constraint");
  SearchResult result;
  result.candidates = candidates.size();
  result.value = std::numeric_limits<double>::infinity();
  for (const auto& rec : candidates) {
    const double d = statistic(p, q, rec, side, cfg, result.converged);
    if (d < result.value - kTieEpsilon) {
      result.value = d;
      result.record = rec;
    }
  }
  return result;
}

std::string_view table_name(ReproductionTable t) {
  switch (t) {
    case ReproductionTable::All:
      return "all";
    case ReproductionTable::S21:
      return "s21";
    case ReproductionTable::S22:
      return "s22";
    case ReproductionTable::S23:
      return "s23";
    case ReproductionTable::S3:
      break;
  }
  return "s3";
}

ReproductionTable parse_table(std::string_view text) {
  for (auto t : {ReproductionTable::All, ReproductionTable::S21, ReproductionTable::S22,
                 ReproductionTable::S23, ReproductionTable::S3}) {
    if (text == table_name(t)) return t;
  }
  throw ParseError("unknown table '" + std::string(text) +
                   "' (expected all, s21, s22, s23 or s3)");
}

std::vector<ReproductionRow> reproduce(ReproductionTable table,
                                       const QuadratureConfig& cfg, unsigned threads) {
  cfg.validate();
  std::vector<RowSpec> specs;
  for (auto& spec : row_specs(cfg)) {
    if (table == ReproductionTable::All || spec.section == table) {
      specs.push_back(std::move(spec));
    }
  }
  std::vector<ReproductionRow> rows(specs.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < specs.size(); i = next++) {
      const RowSpec& spec = specs[i];
      try {
        rows[i] = make_row(spec.id, spec.paper, spec.compute(), spec.cls);
      } catch (const std::exception& e) {
        rows[i] = make_row(spec.id, spec.paper,
                           std::numeric_limits<double>::quiet_NaN(), spec.cls);
        rows[i].error = e.what();
      }
    }
  };
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = std::min<unsigned>(threads, static_cast<unsigned>(specs.size()));
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
  }
  return rows;
}

void write_csv(std::ostream& out, const std::vector<ReproductionRow>& rows) {
  const auto flags = out.flags();
  const auto precision = out.precision();
  out << "quantity_id,paper_value,computed,abs_diff,rel_diff,class,pass\n";
  out << std::setprecision(std::numeric_limits<double>::max_digits10);
  for (const auto& r : rows) {
    out << r.quantity_id << ',' << r.paper_value << ',' << r.computed_value << ','
        << r.abs_diff << ',' << r.rel_diff << ',' << tolerance_class_name(r.tolerance_class)
        << ',' << (r.pass ? "true" : "false") << '\n';
  }
  out.flags(flags);
  out.precision(precision);
}

void write_json(std::ostream& out, const std::vector<ReproductionRow>& rows) {
  auto number = [](double v) {
    return std::isfinite(v) ? nlohmann::json(v) : nlohmann::json(nullptr);
  };
  nlohmann::json doc = nlohmann::json::array();
  for (const auto& r : rows) {
    nlohmann::json row = {
        {"quantity_id", r.quantity_id},
        {"paper_value", r.paper_value},
        {"computed_value", number(r.computed_value)},
        {"abs_diff", number(r.abs_diff)},
        {"rel_diff", number(r.rel_diff)},
        {"tolerance_class", tolerance_class_name(r.tolerance_class)},
        {"pass", r.pass},
    };
    if (!r.error.empty()) row["error"] = r.error;
    doc.push_back(std::move(row));
  }
  out << doc.dump(2) << '\n';
}

}  // namespace blochprior
