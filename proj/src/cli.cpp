#include "blochprior/cli.hpp"

#include <algorithm>
#include <charconv>
#include <iomanip>
#include <limits>
#include <optional>
#include <sstream>
#include <string_view>

#include <CLI11.hpp>
#include <json.hpp>

#include "blochprior/errors.hpp"
#include "blochprior/experiments.hpp"
#include "blochprior/infotheory.hpp"
#include "blochprior/measurement.hpp"
#include "blochprior/prior.hpp"

namespace blochprior::cli {
namespace {

using nlohmann::json;

enum class Format { Text, Csv, Json };
enum class Units { Nats, Bits };

// A malformed flag value; reported as a usage error naming the flag.
class UsageError : public Error {
 public:
  using Error::Error;
};

struct Options {
  std::string p;
  std::string q;
  std::string record;
  std::string radius;
  std::string variant = "paper";
  std::string format = "text";
  std::string units = "nats";
  std::string side = "second";
  std::string search_side = "first";
  std::string point;
  std::string spherical;
  std::string convention = "spherical";
  std::string constraint = "balanced";
  std::string table = "all";
  double rel_tol = QuadratureConfig{}.rel_tol;
  double abs_tol = QuadratureConfig{}.abs_tol;
  std::size_t max_evals = QuadratureConfig{}.max_evaluations;
  bool allow_subset = false;
  int k_max = 4;
  int max_total = 6;
  std::size_t cap = kDefaultCandidateCap;
  unsigned threads = 0;
};

std::string six(double v) {
  std::ostringstream s;
  s << std::setprecision(6) << v;
  return s.str();
}

std::string full(double v) {
  std::ostringstream s;
  s << std::setprecision(std::numeric_limits<double>::max_digits10) << v;
  return s.str();
}

json number(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

double parse_double(std::string_view text, std::string_view flag) {
  double v = 0.0;
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, v);
  if (ec != std::errc() || ptr != end) {
    throw UsageError(std::string(flag) + ": '" + std::string(text) + "' is not a number");
  }
  return v;
}

std::vector<double> parse_triple(const std::string& text, std::string_view flag) {
  std::vector<double> out;
  std::string_view rest = text;
  while (true) {
    const auto comma = rest.find(',');
    out.push_back(parse_double(rest.substr(0, comma), flag));
    if (comma == std::string_view::npos) break;
    rest.remove_prefix(comma + 1);
  }
  if (out.size() != 3) throw UsageError(std::string(flag) + ": expected three components");
  return out;
}

template <class Fn>
auto as_usage(std::string_view flag, Fn&& fn) {
  try {
    return fn();
  } catch (const ParseError& e) {
    throw UsageError(std::string(flag) + ": " + e.what());
  } catch (const DomainError& e) {
    throw UsageError(std::string(flag) + ": " + e.what());
  }
}

// "1", "0.999", "1-1e-10" (gap form, exact for tiny gaps).
std::optional<Support> parse_support(const std::string& text) {
  if (text.empty()) return std::nullopt;
  return as_usage("--R", [&] {
    if (text.size() > 2 && text.starts_with("1-")) {
      return Support::from_gap(parse_double(std::string_view(text).substr(2), "--R"));
    }
    const double r = parse_double(text, "--R");
    if (r == 1.0) return Support::full();
    return Support::from_radius(r);
  });
}

struct Context {
  Options opt;
  Format format = Format::Text;
  Units units = Units::Nats;
  QuadratureConfig cfg;
  std::optional<Support> support;
  bool converged = true;

  double scale(double nats) const {
    return units == Units::Bits ? nats_to_bits(nats) : nats;
  }
  std::string_view unit_name() const { return units == Units::Bits ? "bits" : "nats"; }

  PriorKind kind(const std::string& label, std::string_view flag) const {
    if (label.empty()) throw UsageError(std::string(flag) + " is required");
    return as_usage(flag, [&] { return parse_prior_kind(label); });
  }
  PriorDensity prior(const std::string& label, std::string_view flag) const {
    const PriorKind k = kind(label, flag);
    return make_prior(k, support ? support : std::optional<Support>(default_support(k)));
  }
  MeasurementRecord record(std::string_view fallback) const {
    const std::string text = opt.record.empty() ? std::string(fallback) : opt.record;
    return as_usage("--record", [&] { return parse_record(text); });
  }
  PosteriorSide side(const std::string& text) const {
    if (text == "first") return PosteriorSide::FirstIsPosterior;
    if (text == "second") return PosteriorSide::SecondIsPosterior;
    throw UsageError("--side: expected first or second, got '" + text + "'");
  }
  void absorb(const QuadratureResult& r) { converged = converged && r.converged; }
};

Context make_context(const Options& opt) {
  Context ctx;
  ctx.opt = opt;
  if (opt.format == "text") {
    ctx.format = Format::Text;
  } else if (opt.format == "csv") {
    ctx.format = Format::Csv;
  } else if (opt.format == "json") {
    ctx.format = Format::Json;
  } else {
    throw UsageError("--format: expected text, csv or json, got '" + opt.format + "'");
  }
  if (opt.units == "nats") {
    ctx.units = Units::Nats;
  } else if (opt.units == "bits") {
    ctx.units = Units::Bits;
  } else {
    throw UsageError("--units: expected nats or bits, got '" + opt.units + "'");
  }
  ctx.cfg.rel_tol = opt.rel_tol;
  ctx.cfg.abs_tol = opt.abs_tol;
  ctx.cfg.max_evaluations = opt.max_evals;
  as_usage("--rel-tol/--abs-tol/--max-evals", [&] {
    ctx.cfg.validate();
    return 0;
  });
  ctx.support = parse_support(opt.radius);
  return ctx;
}

std::string support_text(const Support& s) {
  if (s.is_full()) return "1";
  std::ostringstream o;
  o << "1-" << s.gap();
  return o.str();
}

// A single labelled quantity with its quadrature diagnostics.
void write_quantity(std::ostream& out, const Context& ctx, const std::string& label,
                    const QuadratureResult& r) {
  const double v = ctx.scale(r.value);
  switch (ctx.format) {
    case Format::Text:
      out << label << " = " << six(v) << ' ' << ctx.unit_name() << '\n';
      break;
    case Format::Csv:
      out << "quantity,value,units,error_estimate,evaluations,converged\n"
          << label << ',' << full(v) << ',' << ctx.unit_name() << ','
          << full(ctx.scale(r.error_estimate)) << ',' << r.evaluations << ','
          << (r.converged ? "true" : "false") << '\n';
      break;
    case Format::Json:
      out << json{{"quantity", label},
                  {"value", number(v)},
                  {"units", ctx.unit_name()},
                  {"error_estimate", number(ctx.scale(r.error_estimate))},
                  {"evaluations", r.evaluations},
                  {"converged", r.converged}}
                 .dump(2)
          << '\n';
      break;
  }
}

int cmd_priors(Context& ctx, std::ostream& out) {
  std::vector<PriorKind> kinds;
  if (!ctx.opt.p.empty()) {
    kinds.push_back(ctx.kind(ctx.opt.p, "--p"));
  } else {
    kinds = {PriorKind::SLD, PriorKind::KM, PriorKind::MC, PriorKind::LD,
             PriorKind::P0,  PriorKind::P1, PriorKind::P2};
  }
  std::vector<PriorDensity> priors;
  for (PriorKind k : kinds) priors.push_back(ctx.prior(std::string(prior_label(k)), "--p"));
  switch (ctx.format) {
    case Format::Text:
      out << std::left << std::setw(8) << "label" << std::setw(12) << "R"
          << std::setw(14) << "constant"
          << "exponent\n";
      for (const auto& p : priors) {
        out << std::setw(8) << p.name() << std::setw(12) << support_text(p.support())
            << std::setw(14) << six(p.normalization()) << six(p.singularity_exponent())
            << '\n';
      }
      out << std::right;
      break;
    case Format::Csv:
      out << "label,gap,constant,exponent\n";
      for (const auto& p : priors) {
        out << p.name() << ',' << full(p.support().gap()) << ','
            << full(p.normalization()) << ',' << full(p.singularity_exponent()) << '\n';
      }
      break;
    case Format::Json: {
      json doc = json::array();
      for (const auto& p : priors) {
        doc.push_back({{"label", p.name()},
                       {"gap", p.support().gap()},
                       {"constant", p.normalization()},
                       {"exponent", p.singularity_exponent()}});
      }
      out << doc.dump(2) << '\n';
      break;
    }
  }
  return kExitOk;
}

int cmd_eval(Context& ctx, std::ostream& out) {
  const PriorDensity p = ctx.prior(ctx.opt.p, "--p");
  const MeasurementRecord rec = ctx.record("empty");
  DensityConvention convention;
  if (ctx.opt.convention == "spherical") {
    convention = DensityConvention::Spherical;
  } else if (ctx.opt.convention == "cartesian") {
    convention = DensityConvention::Cartesian;
  } else {
    throw UsageError("--convention: expected spherical or cartesian");
  }
  if (ctx.opt.point.empty() == ctx.opt.spherical.empty()) {
    throw UsageError("--point or --spherical: give exactly one");
  }
  const BlochPoint pt = [&] {
    if (!ctx.opt.point.empty()) {
      const auto c = parse_triple(ctx.opt.point, "--point");
      return as_usage("--point", [&] { return BlochPoint::cartesian(c[0], c[1], c[2]); });
    }
    const auto s = parse_triple(ctx.opt.spherical, "--spherical");
    return as_usage("--spherical", [&] { return BlochPoint::spherical(s[0], s[1], s[2]); });
  }();
  const PosteriorDensity post = posterior(p, rec, ctx.cfg);
  ctx.absorb(post.evidence_quadrature());
  QuadratureResult r;
  r.value = post.density(pt, convention);
  r.converged = post.evidence_quadrature().converged;
  const std::string label = (rec.empty() ? p.name() : "P_" + p.name() + "[" +
                                                          format_record(rec) + "]") +
                            "(" + six(pt.x()) + "," + six(pt.y()) + "," + six(pt.z()) + ")";
  switch (ctx.format) {
    case Format::Text:
      out << label << " = " << six(r.value) << " (" << ctx.opt.convention << ")\n";
      break;
    case Format::Csv:
      out << "quantity,value,convention\n" << label << ',' << full(r.value) << ','
          << ctx.opt.convention << '\n';
      break;
    case Format::Json:
      out << json{{"quantity", label},
                  {"value", number(r.value)},
                  {"convention", ctx.opt.convention},
                  {"evidence", post.evidence()}}
                 .dump(2)
          << '\n';
      break;
  }
  return kExitOk;
}

int cmd_kl(Context& ctx, std::ostream& out) {
  const PriorDensity p = ctx.prior(ctx.opt.p, "--p");
  const PriorDensity q = ctx.prior(ctx.opt.q, "--q");
  const MeasurementRecord rec = ctx.record("empty");
  const SupportPolicy policy =
      ctx.opt.allow_subset ? SupportPolicy::AllowSubset : SupportPolicy::RequireEqual;
  QuadratureResult r;
  std::string label;
  if (rec.empty()) {
    r = relative_entropy(p, q, ctx.cfg, policy);
    label = "D(" + p.name() + " || " + q.name() + ")";
  } else {
    const std::string tag = "[" + format_record(rec) + "]";
    if (ctx.side(ctx.opt.side) == PosteriorSide::SecondIsPosterior) {
      r = relative_entropy(PosteriorDensity(p), posterior(q, rec, ctx.cfg), ctx.cfg, policy);
      label = "D(" + p.name() + " || P_" + q.name() + tag + ")";
    } else {
      r = relative_entropy(posterior(p, rec, ctx.cfg), PosteriorDensity(q), ctx.cfg, policy);
      label = "D(P_" + p.name() + tag + " || " + q.name() + ")";
    }
  }
  ctx.absorb(r);
  write_quantity(out, ctx, label, r);
  return kExitOk;
}

int cmd_compare(Context& ctx, std::ostream& out) {
  const PriorDensity p = ctx.prior(ctx.opt.p, "--p");
  const PriorDensity q = ctx.prior(ctx.opt.q, "--q");
  const MeasurementRecord rec = ctx.record("balanced6");
  Variant variant;
  if (ctx.opt.variant == "paper") {
    variant = Variant::Paper;
  } else if (ctx.opt.variant == "clarke") {
    variant = Variant::ClarkeStrict;
  } else {
    throw UsageError("--variant: expected paper or clarke, got '" + ctx.opt.variant + "'");
  }
  const ComparisonReport rep = noninformativity_verdict(p, q, rec, variant, ctx.cfg);
  ctx.converged = ctx.converged && rep.converged;

  const std::string n_pq = "D(" + rep.p_name + " || " + rep.q_name + ")";
  const std::string n_qp = "D(" + rep.q_name + " || " + rep.p_name + ")";
  const std::string n_p_post_q = variant == Variant::Paper
                                     ? "D(" + rep.p_name + " || P_" + rep.q_name + ")"
                                     : "D(P_" + rep.q_name + " || " + rep.p_name + ")";
  const std::string n_q_post_p = variant == Variant::Paper
                                     ? "D(" + rep.q_name + " || P_" + rep.p_name + ")"
                                     : "D(P_" + rep.p_name + " || " + rep.q_name + ")";
  const std::pair<std::string, double> stats[] = {
      {n_pq, rep.d_pq},
      {n_qp, rep.d_qp},
      {n_p_post_q, rep.d_p_post_q},
      {n_q_post_p, rep.d_q_post_p},
  };
  switch (ctx.format) {
    case Format::Text:
      out << "record: " << format_record(rec) << "\nvariant: " << variant_name(variant)
          << '\n';
      for (const auto& [name, v] : stats) {
        out << std::left << std::setw(20) << name << std::right << ' ' << six(ctx.scale(v))
            << ' ' << ctx.unit_name() << '\n';
      }
      out << "verdict: " << verdict_name(rep.verdict) << '\n';
      break;
    case Format::Csv:
      out << "statistic,value,units\n";
      for (const auto& [name, v] : stats) {
        out << '"' << name << "\"," << full(ctx.scale(v)) << ',' << ctx.unit_name() << '\n';
      }
      out << "verdict," << verdict_name(rep.verdict) << ",\n";
      break;
    case Format::Json:
      out << json{{"pair", {rep.p_name, rep.q_name}},
                  {"record", format_record(rec)},
                  {"variant", variant_name(variant)},
                  {"units", ctx.unit_name()},
                  {"d_pq", number(ctx.scale(rep.d_pq))},
                  {"d_qp", number(ctx.scale(rep.d_qp))},
                  {"d_p_post_q", number(ctx.scale(rep.d_p_post_q))},
                  {"d_q_post_p", number(ctx.scale(rep.d_q_post_p))},
                  {"verdict", verdict_name(rep.verdict)},
                  {"tolerances", {{"rel", rep.rel_tol}, {"abs", rep.abs_tol}}},
                  {"evaluations", rep.evaluations},
                  {"converged", rep.converged}}
                 .dump(2)
          << '\n';
      break;
  }
  return kExitOk;
}

int cmd_gain(Context& ctx, std::ostream& out) {
  const PriorDensity p = ctx.prior(ctx.opt.p, "--p");
  const MeasurementRecord rec = ctx.record("balanced6");
  const QuadratureResult r = information_gain(p, rec, ctx.cfg);
  ctx.absorb(r);
  write_quantity(out, ctx, "D(P_" + p.name() + "[" + format_record(rec) + "] || " + p.name() + ")",
                 r);
  return kExitOk;
}

int cmd_sweep(Context& ctx, std::ostream& out) {
  const PriorDensity p = ctx.prior(ctx.opt.p, "--p");
  const PriorDensity q = ctx.prior(ctx.opt.q, "--q");
  const MeasurementRecord base = ctx.record("balanced6");
  if (ctx.opt.k_max < 1) throw UsageError("--k-max: must be >= 1");
  const SweepResult s = as_usage("--record", [&] {
    return repeat_sweep(p, q, base, ctx.opt.k_max, ctx.cfg);
  });
  ctx.converged = ctx.converged && s.converged;
  switch (ctx.format) {
    case Format::Text:
      out << "D(" << p.name() << " || P_" << q.name() << "[k * " << format_record(base)
          << "])\n";
      for (std::size_t i = 0; i < s.ks.size(); ++i) {
        out << "k=" << s.ks[i] << "  " << six(ctx.scale(s.statistics[i])) << ' '
            << ctx.unit_name() << '\n';
      }
      out << "argmin k=" << s.argmin_k << '\n';
      break;
    case Format::Csv:
      out << "k,statistic,units\n";
      for (std::size_t i = 0; i < s.ks.size(); ++i) {
        out << s.ks[i] << ',' << full(ctx.scale(s.statistics[i])) << ',' << ctx.unit_name()
            << '\n';
      }
      break;
    case Format::Json: {
      json stats = json::array();
      for (double v : s.statistics) stats.push_back(number(ctx.scale(v)));
      out << json{{"pair", {p.name(), q.name()}},
                  {"base", format_record(base)},
                  {"ks", s.ks},
                  {"statistics", stats},
                  {"units", ctx.unit_name()},
                  {"argmin_k", s.argmin_k},
                  {"converged", s.converged}}
                 .dump(2)
          << '\n';
      break;
    }
  }
  return kExitOk;
}

int cmd_search(Context& ctx, std::ostream& out) {
  const PriorDensity p = ctx.prior(ctx.opt.p, "--p");
  const PriorDensity q = ctx.prior(ctx.opt.q, "--q");
  SearchConstraint constraint;
  if (ctx.opt.constraint == "any") {
    constraint.kind = SearchConstraintKind::Any;
  } else if (ctx.opt.constraint == "balanced") {
    constraint.kind = SearchConstraintKind::BalancedAxes;
  } else if (ctx.opt.constraint == "repeated") {
    constraint.kind = SearchConstraintKind::RepeatedBase;
    constraint.base = ctx.record("balanced6");
  } else {
    throw UsageError("--constraint: expected any, balanced or repeated");
  }
  const PosteriorSide side = ctx.side(ctx.opt.search_side);
  as_usage("--max-total", [&] {
    return enumerate_records(ctx.opt.max_total, constraint).size();
  });
  const SearchResult s =
      search_min_record(p, q, ctx.opt.max_total, constraint, side, ctx.cfg, ctx.opt.cap);
  ctx.converged = ctx.converged && s.converged;
  const std::string rec = format_record(s.record);
  switch (ctx.format) {
    case Format::Text:
      out << "minimizer: " << rec << "\nvalue: " << six(ctx.scale(s.value)) << ' '
          << ctx.unit_name() << "\ncandidates: " << s.candidates << '\n';
      break;
    case Format::Csv:
      out << "record,value,units,candidates\n\"" << rec << "\"," << full(ctx.scale(s.value))
          << ',' << ctx.unit_name() << ',' << s.candidates << '\n';
      break;
    case Format::Json:
      out << json{{"pair", {p.name(), q.name()}},
                  {"record", rec},
                  {"value", number(ctx.scale(s.value))},
                  {"units", ctx.unit_name()},
                  {"candidates", s.candidates},
                  {"converged", s.converged}}
                 .dump(2)
          << '\n';
      break;
  }
  return kExitOk;
}

int cmd_reproduce(Context& ctx, std::ostream& out) {
  const ReproductionTable table = as_usage("--table", [&] {
    return parse_table(ctx.opt.table);
  });
  const auto rows = reproduce(table, ctx.cfg, ctx.opt.threads);
  switch (ctx.format) {
    case Format::Text: {
      std::size_t passed = 0;
      out << std::left << std::setw(30) << "quantity_id" << std::setw(14) << "paper"
          << std::setw(14) << "computed" << std::setw(12) << "rel_diff" << std::setw(16)
          << "class"
          << "pass\n";
      for (const auto& r : rows) {
        passed += r.pass ? 1 : 0;
        out << std::setw(30) << r.quantity_id << std::setw(14) << six(r.paper_value)
            << std::setw(14) << six(r.computed_value) << std::setw(12) << six(r.rel_diff)
            << std::setw(16) << tolerance_class_name(r.tolerance_class)
            << (r.pass ? "PASS" : "FAIL") << '\n';
      }
      out << std::right << passed << '/' << rows.size() << " rows within tolerance\n";
      break;
    }
    case Format::Csv:
      write_csv(out, rows);
      break;
    case Format::Json:
      write_json(out, rows);
      break;
  }
  return kExitOk;
}

void add_numerics(CLI::App* cmd, Options& opt) {
  cmd->add_option("--rel-tol", opt.rel_tol, "Relative tolerance")->capture_default_str();
  cmd->add_option("--abs-tol", opt.abs_tol, "Absolute tolerance")->capture_default_str();
  cmd->add_option("--max-evals", opt.max_evals, "Evaluation cap per one-dimensional pass")
      ->capture_default_str();
  cmd->add_option("--format", opt.format, "text, csv or json")->capture_default_str();
  cmd->add_option("--units", opt.units, "nats or bits")->capture_default_str();
}

void add_support(CLI::App* cmd, Options& opt) {
  cmd->add_option("--R", opt.radius,
                  "Truncation radius, e.g. 1 or 1-1e-10 (default: 1 for sld/km/mc/ld, "
                  "1-1e-10 for p0/p1/p2)");
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options opt;
  CLI::App app{"Priors on the Bloch ball from monotone metrics, and their relative entropies"};
  app.name("blochprior");
  app.require_subcommand(1);

  const char* labels = "Prior label: sld, km, mc, ld, p0, p1, p2";
  const char* record_help = "Record, e.g. X+:1,X-:1 or balanced6, balanced6^k, empty";

  auto* priors = app.add_subcommand("priors", "List built-in priors and their constants");
  priors->add_option("--p", opt.p, labels);
  add_support(priors, opt);
  add_numerics(priors, opt);

  auto* eval = app.add_subcommand("eval", "Evaluate a prior or posterior density at a point");
  eval->add_option("--p", opt.p, labels)->required();
  eval->add_option("--record", opt.record, record_help);
  eval->add_option("--point", opt.point, "Cartesian point x,y,z");
  eval->add_option("--spherical", opt.spherical, "Spherical point r,theta,phi");
  eval->add_option("--convention", opt.convention, "spherical or cartesian")
      ->capture_default_str();
  add_support(eval, opt);
  add_numerics(eval, opt);

  auto* kl = app.add_subcommand("kl", "Relative entropy D(p || q)");
  kl->add_option("--p", opt.p, labels)->required();
  kl->add_option("--q", opt.q, labels)->required();
  kl->add_option("--record", opt.record, record_help + std::string("; replaces one side by its posterior"));
  kl->add_option("--side", opt.side, "Posterior side with --record: first or second")
      ->capture_default_str();
  kl->add_flag("--allow-subset", opt.allow_subset,
               "Accept a first support contained in the second");
  add_support(kl, opt);
  add_numerics(kl, opt);

  auto* compare = app.add_subcommand("compare", "Paired noninformativity comparison");
  compare->add_option("--p", opt.p, labels)->required();
  compare->add_option("--q", opt.q, labels)->required();
  compare->add_option("--record", opt.record, record_help + std::string(" (default balanced6)"));
  compare->add_option("--variant", opt.variant, "paper or clarke")->capture_default_str();
  add_support(compare, opt);
  add_numerics(compare, opt);

  auto* gain = app.add_subcommand("gain", "Information gain D(Posterior(p) || p)");
  gain->add_option("--p", opt.p, labels)->required();
  gain->add_option("--record", opt.record, record_help + std::string(" (default balanced6)"));
  add_support(gain, opt);
  add_numerics(gain, opt);

  auto* sweep = app.add_subcommand("sweep", "D(p || Posterior(q, k * record)) for k = 1..k-max");
  sweep->add_option("--p", opt.p, labels)->required();
  sweep->add_option("--q", opt.q, labels)->required();
  sweep->add_option("--record", opt.record, record_help + std::string(" (default balanced6)"));
  sweep->add_option("--k-max", opt.k_max, "Largest repetition")->capture_default_str();
  add_support(sweep, opt);
  add_numerics(sweep, opt);

  auto* search = app.add_subcommand("search", "Record minimizing the posterior relative entropy");
  search->add_option("--p", opt.p, labels)->required();
  search->add_option("--q", opt.q, labels)->required();
  search->add_option("--max-total", opt.max_total, "Largest number of measurements (<= 30)")
      ->capture_default_str();
  search->add_option("--constraint", opt.constraint, "any, balanced or repeated")
      ->capture_default_str();
  search->add_option("--record", opt.record, "Base record for --constraint repeated");
  search->add_option("--side", opt.search_side,
                     "first: D(Posterior(p) || q); second: D(p || Posterior(q))")
      ->capture_default_str();
  search->add_option("--cap", opt.cap, "Largest number of candidate records")
      ->capture_default_str();
  add_support(search, opt);
  add_numerics(search, opt);

  auto* repro = app.add_subcommand("reproduce", "Reproduction table with pass/fail per row");
  repro->add_option("--table", opt.table, "all, s21, s22, s23 or s3")->capture_default_str();
  repro->add_option("--threads", opt.threads, "Worker threads (0: all cores)")
      ->capture_default_str();
  add_numerics(repro, opt);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }

  try {
    Context ctx = make_context(opt);
    int status = kExitOk;
    if (priors->parsed()) status = cmd_priors(ctx, out);
    if (eval->parsed()) status = cmd_eval(ctx, out);
    if (kl->parsed()) status = cmd_kl(ctx, out);
    if (compare->parsed()) status = cmd_compare(ctx, out);
    if (gain->parsed()) status = cmd_gain(ctx, out);
    if (sweep->parsed()) status = cmd_sweep(ctx, out);
    if (search->parsed()) status = cmd_search(ctx, out);
    if (repro->parsed()) status = cmd_reproduce(ctx, out);
    if (status == kExitOk && !ctx.converged) {
      err << "warning: quadrature did not reach the requested tolerance\n";
      return kExitComputation;
    }
    return status;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitComputation;
  }
}

}  // namespace blochprior::cli
