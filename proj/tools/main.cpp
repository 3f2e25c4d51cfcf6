#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "chebconvex/convexity.hpp"
#include "chebconvex/dinghas.hpp"
#include "chebconvex/divdiff.hpp"
#include "chebconvex/errors.hpp"
#include "chebconvex/exact.hpp"
#include "chebconvex/json_io.hpp"
#include "chebconvex/rational.hpp"
#include "chebconvex/systems.hpp"
#include "chebconvex/version.hpp"

namespace cx = chebconvex;
using ordered_json = nlohmann::ordered_json;

namespace {

// ---------------------------------------------------------------------------
// Argument parsing helpers

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream in(text);
  while (std::getline(in, item, ',')) out.push_back(item);
  return out;
}

double parse_double(const std::string& s) {
  if (s == "inf" || s == "+inf") return std::numeric_limits<double>::infinity();
  if (s == "-inf") return -std::numeric_limits<double>::infinity();
  try {
    std::size_t used = 0;
    const double v = std::stod(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    cx::raise(cx::ErrorCode::BadSpec, "malformed number '" + s + "'");
  }
}

std::vector<double> parse_doubles(const std::string& text) {
  std::vector<double> out;
  for (const auto& s : split_list(text)) out.push_back(parse_double(s));
  return out;
}

std::vector<cx::Rational> parse_rationals(const std::string& text) {
  std::vector<cx::Rational> out;
  for (const auto& s : split_list(text)) out.push_back(cx::parse_rational(s));
  return out;
}

std::vector<std::size_t> parse_indices(const std::string& text) {
  std::vector<std::size_t> out;
  for (const auto& s : split_list(text)) {
    try {
      out.push_back(static_cast<std::size_t>(std::stoull(s)));
    } catch (const std::exception&) {
      cx::raise(cx::ErrorCode::BadSpec, "malformed index '" + s + "'");
    }
  }
  return out;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) cx::raise(cx::ErrorCode::BadSpec, "cannot read '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::uint64_t effective_seed(std::uint64_t cli_seed) {
  if (const char* env = std::getenv("CHEBCONVEX_SEED")) {
    try {
      return std::stoull(env);
    } catch (const std::exception&) {
      cx::raise(cx::ErrorCode::BadSpec, "CHEBCONVEX_SEED must be an unsigned integer");
    }
  }
  return cli_seed;
}

struct DomainFlags {
  std::string range;  // "lo,hi"
  bool open_lo = false;
  bool open_hi = false;

  bool given() const { return !range.empty(); }

  cx::Domain build() const {
    const auto parts = split_list(range);
    if (parts.size() != 2) cx::raise(cx::ErrorCode::BadSpec, "--domain expects \"lo,hi\"");
    return cx::Domain::interval(parse_double(parts[0]), parse_double(parts[1]), open_lo, open_hi);
  }
};

cx::ChebSystem load_system(const std::string& value, const DomainFlags& domain) {
  if (!value.empty() && value.front() == '{') {
    if (domain.given()) cx::raise(cx::ErrorCode::BadSpec, "--domain applies to shorthand tags, not JSON specs");
    return cx::parse_system_spec(value);
  }
  if (std::filesystem::exists(value)) {
    if (domain.given()) cx::raise(cx::ErrorCode::BadSpec, "--domain applies to shorthand tags, not JSON specs");
    return cx::parse_system_spec(read_file(value));
  }
  if (domain.given()) return cx::builtin_system(value, domain.build());
  return cx::builtin_system(value);
}

cx::SampledFunction load_function(const std::string& value) {
  if (!value.empty() && value.front() == '{') return cx::parse_function_spec(value);
  if (value.rfind("builtin:", 0) == 0) {
    const std::string rest = value.substr(8);
    const auto colon = rest.find(':');
    const std::string name = rest.substr(0, colon == std::string::npos ? rest.size() : colon);
    std::vector<double> params;
    if (colon != std::string::npos) params = parse_doubles(rest.substr(colon + 1));
    ordered_json spec;
    spec["source"] = "builtin";
    spec["name"] = name;
    spec["params"] = params;
    return cx::parse_function_spec(spec.dump());
  }
  if (std::filesystem::exists(value)) {
    if (std::filesystem::path(value).extension() == ".csv") {
      std::ifstream in(value);
      return cx::parse_function_csv(in);
    }
    return cx::parse_function_spec(read_file(value));
  }
  cx::raise(cx::ErrorCode::BadSpec, "function spec '" + value + "' is neither JSON, builtin:..., nor a file");
}

cx::ExtendedSystem make_extended(cx::ChebSystem system, const std::string& extension) {
  if (extension.empty()) return cx::ExtendedSystem::with_default_extension(std::move(system));
  return cx::ExtendedSystem(std::move(system), load_function(extension));
}

// ---------------------------------------------------------------------------
// Report assembly

ordered_json envelope(const std::string& command) {
  ordered_json j;
  j["command"] = command;
  j["version"] = cx::kVersion;
  return j;
}

ordered_json tolerances_json() {
  ordered_json j;
  j["phi_abs"] = cx::kPhiAbsTol;
  j["phi_rel"] = cx::kPhiRelTol;
  j["condition_threshold"] = 1e12;
  return j;
}

ordered_json witness_json(const cx::ConvexityWitness& w) {
  ordered_json j;
  j["x"] = w.x;
  j["h"] = w.h;
  j["permutation"] = w.permutation;
  j["config"] = w.config;
  j["phi"] = w.phi;
  if (w.window) j["window"] = *w.window;
  j["detail"] = w.detail;
  return j;
}

ordered_json convexity_json(const cx::ConvexityReport& r) {
  ordered_json j;
  j["verdict"] = cx::verdict_name(r.verdict);
  j["mode"] = cx::mode_name(r.mode);
  j["samples_checked"] = r.samples_checked;
  j["determinants_checked"] = r.determinants_checked;
  j["target_failures"] = r.target_failures;
  j["witness"] = r.witness ? witness_json(*r.witness) : ordered_json(nullptr);
  return j;
}

ordered_json estimate_json(const cx::DinghasEstimate& est) {
  ordered_json j;
  j["point"] = est.point;
  j["deltas"] = est.deltas;
  j["inf_estimates"] = est.inf_estimates;
  j["estimate"] = est.estimate;
  j["one_sided"] = est.one_sided;
  j["argmin_config"] = est.argmin_config;
  j["argmin_value"] = est.argmin_value;
  j["negative"] = cx::certified_negative(est.argmin_value);
  return j;
}

ordered_json trace_json(const cx::MeanValueWitness& w) {
  ordered_json j;
  j["mode"] = cx::witness_mode_name(w.mode);
  j["p"] = w.p;
  if (w.bound_kind) j["bound_kind"] = cx::ratio_class_name(*w.bound_kind);
  ordered_json trace = ordered_json::array();
  for (const auto& entry : w.trace) {
    ordered_json e;
    e["config"] = entry.config;
    e["value"] = entry.value;
    trace.push_back(std::move(e));
  }
  j["trace"] = std::move(trace);
  return j;
}

void print_json(const ordered_json& j) { std::cout << j.dump(2) << "\n"; }

[[noreturn]] void unsupported_csv(const std::string& command) {
  cx::raise(cx::ErrorCode::UnsupportedFormat, "command '" + command + "' has no CSV series; use --format json");
}

void require_format(const std::string& format, const std::string& command) {
  if (format != "json" && format != "csv") cx::raise(cx::ErrorCode::UnsupportedFormat, "unknown format '" + format + "'");
  if (format == "csv" && (command == "phi" || command == "divdiff" || command == "decompose" || command == "check" ||
                          command == "propagate"))
    unsupported_csv(command);
}

// ---------------------------------------------------------------------------
// Shared option state

struct CommonOptions {
  std::string system;
  DomainFlags domain;
  std::string function;
  std::string extension;
  std::string format = "json";
  std::uint64_t seed = 0;
  std::size_t lattice = 32;
  std::size_t samples = 256;
  std::string x_range;
  std::string t;
  std::string r;
  std::string mode;
  std::string config;
  std::string grid;
  std::string indices;
  double point = 0.0;
  std::string probes;
  double x = 0.0;
  double y = 1.0;
  int levels = 12;
  double delta0 = 0.0;  // 0: derive from the domain
  int max_iters = 60;
  double width_tol = 1e-9;
  bool exact = false;
};

cx::SamplingPlan make_plan(const CommonOptions& opt) {
  cx::SamplingPlan plan;
  plan.lattice_x = opt.lattice;
  plan.lattice_h = opt.lattice;
  plan.random_draws = opt.samples;
  plan.seed = effective_seed(opt.seed);
  if (!opt.x_range.empty()) {
    const auto parts = split_list(opt.x_range);
    if (parts.size() != 2) cx::raise(cx::ErrorCode::BadSpec, "--x-range expects \"lo,hi\"");
    plan.x_min = parse_double(parts[0]);
    plan.x_max = parse_double(parts[1]);
  }
  return plan;
}

ordered_json plan_json(const cx::SamplingPlan& plan) {
  ordered_json j;
  j["lattice_x"] = plan.lattice_x;
  j["lattice_h"] = plan.lattice_h;
  j["random_draws"] = plan.random_draws;
  j["seed"] = plan.seed;
  return j;
}

// ---------------------------------------------------------------------------
// Subcommand bodies; each returns the process exit code.

int run_phi(const CommonOptions& opt) {
  require_format(opt.format, "phi");
  const cx::ChebSystem system = load_system(opt.system, opt.domain);

  ordered_json out = envelope("phi");
  out["system"] = system.describe();
  out["tolerances"] = tolerances_json();

  if (opt.exact) {
    if (system.kind() != cx::ChebSystem::Kind::Poly)
      cx::raise(cx::ErrorCode::BadSpec, "--exact supports the polynomial family");
    if (!opt.function.empty() || !opt.extension.empty())
      cx::raise(cx::ErrorCode::BadSpec, "--exact evaluates the base determinant only");
    const std::vector<cx::Rational> nodes = parse_rationals(opt.config);
    if (nodes.size() != static_cast<std::size_t>(system.dim()))
      cx::raise(cx::ErrorCode::DimensionMismatch, "config length must equal the family dimension");
    for (std::size_t i = 1; i < nodes.size(); ++i)
      if (!(nodes[i - 1] < nodes[i])) cx::raise(cx::ErrorCode::NotStrictlyOrdered, "config must increase");
    const cx::Rational value = cx::exact::phi_poly(system.dim(), nodes);
    if (!(value > 0)) cx::raise(cx::ErrorCode::PositivityViolation, "determinant is not strictly positive");
    ordered_json cfg = ordered_json::array();
    for (const auto& v : nodes) cfg.push_back(cx::to_fraction_string(v));
    out["config"] = std::move(cfg);
    out["exact"] = true;
    out["value_exact"] = cx::to_fraction_string(value);
    out["value"] = cx::to_double(value);
    print_json(out);
    return 0;
  }

  const cx::Configuration config(parse_doubles(opt.config));
  out["config"] = config.points();
  out["exact"] = false;

  std::optional<cx::SampledFunction> extension;
  std::optional<cx::SampledFunction> f;
  if (!opt.extension.empty()) extension = load_function(opt.extension);
  if (!opt.function.empty()) f = load_function(opt.function);

  cx::PhiResult result;
  if (!extension && !f) {
    result = cx::evaluate_phi(system, config);
  } else {
    result = cx::evaluate_phi_stack(system, extension ? &*extension : nullptr, f ? &*f : nullptr, config);
  }
  out["rows"] = system.dim() + (extension ? 1 : 0) + (f ? 1 : 0);
  out["value"] = result.value;
  out["condition_estimate"] = result.condition_estimate;
  out["hadamard_bound"] = result.hadamard_bound;
  out["ill_conditioned"] = result.ill_conditioned;
  print_json(out);
  return 0;
}

int run_divdiff(const CommonOptions& opt) {
  require_format(opt.format, "divdiff");
  const cx::ExtendedSystem system = make_extended(load_system(opt.system, opt.domain), opt.extension);
  const cx::SampledFunction f = load_function(opt.function);
  const cx::Configuration config(parse_doubles(opt.config));
  const cx::DividedDifferenceValue dd = cx::divided_difference(system, f, config);

  ordered_json out = envelope("divdiff");
  out["system"] = system.base().describe();
  out["function"] = f.describe();
  out["config"] = dd.config;
  out["value"] = dd.value;
  out["numerator"] = dd.numerator;
  out["denominator"] = dd.denominator;
  print_json(out);
  return 0;
}

int run_decompose(const CommonOptions& opt) {
  require_format(opt.format, "decompose");
  const cx::ExtendedSystem system = make_extended(load_system(opt.system, opt.domain), opt.extension);
  const cx::Configuration grid(parse_doubles(opt.grid));
  const std::vector<std::size_t> indices = parse_indices(opt.indices);
  const cx::DecompositionCertificate cert = cx::decompose(system, grid, indices);

  ordered_json out = envelope("decompose");
  out["system"] = system.base().describe();
  out["grid"] = cert.grid;
  out["indices"] = cert.indices;
  out["target"] = cert.target;
  out["coefficients"] = cert.coefficients;
  out["ls_coefficients"] = cert.ls_coefficients;
  out["residual"] = cert.residual;
  out["path_disagreement"] = cert.path_disagreement;
  print_json(out);
  return 0;
}

int run_chain(const CommonOptions& opt) {
  require_format(opt.format, "chain");
  const cx::ExtendedSystem system = make_extended(load_system(opt.system, opt.domain), opt.extension);
  const cx::SampledFunction f = load_function(opt.function);
  const cx::Configuration grid(parse_doubles(opt.grid));
  const std::vector<std::size_t> indices = parse_indices(opt.indices);
  const cx::ChainBounds bounds = cx::chain_bounds(system, f, grid, indices);

  if (opt.format == "csv") {
    std::cout << "lower,mid,upper\n";
    ordered_json row = {bounds.lower, bounds.mid, bounds.upper};
    std::cout << row[0].dump() << "," << row[1].dump() << "," << row[2].dump() << "\n";
    return 0;
  }

  ordered_json out = envelope("chain");
  out["system"] = system.base().describe();
  out["function"] = f.describe();
  out["grid"] = grid.points();
  out["indices"] = indices;
  out["lower"] = bounds.lower;
  out["mid"] = bounds.mid;
  out["upper"] = bounds.upper;
  out["window_values"] = bounds.window_values;
  print_json(out);
  return 0;
}

cx::ConvexityMode parse_mode(const std::string& mode) {
  if (mode == "plain") return cx::ConvexityMode::Plain;
  if (mode == "cyclic") return cx::ConvexityMode::Cyclic;
  if (mode == "symmetric") return cx::ConvexityMode::Symmetric;
  if (mode == "jensen") return cx::ConvexityMode::Jensen;
  cx::raise(cx::ErrorCode::BadSpec, "unknown mode '" + mode + "' (plain|cyclic|symmetric|jensen)");
}

int run_check(const CommonOptions& opt) {
  require_format(opt.format, "check");
  const cx::ChebSystem system = load_system(opt.system, opt.domain);
  const cx::SampledFunction f = load_function(opt.function);
  const cx::ConvexityMode mode = parse_mode(opt.mode.empty() ? "plain" : opt.mode);
  const cx::SamplingPlan plan = make_plan(opt);

  cx::StepVector t = opt.t.empty() ? cx::StepVector::ones(static_cast<std::size_t>(system.dim()))
                                   : cx::StepVector(parse_doubles(opt.t));
  const cx::ConvexityReport report = cx::check_t_convexity(system, f, t, mode, plan);

  ordered_json out = envelope("check");
  out["system"] = system.describe();
  out["function"] = f.describe();
  out["t"] = t.values;
  out["plan"] = plan_json(plan);
  out["tolerances"] = tolerances_json();
  out["report"] = convexity_json(report);
  print_json(out);
  return report.verdict == cx::Verdict::Violated ? 1 : 0;
}

int run_propagate(const CommonOptions& opt) {
  require_format(opt.format, "propagate");
  const cx::ChebSystem system = load_system(opt.system, opt.domain);
  const cx::SampledFunction f = load_function(opt.function);
  const cx::SamplingPlan plan = make_plan(opt);
  const std::string kind = opt.mode.empty() ? "theorem5" : opt.mode;

  cx::StepVector t = opt.t.empty() ? cx::StepVector::ones(static_cast<std::size_t>(system.dim()))
                                   : cx::StepVector(parse_doubles(opt.t));

  cx::ConvexityReport report;
  ordered_json out = envelope("propagate");
  out["system"] = system.describe();
  out["function"] = f.describe();
  out["kind"] = kind;
  out["t"] = t.values;

  if (kind == "theorem5") {
    if (opt.r.empty()) cx::raise(cx::ErrorCode::BadSpec, "theorem5 propagation needs --r \"r1,r2,...\"");
    const std::vector<cx::Rational> r = parse_rationals(opt.r);
    ordered_json rjson = ordered_json::array();
    for (const auto& ri : r) rjson.push_back(cx::to_fraction_string(ri));
    out["r"] = std::move(rjson);
    report = cx::check_theorem5_propagation(system, f, t, r, plan);
  } else if (kind == "theorem5plus") {
    report = cx::check_pairwise_reduction(system, f, t, plan);
  } else {
    cx::raise(cx::ErrorCode::BadSpec, "unknown propagation kind '" + kind + "' (theorem5|theorem5plus)");
  }

  out["plan"] = plan_json(plan);
  out["tolerances"] = tolerances_json();
  out["report"] = convexity_json(report);
  print_json(out);
  return report.verdict == cx::Verdict::Violated ? 1 : 0;
}

int run_dinghas(const CommonOptions& opt) {
  require_format(opt.format, "dinghas");
  const cx::ExtendedSystem system = make_extended(load_system(opt.system, opt.domain), opt.extension);
  const cx::SampledFunction f = load_function(opt.function);

  cx::Schedule schedule = cx::Schedule::for_domain(system.base().domain(), opt.levels);
  if (opt.delta0 > 0.0) schedule.delta0 = opt.delta0;
  cx::DinghasSamplerOptions sampler;
  sampler.seed = effective_seed(opt.seed);
  sampler.random_draws = opt.samples;

  const std::string mode = opt.mode.empty() ? "omega" : opt.mode;
  std::optional<cx::StepVector> t;
  if (!opt.t.empty()) t = cx::StepVector(parse_doubles(opt.t));

  ordered_json out = envelope("dinghas");
  out["system"] = system.base().describe();
  out["function"] = f.describe();
  out["mode"] = mode;
  out["schedule"] = {{"delta0", schedule.delta0}, {"levels", schedule.levels}};
  out["sampler"] =
      {{"offsets", sampler.offsets}, {"widths", sampler.widths}, {"random_draws", sampler.random_draws}, {"seed", sampler.seed}};

  if (!opt.probes.empty()) {
    cx::CharacterizeMode cmode = cx::CharacterizeMode::Omega;
    if (mode == "jensen") cmode = cx::CharacterizeMode::Jensen;
    else if (mode == "pair") cmode = cx::CharacterizeMode::Pair;
    else if (mode != "omega") cx::raise(cx::ErrorCode::BadSpec, "unknown mode '" + mode + "' (omega|jensen|pair)");
    const std::vector<double> probes = parse_doubles(opt.probes);
    const cx::CharacterizationReport report =
        cx::characterize_convexity(system, f, cmode, probes, schedule, sampler, t ? &*t : nullptr);

    ordered_json pj = ordered_json::array();
    for (const auto& probe : report.probes) {
      ordered_json p;
      p["p"] = probe.p;
      p["estimate"] = estimate_json(probe.estimate);
      if (probe.swapped) p["swapped"] = estimate_json(*probe.swapped);
      p["negative"] = probe.negative;
      pj.push_back(std::move(p));
    }
    out["probes"] = std::move(pj);
    out["consistent_with_convexity"] = report.consistent_with_convexity;
    out["witness"] = report.witness ? estimate_json(report.witness->estimate) : ordered_json(nullptr);
    if (opt.format == "csv") unsupported_csv("dinghas --probes");
    print_json(out);
    return report.consistent_with_convexity ? 0 : 1;
  }

  cx::DinghasEstimate est;
  if (mode == "omega") {
    est = cx::estimate_D(system, f, opt.point, schedule, sampler);
  } else if (mode == "jensen") {
    est = cx::estimate_D_t(system, f, cx::StepVector::ones(static_cast<std::size_t>(system.base_dim())), opt.point,
                           schedule, sampler);
  } else if (mode == "pair") {
    if (!t) cx::raise(cx::ErrorCode::BadSpec, "pair mode needs --t \"t1,t2\"");
    est = cx::estimate_D_t(system, f, *t, opt.point, schedule, sampler);
  } else {
    cx::raise(cx::ErrorCode::BadSpec, "unknown mode '" + mode + "' (omega|jensen|pair)");
  }

  if (opt.format == "csv") {
    std::cout << "delta,inf_estimate\n";
    for (std::size_t k = 0; k < est.deltas.size(); ++k)
      std::cout << ordered_json(est.deltas[k]).dump() << "," << ordered_json(est.inf_estimates[k]).dump() << "\n";
    return cx::certified_negative(est.argmin_value) ? 1 : 0;
  }

  out["estimate"] = estimate_json(est);
  print_json(out);
  return cx::certified_negative(est.argmin_value) ? 1 : 0;
}

int run_refine(const CommonOptions& opt) {
  require_format(opt.format, "refine");
  const cx::ExtendedSystem system = make_extended(load_system(opt.system, opt.domain), opt.extension);
  const cx::SampledFunction f = load_function(opt.function);
  cx::RefineOptions ropts;
  ropts.max_iters = opt.max_iters;
  ropts.width_tol_rel = opt.width_tol;

  const std::string mode = opt.mode.empty() ? "general" : opt.mode;
  cx::MeanValueWitness witness;
  if (mode == "general") {
    if (opt.config.empty()) cx::raise(cx::ErrorCode::BadSpec, "general refinement needs --config");
    witness = cx::refine_general(system, f, cx::Configuration(parse_doubles(opt.config)), ropts);
  } else if (mode == "jensen") {
    witness = cx::refine_jensen(system, f, opt.x, opt.y, ropts);
  } else if (mode == "pair") {
    if (opt.t.empty()) cx::raise(cx::ErrorCode::BadSpec, "pair refinement needs --t \"t1,t2\"");
    witness = cx::refine_pair(system, f, cx::StepVector(parse_doubles(opt.t)), opt.x, opt.y, ropts);
  } else {
    cx::raise(cx::ErrorCode::BadSpec, "unknown mode '" + mode + "' (general|jensen|pair)");
  }

  if (opt.format == "csv") {
    std::cout << "step,value\n";
    for (std::size_t i = 0; i < witness.trace.size(); ++i)
      std::cout << i << "," << ordered_json(witness.trace[i].value).dump() << "\n";
    return 0;
  }

  ordered_json out = envelope("refine");
  out["system"] = system.base().describe();
  out["function"] = f.describe();
  out["max_iters"] = ropts.max_iters;
  out["width_tol_rel"] = ropts.width_tol_rel;
  out["witness"] = trace_json(witness);
  print_json(out);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Finite-step convexity toolkit for extended Chebyshev families"};
  app.require_subcommand(1);

  CommonOptions opt;
  int exit_code = 0;

  const auto add_common = [&](CLI::App* sub, bool with_sampling) {
    sub->add_option("--system", opt.system, "System: tag (poly:3, trig-odd:1, trig-even:1, one-xsq), JSON, or file")
        ->required();
    sub->add_option("--domain", opt.domain.range, "Domain override for tag systems: \"lo,hi\" (inf allowed)");
    sub->add_flag("--open-lo", opt.domain.open_lo, "Domain is open at the lower end");
    sub->add_flag("--open-hi", opt.domain.open_hi, "Domain is open at the upper end");
    sub->add_option("--format", opt.format, "Output format: json|csv");
    if (with_sampling) {
      sub->add_option("--seed", opt.seed, "Sampler seed (CHEBCONVEX_SEED overrides)");
      sub->add_option("--samples", opt.samples, "Random draws per scan/level");
      sub->add_option("--lattice", opt.lattice, "Lattice size per axis");
      sub->add_option("--x-range", opt.x_range, "Clip the sampled base points: \"lo,hi\"");
    }
  };

  auto* phi = app.add_subcommand("phi", "Evaluate a collocation determinant");
  add_common(phi, false);
  phi->add_option("--config", opt.config, "Nodes \"x1,x2,...\" (rationals with --exact)")->required();
  phi->add_option("--function", opt.function, "Append a sampled-function row");
  phi->add_option("--extension", opt.extension, "Append the extension row");
  phi->add_flag("--exact", opt.exact, "Exact rational evaluation (polynomial family)");
  phi->callback([&] { exit_code = run_phi(opt); });

  auto* divdiff = app.add_subcommand("divdiff", "Generalized divided difference");
  add_common(divdiff, false);
  divdiff->add_option("--function", opt.function, "Function spec")->required();
  divdiff->add_option("--extension", opt.extension, "Extension (default: x^n for poly)");
  divdiff->add_option("--config", opt.config, "Nodes \"x0,...,xn\"")->required();
  divdiff->callback([&] { exit_code = run_divdiff(opt); });

  auto* decompose = app.add_subcommand("decompose", "Convex window decomposition of a sub-configuration");
  add_common(decompose, false);
  decompose->add_option("--grid", opt.grid, "Grid \"x0,...,xm\"")->required();
  decompose->add_option("--indices", opt.indices, "Target indices \"i0,...,in\"")->required();
  decompose->add_option("--extension", opt.extension, "Extension (default: x^n for poly)");
  decompose->callback([&] { exit_code = run_decompose(opt); });

  auto* chain = app.add_subcommand("chain", "Window bounds for a sub-configuration divided difference");
  add_common(chain, false);
  chain->add_option("--function", opt.function, "Function spec")->required();
  chain->add_option("--grid", opt.grid, "Grid \"x0,...,xm\"")->required();
  chain->add_option("--indices", opt.indices, "Target indices \"i0,...,in\"")->required();
  chain->add_option("--extension", opt.extension, "Extension (default: x^n for poly)");
  chain->callback([&] { exit_code = run_chain(opt); });

  auto* check = app.add_subcommand("check", "Scan step-pattern convexity over sampled (x, h)");
  add_common(check, true);
  check->add_option("--function", opt.function, "Function spec")->required();
  check->add_option("--t", opt.t, "Steps \"t1,...,tn\" (default: ones)");
  check->add_option("--mode", opt.mode, "plain|cyclic|symmetric|jensen");
  check->callback([&] { exit_code = run_check(opt); });

  auto* propagate = app.add_subcommand("propagate", "Window-to-target propagation on refinement grids");
  add_common(propagate, true);
  propagate->add_option("--function", opt.function, "Function spec")->required();
  propagate->add_option("--t", opt.t, "Steps \"t1,...,tn\" (default: ones)");
  propagate->add_option("--r", opt.r, "Rational target steps \"r1,...,rn\" (theorem5)");
  propagate->add_option("--mode,--kind", opt.mode, "theorem5|theorem5plus");
  propagate->callback([&] { exit_code = run_propagate(opt); });

  auto* dinghas = app.add_subcommand("dinghas", "Sampled lower generalized derivative");
  add_common(dinghas, true);
  dinghas->add_option("--function", opt.function, "Function spec")->required();
  dinghas->add_option("--extension", opt.extension, "Extension (default: x^n for poly)");
  dinghas->add_option("--point", opt.point, "Estimation point");
  dinghas->add_option("--probes", opt.probes, "Characterize at probe points \"p1,p2,...\"");
  dinghas->add_option("--mode", opt.mode, "omega|jensen|pair");
  dinghas->add_option("--t", opt.t, "Steps for pair mode: \"t1,t2\"");
  dinghas->add_option("--levels", opt.levels, "Schedule levels");
  dinghas->add_option("--delta0", opt.delta0, "Initial width (default: from the domain)");
  dinghas->callback([&] { exit_code = run_dinghas(opt); });

  auto* refine = app.add_subcommand("refine", "Localizing refinement trace");
  add_common(refine, false);
  refine->add_option("--function", opt.function, "Function spec")->required();
  refine->add_option("--extension", opt.extension, "Extension (default: x^n for poly)");
  refine->add_option("--mode", opt.mode, "general|jensen|pair");
  refine->add_option("--config", opt.config, "Start configuration (general mode)");
  refine->add_option("--x", opt.x, "Interval start (jensen/pair)");
  refine->add_option("--y", opt.y, "Interval end (jensen/pair)");
  refine->add_option("--t", opt.t, "Steps for pair mode: \"t1,t2\"");
  refine->add_option("--max-iters", opt.max_iters, "Iteration cap");
  refine->add_option("--width-tol", opt.width_tol, "Stop at width < tol x initial width");
  refine->callback([&] { exit_code = run_refine(opt); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  } catch (const cx::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return exit_code;
}
