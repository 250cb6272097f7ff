#include "cli.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <map>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "helpernet/channel_joints.hpp"
#include "helpernet/io.hpp"
#include "helpernet/model1.hpp"
#include "helpernet/model2.hpp"
#include "helpernet/model3.hpp"
#include "helpernet/monte_carlo.hpp"

namespace helpernet::cli {
namespace {

const std::vector<std::string> kModels{"m1", "m2-dedicated", "m2-full", "m3-k2", "m3-general"};

struct Preset {
  std::string model;
  double p0;
  std::vector<double> p;
  std::string source;
};

const std::map<std::string, Preset>& presets() {
  static const std::map<std::string, Preset> table{
      {"fig2", {"m1", 1.5, {3.0}, "published"}},
      {"fig3a", {"m1", 1.5, {1.8}, "published"}},
      {"fig3b", {"m1", 0.5, {0.8}, "published"}},
      {"fig3c", {"m1", 2.0, {1.8}, "published"}},
      {"fig3d", {"m1", 0.8, {0.5}, "published"}},
      {"fig4a", {"m2-dedicated", 1.0, {2.5, 1.0}, "chosen"}},
      {"fig4b", {"m2-dedicated", 3.0, {1.0, 1.0}, "chosen"}},
      {"fig5a", {"m1", 3.0, {1.8}, "published"}},
      {"fig5b", {"m1", 1.5, {0.5}, "published"}},
      {"fig7a", {"m3-k2", 1.0, {1.8, 1.5}, "published"}},
      {"fig7b", {"m3-k2", 2.0, {2.5, 0.8}, "published"}},
      {"fig7c", {"m3-k2", 4.0, {3.0, 3.0}, "published"}},
  };
  return table;
}

struct RunConfig {
  std::string model;
  double p0 = 0.0;
  std::vector<double> p;
  StatePower q = StatePower::infinite();
  std::string q_text = "inf";
  std::optional<int> grid;
  std::uint64_t seed = 0;
  std::optional<double> p00;
  std::string preset;
  std::string preset_source = "user";
};

StatePower parse_q(const std::string& text) {
  std::string t = text;
  std::transform(t.begin(), t.end(), t.begin(), [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  if (t == "inf" || t == "infinity") return StatePower::infinite();
  double v = 0.0;
  try {
    std::size_t used = 0;
    v = std::stod(text, &used);
    if (used != text.size()) throw std::invalid_argument("trailing characters");
  } catch (const std::exception&) {
    throw InvalidArgument("--q expects a positive number or 'inf', got '" + text + "'");
  }
  return StatePower::finite(v);
}

std::string q_label(const StatePower& q) {
  if (q.is_infinite()) return "inf";
  std::ostringstream os;
  os << std::setprecision(12) << q.value();
  return os.str();
}

std::size_t users_of(const std::string& model) {
  if (model == "m1") return 1;
  if (model == "m3-general") return 0;  // from --pk
  return 2;
}

PowerConfig powers_of(const RunConfig& cfg) {
  return PowerConfig(cfg.p0, cfg.p, std::vector<StatePower>(cfg.p.size(), cfg.q));
}

int grid_or(const RunConfig& cfg, int fallback) { return cfg.grid.value_or(fallback); }

Report build_report(const RunConfig& cfg) {
  Report r;
  r.meta.model = cfg.model;
  r.meta.q_mode = q_label(cfg.q);
  r.meta.seed = cfg.seed;
  r.meta.preset = cfg.preset;
  r.meta.preset_source = cfg.preset_source;
  r.powers = powers_of(cfg);
  const PowerConfig& pw = r.powers;

  if (!cfg.q.is_infinite() && cfg.model != "m1") {
    throw InvalidArgument(cfg.model + " rates are high-state-power limits; use --q inf");
  }

  if (cfg.model == "m1") {
    r.axes = {"R0", "R1"};
    r.inner.push_back({"", model1::inner_frontier(pw, cfg.q, grid_or(cfg, 2001)).frontier});
    r.notes.push_back(std::string("case=") + std::string(model1::to_string(model1::classify_case(pw))));
    if (cfg.q.is_infinite()) {
      r.outer = model1::outer_region(pw);
      r.segments = model1::capacity_segments(pw);
      if (model1::classify_case(pw) == model1::CaseTag::Case1) r.sum_capacity = gaussian_rate(pw.p0);
    } else {
      r.notes.push_back("outer bound and capacity segments hold only for infinite q; omitted");
    }
  } else if (cfg.model == "m2-dedicated") {
    r.axes = {"R1", "R2"};
    r.inner.push_back({"", model2::inner_frontier_dedicated(pw, grid_or(cfg, 201)).frontier});
    r.outer = model2::outer_region_dedicated(pw);
    const auto seg = model2::capacity_segments_dedicated(pw);
    if (seg.ab) r.segments.push_back(*seg.ab);
    if (seg.cd) r.segments.push_back(*seg.cd);
    r.sum_capacity = model2::sum_capacity_dedicated(pw);
  } else if (cfg.model == "m2-full") {
    r.axes = {"R0", "R1", "R2"};
    const int res = grid_or(cfg, 101);
    for (const auto& slice : model2::inner_frontier_full(pw, 11, res)) {
      std::ostringstream label;
      label << "p00=" << std::setprecision(12) << slice.p00;
      r.inner.push_back({label.str(), slice.frontier});
    }
    r.outer = model2::outer_region_full(pw);
    const double p00 = cfg.p00.value_or(0.0);
    const auto seg = model2::capacity_segments_full(pw, p00);
    if (seg.ab) r.segments.push_back(*seg.ab);
    if (seg.cd) r.segments.push_back(*seg.cd);
    std::ostringstream note;
    note << "capacity segments at p00=" << std::setprecision(12) << p00;
    r.notes.push_back(note.str());
  } else if (cfg.model == "m3-k2") {
    r.axes = {"R1", "R2"};
    r.inner.push_back({"", model3::inner_frontier_k2(pw, grid_or(cfg, 2001)).frontier});
    r.outer = model3::outer_region_k2(pw);
    r.segments = model3::capacity_segments_k2(pw);
    if (const auto sc = model3::sum_capacity_k2(pw)) {
      r.sum_capacity = sc->rate;
      r.gamma_interval = std::make_pair(sc->gammas.lo, sc->gammas.hi);
    }
  } else if (cfg.model == "m3-general") {
    for (std::size_t i = 0; i <= pw.users(); ++i) r.axes.push_back("R" + std::to_string(i));
    r.outer = model3::outer_region_general(pw);
    if (pw.users() <= 3) {
      const int steps = grid_or(cfg, 10);
      r.inner.push_back({"", model3::inner_lattice_general(pw, steps).frontier});
      const auto gammas = model3::simplex_lattice(pw.users(), steps);
      const auto betas = model3::simplex_lattice(2, steps);  // beta levels k/steps
      std::vector<RatePoint> boundary;
      for (const auto& g : gammas) {
        for (const auto& b : betas) {
          model3::TimeShare ts{g, std::vector<double>(pw.users(), b.front())};
          if (auto pt = model3::sum_capacity_boundary_general(ts, pw)) boundary.push_back(*pt);
        }
      }
      if (!boundary.empty()) {
        r.inner.push_back({"sum-capacity", std::move(boundary)});
        r.sum_capacity = gaussian_rate(pw.p0);
      }
    } else {
      r.notes.push_back("inner lattice sweep limited to at most 3 users; outer half-spaces only");
    }
  } else {
    throw InvalidArgument("unknown model '" + cfg.model + "'");
  }
  return r;
}

std::ostream& open_output(const std::string& path, std::ofstream& file, std::ostream& fallback) {
  if (path.empty()) return fallback;
  file.open(path, std::ios::binary);
  if (!file) throw InvalidArgument("cannot open '" + path + "' for writing");
  return file;
}

// ---- validate ----

struct CheckLog {
  std::ostream& os;
  int total = 0;
  int failed = 0;

  void line(const std::string& text, bool pass) {
    ++total;
    if (!pass) ++failed;
    os << text << (pass ? " PASS" : " FAIL") << '\n';
  }
  void note(const std::string& text) { os << text << '\n'; }
};

std::string fmt(double v) {
  std::ostringstream os;
  os << std::setprecision(10) << v;
  return os.str();
}

constexpr double kRateTolerance = 1e-6;
constexpr double kSlackTolerance = 1e-9;
constexpr double kMcSigmas = 4.0;

bool nondegenerate(const JointGaussian<double>& g, const LabelSet& labels) {
  const Eigen::MatrixXd s = g.sub_cov(labels);
  const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(s, Eigen::EigenvaluesOnly);
  return eig.eigenvalues().minCoeff() > 1e-9 * std::max(1.0, s.trace());
}

void rate_check(CheckLog& log, const std::string& tag, const std::string& name, double closed, double oracle) {
  const double gap = std::abs(closed - oracle);
  log.line(tag + " check=" + name + " closed=" + fmt(closed) + " oracle=" + fmt(oracle) + " gap=" + fmt(gap) +
               " tol=" + fmt(kRateTolerance),
           gap < kRateTolerance);
}

void mc_check(CheckLog& log, const std::string& tag, const std::string& name, const JointGaussian<double>& g,
              const LabelSet& a, const LabelSet& b, const LabelSet& c, double oracle, std::uint64_t n,
              std::uint64_t seed) {
  LabelSet all = a;
  all.insert(all.end(), b.begin(), b.end());
  all.insert(all.end(), c.begin(), c.end());
  if (n == 0) return;
  if (!nondegenerate(g, all)) {
    log.note(tag + " check=" + name + " skipped: degenerate variables");
    return;
  }
  const auto est = mc_estimate_mi(g, a, b, n, seed, c);
  const double dev = std::abs(est.estimate - oracle);
  log.line(tag + " check=" + name + " mc=" + fmt(est.estimate) + " stderr=" + fmt(est.stderr_bits) +
               " oracle=" + fmt(oracle) + " n=" + std::to_string(n) + " seed=" + std::to_string(seed) +
               " tol=" + fmt(kMcSigmas) + "*stderr",
           dev <= kMcSigmas * est.stderr_bits);
}

void validate_m1(const RunConfig& cfg, std::optional<double> alpha_override, std::uint64_t samples, CheckLog& log) {
  const auto limit = PowerConfig::high_state(cfg.p0, cfg.p);
  const PowerConfig finite = powers_of(cfg);
  const double q = cfg.q.value();
  const auto betas = linspace(0.0, 1.0, grid_or(cfg, 11));
  for (std::size_t i = 0; i < betas.size(); ++i) {
    auto params = model1::optimize_beta(betas[i], limit, StatePower::infinite()).params;
    if (alpha_override) params.alpha = *alpha_override;
    const std::string tag = "m1 beta=" + fmt(params.beta) + " alpha=" + fmt(params.alpha) + " p1_used=" +
                            fmt(params.p1_used);
    const auto closed = model1::inner_point(params, limit, StatePower::infinite());
    const auto g = build_model1_joint(finite, params, q);

    const double slack = mutual_info(g, {"U"}, {"Y1"}) - mutual_info(g, {"U"}, {"S1", "X0p"});
    log.line(tag + " check=feasibility closed=" + (closed ? "feasible" : "infeasible") +
                 " bound=" + fmt(model1::alpha_feasible_max(params.beta, cfg.p0, params.p1_used, cfg.q)) +
                 " oracle_slack=" + fmt(slack),
             closed.has_value() && slack >= -kSlackTolerance);
    if (!closed) continue;

    rate_check(log, tag, "R0", (*closed)(0), mutual_info(g, {"X0p"}, {"Y0"}));
    const double r1 = cond_mutual_info(g, {"X1"}, {"Y1"}, {"U"});
    rate_check(log, tag, "R1", (*closed)(1), r1);
    mc_check(log, tag, "mc:R1", g, {"X1"}, {"Y1"}, {"U"}, r1, samples, cfg.seed + i);
  }
}

void validate_m2(const RunConfig& cfg, std::optional<double> alpha_override, std::uint64_t samples, CheckLog& log) {
  const auto limit = PowerConfig::high_state(cfg.p0, cfg.p);
  const PowerConfig finite = powers_of(cfg);
  const double q = cfg.q.value();
  const double p1 = cfg.p[0];
  const double p2 = cfg.p[1];
  const auto fractions = linspace(0.0, 1.0, grid_or(cfg, 11));
  for (std::size_t i = 0; i < fractions.size(); ++i) {
    model2::Params params;
    params.p00 = fractions[i] * cfg.p0;
    params.p01 = cfg.p0 - params.p00;
    params.p1_used = std::min(p1, params.p00 + params.p01 + 1.0);
    params.alpha = std::min(1.0, model2::alpha_feasible_max(params.p00, params.p01, *params.p1_used));
    params.beta = model2::beta_feasible_max(params.p00, params.p01, p2);
    if (alpha_override) params.alpha = *alpha_override;
    const std::string tag = "m2 p00=" + fmt(params.p00) + " p01=" + fmt(params.p01) + " alpha=" +
                            fmt(params.alpha) + " beta=" + fmt(params.beta) + " p1_used=" + fmt(*params.p1_used);
    const auto g = build_model2_joint(finite, params, q, model2::HelperMode::Dedicated);

    const bool alpha_ok = params.alpha <= model2::alpha_feasible_max(params.p00, params.p01, *params.p1_used) *
                                                 (1.0 + 1e-12) + 1e-15;
    const double alpha_slack = mutual_info(g, {"U"}, {"Y1"}) - mutual_info(g, {"U"}, {"S1"});
    log.line(tag + " check=alpha-feasibility closed=" + (alpha_ok ? "feasible" : "infeasible") +
                 " oracle_slack=" + fmt(alpha_slack),
             alpha_ok && alpha_slack >= -kSlackTolerance);

    const bool beta_ok = model2::beta_feasible(params.beta, params.p00, params.p01, p2);
    const double beta_slack = mutual_info(g, {"V"}, {"Y2"}) - mutual_info(g, {"V"}, {"U", "S1"});
    log.line(tag + " check=beta-feasibility closed=" + (beta_ok ? "feasible" : "infeasible") +
                 " oracle_slack=" + fmt(beta_slack),
             beta_ok && beta_slack >= -kSlackTolerance);

    const auto closed = model2::inner_point_dedicated(params, limit);
    if (!closed) continue;
    const double r1 = cond_mutual_info(g, {"X1"}, {"Y1"}, {"U"});
    const double r2 = cond_mutual_info(g, {"X2"}, {"Y2"}, {"V"});
    rate_check(log, tag, "R1", (*closed)(0), r1);
    rate_check(log, tag, "R2", (*closed)(1), r2);
    mc_check(log, tag, "mc:R1", g, {"X1"}, {"Y1"}, {"U"}, r1, samples, cfg.seed + 2 * i);
    mc_check(log, tag, "mc:R2", g, {"X2"}, {"Y2"}, {"V"}, r2, samples, cfg.seed + 2 * i + 1);
  }
}

void require_powers(const RunConfig& cfg, bool have_p1, bool have_p2, bool have_pk) {
  const std::size_t k = users_of(cfg.model);
  if (cfg.model == "m3-general") {
    if (!have_pk) throw InvalidArgument("m3-general needs --pk");
    if (have_p1 || have_p2) throw InvalidArgument("m3-general takes user powers from --pk only");
    return;
  }
  if (have_pk) throw InvalidArgument("--pk applies to m3-general only");
  if (!have_p1) throw InvalidArgument(cfg.model + " needs --p1");
  if (k == 2 && !have_p2) throw InvalidArgument(cfg.model + " needs --p2");
  if (k == 1 && have_p2) throw InvalidArgument("m1 has a single user; --p2 is not used");
}

}  // namespace

std::vector<std::string> preset_names() {
  std::vector<std::string> out;
  for (const auto& [name, preset] : presets()) out.push_back(name);
  return out;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Rate regions of state-dependent Gaussian networks with a state-cognitive helper"};
  app.name("helpernet");
  app.require_subcommand(1, 1);
  app.set_version_flag("--version", kToolVersion);

  RunConfig cfg;
  double p1 = 0.0;
  double p2 = 0.0;
  std::vector<double> pk;
  std::string q_text = "inf";
  std::string format;
  std::string out_path;

  auto* region = app.add_subcommand("region", "Inner frontier, outer region and capacity segments");
  region->add_option("model", cfg.model, "Model")->required()->check(CLI::IsMember(kModels));
  region->add_option("--p0", cfg.p0, "Helper power")->required();
  auto* r_p1 = region->add_option("--p1", p1, "User 1 power");
  auto* r_p2 = region->add_option("--p2", p2, "User 2 power");
  auto* r_pk = region->add_option("--pk", pk, "User powers (m3-general)")->delimiter(',');
  region->add_option("--q", q_text, "State power: a positive value or 'inf'");
  region->add_option("--grid", cfg.grid, "Sweep resolution")->check(CLI::PositiveNumber);
  region->add_option("--seed", cfg.seed, "Seed recorded in the output");
  region->add_option("--format", format, "csv or json (default: from --out, else json)")
      ->check(CLI::IsMember({"csv", "json"}));
  region->add_option("--out", out_path, "Output file");
  region->add_option("--p00", cfg.p00, "Helper message power for m2-full segments");

  std::string v_model;
  std::optional<double> alpha_override;
  std::uint64_t samples = 100000;
  std::string v_q = "1e8";
  auto* validate = app.add_subcommand("validate", "Closed forms against the exact oracle and Monte Carlo");
  validate->add_option("model", v_model, "Model")->required()->check(CLI::IsMember({"m1", "m2-dedicated"}));
  validate->add_option("--p0", cfg.p0, "Helper power")->required();
  auto* v_p1 = validate->add_option("--p1", p1, "User 1 power")->required();
  auto* v_p2 = validate->add_option("--p2", p2, "User 2 power");
  validate->add_option("--q", v_q, "Finite state power");
  validate->add_option("--grid", cfg.grid, "Parameter grid size")->check(CLI::Range(2, 100000));
  validate->add_option("--samples", samples, "Monte Carlo samples per check (0 skips)");
  validate->add_option("--seed", cfg.seed, "Base seed");
  validate->add_option("--alpha-override", alpha_override, "Force alpha at every grid point");
  validate->add_option("--out", out_path, "Report file");

  std::string preset_name;
  std::string out_dir = ".";
  auto* figure = app.add_subcommand("figure", "Data files for a figure preset");
  figure->add_option("preset", preset_name, "Preset name")->required();
  figure->add_option("--out-dir", out_dir, "Directory for <preset>_{inner,outer,segments}.csv");
  figure->add_option("--grid", cfg.grid, "Sweep resolution")->check(CLI::PositiveNumber);
  figure->add_option("--seed", cfg.seed, "Seed recorded in the output");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? kOk : kBadArguments;
  }

  try {
    if (region->parsed()) {
      require_powers(cfg, r_p1->count() > 0, r_p2->count() > 0, r_pk->count() > 0);
      cfg.p = cfg.model == "m3-general" ? pk : (users_of(cfg.model) == 1 ? std::vector<double>{p1} : std::vector<double>{p1, p2});
      cfg.q = parse_q(q_text);
      if (cfg.p00 && cfg.model != "m2-full") throw InvalidArgument("--p00 applies to m2-full only");
      const Report report = build_report(cfg);
      if (format.empty()) {
        format = out_path.size() >= 4 && out_path.substr(out_path.size() - 4) == ".csv" ? "csv" : "json";
      }
      std::ofstream file;
      std::ostream& os = open_output(out_path, file, out);
      if (format == "csv") {
        write_csv(os, report);
      } else {
        write_json(os, report);
      }
      return kOk;
    }

    if (validate->parsed()) {
      cfg.model = v_model;
      if (v_model == "m2-dedicated" && v_p2->count() == 0) throw InvalidArgument("m2-dedicated needs --p2");
      if (v_model == "m1" && v_p2->count() > 0) throw InvalidArgument("m1 has a single user; --p2 is not used");
      (void)v_p1;
      cfg.p = v_model == "m1" ? std::vector<double>{p1} : std::vector<double>{p1, p2};
      cfg.q = parse_q(v_q);
      if (cfg.q.is_infinite()) throw InvalidArgument("validate needs a finite --q");
      if (samples != 0 && samples < kMinMonteCarloSamples) {
        throw InvalidArgument("--samples must be 0 or at least " + std::to_string(kMinMonteCarloSamples));
      }
      std::ofstream file;
      std::ostream& os = open_output(out_path, file, out);
      CheckLog log{os};
      log.note("# tool_version=" + std::string(kToolVersion));
      log.note("# log_base=2");
      log.note("# q_mode=" + q_label(cfg.q));
      log.note("# seed=" + std::to_string(cfg.seed));
      if (v_model == "m1") {
        validate_m1(cfg, alpha_override, samples, log);
      } else {
        validate_m2(cfg, alpha_override, samples, log);
      }
      log.note("summary checks=" + std::to_string(log.total) + " failed=" + std::to_string(log.failed));
      return log.failed == 0 ? kOk : kValidationFailed;
    }

    if (figure->parsed()) {
      const auto it = presets().find(preset_name);
      if (it == presets().end()) {
        std::string names;
        for (const auto& n : preset_names()) names += (names.empty() ? "" : ", ") + n;
        err << "unknown preset '" << preset_name << "'; valid presets: " << names << '\n';
        return kBadArguments;
      }
      const Preset& preset = it->second;
      cfg.model = preset.model;
      cfg.p0 = preset.p0;
      cfg.p = preset.p;
      cfg.preset = preset_name;
      cfg.preset_source = preset.source;
      const Report report = build_report(cfg);
      std::filesystem::create_directories(out_dir);
      const std::pair<const char*, CsvPart> parts[] = {
          {"inner", CsvPart::Inner}, {"outer", CsvPart::Outer}, {"segments", CsvPart::Segments}};
      for (const auto& [suffix, part] : parts) {
        const auto path = std::filesystem::path(out_dir) / (preset_name + "_" + suffix + ".csv");
        std::ofstream file(path, std::ios::binary);
        if (!file) throw InvalidArgument("cannot open '" + path.string() + "' for writing");
        write_csv(file, report, part);
      }
      return kOk;
    }
  } catch (const InvalidArgument& e) {
    err << "error: " << e.what() << '\n';
    return kBadArguments;
  } catch (const NumericalError& e) {
    err << "numerical failure: " << e.what() << '\n';
    return kNumericalFailure;
  } catch (const std::filesystem::filesystem_error& e) {
    err << "error: " << e.what() << '\n';
    return kBadArguments;
  } catch (const std::exception& e) {
    err << "numerical failure: " << e.what() << '\n';
    return kNumericalFailure;
  }
  return kBadArguments;
}

}  // namespace helpernet::cli
