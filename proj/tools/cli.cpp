// Copyright 2026 The hamlab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "cli.hpp"

#include <cmath>
#include <cstdint>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "hamlab/dynamics.hpp"
#include "hamlab/experiments.hpp"
#include "hamlab/instance.hpp"
#include "hamlab/instance_io.hpp"
#include "hamlab/report.hpp"
#include "hamlab/second_class.hpp"
#include "hamlab/thresholds.hpp"
#include "hamlab/verify.hpp"

namespace hamlab::cli {
namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

// `key = value` lines become `--key value` arguments.
std::vector<std::string> config_arguments(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open config file '" + path + "'");
  std::vector<std::string> args;
  std::string line;
  int number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw UsageError(path + ":" + std::to_string(number) + ": expected 'key = value'");
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty()) throw UsageError(path + ":" + std::to_string(number) + ": empty key");
    args.push_back("--" + key);
    args.push_back(value);
  }
  return args;
}

// Moves --config out of the argument list and splices the file's settings
// in right after the subcommand name, so explicit flags come later and win.
std::vector<std::string> expand_config(int argc, const char* const* argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  std::string config;
  std::vector<std::string> rest;
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--config") {
      if (i + 1 >= args.size()) throw UsageError("--config requires a file name");
      config = args[++i];
    } else if (args[i].rfind("--config=", 0) == 0) {
      config = args[i].substr(9);
    } else {
      rest.push_back(args[i]);
    }
  }
  if (config.empty()) return rest;
  const std::vector<std::string> extra = config_arguments(config);
  auto sub = std::find_if(rest.begin(), rest.end(),
                          [](const std::string& a) { return !a.empty() && a[0] != '-'; });
  if (sub == rest.end()) throw UsageError("--config needs a subcommand");
  rest.insert(sub + 1, extra.begin(), extra.end());
  return rest;
}

std::vector<double> parse_list(const std::string& text, const char* name) {
  std::vector<double> out;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    item = trim(item);
    if (item.empty()) continue;
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(item, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != item.size() || !std::isfinite(v)) {
      throw UsageError(std::string(name) + ": not a number: '" + item + "'");
    }
    out.push_back(v);
  }
  if (out.empty()) throw UsageError(std::string(name) + ": empty list");
  return out;
}

struct Common {
  std::int64_t reps = 1000;
  std::uint64_t seed = 1;
  unsigned workers = std::max(1u, std::thread::hardware_concurrency());
  double margin = 0.25;
  std::string out;
  std::string format;
  std::string fixtures;
  std::vector<std::string> overrides;

  RunOptions options() const { return {reps, seed, workers, margin}; }

  Thresholds thresholds() const {
    Thresholds th;
    if (!fixtures.empty()) th.load(std::filesystem::path(fixtures));
    for (const std::string& o : overrides) th.apply_override(o);
    return th;
  }

  ReportFormat report_format() const {
    if (format == "jsonl") return ReportFormat::kJsonl;
    if (format == "csv") return ReportFormat::kCsv;
    const bool jsonl = out.size() >= 6 && out.compare(out.size() - 6, 6, ".jsonl") == 0;
    return jsonl ? ReportFormat::kJsonl : ReportFormat::kCsv;
  }
};

void add_run_options(CLI::App* sub, Common& c, std::int64_t default_reps) {
  c.reps = default_reps;
  sub->add_option("--reps", c.reps, "Replications")->check(CLI::Range(std::int64_t{1}, std::int64_t{100000000}))->capture_default_str();
  sub->add_option("--seed", c.seed, "Master seed")->envname("HAMLAB_SEED")->capture_default_str();
  sub->add_option("--workers", c.workers, "Worker threads; never changes results")->check(CLI::Range(1u, 1024u));
  sub->add_option("--margin", c.margin, "Relative box margin")->check(CLI::NonNegativeNumber)->capture_default_str();
  sub->add_option("--out", c.out, "Report file (default: standard output)");
  sub->add_option("--format", c.format, "Report format")->check(CLI::IsMember({"csv", "jsonl"}));
  sub->add_option("--fixtures", c.fixtures, "Threshold fixtures file (key = value)")->check(CLI::ExistingFile);
  sub->add_option("--set", c.overrides, "Threshold override key=value")->multi_option_policy(CLI::MultiOptionPolicy::TakeAll);
}

int emit(const ExperimentResult& result, const Common& c, std::ostream& out, std::ostream& err) {
  if (c.out.empty()) {
    write_report(out, result.rows, c.report_format());
  } else {
    write_report(std::filesystem::path(c.out), result.rows, c.report_format());
  }
  for (const std::string& note : result.notes) err << note << '\n';
  if (!result.applicable) {
    err << "result: not applicable\n";
    return kExitOk;
  }
  err << "result: " << (result.pass ? "pass" : "fail") << '\n';
  return result.pass ? kExitOk : kExitFailed;
}

struct SampleParams {
  double lambda = 1.0;
  double mu = 1.0;
  double nu = 1.0;
  double x = 10.0;
  double t = 10.0;
  std::uint64_t seed = 1;
  std::string instance;
};

void add_sample_options(CLI::App* sub, SampleParams& p) {
  sub->add_option("--lambda", p.lambda, "Source intensity")->check(CLI::NonNegativeNumber)->capture_default_str();
  sub->add_option("--mu", p.mu, "Sink intensity")->check(CLI::NonNegativeNumber)->capture_default_str();
  sub->add_option("--nu", p.nu, "Alpha-point intensity")->check(CLI::NonNegativeNumber)->capture_default_str();
  sub->add_option("--x", p.x, "Box width")->check(CLI::PositiveNumber)->capture_default_str();
  sub->add_option("--t", p.t, "Box height")->check(CLI::PositiveNumber)->capture_default_str();
  sub->add_option("--seed", p.seed, "Seed")->envname("HAMLAB_SEED")->capture_default_str();
  sub->add_option("--instance", p.instance, "Read the instance from a file instead of sampling");
}

Instance obtain_instance(const SampleParams& p) {
  if (!p.instance.empty()) return load_instance(p.instance);
  return sample_instance({p.lambda, p.mu, p.nu}, {p.x, p.t}, {p.seed, 0});
}

template <class Fn>
void write_to(const std::string& path, std::ostream& fallback, Fn fn) {
  if (path.empty() || path == "-") {
    fn(fallback);
    return;
  }
  std::ofstream file(path, std::ios::binary);
  if (!file) throw std::runtime_error("cannot open '" + path + "' for writing");
  fn(file);
  file.flush();
  if (!file) throw std::runtime_error("failed writing '" + path + "'");
}

}  // namespace

int parse_and_dispatch(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Hammersley process simulator: second class particles, rarefaction fan limits "
               "and enclosed-area experiments"};
  app.name("hamlab");
  app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
  app.require_subcommand(1);
  app.failure_message(CLI::FailureMessage::help);
  app.set_help_flag("--help", "Print this help message and exit");
  app.set_help_all_flag("--help-all", "Show help for every subcommand");
  app.footer("Global: --config FILE reads 'key = value' lines as flags of the subcommand; "
             "explicit flags win.\nExit codes: 0 pass, 1 statistical failure or I/O error, "
             "2 usage error.");

  // simulate
  SampleParams sim;
  std::string sim_paths;
  std::string sim_save;
  auto* simulate = app.add_subcommand("simulate", "Run the dynamics on one instance");
  add_sample_options(simulate, sim);
  simulate->add_option("--out", sim_paths, "Space-time paths CSV (path_id,x,t)");
  simulate->add_option("--save-instance", sim_save, "Write the instance file");

  // trace
  SampleParams tr;
  double tr_u = 0.0;
  double tr_v = 0.0;
  std::string tr_out;
  std::string tr_region;
  auto* trace = app.add_subcommand("trace", "Trace X and X' from a start point");
  add_sample_options(trace, tr);
  trace->add_option("--u", tr_u, "Start position")->check(CLI::NonNegativeNumber)->capture_default_str();
  trace->add_option("--v", tr_v, "Start time")->check(CLI::NonNegativeNumber)->capture_default_str();
  trace->add_option("--out", tr_out, "Trajectory CSV (kind,time,position,status)");
  trace->add_option("--region-out", tr_region, "Region slices CSV");

  // local-intensity
  Common li_c;
  double li_lambda = 0.5, li_mu = 0.5, li_nu = 1.0, li_a = 1.0, li_x = 200.0, li_h = 4.0;
  auto* local = app.add_subcommand("local-intensity", "Particle counts in (x, x+h] at time a x");
  local->add_option("--lambda", li_lambda, "Source intensity")->check(CLI::NonNegativeNumber)->capture_default_str();
  local->add_option("--mu", li_mu, "Sink intensity")->check(CLI::NonNegativeNumber)->capture_default_str();
  local->add_option("--nu", li_nu, "Alpha-point intensity")->check(CLI::NonNegativeNumber)->capture_default_str();
  local->add_option("--a", li_a, "Ray slope t/x")->check(CLI::PositiveNumber)->capture_default_str();
  local->add_option("--x", li_x, "Position")->check(CLI::PositiveNumber)->capture_default_str();
  local->add_option("--h", li_h, "Interval length")->check(CLI::PositiveNumber)->capture_default_str();
  add_run_options(local, li_c, 2000);

  // exceed
  Common ex_c;
  std::string ex_kind = "both";
  double ex_lambda = 0.5, ex_mu = 0.5, ex_a = 1.0, ex_x = 400.0;
  std::string ex_grid;
  auto* exceed = app.add_subcommand("exceed", "P(X_{ax} > x) and P(X'_{ax} > x)");
  exceed->add_option("--kind", ex_kind, "normal, dual or both")->check(CLI::IsMember({"normal", "dual", "both"}))->capture_default_str();
  exceed->add_option("--lambda", ex_lambda, "Source intensity")->check(CLI::NonNegativeNumber)->capture_default_str();
  exceed->add_option("--mu", ex_mu, "Sink intensity")->check(CLI::NonNegativeNumber)->capture_default_str();
  exceed->add_option("--a", ex_a, "Ray slope t/x")->check(CLI::PositiveNumber)->capture_default_str();
  exceed->add_option("--x", ex_x, "Position")->check(CLI::PositiveNumber)->capture_default_str();
  exceed->add_option("--x-grid", ex_grid, "Increasing x values, comma separated; runs the trend check");
  add_run_options(exceed, ex_c, 1000);

  // slope
  Common sl_c;
  double sl_rho = 1.0;
  std::string sl_times = "200";
  auto* slope = app.add_subcommand("slope", "X_T/T and X'_T/T in the stationary process");
  slope->add_option("--rho,--lambda", sl_rho, "Density")->check(CLI::PositiveNumber)->capture_default_str();
  slope->add_option("--T", sl_times, "Times, comma separated")->capture_default_str();
  add_run_options(slope, sl_c, 500);

  // touch
  Common to_c;
  double to_lambda = 1.0;
  std::string to_times = "25,50,100";
  auto* touch = app.add_subcommand("touch", "Fraction of pairs met by each time");
  touch->add_option("--lambda", to_lambda, "Density")->check(CLI::PositiveNumber)->capture_default_str();
  touch->add_option("--T", to_times, "Increasing times, comma separated")->capture_default_str();
  add_run_options(touch, to_c, 2000);

  // area
  Common ar_c;
  std::string ar_form = "tau";
  double ar_k = 1.0, ar_x = 5.0, ar_t = 5.0;
  int ar_seeds = 1;
  auto* area = app.add_subcommand("area", "Enclosed-area identity, paired per replication");
  area->add_option("--form", ar_form, "tau (equal source and sink intensity) or lambda")->check(CLI::IsMember({"tau", "lambda"}))->capture_default_str();
  area->add_option("--lambda,--tau", ar_k, "Intensity parameter")->check(CLI::PositiveNumber)->capture_default_str();
  area->add_option("--x", ar_x, "Clip width")->check(CLI::NonNegativeNumber)->capture_default_str();
  area->add_option("--t", ar_t, "Clip height")->check(CLI::NonNegativeNumber)->capture_default_str();
  area->add_option("--seeds", ar_seeds, "Repeat over this many master seeds")->check(CLI::Range(1, 100000))->capture_default_str();
  add_run_options(area, ar_c, 5000);

  // area-asymptotics
  Common aa_c;
  double aa_lambda = 1.0, aa_x0 = 5.0, aa_horizon = 200.0;
  std::string aa_ratio;
  auto* asym = app.add_subcommand("area-asymptotics", "Strip and slab areas; area ratio trend");
  asym->add_option("--lambda", aa_lambda, "Density")->check(CLI::PositiveNumber)->capture_default_str();
  asym->add_option("--x0", aa_x0, "Strip width")->check(CLI::NonNegativeNumber)->capture_default_str();
  asym->add_option("--horizon", aa_horizon, "Simulated time")->check(CLI::PositiveNumber)->capture_default_str();
  asym->add_option("--ratio-x", aa_ratio, "Increasing x values for the area ratio check instead");
  add_run_options(asym, aa_c, 2000);

  // burke
  Common bu_c;
  double bu_lambda = 1.0, bu_mu = 0.0, bu_x = 50.0, bu_t = 50.0;
  auto* burke = app.add_subcommand("burke", "North and East exit counts");
  burke->add_option("--lambda", bu_lambda, "Source intensity")->check(CLI::PositiveNumber)->capture_default_str();
  auto* bu_mu_opt = burke->add_option("--mu", bu_mu, "Sink intensity (default 1/lambda)")->check(CLI::PositiveNumber);
  burke->add_option("--x", bu_x, "Box width")->check(CLI::PositiveNumber)->capture_default_str();
  burke->add_option("--t", bu_t, "Box height")->check(CLI::PositiveNumber)->capture_default_str();
  add_run_options(burke, bu_c, 1000);

  // verify
  std::int64_t ve_cases = 200;
  std::uint64_t ve_seed = 1;
  unsigned ve_workers = std::max(1u, std::thread::hardware_concurrency());
  auto* verify = app.add_subcommand("verify", "Exact invariant suite on random small instances");
  verify->add_option("--cases", ve_cases, "Random instances")->check(CLI::Range(std::int64_t{1}, std::int64_t{100000000}))->capture_default_str();
  verify->add_option("--seed", ve_seed, "Master seed")->envname("HAMLAB_SEED")->capture_default_str();
  verify->add_option("--workers", ve_workers, "Worker threads")->check(CLI::Range(1u, 1024u));

  try {
    std::vector<std::string> args = expand_config(argc, argv);
    std::reverse(args.begin(), args.end());
    app.parse(args);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      app.exit(e, out, err);
      return kExitOk;
    }
    app.exit(e, err, err);
    return kExitUsage;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n' << app.help();
    return kExitUsage;
  }

  try {
    if (*simulate) {
      const Instance inst = obtain_instance(sim);
      if (!sim_save.empty()) save_instance(sim_save, inst);
      const EventLog log = run_dynamics(inst);
      const Box& box = inst.box();
      write_to(sim_paths, out, [&](std::ostream& s) {
        if (sim_paths.empty()) {
          s << "sources " << inst.sources().size() << "\nsinks " << inst.sinks().size()
            << "\nalphas " << inst.alphas().size() << "\nevents " << log.events().size()
            << "\nparticles_at_end " << particle_count(log, box.x_max, box.t_max) << "\nflux "
            << flux(log, box.x_max, box.t_max) << '\n';
        } else {
          write_paths_csv(s, log);
        }
      });
      return kExitOk;
    }
    if (*trace) {
      const Instance inst = obtain_instance(tr);
      const RegionO region = trace_pair(inst, tr_u, tr_v);
      write_to(tr_out, out, [&](std::ostream& s) { write_trajectories_csv(s, region); });
      if (!tr_region.empty()) {
        write_to(tr_region, out, [&](std::ostream& s) { write_region_csv(s, region); });
      }
      if (region.meeting.met) {
        err << "met at t* = " << format_number(region.meeting.t_star) << ", position "
            << format_number(region.meeting.position) << '\n';
      } else {
        err << "not met inside the box\n";
      }
      err << "enclosed area " << format_number(enclosed_area(region, inst.box().x_max, inst.box().t_max))
          << '\n';
      return kExitOk;
    }
    if (*local) {
      return emit(exp_local_intensity(li_lambda, li_mu, li_nu, li_a, li_x, li_h, li_c.options(),
                                      li_c.thresholds()),
                  li_c, out, err);
    }
    if (*exceed) {
      const Thresholds th = ex_c.thresholds();
      if (!ex_grid.empty()) {
        const std::vector<double> xs = parse_list(ex_grid, "--x-grid");
        return emit(exp_exceedance_trend(ex_lambda, ex_mu, ex_a, xs, ex_c.options(), th), ex_c, out,
                    err);
      }
      if (ex_kind == "both") {
        return emit(exp_exceedance_both(ex_lambda, ex_mu, ex_a, ex_x, ex_c.options(), th), ex_c, out,
                    err);
      }
      const ExceedKind kind = ex_kind == "normal" ? ExceedKind::kNormal : ExceedKind::kDual;
      return emit(exp_exceedance(kind, ex_lambda, ex_mu, ex_a, ex_x, ex_c.options(), th), ex_c, out,
                  err);
    }
    if (*slope) {
      const std::vector<double> times = parse_list(sl_times, "--T");
      return emit(exp_slope(sl_rho, times, sl_c.options(), sl_c.thresholds()), sl_c, out, err);
    }
    if (*touch) {
      const std::vector<double> times = parse_list(to_times, "--T");
      return emit(exp_touch(to_lambda, times, to_c.options(), to_c.thresholds()), to_c, out, err);
    }
    if (*area) {
      const AreaForm form = ar_form == "tau" ? AreaForm::kTau : AreaForm::kLambda;
      const Thresholds th = ar_c.thresholds();
      if (ar_seeds > 1) {
        return emit(exp_area_identity_seeds(form, ar_k, ar_x, ar_t, ar_seeds, ar_c.options(), th),
                    ar_c, out, err);
      }
      return emit(area_result(exp_area_identity(form, ar_k, ar_x, ar_t, ar_c.options(), th)), ar_c,
                  out, err);
    }
    if (*asym) {
      const Thresholds th = aa_c.thresholds();
      if (!aa_ratio.empty()) {
        const std::vector<double> xs = parse_list(aa_ratio, "--ratio-x");
        return emit(exp_area_ratio(aa_lambda, xs, aa_c.options(), th), aa_c, out, err);
      }
      return emit(exp_area_asymptotics(aa_lambda, aa_x0, aa_horizon, aa_c.options(), th), aa_c, out,
                  err);
    }
    if (*burke) {
      const double mu = bu_mu_opt->count() > 0 ? bu_mu : 1.0 / bu_lambda;
      return emit(burke_check(bu_lambda, mu, bu_x, bu_t, bu_c.options(), bu_c.thresholds()), bu_c,
                  out, err);
    }
    if (*verify) {
      const VerifyReport report = run_invariant_suite(ve_cases, ve_seed, ve_workers);
      out << std::left << std::setw(22) << "check" << std::right << std::setw(10) << "checked"
          << std::setw(10) << "failed" << '\n';
      for (const CheckTally& c : report.checks) {
        out << std::left << std::setw(22) << c.name << std::right << std::setw(10) << c.checked
            << std::setw(10) << c.failed << '\n';
      }
      for (const CheckTally& c : report.checks) {
        if (!c.first_failure.empty()) err << c.name << ": " << c.first_failure << '\n';
      }
      const bool ok = report.all_passed();
      out << (ok ? "all exact checks passed" : "exact checks FAILED") << '\n';
      return ok ? kExitOk : kExitFailed;
    }
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitFailed;
  }
  return kExitUsage;
}

}  // namespace hamlab::cli
