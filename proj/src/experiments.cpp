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

#include "hamlab/experiments.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "hamlab/dynamics.hpp"
#include "hamlab/instance.hpp"
#include "hamlab/second_class.hpp"
#include "hamlab/stats.hpp"

namespace hamlab {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double positive_part(double v) { return v > 0.0 ? v : 0.0; }

void require(bool ok, const std::string& message) {
  if (!ok) throw std::invalid_argument(message);
}

void check_options(const RunOptions& options) {
  require(options.reps >= 1, "reps must be at least 1");
  require(options.margin >= 0.0 && std::isfinite(options.margin), "margin must be >= 0");
}

void check_rate(double value, const char* name) {
  require(std::isfinite(value) && value >= 0.0, std::string(name) + " must be finite and >= 0");
}

void check_positive(double value, const char* name) {
  require(std::isfinite(value) && value > 0.0, std::string(name) + " must be finite and > 0");
}

EstimateReport make_row(const std::string& experiment, const std::string& statistic,
                        const RunOptions& options) {
  EstimateReport r;
  r.experiment = experiment;
  r.statistic = statistic;
  r.reps = options.reps;
  r.seed = options.seed;
  r.n_reps = options.reps;
  return r;
}

void fill(EstimateReport& row, const Summary& s) {
  row.estimate = s.mean;
  row.std_error = s.std_error;
  row.n_reps = static_cast<std::int64_t>(s.n);
}

void record(ExperimentResult& result, EstimateReport row, bool pass, const std::string& why = {}) {
  row.pass = pass;
  if (!pass) {
    result.pass = false;
    result.notes.push_back(row.experiment + " " + row.statistic + ": " +
                           (why.empty() ? "outside tolerance" : why) + " (estimate " +
                           format_number(row.estimate) + ", std error " +
                           format_number(row.std_error) + ")");
  }
  result.rows.push_back(std::move(row));
}

double exceed_tolerance(double target, const Thresholds& th) {
  if (target >= 1.0) return 1.0 - th.get("exceed.high_min");
  if (target <= 0.0) return th.get("exceed.low_max");
  return th.get("exceed.tolerance");
}

struct FinalCounts {
  double in_interval = 0.0;
  double lower_half = 0.0;
  double upper_half = 0.0;
};

struct IntervalCounter {
  double lo;
  double mid;
  double hi;
  FinalCounts counts;

  void on_step(const Configuration&, const Step&) {}
  void on_finish(const Configuration& config) {
    counts.lower_half = static_cast<double>(config.count_in(lo, mid));
    counts.upper_half = static_cast<double>(config.count_in(mid, hi));
    counts.in_interval = counts.lower_half + counts.upper_half;
  }
};

struct ExitCounter {
  std::int64_t east = 0;
  std::int64_t north = 0;

  void on_step(const Configuration&, const Step& step) {
    if (step.event.kind == EventKind::kAlphaSpawn || step.event.kind == EventKind::kSinkNoop) ++east;
  }
  void on_finish(const Configuration& config) { north = static_cast<std::int64_t>(config.size()); }
};

struct ExceedOutcome {
  double normal = 0.0;
  double dual = 0.0;
};

// Distances |estimate - target| along the grid may grow at most once, and
// by no more than `inversion_se` combined standard errors.
bool trend_ok(std::span<const EstimateReport> rows, double inversion_se, std::string* why) {
  int inversions = 0;
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const double prev = std::abs(rows[i - 1].estimate - *rows[i - 1].target);
    const double cur = std::abs(rows[i].estimate - *rows[i].target);
    if (cur <= prev) continue;
    ++inversions;
    const double se = std::hypot(rows[i - 1].std_error, rows[i].std_error);
    if (cur - prev > inversion_se * se) {
      *why = "distance to target grows by " + format_number(cur - prev) + " between x=" +
             format_number(rows[i - 1].x) + " and x=" + format_number(rows[i].x) +
             ", more than the allowed " + format_number(inversion_se * se);
      return false;
    }
  }
  if (inversions > 1) {
    *why = std::to_string(inversions) + " inversions of the approach to the target";
    return false;
  }
  return true;
}

}  // namespace

LimitTargets theoretical_limits(double lambda, double mu, double a) {
  check_rate(lambda, "lambda");
  check_rate(mu, "mu");
  require(std::isfinite(a) && a >= 0.0, "a must be finite and >= 0");
  require(lambda * mu < 1.0, "lambda * mu must be < 1");

  const double inv_mu = mu > 0.0 ? 1.0 / mu : kInf;
  const double upper = inv_mu * inv_mu;
  const double lower = lambda * lambda;
  LimitTargets out;
  if (a >= upper) {
    out.regime = Regime::kAboveFan;
    out.intensity_limit = inv_mu;
    out.exceed_normal = 1.0;
    out.exceed_dual = 1.0;
  } else if (a >= lower) {
    const double root = std::sqrt(a);
    out.regime = Regime::kInFan;
    out.intensity_limit = root;
    out.exceed_normal = std::isinf(inv_mu) ? 0.0 : (root - lambda) / (inv_mu - lambda);
    out.exceed_dual = lambda == 0.0 ? 1.0 : (1.0 / lambda - 1.0 / root) / (1.0 / lambda - mu);
  } else {
    out.regime = Regime::kBelowFan;
    out.intensity_limit = lambda;
    out.exceed_normal = 0.0;
    out.exceed_dual = 0.0;
  }
  return out;
}

ExperimentResult exp_local_intensity(double lambda, double mu, double nu, double a, double x,
                                     double h, const RunOptions& options,
                                     const Thresholds& thresholds) {
  check_options(options);
  check_positive(x, "x");
  check_positive(h, "h");
  check_positive(a, "a");
  const LimitTargets limits = theoretical_limits(lambda, mu, a);
  check_rate(nu, "nu");
  const Intensities rates{lambda, mu, nu};
  // The interval and the query time sit inside the box by construction.
  const Box box{x + 2.0 * h, a * x};

  const std::vector<FinalCounts> counts =
      run_replications<FinalCounts>(options.reps, options.workers, [&](std::uint64_t rep) {
        const Instance inst = sample_instance(rates, box, {options.seed, rep});
        IntervalCounter counter{x, x + h / 2.0, x + h, {}};
        sweep(inst, counter);
        return counter.counts;
      });

  std::vector<double> total;
  std::vector<double> lower;
  std::vector<double> upper;
  for (const FinalCounts& c : counts) {
    total.push_back(c.in_interval);
    lower.push_back(c.lower_half);
    upper.push_back(c.upper_half);
  }

  ExperimentResult result;
  auto row = [&](const std::string& statistic) {
    EstimateReport r = make_row("local-intensity", statistic, options);
    r.lambda = lambda;
    r.mu = mu;
    r.nu = nu;
    r.a = a;
    r.x = x;
    r.t = a * x;
    r.h = h;
    return r;
  };

  const Summary s = summarize(total);
  EstimateReport mean_row = row("count_mean");
  fill(mean_row, s);
  mean_row.target = nu == 0.0 && lambda == 0.0 ? 0.0 : limits.intensity_limit * h;
  const double allowance = std::max(thresholds.get("intensity.se_factor") * s.std_error,
                                    thresholds.get("intensity.relative_allowance") * *mean_row.target);
  record(result, mean_row, std::abs(s.mean - *mean_row.target) <= allowance);

  EstimateReport disp_row = row("dispersion_index");
  disp_row.target = 1.0;
  if (s.mean > 0.0) {
    const DispersionEstimate d = dispersion(total);
    disp_row.estimate = d.index;
    disp_row.std_error = d.std_error;
    record(result, disp_row,
           d.index >= thresholds.get("intensity.dispersion_min") &&
               d.index <= thresholds.get("intensity.dispersion_max"));
  } else {
    disp_row.estimate = std::numeric_limits<double>::quiet_NaN();
    result.notes.push_back("all counts are zero; dispersion index undefined");
    disp_row.pass = *mean_row.target == 0.0;
    if (!*disp_row.pass) result.pass = false;
    result.rows.push_back(disp_row);
  }

  const CovarianceEstimate cov = covariance(lower, upper);
  EstimateReport cov_row = row("half_interval_covariance");
  cov_row.estimate = cov.covariance;
  cov_row.std_error = cov.std_error;
  cov_row.target = 0.0;
  record(result, cov_row,
         std::abs(cov.covariance) <= thresholds.get("intensity.covariance_se_factor") * cov.std_error);
  return result;
}

namespace {

std::vector<ExceedOutcome> exceed_runs(double lambda, double mu, double a, double x,
                                       const RunOptions& options) {
  check_options(options);
  check_positive(x, "x");
  check_positive(a, "a");
  const Intensities rates{lambda, mu, 1.0};
  // Trajectories are monotone, so East censoring beyond x cannot change
  // the comparison with x; the query time is the top of the box.
  const Box box{x * (1.0 + options.margin), a * x};
  const double t = a * x;
  return run_replications<ExceedOutcome>(options.reps, options.workers, [&](std::uint64_t rep) {
    const Instance inst = sample_instance(rates, box, {options.seed, rep});
    const RegionO region = trace_pair(inst, 0.0, 0.0);
    return ExceedOutcome{region.x.position_at(t) > x ? 1.0 : 0.0,
                         region.xp.position_at(t) > x ? 1.0 : 0.0};
  });
}

EstimateReport exceed_row(ExceedKind kind, double lambda, double mu, double a, double x,
                          const RunOptions& options, std::span<const ExceedOutcome> outcomes,
                          const LimitTargets& limits) {
  std::vector<double> values;
  values.reserve(outcomes.size());
  for (const ExceedOutcome& o : outcomes) values.push_back(kind == ExceedKind::kNormal ? o.normal : o.dual);
  EstimateReport r = make_row("exceed", kind == ExceedKind::kNormal ? "p_x_exceeds" : "p_xp_exceeds",
                              options);
  r.lambda = lambda;
  r.mu = mu;
  r.nu = 1.0;
  r.a = a;
  r.x = x;
  r.t = a * x;
  fill(r, summarize(values));
  r.target = kind == ExceedKind::kNormal ? limits.exceed_normal : limits.exceed_dual;
  return r;
}

}  // namespace

ExperimentResult exp_exceedance(ExceedKind kind, double lambda, double mu, double a, double x,
                                const RunOptions& options, const Thresholds& thresholds) {
  const LimitTargets limits = theoretical_limits(lambda, mu, a);
  const std::vector<ExceedOutcome> outcomes = exceed_runs(lambda, mu, a, x, options);
  ExperimentResult result;
  EstimateReport r = exceed_row(kind, lambda, mu, a, x, options, outcomes, limits);
  const bool ok = std::abs(r.estimate - *r.target) <= exceed_tolerance(*r.target, thresholds);
  record(result, r, ok);
  return result;
}

ExperimentResult exp_exceedance_both(double lambda, double mu, double a, double x,
                                     const RunOptions& options, const Thresholds& thresholds) {
  const LimitTargets limits = theoretical_limits(lambda, mu, a);
  const std::vector<ExceedOutcome> outcomes = exceed_runs(lambda, mu, a, x, options);
  ExperimentResult result;
  for (ExceedKind kind : {ExceedKind::kNormal, ExceedKind::kDual}) {
    EstimateReport r = exceed_row(kind, lambda, mu, a, x, options, outcomes, limits);
    const bool ok = std::abs(r.estimate - *r.target) <= exceed_tolerance(*r.target, thresholds);
    record(result, r, ok);
  }
  return result;
}

ExperimentResult exp_exceedance_trend(double lambda, double mu, double a,
                                      std::span<const double> xs, const RunOptions& options,
                                      const Thresholds& thresholds) {
  require(!xs.empty(), "x grid must not be empty");
  require(std::is_sorted(xs.begin(), xs.end()), "x grid must be increasing");
  const LimitTargets limits = theoretical_limits(lambda, mu, a);
  ExperimentResult result;
  std::vector<EstimateReport> normal;
  std::vector<EstimateReport> dual;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const std::vector<ExceedOutcome> outcomes = exceed_runs(lambda, mu, a, xs[i], options);
    normal.push_back(exceed_row(ExceedKind::kNormal, lambda, mu, a, xs[i], options, outcomes, limits));
    dual.push_back(exceed_row(ExceedKind::kDual, lambda, mu, a, xs[i], options, outcomes, limits));
  }
  const double inversion = thresholds.get("exceed.trend_inversion_se");
  for (std::vector<EstimateReport>* series : {&normal, &dual}) {
    std::string why;
    const bool trend = trend_ok(*series, inversion, &why);
    if (!trend) {
      result.pass = false;
      result.notes.push_back(series->front().statistic + ": " + why);
    }
    for (std::size_t i = 0; i < series->size(); ++i) {
      EstimateReport& r = (*series)[i];
      if (i + 1 == series->size()) {
        const bool ok = std::abs(r.estimate - *r.target) <= exceed_tolerance(*r.target, thresholds);
        record(result, r, ok && trend, ok ? "monotone approach violated" : "");
      } else {
        result.rows.push_back(r);
      }
    }
  }
  return result;
}

ExperimentResult exp_slope(double rho, std::span<const double> times, const RunOptions& options,
                           const Thresholds& thresholds) {
  check_options(options);
  check_positive(rho, "rho");
  require(!times.empty(), "time grid must not be empty");
  const Intensities rates{rho, 1.0 / rho, 1.0};
  const double target = 1.0 / (rho * rho);
  ExperimentResult result;
  for (double T : times) {
    check_positive(T, "T");
    const Box box{2.0 * T * target * (1.0 + options.margin) + 10.0, T};
    struct Out {
      double x = 0.0;
      double xp = 0.0;
      bool censored = false;
    };
    const std::vector<Out> outs =
        run_replications<Out>(options.reps, options.workers, [&](std::uint64_t rep) {
          const Instance inst = sample_instance(rates, box, {options.seed, rep});
          const RegionO region = trace_pair(inst, 0.0, 0.0);
          Out o;
          o.x = region.x.position_at(T);
          o.xp = region.xp.position_at(T);
          if (!std::isfinite(o.x)) o.x = box.x_max;
          if (!std::isfinite(o.xp)) o.xp = box.x_max;
          o.censored = region.x.status != TrajectoryStatus::kAlive ||
                       region.xp.status != TrajectoryStatus::kAlive;
          return o;
        });
    std::vector<double> xs;
    std::vector<double> xps;
    std::int64_t censored = 0;
    for (const Out& o : outs) {
      xs.push_back(o.x / T);
      xps.push_back(o.xp / T);
      censored += o.censored ? 1 : 0;
    }
    if (censored > 0) {
      result.notes.push_back("T=" + format_number(T) + ": " + std::to_string(censored) +
                             " replications censored at the box edge");
    }
    for (int k = 0; k < 2; ++k) {
      EstimateReport r = make_row("slope", k == 0 ? "x_over_t" : "xp_over_t", options);
      r.lambda = rho;
      r.mu = 1.0 / rho;
      r.nu = 1.0;
      r.t = T;
      fill(r, summarize(k == 0 ? xs : xps));
      r.target = target;
      const double allowance = std::max(thresholds.get("slope.se_factor") * r.std_error,
                                        thresholds.get("slope.relative_allowance") * target);
      record(result, r, std::abs(r.estimate - target) <= allowance);
    }
  }
  return result;
}

ExperimentResult exp_touch(double lambda, std::span<const double> times,
                           const RunOptions& options, const Thresholds& thresholds) {
  check_options(options);
  check_positive(lambda, "lambda");
  require(!times.empty(), "time grid must not be empty");
  require(std::is_sorted(times.begin(), times.end()), "time grid must be increasing");
  for (double T : times) check_positive(T, "T");
  const double t_max = times.back();
  const Intensities rates{lambda, 1.0 / lambda, 1.0};
  const Box box{2.0 * t_max / (lambda * lambda) * (1.0 + options.margin) + 10.0, t_max};

  const std::vector<double> meet_times =
      run_replications<double>(options.reps, options.workers, [&](std::uint64_t rep) {
        const Instance inst = sample_instance(rates, box, {options.seed, rep});
        const RegionO region = trace_pair(inst, 0.0, 0.0);
        return region.meeting.met ? region.meeting.t_star : kInf;
      });

  ExperimentResult result;
  std::vector<EstimateReport> rows;
  for (double T : times) {
    std::vector<double> met;
    met.reserve(meet_times.size());
    for (double ts : meet_times) met.push_back(ts <= T ? 1.0 : 0.0);
    EstimateReport r = make_row("touch", "met_fraction", options);
    r.lambda = lambda;
    r.mu = 1.0 / lambda;
    r.nu = 1.0;
    r.t = T;
    fill(r, summarize(met));
    rows.push_back(r);
  }

  bool ok = true;
  for (std::size_t i = 1; i < rows.size(); ++i) {
    if (rows[i].estimate < rows[i - 1].estimate) {
      ok = false;
      result.notes.push_back("meeting fraction decreases between T=" + format_number(rows[i - 1].t) +
                             " and T=" + format_number(rows[i].t));
    }
  }
  if (rows.size() > 1) {
    const double rise = rows.back().estimate - rows.front().estimate;
    const double se = std::hypot(rows.back().std_error, rows.front().std_error);
    const double need = thresholds.get("touch.increase_se_factor") * se;
    result.notes.push_back("meeting fraction rises by " + format_number(rise) + " over the grid (" +
                           format_number(need) + " required)");
    if (!(rise > need)) ok = false;
  }
  const double floor = thresholds.get("touch.min_fraction_at_max_t");
  result.notes.push_back("fraction at T=" + format_number(t_max) + " is " +
                         format_number(rows.back().estimate) + ", fixture floor " +
                         format_number(floor));
  if (!(rows.back().estimate > floor)) ok = false;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (i + 1 == rows.size()) {
      record(result, rows[i], ok, "meeting-curve checks failed");
    } else {
      result.rows.push_back(rows[i]);
    }
  }
  return result;
}

AreaReport exp_area_identity(AreaForm form, double intensity, double x, double t,
                             const RunOptions& options, const Thresholds& thresholds) {
  check_options(options);
  check_positive(intensity, "intensity");
  require(std::isfinite(x) && x >= 0.0, "x must be finite and >= 0");
  require(std::isfinite(t) && t >= 0.0, "t must be finite and >= 0");

  const double k = intensity;
  Intensities rates;
  Box box;
  const double grow = 1.0 + options.margin;
  if (form == AreaForm::kTau) {
    rates = {k, k, k * k};
    const double side = std::max({x, t, 1.0}) * grow;
    box = {side, side};
  } else {
    rates = {k, 1.0 / k, 1.0};
    box = {std::max({x, t / (k * k), 1.0}) * grow, std::max({t, k * k * x, 1.0}) * grow};
  }

  struct Pair {
    double lhs = 0.0;
    double rhs = 0.0;
  };
  const std::vector<Pair> pairs =
      run_replications<Pair>(options.reps, options.workers, [&](std::uint64_t rep) {
        const Instance inst = sample_instance(rates, box, {options.seed, rep});
        const RegionO region = trace_pair(inst, 0.0, 0.0);
        Pair p;
        p.lhs = enclosed_area(region, x, t);
        if (form == AreaForm::kTau) {
          const double a1 = positive_part(x - region.x.position_at(t));
          const double a2 = positive_part(t - region.x.position_at(x));
          p.rhs = (x + t) / (2.0 * k) - (a1 + a2) / (2.0 * k);
        } else {
          const double a1 = positive_part(x - region.x.position_at(t));
          const double a2 = positive_part(t / (k * k) - region.x.position_at(k * k * x));
          p.rhs = (k * x + t / k) / 2.0 - k / 2.0 * (a1 + a2);
        }
        return p;
      });

  std::vector<double> lhs;
  std::vector<double> rhs;
  std::vector<double> diff;
  for (const Pair& p : pairs) {
    lhs.push_back(p.lhs);
    rhs.push_back(p.rhs);
    diff.push_back(p.lhs - p.rhs);
  }

  AreaReport report;
  auto row = [&](const std::string& statistic) {
    EstimateReport r = make_row(form == AreaForm::kTau ? "area" : "area-lambda", statistic, options);
    r.lambda = rates.lambda;
    r.mu = rates.mu;
    r.nu = rates.nu;
    r.x = x;
    r.t = t;
    return r;
  };
  report.lhs = row("area_mean");
  fill(report.lhs, summarize(lhs));
  report.rhs = row("identity_rhs_mean");
  fill(report.rhs, summarize(rhs));
  report.paired_diff = row("paired_difference");
  const Summary d = summarize(diff);
  fill(report.paired_diff, d);
  report.paired_diff.target = 0.0;
  report.pass = std::abs(d.mean) <= thresholds.get("area.se_factor") * d.std_error;
  report.paired_diff.pass = report.pass;
  return report;
}

ExperimentResult area_result(const AreaReport& report) {
  ExperimentResult result;
  result.rows = {report.lhs, report.rhs, report.paired_diff};
  result.pass = report.pass;
  if (!report.pass) {
    result.notes.push_back("paired difference " + format_number(report.paired_diff.estimate) +
                           " exceeds the allowed multiple of its std error " +
                           format_number(report.paired_diff.std_error));
  }
  return result;
}

ExperimentResult exp_area_identity_seeds(AreaForm form, double intensity, double x, double t,
                                         int seeds, const RunOptions& options,
                                         const Thresholds& thresholds) {
  require(seeds >= 2, "need at least two master seeds");
  std::vector<double> z;
  int individual = 0;
  for (int k = 0; k < seeds; ++k) {
    RunOptions o = options;
    o.seed = options.seed + static_cast<std::uint64_t>(k);
    const AreaReport r = exp_area_identity(form, intensity, x, t, o, thresholds);
    const double se = r.paired_diff.std_error;
    z.push_back(se > 0.0 ? r.paired_diff.estimate / se : 0.0);
    individual += r.pass ? 1 : 0;
  }
  const Summary s = summarize(z);
  ExperimentResult result;
  EstimateReport row = make_row(form == AreaForm::kTau ? "area" : "area-lambda",
                                "standardized_difference_mean", options);
  row.lambda = intensity;
  row.mu = form == AreaForm::kTau ? intensity : 1.0 / intensity;
  row.nu = form == AreaForm::kTau ? intensity * intensity : 1.0;
  row.x = x;
  row.t = t;
  fill(row, s);
  row.target = 0.0;
  const double allowed = thresholds.get("area.seed_z_factor") / std::sqrt(static_cast<double>(seeds));
  result.notes.push_back(std::to_string(individual) + " of " + std::to_string(seeds) +
                         " seeds pass individually; mean z " + format_number(s.mean) +
                         ", allowed " + format_number(allowed));
  record(result, row, std::abs(s.mean) <= allowed);
  return result;
}

ExperimentResult exp_area_asymptotics(double lambda, double x0, double horizon,
                                      const RunOptions& options, const Thresholds& thresholds) {
  check_options(options);
  check_positive(lambda, "lambda");
  require(std::isfinite(x0) && x0 >= 0.0, "x0 must be finite and >= 0");
  check_positive(horizon, "horizon");
  const double t0 = lambda * lambda * x0;
  require(t0 <= horizon, "horizon must reach lambda^2 * x0");

  const Intensities rates{lambda, 1.0 / lambda, 1.0};
  // Wide enough that X'_t for t <= t0 stays inside in all but rare cases.
  const Box box{10.0 * std::max(x0, t0 / (lambda * lambda)) * (1.0 + options.margin) + 10.0, horizon};

  struct Out {
    double strip_area = 0.0;
    double slab_area = 0.0;
    double x_at_t0 = 0.0;
    bool open_at_horizon = false;
    bool slab_censored = false;
  };
  const std::vector<Out> outs =
      run_replications<Out>(options.reps, options.workers, [&](std::uint64_t rep) {
        const Instance inst = sample_instance(rates, box, {options.seed, rep});
        const RegionO region = trace_pair(inst, 0.0, 0.0);
        Out o;
        o.strip_area = enclosed_area(region, x0, horizon);
        o.slab_area = enclosed_area(region, box.x_max, t0);
        o.x_at_t0 = region.x.position_at(t0);
        if (!std::isfinite(o.x_at_t0)) {
          o.x_at_t0 = box.x_max;
          o.slab_censored = true;
        }
        o.open_at_horizon = !(region.meeting.met && region.meeting.t_star <= horizon) &&
                            region.x.position_at(horizon) < x0;
        const double xp_t0 = region.xp.position_at(t0);
        const bool met_by_t0 = region.meeting.met && region.meeting.t_star <= t0;
        if (!met_by_t0 && !(xp_t0 <= box.x_max)) o.slab_censored = true;
        return o;
      });

  std::vector<double> strip;
  std::vector<double> slab;
  std::vector<double> strip_rhs;
  std::vector<double> slab_rhs;
  std::int64_t open = 0;
  std::int64_t censored = 0;
  for (const Out& o : outs) {
    strip.push_back(o.strip_area);
    slab.push_back(o.slab_area);
    strip_rhs.push_back((lambda * x0 + lambda * o.x_at_t0) / 2.0);
    slab_rhs.push_back((t0 / lambda + lambda * o.x_at_t0) / 2.0);
    open += o.open_at_horizon ? 1 : 0;
    censored += o.slab_censored ? 1 : 0;
  }
  const double n = static_cast<double>(outs.size());
  const double open_fraction = static_cast<double>(open) / n;
  // An unfinished replication is charged at most one more horizon of full
  // strip width.
  const double truncation_bound = open_fraction * x0 * horizon;
  const double slab_bound = static_cast<double>(censored) / n * box.x_max * t0;

  ExperimentResult result;
  auto row = [&](const std::string& statistic) {
    EstimateReport r = make_row("area-asymptotics", statistic, options);
    r.lambda = lambda;
    r.mu = 1.0 / lambda;
    r.nu = 1.0;
    r.x = x0;
    r.t = horizon;
    return r;
  };
  const double factor = thresholds.get("asymptotics.se_factor");
  auto compare = [&](const std::string& name, std::span<const double> lhs,
                     std::span<const double> rhs, double bound) {
    const Summary l = summarize(lhs);
    const Summary r = summarize(rhs);
    EstimateReport lrow = row(name + "_area_mean");
    fill(lrow, l);
    lrow.target = r.mean;
    EstimateReport rrow = row(name + "_limit_mean");
    fill(rrow, r);
    result.rows.push_back(rrow);
    const double allowed = factor * std::hypot(l.std_error, r.std_error) + bound;
    result.notes.push_back(name + ": |area - limit| = " + format_number(std::abs(l.mean - r.mean)) +
                           ", allowed " + format_number(allowed) + " (truncation bound " +
                           format_number(bound) + ")");
    record(result, lrow, std::abs(l.mean - r.mean) <= allowed);
  };
  compare("strip", strip, strip_rhs, truncation_bound);
  compare("slab", slab, slab_rhs, slab_bound);

  EstimateReport trunc = row("open_at_horizon_fraction");
  trunc.estimate = open_fraction;
  trunc.std_error = std::sqrt(open_fraction * (1.0 - open_fraction) / n);
  result.rows.push_back(trunc);
  EstimateReport bound_row = row("truncation_bound");
  bound_row.estimate = truncation_bound;
  result.rows.push_back(bound_row);
  return result;
}

ExperimentResult exp_area_ratio(double lambda, std::span<const double> xs,
                                const RunOptions& options, const Thresholds& thresholds) {
  check_options(options);
  check_positive(lambda, "lambda");
  require(!xs.empty(), "x grid must not be empty");
  require(std::is_sorted(xs.begin(), xs.end()), "x grid must be increasing");
  const Intensities rates{lambda, 1.0 / lambda, 1.0};
  const double l2 = lambda * lambda;
  const double factor = thresholds.get("asymptotics.se_factor");

  ExperimentResult result;
  std::vector<EstimateReport> trend;
  for (double x : xs) {
    check_positive(x, "x");
    const Box box{x * (1.0 + options.margin), l2 * x * (1.0 + options.margin)};
    struct Pair {
      double direct = 0.0;
      double identity = 0.0;
    };
    // With t = lambda^2 x the area identity reads
    // E Area = lambda x - lambda E(x - X_t)+.
    const std::vector<Pair> pairs =
        run_replications<Pair>(options.reps, options.workers, [&](std::uint64_t rep) {
          const Instance inst = sample_instance(rates, box, {options.seed, rep});
          const RegionO region = trace_pair(inst, 0.0, 0.0);
          Pair p;
          p.direct = enclosed_area(region, x, l2 * x) / x;
          p.identity = lambda - lambda * positive_part(x - region.x.position_at(l2 * x)) / x;
          return p;
        });
    std::vector<double> direct;
    std::vector<double> identity;
    std::vector<double> diff;
    for (const Pair& p : pairs) {
      direct.push_back(p.direct);
      identity.push_back(p.identity);
      diff.push_back(p.direct - p.identity);
    }
    auto row = [&](const std::string& statistic) {
      EstimateReport r = make_row("area-ratio", statistic, options);
      r.lambda = lambda;
      r.mu = 1.0 / lambda;
      r.nu = 1.0;
      r.x = x;
      r.t = l2 * x;
      return r;
    };
    EstimateReport d = row("area_over_x");
    fill(d, summarize(direct));
    d.target = lambda;
    result.rows.push_back(d);

    EstimateReport paired = row("paired_difference_over_x");
    const Summary ds = summarize(diff);
    fill(paired, ds);
    paired.target = 0.0;
    record(result, paired, std::abs(ds.mean) <= factor * ds.std_error,
           "direct and identity estimates disagree");

    EstimateReport r = row("identity_area_over_x");
    fill(r, summarize(identity));
    r.target = lambda;
    trend.push_back(r);
  }
  bool ok = true;
  const double slack = thresholds.get("asymptotics.ratio_inversion_se");
  for (std::size_t i = 1; i < trend.size(); ++i) {
    const double prev = std::abs(trend[i - 1].estimate - lambda);
    const double cur = std::abs(trend[i].estimate - lambda);
    if (!(cur < prev + slack * std::hypot(trend[i - 1].std_error, trend[i].std_error))) {
      ok = false;
      result.notes.push_back("area ratio does not move toward " + format_number(lambda) +
                             " between x=" + format_number(trend[i - 1].x) + " and x=" +
                             format_number(trend[i].x));
    }
  }
  for (std::size_t i = 0; i < trend.size(); ++i) {
    if (i + 1 == trend.size()) {
      record(result, trend[i], ok, "ratio is not monotone in x");
    } else {
      result.rows.push_back(trend[i]);
    }
  }
  return result;
}

ExperimentResult burke_check(double lambda, double mu, double x, double t,
                             const RunOptions& options, const Thresholds& thresholds) {
  check_options(options);
  check_positive(lambda, "lambda");
  check_positive(mu, "mu");
  check_positive(x, "x");
  check_positive(t, "t");
  ExperimentResult result;
  if (std::abs(lambda * mu - 1.0) > 1e-12) {
    result.applicable = false;
    result.notes.push_back("not applicable: requires lambda * mu = 1");
    return result;
  }
  const Intensities rates{lambda, mu, 1.0};
  const Box box{x, t};
  struct Counts {
    double north = 0.0;
    double east = 0.0;
  };
  const std::vector<Counts> counts =
      run_replications<Counts>(options.reps, options.workers, [&](std::uint64_t rep) {
        const Instance inst = sample_instance(rates, box, {options.seed, rep});
        ExitCounter counter;
        sweep(inst, counter);
        return Counts{static_cast<double>(counter.north), static_cast<double>(counter.east)};
      });
  std::vector<double> north;
  std::vector<double> east;
  for (const Counts& c : counts) {
    north.push_back(c.north);
    east.push_back(c.east);
  }

  auto row = [&](const std::string& statistic) {
    EstimateReport r = make_row("burke", statistic, options);
    r.lambda = lambda;
    r.mu = mu;
    r.nu = 1.0;
    r.x = x;
    r.t = t;
    return r;
  };
  const double se_factor = thresholds.get("burke.se_factor");
  const double dmin = thresholds.get("burke.dispersion_min");
  const double dmax = thresholds.get("burke.dispersion_max");
  auto counts_rows = [&](const std::string& side, std::span<const double> values, double target) {
    EstimateReport m = row(side + "_mean");
    const Summary s = summarize(values);
    fill(m, s);
    m.target = target;
    record(result, m, std::abs(s.mean - target) <= se_factor * s.std_error);
    EstimateReport d = row(side + "_dispersion");
    d.target = 1.0;
    if (s.mean > 0.0) {
      const DispersionEstimate de = dispersion(values);
      d.estimate = de.index;
      d.std_error = de.std_error;
    }
    record(result, d, d.estimate >= dmin && d.estimate <= dmax);
  };
  counts_rows("north", north, lambda * x);
  counts_rows("east", east, mu * t);
  const CovarianceEstimate cov = covariance(north, east);
  EstimateReport c = row("north_east_covariance");
  c.estimate = cov.covariance;
  c.std_error = cov.std_error;
  c.target = 0.0;
  record(result, c,
         std::abs(cov.covariance) <= thresholds.get("burke.covariance_se_factor") * cov.std_error);
  return result;
}

}  // namespace hamlab
