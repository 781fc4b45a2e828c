#include "strongrate/report.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <sstream>

#include "strongrate/drift.hpp"
#include "strongrate/error.hpp"
#include "strongrate/experiments.hpp"
#include "strongrate/seminorm.hpp"

namespace strongrate {

namespace {

using ojson = nlohmann::ordered_json;

std::string g17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string fmt(const char* f, double a, double b) {
  char buf[96];
  std::snprintf(buf, sizeof buf, f, a, b);
  return buf;
}

ojson fit_json(const std::optional<RateFit>& fit) {
  if (!fit) return nullptr;
  return ojson{{"slope", fit->slope}, {"slope_stderr", fit->slope_stderr}, {"intercept", fit->intercept}};
}

std::string slope_summary(const char* what, const RateSeries& s) {
  if (s.exact) return std::string(what) + ": exact (errors all zero)";
  if (!s.fit) return std::string(what) + ": no slope (fewer than 3 positive errors)";
  return std::string(what) + ": slope " + fmt("%.4f +/- %.4f", s.fit->slope, s.fit->slope_stderr);
}

void run_rate(const RunConfig& c, Report& r) {
  const EulerRateResult res = estimate_euler_rate(c.experiment());
  std::string csv = "n,error,stderr,reps\n";
  ojson rows = ojson::array();
  for (const auto& e : res.series.entries) {
    const auto used = res.reps - res.aborted;
    rows.push_back({{"n", static_cast<long long>(e.n)}, {"error", e.error}, {"stderr", e.std_error}, {"reps", used}});
    csv += std::to_string(static_cast<long long>(e.n)) + "," + g17(e.error) + "," + g17(e.std_error) + "," + std::to_string(used) + "\n";
  }
  r.json["results"] = std::move(rows);
  r.json["exact"] = res.series.exact;
  r.json["fit"] = fit_json(res.series.fit);
  r.json["reps"] = res.reps;
  r.json["aborted"] = res.aborted;
  r.csv = std::move(csv);
  r.summary = slope_summary("rate", res.series);
  if (res.series.fit && c.drift == "mu-s") r.summary += fmt(" (target %.4f)", -(1.0 + c.s) / 2.0, 0);
}

void run_couple(const RunConfig& c, Report& r) {
  const CouplingResult res = estimate_coupling_distance(c.experiment());
  std::string csv = "n,error,stderr,reps,fooling_bound\n";
  ojson rows = ojson::array();
  const auto used = res.reps - res.aborted;
  for (std::size_t i = 0; i < res.series.entries.size(); ++i) {
    const auto& e = res.series.entries[i];
    rows.push_back({{"n", static_cast<long long>(e.n)},
                    {"error", e.error},
                    {"stderr", e.std_error},
                    {"reps", used},
                    {"fooling_bound", res.fooling_bound[i]},
                    {"grid_points", res.grid_points[i]}});
    csv += std::to_string(static_cast<long long>(e.n)) + "," + g17(e.error) + "," + g17(e.std_error) + "," + std::to_string(used) + "," +
           g17(res.fooling_bound[i]) + "\n";
  }
  r.json["results"] = std::move(rows);
  r.json["exact"] = res.series.exact;
  r.json["fit"] = fit_json(res.series.fit);
  r.json["reps"] = res.reps;
  r.json["aborted"] = res.aborted;
  r.csv = std::move(csv);
  r.summary = slope_summary("couple", res.series);
}

void run_kappa(const RunConfig& c, Report& r) {
  KappaReport k = kappa_mc(c.z, static_cast<std::size_t>(c.reps), static_cast<std::size_t>(c.fine_steps),
                           c.seed, c.workers);
  // The closed-form second moment is for z = 1 only.
  const bool comparable = c.z == 1.0;
  const double diff = k.mc_value - k.quadrature_value;
  const bool agree = comparable && std::abs(diff) <= 3.0 * k.mc_stderr;
  r.json["results"] = {{"z", k.z},
                       {"quadrature", comparable ? ojson(k.quadrature_value) : ojson(nullptr)},
                       {"mc_value", k.mc_value},
                       {"mc_stderr", k.mc_stderr},
                       {"reps", k.reps},
                       {"fine_steps", k.fine_steps},
                       {"max_abs_kappa", k.max_abs_kappa},
                       {"bound_violations", k.bound_violations},
                       {"agree_within_3_stderr", comparable ? ojson(agree) : ojson(nullptr)}};
  r.csv = "z,quadrature,mc_value,mc_stderr,reps\n" + g17(k.z) + "," +
          (comparable ? g17(k.quadrature_value) : std::string()) + "," + g17(k.mc_value) + "," +
          g17(k.mc_stderr) + "," + std::to_string(k.reps) + "\n";
  if (comparable) {
    r.summary = "kappa: quadrature " + fmt("%.8f", k.quadrature_value, 0) + ", mc " +
                fmt("%.6f +/- %.6f", k.mc_value, k.mc_stderr) + (agree ? ", agree" : ", DISAGREE") +
                fmt(" (%.2f stderr)", k.mc_stderr > 0 ? std::abs(diff) / k.mc_stderr : 0.0, 0);
  } else {
    r.summary = "kappa: z = " + fmt("%g", c.z, 0) + ", mc " + fmt("%.6f +/- %.6f", k.mc_value, k.mc_stderr) +
                " (no quadrature reference for z != 1)";
  }
}

void run_occupation(const RunConfig& c, Report& r) {
  const DriftSpec mu = make_drift(c.drift_kind());
  const OccupationResult res =
      occupation_mismatch(mu, c.x0, c.xi, c.deltas, static_cast<std::size_t>(c.reps),
                          static_cast<std::size_t>(c.fine_steps), c.seed, c.workers);
  const auto used = res.reps - res.aborted;
  std::string csv = "delta,second_moment,stderr,reps\n";
  ojson rows = ojson::array();
  for (const auto& e : res.entries) {
    rows.push_back({{"delta", e.delta}, {"second_moment", e.second_moment}, {"stderr", e.std_error}, {"reps", used}});
    csv += g17(e.delta) + "," + g17(e.second_moment) + "," + g17(e.std_error) + "," + std::to_string(used) + "\n";
  }
  r.json["results"] = std::move(rows);
  r.json["fit"] = fit_json(res.fit);
  r.json["reps"] = res.reps;
  r.json["aborted"] = res.aborted;
  r.csv = std::move(csv);
  r.summary = res.fit ? "occupation: slope " + fmt("%.4f +/- %.4f", res.fit->slope, res.fit->slope_stderr)
                      : std::string("occupation: no slope (moments not all positive)");
}

void run_transform_check(const RunConfig& c, Report& r) {
  const DriftSpec mu = make_drift(c.drift_kind());
  const TransformCheck t =
      transform_check(mu, c.x0, c.n_list, static_cast<std::size_t>(c.reps), c.seed, c.workers);
  const auto used = t.reps - t.aborted;
  std::string csv = "fine_steps,mean_abs_diff,stderr,reps\n";
  ojson levels = ojson::array();
  for (const auto& l : t.levels) {
    levels.push_back({{"fine_steps", l.fine_steps}, {"mean_abs_diff", l.mean_abs_diff}, {"stderr", l.std_error}});
    csv += std::to_string(l.fine_steps) + "," + g17(l.mean_abs_diff) + "," + g17(l.std_error) + "," +
           std::to_string(used) + "\n";
  }
  const bool bounds_ok = t.gprime_bounds_hold;
  r.json["results"] = {{"x_max", t.x_max},
                       {"step", t.step},
                       {"c1", t.c1},
                       {"c2", t.c2},
                       {"l1_norm", t.l1_norm},
                       {"l1_slack", t.l1_slack},
                       {"gprime_bounds_hold", bounds_ok},
                       {"roundtrip_max_error", t.roundtrip_max_error},
                       {"inverse_roundtrip_max_error", t.inverse_roundtrip_max_error},
                       {"b_lipschitz_estimate", t.b_lipschitz_estimate},
                       {"b_lipschitz_bound", t.b_lipschitz_bound},
                       {"levels", std::move(levels)}};
  r.json["reps"] = t.reps;
  r.json["aborted"] = t.aborted;
  r.csv = std::move(csv);
  bool decreasing = true;
  for (std::size_t i = 1; i < t.levels.size(); ++i) {
    decreasing = decreasing && t.levels[i].mean_abs_diff < t.levels[i - 1].mean_abs_diff;
  }
  r.summary = std::string("transform-check: G' bounds ") + (bounds_ok ? "hold" : "FAIL") + ", roundtrip " +
              fmt("%.2e", t.roundtrip_max_error, 0) + ", consistency " +
              (decreasing ? "decreasing" : "not decreasing") + " under refinement";
}

void run_sobolev(const RunConfig& c, Report& r) {
  const DriftSpec mu = make_drift(c.drift_kind());
  const SeminormStudy study = seminorm_refinement_study(mu, c.order, c.p, c.domain, c.mesh, c.doublings);
  std::string csv = "mesh,estimate,band_bound\n";
  ojson levels = ojson::array();
  for (const auto& l : study.levels) {
    levels.push_back({{"mesh", l.mesh}, {"estimate", l.estimate}, {"band_bound", l.band_bound}});
    csv += std::to_string(l.mesh) + "," + g17(l.estimate) + "," + g17(l.band_bound) + "\n";
  }
  ojson results = {{"order", c.order}, {"levels", std::move(levels)}, {"divergent", study.divergent}};
  if (c.drift == "mu-s") {
    // mu_s is the Fourier transform of h_s, so the Fourier side uses h_s itself.
    const double cutoffs[] = {1.0, 10.0, 100.0, 1000.0, 10000.0};
    const double s = c.s;
    const auto prof = seminorm_fourier_profile(c.order, [s](double x) { return eval_h(s, x); }, cutoffs);
    ojson fourier = ojson::array();
    for (std::size_t i = 0; i < prof.size(); ++i) fourier.push_back({{"cutoff", cutoffs[i]}, {"value", prof[i]}});
    results["fourier_side"] = std::move(fourier);
  }
  r.json["results"] = std::move(results);
  r.csv = std::move(csv);
  r.summary = "sobolev: order " + fmt("%g", c.order, 0) + ", finest estimate " +
              fmt("%.6g", study.levels.back().estimate, 0) +
              (study.divergent ? ", divergence indicated" : ", stable under refinement");
}

}  // namespace

std::string Report::json_text() const { return json.dump(2) + "\n"; }

Report run_verb(const RunConfig& config) {
  Report r;
  r.verb = config.verb;
  r.json["verb"] = config.verb;
  r.json["config"] = config.to_json();
  const auto t0 = std::chrono::steady_clock::now();
  if (config.verb == "rate") run_rate(config, r);
  else if (config.verb == "couple") run_couple(config, r);
  else if (config.verb == "kappa") run_kappa(config, r);
  else if (config.verb == "occupation") run_occupation(config, r);
  else if (config.verb == "transform-check") run_transform_check(config, r);
  else if (config.verb == "sobolev") run_sobolev(config, r);
  else throw ConfigError("unknown verb '" + config.verb + "'");
  r.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return r;
}

ReportFormat parse_report_format(const std::string& name) {
  if (name == "csv") return ReportFormat::csv;
  if (name == "json") return ReportFormat::json;
  if (name == "both") return ReportFormat::both;
  throw ConfigError("unknown format '" + name + "' (expected csv, json or both)");
}

namespace {

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  out << text;
  out.flush();
  if (!out) throw IoError("failed writing '" + path + "'");
}

}  // namespace

void write_report(const Report& report, const std::string& base, ReportFormat format) {
  if (base.empty()) throw IoError("empty output path");
  if (format != ReportFormat::json) write_text(base + ".csv", report.csv);
  if (format != ReportFormat::csv) write_text(base + ".json", report.json_text());
  ojson timing = {{"verb", report.verb}, {"wall_seconds", report.wall_seconds}};
  write_text(base + ".timing.json", timing.dump(2) + "\n");
}

}  // namespace strongrate
