#pragma once

// Batch execution of a RunConfig: runs the requested checks and writes
//   summary.csv         run_id,check,points,min_margin,pass
//   detail.csv          run_id,check,x,t,lhs,rhs,margin
//   plot_deviation.csv  x,deviation        (|f(x) - F(x)|)
//   plot_bound.csv      x,bound            (e^x / gamma)
//   corollary.csv       x,t,theorem_reading,corollary_reading,difference,sign
// Row order is fixed (check, x, t) whatever the thread count.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "rnstab/config.hpp"
#include "rnstab/csv.hpp"
#include "rnstab/verify.hpp"

namespace rnstab {

enum ExitCode : int { kExitOk = 0, kExitCheckFailed = 1, kExitConfig = 2, kExitTruncation = 3 };

inline constexpr const char* kOutputDirEnv = "RNSTAB_OUTPUT_DIR";

inline std::filesystem::path resolve_output_dir(const RunConfig& cfg) {
  if (cfg.output_dir) return *cfg.output_dir;
  if (const char* env = std::getenv(kOutputDirEnv); env != nullptr && *env != '\0') return env;
  return "rnstab_out";
}

struct RunResult {
  int exit_code = kExitOk;
  std::vector<CheckSummary> summary;
  std::string message;
};

namespace detail {

inline std::ofstream open_out(const std::filesystem::path& p) {
  std::ofstream os(p, std::ios::binary | std::ios::trunc);
  if (!os) throw std::runtime_error("cannot write " + p.string());
  return os;
}

inline bool informational(const std::string& check) { return check == "corollary_readings"; }

}  // namespace detail

/// Runs every requested check. A TruncationFailure aborts the run before any
/// file is written.
inline RunResult run(const RunConfig& cfg, const std::filesystem::path& out_dir) {
  RunResult result;
  const Scenario sc = scenario_of(cfg);
  const Spectrum& spec = cfg.spectrum;
  const Lattice lat = cfg.lattice();
  const std::vector<double> tgrid = cfg.t_points();

  VerificationReport report;
  std::vector<DeviationPoint> series;
  try {
    if (cfg.wants(CheckKind::Hypothesis)) {
      report.merge(check_hypothesis(sc, cfg.family, cfg.space, spec.coefficients(), lat, tgrid,
                                    cfg.tolerance, cfg.threads));
    }
    if (cfg.wants(CheckKind::Telescoping)) {
      report.merge(check_telescoping(sc, spec, lat, cfg.telescoping, cfg.threads));
    }
    if (cfg.wants(CheckKind::Intermediate)) {
      report.merge(check_intermediate_bounds(sc, spec, cfg.family, cfg.space, cfg.truncation, lat,
                                             tgrid, cfg.tolerance, cfg.threads));
    }
    if (cfg.wants(CheckKind::Conclusion)) {
      report.merge(check_conclusion(sc, spec, cfg.family, cfg.space, cfg.truncation, lat, tgrid,
                                    cfg.tolerance, cfg.threads));
      series = deviation_series(sc, spec, cfg.space, cfg.truncation, lat, cfg.threads);
    }
    if (cfg.wants(CheckKind::Corollary)) {
      std::vector<double> xs;
      for (std::size_t i = 0; i < lat.size(); ++i) xs.push_back(lattice_point(sc, lat.at(i)));
      report.merge(check_corollary_readings(spec, xs, tgrid));
    }
  } catch (const TruncationFailure& e) {
    result.exit_code = kExitTruncation;
    result.message = std::string(e.what()) + " (achieved " + csv::real(e.achieved_bound()) + ")";
    return result;
  }
  report.sort();
  result.summary = report.summary();

  std::filesystem::create_directories(out_dir);
  {
    auto os = detail::open_out(out_dir / "summary.csv");
    csv::Writer w(os);
    w.row("run_id", "check", "points", "min_margin", "pass");
    for (const CheckSummary& s : result.summary) {
      w.row(cfg.run_id, s.check, s.points, s.min_margin, s.pass);
    }
  }
  {
    auto os = detail::open_out(out_dir / "detail.csv");
    csv::Writer w(os);
    w.row("run_id", "check", "x", "t", "lhs", "rhs", "margin");
    for (const CheckRow& r : report.rows()) w.row(cfg.run_id, r.check, r.x, r.t, r.lhs, r.rhs, r.margin);
  }
  if (cfg.wants(CheckKind::Conclusion)) {
    auto dev = detail::open_out(out_dir / "plot_deviation.csv");
    auto bnd = detail::open_out(out_dir / "plot_bound.csv");
    csv::Writer wd(dev), wb(bnd);
    wd.row("x", "deviation");
    wb.row("x", "bound");
    for (const DeviationPoint& p : series) {
      wd.row(p.x, p.deviation);
      wb.row(p.x, p.bound);
    }
  }
  if (cfg.wants(CheckKind::Corollary)) {
    auto os = detail::open_out(out_dir / "corollary.csv");
    csv::Writer w(os);
    w.row("x", "t", "theorem_reading", "corollary_reading", "difference", "sign");
    for (const CheckRow& r : report.rows()) {
      if (!detail::informational(r.check)) continue;
      const int sign = r.margin > 0.0 ? 1 : (r.margin < 0.0 ? -1 : 0);
      w.row(r.x, r.t, r.lhs, r.rhs, r.margin, sign);
    }
  }

  std::size_t failed = 0;
  for (const CheckSummary& s : result.summary) {
    if (!s.pass && !detail::informational(s.check)) ++failed;
  }
  result.exit_code = failed == 0 ? kExitOk : kExitCheckFailed;
  result.message = failed == 0 ? "all checks passed" : std::to_string(failed) + " check(s) failed";
  return result;
}

}  // namespace rnstab
