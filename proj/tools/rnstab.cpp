// rnstab: command-line front end.
//
//   rnstab params  (--p P --q Q | --alpha A --beta B | --config FILE)
//   rnstab verify  --config FILE [--output-dir DIR] [--threads N]
//   rnstab axioms  [--samples N] [--seed S] [--dimension D] [--form ratio|eps0_shift]
//   rnstab sweep   [--alpha-min A0 --alpha-max A1 --beta-min B0 --beta-max B1 --steps N]
//                  [--output FILE]
//
// Exit codes: 0 success, 1 failed check, 2 configuration or validity error,
// 3 truncation failure.

#include <cmath>
#include <fstream>
#include <iostream>
#include <limits>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "rnstab/rnstab.hpp"

namespace {

using namespace rnstab;

double real_arg(const std::string& name, const std::string& text) {
  const auto v = parse_real_literal(text);
  if (!v) throw ConfigError("--" + name + ": expected a real or fraction, got '" + text + "'");
  return *v;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot read config file " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void print_spectrum(const Spectrum& s) {
  std::cout << "p=" << csv::real(s.p) << "\n"
            << "q=" << csv::real(s.q) << "\n"
            << "alpha=" << csv::real(s.alpha) << "\n"
            << "beta=" << csv::real(s.beta) << "\n"
            << "gamma=" << csv::real(s.gamma) << "\n";
}

struct ParamsArgs {
  std::string p, q, alpha, beta, config;
};

int cmd_params(const ParamsArgs& a) {
  const bool pq = !a.p.empty() || !a.q.empty();
  const bool ab = !a.alpha.empty() || !a.beta.empty();
  const int sources = int(pq) + int(ab) + int(!a.config.empty());
  if (sources != 1) {
    throw ConfigError("params: give exactly one of --p/--q, --alpha/--beta, --config");
  }
  if (!a.config.empty()) {
    print_spectrum(parse_config(read_file(a.config)).spectrum);
  } else if (pq) {
    if (a.p.empty() || a.q.empty()) throw ConfigError("params: --p and --q go together");
    print_spectrum(solve_characteristic({real_arg("p", a.p), real_arg("q", a.q)}));
  } else {
    if (a.alpha.empty() || a.beta.empty()) throw ConfigError("params: --alpha and --beta go together");
    print_spectrum(spectrum_from_roots(real_arg("alpha", a.alpha), real_arg("beta", a.beta)));
  }
  return kExitOk;
}

struct VerifyArgs {
  std::string config;
  std::string output_dir;
  unsigned threads = 0;
};

int cmd_verify(const VerifyArgs& a) {
  RunConfig cfg = parse_config(read_file(a.config));
  if (!a.output_dir.empty()) cfg.output_dir = a.output_dir;
  if (a.threads > 0) cfg.threads = a.threads;
  const auto dir = resolve_output_dir(cfg);
  const RunResult res = run(cfg, dir);
  for (const CheckSummary& s : res.summary) {
    std::cout << (s.pass ? "PASS " : "FAIL ") << s.check << "  points=" << s.points
              << "  min_margin=" << csv::real(s.min_margin) << "\n";
  }
  std::cout << res.message << "\n";
  if (res.exit_code != kExitTruncation) std::cout << "output: " << dir.string() << "\n";
  return res.exit_code;
}

struct AxiomArgs {
  std::size_t samples = 1000;
  std::uint64_t seed = 7;
  std::size_t dimension = 2;
  std::string form = "ratio";
  double tol = 1e-12;
};

int cmd_axioms(const AxiomArgs& a) {
  RNSpace space;
  space.dimension = a.dimension;
  if (a.form == "ratio") {
    space.form = InducedForm::Ratio;
  } else if (a.form == "eps0_shift") {
    space.form = InducedForm::Eps0Shift;
  } else {
    throw ConfigError("--form must be ratio or eps0_shift");
  }
  const auto samples = sample_rn_pairs(a.dimension, a.samples, a.seed);
  const auto grid = default_tgrid();
  bool ok = true;

  const auto rn = check_rn_axioms(space, samples, grid, a.tol);
  std::cout << (rn.empty() ? "PASS" : "FAIL") << " rn-axioms form=" << a.form
            << " samples=" << a.samples << " violations=" << rn.size() << "\n";
  for (std::size_t i = 0; i < std::min<std::size_t>(rn.size(), 10); ++i) {
    std::cout << "  " << rn[i].axiom << " sample=" << rn[i].sample << " t=" << csv::real(rn[i].t)
              << " lhs=" << csv::real(rn[i].lhs) << " rhs=" << csv::real(rn[i].rhs) << "\n";
  }
  ok = ok && rn.empty();

  for (TNorm T : {TNorm::Minimum, TNorm::Product}) {
    const double tol = T == TNorm::Minimum ? 0.0 : 4.0 * std::numeric_limits<double>::epsilon();
    const auto tv = check_tnorm_axioms(T, a.samples, a.seed, tol);
    std::cout << (tv.empty() ? "PASS" : "FAIL") << " tnorm-axioms " << to_string(T)
              << " samples=" << a.samples << " violations=" << tv.size() << "\n";
    ok = ok && tv.empty();
  }
  return ok ? kExitOk : kExitCheckFailed;
}

struct SweepArgs {
  double alpha_min = -0.95, alpha_max = 0.95;
  double beta_min = -0.95, beta_max = 0.95;
  std::size_t steps = 39;
  std::string output;
};

int cmd_sweep(const SweepArgs& a) {
  if (a.steps < 2) throw ConfigError("--steps must be >= 2");
  std::ofstream file;
  std::ostream* os = &std::cout;
  if (!a.output.empty()) {
    file.open(a.output, std::ios::binary | std::ios::trunc);
    if (!file) throw ConfigError("cannot write " + a.output);
    os = &file;
  }
  csv::Writer w(*os);
  w.row("alpha", "beta", "p", "q", "gamma", "status");
  double lo = std::numeric_limits<double>::infinity(), hi = -lo;
  std::size_t valid = 0;
  const double n = static_cast<double>(a.steps - 1);
  for (std::size_t i = 0; i < a.steps; ++i) {
    const double alpha = a.alpha_min + (a.alpha_max - a.alpha_min) * static_cast<double>(i) / n;
    for (std::size_t j = 0; j < a.steps; ++j) {
      const double beta = a.beta_min + (a.beta_max - a.beta_min) * static_cast<double>(j) / n;
      try {
        const Spectrum s = spectrum_from_roots(alpha, beta);
        w.row(alpha, beta, s.p, s.q, s.gamma, "ok");
        lo = std::min(lo, s.gamma);
        hi = std::max(hi, s.gamma);
        ++valid;
      } catch (const OutsideValidityRegion&) {
        w.row(alpha, beta, alpha + beta, alpha * beta, std::numeric_limits<double>::quiet_NaN(),
              "outside_validity_region");
      }
    }
  }
  std::cerr << "valid=" << valid << " gamma_min=" << csv::real(lo) << " gamma_max=" << csv::real(hi)
            << "\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Constructive Hyers-Ulam stability checks for f(x) = p f(x-1) - q f(x-2)"};
  app.require_subcommand(1);

  ParamsArgs pa;
  auto* params = app.add_subcommand("params", "print roots and the stability constant gamma");
  params->add_option("--p", pa.p, "coefficient p (decimal or fraction)");
  params->add_option("--q", pa.q, "coefficient q (decimal or fraction)");
  params->add_option("--alpha", pa.alpha, "larger-magnitude root");
  params->add_option("--beta", pa.beta, "smaller-magnitude root");
  params->add_option("--config", pa.config, "read the equation from a config file");

  VerifyArgs va;
  auto* verify = app.add_subcommand("verify", "run the check suite described by a config file");
  verify->add_option("--config", va.config, "config file")->required();
  verify->add_option("--output-dir", va.output_dir, "override the output directory");
  verify->add_option("--threads", va.threads, "worker threads (overrides the config)");

  AxiomArgs aa;
  auto* axioms = app.add_subcommand("axioms", "randomized RN-space and t-norm axiom harness");
  axioms->add_option("--samples", aa.samples, "sample count")->capture_default_str();
  axioms->add_option("--seed", aa.seed, "sampler seed")->capture_default_str();
  axioms->add_option("--dimension", aa.dimension, "carrier dimension")->capture_default_str();
  axioms->add_option("--form", aa.form, "ratio or eps0_shift")->capture_default_str();
  axioms->add_option("--tol", aa.tol, "RN axiom tolerance")->capture_default_str();

  SweepArgs sa;
  auto* sweep = app.add_subcommand("sweep", "gamma over a grid of (alpha, beta)");
  sweep->add_option("--alpha-min", sa.alpha_min)->capture_default_str();
  sweep->add_option("--alpha-max", sa.alpha_max)->capture_default_str();
  sweep->add_option("--beta-min", sa.beta_min)->capture_default_str();
  sweep->add_option("--beta-max", sa.beta_max)->capture_default_str();
  sweep->add_option("--steps", sa.steps, "grid points per axis")->capture_default_str();
  sweep->add_option("--output", sa.output, "CSV file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitConfig;
  }

  try {
    if (*params) return cmd_params(pa);
    if (*verify) return cmd_verify(va);
    if (*axioms) return cmd_axioms(aa);
    if (*sweep) return cmd_sweep(sa);
  } catch (const ConfigError& e) {
    std::cerr << "configuration error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const OutsideValidityRegion& e) {
    std::cerr << "OutsideValidityRegion: " << e.what() << "\n";
    return kExitConfig;
  } catch (const NonrealOrRepeatedRoots& e) {
    std::cerr << "NonrealOrRepeatedRoots: " << e.what() << "\n";
    return kExitConfig;
  } catch (const DegenerateEquation& e) {
    std::cerr << "DegenerateEquation: " << e.what() << "\n";
    return kExitConfig;
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const DomainError& e) {
    std::cerr << "domain error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const TruncationFailure& e) {
    std::cerr << "truncation failure: " << e.what() << "\n";
    return kExitTruncation;
  }
  return kExitConfig;
}
