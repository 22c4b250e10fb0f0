#pragma once

// Sampled verification of the stability hypothesis, the telescoping and
// Cauchy estimates behind the limit construction, the intermediate bounds on
// G and H, and the final closeness bound between f and the constructed F.
//
// Every check emits rows of the form lhs >= rhs; margin = lhs - rhs and a row
// passes iff margin >= -tolerance. Rows whose name ends in "_reduced" are the
// equivalent norm inequalities, recorded only for the exp-ratio family in the
// ratio-induced space, where mu_y >= Ratio(c) on t > 0 iff |y| <= c.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "rnstab/distfn.hpp"
#include "rnstab/parallel.hpp"
#include "rnstab/rnspace.hpp"
#include "rnstab/solver.hpp"
#include "rnstab/stability.hpp"

namespace rnstab {

inline constexpr double kNoT = std::numeric_limits<double>::quiet_NaN();

struct CheckRow {
  std::string check;
  double x = 0.0;
  double t = kNoT;  // grid time, step index n, or NaN when not applicable
  double lhs = 0.0;
  double rhs = 0.0;
  double margin = 0.0;
  double tolerance = 0.0;
  bool pass = true;
};

inline CheckRow make_row(std::string check, double x, double t, double lhs, double rhs,
                         double tol) {
  CheckRow r{std::move(check), x, t, lhs, rhs, lhs - rhs, tol, false};
  r.pass = r.margin >= -tol;
  return r;
}

struct CheckSummary {
  std::string check;
  std::size_t points = 0;
  double min_margin = std::numeric_limits<double>::infinity();
  bool pass = true;
};

class VerificationReport {
 public:
  void add(CheckRow row) { rows_.push_back(std::move(row)); }

  void merge(const VerificationReport& other) {
    rows_.insert(rows_.end(), other.rows_.begin(), other.rows_.end());
  }

  /// Orders rows by (check, x, t); NaN t sorts first. Stable, so rows that
  /// tie keep their generation order.
  void sort() {
    auto t_less = [](double a, double b) {
      if (std::isnan(a)) return !std::isnan(b);
      if (std::isnan(b)) return false;
      return a < b;
    };
    std::stable_sort(rows_.begin(), rows_.end(), [&](const CheckRow& a, const CheckRow& b) {
      if (a.check != b.check) return a.check < b.check;
      if (a.x != b.x) return a.x < b.x;
      return t_less(a.t, b.t);
    });
  }

  const std::vector<CheckRow>& rows() const noexcept { return rows_; }

  std::vector<CheckSummary> summary() const {
    std::vector<CheckSummary> out;
    for (const CheckRow& r : rows_) {
      auto it = std::find_if(out.begin(), out.end(),
                             [&](const CheckSummary& s) { return s.check == r.check; });
      if (it == out.end()) {
        out.push_back({r.check});
        it = std::prev(out.end());
      }
      ++it->points;
      it->min_margin = std::min(it->min_margin, r.margin);
      it->pass = it->pass && r.pass;
    }
    std::sort(out.begin(), out.end(),
              [](const CheckSummary& a, const CheckSummary& b) { return a.check < b.check; });
    return out;
  }

  bool passed() const {
    return std::all_of(rows_.begin(), rows_.end(), [](const CheckRow& r) { return r.pass; });
  }

  std::size_t failures() const {
    return static_cast<std::size_t>(
        std::count_if(rows_.begin(), rows_.end(), [](const CheckRow& r) { return !r.pass; }));
  }

 private:
  std::vector<CheckRow> rows_;
};

struct Lattice {
  std::int64_t k_min = -5;
  std::int64_t k_max = 5;

  std::size_t size() const { return static_cast<std::size_t>(k_max - k_min + 1); }
  std::int64_t at(std::size_t i) const { return k_min + static_cast<std::int64_t>(i); }
};

inline std::vector<double> log_grid(double lo, double hi, std::size_t count) {
  if (!(lo > 0.0 && hi > lo) || count < 2) {
    throw UsageError("log_grid needs 0 < lo < hi and at least two points");
  }
  std::vector<double> out(count);
  const double a = std::log(lo), b = std::log(hi);
  for (std::size_t i = 0; i < count; ++i) {
    out[i] = std::exp(a + (b - a) * static_cast<double>(i) / static_cast<double>(count - 1));
  }
  out.front() = lo;
  out.back() = hi;
  return out;
}

inline std::vector<double> default_tgrid() { return log_grid(1e-3, 1e3, 61); }

namespace detail {

inline void require_lattice(const Lattice& lat) {
  if (lat.k_min > lat.k_max) throw UsageError("lattice range is empty");
}

inline bool reducible(PhiFamily fam, const RNSpace& space) {
  return fam == PhiFamily::ExpRatio && space.form == InducedForm::Ratio;
}

inline DistributionFn mu_from_norm(const RNSpace& space, double n) {
  if (n == 0.0) return eps0();
  if (space.form == InducedForm::Ratio) return Ratio{n};
  return Eps0Shift{n};
}

// Largest change of mu_y(t) when |y| moves by at most `slack`.
inline double mu_allowance(const RNSpace& space, double n, double slack, double t) {
  if (slack == 0.0) return 0.0;
  return eval(mu_from_norm(space, std::max(0.0, n - slack)), t) -
         eval(mu_from_norm(space, n + slack), t);
}

template <class PerPoint>
VerificationReport sweep(const Lattice& lattice, unsigned threads, PerPoint&& per_point) {
  require_lattice(lattice);
  auto chunks = parallel_map(lattice.size(), threads,
                             [&](std::size_t i) { return per_point(lattice.at(i)); });
  VerificationReport rep;
  for (auto& chunk : chunks) {
    for (auto& row : chunk) rep.add(std::move(row));
  }
  rep.sort();
  return rep;
}

}  // namespace detail

/// Hypothesis: mu_{f(x) - p f(x-1) + q f(x-2)}(t) >= phi_x(t).
inline VerificationReport check_hypothesis(const Scenario& sc, PhiFamily fam, const RNSpace& space,
                                           const Coefficients& c, const Lattice& lattice,
                                           std::span<const double> tgrid, double tol,
                                           unsigned threads = 1) {
  return detail::sweep(lattice, threads, [&](std::int64_t k) {
    std::vector<CheckRow> rows;
    const double x = lattice_point(sc, k);
    const Vector r = residual_at(sc, c, k);
    const DistributionFn m = mu(space, r);
    const DistributionFn ph = phi(fam, x);
    for (double t : tgrid) rows.push_back(make_row("hypothesis", x, t, eval(m, t), eval(ph, t), tol));
    if (detail::reducible(fam, space)) {
      rows.push_back(make_row("hypothesis_reduced", x, kNoT, envelope(x), norm(space, r), tol));
    }
    return rows;
  });
}

/// Conclusion: mu_{f(x) - F(x)}(t) >= phi_x(gamma t), plus the recurrence
/// residual of F at points whose two predecessors are on the lattice.
/// Tolerances widen by the construction's error bound.
inline VerificationReport check_conclusion(const Scenario& sc, const Spectrum& spec,
                                           PhiFamily fam, const RNSpace& space,
                                           const TruncationPolicy& pol, const Lattice& lattice,
                                           std::span<const double> tgrid, double tol,
                                           unsigned threads = 1) {
  detail::require_lattice(lattice);
  const auto solutions = parallel_map(lattice.size(), threads, [&](std::size_t i) {
    return construct_F(sc, spec, lattice_point(sc, lattice.at(i)), pol);
  });

  auto rep = detail::sweep(lattice, threads, [&](std::int64_t k) {
    std::vector<CheckRow> rows;
    const auto idx = static_cast<std::size_t>(k - lattice.k_min);
    const SolutionPoint& sol = solutions[idx];
    const double x = lattice_point(sc, k);
    const Vector diff = f_at(sc, k) - sol.value;
    const double dn = norm(space, diff);
    const DistributionFn m = mu(space, diff);
    const DistributionFn target = scale_arg(phi(fam, x), spec.gamma);
    for (double t : tgrid) {
      const double allow = detail::mu_allowance(space, dn, sol.error_bound, t);
      rows.push_back(make_row("conclusion", x, t, eval(m, t), eval(target, t), tol + allow));
    }
    if (detail::reducible(fam, space)) {
      rows.push_back(make_row("conclusion_reduced", x, kNoT, envelope(x) / spec.gamma, dn,
                              tol + sol.error_bound));
    }
    if (idx >= 2) {
      const SolutionPoint& s1 = solutions[idx - 1];
      const SolutionPoint& s2 = solutions[idx - 2];
      const double eb = std::max({sol.error_bound, s1.error_bound, s2.error_bound});
      const Coefficients c = spec.coefficients();
      const double res = recurrence_residual(sol.value, s1.value, s2.value, c, space.norm_kind);
      rows.push_back(make_row("solution_residual", x, kNoT,
                              (1.0 + std::abs(c.p) + std::abs(c.q)) * eb, res, 0.0));
    }
    return rows;
  });
  return rep;
}

struct TelescopingOptions {
  std::size_t n_max = 30;
  std::size_t m_max = 20;
  double identity_tol = 1e-12;
  double cauchy_tol = 0.0;
};

/// (a) g_n - g_{n+1} = lead^n residual(x-n), as a deviation relative to the
///     operand scale (absolute when the operands are below 1);
/// (b) |g_n - g_{n+m}| <= sum_{j=n}^{n+m-1} |lead|^j e^(x-j), one row per n
///     holding the tightest m; the tolerance adds the rounding allowance of
///     both computed terms.
/// Both run for the G sequence (lead alpha) and the H sequence (lead beta).
inline VerificationReport check_telescoping(const Scenario& sc, const Spectrum& spec,
                                            const Lattice& lattice,
                                            const TelescopingOptions& opts = {},
                                            unsigned threads = 1) {
  if (opts.n_max < 2) throw UsageError("check_telescoping: n_max must be >= 2");
  if (opts.m_max < 1) throw UsageError("check_telescoping: m_max must be >= 1");
  const Coefficients c = spec.coefficients();
  const std::size_t depth = opts.n_max + opts.m_max + 2;

  return detail::sweep(lattice, threads, [&](std::int64_t k) {
    std::vector<CheckRow> rows;
    const double x = lattice_point(sc, k);
    std::vector<Vector> f(depth + 1);
    std::vector<double> fn(depth + 1);
    for (std::size_t j = 0; j <= depth; ++j) {
      f[j] = f_at(sc, k - static_cast<std::int64_t>(j));
      fn[j] = norm(f[j]);
    }

    auto run = [&](const std::string& tag, double lead, double other) {
      std::vector<Vector> g(opts.n_max + opts.m_max + 1);
      for (std::size_t n = 0; n < g.size(); ++n) {
        g[n] = std::pow(lead, static_cast<double>(n)) * (f[n] - other * f[n + 1]);
      }
      const double al = std::abs(lead), ao = std::abs(other);
      for (std::size_t n = 0; n <= opts.n_max; ++n) {
        const double pw = std::pow(lead, static_cast<double>(n));
        Vector resid = f[n];
        resid -= c.p * f[n + 1];
        resid += c.q * f[n + 2];
        const Vector dev = (g[n] - g[n + 1]) - pw * resid;
        const double scale = std::abs(pw) * (fn[n] + (al + ao + std::abs(c.p)) * fn[n + 1] +
                                             (al * ao + std::abs(c.q)) * fn[n + 2]);
        const double rel = norm(dev) / std::max(1.0, scale);
        rows.push_back(make_row("telescoping_identity_" + tag, x, static_cast<double>(n), 0.0, rel,
                                opts.identity_tol));

        double bound = 0.0;
        CheckRow worst;
        bool first = true;
        const double round_n = detail::sequence_rounding(sc, k, n, lead, other);
        for (std::size_t m = 1; m <= opts.m_max; ++m) {
          const std::size_t j = n + m - 1;
          bound += std::pow(al, static_cast<double>(j)) * envelope(x - static_cast<double>(j));
          const double gap = norm(g[n] - g[n + m]);
          // Computed g_n carry rounding error from the exact part, which near
          // the origin can dwarf the e^(x-j) envelope.
          const double allow = round_n + detail::sequence_rounding(sc, k, n + m, lead, other);
          CheckRow row = make_row("cauchy_" + tag, x, static_cast<double>(n), bound, gap,
                                  opts.cauchy_tol + allow);
          if (first || row.margin + row.tolerance < worst.margin + worst.tolerance) {
            worst = std::move(row);
            first = false;
          }
        }
        rows.push_back(std::move(worst));
      }
    };
    run("G", spec.alpha, spec.beta);
    run("H", spec.beta, spec.alpha);
    return rows;
  });
}

/// Intermediate bounds on the two limits:
///   mu_{f(x) - beta f(x-1) - G(x)}(t / (1-|alpha|)) >= phi_x(t)
///   mu_{f(x) - alpha f(x-1) - H(x)}(t / (1-|beta|)) >= phi_x(t)
inline VerificationReport check_intermediate_bounds(const Scenario& sc, const Spectrum& spec,
                                                    PhiFamily fam, const RNSpace& space,
                                                    const TruncationPolicy& pol,
                                                    const Lattice& lattice,
                                                    std::span<const double> tgrid, double tol,
                                                    unsigned threads = 1) {
  return detail::sweep(lattice, threads, [&](std::int64_t k) {
    std::vector<CheckRow> rows;
    const double x = lattice_point(sc, k);
    const Vector f0 = f_at(sc, k);
    const Vector f1 = f_at(sc, k - 1);
    const DistributionFn ph = phi(fam, x);

    auto one = [&](const std::string& tag, const LimitResult& lim, double other, double lead) {
      const Vector y = (f0 - other * f1) - lim.value;
      const double yn = norm(space, y);
      const DistributionFn m = mu(space, y);
      const double stretch = 1.0 / (1.0 - std::abs(lead));
      for (double t : tgrid) {
        const double ts = t * stretch;
        const double allow = detail::mu_allowance(space, yn, lim.bound, ts);
        rows.push_back(make_row("intermediate_" + tag, x, t, eval(m, ts), eval(ph, t), tol + allow));
      }
      if (detail::reducible(fam, space)) {
        rows.push_back(make_row("intermediate_" + tag + "_reduced", x, kNoT, envelope(x) * stretch,
                                yn, tol + lim.bound));
      }
    };
    one("G", limit_G(sc, spec, x, pol), spec.beta, spec.alpha);
    one("H", limit_H(sc, spec, x, pol), spec.alpha, spec.beta);
    return rows;
  });
}

/// Tabulates Phi(gamma t - x) (phi_x(gamma t) for the Gaussian
/// family) against Phi(gamma (t - x)). Informational: rows always pass.
inline VerificationReport check_corollary_readings(const Spectrum& spec, std::span<const double> xs,
                                                   std::span<const double> tgrid) {
  VerificationReport rep;
  for (double x : xs) {
    for (double t : tgrid) {
      rep.add(make_row("corollary_readings", x, t, normal_cdf(spec.gamma * t - x),
                       normal_cdf(spec.gamma * (t - x)), std::numeric_limits<double>::infinity()));
    }
  }
  rep.sort();
  return rep;
}

struct DeviationPoint {
  double x;
  double deviation;  // |f(x) - F(x)|
  double bound;      // e^x / gamma
  double error_bound;
};

/// |f - F| against e^x / gamma over the lattice (plot data).
inline std::vector<DeviationPoint> deviation_series(const Scenario& sc, const Spectrum& spec,
                                                    const RNSpace& space,
                                                    const TruncationPolicy& pol,
                                                    const Lattice& lattice, unsigned threads = 1) {
  detail::require_lattice(lattice);
  return parallel_map(lattice.size(), threads, [&](std::size_t i) {
    const std::int64_t k = lattice.at(i);
    const double x = lattice_point(sc, k);
    const SolutionPoint sol = construct_F(sc, spec, x, pol);
    return DeviationPoint{x, norm(space, f_at(sc, k) - sol.value), envelope(x) / spec.gamma,
                          sol.error_bound};
  });
}

}  // namespace rnstab
