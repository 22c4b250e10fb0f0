#pragma once

// Run configuration: an INI-style document of `key = value` lines grouped
// under `[section]` headers. `#` and `;` start comments. Reals accept decimal
// or fraction notation (`-1/6`); vectors are comma-separated reals.

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "rnstab/distfn.hpp"
#include "rnstab/errors.hpp"
#include "rnstab/rnspace.hpp"
#include "rnstab/solver.hpp"
#include "rnstab/stability.hpp"
#include "rnstab/verify.hpp"

namespace rnstab {

enum class CheckKind { Hypothesis, Telescoping, Intermediate, Conclusion, Corollary };

inline std::string to_string(CheckKind k) {
  switch (k) {
    case CheckKind::Hypothesis: return "hypothesis";
    case CheckKind::Telescoping: return "telescoping";
    case CheckKind::Intermediate: return "intermediate";
    case CheckKind::Conclusion: return "conclusion";
    case CheckKind::Corollary: return "corollary";
  }
  return "?";
}

struct TGridSpec {
  double min = 1e-3;
  double max = 1e3;
  std::size_t points = 61;
};

struct RunConfig {
  std::optional<Coefficients> coefficients;
  std::optional<std::pair<double, double>> roots;
  Spectrum spectrum;

  std::size_t dimension = 2;
  double anchor = 0.0;
  std::int64_t k_min = -5;
  std::int64_t k_max = 5;
  std::uint64_t seed = 42;
  double noise_scale = 0.4;
  std::optional<Vector> c1;
  std::optional<Vector> c2;

  PhiFamily family = PhiFamily::ExpRatio;
  RNSpace space;
  TruncationPolicy truncation;
  TGridSpec tgrid;
  TelescopingOptions telescoping;
  double tolerance = 1e-9;
  unsigned threads = 1;
  std::vector<CheckKind> checks = {CheckKind::Hypothesis, CheckKind::Telescoping,
                                   CheckKind::Intermediate, CheckKind::Conclusion,
                                   CheckKind::Corollary};

  std::optional<std::string> output_dir;
  std::string run_id = "run";

  Lattice lattice() const { return {k_min, k_max}; }
  std::vector<double> t_points() const { return log_grid(tgrid.min, tgrid.max, tgrid.points); }
  bool wants(CheckKind k) const { return std::find(checks.begin(), checks.end(), k) != checks.end(); }
};

/// Exact-solution coefficients drawn uniformly from [-1, 1]^d; the stream is
/// keyed by the noise seed so a config without c1/c2 is still reproducible.
inline std::pair<Vector, Vector> default_coefficients(std::uint64_t seed, std::size_t dim) {
  std::mt19937_64 rng(mix64(seed ^ 0x5eed0c0effULL));
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  Vector c1(dim), c2(dim);
  for (std::size_t i = 0; i < dim; ++i) c1[i] = u(rng);
  for (std::size_t i = 0; i < dim; ++i) c2[i] = u(rng);
  return {c1, c2};
}

inline Scenario scenario_of(const RunConfig& cfg) {
  auto [d1, d2] = default_coefficients(cfg.seed, cfg.dimension);
  return make_scenario(cfg.anchor, cfg.spectrum, cfg.c1.value_or(d1), cfg.c2.value_or(d2),
                       cfg.seed, cfg.noise_scale);
}

namespace detail {

inline std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

inline std::string lower(std::string_view s) {
  std::string out(s);
  for (char& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

/// Decimal or fraction literal ("0.25", "-1/6"); nullopt if malformed,
/// non-finite, or with a zero denominator.
inline std::optional<double> parse_real_literal(std::string_view s) {
  auto one = [](std::string_view t) -> std::optional<double> {
    t = trim(t);
    if (!t.empty() && t.front() == '+') t.remove_prefix(1);
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
    if (t.empty() || ec != std::errc() || ptr != t.data() + t.size() || !std::isfinite(v)) {
      return std::nullopt;
    }
    return v;
  };
  s = trim(s);
  const auto slash = s.find('/');
  if (slash == std::string_view::npos) return one(s);
  const auto num = one(s.substr(0, slash));
  const auto den = one(s.substr(slash + 1));
  if (!num || !den || *den == 0.0) return std::nullopt;
  return *num / *den;
}

struct Entry {
  std::string value;
  int line;
};

class ConfigReader {
 public:
  using Map = std::map<std::string, Entry>;

  explicit ConfigReader(Map m) : map_(std::move(m)) {}

  bool has(const std::string& key) const { return map_.count(key) != 0; }

  int line_of(const std::string& key) const {
    auto it = map_.find(key);
    return it == map_.end() ? 0 : it->second.line;
  }

  [[noreturn]] void fail(const std::string& key, const std::string& why) const {
    const int line = line_of(key);
    std::string msg = "config";
    if (line > 0) msg += " line " + std::to_string(line);
    msg += ": " + key + ": " + why;
    throw ConfigError(msg, line, key);
  }

  double real(const std::string& key, double fallback) const {
    if (!has(key)) return fallback;
    return parse_real(key, map_.at(key).value);
  }

  std::int64_t integer(const std::string& key, std::int64_t fallback) const {
    if (!has(key)) return fallback;
    const std::string_view s = trim(map_.at(key).value);
    std::int64_t v = 0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size()) fail(key, "expected an integer");
    return v;
  }

  std::uint64_t unsigned_integer(const std::string& key, std::uint64_t fallback) const {
    if (!has(key)) return fallback;
    const std::string_view s = trim(map_.at(key).value);
    std::uint64_t v = 0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size()) fail(key, "expected a nonnegative integer");
    return v;
  }

  std::string word(const std::string& key, std::string fallback) const {
    if (!has(key)) return fallback;
    return lower(trim(map_.at(key).value));
  }

  std::optional<std::string> text(const std::string& key) const {
    if (!has(key)) return std::nullopt;
    return std::string(trim(map_.at(key).value));
  }

  std::vector<std::string> list(const std::string& key) const {
    std::vector<std::string> out;
    std::stringstream ss(map_.at(key).value);
    std::string item;
    while (std::getline(ss, item, ',')) {
      const auto t = trim(item);
      if (!t.empty()) out.push_back(lower(t));
    }
    return out;
  }

  std::optional<Vector> vector(const std::string& key) const {
    if (!has(key)) return std::nullopt;
    std::vector<double> xs;
    std::stringstream ss(map_.at(key).value);
    std::string item;
    while (std::getline(ss, item, ',')) xs.push_back(parse_real(key, item));
    if (xs.empty()) fail(key, "expected a comma-separated vector");
    return Vector(std::move(xs));
  }

 private:
  double parse_real(const std::string& key, std::string_view s) const {
    const auto v = parse_real_literal(s);
    if (!v) fail(key, "expected a finite real or fraction, got '" + std::string(trim(s)) + "'");
    return *v;
  }

  Map map_;
};

inline const std::map<std::string, std::set<std::string>>& known_keys() {
  static const std::map<std::string, std::set<std::string>> keys = {
      {"equation", {"p", "q", "alpha", "beta"}},
      {"scenario", {"dimension", "anchor", "k_min", "k_max", "seed", "noise_scale", "c1", "c2"}},
      {"phi", {"family"}},
      {"space", {"form", "norm"}},
      {"truncation", {"target_tail", "max_terms"}},
      {"tgrid", {"min", "max", "points"}},
      {"checks", {"run", "tolerance", "identity_tolerance", "cauchy_tolerance", "n_max", "m_max",
                  "threads"}},
      {"output", {"dir", "run_id"}},
  };
  return keys;
}

inline ConfigReader::Map tokenize(std::string_view text) {
  ConfigReader::Map map;
  std::string section;
  int line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t eol = std::min(text.find('\n', pos), text.size());
    std::string_view line = text.substr(pos, eol - pos);
    pos = eol + 1;
    ++line_no;

    if (const auto c = line.find_first_of("#;"); c != std::string_view::npos) {
      line = line.substr(0, c);
    }
    line = trim(line);
    if (line.empty()) continue;

    if (line.front() == '[') {
      if (line.back() != ']') {
        throw ConfigError("config line " + std::to_string(line_no) + ": unterminated section header",
                          line_no);
      }
      section = lower(trim(line.substr(1, line.size() - 2)));
      if (!known_keys().count(section)) {
        throw ConfigError("config line " + std::to_string(line_no) + ": unknown section [" +
                              section + "]",
                          line_no, section);
      }
      continue;
    }

    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw ConfigError("config line " + std::to_string(line_no) + ": expected key = value",
                        line_no);
    }
    if (section.empty()) {
      throw ConfigError("config line " + std::to_string(line_no) + ": key outside any section",
                        line_no);
    }
    const std::string key = lower(trim(line.substr(0, eq)));
    const std::string full = section + "." + key;
    if (!known_keys().at(section).count(key)) {
      throw ConfigError("config line " + std::to_string(line_no) + ": unknown key " + full, line_no,
                        full);
    }
    if (map.count(full)) {
      throw ConfigError("config line " + std::to_string(line_no) + ": duplicate key " + full,
                        line_no, full);
    }
    map.emplace(full, Entry{std::string(trim(line.substr(eq + 1))), line_no});
  }
  return map;
}

}  // namespace detail

using detail::parse_real_literal;

/// Parses and validates a run configuration. Root-region violations surface
/// as the ValidityError subclasses from solve_characteristic / from_roots;
/// everything else as ConfigError carrying the offending line and key.
inline RunConfig parse_config(std::string_view text) {
  const detail::ConfigReader r(detail::tokenize(text));
  RunConfig cfg;

  const bool has_pq = r.has("equation.p") || r.has("equation.q");
  const bool has_roots = r.has("equation.alpha") || r.has("equation.beta");
  if (has_pq && has_roots) {
    r.fail(r.has("equation.alpha") ? "equation.alpha" : "equation.beta",
           "give either p/q or alpha/beta, not both");
  }
  if (has_pq) {
    if (!r.has("equation.p")) r.fail("equation.p", "missing (q given)");
    if (!r.has("equation.q")) r.fail("equation.q", "missing (p given)");
    cfg.coefficients = Coefficients{r.real("equation.p", 0.0), r.real("equation.q", 0.0)};
    cfg.spectrum = solve_characteristic(*cfg.coefficients);
  } else if (has_roots) {
    if (!r.has("equation.alpha")) r.fail("equation.alpha", "missing (beta given)");
    if (!r.has("equation.beta")) r.fail("equation.beta", "missing (alpha given)");
    cfg.roots = std::pair{r.real("equation.alpha", 0.0), r.real("equation.beta", 0.0)};
    cfg.spectrum = spectrum_from_roots(cfg.roots->first, cfg.roots->second);
  } else {
    throw ConfigError("config: [equation] needs p and q, or alpha and beta", 0, "equation");
  }

  const std::int64_t dim = r.integer("scenario.dimension", 2);
  if (dim < 1) r.fail("scenario.dimension", "must be >= 1");
  cfg.dimension = static_cast<std::size_t>(dim);
  cfg.space.dimension = cfg.dimension;
  cfg.anchor = r.real("scenario.anchor", 0.0);
  cfg.k_min = r.integer("scenario.k_min", cfg.k_min);
  cfg.k_max = r.integer("scenario.k_max", cfg.k_max);
  if (cfg.k_min > cfg.k_max) r.fail("scenario.k_max", "lattice range [k_min, k_max] is empty");
  cfg.seed = r.unsigned_integer("scenario.seed", cfg.seed);
  cfg.noise_scale = r.real("scenario.noise_scale", cfg.noise_scale);
  if (cfg.noise_scale < 0.0) r.fail("scenario.noise_scale", "must be >= 0");
  cfg.c1 = r.vector("scenario.c1");
  cfg.c2 = r.vector("scenario.c2");
  for (const char* key : {"scenario.c1", "scenario.c2"}) {
    const auto& v = std::string(key) == "scenario.c1" ? cfg.c1 : cfg.c2;
    if (v && v->dim() != cfg.dimension) r.fail(key, "length differs from dimension");
  }

  const std::string fam = r.word("phi.family", "exp_ratio");
  if (fam == "exp_ratio") {
    cfg.family = PhiFamily::ExpRatio;
  } else if (fam == "gaussian_location") {
    cfg.family = PhiFamily::GaussianLocation;
  } else {
    r.fail("phi.family", "expected exp_ratio or gaussian_location");
  }

  const std::string form = r.word("space.form", "ratio");
  if (form == "ratio") {
    cfg.space.form = InducedForm::Ratio;
  } else if (form == "eps0_shift") {
    cfg.space.form = InducedForm::Eps0Shift;
  } else {
    r.fail("space.form", "expected ratio or eps0_shift");
  }
  const std::string nk = r.word("space.norm", "euclidean");
  if (nk == "euclidean") {
    cfg.space.norm_kind = NormKind::Euclidean;
  } else if (nk == "max") {
    cfg.space.norm_kind = NormKind::Max;
  } else {
    r.fail("space.norm", "expected euclidean or max");
  }

  cfg.truncation.target_tail = r.real("truncation.target_tail", cfg.truncation.target_tail);
  if (!(cfg.truncation.target_tail > 0.0)) r.fail("truncation.target_tail", "must be > 0");
  const std::int64_t mt = r.integer("truncation.max_terms", 500);
  if (mt < 1) r.fail("truncation.max_terms", "must be >= 1");
  cfg.truncation.max_terms = static_cast<std::size_t>(mt);

  cfg.tgrid.min = r.real("tgrid.min", cfg.tgrid.min);
  cfg.tgrid.max = r.real("tgrid.max", cfg.tgrid.max);
  const std::int64_t pts = r.integer("tgrid.points", 61);
  if (!(cfg.tgrid.min > 0.0)) r.fail("tgrid.min", "must be > 0");
  if (!(cfg.tgrid.max > cfg.tgrid.min)) r.fail("tgrid.max", "must exceed tgrid.min");
  if (pts < 2) r.fail("tgrid.points", "must be >= 2");
  cfg.tgrid.points = static_cast<std::size_t>(pts);

  if (r.has("checks.run")) {
    cfg.checks.clear();
    for (const std::string& name : r.list("checks.run")) {
      std::optional<CheckKind> kind;
      for (CheckKind k : {CheckKind::Hypothesis, CheckKind::Telescoping, CheckKind::Intermediate,
                          CheckKind::Conclusion, CheckKind::Corollary}) {
        if (to_string(k) == name) kind = k;
      }
      if (!kind) r.fail("checks.run", "unknown check '" + name + "'");
      if (!cfg.wants(*kind)) cfg.checks.push_back(*kind);
    }
    if (cfg.checks.empty()) r.fail("checks.run", "no checks listed");
  }
  cfg.tolerance = r.real("checks.tolerance", cfg.tolerance);
  cfg.telescoping.identity_tol = r.real("checks.identity_tolerance", cfg.telescoping.identity_tol);
  cfg.telescoping.cauchy_tol = r.real("checks.cauchy_tolerance", cfg.telescoping.cauchy_tol);
  for (const char* key : {"checks.tolerance", "checks.identity_tolerance", "checks.cauchy_tolerance"}) {
    if (r.has(key) && r.real(key, 0.0) < 0.0) r.fail(key, "must be >= 0");
  }
  const std::int64_t n_max = r.integer("checks.n_max", 30);
  if (n_max < 2) r.fail("checks.n_max", "must be >= 2");
  cfg.telescoping.n_max = static_cast<std::size_t>(n_max);
  const std::int64_t m_max = r.integer("checks.m_max", 20);
  if (m_max < 1) r.fail("checks.m_max", "must be >= 1");
  cfg.telescoping.m_max = static_cast<std::size_t>(m_max);
  const std::int64_t threads = r.integer("checks.threads", 1);
  if (threads < 1 || threads > 256) r.fail("checks.threads", "must lie in [1, 256]");
  cfg.threads = static_cast<unsigned>(threads);

  cfg.output_dir = r.text("output.dir");
  if (auto id = r.text("output.run_id")) {
    if (id->empty()) r.fail("output.run_id", "must not be empty");
    cfg.run_id = *id;
  }
  return cfg;
}

}  // namespace rnstab
