#pragma once

#include <cmath>
#include <cstdio>
#include <ostream>
#include <string>
#include <string_view>

namespace rnstab::csv {

/// Reals are written with 17 significant digits ("%.17g"); non-finite values
/// as nan, inf, -inf.
inline std::string real(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

inline std::string field(std::string_view s) {
  if (s.find_first_of(",\"\n") == std::string_view::npos) return std::string(s);
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

class Writer {
 public:
  explicit Writer(std::ostream& os) : os_(os) {}

  template <class... Cols>
  void row(const Cols&... cols) {
    bool first = true;
    ((os_ << (first ? "" : ",") << cell(cols), first = false), ...);
    os_ << '\n';
  }

 private:
  static std::string cell(double v) { return real(v); }
  static std::string cell(std::string_view s) { return field(s); }
  static std::string cell(const std::string& s) { return field(s); }
  static std::string cell(const char* s) { return field(s); }
  static std::string cell(std::size_t v) { return std::to_string(v); }
  static std::string cell(long v) { return std::to_string(v); }
  static std::string cell(long long v) { return std::to_string(v); }
  static std::string cell(int v) { return std::to_string(v); }
  static std::string cell(bool v) { return v ? "true" : "false"; }

  std::ostream& os_;
};

}  // namespace rnstab::csv
