#pragma once

#include <charconv>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "zmoment/moments.hpp"

namespace zmoment {

// Shortest round-trip decimal form of a double.
inline std::string format_double(double x) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), x);
  return std::string(buf, res.ptr);
}

// Flat key=value record, one field per line.
inline std::string to_kv(const MomentReport& r) {
  std::ostringstream os;
  os << "label=" << r.label << '\n';
  os << "value=" << format_double(r.value) << '\n';
  for (const auto& p : r.pieces) os << "piece." << p.name << '=' << format_double(p.value) << '\n';
  os << "t_integral=" << format_double(r.t_integral) << '\n';
  os << "pair_count=" << r.pair_count << '\n';
  os << "summation_residual=" << format_double(r.summation_residual) << '\n';
  os << "error_estimate=" << format_double(r.error_estimate) << '\n';
  os << "panels=" << r.panels << '\n';
  os << "imag_part=" << format_double(r.imag_part) << '\n';
  os << "degraded=" << (r.degraded ? "true" : "false") << '\n';
  for (const auto& [k, v] : r.diagnostics) os << "diag." << k << '=' << format_double(v) << '\n';
  return os.str();
}

inline std::string csv_row(const std::vector<std::string>& fields) {
  std::string out;
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i) out += ',';
    const bool quote = fields[i].find_first_of(",\"\n") != std::string::npos;
    if (!quote) {
      out += fields[i];
      continue;
    }
    out += '"';
    for (char c : fields[i]) {
      if (c == '"') out += '"';
      out += c;
    }
    out += '"';
  }
  return out;
}

inline std::vector<std::string> kappa_csv_header() { return {"T", "N1", "N2", "E_value", "kappa_est"}; }

inline std::vector<std::string> kappa_csv_fields(const KappaReport& r) {
  return {format_double(r.T), std::to_string(r.N1), std::to_string(r.N2), format_double(r.E_value),
          format_double(r.kappa)};
}

}  // namespace zmoment
