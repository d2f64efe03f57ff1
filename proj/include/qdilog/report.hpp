#pragma once

// Serialisation of IdentityReport arrays (JSON and CSV) and scan rows.

#include <cstdio>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "qdilog/identities.hpp"

namespace qdilog {

inline nlohmann::ordered_json complex_json(cplx z) { return nlohmann::ordered_json::array({z.real(), z.imag()}); }

inline nlohmann::ordered_json report_json(const IdentityReport& r) {
  nlohmann::ordered_json params = nlohmann::ordered_json::object();
  for (const auto& [k, v] : r.params) params[k] = complex_json(v);
  nlohmann::ordered_json j;
  j["name"] = r.name;
  j["params"] = params;
  j["lhs"] = complex_json(r.lhs);
  j["rhs"] = complex_json(r.rhs);
  // JSON has no infinity; errors that never produced a number are written as null.
  j["abs_err"] = std::isfinite(r.abs_err) ? nlohmann::ordered_json(r.abs_err) : nlohmann::ordered_json();
  j["rel_err"] = std::isfinite(r.rel_err) ? nlohmann::ordered_json(r.rel_err) : nlohmann::ordered_json();
  j["pass"] = r.pass;
  return j;
}

inline std::string reports_to_json(const std::vector<IdentityReport>& reps) {
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (const auto& r : reps) arr.push_back(report_json(r));
  return arr.dump(2) + "\n";
}

inline std::string csv_number(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

inline std::string csv_quote(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + "\"";
}

inline std::string reports_to_csv(const std::vector<IdentityReport>& reps) {
  std::string out = "name,params,lhs_re,lhs_im,rhs_re,rhs_im,abs_err,rel_err,pass\n";
  for (const auto& r : reps) {
    std::string params;
    for (const auto& [k, v] : r.params) {
      if (!params.empty()) params += ';';
      params += k + "=" + csv_number(v.real()) + (v.imag() < 0 ? "" : "+") + csv_number(v.imag()) + "i";
    }
    out += csv_quote(r.name) + "," + csv_quote(params) + "," + csv_number(r.lhs.real()) + "," +
           csv_number(r.lhs.imag()) + "," + csv_number(r.rhs.real()) + "," + csv_number(r.rhs.imag()) +
           "," + csv_number(r.abs_err) + "," + csv_number(r.rel_err) + "," + (r.pass ? "true" : "false") +
           "\n";
  }
  return out;
}

struct ScanRow {
  double re, im;
  std::optional<cplx> value;  // empty at pole-lattice points
};

inline std::string scan_to_csv(const std::vector<ScanRow>& rows) {
  std::string out = "re,im,abs,arg\n";
  for (const auto& r : rows) {
    out += csv_number(r.re) + "," + csv_number(r.im) + ",";
    if (r.value) out += csv_number(std::abs(*r.value)) + "," + csv_number(std::arg(*r.value));
    else out += ",";
    out += "\n";
  }
  return out;
}

}  // namespace qdilog
