#pragma once

// Text parsers used by the command-line front end.

#include <charconv>
#include <cmath>
#include <optional>
#include <regex>
#include <string>
#include <vector>

#include "qdilog/numerics.hpp"

namespace qdilog {

/// Complex literal: [-]ddd[.ddd][+|-ddd[.ddd]i], no spaces, no exponents.
/// "1.5", "-2", "0.3+0.4i" and "1-2.25i" are accepted; "i", "1+i", "1e3" are not.
inline std::optional<cplx> parse_complex(const std::string& s) {
  static const std::regex re(R"(^(-?[0-9]+(?:\.[0-9]+)?)(?:([+-])([0-9]+(?:\.[0-9]+)?)i)?$)");
  std::smatch m;
  if (!std::regex_match(s, m, re)) return std::nullopt;
  const double r = std::stod(m[1].str());
  double im = 0;
  if (m[2].matched) im = (m[2].str() == "-" ? -1.0 : 1.0) * std::stod(m[3].str());
  return cplx(r, im);
}

/// A real number in the same grammar (imaginary part absent or zero).
inline std::optional<double> parse_real(const std::string& s) {
  const auto z = parse_complex(s);
  if (!z || z->imag() != 0) return std::nullopt;
  return z->real();
}

/// Grid axis "a:b:step" with a ≤ b and step > 0; returns the sample points.
inline std::optional<std::vector<double>> parse_grid(const std::string& s,
                                                     std::size_t max_points = 1000000) {
  double v[3];
  std::size_t pos = 0;
  for (int k = 0; k < 3; ++k) {
    const std::size_t end = k < 2 ? s.find(':', pos) : s.size();
    if (end == std::string::npos || end == pos) return std::nullopt;
    const char* first = s.data() + pos;
    const char* last = s.data() + end;
    const auto [ptr, ec] = std::from_chars(first, last, v[k]);
    if (ec != std::errc() || ptr != last || !std::isfinite(v[k])) return std::nullopt;
    pos = end + 1;
  }
  const double a = v[0], b = v[1], step = v[2];
  if (!(step > 0) || b < a) return std::nullopt;
  const double count = std::floor((b - a) / step + 1e-9) + 1;
  if (count > double(max_points)) return std::nullopt;
  std::vector<double> out;
  for (std::size_t k = 0; k < std::size_t(count); ++k) out.push_back(a + double(k) * step);
  return out;
}

}  // namespace qdilog
