#pragma once

#include <cmath>
#include <cstddef>
#include <cstdio>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "moq/error.hpp"
#include "moq/extended_dist.hpp"

namespace moq {

enum class CurveQuantity { Cdf, Sf, Pdf, Hazard };

constexpr std::string_view to_string(CurveQuantity q) noexcept {
  switch (q) {
    case CurveQuantity::Cdf: return "cdf";
    case CurveQuantity::Sf: return "sf";
    case CurveQuantity::Pdf: return "pdf";
    case CurveQuantity::Hazard: return "hazard";
  }
  return "unknown";
}

inline std::optional<CurveQuantity> parse_quantity(std::string_view name) {
  for (auto q : {CurveQuantity::Cdf, CurveQuantity::Sf, CurveQuantity::Pdf, CurveQuantity::Hazard}) {
    if (to_string(q) == name) return q;
  }
  return std::nullopt;
}

/// 17 significant digits, enough to round-trip a double.
inline std::string format_real(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

inline double evaluate(const ExtendedDistribution& ed, CurveQuantity q, double x) {
  switch (q) {
    case CurveQuantity::Cdf: return ed.cdf(x);
    case CurveQuantity::Sf: return ed.sf(x);
    case CurveQuantity::Pdf: return ed.pdf(x);
    case CurveQuantity::Hazard: return ed.hazard(x);
  }
  return 0.0;
}

/// Grid x_i = lo + i*step for i = 0..floor((hi - lo)/step), with a small
/// allowance so that hi itself is kept when it lies on the grid.
inline std::vector<double> curve_grid(double lo, double hi, double step) {
  if (!(lo < hi) || !(step > 0.0) || !std::isfinite(lo) || !std::isfinite(hi)) {
    throw Error(ErrorKind::DomainError, "curve grid needs lo < hi and step > 0");
  }
  const auto last = static_cast<std::size_t>(std::floor((hi - lo) / step + 1e-9));
  std::vector<double> xs;
  xs.reserve(last + 1);
  for (std::size_t i = 0; i <= last; ++i) xs.push_back(lo + static_cast<double>(i) * step);
  return xs;
}

/// CSV text with header "x,value". Evaluation errors are rethrown with the
/// offending x in the message.
inline std::string curve_csv(const ExtendedDistribution& ed, CurveQuantity q, double lo, double hi, double step) {
  std::string out = "x,value\n";
  for (double x : curve_grid(lo, hi, step)) {
    double v;
    try {
      v = evaluate(ed, q, x);
    } catch (const Error& e) {
      throw Error(e.kind(), std::string(to_string(q)) + " failed at x = " + format_real(x) + ": " + e.message());
    }
    out += format_real(x);
    out += ',';
    out += format_real(v);
    out += '\n';
  }
  return out;
}

/// Interior local extrema of a sampled curve: sign changes between successive
/// non-zero first differences.
inline std::size_t count_interior_extrema(const std::vector<double>& values) {
  std::size_t count = 0;
  int prev = 0;
  for (std::size_t i = 1; i < values.size(); ++i) {
    const double d = values[i] - values[i - 1];
    const int sign = d > 0.0 ? 1 : (d < 0.0 ? -1 : 0);
    if (sign == 0) continue;
    if (prev != 0 && sign != prev) ++count;
    prev = sign;
  }
  return count;
}

}  // namespace moq
