#pragma once

// Adaptive Gauss-Kronrod (7/15) quadrature for integrals over [lo, +inf).
//
// The half line is split at lo + 1. The near piece uses x = lo + s^p, which
// absorbs integrable power-law blow-ups such as x^(b-1) at lo. The far piece
// uses x = lo + t^(-k), which turns algebraic tails x^(-1-eps) into integrands
// behaving like t^(k eps - 1) near t = 0. Both pieces share one priority queue,
// so refinement always goes to the panel with the largest error estimate.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <limits>
#include <queue>
#include <string>
#include <vector>

#include "moq/error.hpp"

namespace moq::oracle {

struct QuadratureResult {
  double value = 0.0;
  double error_estimate = 0.0;
  std::size_t evaluations = 0;
};

struct QuadratureOptions {
  std::size_t max_panels = 4000;
  double near_power = 4.0;
  double tail_power = 16.0;
};

namespace detail {

inline constexpr std::array<double, 8> kXgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
inline constexpr std::array<double, 8> kWgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
inline constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Panel {
  int piece;
  double a, b;
  double value, error;
  bool operator<(const Panel& o) const { return error < o.error; }
};

// QUADPACK qk15 on [a, b].
template <class G>
Panel gk15(G& g, int piece, double a, double b) {
  const double centr = 0.5 * (a + b);
  const double hlgth = 0.5 * (b - a);
  const double fc = g(piece, centr);
  double resg = fc * kWg[3];
  double resk = fc * kWgk[7];
  double resabs = std::abs(resk);
  std::array<double, 7> fv1{}, fv2{};
  for (int j = 0; j < 7; ++j) {
    const double absc = hlgth * kXgk[j];
    const double f1 = g(piece, centr - absc);
    const double f2 = g(piece, centr + absc);
    fv1[j] = f1;
    fv2[j] = f2;
    resk += kWgk[j] * (f1 + f2);
    resabs += kWgk[j] * (std::abs(f1) + std::abs(f2));
    if (j % 2 == 1) resg += kWg[j / 2] * (f1 + f2);
  }
  const double reskh = resk * 0.5;
  double resasc = kWgk[7] * std::abs(fc - reskh);
  for (int j = 0; j < 7; ++j) resasc += kWgk[j] * (std::abs(fv1[j] - reskh) + std::abs(fv2[j] - reskh));
  const double result = resk * hlgth;
  resabs *= std::abs(hlgth);
  resasc *= std::abs(hlgth);
  double err = std::abs((resk - resg) * hlgth);
  if (resasc != 0.0 && err != 0.0) err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
  const double eps = std::numeric_limits<double>::epsilon();
  if (resabs > std::numeric_limits<double>::min() / (50.0 * eps)) err = std::max(50.0 * eps * resabs, err);
  return {piece, a, b, result, err};
}

template <class G>
QuadratureResult adaptive(G& g, int pieces, double tol, std::size_t max_panels, std::size_t& evaluations) {
  std::priority_queue<Panel> heap;
  double total = 0.0, total_err = 0.0;
  for (int piece = 0; piece < pieces; ++piece) {
    Panel p = gk15(g, piece, 0.0, 1.0);
    total += p.value;
    total_err += p.error;
    heap.push(p);
  }
  std::size_t panels = static_cast<std::size_t>(pieces);
  while (total_err > tol * std::max(1.0, std::abs(total))) {
    if (panels >= max_panels) {
      throw Error(ErrorKind::ToleranceNotMet, "quadrature error " + std::to_string(total_err) +
                                                  " above tolerance after " + std::to_string(panels) + " panels");
    }
    Panel worst = heap.top();
    heap.pop();
    const double mid = 0.5 * (worst.a + worst.b);
    if (!(mid > worst.a && mid < worst.b)) {
      throw Error(ErrorKind::ToleranceNotMet, "quadrature panel cannot be split further");
    }
    Panel left = gk15(g, worst.piece, worst.a, mid);
    Panel right = gk15(g, worst.piece, mid, worst.b);
    total += left.value + right.value - worst.value;
    total_err += left.error + right.error - worst.error;
    heap.push(left);
    heap.push(right);
    ++panels;
  }
  // Re-sum from the panels to shed the drift of the running updates.
  total = 0.0;
  total_err = 0.0;
  while (!heap.empty()) {
    total += heap.top().value;
    total_err += heap.top().error;
    heap.pop();
  }
  return {total, total_err, evaluations};
}

}  // namespace detail

/// Integral of f over [lo, +inf). Refines until the estimated error is below
/// tol * max(1, |value|); throws ToleranceNotMet when the panel budget runs out.
template <class F>
QuadratureResult integrate_semiinfinite(F&& f, double lo, double tol, const QuadratureOptions& opt = {}) {
  std::size_t evaluations = 0;
  const double p = opt.near_power;
  const double k = opt.tail_power;
  auto g = [&](int piece, double t) -> double {
    double x, jac;
    if (piece == 0) {
      x = lo + std::pow(t, p);
      jac = p * std::pow(t, p - 1.0);
    } else {
      const double tk = std::pow(t, -k);
      if (!std::isfinite(tk)) return 0.0;
      x = lo + tk;
      jac = k * tk / t;
      if (!std::isfinite(jac)) return 0.0;
    }
    ++evaluations;
    const double v = f(x);
    if (!std::isfinite(v)) {
      throw Error(ErrorKind::DomainError, "integrand not finite at x = " + std::to_string(x));
    }
    return v == 0.0 ? 0.0 : v * jac;
  };
  return detail::adaptive(g, 2, tol, opt.max_panels, evaluations);
}

/// Integral of f over the finite interval [a, b].
template <class F>
QuadratureResult integrate_interval(F&& f, double a, double b, double tol, std::size_t max_panels = 4000) {
  std::size_t evaluations = 0;
  auto g = [&](int, double t) -> double {
    ++evaluations;
    const double v = f(a + (b - a) * t);
    if (!std::isfinite(v)) {
      throw Error(ErrorKind::DomainError, "integrand not finite");
    }
    return v * (b - a);
  };
  return detail::adaptive(g, 1, tol, max_panels, evaluations);
}

/// E|X|^r = integral of |x|^r pdf(x) over [lo, +inf).
template <class Pdf>
QuadratureResult abs_moment_by_quadrature(Pdf&& pdf, double r, double lo, double tol,
                                          const QuadratureOptions& opt = {}) {
  return integrate_semiinfinite(
      [&](double x) {
        const double f = pdf(x);
        if (f == 0.0) return 0.0;
        return std::pow(std::abs(x), r) * f;
      },
      lo, tol, opt);
}

}  // namespace moq::oracle
