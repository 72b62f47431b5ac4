#pragma once

#include <cmath>
#include <complex>
#include <utility>

#include "srgeo/errors.hpp"

namespace srgeo {

namespace detail {

// 15-point Kronrod nodes on [0,1] side, embedded 7-point Gauss weights.
// Node, Gauss weight (0 for Kronrod-only nodes), Kronrod weight.
inline constexpr double kGK15[8][3] = {
    {0.000000000000000, 0.417959183673469, 0.209482141084728},
    {0.405845151377397, 0.381830050505119, 0.190350578064785},
    {0.741531185599394, 0.279705391489277, 0.140653259715525},
    {0.949107912342759, 0.129484966168870, 0.063092092629979},
    {0.207784955007898, 0.0, 0.204432940075298},
    {0.586087235467691, 0.0, 0.169004726639267},
    {0.864864423359769, 0.0, 0.104790010322250},
    {0.991455371120813, 0.0, 0.022935322010529},
};

template <class F>
std::pair<std::complex<double>, double> gk15(const F& f, double a, double b) {
  const double mid = 0.5 * (a + b);
  const double half = 0.5 * (b - a);

  std::complex<double> y0 = f(mid);
  std::complex<double> g7 = kGK15[0][1] * y0;
  std::complex<double> k15 = kGK15[0][2] * y0;
  for (int i = 1; i < 8; ++i) {
    const double dx = half * kGK15[i][0];
    std::complex<double> yi = f(mid + dx) + f(mid - dx);
    g7 += kGK15[i][1] * yi;
    k15 += kGK15[i][2] * yi;
  }
  g7 *= half;
  k15 *= half;
  return {k15, std::abs(k15 - g7)};
}

}  // namespace detail

/// Adaptive Gauss-Kronrod (G7/K15) quadrature of a complex-valued integrand
/// over the real interval [a,b], bisecting until the local error estimate
/// fits within the proportional share of abs_tol. Throws ConvergenceError
/// when the subdivision depth limit is reached.
template <class F>
std::complex<double> integrate_gk(const F& f, double a, double b, double abs_tol,
                                  int max_depth = 48) {
  struct Frame {
    double a, b, tol;
    int depth;
  };
  Frame stack[64];
  int top = 0;
  stack[top++] = {a, b, abs_tol, 0};

  std::complex<double> total = 0.0;
  while (top > 0) {
    Frame fr = stack[--top];
    auto [value, err] = detail::gk15(f, fr.a, fr.b);
    if (err <= fr.tol || err <= 1e-16 * std::abs(value)) {
      total += value;
      continue;
    }
    if (fr.depth >= max_depth)
      throw ConvergenceError("quadrature did not converge after maximum subdivisions");
    const double mid = 0.5 * (fr.a + fr.b);
    stack[top++] = {fr.a, mid, 0.5 * fr.tol, fr.depth + 1};
    stack[top++] = {mid, fr.b, 0.5 * fr.tol, fr.depth + 1};
  }
  return total;
}

}  // namespace srgeo
