#pragma once
/// Deterministic Aberth-Ehrlich simultaneous root finder for polynomials with
/// complex coefficients.  No randomness: initial guesses sit on a circle of
/// radius (|c_0|/|c_n|)^{1/n} with a fixed angular offset chosen to avoid the
/// coordinate axes (our target polynomials have roots symmetric about both).

#include <cmath>
#include <complex>
#include <stdexcept>
#include <vector>

#include "ptscatter/core.hpp"

namespace ptscatter::detail {

/// Horner evaluation of p (ascending coefficients), its derivative, and the
/// running magnitude bound scale = sum |c_i| |z|^i used for the stopping test.
inline void poly_eval(const std::vector<Complex>& c, Complex z, Complex& p, Complex& dp,
                      double& scale) {
  const int n = static_cast<int>(c.size()) - 1;
  p = c[n];
  dp = Complex(0.0, 0.0);
  scale = std::abs(c[n]);
  const double az = std::abs(z);
  for (int i = n - 1; i >= 0; --i) {
    dp = dp * z + p;
    p = p * z + c[i];
    scale = scale * az + std::abs(c[i]);
  }
}

/// All roots of the polynomial given by ascending coefficients.  Exact zero
/// leading coefficients are stripped (degree drops); exact zero trailing
/// coefficients yield roots at the origin.  Throws RootFindingFailure if the
/// iteration has not settled after max_sweeps.
inline std::vector<Complex> aberth_roots(std::vector<Complex> coeffs, int max_sweeps = 200,
                                         double tol = 1e-13) {
  while (coeffs.size() > 1 && coeffs.back() == Complex(0.0, 0.0)) coeffs.pop_back();
  const int n = static_cast<int>(coeffs.size()) - 1;
  if (n <= 0) return {};
  std::vector<Complex> roots;
  roots.reserve(n);
  int zeros_at_origin = 0;
  while (zeros_at_origin < n && coeffs[zeros_at_origin] == Complex(0.0, 0.0))
    ++zeros_at_origin;
  for (int i = 0; i < zeros_at_origin; ++i) roots.push_back(Complex(0.0, 0.0));
  if (zeros_at_origin > 0)
    coeffs.erase(coeffs.begin(), coeffs.begin() + zeros_at_origin);
  const int m = static_cast<int>(coeffs.size()) - 1;
  if (m == 0) return roots;
  if (m == 1) {
    roots.push_back(-coeffs[0] / coeffs[1]);
    return roots;
  }

  double r0 = std::pow(std::abs(coeffs[0] / coeffs[m]), 1.0 / m);
  if (!(r0 > 1e-6)) r0 = 1e-6;
  if (!(r0 < 1e6)) r0 = 1e6;
  std::vector<Complex> z(m);
  for (int j = 0; j < m; ++j) {
    const double th = 2.0 * kPi * (j + 0.5) / m + 0.7390851332151607;  // off-axis offset
    z[j] = r0 * Complex(std::cos(th), std::sin(th));
  }

  std::vector<bool> settled(m, false);
  for (int sweep = 0; sweep < max_sweeps; ++sweep) {
    bool all_settled = true;
    for (int i = 0; i < m; ++i) {
      Complex p, dp;
      double scale;
      poly_eval(coeffs, z[i], p, dp, scale);
      if (std::abs(p) <= 8.0 * 2.22e-16 * scale) {
        settled[i] = true;
        continue;
      }
      Complex newton;
      if (dp == Complex(0.0, 0.0)) {
        newton = Complex(tol, tol);  // nudge off a stationary point
      } else {
        newton = p / dp;
      }
      Complex repulsion(0.0, 0.0);
      for (int j = 0; j < m; ++j) {
        if (j == i) continue;
        const Complex d = z[i] - z[j];
        if (std::abs(d) > 1e-300) repulsion += 1.0 / d;
      }
      const Complex denom = 1.0 - newton * repulsion;
      const Complex w = (std::abs(denom) > 1e-300) ? newton / denom : newton;
      z[i] -= w;  // Gauss-Seidel update: later roots see this move immediately
      if (std::abs(w) <= tol * std::max(std::abs(z[i]), 1e-12)) {
        settled[i] = true;
      } else {
        settled[i] = false;
        all_settled = false;
      }
    }
    if (all_settled) break;
    if (sweep + 1 == max_sweeps) {
      // Accept anyway if every residual is tiny relative to the local scale
      // (multiple roots converge in value long before the step criterion).
      for (int i = 0; i < m; ++i) {
        Complex p, dp;
        double scale;
        poly_eval(coeffs, z[i], p, dp, scale);
        if (std::abs(p) > 1e3 * 2.22e-16 * scale)
          throw RootFindingFailure("aberth_roots: iteration did not settle");
      }
    }
  }
  roots.insert(roots.end(), z.begin(), z.end());
  return roots;
}

}  // namespace ptscatter::detail
