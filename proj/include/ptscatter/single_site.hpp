#pragma once
/// Single imaginary on-site potential i*gamma at site 0 of the infinite chain.
///
/// Matching psi_j = A e^{ikj} + B e^{-ikj} (j <= 0), psi_j = C e^{ikj}
/// (j >= 0) across the defect gives one linear condition and the amplitudes
///
///     tau = C/A = 2 t_h sin k / (2 t_h sin k + gamma)
///     rho = B/A =        -gamma / (2 t_h sin k + gamma)
///
/// whence the exact sum rule tau - rho = 1 (amplitudes, not probabilities).
/// The common denominator vanishes when sin k = gamma / (2|t_h|), possible
/// only for gamma < 2|t_h|: a spectral singularity where both T = |tau|^2 and
/// R = |rho|^2 diverge (lasing / coherent-perfect-absorption pair).  The
/// bound/virtual companion spectrum comes from the quadratic
/// t_h beta^2 + i gamma beta - t_h = 0, i.e. E_pm = +-sqrt(4 t_h^2 - gamma^2)
/// with an exceptional point at gamma = 2|t_h| (E collapses to 0 at k = pi/2).

#include <cmath>
#include <complex>
#include <stdexcept>

#include "ptscatter/core.hpp"

namespace ptscatter {

/// Transmission/reflection data for the single scatterer at real k.
struct SingleSiteAmplitudes {
  Complex tau;        ///< transmission amplitude (real-valued here)
  Complex rho;        ///< reflection amplitude (real-valued here)
  double t_prob;      ///< T = |tau|^2
  double r_prob;      ///< R = |rho|^2
  double sum_defect;  ///< T + R - 1 (nonzero: the potential is non-Hermitian)
};

/// Amplitudes for a propagating wave, k in (0, pi).
/// Throws DivergentAmplitude when |2 t_h sin k + gamma| < eps_div.
inline SingleSiteAmplitudes single_amplitudes(double t_h, double gamma, double k,
                                              double eps_div = kEpsDivergence) {
  if (!(k > 0.0 && k < kPi))
    throw std::domain_error("single_amplitudes: k must lie in (0, pi)");
  const double s = std::sin(k);
  const double denom = 2.0 * t_h * s + gamma;
  if (std::abs(denom) < eps_div)
    throw DivergentAmplitude("single_amplitudes: spectral singularity, 2 t_h sin k + gamma = 0",
                             k, std::abs(denom));
  SingleSiteAmplitudes a;
  a.tau = Complex(2.0 * t_h * s / denom, 0.0);
  a.rho = Complex(-gamma / denom, 0.0);
  a.t_prob = std::norm(a.tau);
  a.r_prob = std::norm(a.rho);
  a.sum_defect = a.t_prob + a.r_prob - 1.0;
  return a;
}

/// Discrete eigenvalues E_pm = +-sqrt(4 t_h^2 - gamma^2) of the single
/// scatterer (roots of t_h beta^2 + i gamma beta - t_h = 0 fed through the
/// dispersion).  Real below the exceptional point gamma = 2|t_h|, zero at it,
/// purely imaginary above.
inline TwoSiteSpectrum single_eigenvalues(double t_h, double gamma) {
  const Complex root = std::sqrt(Complex(4.0 * t_h * t_h - gamma * gamma, 0.0));
  return {root, -root};
}

/// Probability sum T + R = (4 t_h^2 sin^2 k + gamma^2) /
/// (4 t_h^2 sin^2 k + gamma^2 + 4 t_h gamma sin k).  For t_h < 0, gamma > 0
/// the cross term is negative, so T + R > 1: the lone defect always amplifies.
inline double single_sum_rule(double t_h, double gamma, double k,
                              double eps_div = kEpsDivergence) {
  if (!(k > 0.0 && k < kPi))
    throw std::domain_error("single_sum_rule: k must lie in (0, pi)");
  const double s = std::sin(k);
  const double q = 4.0 * t_h * t_h * s * s + gamma * gamma;
  const double denom = q + 4.0 * t_h * gamma * s;
  if (std::abs(denom) < eps_div * eps_div)
    throw DivergentAmplitude("single_sum_rule: spectral singularity", k, std::sqrt(std::abs(denom)));
  return q / denom;
}

/// Both roots of the outgoing-wave quadratic t_h beta^2 + i gamma beta - t_h = 0.
/// Feeding them through E = t_h (beta + 1/beta) reproduces single_eigenvalues.
struct SingleSiteBetas {
  Complex beta_plus;
  Complex beta_minus;
};

inline SingleSiteBetas single_betas(double t_h, double gamma) {
  if (t_h == 0.0) throw std::invalid_argument("single_betas: t_h must be nonzero");
  const Complex disc = std::sqrt(Complex(4.0 * t_h * t_h - gamma * gamma, 0.0));
  const Complex minus_ig(0.0, -gamma);
  return {(minus_ig + disc) / (2.0 * t_h), (minus_ig - disc) / (2.0 * t_h)};
}

}  // namespace ptscatter
