#pragma once
/// Closed-form scattering of the PT pair (+i*gamma at site 0, -i*gamma at
/// site L) and its Fabry-Perot bounce-series expansion.
///
/// With s = sin k and the round-trip phase e^{2ikL}, the common denominator is
///
///     D(k) = 4 t_h^2 s^2 + gamma^2 (e^{2ikL} - 1)
///
/// and the amplitudes for a wave incident from the gain side (left) are
///
///     tau      = 4 t_h^2 s^2 / D
///     rho      =  gamma (2 t_h s - gamma)(e^{2ikL} - 1) / D
///     tau_rev  = tau                       (transmission is side-independent)
///     rho_rev  = -gamma (2 t_h s + gamma)(e^{2ikL} - 1) / D
///
/// (rho_rev follows from gamma -> -gamma).  Probabilities obey the exact
/// modulation relations R = alpha (1 - T) and R_rev = (1 - T)/alpha with
/// alpha = (gamma - 2 t_h s)/(gamma + 2 t_h s), so T <= 1 forces opposite-side
/// amplification and vice versa.  |D|^2 = 4 Delta with the real denominator
///
///     Delta = 4 t_h^4 s^4 + gamma^2 (gamma^2 - 4 t_h^2 s^2) sin^2(kL),
///
/// which makes the regime split visible: for gamma > 2|t_h| (no propagating
/// divergences) Delta >= 4 t_h^4 s^4 and the pair behaves as a Fabry-Perot
/// cavity with perfect-transmission resonances at k = n pi / L; for
/// gamma < 2|t_h| the denominator can vanish where both sin(kL)-conditions
/// align, giving the ladder of spectral singularities
/// k_n = (2n-1) pi / (2L), gamma_n = sqrt(2) |t_h| sin k_n.

#include <cmath>
#include <complex>
#include <stdexcept>
#include <vector>

#include "ptscatter/core.hpp"

namespace ptscatter {

/// Full two-sided scattering data at one real wave number.
struct ScatteringAmplitudes {
  Complex tau;       ///< transmission amplitude, incidence on the gain site
  Complex rho;       ///< reflection amplitude, incidence on the gain site
  Complex tau_rev;   ///< transmission amplitude, incidence on the loss site
  Complex rho_rev;   ///< reflection amplitude, incidence on the loss site
  double t_prob;     ///< T      = |tau|^2
  double r_prob;     ///< R      = |rho|^2
  double t_prob_rev; ///< T_rev  = |tau_rev|^2 = T
  double r_prob_rev; ///< R_rev  = |rho_rev|^2
  double defect_left;   ///< T + R - 1
  double defect_right;  ///< T_rev + R_rev - 1
  bool band_edge = false;  ///< k hit sin k = 0; continuity limit was returned
};

/// D(k) = 4 t_h^2 sin^2 k + gamma^2 (e^{2ikL} - 1), valid for complex k.
/// Zeros off the real axis are the Siegert poles of the pair.
inline Complex fp_denominator(const LatticeParams& p, Complex k) {
  const Complex s = std::sin(k);
  const Complex e2 = std::exp(Complex(0.0, 2.0) * k * static_cast<double>(p.L));
  return 4.0 * p.t_h * p.t_h * s * s + p.gamma * p.gamma * (e2 - 1.0);
}

/// dD/dk = 4 t_h^2 sin 2k + 2 i L gamma^2 e^{2ikL} (for Newton refinement).
inline Complex fp_denominator_derivative(const LatticeParams& p, Complex k) {
  const Complex e2 = std::exp(Complex(0.0, 2.0) * k * static_cast<double>(p.L));
  return 4.0 * p.t_h * p.t_h * std::sin(2.0 * k) +
         Complex(0.0, 2.0 * p.L) * p.gamma * p.gamma * e2;
}

/// Real probability denominator Delta = |D|^2 / 4 in its cancellation-free
/// form 4 t^4 s^4 + gamma^2 (gamma^2 - 4 t^2 s^2) sin^2(kL).
inline double fp_delta(const LatticeParams& p, double k) {
  const double s = std::sin(k);
  const double t2s2 = 4.0 * p.t_h * p.t_h * s * s;
  const double skl = std::sin(k * p.L);
  return 0.25 * t2s2 * t2s2 + p.gamma * p.gamma * (p.gamma * p.gamma - t2s2) * skl * skl;
}

/// 1 - T in the cancellation-free closed form
/// gamma^2 (gamma^2 - 4 t^2 s^2) sin^2(kL) / Delta.  Use this instead of
/// subtracting |tau|^2 from 1 when T is close to 1.
inline double one_minus_transmission(const LatticeParams& p, double k) {
  const double s = std::sin(k);
  const double t2s2 = 4.0 * p.t_h * p.t_h * s * s;
  const double skl = std::sin(k * p.L);
  return p.gamma * p.gamma * (p.gamma * p.gamma - t2s2) * skl * skl / fp_delta(p, k);
}

/// Closed-form amplitudes of the PT pair at real k in (0, pi).
/// Band edges (|sin k| < kEpsBandEdge) return the continuity limit
/// (tau = 0, rho = rho_rev = -1 for gamma > 0) flagged band_edge.
/// Throws DivergentAmplitude at spectral singularities (|D| < eps_div) and
/// std::invalid_argument if params is not the PT preset.
inline ScatteringAmplitudes pt_amplitudes(const LatticeParams& p, double k,
                                          double eps_div = kEpsDivergence) {
  if (!p.is_pt())
    throw std::invalid_argument("pt_amplitudes: params must be the PT preset (use the direct solver otherwise)");
  if (!(k >= 0.0 && k <= kPi))
    throw std::domain_error("pt_amplitudes: k must lie in [0, pi]");
  ScatteringAmplitudes a;
  const double s = std::sin(k);
  if (std::abs(s) < kEpsBandEdge) {
    // 0/0 limit: for gamma > 0 the linear-in-k denominator term dominates the
    // quadratic numerator, so tau -> 0 and rho -> -1 from inside the band.
    a.band_edge = true;
    if (p.gamma == 0.0) {
      a.tau = a.tau_rev = Complex(1.0, 0.0);
      a.rho = a.rho_rev = Complex(0.0, 0.0);
    } else {
      a.tau = a.tau_rev = Complex(0.0, 0.0);
      a.rho = a.rho_rev = Complex(-1.0, 0.0);
    }
  } else {
    const Complex e2m1 =
        std::exp(Complex(0.0, 2.0 * k * p.L)) - 1.0;
    const double ts = 2.0 * p.t_h * s;
    const Complex d = ts * ts + p.gamma * p.gamma * e2m1;
    if (std::abs(d) < eps_div)
      throw DivergentAmplitude("pt_amplitudes: spectral singularity, D(k) = 0", k, std::abs(d));
    a.tau = ts * ts / d;
    a.tau_rev = a.tau;
    a.rho = p.gamma * (ts - p.gamma) * e2m1 / d;
    a.rho_rev = -p.gamma * (ts + p.gamma) * e2m1 / d;
  }
  a.t_prob = std::norm(a.tau);
  a.r_prob = std::norm(a.rho);
  a.t_prob_rev = std::norm(a.tau_rev);
  a.r_prob_rev = std::norm(a.rho_rev);
  a.defect_left = a.t_prob + a.r_prob - 1.0;
  a.defect_right = a.t_prob_rev + a.r_prob_rev - 1.0;
  return a;
}

// ---------------------------------------------------------------------------
// Single-barrier S-matrix and the bounce series built from it.  This is an
// independent route to the pair amplitudes: nothing here touches D(k).
// ---------------------------------------------------------------------------

/// S-matrix entries of one on-site potential v in the infinite chain:
///     tau = 2 i t_h sin k / (2 i t_h sin k + v),  rho = -v / (2 i t_h sin k + v),
/// identical from either side (a point defect has no orientation).
struct SingleBarrierSMatrix {
  Complex tau;
  Complex rho;
  Complex tau_rev;
  Complex rho_rev;
};

inline SingleBarrierSMatrix single_barrier_smatrix(double t_h, Complex v, double k,
                                                   double eps_div = kEpsDivergence) {
  if (!(k > 0.0 && k < kPi))
    throw std::domain_error("single_barrier_smatrix: k must lie in (0, pi)");
  const Complex its(0.0, 2.0 * t_h * std::sin(k));
  const Complex denom = its + v;
  if (std::abs(denom) < eps_div)
    throw DivergentAmplitude("single_barrier_smatrix: barrier singularity, 2 i t_h sin k + v = 0",
                             k, std::abs(denom));
  SingleBarrierSMatrix s;
  s.tau = its / denom;
  s.rho = -v / denom;
  s.tau_rev = s.tau;
  s.rho_rev = s.rho;
  return s;
}

/// Result of the multiple-reflection (Fabry-Perot bounce) summation.  When
/// the bounce ratio q = rho_L e^{2ikL} rho_0 has |q| >= 1 the geometric series
/// diverges; the partial sums are still returned with diverged = true so the
/// caller can inspect them.
struct FpSeriesResult {
  Complex tau;           ///< summed (or partial) transmission amplitude
  Complex rho;           ///< summed (or partial) reflection amplitude
  Complex bounce_ratio;  ///< q
  int terms = 0;         ///< bounce orders actually accumulated
  bool converged = false;
  bool diverged = false;  ///< |q| >= 1
};

/// Sum the bounce series term-recursively (term_{m+1} = q * term_m; no closed
/// geometric formula is used).  Convergence: the last added term is below
/// tol * |partial sum| for both amplitudes.
inline FpSeriesResult fp_series_sum(const LatticeParams& p, double k, int max_terms = 200,
                                    double tol = 1e-12, double eps_div = kEpsDivergence) {
  if (max_terms < 1) throw std::invalid_argument("fp_series_sum: max_terms must be >= 1");
  const SingleBarrierSMatrix b0 = single_barrier_smatrix(p.t_h, p.v0, k, eps_div);
  const SingleBarrierSMatrix bL = single_barrier_smatrix(p.t_h, p.vL, k, eps_div);
  const Complex phase = std::exp(Complex(0.0, 2.0 * k * p.L));

  FpSeriesResult r;
  // In chain-global coordinates a barrier at site L reflects with an extra
  // round-trip phase e^{2ikL}; transmission amplitudes carry no such phase.
  r.bounce_ratio = bL.rho * phase * b0.rho_rev;

  Complex term_t = b0.tau * bL.tau;                  // direct transit
  Complex term_r = b0.tau * bL.rho * phase * b0.tau_rev;  // one round trip
  Complex sum_t = term_t;
  Complex sum_r = b0.rho + term_r;
  r.terms = 1;
  for (int m = 1; m < max_terms; ++m) {
    term_t *= r.bounce_ratio;
    term_r *= r.bounce_ratio;
    sum_t += term_t;
    sum_r += term_r;
    ++r.terms;
    if (std::abs(term_t) <= tol * std::abs(sum_t) &&
        std::abs(term_r) <= tol * std::abs(sum_r)) {
      r.converged = true;
      break;
    }
  }
  r.tau = sum_t;
  r.rho = sum_r;
  if (std::abs(r.bounce_ratio) >= 1.0) {
    r.diverged = true;
    r.converged = false;
  }
  return r;
}

// ---------------------------------------------------------------------------
// Modulation factor, unitarity defects, and the catalogue of special points.
// ---------------------------------------------------------------------------

/// alpha(k) = (gamma - 2 t_h sin k) / (gamma + 2 t_h sin k).  Relates the two
/// reflection probabilities to the common transmission: R = alpha (1 - T),
/// R_rev = (1 - T)/alpha.  Throws PoleOfAlpha where its denominator vanishes
/// (the single-barrier singularity gamma = 2|t_h| sin k).
inline double alpha_modulation(double t_h, double gamma, double k,
                               double eps_div = kEpsDivergence) {
  const double ts = 2.0 * t_h * std::sin(k);
  if (std::abs(gamma + ts) < eps_div)
    throw PoleOfAlpha("alpha_modulation: gamma + 2 t_h sin k = 0");
  return (gamma - ts) / (gamma + ts);
}

/// Unitarity defects in cancellation-free closed form:
///   T + R - 1         = -4 t_h gamma^2 sin k sin^2(kL) (gamma - 2 t_h sin k) / Delta
///   T_rev + R_rev - 1 = +4 t_h gamma^2 sin k sin^2(kL) (gamma + 2 t_h sin k) / Delta
/// For t_h < 0, gamma > 0 the left defect is >= 0 for every k; the right
/// defect is <= 0 exactly in the Fabry-Perot regime gamma > 2|t_h| sin k.
struct UnitarityDefects {
  double left;
  double right;
};

inline UnitarityDefects unitarity_defects(const LatticeParams& p, double k,
                                          double eps_div = kEpsDivergence) {
  const double s = std::sin(k);
  const double skl = std::sin(k * p.L);
  const double delta = fp_delta(p, k);
  if (std::abs(delta) < eps_div * eps_div)
    throw DivergentAmplitude("unitarity_defects: Delta = 0", k, std::sqrt(std::abs(delta)));
  const double common = 4.0 * p.t_h * p.gamma * p.gamma * s * skl * skl / delta;
  return {-common * (p.gamma - 2.0 * p.t_h * s), common * (p.gamma + 2.0 * p.t_h * s)};
}

/// One rung of the divergence ladder: D(k_n) = 0 at k_n = (2n-1) pi / (2L)
/// when gamma is tuned to gamma_n = sqrt(2) |t_h| sin k_n.
struct DivergencePoint {
  int n;
  double k;
  double gamma;
};

/// Catalogue of distinguished wave numbers of the pair.
struct SpecialPoints {
  std::vector<double> fp_resonances;  ///< perfect-transmission k = n pi / L, n = 1..L-1
  std::vector<DivergencePoint> divergence_ladder;  ///< n = 1..L
  std::vector<double> last_k;  ///< {pi/2} for odd L; {pi/2 -+ pi/(2L)} for even L
  double last_gamma;  ///< largest critical strength: sqrt(2)|t_h| (odd) or
                      ///< |t_h| sqrt(1 + cos(pi/L)) (even, simultaneous pair)
};

inline SpecialPoints special_points(const LatticeParams& p) {
  SpecialPoints sp;
  const double at = std::abs(p.t_h);
  sp.fp_resonances.reserve(p.L > 0 ? p.L - 1 : 0);
  for (int n = 1; n < p.L; ++n) sp.fp_resonances.push_back(n * kPi / p.L);
  sp.divergence_ladder.reserve(p.L);
  for (int n = 1; n <= p.L; ++n) {
    const double kn = (2.0 * n - 1.0) * kPi / (2.0 * p.L);
    sp.divergence_ladder.push_back({n, kn, std::sqrt(2.0) * at * std::sin(kn)});
  }
  if (p.L % 2 == 1) {
    sp.last_k = {kPi / 2.0};
    sp.last_gamma = std::sqrt(2.0) * at;
  } else {
    sp.last_k = {kPi / 2.0 - kPi / (2.0 * p.L), kPi / 2.0 + kPi / (2.0 * p.L)};
    sp.last_gamma = at * std::sqrt(1.0 + std::cos(kPi / p.L));
  }
  return sp;
}

/// Transmission amplitude at the last-divergence wave number(s) as a function
/// of gamma: 2 t^2 / (2 t^2 - gamma^2) for odd L (at k = pi/2), and
/// t^2 (1 + cos(pi/L)) / (t^2 (1 + cos(pi/L)) - gamma^2) for even L (at both
/// members of the simultaneous pair).  Diverges exactly at last_gamma.
inline Complex last_divergence_tau(double t_h, int L, double gamma) {
  const double t2 = t_h * t_h;
  if (L % 2 == 1) return Complex(2.0 * t2 / (2.0 * t2 - gamma * gamma), 0.0);
  const double c = t2 * (1.0 + std::cos(kPi / L));
  return Complex(c / (c - gamma * gamma), 0.0);
}

}  // namespace ptscatter
