#pragma once
/// Continuum (delta-potential) limit of the PT pair: +i*gt delta(x) at x = 0
/// and -i*gt delta(x - Lt), free particle with hbar^2/2m = 1 so E = k^2.
///
/// Matching plane waves across the two deltas gives the same Fabry-Perot
/// structure as the lattice with 2|t_h| sin k -> 2k:
///
///     Dc(k)   = 4 k^2 + gt^2 (e^{2 i k Lt} - 1)
///     tau     = 4 k^2 / Dc
///     rho     = -gt (2k + gt)(e^{2 i k Lt} - 1) / Dc     (gain-side incidence)
///     rho_rev = +gt (2k - gt)(e^{2 i k Lt} - 1) / Dc     (gt -> -gt)
///
/// Divergences require gt > 2k and sit at k_n = (2n-1) pi / (2 Lt) when
/// gt = sqrt(2) k_n; for k > gt/2 the pair is a Fabry-Perot cavity with
/// perfect transmission at k = n pi / Lt.  The lattice reproduces all of this
/// as a -> 0 under t_h = -1/a^2, on-site strengths +-i gt / a, k_latt = k a,
/// L = round(Lt / a): probabilities converge at O(a^2).

#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

#include "ptscatter/core.hpp"
#include "ptscatter/fabry_perot.hpp"
#include "ptscatter/siegert.hpp"

namespace ptscatter {

struct ContinuumParams {
  double gamma_t = 1.0;  ///< delta strength gt (> 0 for the PT convention)
  double L_t = 1.0;      ///< separation Lt (> 0)

  void validate() const {
    if (!(L_t > 0.0)) throw std::invalid_argument("ContinuumParams: L_t must be > 0");
  }
};

/// Dc(k) = 4 k^2 + gt^2 (e^{2ikLt} - 1), complex k allowed.
inline Complex continuum_denominator(const ContinuumParams& c, Complex k) {
  const Complex e2 = std::exp(Complex(0.0, 2.0) * k * c.L_t);
  return 4.0 * k * k + c.gamma_t * c.gamma_t * (e2 - 1.0);
}

inline Complex continuum_denominator_derivative(const ContinuumParams& c, Complex k) {
  const Complex e2 = std::exp(Complex(0.0, 2.0) * k * c.L_t);
  return 8.0 * k + Complex(0.0, 2.0 * c.L_t) * c.gamma_t * c.gamma_t * e2;
}

/// Two-sided amplitudes and probabilities at real k > 0.  Throws
/// DivergentAmplitude when |Dc| < eps_rel * (4k^2 + gt^2).
inline ScatteringAmplitudes continuum_amplitudes(const ContinuumParams& c, double k,
                                                 double eps_rel = 1e-10) {
  c.validate();
  if (!(k > 0.0)) throw std::domain_error("continuum_amplitudes: k must be > 0");
  const Complex e2m1 = std::exp(Complex(0.0, 2.0 * k * c.L_t)) - 1.0;
  const double gt = c.gamma_t;
  const Complex d = 4.0 * k * k + gt * gt * e2m1;
  if (std::abs(d) < eps_rel * (4.0 * k * k + gt * gt))
    throw DivergentAmplitude("continuum_amplitudes: spectral singularity, Dc(k) = 0", k,
                             std::abs(d));
  ScatteringAmplitudes a;
  a.tau = 4.0 * k * k / d;
  a.tau_rev = a.tau;
  a.rho = -gt * (2.0 * k + gt) * e2m1 / d;
  a.rho_rev = gt * (2.0 * k - gt) * e2m1 / d;
  a.t_prob = std::norm(a.tau);
  a.r_prob = std::norm(a.rho);
  a.t_prob_rev = std::norm(a.tau_rev);
  a.r_prob_rev = std::norm(a.rho_rev);
  a.defect_left = a.t_prob + a.r_prob - 1.0;
  a.defect_right = a.t_prob_rev + a.r_prob_rev - 1.0;
  a.band_edge = false;
  return a;
}

/// Poles of the continuum pair: Newton on Dc(k) seeded at the Fabry-Perot
/// (n pi / Lt) and divergence ((2n-1) pi / (2 Lt)) families inside the window
/// Re k in (0, k_max] (default 6 pi / Lt), deduplicated to 1e-8.  Each real
/// seed is tried at three imaginary depths: the asymptotic estimate
/// -ln(1 + 4k^2/gt^2)/(2 Lt) (high-k poles sink logarithmically), a shallow
/// -0.1, and +0.08 to catch low-k gain poles.  Seeds that fail to converge
/// are reported by message, not thrown: the surviving root list is still the
/// answer.
struct ContinuumPoleReport {
  std::vector<Pole> poles;  ///< sorted by (Re k, Im k); energy = k^2
  std::vector<std::string> failed_seeds;
};

inline ContinuumPoleReport continuum_poles(const ContinuumParams& c, double k_max = -1.0) {
  c.validate();
  if (c.gamma_t == 0.0)
    throw DegenerateSpectrum("continuum_poles: gamma_t = 0 leaves Dc = 4 k^2, no discrete poles");
  if (k_max <= 0.0) k_max = 6.0 * kPi / c.L_t;
  std::vector<double> re_seeds;
  for (int n = 1; n * kPi / c.L_t <= k_max + 1e-12; ++n)
    re_seeds.push_back(n * kPi / c.L_t);
  for (int n = 1; (2 * n - 1) * kPi / (2.0 * c.L_t) <= k_max + 1e-12; ++n)
    re_seeds.push_back((2 * n - 1) * kPi / (2.0 * c.L_t));
  std::vector<Complex> seeds;
  for (const double r : re_seeds) {
    const double gt2 = c.gamma_t * c.gamma_t;
    const double depth = std::log1p(4.0 * r * r / gt2) / (2.0 * c.L_t);
    seeds.push_back(Complex(r, -depth));
    seeds.push_back(Complex(r, -0.1));
    seeds.push_back(Complex(r, 0.08));
  }

  ContinuumPoleReport rep;
  std::vector<Complex> roots;
  for (const Complex seed : seeds) {
    Complex k = seed;
    bool ok = false;
    for (int it = 0; it < 100; ++it) {
      const Complex d = continuum_denominator(c, k);
      const Complex dd = continuum_denominator_derivative(c, k);
      if (std::abs(dd) < 1e-30) break;
      const Complex step = d / dd;
      k -= step;
      if (std::abs(step) < 1e-14 * (1.0 + std::abs(k))) {
        ok = true;
        break;
      }
      if (std::abs(k) > 1e6) break;
    }
    const double scale = 4.0 * std::norm(k) + c.gamma_t * c.gamma_t;
    if (!ok || std::abs(continuum_denominator(c, k)) > 1e-10 * scale) {
      rep.failed_seeds.push_back("seed " + std::to_string(seed.real()) + (seed.imag() < 0 ? "-" : "+") +
                                 std::to_string(std::abs(seed.imag())) + "i did not converge");
      continue;
    }
    if (k.real() < 1e-9 || k.real() > k_max + 1e-9) continue;  // outside window
    bool dup = false;
    for (const Complex r : roots)
      if (std::abs(r - k) < 1e-8) dup = true;
    if (dup) continue;
    roots.push_back(k);
  }
  std::sort(roots.begin(), roots.end(), [](Complex a, Complex b) {
    if (a.real() != b.real()) return a.real() < b.real();
    return a.imag() < b.imag();
  });
  for (const Complex k : roots) {
    Pole p;
    p.wn = WaveNumber::from_k(k);
    p.energy = k * k;  // free particle, hbar^2/2m = 1
    p.label = classify_pole(k, &p.on_axis);
    p.residual = std::abs(continuum_denominator(c, k));
    rep.poles.push_back(p);
  }
  return rep;
}

/// One row of the discretization-convergence table.
struct LatticeContinuumRow {
  double a;       ///< lattice spacing
  int L;          ///< round(Lt / a)
  double t_latt;  ///< lattice T at k_latt = k a with t_h = -1/a^2, strengths +-i gt/a
  double r_latt;
  double t_cont;  ///< continuum T at k
  double r_cont;
  double err_t;   ///< |t_latt - t_cont| / max(t_cont, 1)
  double err_r;
};

/// Discretize the continuum pair on successively finer lattices and compare
/// transmission/reflection probabilities at a fixed physical wave number k.
inline std::vector<LatticeContinuumRow> lattice_continuum_check(
    const ContinuumParams& c, double k, const std::vector<double>& spacings) {
  c.validate();
  if (!(k > 0.0)) throw std::domain_error("lattice_continuum_check: k must be > 0");
  const ScatteringAmplitudes cont = continuum_amplitudes(c, k);
  std::vector<LatticeContinuumRow> rows;
  rows.reserve(spacings.size());
  for (const double a : spacings) {
    if (!(a > 0.0))
      throw std::invalid_argument("lattice_continuum_check: spacings must be > 0");
    LatticeContinuumRow row;
    row.a = a;
    row.L = static_cast<int>(std::llround(c.L_t / a));
    const LatticeParams lp = LatticeParams::pt(-1.0 / (a * a), c.gamma_t / a, row.L);
    const ScatteringAmplitudes latt = pt_amplitudes(lp, k * a);
    row.t_latt = latt.t_prob;
    row.r_latt = latt.r_prob;
    row.t_cont = cont.t_prob;
    row.r_cont = cont.r_prob;
    row.err_t = std::abs(row.t_latt - row.t_cont) / std::max(row.t_cont, 1.0);
    row.err_r = std::abs(row.r_latt - row.r_cont) / std::max(row.r_cont, 1.0);
    rows.push_back(row);
  }
  return rows;
}

}  // namespace ptscatter
