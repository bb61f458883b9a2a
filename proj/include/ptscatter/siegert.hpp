#pragma once
/// Siegert (purely outgoing) states of the PT pair: the discrete complex wave
/// numbers where D(k) = 4 t^2 sin^2 k + gamma^2 (e^{2ikL} - 1) vanishes.
///
/// In the Bloch variable beta = e^{ik},
///
///     beta^2 D = -t^2 (beta^2 - 1)^2 + gamma^2 beta^2 (beta^{2L} - 1) =: P(beta),
///
/// and P always carries the two spurious band-edge roots beta = +-1 (zero
/// group velocity, not poles).  They deflate exactly with integer algebra,
/// P(beta) = (beta^2 - 1) Q(beta), leaving the pole polynomial
///
///     Q(beta) = -t^2 (beta^2 - 1) + gamma^2 beta^2 sum_{j=0}^{L-1} beta^{2j},
///
/// of degree 2L with Q(+-1) = gamma^2 L != 0.  Q is even with real
/// coefficients, so roots come in {beta, -beta} and {beta, conj(beta)} pairs:
/// on the principal strip Re k in (-pi, pi] the pole set is closed under
/// k -> -conj(k) and mirror-symmetric about Re k = pi/2.  Exactly 2L poles.
///
/// Two independent routes are provided: Aberth-Ehrlich on Q followed by a
/// Newton polish on D(k) itself, and a linearized quadratic pencil
/// beta^2 U + beta V + W (the beta-graded split of beta * M_L) solved as a
/// generalized eigenproblem by shift-invert.  U is singular at its two
/// corners, so the pencil carries exactly two infinite eigenvalues; the 2L
/// finite ones reproduce the roots of Q because
/// det(beta^2 U + beta V + W) = (-t)^{L-1} Q(beta).

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

#include "ptscatter/core.hpp"
#include "ptscatter/detail/aberth.hpp"
#include "ptscatter/fabry_perot.hpp"

namespace ptscatter {

enum class PoleClass { bound, anti_bound, resonant, anti_resonant, gain };

inline const char* pole_class_name(PoleClass c) {
  switch (c) {
    case PoleClass::bound: return "bound";
    case PoleClass::anti_bound: return "anti-bound";
    case PoleClass::resonant: return "resonant";
    case PoleClass::anti_resonant: return "anti-resonant";
    case PoleClass::gain: return "gain";
  }
  return "unknown";
}

/// Quadrant rules on the principal strip: positive/negative imaginary axis ->
/// bound/anti-bound; fourth quadrant -> resonant; third -> anti-resonant;
/// anything above the real axis and off the imaginary axis -> gain (a pole at
/// real k is the divergent-transmission condition; its mirror at Re k < 0 is
/// labelled gain as well).  |Im k| < eps_axis raises the on_axis flag and
/// classifies by the actual sign of Im k.
inline PoleClass classify_pole(Complex k, bool* on_axis = nullptr,
                               double eps_axis = kEpsOnAxis) {
  const double re = k.real();
  const double im = k.imag();
  if (on_axis) *on_axis = std::abs(im) < eps_axis;
  if (std::abs(re) < eps_axis) return im >= 0.0 ? PoleClass::bound : PoleClass::anti_bound;
  if (im > 0.0) return PoleClass::gain;
  return re > 0.0 ? PoleClass::resonant : PoleClass::anti_resonant;
}

struct Pole {
  WaveNumber wn;
  Complex energy;    ///< 2 t_h cos k
  PoleClass label;
  bool on_axis;
  double residual;   ///< |D(k)| at the accepted root
};

struct PoleSet {
  LatticeParams params;
  std::vector<Pole> poles;  ///< sorted by (Re k, Im k); exactly 2L entries
};

/// Ascending coefficients of Q(beta); degree 2L, odd coefficients zero.
/// Throws DegenerateSpectrum at gamma = 0 (Q collapses to the deflated
/// band-edge content; no discrete poles exist).
inline std::vector<Complex> siegert_polynomial(const LatticeParams& p) {
  if (!p.is_pt())
    throw std::invalid_argument("siegert_polynomial: params must be the PT preset");
  if (p.gamma == 0.0)
    throw DegenerateSpectrum("siegert_polynomial: gamma = 0 leaves no discrete poles");
  const double t2 = p.t_h * p.t_h;
  const double g2 = p.gamma * p.gamma;
  std::vector<Complex> c(2 * p.L + 1, Complex(0.0, 0.0));
  c[0] = Complex(t2, 0.0);
  c[2] += Complex(-t2, 0.0);
  for (int j = 0; j < p.L; ++j) c[2 * j + 2] += Complex(g2, 0.0);
  return c;
}

namespace detail {

/// Newton-polish a wave number onto the nearest zero of D(k).  Stationary
/// derivative (an exceptional point is a double zero) stops the polish early;
/// the polynomial root is already accurate there.
inline Complex polish_on_denominator(const LatticeParams& p, Complex k) {
  for (int it = 0; it < 40; ++it) {
    const Complex d = fp_denominator(p, k);
    const Complex dd = fp_denominator_derivative(p, k);
    if (std::abs(dd) < 1e-30) break;
    const Complex step = d / dd;
    if (std::abs(step) > 0.5) break;  // refuse wild steps; keep the root found
    k -= step;
    if (std::abs(step) < 1e-15 * (1.0 + std::abs(k))) break;
  }
  return k;
}

/// Local magnitude scale of D at complex k (for relative residual tests).
inline double denominator_scale(const LatticeParams& p, Complex k) {
  const Complex s = std::sin(k);
  const double e2 = std::exp(-2.0 * p.L * k.imag());
  return 4.0 * p.t_h * p.t_h * std::norm(s) / std::max(1.0, std::abs(s)) +
         p.gamma * p.gamma * (e2 + 1.0);
}

}  // namespace detail

struct FindPolesOptions {
  int max_sweeps = 200;       ///< Aberth iteration budget
  double tol = 1e-13;         ///< Aberth relative step tolerance
  double residual_rel = 1e-9; ///< accepted |D(k)| relative to the local scale
};

/// All 2L Siegert poles on the principal strip, each polished on D(k),
/// classified and sorted by (Re k, Im k).  Throws DegenerateSpectrum at
/// gamma = 0 and RootFindingFailure if the expected count or residual quality
/// is not met (e.g. the L = 1, gamma = |t_h| degree collapse, where the two
/// poles have receded to Im k = -inf and no discrete pole exists).
inline PoleSet find_poles(const LatticeParams& p, const FindPolesOptions& opt = {}) {
  const std::vector<Complex> coeffs = siegert_polynomial(p);
  std::vector<Complex> betas = detail::aberth_roots(coeffs, opt.max_sweeps, opt.tol);
  if (static_cast<int>(betas.size()) != 2 * p.L)
    throw RootFindingFailure(
        "find_poles: expected " + std::to_string(2 * p.L) + " roots, found " +
        std::to_string(betas.size()) + " (degenerate leading coefficients)");
  PoleSet ps;
  ps.params = p;
  ps.poles.reserve(betas.size());
  for (const Complex beta : betas) {
    WaveNumber wn = WaveNumber::from_beta(beta);
    wn = WaveNumber::from_k(detail::polish_on_denominator(p, wn.k));
    Pole pole;
    pole.wn = wn;
    pole.energy = dispersion(p.t_h, wn.k);
    pole.label = classify_pole(wn.k, &pole.on_axis);
    pole.residual = std::abs(fp_denominator(p, wn.k));
    if (pole.residual > opt.residual_rel * detail::denominator_scale(p, wn.k))
      throw RootFindingFailure("find_poles: pole residual above tolerance");
    ps.poles.push_back(pole);
  }
  std::sort(ps.poles.begin(), ps.poles.end(), [](const Pole& a, const Pole& b) {
    if (a.wn.k.real() != b.wn.k.real()) return a.wn.k.real() < b.wn.k.real();
    return a.wn.k.imag() < b.wn.k.imag();
  });
  return ps;
}

/// Independent pencil route: linearize beta^2 U + beta V + W (U carries the
/// interior -t entries and zero corners, V the hopping plus +-i gamma
/// corners, W = -t I) into B x = beta A x on doubled dimension, and solve by
/// shift-invert with a deterministic complex shift.  Returns the 2L finite
/// eigenvalues mapped to principal-strip wave numbers, sorted like find_poles.
inline std::vector<Complex> pencil_wavenumbers(const LatticeParams& p) {
  if (!p.is_pt())
    throw std::invalid_argument("pencil_wavenumbers: params must be the PT preset");
  if (p.gamma == 0.0)
    throw DegenerateSpectrum("pencil_wavenumbers: gamma = 0 leaves no discrete poles");
  const int n = p.L + 1;
  const Complex t(p.t_h, 0.0);
  Eigen::MatrixXcd u = Eigen::MatrixXcd::Zero(n, n);
  Eigen::MatrixXcd v = Eigen::MatrixXcd::Zero(n, n);
  Eigen::MatrixXcd w = Eigen::MatrixXcd::Zero(n, n);
  for (int j = 1; j + 1 < n; ++j) u(j, j) = -t;
  v(0, 0) = Complex(0.0, p.gamma);
  v(n - 1, n - 1) = Complex(0.0, -p.gamma);
  for (int j = 0; j + 1 < n; ++j) {
    v(j, j + 1) = t;
    v(j + 1, j) = t;
  }
  for (int j = 0; j < n; ++j) w(j, j) = -t;

  const int m = 2 * n;
  Eigen::MatrixXcd a = Eigen::MatrixXcd::Zero(m, m);
  Eigen::MatrixXcd b = Eigen::MatrixXcd::Zero(m, m);
  a.topLeftCorner(n, n) = Eigen::MatrixXcd::Identity(n, n);
  a.bottomRightCorner(n, n) = u;
  b.topRightCorner(n, n) = Eigen::MatrixXcd::Identity(n, n);
  b.bottomLeftCorner(n, n) = -w;
  b.bottomRightCorner(n, n) = -v;

  // Shift-invert: eigenvalues mu of (B - sigma A)^{-1} A give beta = sigma + 1/mu.
  Complex sigma(0.77, 0.33);
  Eigen::FullPivLU<Eigen::MatrixXcd> lu;
  for (int attempt = 0;; ++attempt) {
    lu.compute(b - sigma * a);
    if (lu.isInvertible()) break;
    if (attempt >= 8)
      throw RootFindingFailure("pencil_wavenumbers: could not find a regular shift");
    sigma += Complex(0.11, 0.07);
  }
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(lu.solve(a));
  if (es.info() != Eigen::Success)
    throw RootFindingFailure("pencil_wavenumbers: eigensolver did not converge");

  std::vector<Complex> mus(es.eigenvalues().data(), es.eigenvalues().data() + m);
  // U is singular with nullity 2, so exactly two pencil eigenvalues are
  // infinite: they appear here as the two smallest |mu|.  Drop them.
  std::sort(mus.begin(), mus.end(),
            [](Complex x, Complex y) { return std::abs(x) < std::abs(y); });
  std::vector<Complex> ks;
  ks.reserve(m - 2);
  for (int i = 2; i < m; ++i) {
    const Complex beta = sigma + 1.0 / mus[i];
    ks.push_back(WaveNumber::from_beta(beta).k);
  }
  std::sort(ks.begin(), ks.end(), [](Complex x, Complex y) {
    if (x.real() != y.real()) return x.real() < y.real();
    return x.imag() < y.imag();
  });
  return ks;
}

// ---------------------------------------------------------------------------
// Lorentzian line-shape fit of T(k) around an isolated resonance.
// ---------------------------------------------------------------------------

struct LorentzianFit {
  double center;      ///< fitted peak position (should track Re k of the pole)
  double half_width;  ///< fitted half width (should track |Im k|)
  double height;      ///< fitted peak height
  int points_used;
};

/// Fit T(k) ~ h / ((k - c)^2 + w^2) by linear least squares on 1/T (exactly a
/// quadratic in k).  Samples are restricted to a window around the pole's
/// Re k.  Throws FitRejected when the resonance overlaps a neighbour
/// (neighbor_spacing < 2 |Im k|: the fit window would reach past the midpoint
/// to the next peak, so the single-pole model no longer describes the data),
/// when any windowed sample exceeds peak_cap (pole on or too close to the
/// real axis gives an unbounded peak), when fewer than five samples fall in
/// the window, or when the fitted curvature/width is non-physical.
inline LorentzianFit lorentzian_fit(const Pole& pole, const std::vector<double>& k_samples,
                                    const std::vector<double>& t_samples,
                                    double neighbor_spacing, double peak_cap = 1e12) {
  if (k_samples.size() != t_samples.size())
    throw std::invalid_argument("lorentzian_fit: sample arrays must have equal length");
  const double c0 = pole.wn.k.real();
  const double w0 = std::abs(pole.wn.k.imag());
  if (neighbor_spacing < 2.0 * w0)
    throw FitRejected("lorentzian_fit: neighbouring poles overlap (spacing < 2 half-widths)");
  const double window = std::min(4.0 * std::max(w0, 1e-12), 0.45 * neighbor_spacing);

  double s0 = 0, s1 = 0, s2 = 0, s3 = 0, s4 = 0, y0 = 0, y1 = 0, y2 = 0;
  int used = 0;
  for (size_t i = 0; i < k_samples.size(); ++i) {
    const double dk = k_samples[i] - c0;
    if (std::abs(dk) > window) continue;
    const double t = t_samples[i];
    if (!(t > 0.0)) throw FitRejected("lorentzian_fit: non-positive T sample in window");
    if (t > peak_cap) throw FitRejected("lorentzian_fit: peak exceeds cap (pole on the real axis)");
    const double x = k_samples[i];
    const double y = 1.0 / t;
    s0 += 1;       s1 += x;       s2 += x * x;
    s3 += x * x * x;               s4 += x * x * x * x;
    y0 += y;       y1 += x * y;   y2 += x * x * y;
    ++used;
  }
  if (used < 5) throw FitRejected("lorentzian_fit: fewer than five samples in the fit window");

  Eigen::Matrix3d mat;
  mat << s4, s3, s2, s3, s2, s1, s2, s1, s0;
  Eigen::Vector3d rhs(y2, y1, y0);
  const Eigen::Vector3d abc = mat.fullPivLu().solve(rhs);  // 1/T = a k^2 + b k + c
  const double a = abc[0], bq = abc[1], cq = abc[2];
  // The quadratic term must carry weight across the window; otherwise the data
  // have no resolvable peak (flat T fits a ~ 0 up to rounding noise).
  if (!(a > 0.0) || a * window * window < 1e-12 * (y0 / s0))
    throw FitRejected("lorentzian_fit: non-physical curvature");
  LorentzianFit fit;
  fit.center = -bq / (2.0 * a);
  const double w2 = cq / a - fit.center * fit.center;
  if (!(w2 > 0.0)) throw FitRejected("lorentzian_fit: non-physical fitted width");
  fit.half_width = std::sqrt(w2);
  fit.height = 1.0 / (a * w2);
  fit.points_used = used;
  return fit;
}

}  // namespace ptscatter
