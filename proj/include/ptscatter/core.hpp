#pragma once
/// Core model types for a PT-symmetric pair of imaginary on-site potentials
/// +i*gamma (gain) and -i*gamma (loss) embedded in an infinite 1D tight-binding
/// chain with hopping t_h:
///
///     H = t_h * sum_j (|j><j+1| + h.c.) + i*gamma*|0><0| - i*gamma*|L><L|
///
/// Conventions used throughout: lattice constant a = 1, t_h < 0, gamma >= 0.
/// A Bloch wave e^{ikj} on the free chain has energy E(k) = 2 t_h cos k, so the
/// band is [-2|t_h|, +2|t_h|] and left-movers incident from j = -inf carry
/// k in (0, pi).  Complex wave numbers k and the Bloch factor beta = e^{ik}
/// are carried together because pole-finding naturally produces beta while the
/// physics (quadrant classification, energies) reads off k.

#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>

namespace ptscatter {

using Complex = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846;

/// Default absolute threshold below which a scattering denominator counts as
/// singular (spectral singularity / divergent amplitude).
inline constexpr double kEpsDivergence = 1e-12;

/// |sin k| below this counts as a band edge (k = 0 or pi).
inline constexpr double kEpsBandEdge = 1e-12;

/// |Im k| below this flags a pole as sitting on the real-k axis.
inline constexpr double kEpsOnAxis = 1e-10;

// ---------------------------------------------------------------------------
// Error taxonomy.  All numerical failure modes are typed so sweep drivers can
// catch a specific condition (log the singular sample, keep going) without
// masking programming errors.
// ---------------------------------------------------------------------------

/// Scattering amplitude evaluated at (or machine-close to) a spectral
/// singularity: the outgoing-wave denominator vanished.
class DivergentAmplitude : public std::runtime_error {
 public:
  DivergentAmplitude(const std::string& what, double k, double denom_mag)
      : std::runtime_error(what), k_(k), denom_mag_(denom_mag) {}
  double k() const { return k_; }
  double denominator_magnitude() const { return denom_mag_; }

 private:
  double k_;
  double denom_mag_;
};

/// Modulation factor alpha = (gamma - 2 t_h sin k)/(gamma + 2 t_h sin k)
/// evaluated at a zero of its own denominator.
class PoleOfAlpha : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Band-edge wave number (sin k = 0) passed where a propagating wave is
/// required and no continuity limit is defined.
class BandEdge : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Boundary matrix M_L = H_L - E(k) singular beyond the pivot tolerance.
class SingularMatrix : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Polynomial/Newton pole search failed to deliver the expected root count or
/// residual quality.
class RootFindingFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Pole polynomial degenerated (gamma = 0, or the L = 1 degree collapse):
/// there is no discrete pole content to report.
class DegenerateSpectrum : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Lorentzian line-shape fit rejected (overlapping neighbours, capped peak,
/// or non-physical fitted width).
class FitRejected : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// ---------------------------------------------------------------------------
// Parameter bundles.
// ---------------------------------------------------------------------------

/// Chain parameters.  v0 / vL are the on-site potentials at sites 0 and L;
/// the PT-symmetric preset is v0 = +i*gamma, vL = -i*gamma.  Arbitrary complex
/// potentials are accepted (they route through the direct solver only).
struct LatticeParams {
  double t_h = -1.0;   ///< hopping amplitude (t_h != 0; convention t_h < 0)
  double gamma = 0.0;  ///< gain/loss strength of the PT preset (gamma >= 0)
  int L = 1;           ///< separation: potentials sit on sites 0 and L (L >= 1)
  Complex v0 = {0.0, 0.0};
  Complex vL = {0.0, 0.0};

  /// PT preset: +i*gamma on site 0, -i*gamma on site L.
  static LatticeParams pt(double t_h, double gamma, int L) {
    LatticeParams p;
    p.t_h = t_h;
    p.gamma = gamma;
    p.L = L;
    p.v0 = Complex(0.0, gamma);
    p.vL = Complex(0.0, -gamma);
    p.validate();
    return p;
  }

  /// Arbitrary (generally non-PT) on-site pair.
  static LatticeParams general(double t_h, Complex v0, Complex vL, int L) {
    LatticeParams p;
    p.t_h = t_h;
    p.gamma = 0.0;
    p.L = L;
    p.v0 = v0;
    p.vL = vL;
    p.validate();
    return p;
  }

  void validate() const {
    if (t_h == 0.0) throw std::invalid_argument("LatticeParams: t_h must be nonzero");
    if (L < 1) throw std::invalid_argument("LatticeParams: L must be >= 1");
  }

  /// True when (v0, vL) is exactly the PT preset for this gamma.
  bool is_pt() const {
    return v0 == Complex(0.0, gamma) && vL == Complex(0.0, -gamma);
  }

  /// Sign conventions other than t_h < 0, gamma >= 0 are accepted but tagged.
  bool off_convention() const { return t_h > 0.0 || gamma < 0.0; }
};

/// A complex wave number k together with its Bloch factor beta = e^{ik}.
/// Principal strip: Re k in (-pi, pi] (that is arg beta), Im k = -ln|beta|.
struct WaveNumber {
  Complex k = {0.0, 0.0};
  Complex beta = {1.0, 0.0};

  static WaveNumber from_k(Complex k) {
    WaveNumber w;
    w.k = k;
    w.beta = std::exp(Complex(0.0, 1.0) * k);
    return w;
  }

  /// beta must be nonzero; k is placed on the principal strip Re k in (-pi, pi].
  static WaveNumber from_beta(Complex beta) {
    if (beta == Complex(0.0, 0.0))
      throw std::invalid_argument("WaveNumber: beta must be nonzero");
    WaveNumber w;
    w.beta = beta;
    double re = std::arg(beta);
    // arg = -pi (negative real beta with a signed zero) names the same point
    // of the Brillouin circle as +pi, the canonical representative.
    if (re <= -kPi + 1e-12) re += 2.0 * kPi;
    w.k = Complex(re, -std::log(std::abs(beta)));
    return w;
  }
};

// ---------------------------------------------------------------------------
// Dispersion and the two-site toy model.
// ---------------------------------------------------------------------------

/// Free-chain dispersion E(k) = 2 t_h cos k, valid for complex k.
inline Complex dispersion(double t_h, Complex k) { return 2.0 * t_h * std::cos(k); }

inline Complex dispersion(const LatticeParams& p, Complex k) {
  return dispersion(p.t_h, k);
}

/// Eigenvalues of the isolated PT dimer  [ i*gamma   t_h ; t_h  -i*gamma ]:
/// E_pm = +-sqrt(t_h^2 - gamma^2).  Real and opposite for gamma < |t_h|,
/// degenerate at the exceptional point gamma = |t_h|, imaginary beyond.
/// Returned as (principal root, -principal root).
struct TwoSiteSpectrum {
  Complex e_plus;
  Complex e_minus;
};

inline TwoSiteSpectrum two_site_spectrum(double t_h, double gamma) {
  const Complex root = std::sqrt(Complex(t_h * t_h - gamma * gamma, 0.0));
  return {root, -root};
}

}  // namespace ptscatter
