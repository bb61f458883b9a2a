#pragma once
/// Direct linear-algebra route to the scattering amplitudes.
///
/// Eliminating the semi-infinite leads exactly (outgoing plane waves on both
/// sides) leaves a finite (L+1)x(L+1) system for the interior wave function
/// psi_0..psi_L:
///
///     M_L psi = b,   M_L = H_L - E(k),   b = (A_tilde, 0, ..., 0)^T,
///     A_tilde = 2 i A t_h sin k
///
/// where H_L is tridiagonal with hopping t_h off the diagonal, on-site
/// potentials v0 / vL at the two ends, and the lead elimination adds
/// t_h e^{ik} to both corner diagonal entries.  With incident amplitude A = 1
/// the reflection and transmission amplitudes read off the solution:
///
///     rho = psi_0 - 1,     tau = psi_L e^{-ikL}.
///
/// This route never touches the closed-form denominator D(k), so agreement
/// with the Fabry-Perot module is a genuine cross-check.  The same matrix
/// carries the closed-form determinant identities (PT preset, gt = gamma/t_h):
///
///     det M_L = (-t_h)^{L+1} [ gt^2 sin(kL)/sin k - 2 i e^{-ikL} sin k ]
///     det M^{1,L+1} = t_h^L                     (corner minor)
///     det M^{1,1}   = (-t_h)^L [ i gt sin(kL)/sin k + e^{-ikL} ]
///
/// and the free-chain n x n determinant d_n = (-t_h)^n sin((n+1)k)/sin k,
/// which obeys d_n = -t_h (e^{ik} + e^{-ik}) d_{n-1} - t_h^2 d_{n-2}.

#include <Eigen/Dense>
#include <cmath>
#include <complex>
#include <stdexcept>
#include <vector>

#include "ptscatter/core.hpp"

namespace ptscatter {

/// The finite boundary-matched matrix M_L = H_L - E(k) I.
struct BoundaryMatrix {
  Eigen::MatrixXcd m;  ///< (L+1) x (L+1), complex tridiagonal
  Complex k;           ///< wave number the leads were eliminated at
};

/// Build M_L at (possibly complex) wave number k.  Complex k realizes the
/// purely-outgoing (Siegert) boundary condition analytically continued.
inline BoundaryMatrix build_matrix(const LatticeParams& p, Complex k) {
  const int n = p.L + 1;
  BoundaryMatrix bm;
  bm.k = k;
  bm.m = Eigen::MatrixXcd::Zero(n, n);
  const Complex e_ik = std::exp(Complex(0.0, 1.0) * k);
  const Complex energy = dispersion(p.t_h, k);
  for (int j = 0; j < n; ++j) bm.m(j, j) = -energy;
  bm.m(0, 0) += p.v0 + p.t_h * e_ik;
  bm.m(n - 1, n - 1) += p.vL + p.t_h * e_ik;
  for (int j = 0; j + 1 < n; ++j) {
    bm.m(j, j + 1) = p.t_h;
    bm.m(j + 1, j) = p.t_h;
  }
  return bm;
}

/// Interior wave function and the amplitudes extracted from it.
struct InteriorSolution {
  Eigen::VectorXcd psi;  ///< psi_0 .. psi_L
  Complex tau;           ///< psi_L e^{-ikL}
  Complex rho;           ///< psi_0 - 1
  double residual;       ///< ||M psi - b||_inf after refinement
  bool dense_fallback;   ///< Thomas elimination hit a tiny pivot; dense LU used
};

namespace detail {

/// y = T x for the tridiagonal T given by (diag, off).
inline void tridiag_apply(const Eigen::VectorXcd& diag, Complex off,
                          const Eigen::VectorXcd& x, Eigen::VectorXcd& y) {
  const int n = static_cast<int>(diag.size());
  for (int i = 0; i < n; ++i) {
    Complex v = diag[i] * x[i];
    if (i > 0) v += off * x[i - 1];
    if (i + 1 < n) v += off * x[i + 1];
    y[i] = v;
  }
}

}  // namespace detail

/// Solve M_L psi = (A_tilde, 0, ..., 0)^T at real k in (0, pi) with incident
/// amplitude A = 1.  O(L) Thomas elimination plus two steps of iterative
/// refinement; falls back to dense partial-pivot LU if a pivot collapses.
/// Throws BandEdge at sin k = 0 and SingularMatrix when the matrix is
/// singular to within eps_div (relative to the product of row norms) or the
/// refined residual cannot reach 1e-10 ||b||_inf (k at a perfect divergence).
inline InteriorSolution solve_scattering(const LatticeParams& p, double k,
                                         double eps_div = kEpsDivergence) {
  if (!(k > 0.0 && k < kPi))
    throw std::domain_error("solve_scattering: k must lie in (0, pi)");
  const double s = std::sin(k);
  if (std::abs(s) < kEpsBandEdge)
    throw BandEdge("solve_scattering: band edge, sin k = 0");

  const int n = p.L + 1;
  const Complex t(p.t_h, 0.0);
  const Complex e_ik = std::exp(Complex(0.0, 1.0) * k);
  const Complex energy(2.0 * p.t_h * std::cos(k), 0.0);
  Eigen::VectorXcd diag(n);
  for (int j = 0; j < n; ++j) diag[j] = -energy;
  diag[0] += p.v0 + t * e_ik;
  diag[n - 1] += p.vL + t * e_ik;

  Eigen::VectorXcd b = Eigen::VectorXcd::Zero(n);
  const Complex a_tilde = Complex(0.0, 2.0 * p.t_h * s);
  b[0] = a_tilde;
  const double b_norm = std::abs(a_tilde);

  InteriorSolution sol;
  sol.dense_fallback = false;

  // --- Thomas elimination (no pivoting; tridiagonal) -----------------------
  Eigen::VectorXcd piv(n), mult(n);
  bool breakdown = false;
  double logdet = 0.0, logscale = 0.0;
  {
    piv[0] = diag[0];
    mult[0] = Complex(0.0, 0.0);
    for (int i = 1; i < n; ++i) {
      const double ap = std::abs(piv[i - 1]);
      if (ap < 1e-300) {
        breakdown = true;
        break;
      }
      mult[i] = t / piv[i - 1];
      piv[i] = diag[i] - mult[i] * t;
    }
    if (!breakdown) {
      for (int i = 0; i < n; ++i) {
        const double rowscale = std::abs(diag[i]) + 2.0 * std::abs(p.t_h);
        const double ap = std::abs(piv[i]);
        if (ap < 1e-13 * rowscale) breakdown = true;  // relative pivot collapse
        logdet += std::log(std::max(ap, 1e-300));
        logscale += std::log(rowscale);
      }
    }
  }

  auto thomas_solve = [&](const Eigen::VectorXcd& rhs) {
    Eigen::VectorXcd y(n);
    y[0] = rhs[0];
    for (int i = 1; i < n; ++i) y[i] = rhs[i] - mult[i] * y[i - 1];
    Eigen::VectorXcd x(n);
    x[n - 1] = y[n - 1] / piv[n - 1];
    for (int i = n - 2; i >= 0; --i) x[i] = (y[i] - t * x[i + 1]) / piv[i];
    return x;
  };

  Eigen::PartialPivLU<Eigen::MatrixXcd> lu;
  if (breakdown) {
    sol.dense_fallback = true;
    lu.compute(build_matrix(p, Complex(k, 0.0)).m);
    logdet = 0.0;
    for (int i = 0; i < n; ++i)
      logdet += std::log(std::max(std::abs(lu.matrixLU()(i, i)), 1e-300));
  }
  if (logdet - logscale < std::log(eps_div))
    throw SingularMatrix("solve_scattering: M_L singular to tolerance (spectral singularity)");

  auto solve_once = [&](const Eigen::VectorXcd& rhs) {
    return sol.dense_fallback ? Eigen::VectorXcd(lu.solve(rhs)) : thomas_solve(rhs);
  };

  Eigen::VectorXcd psi = solve_once(b);
  // Two refinement sweeps push the residual to O(eps ||M|| ||psi||).
  Eigen::VectorXcd r(n);
  for (int sweep = 0; sweep < 2; ++sweep) {
    detail::tridiag_apply(diag, t, psi, r);
    r = b - r;
    psi += solve_once(r);
  }
  detail::tridiag_apply(diag, t, psi, r);
  r = b - r;
  double res = (r.cwiseAbs()).maxCoeff();

  if (res > 1e-10 * b_norm && !sol.dense_fallback) {
    // One dense retry before declaring the sample singular.
    sol.dense_fallback = true;
    lu.compute(build_matrix(p, Complex(k, 0.0)).m);
    psi = lu.solve(b);
    for (int sweep = 0; sweep < 2; ++sweep) {
      detail::tridiag_apply(diag, t, psi, r);
      r = b - r;
      psi += lu.solve(r);
    }
    detail::tridiag_apply(diag, t, psi, r);
    r = b - r;
    res = (r.cwiseAbs()).maxCoeff();
  }
  if (res > 1e-10 * b_norm)
    throw SingularMatrix("solve_scattering: residual stuck above 1e-10 ||b|| (near-singular sample)");

  sol.psi = psi;
  sol.residual = res;
  sol.rho = psi[0] - 1.0;
  sol.tau = psi[n - 1] * std::exp(Complex(0.0, -k * p.L));
  return sol;
}

/// Closed-form det M_L for the PT preset (gt = gamma / t_h), complex k allowed.
/// Throws BandEdge where sin k vanishes and std::invalid_argument off-preset.
inline Complex det_closed_form(const LatticeParams& p, Complex k) {
  if (!p.is_pt())
    throw std::invalid_argument("det_closed_form: params must be the PT preset");
  const Complex s = std::sin(k);
  if (std::abs(s) < kEpsBandEdge) throw BandEdge("det_closed_form: band edge, sin k = 0");
  const double gt = p.gamma / p.t_h;
  const Complex skl = std::sin(k * static_cast<double>(p.L));
  const Complex phase = std::exp(Complex(0.0, -1.0) * k * static_cast<double>(p.L));
  const Complex bracket = gt * gt * skl / s - Complex(0.0, 2.0) * phase * s;
  return std::pow(Complex(-p.t_h, 0.0), p.L + 1) * bracket;
}

/// Free-chain n x n determinant d_n (interior block of M with no potentials):
/// closed form (-t_h)^n sin((n+1)k)/sin k next to the three-term recurrence
/// value, so tests can pit one against the other.
struct ChainDeterminant {
  Complex closed;
  Complex iterated;
};

inline ChainDeterminant d_n_recursion(double t_h, double k, int n) {
  if (n < 0) throw std::invalid_argument("d_n_recursion: n must be >= 0");
  const double s = std::sin(k);
  if (std::abs(s) < kEpsBandEdge) throw BandEdge("d_n_recursion: band edge, sin k = 0");
  ChainDeterminant d;
  d.closed = std::pow(Complex(-t_h, 0.0), n) * std::sin((n + 1) * k) / s;
  const Complex e_sum = 2.0 * std::cos(k);  // e^{ik} + e^{-ik}
  Complex dm2(1.0, 0.0);                    // d_0
  Complex dm1 = -t_h * e_sum;               // d_1 = -E
  if (n == 0) {
    d.iterated = dm2;
  } else if (n == 1) {
    d.iterated = dm1;
  } else {
    Complex dn = dm1;
    for (int m = 2; m <= n; ++m) {
      dn = -t_h * e_sum * dm1 - t_h * t_h * dm2;
      dm2 = dm1;
      dm1 = dn;
    }
    d.iterated = dn;
  }
  return d;
}

/// The two first-row minors of M_L that build the scattering amplitudes via
/// Cramer's rule (PT preset): corner = det M^{1,L+1}, diag = det M^{1,1}.
struct CofactorPair {
  Complex corner;
  Complex diag;
};

inline CofactorPair cofactors_closed(const LatticeParams& p, Complex k) {
  if (!p.is_pt())
    throw std::invalid_argument("cofactors_closed: params must be the PT preset");
  const Complex s = std::sin(k);
  if (std::abs(s) < kEpsBandEdge) throw BandEdge("cofactors_closed: band edge, sin k = 0");
  const double gt = p.gamma / p.t_h;
  const Complex skl = std::sin(k * static_cast<double>(p.L));
  const Complex phase = std::exp(Complex(0.0, -1.0) * k * static_cast<double>(p.L));
  CofactorPair c;
  c.corner = std::pow(Complex(p.t_h, 0.0), p.L);
  c.diag = std::pow(Complex(-p.t_h, 0.0), p.L) * (Complex(0.0, gt) * skl / s + phase);
  return c;
}

/// Dense LU determinant (numeric oracle).
inline Complex numeric_det(const Eigen::MatrixXcd& m) {
  return Eigen::PartialPivLU<Eigen::MatrixXcd>(m).determinant();
}

/// Minor determinant: drop one row and one column (0-based), LU the rest.
inline Complex numeric_minor(const Eigen::MatrixXcd& m, int drop_row, int drop_col) {
  const int n = static_cast<int>(m.rows());
  if (n < 2) throw std::invalid_argument("numeric_minor: matrix too small");
  Eigen::MatrixXcd sub(n - 1, n - 1);
  for (int i = 0, si = 0; i < n; ++i) {
    if (i == drop_row) continue;
    for (int j = 0, sj = 0; j < n; ++j) {
      if (j == drop_col) continue;
      sub(si, sj) = m(i, j);
      ++sj;
    }
    ++si;
  }
  return numeric_det(sub);
}

}  // namespace ptscatter
