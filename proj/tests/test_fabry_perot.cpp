// PT pair closed forms, the multiple-bounce series, unitarity defects, the
// alpha modulation relations and the special-point catalogue.

#include <cmath>
#include <complex>

#include "doctest.h"
#include "ptscatter/ptscatter.hpp"

using namespace ptscatter;
using C = Complex;

TEST_CASE("band-center oracle, L = 7, gamma = |t_h|") {
  // k = pi/2, t = -1: e^{2ikL} = e^{7 i pi} = -1, D = 4 - 2 = 2,
  // tau = 4/2 = 2, rho = 1*(-2-1)*(-2)/2 = 3, rho_rev = -1*(-2+1)*(-2)/2 = -1.
  const auto p = LatticeParams::pt(-1.0, 1.0, 7);
  const auto a = pt_amplitudes(p, kPi / 2);
  CHECK(std::abs(a.tau - C(2.0, 0.0)) < 1e-13);
  CHECK(std::abs(a.rho - C(3.0, 0.0)) < 1e-13);
  CHECK(std::abs(a.rho_rev - C(-1.0, 0.0)) < 1e-13);
  CHECK(a.tau_rev == a.tau);  // identical by construction
  CHECK(a.t_prob == doctest::Approx(4.0).epsilon(1e-13));
  CHECK(a.r_prob == doctest::Approx(9.0).epsilon(1e-13));
  CHECK(a.r_prob_rev == doctest::Approx(1.0).epsilon(1e-13));
  // alpha = (gamma - 2 t sin k)/(gamma + 2 t sin k) = (1+2)/(1-2) = -3, and
  // R = alpha (1 - T) = -3 * (1-4) = 9, R_rev = (1-T)/alpha = 1.
  CHECK(alpha_modulation(-1.0, 1.0, kPi / 2) == doctest::Approx(-3.0).epsilon(1e-14));
}

TEST_CASE("transparency at gamma = 0") {
  const auto p = LatticeParams::pt(-1.0, 0.0, 5);
  for (double k : {0.3, 1.1, 2.0, 2.9}) {
    const auto a = pt_amplitudes(p, k);
    CHECK(std::abs(a.tau - 1.0) < 1e-15);
    CHECK(std::abs(a.rho) < 1e-15);
    CHECK(a.t_prob == doctest::Approx(1.0).epsilon(1e-15));
  }
}

TEST_CASE("perfect transmission at the Fabry-Perot wave numbers") {
  for (double g : {2.5, 3.0, 4.0})
    for (int L : {6, 7}) {
      const auto p = LatticeParams::pt(-1.0, g, L);
      for (int n = 1; n < L; ++n) {
        const auto a = pt_amplitudes(p, n * kPi / L);
        CHECK(std::abs(a.t_prob - 1.0) < 1e-12);
        CHECK(a.r_prob < 1e-22);  // rho vanishes with e^{2ikL} - 1
      }
    }
}

TEST_CASE("multiple-bounce series reproduces the closed form when convergent") {
  SUBCASE("frozen sample, q = 1/3 region") {
    const auto p = LatticeParams::pt(-1.0, 0.5, 7);
    const auto cl = pt_amplitudes(p, 1.0);
    const auto sr = fp_series_sum(p, 1.0);
    REQUIRE(sr.converged);
    CHECK_FALSE(sr.diverged);
    CHECK(std::abs(sr.tau - cl.tau) < 1e-10);
    CHECK(std::abs(sr.rho - cl.rho) < 1e-10);
  }
  SUBCASE("band-center oracle summed by bounces") {
    const auto p = LatticeParams::pt(-1.0, 1.0, 7);
    const auto sr = fp_series_sum(p, kPi / 2);
    REQUIRE(sr.converged);
    CHECK(std::abs(sr.bounce_ratio - C(1.0 / 3.0, 0.0)) < 1e-14);
    CHECK(std::abs(sr.tau - 2.0) < 1e-9);
    CHECK(std::abs(sr.rho - 3.0) < 1e-9);
  }
  SUBCASE("moderate-ratio grid") {
    for (double g : {0.3, 0.8, 1.2})
      for (int L : {1, 4, 9})
        for (int j = 1; j < 20; ++j) {
          const double k = j * kPi / 20.0;
          const auto p = LatticeParams::pt(-1.0, g, L);
          const auto sr = fp_series_sum(p, k, 5000, 1e-13);
          if (!sr.converged || std::abs(sr.bounce_ratio) > 0.9) continue;
          const auto cl = pt_amplitudes(p, k);
          CHECK(std::abs(sr.tau - cl.tau) < 1e-9);
          CHECK(std::abs(sr.rho - cl.rho) < 1e-9);
        }
  }
}

TEST_CASE("series divergence is reported, closed form still finite") {
  // sin k = 0.96, gamma = 1.9: |q| = gamma^2/|4 sin^2 k - gamma^2| ~ 47.
  const double k = std::asin(0.96);
  const auto p = LatticeParams::pt(-1.0, 1.9, 7);
  const auto sr = fp_series_sum(p, k);
  CHECK(sr.diverged);
  CHECK_FALSE(sr.converged);
  CHECK(std::abs(sr.bounce_ratio) > 1.0);
  CHECK(std::isfinite(pt_amplitudes(p, k).t_prob));
}

TEST_CASE("general-strength bounce series matches the direct matrix solve") {
  // The series generalises beyond the PT preset; cross-check against the
  // boundary-matrix route for an asymmetric complex pair.
  const auto p = LatticeParams::general(-1.0, C(0.2, 0.9), C(-0.1, -0.4), 5);
  for (double k : {0.7, 1.3, 2.2}) {
    const auto sr = fp_series_sum(p, k, 5000, 1e-13);
    REQUIRE(sr.converged);
    const auto ms = solve_scattering(p, k);
    CHECK(std::abs(sr.tau - ms.tau) < 1e-10);
    CHECK(std::abs(sr.rho - ms.rho) < 1e-10);
  }
}

TEST_CASE("single-barrier S-matrix is side-symmetric and satisfies tau - rho = 1") {
  const auto s = single_barrier_smatrix(-1.0, C(0.3, -0.8), 1.1);
  CHECK(s.tau == s.tau_rev);
  CHECK(s.rho == s.rho_rev);
  CHECK(std::abs(s.tau - s.rho - 1.0) < 1e-14);
}

TEST_CASE("modulation factor relations R = alpha (1 - T), R_rev = (1 - T)/alpha") {
  for (double g : {0.4, 1.1, 2.8})
    for (int L : {2, 7})
      for (int j = 1; j < 30; ++j) {
        const double k = j * kPi / 30.0;
        const double s = std::sin(k);
        if (std::abs(g - 2.0 * s) < 1e-3) continue;  // alpha pole
        const auto p = LatticeParams::pt(-1.0, g, L);
        const auto a = pt_amplitudes(p, k);
        const double alpha = alpha_modulation(-1.0, g, k);
        const double one_m_t = one_minus_transmission(p, k);
        const double scale = std::max({a.r_prob, std::abs(alpha * one_m_t), 1e-30});
        CHECK(std::abs(a.r_prob - alpha * one_m_t) / scale < 1e-10);
        const double scale2 = std::max({a.r_prob_rev, std::abs(one_m_t / alpha), 1e-30});
        CHECK(std::abs(a.r_prob_rev - one_m_t / alpha) / scale2 < 1e-10);
      }
  CHECK_THROWS_AS(alpha_modulation(-1.0, 1.9, std::asin(0.95), 1e-6), PoleOfAlpha);
}

TEST_CASE("reversed transmission is obtained by gamma -> -gamma exactly") {
  // Swapping the gain and loss sites is gamma -> -gamma; tau depends on
  // gamma^2 only, so the swap reproduces tau bit-for-bit and exchanges rho
  // with rho_rev.
  const auto a = pt_amplitudes(LatticeParams::pt(-1.0, 0.7, 5), 1.1);
  const auto b = pt_amplitudes(LatticeParams::pt(-1.0, -0.7, 5), 1.1);
  CHECK(a.tau == b.tau);
  CHECK(a.rho == b.rho_rev);
  CHECK(a.rho_rev == b.rho);
}

TEST_CASE("|D|^2 equals 4 Delta") {
  for (double g : {0.5, 1.7, 3.1})
    for (int L : {1, 6, 7})
      for (int j = 1; j < 25; ++j) {
        const double k = j * kPi / 25.0;
        const auto p = LatticeParams::pt(-1.0, g, L);
        const double lhs = std::norm(fp_denominator(p, C(k, 0.0)));
        const double rhs = 4.0 * fp_delta(p, k);
        CHECK(std::abs(lhs - rhs) < 1e-12 * std::max(1.0, rhs));
      }
}

TEST_CASE("cancellation-free 1 - T matches direct subtraction away from resonances") {
  for (double g : {0.9, 2.6})
    for (int j = 1; j < 40; ++j) {
      const double k = j * kPi / 40.0 + 0.013;
      if (k >= kPi) continue;
      const auto p = LatticeParams::pt(-1.0, g, 7);
      const auto a = pt_amplitudes(p, k);
      const double direct = 1.0 - a.t_prob;
      const double closed = one_minus_transmission(p, k);
      CHECK(std::abs(direct - closed) < 1e-10 * std::max(1.0, a.t_prob));
    }
}

TEST_CASE("unitarity defect closed forms and signs") {
  for (double g : {2.5, 3.0, 3.5, 4.0})
    for (int L : {6, 7})
      for (int j = 1; j < 50; ++j) {
        const double k = j * kPi / 50.0 + 0.007;
        if (k >= kPi) continue;
        const auto p = LatticeParams::pt(-1.0, g, L);
        const auto a = pt_amplitudes(p, k);
        const auto d = unitarity_defects(p, k);
        CHECK(std::abs(d.left - a.defect_left) < 1e-10 * std::max(1.0, std::abs(d.left)));
        CHECK(std::abs(d.right - a.defect_right) < 1e-10 * std::max(1.0, std::abs(d.right)));
        // Gain side always adds flux; in the bounded regime the loss side
        // always removes it (strict off the Fabry-Perot points).
        CHECK(d.left > 0.0);
        CHECK(d.right < 0.0);
      }
  // The gain-side defect stays non-negative even in the weak regime.
  for (double g : {0.3, 1.0, 1.9})
    for (int j = 1; j < 50; ++j) {
      const double k = j * kPi / 50.0 + 0.007;
      if (k >= kPi) continue;
      CHECK(unitarity_defects(LatticeParams::pt(-1.0, g, 7), k).left >= 0.0);
    }
}

TEST_CASE("spectra are symmetric about the band center") {
  const auto p = LatticeParams::pt(-1.0, 1.3, 6);
  for (double k : {0.2, 0.8, 1.4}) {
    const auto a = pt_amplitudes(p, k);
    const auto b = pt_amplitudes(p, kPi - k);
    CHECK(a.t_prob == doctest::Approx(b.t_prob).epsilon(1e-12));
    CHECK(a.r_prob == doctest::Approx(b.r_prob).epsilon(1e-12));
  }
}

TEST_CASE("band edges return the continuity limit under the edge flag") {
  const auto p = LatticeParams::pt(-1.0, 1.3, 6);
  const auto a = pt_amplitudes(p, 0.0);
  CHECK(a.band_edge);
  CHECK(std::abs(a.tau) < 1e-15);
  CHECK(std::abs(a.rho + 1.0) < 1e-15);
  const auto b = pt_amplitudes(LatticeParams::pt(-1.0, 0.0, 6), kPi);
  CHECK(b.band_edge);
  CHECK(std::abs(b.tau - 1.0) < 1e-15);  // transparent chain
}

TEST_CASE("divergence ladder: denominator vanishes at (k_n, gamma_n)") {
  const int L = 7;
  for (int n = 1; n <= L; ++n) {
    const double kn = (2 * n - 1) * kPi / (2 * L);
    const double gn = std::sqrt(2.0) * std::sin(kn);
    const auto p = LatticeParams::pt(-1.0, gn, L);
    CHECK(std::abs(fp_denominator(p, C(kn, 0.0))) < 1e-10);
    CHECK_THROWS_AS(pt_amplitudes(p, kn), DivergentAmplitude);
  }
}

TEST_CASE("special points catalogue") {
  SUBCASE("odd L") {
    const auto sp = special_points(LatticeParams::pt(-1.0, 1.0, 7));
    REQUIRE(sp.fp_resonances.size() == 6);
    CHECK(sp.fp_resonances[0] == doctest::Approx(kPi / 7).epsilon(1e-15));
    REQUIRE(sp.divergence_ladder.size() == 7);
    for (int n = 1; n <= 7; ++n) {
      CHECK(sp.divergence_ladder[n - 1].k ==
            doctest::Approx((2 * n - 1) * kPi / 14).epsilon(1e-15));
      CHECK(sp.divergence_ladder[n - 1].gamma ==
            doctest::Approx(std::sqrt(2.0) * std::sin((2 * n - 1) * kPi / 14)).epsilon(1e-14));
    }
    REQUIRE(sp.last_k.size() == 1);
    CHECK(sp.last_k[0] == doctest::Approx(kPi / 2).epsilon(1e-15));
    CHECK(sp.last_gamma == doctest::Approx(std::sqrt(2.0)).epsilon(1e-15));
    // Ladder pairs n and L+1-n share the same critical strength.
    CHECK(sp.divergence_ladder[1].gamma == doctest::Approx(sp.divergence_ladder[5].gamma));
  }
  SUBCASE("even L: simultaneous last pair") {
    const auto sp = special_points(LatticeParams::pt(-1.0, 1.0, 6));
    REQUIRE(sp.last_k.size() == 2);
    CHECK(sp.last_k[0] == doctest::Approx(kPi / 2 - kPi / 12).epsilon(1e-14));
    CHECK(sp.last_k[1] == doctest::Approx(kPi / 2 + kPi / 12).epsilon(1e-14));
    const double expect = std::sqrt(1.0 + std::cos(kPi / 6));
    CHECK(sp.last_gamma == doctest::Approx(expect).epsilon(1e-14));
    // Same value as the shared strength of the two middle ladder rungs.
    CHECK(sp.divergence_ladder[2].gamma == doctest::Approx(expect).epsilon(1e-12));
    CHECK(sp.divergence_ladder[3].gamma == doctest::Approx(expect).epsilon(1e-12));
  }
  SUBCASE("strengths scale with |t_h|") {
    const auto sp = special_points(LatticeParams::pt(-2.0, 1.0, 7));
    CHECK(sp.last_gamma == doctest::Approx(2.0 * std::sqrt(2.0)).epsilon(1e-14));
  }
}

TEST_CASE("transmission amplitude at the last divergence wave number") {
  SUBCASE("odd L: tau(pi/2) = 2 t^2/(2 t^2 - gamma^2)") {
    for (double g : {0.5, 1.0, 2.0}) {
      const auto direct = pt_amplitudes(LatticeParams::pt(-1.0, g, 7), kPi / 2).tau;
      CHECK(std::abs(last_divergence_tau(-1.0, 7, g) - direct) < 1e-12);
    }
    CHECK(std::abs(last_divergence_tau(-1.0, 7, 1.0) - C(2.0, 0.0)) < 1e-14);
  }
  SUBCASE("even L evaluated at k = pi/2 + pi/(2L)") {
    for (double g : {0.5, 1.0}) {
      const double k = kPi / 2 + kPi / 12;
      const auto direct = pt_amplitudes(LatticeParams::pt(-1.0, g, 6), k).tau;
      CHECK(std::abs(last_divergence_tau(-1.0, 6, g) - direct) < 1e-12);
    }
  }
}

TEST_CASE("band-center transmission switches from maximum to minimum at gamma = 2|t_h|") {
  const double h = 1e-3;
  for (double g : {1.9, 3.0}) {
    const auto p = LatticeParams::pt(-1.0, g, 7);
    const double tc = pt_amplitudes(p, kPi / 2).t_prob;
    const double tp = pt_amplitudes(p, kPi / 2 + h).t_prob;
    const double tm = pt_amplitudes(p, kPi / 2 - h).t_prob;
    if (g < 2.0) {
      CHECK(tc > tp);
      CHECK(tc > tm);
    } else {
      CHECK(tc < tp);
      CHECK(tc < tm);
    }
  }
  // T(pi/2) = (2/(2-9))^2 = 4/49 at gamma = 3.
  CHECK(pt_amplitudes(LatticeParams::pt(-1.0, 3.0, 7), kPi / 2).t_prob ==
        doctest::Approx(4.0 / 49.0).epsilon(1e-14));
}

TEST_CASE("parameter guards") {
  CHECK_THROWS_AS(pt_amplitudes(LatticeParams::general(-1.0, C(0, 1), C(0, 1), 3), 1.0),
                  std::invalid_argument);
  CHECK_THROWS_AS(pt_amplitudes(LatticeParams::pt(-1.0, 1.0, 3), -0.1), std::domain_error);
  CHECK_THROWS_AS(pt_amplitudes(LatticeParams::pt(-1.0, 1.0, 3), 3.2), std::domain_error);
}
