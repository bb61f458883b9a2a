// Pole trajectories under a gamma sweep: path continuity, real-axis crossing
// events against the divergence ladder, and the L = 6 collision (exceptional
// point) event.

#include <cmath>
#include <complex>
#include <vector>

#include "doctest.h"
#include "ptscatter/ptscatter.hpp"

using namespace ptscatter;
using C = Complex;

namespace {

std::vector<double> linear_grid(double lo, double hi, int n) {
  std::vector<double> g;
  g.reserve(n);
  for (int i = 0; i < n; ++i) g.push_back(lo + (hi - lo) * i / double(n - 1));
  return g;
}

bool in_right_half(C k) { return k.real() > 1e-6 && k.real() < kPi - 1e-6; }

}  // namespace

TEST_CASE("L = 1: one right-half crossing at gamma = sqrt(2)|t_h|") {
  const auto tr = sweep_trajectories(-1.0, 1, linear_grid(0.05, 4.0, 200));
  REQUIRE(tr.paths.size() == 2);
  REQUIRE(tr.gammas.size() == 200);
  for (const auto& path : tr.paths) REQUIRE(path.size() == 200);

  int right_crossings = 0;
  for (const auto& e : tr.events) {
    if (e.kind != EventKind::real_axis_crossing || !in_right_half(e.k)) continue;
    ++right_crossings;
    CHECK(e.gamma == doctest::Approx(std::sqrt(2.0)).epsilon(1e-6));
    CHECK(std::abs(e.k.real() - kPi / 2) < 1e-4);
    CHECK(std::abs(e.k.imag()) < 1e-6);
    CHECK(e.path_b == -1);
  }
  CHECK(right_crossings == 1);
}

TEST_CASE("L = 7: seven right-half crossings on the divergence ladder, no collision there") {
  const auto tr = sweep_trajectories(-1.0, 7, linear_grid(0.05, 4.0, 250));
  REQUIRE(tr.paths.size() == 14);

  const auto sp = special_points(LatticeParams::pt(-1.0, 1.0, 7));
  int right_crossings = 0;
  for (const auto& e : tr.events) {
    if (!in_right_half(e.k)) continue;
    if (e.kind == EventKind::collision) {
      FAIL_CHECK("unexpected right-half collision at gamma = " << e.gamma);
      continue;
    }
    ++right_crossings;
    // Each crossing must match one ladder rung in both strength and position.
    double best = 1e18;
    int hit = -1;
    for (size_t n = 0; n < sp.divergence_ladder.size(); ++n) {
      const double d = std::abs(e.k.real() - sp.divergence_ladder[n].k);
      if (d < best) {
        best = d;
        hit = int(n);
      }
    }
    REQUIRE(hit >= 0);
    CHECK(best < 1e-3);
    CHECK(std::abs(e.gamma - sp.divergence_ladder[hit].gamma) < 1e-3);
  }
  CHECK(right_crossings == 7);
}

TEST_CASE("L = 6: the collision event sits at the derived exceptional point") {
  const auto tr = sweep_trajectories(-1.0, 6, linear_grid(0.05, 4.0, 250));
  REQUIRE(tr.paths.size() == 12);

  int collisions = 0, crossings = 0;
  for (const auto& e : tr.events) {
    if (!in_right_half(e.k)) continue;
    if (e.kind == EventKind::collision) {
      ++collisions;
      CHECK(e.gamma == doctest::Approx(2.11508197415343).epsilon(1e-6));
      CHECK(std::abs(e.k.real() - kPi / 2) < 1e-6);
      CHECK(std::abs(e.k.imag() - 0.265328305282222) < 1e-6);
      CHECK(e.path_a != e.path_b);
      CHECK(e.ambiguous);  // identities are untrackable through the merge
    } else {
      ++crossings;
    }
  }
  CHECK(collisions == 1);
  CHECK(crossings == 6);  // n = 1..6 rungs; the middle pair shares its gamma
}

TEST_CASE("paths are continuous between grid points") {
  const auto tr = sweep_trajectories(-1.0, 6, linear_grid(0.05, 4.0, 250));
  for (const auto& path : tr.paths)
    for (size_t i = 0; i + 1 < path.size(); ++i) {
      // Continuity holds on the Brillouin cylinder (Re k is 2 pi periodic):
      // generic steps are small, and near the collision the square-root
      // unfolding still keeps jumps below the inter-pole spacing.
      CHECK(detail::cyl_dist(path[i + 1], path[i]) < 0.45);
    }
}

TEST_CASE("crossing gammas reproduce special_points to refinement accuracy") {
  const auto tr = sweep_trajectories(-1.0, 7, linear_grid(0.05, 4.0, 250));
  const auto sp = special_points(LatticeParams::pt(-1.0, 1.0, 7));
  for (const auto& e : tr.events) {
    if (e.kind != EventKind::real_axis_crossing || !in_right_half(e.k)) continue;
    double best = 1e18;
    for (const auto& rung : sp.divergence_ladder)
      best = std::min(best, std::abs(e.gamma - rung.gamma));
    CHECK(best < 1e-4);
  }
}

TEST_CASE("half-plane option keeps the L paths launched at Re k > 0") {
  SweepOptions opt;
  opt.half_plane_only = true;
  const auto tr = sweep_trajectories(-1.0, 7, linear_grid(0.05, 4.0, 120), opt);
  REQUIRE(tr.paths.size() == 7);
  for (const auto& path : tr.paths) CHECK(path.front().real() > 0.0);
  for (const auto& e : tr.events) {
    CHECK(e.path_a >= 0);
    CHECK(e.path_a < 7);
  }
}

TEST_CASE("grid validation") {
  CHECK_THROWS_AS(sweep_trajectories(-1.0, 3, {}), std::invalid_argument);
  CHECK_THROWS_AS(sweep_trajectories(-1.0, 3, {1.0}), std::invalid_argument);
  CHECK_THROWS_AS(sweep_trajectories(-1.0, 3, {1.0, 0.5}), std::invalid_argument);
  CHECK_THROWS_AS(sweep_trajectories(-1.0, 3, {-0.2, 1.0}), std::invalid_argument);
}
