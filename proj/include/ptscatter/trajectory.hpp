#pragma once
/// Pole trajectories k_n(gamma): thread the 2L Siegert poles through a gamma
/// sweep, keep their identities by minimum-cost matching, and record the two
/// kinds of events the pair exhibits:
///
///   * real-axis crossings — a pole passes through Im k = 0 (a divergent
///     transmission / lasing condition; for the PT pair they occur at the
///     ladder gamma_n = sqrt(2)|t_h| sin k_n, k_n = (2n-1) pi/(2L));
///   * collisions — two poles coalesce (an exceptional point of the Siegert
///     spectrum; for even L the two middle trajectories meet on the symmetry
///     line Re k = pi/2 after all crossings are spent).
///
/// Matching between adjacent gamma samples uses optimal assignment on |dk|;
/// when any matched jump exceeds 10x the median jump the step is halved
/// locally (recursively) so fast-moving poles stay on their own path.  Events
/// are refined inside their bracketing step: crossings by bisection on
/// sign(Im k), collisions by golden-section on the pair distance; both re-run
/// the global pole finder at each trial gamma and follow the nearest pole, so
/// identity swaps at the event cannot fool the refinement.

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <stdexcept>
#include <utility>
#include <vector>

#include "ptscatter/core.hpp"
#include "ptscatter/detail/assignment.hpp"
#include "ptscatter/siegert.hpp"

namespace ptscatter {

enum class EventKind { real_axis_crossing, collision };

inline const char* event_kind_name(EventKind k) {
  return k == EventKind::real_axis_crossing ? "crossing" : "collision";
}

struct TrajectoryEvent {
  EventKind kind;
  double gamma;      ///< refined event strength
  double gamma_lo;   ///< bracketing interval
  double gamma_hi;
  Complex k;         ///< pole position at the event (pair midpoint for collisions)
  int path_a;
  int path_b;        ///< -1 for crossings
  bool ambiguous;    ///< matching ambiguity flagged inside the bracket
};

struct Trajectory {
  double t_h;
  int L;
  std::vector<double> gammas;               ///< requested grid (ascending)
  std::vector<std::vector<Complex>> paths;  ///< paths[p][i] = k of path p at gammas[i]
  std::vector<TrajectoryEvent> events;      ///< sorted by gamma
  std::vector<unsigned char> step_ambiguous;  ///< per step [i, i+1) matching flag
};

struct SweepOptions {
  bool half_plane_only = false;   ///< keep only paths starting at Re k > 0 (L paths)
  double collision_eps = 1e-4;    ///< pair distance that counts as a collision
  double collision_window = 0.2;  ///< pair distance that triggers refinement
  int max_refine_depth = 12;      ///< local step-halving depth for matching
  double crossing_gamma_tol = 1e-9;  ///< bisection tolerance on gamma
};

namespace detail {

/// Distance on the Brillouin cylinder: Re k is 2 pi periodic, so a pole
/// drifting past +pi re-enters at -pi without having moved far.
inline double cyl_dist(Complex a, Complex b) {
  double dre = std::fmod(a.real() - b.real(), 2.0 * kPi);
  if (dre > kPi) dre -= 2.0 * kPi;
  if (dre < -kPi) dre += 2.0 * kPi;
  return std::hypot(dre, a.imag() - b.imag());
}

/// Midpoint along the short arc, folded back onto the principal strip.
inline Complex cyl_midpoint(Complex a, Complex b) {
  double dre = std::fmod(b.real() - a.real(), 2.0 * kPi);
  if (dre > kPi) dre -= 2.0 * kPi;
  if (dre < -kPi) dre += 2.0 * kPi;
  double re = a.real() + 0.5 * dre;
  if (re > kPi) re -= 2.0 * kPi;
  if (re <= -kPi) re += 2.0 * kPi;
  return Complex(re, 0.5 * (a.imag() + b.imag()));
}

inline std::vector<Complex> pole_positions(double t_h, int L, double gamma) {
  const PoleSet ps = find_poles(LatticeParams::pt(t_h, gamma, L));
  std::vector<Complex> ks;
  ks.reserve(ps.poles.size());
  for (const Pole& p : ps.poles) ks.push_back(p.wn.k);
  return ks;
}

struct MatchResult {
  std::vector<int> perm;  ///< perm[i]: index in `next` matched to prev[i]
  double max_jump = 0.0;
  double median_jump = 0.0;
  bool ambiguous = false;
};

inline MatchResult match_poles(const std::vector<Complex>& prev,
                               const std::vector<Complex>& next) {
  const int n = static_cast<int>(prev.size());
  std::vector<double> cost(n * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) cost[i * n + j] = cyl_dist(prev[i], next[j]);
  MatchResult r;
  r.perm = min_cost_assignment(cost, n);
  std::vector<double> jumps(n);
  for (int i = 0; i < n; ++i) jumps[i] = cost[i * n + r.perm[i]];
  std::vector<double> sorted = jumps;
  std::sort(sorted.begin(), sorted.end());
  r.max_jump = sorted.back();
  r.median_jump = sorted[n / 2];
  // Ambiguity: a pairwise swap that is almost free means the two identities
  // cannot be distinguished at this step (typical straddling a collision).
  for (int i = 0; i < n && !r.ambiguous; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const double direct = jumps[i] + jumps[j];
      const double swapped =
          cost[i * n + r.perm[j]] + cost[j * n + r.perm[i]];
      if (swapped - direct < 0.05 * direct + 1e-12) {
        r.ambiguous = true;
        break;
      }
    }
  }
  return r;
}

/// March from (ga, pa) to gb, halving the step while any matched jump is an
/// outlier.  Returns pole positions at gb ordered to continue pa's paths.
struct MarchResult {
  std::vector<Complex> poles;
  bool ambiguous = false;
};

inline MarchResult march_step(double t_h, int L, double ga, const std::vector<Complex>& pa,
                              double gb, int depth, const SweepOptions& opt) {
  std::vector<Complex> pb = pole_positions(t_h, L, gb);
  MatchResult m = match_poles(pa, pb);
  const bool outlier = m.max_jump > 10.0 * std::max(m.median_jump, 1e-6) && m.max_jump > 1e-3;
  if (outlier && depth < opt.max_refine_depth && gb - ga > 1e-9) {
    const double mid = 0.5 * (ga + gb);
    MarchResult left = march_step(t_h, L, ga, pa, mid, depth + 1, opt);
    MarchResult right = march_step(t_h, L, mid, left.poles, gb, depth + 1, opt);
    right.ambiguous = right.ambiguous || left.ambiguous;
    return right;
  }
  MarchResult out;
  out.poles.resize(pa.size());
  for (size_t i = 0; i < pa.size(); ++i) out.poles[i] = pb[m.perm[i]];
  out.ambiguous = m.ambiguous;
  return out;
}

/// Pole nearest a reference position at the given gamma.
inline Complex nearest_pole(double t_h, int L, double gamma, Complex ref) {
  const std::vector<Complex> ks = pole_positions(t_h, L, gamma);
  Complex best = ks.front();
  double bd = cyl_dist(ks.front(), ref);
  for (const Complex k : ks) {
    const double d = cyl_dist(k, ref);
    if (d < bd) {
      bd = d;
      best = k;
    }
  }
  return best;
}

/// The two distinct poles nearest a pair of reference positions.
inline std::pair<Complex, Complex> nearest_pole_pair(double t_h, int L, double gamma,
                                                     Complex ra, Complex rb) {
  const std::vector<Complex> ks = pole_positions(t_h, L, gamma);
  int ia = 0, ib = 1;
  double da = cyl_dist(ks[0], ra), db0 = cyl_dist(ks[1], rb);
  for (size_t i = 0; i < ks.size(); ++i) {
    const double d = cyl_dist(ks[i], ra);
    if (d < da) {
      da = d;
      ia = static_cast<int>(i);
    }
  }
  db0 = std::numeric_limits<double>::infinity();
  for (size_t i = 0; i < ks.size(); ++i) {
    if (static_cast<int>(i) == ia) continue;  // force distinct indices
    const double d = cyl_dist(ks[i], rb);
    if (d < db0) {
      db0 = d;
      ib = static_cast<int>(i);
    }
  }
  return {ks[ia], ks[ib]};
}

}  // namespace detail

/// Sweep the pole set over an ascending gamma grid (all entries > 0).
inline Trajectory sweep_trajectories(double t_h, int L, const std::vector<double>& gamma_grid,
                                     const SweepOptions& opt = {}) {
  if (gamma_grid.size() < 2)
    throw std::invalid_argument("sweep_trajectories: need at least two gamma samples");
  for (size_t i = 0; i < gamma_grid.size(); ++i) {
    if (!(gamma_grid[i] > 0.0))
      throw std::invalid_argument("sweep_trajectories: gamma grid must be positive");
    if (i > 0 && !(gamma_grid[i] > gamma_grid[i - 1]))
      throw std::invalid_argument("sweep_trajectories: gamma grid must ascend");
  }

  Trajectory tr;
  tr.t_h = t_h;
  tr.L = L;
  tr.gammas = gamma_grid;
  const int steps = static_cast<int>(gamma_grid.size());
  std::vector<Complex> cur = detail::pole_positions(t_h, L, gamma_grid[0]);
  const int npaths = static_cast<int>(cur.size());
  tr.paths.assign(npaths, std::vector<Complex>(steps));
  tr.step_ambiguous.assign(steps - 1, 0);
  for (int p = 0; p < npaths; ++p) tr.paths[p][0] = cur[p];

  for (int i = 0; i + 1 < steps; ++i) {
    detail::MarchResult mr =
        detail::march_step(t_h, L, gamma_grid[i], cur, gamma_grid[i + 1], 0, opt);
    cur = mr.poles;
    tr.step_ambiguous[i] = mr.ambiguous ? 1 : 0;
    for (int p = 0; p < npaths; ++p) tr.paths[p][i + 1] = cur[p];
  }

  // --- real-axis crossings: bisection on sign(Im k) within each step -------
  for (int p = 0; p < npaths; ++p) {
    for (int i = 0; i + 1 < steps; ++i) {
      const double ia = tr.paths[p][i].imag();
      const double ib = tr.paths[p][i + 1].imag();
      if (!(ia < 0.0 && ib > 0.0) && !(ia > 0.0 && ib < 0.0)) continue;
      double glo = gamma_grid[i], ghi = gamma_grid[i + 1];
      Complex klo = tr.paths[p][i];
      double slo = ia;
      Complex kev = klo;
      while (ghi - glo > opt.crossing_gamma_tol) {
        const double gm = 0.5 * (glo + ghi);
        const Complex km = detail::nearest_pole(t_h, L, gm, klo);
        kev = km;
        if ((km.imag() > 0.0) == (slo > 0.0)) {
          glo = gm;
          klo = km;
          slo = km.imag();
        } else {
          ghi = gm;
        }
      }
      TrajectoryEvent ev;
      ev.kind = EventKind::real_axis_crossing;
      ev.gamma = 0.5 * (glo + ghi);
      ev.gamma_lo = gamma_grid[i];
      ev.gamma_hi = gamma_grid[i + 1];
      ev.k = kev;
      ev.path_a = p;
      ev.path_b = -1;
      ev.ambiguous = tr.step_ambiguous[i] != 0;
      tr.events.push_back(ev);
    }
  }

  // --- collisions: golden-section on the pair distance ----------------------
  const double gr = 0.6180339887498949;
  for (int p = 0; p < npaths; ++p) {
    for (int q = p + 1; q < npaths; ++q) {
      for (int i = 1; i + 1 < steps; ++i) {
        const double dm1 = detail::cyl_dist(tr.paths[p][i - 1], tr.paths[q][i - 1]);
        const double d0 = detail::cyl_dist(tr.paths[p][i], tr.paths[q][i]);
        const double dp1 = detail::cyl_dist(tr.paths[p][i + 1], tr.paths[q][i + 1]);
        if (!(d0 < dm1 && d0 <= dp1 && d0 < opt.collision_window)) continue;
        double lo = gamma_grid[i - 1], hi = gamma_grid[i + 1];
        Complex ra = tr.paths[p][i], rb = tr.paths[q][i];
        auto dist_at = [&](double g) {
          const auto pair = detail::nearest_pole_pair(t_h, L, g, ra, rb);
          return std::make_pair(detail::cyl_dist(pair.first, pair.second),
                                detail::cyl_midpoint(pair.first, pair.second));
        };
        double x1 = hi - gr * (hi - lo), x2 = lo + gr * (hi - lo);
        auto f1 = dist_at(x1), f2 = dist_at(x2);
        for (int it = 0; it < 80 && hi - lo > 1e-12; ++it) {
          if (f1.first < f2.first) {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - gr * (hi - lo);
            f1 = dist_at(x1);
          } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + gr * (hi - lo);
            f2 = dist_at(x2);
          }
        }
        const auto fbest = f1.first < f2.first ? f1 : f2;
        const double gbest = f1.first < f2.first ? x1 : x2;
        if (fbest.first < opt.collision_eps) {
          TrajectoryEvent ev;
          ev.kind = EventKind::collision;
          ev.gamma = gbest;
          ev.gamma_lo = lo;
          ev.gamma_hi = hi;
          ev.k = fbest.second;
          ev.path_a = p;
          ev.path_b = q;
          ev.ambiguous = true;  // identities merge at an exceptional point
          tr.events.push_back(ev);
        }
      }
    }
  }

  std::sort(tr.events.begin(), tr.events.end(),
            [](const TrajectoryEvent& a, const TrajectoryEvent& b) { return a.gamma < b.gamma; });

  if (opt.half_plane_only) {
    std::vector<std::vector<Complex>> kept;
    std::vector<int> remap(npaths, -1);
    for (int p = 0; p < npaths; ++p) {
      if (tr.paths[p][0].real() > 1e-9) {
        remap[p] = static_cast<int>(kept.size());
        kept.push_back(std::move(tr.paths[p]));
      }
    }
    tr.paths = std::move(kept);
    std::vector<TrajectoryEvent> ev_kept;
    for (TrajectoryEvent& e : tr.events) {
      if (remap[e.path_a] < 0) continue;
      if (e.path_b >= 0 && remap[e.path_b] < 0) continue;
      e.path_a = remap[e.path_a];
      if (e.path_b >= 0) e.path_b = remap[e.path_b];
      ev_kept.push_back(e);
    }
    tr.events = std::move(ev_kept);
  }
  return tr;
}

}  // namespace ptscatter
