// Command-line surface: spectrum sweeps (CSV), Siegert pole sets (JSON),
// gamma-sweep trajectories (CSV) and the self-verification suites.
//
// Exit codes: 0 success, 1 verification failure, 2 usage error, 3 numerical
// failure.  Output is byte-identical for identical invocations: fixed 17
// significant digit formatting, fixed row ordering, no timestamps.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "ptscatter/ptscatter.hpp"

namespace {

using namespace ptscatter;
using C = Complex;
using ordered_json = nlohmann::ordered_json;

constexpr double kCap = 1e12;  // CSV value cap: every emitted field is finite

struct OutputTarget {
  std::ofstream file;
  std::ostream* os = &std::cout;

  // Returns false (usage error) when the file cannot be opened.
  bool open(const std::string& path) {
    if (path.empty()) return true;
    file.open(path, std::ios::binary);
    if (!file) return false;
    os = &file;
    return true;
  }
};

double clamp_cap(double x, bool* flagged) {
  if (!std::isfinite(x)) {
    *flagged = true;
    return x > 0 ? kCap : -kCap;
  }
  if (std::abs(x) > kCap) {
    *flagged = true;
    return x > 0 ? kCap : -kCap;
  }
  return x;
}

// ---------------------------------------------------------------------------
// spectrum
// ---------------------------------------------------------------------------

struct SpectrumArgs {
  std::string model = "lattice";
  double t_h = -1.0;
  double gamma = 1.0;
  int L = 7;
  double gamma_t = 1.0;
  double L_t = 3.0;
  std::string k_grid;
  std::string v0_text;
  std::string vL_text;
  std::string out;
};

struct SpectrumRow {
  double k, T, R, T_rev, R_rev, d_left, d_right;
  std::string flags;
};

SpectrumRow capped_row(double k) {
  return {k, kCap, kCap, kCap, kCap, kCap, -kCap, "DIV"};
}

SpectrumRow row_from(double k, const ScatteringAmplitudes& a) {
  SpectrumRow r{k, a.t_prob, a.r_prob, a.t_prob_rev, a.r_prob_rev,
                a.defect_left, a.defect_right, ""};
  bool flagged = false;
  r.T = clamp_cap(r.T, &flagged);
  r.R = clamp_cap(r.R, &flagged);
  r.T_rev = clamp_cap(r.T_rev, &flagged);
  r.R_rev = clamp_cap(r.R_rev, &flagged);
  r.d_left = clamp_cap(r.d_left, &flagged);
  r.d_right = clamp_cap(r.d_right, &flagged);
  if (flagged) r.flags = "DIV";
  if (a.band_edge) r.flags = r.flags.empty() ? "EDGE" : r.flags + "|EDGE";
  return r;
}

int run_spectrum(const SpectrumArgs& args) {
  OutputTarget out;
  if (!out.open(args.out)) {
    std::cerr << "usage error: cannot open output file '" << args.out << "'\n";
    return 2;
  }
  std::ostream& os = *out.os;

  const bool general = !args.v0_text.empty() || !args.vL_text.empty();
  if (args.model != "lattice" && args.model != "continuum") {
    std::cerr << "usage error: --model must be lattice or continuum\n";
    return 2;
  }
  if (general && args.model != "lattice") {
    std::cerr << "usage error: --v0/--vL apply to the lattice model only\n";
    return 2;
  }

  GridSpec grid;
  try {
    if (!args.k_grid.empty()) {
      grid = parse_grid(args.k_grid);
    } else if (args.model == "lattice") {
      grid = GridSpec{1e-6, kPi - 1e-6, 1001};
    } else {
      grid = GridSpec{1e-6, 4.0 * kPi / args.L_t, 1001};
    }
  } catch (const std::invalid_argument& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  }
  // Band edges are trimmed for lattice sweeps; the continuum needs k > 0.
  if (args.model == "lattice") {
    grid.min = std::max(grid.min, 1e-6);
    grid.max = std::min(grid.max, kPi - 1e-6);
  } else {
    grid.min = std::max(grid.min, 1e-6);
  }
  if (grid.max < grid.min) {
    std::cerr << "usage error: k grid is empty after band-edge trimming\n";
    return 2;
  }

  os << "# ptscatter spectrum\n";
  std::vector<SpectrumRow> rows;
  try {
    if (args.model == "continuum") {
      const ContinuumParams c{args.gamma_t, args.L_t};
      c.validate();
      os << "# model=continuum gamma_tilde=" << format_g17(c.gamma_t)
         << " L_tilde=" << format_g17(c.L_t) << "\n";
      for (const double k : grid.values()) {
        try {
          rows.push_back(row_from(k, continuum_amplitudes(c, k)));
        } catch (const DivergentAmplitude&) {
          rows.push_back(capped_row(k));
        }
      }
    } else if (general) {
      const C v0 = parse_complex(args.v0_text.empty() ? "0" : args.v0_text);
      const C vL = parse_complex(args.vL_text.empty() ? "0" : args.vL_text);
      const auto p = LatticeParams::general(args.t_h, v0, vL, args.L);
      p.validate();
      const auto q = LatticeParams::general(args.t_h, vL, v0, args.L);
      os << "# model=lattice t=" << format_g17(args.t_h) << " v0=" << args.v0_text
         << " vL=" << args.vL_text << " L=" << args.L << "\n";
      for (const double k : grid.values()) {
        try {
          const auto fwd = solve_scattering(p, k);
          const auto rev = solve_scattering(q, k);
          ScatteringAmplitudes a;
          a.tau = fwd.tau;
          a.rho = fwd.rho;
          a.tau_rev = rev.tau;
          a.rho_rev = rev.rho;
          a.t_prob = std::norm(a.tau);
          a.r_prob = std::norm(a.rho);
          a.t_prob_rev = std::norm(a.tau_rev);
          a.r_prob_rev = std::norm(a.rho_rev);
          a.defect_left = a.t_prob + a.r_prob - 1.0;
          a.defect_right = a.t_prob_rev + a.r_prob_rev - 1.0;
          a.band_edge = false;
          rows.push_back(row_from(k, a));
        } catch (const SingularMatrix&) {
          rows.push_back(capped_row(k));
        }
      }
    } else {
      const auto p = LatticeParams::pt(args.t_h, args.gamma, args.L);
      p.validate();
      os << "# model=lattice t=" << format_g17(args.t_h)
         << " gamma=" << format_g17(args.gamma) << " L=" << args.L << "\n";
      for (const double k : grid.values()) {
        try {
          rows.push_back(row_from(k, pt_amplitudes(p, k)));
        } catch (const DivergentAmplitude&) {
          rows.push_back(capped_row(k));
        }
      }
    }
  } catch (const std::invalid_argument& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return 3;
  }

  os << "# columns: k,T,R,T_rev,R_rev,defect_left,defect_right,flags\n";
  for (const auto& r : rows) {
    os << format_g17(r.k) << ',' << format_g17(r.T) << ',' << format_g17(r.R) << ','
       << format_g17(r.T_rev) << ',' << format_g17(r.R_rev) << ',' << format_g17(r.d_left)
       << ',' << format_g17(r.d_right) << ',' << r.flags << '\n';
  }
  return 0;
}

// ---------------------------------------------------------------------------
// poles
// ---------------------------------------------------------------------------

struct PolesArgs {
  std::string model = "lattice";
  double t_h = -1.0;
  double gamma = 1.0;
  int L = 7;
  double gamma_t = 1.0;
  double L_t = 3.0;
  double k_max = -1.0;
  std::string out;
};

ordered_json pole_to_json(const Pole& po) {
  ordered_json j;
  j["re"] = po.wn.k.real();
  j["im"] = po.wn.k.imag();
  j["label"] = pole_class_name(po.label);
  j["on_axis"] = po.on_axis;
  j["residual"] = po.residual;
  j["energy"] = ordered_json{{"re", po.energy.real()}, {"im", po.energy.imag()}};
  return j;
}

int run_poles(const PolesArgs& args) {
  OutputTarget out;
  if (!out.open(args.out)) {
    std::cerr << "usage error: cannot open output file '" << args.out << "'\n";
    return 2;
  }
  std::ostream& os = *out.os;

  ordered_json j;
  j["model"] = args.model;
  int rc = 0;
  try {
    if (args.model == "lattice") {
      j["t"] = args.t_h;
      j["gamma"] = args.gamma;
      j["L"] = args.L;
      const auto p = LatticeParams::pt(args.t_h, args.gamma, args.L);
      p.validate();
      try {
        const auto ps = find_poles(p);
        j["count"] = ps.poles.size();
        auto& arr = j["poles"] = ordered_json::array();
        for (const auto& po : ps.poles) arr.push_back(pole_to_json(po));
      } catch (const DegenerateSpectrum& e) {
        j["count"] = 0;
        j["poles"] = ordered_json::array();
        j["degenerate"] = true;
        j["message"] = e.what();
      } catch (const RootFindingFailure& e) {
        j["count"] = 0;
        j["poles"] = ordered_json::array();
        j["failures"] = ordered_json::array({e.what()});
        rc = 3;
      }
    } else if (args.model == "continuum") {
      j["gamma_tilde"] = args.gamma_t;
      j["L_tilde"] = args.L_t;
      const ContinuumParams c{args.gamma_t, args.L_t};
      c.validate();
      try {
        const auto rep = continuum_poles(c, args.k_max);
        j["count"] = rep.poles.size();
        auto& arr = j["poles"] = ordered_json::array();
        for (const auto& po : rep.poles) arr.push_back(pole_to_json(po));
        if (!rep.failed_seeds.empty()) j["failed_seeds"] = rep.failed_seeds;
      } catch (const DegenerateSpectrum& e) {
        j["count"] = 0;
        j["poles"] = ordered_json::array();
        j["degenerate"] = true;
        j["message"] = e.what();
      }
    } else {
      std::cerr << "usage error: --model must be lattice or continuum\n";
      return 2;
    }
  } catch (const std::invalid_argument& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return 3;
  }
  os << j.dump(2) << "\n";
  return rc;
}

// ---------------------------------------------------------------------------
// trajectory
// ---------------------------------------------------------------------------

struct TrajectoryArgs {
  double t_h = -1.0;
  int L = 7;
  std::string gamma_range;
  bool half_plane = false;
  std::string out;
};

int run_trajectory(const TrajectoryArgs& args) {
  OutputTarget out;
  if (!out.open(args.out)) {
    std::cerr << "usage error: cannot open output file '" << args.out << "'\n";
    return 2;
  }
  std::ostream& os = *out.os;

  GridSpec grid;
  try {
    if (args.gamma_range.empty())
      throw std::invalid_argument("--gamma-range min:max:count is required");
    grid = parse_grid(args.gamma_range);
    if (grid.count < 2) throw std::invalid_argument("gamma grid needs count >= 2");
  } catch (const std::invalid_argument& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  }

  Trajectory tr;
  try {
    SweepOptions opt;
    opt.half_plane_only = args.half_plane;
    tr = sweep_trajectories(args.t_h, args.L, grid.values(), opt);
  } catch (const std::invalid_argument& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return 3;
  }

  os << "# ptscatter trajectory\n";
  os << "# model=lattice t=" << format_g17(args.t_h) << " L=" << args.L
     << " paths=" << tr.paths.size() << "\n";
  os << "# grid rows first (gamma-major), event rows appended; collisions emit"
        " one row per participating path\n";
  os << "# columns: gamma,path_id,k_re,k_im,event\n";
  for (size_t i = 0; i < tr.gammas.size(); ++i)
    for (size_t p = 0; p < tr.paths.size(); ++p)
      os << format_g17(tr.gammas[i]) << ',' << p << ',' << format_g17(tr.paths[p][i].real())
         << ',' << format_g17(tr.paths[p][i].imag()) << ",\n";
  for (const auto& e : tr.events) {
    os << format_g17(e.gamma) << ',' << e.path_a << ',' << format_g17(e.k.real()) << ','
       << format_g17(e.k.imag()) << ',' << event_kind_name(e.kind) << '\n';
    if (e.kind == EventKind::collision && e.path_b >= 0)
      os << format_g17(e.gamma) << ',' << e.path_b << ',' << format_g17(e.k.real()) << ','
         << format_g17(e.k.imag()) << ",collision\n";
  }
  return 0;
}

// ---------------------------------------------------------------------------
// verify
// ---------------------------------------------------------------------------

struct VerifyArgs {
  std::string level = "default";
  std::uint64_t seed = 20260814ull;
};

struct Suite {
  std::string name;
  bool pass = true;
  long checks = 0;
  std::string detail;

  void expect(bool ok, const std::string& what) {
    ++checks;
    if (!ok && pass) {
      pass = false;
      detail = what;
    }
  }
};

class Uniform {
 public:
  explicit Uniform(std::uint64_t seed) : rng_(seed) {}
  double operator()(double lo, double hi) {
    return lo + (hi - lo) * ((rng_() >> 11) * 0x1.0p-53);
  }
  std::uint64_t raw() { return rng_(); }

 private:
  std::mt19937_64 rng_;
};

Suite suite_route_equivalence(int samples, std::uint64_t seed) {
  Suite s;
  s.name = "route-equivalence";
  Uniform u(seed);
  for (int i = 0; i < samples; ++i) {
    const double g = u(1e-3, 4.0);
    const int L = 1 + int(u.raw() % 12);
    const double k = u(0.05, kPi - 0.05);
    const auto p = LatticeParams::pt(-1.0, g, L);
    if (std::abs(fp_denominator(p, C(k, 0.0))) < 1e-6) continue;
    const auto cl = pt_amplitudes(p, k);
    const auto ms = solve_scattering(p, k);
    s.expect(std::abs(cl.tau - ms.tau) < 1e-10, "closed vs matrix tau");
    s.expect(std::abs(cl.rho - ms.rho) < 1e-10, "closed vs matrix rho");
    const auto sr = fp_series_sum(p, k, 5000, 1e-13);
    if (std::abs(sr.bounce_ratio) < 0.95) {
      s.expect(sr.converged, "series convergence below |q| = 0.95");
      s.expect(std::abs(sr.tau - cl.tau) < 1e-9, "series vs closed tau");
      s.expect(std::abs(sr.rho - cl.rho) < 1e-9, "series vs closed rho");
    }
  }
  return s;
}

Suite suite_determinant_identities(int l_max) {
  Suite s;
  s.name = "determinant-identities";
  for (const double g : {0.7, 1.9, 2.5, 3.3})
    for (int L = 1; L <= l_max; ++L) {
      const auto p = LatticeParams::pt(-1.0, g, L);
      for (int j = 0; j < 50; ++j) {
        const double k = 0.1 + (kPi - 0.2) * (j + 0.371) / 50.0;
        const C closed = det_closed_form(p, C(k, 0.0));
        const C numer = numeric_det(build_matrix(p, C(k, 0.0)).m);
        s.expect(std::abs(closed - numer) <= 1e-9 * std::max(std::abs(closed), 1e-30),
                 "closed vs LU determinant");
      }
    }
  for (const double k : {0.4, 1.3, 2.2})
    for (int n = 1; n <= 50; ++n) {
      const auto d = d_n_recursion(-1.0, k, n);
      s.expect(std::abs(d.closed - d.iterated) <= 1e-10 * std::max(std::abs(d.closed), 1e-30),
               "free-chain minor recurrence");
    }
  for (const double g : {0.6, 2.4})
    for (const int L : {1, 4, 9})
      for (const double k : {0.5, 1.6, 2.8}) {
        const auto p = LatticeParams::pt(-1.0, g, L);
        const auto m = build_matrix(p, C(k, 0.0)).m;
        const auto cf = cofactors_closed(p, C(k, 0.0));
        const C corner = numeric_minor(m, 0, L);
        const C diag = numeric_minor(m, 0, 0);
        s.expect(std::abs(cf.corner - corner) <= 1e-9 * std::max(std::abs(corner), 1e-30),
                 "corner cofactor");
        s.expect(std::abs(cf.diag - diag) <= 1e-9 * std::max(std::abs(diag), 1e-30),
                 "diagonal cofactor");
      }
  return s;
}

Suite suite_pole_residuals(bool full) {
  Suite s;
  s.name = "pole-residuals";
  const std::vector<double> gammas =
      full ? std::vector<double>{0.3, 0.8, 1.2, 1.9, 2.6, 3.3, 3.9}
           : std::vector<double>{0.3, 1.2, 2.6, 3.9};
  for (const double g : gammas)
    for (const int L : {1, 2, 4, 7, 10}) {
      const auto p = LatticeParams::pt(-1.0, g, L);
      const auto ps = find_poles(p);
      s.expect(ps.poles.size() == size_t(2 * L), "pole count 2L");
      for (const auto& po : ps.poles) {
        s.expect(po.residual <= 1e-9 * detail::denominator_scale(p, po.wn.k),
                 "pole residual");
        C mirror = -std::conj(po.wn.k);
        if (mirror.real() <= -kPi + 1e-12) mirror += 2.0 * kPi;
        double best = 1e18;
        for (const auto& other : ps.poles)
          best = std::min(best, std::abs(other.wn.k - mirror));
        s.expect(best < 1e-8, "conjugate-pair closure");
      }
      const auto pw = pencil_wavenumbers(p);
      s.expect(pw.size() == ps.poles.size(), "pencil deflation count");
      std::vector<bool> taken(pw.size(), false);
      for (const auto& po : ps.poles) {
        double best = 1e18;
        size_t bi = 0;
        for (size_t idx = 0; idx < pw.size(); ++idx) {
          if (taken[idx]) continue;
          const double d = std::abs(pw[idx] - po.wn.k);
          if (d < best) {
            best = d;
            bi = idx;
          }
        }
        taken[bi] = true;
        s.expect(best < 1e-7, "pencil vs polynomial route");
      }
    }
  return s;
}

Suite suite_alpha_relations(int samples, std::uint64_t seed) {
  Suite s;
  s.name = "alpha-relations";
  Uniform u(seed + 1);
  for (int i = 0; i < samples; ++i) {
    const double g = u(1e-3, 4.0);
    const int L = 1 + int(u.raw() % 12);
    const double k = u(0.05, kPi - 0.05);
    const auto p = LatticeParams::pt(-1.0, g, L);
    if (std::abs(fp_denominator(p, C(k, 0.0))) < 1e-6) continue;
    if (std::abs(g - 2.0 * std::sin(k)) < 1e-3) continue;  // alpha pole
    const auto a = pt_amplitudes(p, k);
    const double alpha = alpha_modulation(-1.0, g, k);
    const double one_m_t = one_minus_transmission(p, k);
    const double sc1 = std::max({a.r_prob, std::abs(alpha * one_m_t), 1e-30});
    s.expect(std::abs(a.r_prob - alpha * one_m_t) / sc1 < 1e-10, "R = alpha (1 - T)");
    const double sc2 = std::max({a.r_prob_rev, std::abs(one_m_t / alpha), 1e-30});
    s.expect(std::abs(a.r_prob_rev - one_m_t / alpha) / sc2 < 1e-10, "R_rev = (1 - T)/alpha");
    const auto b = pt_amplitudes(LatticeParams::pt(-1.0, -g, L), k);
    s.expect(a.tau == b.tau, "transmission reciprocity is exact");
  }
  return s;
}

Suite suite_defect_signs() {
  Suite s;
  s.name = "defect-signs";
  for (const double g : {2.5, 4.0})
    for (const int L : {6, 7}) {
      const auto p = LatticeParams::pt(-1.0, g, L);
      for (int j = 1; j < 400; ++j) {
        const double k = j * kPi / 400.0 + 0.0041;
        if (k >= kPi) continue;
        const auto d = unitarity_defects(p, k);
        s.expect(d.left > 0.0, "gain-side defect sign");
        s.expect(d.right < 0.0, "loss-side defect sign");
      }
    }
  for (const double g : {0.3, 1.0, 1.9})
    for (int j = 1; j < 200; ++j) {
      const double k = j * kPi / 200.0 + 0.0041;
      if (k >= kPi) continue;
      s.expect(unitarity_defects(LatticeParams::pt(-1.0, g, 7), k).left >= 0.0,
               "gain-side defect sign (weak regime)");
    }
  return s;
}

int run_verify(const VerifyArgs& args) {
  int samples;
  int l_max;
  bool full = false;
  if (args.level == "quick") {
    samples = 100;
    l_max = 8;
  } else if (args.level == "default") {
    samples = 1000;
    l_max = 20;
  } else if (args.level == "full") {
    samples = 5000;
    l_max = 20;
    full = true;
  } else {
    std::cerr << "usage error: --level must be quick, default or full\n";
    return 2;
  }

  std::vector<Suite> suites;
  try {
    suites.push_back(suite_route_equivalence(samples, args.seed));
    suites.push_back(suite_determinant_identities(l_max));
    suites.push_back(suite_pole_residuals(full));
    suites.push_back(suite_alpha_relations(samples, args.seed));
    suites.push_back(suite_defect_signs());
  } catch (const std::exception& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return 3;
  }

  int failed = 0;
  for (const auto& s : suites) {
    if (s.pass) {
      std::cout << "PASS " << s.name << " (" << s.checks << " checks)\n";
    } else {
      ++failed;
      std::cout << "FAIL " << s.name << ": " << s.detail << "\n";
    }
  }
  std::cout << (suites.size() - failed) << "/" << suites.size() << " suites passed\n";
  return failed == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Scattering from a PT-symmetric pair of imaginary potentials"
               " on a 1D tight-binding chain"};
  app.require_subcommand(1);

  SpectrumArgs sa;
  auto* sp = app.add_subcommand("spectrum", "Transmission/reflection sweep (CSV)");
  sp->add_option("--model", sa.model, "lattice or continuum");
  sp->add_option("--t", sa.t_h, "hopping t_h (lattice)");
  sp->add_option("--gamma", sa.gamma, "imaginary strength gamma (lattice)");
  sp->add_option("--L", sa.L, "site separation L (lattice)");
  sp->add_option("--gamma-tilde", sa.gamma_t, "delta strength (continuum)");
  sp->add_option("--L-tilde", sa.L_t, "separation (continuum)");
  sp->add_option("--k", sa.k_grid, "k grid min:max:count");
  sp->add_option("--v0", sa.v0_text, "left on-site potential a+bi (general lattice)");
  sp->add_option("--vL", sa.vL_text, "right on-site potential a+bi (general lattice)");
  sp->add_option("--out", sa.out, "output file (default stdout)");

  PolesArgs pa;
  auto* pl = app.add_subcommand("poles", "Siegert pole set (JSON)");
  pl->add_option("--model", pa.model, "lattice or continuum");
  pl->add_option("--t", pa.t_h, "hopping t_h (lattice)");
  pl->add_option("--gamma", pa.gamma, "imaginary strength gamma (lattice)");
  pl->add_option("--L", pa.L, "site separation L (lattice)");
  pl->add_option("--gamma-tilde", pa.gamma_t, "delta strength (continuum)");
  pl->add_option("--L-tilde", pa.L_t, "separation (continuum)");
  pl->add_option("--k-max", pa.k_max, "window limit for continuum poles");
  pl->add_option("--out", pa.out, "output file (default stdout)");

  TrajectoryArgs ta;
  auto* tj = app.add_subcommand("trajectory", "Pole trajectories over a gamma sweep (CSV)");
  tj->add_option("--t", ta.t_h, "hopping t_h");
  tj->add_option("--L", ta.L, "site separation L");
  tj->add_option("--gamma-range", ta.gamma_range, "gamma grid min:max:count");
  tj->add_flag("--half-plane", ta.half_plane, "keep only paths starting at Re k > 0");
  tj->add_option("--out", ta.out, "output file (default stdout)");

  VerifyArgs va;
  auto* vf = app.add_subcommand("verify", "Cross-route verification suites");
  vf->add_option("--level", va.level, "quick, default or full");
  vf->add_option("--seed", va.seed, "random seed for sampled suites");

  int rc = 0;
  sp->callback([&]() { rc = run_spectrum(sa); });
  pl->callback([&]() { rc = run_poles(pa); });
  tj->callback([&]() { rc = run_trajectory(ta); });
  vf->callback([&]() { rc = run_verify(va); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }
  return rc;
}
