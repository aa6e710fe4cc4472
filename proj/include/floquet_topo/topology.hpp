#pragma once

#include <cmath>
#include <vector>

#include "errors.hpp"
#include "floquet.hpp"
#include "models.hpp"
#include "numerics.hpp"
#include "parallel.hpp"
#include "rwa.hpp"

namespace ft {

// Reduce to (-pi, pi].
inline double wrap_angle(double x) {
  double r = std::remainder(x, 2 * pi);
  if (r <= -pi + 1e-12) r += 2 * pi;
  return r;
}

namespace detail {

inline double pairwise_sum(const double* x, std::size_t n) {
  if (n <= 8) {
    double s = 0;
    for (std::size_t i = 0; i < n; ++i) s += x[i];
    return s;
  }
  const std::size_t h = n / 2;
  return pairwise_sum(x, h) + pairwise_sum(x + h, n - h);
}

template <class V>
cplx link(const V& a, const V& b) {
  const cplx z = a.dot(b);
  if (std::abs(z) < 1e-6) throw resolution_error("vanishing overlap between neighbouring states; refine the grid");
  return z;
}

}  // namespace detail

// -Im sum log <u_i|u_{i+1}> over a closed loop (last entry repeats the first k).
template <class V>
double wilson_loop_zak(const std::vector<V>& loop) {
  if (loop.size() < 65) throw domain_error("wilson_loop_zak: need at least 64 k-points plus closure");
  if (std::abs(std::abs(loop.front().dot(loop.back())) - 1) > 1e-8)
    throw contract_error("wilson_loop_zak: loop is not closed");
  double g = 0;
  for (std::size_t i = 0; i + 1 < loop.size(); ++i) g -= std::arg(detail::link(loop[i], loop[i + 1]));
  return wrap_angle(g);
}

struct ZakSplit {
  double gamma = 0;        // composed Floquet states
  double gamma_tilde = 0;  // rotating-frame eigenvectors
  double gamma_bar = 0;    // frame part, link by link
};

template <class V>
ZakSplit split_zak(const std::vector<V>& phi, const std::vector<V>& Phi) {
  if (phi.size() != Phi.size()) throw domain_error("split_zak: loop sizes differ");
  ZakSplit z;
  z.gamma_tilde = wilson_loop_zak(phi);
  z.gamma = wilson_loop_zak(Phi);
  double g = 0;
  for (std::size_t i = 0; i + 1 < phi.size(); ++i)
    g -= std::arg(detail::link(Phi[i], Phi[i + 1]) / detail::link(phi[i], phi[i + 1]));
  z.gamma_bar = wrap_angle(g);
  return z;
}

// ---------------------------------------------------------------- Berry flux

// Rectangular grid, states at (nx+1) x (ny+1) corners indexed i*(ny+1)+j.
struct KGrid {
  int nx = 0, ny = 0;
  double kx0 = -pi, kx1 = pi, ky0 = -pi / 2, ky1 = pi / 2;
  double kx(int i) const { return kx0 + (kx1 - kx0) * i / nx; }
  double ky(int j) const { return ky0 + (ky1 - ky0) * j / ny; }
  std::size_t corner(int i, int j) const { return std::size_t(i) * (ny + 1) + j; }
  std::size_t corners() const { return std::size_t(nx + 1) * (ny + 1); }
};

inline KGrid piflux_grid(int nx, int ny) { return KGrid{nx, ny}; }

struct BerryFluxMap {
  KGrid grid;
  std::vector<double> flux;  // plaquette (i, j) at i*ny + j, in (-pi, pi]
  double at(int i, int j) const { return flux[std::size_t(i) * grid.ny + j]; }
  double kx_center(int i) const { return 0.5 * (grid.kx(i) + grid.kx(i + 1)); }
  double ky_center(int j) const { return 0.5 * (grid.ky(j) + grid.ky(j + 1)); }
  double total() const { return detail::pairwise_sum(flux.data(), flux.size()); }
};

namespace detail {

template <class V>
cplx plaquette(const std::vector<V>& s, const KGrid& g, int i, int j) {
  const V& a = s[g.corner(i, j)];
  const V& b = s[g.corner(i + 1, j)];
  const V& c = s[g.corner(i + 1, j + 1)];
  const V& d = s[g.corner(i, j + 1)];
  return link(a, b) * link(b, c) * link(c, d) * link(d, a);
}

}  // namespace detail

template <class V>
BerryFluxMap berry_flux_map(const std::vector<V>& states, const KGrid& g) {
  if (g.nx < 64 || g.ny < 64) throw domain_error("berry_flux_map: grid must be at least 64x64");
  if (states.size() != g.corners()) throw domain_error("berry_flux_map: state count does not match grid");
  BerryFluxMap m;
  m.grid = g;
  m.flux.resize(std::size_t(g.nx) * g.ny);
  for (int i = 0; i < g.nx; ++i)
    for (int j = 0; j < g.ny; ++j) m.flux[std::size_t(i) * g.ny + j] = -std::arg(detail::plaquette(states, g, i, j));
  return m;
}

inline int chern_number(const BerryFluxMap& m, double* residual = nullptr) {
  const double c = m.total() / (2 * pi);
  const double r = std::abs(c - std::round(c));
  if (residual) *residual = r;
  if (r >= 1e-6) throw convergence_error("chern_number: total flux not an integer multiple of 2 pi");
  return static_cast<int>(std::lround(c));
}

struct ChernSplit {
  int c = 0;
  int c_tilde = 0;
  int c_bar = 0;
};

struct SplitFluxMaps {
  BerryFluxMap total;  // composed states
  BerryFluxMap tilde;  // rotating-frame eigenvectors
  BerryFluxMap bar;    // plaquette ratio, flux(total) = flux(tilde) + flux(bar) mod 2 pi
};

template <class V>
SplitFluxMaps split_flux_maps(const std::vector<V>& phi, const std::vector<V>& Phi, const KGrid& g) {
  SplitFluxMaps m{berry_flux_map(Phi, g), berry_flux_map(phi, g), {}};
  m.bar.grid = g;
  m.bar.flux.resize(std::size_t(g.nx) * g.ny);
  for (int i = 0; i < g.nx; ++i)
    for (int j = 0; j < g.ny; ++j)
      m.bar.flux[std::size_t(i) * g.ny + j] =
          -std::arg(detail::plaquette(Phi, g, i, j) / detail::plaquette(phi, g, i, j));
  return m;
}

template <class V>
ChernSplit split_chern(const std::vector<V>& phi, const std::vector<V>& Phi, const KGrid& g) {
  const auto m = split_flux_maps(phi, Phi, g);
  return {chern_number(m.total), chern_number(m.tilde), chern_number(m.bar)};
}

// c_+/- = -/+ sgn(Jx0 Jy0) sgn(Jx1 Jy1 sin phi)
struct ChernPair {
  int c_plus = 0;
  int c_minus = 0;
};

inline ChernPair analytic_chern_highfreq(const PiFluxSpec& s) {
  s.validate();
  const double a = s.hop_x(0) * s.hop_y(0);
  const double b = s.hop_x(1) * s.hop_y(1) * std::sin(s.phi);
  const double tol = 1e-12 * s.J * s.J;
  if (std::abs(s.hop_x(0)) < 1e-12 || std::abs(s.hop_y(0)) < 1e-12 || std::abs(s.hop_x(1)) < 1e-12 ||
      std::abs(s.hop_y(1)) < 1e-12 || std::abs(b) < tol)
    throw undefined_invariant_error("analytic_chern_highfreq: gapless parameter point");
  const int c = -(a > 0 ? 1 : -1) * (b > 0 ? 1 : -1);
  return {c, -c};
}

// c_+ over an (Ax, Ay) grid; 0 marks gapless points.
inline std::vector<int> piflux_phase_diagram(PiFluxSpec s, const std::vector<double>& ax,
                                             const std::vector<double>& ay) {
  std::vector<int> out;
  out.reserve(ax.size() * ay.size());
  for (double x : ax)
    for (double y : ay) {
      s.Ax = x;
      s.Ay = y;
      try {
        out.push_back(analytic_chern_highfreq(s).c_plus);
      } catch (const undefined_invariant_error&) {
        out.push_back(0);
      }
    }
  return out;
}

// ------------------------------------------------------------ SSH Zak phases

struct ZakReport {
  ZakSplit plus;   // quasienergy band eps_+
  ZakSplit minus;  // quasienergy band eps_-
};

// Analytic states on a closed k-loop at time t. Quasienergy band a is carried
// by the rotating-frame label -a.
inline ZakReport ssh_zak(const SSHSpec& s, int nk = 512, double t = 0) {
  std::vector<Vec2> phi_p, Phi_p, phi_m, Phi_m;
  for (int i = 0; i <= nk; ++i) {
    const double k = -pi + 2 * pi * (i % nk) / nk;
    const auto p = ssh_rwa(s, k);
    phi_p.push_back(p.rot.states.col(0));
    phi_m.push_back(p.rot.states.col(1));
    Phi_p.push_back(analytic_floquet_state(p, s.omega, t, +1));
    Phi_m.push_back(analytic_floquet_state(p, s.omega, t, -1));
  }
  ZakReport r;
  r.plus = split_zak(phi_m, Phi_m);
  r.minus = split_zak(phi_p, Phi_p);
  return r;
}

// Zak phases of the exact Floquet bands (upper, lower in quasienergy).
inline std::pair<double, double> ssh_exact_zak(const SSHSpec& s, int nk = 512, int steps = default_steps,
                                               int threads = 1) {
  auto spectra = parallel_map(std::size_t(nk), threads, [&](std::size_t i) {
    const double k = -pi + 2 * pi * double(i) / nk;
    return quasienergies(one_period_propagator(ssh_bloch(s, k), steps), s.omega);
  });
  std::vector<Vec2> up, dn;
  for (int i = 0; i <= nk; ++i) {
    up.push_back(spectra[i % nk].modes.col(1));
    dn.push_back(spectra[i % nk].modes.col(0));
  }
  return {wilson_loop_zak(up), wilson_loop_zak(dn)};
}

// Zak phase of the lower band of a static Bloch Hamiltonian.
template <class F>
double static_lower_band_zak(F&& H0, int nk = 512) {
  std::vector<Vec2> loop;
  for (int i = 0; i <= nk; ++i) loop.push_back(eig_hermitian(Mat2(H0(-pi + 2 * pi * (i % nk) / nk))).vectors.col(0));
  return wilson_loop_zak(loop);
}

// --------------------------------------------------------- pi-flux Chern sets

struct ExactBands {
  KGrid grid;
  std::vector<Vec2> upper, lower;  // per corner
  std::vector<double> eps_upper, eps_lower;
  double min_zero_gap = 0;
  double min_pi_gap = 0;
};

inline ExactBands piflux_exact_bands(const PiFluxSpec& s, int nx, int ny, int steps = default_steps,
                                     int threads = 1) {
  s.validate();
  const KGrid g = piflux_grid(nx, ny);
  auto spectra = parallel_map(std::size_t(nx) * (ny + 1), threads, [&](std::size_t idx) {
    const int i = int(idx / (ny + 1)), j = int(idx % (ny + 1));
    return quasienergies(one_period_propagator(piflux_bloch(s, g.kx(i), g.ky(j)), steps), s.omega);
  });
  ExactBands b;
  b.grid = g;
  b.upper.resize(g.corners());
  b.lower.resize(g.corners());
  b.eps_upper.resize(g.corners());
  b.eps_lower.resize(g.corners());
  double z = s.omega, p = s.omega;
  for (int i = 0; i <= nx; ++i)
    for (int j = 0; j <= ny; ++j) {
      const auto& sp = spectra[std::size_t(i % nx) * (ny + 1) + j];
      const auto c = g.corner(i, j);
      b.upper[c] = sp.modes.col(1);
      b.lower[c] = sp.modes.col(0);
      b.eps_upper[c] = sp.eps(1);
      b.eps_lower[c] = sp.eps(0);
      z = std::min(z, zero_gap(sp.eps, s.omega));
      p = std::min(p, pi_gap(sp.eps, s.omega));
    }
  b.min_zero_gap = z;
  b.min_pi_gap = p;
  return b;
}

struct ChernReport {
  int c_plus = 0, c_minus = 0;
  int c_tilde_plus = 0, c_tilde_minus = 0;
  int c_bar_plus = 0, c_bar_minus = 0;
};

struct AnalyticStates {
  KGrid grid;
  std::vector<Vec2> phi_plus, phi_minus, Phi_plus, Phi_minus;  // rotating-frame labels
};

inline AnalyticStates piflux_analytic_states(const PiFluxSpec& s, int nx, int ny, double t = 0,
                                             StaticPart part = StaticPart::stroboscopic) {
  s.validate();
  const PiFluxHarmonics h(s);
  AnalyticStates a;
  a.grid = piflux_grid(nx, ny);
  const auto& g = a.grid;
  for (auto* v : {&a.phi_plus, &a.phi_minus, &a.Phi_plus, &a.Phi_minus}) v->resize(g.corners());
  for (int i = 0; i <= nx; ++i)
    for (int j = 0; j <= ny; ++j) {
      const auto c = g.corner(i, j);
      if (i == nx) {
        const auto c0 = g.corner(0, j);
        for (auto* v : {&a.phi_plus, &a.phi_minus, &a.Phi_plus, &a.Phi_minus}) (*v)[c] = (*v)[c0];
        continue;
      }
      const auto p = piflux_rwa(h, g.kx(i), g.ky(j), part);
      a.phi_plus[c] = p.rot.states.col(0);
      a.phi_minus[c] = p.rot.states.col(1);
      a.Phi_plus[c] = analytic_floquet_state(p, s.omega, t, +1);
      a.Phi_minus[c] = analytic_floquet_state(p, s.omega, t, -1);
    }
  return a;
}

// Analytic frame split. ChernReport.c_* refer to quasienergy bands; the
// tilde and bar parts keep rotating-frame labels, so c_+ = c_bar_- + c_tilde_-.
inline ChernReport piflux_split_chern(const PiFluxSpec& s, int nx, int ny, double t = 0,
                                      StaticPart part = StaticPart::stroboscopic) {
  const auto a = piflux_analytic_states(s, nx, ny, t, part);
  const auto from_plus = split_chern(a.phi_plus, a.Phi_plus, a.grid);    // carries eps_-
  const auto from_minus = split_chern(a.phi_minus, a.Phi_minus, a.grid); // carries eps_+
  ChernReport r;
  r.c_plus = from_minus.c;
  r.c_minus = from_plus.c;
  r.c_tilde_plus = from_plus.c_tilde;
  r.c_tilde_minus = from_minus.c_tilde;
  r.c_bar_plus = from_plus.c_bar;
  r.c_bar_minus = from_minus.c_bar;
  return r;
}

// Chern numbers of the stroboscopic Hamiltonian bands (upper, lower).
inline ChernPair piflux_stroboscopic_chern(const PiFluxSpec& s, int nx, int ny,
                                           MassConvention c = MassConvention::commutator) {
  const PiFluxHarmonics h(s, c);
  const KGrid g = piflux_grid(nx, ny);
  std::vector<Vec2> up(g.corners()), dn(g.corners());
  for (int i = 0; i <= nx; ++i)
    for (int j = 0; j <= ny; ++j) {
      const auto e = eig_hermitian(h.stroboscopic(g.kx(i % nx), g.ky(j)));
      up[g.corner(i, j)] = e.vectors.col(1);
      dn[g.corner(i, j)] = e.vectors.col(0);
    }
  return {chern_number(berry_flux_map(up, g)), chern_number(berry_flux_map(dn, g))};
}

}  // namespace ft
