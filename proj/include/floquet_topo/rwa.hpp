#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "errors.hpp"
#include "floquet.hpp"
#include "models.hpp"
#include "numerics.hpp"

namespace ft {

// Lambda has columns (upper, lower).
struct EigenFrame {
  Mat2 Lambda;
  double E_plus = 0;
  double E_minus = 0;
};

inline EigenFrame static_eigenframe(const Mat2& H0) {
  const auto e = eig_hermitian(H0);
  if (e.values(1) - e.values(0) < 1e-9)
    throw degeneracy_error("static_eigenframe: degenerate static bands; offset the k-grid");
  EigenFrame f;
  f.Lambda.col(0) = e.vectors.col(1);
  f.Lambda.col(1) = e.vectors.col(0);
  f.E_plus = e.values(1);
  f.E_minus = e.values(0);
  return f;
}

// Rotating term: upper-lower element of the exp(-i omega t) drive component
// in the static eigenbasis.
inline cplx rotating_coupling(const EigenFrame& f, const Mat2& lower_harmonic) {
  return (f.Lambda.adjoint() * lower_harmonic * f.Lambda)(0, 1);
}

struct RotatingFrameHamiltonian {
  double detuning = 0;  // E_+ - omega/2
  cplx Gamma;
  Mat2 H;
  double E_plus = 0;    // eigenvalues of H
  double E_minus = 0;
  Mat2 states;          // columns (phi_+, phi_-)
};

inline RotatingFrameHamiltonian rotating_frame_hamiltonian(const EigenFrame& f, cplx Gamma, double omega) {
  RotatingFrameHamiltonian r;
  r.detuning = f.E_plus - 0.5 * omega;
  r.Gamma = Gamma;
  r.H << f.E_plus - 0.5 * omega, Gamma, std::conj(Gamma), f.E_minus + 0.5 * omega;
  const auto e = eig_hermitian(r.H);
  r.E_plus = e.values(1);
  r.E_minus = e.values(0);
  r.states.col(0) = e.vectors.col(1);
  r.states.col(1) = e.vectors.col(0);
  return r;
}

// eps_+ = omega/2 + lambda_-, eps_- = -omega/2 + lambda_+. The band
// reversal between rotating-frame and quasienergy labels happens here only.
struct RwaQuasienergies {
  double eps_plus = 0;
  double eps_minus = 0;
  static constexpr bool band_reversed = true;
};

inline RwaQuasienergies rwa_quasienergy_map(double lambda_plus, double lambda_minus, double omega) {
  return {fold(0.5 * omega + lambda_minus, omega), fold(-0.5 * omega + lambda_plus, omega)};
}

// Rotating-frame label whose Floquet state carries quasienergy band `band`.
inline int rotating_label_of_band(int band) { return -band; }

struct RwaPoint {
  EigenFrame frame;
  RotatingFrameHamiltonian rot;
};

// ------------------------------------------------------------ model adapters

inline RwaPoint rabi_rwa(const RabiSpec& s) {
  s.validate();
  RwaPoint p;
  p.frame.Lambda.setIdentity();
  p.frame.E_plus = 0.5 * s.delta_n(0);
  p.frame.E_minus = -0.5 * s.delta_n(0);
  const cplx g = rotating_coupling(p.frame, rabi_lower_harmonic(s));
  p.rot = rotating_frame_hamiltonian(p.frame, g, s.omega);
  return p;
}

inline RwaQuasienergies rabi_analytic_quasienergies(const RabiSpec& s) {
  const auto p = rabi_rwa(s);
  return rwa_quasienergy_map(p.rot.E_plus, p.rot.E_minus, s.omega);
}

inline RwaPoint ssh_rwa(const SSHSpec& s, double k) {
  RwaPoint p;
  p.frame = static_eigenframe(ssh_static(s, k));
  const cplx g = rotating_coupling(p.frame, ssh_harmonic(s, k, -1));
  p.rot = rotating_frame_hamiltonian(p.frame, g, s.omega);
  return p;
}

enum class StaticPart { stroboscopic, average };

// Window 4 sqrt(Jx0^2 + Jy0^2) >> omega >> 16 Jx1 Jy1 / omega, each by 1.5x.
inline void piflux_regime_check(const PiFluxSpec& s, Warnings* w) {
  const double band = 4 * std::hypot(s.hop_x(0), s.hop_y(0));
  const double mass = 16 * std::abs(s.hop_x(1) * s.hop_y(1)) / s.omega;
  if (band < 1.5 * s.omega) warn(w, "piflux: omega not well below the static bandwidth");
  if (s.omega < 1.5 * mass) warn(w, "piflux: omega not well above the mass scale");
}

inline RwaPoint piflux_rwa(const PiFluxHarmonics& h, double kx, double ky,
                           StaticPart part = StaticPart::stroboscopic) {
  RwaPoint p;
  p.frame = static_eigenframe(part == StaticPart::stroboscopic ? h.stroboscopic(kx, ky) : h.average(kx, ky));
  const cplx g = rotating_coupling(p.frame, h.lower(kx, ky));
  p.rot = rotating_frame_hamiltonian(p.frame, g, h.omega);
  return p;
}

inline RwaPoint piflux_rwa(const PiFluxSpec& s, double kx, double ky, StaticPart part = StaticPart::stroboscopic,
                           Warnings* w = nullptr) {
  s.validate();
  piflux_regime_check(s, w);
  return piflux_rwa(PiFluxHarmonics(s), kx, ky, part);
}

// ------------------------------------------------------- analytic Floquet states

// Lattice models: Lambda exp(-i omega/2 t (sigma_z -/+ 1)) |phi_+/->.
inline Vec2 analytic_floquet_state(const EigenFrame& f, const Vec2& phi, double omega, double t, int label) {
  const cplx a = label > 0 ? cplx(1) : std::exp(-I * (omega * t));
  const cplx b = label > 0 ? std::exp(I * (omega * t)) : cplx(1);
  return f.Lambda * Vec2(a * phi(0), b * phi(1));
}

inline Vec2 analytic_floquet_state(const RwaPoint& p, double omega, double t, int label) {
  return analytic_floquet_state(p.frame, p.rot.states.col(label > 0 ? 0 : 1), omega, t, label);
}

// Rabi: R_1(t) exp(-i omega/2 (sigma_z +/- 1) t) |phi_+/->.
inline Vec2 rabi_analytic_floquet_state(const RabiSpec& s, const RwaPoint& p, double t, int label) {
  const Vec2 phi = p.rot.states.col(label > 0 ? 0 : 1);
  const cplx a = label > 0 ? std::exp(-I * (s.omega * t)) : cplx(1);
  const cplx b = label > 0 ? cplx(1) : std::exp(I * (s.omega * t));
  return rabi_interaction_frame(s, t) * Vec2(a * phi(0), b * phi(1));
}

// -------------------------------------------------------- critical frequencies

struct CriticalFrequency {
  double omega = 0;
  double kx = 0;
  double ky = 0;
  std::string mechanism;
  bool exact_closure = true;
};

struct CriticalFrequencySet {
  std::vector<CriticalFrequency> frequencies;
  std::string diagnostic;
};

// Largest root of omega = Delta J_0(2V/omega) in (0, Delta]. The pi-gap only
// closes exactly there if J_1(2V/omega) also vanishes.
inline CriticalFrequencySet critical_frequencies(const RabiSpec& s) {
  s.validate();
  CriticalFrequencySet out;
  auto g = [&](double w) { return w - s.Delta * bessel_j(0, std::min(100.0, 2 * s.V / w)); };
  const double lo = std::max(1e-3 * s.Delta, 2 * s.V / 100.0);
  const int n = 4096;
  double hi = s.Delta, ghi = g(hi);
  if (ghi == 0) {
    out.frequencies.push_back({hi, 0, 0, "rabi-resonance", false});
  } else {
    for (int j = 1; j <= n; ++j) {
      const double x = s.Delta * std::pow(lo / s.Delta, double(j) / n);
      const double gx = g(x);
      if (gx * ghi <= 0) {
        const double w = solve_scalar_root(g, x, hi);
        out.frequencies.push_back({w, 0, 0, "rabi-resonance", false});
        break;
      }
      hi = x;
      ghi = gx;
    }
  }
  if (out.frequencies.empty()) {
    out.diagnostic = "no root of omega = Delta J0(2V/omega) in (0, Delta]";
    return out;
  }
  auto& f = out.frequencies.front();
  f.exact_closure = std::abs(bessel_j(1, 2 * s.V / f.omega)) < 1e-9;
  if (!f.exact_closure) out.diagnostic = "resonance splits the pi-gap by |Delta_1|; no exact closure";
  return out;
}

inline CriticalFrequencySet critical_frequencies(const SSHSpec& s) {
  s.validate();
  CriticalFrequencySet out;
  out.frequencies.push_back({2 * (s.J + s.Jp), 0, 0, "ssh-k0"});
  const double w2 = 2 * std::abs(s.J - s.Jp);
  if (w2 > 0) out.frequencies.push_back({w2, pi, 0, "ssh-kpi"});
  else out.diagnostic = "J = J': no pi-gap closure at k = pi";
  return out;
}

inline CriticalFrequencySet critical_frequencies(const PiFluxSpec& s) {
  s.validate();
  CriticalFrequencySet out;
  const double w = 4 * std::hypot(s.hop_x(0), s.hop_y(0));
  out.frequencies.push_back({w, 0, pi / 2, "piflux-resonance"});
  out.frequencies.push_back({w, 0, -pi / 2, "piflux-resonance"});
  return out;
}

// ---------------------------------------------------------- degeneracy points

struct KPoint {
  double kx = 0;
  double ky = 0;
  double gamma_abs = 0;
};

namespace detail {

template <class F>
double golden_min(F&& f, double a, double b, int iters = 80) {
  const double r = 0.5 * (std::sqrt(5.0) - 1);
  double c = b - r * (b - a), d = a + r * (b - a);
  double fc = f(c), fd = f(d);
  for (int i = 0; i < iters; ++i) {
    if (fc < fd) { b = d; d = c; fd = fc; c = b - r * (b - a); fc = f(c); }
    else { a = c; c = d; fc = fd; d = a + r * (b - a); fd = f(d); }
  }
  return fc < fd ? c : d;
}

}  // namespace detail

// Exact-closure momenta: zeros of |Gamma(k)|^2.
inline std::vector<KPoint> degeneracy_points(const SSHSpec& s, int n = 1024) {
  auto g2 = [&](double k) {
    try {
      return std::norm(ssh_rwa(s, k).rot.Gamma);
    } catch (const degeneracy_error&) {
      return HUGE_VAL;
    }
  };
  std::vector<double> ks(n + 1), v(n + 1);
  for (int i = 0; i <= n; ++i) { ks[i] = -pi + 2 * pi * i / n; v[i] = g2(ks[i]); }
  std::vector<KPoint> out;
  for (int i = 0; i <= n; ++i) {
    const double left = i > 0 ? v[i - 1] : HUGE_VAL, right = i < n ? v[i + 1] : HUGE_VAL;
    if (!(v[i] < 1e-6 && v[i] <= left && v[i] <= right)) continue;
    double k = ks[i];
    if (v[i] > 0) {
      const double a = i > 0 ? ks[i - 1] : ks[i], b = i < n ? ks[i + 1] : ks[i];
      const double kr = detail::golden_min(g2, a, b);
      if (g2(kr) < v[i]) k = kr;
    }
    const double gk = std::sqrt(g2(k));
    if (gk >= 1e-9) continue;
    bool dup = false;
    for (const auto& p : out) dup = dup || std::abs(p.kx - k) < 1e-6;
    if (!dup) out.push_back({k, 0, gk});
  }
  return out;
}

// Pi-flux scan over kx in [-pi, pi), ky in [-pi/2, pi/2); boundary images
// are mapped back with (kx, ky) ~ (kx + pi, ky + pi).
inline std::vector<KPoint> degeneracy_points(const PiFluxSpec& s, int n = 1024) {
  s.validate();
  const PiFluxHarmonics h(s);
  auto g2 = [&](double kx, double ky) {
    try {
      return std::norm(piflux_rwa(h, kx, ky).rot.Gamma);
    } catch (const degeneracy_error&) {
      return HUGE_VAL;
    }
  };
  const int nx = n, ny = n;
  std::vector<double> v(static_cast<std::size_t>(nx) * ny);
  auto kx_of = [&](int i) { return -pi + 2 * pi * i / nx; };
  auto ky_of = [&](int j) { return -pi / 2 + pi * j / ny; };
  for (int i = 0; i < nx; ++i)
    for (int j = 0; j < ny; ++j) v[std::size_t(i) * ny + j] = g2(kx_of(i), ky_of(j));
  std::vector<KPoint> out;
  for (int i = 0; i < nx; ++i) {
    for (int j = 0; j < ny; ++j) {
      const double c = v[std::size_t(i) * ny + j];
      if (!(c < 1e-6)) continue;
      bool is_min = true;
      for (int di = -1; di <= 1 && is_min; ++di)
        for (int dj = -1; dj <= 1; ++dj) {
          const int ii = (i + di + nx) % nx, jj = j + dj;
          if ((di || dj) && jj >= 0 && jj < ny && v[std::size_t(ii) * ny + jj] < c) { is_min = false; break; }
        }
      if (!is_min) continue;
      double kx = kx_of(i), ky = ky_of(j);
      if (c > 0) {
        const double dx = 2 * pi / nx, dy = pi / ny;
        for (int round = 0; round < 6; ++round) {
          kx = detail::golden_min([&](double x) { return g2(x, ky); }, kx - dx, kx + dx);
          ky = detail::golden_min([&](double y) { return g2(kx, y); }, ky - dy, ky + dy);
        }
      }
      const double gk = std::sqrt(g2(kx, ky));
      if (gk >= 1e-9) continue;
      kx = std::remainder(kx, 2 * pi);
      if (std::abs(kx) > pi / 2 + 1e-9) {
        kx = std::remainder(kx + pi, 2 * pi);
        ky = std::remainder(ky + pi, 2 * pi);
        if (ky > pi / 2 + 1e-9) ky -= 2 * pi;
        if (ky < -pi / 2 - 1e-9) ky += 2 * pi;
      }
      bool dup = false;
      for (const auto& p : out) dup = dup || (std::hypot(p.kx - kx, p.ky - ky) < 1e-6);
      if (!dup) out.push_back({kx, ky, gk});
    }
  }
  return out;
}

}  // namespace ft
