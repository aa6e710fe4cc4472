#pragma once

#include <cmath>
#include <functional>
#include <string>

#include "errors.hpp"
#include "numerics.hpp"

namespace ft {

// H(t) with period T. The optional tridiagonal view (real diagonal, complex
// superdiagonal H(i, i+1)) lets the propagator skip dense eigensolves.
template <class M>
struct TimeDependent {
  int dim = 0;
  double period = 0;
  std::function<M(double)> evaluate;
  std::function<void(double, Eigen::VectorXd&, Eigen::VectorXcd&)> tridiagonal;
};

using TimeDependentHamiltonian = TimeDependent<CMat>;
using BlochHamiltonian = TimeDependent<Mat2>;

inline CMat tridiagonal_to_dense(const Eigen::VectorXd& d, const Eigen::VectorXcd& off) {
  const Eigen::Index n = d.size();
  CMat H = CMat::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) H(i, i) = d(i);
  for (Eigen::Index i = 0; i + 1 < n; ++i) {
    H(i, i + 1) = off(i);
    H(i + 1, i) = std::conj(off(i));
  }
  return H;
}

inline TimeDependentHamiltonian make_tridiagonal(
    int dim, double period, std::function<void(double, Eigen::VectorXd&, Eigen::VectorXcd&)> fill) {
  TimeDependentHamiltonian h;
  h.dim = dim;
  h.period = period;
  h.tridiagonal = fill;
  h.evaluate = [fill, dim](double t) {
    Eigen::VectorXd d(dim);
    Eigen::VectorXcd off(dim - 1);
    fill(t, d, off);
    return tridiagonal_to_dense(d, off);
  };
  return h;
}

// ------------------------------------------------------------------- Rabi

struct RabiSpec {
  double Delta = 1.0;
  double V = 0.1;
  double omega = 1.0;
  double phi = 0.0;

  void validate() const {
    if (!(Delta > 0)) throw domain_error("rabi: Delta must be > 0");
    if (!(omega > 0)) throw domain_error("rabi: omega must be > 0");
    if (!(V >= 0)) throw domain_error("rabi: V must be >= 0");
  }
  double period() const { return 2 * pi / omega; }
  // Delta_n = Delta J_n(2V/omega)
  double delta_n(int n) const { return Delta * bessel_j(n, 2 * V / omega); }
};

inline BlochHamiltonian rabi_hamiltonian(const RabiSpec& s) {
  s.validate();
  BlochHamiltonian h;
  h.dim = 2;
  h.period = s.period();
  h.evaluate = [s](double t) -> Mat2 {
    return 0.5 * s.Delta * pauli::z() + s.V * std::cos(s.omega * t + s.phi) * pauli::x();
  };
  return h;
}

// Interaction picture keeping J_0 and J_1 only.
inline BlochHamiltonian rabi_truncated_interaction(const RabiSpec& s, Warnings* w = nullptr) {
  s.validate();
  const double d0 = s.delta_n(0), d1 = s.delta_n(1);
  for (int n = 2; n <= 8; ++n) {
    if (std::abs(s.delta_n(n)) >= std::abs(d1)) {
      warn(w, "rabi: |Delta_" + std::to_string(n) + "| >= |Delta_1|, truncation unreliable");
      break;
    }
  }
  BlochHamiltonian h;
  h.dim = 2;
  h.period = s.period();
  h.evaluate = [s, d0, d1](double t) -> Mat2 {
    return 0.5 * d0 * pauli::z() + d1 * std::sin(s.omega * t + s.phi) * pauli::y();
  };
  return h;
}

// Coefficient of exp(-i omega t) in the truncated interaction Hamiltonian.
inline Mat2 rabi_lower_harmonic(const RabiSpec& s) {
  return (0.5 * I * s.delta_n(1) * std::exp(-I * s.phi)) * pauli::y();
}

// R_1(t) = exp(-i F(t)/2 sigma_x), F = 2V sin(omega t + phi)/omega
inline Mat2 rabi_interaction_frame(const RabiSpec& s, double t) {
  const double half = s.V * std::sin(s.omega * t + s.phi) / s.omega;
  return std::cos(half) * pauli::id() - I * std::sin(half) * pauli::x();
}

// -------------------------------------------------------------------- SSH

struct SSHSpec {
  double J = 1.0;
  double Jp = 1.5;
  double V = 0.2;
  double omega = 5.0;
  int N_cells = 20;

  void validate(Warnings* w = nullptr) const {
    if (!(J > 0)) throw domain_error("ssh: J must be > 0");
    if (!(Jp >= 0)) throw domain_error("ssh: J' must be >= 0");
    if (!(V >= 0)) throw domain_error("ssh: V must be >= 0");
    if (!(omega > 0)) throw domain_error("ssh: omega must be > 0");
    if (V >= omega) warn(w, "ssh: V >= omega, outside the weak-modulation regime");
  }
  double period() const { return 2 * pi / omega; }
  double drive(double t) const { return 2 * V * std::cos(omega * t); }
};

inline Mat2 ssh_bond_operator(double k) {
  return std::cos(k) * pauli::x() + std::sin(k) * pauli::y();
}

inline Mat2 ssh_static(const SSHSpec& s, double k) {
  return s.J * pauli::x() + s.Jp * ssh_bond_operator(k);
}

inline double ssh_band_energy(const SSHSpec& s, double k) {
  return std::sqrt(s.J * s.J + s.Jp * s.Jp + 2 * s.J * s.Jp * std::cos(k));
}

inline BlochHamiltonian ssh_bloch(const SSHSpec& s, double k) {
  s.validate();
  BlochHamiltonian h;
  h.dim = 2;
  h.period = s.period();
  const Mat2 bond = ssh_bond_operator(k);
  h.evaluate = [s, bond](double t) -> Mat2 {
    const double v = s.drive(t);
    return (s.J + v) * pauli::x() + (s.Jp - v) * bond;
  };
  return h;
}

// Fourier coefficient of exp(i n omega t).
inline Mat2 ssh_harmonic(const SSHSpec& s, double k, int n) {
  if (n == 0) return ssh_static(s, k);
  if (std::abs(n) != 1) return Mat2::Zero();
  return s.V * ((1 - std::cos(k)) * pauli::x() - std::sin(k) * pauli::y());
}

// Sites a_0 b_0 a_1 b_1 ...; the chain starts on an a-site.
inline TimeDependentHamiltonian ssh_open_chain(const SSHSpec& s, Warnings* w = nullptr) {
  s.validate(w);
  if (s.N_cells < 2) throw domain_error("ssh: N_cells must be >= 2");
  const int dim = 2 * s.N_cells;
  return make_tridiagonal(dim, s.period(), [s, dim](double t, Eigen::VectorXd& d, Eigen::VectorXcd& off) {
    const double v = s.drive(t);
    d.setZero(dim);
    off.resize(dim - 1);
    for (int i = 0; i + 1 < dim; ++i) off(i) = i % 2 == 0 ? s.J + v : s.Jp - v;
  });
}

// ---------------------------------------------------------------- pi-flux

struct PiFluxSpec {
  double J = 1.0;
  double Ax = 0.5;
  double Ay = 0.5;
  double omega = 6.0;
  double phi = pi / 2;
  int N_y = 40;

  void validate() const {
    if (!(J > 0)) throw domain_error("piflux: J must be > 0");
    if (!(Ax >= 0) || !(Ay >= 0)) throw domain_error("piflux: amplitudes must be >= 0");
    if (!(omega > 0)) throw domain_error("piflux: omega must be > 0");
  }
  double period() const { return 2 * pi / omega; }
  // J_{u,n} = J J_n(A_u)
  double hop_x(int n) const { return J * bessel_j(n, Ax); }
  double hop_y(int n) const { return J * bessel_j(n, Ay); }
  double ax(double t) const { return Ax * std::sin(omega * t); }
  double ay(double t) const { return Ay * std::sin(omega * t + phi); }
};

inline BlochHamiltonian piflux_bloch(const PiFluxSpec& s, double kx, double ky) {
  s.validate();
  BlochHamiltonian h;
  h.dim = 2;
  h.period = s.period();
  h.evaluate = [s, kx, ky](double t) -> Mat2 {
    return 2 * s.J * (std::cos(kx + s.ax(t)) * pauli::x() + std::sin(ky + s.ay(t)) * pauli::y());
  };
  return h;
}

// Coefficient of exp(i n omega t), overall J included.
inline Mat2 piflux_fourier_component(const PiFluxSpec& s, int n, double kx, double ky) {
  if (std::abs(n) > 16) throw domain_error("piflux_fourier_component: |n| > 16");
  const cplx ex = std::exp(I * kx), ey = std::exp(I * ky);
  const cplx cx = s.J * (ex * bessel_j(n, s.Ax) + std::conj(ex) * bessel_j(-n, s.Ax));
  const cplx cy = -I * s.J * std::exp(I * (n * s.phi)) *
                  (ey * bessel_j(n, s.Ay) - std::conj(ey) * bessel_j(-n, s.Ay));
  return cx * pauli::x() + cy * pauli::y();
}

enum class MassConvention { commutator, printed };

// First-order high-frequency mass. The commutator [H^(1), H^(-1)]/omega
// fixes the sign; `printed` flips it and exists only for comparison.
inline double piflux_mass(const PiFluxSpec& s, double kx, double ky,
                          MassConvention c = MassConvention::commutator) {
  const double m = 16 * s.hop_x(1) * s.hop_y(1) / s.omega * std::sin(kx) * std::cos(ky) * std::sin(s.phi);
  return c == MassConvention::commutator ? -m : m;
}

// Size of the n = 2 Magnus terms relative to n = 1.
inline double piflux_second_harmonic_ratio(const PiFluxSpec& s) {
  auto r = [](double a) {
    const double j1 = bessel_j(1, a), j2 = bessel_j(2, a);
    if (j1 == 0) return j2 == 0 ? 0.0 : HUGE_VAL;
    return (j2 / j1) * (j2 / j1);
  };
  return std::max(r(s.Ax), r(s.Ay));
}

inline Mat2 piflux_stroboscopic(const PiFluxSpec& s, double kx, double ky, Warnings* w = nullptr,
                                MassConvention c = MassConvention::commutator) {
  s.validate();
  if (w && piflux_second_harmonic_ratio(s) > 0.05)
    warn(w, "piflux: second-harmonic terms exceed 5% of the first");
  return piflux_fourier_component(s, 0, kx, ky) + piflux_mass(s, kx, ky, c) * pauli::z();
}

// Upper band of the stroboscopic Hamiltonian.
inline double piflux_stroboscopic_energy(const PiFluxSpec& s, double kx, double ky) {
  const double a = 2 * s.hop_x(0) * std::cos(kx), b = 2 * s.hop_y(0) * std::sin(ky);
  const double h = piflux_mass(s, kx, ky);
  return std::sqrt(a * a + b * b + h * h);
}

// Bessel-renormalised hoppings cached for grid sweeps; |n| <= 1 only.
struct PiFluxHarmonics {
  double jx0, jy0, jx1, jy1, omega, phi;
  MassConvention convention = MassConvention::commutator;

  explicit PiFluxHarmonics(const PiFluxSpec& s, MassConvention c = MassConvention::commutator)
      : jx0(s.hop_x(0)), jy0(s.hop_y(0)), jx1(s.hop_x(1)), jy1(s.hop_y(1)), omega(s.omega), phi(s.phi),
        convention(c) {}

  Mat2 average(double kx, double ky) const {
    return 2 * jx0 * std::cos(kx) * pauli::x() + 2 * jy0 * std::sin(ky) * pauli::y();
  }
  double mass(double kx, double ky) const {
    const double m = 16 * jx1 * jy1 / omega * std::sin(kx) * std::cos(ky) * std::sin(phi);
    return convention == MassConvention::commutator ? -m : m;
  }
  Mat2 stroboscopic(double kx, double ky) const { return average(kx, ky) + mass(kx, ky) * pauli::z(); }
  // coefficient of exp(-i omega t)
  Mat2 lower(double kx, double ky) const {
    return (-2.0 * I * jx1 * std::sin(kx)) * pauli::x() +
           (2.0 * I * jy1 * std::exp(-I * phi) * std::cos(ky)) * pauli::y();
  }
};

enum class RibbonBoundary { y_open, x_open, diagonal };

// Square pi-flux lattice cut into a strip of width 2 N_y.
//   y_open:   edges along x, Bloch k along x, vertical bonds (+J, -J)
//   x_open:   edges along y, Bloch k along y
//   diagonal: edges along (1,-1); each edge holds one sublattice
inline TimeDependentHamiltonian piflux_ribbon(const PiFluxSpec& s, double k,
                                              RibbonBoundary b = RibbonBoundary::y_open) {
  s.validate();
  if (s.N_y < 4) throw domain_error("piflux_ribbon: N_y must be >= 4");
  const int dim = 2 * s.N_y;
  return make_tridiagonal(dim, s.period(), [s, k, b, dim](double t, Eigen::VectorXd& d, Eigen::VectorXcd& off) {
    d.resize(dim);
    off.resize(dim - 1);
    const double ax = s.ax(t), ay = s.ay(t);
    for (int i = 0; i < dim; ++i) {
      const double sg = i % 2 == 0 ? 1.0 : -1.0;
      switch (b) {
        case RibbonBoundary::y_open:
          d(i) = 2 * s.J * sg * std::cos(k + ax);
          if (i + 1 < dim) off(i) = sg * s.J * std::exp(I * ay);
          break;
        case RibbonBoundary::x_open:
          d(i) = 2 * s.J * sg * std::cos(k + ay);
          if (i + 1 < dim) off(i) = s.J * std::exp(I * ax);
          break;
        case RibbonBoundary::diagonal:
          d(i) = 0;
          if (i + 1 < dim) off(i) = s.J * (std::exp(I * (k + ax)) + sg * std::exp(I * ay));
          break;
      }
    }
  });
}

}  // namespace ft
