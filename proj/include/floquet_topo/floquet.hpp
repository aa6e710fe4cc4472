#pragma once

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <vector>

#include "errors.hpp"
#include "models.hpp"
#include "numerics.hpp"

namespace ft {

inline constexpr int default_steps = 4096;

template <class M>
struct Propagator {
  M U;
  double period = 0;
  int steps = 0;
};

// Fold into [-w/2, w/2).
inline double fold(double x, double w) {
  double r = x - w * std::floor((x + 0.5 * w) / w);
  if (r >= 0.5 * w) r -= w;
  if (r < -0.5 * w) r += w;
  return r;
}

namespace detail {

// U <- exp(-i H dt) U with H tridiagonal. H is a diagonal-phase rotation of
// a real symmetric tridiagonal matrix, so only a real eigensolve is needed.
struct TridiagonalStepper {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;
  Eigen::VectorXd sub, c, s;
  Eigen::VectorXcd g;
  Eigen::MatrixXd xr, xi, yr, yi;

  void step(const Eigen::VectorXd& d, const Eigen::VectorXcd& off, double dt, CMat& U) {
    const Eigen::Index n = d.size();
    sub.resize(n - 1);
    g.resize(n);
    g(0) = 1;
    for (Eigen::Index i = 0; i + 1 < n; ++i) {
      const double a = std::abs(off(i));
      sub(i) = a;
      g(i + 1) = a > 0 ? g(i) * std::conj(off(i)) / a : g(i);
    }
    es.computeFromTridiagonal(d, sub, Eigen::ComputeEigenvectors);
    const auto& V = es.eigenvectors();
    const auto& E = es.eigenvalues();
    c = (E * dt).array().cos();
    s = (E * dt).array().sin();
    // X = G^dagger U
    xr.resize(n, U.cols());
    xi.resize(n, U.cols());
    for (Eigen::Index i = 0; i < n; ++i) {
      const cplx gi = std::conj(g(i));
      for (Eigen::Index j = 0; j < U.cols(); ++j) {
        const cplx v = gi * U(i, j);
        xr(i, j) = v.real();
        xi(i, j) = v.imag();
      }
    }
    yr.noalias() = V.transpose() * xr;
    yi.noalias() = V.transpose() * xi;
    for (Eigen::Index i = 0; i < n; ++i) {
      for (Eigen::Index j = 0; j < U.cols(); ++j) {
        const double r = yr(i, j), m = yi(i, j);
        yr(i, j) = c(i) * r + s(i) * m;
        yi(i, j) = c(i) * m - s(i) * r;
      }
    }
    xr.noalias() = V * yr;
    xi.noalias() = V * yi;
    for (Eigen::Index i = 0; i < n; ++i)
      for (Eigen::Index j = 0; j < U.cols(); ++j) U(i, j) = g(i) * cplx(xr(i, j), xi(i, j));
  }
};

}  // namespace detail

// Midpoint product over [t0, t1], latest step on the left.
template <class M>
M propagate(const TimeDependent<M>& H, double t0, double t1, int steps) {
  if (steps < 1) throw domain_error("propagate: steps must be positive");
  const double dt = (t1 - t0) / steps;
  M U = M::Identity(H.dim, H.dim);
  if constexpr (M::RowsAtCompileTime == 2) {
    for (int j = 0; j < steps; ++j) {
      const Mat2 h = H.evaluate(t0 + (j + 0.5) * dt);
      require_hermitian(h, "propagate");
      U = expm2_unchecked(h, dt) * U;
    }
  } else {
    if (H.tridiagonal && H.dim > 2) {
      detail::TridiagonalStepper st;
      Eigen::VectorXd d(H.dim);
      Eigen::VectorXcd off(H.dim - 1);
      for (int j = 0; j < steps; ++j) {
        H.tridiagonal(t0 + (j + 0.5) * dt, d, off);
        st.step(d, off, dt, U);
      }
    } else {
      for (int j = 0; j < steps; ++j) U = expm_hermitian(M(H.evaluate(t0 + (j + 0.5) * dt)), dt) * U;
    }
  }
  return U;
}

template <class M>
Propagator<M> one_period_propagator(const TimeDependent<M>& H, int steps = default_steps, double t0 = 0) {
  if (steps < 256) throw domain_error("one_period_propagator: steps must be >= 256");
  return {propagate(H, t0, t0 + H.period, steps), H.period, steps};
}

template <int N>
struct QuasienergySpectrum {
  Eigen::VectorXd eps;  // ascending, in [-w/2, w/2)
  MatN<N> modes;        // Floquet modes at t0, columns match eps
  double omega = 0;
  int sideband = 0;     // zeroth sideband by construction
};

template <class M>
QuasienergySpectrum<M::RowsAtCompileTime> quasienergies(const Propagator<M>& p, double omega) {
  constexpr int N = M::RowsAtCompileTime;
  auto e = eig_unitary<N>(p.U);
  const Eigen::Index n = p.U.rows();
  std::vector<double> eps(n);
  for (Eigen::Index i = 0; i < n; ++i) eps[i] = fold(-e.values(i) / p.period, omega);
  std::vector<Eigen::Index> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](auto a, auto b) { return eps[a] < eps[b]; });
  QuasienergySpectrum<N> out;
  out.omega = omega;
  out.eps.resize(n);
  out.modes.resize(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    out.eps(i) = eps[order[i]];
    out.modes.col(i) = e.vectors.col(order[i]);
  }
  return out;
}

// Floquet modes |Phi_a(0)> paired with eps_a.
template <class M>
QuasienergySpectrum<M::RowsAtCompileTime> floquet_states(const Propagator<M>& p, double omega) {
  return quasienergies(p, omega);
}

// |Phi_a(t)> = exp(i eps_a t) U(t, 0) |Phi_a(0)>
template <class M, int N>
Eigen::Matrix<cplx, N, 1> micromotion(const TimeDependent<M>& H, const QuasienergySpectrum<N>& spec,
                                      int a, double t, int steps) {
  const M U = propagate(H, 0.0, t, std::max(1, steps));
  return std::exp(I * (spec.eps(a) * t)) * (U * spec.modes.col(a));
}

// Width of the empty arc of the quasienergy circle that contains `center`.
inline double gap_width(const Eigen::VectorXd& eps, double omega, double center) {
  double up = omega, dn = omega;
  for (Eigen::Index i = 0; i < eps.size(); ++i) {
    double a = std::fmod(eps(i) - center, omega);
    if (a < 0) a += omega;
    double b = std::fmod(center - eps(i), omega);
    if (b < 0) b += omega;
    up = std::min(up, a);
    dn = std::min(dn, b);
  }
  return std::min(omega, up + dn);
}

inline double zero_gap(const Eigen::VectorXd& eps, double omega) { return gap_width(eps, omega, 0.0); }
inline double pi_gap(const Eigen::VectorXd& eps, double omega) { return gap_width(eps, omega, 0.5 * omega); }

// Signed offset of eps from the gap center, on the circle, in [-w/2, w/2).
inline double gap_offset(double eps, double omega, double center) { return fold(eps - center, omega); }

// Greedy overlap matching. Returns, per k, the column that carries each
// band label of the first k.
template <class M>
std::vector<std::vector<int>> label_bands(const std::vector<M>& modes) {
  std::vector<std::vector<int>> out;
  if (modes.empty()) return out;
  const int n = static_cast<int>(modes[0].cols());
  std::vector<int> first(n);
  std::iota(first.begin(), first.end(), 0);
  out.push_back(first);
  for (std::size_t k = 1; k < modes.size(); ++k) {
    const auto& prev = out.back();
    Eigen::MatrixXd O(n, n);
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b) O(a, b) = std::norm(modes[k - 1].col(prev[a]).dot(modes[k].col(b)));
    std::vector<int> cur(n, -1);
    std::vector<bool> used_a(n, false), used_b(n, false);
    for (int it = 0; it < n; ++it) {
      double best = -1;
      int ba = -1, bb = -1;
      for (int a = 0; a < n; ++a) {
        if (used_a[a]) continue;
        for (int b = 0; b < n; ++b)
          if (!used_b[b] && O(a, b) > best) { best = O(a, b); ba = a; bb = b; }
      }
      used_a[ba] = used_b[bb] = true;
      cur[ba] = bb;
    }
    out.push_back(cur);
  }
  return out;
}

}  // namespace ft
