#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <numbers>
#include <numeric>
#include <string>

#include "errors.hpp"

namespace ft {

using cplx = std::complex<double>;
using CMat = Eigen::MatrixXcd;
using CVec = Eigen::VectorXcd;
using Mat2 = Eigen::Matrix2cd;
using Vec2 = Eigen::Vector2cd;

inline constexpr double pi = std::numbers::pi;
inline constexpr cplx I{0.0, 1.0};

namespace pauli {
inline Mat2 id() { return Mat2::Identity(); }
inline Mat2 x() { Mat2 m; m << 0, 1, 1, 0; return m; }
inline Mat2 y() { Mat2 m; m << 0, -I, I, 0; return m; }
inline Mat2 z() { Mat2 m; m << 1, 0, 0, -1; return m; }
inline Mat2 plus() { Mat2 m; m << 0, 1, 0, 0; return m; }
inline Mat2 minus() { Mat2 m; m << 0, 0, 1, 0; return m; }
}  // namespace pauli

// ---------------------------------------------------------------- Bessel J_n

namespace detail {

inline long double bessel_series(int n, long double x) {
  const long double h = x / 2;
  long double term = 1;
  for (int k = 1; k <= n; ++k) term *= h / k;
  long double sum = term;
  const long double h2 = -h * h;
  for (int k = 1; k < 1000; ++k) {
    term *= h2 / (static_cast<long double>(k) * (k + n));
    sum += term;
    if (k * (k + n) > -h2 && std::fabs(term) <= 1e-22L * std::fabs(sum)) break;
  }
  return sum;
}

// Miller's downward recurrence, normalised by J_0 + 2 sum J_2k = 1.
inline long double bessel_miller(int n, long double x) {
  const double top = std::max<double>(n, static_cast<double>(x));
  int m = static_cast<int>(top + 30 + std::sqrt(160.0 * top));
  m += m % 2;
  long double jp = 0, j = 1e-300L, norm = 0, result = 0;
  for (int k = m; k > 0; --k) {
    const long double jm = (2.0L * k / x) * j - jp;
    jp = j;
    j = jm;
    if (std::fabs(j) > 1e250L) {
      j *= 1e-250L; jp *= 1e-250L; norm *= 1e-250L; result *= 1e-250L;
    }
    if (k - 1 == n) result = j;
    if ((k - 1) % 2 == 0 && k - 1 > 0) norm += 2 * j;
  }
  norm += j;
  return result / norm;
}

}  // namespace detail

inline double bessel_j(int n, double x) {
  if (std::abs(n) > 64) throw domain_error("bessel_j: |n| > 64");
  if (!std::isfinite(x) || std::abs(x) > 100) throw domain_error("bessel_j: x out of range");
  int sign = 1;
  if (n < 0) { n = -n; if (n % 2) sign = -sign; }
  if (x < 0) { x = -x; if (n % 2) sign = -sign; }
  if (x == 0) return n == 0 ? 1.0 : 0.0;
  const long double v = x <= 12 ? detail::bessel_series(n, x) : detail::bessel_miller(n, x);
  return sign * static_cast<double>(v);
}

// ------------------------------------------------------------ eigensolvers

template <int N>
using MatN = Eigen::Matrix<cplx, N, N>;

template <int N>
struct EigenDecomposition {
  Eigen::Matrix<double, N, 1> values;
  MatN<N> vectors;
};

// First component with modulus > 1e-8 made real positive.
template <class Derived>
void fix_gauge(Eigen::MatrixBase<Derived>& v) {
  for (Eigen::Index c = 0; c < v.cols(); ++c) {
    for (Eigen::Index r = 0; r < v.rows(); ++r) {
      const double a = std::abs(v(r, c));
      if (a > 1e-8) {
        v.col(c) *= std::conj(v(r, c)) / a;
        v(r, c) = a;
        break;
      }
    }
  }
}

template <class M>
double hermiticity_defect(const M& H) {
  return (H - H.adjoint()).cwiseAbs().maxCoeff();
}

template <class M>
void require_hermitian(const M& H, const char* who) {
  const double scale = std::max(1.0, H.cwiseAbs().maxCoeff());
  if (hermiticity_defect(H) > 1e-12 * scale)
    throw contract_error(std::string(who) + ": matrix not Hermitian");
}

namespace detail {

// Closed form for [[p, q], [q*, r]].
inline EigenDecomposition<2> eig2(const Mat2& H) {
  const double p = H(0, 0).real(), r = H(1, 1).real();
  const cplx q = 0.5 * (H(0, 1) + std::conj(H(1, 0)));
  const double a = 0.5 * (p + r), dz = 0.5 * (p - r);
  const double d = std::hypot(dz, std::abs(q));
  EigenDecomposition<2> out;
  out.values << a - d, a + d;
  if (d <= 1e-300) {
    out.vectors.setIdentity();
    return out;
  }
  Vec2 up;
  if (dz >= 0) up << d + dz, std::conj(q);
  else up << q, d - dz;
  up.normalize();
  out.vectors.col(1) = up;
  out.vectors(0, 0) = -std::conj(up(1));
  out.vectors(1, 0) = std::conj(up(0));
  fix_gauge(out.vectors);
  return out;
}

}  // namespace detail

template <int N>
EigenDecomposition<N> eig_hermitian(const MatN<N>& H) {
  require_hermitian(H, "eig_hermitian");
  if constexpr (N == 2) {
    return detail::eig2(H);
  } else {
    EigenDecomposition<N> out;
    if (H.rows() == 2) {
      auto e = detail::eig2(H);
      out.values = e.values;
      out.vectors = e.vectors;
      return out;
    }
    Eigen::SelfAdjointEigenSolver<MatN<N>> es(H);
    out.values = es.eigenvalues();
    out.vectors = es.eigenvectors();
    fix_gauge(out.vectors);
    return out;
  }
}

inline EigenDecomposition<2> eig_hermitian(const Mat2& H) { return eig_hermitian<2>(H); }
inline EigenDecomposition<Eigen::Dynamic> eig_hermitian(const CMat& H) {
  return eig_hermitian<Eigen::Dynamic>(H);
}

template <class M>
double unitarity_defect(const M& U) {
  return (U.adjoint() * U - M::Identity(U.rows(), U.cols())).cwiseAbs().maxCoeff();
}

// Phases in (-pi, pi], ascending. Simultaneous diagonalisation of the
// commuting Hermitian parts of U.
template <int N>
EigenDecomposition<N> eig_unitary(const MatN<N>& U) {
  if (unitarity_defect(U) > 1e-9) throw contract_error("eig_unitary: matrix not unitary");
  const Eigen::Index n = U.rows();
  MatN<N> A = 0.5 * (U + U.adjoint());
  MatN<N> B = (U - U.adjoint()) / (2.0 * I);
  A = 0.5 * (A + A.adjoint()).eval();
  B = 0.5 * (B + B.adjoint()).eval();
  auto ea = eig_hermitian<N>(A);
  MatN<N> V = ea.vectors;
  for (Eigen::Index s = 0; s < n;) {
    Eigen::Index e = s + 1;
    while (e < n && ea.values(e) - ea.values(e - 1) < 1e-6) ++e;
    if (e - s > 1) {
      Eigen::MatrixXcd Vg = V.middleCols(s, e - s);
      Eigen::MatrixXcd Bs = Vg.adjoint() * B * Vg;
      Bs = 0.5 * (Bs + Bs.adjoint()).eval();
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(Bs);
      V.middleCols(s, e - s) = Vg * es.eigenvectors();
    }
    s = e;
  }
  std::vector<double> theta(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const cplx z = V.col(i).dot(U * V.col(i));
    double t = std::atan2(z.imag(), z.real());
    if (t <= -pi) t = pi;
    theta[i] = t;
  }
  std::vector<Eigen::Index> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](Eigen::Index a, Eigen::Index b) { return theta[a] < theta[b]; });
  EigenDecomposition<N> out;
  out.values.resize(n);
  out.vectors.resize(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    out.values(i) = theta[order[i]];
    out.vectors.col(i) = V.col(order[i]);
  }
  fix_gauge(out.vectors);
  return out;
}

inline EigenDecomposition<2> eig_unitary(const Mat2& U) { return eig_unitary<2>(U); }
inline EigenDecomposition<Eigen::Dynamic> eig_unitary(const CMat& U) {
  return eig_unitary<Eigen::Dynamic>(U);
}

// -------------------------------------------------------------- exponentials

// exp(-i H tau) for 2x2 Hermitian H, no checks.
inline Mat2 expm2_unchecked(const Mat2& H, double tau) {
  const double a = 0.5 * (H(0, 0).real() + H(1, 1).real());
  const double dz = 0.5 * (H(0, 0).real() - H(1, 1).real());
  const cplx q = H(0, 1);
  const double d = std::hypot(dz, std::abs(q));
  const double c = std::cos(d * tau);
  const double s = d * tau == 0 ? tau : std::sin(d * tau) / d;
  const cplx ph = std::exp(-I * (a * tau));
  Mat2 out;
  out(0, 0) = ph * cplx(c, -s * dz);
  out(1, 1) = ph * cplx(c, s * dz);
  out(0, 1) = ph * (-I * s * q);
  out(1, 0) = ph * (-I * s * std::conj(q));
  return out;
}

template <int N>
MatN<N> expm_hermitian(const MatN<N>& H, double tau) {
  require_hermitian(H, "expm_hermitian");
  if constexpr (N == 2) {
    return expm2_unchecked(H, tau);
  } else {
    if (H.rows() == 2) return expm2_unchecked(Mat2(H), tau);
    auto e = eig_hermitian<N>(H);
    Eigen::Matrix<cplx, N, 1> ph(H.rows());
    for (Eigen::Index i = 0; i < H.rows(); ++i) ph(i) = std::exp(-I * (e.values(i) * tau));
    return e.vectors * ph.asDiagonal() * e.vectors.adjoint();
  }
}

inline Mat2 expm_hermitian(const Mat2& H, double tau) { return expm_hermitian<2>(H, tau); }
inline CMat expm_hermitian(const CMat& H, double tau) {
  return expm_hermitian<Eigen::Dynamic>(H, tau);
}

// --------------------------------------------------------------- root finding

// Largest root of g in [a, b]; endpoints must differ in sign.
inline double solve_scalar_root(const std::function<double(double)>& g, double a, double b,
                                int scan = 1024) {
  if (!(a < b)) throw bracket_error("solve_scalar_root: empty bracket");
  const double gb = g(b);
  if (gb == 0) return b;
  const double ga = g(a);
  if (ga * gb > 0) throw bracket_error("solve_scalar_root: no sign change on bracket");
  double hi = b, ghi = gb, lo = a, glo = ga;
  for (int j = 1; j <= scan; ++j) {
    const double x = b - (b - a) * j / scan;
    const double gx = j == scan ? ga : g(x);
    if (gx == 0) return x;
    if (gx * ghi < 0) { lo = x; glo = gx; break; }
    hi = x;
    ghi = gx;
  }
  for (int it = 0; it < 200 && hi - lo > 4e-16 * std::max(1.0, std::abs(hi)); ++it) {
    const double mid = 0.5 * (lo + hi);
    const double gm = g(mid);
    if (gm == 0) return mid;
    if (gm * glo < 0) { hi = mid; ghi = gm; }
    else { lo = mid; glo = gm; }
  }
  // secant polish
  double x0 = lo, g0 = glo, x1 = hi, g1 = ghi;
  for (int it = 0; it < 8 && g1 != g0; ++it) {
    const double x2 = x1 - g1 * (x1 - x0) / (g1 - g0);
    if (!(x2 >= lo && x2 <= hi)) break;
    x0 = x1; g0 = g1;
    x1 = x2; g1 = g(x2);
    if (g1 == 0) break;
  }
  double root = std::abs(g1) <= std::abs(glo) && std::abs(g1) <= std::abs(ghi) ? x1
                : (std::abs(glo) < std::abs(ghi) ? lo : hi);
  if (std::abs(g(root)) > 1e-12) throw convergence_error("solve_scalar_root: residual above 1e-12");
  return root;
}

}  // namespace ft
