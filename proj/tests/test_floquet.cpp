#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "floquet_topo/floquet.hpp"

using namespace ft;

namespace {

// Classical RK4 on i dU/dt = H U, independent of the exponential integrator.
template <class M>
M rk4_oracle(const TimeDependent<M>& H, double t0, double t1, int steps) {
  const double h = (t1 - t0) / steps;
  M U = M::Identity(H.dim, H.dim);
  auto f = [&](double t, const M& X) -> M { return -I * (M(H.evaluate(t)) * X); };
  for (int j = 0; j < steps; ++j) {
    const double t = t0 + j * h;
    const M k1 = f(t, U), k2 = f(t + h / 2, U + h / 2 * k1), k3 = f(t + h / 2, U + h / 2 * k2),
            k4 = f(t + h, U + h * k3);
    U += h / 6 * (k1 + 2 * k2 + 2 * k3 + k4);
  }
  return U;
}

TimeDependentHamiltonian dense_only(const TimeDependentHamiltonian& H) {
  TimeDependentHamiltonian d = H;
  d.tridiagonal = nullptr;
  return d;
}

}  // namespace

TEST(Fold, RangeAndPeriodicity) {
  const double w = 2.5;
  for (double x = -20; x < 20; x += 0.173) {
    const double f = fold(x, w);
    EXPECT_GE(f, -w / 2);
    EXPECT_LT(f, w / 2);
    EXPECT_NEAR(std::remainder(f - x, w), 0, 1e-12);
  }
  EXPECT_EQ(fold(w / 2, w), -w / 2);
}

TEST(Propagator, StaticHamiltonianIsExact) {
  BlochHamiltonian H;
  H.dim = 2;
  H.period = 2 * pi / 3;
  const Mat2 h0 = 0.7 * pauli::z() + 0.2 * pauli::x();
  H.evaluate = [h0](double) { return h0; };
  const auto p = one_period_propagator(H, 256);
  EXPECT_LE((p.U - expm_hermitian(h0, H.period)).cwiseAbs().maxCoeff(), 1e-13);
  const auto q = quasienergies(p, 3.0);
  const double e = std::hypot(0.7, 0.2);
  EXPECT_NEAR(q.eps(0), -e, 1e-12);
  EXPECT_NEAR(q.eps(1), e, 1e-12);
}

TEST(Propagator, UndrivenRabiGivesHalfSplitting) {
  RabiSpec s;
  s.V = 0;
  s.omega = 1.7;
  const auto q = quasienergies(one_period_propagator(rabi_hamiltonian(s)), s.omega);
  EXPECT_NEAR(q.eps(0), -0.5, 1e-12);
  EXPECT_NEAR(q.eps(1), 0.5, 1e-12);
}

TEST(Propagator, AgreesWithRungeKuttaOracle) {
  RabiSpec s;
  s.V = 0.6;
  s.omega = 1.3;
  s.phi = 0.4;
  const auto H = rabi_hamiltonian(s);
  const Mat2 ref = rk4_oracle(H, 0, H.period, 20000);
  EXPECT_LE((one_period_propagator(H).U - ref).cwiseAbs().maxCoeff(), 1e-6);
  // second order: halving the step cuts the error by about four
  const double e1 = (one_period_propagator(H, 512).U - ref).cwiseAbs().maxCoeff();
  const double e2 = (one_period_propagator(H, 1024).U - ref).cwiseAbs().maxCoeff();
  EXPECT_NEAR(e1 / e2, 4.0, 0.3);
}

TEST(Propagator, TridiagonalPathMatchesDense) {
  SSHSpec s;
  s.N_cells = 5;
  s.V = 0.7;
  const auto H = ssh_open_chain(s);
  const CMat a = propagate(H, 0.1, 0.9, 300);
  const CMat b = propagate(dense_only(H), 0.1, 0.9, 300);
  EXPECT_LE((a - b).cwiseAbs().maxCoeff(), 1e-12);
  PiFluxSpec p;
  p.N_y = 5;
  for (auto bd : {RibbonBoundary::y_open, RibbonBoundary::x_open, RibbonBoundary::diagonal}) {
    const auto R = piflux_ribbon(p, 0.8, bd);
    const CMat c = propagate(R, 0, 0.5, 200);
    const CMat d = propagate(dense_only(R), 0, 0.5, 200);
    EXPECT_LE((c - d).cwiseAbs().maxCoeff(), 1e-12);
    EXPECT_LE((c.adjoint() * c - CMat::Identity(R.dim, R.dim)).cwiseAbs().maxCoeff(), 1e-12);
  }
}

TEST(Propagator, RejectsCoarseGridsAndNonHermitian) {
  RabiSpec s;
  EXPECT_THROW(one_period_propagator(rabi_hamiltonian(s), 255), domain_error);
  BlochHamiltonian bad;
  bad.dim = 2;
  bad.period = 1;
  bad.evaluate = [](double) { Mat2 m = Mat2::Zero(); m(0, 1) = 1; return m; };
  EXPECT_THROW(one_period_propagator(bad, 256), contract_error);
}

TEST(Quasienergies, IndependentOfStartTime) {
  PiFluxSpec s;
  s.Ax = 1.1;
  s.omega = 4;
  const auto H = piflux_bloch(s, 0.4, -0.3);
  const auto a = quasienergies(one_period_propagator(H, 2048, 0.0), s.omega);
  const auto b = quasienergies(one_period_propagator(H, 2048, 0.37), s.omega);
  for (int i = 0; i < 2; ++i) EXPECT_NEAR(a.eps(i), b.eps(i), 1e-6);
}

TEST(Quasienergies, ChiralPairsForSSH) {
  // cos drive is even in t and the Bloch Hamiltonian is off-diagonal,
  // so quasienergies come in +/- pairs
  SSHSpec s;
  s.V = 0.8;
  for (double k : {0.0, 0.9, 2.4}) {
    const auto q = quasienergies(one_period_propagator(ssh_bloch(s, k)), s.omega);
    const double a = q.eps(0), b = q.eps(1);
    EXPECT_LE(std::min(std::abs(a + b), std::abs(std::abs(a + b) - s.omega)), 1e-8) << k;
  }
}

TEST(FloquetStates, MicromotionIsPeriodic) {
  RabiSpec s;
  s.V = 0.5;
  s.omega = 1.5;
  const auto H = rabi_hamiltonian(s);
  const auto q = floquet_states(one_period_propagator(H), s.omega);
  for (int a = 0; a < 2; ++a) {
    const Vec2 end = micromotion(H, q, a, H.period, default_steps);
    EXPECT_LE((end - q.modes.col(a)).norm(), 1e-8);
    const Vec2 mid = micromotion(H, q, a, 0.3 * H.period, 2048);
    EXPECT_NEAR(mid.norm(), 1, 1e-12);
  }
}

TEST(Gaps, CircleMetric) {
  Eigen::VectorXd e(2);
  e << -0.3, 0.4;
  EXPECT_NEAR(zero_gap(e, 2.0), 0.7, 1e-15);
  EXPECT_NEAR(pi_gap(e, 2.0), 1.3, 1e-15);
  e << -0.9, 0.95;
  EXPECT_NEAR(pi_gap(e, 2.0), 0.15, 1e-14);
  EXPECT_NEAR(gap_offset(0.95, 2.0, 1.0), -0.05, 1e-14);
  EXPECT_NEAR(gap_offset(-0.9, 2.0, 1.0), 0.1, 1e-14);
  // gaps plus band widths cover the circle
  e << 0.2, 0.2;
  EXPECT_NEAR(zero_gap(e, 2.0) + pi_gap(e, 2.0), 4.0, 1e-14);
}

TEST(LabelBands, FollowsStatesThroughReordering) {
  std::vector<Mat2> modes;
  Mat2 a = Mat2::Identity();
  Mat2 b;
  b << 0, 1, 1, 0;
  modes.push_back(a);
  modes.push_back(b);
  modes.push_back(b);
  modes.push_back(a);
  const auto lab = label_bands(modes);
  ASSERT_EQ(lab.size(), 4u);
  EXPECT_EQ(lab[1][0], 1);
  EXPECT_EQ(lab[2][0], 1);
  EXPECT_EQ(lab[3][0], 0);
}
