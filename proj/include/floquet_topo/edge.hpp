#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "errors.hpp"
#include "floquet.hpp"
#include "models.hpp"
#include "numerics.hpp"
#include "parallel.hpp"

namespace ft {

enum class GapLabel { zero, pi, bulk };

inline const char* gap_name(GapLabel g) {
  switch (g) {
    case GapLabel::zero: return "0-gap";
    case GapLabel::pi: return "pi-gap";
    default: return "bulk";
  }
}

inline double gap_center(GapLabel g, double omega) { return g == GapLabel::pi ? 0.5 * omega : 0.0; }

struct EdgeThresholds {
  double fraction = 0.1;       // outer share of sites on each end
  double weight = 0.5;         // edge_weight above this marks an edge state
  double window_factor = 0.1;  // window half-width as a share of the bulk gap
  double hybridization = 1e-4; // split pairs below this still count as edge pairs
};

// Probability on the first and last floor(fraction * n) sites.
inline double edge_weight(const CVec& state, double fraction = 0.1) {
  if (!(fraction > 0 && fraction <= 0.5)) throw domain_error("edge_weight: fraction must be in (0, 0.5]");
  const Eigen::Index n = state.size();
  if (std::abs(state.squaredNorm() - 1) > 1e-8) throw contract_error("edge_weight: state is not normalised");
  const Eigen::Index m = static_cast<Eigen::Index>(std::floor(fraction * n));
  double w = 0;
  for (Eigen::Index i = 0; i < m; ++i) w += std::norm(state(i)) + std::norm(state(n - 1 - i));
  return std::min(1.0, w);
}

// Probability on the first half of the sites.
inline double first_half_weight(const CVec& state) {
  double w = 0;
  for (Eigen::Index i = 0; i < state.size() / 2; ++i) w += std::norm(state(i));
  return w;
}

struct EdgeProfile {
  CVec state;
  double edge_weight = 0;
  GapLabel gap_label = GapLabel::bulk;
};

// --------------------------------------------------------------- chain counts

struct EdgeCount {
  int count = 0;               // edge states inside the window
  int bulk_in_window = 0;      // delocalised states inside the window
  int hybridized_pairs = 0;    // counted pairs split by less than the tolerance
  double window = 0;
  bool ambiguous = false;
  std::string diagnostic;
};

// States with |eps - center| < w on the circle and edge_weight above threshold.
// `bulk_gap` is the periodic-system gap; the window is window_factor * bulk_gap.
inline EdgeCount count_gap_edge_states(const QuasienergySpectrum<Eigen::Dynamic>& spec, GapLabel gap, double bulk_gap,
                                       const EdgeThresholds& th = {}) {
  if (gap == GapLabel::bulk) throw domain_error("count_gap_edge_states: gap must be 0 or pi");
  EdgeCount r;
  r.window = th.window_factor * bulk_gap;
  const double c = gap_center(gap, spec.omega);
  std::vector<double> inside;
  for (Eigen::Index a = 0; a < spec.eps.size(); ++a) {
    if (std::abs(gap_offset(spec.eps(a), spec.omega, c)) >= r.window) continue;
    if (edge_weight(spec.modes.col(a), th.fraction) > th.weight) {
      ++r.count;
      inside.push_back(spec.eps(a));
    } else {
      ++r.bulk_in_window;
    }
  }
  for (std::size_t i = 0; i + 1 < inside.size(); i += 2)
    if (std::abs(fold(inside[i + 1] - inside[i], spec.omega)) < th.hybridization) ++r.hybridized_pairs;
  if (r.bulk_in_window > 0) {
    r.ambiguous = true;
    r.diagnostic = "band edge inside the " + std::string(gap_name(gap)) + " window; use a smaller window_factor";
  }
  return r;
}

// ------------------------------------------------------------------ SSH chains

struct ChainSpectrum {
  QuasienergySpectrum<Eigen::Dynamic> spectrum;
  std::vector<double> edge_weights;
};

inline ChainSpectrum ssh_obc_spectrum(const SSHSpec& s, int steps = default_steps, double fraction = 0.1,
                                      Warnings* w = nullptr) {
  ChainSpectrum out;
  out.spectrum = quasienergies(one_period_propagator(ssh_open_chain(s, w), steps), s.omega);
  for (Eigen::Index a = 0; a < out.spectrum.eps.size(); ++a)
    out.edge_weights.push_back(edge_weight(out.spectrum.modes.col(a), fraction));
  return out;
}

struct BulkGaps {
  double zero = 0;
  double pi = 0;
  double k_zero = 0;  // where each minimum sits
  double k_pi = 0;
};

// Minimum gaps of the periodic chain over k = -pi + 2 pi i / nk.
inline BulkGaps ssh_pbc_gaps(const SSHSpec& s, int nk = 256, int steps = default_steps, int threads = 1) {
  auto sp = parallel_map(std::size_t(nk), threads, [&](std::size_t i) {
    return quasienergies(one_period_propagator(ssh_bloch(s, -pi + 2 * pi * double(i) / nk), steps), s.omega).eps;
  });
  BulkGaps g{s.omega, s.omega, 0, 0};
  for (int i = 0; i < nk; ++i) {
    const double k = -pi + 2 * pi * double(i) / nk;
    const double z = zero_gap(sp[i], s.omega), p = pi_gap(sp[i], s.omega);
    if (z < g.zero) { g.zero = z; g.k_zero = k; }
    if (p < g.pi) { g.pi = p; g.k_pi = k; }
  }
  return g;
}

struct SSHEdgeReport {
  EdgeCount zero;
  EdgeCount pi;
  BulkGaps bulk;
};

inline SSHEdgeReport ssh_edge_report(const SSHSpec& s, int steps = default_steps, const EdgeThresholds& th = {},
                                     int nk = 256) {
  SSHEdgeReport r;
  r.bulk = ssh_pbc_gaps(s, nk, steps);
  const auto c = ssh_obc_spectrum(s, steps, th.fraction);
  r.zero = count_gap_edge_states(c.spectrum, GapLabel::zero, r.bulk.zero, th);
  r.pi = count_gap_edge_states(c.spectrum, GapLabel::pi, r.bulk.pi, th);
  return r;
}

// -------------------------------------------------------------- pi-flux ribbon

struct RibbonSpectrum {
  std::vector<double> k;  // offset grid -pi + (i + 1/2) 2 pi / nk
  std::vector<QuasienergySpectrum<Eigen::Dynamic>> spectra;
  std::vector<std::vector<double>> edge_weights;
  std::vector<std::vector<double>> top_weights;
  double omega = 0;
};

// The half-spacing offset keeps symmetric momenta, where the two edges can
// hybridise, off the grid.
inline RibbonSpectrum piflux_ribbon_spectrum(const PiFluxSpec& s, int nk, RibbonBoundary b = RibbonBoundary::y_open,
                                             int steps = default_steps, int threads = 1, double fraction = 0.1) {
  if (nk < 8) throw domain_error("piflux_ribbon_spectrum: nk must be >= 8");
  RibbonSpectrum r;
  r.omega = s.omega;
  for (int i = 0; i < nk; ++i) r.k.push_back(-pi + (i + 0.5) * 2 * pi / nk);
  r.spectra = parallel_map(std::size_t(nk), threads, [&](std::size_t i) {
    return quasienergies(one_period_propagator(piflux_ribbon(s, r.k[i], b), steps), s.omega);
  });
  for (const auto& sp : r.spectra) {
    std::vector<double> e, t;
    for (Eigen::Index a = 0; a < sp.eps.size(); ++a) {
      e.push_back(edge_weight(sp.modes.col(a), fraction));
      t.push_back(first_half_weight(sp.modes.col(a)));
    }
    r.edge_weights.push_back(std::move(e));
    r.top_weights.push_back(std::move(t));
  }
  return r;
}

struct BranchCrossing {
  double k = 0;       // left end of the grid interval
  int direction = 0;  // sign of d eps / dk through the gap line
  bool first_edge = true;
  double edge_weight = 0;
};

struct RibbonCount {
  std::vector<BranchCrossing> crossings;
  int net_first = 0;   // net chirality on the edge at low site index
  int net_second = 0;
  int pairs = 0;
  std::string diagnostic;
};

// Follow every level by maximum overlap to the next k and record sign
// changes of fold(eps - center). Jumps wider than omega/4 are wraps of the
// opposite gap and are skipped.
inline RibbonCount count_ribbon_crossings(const RibbonSpectrum& r, GapLabel gap, const EdgeThresholds& th = {}) {
  if (gap == GapLabel::bulk) throw domain_error("count_ribbon_crossings: gap must be 0 or pi");
  const double c = gap_center(gap, r.omega);
  RibbonCount out;
  const std::size_t nk = r.k.size();
  for (std::size_t i = 0; i < nk; ++i) {
    const auto& A = r.spectra[i];
    const auto& B = r.spectra[(i + 1) % nk];
    const Eigen::MatrixXd O = (A.modes.adjoint() * B.modes).cwiseAbs2();
    for (Eigen::Index a = 0; a < A.eps.size(); ++a) {
      Eigen::Index b;
      O.row(a).maxCoeff(&b);
      const double x1 = gap_offset(A.eps(a), r.omega, c), x2 = gap_offset(B.eps(b), r.omega, c);
      if ((x1 >= 0) == (x2 >= 0) || std::abs(x1) + std::abs(x2) >= 0.25 * r.omega) continue;
      const double ew = 0.5 * (r.edge_weights[i][a] + r.edge_weights[(i + 1) % nk][b]);
      if (ew <= th.weight) continue;
      const double top = 0.5 * (r.top_weights[i][a] + r.top_weights[(i + 1) % nk][b]);
      BranchCrossing x{r.k[i], x2 > x1 ? 1 : -1, top > 0.5, ew};
      (x.first_edge ? out.net_first : out.net_second) += x.direction;
      out.crossings.push_back(x);
    }
  }
  if (out.net_first != -out.net_second) out.diagnostic = "edge chiralities do not cancel; refine the k grid";
  out.pairs = (std::abs(out.net_first) + std::abs(out.net_second)) / 2;
  return out;
}

struct RibbonEdgeReport {
  RibbonCount zero;
  RibbonCount pi;
};

inline RibbonEdgeReport piflux_ribbon_edges(const PiFluxSpec& s, int nk, RibbonBoundary b = RibbonBoundary::y_open,
                                            int steps = default_steps, int threads = 1,
                                            const EdgeThresholds& th = {}) {
  const auto r = piflux_ribbon_spectrum(s, nk, b, steps, threads, th.fraction);
  return {count_ribbon_crossings(r, GapLabel::zero, th), count_ribbon_crossings(r, GapLabel::pi, th)};
}

// Static ribbon levels within tol of zero that live on the edges, per k.
inline std::vector<int> static_ribbon_zero_modes(PiFluxSpec s, const std::vector<double>& ks, RibbonBoundary b,
                                                 double tol = 1e-6, double fraction = 0.1) {
  s.Ax = s.Ay = 0;
  std::vector<int> out;
  for (double k : ks) {
    const auto e = eig_hermitian(CMat(piflux_ribbon(s, k, b).evaluate(0)));
    int n = 0;
    for (Eigen::Index a = 0; a < e.values.size(); ++a)
      if (std::abs(e.values(a)) < tol && edge_weight(e.vectors.col(a), fraction) > 0.5) ++n;
    out.push_back(n);
  }
  return out;
}

}  // namespace ft
