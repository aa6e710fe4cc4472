#pragma once

#include <cmath>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "../edge.hpp"
#include "../rwa.hpp"
#include "../topology.hpp"
#include "config.hpp"
#include "emit.hpp"

namespace ft::cli {

struct RunOptions {
  int threads = 1;
};

// Declares every key the given model accepts, with defaults.
inline Config default_config(const std::string& model) {
  Config c;
  c.declare("steps", 4096.0, "time steps per drive period");
  if (model == "rabi") {
    c.declare("Delta", 1.0, "level splitting");
    c.declare("V", 0.1, "drive amplitude");
    c.declare("phi", 0.0, "drive phase");
    c.declare("omega_min", 0.5, "sweep start");
    c.declare("omega_max", 5.0, "sweep end");
    c.declare("omega_points", 181.0, "sweep points");
  } else if (model == "ssh") {
    c.declare("J", 1.0, "intra-cell hopping");
    c.declare("Jp", 1.5, "inter-cell hopping");
    c.declare("V", 0.2, "drive amplitude");
    c.declare("omega", 5.0, "drive frequency");
    c.declare("N_cells", 20.0, "unit cells of the open chain");
    c.declare("nk", 256.0, "k points of the periodic chain");
    c.declare("Jp_min", 0.0, "J'/J sweep start");
    c.declare("Jp_max", 5.0, "J'/J sweep end");
    c.declare("Jp_points", 51.0, "J'/J sweep points");
    c.declare("omega_min", 1.0, "frequency sweep start");
    c.declare("omega_max", 10.0, "frequency sweep end");
    c.declare("omega_points", 91.0, "frequency sweep points");
    c.declare("edge_fraction", 0.1, "share of sites per end counted as edge");
    c.declare("edge_weight", 0.5, "edge weight threshold");
    c.declare("window_factor", 0.1, "gap window as a share of the bulk gap");
  } else if (model == "piflux") {
    c.declare("J", 1.0, "hopping");
    c.declare("Ax", 0.5, "drive amplitude along x");
    c.declare("Ay", 0.5, "drive amplitude along y");
    c.declare("omega", 6.0, "drive frequency");
    c.declare("phi", pi / 2, "relative drive phase");
    c.declare("N_y", 40.0, "ribbon width");
    c.declare("grid", 64.0, "Brillouin-zone grid per direction");
    c.declare("nk", 64.0, "ribbon k points");
    c.declare("boundary", std::string("y_open"), "ribbon boundary: y_open, x_open or diagonal");
    c.declare("band", std::string("plus"), "quasienergy band for flux maps: plus or minus");
    c.declare("static_part", std::string("stroboscopic"), "rotating-frame static part: stroboscopic or average");
    c.declare("time", 0.0, "time within the period for the analytic states");
    c.declare("omega_min", 3.0, "frequency sweep start");
    c.declare("omega_max", 7.0, "frequency sweep end");
    c.declare("omega_points", 21.0, "frequency sweep points");
    c.declare("A_min", 0.0, "amplitude sweep start");
    c.declare("A_max", 5.0, "amplitude sweep end");
    c.declare("A_points", 101.0, "amplitude sweep points");
  } else {
    throw config_error(fmt::format("unknown model '{}' (rabi, ssh, piflux)", model));
  }
  return c;
}

namespace detail {

inline std::vector<double> linspace(const Config& c, const std::string& prefix) {
  const double a = c.num(prefix + "_min"), b = c.num(prefix + "_max");
  const int n = c.integer(prefix + "_points");
  if (n < 1) throw config_error(prefix + "_points must be >= 1");
  if (!(b >= a)) throw config_error(fmt::format("{}_max must be >= {}_min", prefix, prefix));
  std::vector<double> out;
  for (int i = 0; i < n; ++i) out.push_back(n == 1 ? a : a + (b - a) * i / (n - 1));
  return out;
}

inline int positive(const Config& c, const std::string& key, int min = 1) {
  const int v = c.integer(key);
  if (v < min) throw config_error(fmt::format("{} must be >= {}", key, min));
  return v;
}

inline RabiSpec rabi_spec(const Config& c) {
  RabiSpec s;
  s.Delta = c.num("Delta");
  s.V = c.num("V");
  s.phi = c.num("phi");
  return s;
}

inline SSHSpec ssh_spec(const Config& c) {
  SSHSpec s;
  s.J = c.num("J");
  s.Jp = c.num("Jp");
  s.V = c.num("V");
  s.omega = c.num("omega");
  s.N_cells = positive(c, "N_cells");
  return s;
}

inline PiFluxSpec piflux_spec(const Config& c) {
  PiFluxSpec s;
  s.J = c.num("J");
  s.Ax = c.num("Ax");
  s.Ay = c.num("Ay");
  s.omega = c.num("omega");
  s.phi = c.num("phi");
  s.N_y = positive(c, "N_y");
  return s;
}

inline EdgeThresholds thresholds(const Config& c) {
  EdgeThresholds th;
  th.fraction = c.num("edge_fraction");
  th.weight = c.num("edge_weight");
  th.window_factor = c.num("window_factor");
  return th;
}

inline RibbonBoundary boundary(const Config& c) {
  const auto& b = c.str("boundary");
  if (b == "y_open") return RibbonBoundary::y_open;
  if (b == "x_open") return RibbonBoundary::x_open;
  if (b == "diagonal") return RibbonBoundary::diagonal;
  throw config_error(fmt::format("boundary: '{}' is not y_open, x_open or diagonal", b));
}

inline StaticPart static_part(const Config& c) {
  const auto& p = c.str("static_part");
  if (p == "stroboscopic") return StaticPart::stroboscopic;
  if (p == "average") return StaticPart::average;
  throw config_error(fmt::format("static_part: '{}' is not stroboscopic or average", p));
}

inline int grid(const Config& c) {
  const int g = c.integer("grid");
  if (g < 64) throw config_error("grid must be >= 64");
  return g;
}

inline nlohmann::ordered_json critical_json(const CriticalFrequencySet& set) {
  auto a = nlohmann::ordered_json::array();
  for (const auto& f : set.frequencies)
    a.push_back({{"omega", f.omega}, {"kx", f.kx}, {"ky", f.ky}, {"mechanism", f.mechanism},
                 {"exact_closure", f.exact_closure}});
  return a;
}

inline void add_warnings(Dataset& d, const Warnings& w) {
  for (const auto& m : w.items)
    if (std::find(d.warnings.begin(), d.warnings.end(), m) == d.warnings.end()) d.warnings.push_back(m);
}

inline Table flux_table(const BerryFluxMap& m, std::string name) {
  Table t{std::move(name), {"kx", "ky", "flux"}, {}, Table::Plot::heatmap};
  for (int i = 0; i < m.grid.nx; ++i)
    for (int j = 0; j < m.grid.ny; ++j) t.add({m.kx_center(i), m.ky_center(j), m.at(i, j)});
  return t;
}

inline Cell chern_cell(const BerryFluxMap& m) {
  try {
    return static_cast<long long>(chern_number(m));
  } catch (const convergence_error&) {
    return std::nan("");
  }
}

// ----------------------------------------------------------------- rabi

inline Dataset rabi_quasienergy(const Config& c, const RunOptions& o) {
  const auto base = rabi_spec(c);
  const auto ws = linspace(c, "omega");
  const int steps = positive(c, "steps", 16);
  for (double w : ws) {
    auto s = base;
    s.omega = w;
    s.validate();
  }
  Dataset d{"rabi", "rabi-quasienergy"};
  Table t{"", {"omega", "exact_plus", "exact_minus", "analytic_plus", "analytic_minus"}, {}, Table::Plot::lines};
  auto rows = parallel_map(ws.size(), o.threads, [&](std::size_t i) {
    auto s = base;
    s.omega = ws[i];
    const auto ex = quasienergies(one_period_propagator(rabi_hamiltonian(s), steps), s.omega).eps;
    const auto an = rabi_analytic_quasienergies(s);
    // pair exact levels with the analytic labels by circle distance
    auto dist = [&](double x, double y) { return std::abs(fold(x - y, s.omega)); };
    const bool direct = std::max(dist(ex(1), an.eps_plus), dist(ex(0), an.eps_minus)) <=
                        std::max(dist(ex(0), an.eps_plus), dist(ex(1), an.eps_minus));
    return std::vector<Cell>{s.omega, direct ? ex(1) : ex(0), direct ? ex(0) : ex(1), an.eps_plus, an.eps_minus};
  });
  double worst = 0;
  for (auto& r : rows) {
    for (int k : {1, 2}) worst = std::max(worst, std::abs(fold(std::get<double>(r[k]) - std::get<double>(r[k + 2]),
                                                                std::get<double>(r[0]))));
    t.add(std::move(r));
  }
  d.tables.push_back(std::move(t));
  auto s = base;
  s.omega = ws.front();
  d.summary["critical_frequencies"] = critical_json(critical_frequencies(s));
  d.summary["max_exact_analytic_deviation"] = worst;
  return d;
}

// ------------------------------------------------------------------ ssh

inline Dataset ssh_obc_sweep(const Config& c, const RunOptions& o) {
  const auto base = ssh_spec(c);
  const auto ratios = linspace(c, "Jp");
  const int steps = positive(c, "steps", 16), nk = positive(c, "nk", 8);
  const auto th = thresholds(c);
  for (double r : ratios) {
    auto s = base;
    s.Jp = r * base.J;
    s.validate();
  }
  struct Point {
    ChainSpectrum chain;
    BulkGaps bulk;
  };
  auto pts = parallel_map(ratios.size(), o.threads, [&](std::size_t i) {
    auto s = base;
    s.Jp = ratios[i] * base.J;
    return Point{ssh_obc_spectrum(s, steps, th.fraction), ssh_pbc_gaps(s, nk, steps)};
  });
  Dataset d{"ssh", "ssh-obc-sweep"};
  Table spec{"", {"k", "band", "quasienergy", "edge_weight"}, {}, Table::Plot::scatter};
  Table counts{"counts", {"jp_ratio", "zero_count", "pi_count", "zero_gap", "pi_gap", "ambiguous"}, {}};
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const auto& p = pts[i];
    for (Eigen::Index a = 0; a < p.chain.spectrum.eps.size(); ++a)
      spec.add({ratios[i], static_cast<long long>(a), p.chain.spectrum.eps(a), p.chain.edge_weights[a]});
    const auto z = count_gap_edge_states(p.chain.spectrum, GapLabel::zero, p.bulk.zero, th);
    const auto q = count_gap_edge_states(p.chain.spectrum, GapLabel::pi, p.bulk.pi, th);
    counts.add({ratios[i], static_cast<long long>(z.count), static_cast<long long>(q.count), p.bulk.zero, p.bulk.pi,
                static_cast<long long>(z.ambiguous || q.ambiguous)});
    if (z.ambiguous) d.warnings.push_back(fmt::format("J'/J={:.6g}: {}", ratios[i], z.diagnostic));
    if (q.ambiguous) d.warnings.push_back(fmt::format("J'/J={:.6g}: {}", ratios[i], q.diagnostic));
  }
  d.tables.push_back(std::move(spec));
  d.tables.push_back(std::move(counts));
  d.summary["sites"] = 2 * base.N_cells;
  return d;
}

inline Dataset ssh_resonance(const Config& c, const RunOptions& o) {
  const auto base = ssh_spec(c);
  const auto ws = linspace(c, "omega");
  const int steps = positive(c, "steps", 16), nk = positive(c, "nk", 8);
  for (double w : ws) {
    auto s = base;
    s.omega = w;
    s.validate();
  }
  auto gaps = parallel_map(ws.size(), o.threads, [&](std::size_t i) {
    auto s = base;
    s.omega = ws[i];
    return ssh_pbc_gaps(s, nk, steps);
  });
  Dataset d{"ssh", "ssh-resonance"};
  Table t{"", {"omega", "zero_gap", "pi_gap"}, {}, Table::Plot::lines};
  for (std::size_t i = 0; i < ws.size(); ++i) t.add({ws[i], gaps[i].zero, gaps[i].pi});
  d.tables.push_back(std::move(t));
  const auto cf = critical_frequencies(base);
  d.summary["critical_frequencies"] = critical_json(cf);
  if (!cf.diagnostic.empty()) d.warnings.push_back(cf.diagnostic);
  return d;
}

inline Dataset ssh_pbc_compare(const Config& c, const RunOptions& o) {
  const auto s = ssh_spec(c);
  s.validate();
  const int steps = positive(c, "steps", 16), nk = positive(c, "nk", 8);
  auto rows = parallel_map(std::size_t(nk), o.threads, [&](std::size_t i) {
    const double k = -pi + 2 * pi * double(i) / nk;
    const auto ex = quasienergies(one_period_propagator(ssh_bloch(s, k), steps), s.omega).eps;
    const auto p = ssh_rwa(s, k);
    const auto an = rwa_quasienergy_map(p.rot.E_plus, p.rot.E_minus, s.omega);
    return std::vector<Cell>{k, ex(0), ex(1), an.eps_plus, an.eps_minus, std::abs(p.rot.Gamma)};
  });
  Dataset d{"ssh", "ssh-pbc-compare"};
  Table t{"", {"k", "exact_lower", "exact_upper", "rwa_plus", "rwa_minus", "gamma_abs"}, {}, Table::Plot::lines};
  for (auto& r : rows) t.add(std::move(r));
  d.tables.push_back(std::move(t));
  const auto dp = degeneracy_points(s);
  auto a = nlohmann::ordered_json::array();
  for (const auto& p : dp) a.push_back({{"k", p.kx}, {"gamma_abs", p.gamma_abs}});
  d.summary["degeneracy_points"] = a;
  d.summary["critical_frequencies"] = critical_json(critical_frequencies(s));
  return d;
}

inline Dataset ssh_zak_sweep(const Config& c, const RunOptions& o) {
  const auto base = ssh_spec(c);
  const auto ws = linspace(c, "omega");
  const int nk = std::max(64, positive(c, "nk", 64));
  for (double w : ws) {
    auto s = base;
    s.omega = w;
    s.validate();
  }
  auto zs = parallel_map(ws.size(), o.threads, [&](std::size_t i) {
    auto s = base;
    s.omega = ws[i];
    return ssh_zak(s, nk);
  });
  Dataset d{"ssh", "ssh-zak"};
  Table t{"", {"omega", "gamma_plus", "gamma_minus", "gamma_tilde_plus", "gamma_tilde_minus"}, {}, Table::Plot::lines};
  double worst = 0;
  for (std::size_t i = 0; i < ws.size(); ++i) {
    const auto& z = zs[i];
    t.add({ws[i], z.plus.gamma, z.minus.gamma, z.plus.gamma_tilde, z.minus.gamma_tilde});
    for (const auto& x : {z.plus, z.minus})
      worst = std::max(worst, std::abs(wrap_angle(x.gamma_tilde + x.gamma_bar - x.gamma)));
  }
  d.tables.push_back(std::move(t));
  d.summary["split_residual"] = worst;
  d.summary["critical_frequencies"] = critical_json(critical_frequencies(base));
  return d;
}

// --------------------------------------------------------------- piflux

inline Dataset piflux_highfreq(const Config& c, const RunOptions& o) {
  const auto s = piflux_spec(c);
  s.validate();
  const int g = grid(c), steps = positive(c, "steps", 16);
  Dataset d{"piflux", "piflux-highfreq"};
  Warnings w;
  piflux_regime_check(s, &w);
  add_warnings(d, w);
  const auto b = piflux_exact_bands(s, g, g, steps, o.threads);
  const auto up = berry_flux_map(b.upper, b.grid), dn = berry_flux_map(b.lower, b.grid);
  d.tables.push_back(flux_table(up, ""));
  d.summary["min_zero_gap"] = b.min_zero_gap;
  d.summary["min_pi_gap"] = b.min_pi_gap;
  if (b.min_zero_gap > 1e-3 && b.min_pi_gap > 1e-3) {
    d.summary["c_plus"] = chern_number(up);
    d.summary["c_minus"] = chern_number(dn);
  } else {
    d.warnings.push_back("quasienergy gap below 1e-3; Chern numbers undefined");
  }
  try {
    const auto a = analytic_chern_highfreq(s);
    d.summary["analytic_c_plus"] = a.c_plus;
    d.summary["analytic_c_minus"] = a.c_minus;
  } catch (const undefined_invariant_error& e) {
    d.warnings.push_back(e.what());
  }
  return d;
}

inline Dataset piflux_phase_diagram_exp(const Config& c, const RunOptions&) {
  const auto s = piflux_spec(c);
  s.validate();
  const auto as = linspace(c, "A");
  Dataset d{"piflux", "piflux-phase-diagram"};
  const auto p = piflux_phase_diagram(s, as, as);
  Table t{"", {"ax", "ay", "c_plus"}, {}, Table::Plot::heatmap};
  for (std::size_t i = 0; i < as.size(); ++i)
    for (std::size_t j = 0; j < as.size(); ++j) t.add({as[i], as[j], static_cast<long long>(p[i * as.size() + j])});
  d.tables.push_back(std::move(t));
  d.summary["gapless_marker"] = 0;
  return d;
}

inline Dataset piflux_berry(const Config& c, const RunOptions&) {
  const auto s = piflux_spec(c);
  s.validate();
  const int g = grid(c);
  const auto& band = c.str("band");
  if (band != "plus" && band != "minus") throw config_error("band must be plus or minus");
  Dataset d{"piflux", "piflux-berry"};
  Warnings w;
  piflux_regime_check(s, &w);
  add_warnings(d, w);
  const auto a = piflux_analytic_states(s, g, g, c.num("time"), static_part(c));
  // quasienergy band + comes from rotating label -, and the other way round
  const auto m = band == "plus" ? split_flux_maps(a.phi_minus, a.Phi_minus, a.grid)
                                : split_flux_maps(a.phi_plus, a.Phi_plus, a.grid);
  d.tables.push_back(flux_table(m.total, ""));
  d.tables.push_back(flux_table(m.tilde, "tilde"));
  d.tables.push_back(flux_table(m.bar, "bar"));
  auto put = [&](const char* key, const BerryFluxMap& f) {
    const Cell x = chern_cell(f);
    if (auto i = std::get_if<long long>(&x)) d.summary[key] = *i;
    else d.summary[key] = nullptr;
  };
  put("c", m.total);
  put("c_tilde", m.tilde);
  put("c_bar", m.bar);
  d.summary["band"] = band;
  d.summary["rotating_label"] = band == "plus" ? "-" : "+";
  return d;
}

inline Dataset piflux_chern_sweep(const Config& c, const RunOptions& o) {
  const auto base = piflux_spec(c);
  const auto ws = linspace(c, "omega");
  const int g = grid(c), steps = positive(c, "steps", 16);
  const auto part = static_part(c);
  for (double w : ws) {
    auto s = base;
    s.omega = w;
    s.validate();
  }
  Dataset d{"piflux", "piflux-chern-sweep"};
  Table t{"", {"omega", "c_plus", "c_minus", "c_tilde_plus", "c_tilde_minus", "c_bar_plus", "c_bar_minus"}, {},
          Table::Plot::lines};
  const double nan = std::nan("");
  auto transitions = nlohmann::ordered_json::array();
  Cell prev = nan;
  double prev_w = 0;
  for (double w : ws) {
    auto s = base;
    s.omega = w;
    Warnings wr;
    piflux_regime_check(s, &wr);
    add_warnings(d, wr);
    const auto b = piflux_exact_bands(s, g, g, steps, o.threads);
    Cell cp = nan, cm = nan;
    if (b.min_zero_gap > 1e-3 && b.min_pi_gap > 1e-3) {
      cp = chern_cell(berry_flux_map(b.upper, b.grid));
      cm = chern_cell(berry_flux_map(b.lower, b.grid));
    }
    std::vector<Cell> split(4, nan);
    try {
      const auto r = piflux_split_chern(s, g, g, c.num("time"), part);
      split = {static_cast<long long>(r.c_tilde_plus), static_cast<long long>(r.c_tilde_minus),
               static_cast<long long>(r.c_bar_plus), static_cast<long long>(r.c_bar_minus)};
    } catch (const convergence_error&) {
    } catch (const resolution_error&) {
    }
    if (std::holds_alternative<long long>(prev) && std::holds_alternative<long long>(cp) &&
        std::get<long long>(prev) != std::get<long long>(cp))
      transitions.push_back({{"omega_below", prev_w},
                             {"omega_above", w},
                             {"from", std::get<long long>(prev)},
                             {"to", std::get<long long>(cp)}});
    if (std::holds_alternative<long long>(cp)) {
      prev = cp;
      prev_w = w;
    }
    t.add({w, cp, cm, split[0], split[1], split[2], split[3]});
  }
  d.tables.push_back(std::move(t));
  d.summary["transitions"] = transitions;
  d.summary["critical_frequencies"] = critical_json(critical_frequencies(base));
  return d;
}

inline Dataset piflux_ribbon_exp(const Config& c, const RunOptions& o) {
  const auto s = piflux_spec(c);
  s.validate();
  const int nk = positive(c, "nk", 8), steps = positive(c, "steps", 16);
  const auto b = boundary(c);
  Dataset d{"piflux", "piflux-ribbon"};
  const auto r = piflux_ribbon_spectrum(s, nk, b, steps, o.threads);
  Table spec{"", {"k", "band", "quasienergy", "edge_weight"}, {}, Table::Plot::scatter};
  for (std::size_t i = 0; i < r.k.size(); ++i)
    for (Eigen::Index a = 0; a < r.spectra[i].eps.size(); ++a)
      spec.add({r.k[i], static_cast<long long>(a), r.spectra[i].eps(a), r.edge_weights[i][a]});
  Table cross{"crossings", {"gap", "k", "direction", "edge", "edge_weight"}, {}};
  for (GapLabel gl : {GapLabel::zero, GapLabel::pi}) {
    const auto cnt = count_ribbon_crossings(r, gl);
    for (const auto& x : cnt.crossings)
      cross.add({std::string(gap_name(gl)), x.k, static_cast<long long>(x.direction),
                 std::string(x.first_edge ? "first" : "second"), x.edge_weight});
    d.summary[gl == GapLabel::zero ? "zero_gap" : "pi_gap"] = {
        {"pairs", cnt.pairs}, {"net_first", cnt.net_first}, {"net_second", cnt.net_second}};
    if (!cnt.diagnostic.empty()) d.warnings.push_back(std::string(gap_name(gl)) + ": " + cnt.diagnostic);
  }
  d.tables.push_back(std::move(spec));
  d.tables.push_back(std::move(cross));
  d.summary["boundary"] = c.str("boundary");
  return d;
}

// Exact upper Floquet band against the Bessel-renormalised average.
inline Dataset piflux_band_overlap(const Config& c, const RunOptions& o) {
  const auto s = piflux_spec(c);
  s.validate();
  const int g = grid(c), steps = positive(c, "steps", 16);
  const PiFluxHarmonics h(s);
  struct K { double kx, ky; };
  std::vector<K> ks;
  for (int i = 0; i < g; ++i)
    for (int j = 0; j <= g; ++j) ks.push_back({-pi + 2 * pi * i / g, -pi / 2 + pi * j / g});
  auto rows = parallel_map(ks.size(), o.threads, [&](std::size_t i) {
    const auto [kx, ky] = ks[i];
    const double e0 = eig_hermitian(h.average(kx, ky)).values(1);
    const double e1 = quasienergies(one_period_propagator(piflux_bloch(s, kx, ky), steps), s.omega).eps(1);
    return std::pair{e0, e1};
  });
  double band_max = 0;
  for (const auto& [e0, e1] : rows) band_max = std::max(band_max, e0);
  Dataset d{"piflux", "piflux-band-overlap"};
  Table t{"", {"kx", "ky", "deviation", "driven", "undriven"}, {}, Table::Plot::heatmap};
  double worst = 0;
  for (std::size_t i = 0; i < ks.size(); ++i) {
    const auto [e0, e1] = rows[i];
    const double dev = band_max > 0 ? std::abs(e1 - e0) / (2 * band_max) : 0;
    t.add({ks[i].kx, ks[i].ky, dev, e1, e0});
    if (std::hypot(std::abs(ks[i].kx) - pi / 2, ks[i].ky) >= pi / 3) worst = std::max(worst, dev);
  }
  d.tables.push_back(std::move(t));
  d.summary["max_relative_deviation_away_from_dirac"] = worst;
  d.summary["dirac_mass"] = std::abs(h.mass(pi / 2, 0));
  return d;
}

}  // namespace detail

using Experiment = std::function<Dataset(const Config&, const RunOptions&)>;

inline const std::map<std::string, std::map<std::string, Experiment>>& experiments() {
  static const std::map<std::string, std::map<std::string, Experiment>> table = {
      {"rabi", {{"rabi-quasienergy", detail::rabi_quasienergy}}},
      {"ssh",
       {{"ssh-obc-sweep", detail::ssh_obc_sweep},
        {"ssh-resonance", detail::ssh_resonance},
        {"ssh-pbc-compare", detail::ssh_pbc_compare},
        {"ssh-zak", detail::ssh_zak_sweep}}},
      {"piflux",
       {{"piflux-highfreq", detail::piflux_highfreq},
        {"piflux-phase-diagram", detail::piflux_phase_diagram_exp},
        {"piflux-berry", detail::piflux_berry},
        {"piflux-chern-sweep", detail::piflux_chern_sweep},
        {"piflux-ribbon", detail::piflux_ribbon_exp},
        {"piflux-band-overlap", detail::piflux_band_overlap}}},
  };
  return table;
}

inline Dataset run_experiment(const std::string& model, const std::string& name, const Config& c,
                              const RunOptions& o = {}) {
  const auto m = experiments().find(model);
  if (m == experiments().end()) throw config_error(fmt::format("unknown model '{}'", model));
  const auto e = m->second.find(name);
  if (e == m->second.end()) throw config_error(fmt::format("'{}' is not a {} experiment", name, model));
  return e->second(c, o);
}

}  // namespace ft::cli
