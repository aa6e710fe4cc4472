#pragma once

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <string>
#include <variant>
#include <vector>

#include <fmt/format.h>
#include <json.hpp>

#include "config.hpp"

namespace ft::cli {

using Cell = std::variant<double, long long, std::string>;

struct Table {
  std::string name;  // file suffix, empty for the main table
  std::vector<std::string> header;
  std::vector<std::vector<Cell>> rows;
  enum class Plot { none, heatmap, scatter, lines } plot = Plot::none;

  void add(std::vector<Cell> r) {
    if (r.size() != header.size()) throw contract_error("Table::add: row width does not match header");
    rows.push_back(std::move(r));
  }
  double number(std::size_t r, std::size_t c) const {
    const auto& v = rows[r][c];
    if (auto d = std::get_if<double>(&v)) return *d;
    if (auto i = std::get_if<long long>(&v)) return double(*i);
    return std::nan("");
  }
};

struct Dataset {
  std::string model;
  std::string experiment;
  std::vector<Table> tables;
  nlohmann::ordered_json summary = nlohmann::ordered_json::object();
  std::vector<std::string> warnings;
};

inline std::string cell_text(const Cell& c) {
  if (auto d = std::get_if<double>(&c)) return std::isnan(*d) ? "nan" : fmt::format("{:.12g}", *d);
  if (auto i = std::get_if<long long>(&c)) return fmt::format("{}", *i);
  return std::get<std::string>(c);
}

inline std::string to_csv(const Table& t) {
  std::string out;
  for (std::size_t i = 0; i < t.header.size(); ++i) out += (i ? "," : "") + t.header[i];
  out += "\n";
  for (const auto& r : t.rows) {
    for (std::size_t i = 0; i < r.size(); ++i) out += (i ? "," : "") + cell_text(r[i]);
    out += "\n";
  }
  return out;
}

inline nlohmann::ordered_json table_json(const Table& t) {
  auto rows = nlohmann::ordered_json::array();
  for (const auto& r : t.rows) {
    nlohmann::ordered_json o;
    for (std::size_t i = 0; i < r.size(); ++i)
      std::visit([&](const auto& v) { o[t.header[i]] = v; }, r[i]);
    rows.push_back(std::move(o));
  }
  return {{"name", t.name}, {"columns", t.header}, {"rows", std::move(rows)}};
}

inline Table table_from_json(const nlohmann::ordered_json& j) {
  Table t;
  t.name = j.at("name").get<std::string>();
  t.header = j.at("columns").get<std::vector<std::string>>();
  for (const auto& o : j.at("rows")) {
    std::vector<Cell> r;
    for (const auto& h : t.header) {
      const auto& v = o.at(h);
      if (v.is_number_integer()) r.emplace_back(v.get<long long>());
      else if (v.is_number()) r.emplace_back(v.get<double>());
      else if (v.is_null()) r.emplace_back(std::nan(""));
      else r.emplace_back(v.get<std::string>());
    }
    t.rows.push_back(std::move(r));
  }
  return t;
}

inline constexpr const char* version = "1.0.0";

inline nlohmann::ordered_json to_json(const Dataset& d, const Config& c) {
  nlohmann::ordered_json j;
  j["tool"] = "floquet-topo";
  j["version"] = version;
  j["model"] = d.model;
  j["experiment"] = d.experiment;
  j["config_hash"] = c.hash();
  j["determinism"] = "no random numbers are used; identical config and build give identical output";
  auto cfg = nlohmann::ordered_json::object();
  for (const auto& [k, v] : c.values()) std::visit([&](const auto& x) { cfg[k] = x; }, v);
  j["config"] = std::move(cfg);
  j["warnings"] = d.warnings;
  j["summary"] = d.summary;
  auto tabs = nlohmann::ordered_json::array();
  for (const auto& t : d.tables) tabs.push_back(table_json(t));
  j["tables"] = std::move(tabs);
  return j;
}

// ----------------------------------------------------------------------- SVG

namespace detail {

inline std::string colour(double v, double lo, double hi) {
  // blue - white - red, symmetric about zero when the range straddles it
  double x = hi > lo ? (v - lo) / (hi - lo) : 0.5;
  x = std::clamp(x, 0.0, 1.0);
  const int r = x < 0.5 ? int(255 * 2 * x) : 255;
  const int b = x > 0.5 ? int(255 * 2 * (1 - x)) : 255;
  const int g = int(255 * (1 - std::abs(2 * x - 1)));
  return fmt::format("#{:02x}{:02x}{:02x}", r, g, b);
}

}  // namespace detail

// Columns 0 and 1 are the axes; heatmaps colour by column 2, scatters and
// lines use every further numeric column as a series.
inline std::string to_svg(const Table& t) {
  const double W = 640, H = 480, m = 50;
  std::string body;
  if (t.rows.empty() || t.header.size() < 2) {
    return fmt::format("<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{}\" height=\"{}\"></svg>\n", W, H);
  }
  auto range = [&](std::size_t c) {
    double lo = HUGE_VAL, hi = -HUGE_VAL;
    for (std::size_t r = 0; r < t.rows.size(); ++r) {
      const double v = t.number(r, c);
      if (std::isfinite(v)) { lo = std::min(lo, v); hi = std::max(hi, v); }
    }
    if (!(hi > lo)) { lo -= 0.5; hi += 0.5; }
    return std::pair{lo, hi};
  };
  const auto [x0, x1] = range(0);
  auto X = [&](double x) { return m + (W - 2 * m) * (x - x0) / (x1 - x0); };
  if (t.plot == Table::Plot::heatmap && t.header.size() >= 3) {
    const auto [y0, y1] = range(1);
    auto [v0, v1] = range(2);
    const double a = std::max(std::abs(v0), std::abs(v1));
    if (v0 < 0 && v1 > 0) { v0 = -a; v1 = a; }
    std::vector<double> xs, ys;
    for (std::size_t r = 0; r < t.rows.size(); ++r) { xs.push_back(t.number(r, 0)); ys.push_back(t.number(r, 1)); }
    std::sort(xs.begin(), xs.end());
    std::sort(ys.begin(), ys.end());
    xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
    ys.erase(std::unique(ys.begin(), ys.end()), ys.end());
    const double cw = (W - 2 * m) / std::max<std::size_t>(1, xs.size()), ch = (H - 2 * m) / std::max<std::size_t>(1, ys.size());
    for (std::size_t r = 0; r < t.rows.size(); ++r) {
      const double x = X(t.number(r, 0)) - 0.5 * cw;
      const double y = H - m - (H - 2 * m) * (t.number(r, 1) - y0) / (y1 - y0) - 0.5 * ch;
      body += fmt::format("<rect x=\"{:.2f}\" y=\"{:.2f}\" width=\"{:.2f}\" height=\"{:.2f}\" fill=\"{}\"/>\n", x, y,
                          cw + 0.3, ch + 0.3, detail::colour(t.number(r, 2), v0, v1));
    }
  } else {
    // every column after the first is a series against column 0, except that
    // scatter plots use column 1 against column 0 coloured by the last column
    const bool scatter = t.plot == Table::Plot::scatter;
    const std::size_t first = 1, last = scatter ? 2 : t.header.size();
    double y0 = HUGE_VAL, y1 = -HUGE_VAL;
    for (std::size_t c = first; c < last; ++c) {
      const auto [a, b] = range(scatter ? 2 : c);
      y0 = std::min(y0, a);
      y1 = std::max(y1, b);
    }
    auto Y = [&](double y) { return H - m - (H - 2 * m) * (y - y0) / (y1 - y0); };
    static const char* palette[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b"};
    if (scatter) {
      const std::size_t yc = 2, cc = t.header.size() - 1;
      for (std::size_t r = 0; r < t.rows.size(); ++r)
        body += fmt::format("<circle cx=\"{:.2f}\" cy=\"{:.2f}\" r=\"1.5\" fill=\"{}\"/>\n", X(t.number(r, 0)),
                            Y(t.number(r, yc)), detail::colour(t.number(r, cc), 0, 1));
    } else {
      for (std::size_t c = first; c < last; ++c) {
        std::string pts;
        for (std::size_t r = 0; r < t.rows.size(); ++r) {
          const double v = t.number(r, c);
          if (std::isfinite(v)) pts += fmt::format("{:.2f},{:.2f} ", X(t.number(r, 0)), Y(v));
        }
        body += fmt::format("<polyline fill=\"none\" stroke=\"{}\" stroke-width=\"1.2\" points=\"{}\"/>\n",
                            palette[(c - first) % 6], pts);
      }
    }
  }
  return fmt::format(
      "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{}\" height=\"{}\">\n"
      "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n{}"
      "<text x=\"{}\" y=\"{}\" font-size=\"12\" text-anchor=\"middle\">{}</text>\n</svg>\n",
      W, H, body, W / 2, H - 10, t.header[0]);
}

// ------------------------------------------------------------------- writing

inline void write_text(const std::filesystem::path& p, const std::string& text) {
  std::ofstream f(p, std::ios::binary);
  if (!f) throw io_error(fmt::format("cannot write '{}'", p.string()));
  f << text;
  if (!f) throw io_error(fmt::format("write failed for '{}'", p.string()));
}

inline std::string file_stem(const Dataset& d, const Table& t) {
  return t.name.empty() ? d.experiment : d.experiment + "_" + t.name;
}

// Returns the written paths.
inline std::vector<std::string> emit(const Dataset& d, const Config& c, const std::vector<std::string>& formats,
                                     const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw io_error(fmt::format("cannot create '{}': {}", dir.string(), ec.message()));
  std::vector<std::string> out;
  for (const auto& f : formats) {
    if (f == "csv") {
      for (const auto& t : d.tables) {
        const auto p = dir / (file_stem(d, t) + ".csv");
        write_text(p, to_csv(t));
        out.push_back(p.string());
      }
    } else if (f == "json") {
      const auto p = dir / (d.experiment + ".json");
      write_text(p, to_json(d, c).dump(2) + "\n");
      out.push_back(p.string());
    } else if (f == "svg") {
      for (const auto& t : d.tables) {
        if (t.plot == Table::Plot::none) continue;
        const auto p = dir / (file_stem(d, t) + ".svg");
        write_text(p, to_svg(t));
        out.push_back(p.string());
      }
    } else {
      throw config_error(fmt::format("unknown format '{}'", f));
    }
  }
  return out;
}

}  // namespace ft::cli
