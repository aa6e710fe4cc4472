#pragma once

#include <cstdint>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include <fmt/format.h>

#include "../errors.hpp"

namespace ft::cli {

struct config_error : error { using error::error; };
struct io_error : error { using error::error; };

using Value = std::variant<double, std::string, bool>;

inline std::string to_text(const Value& v) {
  if (auto d = std::get_if<double>(&v)) return fmt::format("{:.12g}", *d);
  if (auto b = std::get_if<bool>(&v)) return *b ? "true" : "false";
  return std::get<std::string>(v);
}

// Flat typed key-value set. The type of each key is fixed by its default.
class Config {
 public:
  void declare(const std::string& key, Value def, std::string help = {}) {
    values_[key] = std::move(def);
    help_[key] = std::move(help);
  }
  bool has(const std::string& key) const { return values_.count(key) > 0; }

  void set(const std::string& key, const std::string& text) {
    auto it = values_.find(key);
    if (it == values_.end()) throw config_error(fmt::format("unknown key '{}'", key));
    Value& v = it->second;
    if (std::holds_alternative<double>(v)) {
      std::size_t pos = 0;
      double d = 0;
      try {
        d = std::stod(text, &pos);
      } catch (const std::exception&) {
        pos = 0;
      }
      if (pos == 0 || pos != text.size()) throw config_error(fmt::format("{}: '{}' is not a number", key, text));
      v = d;
    } else if (std::holds_alternative<bool>(v)) {
      if (text == "true" || text == "1") v = true;
      else if (text == "false" || text == "0") v = false;
      else throw config_error(fmt::format("{}: '{}' is not a boolean", key, text));
    } else {
      v = text;
    }
  }

  // "key=value" as given on the command line.
  void set_assignment(const std::string& kv) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos) throw config_error(fmt::format("override '{}' is not key=value", kv));
    set(trim(kv.substr(0, eq)), trim(kv.substr(eq + 1)));
  }

  // One "key = value" per line; '#' starts a comment.
  void load(std::istream& in, const std::string& origin = "config") {
    std::string line;
    int n = 0;
    while (std::getline(in, line)) {
      ++n;
      if (auto h = line.find('#'); h != std::string::npos) line.erase(h);
      line = trim(line);
      if (line.empty()) continue;
      try {
        set_assignment(line);
      } catch (const config_error& e) {
        throw config_error(fmt::format("{}:{}: {}", origin, n, e.what()));
      }
    }
  }

  void load_file(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw config_error(fmt::format("cannot read config file '{}'", path));
    load(f, path);
  }

  double num(const std::string& key) const { return std::get<double>(values_.at(key)); }
  int integer(const std::string& key) const {
    const double d = num(key);
    if (d != static_cast<double>(static_cast<long long>(d)))
      throw config_error(fmt::format("{} must be an integer", key));
    return static_cast<int>(d);
  }
  const std::string& str(const std::string& key) const { return std::get<std::string>(values_.at(key)); }
  bool flag(const std::string& key) const { return std::get<bool>(values_.at(key)); }

  const std::map<std::string, Value>& values() const { return values_; }
  const std::string& help(const std::string& key) const { return help_.at(key); }

  // Sorted "key = value" lines; also the input to the hash.
  std::string dump() const {
    std::string out;
    for (const auto& [k, v] : values_) out += fmt::format("{} = {}\n", k, to_text(v));
    return out;
  }

  // FNV-1a over the canonical dump.
  std::string hash() const {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : dump()) {
      h ^= c;
      h *= 1099511628211ull;
    }
    return fmt::format("{:016x}", h);
  }

  static std::string trim(const std::string& s) {
    const auto a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return {};
    const auto b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
  }

 private:
  std::map<std::string, Value> values_;
  std::map<std::string, std::string> help_;
};

}  // namespace ft::cli
