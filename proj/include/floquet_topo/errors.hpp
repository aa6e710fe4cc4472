#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace ft {

struct error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct domain_error : error { using error::error; };
struct contract_error : error { using error::error; };
struct bracket_error : error { using error::error; };
struct degeneracy_error : error { using error::error; };
struct resolution_error : error { using error::error; };
struct convergence_error : error { using error::error; };
struct undefined_invariant_error : error { using error::error; };
struct window_error : error { using error::error; };

// Regime warnings are collected, never thrown.
struct Warnings {
  std::vector<std::string> items;
  void add(std::string msg) { items.push_back(std::move(msg)); }
  bool empty() const { return items.empty(); }
};

inline void warn(Warnings* w, std::string msg) {
  if (w) w->add(std::move(msg));
}

}  // namespace ft
