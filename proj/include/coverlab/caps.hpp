#pragma once

#include <cstddef>
#include <cstdlib>
#include <sstream>
#include <string>

#include "coverlab/error.hpp"

namespace coverlab {

// Size limits for the brute-force parts of the library. Defaults can be
// raised through the environment, e.g.
//   COVERLAB_CAPS="subgroup_order=720,bruteforce_points=256"
struct Caps {
  std::size_t subgroup_order = 120;       // subgroups(), is_simple()
  std::size_t automorphism_order = 60;    // automorphism_group()
  std::size_t enumerate_order = 100000;   // explicit element lists
  std::size_t bruteforce_points = 60;     // all_congruences_bruteforce()
  std::size_t restriction_points = 10000; // restrict_kernel()
  std::size_t pregeometry_points = 30;    // exhaustive subset scans
  std::size_t predicted_arity = 4;        // predicted_congruences()

  static Caps from_string(const std::string& spec) { return from_string(spec, Caps()); }

  static Caps from_string(const std::string& spec, Caps base) {
    std::istringstream in(spec);
    std::string item;
    while (std::getline(in, item, ',')) {
      if (item.empty()) continue;
      auto eq = item.find('=');
      if (eq == std::string::npos) throw ParseError("COVERLAB_CAPS: expected key=value, got '" + item + "'");
      std::string key = item.substr(0, eq);
      std::size_t value = 0;
      try {
        value = std::stoull(item.substr(eq + 1));
      } catch (const std::exception&) {
        throw ParseError("COVERLAB_CAPS: bad value in '" + item + "'");
      }
      if (key == "subgroup_order") base.subgroup_order = value;
      else if (key == "automorphism_order") base.automorphism_order = value;
      else if (key == "enumerate_order") base.enumerate_order = value;
      else if (key == "bruteforce_points") base.bruteforce_points = value;
      else if (key == "restriction_points") base.restriction_points = value;
      else if (key == "pregeometry_points") base.pregeometry_points = value;
      else if (key == "predicted_arity") base.predicted_arity = value;
      else throw ParseError("COVERLAB_CAPS: unknown key '" + key + "'");
    }
    return base;
  }

  static Caps from_env() {
    const char* env = std::getenv("COVERLAB_CAPS");
    return env ? from_string(env) : Caps{};
  }
};

inline Caps& caps_storage() {
  static Caps instance = Caps::from_env();
  return instance;
}

inline const Caps& caps() { return caps_storage(); }

// Replaces the process-wide caps; call before starting any work.
inline void set_caps(const Caps& c) { caps_storage() = c; }

inline void check_cap(std::size_t value, std::size_t cap, const char* what) {
  if (value > cap) {
    throw CapExceeded(std::string(what) + ": " + std::to_string(value) + " exceeds cap " + std::to_string(cap) +
                      " (raise via COVERLAB_CAPS)");
  }
}

}  // namespace coverlab
