#pragma once

#include <cctype>
#include <istream>
#include <sstream>
#include <string>
#include <vector>

#include "coverlab/error.hpp"
#include "coverlab/permutation.hpp"

namespace coverlab {

// Disjoint-cycle notation over 0-based points: "(0 1 2)(3 4)"; identity "()".
inline std::string format_cycles(const Permutation& p) {
  std::string out;
  std::vector<bool> seen(p.degree(), false);
  for (Point i = 0; i < p.degree(); ++i) {
    if (seen[i] || p(i) == i) continue;
    out += '(';
    for (Point j = i; !seen[j]; j = p(j)) {
      seen[j] = true;
      if (j != i) out += ' ';
      out += std::to_string(j);
    }
    out += ')';
  }
  return out.empty() ? "()" : out;
}

// Parses cycle notation. Cycles need not be disjoint; they are composed
// left to right as written, rightmost applied first.
inline Permutation parse_cycles(const std::string& text, std::size_t degree) {
  std::vector<std::vector<Point>> cycles;
  std::size_t i = 0;
  auto skip_ws = [&] {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
  };
  skip_ws();
  while (i < text.size()) {
    if (text[i] != '(') throw ParseError("cycle notation: expected '(' in \"" + text + "\"");
    ++i;
    std::vector<Point> cycle;
    for (;;) {
      skip_ws();
      if (i >= text.size()) throw ParseError("cycle notation: unterminated cycle in \"" + text + "\"");
      if (text[i] == ')') {
        ++i;
        break;
      }
      if (text[i] == ',') {
        ++i;
        continue;
      }
      if (!std::isdigit(static_cast<unsigned char>(text[i])))
        throw ParseError("cycle notation: unexpected character in \"" + text + "\"");
      unsigned long long v = 0;
      while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
        v = v * 10 + static_cast<unsigned>(text[i] - '0');
        if (v >= degree) throw ParseError("cycle notation: point " + std::to_string(v) + " outside degree " + std::to_string(degree));
        ++i;
      }
      cycle.push_back(static_cast<Point>(v));
    }
    for (std::size_t a = 0; a < cycle.size(); ++a)
      for (std::size_t b = a + 1; b < cycle.size(); ++b)
        if (cycle[a] == cycle[b]) throw ParseError("cycle notation: repeated point in cycle");
    cycles.push_back(std::move(cycle));
    skip_ws();
  }
  Permutation result(degree);
  for (auto it = cycles.rbegin(); it != cycles.rend(); ++it) {
    std::vector<Point> img(degree);
    for (Point x = 0; x < degree; ++x) img[x] = x;
    const auto& c = *it;
    for (std::size_t k = 0; k < c.size(); ++k) img[c[k]] = c[(k + 1) % c.size()];
    result = Permutation::unchecked(std::move(img)) * result;
  }
  return result;
}

// Group-spec text format:
//   degree: 5
//   (0 1 2 3 4)
//   (0 1)
// Blank lines and lines starting with '#' are ignored.
struct GroupSpec {
  std::size_t degree = 0;
  std::vector<Permutation> generators;
};

inline GroupSpec parse_group_spec(std::istream& in) {
  GroupSpec spec;
  bool have_degree = false;
  std::string line;
  while (std::getline(in, line)) {
    auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    line = line.substr(first);
    while (!line.empty() && std::isspace(static_cast<unsigned char>(line.back()))) line.pop_back();
    if (!have_degree) {
      if (line.rfind("degree:", 0) != 0) throw ParseError("group spec: first line must be 'degree: d'");
      try {
        spec.degree = std::stoull(line.substr(7));
      } catch (const std::exception&) {
        throw ParseError("group spec: bad degree line");
      }
      have_degree = true;
      continue;
    }
    spec.generators.push_back(parse_cycles(line, spec.degree));
  }
  if (!have_degree) throw ParseError("group spec: missing 'degree: d' header");
  return spec;
}

inline GroupSpec parse_group_spec(const std::string& text) {
  std::istringstream in(text);
  return parse_group_spec(in);
}

inline std::string format_group_spec(const GroupSpec& spec) {
  std::string out = "degree: " + std::to_string(spec.degree) + "\n";
  for (const auto& g : spec.generators) out += format_cycles(g) + "\n";
  return out;
}

}  // namespace coverlab
