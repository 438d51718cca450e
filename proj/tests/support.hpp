#pragma once

#include <algorithm>
#include <set>
#include <string>
#include <vector>

#include "hgeom/geometry.hpp"

namespace hgeom::testing {

inline std::vector<PointId> ids(const Rank3Geometry& g, std::initializer_list<const char*> names) {
  std::vector<PointId> out;
  for (const auto* n : names) out.push_back(g.require(n));
  return out;
}

inline std::set<std::string> names_of(const Rank3Geometry& g, const std::vector<PointId>& pts) {
  std::set<std::string> out;
  for (auto p : pts) out.insert(g.name(p));
  return out;
}

/// Long lines as sets of names, for comparison with hand-built line lists.
inline std::set<std::set<std::string>> line_names(const Rank3Geometry& g) {
  std::set<std::set<std::string>> out;
  for (const auto& l : g.long_lines()) out.insert(names_of(g, l));
  return out;
}

/// Rank straight from the definition: a set of two or more points has rank 2
/// iff it has exactly two points or fits inside one long line.
inline int oracle_rank(const std::vector<std::set<PointId>>& lines, const std::set<PointId>& s) {
  if (s.size() <= 1) return static_cast<int>(s.size());
  if (s.size() == 2) return 2;
  for (const auto& l : lines) {
    if (std::includes(l.begin(), l.end(), s.begin(), s.end())) return 2;
  }
  return 3;
}

inline std::vector<std::set<PointId>> line_sets(const Rank3Geometry& g) {
  std::vector<std::set<PointId>> out;
  for (const auto& l : g.long_lines()) out.emplace_back(l.begin(), l.end());
  return out;
}

}  // namespace hgeom::testing
