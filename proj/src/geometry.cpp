#include "hgeom/geometry.hpp"

#include <algorithm>
#include <map>
#include <numeric>

namespace hgeom {

PointSet make_set(std::vector<PointId> points) {
  std::sort(points.begin(), points.end());
  points.erase(std::unique(points.begin(), points.end()), points.end());
  return points;
}

Rank3Geometry::Rank3Geometry(std::vector<std::string> names, std::vector<PointSet> long_lines)
    : names_(std::move(names)), lines_(std::move(long_lines)) {
  const auto n = names_.size();
  for (PointId p = 0; p < n; ++p) {
    if (!by_name_.emplace(names_[p], p).second) {
      throw GeometryError("duplicate point name '" + names_[p] + "'");
    }
  }
  incidence_.assign(n, {});
  pair_line_.assign(n * n, -1);
  for (LineId l = 0; l < lines_.size(); ++l) {
    auto& line = lines_[l];
    std::sort(line.begin(), line.end());
    if (std::adjacent_find(line.begin(), line.end()) != line.end()) {
      throw GeometryError("line " + std::to_string(l) + " repeats a point");
    }
    for (PointId p : line) {
      if (p >= n) {
        throw GeometryError("line " + std::to_string(l) + " references unknown point " +
                            std::to_string(p));
      }
      incidence_[p].push_back(l);
    }
    for (std::size_t i = 0; i < line.size(); ++i) {
      for (std::size_t j = i + 1; j < line.size(); ++j) {
        auto& a = pair_line_[line[i] * n + line[j]];
        auto& b = pair_line_[line[j] * n + line[i]];
        if (a < 0) a = static_cast<std::int32_t>(l);
        if (b < 0) b = static_cast<std::int32_t>(l);
      }
    }
  }
}

const std::string& Rank3Geometry::name(PointId p) const {
  if (!contains(p)) throw GeometryError("unknown point id " + std::to_string(p));
  return names_[p];
}

std::optional<PointId> Rank3Geometry::find(std::string_view name) const {
  auto it = by_name_.find(std::string(name));
  if (it == by_name_.end()) return std::nullopt;
  return it->second;
}

PointId Rank3Geometry::require(std::string_view name) const {
  auto p = find(name);
  if (!p) throw GeometryError("unknown point '" + std::string(name) + "'");
  return *p;
}

std::span<const LineId> Rank3Geometry::lines_through(PointId p) const {
  if (!contains(p)) throw GeometryError("unknown point id " + std::to_string(p));
  return incidence_[p];
}

std::optional<LineId> Rank3Geometry::line_index(PointId a, PointId b) const {
  if (!contains(a) || !contains(b)) {
    throw GeometryError("unknown point id " + std::to_string(contains(a) ? b : a));
  }
  auto l = pair_line_[a * point_count() + b];
  if (l < 0 || a == b) return std::nullopt;
  return static_cast<LineId>(l);
}

namespace {

std::string line_text(const Rank3Geometry& g, LineId l) {
  std::string out = "{";
  for (auto p : g.long_lines()[l]) {
    if (out.size() > 1) out += ",";
    out += g.name(p);
  }
  return out + "}";
}

// First triple not contained in a long line, assuming simplicity.
bool has_independent_triple(const Rank3Geometry& g) {
  const auto n = g.point_count();
  if (n < 3) return false;
  for (PointId a = 0; a < n; ++a) {
    for (PointId b = a + 1; b < n; ++b) {
      auto l = g.line_index(a, b);
      if (!l) return true;
      const auto& line = g.long_lines()[*l];
      if (line.size() < n) {
        for (PointId c = 0; c < n; ++c) {
          if (!std::binary_search(line.begin(), line.end(), c)) {
            // {a, b, c} is independent unless another long line holds it.
            bool covered = false;
            for (auto m : g.lines_through(c)) {
              const auto& other = g.long_lines()[m];
              if (std::binary_search(other.begin(), other.end(), a) &&
                  std::binary_search(other.begin(), other.end(), b)) {
                covered = true;
                break;
              }
            }
            if (!covered) return true;
          }
        }
      }
    }
  }
  return false;
}

}  // namespace

std::vector<Violation> validate(const Rank3Geometry& geom) {
  std::vector<Violation> out;
  const auto& lines = geom.long_lines();
  for (LineId l = 0; l < lines.size(); ++l) {
    if (lines[l].size() < 3) {
      out.push_back({Violation::Kind::ShortLine,
                     "line " + line_text(geom, l) + " has fewer than 3 points", {l}});
    }
  }
  for (LineId l = 0; l < lines.size(); ++l) {
    for (LineId m = l + 1; m < lines.size(); ++m) {
      PointSet common;
      std::set_intersection(lines[l].begin(), lines[l].end(), lines[m].begin(), lines[m].end(),
                            std::back_inserter(common));
      if (common.size() < 2) continue;
      const bool nested = common.size() == lines[l].size() || common.size() == lines[m].size();
      out.push_back({nested ? Violation::Kind::NestedLine : Violation::Kind::SharedPair,
                     (nested ? "line nested in another: " : "lines share 2 points: ") +
                         line_text(geom, l) + " and " + line_text(geom, m),
                     {l, m}});
    }
  }
  if (!has_independent_triple(geom)) {
    out.push_back({Violation::Kind::RankBelowThree,
                   "no 3-point subset outside every long line (rank < 3)", {}});
  }
  return out;
}

int rank(const Rank3Geometry& geom, std::span<const PointId> points) {
  for (auto p : points) {
    if (!geom.contains(p)) throw GeometryError("unknown point id " + std::to_string(p));
  }
  auto s = make_set({points.begin(), points.end()});
  if (s.size() <= 2) return static_cast<int>(s.size());
  auto l = geom.line_index(s[0], s[1]);
  if (!l) return 3;
  const auto& line = geom.long_lines()[*l];
  for (auto p : s) {
    if (!std::binary_search(line.begin(), line.end(), p)) return 3;
  }
  return 2;
}

bool is_independent(const Rank3Geometry& geom, std::span<const PointId> points) {
  auto s = make_set({points.begin(), points.end()});
  return rank(geom, s) == static_cast<int>(s.size());
}

PointSet line_through(const Rank3Geometry& geom, PointId a, PointId b) {
  if (a == b) throw GeometryError("line_through needs two distinct points");
  auto l = geom.line_index(a, b);
  if (l) return geom.long_lines()[*l];
  return make_set({a, b});
}

Rank3Geometry delete_point(const Rank3Geometry& geom, PointId p) {
  if (!geom.contains(p)) throw GeometryError("unknown point id " + std::to_string(p));
  std::vector<std::string> names;
  for (PointId q = 0; q < geom.point_count(); ++q) {
    if (q != p) names.push_back(geom.name(q));
  }
  auto shift = [p](PointId q) { return q > p ? q - 1 : q; };
  std::vector<PointSet> lines;
  for (const auto& line : geom.long_lines()) {
    PointSet kept;
    for (auto q : line) {
      if (q != p) kept.push_back(shift(q));
    }
    if (kept.size() >= 3) lines.push_back(std::move(kept));
  }
  return Rank3Geometry(std::move(names), std::move(lines));
}

bool is_isomorphism(const Rank3Geometry& g1, const Rank3Geometry& g2,
                    std::span<const PointId> map) {
  if (g1.point_count() != g2.point_count() || map.size() != g1.point_count()) return false;
  if (g1.long_lines().size() != g2.long_lines().size()) return false;
  std::vector<bool> hit(g2.point_count(), false);
  for (auto q : map) {
    if (q >= g2.point_count() || hit[q]) return false;
    hit[q] = true;
  }
  std::vector<PointSet> image;
  for (const auto& line : g1.long_lines()) {
    PointSet mapped;
    for (auto p : line) mapped.push_back(map[p]);
    image.push_back(make_set(std::move(mapped)));
  }
  auto target = g2.long_lines();
  std::sort(image.begin(), image.end());
  std::sort(target.begin(), target.end());
  return image == target;
}

namespace {

class IsoSearch {
 public:
  IsoSearch(const Rank3Geometry& g1, const Rank3Geometry& g2) : g1_(g1), g2_(g2) {
    const auto n = g1.point_count();
    map_.assign(n, kNone);
    used_.assign(n, false);
    line_map_.assign(g1.long_lines().size(), kNone);
    line_rev_.assign(g2.long_lines().size(), kNone);
    profile1_ = profiles(g1);
    profile2_ = profiles(g2);
    order_ = connectivity_order();
  }

  std::optional<std::vector<PointId>> run() {
    if (extend(0)) return map_;
    return std::nullopt;
  }

 private:
  static constexpr PointId kNone = static_cast<PointId>(-1);

  // Sorted sizes of incident long lines; isomorphisms preserve it.
  static std::vector<std::vector<std::size_t>> profiles(const Rank3Geometry& g) {
    std::vector<std::vector<std::size_t>> out(g.point_count());
    for (PointId p = 0; p < g.point_count(); ++p) {
      for (auto l : g.lines_through(p)) out[p].push_back(g.long_lines()[l].size());
      std::sort(out[p].begin(), out[p].end());
    }
    return out;
  }

  // Highest degree first, then points sharing the most lines with those placed.
  std::vector<PointId> connectivity_order() const {
    const auto n = g1_.point_count();
    std::vector<PointId> order;
    std::vector<bool> placed(n, false);
    std::vector<std::size_t> links(n, 0);
    for (std::size_t k = 0; k < n; ++k) {
      PointId best = kNone;
      for (PointId p = 0; p < n; ++p) {
        if (placed[p]) continue;
        if (best == kNone || links[p] > links[best] ||
            (links[p] == links[best] && g1_.degree(p) > g1_.degree(best))) {
          best = p;
        }
      }
      placed[best] = true;
      order.push_back(best);
      for (auto l : g1_.lines_through(best)) {
        for (auto q : g1_.long_lines()[l]) ++links[q];
      }
    }
    return order;
  }

  bool extend(std::size_t depth) {
    if (depth == order_.size()) return true;
    const PointId u = order_[depth];
    for (PointId cand = 0; cand < g2_.point_count(); ++cand) {
      if (used_[cand] || profile1_[u] != profile2_[cand]) continue;
      std::vector<LineId> bound;
      if (consistent(u, cand, depth, bound)) {
        map_[u] = cand;
        used_[cand] = true;
        if (extend(depth + 1)) return true;
        map_[u] = kNone;
        used_[cand] = false;
      }
      for (auto l : bound) {
        line_rev_[line_map_[l]] = kNone;
        line_map_[l] = kNone;
      }
    }
    return false;
  }

  bool consistent(PointId u, PointId cand, std::size_t depth, std::vector<LineId>& bound) {
    for (std::size_t k = 0; k < depth; ++k) {
      const PointId v = order_[k];
      auto l1 = g1_.line_index(u, v);
      auto l2 = g2_.line_index(cand, map_[v]);
      if (l1.has_value() != l2.has_value()) return false;
      if (!l1) continue;
      if (line_map_[*l1] == kNone && line_rev_[*l2] == kNone) {
        if (g1_.long_lines()[*l1].size() != g2_.long_lines()[*l2].size()) return false;
        line_map_[*l1] = *l2;
        line_rev_[*l2] = *l1;
        bound.push_back(*l1);
      } else if (line_map_[*l1] != *l2) {
        return false;
      }
    }
    return true;
  }

  const Rank3Geometry& g1_;
  const Rank3Geometry& g2_;
  std::vector<PointId> map_;
  std::vector<bool> used_;
  std::vector<PointId> line_map_;
  std::vector<PointId> line_rev_;
  std::vector<std::vector<std::size_t>> profile1_, profile2_;
  std::vector<PointId> order_;
};

}  // namespace

std::optional<std::vector<PointId>> are_isomorphic(const Rank3Geometry& g1,
                                                   const Rank3Geometry& g2) {
  if (g1.point_count() != g2.point_count()) return std::nullopt;
  if (g1.long_lines().size() != g2.long_lines().size()) return std::nullopt;
  auto sizes = [](const Rank3Geometry& g) {
    std::vector<std::size_t> s;
    for (const auto& l : g.long_lines()) s.push_back(l.size());
    std::sort(s.begin(), s.end());
    return s;
  };
  if (sizes(g1) != sizes(g2)) return std::nullopt;
  auto result = IsoSearch(g1, g2).run();
  if (result && !is_isomorphism(g1, g2, *result)) return std::nullopt;
  return result;
}

}  // namespace hgeom
