#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace hgeom {

using PointId = std::uint32_t;
using LineId = std::uint32_t;

/// Sorted, duplicate-free point set. Used for long lines and rank queries.
using PointSet = std::vector<PointId>;

class GeometryError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Violation {
  enum class Kind { ShortLine, SharedPair, NestedLine, RankBelowThree };
  Kind kind;
  std::string message;
  // Offending line indices (empty for RankBelowThree).
  std::vector<LineId> lines;
};

/// A finite simple rank-3 geometry. Only lines with at least three points
/// are stored; every other pair of points spans an implicit two-point line.
///
/// Point ids are dense (0..point_count()-1). Construction checks referential
/// integrity only; the matroid invariants are reported by validate().
class Rank3Geometry {
 public:
  Rank3Geometry() = default;
  Rank3Geometry(std::vector<std::string> names, std::vector<PointSet> long_lines);

  std::size_t point_count() const { return names_.size(); }
  const std::string& name(PointId p) const;
  const std::vector<std::string>& names() const { return names_; }
  std::optional<PointId> find(std::string_view name) const;
  PointId require(std::string_view name) const;

  const std::vector<PointSet>& long_lines() const { return lines_; }
  std::span<const LineId> lines_through(PointId p) const;
  std::size_t degree(PointId p) const { return lines_through(p).size(); }

  /// Index of the (first) long line containing both points, if any.
  std::optional<LineId> line_index(PointId a, PointId b) const;

  bool contains(PointId p) const { return p < names_.size(); }

 private:
  std::vector<std::string> names_;
  std::vector<PointSet> lines_;
  std::vector<std::vector<LineId>> incidence_;
  std::vector<std::int32_t> pair_line_;  // n*n, -1 when no long line
  std::unordered_map<std::string, PointId> by_name_;
};

std::vector<Violation> validate(const Rank3Geometry& geom);

int rank(const Rank3Geometry& geom, std::span<const PointId> points);
bool is_independent(const Rank3Geometry& geom, std::span<const PointId> points);

/// Closure of {a, b}: the long line through both, else the pair itself.
PointSet line_through(const Rank3Geometry& geom, PointId a, PointId b);

/// Removes p. Lines that drop below three points become implicit.
Rank3Geometry delete_point(const Rank3Geometry& geom, PointId p);

/// A bijection g1 -> g2 (indexed by g1 point id) mapping long lines onto
/// long lines, or nullopt when none exists.
std::optional<std::vector<PointId>> are_isomorphic(const Rank3Geometry& g1,
                                                   const Rank3Geometry& g2);

/// Checks that `map` is a bijection carrying long lines onto long lines.
bool is_isomorphism(const Rank3Geometry& g1, const Rank3Geometry& g2,
                    std::span<const PointId> map);

/// Builds a set from an arbitrary list (sorts, removes duplicates).
PointSet make_set(std::vector<PointId> points);

}  // namespace hgeom
