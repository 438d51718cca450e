#pragma once

#include <array>
#include <string>
#include <vector>

#include "hgeom/geometry.hpp"
#include "hgeom/group.hpp"

namespace hgeom {

/// Edge classes of K3 with the fixed orientation e1: 1->2, e3: 2->3,
/// e2: 1->3, so head(e1) = tail(e3) and head(e2) = head(e3).
/// The lift-matroid points A_g, B_g, C_g are the edges (g, e1), (g, e2), (g, e3).
enum class Family { A = 0, B = 1, C = 2 };

struct GainEdge {
  Family family;
  GroupElement gain;
};

struct OrientedEdge {
  GainEdge edge;
  bool reversed = false;
};

class GainGraphK3 {
 public:
  explicit GainGraphK3(FiniteAbelianGroup group) : group_(std::move(group)) {}
  const FiniteAbelianGroup& group() const { return group_; }

  static int tail(Family f);
  static int head(Family f);
  static int tail(const OrientedEdge& e) { return e.reversed ? head(e.edge.family) : tail(e.edge.family); }
  static int head(const OrientedEdge& e) { return e.reversed ? tail(e.edge.family) : head(e.edge.family); }

  /// Gain sum along the circle (reversed edges contribute the inverse) is zero.
  /// Throws std::invalid_argument when the edges do not form a simple closed path.
  bool is_balanced(const std::vector<OrientedEdge>& circle) const;

 private:
  FiniteAbelianGroup group_;
};

std::string lift_point_name(const FiniteAbelianGroup& g, Family f, const GroupElement& e);

/// Complete lift matroid L0(G K3): points A_g, B_g, C_g (g in G) and D.
Rank3Geometry lift0(const FiniteAbelianGroup& g);

/// Lift matroid L(G K3) = L0(G K3) with D deleted.
Rank3Geometry lift(const FiniteAbelianGroup& g);

/// M(n): points a_0, b_0, ..., a_{n-1}, b_{n-1}, c_0, c_1, d.
Rank3Geometry m_matroid(int n);

/// The identification M(n) -> L0(Z_n K3) (a_i -> A_i, b_i -> B_i, c_j -> C_j,
/// d -> D), verified on every triple. Throws std::logic_error on mismatch.
struct MnEmbedding {
  Rank3Geometry source;
  Rank3Geometry target;
  std::vector<PointId> map;  // indexed by source id
  std::size_t triples_checked = 0;
};
MnEmbedding embedding_mn(int n);

}  // namespace hgeom
