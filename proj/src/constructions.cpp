#include "hgeom/constructions.hpp"

#include <set>
#include <stdexcept>

namespace hgeom {

namespace {
constexpr std::array<const char*, 3> kFamilyPrefix = {"A", "B", "C"};
}

int GainGraphK3::tail(Family f) {
  switch (f) {
    case Family::A: return 1;
    case Family::B: return 1;
    case Family::C: return 2;
  }
  return 0;
}

int GainGraphK3::head(Family f) {
  switch (f) {
    case Family::A: return 2;
    case Family::B: return 3;
    case Family::C: return 3;
  }
  return 0;
}

bool GainGraphK3::is_balanced(const std::vector<OrientedEdge>& circle) const {
  if (circle.size() < 2) throw std::invalid_argument("a circle needs at least two edges");
  std::set<int> visited;
  for (std::size_t k = 0; k < circle.size(); ++k) {
    const auto& e = circle[k];
    const auto& next = circle[(k + 1) % circle.size()];
    if (head(e) != tail(next)) throw std::invalid_argument("edges do not form a closed path");
    if (!visited.insert(tail(e)).second) throw std::invalid_argument("path is not simple");
    if (e.edge.gain.coords.size() != group_.factors().size()) {
      throw std::invalid_argument("gain is not an element of the group");
    }
  }
  auto sum = group_.zero();
  for (const auto& e : circle) {
    sum = group_.add(sum, e.reversed ? group_.neg(e.edge.gain) : e.edge.gain);
  }
  return sum == group_.zero();
}

std::string lift_point_name(const FiniteAbelianGroup& g, Family f, const GroupElement& e) {
  return std::string(kFamilyPrefix[static_cast<int>(f)]) + "_" + g.render(e);
}

Rank3Geometry lift0(const FiniteAbelianGroup& g) {
  const int n = g.order();
  std::vector<std::string> names;
  for (int f = 0; f < 3; ++f) {
    for (int i = 0; i < n; ++i) names.push_back(lift_point_name(g, Family(f), g.element(i)));
  }
  names.push_back("D");
  const auto d = static_cast<PointId>(3 * n);
  auto id = [n](Family f, int idx) { return static_cast<PointId>(static_cast<int>(f) * n + idx); };

  std::vector<PointSet> lines;
  for (int f = 0; f < 3; ++f) {
    PointSet cls;
    for (int i = 0; i < n; ++i) cls.push_back(id(Family(f), i));
    cls.push_back(d);
    lines.push_back(std::move(cls));
  }
  // Balanced triangles: A_g (1->2), C_h (2->3), B_{g+h} reversed (3->1).
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const int k = g.index(g.add(g.element(i), g.element(j)));
      lines.push_back(make_set({id(Family::A, i), id(Family::B, k), id(Family::C, j)}));
    }
  }
  return Rank3Geometry(std::move(names), std::move(lines));
}

Rank3Geometry lift(const FiniteAbelianGroup& g) {
  auto full = lift0(g);
  return delete_point(full, full.require("D"));
}

Rank3Geometry m_matroid(int n) {
  if (n < 2) throw std::invalid_argument("M(n) needs n >= 2");
  std::vector<std::string> names;
  for (int i = 0; i < n; ++i) {
    names.push_back("a_" + std::to_string(i));
    names.push_back("b_" + std::to_string(i));
  }
  names.push_back("c_0");
  names.push_back("c_1");
  names.push_back("d");
  auto a = [](int i) { return static_cast<PointId>(2 * i); };
  auto b = [n](int i) { return static_cast<PointId>(2 * (i % n) + 1); };
  const auto c0 = static_cast<PointId>(2 * n);
  const auto c1 = c0 + 1;
  const auto d = c0 + 2;

  std::vector<PointSet> lines;
  PointSet as, bs;
  for (int i = 0; i < n; ++i) {
    as.push_back(a(i));
    bs.push_back(b(i));
  }
  as.push_back(d);
  bs.push_back(d);
  lines.push_back(make_set(as));
  lines.push_back(make_set(bs));
  lines.push_back({c0, c1, d});
  for (int i = 0; i < n; ++i) lines.push_back(make_set({a(i), b(i), c0}));
  for (int i = 0; i < n; ++i) lines.push_back(make_set({a(i), b(i + 1), c1}));
  return Rank3Geometry(std::move(names), std::move(lines));
}

MnEmbedding embedding_mn(int n) {
  MnEmbedding out{m_matroid(n), lift0(FiniteAbelianGroup::cyclic(n)), {}, 0};
  const auto& src = out.source;
  const auto& dst = out.target;
  out.map.resize(src.point_count());
  for (PointId p = 0; p < src.point_count(); ++p) {
    const auto& name = src.name(p);
    std::string image = name == "d" ? "D" : std::string(1, char(name[0] - 'a' + 'A')) + name.substr(1);
    out.map[p] = dst.require(image);
  }
  const auto m = src.point_count();
  for (PointId x = 0; x < m; ++x) {
    for (PointId y = x + 1; y < m; ++y) {
      for (PointId z = y + 1; z < m; ++z) {
        const std::array<PointId, 3> s{x, y, z};
        const std::array<PointId, 3> t{out.map[x], out.map[y], out.map[z]};
        if (rank(src, s) != rank(dst, t)) {
          throw std::logic_error("M(" + std::to_string(n) + ") triple {" + src.name(x) + "," +
                                 src.name(y) + "," + src.name(z) + "} changes rank under the map");
        }
        ++out.triples_checked;
      }
    }
  }
  return out;
}

}  // namespace hgeom
