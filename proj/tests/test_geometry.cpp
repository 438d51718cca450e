#include <doctest.h>

#include <numeric>

#include "hgeom/constructions.hpp"
#include "support.hpp"

using namespace hgeom;
using namespace hgeom::testing;

namespace {

Rank3Geometry z3() { return lift0(FiniteAbelianGroup::cyclic(3)); }

bool has_kind(const std::vector<Violation>& v, Violation::Kind k) {
  return std::any_of(v.begin(), v.end(), [&](const Violation& x) { return x.kind == k; });
}

std::vector<Rank3Geometry> fixtures() {
  return {m_matroid(2), m_matroid(3), m_matroid(4), lift0(FiniteAbelianGroup::cyclic(2)),
          lift0(FiniteAbelianGroup::cyclic(3)), lift(FiniteAbelianGroup::cyclic(3)),
          lift(FiniteAbelianGroup::cyclic(4)), lift0(FiniteAbelianGroup({2, 2}))};
}

}  // namespace

TEST_SUITE("geometry") {
  TEST_CASE("validate: examples") {
    CHECK(validate(m_matroid(2)).empty());
    CHECK(validate(m_matroid(4)).empty());

    const Rank3Geometry bad({"1", "2", "3", "4", "5"}, {{0, 1, 2}, {0, 1, 3}});
    const auto v = validate(bad);
    REQUIRE(has_kind(v, Violation::Kind::SharedPair));
    CHECK(v.front().message.find("share 2 points") != std::string::npos);
  }

  TEST_CASE("validate: nested, short and degenerate geometries") {
    CHECK(has_kind(validate(Rank3Geometry({"a", "b", "c", "d"}, {{0, 1, 2}, {0, 1, 2, 3}})),
                   Violation::Kind::NestedLine));
    CHECK(has_kind(validate(Rank3Geometry({"a", "b", "c", "d"}, {{0, 1}})), Violation::Kind::ShortLine));
    CHECK(has_kind(validate(Rank3Geometry({"a", "b", "c", "d"}, {{0, 1, 2, 3}})),
                   Violation::Kind::RankBelowThree));
    CHECK_THROWS_AS(Rank3Geometry({"a", "a", "b"}, {}), GeometryError);
    CHECK_THROWS_AS(Rank3Geometry({"a", "b", "c"}, {{0, 1, 7}}), GeometryError);
  }

  TEST_CASE("rank: examples") {
    const auto g = z3();
    CHECK(rank(g, ids(g, {"A_0", "B_0", "C_0"})) == 2);
    CHECK(rank(g, std::vector<PointId>{}) == 0);
    // Oracle: scan the full line list.
    const auto s = ids(g, {"A_0", "A_1", "B_0"});
    CHECK(rank(g, s) == oracle_rank(line_sets(g), {s.begin(), s.end()}));
    CHECK(rank(g, s) == 3);
    CHECK_THROWS_AS(rank(g, std::vector<PointId>{99}), GeometryError);
  }

  TEST_CASE("is_independent: examples") {
    const auto g = z3();
    CHECK_FALSE(is_independent(g, ids(g, {"A_0", "A_1", "D"})));
    CHECK(is_independent(g, ids(g, {"A_0"})));
    const auto s = ids(g, {"A_0", "B_1", "C_0"});
    CHECK(is_independent(g, s));
    CHECK(oracle_rank(line_sets(g), {s.begin(), s.end()}) == 3);
  }

  TEST_CASE("line_through: examples") {
    const auto g = z3();
    CHECK(names_of(g, line_through(g, g.require("A_0"), g.require("D"))) ==
          std::set<std::string>{"A_0", "A_1", "A_2", "D"});
    CHECK(names_of(g, line_through(g, g.require("A_0"), g.require("B_1"))) ==
          std::set<std::string>{"A_0", "B_1", "C_1"});
    CHECK(names_of(g, line_through(g, g.require("A_0"), g.require("B_2"))) ==
          std::set<std::string>{"A_0", "B_2", "C_2"});
    CHECK_THROWS_AS(line_through(g, 0, 0), GeometryError);
    // Implicit two-point line.
    const auto m3 = m_matroid(3);
    CHECK(names_of(m3, line_through(m3, m3.require("a_0"), m3.require("b_2"))) ==
          std::set<std::string>{"a_0", "b_2"});
  }

  TEST_CASE("delete_point: examples") {
    const auto l3 = delete_point(z3(), z3().require("D"));
    CHECK(l3.point_count() == 9);
    CHECK(l3.long_lines().size() == 12);
    CHECK(validate(l3).empty());

    const auto m2 = m_matroid(2);
    const auto fano_minus = delete_point(m2, m2.require("d"));
    CHECK(fano_minus.point_count() == 6);
    CHECK(fano_minus.long_lines().size() == 4);

    const auto z2 = lift0(FiniteAbelianGroup::cyclic(2));
    const auto l2 = delete_point(z2, z2.require("D"));
    CHECK(l2.point_count() == 6);
    CHECK(l2.long_lines().size() == 4);
    CHECK_FALSE(l2.find("D").has_value());
    CHECK_THROWS_AS(delete_point(z2, 42), GeometryError);
  }

  TEST_CASE("are_isomorphic: examples") {
    const auto m2 = m_matroid(2);
    const auto z2 = lift0(FiniteAbelianGroup::cyclic(2));
    const auto f = are_isomorphic(m2, z2);
    REQUIRE(f.has_value());
    CHECK(is_isomorphism(m2, z2, *f));

    const auto g = z3();
    const auto id = are_isomorphic(g, g);
    REQUIRE(id.has_value());
    CHECK(is_isomorphism(g, g, *id));

    CHECK_FALSE(are_isomorphic(m_matroid(3), z3()).has_value());
    // Same point and line counts (13, 19) but non-isomorphic groups.
    CHECK_FALSE(
        are_isomorphic(lift0(FiniteAbelianGroup::cyclic(4)), lift0(FiniteAbelianGroup({2, 2}))).has_value());
  }

  TEST_CASE("property: rank agrees with the definition on every subset") {
    for (const auto& g : fixtures()) {
      const auto n = g.point_count();
      if (n > 12) continue;
      const auto lines = line_sets(g);
      for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
        std::vector<PointId> s;
        for (PointId p = 0; p < n; ++p) {
          if (mask >> p & 1) s.push_back(p);
        }
        REQUIRE(rank(g, s) == oracle_rank(lines, {s.begin(), s.end()}));
      }
    }
  }

  TEST_CASE("property: rank is monotone and submodular (geometries with <= 12 points)") {
    for (const auto& g : fixtures()) {
      const auto n = g.point_count();
      if (n > 12) continue;
      std::vector<int> r(1u << n);
      for (std::uint32_t mask = 0; mask < r.size(); ++mask) {
        std::vector<PointId> s;
        for (PointId p = 0; p < n; ++p) {
          if (mask >> p & 1) s.push_back(p);
        }
        r[mask] = rank(g, s);
      }
      bool ok = true;
      for (std::uint32_t a = 0; a < r.size() && ok; ++a) {
        for (std::uint32_t b = 0; b < r.size(); ++b) {
          if ((a & b) == a && r[a] > r[b]) ok = false;
          if (r[a] + r[b] < r[a | b] + r[a & b]) ok = false;
        }
      }
      CHECK(ok);
    }
  }

  TEST_CASE("property: long lines pairwise meet in at most one point") {
    for (const auto& g : fixtures()) {
      const auto& ls = g.long_lines();
      for (std::size_t i = 0; i < ls.size(); ++i) {
        for (std::size_t j = i + 1; j < ls.size(); ++j) {
          PointSet common;
          std::set_intersection(ls[i].begin(), ls[i].end(), ls[j].begin(), ls[j].end(),
                                std::back_inserter(common));
          REQUIRE(common.size() <= 1);
        }
      }
    }
  }

  TEST_CASE("property: line_through is symmetric and contains both points") {
    for (const auto& g : fixtures()) {
      const auto n = static_cast<PointId>(g.point_count());
      for (PointId a = 0; a < n; ++a) {
        for (PointId b = a + 1; b < n; ++b) {
          const auto l = line_through(g, a, b);
          REQUIRE(l == line_through(g, b, a));
          REQUIRE(std::binary_search(l.begin(), l.end(), a));
          REQUIRE(std::binary_search(l.begin(), l.end(), b));
        }
      }
    }
  }

  TEST_CASE("property: isomorphism is reflexive, symmetric and composes") {
    const auto fx = fixtures();
    for (const auto& g : fx) {
      const auto id = are_isomorphic(g, g);
      REQUIRE(id.has_value());
      CHECK(is_isomorphism(g, g, *id));
    }
    for (std::size_t i = 0; i < fx.size(); ++i) {
      for (std::size_t j = 0; j < fx.size(); ++j) {
        const auto f = are_isomorphic(fx[i], fx[j]);
        const auto b = are_isomorphic(fx[j], fx[i]);
        CHECK(f.has_value() == b.has_value());
        if (f) CHECK(is_isomorphism(fx[i], fx[j], *f));
      }
    }
    // M(2) -> lift0(Z_2) -> M(2) composed.
    const auto m2 = m_matroid(2);
    const auto z2 = lift0(FiniteAbelianGroup::cyclic(2));
    const auto f = *are_isomorphic(m2, z2);
    const auto b = *are_isomorphic(z2, m2);
    std::vector<PointId> comp(f.size());
    for (std::size_t k = 0; k < f.size(); ++k) comp[k] = b[f[k]];
    CHECK(is_isomorphism(m2, m2, comp));
  }

  TEST_CASE("is_isomorphism rejects non-bijections") {
    const auto g = z3();
    std::vector<PointId> constant(g.point_count(), 0);
    CHECK_FALSE(is_isomorphism(g, g, constant));
    std::vector<PointId> swap(g.point_count());
    std::iota(swap.begin(), swap.end(), 0);
    std::swap(swap[g.require("A_0")], swap[g.require("D")]);
    CHECK_FALSE(is_isomorphism(g, g, swap));
  }
}
