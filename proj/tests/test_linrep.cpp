#include <doctest.h>
#include <functional>

#include "hgeom/constructions.hpp"
#include "hgeom/linrep.hpp"
#include "support.hpp"

using namespace hgeom;
using namespace hgeom::testing;

namespace {

std::shared_ptr<const Field> gf(int p, int m = 1) { return std::make_shared<const Field>(p, m); }

std::shared_ptr<const Rank3Geometry> shared(Rank3Geometry g) {
  return std::make_shared<const Rank3Geometry>(std::move(g));
}

const std::vector<std::pair<int, int>> kSmallFields{{2, 1}, {3, 1}, {2, 2}, {5, 1}, {7, 1}, {2, 3}, {3, 2},
                                                    {11, 1}, {13, 1}, {2, 4}, {17, 1}, {19, 1}, {23, 1}, {5, 2}};

// Oracle search: points in id order, every PG point tried, full triple check
// against the rank definition at each step. No frame, no line restriction.
bool naive_representable(const Rank3Geometry& g, const Field& f) {
  const auto plane = projective_plane(f);
  const auto lines = line_sets(g);
  const auto n = g.point_count();
  std::vector<std::size_t> img(n);
  std::vector<bool> used(plane.size(), false);
  auto ok = [&](std::size_t k) {
    for (std::size_t i = 0; i < k; ++i) {
      for (std::size_t j = i + 1; j < k; ++j) {
        const bool dep = oracle_rank(lines, {static_cast<PointId>(i), static_cast<PointId>(j),
                                             static_cast<PointId>(k)}) == 2;
        if (dep != (det3(f, plane[img[i]], plane[img[j]], plane[img[k]]) == 0)) return false;
      }
    }
    return true;
  };
  std::function<bool(std::size_t)> go = [&](std::size_t k) {
    if (k == n) return true;
    for (std::size_t c = 0; c < plane.size(); ++c) {
      if (used[c]) continue;
      img[k] = c;
      if (!ok(k)) continue;
      used[c] = true;
      if (go(k + 1)) return true;
      used[c] = false;
    }
    return false;
  };
  return go(0);
}

}  // namespace

TEST_SUITE("linrep") {
  TEST_CASE("make_field: examples") {
    const Field f2(2, 1);
    CHECK(f2.size() == 2);
    CHECK(f2.add(1, 1) == 0);
    CHECK(f2.mul(1, 1) == 1);
    CHECK(Field(2, 2).modulus() == std::vector<int>{1, 1, 1});  // x^2 + x + 1
    CHECK(Field(3, 2).modulus() == std::vector<int>{1, 0, 1});  // x^2 + 1
    CHECK(Field(3, 2).modulus_text() == "x^2+1");
    CHECK_THROWS_AS(Field(4, 1), std::invalid_argument);
    CHECK_THROWS_AS(Field(2, 17), std::invalid_argument);
    CHECK(Field(2, 8).size() == 256);
  }

  TEST_CASE("property: the modulus is the lexicographically smallest monic irreducible") {
    // Oracle: a degree-m polynomial over GF(p) (m <= 3) is irreducible iff it
    // has no root.
    for (auto [p, m] : std::vector<std::pair<int, int>>{{2, 2}, {2, 3}, {3, 2}, {3, 3}, {5, 2}, {5, 3}, {7, 2}}) {
      auto eval = [&](const std::vector<int>& c, int x) {
        long long v = 0;
        for (auto k = c.size(); k-- > 0;) v = (v * x + c[k]) % p;
        return v;
      };
      std::vector<int> expect;
      int count = 1;
      for (int k = 0; k < m; ++k) count *= p;
      for (int idx = 0; idx < count && expect.empty(); ++idx) {
        // Higher coefficients most significant: idx enumerates c_{m-1}..c_0.
        std::vector<int> c(m + 1, 0);
        int t = idx;
        for (int k = 0; k < m; ++k) {
          c[k] = t % p;
          t /= p;
        }
        c[m] = 1;
        bool root = false;
        for (int x = 0; x < p; ++x) root = root || eval(c, x) == 0;
        if (!root) expect = c;
      }
      CHECK(Field(p, m).modulus() == expect);
    }
  }

  TEST_CASE("property: field axioms hold exhaustively for q <= 25") {
    for (auto [p, m] : kSmallFields) {
      const Field f(p, m);
      const auto q = static_cast<FieldElem>(f.size());
      CAPTURE(q);
      bool ok = true;
      for (FieldElem a = 0; a < q; ++a) {
        ok = ok && f.add(a, 0) == a && f.mul(a, 1) == a && f.add(a, f.neg(a)) == 0;
        if (a != 0) ok = ok && f.mul(a, f.inv(a)) == 1;
        for (FieldElem b = 0; b < q; ++b) {
          ok = ok && f.add(a, b) == f.add(b, a) && f.mul(a, b) == f.mul(b, a);
          for (FieldElem c = 0; c < q; ++c) {
            ok = ok && f.add(f.add(a, b), c) == f.add(a, f.add(b, c));
            ok = ok && f.mul(f.mul(a, b), c) == f.mul(a, f.mul(b, c));
            ok = ok && f.mul(a, f.add(b, c)) == f.add(f.mul(a, b), f.mul(a, c));
          }
        }
      }
      CHECK(ok);
      CHECK(f.order(f.primitive()) == static_cast<long long>(q) - 1);
      CHECK(f.pow(f.primitive(), q - 1) == 1);
    }
  }

  TEST_CASE("property: field axioms on sampled triples for large fields") {
    for (auto [p, m] : std::vector<std::pair<int, int>>{{2, 8}, {3, 5}, {251, 1}, {2, 16}}) {
      const Field f(p, m);
      const auto q = static_cast<std::uint64_t>(f.size());
      std::uint64_t s = 12345;
      auto next = [&] {
        s = s * 6364136223846793005ULL + 1442695040888963407ULL;
        return static_cast<FieldElem>((s >> 33) % q);
      };
      bool ok = true;
      for (int k = 0; k < 20000; ++k) {
        const auto a = next(), b = next(), c = next();
        ok = ok && f.mul(f.mul(a, b), c) == f.mul(a, f.mul(b, c));
        ok = ok && f.mul(a, f.add(b, c)) == f.add(f.mul(a, b), f.mul(a, c));
        ok = ok && f.add(f.add(a, b), c) == f.add(a, f.add(b, c));
        if (a != 0) ok = ok && f.mul(a, f.inv(a)) == 1;
      }
      CHECK(ok);
    }
  }

  TEST_CASE("mult_order: examples and property") {
    CHECK(mult_order(5, 6) == 2);
    CHECK(mult_order(2, 7) == 3);
    CHECK(mult_order(3, 2) == 1);
    CHECK_THROWS_AS(mult_order(2, 6), std::invalid_argument);
    for (long long n = 2; n <= 30; ++n) {
      for (long long p : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29}) {
        if (n % p == 0) continue;
        const int m = mult_order(p, n);
        long long v = 1;
        for (int j = 1; j <= m; ++j) {
          v = v * p % n;
          if (j < m) REQUIRE(v != 1 % n);
        }
        REQUIRE(v == 1 % n);
      }
    }
  }

  TEST_CASE("property: normalization is canonical (q <= 9)") {
    for (auto [p, m] : std::vector<std::pair<int, int>>{{2, 1}, {3, 1}, {2, 2}, {5, 1}, {7, 1}, {2, 3}, {3, 2}}) {
      const Field f(p, m);
      const auto q = static_cast<FieldElem>(f.size());
      std::vector<std::array<FieldElem, 3>> vs;
      for (FieldElem a = 0; a < q; ++a) {
        for (FieldElem b = 0; b < q; ++b) {
          for (FieldElem c = 0; c < q; ++c) {
            if (a || b || c) vs.push_back({a, b, c});
          }
        }
      }
      bool ok = true;
      for (const auto& u : vs) {
        const auto nu = ProjectivePoint::normalize(f, u);
        for (FieldElem k = 0; k < 3 && ok; ++k) {
          if (nu.coords[k] != 0) {
            ok = nu.coords[k] == 1;
            break;
          }
        }
        for (const auto& v : vs) {
          bool multiple = false;
          for (FieldElem s = 1; s < q; ++s) {
            multiple = multiple || (f.mul(s, u[0]) == v[0] && f.mul(s, u[1]) == v[1] && f.mul(s, u[2]) == v[2]);
          }
          ok = ok && multiple == (nu == ProjectivePoint::normalize(f, v));
        }
      }
      CHECK(ok);
      CHECK(projective_plane(f).size() == static_cast<std::size_t>(q) * q + q + 1);
    }
    CHECK_THROWS_AS(ProjectivePoint::normalize(Field(3, 1), {0, 0, 0}), std::invalid_argument);
  }

  TEST_CASE("additive_rep: examples") {
    const auto r = additive_rep(3, 1);
    const auto& g = *r.geometry;
    const auto& f = *r.field;
    const auto at = [&](const char* n) { return r.points[g.require(n)]; };
    // A_1 + C_0 = (1,1,1) = B_1.
    CHECK(at("B_1").coords == std::array<FieldElem, 3>{1, 1, 1});
    CHECK(det3(f, at("A_1"), at("B_1"), at("C_0")) == 0);
    CHECK(det3(f, at("A_0"), at("A_1"), at("D")) == 0);
    CHECK(at("A_0").coords == std::array<FieldElem, 3>{1, 0, 0});
    CHECK(at("A_1").coords == std::array<FieldElem, 3>{1, 0, 1});
    CHECK(at("D").coords == std::array<FieldElem, 3>{0, 0, 1});
    CHECK(verify_representation(g, r));
    CHECK(verify_representation(*additive_rep(2, 1).geometry, additive_rep(2, 1)));
  }

  TEST_CASE("verify_representation rejects bad assignments") {
    const auto r = additive_rep(2, 1);
    auto constant = r;
    std::fill(constant.points.begin(), constant.points.end(), ProjectivePoint{{1, 0, 0}});
    CHECK_FALSE(verify_representation(*r.geometry, constant));

    // The p = 2 vectors applied to lift0(Z_4) with g taken mod 2 collapse A_0, A_2.
    const auto z4 = lift0(FiniteAbelianGroup::cyclic(4));
    Representation folded{std::make_shared<const Rank3Geometry>(z4), r.field,
                          std::vector<ProjectivePoint>(z4.point_count())};
    for (int g = 0; g < 4; ++g) {
      const auto x = static_cast<FieldElem>(g % 2);
      folded.points[z4.require("A_" + std::to_string(g))] = {{1, 0, x}};
      folded.points[z4.require("B_" + std::to_string(g))] = {{1, 1, x}};
      folded.points[z4.require("C_" + std::to_string(g))] = {{0, 1, x}};
    }
    folded.points[z4.require("D")] = {{0, 0, 1}};
    CHECK_FALSE(verify_representation(z4, folded));

    auto short_rep = r;
    short_rep.points.pop_back();
    CHECK_FALSE(verify_representation(*r.geometry, short_rep));
  }

  TEST_CASE("multiplicative_rep: examples") {
    const auto r = multiplicative_rep(3, gf(7));
    const auto& f = *r.field;
    const auto& g = *r.geometry;
    // zeta has order 3 in GF(7)*.
    const auto a1 = r.points[g.require("A_1")].coords;
    CHECK(f.order(f.neg(a1[1])) == 3);
    // A-class lies in the plane of vanishing third coordinate.
    for (int i = 0; i < 3; ++i) CHECK(r.points[g.require("A_" + std::to_string(i))].coords[2] == 0);
    // Every balanced triangle has rank 2.
    for (int i = 0; i < 3; ++i) {
      for (int j = 0; j < 3; ++j) {
        CHECK(det3(f, r.points[g.require("A_" + std::to_string(i))],
                   r.points[g.require("B_" + std::to_string((i + j) % 3))],
                   r.points[g.require("C_" + std::to_string(j))]) == 0);
      }
    }
    CHECK(verify_representation(g, r));
    CHECK_THROWS_AS(multiplicative_rep(3, gf(5)), std::invalid_argument);
  }

  TEST_CASE("property: explicit families always verify") {
    for (auto [p, k] : std::vector<std::pair<int, int>>{{2, 1}, {3, 1}, {5, 1}, {7, 1}, {2, 2}, {3, 2}, {2, 3}}) {
      const auto r = additive_rep(p, k);
      CHECK(verify_representation(*r.geometry, r));
    }
    for (int n = 2; n <= 12; ++n) {
      for (int p : {2, 3, 5, 7, 11, 13}) {
        if (n % p == 0) continue;
        const int m = mult_order(p, n);
        int q = 1;
        for (int k = 0; k < m; ++k) q *= p;
        if (q > 4096) continue;
        const auto r = multiplicative_rep(n, gf(p, m));
        CAPTURE(n);
        CAPTURE(p);
        CHECK(verify_representation(*r.geometry, r));
      }
    }
  }

  TEST_CASE("search_representation: examples") {
    const auto fano = shared(m_matroid(2));
    const auto f2 = search_representation(fano, gf(2));
    REQUIRE(f2.outcome == SearchOutcome::Found);
    CHECK(verify_representation(*fano, *f2.representation));
    CHECK(search_representation(fano, gf(3)).outcome == SearchOutcome::NoneExhaustive);
    const auto l3 = shared(lift(FiniteAbelianGroup::cyclic(3)));
    const auto r = search_representation(l3, gf(7));
    REQUIRE(r.outcome == SearchOutcome::Found);
    CHECK(verify_representation(*l3, *r.representation));
    CHECK(search_representation(shared(lift(FiniteAbelianGroup::cyclic(6))), gf(3, 2), 10).outcome ==
          SearchOutcome::BudgetExceeded);
    CHECK_THROWS_AS(search_representation(shared(Rank3Geometry({"a", "b", "c"}, {})), gf(2)),
                    std::invalid_argument);
  }

  TEST_CASE("property: search finds a representation whenever an explicit one exists (n <= 4)") {
    for (int n = 2; n <= 4; ++n) {
      const auto geom = shared(lift(FiniteAbelianGroup::cyclic(n)));
      for (int p : {2, 3, 5, 7}) {
        if (n % p == 0) continue;
        const auto field = gf(p, mult_order(p, n));
        const auto r = search_representation(geom, field);
        CAPTURE(n);
        CAPTURE(p);
        REQUIRE(r.outcome == SearchOutcome::Found);
        CHECK(verify_representation(*geom, *r.representation));
      }
    }
    for (auto [p, k] : std::vector<std::pair<int, int>>{{2, 1}, {3, 1}, {2, 2}}) {
      const auto explicit_rep = additive_rep(p, k);
      const auto r = search_representation(explicit_rep.geometry, explicit_rep.field);
      REQUIRE(r.outcome == SearchOutcome::Found);
      CHECK(verify_representation(*explicit_rep.geometry, *r.representation));
    }
  }

  TEST_CASE("property: search agrees with a brute-force oracle on small geometries") {
    const std::vector<Rank3Geometry> geoms{m_matroid(2), lift(FiniteAbelianGroup::cyclic(2)),
                                           lift0(FiniteAbelianGroup::cyclic(2)),
                                           Rank3Geometry({"a", "b", "c", "d", "e"}, {{0, 1, 2}, {2, 3, 4}}),
                                           Rank3Geometry({"a", "b", "c", "d", "e", "f"}, {{0, 1, 2}, {0, 3, 4}, {1, 3, 5}, {2, 4, 5}})};
    for (const auto& g : geoms) {
      for (auto [p, m] : std::vector<std::pair<int, int>>{{2, 1}, {3, 1}, {2, 2}}) {
        const auto field = gf(p, m);
        const auto r = search_representation(shared(g), field);
        CAPTURE(g.point_count());
        CAPTURE(field->size());
        CHECK((r.outcome == SearchOutcome::Found) == naive_representable(g, *field));
      }
    }
  }

  TEST_CASE("char_set_lift: examples") {
    const auto r6 = char_set_lift(6, 13, 2);
    CHECK(r6.predicted == std::vector<long long>{0, 5, 7, 11, 13});
    CHECK(render_set(r6.predicted) == "{0, 5, 7, 11, 13}");
    CHECK(r6.consistent());
    for (const auto& e : r6.evidence) {
      if (e.p == 5) CHECK(e.field_degree == 2);
      if (e.predicted) CHECK(e.constructive_verified);
      if (!e.predicted) {
        CHECK(e.searches.size() == 2);
        for (const auto& [m, o] : e.searches) CHECK(o == SearchOutcome::NoneExhaustive);
      }
    }
    CHECK(char_set_lift(2, 7, 1).predicted == std::vector<long long>{0, 3, 5, 7});
  }

  TEST_CASE("char_set_report: examples") {
    CHECK(char_set_report(5).chi_a_mn == std::vector<long long>{5});
    CHECK(char_set_report(6).chi_a_mn.empty());
    CHECK(char_set_report(6).chi_a_mn_text == "∅");
    CHECK(char_set_report(4).chi_a_lift == "{0, 2, 3, 5, ...}");
  }
}
