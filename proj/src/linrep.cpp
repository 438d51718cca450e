#include "hgeom/linrep.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

#include "hgeom/constructions.hpp"
#include "hgeom/group.hpp"

namespace hgeom {

ProjectivePoint ProjectivePoint::normalize(const Field& f, std::array<FieldElem, 3> v) {
  for (int k = 0; k < 3; ++k) {
    if (v[k] == 0) continue;
    const auto s = f.inv(v[k]);
    for (auto& c : v) c = f.mul(c, s);
    return {v};
  }
  throw std::invalid_argument("the zero vector is not a projective point");
}

FieldElem det3(const Field& f, const ProjectivePoint& a, const ProjectivePoint& b,
               const ProjectivePoint& c) {
  const auto& x = a.coords;
  const auto& y = b.coords;
  const auto& z = c.coords;
  auto minor = [&](int i, int j) { return f.sub(f.mul(y[i], z[j]), f.mul(y[j], z[i])); };
  auto t0 = f.mul(x[0], minor(1, 2));
  auto t1 = f.mul(x[1], minor(0, 2));
  auto t2 = f.mul(x[2], minor(0, 1));
  return f.add(f.sub(t0, t1), t2);
}

std::vector<ProjectivePoint> projective_plane(const Field& f) {
  const auto q = static_cast<FieldElem>(f.size());
  std::vector<ProjectivePoint> out;
  out.reserve(static_cast<std::size_t>(q) * q + q + 1);
  out.push_back({{0, 0, 1}});
  for (FieldElem b = 0; b < q; ++b) out.push_back({{0, 1, b}});
  for (FieldElem a = 0; a < q; ++a) {
    for (FieldElem b = 0; b < q; ++b) out.push_back({{1, a, b}});
  }
  return out;
}

namespace {

// Position of a normalized point in projective_plane() order.
std::size_t plane_index(const Field& f, const ProjectivePoint& p) {
  const std::size_t q = f.size();
  const auto& c = p.coords;
  if (c[0] == 1) return 1 + q + c[1] * q + c[2];
  if (c[1] == 1) return 1 + c[2];
  return 0;
}

bool collinear(const Rank3Geometry& g, PointId a, PointId b, PointId c) {
  const auto l = g.line_index(a, b);
  if (!l) return false;
  const auto& line = g.long_lines()[*l];
  return std::binary_search(line.begin(), line.end(), c);
}

}  // namespace

bool verify_representation(const Rank3Geometry& geom, const Representation& rep) {
  if (!rep.field || rep.points.size() != geom.point_count()) return false;
  const auto& f = *rep.field;
  auto sorted = rep.points;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) return false;
  const auto n = static_cast<PointId>(geom.point_count());
  for (PointId a = 0; a < n; ++a) {
    for (PointId b = a + 1; b < n; ++b) {
      for (PointId c = b + 1; c < n; ++c) {
        const bool dependent = collinear(geom, a, b, c);
        const bool zero = det3(f, rep.points[a], rep.points[b], rep.points[c]) == 0;
        if (dependent != zero) return false;
      }
    }
  }
  return true;
}

Representation additive_rep(int p, int k) {
  if (!is_prime(p)) throw std::invalid_argument(std::to_string(p) + " is not prime");
  if (k < 1) throw std::invalid_argument("additive representation needs k >= 1");
  auto field = std::make_shared<const Field>(p, k);
  const FiniteAbelianGroup group(std::vector<int>(k, p));
  auto geom = std::make_shared<const Rank3Geometry>(lift0(group));
  Representation rep{geom, field, std::vector<ProjectivePoint>(geom->point_count())};
  // Mixed-radix group index and base-p field encoding give the same additive
  // structure, so index(g) is the field element identified with g.
  for (const auto& g : group.elements()) {
    const auto x = static_cast<FieldElem>(group.index(g));
    rep.points[geom->require(lift_point_name(group, Family::A, g))] = {{1, 0, x}};
    rep.points[geom->require(lift_point_name(group, Family::B, g))] = {{1, 1, x}};
    rep.points[geom->require(lift_point_name(group, Family::C, g))] = {{0, 1, x}};
  }
  rep.points[geom->require("D")] = {{0, 0, 1}};
  return rep;
}

Representation multiplicative_rep(int n, std::shared_ptr<const Field> field) {
  if (n < 2) throw std::invalid_argument("multiplicative representation needs n >= 2");
  const auto& f = *field;
  if ((f.size() - 1) % n != 0) {
    throw std::invalid_argument("GF(" + std::to_string(f.size()) + ") has no primitive " +
                                std::to_string(n) + "-th root of unity");
  }
  const auto zeta = f.pow(f.primitive(), (f.size() - 1) / n);
  const auto group = FiniteAbelianGroup::cyclic(n);
  auto geom = std::make_shared<const Rank3Geometry>(lift(group));
  Representation rep{geom, field, std::vector<ProjectivePoint>(geom->point_count())};
  for (int i = 0; i < n; ++i) {
    const auto g = group.element(i);
    const auto w = f.neg(f.pow(zeta, i));
    rep.points[geom->require(lift_point_name(group, Family::A, g))] = {{1, w, 0}};
    rep.points[geom->require(lift_point_name(group, Family::B, g))] = {{1, 0, w}};
    rep.points[geom->require(lift_point_name(group, Family::C, g))] = {{0, 1, w}};
  }
  return rep;
}

std::string to_string(SearchOutcome o) {
  switch (o) {
    case SearchOutcome::Found: return "FOUND";
    case SearchOutcome::NoneExhaustive: return "NONE-EXHAUSTIVE";
    case SearchOutcome::BudgetExceeded: return "BUDGET-EXCEEDED";
  }
  return "?";
}

namespace {

class Searcher {
 public:
  Searcher(const Rank3Geometry& g, const Field& f, std::size_t budget)
      : g_(g), f_(f), budget_(budget), plane_(projective_plane(f)), used_(plane_.size(), false) {}

  SearchOutcome run(std::vector<ProjectivePoint>& out) {
    plan();
    image_.assign(g_.point_count(), {});
    for (std::size_t k = 0; k < pinned_.size(); ++k) place(k, pinned_[k]);
    const auto r = descend(pinned_.size());
    if (r == SearchOutcome::Found) out = image_;
    return r;
  }

  std::size_t nodes() const { return nodes_; }

 private:
  // Descending degree; the greedy first frame moves to the front. Among
  // points of equal degree, those on more lines already holding two ordered
  // points come first (then lower id), so candidates stay line-restricted.
  void plan() {
    std::vector<PointId> by_degree(g_.point_count());
    std::iota(by_degree.begin(), by_degree.end(), 0);
    std::stable_sort(by_degree.begin(), by_degree.end(),
                     [&](PointId a, PointId b) { return g_.degree(a) > g_.degree(b); });
    auto in_frame = [&](const std::vector<PointId>& fr, PointId v) {
      return std::find(fr.begin(), fr.end(), v) != fr.end();
    };
    std::vector<PointId> frame(by_degree.begin(), by_degree.begin() + 2);
    for (auto v : by_degree) {
      if (!in_frame(frame, v) && !collinear(g_, frame[0], frame[1], v)) {
        frame.push_back(v);
        break;
      }
    }
    if (frame.size() == 3) {
      for (auto v : by_degree) {
        if (!in_frame(frame, v) && !collinear(g_, frame[0], frame[1], v) &&
            !collinear(g_, frame[0], frame[2], v) && !collinear(g_, frame[1], frame[2], v)) {
          frame.push_back(v);
          break;
        }
      }
    }
    static constexpr std::array<ProjectivePoint, 4> kFrame{
        {{{1, 0, 0}}, {{0, 1, 0}}, {{0, 0, 1}}, {{1, 1, 1}}}};
    order_ = frame;
    for (std::size_t k = 0; k < frame.size(); ++k) pinned_.push_back(kFrame[k]);
    std::vector<bool> ordered(g_.point_count(), false);
    for (auto v : frame) ordered[v] = true;
    auto constrained_lines = [&](PointId v) {
      int c = 0;
      for (auto l : g_.lines_through(v)) {
        const auto& line = g_.long_lines()[l];
        if (std::count_if(line.begin(), line.end(), [&](PointId u) { return ordered[u]; }) >= 2) ++c;
      }
      return c;
    };
    while (order_.size() < g_.point_count()) {
      std::optional<PointId> best;
      int best_c = -1;
      for (auto v : by_degree) {
        if (ordered[v]) continue;
        if (best && g_.degree(v) < g_.degree(*best)) break;
        const int c = constrained_lines(v);
        if (c > best_c) best = v, best_c = c;
      }
      ordered[*best] = true;
      order_.push_back(*best);
    }
  }

  void place(std::size_t depth, const ProjectivePoint& p) {
    image_[order_[depth]] = p;
    used_[plane_index(f_, p)] = true;
  }
  void unplace(std::size_t depth) { used_[plane_index(f_, image_[order_[depth]])] = false; }

  bool consistent(std::size_t depth, const ProjectivePoint& c) const {
    const auto v = order_[depth];
    for (std::size_t i = 0; i < depth; ++i) {
      for (std::size_t j = i + 1; j < depth; ++j) {
        const auto a = order_[i], b = order_[j];
        const bool zero = det3(f_, image_[a], image_[b], c) == 0;
        if (zero != collinear(g_, a, b, v)) return false;
      }
    }
    return true;
  }

  std::vector<ProjectivePoint> candidates(std::size_t depth) const {
    const auto v = order_[depth];
    for (std::size_t i = 0; i < depth; ++i) {
      for (std::size_t j = i + 1; j < depth; ++j) {
        if (!collinear(g_, order_[i], order_[j], v)) continue;
        // Points of the projective line through the two images.
        const auto& u = image_[order_[i]].coords;
        const auto& w = image_[order_[j]].coords;
        std::vector<ProjectivePoint> line{image_[order_[j]]};
        for (FieldElem t = 0; t < static_cast<FieldElem>(f_.size()); ++t) {
          line.push_back(ProjectivePoint::normalize(
              f_, {f_.add(u[0], f_.mul(t, w[0])), f_.add(u[1], f_.mul(t, w[1])),
                   f_.add(u[2], f_.mul(t, w[2]))}));
        }
        std::sort(line.begin(), line.end());
        return line;
      }
    }
    return plane_;
  }

  SearchOutcome descend(std::size_t depth) {
    if (depth == order_.size()) return SearchOutcome::Found;
    for (const auto& c : candidates(depth)) {
      if (++nodes_ > budget_) return SearchOutcome::BudgetExceeded;
      if (used_[plane_index(f_, c)] || !consistent(depth, c)) continue;
      place(depth, c);
      const auto r = descend(depth + 1);
      if (r != SearchOutcome::NoneExhaustive) return r;
      unplace(depth);
    }
    return SearchOutcome::NoneExhaustive;
  }

  const Rank3Geometry& g_;
  const Field& f_;
  std::size_t budget_;
  std::size_t nodes_ = 0;
  std::vector<ProjectivePoint> plane_;
  std::vector<bool> used_;
  std::vector<PointId> order_;
  std::vector<ProjectivePoint> pinned_;
  std::vector<ProjectivePoint> image_;
};

}  // namespace

SearchResult search_representation(std::shared_ptr<const Rank3Geometry> geom,
                                   std::shared_ptr<const Field> field, std::size_t budget) {
  if (geom->point_count() < 4) throw std::invalid_argument("search needs at least four points");
  Searcher s(*geom, *field, budget);
  std::vector<ProjectivePoint> image;
  SearchResult result;
  result.outcome = s.run(image);
  result.nodes = s.nodes();
  if (result.outcome == SearchOutcome::Found) {
    result.representation = Representation{geom, field, std::move(image)};
  }
  return result;
}

bool CharSetReport::consistent() const {
  for (const auto& e : evidence) {
    if (e.predicted && !e.constructive_verified) return false;
    if (!e.predicted) {
      for (const auto& [m, o] : e.searches) {
        if (o != SearchOutcome::NoneExhaustive) return false;
      }
    }
  }
  return true;
}

CharSetReport char_set_lift(int n, long long prime_bound, int m_max, std::size_t search_budget) {
  if (n < 2) throw std::invalid_argument("characteristic sets need n >= 2");
  CharSetReport report{n, prime_bound, m_max, {0}, {}};
  const auto geom = std::make_shared<const Rank3Geometry>(lift(FiniteAbelianGroup::cyclic(n)));
  for (long long p = 2; p <= prime_bound; ++p) {
    if (!is_prime(p)) continue;
    PrimeEvidence e;
    e.p = p;
    e.predicted = n % p != 0;
    if (e.predicted) {
      report.predicted.push_back(p);
      e.field_degree = mult_order(p, n);
      auto field = std::make_shared<const Field>(static_cast<int>(p), e.field_degree);
      const auto rep = multiplicative_rep(n, field);
      e.constructive_verified = verify_representation(*rep.geometry, rep);
    } else {
      for (int m = 1; m <= m_max; ++m) {
        auto field = std::make_shared<const Field>(static_cast<int>(p), m);
        e.searches.emplace_back(m, search_representation(geom, field, search_budget).outcome);
      }
    }
    report.evidence.push_back(std::move(e));
  }
  return report;
}

CitedCharSets char_set_report(int n) {
  if (n < 2) throw std::invalid_argument("characteristic sets need n >= 2");
  CitedCharSets r;
  r.n = n;
  r.chi_a_lift = "{0, 2, 3, 5, ...}";
  if (is_prime(n)) r.chi_a_mn = {n};
  r.chi_a_mn_text = render_set(r.chi_a_mn);
  return r;
}

std::string render_set(const std::vector<long long>& s) {
  if (s.empty()) return "∅";
  std::string out = "{";
  for (std::size_t k = 0; k < s.size(); ++k) out += (k ? ", " : "") + std::to_string(s[k]);
  return out + "}";
}

}  // namespace hgeom
