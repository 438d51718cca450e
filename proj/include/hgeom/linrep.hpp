#pragma once

#include <array>
#include <compare>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "hgeom/field.hpp"
#include "hgeom/geometry.hpp"

namespace hgeom {

using Field = PrimePowerField;
using FieldElem = PrimePowerField::Elem;

/// A point of PG(2, q): a nonzero triple scaled so its first nonzero
/// coordinate is 1.
struct ProjectivePoint {
  std::array<FieldElem, 3> coords{};
  auto operator<=>(const ProjectivePoint&) const = default;

  /// Throws std::invalid_argument on the zero vector.
  static ProjectivePoint normalize(const Field& f, std::array<FieldElem, 3> v);
};

FieldElem det3(const Field& f, const ProjectivePoint& a, const ProjectivePoint& b,
               const ProjectivePoint& c);

/// All q^2 + q + 1 points of PG(2, q) in ascending coordinate order.
std::vector<ProjectivePoint> projective_plane(const Field& f);

/// Assignment of a projective point to every point of a geometry.
struct Representation {
  std::shared_ptr<const Rank3Geometry> geometry;
  std::shared_ptr<const Field> field;
  std::vector<ProjectivePoint> points;  // indexed by PointId
};

/// True iff the assignment is total and injective and every triple is
/// collinear in the geometry exactly when its determinant vanishes.
bool verify_representation(const Rank3Geometry& geom, const Representation& rep);

/// lift0((Z_p)^k) over GF(p^k): A_g -> (1,0,g), B_g -> (1,1,g), C_g -> (0,1,g), D -> (0,0,1).
Representation additive_rep(int p, int k);

/// lift(Z_n) over a field containing a primitive n-th root of unity z:
/// A_i -> (1,-z^i,0), B_k -> (1,0,-z^k), C_j -> (0,1,-z^j).
/// Throws std::invalid_argument when n does not divide q - 1.
Representation multiplicative_rep(int n, std::shared_ptr<const Field> field);

inline constexpr std::size_t kDefaultSearchBudget = 50'000'000;

enum class SearchOutcome { Found, NoneExhaustive, BudgetExceeded };
std::string to_string(SearchOutcome o);

struct SearchResult {
  SearchOutcome outcome = SearchOutcome::NoneExhaustive;
  std::optional<Representation> representation;
  std::size_t nodes = 0;  // candidate placements examined
};

/// Backtracking search for a representation over PG(2, q). Points are placed
/// in descending degree order; the first four points in general position are
/// pinned to the standard frame.
SearchResult search_representation(std::shared_ptr<const Rank3Geometry> geom,
                                   std::shared_ptr<const Field> field,
                                   std::size_t budget = kDefaultSearchBudget);

/// Evidence gathered for one prime in a characteristic-set computation.
struct PrimeEvidence {
  long long p = 0;
  bool predicted = false;  // p does not divide n
  // p does not divide n: a multiplicative representation over GF(p^m).
  int field_degree = 0;
  bool constructive_verified = false;
  // p divides n: search outcome over GF(p^m) for m = 1..m_max.
  std::vector<std::pair<int, SearchOutcome>> searches;
};

struct CharSetReport {
  int n = 0;
  long long prime_bound = 0;
  int m_max = 0;
  std::vector<long long> predicted;  // 0 first, then primes
  std::vector<PrimeEvidence> evidence;
  /// Every predicted prime has verified constructive evidence and every
  /// excluded prime came back NoneExhaustive for all m <= m_max.
  bool consistent() const;
};

/// Characteristic-set evidence for lift(Z_n): constructive for p not dividing
/// n, bounded exhaustive search for p dividing n (bounded evidence only).
CharSetReport char_set_lift(int n, long long prime_bound, int m_max,
                            std::size_t search_budget = kDefaultSearchBudget);

/// Cited (not computed) algebraic characteristic sets.
struct CitedCharSets {
  int n = 0;
  std::string chi_a_lift;             // chi_A(L(Z_n K3))
  std::vector<long long> chi_a_mn;    // chi_A(L0(Z_n K3)) = chi_A(M(n))
  std::string chi_a_mn_text;
};

CitedCharSets char_set_report(int n);

std::string render_set(const std::vector<long long>& s);

}  // namespace hgeom
