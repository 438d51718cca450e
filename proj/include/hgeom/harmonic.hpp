#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "hgeom/geometry.hpp"
#include "hgeom/trace.hpp"

namespace hgeom {

inline constexpr std::size_t kDefaultBudget = 100'000;

class BudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class HpFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Counts rule applications (emitted steps) across a whole derivation.
struct Budget {
  std::size_t limit = kDefaultBudget;
  std::size_t used = 0;
  void charge(std::size_t n = 1) {
    used += n;
    if (used > limit) {
      throw BudgetExceeded("derivation budget of " + std::to_string(limit) +
                           " rule applications exceeded");
    }
  }
};

struct ClosureOptions {
  // When false, closure never searches for new harmonic configurations; only
  // line merges, registry consistency and contradiction checks run.
  bool harmonic_propagation = true;
};

/// Derived geometry over an immutable base: base points plus conjugate points,
/// a union-find over all of them, a store of collinear sets seeded from the
/// base long lines, and the conjugate registry.
///
/// Stored lines always hold class representatives (the smallest id of a
/// class), so base points represent any class they belong to.
class HarmonicState {
 public:
  struct Line {
    PointSet members;
    bool alive = true;
  };
  struct RegistryEntry {
    ConjugateKey key;
    PointId value;
  };

  explicit HarmonicState(std::shared_ptr<const Rank3Geometry> base);

  const Rank3Geometry& base() const { return *base_; }
  std::shared_ptr<const Rank3Geometry> base_ptr() const { return base_; }
  std::size_t point_count() const { return names_.size(); }
  bool is_base(PointId p) const { return p < base_->point_count(); }
  const std::string& name(PointId p) const { return names_.at(p); }
  PointId find(PointId p) const;

  const std::vector<Line>& lines() const { return lines_; }
  std::span<const LineId> lines_of(PointId rep) const { return point_lines_.at(rep); }
  const std::vector<RegistryEntry>& registry() const { return registry_; }

  bool collinear(PointId a, PointId b, PointId c) const;
  std::optional<LineId> line_containing(PointId a, PointId b) const;
  std::optional<PointId> lookup(const ConjugateKey& key) const;
  bool same_key(const ConjugateKey& a, const ConjugateKey& b) const;

  /// Two distinct base points that were identified, if any.
  const std::optional<std::pair<PointId, PointId>>& base_collision() const { return collision_; }

  PointId add_point(std::string name, const ConjugateKey& key);
  /// Adds the collinear set unless some stored line already covers it.
  std::optional<LineId> add_line(std::span<const PointId> points);
  void merge_lines(LineId kept, LineId absorbed);
  void merge_points(PointId u, PointId v);

  PointSet resolve(std::span<const PointId> points) const;

  /// Base plus surviving derived points, with every stored line of size >= 3.
  Rank3Geometry materialize() const;

 private:
  std::shared_ptr<const Rank3Geometry> base_;
  std::vector<std::string> names_;
  std::vector<PointId> parent_;
  std::vector<Line> lines_;
  std::vector<std::vector<LineId>> point_lines_;
  std::vector<RegistryEntry> registry_;
  std::optional<std::pair<PointId, PointId>> collision_;
};

bool verify_hp(const HarmonicState& st, const HpTuple& t);

/// All HP tuples (y, x, z, ...) currently holding for fixed y, x, z.
std::vector<HpTuple> enumerate_hp(const HarmonicState& st, PointId y, PointId x, PointId z);

/// Introduces (or reuses) the harmonic conjugate of witness.x with respect
/// to {witness.y, witness.z} and records the witness line {p, r, x'}.
/// Throws HpFailure when the witness configuration does not hold.
PointId conjugate(HarmonicState& st, TraceNode& node, const HpTuple& witness,
                  const std::string& name, Budget& budget);

struct Leaf {
  HarmonicState state;
  TraceNode* node;
};

/// Runs the closure rules to a fixpoint, splitting into branches where two
/// stored lines share two points that are not both base points. Returns the
/// surviving (consistent) leaves; contradicted branches end in a
/// Contradiction step inside `node`'s subtree.
std::vector<Leaf> close(HarmonicState st, TraceNode& node, const ClosureOptions& opts,
                        Budget& budget);

/// Orchestrates a scripted derivation over every live branch.
class Derivation {
 public:
  struct Branch {
    HarmonicState state;
    TraceNode* node;
    std::vector<PointId> chain;  // driver-specific named points
  };

  Derivation(Rank3Geometry base, ClosureOptions opts, std::size_t budget);

  std::vector<Branch>& live() { return live_; }
  const HarmonicState& initial() const { return initial_; }
  Budget& budget() { return budget_; }
  void note(std::string text) { notes_.push_back(std::move(text)); }

  void close_all();
  Status status() const { return live_.empty() ? Status::Contradiction : Status::Consistent; }
  DerivationTrace finish();

 private:
  HarmonicState initial_;
  ClosureOptions opts_;
  Budget budget_;
  std::unique_ptr<TraceNode> root_;
  std::vector<Branch> live_;
  std::vector<std::string> notes_;
};

}  // namespace hgeom
