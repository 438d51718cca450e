#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "hgeom/geometry.hpp"

namespace hgeom {

/// Slots of the harmonic configuration HP(y, x, z, p, q, r, s). The solid
/// collinearities are {y,x,z}, {y,p,q}, {y,s,r}, {z,q,r}, {z,s,p}, {q,x,s}.
struct HpTuple {
  PointId y, x, z, p, q, r, s;
  bool operator==(const HpTuple&) const = default;
};

/// Harmonic conjugate of x with respect to the unordered pair {y, z}.
struct ConjugateKey {
  PointId x, y, z;
  bool operator==(const ConjugateKey&) const = default;
};

inline ConjugateKey key_of(const HpTuple& t) { return {t.x, t.y, t.z}; }

namespace step {

struct HpVerified {
  HpTuple tuple;
};

struct ConjugateIntroduced {
  ConjugateKey key;
  PointId point;
  std::string name;
};

enum class LineReason {
  ConjugateAxiom,   // {y, x, z, x'}
  HarmonicWitness,  // {p, r, x'} for a verified HP tuple with the key's (y, x, z)
};

struct LineAdded {
  LineId line;
  PointSet points;
  LineReason reason;
  ConjugateKey key;
  std::optional<HpTuple> witness;
};

struct LinesMerged {
  LineId kept;
  LineId absorbed;
  PointId u, v;  // two distinct shared points
};

enum class MergeReason {
  CaseSplit,  // second branch of a split: the shared points coincide
  Registry,   // two conjugate keys became equal
};

struct PointsMerged {
  PointId u, v;
  MergeReason reason;
  // Registry merges cite the two registry entries (introduction order).
  std::size_t entry_a = 0, entry_b = 0;
};

struct CaseSplit {
  LineId line_a, line_b;
  PointSet shared;
};

enum class ContradictionKind {
  IndependentLine,  // three base points, independent in the base, on one derived line
  BasePointsMerged, // two distinct base points identified
};

struct Contradiction {
  ContradictionKind kind;
  std::vector<PointId> witness;
  std::optional<LineId> line;
};

}  // namespace step

using Step = std::variant<step::HpVerified, step::ConjugateIntroduced, step::LineAdded,
                          step::LinesMerged, step::PointsMerged, step::CaseSplit,
                          step::Contradiction>;

/// A node of the derivation tree. A node whose last step is a CaseSplit has
/// exactly two children: [0] the lines coincide, [1] the shared points coincide.
struct TraceNode {
  std::vector<Step> steps;
  std::vector<TraceNode> branches;
};

enum class Status { Consistent, Contradiction };

struct DerivationTrace {
  TraceNode root;
  Status claimed = Status::Consistent;
  std::vector<std::string> notes;
};

/// A chain of derivations: phase k+1 runs on the geometry materialized from
/// the single surviving branch of phase k.
struct Phase {
  std::string label;
  Rank3Geometry base;
  DerivationTrace trace;
};

struct Certificate {
  std::vector<Phase> phases;
  Status claimed() const {
    return phases.empty() ? Status::Consistent : phases.back().trace.claimed;
  }
};

std::string to_string(Status s);
std::size_t count_steps(const TraceNode& node);
std::size_t count_leaves(const TraceNode& node, bool contradicted);

/// Human-readable rendering with point names.
std::string render_trace(const Rank3Geometry& base, const DerivationTrace& trace);

}  // namespace hgeom
