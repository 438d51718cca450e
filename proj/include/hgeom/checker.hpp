#pragma once

#include <optional>
#include <string>

#include "hgeom/geometry.hpp"
#include "hgeom/trace.hpp"

namespace hgeom {

/// Outcome of replaying a trace against a fresh copy of its base geometry.
struct ReplayReport {
  bool ok = false;
  std::string error;                 // first failing step, when !ok
  std::size_t steps_checked = 0;
  std::size_t open_leaves = 0;
  std::size_t closed_leaves = 0;
  std::optional<Rank3Geometry> survivor;  // materialized when exactly one leaf stays open
};

/// Independent replay. Every step is re-justified from the base rank oracle
/// and the checker's own union-find and line store; nothing from the engine's
/// state is reused.
ReplayReport replay_trace(const Rank3Geometry& base, const DerivationTrace& trace);

bool check_trace(const Rank3Geometry& base, const DerivationTrace& trace);

/// Checks every phase and that each phase's base equals the geometry
/// materialized from the single surviving branch of the previous phase.
ReplayReport check_certificate(const Certificate& cert);

/// Same point names and the same long lines, up to line order.
bool same_geometry(const Rank3Geometry& a, const Rank3Geometry& b);

}  // namespace hgeom
