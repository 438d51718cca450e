#include "hgeom/harmonic.hpp"

#include <algorithm>
#include <map>

namespace hgeom {

HarmonicState::HarmonicState(std::shared_ptr<const Rank3Geometry> base) : base_(std::move(base)) {
  const auto n = base_->point_count();
  names_ = base_->names();
  parent_.resize(n);
  for (PointId p = 0; p < n; ++p) parent_[p] = p;
  point_lines_.assign(n, {});
  for (const auto& line : base_->long_lines()) {
    const auto id = static_cast<LineId>(lines_.size());
    lines_.push_back({line, true});
    for (auto p : line) point_lines_[p].push_back(id);
  }
}

PointId HarmonicState::find(PointId p) const {
  if (p >= parent_.size()) throw GeometryError("unknown point id " + std::to_string(p));
  while (parent_[p] != p) p = parent_[p];
  return p;
}

PointSet HarmonicState::resolve(std::span<const PointId> points) const {
  PointSet out;
  out.reserve(points.size());
  for (auto p : points) out.push_back(find(p));
  return make_set(std::move(out));
}

bool HarmonicState::collinear(PointId a, PointId b, PointId c) const {
  a = find(a);
  b = find(b);
  c = find(c);
  for (auto l : point_lines_[a]) {
    const auto& m = lines_[l].members;
    if (std::binary_search(m.begin(), m.end(), b) && std::binary_search(m.begin(), m.end(), c)) {
      return true;
    }
  }
  return false;
}

std::optional<LineId> HarmonicState::line_containing(PointId a, PointId b) const {
  a = find(a);
  b = find(b);
  for (auto l : point_lines_[a]) {
    const auto& m = lines_[l].members;
    if (std::binary_search(m.begin(), m.end(), b)) return l;
  }
  return std::nullopt;
}

bool HarmonicState::same_key(const ConjugateKey& a, const ConjugateKey& b) const {
  if (find(a.x) != find(b.x)) return false;
  auto ay = find(a.y), az = find(a.z), by = find(b.y), bz = find(b.z);
  return (ay == by && az == bz) || (ay == bz && az == by);
}

std::optional<PointId> HarmonicState::lookup(const ConjugateKey& key) const {
  for (const auto& e : registry_) {
    if (same_key(e.key, key)) return find(e.value);
  }
  return std::nullopt;
}

PointId HarmonicState::add_point(std::string name, const ConjugateKey& key) {
  const auto id = static_cast<PointId>(names_.size());
  names_.push_back(std::move(name));
  parent_.push_back(id);
  point_lines_.emplace_back();
  registry_.push_back({key, id});
  return id;
}

std::optional<LineId> HarmonicState::add_line(std::span<const PointId> points) {
  auto members = resolve(points);
  if (members.size() < 2) return std::nullopt;
  for (auto l : point_lines_[members[0]]) {
    const auto& m = lines_[l].members;
    if (std::includes(m.begin(), m.end(), members.begin(), members.end())) return std::nullopt;
  }
  const auto id = static_cast<LineId>(lines_.size());
  for (auto p : members) point_lines_[p].push_back(id);
  lines_.push_back({std::move(members), true});
  return id;
}

void HarmonicState::merge_lines(LineId kept, LineId absorbed) {
  auto& k = lines_.at(kept);
  auto& a = lines_.at(absorbed);
  PointSet merged;
  std::set_union(k.members.begin(), k.members.end(), a.members.begin(), a.members.end(),
                 std::back_inserter(merged));
  for (auto p : a.members) {
    auto& pl = point_lines_[p];
    pl.erase(std::remove(pl.begin(), pl.end(), absorbed), pl.end());
    if (!std::binary_search(k.members.begin(), k.members.end(), p)) {
      pl.insert(std::lower_bound(pl.begin(), pl.end(), kept), kept);
    }
  }
  k.members = std::move(merged);
  a.members.clear();
  a.alive = false;
}

void HarmonicState::merge_points(PointId u, PointId v) {
  u = find(u);
  v = find(v);
  if (u == v) return;
  const auto keep = std::min(u, v);
  const auto gone = std::max(u, v);
  if (is_base(keep) && is_base(gone) && !collision_) collision_ = {keep, gone};
  parent_[gone] = keep;
  auto& kl = point_lines_[keep];
  for (auto l : point_lines_[gone]) {
    auto& m = lines_[l].members;
    m.erase(std::lower_bound(m.begin(), m.end(), gone));
    if (!std::binary_search(m.begin(), m.end(), keep)) {
      m.insert(std::lower_bound(m.begin(), m.end(), keep), keep);
      kl.push_back(l);
    }
  }
  std::sort(kl.begin(), kl.end());
  point_lines_[gone].clear();
}

Rank3Geometry HarmonicState::materialize() const {
  std::vector<std::string> names;
  std::vector<PointId> renumber(names_.size(), 0);
  for (PointId p = 0; p < names_.size(); ++p) {
    if (find(p) == p) {
      renumber[p] = static_cast<PointId>(names.size());
      names.push_back(names_[p]);
    }
  }
  std::vector<PointSet> lines;
  for (const auto& line : lines_) {
    if (!line.alive || line.members.size() < 3) continue;
    PointSet mapped;
    for (auto p : line.members) mapped.push_back(renumber[p]);
    lines.push_back(make_set(std::move(mapped)));
  }
  return Rank3Geometry(std::move(names), std::move(lines));
}

bool verify_hp(const HarmonicState& st, const HpTuple& t) {
  const std::array<PointId, 7> raw{t.y, t.x, t.z, t.p, t.q, t.r, t.s};
  std::array<PointId, 7> rep{};
  for (std::size_t k = 0; k < 7; ++k) rep[k] = st.find(raw[k]);
  for (std::size_t i = 0; i < 7; ++i) {
    for (std::size_t j = i + 1; j < 7; ++j) {
      if (rep[i] == rep[j]) return false;
    }
  }
  const auto [y, x, z, p, q, r, s] = rep;
  return st.collinear(y, x, z) && st.collinear(y, p, q) && st.collinear(y, s, r) &&
         st.collinear(z, q, r) && st.collinear(z, s, p) && st.collinear(q, x, s) &&
         !st.collinear(y, z, p) && !st.collinear(y, z, q) && !st.collinear(y, z, r) &&
         !st.collinear(y, z, s);
}

std::vector<HpTuple> enumerate_hp(const HarmonicState& st, PointId y, PointId x, PointId z) {
  y = st.find(y);
  x = st.find(x);
  z = st.find(z);
  std::vector<HpTuple> out;
  if (y == x || y == z || x == z || !st.collinear(y, x, z)) return out;
  const auto& lines = st.lines();
  auto holds = [&](PointId a, PointId b) {
    const auto& m = lines[a].members;
    return std::binary_search(m.begin(), m.end(), b);
  };
  for (auto lq : st.lines_of(y)) {
    if (holds(lq, z)) continue;
    for (auto q : lines[lq].members) {
      if (q == y || q == x) continue;
      for (auto ls : st.lines_of(q)) {
        if (!holds(ls, x)) continue;
        for (auto s : lines[ls].members) {
          if (s == q || s == x || s == y || s == z) continue;
          for (auto lr : st.lines_of(y)) {
            if (!holds(lr, s)) continue;
            for (auto r : lines[lr].members) {
              if (r == y || r == s || r == q || r == z || r == x) continue;
              if (!st.collinear(z, q, r)) continue;
              for (auto p : lines[lq].members) {
                if (p == y || p == q) continue;
                HpTuple t{y, x, z, p, q, r, s};
                if (st.collinear(z, s, p) && verify_hp(st, t)) out.push_back(t);
              }
            }
          }
        }
      }
    }
  }
  std::sort(out.begin(), out.end(), [](const HpTuple& a, const HpTuple& b) {
    return std::tie(a.p, a.q, a.r, a.s) < std::tie(b.p, b.q, b.r, b.s);
  });
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

namespace {

void emit(TraceNode& node, Step s, Budget& budget) {
  budget.charge();
  node.steps.push_back(std::move(s));
}

std::string tuple_text(const HarmonicState& st, const HpTuple& t) {
  std::string out = "HP(";
  const std::array<PointId, 7> raw{t.y, t.x, t.z, t.p, t.q, t.r, t.s};
  for (std::size_t k = 0; k < 7; ++k) {
    if (k) out += ",";
    out += st.name(raw[k]);
  }
  return out + ")";
}

std::optional<step::Contradiction> find_contradiction(const HarmonicState& st) {
  if (const auto& c = st.base_collision()) {
    return step::Contradiction{step::ContradictionKind::BasePointsMerged, {c->first, c->second},
                               std::nullopt};
  }
  const auto& base = st.base();
  for (LineId l = 0; l < st.lines().size(); ++l) {
    const auto& line = st.lines()[l];
    if (!line.alive) continue;
    PointSet bs;
    for (auto p : line.members) {
      if (st.is_base(p)) bs.push_back(p);
    }
    if (bs.size() < 3) continue;
    auto bl = base.line_index(bs[0], bs[1]);
    if (!bl) return step::Contradiction{step::ContradictionKind::IndependentLine,
                                        {bs[0], bs[1], bs[2]}, l};
    const auto& members = base.long_lines()[*bl];
    for (auto p : bs) {
      if (!std::binary_search(members.begin(), members.end(), p)) {
        return step::Contradiction{step::ContradictionKind::IndependentLine, {bs[0], bs[1], p}, l};
      }
    }
  }
  return std::nullopt;
}

// Two registry entries whose keys coincide but whose values differ.
std::optional<step::PointsMerged> registry_conflict(const HarmonicState& st) {
  const auto& reg = st.registry();
  for (std::size_t a = 0; a < reg.size(); ++a) {
    for (std::size_t b = a + 1; b < reg.size(); ++b) {
      if (st.same_key(reg[a].key, reg[b].key) && st.find(reg[a].value) != st.find(reg[b].value)) {
        return step::PointsMerged{st.find(reg[a].value), st.find(reg[b].value),
                                  step::MergeReason::Registry, a, b};
      }
    }
  }
  return std::nullopt;
}

struct SharedPair {
  LineId a, b;
  PointSet shared;
  bool forced;
};

// Forced pairs (two shared base points) take precedence over splits.
std::optional<SharedPair> find_shared_pair(const HarmonicState& st) {
  std::optional<SharedPair> split;
  const auto& lines = st.lines();
  std::map<LineId, PointSet> shared;
  for (LineId l = 0; l < lines.size(); ++l) {
    if (!lines[l].alive) continue;
    shared.clear();
    for (auto u : lines[l].members) {
      for (auto m : st.lines_of(u)) {
        if (m > l) shared[m].push_back(u);
      }
    }
    for (auto& [m, pts] : shared) {
      if (pts.size() < 2) continue;
      const auto base_count = std::count_if(pts.begin(), pts.end(),
                                            [&](PointId p) { return st.is_base(p); });
      if (base_count >= 2) return SharedPair{l, m, pts, true};
      if (!split) split = SharedPair{l, m, pts, false};
    }
  }
  return split;
}

std::pair<PointId, PointId> two_base(const HarmonicState& st, const PointSet& pts) {
  std::vector<PointId> bs;
  for (auto p : pts) {
    if (st.is_base(p)) bs.push_back(p);
  }
  return {bs[0], bs[1]};
}

bool harmonic_sweep(HarmonicState& st, TraceNode& node, Budget& budget) {
  struct Candidate {
    std::size_t entry;
    HpTuple tuple;
  };
  std::vector<Candidate> found;
  const auto& reg = st.registry();
  for (std::size_t e = 0; e < reg.size(); ++e) {
    const auto& key = reg[e].key;
    const auto value = st.find(reg[e].value);
    for (const auto& [y, z] : {std::pair{key.y, key.z}, std::pair{key.z, key.y}}) {
      for (const auto& t : enumerate_hp(st, y, key.x, z)) {
        if (t.p == value || t.r == value || st.collinear(t.p, t.r, value)) continue;
        found.push_back({e, t});
      }
    }
  }
  bool added = false;
  for (const auto& c : found) {
    const auto& entry = st.registry()[c.entry];
    const auto value = st.find(entry.value);
    if (st.collinear(c.tuple.p, c.tuple.r, value) || !verify_hp(st, c.tuple)) continue;
    const std::array<PointId, 3> pts{c.tuple.p, c.tuple.r, value};
    auto l = st.add_line(pts);
    if (!l) continue;
    emit(node, step::HpVerified{c.tuple}, budget);
    emit(node,
         step::LineAdded{*l, st.lines()[*l].members, step::LineReason::HarmonicWitness, entry.key,
                         c.tuple},
         budget);
    added = true;
  }
  return added;
}

}  // namespace

PointId conjugate(HarmonicState& st, TraceNode& node, const HpTuple& witness,
                  const std::string& name, Budget& budget) {
  if (!verify_hp(st, witness)) {
    throw HpFailure("harmonic configuration does not hold: " + tuple_text(st, witness));
  }
  emit(node, step::HpVerified{witness}, budget);
  const auto key = key_of(witness);
  PointId xp;
  if (auto existing = st.lookup(key)) {
    xp = *existing;
  } else {
    xp = st.add_point(name, key);
    emit(node, step::ConjugateIntroduced{key, xp, name}, budget);
    const std::array<PointId, 4> axis{witness.y, witness.x, witness.z, xp};
    if (auto l = st.add_line(axis)) {
      emit(node, step::LineAdded{*l, st.lines()[*l].members, step::LineReason::ConjugateAxiom, key,
                                 std::nullopt},
           budget);
    }
  }
  const std::array<PointId, 3> pts{witness.p, witness.r, xp};
  if (auto l = st.add_line(pts)) {
    emit(node, step::LineAdded{*l, st.lines()[*l].members, step::LineReason::HarmonicWitness, key,
                               witness},
         budget);
  }
  return xp;
}

std::vector<Leaf> close(HarmonicState st, TraceNode& node, const ClosureOptions& opts,
                        Budget& budget) {
  for (;;) {
    if (auto c = find_contradiction(st)) {
      emit(node, *c, budget);
      return {};
    }
    if (auto m = registry_conflict(st)) {
      st.merge_points(m->u, m->v);
      emit(node, *m, budget);
      continue;
    }
    if (auto pair = find_shared_pair(st)) {
      if (pair->forced) {
        auto [u, v] = two_base(st, pair->shared);
        st.merge_lines(pair->a, pair->b);
        emit(node, step::LinesMerged{pair->a, pair->b, u, v}, budget);
        continue;
      }
      emit(node, step::CaseSplit{pair->a, pair->b, pair->shared}, budget);
      node.branches.resize(2);
      HarmonicState lines_equal = st;
      lines_equal.merge_lines(pair->a, pair->b);
      emit(node.branches[0],
           step::LinesMerged{pair->a, pair->b, pair->shared[0], pair->shared[1]}, budget);
      auto leaves = close(std::move(lines_equal), node.branches[0], opts, budget);
      for (std::size_t k = 1; k < pair->shared.size(); ++k) {
        st.merge_points(pair->shared[0], pair->shared[k]);
        emit(node.branches[1],
             step::PointsMerged{pair->shared[0], pair->shared[k], step::MergeReason::CaseSplit},
             budget);
      }
      auto more = close(std::move(st), node.branches[1], opts, budget);
      for (auto& leaf : more) leaves.push_back(std::move(leaf));
      return leaves;
    }
    if (opts.harmonic_propagation && harmonic_sweep(st, node, budget)) continue;
    std::vector<Leaf> out;
    out.push_back({std::move(st), &node});
    return out;
  }
}

Derivation::Derivation(Rank3Geometry base, ClosureOptions opts, std::size_t budget)
    : initial_(std::make_shared<const Rank3Geometry>(std::move(base))),
      opts_(opts),
      budget_{budget, 0},
      root_(std::make_unique<TraceNode>()) {
  live_.push_back({initial_, root_.get(), {}});
}

void Derivation::close_all() {
  std::vector<Branch> next;
  for (auto& b : live_) {
    auto leaves = close(std::move(b.state), *b.node, opts_, budget_);
    for (auto& leaf : leaves) next.push_back({std::move(leaf.state), leaf.node, b.chain});
  }
  live_ = std::move(next);
}

DerivationTrace Derivation::finish() {
  DerivationTrace out;
  out.claimed = status();
  out.notes = notes_;
  live_.clear();
  out.root = std::move(*root_);
  return out;
}

}  // namespace hgeom
