#include "hgeom/checker.hpp"

#include <algorithm>
#include <set>

namespace hgeom {

namespace {

class ReplayError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Deliberately separate from HarmonicState: plain sets, linear scans.
struct CheckState {
  const Rank3Geometry* base = nullptr;
  std::vector<std::string> names;
  std::vector<PointId> parent;
  std::vector<std::set<PointId>> lines;
  std::vector<bool> alive;
  std::vector<std::pair<ConjugateKey, PointId>> registry;

  explicit CheckState(const Rank3Geometry& g) : base(&g), names(g.names()) {
    for (PointId p = 0; p < names.size(); ++p) parent.push_back(p);
    for (const auto& l : g.long_lines()) {
      lines.emplace_back(l.begin(), l.end());
      alive.push_back(true);
    }
  }

  PointId find(PointId p) const {
    if (p >= parent.size()) throw ReplayError("unknown point id " + std::to_string(p));
    while (parent[p] != p) p = parent[p];
    return p;
  }
  bool is_base(PointId rep) const { return rep < base->point_count(); }

  std::set<PointId> resolve(const std::vector<PointId>& pts) const {
    std::set<PointId> out;
    for (auto p : pts) out.insert(find(p));
    return out;
  }

  bool collinear(PointId a, PointId b, PointId c) const {
    a = find(a);
    b = find(b);
    c = find(c);
    for (std::size_t l = 0; l < lines.size(); ++l) {
      if (alive[l] && lines[l].count(a) && lines[l].count(b) && lines[l].count(c)) return true;
    }
    return false;
  }

  bool hp_holds(const HpTuple& t) const {
    const std::vector<PointId> raw{t.y, t.x, t.z, t.p, t.q, t.r, t.s};
    if (resolve(raw).size() != 7) return false;
    return collinear(t.y, t.x, t.z) && collinear(t.y, t.p, t.q) && collinear(t.y, t.s, t.r) &&
           collinear(t.z, t.q, t.r) && collinear(t.z, t.s, t.p) && collinear(t.q, t.x, t.s) &&
           !collinear(t.y, t.z, t.p) && !collinear(t.y, t.z, t.q) && !collinear(t.y, t.z, t.r) &&
           !collinear(t.y, t.z, t.s);
  }

  bool same_key(const ConjugateKey& a, const ConjugateKey& b) const {
    if (find(a.x) != find(b.x)) return false;
    std::set<PointId> pa{find(a.y), find(a.z)}, pb{find(b.y), find(b.z)};
    return pa == pb;
  }

  std::optional<PointId> lookup(const ConjugateKey& k) const {
    for (const auto& [key, value] : registry) {
      if (same_key(key, k)) return find(value);
    }
    return std::nullopt;
  }

  void line_alive(LineId l) const {
    if (l >= lines.size() || !alive[l]) throw ReplayError("line " + std::to_string(l) + " is not live");
  }

  void merge(PointId u, PointId v) {
    u = find(u);
    v = find(v);
    if (u == v) return;
    const auto keep = std::min(u, v), gone = std::max(u, v);
    parent[gone] = keep;
    for (auto& line : lines) {
      if (line.erase(gone)) line.insert(keep);
    }
  }

  Rank3Geometry materialize() const {
    std::vector<std::string> out_names;
    std::vector<PointId> renumber(names.size(), 0);
    for (PointId p = 0; p < names.size(); ++p) {
      if (find(p) == p) {
        renumber[p] = static_cast<PointId>(out_names.size());
        out_names.push_back(names[p]);
      }
    }
    std::vector<PointSet> out_lines;
    for (std::size_t l = 0; l < lines.size(); ++l) {
      if (!alive[l] || lines[l].size() < 3) continue;
      PointSet pts;
      for (auto p : lines[l]) pts.push_back(renumber[p]);
      out_lines.push_back(make_set(std::move(pts)));
    }
    return Rank3Geometry(std::move(out_names), std::move(out_lines));
  }
};

// What the first steps of a split branch must be.
struct BranchEntry {
  enum class Kind { Root, LinesEqual, PointsEqual } kind = Kind::Root;
  step::CaseSplit split{};
};

class Replayer {
 public:
  explicit Replayer(ReplayReport& report) : report_(report) {}

  void run(const TraceNode& node, CheckState st, const BranchEntry& entry) {
    std::size_t expected_prefix = 0;
    if (entry.kind == BranchEntry::Kind::LinesEqual) expected_prefix = 1;
    if (entry.kind == BranchEntry::Kind::PointsEqual) expected_prefix = entry.split.shared.size() - 1;
    if (node.steps.size() < expected_prefix) throw ReplayError("split branch is missing its opening merge");

    for (std::size_t i = 0; i < node.steps.size(); ++i) {
      const bool last = i + 1 == node.steps.size();
      const Step* prev = i > 0 ? &node.steps[i - 1] : nullptr;
      const bool in_prefix = i < expected_prefix;
      try {
        apply(node.steps[i], prev, st, entry, i, in_prefix, last, !node.branches.empty());
      } catch (const ReplayError& e) {
        throw ReplayError("step " + std::to_string(report_.steps_checked) + ": " + e.what());
      }
      ++report_.steps_checked;
    }

    if (!node.branches.empty()) {
      if (node.steps.empty() || !std::holds_alternative<step::CaseSplit>(node.steps.back())) {
        throw ReplayError("branches without a CaseSplit");
      }
      if (node.branches.size() != 2) throw ReplayError("a split must have exactly two branches");
      const auto& split = std::get<step::CaseSplit>(node.steps.back());
      run(node.branches[0], st, {BranchEntry::Kind::LinesEqual, split});
      run(node.branches[1], std::move(st), {BranchEntry::Kind::PointsEqual, split});
      return;
    }
    if (!node.steps.empty() && std::holds_alternative<step::Contradiction>(node.steps.back())) {
      ++report_.closed_leaves;
    } else {
      ++report_.open_leaves;
      survivor_ = st.materialize();
    }
  }

  std::optional<Rank3Geometry> survivor_;

 private:
  void apply(const Step& s, const Step* prev, CheckState& st, const BranchEntry& entry,
             std::size_t index, bool in_prefix, bool last, bool has_branches) {
    if (in_prefix) {
      if (entry.kind == BranchEntry::Kind::LinesEqual) {
        const auto* m = std::get_if<step::LinesMerged>(&s);
        if (!m || m->kept != entry.split.line_a || m->absorbed != entry.split.line_b) {
          throw ReplayError("first branch of a split must merge the split lines");
        }
      } else {
        const auto* m = std::get_if<step::PointsMerged>(&s);
        if (!m || m->reason != step::MergeReason::CaseSplit || m->u != entry.split.shared[0] ||
            m->v != entry.split.shared[index + 1]) {
          throw ReplayError("second branch of a split must identify the shared points");
        }
      }
    }

    if (const auto* v = std::get_if<step::HpVerified>(&s)) {
      if (!st.hp_holds(v->tuple)) throw ReplayError("HP configuration does not hold");
    } else if (const auto* v = std::get_if<step::ConjugateIntroduced>(&s)) {
      const auto* hp = prev ? std::get_if<step::HpVerified>(prev) : nullptr;
      if (!hp || !st.same_key(key_of(hp->tuple), v->key)) {
        throw ReplayError("conjugate introduced without a verified configuration for its key");
      }
      if (st.lookup(v->key)) throw ReplayError("conjugate introduced twice for one key");
      if (v->point != st.names.size()) throw ReplayError("conjugate point id is not fresh");
      st.names.push_back(v->name);
      st.parent.push_back(v->point);
      st.registry.emplace_back(v->key, v->point);
    } else if (const auto* v = std::get_if<step::LineAdded>(&s)) {
      if (v->line != st.lines.size()) throw ReplayError("line id out of sequence");
      auto value = st.lookup(v->key);
      if (!value) throw ReplayError("line added for a conjugate that was never introduced");
      std::vector<PointId> expect;
      if (v->reason == step::LineReason::ConjugateAxiom) {
        expect = {v->key.y, v->key.x, v->key.z, *value};
      } else {
        if (!v->witness) throw ReplayError("witness line without its configuration");
        if (!st.same_key(key_of(*v->witness), v->key)) throw ReplayError("witness is for another key");
        if (!st.hp_holds(*v->witness)) throw ReplayError("witness configuration does not hold");
        expect = {v->witness->p, v->witness->r, *value};
      }
      if (st.resolve(expect) != st.resolve(v->points)) throw ReplayError("line content mismatch");
      st.lines.push_back(st.resolve(v->points));
      st.alive.push_back(true);
    } else if (const auto* v = std::get_if<step::LinesMerged>(&s)) {
      st.line_alive(v->kept);
      st.line_alive(v->absorbed);
      if (v->kept == v->absorbed) throw ReplayError("line merged with itself");
      const auto u = st.find(v->u), w = st.find(v->v);
      if (u == w) throw ReplayError("merge justification uses a single point");
      for (auto l : {v->kept, v->absorbed}) {
        if (!st.lines[l].count(u) || !st.lines[l].count(w)) {
          throw ReplayError("merge justification points are not on both lines");
        }
      }
      if (!in_prefix && !(st.is_base(u) && st.is_base(w))) {
        throw ReplayError("unconditional line merge needs two shared base points");
      }
      st.lines[v->kept].insert(st.lines[v->absorbed].begin(), st.lines[v->absorbed].end());
      st.lines[v->absorbed].clear();
      st.alive[v->absorbed] = false;
    } else if (const auto* v = std::get_if<step::PointsMerged>(&s)) {
      if (v->reason == step::MergeReason::CaseSplit) {
        if (!in_prefix) throw ReplayError("split merge outside a split branch");
      } else {
        if (v->entry_a >= st.registry.size() || v->entry_b >= st.registry.size() ||
            v->entry_a == v->entry_b) {
          throw ReplayError("registry merge cites unknown entries");
        }
        const auto& ea = st.registry[v->entry_a];
        const auto& eb = st.registry[v->entry_b];
        if (!st.same_key(ea.first, eb.first)) throw ReplayError("registry keys differ");
        std::set<PointId> claimed{st.find(v->u), st.find(v->v)};
        std::set<PointId> values{st.find(ea.second), st.find(eb.second)};
        if (claimed != values) throw ReplayError("registry merge of the wrong points");
      }
      st.merge(v->u, v->v);
    } else if (const auto* v = std::get_if<step::CaseSplit>(&s)) {
      if (!last || !has_branches) throw ReplayError("a split must end its node");
      st.line_alive(v->line_a);
      st.line_alive(v->line_b);
      if (v->line_a >= v->line_b) throw ReplayError("split lines out of order");
      std::set<PointId> common;
      for (auto p : st.lines[v->line_a]) {
        if (st.lines[v->line_b].count(p)) common.insert(p);
      }
      if (common.size() < 2 || common != st.resolve(v->shared) ||
          common.size() != v->shared.size()) {
        throw ReplayError("split does not list the shared points of its lines");
      }
    } else if (const auto* v = std::get_if<step::Contradiction>(&s)) {
      if (!last || has_branches) throw ReplayError("a contradiction must end its branch");
      justify(*v, st);
    }
  }

  static void justify(const step::Contradiction& c, const CheckState& st) {
    for (auto p : c.witness) {
      if (!st.is_base(p)) throw ReplayError("contradiction witness is not a base point");
    }
    if (c.kind == step::ContradictionKind::BasePointsMerged) {
      if (c.witness.size() != 2 || c.witness[0] == c.witness[1] ||
          st.find(c.witness[0]) != st.find(c.witness[1])) {
        throw ReplayError("claimed base identification did not happen");
      }
      return;
    }
    if (c.witness.size() != 3 || !c.line) throw ReplayError("malformed contradiction");
    st.line_alive(*c.line);
    if (rank(*st.base, c.witness) != 3) throw ReplayError("witness triple is dependent in the base");
    for (auto p : c.witness) {
      if (!st.lines[*c.line].count(st.find(p))) throw ReplayError("witness point is off the line");
    }
  }

  ReplayReport& report_;
};

}  // namespace

ReplayReport replay_trace(const Rank3Geometry& base, const DerivationTrace& trace) {
  ReplayReport report;
  try {
    Replayer r(report);
    r.run(trace.root, CheckState(base), {});
    const auto actual = report.open_leaves == 0 ? Status::Contradiction : Status::Consistent;
    if (actual != trace.claimed) {
      throw ReplayError("claimed " + to_string(trace.claimed) + " but replay ends " + to_string(actual));
    }
    if (report.open_leaves == 1) report.survivor = std::move(r.survivor_);
    report.ok = true;
  } catch (const std::exception& e) {
    report.ok = false;
    report.error = e.what();
  }
  return report;
}

bool check_trace(const Rank3Geometry& base, const DerivationTrace& trace) {
  return replay_trace(base, trace).ok;
}

bool same_geometry(const Rank3Geometry& a, const Rank3Geometry& b) {
  if (a.names() != b.names()) return false;
  auto named = [](const Rank3Geometry& g) {
    std::vector<std::vector<std::string>> out;
    for (const auto& l : g.long_lines()) {
      std::vector<std::string> pts;
      for (auto p : l) pts.push_back(g.name(p));
      std::sort(pts.begin(), pts.end());
      out.push_back(std::move(pts));
    }
    std::sort(out.begin(), out.end());
    return out;
  };
  return named(a) == named(b);
}

ReplayReport check_certificate(const Certificate& cert) {
  ReplayReport total;
  if (cert.phases.empty()) {
    total.error = "certificate has no phases";
    return total;
  }
  for (std::size_t k = 0; k < cert.phases.size(); ++k) {
    const auto& phase = cert.phases[k];
    if (k > 0) {
      if (!total.survivor || !same_geometry(*total.survivor, phase.base)) {
        total.ok = false;
        total.error = "phase '" + phase.label +
                      "' does not start from the geometry produced by the previous phase";
        return total;
      }
    }
    auto r = replay_trace(phase.base, phase.trace);
    const auto checked = total.steps_checked + r.steps_checked;
    if (!r.ok) {
      r.error = "phase '" + phase.label + "': " + r.error;
      r.steps_checked = checked;
      return r;
    }
    total = std::move(r);
    total.steps_checked = checked;
  }
  return total;
}

}  // namespace hgeom
