#include "hgeom/trace.hpp"

#include <map>
#include <sstream>

namespace hgeom {

std::string to_string(Status s) {
  return s == Status::Contradiction ? "Contradiction" : "Consistent";
}

std::size_t count_steps(const TraceNode& node) {
  auto n = node.steps.size();
  for (const auto& b : node.branches) n += count_steps(b);
  return n;
}

std::size_t count_leaves(const TraceNode& node, bool contradicted) {
  if (!node.branches.empty()) {
    return count_leaves(node.branches[0], contradicted) + count_leaves(node.branches[1], contradicted);
  }
  const bool closed = !node.steps.empty() && std::holds_alternative<step::Contradiction>(node.steps.back());
  return closed == contradicted ? 1 : 0;
}

namespace {

void collect_names(const TraceNode& node, std::map<PointId, std::string>& names) {
  for (const auto& s : node.steps) {
    if (const auto* c = std::get_if<step::ConjugateIntroduced>(&s)) names[c->point] = c->name;
  }
  for (const auto& b : node.branches) collect_names(b, names);
}

class Renderer {
 public:
  Renderer(const Rank3Geometry& base, const TraceNode& root) {
    for (PointId p = 0; p < base.point_count(); ++p) names_[p] = base.name(p);
    collect_names(root, names_);
  }

  void node(const TraceNode& n, const std::string& indent) {
    for (const auto& s : n.steps) out_ << indent << line(s) << "\n";
    for (std::size_t k = 0; k < n.branches.size(); ++k) {
      out_ << indent << "branch " << k << (k == 0 ? " (lines coincide)" : " (points coincide)") << ":\n";
      node(n.branches[k], indent + "  ");
    }
  }

  std::string str() const { return out_.str(); }

 private:
  std::string nm(PointId p) const {
    auto it = names_.find(p);
    return it == names_.end() ? "#" + std::to_string(p) : it->second;
  }
  std::string set(const std::vector<PointId>& pts) const {
    std::string s = "{";
    for (std::size_t k = 0; k < pts.size(); ++k) s += (k ? "," : "") + nm(pts[k]);
    return s + "}";
  }
  std::string hp(const HpTuple& t) const {
    return "HP(" + nm(t.y) + "," + nm(t.x) + "," + nm(t.z) + "," + nm(t.p) + "," + nm(t.q) + "," +
           nm(t.r) + "," + nm(t.s) + ")";
  }
  std::string key(const ConjugateKey& k) const {
    return nm(k.x) + ";{" + nm(k.y) + "," + nm(k.z) + "}";
  }

  std::string line(const Step& s) const {
    using namespace step;
    if (const auto* v = std::get_if<HpVerified>(&s)) return "verified " + hp(v->tuple);
    if (const auto* v = std::get_if<ConjugateIntroduced>(&s)) {
      return "conjugate " + v->name + " := [" + key(v->key) + "]";
    }
    if (const auto* v = std::get_if<LineAdded>(&s)) {
      return "line L" + std::to_string(v->line) + " = " + set(v->points) +
             (v->reason == LineReason::ConjugateAxiom ? "  (conjugate axis)" : "  (harmonic witness)");
    }
    if (const auto* v = std::get_if<LinesMerged>(&s)) {
      return "merge L" + std::to_string(v->absorbed) + " into L" + std::to_string(v->kept) +
             " (share " + nm(v->u) + ", " + nm(v->v) + ")";
    }
    if (const auto* v = std::get_if<PointsMerged>(&s)) {
      return "identify " + nm(v->u) + " = " + nm(v->v) +
             (v->reason == MergeReason::Registry ? "  (registry)" : "  (split)");
    }
    if (const auto* v = std::get_if<CaseSplit>(&s)) {
      return "split on L" + std::to_string(v->line_a) + ", L" + std::to_string(v->line_b) +
             " sharing " + set(v->shared);
    }
    const auto& c = std::get<Contradiction>(s);
    if (c.kind == ContradictionKind::BasePointsMerged) {
      return "CONTRADICTION: base points " + set(c.witness) + " identified";
    }
    return "CONTRADICTION: independent " + set(c.witness) + " on L" + std::to_string(*c.line);
  }

  std::map<PointId, std::string> names_;
  std::ostringstream out_;
};

}  // namespace

std::string render_trace(const Rank3Geometry& base, const DerivationTrace& trace) {
  Renderer r(base, trace.root);
  r.node(trace.root, "");
  return r.str() + "claimed: " + to_string(trace.claimed) + "\n";
}

}  // namespace hgeom
