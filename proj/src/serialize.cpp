#include "hgeom/serialize.hpp"

#include <fstream>
#include <sstream>

namespace hgeom {

namespace {

const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) {
    throw DocumentError(std::string("missing field '") + key + "'");
  }
  return j.at(key);
}

template <typename T>
T get(const Json& j, const char* key) {
  try {
    return field(j, key).get<T>();
  } catch (const nlohmann::json::exception& e) {
    throw DocumentError(std::string("field '") + key + "': " + e.what());
  }
}

void require_schema(const Json& j, const char* kind) {
  if (get<std::string>(j, "schema") != kSchemaVersion) {
    throw DocumentError("unsupported schema version");
  }
  if (get<std::string>(j, "kind") != kind) {
    throw DocumentError(std::string("expected a ") + kind + " document");
  }
}

Json hp_json(const HpTuple& t) { return Json::array({t.y, t.x, t.z, t.p, t.q, t.r, t.s}); }

HpTuple hp_from(const Json& j) {
  const auto v = j.get<std::vector<PointId>>();
  if (v.size() != 7) throw DocumentError("HP tuple needs 7 points");
  return {v[0], v[1], v[2], v[3], v[4], v[5], v[6]};
}

Json key_json(const ConjugateKey& k) { return {{"x", k.x}, {"y", k.y}, {"z", k.z}}; }

ConjugateKey key_from(const Json& j) {
  return {get<PointId>(j, "x"), get<PointId>(j, "y"), get<PointId>(j, "z")};
}

Json step_json(const Step& s) {
  using namespace step;
  if (const auto* v = std::get_if<HpVerified>(&s)) {
    return {{"type", "hp_verified"}, {"tuple", hp_json(v->tuple)}};
  }
  if (const auto* v = std::get_if<ConjugateIntroduced>(&s)) {
    return {{"type", "conjugate_introduced"}, {"key", key_json(v->key)}, {"point", v->point},
            {"name", v->name}};
  }
  if (const auto* v = std::get_if<LineAdded>(&s)) {
    Json j{{"type", "line_added"},
           {"line", v->line},
           {"points", v->points},
           {"reason", v->reason == LineReason::ConjugateAxiom ? "conjugate_axiom" : "harmonic_witness"},
           {"key", key_json(v->key)}};
    if (v->witness) j["witness"] = hp_json(*v->witness);
    return j;
  }
  if (const auto* v = std::get_if<LinesMerged>(&s)) {
    return {{"type", "lines_merged"}, {"kept", v->kept}, {"absorbed", v->absorbed},
            {"shared", Json::array({v->u, v->v})}};
  }
  if (const auto* v = std::get_if<PointsMerged>(&s)) {
    Json j{{"type", "points_merged"},
           {"points", Json::array({v->u, v->v})},
           {"reason", v->reason == MergeReason::Registry ? "registry" : "case_split"}};
    if (v->reason == MergeReason::Registry) j["entries"] = Json::array({v->entry_a, v->entry_b});
    return j;
  }
  if (const auto* v = std::get_if<CaseSplit>(&s)) {
    return {{"type", "case_split"}, {"lines", Json::array({v->line_a, v->line_b})}, {"shared", v->shared}};
  }
  const auto& c = std::get<Contradiction>(s);
  Json j{{"type", "contradiction"},
         {"kind", c.kind == ContradictionKind::IndependentLine ? "independent_line" : "base_points_merged"},
         {"witness", c.witness}};
  if (c.line) j["line"] = *c.line;
  return j;
}

std::pair<std::uint64_t, std::uint64_t> pair_from(const Json& j, const char* key) {
  const auto v = get<std::vector<std::uint64_t>>(j, key);
  if (v.size() != 2) throw DocumentError(std::string("field '") + key + "' needs two entries");
  return {v[0], v[1]};
}

Step step_from(const Json& j) {
  using namespace step;
  const auto type = get<std::string>(j, "type");
  try {
    if (type == "hp_verified") return HpVerified{hp_from(field(j, "tuple"))};
    if (type == "conjugate_introduced") {
      return ConjugateIntroduced{key_from(field(j, "key")), get<PointId>(j, "point"),
                                 get<std::string>(j, "name")};
    }
    if (type == "line_added") {
      const auto reason = get<std::string>(j, "reason");
      if (reason != "conjugate_axiom" && reason != "harmonic_witness") {
        throw DocumentError("unknown line reason '" + reason + "'");
      }
      LineAdded s{get<LineId>(j, "line"), get<PointSet>(j, "points"),
                  reason == "conjugate_axiom" ? LineReason::ConjugateAxiom : LineReason::HarmonicWitness,
                  key_from(field(j, "key")), std::nullopt};
      if (j.contains("witness")) s.witness = hp_from(j.at("witness"));
      return s;
    }
    if (type == "lines_merged") {
      const auto [u, v] = pair_from(j, "shared");
      return LinesMerged{get<LineId>(j, "kept"), get<LineId>(j, "absorbed"), static_cast<PointId>(u),
                         static_cast<PointId>(v)};
    }
    if (type == "points_merged") {
      const auto [u, v] = pair_from(j, "points");
      const auto reason = get<std::string>(j, "reason");
      if (reason != "registry" && reason != "case_split") {
        throw DocumentError("unknown merge reason '" + reason + "'");
      }
      PointsMerged s{static_cast<PointId>(u), static_cast<PointId>(v),
                     reason == "registry" ? MergeReason::Registry : MergeReason::CaseSplit, 0, 0};
      if (s.reason == MergeReason::Registry) {
        const auto [a, b] = pair_from(j, "entries");
        s.entry_a = a;
        s.entry_b = b;
      }
      return s;
    }
    if (type == "case_split") {
      const auto [a, b] = pair_from(j, "lines");
      return CaseSplit{static_cast<LineId>(a), static_cast<LineId>(b), get<PointSet>(j, "shared")};
    }
    if (type == "contradiction") {
      const auto kind = get<std::string>(j, "kind");
      if (kind != "independent_line" && kind != "base_points_merged") {
        throw DocumentError("unknown contradiction kind '" + kind + "'");
      }
      Contradiction c{kind == "independent_line" ? ContradictionKind::IndependentLine
                                                 : ContradictionKind::BasePointsMerged,
                      get<std::vector<PointId>>(j, "witness"), std::nullopt};
      if (j.contains("line")) c.line = get<LineId>(j, "line");
      return c;
    }
  } catch (const nlohmann::json::exception& e) {
    throw DocumentError("step '" + type + "': " + e.what());
  }
  throw DocumentError("unknown step type '" + type + "'");
}

Status status_from(const std::string& s) {
  if (s == "Consistent") return Status::Consistent;
  if (s == "Contradiction") return Status::Contradiction;
  throw DocumentError("unknown status '" + s + "'");
}

}  // namespace

Json geometry_to_json(const Rank3Geometry& g) {
  Json points = Json::array();
  for (PointId p = 0; p < g.point_count(); ++p) points.push_back({{"id", p}, {"name", g.name(p)}});
  return {{"points", points}, {"long_lines", g.long_lines()}};
}

Rank3Geometry geometry_from_json(const Json& j) {
  const auto& pts = field(j, "points");
  if (!pts.is_array()) throw DocumentError("'points' must be an array");
  std::vector<std::string> names;
  for (const auto& p : pts) {
    if (get<PointId>(p, "id") != names.size()) throw DocumentError("point ids must be dense and ordered");
    names.push_back(get<std::string>(p, "name"));
  }
  auto lines = get<std::vector<std::vector<PointId>>>(j, "long_lines");
  std::vector<PointSet> sets;
  for (auto& l : lines) {
    auto s = make_set(l);
    if (s.size() != l.size()) throw DocumentError("a long line repeats a point");
    sets.push_back(std::move(s));
  }
  try {
    Rank3Geometry g(std::move(names), std::move(sets));
    const auto violations = validate(g);
    if (!violations.empty()) throw DocumentError("invalid geometry: " + violations.front().message);
    return g;
  } catch (const GeometryError& e) {
    throw DocumentError(std::string("invalid geometry: ") + e.what());
  }
}

Json to_json(const GeometryDocument& doc) {
  Json j = geometry_to_json(doc.geometry);
  j["schema"] = kSchemaVersion;
  j["kind"] = "geometry";
  if (doc.provenance) {
    j["provenance"] = {{"construction", doc.provenance->construction},
                       {"parameters", doc.provenance->parameters}};
  }
  return j;
}

GeometryDocument geometry_document_from_json(const Json& j) {
  require_schema(j, "geometry");
  GeometryDocument doc{geometry_from_json(j), std::nullopt};
  if (j.contains("provenance")) {
    const auto& p = j.at("provenance");
    doc.provenance = Provenance{get<std::string>(p, "construction"),
                                p.contains("parameters") ? p.at("parameters") : Json::object()};
  }
  return doc;
}

Json trace_to_json(const TraceNode& node) {
  Json steps = Json::array();
  for (const auto& s : node.steps) steps.push_back(step_json(s));
  Json branches = Json::array();
  for (const auto& b : node.branches) branches.push_back(trace_to_json(b));
  return {{"steps", steps}, {"branches", branches}};
}

TraceNode trace_from_json(const Json& j) {
  TraceNode node;
  const auto& steps = field(j, "steps");
  const auto& branches = field(j, "branches");
  if (!steps.is_array() || !branches.is_array()) throw DocumentError("trace node fields must be arrays");
  for (const auto& s : steps) node.steps.push_back(step_from(s));
  for (const auto& b : branches) node.branches.push_back(trace_from_json(b));
  return node;
}

Json to_json(const Certificate& cert) {
  Json phases = Json::array();
  for (const auto& ph : cert.phases) {
    phases.push_back({{"label", ph.label},
                      {"base", geometry_to_json(ph.base)},
                      {"claimed", to_string(ph.trace.claimed)},
                      {"notes", ph.trace.notes},
                      {"trace", trace_to_json(ph.trace.root)}});
  }
  return {{"schema", kSchemaVersion}, {"kind", "trace"}, {"claimed", to_string(cert.claimed())},
          {"phases", phases}};
}

Certificate certificate_from_json(const Json& j) {
  require_schema(j, "trace");
  Certificate cert;
  const auto& phases = field(j, "phases");
  if (!phases.is_array()) throw DocumentError("'phases' must be an array");
  for (const auto& ph : phases) {
    Phase phase{get<std::string>(ph, "label"), geometry_from_json(field(ph, "base")), {}};
    phase.trace.root = trace_from_json(field(ph, "trace"));
    phase.trace.claimed = status_from(get<std::string>(ph, "claimed"));
    phase.trace.notes = get<std::vector<std::string>>(ph, "notes");
    cert.phases.push_back(std::move(phase));
  }
  if (status_from(get<std::string>(j, "claimed")) != cert.claimed()) {
    throw DocumentError("document status disagrees with its last phase");
  }
  return cert;
}

Json to_json(const Representation& rep) {
  Json coords = Json::object();
  const auto& g = *rep.geometry;
  for (PointId p = 0; p < g.point_count(); ++p) coords[g.name(p)] = rep.points[p].coords;
  return {{"schema", kSchemaVersion},
          {"kind", "representation"},
          {"field", {{"p", rep.field->characteristic()},
                     {"m", rep.field->degree()},
                     {"modulus", rep.field->modulus_text()}}},
          {"geometry", geometry_to_json(g)},
          {"coordinates", coords}};
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DocumentError("cannot read '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  const auto text = buf.str();
  if (text.find_first_not_of(" \t\r\n") == std::string::npos) {
    throw DocumentError("'" + path + "' is empty");
  }
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw DocumentError("'" + path + "': " + e.what());
  }
}

std::string canonical_dump(const Json& j) { return j.dump(2) + "\n"; }

void write_json_file(const std::string& path, const Json& j) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DocumentError("cannot write '" + path + "'");
  out << canonical_dump(j);
}

}  // namespace hgeom
