#pragma once

#include <optional>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "hgeom/geometry.hpp"
#include "hgeom/linrep.hpp"
#include "hgeom/trace.hpp"

namespace hgeom {

inline constexpr const char* kSchemaVersion = "1";

/// Malformed or unreadable document.
class DocumentError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

using Json = nlohmann::json;

struct Provenance {
  std::string construction;  // "mn", "lift0", "lift", "extend", ...
  Json parameters = Json::object();
};

struct GeometryDocument {
  Rank3Geometry geometry;
  std::optional<Provenance> provenance;
};

Json geometry_to_json(const Rank3Geometry& g);
/// Throws DocumentError on malformed input or a geometry that fails validate().
Rank3Geometry geometry_from_json(const Json& j);

Json to_json(const GeometryDocument& doc);
GeometryDocument geometry_document_from_json(const Json& j);

Json trace_to_json(const TraceNode& node);
TraceNode trace_from_json(const Json& j);

/// TraceDocument: one phase per derivation, each with its base geometry.
Json to_json(const Certificate& cert);
Certificate certificate_from_json(const Json& j);

Json to_json(const Representation& rep);

/// Reads a whole file and parses it; empty or unparsable files are DocumentErrors.
Json read_json_file(const std::string& path);
/// Writes `j` with stable formatting (sorted keys, two-space indent, final newline).
void write_json_file(const std::string& path, const Json& j);
std::string canonical_dump(const Json& j);

}  // namespace hgeom
