#pragma once

// JSON artifact files. Every file is an envelope
//   {"kind": ..., "version": 1, "payload": {...}, "provenance": {...}}
// with keys in sorted order, tables row-major and cube sets as ascending
// arrays of configuration codes, so serialisation is deterministic.

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "nilkit/cocycle.hpp"
#include "nilkit/constructions.hpp"
#include "nilkit/group.hpp"
#include "nilkit/map.hpp"
#include "nilkit/relation.hpp"

namespace nilkit::io {

using Json = nlohmann::json;

inline constexpr int kFormatVersion = 1;
inline constexpr const char* kToolVersion = "nilkit 0.1.0";

/// Malformed file. `path` is a JSON pointer to the offending value.
class SchemaError : public InputError {
 public:
  SchemaError(const std::string& path, const std::string& reason)
      : InputError("io.SchemaError", path + ": " + reason), path_(path) {}
  const std::string& path() const { return path_; }

 private:
  std::string path_;
};

Json envelope(const std::string& kind, Json payload, Json provenance = Json::object());
/// Checks the envelope and returns the payload. Throws SchemaError.
const Json& open(const Json& doc, std::string_view kind);
std::string kind_of(const Json& doc);

/// Two-space indented text with a trailing newline.
std::string dump(const Json& doc);
/// Throws SchemaError "io.SchemaError" on malformed JSON.
Json parse(std::string_view text);
Json read_file(const std::string& path);
void write_file(const std::string& path, const Json& doc);

/// 64-bit FNV-1a of dump(payload), as 16 hex digits.
std::string digest(const Json& doc);

struct FiltrationFile {
  FiniteGroup group;
  Filtration filtration;
};

// Payload encoders. The decoders validate and throw SchemaError with the
// path of the bad value; module errors (NotAGroup, ...) pass through.
Json to_json(const FiniteGroup& g);
Json to_json(const FiniteGroup& g, const Filtration& f);
Json to_json(const FiniteCubespace& x);
Json to_json(const CubespaceMap& f);
Json to_json(const GroupAction& a);
Json to_json(const GroupValuedFunction& f);
Json to_json(const Cocycle& rho);
Json to_json(const EquivRelation& r);
Json to_json(const Configuration& c);
Json to_json(const Witness& w);
Json to_json(const Verdict& v);

FiniteGroup group_from_json(const Json& p, const std::string& path = "/payload");
FiltrationFile filtration_from_json(const Json& p, const std::string& path = "/payload");
FiniteCubespace cubespace_from_json(const Json& p, const std::string& path = "/payload");
CubespaceMap map_from_json(const Json& p, const std::string& path = "/payload");
GroupAction action_from_json(const Json& p, const std::string& path = "/payload");
GroupValuedFunction function_from_json(const Json& p, const std::string& path = "/payload");
Cocycle cocycle_from_json(const Json& p, const std::string& path = "/payload");
EquivRelation relation_from_json(const Json& p, const std::string& path = "/payload");
Configuration configuration_from_json(const Json& p, const std::string& path);
Witness witness_from_json(const Json& p, const std::string& path);
Verdict verdict_from_json(const Json& p, const std::string& path);

// Whole documents.
inline Json document(const FiniteGroup& g) { return envelope("group", to_json(g)); }
inline Json document(const FiniteGroup& g, const Filtration& f) { return envelope("filtration", to_json(g, f)); }
inline Json document(const FiniteCubespace& x) { return envelope("cubespace", to_json(x)); }
inline Json document(const CubespaceMap& f) { return envelope("map", to_json(f)); }
inline Json document(const GroupAction& a) { return envelope("action", to_json(a)); }
inline Json document(const GroupValuedFunction& f) { return envelope("function", to_json(f)); }
inline Json document(const Cocycle& rho) { return envelope("cocycle", to_json(rho)); }
inline Json document(const EquivRelation& r) { return envelope("relation", to_json(r)); }

/// A certificate: the verdicts obtained on a subject document, plus a free
/// form summary (degrees, structure groups, ...).
Json certificate(const Json& subject, const std::vector<Verdict>& verdicts, Json summary = Json::object());
std::vector<Verdict> certificate_verdicts(const Json& cert);

struct ReplayReport {
  bool subject_matches = false;
  std::size_t failures = 0;    // failing verdicts in the certificate
  std::size_t reproduced = 0;  // of those, how many fail again
  std::vector<std::string> unsupported;  // checks without a replayer
  bool passed() const { return subject_matches && reproduced == failures && unsupported.empty(); }
};

/// Re-runs every failing verdict's witness against the subject (a cubespace
/// or map document). Cubespace checks go through replay_failure; maps add
/// "morphism" and "fibration".
ReplayReport replay_certificate(const Json& cert, const Json& subject);

/// The "morphism" and "fibration" witnesses of a map.
bool replay_map_failure(const CubespaceMap& f, const Verdict& v);

}  // namespace nilkit::io
