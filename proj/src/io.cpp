#include "nilkit/io.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace nilkit::io {

namespace {

std::string at(const std::string& path, const std::string& key) { return path + "/" + key; }
std::string at(const std::string& path, std::size_t k) { return path + "/" + std::to_string(k); }

const Json& field(const Json& p, const std::string& key, const std::string& path) {
  if (!p.is_object()) throw SchemaError(path, "expected an object");
  auto it = p.find(key);
  if (it == p.end()) throw SchemaError(at(path, key), "missing");
  return *it;
}

std::uint64_t as_uint(const Json& v, const std::string& path, std::uint64_t bound = UINT64_MAX) {
  if (!v.is_number_integer() || (v.is_number_integer() && !v.is_number_unsigned() && v.get<std::int64_t>() < 0))
    throw SchemaError(path, "expected a non-negative integer");
  const auto x = v.get<std::uint64_t>();
  if (x >= bound && bound != UINT64_MAX) throw SchemaError(path, "value " + std::to_string(x) + " out of range");
  return x;
}

std::int64_t as_int(const Json& v, const std::string& path) {
  if (!v.is_number_integer()) throw SchemaError(path, "expected an integer");
  return v.get<std::int64_t>();
}

int as_small(const Json& v, const std::string& path, int lo, int hi) {
  const auto x = as_int(v, path);
  if (x < lo || x > hi) throw SchemaError(path, "expected an integer in [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
  return static_cast<int>(x);
}

template <class T>
std::vector<T> uint_array(const Json& v, const std::string& path, std::uint64_t bound = UINT64_MAX) {
  if (!v.is_array()) throw SchemaError(path, "expected an array");
  std::vector<T> out;
  out.reserve(v.size());
  for (std::size_t k = 0; k < v.size(); ++k) out.push_back(static_cast<T>(as_uint(v[k], at(path, k), bound)));
  return out;
}

const std::string& as_string(const Json& v, const std::string& path) {
  if (!v.is_string()) throw SchemaError(path, "expected a string");
  return v.get_ref<const std::string&>();
}

const char* kind_name(MorphismCoord::Kind k) {
  switch (k) {
    case MorphismCoord::Kind::Const0: return "const0";
    case MorphismCoord::Kind::Const1: return "const1";
    case MorphismCoord::Kind::Proj: return "proj";
    case MorphismCoord::Kind::Flip: return "flip";
  }
  return "?";
}

MorphismCoord::Kind kind_from(const std::string& s, const std::string& path) {
  if (s == "const0") return MorphismCoord::Kind::Const0;
  if (s == "const1") return MorphismCoord::Kind::Const1;
  if (s == "proj") return MorphismCoord::Kind::Proj;
  if (s == "flip") return MorphismCoord::Kind::Flip;
  throw SchemaError(path, "unknown coordinate kind '" + s + "'");
}

}  // namespace

Json envelope(const std::string& kind, Json payload, Json provenance) {
  Json doc = {{"kind", kind}, {"version", kFormatVersion}, {"payload", std::move(payload)}};
  if (!provenance.empty()) {
    provenance["tool"] = kToolVersion;
    doc["provenance"] = std::move(provenance);
  }
  return doc;
}

const Json& open(const Json& doc, std::string_view kind) {
  const std::string& k = as_string(field(doc, "kind", ""), "/kind");
  if (k != kind) throw SchemaError("/kind", "expected '" + std::string(kind) + "', found '" + k + "'");
  const auto version = as_int(field(doc, "version", ""), "/version");
  if (version != kFormatVersion) throw SchemaError("/version", "unsupported version " + std::to_string(version));
  return field(doc, "payload", "");
}

std::string kind_of(const Json& doc) { return as_string(field(doc, "kind", ""), "/kind"); }

std::string dump(const Json& doc) { return doc.dump(2) + "\n"; }

Json parse(std::string_view text) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw SchemaError("", std::string("malformed JSON: ") + e.what());
  }
}

Json read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("io.NoFile", "cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse(ss.str());
}

void write_file(const std::string& path, const Json& doc) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw InputError("io.NoFile", "cannot write " + path);
  out << dump(doc);
  if (!out) throw InputError("io.NoFile", "write failed for " + path);
}

std::string digest(const Json& doc) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char ch : doc.dump()) {
    h ^= ch;
    h *= 1099511628211ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

// ---- payloads ----

Json to_json(const FiniteGroup& g) { return {{"order", g.order()}, {"table", g.table()}}; }

FiniteGroup group_from_json(const Json& p, const std::string& path) {
  const auto n = as_uint(field(p, "order", path), at(path, "order"));
  if (n == 0 || n > kMaxGroupOrder) throw SchemaError(at(path, "order"), "order out of range");
  auto table = uint_array<Element>(field(p, "table", path), at(path, "table"), n);
  if (table.size() != n * n) throw SchemaError(at(path, "table"), "expected order^2 entries");
  return validate_group(static_cast<std::uint32_t>(n), std::move(table));
}

Json to_json(const FiniteGroup& g, const Filtration& f) {
  Json levels = Json::array();
  for (const auto& h : f.levels()) levels.push_back(h.elements());
  return {{"group", to_json(g)}, {"levels", std::move(levels)}};
}

FiltrationFile filtration_from_json(const Json& p, const std::string& path) {
  FiltrationFile out;
  out.group = group_from_json(field(p, "group", path), at(path, "group"));
  const Json& lv = field(p, "levels", path);
  if (!lv.is_array()) throw SchemaError(at(path, "levels"), "expected an array");
  std::vector<std::vector<Element>> chain;
  for (std::size_t k = 0; k < lv.size(); ++k)
    chain.push_back(uint_array<Element>(lv[k], at(at(path, "levels"), k), out.group.order()));
  out.filtration = validate_filtration(out.group, chain);
  return out;
}

Json to_json(const FiniteCubespace& x) {
  Json cubes = Json::array();
  for (int l = 0; l <= x.lmax(); ++l) cubes.push_back(x.cubes(l).codes());
  return {{"points", x.points()}, {"lmax", x.lmax()}, {"cubes", std::move(cubes)}};
}

FiniteCubespace cubespace_from_json(const Json& p, const std::string& path) {
  const auto n = as_uint(field(p, "points", path), at(path, "points"));
  if (n == 0 || n > UINT32_MAX) throw SchemaError(at(path, "points"), "point count out of range");
  const int lmax = as_small(field(p, "lmax", path), at(path, "lmax"), 0, kMaxCubeDim);
  const Json& cs = field(p, "cubes", path);
  if (!cs.is_array() || cs.size() != static_cast<std::size_t>(lmax) + 1)
    throw SchemaError(at(path, "cubes"), "expected lmax+1 cube sets");
  std::vector<std::vector<CubeCode>> cubes;
  for (int l = 0; l <= lmax; ++l) {
    const std::string sp = at(at(path, "cubes"), static_cast<std::size_t>(l));
    const ConfigCodec codec(static_cast<PointId>(n), l);
    auto codes = uint_array<CubeCode>(cs[l], sp, codec.space_size());
    for (std::size_t k = 1; k < codes.size(); ++k)
      if (codes[k] <= codes[k - 1]) throw SchemaError(at(sp, k), "cube codes must be strictly ascending");
    cubes.push_back(std::move(codes));
  }
  return FiniteCubespace(static_cast<PointId>(n), std::move(cubes));
}

Json to_json(const CubespaceMap& f) {
  return {{"source", to_json(*f.source)}, {"target", to_json(*f.target)}, {"map", f.map}};
}

CubespaceMap map_from_json(const Json& p, const std::string& path) {
  auto source = share(cubespace_from_json(field(p, "source", path), at(path, "source")));
  auto target = share(cubespace_from_json(field(p, "target", path), at(path, "target")));
  auto map = uint_array<PointId>(field(p, "map", path), at(path, "map"), target->points());
  if (map.size() != source->points()) throw SchemaError(at(path, "map"), "expected one image per source point");
  return CubespaceMap(std::move(source), std::move(target), std::move(map));
}

Json to_json(const GroupAction& a) {
  return {{"group", to_json(a.group())}, {"points", a.points()}, {"table", a.table()}};
}

GroupAction action_from_json(const Json& p, const std::string& path) {
  auto g = group_from_json(field(p, "group", path), at(path, "group"));
  const auto n = as_uint(field(p, "points", path), at(path, "points"));
  if (n == 0 || n > UINT32_MAX) throw SchemaError(at(path, "points"), "point count out of range");
  auto table = uint_array<PointId>(field(p, "table", path), at(path, "table"), n);
  if (table.size() != n * g.order()) throw SchemaError(at(path, "table"), "expected order*points entries");
  return GroupAction(std::move(g), static_cast<PointId>(n), std::move(table));
}

Json to_json(const GroupValuedFunction& f) {
  return {{"domain", to_json(*f.domain)}, {"group", to_json(f.group.group())}, {"values", f.values}};
}

GroupValuedFunction function_from_json(const Json& p, const std::string& path) {
  auto domain = share(cubespace_from_json(field(p, "domain", path), at(path, "domain")));
  auto a = abelian_invariants(group_from_json(field(p, "group", path), at(path, "group")));
  auto values = uint_array<Element>(field(p, "values", path), at(path, "values"), a.order());
  if (values.size() != domain->points()) throw SchemaError(at(path, "values"), "expected one value per point");
  return GroupValuedFunction(std::move(domain), std::move(a), std::move(values));
}

Json to_json(const Cocycle& rho) {
  return {{"level", rho.level},
          {"domain", to_json(*rho.domain)},
          {"group", to_json(rho.group.group())},
          {"values", rho.values}};
}

Cocycle cocycle_from_json(const Json& p, const std::string& path) {
  auto domain = share(cubespace_from_json(field(p, "domain", path), at(path, "domain")));
  const int level = as_small(field(p, "level", path), at(path, "level"), 0, domain->lmax());
  auto a = abelian_invariants(group_from_json(field(p, "group", path), at(path, "group")));
  auto values = uint_array<Element>(field(p, "values", path), at(path, "values"), a.order());
  if (values.size() != domain->cubes(level).size())
    throw SchemaError(at(path, "values"), "expected one value per cube of the level");
  return Cocycle(level, std::move(domain), std::move(a), std::move(values));
}

Json to_json(const EquivRelation& r) { return {{"labels", r.labels()}, {"classes", r.class_count()}}; }

EquivRelation relation_from_json(const Json& p, const std::string& path) {
  auto labels = uint_array<std::uint32_t>(field(p, "labels", path), at(path, "labels"));
  auto r = EquivRelation::from_labels(labels);
  if (r.labels() != labels) throw SchemaError(at(path, "labels"), "labels must number classes by least member");
  return r;
}

Json to_json(const Configuration& c) { return {{"dim", c.dim}, {"values", c.values}}; }

Configuration configuration_from_json(const Json& p, const std::string& path) {
  const int dim = as_small(field(p, "dim", path), at(path, "dim"), 0, kMaxCubeDim);
  auto values = uint_array<PointId>(field(p, "values", path), at(path, "values"));
  if (values.size() != vertex_count(dim)) throw SchemaError(at(path, "values"), "expected 2^dim values");
  return Configuration(dim, std::move(values));
}

Json to_json(const Witness& w) {
  Json out = Json::object();
  Json configs = Json::array();
  for (const auto& c : w.configs) configs.push_back(to_json(c));
  out["configs"] = std::move(configs);
  out["ints"] = w.ints;
  if (w.corner) out["corner"] = {{"dim", w.corner->dim}, {"values", w.corner->values}};
  if (w.morphism) {
    Json coords = Json::array();
    for (const auto& c : w.morphism->coords()) coords.push_back(Json::array({kind_name(c.kind), c.index}));
    out["morphism"] = {{"source_dim", w.morphism->source_dim()}, {"coords", std::move(coords)}};
  }
  if (w.face) {
    Json fixed = Json::array();
    for (auto [i, v] : w.face->fixed()) fixed.push_back(Json::array({i, v}));
    out["face"] = {{"ambient_dim", w.face->ambient_dim()}, {"fixed", std::move(fixed)}};
  }
  return out;
}

Witness witness_from_json(const Json& p, const std::string& path) {
  Witness w;
  const Json& cs = field(p, "configs", path);
  if (!cs.is_array()) throw SchemaError(at(path, "configs"), "expected an array");
  for (std::size_t k = 0; k < cs.size(); ++k) w.configs.push_back(configuration_from_json(cs[k], at(at(path, "configs"), k)));
  const Json& ints = field(p, "ints", path);
  if (!ints.is_array()) throw SchemaError(at(path, "ints"), "expected an array");
  for (std::size_t k = 0; k < ints.size(); ++k) w.ints.push_back(as_int(ints[k], at(at(path, "ints"), k)));
  if (p.contains("corner")) {
    const std::string cp = at(path, "corner");
    const Json& c = p["corner"];
    const int dim = as_small(field(c, "dim", cp), at(cp, "dim"), 0, kMaxCubeDim);
    auto values = uint_array<PointId>(field(c, "values", cp), at(cp, "values"));
    if (values.size() + 1 != vertex_count(dim)) throw SchemaError(at(cp, "values"), "expected 2^dim - 1 values");
    w.corner = Corner(dim, std::move(values));
  }
  if (p.contains("morphism")) {
    const std::string mp = at(path, "morphism");
    const Json& m = p["morphism"];
    const int src = as_small(field(m, "source_dim", mp), at(mp, "source_dim"), 0, kMaxCubeDim);
    const Json& coords = field(m, "coords", mp);
    if (!coords.is_array()) throw SchemaError(at(mp, "coords"), "expected an array");
    std::vector<MorphismCoord> cs2;
    for (std::size_t k = 0; k < coords.size(); ++k) {
      const std::string kp = at(at(mp, "coords"), k);
      if (!coords[k].is_array() || coords[k].size() != 2) throw SchemaError(kp, "expected [kind, index]");
      cs2.push_back({kind_from(as_string(coords[k][0], at(kp, 0)), at(kp, 0)),
                     as_small(coords[k][1], at(kp, 1), 0, kMaxCubeDim)});
    }
    w.morphism = CubeMorphism(src, std::move(cs2));
  }
  if (p.contains("face")) {
    const std::string fp = at(path, "face");
    const Json& f = p["face"];
    const int dim = as_small(field(f, "ambient_dim", fp), at(fp, "ambient_dim"), 0, kMaxCubeDim);
    const Json& fixed = field(f, "fixed", fp);
    if (!fixed.is_array()) throw SchemaError(at(fp, "fixed"), "expected an array");
    std::vector<std::pair<int, int>> fx;
    for (std::size_t k = 0; k < fixed.size(); ++k) {
      const std::string kp = at(at(fp, "fixed"), k);
      if (!fixed[k].is_array() || fixed[k].size() != 2) throw SchemaError(kp, "expected [coordinate, value]");
      fx.emplace_back(as_small(fixed[k][0], at(kp, 0), 1, dim), as_small(fixed[k][1], at(kp, 1), 0, 1));
    }
    w.face = Face(dim, std::move(fx));
  }
  return w;
}

Json to_json(const Verdict& v) {
  Json out = {{"check", v.check}, {"level", v.level}, {"passed", v.passed}, {"detail", v.detail}, {"examined", v.examined}};
  if (v.witness) out["witness"] = to_json(*v.witness);
  return out;
}

Verdict verdict_from_json(const Json& p, const std::string& path) {
  Verdict v;
  v.check = as_string(field(p, "check", path), at(path, "check"));
  v.level = static_cast<int>(as_int(field(p, "level", path), at(path, "level")));
  const Json& passed = field(p, "passed", path);
  if (!passed.is_boolean()) throw SchemaError(at(path, "passed"), "expected a boolean");
  v.passed = passed.get<bool>();
  v.detail = as_string(field(p, "detail", path), at(path, "detail"));
  v.examined = as_uint(field(p, "examined", path), at(path, "examined"));
  if (p.contains("witness")) v.witness = witness_from_json(p["witness"], at(path, "witness"));
  return v;
}

// ---- certificates ----

Json certificate(const Json& subject, const std::vector<Verdict>& verdicts, Json summary) {
  Json vs = Json::array();
  bool all = true;
  for (const auto& v : verdicts) {
    vs.push_back(to_json(v));
    all = all && v.passed;
  }
  Json payload = {{"subject", {{"kind", kind_of(subject)}, {"digest", digest(subject)}}},
                  {"verdicts", std::move(vs)},
                  {"passed", all},
                  {"summary", std::move(summary)}};
  return envelope("certificate", std::move(payload));
}

std::vector<Verdict> certificate_verdicts(const Json& cert) {
  const Json& p = open(cert, "certificate");
  const Json& vs = field(p, "verdicts", "/payload");
  if (!vs.is_array()) throw SchemaError("/payload/verdicts", "expected an array");
  std::vector<Verdict> out;
  for (std::size_t k = 0; k < vs.size(); ++k) out.push_back(verdict_from_json(vs[k], at("/payload/verdicts", k)));
  return out;
}

bool replay_map_failure(const CubespaceMap& f, const Verdict& v) {
  if (v.passed || !v.witness) return false;
  const Witness& w = *v.witness;
  if (v.check == "morphism") {
    if (w.configs.size() != 1) return false;
    return f.source->contains(w.configs[0]) && !f.target->contains(f.apply(w.configs[0]));
  }
  if (v.check == "fibration") {
    if (!w.corner || w.configs.size() != 1) return false;
    const Configuration& target = w.configs[0];
    if (!f.target->contains(target) || target.dim != w.corner->dim) return false;
    for (VertexIndex k = 0; k + 1 < vertex_count(target.dim); ++k)
      if (f.map[w.corner->values[k]] != target[k]) return false;
    try {
      for (const auto& c : complete_corner(*f.source, *w.corner))
        if (f.apply(c) == target) return false;
    } catch (const InputError&) {
      return false;
    }
    return true;
  }
  return replay_failure(*f.source, v);
}

ReplayReport replay_certificate(const Json& cert, const Json& subject) {
  ReplayReport r;
  const Json& p = open(cert, "certificate");
  const Json& subj = field(p, "subject", "/payload");
  r.subject_matches = as_string(field(subj, "digest", "/payload/subject"), "/payload/subject/digest") == digest(subject);
  const std::string kind = kind_of(subject);
  std::optional<FiniteCubespace> space;
  std::optional<CubespaceMap> map;
  if (kind == "cubespace")
    space = cubespace_from_json(open(subject, "cubespace"));
  else if (kind == "map")
    map = map_from_json(open(subject, "map"));
  static const std::vector<std::string> space_checks{"invariance", "ergodic", "fibrant", "uniqueness", "glueing"};
  auto supported = [&](const std::string& check) {
    if (std::find(space_checks.begin(), space_checks.end(), check) != space_checks.end()) return space || map;
    return map && (check == "morphism" || check == "fibration");
  };
  for (const auto& v : certificate_verdicts(cert)) {
    if (v.passed) continue;
    if (!supported(v.check)) {
      r.unsupported.push_back(v.check);
      continue;
    }
    ++r.failures;
    if (space ? replay_failure(*space, v) : replay_map_failure(*map, v)) ++r.reproduced;
  }
  return r;
}

}  // namespace nilkit::io
