#include "nervelab/io.hpp"

#include <regex>
#include <sstream>

namespace nervelab::io {

namespace {

[[noreturn]] void fail(const std::string& path, const std::string& message) {
  throw Error(Errc::schema_error, path + ": " + message);
}

std::string key_path(const std::string& path, const std::string& key) {
  static const std::regex plain("[A-Za-z_][A-Za-z0-9_]*");
  if (std::regex_match(key, plain)) return path + "." + key;
  return path + "[" + Json(key).dump() + "]";
}

std::string index_path(const std::string& path, std::size_t i) { return path + "[" + std::to_string(i) + "]"; }

const Json& require_object(const Json& j, const std::string& path) {
  if (!j.is_object()) fail(path, "expected an object");
  return j;
}

const Json& require_array(const Json& j, const std::string& path) {
  if (!j.is_array()) fail(path, "expected an array");
  return j;
}

const Json& field(const Json& j, const std::string& path, const std::string& key) {
  require_object(j, path);
  auto it = j.find(key);
  if (it == j.end()) fail(path, "missing field \"" + key + "\"");
  return *it;
}

const Json* optional_field(const Json& j, const std::string& path, const std::string& key) {
  require_object(j, path);
  auto it = j.find(key);
  return it == j.end() ? nullptr : &*it;
}

std::string as_string(const Json& j, const std::string& path) {
  if (!j.is_string()) fail(path, "expected a string");
  return j.get<std::string>();
}

int as_level(const Json& j, const std::string& path) {
  if (!j.is_number_integer() || j.get<long long>() < 0 || j.get<long long>() > 64)
    fail(path, "expected an integer level in [0, 64]");
  return j.get<int>();
}

std::vector<std::string> string_array(const Json& j, const std::string& path) {
  require_array(j, path);
  std::vector<std::string> out;
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(as_string(j[i], index_path(path, i)));
  return out;
}

Rational as_rational(const Json& j, const std::string& path) {
  if (j.is_number_integer()) return Rational(j.get<long long>());
  static const std::regex form("(-?[0-9]+)(?:/([0-9]+))?");
  std::smatch m;
  const std::string text = j.is_string() ? j.get<std::string>() : std::string();
  if (!j.is_string() || !std::regex_match(text, m, form))
    fail(path, "expected an integer or a string \"p/q\" (floating-point values are not accepted)");
  boost::multiprecision::cpp_int num(m[1].str());
  boost::multiprecision::cpp_int den(m[2].matched ? m[2].str() : "1");
  if (den == 0) fail(path, "zero denominator");
  return Rational(num, den);
}

/// Runs `body`, re-labelling domain errors raised while reading at `path`.
template <class F>
auto at_path(const std::string& path, F body) {
  try {
    return body();
  } catch (const Error& e) {
    if (e.code() == Errc::schema_error) throw;
    fail(path, e.what());
  }
}

Json simplex_list(const std::vector<Simplex<VertexId>>& simplices) {
  Json out = Json::array();
  for (const auto& s : simplices) out.push_back(s);
  return out;
}

Json nerve_vertex_json(const NerveVertex& v) { return Json::array({v.element, v.level}); }

Json family_json(const Family& family) {
  Json out = Json::array();
  for (const auto& e : family) {
    Json element = Json::object();
    element["id"] = e.id;
    element["level"] = e.set.level;
    element["stars"] = Json(std::vector<std::string>(e.set.core.begin(), e.set.core.end()));
    out.push_back(std::move(element));
  }
  return out;
}

std::vector<Family> families_from_json(const Json& j, int default_level, const std::string& path) {
  require_array(j, path);
  std::vector<Family> levels;
  for (std::size_t n = 0; n < j.size(); ++n) {
    const auto lpath = index_path(path, n);
    require_array(j[n], lpath);
    Family family;
    for (std::size_t i = 0; i < j[n].size(); ++i) {
      const auto epath = index_path(lpath, i);
      const auto& e = require_object(j[n][i], epath);
      family.push_back({as_string(field(e, epath, "id"), key_path(epath, "id")),
                        star_set_from_json(e, default_level, epath)});
    }
    levels.push_back(std::move(family));
  }
  return levels;
}

std::string dot_id(const std::string& s) { return Json(s).dump(); }

std::string f_vector_label(const std::vector<std::size_t>& f) {
  std::string out = "f-vector (";
  for (std::size_t i = 0; i < f.size(); ++i) out += (i ? "," : "") + std::to_string(f[i]);
  return out + ")";
}

template <class V, class Name>
std::string dot_of(const Complex<V>& c, const std::string& name, Name vertex_name) {
  std::ostringstream os;
  os << "graph " << dot_id(name) << " {\n";
  os << "  label=" << dot_id(f_vector_label(c.f_vector())) << ";\n";
  for (const auto& v : c.vertices()) os << "  " << dot_id(vertex_name(v)) << ";\n";
  for (const auto& s : c.simplices())
    if (s.size() == 2) os << "  " << dot_id(vertex_name(s[0])) << " -- " << dot_id(vertex_name(s[1])) << ";\n";
  os << "}\n";
  return os.str();
}

}  // namespace

Json parse(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    fail("$", std::string("invalid JSON: ") + e.what());
  }
}

SimplicialComplex complex_from_json(const Json& j, const std::string& path) {
  const auto spath = key_path(path, "maximal_simplices");
  const auto& raw = require_array(field(j, path, "maximal_simplices"), spath);
  if (raw.empty()) fail(spath, "a complex needs at least one simplex");
  std::vector<Simplex<VertexId>> simplices;
  for (std::size_t i = 0; i < raw.size(); ++i) {
    auto s = string_array(raw[i], index_path(spath, i));
    if (s.empty()) fail(index_path(spath, i), "empty simplex");
    for (std::size_t k = 0; k < s.size(); ++k) {
      if (s[k].empty() || s[k].find_first_of(",{}") != std::string::npos)
        fail(index_path(index_path(spath, i), k), "vertex ids must be nonempty and avoid ',', '{' and '}'");
    }
    simplices.push_back(std::move(s));
  }
  return SimplicialComplex::closure_of(simplices);
}

Json complex_to_json(const SimplicialComplex& c) {
  Json out = Json::object();
  out["maximal_simplices"] = simplex_list(c.maximal_simplices());
  out["f_vector"] = c.f_vector();
  out["dim"] = c.dim();
  return out;
}

BarycentricPoint point_from_json(const Json& j, const std::string& path) {
  BarycentricPoint p;
  p.level = as_level(field(j, path, "level"), key_path(path, "level"));
  const auto cpath = key_path(path, "coords");
  const auto& coords = require_object(field(j, path, "coords"), cpath);
  for (const auto& [v, x] : coords.items()) p.coords[v] = as_rational(x, key_path(cpath, v));
  return p;
}

Json point_to_json(const BarycentricPoint& p) {
  Json out = Json::object();
  out["level"] = p.level;
  out["coords"] = Json::object();
  for (const auto& [v, x] : p.coords) out["coords"][v] = x.str();
  return out;
}

StarSet star_set_from_json(const Json& j, int default_level, const std::string& path) {
  StarSet s;
  const Json* level = optional_field(j, path, "level");
  s.level = level ? as_level(*level, key_path(path, "level")) : default_level;
  const auto stars = string_array(field(j, path, "stars"), key_path(path, "stars"));
  if (stars.empty()) fail(key_path(path, "stars"), "a star-set needs at least one vertex");
  s.core.insert(stars.begin(), stars.end());
  return s;
}

Json star_set_to_json(const StarSet& s) {
  Json out = Json::object();
  out["level"] = s.level;
  out["stars"] = Json(std::vector<std::string>(s.core.begin(), s.core.end()));
  return out;
}

CoverSequence cover_from_json(const Json& j, const std::string& path) {
  const auto space_path = key_path(path, "space");
  const auto base = complex_from_json(field(j, path, "space"), space_path);
  PolyhedralSpace space(base);
  std::optional<int> working;
  if (const Json* w = optional_field(j, path, "working_level")) working = as_level(*w, key_path(path, "working_level"));
  const auto lpath = key_path(path, "levels");
  auto levels = families_from_json(field(j, path, "levels"), working.value_or(0), lpath);
  // Star-set cores are validated one by one so errors carry their path.
  for (std::size_t n = 0; n < levels.size(); ++n)
    for (std::size_t i = 0; i < levels[n].size(); ++i)
      at_path(index_path(index_path(lpath, n), i) + ".stars", [&] {
        validate_star_set(space, levels[n][i].set);
        return 0;
      });
  return at_path(path, [&] { return CoverSequence::make(space, std::move(levels), working); });
}

Json cover_to_json(const CoverSequence& cs) {
  Json out = Json::object();
  out["space"] = complex_to_json(cs.space().base());
  out["working_level"] = cs.working_level();
  out["levels"] = Json::array();
  for (const auto& family : cs.levels()) out["levels"].push_back(family_json(family));
  return out;
}

Json nerve_to_json(const NerveComplex& c) {
  Json out = Json::object();
  out["vertices"] = Json::array();
  for (const auto& v : c.vertices()) out["vertices"].push_back(nerve_vertex_json(v));
  out["maximal_simplices"] = Json::array();
  for (const auto& s : c.maximal_simplices()) {
    Json simplex = Json::array();
    for (const auto& v : s) simplex.push_back(nerve_vertex_json(v));
    out["maximal_simplices"].push_back(std::move(simplex));
  }
  out["f_vector"] = c.f_vector();
  out["dim"] = c.dim();
  return out;
}

Json named_complex_to_json(const Complex<std::string>& c) {
  Json out = Json::object();
  out["maximal_simplices"] = simplex_list(c.maximal_simplices());
  out["f_vector"] = c.f_vector();
  out["dim"] = c.dim();
  return out;
}

CanonicalMap canonical_from_json(const Json& j, const CoverSequence& cs, const std::string& path) {
  CanonicalMap f;
  f.subdivision_level = as_level(field(j, path, "subdivision_level"), key_path(path, "subdivision_level"));
  Kappa kappa = Kappa::omega();
  if (const Json* k = optional_field(j, path, "kappa")) {
    if (!k->is_number_integer() || k->get<long long>() < 1) fail(key_path(path, "kappa"), "expected a positive integer");
    kappa = Kappa::finite(k->get<int>());
  }
  std::string target = "nerve";
  if (const Json* t = optional_field(j, path, "target")) target = as_string(*t, key_path(path, "target"));
  if (target != "nerve" && target != "delta") fail(key_path(path, "target"), "expected \"nerve\" or \"delta\"");

  at_path(path, [&] {
    f.map.source = cs.space().stage(f.subdivision_level).complex;
    f.map.target = target == "delta" ? delta_subcomplex(cs, kappa).complex : nerve(cs, kappa).complex;
    return 0;
  });
  const auto ipath = key_path(path, "vertex_images");
  const auto& images = require_object(field(j, path, "vertex_images"), ipath);
  for (const auto& [v, image] : images.items()) {
    const auto vpath = key_path(ipath, v);
    if (!f.map.source.has_vertex(v))
      fail(vpath, "not a vertex of the stage-" + std::to_string(f.subdivision_level) + " complex");
    if (!image.is_array() || image.size() != 2 || !image[0].is_string())
      fail(vpath, "expected [element id, level]");
    f.map.vertex_images.emplace(v, NerveVertex{image[0].get<std::string>(), as_level(image[1], index_path(vpath, 1))});
  }
  for (const auto& v : f.map.source.vertices())
    if (f.map.vertex_images.count(v) == 0) fail(ipath, "missing image for vertex \"" + v + "\"");
  return f;
}

Json canonical_to_json(const CanonicalMap& f, int kappa, TargetKind kind) {
  Json out = Json::object();
  out["subdivision_level"] = f.subdivision_level;
  out["kappa"] = kappa;
  out["target"] = kind == TargetKind::delta ? "delta" : "nerve";
  out["vertex_images"] = Json::object();
  for (const auto& [v, image] : f.map.vertex_images) out["vertex_images"][v] = nerve_vertex_json(image);
  return out;
}

CRefinement crefinement_from_json(const Json& j, const CoverSequence& source, const std::string& path) {
  const auto fpath = key_path(path, "families");
  CRefinement r{families_from_json(field(j, path, "families"), source.working_level(), fpath), source};
  if (const Json* k = optional_field(j, path, "kappa")) {
    if (!k->is_number_integer() || k->get<long long>() != static_cast<long long>(r.families.size()))
      fail(key_path(path, "kappa"), "must equal the number of families");
  }
  for (std::size_t n = 0; n < r.families.size(); ++n)
    for (std::size_t i = 0; i < r.families[n].size(); ++i)
      at_path(index_path(index_path(fpath, n), i) + ".stars", [&] {
        validate_star_set(source.space(), r.families[n][i].set);
        return 0;
      });
  return r;
}

Json crefinement_to_json(const CRefinement& r) {
  Json out = Json::object();
  out["kappa"] = r.kappa();
  out["families"] = Json::array();
  for (const auto& family : r.families) out["families"].push_back(family_json(family));
  return out;
}

CarrierMappingSequence mapping_from_json(const Json& j, const std::string& path) {
  PolyhedralSpace space(complex_from_json(field(j, path, "space"), key_path(path, "space")));
  const int level = as_level(field(j, path, "level"), key_path(path, "level"));
  auto target = complex_from_json(field(j, path, "target"), key_path(path, "target"));
  std::optional<VertexId> witness;
  if (const Json* q = optional_field(j, path, "cone_witness")) witness = as_string(*q, key_path(path, "cone_witness"));

  std::map<std::string, Simplex<VertexId>> by_token;
  for (const auto& s : space.stage(level).complex.simplices()) by_token.emplace(simplex_token(s), s);

  const auto tpath = key_path(path, "tables");
  const auto& raw = require_array(field(j, path, "tables"), tpath);
  std::vector<CarrierMappingSequence::Table> tables;
  for (std::size_t k = 0; k < raw.size(); ++k) {
    const auto kpath = index_path(tpath, k);
    CarrierMappingSequence::Table table;
    for (const auto& [token, value] : require_object(raw[k], kpath).items()) {
      const auto vpath = key_path(kpath, token);
      auto it = by_token.find(token);
      if (it == by_token.end()) fail(vpath, "not a simplex of the stage-" + std::to_string(level) + " complex");
      Json wrapped = Json::object();
      wrapped["maximal_simplices"] = value;
      table.emplace(it->second, complex_from_json(wrapped, vpath));
    }
    tables.push_back(std::move(table));
  }
  return at_path(path, [&] {
    return CarrierMappingSequence::make(space, level, std::move(target), std::move(tables), std::move(witness));
  });
}

Json mapping_to_json(const CarrierMappingSequence& phi) {
  Json out = Json::object();
  out["space"] = complex_to_json(phi.space().base());
  out["level"] = phi.level();
  out["target"] = complex_to_json(phi.target());
  if (phi.cone_witness()) out["cone_witness"] = *phi.cone_witness();
  out["tables"] = Json::array();
  for (const auto& table : phi.tables()) {
    Json t = Json::object();
    for (const auto& [tau, value] : table) t[simplex_token(tau)] = complex_to_json(value)["maximal_simplices"];
    out["tables"].push_back(std::move(t));
  }
  return out;
}

ConeExtendInput cone_input_from_json(const Json& j, const std::string& path) {
  ConeExtendInput in;
  in.g.source = complex_from_json(field(j, path, "domain"), key_path(path, "domain"));
  in.g.target = complex_from_json(field(j, path, "target"), key_path(path, "target"));
  const auto mpath = key_path(path, "map");
  for (const auto& [v, y] : require_object(field(j, path, "map"), mpath).items()) {
    const auto vpath = key_path(mpath, v);
    if (!in.g.source.has_vertex(v)) fail(vpath, "not a domain vertex");
    const auto image = as_string(y, vpath);
    if (!in.g.target.has_vertex(image)) fail(vpath, "not a target vertex");
    in.g.vertex_images.emplace(v, image);
  }
  for (const auto& v : in.g.source.vertices())
    if (in.g.vertex_images.count(v) == 0) fail(mpath, "missing image for vertex \"" + v + "\"");
  if (!check_simplicial_map(in.g)) fail(mpath, "the map is not simplicial");
  in.apex = as_string(field(j, path, "apex"), key_path(path, "apex"));
  in.witness = as_string(field(j, path, "witness"), key_path(path, "witness"));
  const auto cpath = key_path(path, "chain");
  const auto& chain = require_array(field(j, path, "chain"), cpath);
  for (std::size_t k = 0; k < chain.size(); ++k) in.chain.push_back(complex_from_json(chain[k], index_path(cpath, k)));
  return in;
}

Json simplicial_map_to_json(const SimplicialMap<VertexId, VertexId>& m) {
  Json out = Json::object();
  out["source"] = complex_to_json(m.source);
  out["target"] = complex_to_json(m.target);
  out["vertex_images"] = Json::object();
  for (const auto& [v, y] : m.vertex_images) out["vertex_images"][v] = y;
  return out;
}

Json verdict_to_json(const Verdict& v) {
  Json out = Json::object();
  out["ok"] = v.ok;
  if (!v.ok) {
    out["witness"] = Json::object();
    out["witness"]["check"] = v.check;
    out["witness"]["objects"] = v.witness;
  }
  return out;
}

Json audit_to_json(const std::vector<LevelAudit>& audit) {
  Json out = Json::array();
  for (const auto& a : audit) {
    Json entry = Json::object();
    entry["level"] = a.level;
    entry["vertices"] = a.vertices;
    entry["exhausted"] = a.exhausted;
    // Counts of a successful parallel search depend on scheduling.
    if (a.exhausted) {
      entry["attempts"] = a.stats.attempts;
      entry["accepted"] = a.stats.accepted;
      entry["pruned"] = a.stats.pruned;
      entry["leaves"] = a.stats.leaves;
    }
    out.push_back(std::move(entry));
  }
  return out;
}

namespace {

std::string model_note(int max_level) { return "star-set covers, levels <= " + std::to_string(max_level); }

}  // namespace

Json search_to_json(const SearchResult& r, int kappa, int max_level) {
  Json out = Json::object();
  out["result"] = r.found() ? "found" : "exhausted";
  out["kappa"] = kappa;
  out["level"] = r.level;
  out["model"] = model_note(std::max(max_level, r.level));
  out["audit"] = audit_to_json(r.audit);
  if (r.found()) out["certificate"] = crefinement_to_json(*r.refinement);
  return out;
}

Json mu_report_to_json(const MuReport& r) {
  Json out = Json::object();
  out["mode"] = r.mode;
  out["dim"] = r.dim;
  out["kappa"] = r.kappa;
  out["method"] = r.method;
  out["success"] = r.success;
  if (r.method == "search") {
    out["model"] = model_note(r.max_level);
    out["audit"] = audit_to_json(r.audit);
  }
  if (r.refinement) out["c_refinement"] = crefinement_to_json(*r.refinement);
  if (r.canonical) out["canonical_map"] = canonical_to_json(*r.canonical, r.kappa, TargetKind::delta);
  out["checks"] = Json::object();
  for (const auto& [name, ok] : r.checks) out["checks"][name] = ok;
  if (r.extracted) out["extracted"] = crefinement_to_json(*r.extracted);
  return out;
}

Json skeletal_to_json(const SkeletalSelection& s) {
  Json out = Json::object();
  out["cover"] = cover_to_json(s.cs);
  out["vertex_images"] = Json::array();
  for (const auto& [u, y] : s.map.vertex_images) out["vertex_images"].push_back(Json::array({u.element, u.level, y}));
  return out;
}

Json vertex_selection_to_json(const VertexSelection& s) {
  Json out = Json::object();
  out["cover"] = family_json(s.cover);
  out["vertex_images"] = Json::object();
  for (const auto& [id, y] : s.image) out["vertex_images"][id] = y;
  return out;
}

std::string complex_to_dot(const SimplicialComplex& c, const std::string& name) {
  return dot_of(c, name, [](const VertexId& v) { return v; });
}

std::string nerve_to_dot(const NerveComplex& c, const std::string& name) {
  return dot_of(c, name, [](const NerveVertex& v) { return to_string(v); });
}

std::string dump(Json j) {
  Json out = Json::object();
  out["schema_version"] = schema_version;
  for (auto& [k, v] : j.items()) out[k] = std::move(v);
  return out.dump(2) + "\n";
}

}  // namespace nervelab::io
