#include "pwaeb/io.hpp"

#include "pwaeb/errors.hpp"

#include <fstream>
#include <sstream>

namespace pwaeb::io {

namespace {

using certify::Certificate;
using certify::SetSpec;

[[noreturn]] void fail(const std::string& where, const std::string& what) { throw InputError(where + ": " + what); }

const Json& field(const Json& j, const char* key, const std::string& where) {
  if (!j.is_object()) fail(where, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) fail(where, std::string("missing field '") + key + "'");
  return *it;
}

const Json& array_field(const Json& j, const char* key, const std::string& where) {
  const Json& a = field(j, key, where);
  if (!a.is_array()) fail(where + "." + key, "expected an array");
  return a;
}

std::string string_field(const Json& j, const char* key, const std::string& where) {
  const Json& s = field(j, key, where);
  if (!s.is_string()) fail(where + "." + key, "expected a string");
  return s.get<std::string>();
}

std::size_t size_from_json(const Json& j, const std::string& where) {
  if (j.is_number_unsigned()) return j.get<std::size_t>();
  if (j.is_number_integer() && j.get<long long>() >= 0) return static_cast<std::size_t>(j.get<long long>());
  fail(where, "expected a nonnegative integer");
}

std::string at(const std::string& where, std::size_t k) { return where + "[" + std::to_string(k) + "]"; }

std::vector<Vec> matrix_from_json(const Json& j, const std::string& where) {
  if (!j.is_array()) fail(where, "expected an array of rows");
  std::vector<Vec> rows;
  for (std::size_t k = 0; k < j.size(); ++k) rows.push_back(vec_from_json(j[k], at(where, k)));
  return rows;
}

std::vector<Vec> sized_matrix(const Json& j, std::size_t dim, const std::string& where) {
  auto rows = matrix_from_json(j, where);
  for (std::size_t k = 0; k < rows.size(); ++k)
    if (rows[k].size() != dim)
      fail(at(where, k), "has length " + std::to_string(rows[k].size()) + ", expected " + std::to_string(dim));
  return rows;
}

poly::Polyhedron polyhedron_from_json(const Json& j, std::size_t dim, const std::string& where) {
  const auto a = sized_matrix(field(j, "A", where), dim, where + ".A");
  const auto b = vec_from_json(field(j, "b", where), where + ".b");
  if (a.size() != b.size()) fail(where, "A and b have different row counts");
  std::vector<poly::Halfspace> h;
  for (std::size_t k = 0; k < a.size(); ++k) h.push_back({a[k], b[k]});
  return poly::Polyhedron(dim, std::move(h));
}

Json matrix_json(const std::vector<Vec>& rows) {
  Json out = Json::array();
  for (const auto& r : rows) out.push_back(to_json(r));
  return out;
}

certify::Verdict verdict_from_string(const std::string& s, const std::string& where) {
  using certify::Verdict;
  for (auto v : {Verdict::Holds, Verdict::Fails, Verdict::Inconclusive})
    if (certify::to_string(v) == s) return v;
  fail(where, "unknown verdict '" + s + "'");
}

certify::ConeRole role_from_string(const std::string& s, const std::string& where) {
  using certify::ConeRole;
  for (auto r : {ConeRole::Contains, ConeRole::Excludes, ConeRole::Info})
    if (certify::to_string(r) == s) return r;
  fail(where, "unknown cone role '" + s + "'");
}

Certificate certificate_at(const Json& j, const std::string& where) {
  Certificate c;
  c.theorem = string_field(j, "theorem", where);
  c.scope = string_field(j, "scope", where);
  c.verdict = verdict_from_string(string_field(j, "verdict", where), where + ".verdict");
  if (auto it = j.find("condition"); it != j.end()) c.condition = it->get<bool>();
  if (auto it = j.find("necessity_guard"); it != j.end()) c.necessity_guard = it->get<bool>();
  if (auto it = j.find("derived"); it != j.end()) {
    if (!it->is_object()) fail(where + ".derived", "expected an object");
    for (const auto& [name, value] : it->items()) {
      if (!value.is_string()) fail(where + ".derived." + name, "expected a rational string");
      try {
        c.set(name, parse_ext_rational(value.get<std::string>()));
      } catch (const InputError& e) {
        fail(where + ".derived." + name, e.what());
      }
    }
  }
  if (auto it = j.find("witness_rays"); it != j.end()) c.witness_rays = matrix_from_json(*it, where + ".witness_rays");
  if (auto it = j.find("witness_points"); it != j.end())
    c.witness_points = matrix_from_json(*it, where + ".witness_points");
  if (auto it = j.find("cones"); it != j.end()) {
    for (std::size_t k = 0; k < it->size(); ++k) {
      const Json& cj = (*it)[k];
      const std::string w = at(where + ".cones", k);
      c.cones.push_back({string_field(cj, "label", w), role_from_string(string_field(cj, "role", w), w + ".role"),
                         cone_from_json(cj, w)});
    }
  }
  if (auto it = j.find("notes"); it != j.end()) c.notes = it->get<std::vector<std::string>>();
  if (auto it = j.find("parts"); it != j.end())
    for (std::size_t k = 0; k < it->size(); ++k) c.parts.push_back(certificate_at((*it)[k], at(where + ".parts", k)));
  return c;
}

}  // namespace

Rational rational_from_json(const Json& j, const std::string& where) {
  if (j.is_number_integer()) return j.is_number_unsigned() ? Rational(j.get<unsigned long long>()) : Rational(j.get<long long>());
  if (j.is_number_float()) fail(where, "floating-point numbers are not accepted; write \"p/q\"");
  if (!j.is_string()) fail(where, "expected an integer or a \"p/q\" string");
  try {
    return parse_rational(j.get<std::string>());
  } catch (const InputError& e) {
    fail(where, e.what());
  }
}

Json to_json(const Rational& r) { return pwaeb::to_string(r); }

Json to_json(const ExtRational& r) { return pwaeb::to_string(r); }

Json to_json(const Vec& v) {
  Json out = Json::array();
  for (const auto& x : v) out.push_back(to_json(x));
  return out;
}

Vec vec_from_json(const Json& j, const std::string& where) {
  if (!j.is_array()) fail(where, "expected an array");
  Vec v;
  for (std::size_t k = 0; k < j.size(); ++k) v.push_back(rational_from_json(j[k], at(where, k)));
  return v;
}

pwa::MinMaxFunction function_from_json(const Json& j) {
  const std::string where = "function";
  const std::size_t dim = size_from_json(field(j, "dim", where), where + ".dim");
  const Json& pieces = array_field(j, "pieces", where);
  if (pieces.empty()) fail(where + ".pieces", "at least one piece is required");
  std::vector<pwa::ConvexPiece> out;
  for (std::size_t i = 0; i < pieces.size(); ++i) {
    const std::string pw = at(where + ".pieces", i);
    const Json& terms = array_field(pieces[i], "terms", pw);
    if (terms.empty()) fail(pw + ".terms", "at least one term is required");
    pwa::ConvexPiece p;
    for (std::size_t k = 0; k < terms.size(); ++k) {
      const std::string tw = at(pw + ".terms", k);
      Rational a = rational_from_json(field(terms[k], "a", tw), tw + ".a");
      Vec v = vec_from_json(field(terms[k], "v", tw), tw + ".v");
      if (v.size() != dim) fail(tw + ".v", "has length " + std::to_string(v.size()) + ", expected " + std::to_string(dim));
      p.terms.push_back({std::move(a), std::move(v)});
    }
    out.push_back(std::move(p));
  }
  return pwa::MinMaxFunction(dim, std::move(out));
}

Json to_json(const pwa::MinMaxFunction& f) {
  Json pieces = Json::array();
  for (const auto& p : f.pieces()) {
    Json terms = Json::array();
    for (const auto& t : p.terms) terms.push_back(Json{{"a", to_json(t.offset)}, {"v", to_json(t.gradient)}});
    pieces.push_back(Json{{"terms", std::move(terms)}});
  }
  return Json{{"dim", f.dim()}, {"pieces", std::move(pieces)}};
}

SetSpec set_from_json(const Json& j, const pwa::MinMaxFunction* context) {
  const std::string where = "set";
  const std::string kind = string_field(j, "kind", where);
  auto dim = [&] { return size_from_json(field(j, "dim", where), where + ".dim"); };
  SetSpec out;
  if (kind == "full") {
    out = certify::FullSpace{dim()};
  } else if (kind == "box") {
    out = certify::Box{vec_from_json(field(j, "lo", where), where + ".lo"),
                       vec_from_json(field(j, "hi", where), where + ".hi")};
  } else if (kind == "polyunion") {
    const std::size_t d = dim();
    poly::PolyUnion u{d, {}};
    const Json& pieces = array_field(j, "pieces", where);
    for (std::size_t k = 0; k < pieces.size(); ++k)
      u.pieces.push_back(polyhedron_from_json(pieces[k], d, at(where + ".pieces", k)));
    out = certify::PolyUnionSet{std::move(u)};
  } else if (kind == "cone") {
    out = certify::ConeSet{cone_from_json(j, where)};
  } else if (kind == "points") {
    const std::size_t d = dim();
    out = certify::PointList{d, sized_matrix(field(j, "points", where), d, where + ".points")};
  } else if (kind == "strict_sublevel") {
    const Rational rho = rational_from_json(field(j, "rho", where), where + ".rho");
    if (auto it = j.find("function"); it != j.end())
      out = certify::StrictSublevel{function_from_json(*it), rho};
    else if (context)
      out = certify::StrictSublevel{*context, rho};
    else
      fail(where, "strict_sublevel needs a function");
  } else {
    fail(where + ".kind", "unknown set kind '" + kind + "' (expected full, box, polyunion, cone, points, strict_sublevel)");
  }
  certify::validate(out);
  return out;
}

Json to_json(const SetSpec& v) {
  Json j{{"kind", std::string(certify::kind(v))}};
  std::visit(
      [&](const auto& s) {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, certify::FullSpace>) {
          j["dim"] = s.dim;
        } else if constexpr (std::is_same_v<T, certify::Box>) {
          j["lo"] = to_json(s.lo);
          j["hi"] = to_json(s.hi);
        } else if constexpr (std::is_same_v<T, certify::PolyUnionSet>) {
          j["dim"] = s.u.dim;
          Json pieces = Json::array();
          for (const auto& p : s.u.pieces) pieces.push_back(to_json(p));
          j["pieces"] = std::move(pieces);
        } else if constexpr (std::is_same_v<T, certify::ConeSet>) {
          j.update(to_json(s.cone));
        } else if constexpr (std::is_same_v<T, certify::PointList>) {
          j["dim"] = s.dim;
          j["points"] = matrix_json(s.points);
        } else {
          j["rho"] = to_json(s.rho);
          j["function"] = to_json(s.f);
        }
      },
      v);
  return j;
}

Json to_json(const poly::Polyhedron& p) {
  Json a = Json::array(), b = Json::array();
  for (const auto& h : p.inequalities()) {
    a.push_back(to_json(h.normal));
    b.push_back(to_json(h.rhs));
  }
  return Json{{"A", std::move(a)}, {"b", std::move(b)}};
}

Json to_json(const poly::PolyCone& c) { return Json{{"dim", c.dim()}, {"A", matrix_json(c.normals())}}; }

poly::PolyCone cone_from_json(const Json& j, const std::string& where) {
  const std::size_t d = size_from_json(field(j, "dim", where), where + ".dim");
  return poly::PolyCone(d, sized_matrix(field(j, "A", where), d, where + ".A"));
}

Json to_json(const Certificate& c) {
  Json j{{"theorem", c.theorem}, {"scope", c.scope}, {"verdict", std::string(certify::to_string(c.verdict))}};
  if (c.condition) j["condition"] = *c.condition;
  if (c.necessity_guard) j["necessity_guard"] = *c.necessity_guard;
  Json derived = Json::object();
  for (const auto& d : c.derived) derived[d.name] = to_json(d.value);
  j["derived"] = std::move(derived);
  j["witness_rays"] = matrix_json(c.witness_rays);
  j["witness_points"] = matrix_json(c.witness_points);
  Json cones = Json::array();
  for (const auto& nc : c.cones) {
    Json cj{{"label", nc.label}, {"role", std::string(certify::to_string(nc.role))}};
    cj.update(to_json(nc.cone));
    cones.push_back(std::move(cj));
  }
  j["cones"] = std::move(cones);
  j["notes"] = c.notes;
  Json parts = Json::array();
  for (const auto& p : c.parts) parts.push_back(to_json(p));
  j["parts"] = std::move(parts);
  return j;
}

Certificate certificate_from_json(const Json& j) { return certificate_at(j, "certificate"); }

Json parse_json(const std::string& text, const std::string& source) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    std::size_t line = 1, column = 1;
    const std::size_t end = std::min<std::size_t>(e.byte == 0 ? 0 : e.byte - 1, text.size());
    for (std::size_t k = 0; k < end; ++k) {
      if (text[k] == '\n') {
        ++line;
        column = 1;
      } else {
        ++column;
      }
    }
    throw InputError(source + ":" + std::to_string(line) + ":" + std::to_string(column) + ": invalid JSON");
  }
}

Json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError(path.string() + ": cannot open file");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_json(buf.str(), path.string());
}

}  // namespace pwaeb::io
