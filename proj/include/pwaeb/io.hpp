#pragma once

#include "pwaeb/certify.hpp"

#include "json.hpp"

#include <filesystem>
#include <string>

namespace pwaeb::io {

using Json = nlohmann::ordered_json;

/// Integers or "p/q" strings; floats are rejected. `where` names the field in
/// error messages.
Rational rational_from_json(const Json& j, const std::string& where);
/// Always a string: "p" or "p/q".
Json to_json(const Rational& r);
Json to_json(const ExtRational& r);
Json to_json(const Vec& v);
Vec vec_from_json(const Json& j, const std::string& where);

/// {"dim": d, "pieces": [{"terms": [{"a": "p/q", "v": [...]}, ...]}, ...]}
pwa::MinMaxFunction function_from_json(const Json& j);
Json to_json(const pwa::MinMaxFunction& f);

/// Set files carry "kind" plus a kind-specific payload. A strict_sublevel set
/// takes its function from an embedded "function" field, else from `context`.
certify::SetSpec set_from_json(const Json& j, const pwa::MinMaxFunction* context = nullptr);
Json to_json(const certify::SetSpec& v);

Json to_json(const poly::Polyhedron& p);
Json to_json(const poly::PolyCone& c);
poly::PolyCone cone_from_json(const Json& j, const std::string& where);

Json to_json(const certify::Certificate& c);
certify::Certificate certificate_from_json(const Json& j);

/// Parse errors carry the file name, line and column.
Json parse_json(const std::string& text, const std::string& source);
Json read_json_file(const std::filesystem::path& path);

}  // namespace pwaeb::io
