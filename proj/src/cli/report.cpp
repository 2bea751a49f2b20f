#include "pwaeb/report.hpp"

#include <cstdint>
#include <cstdio>
#include <sstream>

namespace pwaeb::report {

std::string fnv1a64(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::string digest(const Json& content) { return "fnv1a64:" + fnv1a64(content.dump()); }

Json make_report(const Header& h, const std::vector<Input>& inputs, const std::vector<certify::Certificate>& certs,
                 std::string summary) {
  Json in = Json::array();
  for (const auto& i : inputs)
    in.push_back(Json{{"role", i.role}, {"source", i.source}, {"digest", digest(i.content)}, {"content", i.content}});
  Json cs = Json::array();
  for (const auto& c : certs) cs.push_back(io::to_json(c));
  return Json{{"tool", kToolName},
              {"version", kToolVersion},
              {"command", h.command},
              {"seed", h.seed},
              {"norm", std::string(to_string(h.norm))},
              {"inputs", std::move(in)},
              {"certificates", std::move(cs)},
              {"summary", std::move(summary)}};
}

namespace {

void reverify_into(const certify::Certificate& c, const std::string& path, std::vector<std::string>& bad) {
  if (c.verdict == certify::Verdict::Fails && !certify::verify_witness(c)) bad.push_back(path);
  for (std::size_t k = 0; k < c.parts.size(); ++k)
    reverify_into(c.parts[k], path + ".parts[" + std::to_string(k) + "]", bad);
}

void render_certificate(const Json& c, int depth, std::ostringstream& out) {
  const std::string pad(static_cast<std::size_t>(2 * depth), ' ');
  out << pad << c["theorem"].get<std::string>() << " [" << c["scope"].get<std::string>()
      << "]: " << c["verdict"].get<std::string>() << "\n";
  if (c.contains("condition")) out << pad << "  condition: " << (c["condition"].get<bool>() ? "true" : "false") << "\n";
  if (c.contains("necessity_guard"))
    out << pad << "  necessity guard: " << (c["necessity_guard"].get<bool>() ? "true" : "false") << "\n";
  for (const auto& [name, value] : c["derived"].items())
    out << pad << "  " << name << " = " << value.get<std::string>() << "\n";
  auto vectors = [&](const char* key, const char* label) {
    for (const auto& v : c[key]) {
      out << pad << "  " << label << " (";
      for (std::size_t k = 0; k < v.size(); ++k) out << (k ? ", " : "") << v[k].get<std::string>();
      out << ")\n";
    }
  };
  vectors("witness_rays", "witness ray");
  vectors("witness_points", "point");
  for (const auto& cone : c["cones"])
    out << pad << "  cone " << cone["label"].get<std::string>() << " (" << cone["role"].get<std::string>() << ", "
        << cone["A"].size() << " rows)\n";
  for (const auto& n : c["notes"]) out << pad << "  note: " << n.get<std::string>() << "\n";
  for (const auto& p : c["parts"]) render_certificate(p, depth + 1, out);
}

}  // namespace

std::vector<std::string> reverify(const Json& report) {
  std::vector<std::string> bad;
  const Json& certs = report.at("certificates");
  for (std::size_t k = 0; k < certs.size(); ++k)
    reverify_into(io::certificate_from_json(certs[k]), "certificates[" + std::to_string(k) + "]", bad);
  return bad;
}

std::string render_text(const Json& report) {
  std::ostringstream out;
  out << report["tool"].get<std::string>() << " " << report["version"].get<std::string>() << " "
      << report["command"].get<std::string>() << " (seed " << report["seed"].get<std::uint64_t>() << ", norm "
      << report["norm"].get<std::string>() << ")\n";
  for (const auto& i : report["inputs"])
    out << i["role"].get<std::string>() << ": " << i["source"].get<std::string>() << " "
        << i["digest"].get<std::string>() << "\n";
  if (report.contains("analysis")) out << "analysis:\n" << report["analysis"].dump(2) << "\n";
  if (report.contains("fixtures"))
    for (const auto& f : report["fixtures"])
      out << "  " << f["name"].get<std::string>() << "  " << f["description"].get<std::string>() << "\n";
  if (report.contains("checks")) {
    for (const auto& c : report["checks"])
      out << (c["pass"].get<bool>() ? "  ok   " : "  FAIL ") << c["fixture"].get<std::string>() << ": "
          << c["label"].get<std::string>() << " expected " << c["expected"].get<std::string>() << ", got "
          << c["actual"].get<std::string>() << "\n";
  }
  for (const auto& c : report["certificates"]) render_certificate(c, 0, out);
  out << "summary: " << report["summary"].get<std::string>() << "\n";
  return out.str();
}

}  // namespace pwaeb::report
