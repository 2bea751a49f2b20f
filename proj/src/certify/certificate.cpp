#include "pwaeb/certify.hpp"
#include "pwaeb/errors.hpp"

#include <algorithm>

namespace pwaeb::certify {

std::string_view to_string(Verdict v) {
  switch (v) {
    case Verdict::Holds: return "holds";
    case Verdict::Fails: return "fails";
    case Verdict::Inconclusive: return "inconclusive";
  }
  return "inconclusive";
}

void Certificate::set(std::string name, ExtRational value) {
  for (auto& d : derived)
    if (d.name == name) {
      d.value = std::move(value);
      return;
    }
  derived.push_back({std::move(name), std::move(value)});
}

std::optional<ExtRational> Certificate::get(std::string_view name) const {
  for (const auto& d : derived)
    if (d.name == name) return d.value;
  return std::nullopt;
}

Rational Certificate::value(std::string_view name) const {
  auto v = get(name);
  if (!v) throw DomainError("certificate '" + theorem + "' has no value '" + std::string(name) + "'");
  return v->value();
}

const Certificate* Certificate::part(std::string_view name) const {
  auto it = std::find_if(parts.begin(), parts.end(), [&](const Certificate& c) { return c.theorem == name; });
  return it == parts.end() ? nullptr : &*it;
}

}  // namespace pwaeb::certify

namespace pwaeb::certify {

std::string_view to_string(ConeRole r) {
  switch (r) {
    case ConeRole::Contains: return "contains";
    case ConeRole::Excludes: return "excludes";
    case ConeRole::Info: return "info";
  }
  return "info";
}

bool verify_witness(const Certificate& c) {
  if (c.verdict != Verdict::Fails) return true;
  if (c.witness_rays.empty() || is_zero(c.witness_rays.front())) return false;
  const Vec& z = c.witness_rays.front();
  bool checked = false;
  for (const auto& nc : c.cones) {
    if (nc.cone.dim() != z.size()) return false;
    if (nc.role == ConeRole::Contains) {
      checked = true;
      if (!nc.cone.contains(z)) return false;
    } else if (nc.role == ConeRole::Excludes) {
      checked = true;
      const auto& n = nc.cone.normals();
      if (std::none_of(n.begin(), n.end(), [&](const Vec& w) { return dot(w, z) > 0; })) return false;
    }
  }
  return checked;
}

}  // namespace pwaeb::certify
