#pragma once

#include "pwaeb/certify.hpp"

#include <cstdint>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

namespace pwaeb::fixtures {

struct Check {
  std::string label;
  std::string expected;
  std::string actual;
  bool pass = false;
};

/// A bundled regression instance: a function, its default set and the
/// scripted checks with their stored expectations.
struct Fixture {
  std::string name;
  std::string description;
  pwa::MinMaxFunction function;
  certify::SetSpec set;
  std::function<std::vector<Check>()> run;
};

/// Sorted by name.
const std::vector<Fixture>& all();
/// nullptr when unknown.
const Fixture* find(std::string_view name);

/// A x <= b with integer entries in [-3, 3] and b = A x0 + s, s >= 0, so the
/// system is consistent. Deterministic in the seed.
certify::ConstraintSystem hoffman_system(std::uint64_t seed, std::size_t dim, std::size_t rows);

}  // namespace pwaeb::fixtures
