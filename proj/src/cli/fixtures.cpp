#include "pwaeb/fixtures.hpp"

#include "pwaeb/errors.hpp"

#include <algorithm>
#include <random>

namespace pwaeb::fixtures {

namespace {

using certify::Certificate;
using certify::SetSpec;
using certify::TauConfig;
using certify::Verdict;
using pwa::MinMaxFunction;

pwa::AffineTerm term(long a, Vec v) { return {Rational(a), std::move(v)}; }

MinMaxFunction capped_ramp() { return MinMaxFunction(1, {{{term(1, {0})}}, {{term(0, {0}), term(0, {1})}}}); }

MinMaxFunction ramp_with_plateau() {
  return MinMaxFunction(1, {{{term(0, {0}), term(0, {1})}}, {{term(1, {0}), term(-1, {1})}}});
}

MinMaxFunction plateau_strip() {
  return MinMaxFunction(2, {{{term(0, {0, 0}), term(0, {1, 0})}}, {{term(1, {0, 0}), term(-1, {1, 0})}}});
}

MinMaxFunction ramp_or_valley() {
  return MinMaxFunction(2, {{{term(0, {0, 0}), term(0, {1, 0})}}, {{term(1, {0, 1}), term(1, {0, -1})}}});
}

// min(|x1| + |x2|, 1 + |x1|)
MinMaxFunction l1_or_shifted_abs() {
  return MinMaxFunction(
      2, {{{term(0, {1, 1}), term(0, {1, -1}), term(0, {-1, 1}), term(0, {-1, -1})}}, {{term(1, {1, 0}), term(1, {-1, 0})}}});
}

SetSpec halfplane(const Vec& normal, long rhs) {
  return certify::PolyUnionSet{poly::PolyUnion{normal.size(), {poly::Polyhedron(normal.size(), {{normal, Rational(rhs)}})}}};
}

std::string str(const ExtRational& r) { return to_string(r); }
std::string str(bool b) { return b ? "true" : "false"; }

std::string derived_or_missing(const Certificate& c, std::string_view name) {
  const auto v = c.get(name);
  return v ? str(*v) : "missing";
}

Check equal(std::string label, const Certificate& c, std::string_view name, const ExtRational& want) {
  const auto got = c.get(name);
  return {std::move(label), str(want), derived_or_missing(c, name), got && *got == want};
}

Check verdict(std::string label, const Certificate& c, Verdict want) {
  return {std::move(label), std::string(to_string(want)), std::string(to_string(c.verdict)), c.verdict == want};
}

Check truth(std::string label, bool got, std::string expected = "true") {
  return {std::move(label), std::move(expected), str(got), got};
}

Check at_most(std::string label, const Certificate& c, std::string_view name, const Rational& bound) {
  const auto got = c.get(name);
  return {std::move(label), "<= " + to_string(bound), derived_or_missing(c, name),
          got && got->finite() && got->value() <= bound};
}

Check at_least(std::string label, const Certificate& c, std::string_view name, const Rational& bound) {
  const auto got = c.get(name);
  return {std::move(label), ">= " + to_string(bound), derived_or_missing(c, name),
          got && got->finite() && got->value() >= bound};
}

// Two cones are equal when each one's generators lie in the other.
bool same_cone(const poly::PolyCone& a, const poly::PolyCone& b) {
  auto inside = [](const poly::PolyCone& x, const poly::PolyCone& y) {
    const auto g = poly::generators(x);
    return std::all_of(g.begin(), g.end(), [&](const Vec& v) { return y.contains(v); });
  };
  return inside(a, b) && inside(b, a);
}

// Every cone equals one of `want` and every wanted cone occurs.
Check cone_family(std::string label, const std::vector<poly::PolyCone>& got, const std::vector<poly::PolyCone>& want,
                  std::string expected) {
  const bool covered = std::all_of(got.begin(), got.end(), [&](const poly::PolyCone& c) {
    return std::any_of(want.begin(), want.end(), [&](const poly::PolyCone& w) { return same_cone(c, w); });
  });
  const bool complete = std::all_of(want.begin(), want.end(), [&](const poly::PolyCone& w) {
    return std::any_of(got.begin(), got.end(), [&](const poly::PolyCone& c) { return same_cone(c, w); });
  });
  std::string actual;
  for (const auto& c : got) {
    actual += actual.empty() ? "" : " u ";
    actual += "{";
    for (std::size_t k = 0; k < c.normals().size(); ++k) actual += (k ? ", " : "") + to_string(c.normals()[k]) + "x<=0";
    actual += "}";
  }
  return {std::move(label), std::move(expected), actual, covered && complete};
}

TauConfig tau_config(long radius, std::optional<Rational> step = std::nullopt) {
  TauConfig cfg;
  cfg.box_radius = radius;
  cfg.grid_step = std::move(step);
  return cfg;
}

std::vector<Check> run_robinson_4_2() {
  const auto f = capped_ramp();
  const auto r = certify::classify_robinson(f);
  const auto s = certify::certify_strict_sublevel(f, certify::StrictSublevel{f, 1});
  const auto t = certify::estimate_tau(f, certify::FullSpace{1}, tau_config(100));
  return {equal("f_star[0]", r, "f_star[0]", Rational(1)),
          equal("f_star[1]", r, "f_star[1]", Rational(0)),
          equal("rho", r, "rho", Rational(1)),
          verdict("error bound on {f < 1}", s, Verdict::Holds),
          at_most("min ratio on box 100", t, "min_ratio", Rational(1, 100)),
          equal("vanishing trend", t, "vanishing", Rational(1))};
}

std::vector<Check> run_robinson_4_3() {
  const auto f = ramp_with_plateau();
  const auto r = certify::classify_robinson(f);
  const auto p = certify::certify_polyhedral(f, certify::FullSpace{1});
  const auto t = certify::estimate_tau(f, certify::FullSpace{1}, tau_config(100, Rational(1, 4)));
  return {equal("rho", r, "rho", Rational(1)),
          verdict("global error bound", p, Verdict::Holds),
          equal("min ratio, grid step 1/4, box 100", t, "min_ratio", Rational(1, 2)),
          truth("argmin at x = 2", !t.witness_points.empty() && t.witness_points.front() == Vec{2})};
}

std::vector<Check> run_example_4_9() {
  const auto f = capped_ramp();
  const auto u = certify::uniform_local_radius(f);
  const auto b = certify::certify_bounded(f, certify::Box{{-10}, {10}}, tau_config(16));
  return {equal("L", u, "L", Rational(1)), equal("r", u, "r", Rational(1)),
          verdict("error bound on [-10, 10]", b, Verdict::Holds),
          equal("tau estimate on [-10, 10]", b, "tau_estimate", Rational(1, 10))};
}

const poly::PolyCone kLeftHalfplane(2, {{1, 0}});
const poly::PolyCone kHorizontalAxis(2, {{0, 1}, {0, -1}});

std::vector<Check> run_flat_pieces_4_10() {
  const auto f = plateau_strip();
  const auto p = certify::certify_polyhedral(f, certify::FullSpace{2});
  const auto t = certify::estimate_tau(f, certify::FullSpace{2}, tau_config(8));
  return {cone_family("S([f]_+^inf)", pwa::rec_plus_sublevel(f), {kLeftHalfplane}, "{x1 <= 0}"),
          cone_family("0+S(f)", pwa::sublevel_recession(f), {kLeftHalfplane}, "{x1 <= 0}"),
          verdict("global error bound", p, Verdict::Holds),
          truth("scope global", p.scope == "global"),
          equal("min ratio", t, "min_ratio", Rational(1, 2))};
}

certify::PointList parabola_points() {
  certify::PointList pts{2, {}};
  for (long n = 1; n <= 20; ++n) pts.points.push_back({n, n * n});
  return pts;
}

std::vector<Check> run_example_4_12_points() {
  const auto f = l1_or_shifted_abs();
  const auto pts = parabola_points();
  const auto t = certify::estimate_tau(f, pts);
  std::vector<Check> out;
  bool decreasing = true;
  std::optional<Rational> previous;
  for (long n = 1; n <= 20; ++n) {
    const Rational want(1 + n, n * n);
    const std::string name = "ratio[" + std::to_string(n - 1) + "]";
    out.push_back(equal(name + " = (1+n)/n^2", t, name, want));
    if (const auto got = t.get(name); got && got->finite()) {
      if (previous && !(got->value() < *previous)) decreasing = false;
      previous = got->value();
    }
  }
  out.push_back(truth("ratios strictly decreasing", decreasing));
  out.push_back(at_most("min ratio below 1/10", t, "min_ratio", Rational(1, 10)));
  out.push_back(equal("vanishing", t, "vanishing", Rational(1)));
  const auto g = certify::check_growth(f, pts);
  out.push_back(verdict("growth on the points", g, Verdict::Inconclusive));
  return out;
}

std::vector<Check> run_rec_cones_4_18() {
  const auto f = plateau_strip();
  const auto s = certify::certify_stratified(f, certify::FullSpace{2});
  const auto p = certify::certify_polyhedral(f, certify::FullSpace{2});
  const auto g = certify::check_growth(f, certify::FullSpace{2});
  return {verdict("stratified form", s, Verdict::Holds), equal("f_star[1]", s, "f_star[1]", Rational(1)),
          verdict("cone form", p, Verdict::Holds),
          truth("growth condition fails", g.condition.has_value() && !*g.condition)};
}

std::vector<Check> run_final_4_3_pair() {
  const auto f = ramp_or_valley();
  const auto p = certify::certify_polyhedral(f, certify::FullSpace{2});
  const SetSpec left = halfplane({1, 0}, 10);
  const auto q = certify::certify_polyhedral(f, left);
  const auto t = certify::estimate_tau(f, left, tau_config(16));
  const bool ray_ok =
      !p.witness_rays.empty() && p.witness_rays[0].size() == 2 && p.witness_rays[0][0] > 0 && p.witness_rays[0][1] == 0;
  return {cone_family("S([f]_+^inf)", pwa::rec_plus_sublevel(f), {kLeftHalfplane, kHorizontalAxis},
                      "{x1 <= 0} u {x2 = 0}"),
          verdict("global error bound", p, Verdict::Fails),
          truth("witness ray has x1 > 0, x2 = 0", ray_ok),
          truth("witness re-verifies", certify::verify_witness(p)),
          verdict("error bound on {x1 <= 10}", q, Verdict::Holds),
          at_least("min ratio on {x1 <= 10}", t, "min_ratio", Rational(1, 10))};
}

std::vector<Check> run_hoffman_random() {
  const auto sys = hoffman_system(2024, 3, 5);
  const auto phi = certify::residual_function(sys);
  TauConfig cfg = tau_config(100);
  cfg.samples = 128;
  cfg.max_grid_points = 512;
  const auto c = certify::certify_system(sys, certify::FullSpace{3}, cfg);
  const auto* r = c.part("robinson");
  const auto* t = c.part("estimate_tau");
  return {truth("robinson scope global", r && r->scope == "global"), verdict("system", c, Verdict::Holds),
          truth("min ratio positive", t && t->get("min_ratio") && t->value("min_ratio") > 0)};
}

certify::ConstraintSystem interval_system() {
  return certify::ConstraintSystem{1, {}, {pwa::pa_affine(-1, {1}), pwa::pa_affine(-1, {-1})}};
}

std::vector<Check> run_system_interval() {
  const auto c = certify::certify_system(interval_system(), certify::FullSpace{1});
  const auto* p = c.part("polyhedral");
  const auto* t = c.part("estimate_tau");
  return {verdict("system", c, Verdict::Holds), truth("cone form holds", p && p->verdict == Verdict::Holds),
          truth("min ratio is 1", t && t->get("min_ratio") && t->value("min_ratio") == 1)};
}

std::vector<Fixture> build() {
  std::vector<Fixture> out;
  out.push_back({"example_4_12_points", "min(|x1|+|x2|, 1+|x1|) on the points (n, n^2), n <= 20",
                 l1_or_shifted_abs(), parabola_points(), run_example_4_12_points});
  out.push_back({"example_4_9", "min(1, max(0, x)): uniform local radius and the box [-10, 10]", capped_ramp(),
                 certify::Box{{-10}, {10}}, run_example_4_9});
  out.push_back({"final_4_3_pair", "min(max(0, x1), max(1+x2, 1-x2)): no global bound, bound on {x1 <= 10}",
                 ramp_or_valley(), certify::FullSpace{2}, run_final_4_3_pair});
  out.push_back({"flat_pieces_4_10", "plateau strip in the plane: global bound despite an unbounded flat piece",
                 plateau_strip(), certify::FullSpace{2}, run_flat_pieces_4_10});
  out.push_back({"hoffman_random", "seeded consistent system A x <= b in dimension 3 with 5 rows",
                 certify::residual_function(hoffman_system(2024, 3, 5)), certify::FullSpace{3}, run_hoffman_random});
  out.push_back({"rec_cones_4_18", "plateau strip through the per-piece recession cones", plateau_strip(),
                 certify::FullSpace{2}, run_rec_cones_4_18});
  const auto ramp = capped_ramp();
  out.push_back({"robinson_4_2", "min(1, max(0, x)): bound on {f < 1} and no better", ramp,
                 certify::StrictSublevel{ramp, 1}, run_robinson_4_2});
  out.push_back({"robinson_4_3", "min(max(0, x), max(1, x-1)): global bound with tau = 1/2", ramp_with_plateau(),
                 certify::FullSpace{1}, run_robinson_4_3});
  out.push_back({"system_interval", "residual of x - 1 <= 0, -x - 1 <= 0", certify::residual_function(interval_system()),
                 certify::FullSpace{1}, run_system_interval});
  std::sort(out.begin(), out.end(), [](const Fixture& a, const Fixture& b) { return a.name < b.name; });
  return out;
}

}  // namespace

const std::vector<Fixture>& all() {
  static const std::vector<Fixture> fixtures = build();
  return fixtures;
}

const Fixture* find(std::string_view name) {
  for (const auto& f : all())
    if (f.name == name) return &f;
  return nullptr;
}

certify::ConstraintSystem hoffman_system(std::uint64_t seed, std::size_t dim, std::size_t rows) {
  if (dim == 0) throw InputError("hoffman_system: dimension must be positive");
  std::mt19937_64 gen(seed);
  auto draw = [&](long lo, long hi) { return lo + static_cast<long>(gen() % static_cast<std::uint64_t>(hi - lo + 1)); };
  Vec x0(dim);
  for (auto& x : x0) x = draw(-3, 3);
  certify::ConstraintSystem sys{dim, {}, {}};
  for (std::size_t k = 0; k < rows; ++k) {
    Vec a(dim);
    do {
      for (auto& x : a) x = draw(-3, 3);
    } while (is_zero(a));
    const Rational b = dot(a, x0) + draw(0, 3);
    sys.inequalities.push_back(pwa::pa_affine(Rational(-b), a));
  }
  return sys;
}

}  // namespace pwaeb::fixtures
