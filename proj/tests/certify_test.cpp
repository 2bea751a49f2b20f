#include "doctest.h"

#include "named_functions.hpp"
#include "pwaeb/certify.hpp"
#include "pwaeb/errors.hpp"

using namespace pwaeb;
using namespace pwaeb::certify;
using namespace pwaeb::testing;

namespace {

SetSpec full(std::size_t d) { return FullSpace{d}; }

SetSpec halfplane(const Vec& normal, long rhs) {
  return PolyUnionSet{poly::PolyUnion{normal.size(), {poly::Polyhedron(normal.size(), {{normal, Rational(rhs)}})}}};
}

bool has_note(const Certificate& c, std::string_view text) {
  for (const auto& n : c.notes)
    if (n.find(text) != std::string::npos) return true;
  return false;
}

// Independent closed form: min over lattice points of [f]_+ / dist for the
// capped ramp, where dist(x, S) = x for x > 0.
Rational capped_ramp_lattice_min(const Rational& lo, const Rational& hi, const Rational& step) {
  std::optional<Rational> best;
  for (Rational x = 0; x <= hi; x += step) {
    if (x < lo || x <= 0) continue;
    const Rational r = std::min(x, Rational(1)) / x;
    if (!best || r < *best) best = r;
  }
  return *best;
}

}  // namespace

TEST_CASE("robinson classification") {
  SUBCASE("capped ramp: strict sublevel below one") {
    const auto c = classify_robinson(capped_ramp());
    CHECK(c.verdict == Verdict::Holds);
    CHECK(c.scope == "strict_sublevel");
    CHECK(c.value("rho") == 1);
    CHECK(c.value("f_star[0]") == 1);
    CHECK(c.value("f_star[1]") == 0);
  }
  SUBCASE("ramp with plateau: global status left open") {
    const auto c = classify_robinson(ramp_with_plateau());
    CHECK(c.scope == "strict_sublevel");
    CHECK(c.value("rho") == 1);
    CHECK(has_note(c, "global status undetermined"));
  }
  SUBCASE("zero-offset representation is global") {
    const auto c = classify_robinson(pwa::recession_function(l1_or_shifted_abs()));
    CHECK(c.scope == "global");
    CHECK(c.verdict == Verdict::Holds);
  }
  SUBCASE("empty sublevel set") {
    CHECK_THROWS_AS(classify_robinson(pwa::pa_constant(1, 2)), DomainError);
  }
}

TEST_CASE("uniform local radius") {
  const auto c = uniform_local_radius(capped_ramp());
  CHECK(c.value("rho") == 1);
  CHECK(c.value("L") == 1);
  CHECK(c.value("r") == 1);
  CHECK_FALSE(*c.get("r") == ExtRational::pos_inf());
  const auto g = uniform_local_radius(linf_norm());
  CHECK(*g.get("r") == ExtRational::pos_inf());
  const auto s = uniform_local_radius(pwa::pa_scale(3, capped_ramp()));
  CHECK(s.value("r") == 1);
  CHECK(s.value("L") == 3);
}

TEST_CASE("bounded sets") {
  SUBCASE("capped ramp on [-10, 10]") {
    const SetSpec box = Box{{-10}, {10}};
    const auto c = certify_bounded(capped_ramp(), box);
    CHECK(c.verdict == Verdict::Holds);
    CHECK(c.value("tau_estimate") == capped_ramp_lattice_min(-10, 10, Rational(1, 4)));
    CHECK(c.value("tau_estimate") == Rational(1, 10));
    const auto* est = c.part("estimate_tau");
    REQUIRE(est);
    CHECK(est->witness_points.front() == Vec{10});
  }
  SUBCASE("points inside S(f)") {
    const SetSpec pts = PointList{1, {{-1}, {-5}, {0}}};
    const auto c = certify_bounded(capped_ramp(), pts);
    CHECK(c.verdict == Verdict::Holds);
    CHECK_FALSE(c.get("tau_estimate"));
    CHECK(c.parts.front().verdict == Verdict::Inconclusive);
  }
  SUBCASE("plateau strip on [-5, 5]^2") {
    const SetSpec box = Box{{-5, -5}, {5, 5}};
    const auto c = certify_bounded(plateau_strip(), box);
    CHECK(c.value("tau_estimate") == Rational(1, 2));
    CHECK(c.part("estimate_tau")->witness_points.front()[0] == 2);
  }
  SUBCASE("unbounded set is refused") {
    CHECK_THROWS_AS(certify_bounded(capped_ramp(), full(1)), InputError);
  }
}

TEST_CASE("growth at infinity") {
  SUBCASE("absolute value grows") {
    const auto c = check_growth(pwa::pa_abs(pwa::pa_affine(0, {1})), full(1));
    CHECK(c.verdict == Verdict::Holds);
    CHECK(*c.condition);
  }
  SUBCASE("plateau strip: condition fails, guard fails too") {
    const auto c = check_growth(plateau_strip(), full(2));
    CHECK_FALSE(*c.condition);
    CHECK_FALSE(*c.necessity_guard);
    CHECK(c.verdict == Verdict::Inconclusive);
    REQUIRE(c.witness_rays.size() == 1);
    CHECK(c.witness_rays[0][0] <= 0);
  }
  SUBCASE("point sequence with sub-linear values") {
    PointList pts{2, {}};
    for (long n = 1; n <= 20; ++n) pts.points.push_back({n, n * n});
    const auto c = check_growth(l1_or_shifted_abs(), pts);
    CHECK(c.verdict == Verdict::Inconclusive);
    CHECK(c.value("growth_ratio[0]") == 2);
    CHECK(c.value("min_growth_ratio") == Rational(21, 400));
    CHECK(c.value("vanishing") == 1);
  }
  SUBCASE("bounded polyhedral set grows vacuously") {
    const SetSpec box = Box{{-1, -1}, {1, 1}};
    CHECK(check_growth(plateau_strip(), box).verdict == Verdict::Holds);
  }
}

TEST_CASE("coercivity on cones") {
  SUBCASE("max norm is coercive") {
    CHECK(check_coercive_on_cone(linf_norm(), full(2)).verdict == Verdict::Holds);
  }
  SUBCASE("plateau strip is not") {
    const auto c = check_coercive_on_cone(plateau_strip(), full(2));
    CHECK_FALSE(*c.condition);
    CHECK(c.verdict == Verdict::Inconclusive);
  }
  SUBCASE("ramp or valley on the wedge x1 >= |x2|") {
    const SetSpec wedge = ConeSet{poly::PolyCone(2, {{-1, 1}, {-1, -1}})};
    const auto c = check_coercive_on_cone(ramp_or_valley(), wedge);
    CHECK(*c.necessity_guard);
    CHECK(c.verdict == Verdict::Fails);
    REQUIRE(c.witness_rays.size() == 1);
    CHECK(c.witness_rays[0] == Vec{1, 0});
    CHECK(verify_witness(c));
  }
  SUBCASE("non-cone input") {
    CHECK_THROWS_AS(check_coercive_on_cone(linf_norm(), halfplane({1, 0}, 1)), InputError);
  }
}

TEST_CASE("geometric condition") {
  SUBCASE("cross-polytope contains the origin in its interior") {
    const auto c = check_geometric(linf_norm(1), full(2), 0);
    CHECK(c.verdict == Verdict::Holds);
    CHECK(c.value("full_dimensional") == 1);
  }
  SUBCASE("segment of gradients is flat") {
    const auto c = check_geometric(ramp_or_valley(), full(2), 1);
    CHECK(c.verdict == Verdict::Fails);
    CHECK(c.value("full_dimensional") == 0);
    CHECK(verify_witness(c));
  }
  SUBCASE("single gradient plus the polar of the orthant") {
    const pwa::ConvexPiece piece{{term(1, {1, 1})}};
    const SetSpec orthant = ConeSet{poly::PolyCone(2, {{-1, 0}, {0, -1}})};
    const auto c = check_geometric_piece(piece, orthant);
    CHECK(c.verdict == Verdict::Holds);
    CHECK(c.value("coercive_on_cone") == 1);
  }
  SUBCASE("hypothesis: piece minimum must be positive") {
    CHECK_THROWS_AS(check_geometric(ramp_or_valley(), full(2), 0), InputError);
    CHECK_THROWS_AS(check_geometric(ramp_or_valley(), full(2), 5), InputError);
  }
}

TEST_CASE("recession-cone characterization") {
  SUBCASE("plateau strip has a global bound") {
    const auto c = certify_polyhedral(plateau_strip(), full(2));
    CHECK(c.verdict == Verdict::Holds);
    CHECK(c.scope == "global");
  }
  SUBCASE("ramp or valley has no global bound") {
    const auto c = certify_polyhedral(ramp_or_valley(), full(2));
    REQUIRE(c.verdict == Verdict::Fails);
    const Vec& z = c.witness_rays.at(0);
    CHECK(z[0] > 0);
    CHECK(z[1] == 0);
    CHECK(verify_witness(c));
    const Rational r1 = c.value("ratio_at_lambda_1"), r10 = c.value("ratio_at_lambda_10");
    const Rational r100 = c.value("ratio_at_lambda_100"), r1000 = c.value("ratio_at_lambda_1000");
    CHECK(2 * r10 <= r1);
    CHECK(2 * r100 <= r10);
    CHECK(2 * r1000 <= r100);
  }
  SUBCASE("ramp or valley on x1 <= 10 is fine") {
    const auto c = certify_polyhedral(ramp_or_valley(), halfplane({1, 0}, 10));
    CHECK(c.verdict == Verdict::Holds);
  }
  SUBCASE("cone-level reading on x2 >= 1") {
    // The level set {x2 = 0} misses V, yet (1, 0) escapes along (t, 1).
    const auto c = certify_polyhedral(ramp_or_valley(), halfplane({0, -1}, -1));
    CHECK(c.verdict == Verdict::Fails);
    CHECK(c.witness_points.back()[1] == 1);
    CHECK(c.value("ratio_at_lambda_1000") < Rational(1, 100));
  }
  SUBCASE("strict sublevel sets are not polyhedral") {
    CHECK_THROWS_AS(certify_polyhedral(capped_ramp(), StrictSublevel{capped_ramp(), 1}), InputError);
  }
  SUBCASE("stratified form agrees") {
    CHECK(certify_stratified(plateau_strip(), full(2)).verdict == Verdict::Holds);
    CHECK(certify_stratified(ramp_or_valley(), full(2)).verdict == Verdict::Fails);
    CHECK(certify_stratified(ramp_or_valley(), halfplane({1, 0}, 10)).verdict == Verdict::Holds);
  }
}

TEST_CASE("strict sublevel sets") {
  const auto f = capped_ramp();
  CHECK(certify_strict_sublevel(f, StrictSublevel{f, 1}).verdict == Verdict::Holds);
  CHECK(certify_strict_sublevel(f, StrictSublevel{f, Rational(1, 2)}).verdict == Verdict::Holds);
  CHECK(certify_strict_sublevel(f, StrictSublevel{f, 2}).verdict == Verdict::Inconclusive);
  CHECK(certify_auto(f, StrictSublevel{f, 1}).theorem == "strict_sublevel");
}

TEST_CASE("estimate_tau") {
  SUBCASE("ramp with plateau, fine grid") {
    TauConfig cfg;
    cfg.box_radius = 100;
    cfg.grid_step = Rational(1, 4);
    const auto c = estimate_tau(ramp_with_plateau(), full(1), cfg);
    CHECK(c.value("min_ratio") == Rational(1, 2));
    CHECK(c.witness_points.front() == Vec{2});
    CHECK(c.value("vanishing") == 0);
  }
  SUBCASE("plateau strip") {
    TauConfig cfg;
    cfg.box_radius = 100;
    const auto c = estimate_tau(plateau_strip(), full(2), cfg);
    // Samples only bound the infimum 1/2 from above.
    CHECK(c.value("min_ratio") >= Rational(1, 2));
    CHECK(c.value("min_ratio") < Rational(51, 100));
    cfg.box_radius = 8;
    CHECK(estimate_tau(plateau_strip(), full(2), cfg).value("min_ratio") == Rational(1, 2));
  }
  SUBCASE("capped ramp vanishes") {
    TauConfig cfg;
    cfg.box_radius = 100;
    const auto c = estimate_tau(capped_ramp(), full(1), cfg);
    CHECK(c.value("min_ratio") == Rational(1, 100));
    CHECK(c.value("trend_outer") == Rational(1, 1000));
    CHECK(c.value("vanishing") == 1);
  }
  SUBCASE("strict sublevel samples stay below rho") {
    const auto f = capped_ramp();
    const auto c = estimate_tau(f, StrictSublevel{f, 1});
    // On {f < 1} the ratio is exactly one.
    CHECK(c.value("min_ratio") == 1);
    CHECK(c.value("trend_outer") == 1);
  }
  SUBCASE("seed determines the samples") {
    TauConfig a, b;
    b.seed = 99;
    const auto f = ramp_or_valley();
    const auto x = estimate_tau(f, halfplane({1, 0}, 10), a), y = estimate_tau(f, halfplane({1, 0}, 10), a);
    CHECK(x.derived.size() == y.derived.size());
    for (std::size_t k = 0; k < x.derived.size(); ++k) CHECK(x.derived[k].value == y.derived[k].value);
    CHECK(estimate_tau(f, halfplane({1, 0}, 10), b).value("seed") == 99);
  }
  SUBCASE("nothing outside S(f)") {
    const auto c = estimate_tau(capped_ramp(), SetSpec{Box{{-3}, {0}}});
    CHECK(c.verdict == Verdict::Inconclusive);
    CHECK_FALSE(c.get("min_ratio"));
  }
  SUBCASE("points use their own nesting") {
    PointList pts{2, {}};
    for (long n = 1; n <= 20; ++n) pts.points.push_back({n, n * n});
    const auto c = estimate_tau(l1_or_shifted_abs(), pts);
    CHECK(c.value("ratio[0]") == 2);
    CHECK(c.value("min_ratio") == Rational(21, 400));
    CHECK(c.value("vanishing") == 1);
  }
}

TEST_CASE("constraint systems") {
  SUBCASE("single equality") {
    ConstraintSystem sys{1, {pwa::pa_affine(0, {1})}, {}};
    const auto phi = residual_function(sys);
    for (long x : {-3L, 0L, 4L}) CHECK(pwa::evaluate(phi, {x}) == std::abs(x));
    TauConfig cfg;
    const auto c = certify_system(sys, full(1), cfg);
    CHECK(c.verdict == Verdict::Holds);
    CHECK(c.part("robinson")->scope == "global");
    CHECK(c.part("homogeneous")->verdict == Verdict::Holds);
    CHECK(c.part("estimate_tau")->value("min_ratio") == 1);
  }
  SUBCASE("interval from two inequalities") {
    ConstraintSystem sys{1, {}, {pwa::pa_affine(-1, {1}), pwa::pa_affine(-1, {-1})}};
    const auto phi = residual_function(sys);
    CHECK(phi.pieces().size() == 1);
    for (long x : {-5L, -1L, 0L, 1L, 7L}) CHECK(pwa::evaluate(phi, {x}) == std::max({0L, x - 1, -x - 1}));
    const auto c = certify_system(sys, full(1));
    CHECK(c.verdict == Verdict::Holds);
    CHECK(c.part("polyhedral")->verdict == Verdict::Holds);
    CHECK(c.part("estimate_tau")->value("min_ratio") == 1);
  }
  SUBCASE("empty system is the zero residual") {
    ConstraintSystem sys{2, {}, {}};
    CHECK(pwa::evaluate(residual_function(sys), {5, 5}) == 0);
  }
  SUBCASE("dimension mismatch") {
    ConstraintSystem sys{2, {pwa::pa_affine(0, {1})}, {}};
    CHECK_THROWS_AS(residual_function(sys), InputError);
  }
}

TEST_CASE("witness verification rejects tampering") {
  auto c = certify_polyhedral(ramp_or_valley(), full(2));
  REQUIRE(c.verdict == Verdict::Fails);
  CHECK(verify_witness(c));
  c.witness_rays[0] = {-1, 0};
  CHECK_FALSE(verify_witness(c));
  c.witness_rays[0] = {0, 0};
  CHECK_FALSE(verify_witness(c));
}
