#include "doctest.h"

#include "geometry_oracles.hpp"
#include "named_functions.hpp"
#include "pwaeb/errors.hpp"
#include "pwaeb/pwa.hpp"

using namespace pwaeb;
using namespace pwaeb::pwa;
using namespace pwaeb::testing;

namespace {

bool same_cone(const poly::PolyCone& a, const poly::PolyCone& b) {
  return same_polyhedron(a.as_polyhedron(), b.as_polyhedron());
}

MinMaxFunction abs_x() { return pa_abs(pa_affine(0, {1})); }

}  // namespace

TEST_CASE("construction validates shape") {
  CHECK_THROWS_AS(MinMaxFunction(1, {}), InputError);
  CHECK_THROWS_AS(MinMaxFunction(1, {ConvexPiece{}}), InputError);
  CHECK_THROWS_AS(MinMaxFunction(2, {{{term(0, {1})}}}), InputError);
  CHECK(capped_ramp().term_count() == 3);
}

TEST_CASE("evaluate") {
  const auto f = capped_ramp();
  CHECK(evaluate(f, {Rational(1, 2)}) == Rational(1, 2));
  CHECK(evaluate(f, {5}) == 1);
  CHECK(evaluate(f, {-3}) == 0);
  CHECK(evaluate_plus(pa_affine(-2, {1}), {1}) == 0);
  CHECK(evaluate_plus(pa_affine(-2, {1}), {5}) == 3);
  CHECK_THROWS_AS(evaluate(f, {1, 2}), InputError);
  const auto h = l1_or_shifted_abs();
  for (long n = 1; n <= 5; ++n) CHECK(evaluate(h, {n, n * n}) == 1 + n);
  const auto g = recession_function(h);
  const Vec x{3, -7};
  CHECK(evaluate(g, Rational(2) * x) == 2 * evaluate(g, x));
}

TEST_CASE("analyze_pieces") {
  SUBCASE("capped ramp") {
    const auto a = analyze_pieces(capped_ramp());
    CHECK(a.pieces[0].f_star == ExtRational(Rational(1)));
    CHECK(a.pieces[1].f_star == ExtRational(Rational(0)));
    CHECK(a.i0() == std::vector<std::size_t>{1});
  }
  SUBCASE("ramp with plateau") {
    const auto a = analyze_pieces(ramp_with_plateau());
    CHECK(a.pieces[0].f_star == ExtRational(Rational(0)));
    CHECK(a.pieces[1].f_star == ExtRational(Rational(1)));
    CHECK(a.i0() == std::vector<std::size_t>{0});
  }
  SUBCASE("unbounded affine piece") {
    const auto a = analyze_pieces(pa_affine(0, {1}));
    CHECK(a.pieces[0].f_star == ExtRational::neg_inf());
    CHECK(a.pieces[0].in_i0);
  }
  SUBCASE("finite minimum is attained at the reported minimizer") {
    const auto f = l1_or_shifted_abs();
    const auto a = analyze_pieces(f);
    for (std::size_t i = 0; i < a.pieces.size(); ++i)
      CHECK(a.pieces[i].f_star == ExtRational(evaluate_piece(f.pieces()[i], a.pieces[i].minimizer)));
  }
  SUBCASE("no piece reaches zero") {
    const auto a = analyze_pieces(pa_constant(1, 3));
    CHECK(a.sublevel_empty());
  }
}

TEST_CASE("sublevel_union") {
  auto u = sublevel_union(capped_ramp());
  REQUIRE(u.pieces.size() == 1);
  CHECK(same_polyhedron(u.pieces[0], poly::Polyhedron(1, {{{1}, 0}})));
  auto v = sublevel_union(ramp_or_valley());
  REQUIRE(v.pieces.size() == 1);
  CHECK(same_polyhedron(v.pieces[0], poly::Polyhedron(2, {{{1, 0}, 0}})));
  auto w = sublevel_union(pa_affine(-1, {1}));
  REQUIRE(w.pieces.size() == 1);
  CHECK(same_polyhedron(w.pieces[0], poly::Polyhedron(1, {{{1}, 1}})));
  CHECK(sublevel_union(pa_constant(2, 1)).pieces.empty());
}

TEST_CASE("sublevel_recession") {
  auto r = sublevel_recession(plateau_strip());
  REQUIRE(r.size() == 1);
  CHECK(same_cone(r[0], poly::PolyCone(2, {{1, 0}})));
  auto c = sublevel_recession(abs_x());
  REQUIRE(c.size() == 1);
  CHECK(poly::is_trivial_cone(c[0]).trivial);
  auto z = sublevel_recession(pa_constant(1, 0));
  REQUIRE(z.size() == 1);
  CHECK(z[0].normals().empty());
  CHECK_THROWS_AS(sublevel_recession(pa_constant(1, 1)), DomainError);
}

TEST_CASE("distance_to_sublevel") {
  CHECK(distance_to_sublevel({3}, capped_ramp()) == 3);
  CHECK(distance_to_sublevel({-3}, capped_ramp()) == 0);
  CHECK(distance_to_sublevel({3, 7}, plateau_strip()) == 3);
  CHECK(distance_to_sublevel({-3, 7}, plateau_strip()) == 0);
  for (long n = 1; n <= 4; ++n) CHECK(distance_to_sublevel({n, n * n}, l1_or_shifted_abs()) == n * n);
  CHECK(distance_to_sublevel({3, 4}, l1_or_shifted_abs(), Norm::L1) == 7);
  CHECK_THROWS_AS(distance_to_sublevel({0}, pa_constant(1, 1)), DomainError);
}

TEST_CASE("recession_function") {
  const auto g = recession_function(plateau_strip());
  CHECK(is_homogeneous_representation(g));
  for (long x1 : {-3L, 0L, 2L, 9L}) CHECK(evaluate(g, {x1, 5}) == std::max(0L, x1));
  const auto h = abs_x();
  CHECK(recession_function(h) == h);
  const auto k = recession_function(ramp_or_valley());
  for (const Vec& x : {Vec{1, 2}, Vec{-1, 2}, Vec{4, -1}, Vec{3, 0}})
    CHECK(evaluate_plus(k, x) == std::min(std::max(x[0], Rational(0)), abs(x[1])));
}

TEST_CASE("rec_plus_sublevel") {
  auto r = rec_plus_sublevel(plateau_strip());
  REQUIRE(r.size() == 2);
  CHECK(same_cone(r[0], poly::PolyCone(2, {{1, 0}})));
  CHECK(same_cone(r[1], poly::PolyCone(2, {{1, 0}})));
  auto s = rec_plus_sublevel(ramp_or_valley());
  REQUIRE(s.size() == 2);
  CHECK(same_cone(s[0], poly::PolyCone(2, {{1, 0}})));
  CHECK(same_cone(s[1], poly::PolyCone(2, {{0, 1}, {0, -1}})));
  auto t = rec_plus_sublevel(abs_x());
  REQUIRE(t.size() == 1);
  CHECK(poly::is_trivial_cone(t[0]).trivial);
}

TEST_CASE("lipschitz_constant") {
  CHECK(lipschitz_constant(capped_ramp()) == 1);
  CHECK(lipschitz_constant(pa_scale(3, capped_ramp())) == 3);
  CHECK(lipschitz_constant(plateau_strip()) == 1);
  CHECK(lipschitz_constant(l1_or_shifted_abs()) == 2);
  CHECK(lipschitz_constant(l1_or_shifted_abs(), Norm::L1) == 1);
}

TEST_CASE("builders") {
  SUBCASE("pa_min of the two pieces rebuilds the capped ramp") {
    const auto f = pa_min(pa_constant(1, 1), pa_clamp_plus(pa_affine(0, {1})));
    const auto ref = capped_ramp();
    for (int k = 0; k <= 1000; ++k) {
      const Vec x{Rational(k - 500, 100)};
      REQUIRE(evaluate(f, x) == evaluate(ref, x));
    }
  }
  SUBCASE("absolute value") {
    const auto f = abs_x();
    CHECK(evaluate(f, {-2}) == 2);
    CHECK(evaluate(f, {0}) == 0);
    CHECK(evaluate(f, {3}) == 3);
  }
  SUBCASE("f - f vanishes") {
    const auto f = ramp_or_valley();
    const auto z = pa_add(f, pa_scale(-1, f));
    for (const Vec& x : {Vec{1, 2}, Vec{-5, 3}, Vec{0, 0}, Vec{7, -4}}) CHECK(evaluate(z, x) == 0);
  }
  SUBCASE("dimension mismatch") {
    CHECK_THROWS_AS(pa_min(capped_ramp(), plateau_strip()), InputError);
    CHECK_THROWS_AS(pa_add(capped_ramp(), plateau_strip()), InputError);
  }
  SUBCASE("size guard") {
    // Distinct power-of-two offsets keep every sum term distinct, so each addition doubles the count.
    auto f = pa_abs(pa_affine(0, {1, 0}));
    for (int k = 0; k < 11; ++k) f = pa_add(f, pa_abs(pa_affine(1L << k, {0, 1})));
    CHECK_THROWS_AS(pa_add(f, pa_abs(pa_affine(0, {1, 1}))), LimitError);
  }
}

TEST_CASE("is_homogeneous_representation") {
  CHECK(is_homogeneous_representation(recession_function(capped_ramp())));
  CHECK_FALSE(is_homogeneous_representation(capped_ramp()));
  CHECK(is_homogeneous_representation(pa_scale(5, abs_x())));
}
