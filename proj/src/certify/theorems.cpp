#include "pwaeb/certify.hpp"
#include "pwaeb/errors.hpp"
#include "pwaeb/lp.hpp"

#include <algorithm>

namespace pwaeb::certify {

namespace {

std::string indexed(std::string_view name, std::size_t i) { return std::string(name) + "[" + std::to_string(i) + "]"; }

pwa::PieceAnalysis nonempty_analysis(const pwa::MinMaxFunction& f) {
  auto a = pwa::analyze_pieces(f);
  if (a.sublevel_empty()) throw DomainError("S(f) empty; error bounds undefined");
  return a;
}

void check_dims(const pwa::MinMaxFunction& f, const SetSpec& v) {
  validate(v);
  if (dimension(v) != f.dim())
    throw InputError("set has dimension " + std::to_string(dimension(v)) + ", function has " + std::to_string(f.dim()));
}

void record_minima(Certificate& c, const pwa::PieceAnalysis& a) {
  for (std::size_t i = 0; i < a.pieces.size(); ++i) c.set(indexed("f_star", i), a.pieces[i].f_star);
}

bool is_cone_like(const SetSpec& v) {
  return std::holds_alternative<ConeSet>(v) || std::holds_alternative<FullSpace>(v);
}

poly::PolyCone cone_of(const SetSpec& v) {
  if (const auto* c = std::get_if<ConeSet>(&v)) return c->cone;
  return poly::PolyCone::full(dimension(v));
}

// Pieces of v (nonempty, in order) and their recession cones.
struct SetPieces {
  std::vector<poly::Polyhedron> pieces;
  std::vector<poly::PolyCone> recession;
};

SetPieces set_pieces(const SetSpec& v) {
  SetPieces s;
  if (is_cone_like(v)) {
    const auto c = cone_of(v);
    s.pieces.push_back(c.as_polyhedron());
    s.recession.push_back(c);
    return s;
  }
  for (auto& p : as_poly_union(v).pieces) {
    s.recession.push_back(poly::recession_cone(p));
    s.pieces.push_back(std::move(p));
  }
  return s;
}

// Cones whose union is the closed conic hull of v.
std::vector<poly::PolyCone> conic_hull_of(const SetSpec& v) {
  if (is_cone_like(v)) return {cone_of(v)};
  const auto u = as_poly_union(v);
  if (u.pieces.empty()) return {};
  return poly::closed_conic_hull(u);
}

// argmin of the piece over q; the piece is bounded below whenever this is called.
Vec piece_argmin_on(const pwa::ConvexPiece& piece, const poly::Polyhedron& q) {
  const std::size_t d = q.dim();
  lp::LinearProgram prog;
  prog.dimension = d + 1;
  prog.objective = zeros(d + 1);
  prog.objective[d] = 1;
  for (const auto& t : piece.terms) {
    Vec row = t.gradient;
    row.push_back(-1);
    prog.constraints.push_back({std::move(row), lp::Relation::LessEq, -t.offset});
  }
  for (const auto& h : q.inequalities()) {
    Vec row = h.normal;
    row.emplace_back(0);
    prog.constraints.push_back({std::move(row), lp::Relation::LessEq, h.rhs});
  }
  const auto out = lp::solve(prog);
  if (out.status != lp::Status::Optimal) throw std::logic_error("piece minimum over a set piece is not attained");
  return Vec(out.point.begin(), out.point.begin() + static_cast<std::ptrdiff_t>(d));
}

ExtRational ratio_at(const pwa::MinMaxFunction& f, const Vec& x, Norm norm) {
  const Rational fx = pwa::evaluate_plus(f, x);
  const Rational dist = pwa::distance_to_sublevel(x, f, norm);
  if (dist == 0) return ExtRational::pos_inf();
  return Rational(fx / dist);
}

// Shared by the growth and coercivity tests: the condition is triviality of
// every piece cone of S([f]_+^inf) intersected with every direction cone of v;
// the guard is triviality of 0+S(f) against the conic hull of v.
Certificate direction_test(const pwa::MinMaxFunction& f, std::string theorem, const std::vector<poly::PolyCone>& directions,
                           const std::vector<poly::PolyCone>& hull) {
  const auto a = nonempty_analysis(f);
  Certificate c;
  c.theorem = std::move(theorem);
  c.scope = "set";
  record_minima(c, a);
  const auto pieces = pwa::rec_plus_sublevel(f);
  const auto rec = pwa::sublevel_recession(f);

  bool condition = true;
  for (std::size_t i = 0; i < pieces.size() && condition; ++i)
    for (std::size_t k = 0; k < directions.size() && condition; ++k) {
      const auto t = poly::is_trivial_cone(poly::cone_intersect(pieces[i], directions[k]));
      if (t.trivial) continue;
      condition = false;
      c.witness_rays.push_back(t.witness);
      c.cones.push_back({indexed("piece_cone", i), ConeRole::Contains, pieces[i]});
      c.cones.push_back({indexed("set_direction_cone", k), ConeRole::Contains, directions[k]});
    }

  bool guard = true;
  for (std::size_t j = 0; j < rec.size() && guard; ++j)
    for (std::size_t m = 0; m < hull.size() && guard; ++m) {
      const auto t = poly::is_trivial_cone(poly::cone_intersect(rec[j], hull[m]));
      if (t.trivial) continue;
      guard = false;
      c.notes.push_back("necessity guard fails: ray " + pwaeb::to_string(t.witness) + " lies in 0+S(f) and the conic hull of V");
    }

  c.condition = condition;
  c.necessity_guard = guard;
  if (condition) {
    c.verdict = Verdict::Holds;
  } else if (guard) {
    c.verdict = Verdict::Fails;
    c.notes.push_back("the condition is necessary here, so no error bound exists on V");
  } else {
    c.verdict = Verdict::Inconclusive;
    c.notes.push_back("condition fails but is not necessary for this V; see the polyhedral test");
  }
  return c;
}

Rational max_norm_of(const std::vector<Vec>& points, Norm n) {
  Rational m = 0;
  for (const auto& p : points) m = std::max(m, norm(p, n));
  return m;
}

}  // namespace

Certificate classify_robinson(const pwa::MinMaxFunction& f) {
  const auto a = nonempty_analysis(f);
  Certificate c;
  c.theorem = "robinson";
  c.verdict = Verdict::Holds;
  c.condition = true;
  record_minima(c, a);
  std::optional<Rational> rho;
  for (const auto& p : a.pieces)
    if (p.f_star.finite() && p.f_star.value() > 0 && (!rho || p.f_star.value() < *rho)) rho = p.f_star.value();
  if (!rho) {
    c.scope = "global";
    c.notes.push_back("every piece minimum is nonpositive: global error bound");
  } else {
    c.scope = "strict_sublevel";
    c.set("rho", *rho);
    c.notes.push_back("error bound on { x | f(x) < rho }; global status undetermined by this test");
  }
  return c;
}

Certificate uniform_local_radius(const pwa::MinMaxFunction& f, Norm base) {
  const auto rob = classify_robinson(f);
  Certificate c;
  c.theorem = "uniform_local_radius";
  c.scope = "set";
  c.verdict = Verdict::Holds;
  c.condition = true;
  const Rational l = pwa::lipschitz_constant(f, base);
  c.set("L", l);
  if (rob.scope == "global" || l == 0) {
    c.set("r", ExtRational::pos_inf());
    c.notes.push_back("any radius works");
  } else {
    const Rational rho = rob.value("rho");
    c.set("rho", rho);
    c.set("r", Rational(rho / l));
  }
  c.parts.push_back(rob);
  return c;
}

Certificate certify_bounded(const pwa::MinMaxFunction& f, const SetSpec& v, const TauConfig& cfg) {
  check_dims(f, v);
  if (!std::holds_alternative<Box>(v) && !std::holds_alternative<PointList>(v))
    throw InputError("bounded-set test needs a box or a point list; use the polyhedral test for unbounded sets");
  const auto a = nonempty_analysis(f);
  Certificate c;
  c.theorem = "bounded";
  c.scope = "set";
  c.verdict = Verdict::Holds;
  c.condition = true;
  record_minima(c, a);
  auto est = estimate_tau(f, v, cfg);
  if (auto m = est.get("min_ratio")) c.set("tau_estimate", *m);
  c.parts.push_back(std::move(est));
  return c;
}

Certificate check_growth(const pwa::MinMaxFunction& f, const SetSpec& v, const TauConfig& cfg) {
  check_dims(f, v);
  if (const auto* pts = std::get_if<PointList>(&v)) {
    const auto a = nonempty_analysis(f);
    Certificate c;
    c.theorem = "growth";
    c.scope = "empirical";
    record_minima(c, a);
    // f(x) / ||x|| over the points, and over the inner tenth by norm.
    const Rational outer = max_norm_of(pts->points, cfg.norm);
    std::optional<Rational> all, inner;
    for (std::size_t k = 0; k < pts->points.size(); ++k) {
      const Vec& x = pts->points[k];
      const Rational n = norm(x, cfg.norm);
      if (n == 0) continue;
      const Rational r = pwa::evaluate(f, x) / n;
      c.set(indexed("growth_ratio", k), r);
      if (!all || r < *all) all = r;
      if (10 * n <= outer && (!inner || r < *inner)) inner = r;
    }
    if (all) c.set("min_growth_ratio", *all);
    if (inner) c.set("min_growth_ratio_inner", *inner);
    const bool vanishing = all && inner && 2 * *all < *inner;
    c.set("vanishing", Rational(vanishing ? 1 : 0));
    c.notes.push_back(vanishing ? "growth ratios decrease toward zero along the points"
                                : "no decision for point lists; empirical ratios only");
    return c;
  }
  if (std::holds_alternative<StrictSublevel>(v)) throw InputError("growth test needs a polyhedral set");
  return direction_test(f, "growth", set_pieces(v).recession, conic_hull_of(v));
}

Certificate check_coercive_on_cone(const pwa::MinMaxFunction& f, const SetSpec& v) {
  check_dims(f, v);
  if (!is_cone_like(v)) throw InputError("coercivity test needs a cone (kind 'cone' or 'full')");
  const auto k = cone_of(v);
  return direction_test(f, "coercive_cone", {k}, {k});
}

Certificate check_geometric_piece(const pwa::ConvexPiece& piece, const SetSpec& v) {
  validate(v);
  if (!is_cone_like(v)) throw InputError("geometric test needs a cone (kind 'cone' or 'full')");
  const std::size_t d = dimension(v);
  const auto k = cone_of(v);
  poly::GeneratorRep g{d, {}, poly::generators(poly::polar(k))};
  for (const auto& t : piece.terms) g.points.push_back(t.gradient);
  const auto h = poly::dd_reverse(g);

  bool interior = true;
  for (const auto& row : h.inequalities())
    if (row.rhs <= 0) interior = false;
  std::vector<std::size_t> all(h.inequalities().size());
  for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
  const bool full_dim = all.empty() || lp::strictly_feasible(d, h.constraints(), all).has_value();

  const auto piece_cone = pwa::piece_recession(piece, d);
  const auto tri = poly::is_trivial_cone(poly::cone_intersect(k, piece_cone));
  if (tri.trivial != interior) throw std::logic_error("geometric test disagrees with the coercivity cross-check");

  Certificate c;
  c.theorem = "geometric";
  c.scope = "piece";
  c.set("full_dimensional", Rational(full_dim ? 1 : 0));
  c.set("coercive_on_cone", Rational(tri.trivial ? 1 : 0));
  c.condition = interior;
  if (interior) {
    c.verdict = Verdict::Holds;
    c.notes.push_back("origin is interior to co{gradients} + polar(V)");
  } else {
    c.verdict = Verdict::Fails;
    c.witness_rays.push_back(tri.witness);
    c.cones.push_back({"set_cone", ConeRole::Contains, k});
    c.cones.push_back({"piece_cone", ConeRole::Contains, piece_cone});
    c.notes.push_back(full_dim ? "origin lies on the boundary of co{gradients} + polar(V)"
                               : "co{gradients} + polar(V) is not full-dimensional");
  }
  return c;
}

Certificate check_geometric(const pwa::MinMaxFunction& f, const SetSpec& v, std::size_t piece) {
  check_dims(f, v);
  if (piece >= f.pieces().size()) throw InputError("piece index " + std::to_string(piece) + " out of range");
  const auto a = pwa::analyze_pieces(f);
  const auto& info = a.pieces[piece];
  if (!(ExtRational(Rational(0)) < info.f_star))
    throw InputError("geometric test applies only to a piece with positive minimum");
  auto c = check_geometric_piece(f.pieces()[piece], v);
  c.set("piece", Rational(static_cast<long>(piece)));
  c.set(indexed("f_star", piece), info.f_star);
  return c;
}

namespace {

// Core of the recession-cone characterization. `pieces` lists (piece index,
// cone) pairs to be checked against every direction cone of v.
Certificate inclusion_test(const pwa::MinMaxFunction& f, const SetSpec& v, std::string theorem,
                           const std::vector<std::pair<std::size_t, poly::PolyCone>>& pieces, Norm norm) {
  const auto a = nonempty_analysis(f);
  Certificate c;
  c.theorem = std::move(theorem);
  c.scope = std::holds_alternative<FullSpace>(v) ? "global" : "set";
  record_minima(c, a);
  const auto rec = pwa::sublevel_recession(f);
  const auto sp = set_pieces(v);
  if (sp.pieces.empty()) {
    c.verdict = Verdict::Holds;
    c.condition = true;
    c.notes.push_back("V is empty");
    return c;
  }

  std::size_t checked = 0;
  for (const auto& [i, cone] : pieces)
    for (std::size_t k = 0; k < sp.recession.size(); ++k) {
      const auto search = poly::cone_intersect(cone, sp.recession[k]);
      const auto r = poly::cone_in_union(search, rec);
      ++checked;
      if (r.contained) continue;

      c.verdict = Verdict::Fails;
      c.condition = false;
      c.witness_rays.push_back(r.witness);
      c.cones.push_back({"search_cone", ConeRole::Contains, search});
      for (std::size_t j = 0; j < rec.size(); ++j)
        c.cones.push_back({indexed("sublevel_recession", j), ConeRole::Excludes, rec[j]});
      c.set("piece", Rational(static_cast<long>(i)));
      c.set("set_piece", Rational(static_cast<long>(k)));

      // Along x0 + lambda z the piece stays at its minimum over the set piece
      // while the distance to S(f) grows linearly.
      const Vec x0 = piece_argmin_on(f.pieces()[i], sp.pieces[k]);
      c.notes.push_back("ratios sampled along x0 + lambda * witness with x0 = " + pwaeb::to_string(x0));
      for (long lambda : {1L, 10L, 100L, 1000L}) {
        const Vec x = x0 + Rational(lambda) * r.witness;
        c.witness_points.push_back(x);
        c.set("ratio_at_lambda_" + std::to_string(lambda), ratio_at(f, x, norm));
      }
      return c;
    }
  c.verdict = Verdict::Holds;
  c.condition = true;
  c.set("pairs_checked", Rational(static_cast<long>(checked)));
  c.notes.push_back("every intersection with a direction cone of V lies in 0+S(f)");
  return c;
}

}  // namespace

Certificate certify_polyhedral(const pwa::MinMaxFunction& f, const SetSpec& v, Norm norm) {
  check_dims(f, v);
  if (std::holds_alternative<StrictSublevel>(v)) throw InputError("polyhedral test needs a finite union of polyhedra");
  std::vector<std::pair<std::size_t, poly::PolyCone>> pieces;
  const auto cones = pwa::rec_plus_sublevel(f);
  for (std::size_t i = 0; i < cones.size(); ++i) pieces.emplace_back(i, cones[i]);
  return inclusion_test(f, v, "polyhedral", pieces, norm);
}

Certificate certify_stratified(const pwa::MinMaxFunction& f, const SetSpec& v) {
  check_dims(f, v);
  if (std::holds_alternative<StrictSublevel>(v)) throw InputError("stratified test needs a finite union of polyhedra");
  const auto a = nonempty_analysis(f);
  std::vector<std::pair<std::size_t, poly::PolyCone>> pieces;
  for (std::size_t i = 0; i < a.pieces.size(); ++i) {
    const auto& info = a.pieces[i];
    if (info.in_i0) continue;
    // The level set at the minimum is nonempty because the minimum is attained.
    const auto level = pwa::piece_sublevel(f.pieces()[i], f.dim(), info.f_star.value());
    pieces.emplace_back(i, poly::recession_cone(level));
  }
  return inclusion_test(f, v, "stratified", pieces, Norm::Linf);
}

Certificate certify_strict_sublevel(const pwa::MinMaxFunction& f, const SetSpec& v) {
  check_dims(f, v);
  const auto* s = std::get_if<StrictSublevel>(&v);
  if (!s) throw InputError("strict sublevel test needs a set of kind 'strict_sublevel'");
  auto rob = classify_robinson(f);
  Certificate c;
  c.theorem = "strict_sublevel";
  c.scope = "strict_sublevel";
  c.set("rho", s->rho);
  if (!(s->f == f)) {
    c.notes.push_back("set is defined by a different function; no exact test applies");
  } else if (rob.scope == "global") {
    c.verdict = Verdict::Holds;
    c.condition = true;
    c.notes.push_back("global error bound");
  } else if (s->rho <= rob.value("rho")) {
    c.verdict = Verdict::Holds;
    c.condition = true;
    c.notes.push_back("rho does not exceed the smallest positive piece minimum");
  } else {
    c.condition = false;
    c.notes.push_back("rho exceeds the smallest positive piece minimum; no exact test applies");
  }
  c.parts.push_back(std::move(rob));
  return c;
}

Certificate certify_auto(const pwa::MinMaxFunction& f, const SetSpec& v, const TauConfig& cfg) {
  check_dims(f, v);
  if (std::holds_alternative<StrictSublevel>(v)) return certify_strict_sublevel(f, v);
  if (std::holds_alternative<Box>(v) || std::holds_alternative<PointList>(v)) return certify_bounded(f, v, cfg);
  return certify_polyhedral(f, v, cfg.norm);
}

}  // namespace pwaeb::certify
