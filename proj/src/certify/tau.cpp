// Empirical infimum of [f]_+(x) / dist(x, S(f)) over samples of V.
//
// Samples at radius R: an origin-anchored lattice (step R/64 unless given,
// coarsened by an integer factor to respect the point cap), seeded uniform
// points with denominator 1024, and for unbounded sets the vertices of each
// piece clipped to the cube [-R, R]^d with random convex combinations of them.
// Bounded sets are never clipped. The outer trend level uses R' = 10R and
// includes the samples of level R.
#include "pwaeb/certify.hpp"
#include "pwaeb/errors.hpp"

#include <algorithm>
#include <random>

namespace pwaeb::certify {

namespace {

constexpr long kDenominator = 1024;

Integer floor_of(const Rational& q) {
  const Integer n = boost::multiprecision::numerator(q), d = boost::multiprecision::denominator(q);
  Integer t = n / d;
  if (n < 0 && t * d != n) t -= 1;
  return t;
}

Integer ceil_of(const Rational& q) { return -floor_of(-q); }

class Sampler {
public:
  Sampler(const pwa::MinMaxFunction& f, const SetSpec& v, const TauConfig& cfg) : f_(f), v_(v), cfg_(cfg) {}

  // `step` is the nominal lattice step; the used one is recorded in used_step.
  std::vector<Vec> draw(const Rational& radius, const Rational& step, std::uint64_t level) {
    std::vector<Vec> out;
    if (const auto* p = std::get_if<PointList>(&v_)) return p->points;
    std::seed_seq seq{static_cast<std::uint32_t>(cfg_.seed), static_cast<std::uint32_t>(cfg_.seed >> 32),
                      static_cast<std::uint32_t>(level)};
    gen_.seed(seq);
    const std::size_t d = dimension(v_);

    if (const auto* b = std::get_if<Box>(&v_)) {
      lattice(b->lo, b->hi, step, out);
      corners(b->lo, b->hi, out);
      Rational r = radius;
      for (std::size_t i = 0; i < d; ++i) r = std::max({r, abs(b->lo[i]), abs(b->hi[i])});
      uniform(r, cfg_.samples, out);
      return out;
    }

    const Vec lo(d, -radius), hi(d, radius);
    lattice(lo, hi, step, out);
    const std::size_t n_uniform = cfg_.samples - cfg_.samples / 2;
    uniform(radius, n_uniform, out);
    combinations(radius, cfg_.samples - n_uniform, out);
    return out;
  }

  Rational used_step() const { return used_step_; }

  bool admissible(const Vec& x) const {
    if (const auto* s = std::get_if<StrictSublevel>(&v_))
      return pwa::evaluate(s->f, x) <= s->rho - Rational(1, kDenominator);
    return contains(v_, x);
  }

private:
  void push(const Vec& x, std::vector<Vec>& out) const {
    if (admissible(x)) out.push_back(x);
  }

  void lattice(const Vec& lo, const Vec& hi, const Rational& step, std::vector<Vec>& out) {
    const std::size_t d = lo.size();
    Rational s = step;
    std::vector<Integer> first(d), last(d);
    for (long factor = 1;; ++factor) {
      s = step * factor;
      Integer count = 1;
      for (std::size_t i = 0; i < d; ++i) {
        first[i] = ceil_of(lo[i] / s);
        last[i] = floor_of(hi[i] / s);
        count *= std::max(Integer(0), Integer(last[i] - first[i] + 1));
      }
      if (count <= cfg_.max_grid_points) break;
    }
    used_step_ = s;
    for (std::size_t i = 0; i < d; ++i)
      if (last[i] < first[i]) return;
    std::vector<Integer> idx = first;
    for (;;) {
      Vec x(d);
      for (std::size_t i = 0; i < d; ++i) x[i] = Rational(idx[i]) * s;
      push(x, out);
      std::size_t i = 0;
      while (i < d && idx[i] == last[i]) idx[i] = first[i], ++i;
      if (i == d) break;
      ++idx[i];
    }
  }

  void corners(const Vec& lo, const Vec& hi, std::vector<Vec>& out) const {
    const std::size_t d = lo.size();
    for (std::size_t mask = 0; mask < (std::size_t{1} << d); ++mask) {
      Vec x(d);
      for (std::size_t i = 0; i < d; ++i) x[i] = (mask >> i) & 1U ? hi[i] : lo[i];
      push(x, out);
    }
  }

  Rational coordinate(const Rational& r) {
    const Integer n = floor_of(r * kDenominator);
    const auto span = static_cast<std::uint64_t>(2 * n + 1);
    const auto k = static_cast<long long>(gen_() % span);
    return Rational(Integer(k) - n, Integer(kDenominator));
  }

  void uniform(const Rational& r, std::size_t count, std::vector<Vec>& out) {
    const std::size_t d = dimension(v_);
    for (std::size_t s = 0; s < count; ++s) {
      Vec x(d);
      for (auto& c : x) c = coordinate(r);
      push(x, out);
    }
  }

  // Vertices of every piece of v clipped to the cube, plus random convex
  // combinations of them. Pieces too large for double description are skipped.
  void combinations(const Rational& r, std::size_t count, std::vector<Vec>& out) {
    const std::size_t d = dimension(v_);
    const auto cube = poly::Polyhedron::box(Vec(d, -r), Vec(d, r));
    std::vector<std::vector<Vec>> vertex_sets;
    for (const auto& piece : pieces()) {
      try {
        auto g = poly::dd_convert(piece.intersect(cube));
        if (g.points.empty()) continue;
        for (const auto& p : g.points) push(p, out);
        vertex_sets.push_back(std::move(g.points));
      } catch (const LimitError&) {
      }
    }
    if (vertex_sets.empty()) return;
    for (std::size_t s = 0; s < count; ++s) {
      const auto& vs = vertex_sets[s % vertex_sets.size()];
      Vec x = zeros(d);
      Integer total = 0;
      std::vector<Integer> w(vs.size());
      for (auto& wi : w) total += (wi = static_cast<long>(gen_() % 9));
      if (total == 0) {
        w[gen_() % w.size()] = 1;
        total = 1;
      }
      for (std::size_t k = 0; k < vs.size(); ++k) x = x + Rational(w[k], total) * vs[k];
      push(x, out);
    }
  }

  std::vector<poly::Polyhedron> pieces() const {
    if (const auto* s = std::get_if<StrictSublevel>(&v_)) {
      std::vector<poly::Polyhedron> out;
      for (const auto& p : s->f.pieces())
        out.push_back(pwa::piece_sublevel(p, s->f.dim(), s->rho - Rational(1, kDenominator)));
      return out;
    }
    if (const auto* c = std::get_if<ConeSet>(&v_)) return {c->cone.as_polyhedron()};
    return as_poly_union(v_).pieces;
  }

  const pwa::MinMaxFunction& f_;
  const SetSpec& v_;
  const TauConfig& cfg_;
  std::mt19937_64 gen_;
  Rational used_step_ = 0;
};

struct Minimum {
  std::optional<Rational> value;
  Vec argmin;
  std::size_t positive = 0;

  void offer(const Rational& r, const Vec& x) {
    ++positive;
    if (!value || r < *value) {
      value = r;
      argmin = x;
    }
  }
};

class RatioEvaluator {
public:
  RatioEvaluator(const pwa::MinMaxFunction& f, Norm norm) : f_(f), norm_(norm) {
    for (const auto& p : pwa::sublevel_union(f).pieces) sublevel_.push_back(poly::remove_redundant(p));
    if (sublevel_.empty()) throw DomainError("S(f) empty; error bounds undefined");
  }

  // nullopt for x in S(f).
  std::optional<Rational> operator()(const Vec& x) const {
    const Rational fx = pwa::evaluate(f_, x);
    if (fx <= 0) return std::nullopt;
    Rational dist = poly::distance(x, sublevel_.front(), norm_);
    for (std::size_t k = 1; k < sublevel_.size(); ++k) dist = std::min(dist, poly::distance(x, sublevel_[k], norm_));
    return Rational(fx / dist);
  }

private:
  const pwa::MinMaxFunction& f_;
  Norm norm_;
  std::vector<poly::Polyhedron> sublevel_;
};

bool is_bounded_kind(const SetSpec& v) { return std::holds_alternative<Box>(v) || std::holds_alternative<PointList>(v); }

}  // namespace

Certificate estimate_tau(const pwa::MinMaxFunction& f, const SetSpec& v, const TauConfig& cfg) {
  validate(v);
  if (dimension(v) != f.dim()) throw InputError("set and function dimensions differ");
  if (cfg.box_radius <= 0) throw InputError("box radius must be positive");
  if (cfg.grid_step && *cfg.grid_step <= 0) throw InputError("grid step must be positive");
  const RatioEvaluator ratio(f, cfg.norm);

  Certificate c;
  c.theorem = "estimate_tau";
  c.scope = "empirical";
  c.set("seed", Rational(Integer(std::to_string(cfg.seed))));
  c.notes.push_back(std::string("norm ") + std::string(to_string(cfg.norm)));

  Sampler sampler(f, v, cfg);
  const Rational step = cfg.grid_step.value_or(cfg.box_radius / 64);
  Minimum inner, outer;
  std::size_t total = 0;

  if (const auto* pts = std::get_if<PointList>(&v)) {
    Rational outer_norm = 0;
    for (const auto& x : pts->points) outer_norm = std::max(outer_norm, norm(x, cfg.norm));
    for (std::size_t k = 0; k < pts->points.size(); ++k) {
      const Vec& x = pts->points[k];
      ++total;
      const auto r = ratio(x);
      if (!r) continue;
      c.set("ratio[" + std::to_string(k) + "]", *r);
      outer.offer(*r, x);
      if (10 * norm(x, cfg.norm) <= outer_norm) inner.offer(*r, x);
    }
  } else {
    const auto first = sampler.draw(cfg.box_radius, step, 0);
    c.set("radius", cfg.box_radius);
    c.set("grid_step", sampler.used_step());
    total += first.size();
    for (const auto& x : first)
      if (auto r = ratio(x)) inner.offer(*r, x);
    outer = inner;
    if (!is_bounded_kind(v)) {
      const auto second = sampler.draw(10 * cfg.box_radius, 10 * step, 1);
      c.set("outer_grid_step", sampler.used_step());
      total += second.size();
      for (const auto& x : second)
        if (auto r = ratio(x)) outer.offer(*r, x);
    }
  }

  const bool points = std::holds_alternative<PointList>(v);
  const Minimum& primary = points ? outer : inner;
  c.set("samples", Rational(static_cast<long>(total)));
  c.set("samples_positive_distance", Rational(static_cast<long>(primary.positive)));
  if (!primary.value) {
    c.notes.push_back("V is contained in S(f) on all samples");
    return c;
  }
  c.set("min_ratio", *primary.value);
  c.witness_points.push_back(primary.argmin);
  if (inner.value) c.set("trend_inner", *inner.value);
  c.set("trend_outer", *outer.value);
  const bool vanishing = inner.value && 2 * *outer.value < *inner.value;
  c.set("vanishing", Rational(vanishing ? 1 : 0));
  c.condition = !vanishing;
  if (!points && outer.argmin != inner.argmin) c.witness_points.push_back(outer.argmin);
  c.notes.push_back(vanishing ? "ratio at least halves between the nested levels: tau appears to vanish"
                              : "ratio stable between the nested levels");
  return c;
}

}  // namespace pwaeb::certify
