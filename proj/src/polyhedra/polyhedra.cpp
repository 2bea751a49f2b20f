#include "pwaeb/polyhedra.hpp"

#include "pwaeb/errors.hpp"

#include <algorithm>

namespace pwaeb::poly {

Polyhedron::Polyhedron(std::size_t dim, std::vector<Halfspace> inequalities) : dim_(dim) {
  for (auto& h : inequalities) {
    if (h.normal.size() != dim)
      throw InputError("inequality normal has length " + std::to_string(h.normal.size()) + ", expected " +
                       std::to_string(dim));
    if (is_zero(h.normal) && h.rhs >= 0) continue;
    ineqs_.push_back(std::move(h));
  }
}

Polyhedron Polyhedron::full(std::size_t dim) { return Polyhedron(dim, {}); }

Polyhedron Polyhedron::empty(std::size_t dim) { return Polyhedron(dim, {{zeros(dim), Rational(-1)}}); }

Polyhedron Polyhedron::box(const Vec& lo, const Vec& hi) {
  if (lo.size() != hi.size()) throw InputError("box bounds differ in length");
  std::vector<Halfspace> h;
  for (std::size_t i = 0; i < lo.size(); ++i) {
    if (lo[i] > hi[i]) throw InputError("box has lo > hi in coordinate " + std::to_string(i));
    Vec e = zeros(lo.size());
    e[i] = 1;
    h.push_back({e, hi[i]});
    e[i] = -1;
    h.push_back({e, -lo[i]});
  }
  return Polyhedron(lo.size(), std::move(h));
}

Polyhedron Polyhedron::point(const Vec& x) { return box(x, x); }

bool Polyhedron::contains(const Vec& x) const {
  if (x.size() != dim_) throw InputError("point dimension mismatch");
  return std::all_of(ineqs_.begin(), ineqs_.end(), [&](const Halfspace& h) { return dot(h.normal, x) <= h.rhs; });
}

std::vector<lp::Constraint> Polyhedron::constraints() const {
  std::vector<lp::Constraint> out;
  out.reserve(ineqs_.size());
  for (const auto& h : ineqs_) out.push_back({h.normal, lp::Relation::LessEq, h.rhs});
  return out;
}

bool Polyhedron::is_empty() const { return !lp::feasible_point(dim_, constraints()).has_value(); }

Polyhedron Polyhedron::intersect(const Polyhedron& other) const {
  if (other.dim_ != dim_) throw InputError("polyhedron dimension mismatch");
  auto h = ineqs_;
  h.insert(h.end(), other.ineqs_.begin(), other.ineqs_.end());
  return Polyhedron(dim_, std::move(h));
}

PolyCone::PolyCone(std::size_t dim, std::vector<Vec> normals) : dim_(dim) {
  for (auto& n : normals) {
    if (n.size() != dim)
      throw InputError("cone normal has length " + std::to_string(n.size()) + ", expected " + std::to_string(dim));
    if (is_zero(n)) continue;
    if (std::find(normals_.begin(), normals_.end(), n) != normals_.end()) continue;
    normals_.push_back(std::move(n));
  }
}

PolyCone PolyCone::zero(std::size_t dim) {
  std::vector<Vec> n;
  for (std::size_t i = 0; i < dim; ++i) {
    Vec e = zeros(dim);
    e[i] = 1;
    n.push_back(e);
    e[i] = -1;
    n.push_back(e);
  }
  return PolyCone(dim, std::move(n));
}

bool PolyCone::contains(const Vec& x) const {
  if (x.size() != dim_) throw InputError("point dimension mismatch");
  return std::all_of(normals_.begin(), normals_.end(), [&](const Vec& n) { return dot(n, x) <= 0; });
}

Polyhedron PolyCone::as_polyhedron() const {
  std::vector<Halfspace> h;
  for (const auto& n : normals_) h.push_back({n, Rational(0)});
  return Polyhedron(dim_, std::move(h));
}

std::vector<lp::Constraint> PolyCone::constraints() const {
  std::vector<lp::Constraint> out;
  for (const auto& n : normals_) out.push_back({n, lp::Relation::LessEq, Rational(0)});
  return out;
}

bool PolyUnion::contains(const Vec& x) const {
  return std::any_of(pieces.begin(), pieces.end(), [&](const Polyhedron& p) { return p.contains(x); });
}

PolyUnion normalize(const PolyUnion& u) {
  PolyUnion out{u.dim, {}};
  for (const auto& p : u.pieces) {
    if (p.dim() != u.dim) throw InputError("union piece dimension mismatch");
    if (!p.is_empty()) out.pieces.push_back(p);
  }
  return out;
}

PolyCone recession_cone(const Polyhedron& p) {
  if (p.is_empty()) throw DomainError("recession cone of an empty set is undefined");
  std::vector<Vec> n;
  for (const auto& h : p.inequalities()) n.push_back(h.normal);
  return PolyCone(p.dim(), std::move(n));
}

PolyCone polar(const PolyCone& c, const DdLimits& limits) {
  // The generators of K are exactly the inequality normals of K*.
  return PolyCone(c.dim(), generators(c, limits));
}

MotzkinSplit motzkin_decompose(const Polyhedron& p, const DdLimits& limits) {
  auto g = dd_convert(p, limits);
  if (g.points.empty()) throw DomainError("Motzkin decomposition of an empty polyhedron");
  return {GeneratorRep{p.dim(), std::move(g.points), {}}, recession_cone(p)};
}

Polyhedron remove_redundant(const Polyhedron& p) {
  if (p.is_empty()) return p;
  std::vector<Halfspace> kept;
  for (const auto& h : p.inequalities())
    if (!is_zero(h.normal)) kept.push_back(h);
  // Removing rows one at a time keeps exactly one copy of repeated rows.
  for (std::size_t k = 0; k < kept.size();) {
    lp::LinearProgram prog;
    prog.dimension = p.dim();
    prog.objective = Rational(-1) * kept[k].normal;
    for (std::size_t j = 0; j < kept.size(); ++j)
      if (j != k) prog.constraints.push_back({kept[j].normal, lp::Relation::LessEq, kept[j].rhs});
    const auto out = lp::solve(prog);
    if (out.status == lp::Status::Optimal && -out.value <= kept[k].rhs)
      kept.erase(kept.begin() + static_cast<std::ptrdiff_t>(k));
    else
      ++k;
  }
  return Polyhedron(p.dim(), std::move(kept));
}

Rational distance(const Vec& x, const Polyhedron& p, Norm norm) {
  if (x.size() != p.dim()) throw InputError("point dimension mismatch");
  if (p.contains(x)) return 0;
  const auto& h = p.inequalities();
  if (h.size() == 1 && !is_zero(h[0].normal)) {
    // Single half-space: the excess divided by the dual norm of the normal.
    return (dot(h[0].normal, x) - h[0].rhs) / pwaeb::norm(h[0].normal, dual(norm));
  }

  // Variables (y, e): y in p, |x_k - y_k| <= e (linf) or <= e_k (l1).
  const std::size_t d = p.dim();
  const std::size_t extra = norm == Norm::Linf ? 1 : d;
  lp::LinearProgram prog;
  prog.dimension = d + extra;
  prog.objective = zeros(d + extra);
  for (std::size_t k = 0; k < extra; ++k) prog.objective[d + k] = 1;
  for (const auto& hs : h) {
    Vec row = hs.normal;
    row.resize(d + extra, Rational(0));
    prog.constraints.push_back({std::move(row), lp::Relation::LessEq, hs.rhs});
  }
  for (std::size_t k = 0; k < d; ++k) {
    const std::size_t e = norm == Norm::Linf ? d : d + k;
    Vec up = zeros(d + extra), down = zeros(d + extra);
    up[k] = 1;
    up[e] = -1;
    down[k] = -1;
    down[e] = -1;
    prog.constraints.push_back({std::move(up), lp::Relation::LessEq, x[k]});
    prog.constraints.push_back({std::move(down), lp::Relation::LessEq, -x[k]});
  }
  auto out = lp::solve(prog);
  if (out.status == lp::Status::Infeasible) throw DomainError("distance to an empty polyhedron");
  return out.value;
}

PolyCone cone_intersect(const PolyCone& a, const PolyCone& b) {
  if (a.dim() != b.dim()) throw InputError("cone dimension mismatch");
  auto n = a.normals();
  n.insert(n.end(), b.normals().begin(), b.normals().end());
  return PolyCone(a.dim(), std::move(n));
}

Triviality is_trivial_cone(const PolyCone& c, const DdLimits& limits) {
  auto g = generators(c, limits);
  if (g.empty()) return {true, {}};
  return {false, g.front()};
}

std::vector<PolyCone> closed_conic_hull(const PolyUnion& v, const DdLimits& limits) {
  const PolyUnion u = normalize(v);
  if (u.pieces.empty()) throw DomainError("closed conic hull of an empty union");
  std::vector<PolyCone> out;
  for (const auto& piece : u.pieces) {
    auto g = dd_convert(piece, limits);
    std::vector<Vec> gens = g.points;
    gens.insert(gens.end(), g.rays.begin(), g.rays.end());
    out.push_back(PolyCone::generated_by(u.dim, gens));
  }
  return out;
}

}  // namespace pwaeb::poly
