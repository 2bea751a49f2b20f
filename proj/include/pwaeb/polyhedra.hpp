#pragma once

#include "pwaeb/lp.hpp"
#include "pwaeb/rational.hpp"

#include <cstddef>
#include <vector>

namespace pwaeb::poly {

/// <normal, x> <= rhs
struct Halfspace {
  Vec normal;
  Rational rhs;
};

/// Closed convex set { x | <w_k, x> <= c_k for all k } in H-form.
/// Rows with a zero normal and nonnegative rhs are dropped on construction.
class Polyhedron {
public:
  Polyhedron() = default;
  Polyhedron(std::size_t dim, std::vector<Halfspace> inequalities);

  static Polyhedron full(std::size_t dim);
  static Polyhedron empty(std::size_t dim);
  static Polyhedron box(const Vec& lo, const Vec& hi);
  static Polyhedron point(const Vec& x);

  std::size_t dim() const { return dim_; }
  const std::vector<Halfspace>& inequalities() const { return ineqs_; }

  bool contains(const Vec& x) const;
  bool is_empty() const;
  std::vector<lp::Constraint> constraints() const;
  Polyhedron intersect(const Polyhedron& other) const;

private:
  std::size_t dim_ = 0;
  std::vector<Halfspace> ineqs_;
};

/// Polyhedral convex cone { x | <w_k, x> <= 0 } stored in H-form.
/// Zero normals are dropped; an empty normal list is the whole space.
class PolyCone {
public:
  PolyCone() = default;
  PolyCone(std::size_t dim, std::vector<Vec> normals);

  static PolyCone full(std::size_t dim) { return PolyCone(dim, {}); }
  static PolyCone zero(std::size_t dim);
  /// cone(rays); the H-form is obtained by double description.
  static PolyCone generated_by(std::size_t dim, const std::vector<Vec>& rays);

  std::size_t dim() const { return dim_; }
  const std::vector<Vec>& normals() const { return normals_; }

  bool contains(const Vec& x) const;
  Polyhedron as_polyhedron() const;
  std::vector<lp::Constraint> constraints() const;

private:
  std::size_t dim_ = 0;
  std::vector<Vec> normals_;
};

/// conv(points) + cone(rays). No points means the empty set.
struct GeneratorRep {
  std::size_t dim = 0;
  std::vector<Vec> points;
  std::vector<Vec> rays;
};

struct PolyUnion {
  std::size_t dim = 0;
  std::vector<Polyhedron> pieces;

  bool contains(const Vec& x) const;
};

/// Drops pieces that an LP proves empty.
PolyUnion normalize(const PolyUnion& u);

/// Size caps for double description; operations beyond them throw LimitError.
struct DdLimits {
  std::size_t max_dim = 8;
  std::size_t max_generators = 64;
};

/// Generators of { x | <n, x> <= 0 for n in normals }: extreme rays of the
/// pointed part followed by +/- a basis of the lineality space. Rays are
/// primitive integer vectors.
std::vector<Vec> cone_generators(std::size_t dim, const std::vector<Vec>& normals, const DdLimits& limits = {});
std::vector<Vec> generators(const PolyCone& c, const DdLimits& limits = {});

GeneratorRep dd_convert(const Polyhedron& p, const DdLimits& limits = {});
Polyhedron dd_reverse(const GeneratorRep& g, const DdLimits& limits = {});

/// { x | <w_k, x> <= 0 }. Throws DomainError for an empty polyhedron.
PolyCone recession_cone(const Polyhedron& p);

/// K* = { y | <y, x> <= 0 for all x in K }.
PolyCone polar(const PolyCone& c, const DdLimits& limits = {});

struct MotzkinSplit {
  GeneratorRep polytope;  // points only
  PolyCone cone;
};
MotzkinSplit motzkin_decompose(const Polyhedron& p, const DdLimits& limits = {});

/// Exact distance under a polyhedral norm. Throws DomainError if p is empty.
/// Same set with redundant inequalities dropped, one LP per row. Empty
/// polyhedra are returned unchanged.
Polyhedron remove_redundant(const Polyhedron& p);

Rational distance(const Vec& x, const Polyhedron& p, Norm norm = Norm::Linf);

PolyCone cone_intersect(const PolyCone& a, const PolyCone& b);

struct Triviality {
  bool trivial = true;
  Vec witness;  // nonzero ray of the cone when !trivial
};
Triviality is_trivial_cone(const PolyCone& c, const DdLimits& limits = {});

struct ConeInclusion {
  bool contained = true;
  Vec witness;  // ray of c outside every member when !contained
};

/// Decides c ⊆ ds[0] ∪ ... ∪ ds[k-1]. The origin is always regarded as
/// covered. Members are processed in order, inequalities in order.
ConeInclusion cone_in_union(const PolyCone& c, const std::vector<PolyCone>& ds, const DdLimits& limits = {});

/// True iff `ray` lies in c and strictly violates some inequality of every member of ds.
bool verify_witness(const Vec& ray, const PolyCone& c, const std::vector<PolyCone>& ds);

/// Per nonempty piece P + K, the cone generated by the vertices of P and the
/// rays of K. Their union is the closed conic hull of the union.
std::vector<PolyCone> closed_conic_hull(const PolyUnion& v, const DdLimits& limits = {});

}  // namespace pwaeb::poly
