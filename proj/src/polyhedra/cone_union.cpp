// Decides whether a polyhedral cone is covered by a finite union of
// polyhedral cones.
//
// c \ d = union over inequalities h of d of (c ∩ {h > 0}). Since every
// member of the union is closed, a nonempty open slice c ∩ {h > 0} is
// covered iff its closure c ∩ {h >= 0} is, so the search recurses on closed
// cones and carries the strict rows along only to produce the witness.
#include "pwaeb/polyhedra.hpp"

#include "pwaeb/errors.hpp"

#include <algorithm>

namespace pwaeb::poly {

namespace {

class InclusionSearch {
public:
  InclusionSearch(std::size_t dim, const std::vector<PolyCone>& ds, const DdLimits& limits)
      : dim_(dim), ds_(ds), limits_(limits) {}

  // `normals` describe the closed slice; `strict` holds rows h that must be
  // positive at the witness (each is stored negated in `normals`).
  ConeInclusion run(const std::vector<Vec>& normals, const std::vector<Vec>& strict, std::size_t k) {
    const auto gens = cone_generators(dim_, normals, limits_);
    if (gens.empty()) return {true, {}};
    for (std::size_t j = k; j < ds_.size(); ++j) {
      const auto& d = ds_[j];
      if (std::all_of(gens.begin(), gens.end(), [&](const Vec& g) { return d.contains(g); })) return {true, {}};
    }
    if (k == ds_.size()) return {false, witness(normals, strict, gens)};

    for (const auto& h : ds_[k].normals()) {
      std::vector<lp::Constraint> cons = closed_constraints(normals);
      cons.push_back({h, lp::Relation::GreaterEq, Rational(0)});
      if (!lp::strictly_feasible(dim_, cons, cons.size() - 1)) continue;

      std::vector<Vec> sub = normals;
      sub.push_back(Rational(-1) * h);
      std::vector<Vec> sub_strict = strict;
      sub_strict.push_back(h);
      auto r = run(sub, sub_strict, k + 1);
      if (!r.contained) return r;
    }
    return {true, {}};
  }

private:
  static std::vector<lp::Constraint> closed_constraints(const std::vector<Vec>& normals) {
    std::vector<lp::Constraint> cons;
    cons.reserve(normals.size() + 1);
    for (const auto& n : normals) cons.push_back({n, lp::Relation::LessEq, Rational(0)});
    return cons;
  }

  Vec witness(const std::vector<Vec>& normals, const std::vector<Vec>& strict, const std::vector<Vec>& gens) const {
    if (strict.empty()) return gens.front();
    std::vector<lp::Constraint> cons = closed_constraints(normals);
    std::vector<std::size_t> idx;
    for (const auto& h : strict) {
      idx.push_back(cons.size());
      cons.push_back({h, lp::Relation::GreaterEq, Rational(0)});
    }
    auto p = lp::strictly_feasible(dim_, cons, idx);
    // The open slice is dense in the closed one, so this cannot fail.
    if (!p) throw std::logic_error("cone_in_union: open slice unexpectedly empty");
    return primitive(*p);
  }

  std::size_t dim_;
  const std::vector<PolyCone>& ds_;
  DdLimits limits_;
};

}  // namespace

ConeInclusion cone_in_union(const PolyCone& c, const std::vector<PolyCone>& ds, const DdLimits& limits) {
  for (const auto& d : ds)
    if (d.dim() != c.dim()) throw InputError("cone_in_union: dimension mismatch");
  InclusionSearch search(c.dim(), ds, limits);
  return search.run(c.normals(), {}, 0);
}

bool verify_witness(const Vec& ray, const PolyCone& c, const std::vector<PolyCone>& ds) {
  if (ray.size() != c.dim() || !c.contains(ray)) return false;
  return std::all_of(ds.begin(), ds.end(), [&](const PolyCone& d) {
    return std::any_of(d.normals().begin(), d.normals().end(), [&](const Vec& n) { return dot(n, ray) > 0; });
  });
}

}  // namespace pwaeb::poly
