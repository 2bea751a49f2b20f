// Double description method for polyhedral cones, after Motzkin et al. and
// Fukuda & Prodon. The lineality space is split off first so that the
// incremental phase works on a pointed cone, where the combinatorial
// adjacency test is exact.
#include "pwaeb/polyhedra.hpp"

#include "pwaeb/errors.hpp"

#include <boost/dynamic_bitset.hpp>

#include <utility>

namespace pwaeb::poly {

namespace {

using Matrix = std::vector<Vec>;

// Reduced row echelon form in place; returns the pivot column of each nonzero row.
std::vector<std::size_t> rref(Matrix& m, std::size_t cols) {
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t c = 0; c < cols && row < m.size(); ++c) {
    std::size_t sel = row;
    while (sel < m.size() && m[sel][c] == 0) ++sel;
    if (sel == m.size()) continue;
    std::swap(m[row], m[sel]);
    const Rational p = m[row][c];
    for (auto& x : m[row]) x /= p;
    for (std::size_t r = 0; r < m.size(); ++r) {
      if (r == row || m[r][c] == 0) continue;
      const Rational f = m[r][c];
      for (std::size_t k = 0; k < m[r].size(); ++k) m[r][k] -= f * m[row][k];
    }
    pivots.push_back(c);
    ++row;
  }
  m.resize(row);
  return pivots;
}

Matrix kernel_basis(const Matrix& rows, std::size_t dim) {
  Matrix m = rows;
  auto pivots = rref(m, dim);
  std::vector<bool> is_pivot(dim, false);
  for (auto c : pivots) is_pivot[c] = true;
  Matrix basis;
  for (std::size_t f = 0; f < dim; ++f) {
    if (is_pivot[f]) continue;
    Vec v = zeros(dim);
    v[f] = 1;
    for (std::size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = -m[r][f];
    basis.push_back(primitive(v));
  }
  return basis;
}

// Inverse of a square nonsingular matrix by Gauss-Jordan elimination.
Matrix inverse(const Matrix& a) {
  const std::size_t n = a.size();
  Matrix aug(n, Vec(2 * n, Rational(0)));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug[i][j] = a[i][j];
    aug[i][n + i] = 1;
  }
  rref(aug, n);
  Matrix inv(n, Vec(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) inv[i][j] = aug[i][n + j];
  return inv;
}

struct Ray {
  Vec v;
  boost::dynamic_bitset<> zero;  // processed rows tight at v
};

constexpr std::size_t kIntermediateCap = 200000;

// Core routine: generators of { x | <n, x> <= 0 } in R^dim, no dimension cap.
std::vector<Vec> dd_cone(std::size_t dim, const std::vector<Vec>& normals, std::size_t max_out) {
  if (dim == 0) return {};
  Matrix rows;
  for (const auto& n : normals) {
    if (n.size() != dim) throw InputError("normal dimension mismatch in double description");
    if (!is_zero(n)) rows.push_back(primitive(n));
  }
  const Matrix lineality = kernel_basis(rows, dim);
  for (const auto& l : lineality) {
    rows.push_back(l);
    rows.push_back(Rational(-1) * l);
  }
  const std::size_t m = rows.size();

  // Initial simplicial cone from the first `dim` independent rows.
  std::vector<std::size_t> chosen;
  {
    Matrix echelon;
    for (std::size_t i = 0; i < m && chosen.size() < dim; ++i) {
      Matrix trial = echelon;
      trial.push_back(rows[i]);
      if (rref(trial, dim).size() > echelon.size()) {
        echelon = std::move(trial);
        chosen.push_back(i);
      }
    }
  }
  if (chosen.size() != dim) throw std::logic_error("double description: constraint rows do not span");

  Matrix b;
  for (auto i : chosen) b.push_back(rows[i]);
  const Matrix binv = inverse(b);

  std::vector<Ray> rays;
  for (std::size_t k = 0; k < dim; ++k) {
    Ray r;
    r.v.resize(dim);
    for (std::size_t i = 0; i < dim; ++i) r.v[i] = -binv[i][k];
    r.v = primitive(r.v);
    r.zero.resize(m);
    for (std::size_t j = 0; j < dim; ++j)
      if (j != k) r.zero.set(chosen[j]);
    rays.push_back(std::move(r));
  }

  std::vector<bool> done(m, false);
  for (auto i : chosen) done[i] = true;
  const std::size_t need = dim >= 2 ? dim - 2 : 0;

  for (std::size_t row = 0; row < m; ++row) {
    if (done[row]) continue;
    done[row] = true;
    const Vec& a = rows[row];

    std::vector<Rational> s(rays.size());
    std::vector<std::size_t> pos, neg;
    for (std::size_t i = 0; i < rays.size(); ++i) {
      s[i] = dot(a, rays[i].v);
      if (s[i] > 0)
        pos.push_back(i);
      else if (s[i] < 0)
        neg.push_back(i);
    }
    if (pos.empty()) {
      for (std::size_t i = 0; i < rays.size(); ++i)
        if (s[i] == 0) rays[i].zero.set(row);
      continue;
    }

    std::vector<Ray> next;
    for (std::size_t i = 0; i < rays.size(); ++i) {
      if (s[i] > 0) continue;
      Ray r = rays[i];
      if (s[i] == 0) r.zero.set(row);
      next.push_back(std::move(r));
    }
    for (auto p : pos) {
      for (auto q : neg) {
        boost::dynamic_bitset<> common = rays[p].zero & rays[q].zero;
        if (common.count() < need) continue;
        bool adjacent = true;
        for (std::size_t r = 0; r < rays.size() && adjacent; ++r) {
          if (r == p || r == q) continue;
          if (common.is_subset_of(rays[r].zero)) adjacent = false;
        }
        if (!adjacent) continue;
        Ray nr;
        nr.v = primitive(s[p] * rays[q].v - s[q] * rays[p].v);
        nr.zero = std::move(common);
        nr.zero.set(row);
        next.push_back(std::move(nr));
        if (next.size() > kIntermediateCap) throw LimitError("double description: intermediate ray count exceeded");
      }
    }
    rays = std::move(next);
  }

  std::vector<Vec> out;
  out.reserve(rays.size() + 2 * lineality.size());
  for (auto& r : rays) out.push_back(std::move(r.v));
  for (const auto& l : lineality) {
    out.push_back(l);
    out.push_back(Rational(-1) * l);
  }
  if (out.size() > max_out)
    throw LimitError("double description produced " + std::to_string(out.size()) + " generators (cap " +
                     std::to_string(max_out) + ")");
  return out;
}

void check_dim(std::size_t dim, const DdLimits& limits) {
  if (dim > limits.max_dim)
    throw LimitError("dimension " + std::to_string(dim) + " exceeds the double description cap " +
                     std::to_string(limits.max_dim));
}

}  // namespace

std::vector<Vec> cone_generators(std::size_t dim, const std::vector<Vec>& normals, const DdLimits& limits) {
  check_dim(dim, limits);
  return dd_cone(dim, normals, limits.max_generators);
}

std::vector<Vec> generators(const PolyCone& c, const DdLimits& limits) {
  return cone_generators(c.dim(), c.normals(), limits);
}

PolyCone PolyCone::generated_by(std::size_t dim, const std::vector<Vec>& rays) {
  for (const auto& r : rays)
    if (r.size() != dim) throw InputError("generator dimension mismatch");
  // The H-form of cone(G) is read off the generators of its polar { h | <h, g> <= 0 }.
  DdLimits limits;
  check_dim(dim, limits);
  return PolyCone(dim, dd_cone(dim, rays, kIntermediateCap));
}

GeneratorRep dd_convert(const Polyhedron& p, const DdLimits& limits) {
  check_dim(p.dim(), limits);
  const std::size_t d = p.dim();
  // Homogenize: (x, t) with <w, x> - c t <= 0 and t >= 0.
  std::vector<Vec> normals;
  for (const auto& h : p.inequalities()) {
    Vec n = h.normal;
    n.push_back(-h.rhs);
    normals.push_back(std::move(n));
  }
  Vec t_nonneg = zeros(d + 1);
  t_nonneg[d] = -1;
  normals.push_back(std::move(t_nonneg));

  GeneratorRep g;
  g.dim = d;
  for (auto& v : dd_cone(d + 1, normals, limits.max_generators)) {
    const Rational t = v[d];
    v.pop_back();
    if (t > 0) {
      const Rational inv = Rational(1) / t;
      g.points.push_back(inv * v);
    } else {
      g.rays.push_back(std::move(v));
    }
  }
  if (g.points.empty()) g.rays.clear();
  return g;
}

Polyhedron dd_reverse(const GeneratorRep& g, const DdLimits& limits) {
  check_dim(g.dim, limits);
  if (g.points.empty()) return Polyhedron::empty(g.dim);
  if (g.points.size() + g.rays.size() > limits.max_generators)
    throw LimitError("generator list exceeds the double description cap");
  const std::size_t d = g.dim;
  std::vector<Vec> gens;
  for (const auto& p : g.points) {
    if (p.size() != d) throw InputError("point dimension mismatch");
    Vec v = p;
    v.emplace_back(1);
    gens.push_back(std::move(v));
  }
  for (const auto& r : g.rays) {
    if (r.size() != d) throw InputError("ray dimension mismatch");
    Vec v = r;
    v.emplace_back(0);
    gens.push_back(std::move(v));
  }
  std::vector<Halfspace> ineqs;
  for (auto& h : dd_cone(d + 1, gens, kIntermediateCap)) {
    Rational ht = h[d];
    h.pop_back();
    if (is_zero(h)) continue;
    ineqs.push_back({std::move(h), -ht});
  }
  return Polyhedron(d, std::move(ineqs));
}

}  // namespace pwaeb::poly
