#include "pwaeb/lp.hpp"

#include "pwaeb/errors.hpp"

#include <limits>

namespace pwaeb::lp {

namespace {

constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();

// Dense simplex tableau for  min c^T z  s.t.  A z = b (b >= 0), z >= 0.
// The last column holds the right-hand side; `obj` holds reduced costs and,
// in its last slot, the negated objective value.
class Tableau {
public:
  Tableau(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), a_(rows * (cols + 1), Rational(0)), obj_(cols + 1, Rational(0)),
        basis_(rows, kNone), allowed_(cols, true) {}

  Rational& at(std::size_t r, std::size_t c) { return a_[r * (cols_ + 1) + c]; }
  const Rational& at(std::size_t r, std::size_t c) const { return a_[r * (cols_ + 1) + c]; }
  Rational& rhs(std::size_t r) { return at(r, cols_); }
  const Rational& rhs(std::size_t r) const { return at(r, cols_); }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::vector<std::size_t>& basis() { return basis_; }
  const std::vector<std::size_t>& basis() const { return basis_; }
  void forbid(std::size_t c) { allowed_[c] = false; }
  const Rational& reduced_cost(std::size_t c) const { return obj_[c]; }

  // Loads costs and prices out the current basis.
  void set_objective(const Vec& costs) {
    for (std::size_t c = 0; c < cols_; ++c) obj_[c] = costs[c];
    obj_[cols_] = 0;
    for (std::size_t r = 0; r < rows_; ++r) {
      const Rational cb = costs[basis_[r]];
      if (cb == 0) continue;
      for (std::size_t c = 0; c <= cols_; ++c) obj_[c] -= cb * at(r, c);
    }
  }

  Rational objective_value() const { return -obj_[cols_]; }

  void pivot(std::size_t pr, std::size_t pc) {
    const Rational p = at(pr, pc);
    for (std::size_t c = 0; c <= cols_; ++c)
      if (at(pr, c) != 0) at(pr, c) /= p;
    for (std::size_t r = 0; r < rows_; ++r) {
      if (r == pr || at(r, pc) == 0) continue;
      const Rational f = at(r, pc);
      for (std::size_t c = 0; c <= cols_; ++c)
        if (at(pr, c) != 0) at(r, c) -= f * at(pr, c);
    }
    if (obj_[pc] != 0) {
      const Rational f = obj_[pc];
      for (std::size_t c = 0; c <= cols_; ++c)
        if (at(pr, c) != 0) obj_[c] -= f * at(pr, c);
    }
    basis_[pr] = pc;
  }

  // Runs Bland's rule to optimality. Returns the entering column of an
  // unbounded direction, or kNone at optimality.
  std::size_t optimize() {
    for (;;) {
      std::size_t enter = kNone;
      for (std::size_t c = 0; c < cols_; ++c) {
        if (allowed_[c] && obj_[c] < 0) {
          enter = c;
          break;
        }
      }
      if (enter == kNone) return kNone;

      std::size_t leave = kNone;
      Rational best;
      for (std::size_t r = 0; r < rows_; ++r) {
        if (at(r, enter) <= 0) continue;
        Rational ratio = rhs(r) / at(r, enter);
        if (leave == kNone || ratio < best || (ratio == best && basis_[r] < basis_[leave])) {
          leave = r;
          best = std::move(ratio);
        }
      }
      if (leave == kNone) return enter;
      pivot(leave, enter);
    }
  }

private:
  std::size_t rows_, cols_;
  std::vector<Rational> a_;
  std::vector<Rational> obj_;
  std::vector<std::size_t> basis_;
  std::vector<bool> allowed_;
};

void check_shape(const LinearProgram& lp) {
  if (lp.objective.size() != lp.dimension)
    throw InputError("objective length " + std::to_string(lp.objective.size()) + " != dimension " +
                     std::to_string(lp.dimension));
  for (std::size_t i = 0; i < lp.constraints.size(); ++i)
    if (lp.constraints[i].coeffs.size() != lp.dimension)
      throw InputError("constraint " + std::to_string(i) + " has " +
                       std::to_string(lp.constraints[i].coeffs.size()) + " coefficients, expected " +
                       std::to_string(lp.dimension));
}

// Orientation of row i in "<=" form: +1 for LessEq/Equal, -1 for GreaterEq.
int orientation(Relation r) { return r == Relation::GreaterEq ? -1 : 1; }

}  // namespace

LpOutcome solve(const LinearProgram& lp) {
  check_shape(lp);
  const std::size_t n = lp.dimension;
  const std::size_t m = lp.constraints.size();

  // Column layout: x+ [0,n), x- [n,2n), one slack per inequality, then artificials.
  std::vector<std::size_t> slack_col(m, kNone);
  std::size_t cols = 2 * n;
  for (std::size_t i = 0; i < m; ++i)
    if (lp.constraints[i].rel != Relation::Equal) slack_col[i] = cols++;

  // Row sign flips keep b >= 0; a slack can start basic when its flipped
  // coefficient is +1, otherwise the row receives an artificial.
  std::vector<int> sigma(m, 1);
  std::vector<std::size_t> art_col(m, kNone);
  for (std::size_t i = 0; i < m; ++i) {
    const auto& con = lp.constraints[i];
    if (con.rhs < 0 || (con.rhs == 0 && con.rel == Relation::GreaterEq)) sigma[i] = -1;
    const bool slack_basic = (con.rel == Relation::LessEq && sigma[i] == 1) ||
                             (con.rel == Relation::GreaterEq && sigma[i] == -1);
    if (!slack_basic) art_col[i] = cols++;
  }

  Tableau t(m, cols);
  std::vector<std::size_t> initial_basis(m);
  for (std::size_t i = 0; i < m; ++i) {
    const auto& con = lp.constraints[i];
    const Rational s = sigma[i];
    for (std::size_t j = 0; j < n; ++j) {
      if (con.coeffs[j] == 0) continue;
      t.at(i, j) = s * con.coeffs[j];
      t.at(i, n + j) = -s * con.coeffs[j];
    }
    if (slack_col[i] != kNone) t.at(i, slack_col[i]) = s * (con.rel == Relation::LessEq ? 1 : -1);
    if (art_col[i] != kNone) t.at(i, art_col[i]) = 1;
    t.rhs(i) = s * con.rhs;
    initial_basis[i] = art_col[i] != kNone ? art_col[i] : slack_col[i];
    t.basis()[i] = initial_basis[i];
  }

  // Multipliers in "<=" orientation from the reduced costs of the initial
  // basis columns: y'_i = cost(col) - rc(col), y_i = sigma_i y'_i.
  auto multipliers = [&](const Vec& costs) {
    Vec mu(m);
    for (std::size_t i = 0; i < m; ++i) {
      const std::size_t c = initial_basis[i];
      Rational y = Rational(sigma[i]) * (costs[c] - t.reduced_cost(c));
      mu[i] = orientation(lp.constraints[i].rel) == 1 ? Rational(-y) : y;
    }
    return mu;
  };

  LpOutcome out;

  bool has_art = false;
  Vec phase1(cols, Rational(0));
  for (std::size_t i = 0; i < m; ++i)
    if (art_col[i] != kNone) {
      phase1[art_col[i]] = 1;
      has_art = true;
    }
  if (has_art) {
    t.set_objective(phase1);
    t.optimize();  // bounded below by zero
    if (t.objective_value() > 0) {
      out.status = Status::Infeasible;
      out.farkas = multipliers(phase1);
      return out;
    }
    // Drive zero-level artificials out of the basis where possible; rows
    // with no admissible pivot are redundant and stay inert.
    std::vector<bool> is_art(cols, false);
    for (std::size_t i = 0; i < m; ++i)
      if (art_col[i] != kNone) is_art[art_col[i]] = true;
    for (std::size_t r = 0; r < m; ++r) {
      if (!is_art[t.basis()[r]]) continue;
      for (std::size_t c = 0; c < cols; ++c) {
        if (!is_art[c] && t.at(r, c) != 0) {
          t.pivot(r, c);
          break;
        }
      }
    }
    for (std::size_t i = 0; i < m; ++i)
      if (art_col[i] != kNone) t.forbid(art_col[i]);
  }

  Vec phase2(cols, Rational(0));
  for (std::size_t j = 0; j < n; ++j) {
    phase2[j] = lp.objective[j];
    phase2[n + j] = -lp.objective[j];
  }
  t.set_objective(phase2);
  const std::size_t unbounded_col = t.optimize();

  auto primal = [&]() {
    Vec z(cols, Rational(0));
    for (std::size_t r = 0; r < m; ++r) z[t.basis()[r]] = t.rhs(r);
    Vec x(n);
    for (std::size_t j = 0; j < n; ++j) x[j] = z[j] - z[n + j];
    return x;
  };

  out.point = primal();
  if (unbounded_col != kNone) {
    Vec dz(cols, Rational(0));
    dz[unbounded_col] = 1;
    for (std::size_t r = 0; r < m; ++r) dz[t.basis()[r]] = -t.at(r, unbounded_col);
    out.ray.resize(n);
    for (std::size_t j = 0; j < n; ++j) out.ray[j] = dz[j] - dz[n + j];
    out.status = Status::Unbounded;
    return out;
  }
  out.status = Status::Optimal;
  out.value = t.objective_value();
  out.dual = multipliers(phase2);
  return out;
}

bool verify(const LinearProgram& lp, const LpOutcome& out) {
  check_shape(lp);
  const std::size_t n = lp.dimension;
  const std::size_t m = lp.constraints.size();

  auto satisfies = [](const Constraint& c, const Vec& x, bool homogeneous) {
    const Rational lhs = dot(c.coeffs, x);
    const Rational rhs = homogeneous ? Rational(0) : c.rhs;
    switch (c.rel) {
      case Relation::LessEq: return lhs <= rhs;
      case Relation::Equal: return lhs == rhs;
      case Relation::GreaterEq: return lhs >= rhs;
    }
    return false;
  };

  // sum_i mu_i (oriented a_i) and sum_i mu_i (oriented b_i); false if a sign is wrong.
  auto combine = [&](const Vec& mu, Vec& row, Rational& rhs) {
    if (mu.size() != m) return false;
    row = zeros(n);
    rhs = 0;
    for (std::size_t i = 0; i < m; ++i) {
      const auto& c = lp.constraints[i];
      if (c.rel != Relation::Equal && mu[i] < 0) return false;
      const Rational w = mu[i] * orientation(c.rel);
      for (std::size_t j = 0; j < n; ++j) row[j] += w * c.coeffs[j];
      rhs += w * c.rhs;
    }
    return true;
  };

  auto feasible = [&](const Vec& x) {
    if (x.size() != n) return false;
    for (const auto& c : lp.constraints)
      if (!satisfies(c, x, false)) return false;
    return true;
  };

  switch (out.status) {
    case Status::Optimal: {
      if (!feasible(out.point) || dot(lp.objective, out.point) != out.value) return false;
      Vec row;
      Rational rhs;
      if (!combine(out.dual, row, rhs)) return false;
      for (std::size_t j = 0; j < n; ++j)
        if (lp.objective[j] + row[j] != 0) return false;
      return out.value == -rhs;
    }
    case Status::Unbounded: {
      if (!feasible(out.point) || out.ray.size() != n) return false;
      for (const auto& c : lp.constraints)
        if (!satisfies(c, out.ray, true)) return false;
      return dot(lp.objective, out.ray) < 0;
    }
    case Status::Infeasible: {
      Vec row;
      Rational rhs;
      if (!combine(out.farkas, row, rhs)) return false;
      return is_zero(row) && rhs < 0;
    }
  }
  return false;
}

std::optional<Vec> feasible_point(std::size_t dimension, const std::vector<Constraint>& constraints) {
  LinearProgram lp{dimension, zeros(dimension), constraints};
  auto out = solve(lp);
  if (out.status == Status::Infeasible) return std::nullopt;
  return out.point;
}

std::optional<Vec> strictly_feasible(std::size_t dimension, const std::vector<Constraint>& constraints,
                                     std::span<const std::size_t> strict) {
  std::vector<bool> is_strict(constraints.size(), false);
  for (std::size_t k : strict) {
    if (k >= constraints.size()) throw InputError("strict index out of range");
    if (constraints[k].rel == Relation::Equal) return std::nullopt;
    is_strict[k] = true;
  }

  // Variables (x, s): maximize s with s <= 1 and each strict row shifted by s.
  LinearProgram lp;
  lp.dimension = dimension + 1;
  lp.objective = zeros(dimension + 1);
  lp.objective[dimension] = -1;
  bool homogeneous = true;
  for (std::size_t i = 0; i < constraints.size(); ++i) {
    const auto& c = constraints[i];
    if (c.coeffs.size() != dimension) throw InputError("constraint dimension mismatch");
    homogeneous = homogeneous && c.rhs == 0;
    Constraint row{c.coeffs, c.rel, c.rhs};
    row.coeffs.emplace_back(0);
    if (is_strict[i]) row.coeffs[dimension] = c.rel == Relation::LessEq ? 1 : -1;
    lp.constraints.push_back(std::move(row));
  }
  Vec cap = zeros(dimension + 1);
  cap[dimension] = 1;
  lp.constraints.push_back({cap, Relation::LessEq, 1});
  if (homogeneous) {
    for (std::size_t j = 0; j < dimension; ++j) {
      Vec e = zeros(dimension + 1);
      e[j] = 1;
      lp.constraints.push_back({e, Relation::LessEq, 1});
      lp.constraints.push_back({e, Relation::GreaterEq, -1});
    }
  }

  auto out = solve(lp);
  if (out.status != Status::Optimal || out.value >= 0) return std::nullopt;
  out.point.pop_back();
  return out.point;
}

std::optional<Vec> strictly_feasible(std::size_t dimension, const std::vector<Constraint>& constraints,
                                     std::size_t strict_index) {
  const std::size_t idx[1] = {strict_index};
  return strictly_feasible(dimension, constraints, std::span<const std::size_t>(idx, 1));
}

}  // namespace pwaeb::lp
