#pragma once

#include "pwaeb/rational.hpp"

#include <optional>
#include <span>
#include <vector>

namespace pwaeb::lp {

enum class Relation { LessEq, Equal, GreaterEq };

struct Constraint {
  Vec coeffs;
  Relation rel = Relation::LessEq;
  Rational rhs = 0;
};

/// minimize <objective, x> over x in R^dimension (all variables free).
struct LinearProgram {
  std::size_t dimension = 0;
  Vec objective;
  std::vector<Constraint> constraints;
};

enum class Status { Optimal, Unbounded, Infeasible };

/// Solver result together with an exactly checkable certificate.
///
/// Multipliers (`dual`, `farkas`) refer to the constraints written in
/// "less-or-equal" orientation: a GreaterEq row <a,x> >= b is read as
/// <-a,x> <= -b. Multipliers of inequality rows are nonnegative, those of
/// equality rows are free.
///
///  - Optimal:    `point` is feasible, <c, point> = value, and `dual` satisfies
///                c + sum_i dual_i a_i = 0 with value = -sum_i dual_i b_i.
///  - Unbounded:  `point` is feasible and `ray` satisfies the homogenized
///                rows with <c, ray> < 0.
///  - Infeasible: sum_i farkas_i a_i = 0 and sum_i farkas_i b_i < 0.
struct LpOutcome {
  Status status = Status::Infeasible;
  Rational value = 0;
  Vec point;
  Vec ray;
  Vec dual;
  Vec farkas;
};

/// Exact two-phase simplex with Bland's rule. Throws InputError on
/// malformed dimensions.
LpOutcome solve(const LinearProgram& lp);

/// Re-checks every certificate field of `out` against `lp` with exact arithmetic.
bool verify(const LinearProgram& lp, const LpOutcome& out);

/// A point satisfying every constraint, or nullopt when the system is inconsistent.
std::optional<Vec> feasible_point(std::size_t dimension, const std::vector<Constraint>& constraints);

/// A point satisfying all constraints with the rows listed in `strict` holding
/// strictly, or nullopt if none exists. Decided by maximizing a common slack
/// s <= 1; homogeneous systems are additionally intersected with the unit box.
std::optional<Vec> strictly_feasible(std::size_t dimension, const std::vector<Constraint>& constraints,
                                     std::span<const std::size_t> strict);
std::optional<Vec> strictly_feasible(std::size_t dimension, const std::vector<Constraint>& constraints,
                                     std::size_t strict_index);

}  // namespace pwaeb::lp
