#pragma once

#include "pwaeb/polyhedra.hpp"
#include "pwaeb/pwa.hpp"
#include "pwaeb/rational.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace pwaeb::certify {

enum class Verdict { Holds, Fails, Inconclusive };

std::string_view to_string(Verdict v);

struct NamedValue {
  std::string name;
  ExtRational value;
};

/// How a Fails witness ray relates to an attached cone.
enum class ConeRole {
  Contains,  // the ray lies in the cone
  Excludes,  // the ray strictly violates some inequality of the cone
  Info,
};

std::string_view to_string(ConeRole r);

struct NamedCone {
  std::string label;
  ConeRole role = ConeRole::Info;
  poly::PolyCone cone;
};

/// Outcome of one theorem or estimate.
///
/// `condition` is the truth value of the tested condition when it was decided
/// exactly; `necessity_guard` reports whether the hypothesis making that
/// condition necessary holds. A Fails verdict always comes with a witness ray
/// and the cones it must be checked against.
struct Certificate {
  std::string theorem;
  std::string scope;  // "global", "strict_sublevel", "set", "piece"
  Verdict verdict = Verdict::Inconclusive;
  std::optional<bool> condition;
  std::optional<bool> necessity_guard;
  std::vector<Vec> witness_rays;
  std::vector<Vec> witness_points;
  std::vector<NamedValue> derived;
  std::vector<NamedCone> cones;
  std::vector<std::string> notes;
  std::vector<Certificate> parts;

  void set(std::string name, ExtRational value);
  std::optional<ExtRational> get(std::string_view name) const;
  /// Throws DomainError when missing or infinite.
  Rational value(std::string_view name) const;
  const Certificate* part(std::string_view theorem) const;
};

/// Re-checks the first witness ray of a Fails certificate against its cones by
/// exact substitution. Certificates without a Fails verdict are accepted.
bool verify_witness(const Certificate& c);

struct FullSpace {
  std::size_t dim = 0;
};

struct Box {
  Vec lo;
  Vec hi;
};

struct PolyUnionSet {
  poly::PolyUnion u;
};

struct ConeSet {
  poly::PolyCone cone;
};

struct PointList {
  std::size_t dim = 0;
  std::vector<Vec> points;
};

/// { x | f(x) < rho }
struct StrictSublevel {
  pwa::MinMaxFunction f;
  Rational rho;
};

using SetSpec = std::variant<FullSpace, Box, PolyUnionSet, ConeSet, PointList, StrictSublevel>;

std::size_t dimension(const SetSpec& v);
std::string_view kind(const SetSpec& v);
bool contains(const SetSpec& v, const Vec& x);
/// Throws InputError on inconsistent dimensions or a box with lo > hi.
void validate(const SetSpec& v);
/// Polyhedral sets as a normalized union; StrictSublevel throws InputError.
poly::PolyUnion as_poly_union(const SetSpec& v);

struct TauConfig {
  std::size_t samples = 512;
  Rational box_radius = 16;
  std::uint64_t seed = 0;
  Norm norm = Norm::Linf;
  std::optional<Rational> grid_step;  // default box_radius / 64
  std::size_t max_grid_points = 4096;
};

Certificate classify_robinson(const pwa::MinMaxFunction& f);
Certificate uniform_local_radius(const pwa::MinMaxFunction& f, Norm base = Norm::Linf);
Certificate certify_bounded(const pwa::MinMaxFunction& f, const SetSpec& v, const TauConfig& cfg = {});
Certificate check_growth(const pwa::MinMaxFunction& f, const SetSpec& v, const TauConfig& cfg = {});
Certificate check_coercive_on_cone(const pwa::MinMaxFunction& f, const SetSpec& v);
/// Requires the piece minimum to be positive, then runs check_geometric_piece.
Certificate check_geometric(const pwa::MinMaxFunction& f, const SetSpec& v, std::size_t piece);
/// 0 in int(co{gradients} + polar(V)), cross-checked against coercivity of the
/// piece on V. Valid for any piece; the error-bound conclusion needs a positive minimum.
Certificate check_geometric_piece(const pwa::ConvexPiece& piece, const SetSpec& v);
Certificate certify_polyhedral(const pwa::MinMaxFunction& f, const SetSpec& v, Norm norm = Norm::Linf);
/// Per-piece form: only pieces with a positive minimum are checked, each through
/// the recession cone of its level set at the minimum.
Certificate certify_stratified(const pwa::MinMaxFunction& f, const SetSpec& v);
Certificate certify_strict_sublevel(const pwa::MinMaxFunction& f, const SetSpec& v);
/// Picks the strongest applicable exact test for the kind of v.
Certificate certify_auto(const pwa::MinMaxFunction& f, const SetSpec& v, const TauConfig& cfg = {});

Certificate estimate_tau(const pwa::MinMaxFunction& f, const SetSpec& v, const TauConfig& cfg = {});

/// Omega = { x | F(x) = 0, G(x) <= 0 }.
struct ConstraintSystem {
  std::size_t dim = 0;
  std::vector<pwa::MinMaxFunction> equalities;
  std::vector<pwa::MinMaxFunction> inequalities;
};

/// ||F(x)||_inf + sum_i max(G_i(x), 0); its sublevel set is Omega.
pwa::MinMaxFunction residual_function(const ConstraintSystem& sys);
Certificate certify_system(const ConstraintSystem& sys, const SetSpec& v, const TauConfig& cfg = {});

}  // namespace pwaeb::certify
