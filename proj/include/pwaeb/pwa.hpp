#pragma once

#include "pwaeb/polyhedra.hpp"
#include "pwaeb/rational.hpp"

#include <cstddef>
#include <vector>

namespace pwaeb::pwa {

/// offset + <gradient, x>
struct AffineTerm {
  Rational offset;
  Vec gradient;
};

/// x -> max over terms. Never empty.
struct ConvexPiece {
  std::vector<AffineTerm> terms;
};

/// f(x) = min over pieces of max over their terms.
class MinMaxFunction {
public:
  /// Throws InputError on an empty piece list, an empty piece, or a gradient
  /// whose length differs from dim.
  MinMaxFunction(std::size_t dim, std::vector<ConvexPiece> pieces);

  std::size_t dim() const { return dim_; }
  const std::vector<ConvexPiece>& pieces() const { return pieces_; }
  std::size_t term_count() const;

  friend bool operator==(const MinMaxFunction& a, const MinMaxFunction& b);

private:
  std::size_t dim_;
  std::vector<ConvexPiece> pieces_;
};

Rational evaluate_term(const AffineTerm& t, const Vec& x);
Rational evaluate_piece(const ConvexPiece& p, const Vec& x);
Rational evaluate(const MinMaxFunction& f, const Vec& x);
/// max(f(x), 0); also equals the min over pieces of their clamped values.
Rational evaluate_plus(const MinMaxFunction& f, const Vec& x);

struct PieceInfo {
  ExtRational f_star;  // -inf when the piece is unbounded below
  bool in_i0 = false;  // f_star <= 0
  Vec minimizer;       // empty when f_star is -inf
};

struct PieceAnalysis {
  std::vector<PieceInfo> pieces;

  std::vector<std::size_t> i0() const;
  bool sublevel_empty() const { return i0().empty(); }
};

PieceAnalysis analyze_pieces(const MinMaxFunction& f);

/// { x | max_j terms <= 0 } for a single piece.
poly::Polyhedron piece_sublevel(const ConvexPiece& p, std::size_t dim, const Rational& level = 0);
/// { x | <v_j, x> <= 0 for all j }
poly::PolyCone piece_recession(const ConvexPiece& p, std::size_t dim);

/// Union of the piece sublevel sets over I0; no pieces iff S(f) is empty.
poly::PolyUnion sublevel_union(const MinMaxFunction& f);
/// One cone per piece in I0. Throws DomainError when S(f) is empty.
std::vector<poly::PolyCone> sublevel_recession(const MinMaxFunction& f);
/// Throws DomainError when S(f) is empty.
Rational distance_to_sublevel(const Vec& x, const MinMaxFunction& f, Norm norm = Norm::Linf);

/// Offsets zeroed; piece structure kept.
MinMaxFunction recession_function(const MinMaxFunction& f);
/// One cone per piece, including pieces outside I0.
std::vector<poly::PolyCone> rec_plus_sublevel(const MinMaxFunction& f);

/// Max dual norm over all gradients; a Lipschitz constant for the base norm.
Rational lipschitz_constant(const MinMaxFunction& f, Norm base = Norm::Linf);

bool is_homogeneous_representation(const MinMaxFunction& f);

/// Largest number of pieces or of terms in one piece a builder may produce.
inline constexpr std::size_t kMaxBuilderSize = 4096;

MinMaxFunction pa_min(const MinMaxFunction& f, const MinMaxFunction& g);
MinMaxFunction pa_max(const MinMaxFunction& f, const MinMaxFunction& g);
MinMaxFunction pa_add(const MinMaxFunction& f, const MinMaxFunction& g);
MinMaxFunction pa_scale(const Rational& c, const MinMaxFunction& f);
MinMaxFunction pa_affine(const Rational& a, const Vec& v);
MinMaxFunction pa_constant(std::size_t dim, const Rational& a);
MinMaxFunction pa_abs(const MinMaxFunction& f);
MinMaxFunction pa_clamp_plus(const MinMaxFunction& f);

}  // namespace pwaeb::pwa
