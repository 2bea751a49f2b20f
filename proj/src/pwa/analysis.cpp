#include "pwaeb/errors.hpp"
#include "pwaeb/lp.hpp"
#include "pwaeb/pwa.hpp"

#include <algorithm>

namespace pwaeb::pwa {

std::vector<std::size_t> PieceAnalysis::i0() const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < pieces.size(); ++i)
    if (pieces[i].in_i0) out.push_back(i);
  return out;
}

namespace {

// min t subject to a_j + <v_j, y> <= t, over (y, t).
PieceInfo analyze_piece(const ConvexPiece& p, std::size_t dim) {
  lp::LinearProgram prog;
  prog.dimension = dim + 1;
  prog.objective = zeros(dim + 1);
  prog.objective[dim] = 1;
  for (const auto& t : p.terms) {
    Vec row = t.gradient;
    row.push_back(-1);
    prog.constraints.push_back({std::move(row), lp::Relation::LessEq, -t.offset});
  }
  const auto out = lp::solve(prog);
  PieceInfo info;
  if (out.status == lp::Status::Unbounded) {
    info.f_star = ExtRational::neg_inf();
    info.in_i0 = true;
    return info;
  }
  info.f_star = out.value;
  info.in_i0 = out.value <= 0;
  info.minimizer.assign(out.point.begin(), out.point.begin() + static_cast<std::ptrdiff_t>(dim));
  return info;
}

void require_nonempty(const std::vector<std::size_t>& i0) {
  if (i0.empty()) throw DomainError("S(f) empty");
}

}  // namespace

PieceAnalysis analyze_pieces(const MinMaxFunction& f) {
  PieceAnalysis a;
  for (const auto& p : f.pieces()) a.pieces.push_back(analyze_piece(p, f.dim()));
  return a;
}

poly::PolyUnion sublevel_union(const MinMaxFunction& f) {
  poly::PolyUnion u{f.dim(), {}};
  for (auto i : analyze_pieces(f).i0()) u.pieces.push_back(piece_sublevel(f.pieces()[i], f.dim()));
  return u;
}

std::vector<poly::PolyCone> sublevel_recession(const MinMaxFunction& f) {
  const auto i0 = analyze_pieces(f).i0();
  require_nonempty(i0);
  std::vector<poly::PolyCone> out;
  for (auto i : i0) out.push_back(piece_recession(f.pieces()[i], f.dim()));
  return out;
}

Rational distance_to_sublevel(const Vec& x, const MinMaxFunction& f, Norm norm) {
  if (x.size() != f.dim()) throw InputError("point dimension does not match function");
  const auto i0 = analyze_pieces(f).i0();
  require_nonempty(i0);
  Rational best = poly::distance(x, piece_sublevel(f.pieces()[i0.front()], f.dim()), norm);
  for (std::size_t k = 1; k < i0.size() && best > 0; ++k)
    best = std::min(best, poly::distance(x, piece_sublevel(f.pieces()[i0[k]], f.dim()), norm));
  return best;
}

}  // namespace pwaeb::pwa
