#include "pwaeb/pwa.hpp"

#include "pwaeb/errors.hpp"

#include <algorithm>
#include <cassert>

namespace pwaeb::pwa {

MinMaxFunction::MinMaxFunction(std::size_t dim, std::vector<ConvexPiece> pieces) : dim_(dim), pieces_(std::move(pieces)) {
  if (pieces_.empty()) throw InputError("function needs at least one piece");
  for (std::size_t i = 0; i < pieces_.size(); ++i) {
    if (pieces_[i].terms.empty()) throw InputError("piece " + std::to_string(i) + " has no terms");
    for (std::size_t j = 0; j < pieces_[i].terms.size(); ++j)
      if (pieces_[i].terms[j].gradient.size() != dim_)
        throw InputError("piece " + std::to_string(i) + " term " + std::to_string(j) + ": gradient has length " +
                         std::to_string(pieces_[i].terms[j].gradient.size()) + ", expected " + std::to_string(dim_));
  }
}

std::size_t MinMaxFunction::term_count() const {
  std::size_t n = 0;
  for (const auto& p : pieces_) n += p.terms.size();
  return n;
}

bool operator==(const MinMaxFunction& a, const MinMaxFunction& b) {
  if (a.dim_ != b.dim_ || a.pieces_.size() != b.pieces_.size()) return false;
  for (std::size_t i = 0; i < a.pieces_.size(); ++i) {
    const auto& s = a.pieces_[i].terms;
    const auto& t = b.pieces_[i].terms;
    if (s.size() != t.size()) return false;
    for (std::size_t j = 0; j < s.size(); ++j)
      if (s[j].offset != t[j].offset || s[j].gradient != t[j].gradient) return false;
  }
  return true;
}

Rational evaluate_term(const AffineTerm& t, const Vec& x) { return t.offset + dot(t.gradient, x); }

Rational evaluate_piece(const ConvexPiece& p, const Vec& x) {
  Rational best = evaluate_term(p.terms.front(), x);
  for (std::size_t j = 1; j < p.terms.size(); ++j) best = std::max(best, evaluate_term(p.terms[j], x));
  return best;
}

namespace {

void check_point(const MinMaxFunction& f, const Vec& x) {
  if (x.size() != f.dim())
    throw InputError("point has dimension " + std::to_string(x.size()) + ", function has " + std::to_string(f.dim()));
}

}  // namespace

Rational evaluate(const MinMaxFunction& f, const Vec& x) {
  check_point(f, x);
  Rational best = evaluate_piece(f.pieces().front(), x);
  for (std::size_t i = 1; i < f.pieces().size(); ++i) best = std::min(best, evaluate_piece(f.pieces()[i], x));
  return best;
}

Rational evaluate_plus(const MinMaxFunction& f, const Vec& x) {
  const Rational direct = std::max(evaluate(f, x), Rational(0));
#ifndef NDEBUG
  Rational per_piece = std::max(evaluate_piece(f.pieces().front(), x), Rational(0));
  for (std::size_t i = 1; i < f.pieces().size(); ++i)
    per_piece = std::min(per_piece, std::max(evaluate_piece(f.pieces()[i], x), Rational(0)));
  assert(per_piece == direct);
#endif
  return direct;
}

poly::Polyhedron piece_sublevel(const ConvexPiece& p, std::size_t dim, const Rational& level) {
  std::vector<poly::Halfspace> h;
  h.reserve(p.terms.size());
  for (const auto& t : p.terms) h.push_back({t.gradient, level - t.offset});
  return poly::Polyhedron(dim, std::move(h));
}

poly::PolyCone piece_recession(const ConvexPiece& p, std::size_t dim) {
  std::vector<Vec> n;
  n.reserve(p.terms.size());
  for (const auto& t : p.terms) n.push_back(t.gradient);
  return poly::PolyCone(dim, std::move(n));
}

MinMaxFunction recession_function(const MinMaxFunction& f) {
  auto pieces = f.pieces();
  for (auto& p : pieces)
    for (auto& t : p.terms) t.offset = 0;
  return MinMaxFunction(f.dim(), std::move(pieces));
}

std::vector<poly::PolyCone> rec_plus_sublevel(const MinMaxFunction& f) {
  std::vector<poly::PolyCone> out;
  for (const auto& p : f.pieces()) out.push_back(piece_recession(p, f.dim()));
  return out;
}

Rational lipschitz_constant(const MinMaxFunction& f, Norm base) {
  Rational l = 0;
  for (const auto& p : f.pieces())
    for (const auto& t : p.terms) l = std::max(l, norm(t.gradient, dual(base)));
  return l;
}

bool is_homogeneous_representation(const MinMaxFunction& f) {
  for (const auto& p : f.pieces())
    for (const auto& t : p.terms)
      if (t.offset != 0) return false;
  return true;
}

}  // namespace pwaeb::pwa
