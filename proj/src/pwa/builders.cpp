#include "pwaeb/errors.hpp"
#include "pwaeb/pwa.hpp"

#include <algorithm>

namespace pwaeb::pwa {

namespace {

void same_dim(const MinMaxFunction& f, const MinMaxFunction& g) {
  if (f.dim() != g.dim())
    throw InputError("dimension mismatch: " + std::to_string(f.dim()) + " vs " + std::to_string(g.dim()));
}

void guard(std::size_t n, const char* what) {
  if (n > kMaxBuilderSize)
    throw LimitError(std::string(what) + " would have " + std::to_string(n) + " entries, limit " +
                     std::to_string(kMaxBuilderSize));
}

bool same_term(const AffineTerm& a, const AffineTerm& b) { return a.offset == b.offset && a.gradient == b.gradient; }

void push_unique(ConvexPiece& p, AffineTerm t) {
  if (std::none_of(p.terms.begin(), p.terms.end(), [&](const AffineTerm& s) { return same_term(s, t); }))
    p.terms.push_back(std::move(t));
}

}  // namespace

MinMaxFunction pa_min(const MinMaxFunction& f, const MinMaxFunction& g) {
  same_dim(f, g);
  guard(f.pieces().size() + g.pieces().size(), "pa_min result");
  auto pieces = f.pieces();
  pieces.insert(pieces.end(), g.pieces().begin(), g.pieces().end());
  return MinMaxFunction(f.dim(), std::move(pieces));
}

// max(min_i p_i, min_k q_k) = min_{i,k} max(p_i, q_k)
MinMaxFunction pa_max(const MinMaxFunction& f, const MinMaxFunction& g) {
  same_dim(f, g);
  guard(f.pieces().size() * g.pieces().size(), "pa_max piece list");
  std::vector<ConvexPiece> pieces;
  for (const auto& p : f.pieces())
    for (const auto& q : g.pieces()) {
      guard(p.terms.size() + q.terms.size(), "pa_max piece");
      ConvexPiece r;
      for (const auto& t : p.terms) push_unique(r, t);
      for (const auto& t : q.terms) push_unique(r, t);
      pieces.push_back(std::move(r));
    }
  return MinMaxFunction(f.dim(), std::move(pieces));
}

// min_i p_i + min_k q_k = min_{i,k} (p_i + q_k), and max_j s_j + max_l t_l = max_{j,l} (s_j + t_l).
MinMaxFunction pa_add(const MinMaxFunction& f, const MinMaxFunction& g) {
  same_dim(f, g);
  guard(f.pieces().size() * g.pieces().size(), "pa_add piece list");
  std::vector<ConvexPiece> pieces;
  for (const auto& p : f.pieces())
    for (const auto& q : g.pieces()) {
      guard(p.terms.size() * q.terms.size(), "pa_add piece");
      ConvexPiece r;
      for (const auto& s : p.terms)
        for (const auto& t : q.terms) push_unique(r, {s.offset + t.offset, s.gradient + t.gradient});
      pieces.push_back(std::move(r));
    }
  return MinMaxFunction(f.dim(), std::move(pieces));
}

// For c < 0: c * min_i max_j t_ij = max_i min_j (c t_ij) = min over choices (j_i) of max_i c t_{i j_i}.
MinMaxFunction pa_scale(const Rational& c, const MinMaxFunction& f) {
  if (c >= 0) {
    auto pieces = f.pieces();
    for (auto& p : pieces) {
      ConvexPiece r;
      for (auto& t : p.terms) push_unique(r, {c * t.offset, c * t.gradient});
      p = std::move(r);
    }
    return MinMaxFunction(f.dim(), std::move(pieces));
  }
  std::size_t count = 1;
  for (const auto& p : f.pieces()) {
    count *= p.terms.size();
    guard(count, "pa_scale choice expansion");
  }
  guard(f.pieces().size(), "pa_scale piece");
  std::vector<ConvexPiece> pieces;
  std::vector<std::size_t> choice(f.pieces().size(), 0);
  for (;;) {
    ConvexPiece r;
    for (std::size_t i = 0; i < choice.size(); ++i) {
      const auto& t = f.pieces()[i].terms[choice[i]];
      push_unique(r, {c * t.offset, c * t.gradient});
    }
    pieces.push_back(std::move(r));
    std::size_t i = 0;
    while (i < choice.size() && ++choice[i] == f.pieces()[i].terms.size()) choice[i++] = 0;
    if (i == choice.size()) break;
  }
  return MinMaxFunction(f.dim(), std::move(pieces));
}

MinMaxFunction pa_affine(const Rational& a, const Vec& v) {
  return MinMaxFunction(v.size(), {ConvexPiece{{AffineTerm{a, v}}}});
}

MinMaxFunction pa_constant(std::size_t dim, const Rational& a) { return pa_affine(a, zeros(dim)); }

MinMaxFunction pa_abs(const MinMaxFunction& f) { return pa_max(f, pa_scale(-1, f)); }

MinMaxFunction pa_clamp_plus(const MinMaxFunction& f) { return pa_max(f, pa_constant(f.dim(), 0)); }

}  // namespace pwaeb::pwa
