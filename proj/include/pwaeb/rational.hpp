#pragma once

#include <boost/multiprecision/gmp.hpp>

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace pwaeb {

/// Exact rational scalar. GMP keeps every value in lowest terms with a
/// positive denominator.
using Rational = boost::multiprecision::mpq_rational;
using Integer = boost::multiprecision::mpz_int;

/// A point or direction in R^d.
using Vec = std::vector<Rational>;

/// Polyhedral norms used throughout; both keep distances LP-exact.
enum class Norm { Linf, L1 };

Norm dual(Norm n);
std::string_view to_string(Norm n);
Norm parse_norm(std::string_view text);

/// "p/q", or "p" when the denominator is one.
std::string to_string(const Rational& r);
std::string to_string(const Vec& v);

/// Accepts "p", "-p", "p/q" (q != 0). Decimal points and exponents are rejected.
Rational parse_rational(std::string_view text);

Rational dot(const Vec& a, const Vec& b);
Vec zeros(std::size_t n);
Vec operator+(const Vec& a, const Vec& b);
Vec operator-(const Vec& a, const Vec& b);
Vec operator*(const Rational& s, const Vec& a);
bool is_zero(const Vec& v);

Rational norm(const Vec& v, Norm n);
Rational abs(const Rational& r);

/// Scales v to the primitive integer vector with the same direction.
/// The zero vector is returned unchanged.
Vec primitive(const Vec& v);

/// Value with possible infinite extent, e.g. an unbounded piece minimum.
class ExtRational {
public:
  enum class Kind { NegInf, Finite, PosInf };

  ExtRational() = default;
  ExtRational(Rational v) : kind_(Kind::Finite), value_(std::move(v)) {}  // NOLINT
  static ExtRational neg_inf() { return ExtRational(Kind::NegInf); }
  static ExtRational pos_inf() { return ExtRational(Kind::PosInf); }

  Kind kind() const { return kind_; }
  bool finite() const { return kind_ == Kind::Finite; }
  const Rational& value() const;

  friend bool operator==(const ExtRational& a, const ExtRational& b);
  friend bool operator<(const ExtRational& a, const ExtRational& b);
  friend bool operator<=(const ExtRational& a, const ExtRational& b) { return !(b < a); }

private:
  explicit ExtRational(Kind k) : kind_(k) {}
  Kind kind_ = Kind::Finite;
  Rational value_{0};
};

std::string to_string(const ExtRational& r);
ExtRational parse_ext_rational(std::string_view text);

}  // namespace pwaeb
