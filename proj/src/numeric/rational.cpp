#include "pwaeb/rational.hpp"

#include "pwaeb/errors.hpp"

#include <algorithm>
#include <cctype>

namespace pwaeb {

Norm dual(Norm n) { return n == Norm::Linf ? Norm::L1 : Norm::Linf; }

std::string_view to_string(Norm n) { return n == Norm::Linf ? "linf" : "l1"; }

Norm parse_norm(std::string_view text) {
  if (text == "linf") return Norm::Linf;
  if (text == "l1") return Norm::L1;
  throw InputError("unknown norm '" + std::string(text) + "' (expected linf or l1)");
}

std::string to_string(const Rational& r) {
  // mpq_rational streams as "p/q" or "p" already; go through str() to avoid locale.
  return r.str();
}

std::string to_string(const Vec& v) {
  std::string out = "(";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ", ";
    out += to_string(v[i]);
  }
  return out + ")";
}

namespace {

bool valid_integer(std::string_view s, bool allow_sign) {
  if (s.empty()) return false;
  std::size_t i = 0;
  if (allow_sign && (s[0] == '-' || s[0] == '+')) i = 1;
  if (i == s.size()) return false;
  return std::all_of(s.begin() + static_cast<std::ptrdiff_t>(i), s.end(),
                     [](char c) { return std::isdigit(static_cast<unsigned char>(c)) != 0; });
}

}  // namespace

Rational parse_rational(std::string_view text) {
  auto slash = text.find('/');
  std::string_view num = text.substr(0, slash);
  std::string_view den = slash == std::string_view::npos ? std::string_view("1") : text.substr(slash + 1);
  if (!valid_integer(num, true) || !valid_integer(den, false))
    throw InputError("not a rational: '" + std::string(text) + "' (expected p or p/q)");
  std::string n(num);
  if (n[0] == '+') n.erase(0, 1);
  const Integer q{std::string(den)};
  if (q == 0) throw InputError("zero denominator in '" + std::string(text) + "'");
  return Rational(Integer(n), q);
}

Rational dot(const Vec& a, const Vec& b) {
  Rational s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

Vec zeros(std::size_t n) { return Vec(n, Rational(0)); }

Vec operator+(const Vec& a, const Vec& b) {
  Vec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
  return r;
}

Vec operator-(const Vec& a, const Vec& b) {
  Vec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
  return r;
}

Vec operator*(const Rational& s, const Vec& a) {
  Vec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = s * a[i];
  return r;
}

bool is_zero(const Vec& v) {
  return std::all_of(v.begin(), v.end(), [](const Rational& x) { return x == 0; });
}

Rational abs(const Rational& r) { return r < 0 ? Rational(-r) : r; }

Rational norm(const Vec& v, Norm n) {
  Rational out = 0;
  for (const auto& x : v) {
    if (n == Norm::L1)
      out += abs(x);
    else
      out = std::max(out, abs(x));
  }
  return out;
}

Vec primitive(const Vec& v) {
  if (is_zero(v)) return v;
  Integer l = 1;
  for (const auto& x : v) l = boost::multiprecision::lcm(l, Integer(boost::multiprecision::denominator(x)));
  std::vector<Integer> ints;
  ints.reserve(v.size());
  Integer g = 0;
  for (const auto& x : v) {
    Integer k = Integer(boost::multiprecision::numerator(x)) * (l / Integer(boost::multiprecision::denominator(x)));
    g = boost::multiprecision::gcd(g, k);
    ints.push_back(std::move(k));
  }
  Vec out;
  out.reserve(v.size());
  for (auto& k : ints) out.emplace_back(Rational(k / g));
  return out;
}

const Rational& ExtRational::value() const {
  if (kind_ != Kind::Finite) throw DomainError("value() of an infinite quantity");
  return value_;
}

bool operator==(const ExtRational& a, const ExtRational& b) {
  if (a.kind_ != b.kind_) return false;
  return a.kind_ != ExtRational::Kind::Finite || a.value_ == b.value_;
}

bool operator<(const ExtRational& a, const ExtRational& b) {
  if (a.kind_ != b.kind_) return static_cast<int>(a.kind_) < static_cast<int>(b.kind_);
  return a.kind_ == ExtRational::Kind::Finite && a.value_ < b.value_;
}

std::string to_string(const ExtRational& r) {
  switch (r.kind()) {
    case ExtRational::Kind::NegInf: return "-inf";
    case ExtRational::Kind::PosInf: return "+inf";
    case ExtRational::Kind::Finite: break;
  }
  return to_string(r.value());
}

ExtRational parse_ext_rational(std::string_view text) {
  if (text == "-inf") return ExtRational::neg_inf();
  if (text == "+inf" || text == "inf") return ExtRational::pos_inf();
  return parse_rational(text);
}

}  // namespace pwaeb
