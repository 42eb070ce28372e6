#include "mcpoly/rational.hpp"

#include <cctype>
#include <cmath>
#include <functional>
#include <ostream>

#include "mcpoly/errors.hpp"

namespace mcpoly {

namespace {

bool is_integer_literal(std::string_view s) {
  if (s.empty()) return false;
  std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
  if (i == s.size()) return false;
  for (; i < s.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
  }
  return true;
}

mpz_class parse_integer(std::string_view s) {
  if (s.front() == '+') s.remove_prefix(1);
  return mpz_class(std::string(s), 10);
}

}  // namespace

Rational::Rational(long num, long den) {
  if (den == 0) throw DivisionByZero();
  v_ = mpq_class(num, 1);
  v_ /= den;
}

Rational::Rational(const mpz_class& num, const mpz_class& den) {
  if (den == 0) throw DivisionByZero();
  v_ = mpq_class(num, den);
  v_.canonicalize();
}

Rational::Rational(const mpq_class& v) : v_(v) { v_.canonicalize(); }

Rational Rational::parse(std::string_view text) {
  auto trim = [](std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front())))
      s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back())))
      s.remove_suffix(1);
    return s;
  };
  const std::string_view t = trim(text);
  const auto slash = t.find('/');
  if (slash == std::string_view::npos) {
    if (!is_integer_literal(t))
      throw ParseError("not a rational: '" + std::string(text) + "'");
    return Rational(parse_integer(t), mpz_class(1));
  }
  const std::string_view n = t.substr(0, slash);
  const std::string_view d = t.substr(slash + 1);
  if (!is_integer_literal(n) || !is_integer_literal(d) || d.front() == '-')
    throw ParseError("not a rational: '" + std::string(text) + "'");
  return Rational(parse_integer(n), parse_integer(d));
}

Rational Rational::from_double(double value) {
  if (!std::isfinite(value)) throw ParseError("non-finite double");
  return Rational(mpq_class(value));
}

std::string Rational::str() const {
  if (v_.get_den() == 1) return v_.get_num().get_str();
  return v_.get_num().get_str() + "/" + v_.get_den().get_str();
}

Rational& Rational::operator+=(const Rational& o) {
  v_ += o.v_;
  return *this;
}

Rational& Rational::operator-=(const Rational& o) {
  v_ -= o.v_;
  return *this;
}

Rational& Rational::operator*=(const Rational& o) {
  v_ *= o.v_;
  return *this;
}

Rational& Rational::operator/=(const Rational& o) {
  if (o.is_zero()) throw DivisionByZero();
  v_ /= o.v_;
  return *this;
}

std::size_t Rational::hash() const {
  // Canonical form makes the string a faithful key; this is not hot.
  return std::hash<std::string>{}(str());
}

Rational abs(const Rational& r) { return r.sign() < 0 ? -r : r; }

std::size_t ceil_log2(const mpz_class& v) {
  if (v <= 1) return 0;
  mpz_class w = v - 1;
  return mpz_sizeinbase(w.get_mpz_t(), 2);
}

std::size_t bit_size(const Rational& r) {
  if (r.is_zero()) return 1;
  mpz_class n = r.num();
  if (n < 0) n = -n;
  return ceil_log2(n) + ceil_log2(r.den());
}

std::ostream& operator<<(std::ostream& os, const Rational& r) {
  return os << r.str();
}

}  // namespace mcpoly
