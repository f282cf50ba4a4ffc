#include "hypsurf/rational.hpp"

#include <cmath>
#include <stdexcept>

namespace hypsurf {

namespace {

bool is_integer_literal(std::string_view s) {
  if (s.empty()) return false;
  size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
  if (i == s.size()) return false;
  for (; i < s.size(); ++i)
    if (s[i] < '0' || s[i] > '9') return false;
  return true;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r'))
    s.remove_suffix(1);
  return s;
}

mpz_class parse_integer(std::string_view s) {
  if (!s.empty() && s[0] == '+') s.remove_prefix(1);
  return mpz_class(std::string(s), 10);
}

}  // namespace

Scalar parse_scalar(std::string_view text) {
  auto s = trim(text);
  if (s.empty()) throw std::invalid_argument("empty number");

  if (auto slash = s.find('/'); slash != std::string_view::npos) {
    auto num = trim(s.substr(0, slash));
    auto den = trim(s.substr(slash + 1));
    if (!is_integer_literal(num) || !is_integer_literal(den))
      throw std::invalid_argument("malformed rational: " + std::string(s));
    mpz_class d = parse_integer(den);
    if (d == 0) throw std::invalid_argument("zero denominator: " + std::string(s));
    Rational q(parse_integer(num), d);
    q.canonicalize();
    return q;
  }

  if (is_integer_literal(s)) return Rational(parse_integer(s));

  if (s.find_first_of("eE") == std::string_view::npos) {
    // Plain decimal: sign, digits, one point, digits.
    auto body = s;
    bool negative = false;
    if (body[0] == '-' || body[0] == '+') {
      negative = body[0] == '-';
      body.remove_prefix(1);
    }
    auto dot = body.find('.');
    if (dot == std::string_view::npos)
      throw std::invalid_argument("malformed number: " + std::string(s));
    auto whole = body.substr(0, dot);
    auto frac = body.substr(dot + 1);
    if (whole.empty() && frac.empty())
      throw std::invalid_argument("malformed number: " + std::string(s));
    for (char ch : whole)
      if (ch < '0' || ch > '9') throw std::invalid_argument("malformed number: " + std::string(s));
    for (char ch : frac)
      if (ch < '0' || ch > '9') throw std::invalid_argument("malformed number: " + std::string(s));
    std::string digits = std::string(whole) + std::string(frac);
    if (digits.empty()) digits = "0";
    mpz_class num(digits, 10);
    mpz_class den;
    mpz_ui_pow_ui(den.get_mpz_t(), 10, frac.size());
    Rational q(negative ? mpz_class(-num) : num, den);
    q.canonicalize();
    return q;
  }

  size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(std::string(s), &used);
  } catch (const std::exception&) {
    throw std::invalid_argument("malformed number: " + std::string(s));
  }
  if (used != s.size() || !std::isfinite(v))
    throw std::invalid_argument("malformed number: " + std::string(s));
  return v;
}

Rational exact_from_double(double v) {
  if (!std::isfinite(v)) throw std::invalid_argument("non-finite value has no exact form");
  return Rational(v);
}

std::string to_string(const Rational& q) {
  if (q.get_den() == 1) return q.get_num().get_str();
  return q.get_str();
}

mpz_class floor_of(const Rational& q) {
  mpz_class r;
  mpz_fdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return r;
}

mpz_class ceil_of(const Rational& q) {
  mpz_class r;
  mpz_cdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return r;
}

}  // namespace hypsurf
