#include "micrep/rational.hpp"

#include "micrep/error.hpp"

#include <cctype>

namespace micrep {

Rational ceil(const Rational& value) {
  Integer result;
  mpz_cdiv_q(result.get_mpz_t(), value.get_num_mpz_t(), value.get_den_mpz_t());
  return Rational(result);
}

Rational floor(const Rational& value) {
  Integer result;
  mpz_fdiv_q(result.get_mpz_t(), value.get_num_mpz_t(), value.get_den_mpz_t());
  return Rational(result);
}

bool is_integer(const Rational& value) { return value.get_den() == 1; }

Rational parse_rational(std::string_view text) {
  std::size_t pos = 0;
  auto digits = [&](std::size_t start) {
    std::size_t end = start;
    while (end < text.size() && std::isdigit(static_cast<unsigned char>(text[end]))) {
      ++end;
    }
    if (end == start) {
      throw ParseError("expected digits in rational literal '" + std::string(text) + "'",
                       start);
    }
    return end;
  };
  bool negative = false;
  if (pos < text.size() && text[pos] == '-') {
    negative = true;
    ++pos;
  }
  std::size_t num_end = digits(pos);
  Integer numerator(std::string(text.substr(pos, num_end - pos)));
  Integer denominator(1);
  pos = num_end;
  if (pos < text.size() && text[pos] == '/') {
    std::size_t den_end = digits(pos + 1);
    denominator = Integer(std::string(text.substr(pos + 1, den_end - pos - 1)));
    if (denominator == 0) {
      throw ParseError("zero denominator in '" + std::string(text) + "'", pos + 1);
    }
    pos = den_end;
  }
  if (pos != text.size()) {
    throw ParseError("trailing characters in rational literal '" + std::string(text) + "'",
                     pos);
  }
  Rational result(numerator, denominator);
  result.canonicalize();
  if (negative) result = -result;
  return result;
}

std::string to_string(const Rational& value) { return value.get_str(); }

Integer common_denominator(const RationalVector& values) {
  Integer result(1);
  for (const Rational& v : values) {
    mpz_lcm(result.get_mpz_t(), result.get_mpz_t(), v.get_den_mpz_t());
  }
  return result;
}

RationalVector clear_denominators(const RationalVector& values) {
  Rational factor(common_denominator(values));
  RationalVector result;
  result.reserve(values.size());
  for (const Rational& v : values) result.emplace_back(v * factor);
  return result;
}

RationalVector primitive_integer_vector(const RationalVector& values) {
  RationalVector result = clear_denominators(values);
  Integer g(0);
  for (const Rational& v : result) {
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), v.get_num_mpz_t());
  }
  if (g == 0 || g == 1) return result;
  Rational divisor(g);
  for (Rational& v : result) v /= divisor;
  return result;
}

bool is_zero(const RationalVector& values) {
  for (const Rational& v : values) {
    if (v != 0) return false;
  }
  return true;
}

}  // namespace micrep
