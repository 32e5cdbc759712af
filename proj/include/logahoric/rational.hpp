#pragma once

// Exact rational scalars. Everything in the library is computed over Q.

#include <gmpxx.h>

#include <cstdint>
#include <random>
#include <string>
#include <string_view>

#include "logahoric/error.hpp"

namespace logahoric {

using Rational = mpq_class;
using Integer = mpz_class;

/// Parses "p/q" or "p" (optional sign, surrounding blanks ignored).
inline Rational parse_rational(std::string_view text) {
  std::string s(text);
  const auto b = s.find_first_not_of(" \t");
  const auto e = s.find_last_not_of(" \t");
  if (b == std::string::npos) throw ParseError("empty rational literal");
  s = s.substr(b, e - b + 1);
  const auto slash = s.find('/');
  auto valid_int = [](const std::string& t) {
    std::size_t i = (!t.empty() && (t[0] == '-' || t[0] == '+')) ? 1 : 0;
    if (i == t.size()) return false;
    for (; i < t.size(); ++i)
      if (t[i] < '0' || t[i] > '9') return false;
    return true;
  };
  auto strip_plus = [](std::string t) { return (!t.empty() && t[0] == '+') ? t.substr(1) : t; };
  if (slash == std::string::npos) {
    if (!valid_int(s)) throw ParseError("malformed rational literal '" + s + "'");
    return Rational(Integer(strip_plus(s)));
  }
  const std::string num = s.substr(0, slash);
  const std::string den = s.substr(slash + 1);
  if (!valid_int(num) || !valid_int(den) || den[0] == '-' || den[0] == '+')
    throw ParseError("malformed rational literal '" + s + "'");
  Integer d(den);
  if (d == 0) throw ParseError("zero denominator in '" + s + "'");
  Rational q(Integer(strip_plus(num)), d);
  q.canonicalize();
  return q;
}

/// "p/q" with q > 1, or "p" for integers.
inline std::string to_string(const Rational& q) { return q.get_str(); }

inline bool is_integer(const Rational& q) { return q.get_den() == 1; }

/// Smallest integer >= q.
inline Integer ceil(const Rational& q) {
  Integer r;
  mpz_cdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return r;
}

/// Largest integer <= q.
inline Integer floor(const Rational& q) {
  Integer r;
  mpz_fdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return r;
}

inline long to_long(const Integer& z) {
  if (!z.fits_slong_p()) throw ShapeError("integer out of machine range");
  return z.get_si();
}

inline int sign(const Rational& q) { return sgn(q); }

/// Uniform small rational num/den with |num| <= max_num, 1 <= den <= max_den.
template <class Rng>
Rational random_rational(Rng& rng, long max_num = 5, long max_den = 4) {
  std::uniform_int_distribution<long> n(-max_num, max_num);
  std::uniform_int_distribution<long> d(1, max_den);
  Rational q(n(rng), d(rng));
  q.canonicalize();
  return q;
}

}  // namespace logahoric
