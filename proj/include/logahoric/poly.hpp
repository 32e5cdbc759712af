#pragma once

// Dense univariate polynomials over Q.

#include <algorithm>
#include <ostream>
#include <span>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "logahoric/rational.hpp"

namespace logahoric {

class Poly {
 public:
  Poly() = default;
  Poly(const Rational& c) : coeffs_{c} { trim(); }  // NOLINT: implicit constant
  Poly(long c) : Poly(Rational(c)) {}                  // NOLINT
  explicit Poly(std::vector<Rational> ascending) : coeffs_(std::move(ascending)) { trim(); }

  static Poly x() { return Poly(std::vector<Rational>{0, 1}); }
  /// z - a
  static Poly linear_root(const Rational& a) { return Poly(std::vector<Rational>{-a, 1}); }
  static Poly monomial(const Rational& c, std::size_t k) {
    std::vector<Rational> v(k + 1);
    v[k] = c;
    return Poly(std::move(v));
  }

  /// -1 for the zero polynomial.
  long degree() const { return static_cast<long>(coeffs_.size()) - 1; }
  bool is_zero() const { return coeffs_.empty(); }
  const std::vector<Rational>& coeffs() const { return coeffs_; }

  Rational coeff(std::size_t k) const { return k < coeffs_.size() ? coeffs_[k] : Rational(0); }
  Rational leading() const { return coeffs_.empty() ? Rational(0) : coeffs_.back(); }

  Rational operator()(const Rational& z) const {
    Rational acc = 0;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * z + *it;
    return acc;
  }

  Poly derivative() const {
    if (coeffs_.size() <= 1) return {};
    std::vector<Rational> d(coeffs_.size() - 1);
    for (std::size_t k = 1; k < coeffs_.size(); ++k) d[k - 1] = coeffs_[k] * static_cast<long>(k);
    return Poly(std::move(d));
  }

  Poly& operator+=(const Poly& o) {
    if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size());
    for (std::size_t k = 0; k < o.coeffs_.size(); ++k) coeffs_[k] += o.coeffs_[k];
    trim();
    return *this;
  }
  Poly& operator-=(const Poly& o) {
    if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size());
    for (std::size_t k = 0; k < o.coeffs_.size(); ++k) coeffs_[k] -= o.coeffs_[k];
    trim();
    return *this;
  }
  Poly& operator*=(const Poly& o) { return *this = *this * o; }
  Poly& operator*=(const Rational& c) {
    for (auto& a : coeffs_) a *= c;
    trim();
    return *this;
  }
  Poly& operator/=(const Rational& c) {
    if (c == 0) throw ShapeError("polynomial division by zero scalar");
    for (auto& a : coeffs_) a /= c;
    return *this;
  }

  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  friend Poly operator-(Poly a) {
    for (auto& c : a.coeffs_) c = -c;
    return a;
  }
  friend Poly operator*(const Poly& a, const Poly& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<Rational> r(a.coeffs_.size() + b.coeffs_.size() - 1);
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
      if (a.coeffs_[i] == 0) continue;
      for (std::size_t j = 0; j < b.coeffs_.size(); ++j) r[i + j] += a.coeffs_[i] * b.coeffs_[j];
    }
    return Poly(std::move(r));
  }
  friend Poly operator*(Poly a, const Rational& c) { return a *= c; }
  friend Poly operator*(const Rational& c, Poly a) { return a *= c; }
  friend Poly operator/(Poly a, const Rational& c) { return a /= c; }

  friend bool operator==(const Poly& a, const Poly& b) { return a.coeffs_ == b.coeffs_; }
  friend bool operator!=(const Poly& a, const Poly& b) { return !(a == b); }

  Poly pow(unsigned e) const {
    Poly r(1), b = *this;
    while (e) {
      if (e & 1u) r *= b;
      b *= b;
      e >>= 1u;
    }
    return r;
  }

  /// Euclidean division: *this = q * d + r with deg r < deg d.
  std::pair<Poly, Poly> divmod(const Poly& d) const {
    if (d.is_zero()) throw ShapeError("polynomial division by zero");
    std::vector<Rational> rem = coeffs_;
    const long dd = d.degree();
    if (degree() < dd) return {Poly(), *this};
    std::vector<Rational> q(static_cast<std::size_t>(degree() - dd + 1));
    const Rational lead = d.leading();
    for (long k = degree(); k >= dd; --k) {
      const Rational c = rem[static_cast<std::size_t>(k)] / lead;
      q[static_cast<std::size_t>(k - dd)] = c;
      if (c == 0) continue;
      for (long i = 0; i <= dd; ++i) rem[static_cast<std::size_t>(k - dd + i)] -= c * d.coeffs_[static_cast<std::size_t>(i)];
    }
    rem.resize(static_cast<std::size_t>(dd));
    return {Poly(std::move(q)), Poly(std::move(rem))};
  }

  Poly monic() const {
    if (is_zero()) return {};
    return *this / leading();
  }

  std::string str(const char* var = "z") const {
    if (is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (long k = degree(); k >= 0; --k) {
      const Rational& c = coeffs_[static_cast<std::size_t>(k)];
      if (c == 0) continue;
      Rational a = abs(c);
      if (!first) os << (c < 0 ? " - " : " + ");
      else if (c < 0) os << '-';
      first = false;
      const bool unit = (a == 1 && k > 0);
      if (!unit) os << to_string(a);
      if (k > 0) {
        if (!unit) os << '*';
        os << var;
        if (k > 1) os << '^' << k;
      }
    }
    return os.str();
  }

  friend std::ostream& operator<<(std::ostream& os, const Poly& p) { return os << p.str(); }

 private:
  void trim() {
    while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
  }

  std::vector<Rational> coeffs_;
};

/// Monic gcd; gcd(0,0) = 0.
inline Poly gcd(Poly a, Poly b) {
  while (!b.is_zero()) {
    auto r = a.divmod(b).second;
    a = std::move(b);
    b = std::move(r);
  }
  return a.monic();
}

/// True iff p has no repeated factor (p != 0).
inline bool is_squarefree(const Poly& p) {
  if (p.is_zero()) return false;
  return gcd(p, p.derivative()).degree() == 0;
}

/// Unique polynomial of degree < nodes.size() through (nodes[i], values[i]).
inline Poly interpolate(std::span<const Rational> nodes, std::span<const Rational> values) {
  if (nodes.size() != values.size()) throw ShapeError("interpolation: node/value count mismatch");
  // Newton divided differences.
  const std::size_t m = nodes.size();
  std::vector<Rational> dd(values.begin(), values.end());
  for (std::size_t j = 1; j < m; ++j)
    for (std::size_t i = m - 1; i >= j; --i) {
      const Rational den = nodes[i] - nodes[i - j];
      if (den == 0) throw ShapeError("interpolation: repeated node");
      dd[i] = (dd[i] - dd[i - 1]) / den;
    }
  Poly result;
  for (std::size_t k = m; k-- > 0;) result = result * Poly::linear_root(nodes[k]) + Poly(dd[k]);
  return result;
}

}  // namespace logahoric
