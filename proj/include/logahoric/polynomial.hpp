#pragma once

// Sparse multivariate polynomials over Q in numbered generators.

#include <cstdint>
#include <functional>
#include <map>
#include <set>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "logahoric/rational.hpp"

namespace logahoric {

/// Sorted (generator, exponent) pairs with positive exponents.
using Monomial = std::vector<std::pair<std::uint32_t, std::uint32_t>>;

class PoissonPolynomial {
 public:
  using Terms = std::map<Monomial, Rational>;

  PoissonPolynomial() = default;
  PoissonPolynomial(const Rational& c) {  // NOLINT: implicit constant
    if (c != 0) terms_.emplace(Monomial{}, c);
  }
  PoissonPolynomial(long c) : PoissonPolynomial(Rational(c)) {}  // NOLINT

  static PoissonPolynomial generator(std::uint32_t v, const Rational& c = 1) {
    PoissonPolynomial p;
    if (c != 0) p.terms_.emplace(Monomial{{v, 1}}, c);
    return p;
  }

  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }

  void add_term(const Monomial& m, const Rational& c) {
    if (c == 0) return;
    auto [it, inserted] = terms_.emplace(m, c);
    if (inserted) return;
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }

  std::set<std::uint32_t> variables() const {
    std::set<std::uint32_t> vs;
    for (const auto& [m, c] : terms_)
      for (const auto& [v, e] : m) vs.insert(v);
    return vs;
  }

  unsigned total_degree() const {
    unsigned d = 0;
    for (const auto& [m, c] : terms_) {
      unsigned t = 0;
      for (const auto& [v, e] : m) t += e;
      d = std::max(d, t);
    }
    return d;
  }

  PoissonPolynomial& operator+=(const PoissonPolynomial& o) {
    for (const auto& [m, c] : o.terms_) add_term(m, c);
    return *this;
  }
  PoissonPolynomial& operator-=(const PoissonPolynomial& o) {
    for (const auto& [m, c] : o.terms_) add_term(m, -c);
    return *this;
  }
  PoissonPolynomial& operator*=(const Rational& c) {
    if (c == 0) {
      terms_.clear();
      return *this;
    }
    for (auto& [m, v] : terms_) v *= c;
    return *this;
  }
  PoissonPolynomial& operator*=(const PoissonPolynomial& o) { return *this = *this * o; }

  friend PoissonPolynomial operator+(PoissonPolynomial a, const PoissonPolynomial& b) { return a += b; }
  friend PoissonPolynomial operator-(PoissonPolynomial a, const PoissonPolynomial& b) { return a -= b; }
  friend PoissonPolynomial operator-(PoissonPolynomial a) {
    for (auto& [m, v] : a.terms_) v = -v;
    return a;
  }
  friend PoissonPolynomial operator*(PoissonPolynomial a, const Rational& c) { return a *= c; }
  friend PoissonPolynomial operator*(const Rational& c, PoissonPolynomial a) { return a *= c; }
  friend PoissonPolynomial operator/(PoissonPolynomial a, const Rational& c) {
    if (c == 0) throw ShapeError("polynomial division by zero scalar");
    return a *= Rational(1 / c);
  }
  friend PoissonPolynomial operator*(const PoissonPolynomial& a, const PoissonPolynomial& b) {
    PoissonPolynomial r;
    for (const auto& [ma, ca] : a.terms_)
      for (const auto& [mb, cb] : b.terms_) r.add_term(multiply(ma, mb), ca * cb);
    return r;
  }
  friend bool operator==(const PoissonPolynomial& a, const PoissonPolynomial& b) { return a.terms_ == b.terms_; }
  friend bool operator!=(const PoissonPolynomial& a, const PoissonPolynomial& b) { return !(a == b); }

  PoissonPolynomial derivative(std::uint32_t v) const {
    PoissonPolynomial r;
    for (const auto& [m, c] : terms_) {
      for (std::size_t k = 0; k < m.size(); ++k) {
        if (m[k].first != v) continue;
        Monomial d = m;
        const std::uint32_t e = d[k].second;
        if (e == 1) d.erase(d.begin() + static_cast<long>(k));
        else d[k].second = e - 1;
        r.add_term(d, c * static_cast<unsigned long>(e));
        break;
      }
    }
    return r;
  }

  /// Coefficient of v^k, as a polynomial free of v.
  PoissonPolynomial coefficient_of(std::uint32_t v, std::uint32_t k) const {
    PoissonPolynomial r;
    for (const auto& [m, c] : terms_) {
      std::uint32_t e = 0;
      Monomial rest;
      for (const auto& t : m) {
        if (t.first == v) e = t.second;
        else rest.push_back(t);
      }
      if (e == k) r.add_term(rest, c);
    }
    return r;
  }

  /// Highest power of v occurring.
  std::uint32_t degree_in(std::uint32_t v) const {
    std::uint32_t d = 0;
    for (const auto& [m, c] : terms_)
      for (const auto& t : m)
        if (t.first == v) d = std::max(d, t.second);
    return d;
  }

  /// Value at a point; values[v] is the value of generator v.
  Rational evaluate(std::span<const Rational> values) const {
    Rational acc = 0;
    for (const auto& [m, c] : terms_) {
      Rational t = c;
      for (const auto& [v, e] : m) {
        if (v >= values.size()) throw ShapeError("evaluation point is missing a generator");
        Rational p;
        mpz_pow_ui(p.get_num_mpz_t(), values[v].get_num_mpz_t(), e);
        mpz_pow_ui(p.get_den_mpz_t(), values[v].get_den_mpz_t(), e);
        t *= p;
      }
      acc += t;
    }
    return acc;
  }

  /// Human-readable form; generators print as g<v> unless a namer is given.
  std::string str(const std::function<std::string(std::uint32_t)>& name = {}) const {
    if (terms_.empty()) return "0";
    std::string s;
    bool first = true;
    for (const auto& [m, c] : terms_) {
      if (!first) s += (c < 0 ? " - " : " + ");
      else if (c < 0) s += "-";
      first = false;
      const Rational a = abs(c);
      const bool unit = (a == 1 && !m.empty());
      if (!unit) s += to_string(a);
      for (std::size_t k = 0; k < m.size(); ++k) {
        if (!unit || k > 0) s += "*";
        s += name ? name(m[k].first) : "g" + std::to_string(m[k].first);
        if (m[k].second > 1) s += "^" + std::to_string(m[k].second);
      }
    }
    return s;
  }

 private:
  static Monomial multiply(const Monomial& a, const Monomial& b) {
    Monomial r;
    r.reserve(a.size() + b.size());
    std::size_t i = 0, j = 0;
    while (i < a.size() || j < b.size()) {
      if (j == b.size() || (i < a.size() && a[i].first < b[j].first)) r.push_back(a[i++]);
      else if (i == a.size() || b[j].first < a[i].first) r.push_back(b[j++]);
      else {
        r.emplace_back(a[i].first, a[i].second + b[j].second);
        ++i;
        ++j;
      }
    }
    return r;
  }

  Terms terms_;
};

}  // namespace logahoric
