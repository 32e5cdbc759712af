#pragma once

// Random instance generators and independent oracles shared by the suites.
// The oracles deliberately avoid the library code paths they check.

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <random>
#include <vector>

#include "logahoric/higgs.hpp"
#include "logahoric/matrix.hpp"
#include "logahoric/parahoric.hpp"
#include "logahoric/poly.hpp"

namespace testing_support {

using namespace logahoric;
using Rng = std::mt19937_64;

inline long uniform(Rng& rng, long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng); }

/// a/b in canonical form; gmp arithmetic requires canonical operands.
inline Rational frac(long a, long b) {
  Rational q(a, b);
  q.canonicalize();
  return q;
}

inline Rational rq(Rng& rng, long num = 5, long den = 4) { return random_rational(rng, num, den); }

inline Matrix random_matrix(Rng& rng, std::size_t n, long num = 5, long den = 3) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m(i, j) = rq(rng, num, den);
  return m;
}

inline Matrix random_traceless(Rng& rng, std::size_t n) {
  Matrix m = random_matrix(rng, n);
  const Rational t = m.trace();
  m(n - 1, n - 1) -= t;
  return m;
}

/// Unit upper (or lower) triangular with random rational entries.
inline Matrix random_unipotent(Rng& rng, std::size_t n, bool upper = true) {
  Matrix u = Matrix::identity(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (upper ? j > i : j < i) u(i, j) = rq(rng, 3, 2);
  return u;
}

inline Matrix random_diagonal(Rng& rng, std::size_t n) {
  Matrix d(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    Rational v = 0;
    while (v == 0) v = rq(rng, 4, 3);
    d(i, i) = v;
  }
  return d;
}

/// Product of diagonal and unipotent factors: always invertible.
inline Matrix random_invertible(Rng& rng, std::size_t n) {
  return random_diagonal(rng, n) * random_unipotent(rng, n, true) * random_unipotent(rng, n, false);
}

inline Matrix random_nilpotent(Rng& rng, std::size_t n) {
  Matrix nmat(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) nmat(i, j) = rq(rng);
  const Matrix g = random_invertible(rng, n);
  return g * nmat * *inverse(g);
}

inline std::vector<Rational> distinct_points(Rng& rng, std::size_t s) {
  std::vector<Rational> pts;
  while (pts.size() < s) {
    const Rational x = rq(rng, 6, 3);
    if (std::find(pts.begin(), pts.end(), x) == pts.end()) pts.push_back(x);
  }
  return pts;
}

/// Random field with residues summing to zero (regular at infinity).
inline LogHiggsField random_regular_field(Rng& rng, std::size_t n, std::size_t s, GroupForm form = GroupForm::SL) {
  std::vector<Matrix> res;
  Matrix sum(n, n);
  for (std::size_t j = 0; j + 1 < s; ++j) {
    res.push_back(form == GroupForm::SL ? random_traceless(rng, n) : random_matrix(rng, n));
    sum += res.back();
  }
  res.push_back(-sum);
  return build_field(distinct_points(rng, s), std::move(res), GroupTag{'A', static_cast<int>(n) - 1, form});
}

inline LogHiggsField random_field(Rng& rng, std::size_t n, std::size_t s, GroupForm form = GroupForm::SL) {
  std::vector<Matrix> res;
  for (std::size_t j = 0; j < s; ++j) res.push_back(form == GroupForm::SL ? random_traceless(rng, n) : random_matrix(rng, n));
  return build_field(distinct_points(rng, s), std::move(res), GroupTag{'A', static_cast<int>(n) - 1, form});
}

// ------------------------------------------------------------------ oracles

/// Determinant by the Leibniz permutation expansion.
template <class T>
T leibniz_det(const BasicMatrix<T>& m) {
  const std::size_t n = m.rows();
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  T total(0);
  do {
    int inversions = 0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j)
        if (perm[i] > perm[j]) ++inversions;
    T term(1);
    for (std::size_t i = 0; i < n; ++i) term = term * m(i, perm[i]);
    if (inversions % 2) total = total - term; else total = total + term;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return total;
}

/// A(z) = P(z) L(z) recovered entrywise by Lagrange interpolation of
/// numerical evaluations at s + 1 nodes away from the poles.
inline BasicMatrix<Poly> lax_by_interpolation(const LogHiggsField& f) {
  const std::size_t n = f.matrix_size(), s = f.num_points();
  std::vector<Rational> nodes;
  for (long k = 0; nodes.size() < s + 1; ++k) {
    const Rational z = frac(k * 7 + 3, 2);
    if (std::find(f.points.begin(), f.points.end(), z) == f.points.end()) nodes.push_back(z);
  }
  std::vector<Matrix> values;
  for (const auto& z : nodes) {
    Rational p = 1;
    for (const auto& x : f.points) p *= z - x;
    Matrix v(n, n);
    for (std::size_t j = 0; j < s; ++j) {
      Matrix t = f.residues[j];
      t *= Rational(p / (z - f.points[j]));
      v += t;
    }
    values.push_back(v);
  }
  BasicMatrix<Poly> out(n, n);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      Poly acc;
      for (std::size_t i = 0; i < nodes.size(); ++i) {
        Poly basis(std::vector<Rational>{values[i](a, b)});
        for (std::size_t k = 0; k < nodes.size(); ++k)
          if (k != i) basis = basis * Poly(std::vector<Rational>{-nodes[k], 1}) * Poly(std::vector<Rational>{1 / (nodes[i] - nodes[k])});
        acc = acc + basis;
      }
      out(a, b) = acc;
    }
  return out;
}

/// Determinant of A(z) via Leibniz over polynomial entries.
inline Poly det_oracle(const LogHiggsField& f) { return leibniz_det(lax_by_interpolation(f)); }

/// Sum over the principal k x k minors (the elementary symmetric function
/// e_k of the eigenvalues), by Leibniz on each minor.
inline Rational principal_minor_sum(const Matrix& x, std::size_t k) {
  const std::size_t n = x.rows();
  if (k == 0) return 1;
  Rational total = 0;
  for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
    if (static_cast<std::size_t>(__builtin_popcount(mask)) != k) continue;
    std::vector<std::size_t> idx;
    for (std::size_t i = 0; i < n; ++i)
      if (mask & (1u << i)) idx.push_back(i);
    Matrix minor(k, k);
    for (std::size_t a = 0; a < k; ++a)
      for (std::size_t b = 0; b < k; ++b) minor(a, b) = x(idx[a], idx[b]);
    total += leibniz_det(minor);
  }
  return total;
}

/// Brute-force rank-2 oracle: every line subbundle of O(a1)+O(a2) given by
/// integer section pairs with small coefficients. Returns the largest
/// parahoric degree found, and the worst verdict against `total`.
struct BruteForceRank2 {
  Rational best;
  Verdict verdict = Verdict::StablePass;
  std::size_t subbundles = 0;
};

inline BruteForceRank2 rank2_brute_force(long a1, long a2, const std::vector<FlagPoint>& pts, long min_degree,
                                         long coeff_bound = 1) {
  BruteForceRank2 out;
  bool have = false;
  ReductionDatum total;
  total.degree = a1 + a2;
  total.rank = 2;
  for (const auto& p : pts) total.weight_pairings.push_back(p.weight_on_flag + p.weight_off_flag);
  const long top = std::max(a1, a2);
  for (long a = top; a >= min_degree; --a) {
    const long d1 = a1 - a, d2 = a2 - a;
    const std::size_t k1 = static_cast<std::size_t>(std::max(d1 + 1, 0l));
    const std::size_t k2 = static_cast<std::size_t>(std::max(d2 + 1, 0l));
    const std::size_t unknowns = k1 + k2;
    const long base = 2 * coeff_bound + 1;
    long count = 1;
    for (std::size_t i = 0; i < unknowns; ++i) count *= base;
    for (long code = 0; code < count; ++code) {
      std::vector<Rational> c1(k1), c2(k2);
      long t = code;
      for (std::size_t i = 0; i < k1; ++i, t /= base) c1[i] = t % base - coeff_bound;
      for (std::size_t i = 0; i < k2; ++i, t /= base) c2[i] = t % base - coeff_bound;
      const Poly s1(c1), s2(c2);
      if (s1.is_zero() && s2.is_zero()) continue;
      // saturated: no common zero on P^1, infinity included
      if (gcd(s1, s2).degree() > 0) continue;
      if (s1.degree() < d1 && s2.degree() < d2) continue;
      if (s1.is_zero() && d2 > 0 && s2.degree() < d2) continue;
      if (s2.is_zero() && d1 > 0 && s1.degree() < d1) continue;
      ReductionDatum sub;
      sub.degree = a;
      sub.rank = 1;
      for (const auto& p : pts) {
        const bool through = p.u2 * s1(p.x) - p.u1 * s2(p.x) == 0;
        sub.weight_pairings.push_back(through ? p.weight_on_flag : p.weight_off_flag);
      }
      ++out.subbundles;
      const Rational pd = parahoric_degree(sub);
      if (!have || pd > out.best) out.best = pd;
      have = true;
      out.verdict = worst(out.verdict, slope_test(sub, total));
    }
  }
  return out;
}

}  // namespace testing_support
