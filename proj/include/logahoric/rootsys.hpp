#pragma once

// Irreducible root data (types A, B, C, D, G2) built from Cartan matrices.
//
// Roots are stored in the simple-root basis, cocharacters in the simple-coroot
// basis, and every pairing goes through the Cartan matrix
// A[i][j] = <alpha_i^vee, alpha_j>.

#include <algorithm>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "logahoric/matrix.hpp"
#include "logahoric/rational.hpp"

namespace logahoric {

using RootVector = std::vector<long>;

class RootSystem {
 public:
  char family() const { return family_; }
  int rank() const { return rank_; }
  std::string label() const { return std::string(1, family_) + std::to_string(rank_); }

  const std::vector<RootVector>& roots() const { return roots_; }
  const std::vector<std::vector<long>>& cartan_matrix() const { return cartan_; }
  const std::vector<int>& invariant_degrees() const { return degrees_; }
  bool is_positive(std::size_t i) const { return positive_[i]; }
  std::size_t num_positive() const { return roots_.size() / 2; }

  /// Indices of the simple roots inside roots().
  std::vector<std::size_t> simple_roots() const {
    std::vector<std::size_t> s;
    for (int k = 0; k < rank_; ++k) {
      RootVector e(static_cast<std::size_t>(rank_), 0);
      e[static_cast<std::size_t>(k)] = 1;
      s.push_back(index_of(e));
    }
    return s;
  }

  std::size_t index_of(const RootVector& r) const {
    auto it = index_.find(r);
    if (it == index_.end()) throw ShapeError("not a root of " + label());
    return it->second;
  }
  bool contains(const RootVector& r) const { return index_.count(r) != 0; }
  std::size_t negative_of(std::size_t i) const { return negation_[i]; }

  static long height(const RootVector& r) {
    long h = 0;
    for (long c : r) h += c;
    return h;
  }

  friend RootSystem build_root_system(char family, int rank);

 private:
  char family_ = 'A';
  int rank_ = 0;
  std::vector<std::vector<long>> cartan_;
  std::vector<RootVector> roots_;
  std::vector<bool> positive_;
  std::vector<std::size_t> negation_;
  std::vector<int> degrees_;
  std::map<RootVector, std::size_t> index_;
};

namespace detail {

inline std::vector<std::vector<long>> cartan_for(char family, int n) {
  std::vector<std::vector<long>> a(static_cast<std::size_t>(n), std::vector<long>(static_cast<std::size_t>(n), 0));
  auto at = [&](int i, int j) -> long& { return a[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]; };
  for (int i = 0; i < n; ++i) at(i, i) = 2;
  if (family == 'G') {
    // alpha_1 short
    at(0, 1) = -3;
    at(1, 0) = -1;
    return a;
  }
  const int chain = (family == 'D') ? n - 1 : n;
  for (int i = 0; i + 1 < chain; ++i) at(i, i + 1) = at(i + 1, i) = -1;
  switch (family) {
    case 'B':  // alpha_n short
      at(n - 1, n - 2) = -2;
      break;
    case 'C':  // alpha_n long
      at(n - 2, n - 1) = -2;
      break;
    case 'D':  // fork: alpha_n attached to alpha_{n-2}
      at(n - 1, n - 3) = at(n - 3, n - 1) = -1;
      break;
    default:
      break;
  }
  return a;
}

inline std::vector<int> degrees_for(char family, int n) {
  std::vector<int> d;
  switch (family) {
    case 'A':
      for (int k = 2; k <= n + 1; ++k) d.push_back(k);
      break;
    case 'B':
    case 'C':
      for (int k = 1; k <= n; ++k) d.push_back(2 * k);
      break;
    case 'D':
      for (int k = 1; k < n; ++k) d.push_back(2 * k);
      d.push_back(n);
      std::sort(d.begin(), d.end());
      break;
    case 'G':
      d = {2, 6};
      break;
  }
  return d;
}

}  // namespace detail

/// Full root datum for an irreducible type. Roots are enumerated as the
/// positive roots ordered by height then lexicographically, followed by their
/// negatives in the same order.
inline RootSystem build_root_system(char family, int rank) {
  const bool ok = rank >= 1 && ((family == 'A') || (family == 'B' && rank >= 2) || (family == 'C' && rank >= 2) ||
                                (family == 'D' && rank >= 3) || (family == 'G' && rank == 2));
  if (!ok) throw UnsupportedType("unsupported root system type " + std::string(1, family) + std::to_string(rank));

  RootSystem rs;
  rs.family_ = family;
  rs.rank_ = rank;
  rs.cartan_ = detail::cartan_for(family, rank);
  rs.degrees_ = detail::degrees_for(family, rank);
  const auto n = static_cast<std::size_t>(rank);

  // Positive roots by alpha-string closure: beta + alpha_i is a root iff
  // q > 0 where q = p - <alpha_i^vee, beta> and p is the length of the
  // downward alpha_i-string through beta.
  std::set<RootVector> positive;
  std::vector<RootVector> layer;
  for (std::size_t i = 0; i < n; ++i) {
    RootVector e(n, 0);
    e[i] = 1;
    positive.insert(e);
    layer.push_back(e);
  }
  while (!layer.empty()) {
    std::vector<RootVector> next;
    for (const auto& beta : layer) {
      for (std::size_t i = 0; i < n; ++i) {
        long p = 0;
        RootVector down = beta;
        while (true) {
          down[i] -= 1;
          if (!positive.count(down)) break;
          ++p;
        }
        long pairing = 0;
        for (std::size_t j = 0; j < n; ++j) pairing += rs.cartan_[i][j] * beta[j];
        if (p - pairing > 0) {
          RootVector up = beta;
          up[i] += 1;
          if (positive.insert(up).second) next.push_back(up);
        }
      }
    }
    layer = std::move(next);
  }

  std::vector<RootVector> pos(positive.begin(), positive.end());
  std::sort(pos.begin(), pos.end(), [](const RootVector& a, const RootVector& b) {
    const long ha = RootSystem::height(a), hb = RootSystem::height(b);
    return ha != hb ? ha < hb : a < b;
  });
  for (const auto& r : pos) {
    rs.roots_.push_back(r);
    rs.positive_.push_back(true);
  }
  for (const auto& r : pos) {
    RootVector m = r;
    for (auto& c : m) c = -c;
    rs.roots_.push_back(m);
    rs.positive_.push_back(false);
  }
  const std::size_t np = pos.size();
  rs.negation_.resize(2 * np);
  for (std::size_t i = 0; i < np; ++i) {
    rs.negation_[i] = i + np;
    rs.negation_[i + np] = i;
  }
  for (std::size_t i = 0; i < rs.roots_.size(); ++i) rs.index_[rs.roots_[i]] = i;
  return rs;
}

/// A rational cocharacter, in simple-coroot coordinates.
struct RationalCocharacter {
  std::vector<Rational> coeffs;

  bool is_zero() const {
    return std::all_of(coeffs.begin(), coeffs.end(), [](const Rational& c) { return c == 0; });
  }
  friend RationalCocharacter operator+(const RationalCocharacter& a, const RationalCocharacter& b) {
    if (a.coeffs.size() != b.coeffs.size()) throw ShapeError("cocharacter dimension mismatch");
    RationalCocharacter r{a.coeffs};
    for (std::size_t i = 0; i < b.coeffs.size(); ++i) r.coeffs[i] += b.coeffs[i];
    return r;
  }
};

/// r(theta) = sum_{i,j} theta_i A[i][j] r_j.
inline Rational pair(const RootSystem& rs, const RationalCocharacter& theta, const RootVector& r) {
  const auto n = static_cast<std::size_t>(rs.rank());
  if (theta.coeffs.size() != n || r.size() != n) throw ShapeError("pairing: dimension mismatch with " + rs.label());
  Rational acc = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (theta.coeffs[i] == 0) continue;
    long row = 0;
    for (std::size_t j = 0; j < n; ++j) row += rs.cartan_matrix()[i][j] * r[j];
    acc += theta.coeffs[i] * row;
  }
  return acc;
}

/// tr(XY): the invariant form of the type-A fundamental representation.
inline Rational trace_form(const Matrix& x, const Matrix& y) {
  if (!x.square() || x.rows() != y.rows() || y.rows() != y.cols()) throw ShapeError("trace_form: size mismatch");
  Rational t = 0;
  for (std::size_t i = 0; i < x.rows(); ++i)
    for (std::size_t k = 0; k < x.cols(); ++k) t += x(i, k) * y(k, i);
  return t;
}

enum class GroupForm { SL, GL };

inline const char* to_string(GroupForm f) { return f == GroupForm::SL ? "SL" : "GL"; }

/// Root system plus the choice of matrix realization for type A.
struct GroupTag {
  char family = 'A';
  int rank = 1;
  GroupForm form = GroupForm::SL;

  bool type_a() const { return family == 'A'; }
  /// Size of the fundamental representation in type A.
  std::size_t matrix_size() const {
    if (!type_a()) throw UnsupportedRealization("matrix realization is only available in type A");
    return static_cast<std::size_t>(rank) + 1;
  }
  /// Degrees of the basic invariants used by the Hitchin map; GL adds the trace.
  std::vector<int> invariant_degrees() const {
    std::vector<int> d = detail::degrees_for(family, rank);
    if (form == GroupForm::GL) d.insert(d.begin(), 1);
    return d;
  }
};

// Type-A fundamental realization: simple root alpha_k = e_k - e_{k+1}.

/// Matrix unit position (i, j) of the root e_i - e_j in type A.
inline std::pair<std::size_t, std::size_t> type_a_entry(const RootVector& r) {
  // Roots of A_n are contiguous blocks of +1 or -1.
  std::size_t first = r.size(), last = 0;
  long sgn = 0;
  for (std::size_t k = 0; k < r.size(); ++k)
    if (r[k] != 0) {
      if (first == r.size()) first = k;
      last = k;
      sgn = r[k];
    }
  if (sgn == 0) throw ShapeError("zero vector is not a root");
  return sgn > 0 ? std::pair{first, last + 1} : std::pair{last + 1, first};
}

/// Root e_i - e_j (i != j) in simple-root coordinates of A_{n-1}.
inline RootVector type_a_root(std::size_t n, std::size_t i, std::size_t j) {
  RootVector r(n - 1, 0);
  const std::size_t lo = std::min(i, j), hi = std::max(i, j);
  const long s = i < j ? 1 : -1;
  for (std::size_t k = lo; k < hi; ++k) r[k] = s;
  return r;
}

/// Diagonal entries d_1..d_n of theta in the fundamental realization
/// (d_i = c_i - c_{i-1}).
inline std::vector<Rational> type_a_diagonal(const RationalCocharacter& theta) {
  const std::size_t n = theta.coeffs.size() + 1;
  std::vector<Rational> d(n, Rational(0));
  for (std::size_t i = 0; i < n; ++i) {
    if (i < theta.coeffs.size()) d[i] += theta.coeffs[i];
    if (i > 0) d[i] -= theta.coeffs[i - 1];
  }
  return d;
}

}  // namespace logahoric
