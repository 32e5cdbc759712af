#pragma once

// Parahoric filtration data of the loop algebra g((z)) attached to a rational
// weight theta: jump integers m_r(theta) = ceil(-r(theta)), the Levi root
// subsystem, the pro-unipotent grading, and membership / Levi projection of
// loop elements. Also parahoric degrees and slope stability tests.
//
// Channel grading (minimal admissible z-exponent per channel):
//
//   channel       g_theta      g_theta^+                    g_theta^perp
//   torus         0            1                            0
//   root r        m_r          m_r + 1 (Levi) / m_r (else)  -m_{-r}
//
// The Levi factor sits at exponent m_r on each Levi root (and 0 on the
// torus), i.e. Ad(z^{-theta}) applied to the finite Levi algebra.

#include <algorithm>
#include <map>
#include <optional>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "logahoric/matrix.hpp"
#include "logahoric/rational.hpp"
#include "logahoric/rootsys.hpp"

namespace logahoric {

enum class FacetClass { Hyperspecial, Iwahori, ProperParahoric };

inline const char* to_string(FacetClass f) {
  switch (f) {
    case FacetClass::Hyperspecial: return "hyperspecial";
    case FacetClass::Iwahori: return "Iwahori";
    case FacetClass::ProperParahoric: return "proper-parahoric";
  }
  return "?";
}

struct ParahoricDatum {
  RootSystem roots;
  RationalCocharacter theta;
  std::vector<Rational> pairings;  ///< r(theta), indexed like roots.roots()
  std::vector<long> jumps;         ///< m_r(theta)
  std::vector<bool> levi;          ///< r(theta) integral
  std::vector<long> plus_grading;  ///< minimal exponent inside g_theta^+
  FacetClass facet = FacetClass::Hyperspecial;

  std::size_t num_roots() const { return jumps.size(); }

  std::vector<std::size_t> levi_roots() const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < levi.size(); ++i)
      if (levi[i]) out.push_back(i);
    return out;
  }
};

inline ParahoricDatum analyze_weight(const RootSystem& rs, const RationalCocharacter& theta) {
  if (theta.coeffs.size() != static_cast<std::size_t>(rs.rank()))
    throw ShapeError("weight has " + std::to_string(theta.coeffs.size()) + " coordinates, " + rs.label() +
                     " needs " + std::to_string(rs.rank()));
  ParahoricDatum d;
  d.roots = rs;
  d.theta = theta;
  const std::size_t nr = rs.roots().size();
  d.pairings.resize(nr);
  d.jumps.resize(nr);
  d.levi.resize(nr);
  d.plus_grading.resize(nr);
  std::size_t levi_count = 0;
  for (std::size_t i = 0; i < nr; ++i) {
    d.pairings[i] = pair(rs, theta, rs.roots()[i]);
    d.jumps[i] = to_long(ceil(-d.pairings[i]));
    d.levi[i] = is_integer(d.pairings[i]);
    d.plus_grading[i] = d.levi[i] ? d.jumps[i] + 1 : d.jumps[i];
    if (d.levi[i]) ++levi_count;
  }
  d.facet = levi_count == nr ? FacetClass::Hyperspecial
            : levi_count == 0 ? FacetClass::Iwahori
                              : FacetClass::ProperParahoric;
  return d;
}

/// Either a torus coordinate or a root space.
struct Channel {
  bool torus = true;
  std::size_t index = 0;

  static Channel torus_channel(std::size_t k) { return {true, k}; }
  static Channel root_channel(std::size_t r) { return {false, r}; }
  friend auto operator<=>(const Channel&, const Channel&) = default;
};

/// Finite sum of z^k * (channel component) with rational coefficients.
class LoopElement {
 public:
  using Series = std::map<long, Rational>;

  void add(Channel c, long exponent, const Rational& coeff) {
    if (coeff == 0) return;
    auto& s = terms_[c];
    auto& v = s[exponent];
    v += coeff;
    if (v == 0) {
      s.erase(exponent);
      if (s.empty()) terms_.erase(c);
    }
  }
  LoopElement& torus(std::size_t k, long exponent, const Rational& c) {
    add(Channel::torus_channel(k), exponent, c);
    return *this;
  }
  LoopElement& root(std::size_t r, long exponent, const Rational& c) {
    add(Channel::root_channel(r), exponent, c);
    return *this;
  }

  const std::map<Channel, Series>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  friend LoopElement operator-(const LoopElement& a, const LoopElement& b) {
    LoopElement r = a;
    for (const auto& [c, s] : b.terms_)
      for (const auto& [k, v] : s) r.add(c, k, -v);
    return r;
  }
  friend LoopElement operator+(const LoopElement& a, const LoopElement& b) {
    LoopElement r = a;
    for (const auto& [c, s] : b.terms_)
      for (const auto& [k, v] : s) r.add(c, k, v);
    return r;
  }
  friend bool operator==(const LoopElement&, const LoopElement&) = default;

 private:
  std::map<Channel, Series> terms_;
};

enum class Membership { InGThetaPlus, InGTheta, InGThetaPerp, None };

inline const char* to_string(Membership m) {
  switch (m) {
    case Membership::InGThetaPlus: return "in_g_theta_plus";
    case Membership::InGTheta: return "in_g_theta";
    case Membership::InGThetaPerp: return "in_g_theta_perp";
    case Membership::None: return "none";
  }
  return "?";
}

namespace detail {

inline void check_channel(const ParahoricDatum& d, const Channel& c) {
  if (!c.torus && c.index >= d.num_roots()) throw ShapeError("loop element refers to a root outside " + d.roots.label());
}

inline long lowest_exponent(const LoopElement::Series& s) { return s.begin()->first; }

}  // namespace detail

/// Finest filtration level containing every term of x.
inline Membership membership(const LoopElement& x, const ParahoricDatum& d) {
  bool plus = true, base = true, perp = true;
  for (const auto& [c, s] : x.terms()) {
    detail::check_channel(d, c);
    const long k = detail::lowest_exponent(s);
    if (c.torus) {
      plus = plus && k >= 1;
      base = base && k >= 0;
      perp = perp && k >= 0;
    } else {
      plus = plus && k >= d.plus_grading[c.index];
      base = base && k >= d.jumps[c.index];
      perp = perp && k >= -d.jumps[d.roots.negative_of(c.index)];
    }
  }
  if (plus) return Membership::InGThetaPlus;
  if (base) return Membership::InGTheta;
  if (perp) return Membership::InGThetaPerp;
  return Membership::None;
}

inline bool in_g_theta(const LoopElement& x, const ParahoricDatum& d) {
  const auto m = membership(x, d);
  return m == Membership::InGTheta || m == Membership::InGThetaPlus;
}

/// z-exponent at which the Levi factor meets the given channel, or nullopt
/// when the channel is a non-Levi root.
inline std::optional<long> levi_exponent(const Channel& c, const ParahoricDatum& d) {
  if (c.torus) return 0;
  if (!d.levi[c.index]) return std::nullopt;
  return d.jumps[c.index];
}

/// Component of x in the Levi factor; x - levi_project(x) lies in g_theta^+.
inline LoopElement levi_project(const LoopElement& x, const ParahoricDatum& d) {
  if (!in_g_theta(x, d)) throw FiltrationError("element is not in the parahoric Lie algebra");
  LoopElement out;
  for (const auto& [c, s] : x.terms()) {
    const auto k = levi_exponent(c, d);
    if (!k) continue;
    auto it = s.find(*k);
    if (it != s.end()) out.add(c, *k, it->second);
  }
  return out;
}

/// Evaluation iota: conjugate by z^theta (moving every Levi channel to
/// exponent 0) and set z = 1. The result has only exponent-0 terms.
inline LoopElement levi_evaluate(const LoopElement& x, const ParahoricDatum& d) {
  LoopElement out;
  for (const auto& [c, s] : x.terms()) {
    detail::check_channel(d, c);
    const auto k = levi_exponent(c, d);
    if (!k || s.size() != 1 || s.begin()->first != *k)
      throw FiltrationError("element has a component outside the Levi factor");
    out.add(c, 0, s.begin()->second);
  }
  return out;
}

// Type-A matrix realization of the loop algebra gl_n((z)).

/// Laurent polynomial with square rational-matrix coefficients.
class LaurentMatrix {
 public:
  explicit LaurentMatrix(std::size_t n = 0) : n_(n) {}

  std::size_t size() const { return n_; }
  const std::map<long, Matrix>& terms() const { return terms_; }

  LaurentMatrix& add(long exponent, const Matrix& m) {
    if (m.rows() != n_ || m.cols() != n_) throw ShapeError("Laurent coefficient size mismatch");
    auto it = terms_.find(exponent);
    if (it == terms_.end()) {
      if (!m.is_zero()) terms_.emplace(exponent, m);
      return *this;
    }
    it->second += m;
    if (it->second.is_zero()) terms_.erase(it);
    return *this;
  }
  LaurentMatrix& add(long exponent, std::size_t i, std::size_t j, const Rational& c) {
    Matrix m(n_, n_);
    m(i, j) = c;
    return add(exponent, m);
  }

  friend LaurentMatrix operator*(const LaurentMatrix& a, const LaurentMatrix& b) {
    if (a.n_ != b.n_) throw ShapeError("Laurent matrix sizes differ");
    LaurentMatrix r(a.n_);
    for (const auto& [ka, ma] : a.terms_)
      for (const auto& [kb, mb] : b.terms_) r.add(ka + kb, ma * mb);
    return r;
  }
  friend LaurentMatrix operator-(const LaurentMatrix& a, const LaurentMatrix& b) {
    LaurentMatrix r = a;
    for (const auto& [k, m] : b.terms_) r.add(k, -m);
    return r;
  }
  friend LaurentMatrix operator+(const LaurentMatrix& a, const LaurentMatrix& b) {
    LaurentMatrix r = a;
    for (const auto& [k, m] : b.terms_) r.add(k, m);
    return r;
  }
  friend bool operator==(const LaurentMatrix&, const LaurentMatrix&) = default;

  bool is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first == 0); }
  Matrix constant_term() const {
    auto it = terms_.find(0);
    return it == terms_.end() ? Matrix::zero(n_) : it->second;
  }

 private:
  std::size_t n_;
  std::map<long, Matrix> terms_;
};

inline LaurentMatrix commutator(const LaurentMatrix& a, const LaurentMatrix& b) { return a * b - b * a; }

namespace detail {
inline void require_type_a(const ParahoricDatum& d, std::size_t n) {
  if (d.roots.family() != 'A' || static_cast<std::size_t>(d.roots.rank()) + 1 != n)
    throw UnsupportedRealization("matrix realization needs a datum over A" + std::to_string(n - 1));
}
}  // namespace detail

/// Diagonal entry i becomes torus channel i; entry (i,j) becomes the root
/// e_i - e_j.
inline LoopElement to_loop_element(const LaurentMatrix& x, const ParahoricDatum& d) {
  const std::size_t n = x.size();
  detail::require_type_a(d, n);
  LoopElement out;
  for (const auto& [k, m] : x.terms())
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        if (m(i, j) == 0) continue;
        if (i == j) out.torus(i, k, m(i, j));
        else out.root(d.roots.index_of(type_a_root(n, i, j)), k, m(i, j));
      }
  return out;
}

inline LaurentMatrix to_laurent_matrix(const LoopElement& x, const ParahoricDatum& d) {
  const std::size_t n = static_cast<std::size_t>(d.roots.rank()) + 1;
  detail::require_type_a(d, n);
  LaurentMatrix out(n);
  for (const auto& [c, s] : x.terms()) {
    std::size_t i, j;
    if (c.torus) {
      if (c.index >= n) throw ShapeError("torus channel outside the matrix realization");
      i = j = c.index;
    } else {
      std::tie(i, j) = type_a_entry(d.roots.roots()[c.index]);
    }
    for (const auto& [k, v] : s) out.add(k, i, j, v);
  }
  return out;
}

inline Membership membership(const LaurentMatrix& x, const ParahoricDatum& d) {
  return membership(to_loop_element(x, d), d);
}

/// Flat Levi matrix iota(x) for a Levi element in the matrix realization.
inline Matrix levi_evaluate_matrix(const LaurentMatrix& x, const ParahoricDatum& d) {
  return to_laurent_matrix(levi_evaluate(to_loop_element(x, d), d), d).constant_term();
}

/// Projection of a constant residue X (viewed as z^0 X) onto the Levi factor,
/// evaluated to a flat matrix. Throws FiltrationError when z^0 X is not in
/// g_theta.
inline Matrix levi_residue(const Matrix& x, const ParahoricDatum& d) {
  LaurentMatrix lx(x.rows());
  lx.add(0, x);
  const LoopElement proj = levi_project(to_loop_element(lx, d), d);
  return to_laurent_matrix(levi_evaluate(proj, d), d).constant_term();
}

/// Whether a constant group element g lies in G_theta (entries admissible at
/// exponent 0).
inline bool constant_in_parahoric(const Matrix& g, const ParahoricDatum& d) {
  detail::require_type_a(d, g.rows());
  for (std::size_t i = 0; i < g.rows(); ++i)
    for (std::size_t j = 0; j < g.cols(); ++j)
      if (i != j && g(i, j) != 0 && d.jumps[d.roots.index_of(type_a_root(g.rows(), i, j))] > 0) return false;
  return true;
}

/// Image of a constant element of G_theta in the Levi quotient: keeps the
/// diagonal and the Levi root entries whose Levi exponent is 0.
inline Matrix levi_part(const Matrix& g, const ParahoricDatum& d) {
  if (!constant_in_parahoric(g, d)) throw GroupError("group element is not in the parahoric subgroup");
  Matrix out(g.rows(), g.cols());
  for (std::size_t i = 0; i < g.rows(); ++i)
    for (std::size_t j = 0; j < g.cols(); ++j) {
      if (i == j) {
        out(i, j) = g(i, j);
        continue;
      }
      const std::size_t r = d.roots.index_of(type_a_root(g.rows(), i, j));
      if (d.levi[r] && d.jumps[r] == 0) out(i, j) = g(i, j);
    }
  return out;
}

// Parahoric degree and slope stability.

/// A candidate reduction: degree and rank of the (sub)object, plus the
/// weight/character pairings contributed by each marked point.
struct ReductionDatum {
  Integer degree = 0;
  long rank = 1;
  std::vector<Rational> weight_pairings;
};

/// deg + sum of weight pairings.
inline Rational parahoric_degree(const ReductionDatum& rd) {
  Rational p(rd.degree);
  for (const auto& w : rd.weight_pairings) p += w;
  return p;
}

enum class Verdict { StablePass, SemistableBoundary, Fail };

inline const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::StablePass: return "stable-pass";
    case Verdict::SemistableBoundary: return "semistable-boundary";
    case Verdict::Fail: return "fail";
  }
  return "?";
}

/// Worst of two verdicts.
inline Verdict worst(Verdict a, Verdict b) { return static_cast<int>(a) > static_cast<int>(b) ? a : b; }

/// Slope comparison parhdeg(sub)/rk(sub) against parhdeg(total)/rk(total).
inline Verdict slope_test(const ReductionDatum& sub, const ReductionDatum& total) {
  if (sub.rank <= 0 || sub.rank >= total.rank)
    throw InvalidReduction("subobject rank " + std::to_string(sub.rank) + " is not in (0, " +
                           std::to_string(total.rank) + ")");
  const Rational lhs = parahoric_degree(sub) / sub.rank;
  const Rational rhs = parahoric_degree(total) / total.rank;
  if (lhs < rhs) return Verdict::StablePass;
  if (lhs == rhs) return Verdict::SemistableBoundary;
  return Verdict::Fail;
}

/// Character form of the same test: parhdeg of the line bundle attached to
/// the anti-dominant character, rk(V) parhdeg(W) - rk(W) parhdeg(V) negated,
/// so that stability reads "> 0".
inline Rational character_parahoric_degree(const ReductionDatum& sub, const ReductionDatum& total) {
  return Rational(sub.rank) * parahoric_degree(total) - Rational(total.rank) * parahoric_degree(sub);
}

/// Flag line spanned by (u1, u2) in the fibre of O(a1) + O(a2) at x, in the
/// affine-chart trivialization.
struct FlagPoint {
  Rational x;
  Rational u1 = 1, u2 = 0;
  /// Weight credited to a line subbundle through the flag, and otherwise.
  Rational weight_on_flag = 0, weight_off_flag = 0;
};

struct Rank2Candidate {
  long degree = 0;
  std::vector<bool> incidence;  ///< per marked point: subbundle passes through the flag
  ReductionDatum reduction;
  Verdict verdict = Verdict::StablePass;
};

struct Rank2Result {
  Verdict verdict = Verdict::StablePass;
  Rank2Candidate witness;  ///< candidate maximizing parhdeg
  ReductionDatum total;
  std::vector<Rank2Candidate> candidates;
};

namespace detail {

// Coefficient vector layout: s1 coefficients (deg <= d1) then s2 (deg <= d2).
inline std::vector<Rational> incidence_row(const FlagPoint& p, long d1, long d2) {
  std::vector<Rational> row;
  Rational pw = 1;
  for (long k = 0; k <= d1; ++k, pw *= p.x) row.push_back(p.u2 * pw);
  pw = 1;
  for (long k = 0; k <= d2; ++k, pw *= p.x) row.push_back(-p.u1 * pw);
  return row;
}

inline bool all_satisfy(const std::vector<std::vector<Rational>>& basis, const std::vector<Rational>& row) {
  for (const auto& v : basis) {
    Rational acc = 0;
    for (std::size_t k = 0; k < v.size(); ++k) acc += row[k] * v[k];
    if (acc != 0) return false;
  }
  return true;
}

}  // namespace detail

/// Semistability of a rank-2 parabolic bundle O(a1) + O(a2) on P^1 with a flag
/// line and a weight pair at each marked point. Enumerates line subbundles by
/// degree a (from max(a1,a2) down to max(a1,a2) - #points, below which no
/// subbundle can beat the summand) and by the set of flags they can be made
/// to pass through.
inline Rank2Result rank2_semistability(long a1, long a2, const std::vector<FlagPoint>& points) {
  for (std::size_t i = 0; i < points.size(); ++i) {
    const auto& p = points[i];
    for (const Rational* w : {&p.weight_on_flag, &p.weight_off_flag})
      if (*w < 0 || *w >= 1) throw NormalizationError("weights must lie in [0,1)");
    if (p.u1 == 0 && p.u2 == 0) throw ShapeError("flag line must be nonzero");
    for (std::size_t j = 0; j < i; ++j)
      if (points[j].x == p.x) throw DivisorError("marked points must be distinct");
  }
  if (points.size() > 16) throw ShapeError("too many marked points for subset enumeration");

  Rank2Result out;
  out.total.degree = a1 + a2;
  out.total.rank = 2;
  for (const auto& p : points) out.total.weight_pairings.push_back(p.weight_on_flag + p.weight_off_flag);

  const long top = std::max(a1, a2);
  const long bottom = top - static_cast<long>(points.size());
  const std::size_t m = points.size();
  std::map<std::pair<long, std::vector<bool>>, bool> seen;
  bool have_witness = false;
  Rational best;
  for (long a = top; a >= bottom; --a) {
    const long d1 = a1 - a, d2 = a2 - a;  // negative degree: no terms
    for (unsigned long mask = 0; mask < (1ul << m); ++mask) {
      const std::size_t unknowns = static_cast<std::size_t>(std::max(d1 + 1, 0l) + std::max(d2 + 1, 0l));
      std::vector<std::vector<Rational>> rows;
      for (std::size_t i = 0; i < m; ++i)
        if (mask & (1ul << i)) rows.push_back(detail::incidence_row(points[i], d1, d2));
      std::vector<std::vector<Rational>> space;
      if (rows.empty()) {
        for (std::size_t k = 0; k < unknowns; ++k) {
          std::vector<Rational> e(unknowns, Rational(0));
          e[k] = 1;
          space.push_back(std::move(e));
        }
      } else {
        Matrix sys(rows.size(), unknowns);
        for (std::size_t r = 0; r < rows.size(); ++r)
          for (std::size_t k = 0; k < unknowns; ++k) sys(r, k) = rows[r][k];
        space = null_space(sys);
      }
      if (space.empty()) continue;
      // A generic member of the solution space meets exactly these flags.
      std::vector<bool> inc(m, false);
      for (std::size_t i = 0; i < m; ++i)
        inc[i] = (mask & (1ul << i)) || detail::all_satisfy(space, detail::incidence_row(points[i], d1, d2));
      if (!seen.emplace(std::pair{a, inc}, true).second) continue;

      Rank2Candidate c;
      c.degree = a;
      c.incidence = inc;
      c.reduction.degree = a;
      c.reduction.rank = 1;
      for (std::size_t i = 0; i < m; ++i)
        c.reduction.weight_pairings.push_back(inc[i] ? points[i].weight_on_flag : points[i].weight_off_flag);
      c.verdict = slope_test(c.reduction, out.total);
      out.verdict = worst(out.verdict, c.verdict);
      const Rational p = parahoric_degree(c.reduction);
      if (!have_witness || p > best) {
        best = p;
        out.witness = c;
        have_witness = true;
      }
      out.candidates.push_back(std::move(c));
    }
  }
  return out;
}

}  // namespace logahoric
