#pragma once

// Logarithmic Higgs fields on P^1 in the affine chart (type A):
//   L(z) dz = sum_j X_j / (z - x_j) dz,
// their polynomial form A(z) = P(z) L(z), the Hitchin map, Gaudin
// Hamiltonians and spectral-curve bookkeeping.

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "logahoric/matrix.hpp"
#include "logahoric/parahoric.hpp"
#include "logahoric/poly.hpp"
#include "logahoric/polynomial.hpp"
#include "logahoric/rootsys.hpp"

namespace logahoric {

struct LogHiggsField {
  std::vector<Rational> points;
  std::vector<Matrix> residues;
  GroupTag group;
  std::vector<ParahoricDatum> theta_data;  ///< empty, or one per point
  bool regular_at_infinity = true;

  std::size_t num_points() const { return points.size(); }
  std::size_t matrix_size() const { return group.matrix_size(); }
};

inline LogHiggsField build_field(std::vector<Rational> points, std::vector<Matrix> residues, const GroupTag& group,
                                 std::vector<ParahoricDatum> theta_data = {}) {
  const std::size_t n = group.matrix_size();
  if (points.empty()) throw DivisorError("divisor must be nonempty");
  if (points.size() != residues.size())
    throw ShapeError(std::to_string(points.size()) + " points but " + std::to_string(residues.size()) + " residues");
  if (!theta_data.empty() && theta_data.size() != points.size())
    throw ShapeError("parahoric data must be given for every point or none");
  for (std::size_t i = 0; i < points.size(); ++i)
    for (std::size_t j = 0; j < i; ++j)
      if (points[i] == points[j]) throw DivisorError("marked points must be distinct (x = " + to_string(points[i]) + ")");
  Matrix sum = Matrix::zero(n);
  for (std::size_t j = 0; j < residues.size(); ++j) {
    const auto& x = residues[j];
    if (x.rows() != n || x.cols() != n)
      throw ShapeError("residue " + std::to_string(j + 1) + " must be " + std::to_string(n) + "x" + std::to_string(n));
    if (group.form == GroupForm::SL && x.trace() != 0)
      throw TraceError("residue " + std::to_string(j + 1) + " is not traceless");
    sum += x;
  }
  LogHiggsField f;
  f.points = std::move(points);
  f.residues = std::move(residues);
  f.group = group;
  f.theta_data = std::move(theta_data);
  f.regular_at_infinity = sum.is_zero();
  return f;
}

/// prod_{k != j} (z - x_k)
inline Poly partial_product(const std::vector<Rational>& points, std::size_t j) {
  Poly p(1);
  for (std::size_t k = 0; k < points.size(); ++k)
    if (k != j) p *= Poly::linear_root(points[k]);
  return p;
}

/// A(z) = sum_j X_j prod_{k != j} (z - x_k).
inline PolynomialMatrix clear_denominators(const LogHiggsField& f) {
  const std::size_t n = f.matrix_size();
  const std::size_t s = f.num_points();
  std::vector<Matrix> coeffs(s, Matrix::zero(n));
  for (std::size_t j = 0; j < s; ++j) {
    const Poly q = partial_product(f.points, j);
    for (std::size_t k = 0; k < q.coeffs().size(); ++k) coeffs[k] += f.residues[j] * q.coeffs()[k];
  }
  return PolynomialMatrix(n, std::move(coeffs));
}

/// Degree bound of A(z) as a section: s-2 when regular at infinity, else s-1.
inline long section_degree(const LogHiggsField& f) {
  const long s = static_cast<long>(f.num_points());
  return f.regular_at_infinity ? s - 2 : s - 1;
}

struct HitchinImage {
  std::vector<int> degrees;           ///< d_i of each basic invariant
  std::vector<Poly> sections;         ///< p_i(A(z))
  std::vector<long> ambient_dims;     ///< d_i * deg + 1
};

/// Characteristic-coefficient invariants of A(z): section i is the
/// elementary symmetric function of degree d_i of the eigenvalues.
inline HitchinImage hitchin_map(const LogHiggsField& f) {
  if (!f.group.type_a()) throw UnsupportedRealization("the Hitchin map is realized in type A only");
  const auto e = char_invariants(clear_denominators(f).entries());
  HitchinImage h;
  h.degrees = f.group.invariant_degrees();
  const long deg = section_degree(f);
  for (int d : h.degrees) {
    h.sections.push_back(e[static_cast<std::size_t>(d)]);
    h.ambient_dims.push_back(std::max(0l, d * deg + 1));
  }
  return h;
}

/// lim_{z -> x_j} (z - x_j)^{d_i} p_i(L(z)) in the frame dz/(z - x_j).
inline Rational residue_of_invariant(const HitchinImage& h, const LogHiggsField& f, std::size_t j, std::size_t i) {
  if (j >= f.num_points()) throw IndexError("point index out of range");
  if (i >= h.degrees.size()) throw IndexError("invariant index out of range");
  Rational frame = 1;
  for (std::size_t k = 0; k < f.num_points(); ++k)
    if (k != j) frame *= f.points[j] - f.points[k];
  Rational scale = 1;
  for (int r = 0; r < h.degrees[i]; ++r) scale *= frame;
  return h.sections[i](f.points[j]) / scale;
}

inline Rational residue_of_invariant(const LogHiggsField& f, std::size_t j, std::size_t i) {
  return residue_of_invariant(hitchin_map(f), f, j, i);
}

/// Invariant of degree d of a single matrix (e_d of its eigenvalues).
inline Rational matrix_invariant(const Matrix& x, int degree) {
  return char_invariants(x)[static_cast<std::size_t>(degree)];
}

/// True iff every section vanishes along D, i.e. h lies in the image of the
/// strongly logarithmic locus.
inline bool is_strongly_logarithmic_image(const HitchinImage& h, const LogHiggsField& f) {
  for (std::size_t j = 0; j < f.num_points(); ++j)
    for (std::size_t i = 0; i < h.degrees.size(); ++i)
      if (residue_of_invariant(h, f, j, i) != 0) return false;
  return true;
}

/// Generator index of the (p,q) entry of the residue at site j; the same
/// layout is used by matrix-site Lie-Poisson algebras.
inline std::uint32_t entry_generator(std::size_t n, std::size_t site, std::size_t p, std::size_t q) {
  return static_cast<std::uint32_t>(site * n * n + p * n + q);
}

struct GaudinHamiltonians {
  std::vector<Rational> values;                ///< H_j at the field's residues
  std::vector<PoissonPolynomial> polynomials;  ///< H_j as quadratics in the entry coordinates
};

/// H_j = sum_{k != j} <X_j, X_k> / (x_j - x_k) with <,> the trace form.
inline GaudinHamiltonians gaudin_hamiltonians(const LogHiggsField& f) {
  if (!f.regular_at_infinity) throw ConstraintError("Gaudin Hamiltonians need the residue sum rule sum_j X_j = 0");
  const std::size_t s = f.num_points(), n = f.matrix_size();
  GaudinHamiltonians out;
  for (std::size_t j = 0; j < s; ++j) {
    Rational value = 0;
    PoissonPolynomial poly;
    for (std::size_t k = 0; k < s; ++k) {
      if (k == j) continue;
      const Rational w = 1 / (f.points[j] - f.points[k]);
      value += trace_form(f.residues[j], f.residues[k]) * w;
      for (std::size_t p = 0; p < n; ++p)
        for (std::size_t q = 0; q < n; ++q)
          poly += PoissonPolynomial::generator(entry_generator(n, j, p, q), w) *
                  PoissonPolynomial::generator(entry_generator(n, k, q, p));
    }
    out.values.push_back(value);
    out.polynomials.push_back(std::move(poly));
  }
  return out;
}

/// Coordinates of the field's residues in the entry-generator layout.
inline std::vector<Rational> entry_coordinates(const LogHiggsField& f) {
  const std::size_t n = f.matrix_size();
  std::vector<Rational> v(f.num_points() * n * n);
  for (std::size_t j = 0; j < f.num_points(); ++j)
    for (std::size_t p = 0; p < n; ++p)
      for (std::size_t q = 0; q < n; ++q) v[entry_generator(n, j, p, q)] = f.residues[j](p, q);
  return v;
}

/// All z-coefficients of the Hitchin sections of A(z) = sum_j Xi_j P_j(z),
/// with Xi_j the generic matrix of entry generators at site j. Element
/// [i][k] is the coefficient of z^k in section i, a polynomial in the
/// entry coordinates.
inline std::vector<std::vector<PoissonPolynomial>> hitchin_hamiltonians(const std::vector<Rational>& points,
                                                                        const GroupTag& group) {
  const std::size_t n = group.matrix_size(), s = points.size();
  const auto z = static_cast<std::uint32_t>(s * n * n);  // spectator generator for z
  BasicMatrix<PoissonPolynomial> a(n, n);
  for (std::size_t j = 0; j < s; ++j) {
    const Poly pj = partial_product(points, j);
    PoissonPolynomial pz;
    for (std::size_t k = 0; k < pj.coeffs().size(); ++k) {
      PoissonPolynomial mono(pj.coeffs()[k]);
      for (std::size_t r = 0; r < k; ++r) mono *= PoissonPolynomial::generator(z);
      pz += mono;
    }
    for (std::size_t p = 0; p < n; ++p)
      for (std::size_t q = 0; q < n; ++q) a(p, q) += PoissonPolynomial::generator(entry_generator(n, j, p, q)) * pz;
  }
  const auto e = char_invariants(a);
  std::vector<std::vector<PoissonPolynomial>> out;
  for (int d : group.invariant_degrees()) {
    const auto& sec = e[static_cast<std::size_t>(d)];
    std::vector<PoissonPolynomial> coeffs;
    for (std::uint32_t k = 0; k <= sec.degree_in(z); ++k) coeffs.push_back(sec.coefficient_of(z, k));
    out.push_back(std::move(coeffs));
  }
  return out;
}

/// Discriminant of a univariate polynomial of degree m >= 1:
/// (-1)^{m(m-1)/2} Res(p, p') / lc(p).
inline Rational discriminant(const Poly& p) {
  const long m = p.degree();
  if (m < 1) throw ShapeError("discriminant needs degree >= 1");
  if (m == 1) return 1;
  const Poly dp = p.derivative();
  const long k = dp.degree();  // m - 1
  const auto size = static_cast<std::size_t>(m + k);
  Matrix syl(size, size);
  for (long r = 0; r < k; ++r)
    for (long c = 0; c <= m; ++c) syl(static_cast<std::size_t>(r), static_cast<std::size_t>(r + c)) = p.coeff(static_cast<std::size_t>(m - c));
  for (long r = 0; r < m; ++r)
    for (long c = 0; c <= k; ++c)
      syl(static_cast<std::size_t>(k + r), static_cast<std::size_t>(r + c)) = dp.coeff(static_cast<std::size_t>(k - c));
  Rational res = det(syl);
  if ((m * (m - 1) / 2) % 2) res = -res;
  return res / p.leading();
}

struct SpectralCurveData {
  std::vector<Poly> char_coeffs;  ///< det(lambda - A(z)) = sum_k char_coeffs[k] lambda^k
  Poly discriminant;              ///< in z
  bool is_squarefree = false;
  std::optional<long> genus;
  long branch_count = 0;          ///< simple branch points on P^1, infinity included
  long section_degree = 0;        ///< disc is a section of O(n(n-1) * section_degree)
};

/// Spectral curve det(lambda - A(z)) = 0 as an n-sheeted cover of P^1. The
/// discriminant in lambda is recovered by exact interpolation from its values
/// at integer nodes (its z-degree is at most n(n-1) deg A). Squarefree means
/// simple branching everywhere, including at most a simple branch point at
/// infinity; then genus = branch_count/2 - n + 1.
inline SpectralCurveData spectral_curve(const LogHiggsField& f) {
  if (!f.group.type_a()) throw UnsupportedRealization("spectral curves are realized in type A only");
  const auto a = clear_denominators(f);
  const long n = static_cast<long>(f.matrix_size());
  SpectralCurveData out;
  out.char_coeffs = char_poly(a.entries());
  out.section_degree = section_degree(f);
  const long bound = n * (n - 1) * std::max(a.degree(), 0l);
  std::vector<Rational> nodes, values;
  for (long k = 0; k <= bound; ++k) {
    nodes.emplace_back(k);
    std::vector<Rational> c;
    for (const auto& poly : out.char_coeffs) c.push_back(poly(Rational(k)));
    values.push_back(discriminant(Poly(std::move(c))));
  }
  out.discriminant = interpolate(nodes, values);
  const long full = n * (n - 1) * std::max(out.section_degree, 0l);
  const long at_infinity = full - out.discriminant.degree();
  out.is_squarefree = !out.discriminant.is_zero() && is_squarefree(out.discriminant) && at_infinity <= 1;
  if (out.is_squarefree) {
    out.branch_count = full;
    out.genus = full / 2 - n + 1;
  } else {
    out.branch_count = out.discriminant.is_zero() ? 0 : out.discriminant.degree();
  }
  return out;
}

/// (n-1)(n(s-2)-2)/2, the genus of a smooth spectral curve of a regular field.
inline long spectral_genus(long n, long s) {
  if (n < 2 || s < 3) throw ShapeError("spectral_genus needs n >= 2 and s >= 3");
  const long twice = (n - 1) * (n * (s - 2) - 2);
  if (twice % 2 != 0) throw std::logic_error("spectral genus parity violated");
  return twice / 2;
}

/// (z, disc(z)) samples on a grid.
inline std::vector<std::pair<Rational, Rational>> discriminant_table(const SpectralCurveData& c,
                                                                     const std::vector<Rational>& grid) {
  std::vector<std::pair<Rational, Rational>> rows;
  for (const auto& z : grid) rows.emplace_back(z, c.discriminant(z));
  return rows;
}

}  // namespace logahoric
