#include <gtest/gtest.h>

#include "logahoric/higgs.hpp"
#include "support.hpp"

using namespace logahoric;
using namespace testing_support;

namespace {

const Matrix kE{{0, 1}, {0, 0}};
const Matrix kF{{0, 0}, {1, 0}};
const Matrix kH{{1, 0}, {0, -1}};
const GroupTag kSL2{'A', 1, GroupForm::SL};

LogHiggsField eff() { return build_field({0, 1, 2}, {kE, kF, -kE - kF}, kSL2); }
LogHiggsField hee() { return build_field({0, 1, 2}, {kH, kE, -kH - kE}, kSL2); }
LogHiggsField zero_field(std::size_t n, std::size_t s) {
  std::vector<Rational> pts;
  for (std::size_t j = 0; j < s; ++j) pts.emplace_back(static_cast<long>(j));
  return build_field(pts, std::vector<Matrix>(s, Matrix(n, n)), GroupTag{'A', static_cast<int>(n) - 1, GroupForm::SL});
}

Poly poly(std::vector<Rational> c) { return Poly(std::move(c)); }

// Closed-form discriminants of monic lambda^2 + b lambda + c and
// lambda^3 + b lambda^2 + c lambda + d, over polynomial coefficients.
Poly disc_closed_form(const std::vector<Poly>& cp) {
  if (cp.size() == 3) return cp[1] * cp[1] - Poly(4) * cp[0];
  const Poly &d = cp[0], &c = cp[1], &b = cp[2];
  return b * b * c * c - Poly(4) * c * c * c - Poly(4) * b * b * b * d - Poly(27) * d * d + Poly(18) * b * c * d;
}

}  // namespace

TEST(BuildField, Examples) {
  EXPECT_TRUE(eff().regular_at_infinity);
  const auto hh = build_field({0, 1}, {kH, kH}, kSL2);
  EXPECT_FALSE(hh.regular_at_infinity);
  const auto z = zero_field(2, 3);
  EXPECT_TRUE(z.regular_at_infinity);
}

TEST(BuildField, Errors) {
  EXPECT_THROW(build_field({0, 0}, {kE, -kE}, kSL2), DivisorError);
  EXPECT_THROW(build_field({}, {}, kSL2), DivisorError);
  EXPECT_THROW(build_field({0, 1}, {kH, Matrix::identity(2)}, kSL2), TraceError);
  EXPECT_NO_THROW(build_field({0, 1}, {kH, Matrix::identity(2)}, GroupTag{'A', 1, GroupForm::GL}));
  EXPECT_THROW(build_field({0, 1}, {kE}, kSL2), ShapeError);
  EXPECT_THROW(build_field({0}, {Matrix::identity(3)}, kSL2), ShapeError);
  EXPECT_THROW(build_field({0}, {Matrix(2, 2)}, GroupTag{'B', 2, GroupForm::SL}), UnsupportedRealization);
}

TEST(ClearDenominators, Examples) {
  const auto a = clear_denominators(eff());
  const BasicMatrix<Poly> expect{{Poly(0), poly({2, -2})}, {poly({0, -1}), Poly(0)}};
  EXPECT_EQ(a.entries(), expect);
  EXPECT_EQ(clear_denominators(zero_field(2, 4)).degree(), -1);
  const auto two = build_field({Rational(1, 3), 2}, {kH + kE, -kH - kE}, kSL2);
  const auto a2 = clear_denominators(two);
  EXPECT_EQ(a2.degree(), 0);
  Matrix c = kH + kE;
  c *= Rational(1, 3) - 2;
  EXPECT_EQ(a2.coeff(0), c);
}

TEST(ClearDenominators, MatchesInterpolationOracle) {
  Rng rng(1);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = static_cast<std::size_t>(uniform(rng, 2, 3)), s = static_cast<std::size_t>(uniform(rng, 1, 5));
    const auto f = random_field(rng, n, s);
    ASSERT_EQ(clear_denominators(f).entries(), lax_by_interpolation(f));
  }
}

TEST(ClearDenominators, DegreeBound) {
  Rng rng(2);
  for (int trial = 0; trial < 500; ++trial) {
    const std::size_t n = static_cast<std::size_t>(uniform(rng, 2, 3)), s = static_cast<std::size_t>(uniform(rng, 2, 5));
    const auto f = random_regular_field(rng, n, s);
    ASSERT_TRUE(f.regular_at_infinity);
    ASSERT_LE(clear_denominators(f).degree(), static_cast<long>(s) - 2);
    // perturbing one residue breaks the sum rule; the top coefficient is the sum
    auto res = f.residues;
    Matrix bump(n, n);
    bump(0, n - 1) = 1;
    res[0] += bump;
    const auto g = build_field(f.points, res, f.group);
    ASSERT_FALSE(g.regular_at_infinity);
    ASSERT_EQ(clear_denominators(g).degree(), static_cast<long>(s) - 1);
    ASSERT_EQ(section_degree(g), static_cast<long>(s) - 1);
  }
}

TEST(HitchinMap, Examples) {
  EXPECT_EQ(hitchin_map(eff()).sections[0], poly({0, 2, -2}));
  EXPECT_EQ(hitchin_map(hee()).sections[0], poly({-4, 8, -4}));
  for (const auto& s : hitchin_map(zero_field(3, 4)).sections) EXPECT_TRUE(s.is_zero());
  EXPECT_EQ(hitchin_map(eff()).ambient_dims, std::vector<long>{3});
}

TEST(HitchinMap, DeterminantMatchesLeibnizOracle) {
  EXPECT_EQ(hitchin_map(eff()).sections[0], det_oracle(eff()));
  EXPECT_EQ(hitchin_map(hee()).sections[0], det_oracle(hee()));
  Rng rng(3);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = static_cast<std::size_t>(uniform(rng, 2, 3)), s = static_cast<std::size_t>(uniform(rng, 2, 5));
    const auto f = random_regular_field(rng, n, s);
    const auto h = hitchin_map(f);
    const Poly det = h.sections.back();  // e_n = det(A)
    ASSERT_EQ(det, det_oracle(f));
    for (std::size_t i = 0; i < h.degrees.size(); ++i) {
      ASSERT_LE(h.sections[i].degree(), static_cast<long>(h.degrees[i]) * (static_cast<long>(s) - 2));
      ASSERT_EQ(h.ambient_dims[i], h.degrees[i] * (static_cast<long>(s) - 2) + 1);
    }
  }
}

TEST(HitchinMap, GLIncludesTrace) {
  Rng rng(4);
  const auto f = random_regular_field(rng, 3, 4, GroupForm::GL);
  const auto h = hitchin_map(f);
  ASSERT_EQ(h.degrees, (std::vector<int>{1, 2, 3}));
  const auto a = clear_denominators(f).entries();
  Poly tr;
  for (std::size_t i = 0; i < 3; ++i) tr = tr + a(i, i);
  EXPECT_EQ(h.sections[0], tr);
  for (std::size_t j = 0; j < 4; ++j) EXPECT_EQ(residue_of_invariant(f, j, 0), f.residues[j].trace());
}

TEST(HitchinMap, ConjugationInvariance) {
  Rng rng(5);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = static_cast<std::size_t>(uniform(rng, 2, 3)), s = static_cast<std::size_t>(uniform(rng, 2, 4));
    const auto f = random_regular_field(rng, n, s);
    const Matrix g = random_invertible(rng, n), gi = *inverse(g);
    std::vector<Matrix> res;
    for (const auto& x : f.residues) res.push_back(g * x * gi);
    const auto h1 = hitchin_map(f), h2 = hitchin_map(build_field(f.points, res, f.group));
    ASSERT_EQ(h1.sections, h2.sections);
  }
}

TEST(ResidueOfInvariant, Examples) {
  const auto h = hee();
  EXPECT_EQ(residue_of_invariant(h, 0, 0), -1);
  EXPECT_EQ(residue_of_invariant(h, 1, 0), 0);
  EXPECT_EQ(residue_of_invariant(h, 2, 0), -1);
  EXPECT_EQ(residue_of_invariant(eff(), 0, 0), 0);
  EXPECT_THROW(residue_of_invariant(h, 3, 0), IndexError);
  EXPECT_THROW(residue_of_invariant(h, 0, 1), IndexError);
}

TEST(ResidueOfInvariant, EqualsInvariantOfResidue) {
  Rng rng(6);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = static_cast<std::size_t>(uniform(rng, 2, 3)), s = static_cast<std::size_t>(uniform(rng, 1, 5));
    const auto f = trial % 2 ? random_regular_field(rng, n, std::max<std::size_t>(s, 2)) : random_field(rng, n, s);
    const auto h = hitchin_map(f);
    for (std::size_t j = 0; j < f.num_points(); ++j)
      for (std::size_t i = 0; i < h.degrees.size(); ++i)
        ASSERT_EQ(residue_of_invariant(h, f, j, i),
                  principal_minor_sum(f.residues[j], static_cast<std::size_t>(h.degrees[i])));
  }
}

TEST(StronglyLogarithmic, Examples) {
  Rng rng(7);
  std::vector<Matrix> res;
  Matrix sum(3, 3);
  for (int j = 0; j < 3; ++j) {
    Matrix u(3, 3);
    for (std::size_t a = 0; a < 3; ++a)
      for (std::size_t b = a + 1; b < 3; ++b) u(a, b) = rq(rng);
    sum += u;
    res.push_back(u);
  }
  res.push_back(-sum);
  const auto f = build_field({0, 1, 2, 3}, res, GroupTag{'A', 2, GroupForm::SL});
  EXPECT_TRUE(is_strongly_logarithmic_image(hitchin_map(f), f));
  EXPECT_FALSE(is_strongly_logarithmic_image(hitchin_map(hee()), hee()));
  EXPECT_TRUE(is_strongly_logarithmic_image(hitchin_map(zero_field(2, 3)), zero_field(2, 3)));
}

TEST(Gaudin, Examples) {
  const auto g = gaudin_hamiltonians(eff());
  EXPECT_EQ(g.values, (std::vector<Rational>{Rational(-1, 2), 2, Rational(-3, 2)}));
  for (const auto& v : gaudin_hamiltonians(zero_field(2, 3)).values) EXPECT_EQ(v, 0);
  EXPECT_THROW(gaudin_hamiltonians(build_field({0, 1}, {kH, kH}, kSL2)), ConstraintError);
}

TEST(Gaudin, PolynomialsEvaluateToValues) {
  Rng rng(8);
  for (int trial = 0; trial < 50; ++trial) {
    const auto f = random_regular_field(rng, static_cast<std::size_t>(uniform(rng, 2, 3)),
                                        static_cast<std::size_t>(uniform(rng, 2, 5)));
    const auto g = gaudin_hamiltonians(f);
    const auto coords = entry_coordinates(f);
    Rational sum = 0;
    for (std::size_t j = 0; j < g.values.size(); ++j) {
      ASSERT_EQ(g.polynomials[j].evaluate(coords), g.values[j]);
      sum += g.values[j];
    }
    ASSERT_EQ(sum, 0);
  }
}

TEST(Gaudin, PartialFractionReconstruction) {
  Rng rng(9);
  for (int trial = 0; trial < 50; ++trial) {
    const auto f = random_regular_field(rng, static_cast<std::size_t>(uniform(rng, 2, 3)),
                                        static_cast<std::size_t>(uniform(rng, 2, 5)));
    const auto g = gaudin_hamiltonians(f);
    for (int k = 0; k < 10; ++k) {
      Rational z = rq(rng, 9, 7);
      if (std::find(f.points.begin(), f.points.end(), z) != f.points.end()) continue;
      Matrix l(f.matrix_size(), f.matrix_size());
      for (std::size_t j = 0; j < f.num_points(); ++j) {
        Matrix t = f.residues[j];
        t *= Rational(1 / (z - f.points[j]));
        l += t;
      }
      const Rational lhs = trace_form(l, l) / 2;
      Rational rhs = 0;
      for (std::size_t j = 0; j < f.num_points(); ++j) {
        const Rational d = z - f.points[j];
        rhs += trace_form(f.residues[j], f.residues[j]) / (2 * d * d) + g.values[j] / d;
      }
      ASSERT_EQ(lhs, rhs);
    }
  }
}

TEST(Discriminant, ScalarCases) {
  EXPECT_EQ(discriminant(poly({-4, 0, 1})), 16);      // lambda^2 - 4
  EXPECT_EQ(discriminant(poly({1, 2, 1})), 0);        // (lambda + 1)^2
  EXPECT_EQ(discriminant(poly({-6, 11, -6, 1})), 4);  // (l-1)(l-2)(l-3): prod of squared gaps = 1*4*1
  EXPECT_EQ(discriminant(poly({3, 2})), 1);
  EXPECT_THROW(discriminant(Poly(5)), ShapeError);
}

TEST(SpectralCurve, ExampleAndCsvSignChanges) {
  const auto c = spectral_curve(eff());
  EXPECT_EQ(c.discriminant, poly({0, -8, 8}));
  EXPECT_TRUE(c.is_squarefree);
  EXPECT_EQ(c.branch_count, 2);
  EXPECT_EQ(c.genus, 0);
  const auto rows = discriminant_table(c, {Rational(-1, 2), Rational(1, 2), Rational(3, 2)});
  EXPECT_GT(rows[0].second, 0);
  EXPECT_LT(rows[1].second, 0);
  EXPECT_GT(rows[2].second, 0);
}

TEST(SpectralCurve, ZeroFieldIsDegenerate) {
  const auto c = spectral_curve(zero_field(2, 3));
  EXPECT_TRUE(c.discriminant.is_zero());
  EXPECT_FALSE(c.is_squarefree);
  EXPECT_FALSE(c.genus.has_value());
  for (const auto& [z, d] : discriminant_table(c, {0, 1, 2})) EXPECT_EQ(d, 0);
}

TEST(SpectralCurve, DiscriminantMatchesClosedForm) {
  Rng rng(10);
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t n = static_cast<std::size_t>(uniform(rng, 2, 3)), s = static_cast<std::size_t>(uniform(rng, 3, 4));
    const auto f = random_regular_field(rng, n, s);
    const auto c = spectral_curve(f);
    ASSERT_EQ(c.discriminant, disc_closed_form(c.char_coeffs));
  }
}

TEST(SpectralCurve, GenusMatchesClosedForm) {
  Rng rng(12);
  for (auto [n, s] : std::vector<std::pair<long, long>>{{2, 3}, {2, 4}, {3, 3}, {3, 4}, {2, 5}}) {
    int squarefree = 0;
    for (int trial = 0; trial < 10; ++trial) {
      const auto f = random_regular_field(rng, static_cast<std::size_t>(n), static_cast<std::size_t>(s));
      const auto c = spectral_curve(f);
      if (!c.is_squarefree) continue;
      ++squarefree;
      ASSERT_EQ(*c.genus, spectral_genus(n, s));
      // Riemann-Hurwitz: 2g - 2 = n(-2) + branch points
      ASSERT_EQ(2 * *c.genus - 2, -2 * n + c.branch_count);
    }
    EXPECT_GT(squarefree, 0) << "n=" << n << " s=" << s;
  }
}

TEST(SpectralGenus, Examples) {
  EXPECT_EQ(spectral_genus(2, 3), 0);
  EXPECT_EQ(spectral_genus(2, 4), 1);
  EXPECT_EQ(spectral_genus(3, 3), 1);
  EXPECT_EQ(spectral_genus(3, 4), 4);
  EXPECT_THROW(spectral_genus(1, 3), ShapeError);
  EXPECT_THROW(spectral_genus(2, 2), ShapeError);
}

TEST(Poly, InterpolationRoundTrip) {
  Rng rng(13);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<Rational> c;
    for (int k = 0; k < 6; ++k) c.push_back(rq(rng));
    const Poly p(c);
    std::vector<Rational> nodes, vals;
    for (long k = 0; k < 6; ++k) {
      nodes.emplace_back(k * 2 - 5);
      vals.push_back(p(nodes.back()));
    }
    ASSERT_EQ(interpolate(nodes, vals), p);
  }
}
