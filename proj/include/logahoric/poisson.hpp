#pragma once

// Lie-Poisson (Kostant-Kirillov) algebra on g_D^* = (+)_j l_j^*, the
// coresidue moment map of the level group, its (co)adjoint action, bivector
// rank and the residue/invariant commuting-diagram check.
//
// Every site is given by basis matrices b_a closing under the commutator.
// The generator xi^a_j is the linear function M -> tr(M b_a) on the site,
// identified with l_j through the trace form, and
//   {xi^a, xi^b} = sum_c f^{ab}_c xi^c,   [b_a, b_b] = sum_c f^{ab}_c b_c.

#include <algorithm>
#include <cstdlib>
#include <mutex>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "logahoric/higgs.hpp"
#include "logahoric/matrix.hpp"
#include "logahoric/parahoric.hpp"
#include "logahoric/polynomial.hpp"

namespace logahoric {

class SiteAlgebra {
 public:
  /// Sparse structure constants: pairs (c, f^{ab}_c).
  using Bracket = std::vector<std::pair<std::size_t, Rational>>;

  SiteAlgebra() = default;

  /// Builds the algebra spanned by `basis`; throws ShapeError if the span is
  /// not closed under the commutator or the basis is dependent.
  static SiteAlgebra from_basis(std::vector<std::string> labels, std::vector<Matrix> basis) {
    if (labels.size() != basis.size()) throw ShapeError("one label per basis element");
    SiteAlgebra a;
    a.labels_ = std::move(labels);
    a.basis_ = std::move(basis);
    const std::size_t d = a.basis_.size();
    if (d == 0) return a;
    const std::size_t n = a.basis_[0].rows();
    Matrix flat(n * n, d);
    for (std::size_t c = 0; c < d; ++c) {
      if (a.basis_[c].rows() != n || !a.basis_[c].square()) throw ShapeError("basis matrices must share one square size");
      for (std::size_t k = 0; k < n * n; ++k) flat(k, c) = a.basis_[c](k / n, k % n);
    }
    if (rank(flat) != d) throw ShapeError("basis matrices are linearly dependent");
    a.brackets_.assign(d * d, {});
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = i + 1; j < d; ++j) {
        const Matrix br = commutator(a.basis_[i], a.basis_[j]);
        std::vector<Rational> rhs(n * n);
        for (std::size_t k = 0; k < n * n; ++k) rhs[k] = br(k / n, k % n);
        const auto coords = solve(flat, rhs);
        if (!coords) throw ShapeError("basis does not close under the commutator");
        Bracket b;
        for (std::size_t c = 0; c < d; ++c)
          if ((*coords)[c] != 0) b.emplace_back(c, (*coords)[c]);
        Bracket nb = b;
        for (auto& [c, v] : nb) v = -v;
        a.brackets_[i * d + j] = std::move(b);
        a.brackets_[j * d + i] = std::move(nb);
      }
    a.form_ = Matrix(d, d);
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < d; ++j) a.form_(i, j) = trace_form(a.basis_[i], a.basis_[j]);
    a.check_jacobi();
    return a;
  }

  /// gl_n with basis b_{(p,q)} = E_{qp}, so xi^{(p,q)}(M) = M_{pq}.
  static SiteAlgebra gl(std::size_t n) {
    std::vector<std::string> labels;
    std::vector<Matrix> basis;
    for (std::size_t p = 0; p < n; ++p)
      for (std::size_t q = 0; q < n; ++q) {
        labels.push_back("x" + std::to_string(p + 1) + std::to_string(q + 1));
        basis.push_back(Matrix::unit(n, q, p));
      }
    return from_basis(std::move(labels), std::move(basis));
  }

  /// sl_2 with basis (h, e, f).
  static SiteAlgebra sl2() {
    return from_basis({"h", "e", "f"}, {Matrix{{1, 0}, {0, -1}}, Matrix{{0, 1}, {0, 0}}, Matrix{{0, 0}, {1, 0}}});
  }

  /// Levi subalgebra l_theta (entries of the Levi quotient at exponent 0) in
  /// entry coordinates.
  static SiteAlgebra levi(const ParahoricDatum& d) {
    if (d.roots.family() != 'A') throw UnsupportedRealization("Levi site algebras are realized in type A only");
    const std::size_t n = static_cast<std::size_t>(d.roots.rank()) + 1;
    std::vector<std::string> labels;
    std::vector<Matrix> basis;
    for (std::size_t p = 0; p < n; ++p)
      for (std::size_t q = 0; q < n; ++q) {
        if (p != q) {
          const std::size_t r = d.roots.index_of(type_a_root(n, p, q));
          if (!d.levi[r]) continue;
        }
        labels.push_back("x" + std::to_string(p + 1) + std::to_string(q + 1));
        basis.push_back(Matrix::unit(n, q, p));
      }
    return from_basis(std::move(labels), std::move(basis));
  }

  std::size_t dim() const { return basis_.size(); }
  const std::vector<std::string>& labels() const { return labels_; }
  const std::vector<Matrix>& basis() const { return basis_; }
  const Matrix& form() const { return form_; }
  const Bracket& bracket(std::size_t a, std::size_t b) const { return brackets_[a * dim() + b]; }

  /// Coordinates xi^a(M) = tr(M b_a).
  std::vector<Rational> coordinates(const Matrix& m) const {
    std::vector<Rational> v;
    for (const auto& b : basis_) v.push_back(trace_form(m, b));
    return v;
  }

 private:
  void check_jacobi() const {
    const std::size_t d = dim();
    for (std::size_t a = 0; a < d; ++a)
      for (std::size_t b = a + 1; b < d; ++b)
        for (std::size_t c = b + 1; c < d; ++c) {
          std::vector<Rational> acc(d, Rational(0));
          auto cyc = [&](std::size_t x, std::size_t y, std::size_t z) {
            for (const auto& [e, v] : bracket(y, z))
              for (const auto& [g, w] : bracket(x, e)) acc[g] += v * w;
          };
          cyc(a, b, c);
          cyc(b, c, a);
          cyc(c, a, b);
          for (const auto& v : acc)
            if (v != 0) throw std::logic_error("structure constants violate the Jacobi identity");
        }
  }

  std::vector<std::string> labels_;
  std::vector<Matrix> basis_;
  std::vector<Bracket> brackets_;
  Matrix form_;
};

class LiePoissonAlgebra {
 public:
  explicit LiePoissonAlgebra(std::vector<SiteAlgebra> sites) : sites_(std::move(sites)) {
    std::uint32_t off = 0;
    for (const auto& s : sites_) {
      offsets_.push_back(off);
      off += static_cast<std::uint32_t>(s.dim());
    }
    num_generators_ = off;
  }

  /// s copies of gl_n; generator layout matches entry_generator().
  static LiePoissonAlgebra matrix_sites(std::size_t n, std::size_t s) {
    return LiePoissonAlgebra(std::vector<SiteAlgebra>(s, SiteAlgebra::gl(n)));
  }

  const std::vector<SiteAlgebra>& sites() const { return sites_; }
  std::uint32_t num_generators() const { return num_generators_; }
  std::uint32_t generator(std::size_t site, std::size_t a) const { return offsets_[site] + static_cast<std::uint32_t>(a); }

  /// (site, basis index) of a generator.
  std::pair<std::size_t, std::size_t> locate(std::uint32_t g) const {
    if (g >= num_generators_) throw AlgebraMismatch("generator " + std::to_string(g) + " is not in the algebra");
    const auto it = std::upper_bound(offsets_.begin(), offsets_.end(), g);
    const auto site = static_cast<std::size_t>(it - offsets_.begin()) - 1;
    return {site, g - offsets_[site]};
  }

  PoissonPolynomial xi(std::size_t site, std::size_t a) const { return PoissonPolynomial::generator(generator(site, a)); }

  /// {xi_u, xi_v} as a linear polynomial.
  PoissonPolynomial generator_bracket(std::uint32_t u, std::uint32_t v) const {
    const auto [su, a] = locate(u);
    const auto [sv, b] = locate(v);
    PoissonPolynomial r;
    if (su != sv) return r;
    for (const auto& [c, f] : sites_[su].bracket(a, b)) r.add_term(Monomial{{generator(su, c), 1}}, f);
    return r;
  }

  /// Coordinates of a point of g_D^* given by one matrix per site.
  std::vector<Rational> coordinates(const std::vector<Matrix>& point) const {
    if (point.size() != sites_.size()) throw ShapeError("point has the wrong number of sites");
    std::vector<Rational> v;
    for (std::size_t j = 0; j < sites_.size(); ++j) {
      const auto c = sites_[j].coordinates(point[j]);
      v.insert(v.end(), c.begin(), c.end());
    }
    return v;
  }

 private:
  std::vector<SiteAlgebra> sites_;
  std::vector<std::uint32_t> offsets_;
  std::uint32_t num_generators_ = 0;
};

/// Kostant-Kirillov bracket, extended from generators by the Leibniz rule.
inline PoissonPolynomial bracket(const PoissonPolynomial& f, const PoissonPolynomial& g, const LiePoissonAlgebra& alg) {
  const auto fv = f.variables();
  const auto gv = g.variables();
  for (auto v : fv) alg.locate(v);
  for (auto v : gv) alg.locate(v);
  std::vector<std::pair<std::uint32_t, PoissonPolynomial>> dg;
  for (auto v : gv) dg.emplace_back(v, g.derivative(v));
  PoissonPolynomial out;
  for (auto u : fv) {
    const PoissonPolynomial du = f.derivative(u);
    const std::size_t su = alg.locate(u).first;
    for (const auto& [v, dv] : dg) {
      if (alg.locate(v).first != su) continue;
      const PoissonPolynomial c = alg.generator_bracket(u, v);
      if (c.is_zero()) continue;
      out += du * dv * c;
    }
  }
  return out;
}

/// Quadratic Casimir 1/2 sum kappa^{ab} xi^a xi^b of one site.
inline PoissonPolynomial quadratic_casimir(const LiePoissonAlgebra& alg, std::size_t site) {
  const auto& s = alg.sites()[site];
  const auto inv = inverse(s.form());
  if (!inv) throw ShapeError("site invariant form is degenerate");
  PoissonPolynomial c;
  for (std::size_t a = 0; a < s.dim(); ++a)
    for (std::size_t b = 0; b < s.dim(); ++b)
      if ((*inv)(a, b) != 0) c += alg.xi(site, a) * alg.xi(site, b) * Rational((*inv)(a, b) / 2);
  return c;
}

/// Characteristic coefficients e_1..e_n of the generic matrix of a gl_n
/// site (basis from SiteAlgebra::gl).
inline std::vector<PoissonPolynomial> site_char_invariants(const LiePoissonAlgebra& alg, std::size_t site, std::size_t n) {
  BasicMatrix<PoissonPolynomial> m(n, n);
  for (std::size_t p = 0; p < n; ++p)
    for (std::size_t q = 0; q < n; ++q) m(p, q) = alg.xi(site, p * n + q);
  auto e = char_invariants(m);
  e.erase(e.begin());
  return e;
}

struct NonCommutingPair {
  std::size_t i = 0, j = 0;
  PoissonPolynomial bracket;
};

struct InvolutionReport {
  std::size_t num_hamiltonians = 0;
  std::size_t pairs_checked = 0;
  std::vector<NonCommutingPair> failures;  ///< sorted by pair index
  bool all_commute() const { return failures.empty(); }
};

/// Worker count from LOGAHORIC_THREADS, else the hardware concurrency.
inline unsigned worker_count() {
  if (const char* env = std::getenv("LOGAHORIC_THREADS")) {
    const long v = std::strtol(env, nullptr, 10);
    if (v > 0) return static_cast<unsigned>(v);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

/// Checks {H_i, H_j} = 0 for all i < j. Pairs are distributed over workers
/// and merged by pair index, so the report does not depend on scheduling.
inline InvolutionReport verify_involution(const std::vector<PoissonPolynomial>& hams, const LiePoissonAlgebra& alg,
                                          unsigned threads = worker_count()) {
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t i = 0; i < hams.size(); ++i)
    for (std::size_t j = i + 1; j < hams.size(); ++j) pairs.emplace_back(i, j);
  std::vector<PoissonPolynomial> results(pairs.size());
  const unsigned workers = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(pairs.size())));
  if (workers <= 1) {
    for (std::size_t k = 0; k < pairs.size(); ++k) results[k] = bracket(hams[pairs[k].first], hams[pairs[k].second], alg);
  } else {
    std::vector<std::thread> pool;
    std::exception_ptr error;
    std::mutex error_mutex;
    for (unsigned w = 0; w < workers; ++w)
      pool.emplace_back([&, w] {
        try {
          for (std::size_t k = w; k < pairs.size(); k += workers)
            results[k] = bracket(hams[pairs[k].first], hams[pairs[k].second], alg);
        } catch (...) {
          std::lock_guard lock(error_mutex);
          if (!error) error = std::current_exception();
        }
      });
    for (auto& t : pool) t.join();
    if (error) std::rethrow_exception(error);
  }
  InvolutionReport rep;
  rep.num_hamiltonians = hams.size();
  rep.pairs_checked = pairs.size();
  for (std::size_t k = 0; k < pairs.size(); ++k)
    if (!results[k].is_zero()) rep.failures.push_back({pairs[k].first, pairs[k].second, results[k]});
  return rep;
}

/// Per-site element of l_j^*, represented through the trace form by a matrix.
struct MomentValue {
  std::vector<Matrix> sites;
  friend bool operator==(const MomentValue&, const MomentValue&) = default;
};

inline std::vector<ParahoricDatum> hyperspecial_data(const GroupTag& group, std::size_t s) {
  const RootSystem rs = build_root_system('A', static_cast<int>(group.matrix_size()) - 1);
  RationalCocharacter zero{std::vector<Rational>(static_cast<std::size_t>(rs.rank()), Rational(0))};
  return std::vector<ParahoricDatum>(s, analyze_weight(rs, zero));
}

/// Coresidue moment map: site j carries the Levi projection of X_j,
/// evaluated to a flat matrix (X_j itself when theta_j = 0).
inline MomentValue moment_map(const LogHiggsField& f, const std::vector<ParahoricDatum>& data) {
  if (data.size() != f.num_points()) throw ShapeError("one parahoric datum per marked point is required");
  MomentValue m;
  for (std::size_t j = 0; j < f.num_points(); ++j) {
    try {
      m.sites.push_back(levi_residue(f.residues[j], data[j]));
    } catch (const FiltrationError&) {
      throw FiltrationError("residue at point " + std::to_string(j + 1) + " violates the local parahoric constraint");
    }
  }
  return m;
}

inline MomentValue moment_map(const LogHiggsField& f) {
  return moment_map(f, f.theta_data.empty() ? hyperspecial_data(f.group, f.num_points()) : f.theta_data);
}

/// Site-wise conjugation g_j M_j g_j^{-1}.
inline MomentValue coadjoint_act(const std::vector<Matrix>& g, const MomentValue& m) {
  if (g.size() != m.sites.size()) throw ShapeError("one group element per site is required");
  MomentValue out;
  for (std::size_t j = 0; j < g.size(); ++j) {
    const auto inv = inverse(g[j]);
    if (!inv) throw GroupError("group element at site " + std::to_string(j + 1) + " is not invertible");
    out.sites.push_back(g[j] * m.sites[j] * *inv);
  }
  return out;
}

/// Level-group action on the local data: Ad(g_j) on the residue at x_j, with
/// g_j a constant element of the parahoric subgroup at that point.
inline LogHiggsField act_on_field(const std::vector<Matrix>& g, const LogHiggsField& f,
                                  const std::vector<ParahoricDatum>& data) {
  if (g.size() != f.num_points() || data.size() != f.num_points())
    throw ShapeError("one group element and one datum per point are required");
  std::vector<Matrix> res;
  for (std::size_t j = 0; j < g.size(); ++j) {
    if (!constant_in_parahoric(g[j], data[j])) throw GroupError("group element is not in the parahoric subgroup");
    const auto inv = inverse(g[j]);
    if (!inv) throw GroupError("group element at site " + std::to_string(j + 1) + " is not invertible");
    res.push_back(g[j] * f.residues[j] * *inv);
  }
  return build_field(f.points, std::move(res), f.group, f.theta_data);
}

/// Images of the g_j in the Levi quotients.
inline std::vector<Matrix> levi_parts(const std::vector<Matrix>& g, const std::vector<ParahoricDatum>& data) {
  std::vector<Matrix> out;
  for (std::size_t j = 0; j < g.size(); ++j) out.push_back(levi_part(g[j], data[j]));
  return out;
}

/// Residue variation delta X_j = [Y_j, X_j].
inline std::vector<Matrix> infinitesimal_action(const std::vector<Matrix>& y, const LogHiggsField& f) {
  if (y.size() != f.num_points()) throw ShapeError("one Lie algebra element per site is required");
  std::vector<Matrix> out;
  for (std::size_t j = 0; j < y.size(); ++j) {
    if (y[j].rows() != f.matrix_size() || !y[j].square()) throw ShapeError("Lie algebra element has the wrong size");
    out.push_back(commutator(y[j], f.residues[j]));
  }
  return out;
}

/// exp(tY) as a polynomial in t, for nilpotent Y.
inline PolynomialMatrix nilpotent_exp(const Matrix& y) {
  if (!is_nilpotent(y)) throw ShapeError("exponential is only taken of nilpotent matrices");
  std::vector<Matrix> c;
  Matrix power = Matrix::identity(y.rows());
  Rational fact = 1;
  for (std::size_t k = 0; k < y.rows(); ++k) {
    if (k > 0) fact *= static_cast<long>(k);
    c.push_back(power * Rational(1 / fact));
    power = power * y;
  }
  return PolynomialMatrix(y.rows(), std::move(c));
}

/// Rank of Pi^{ab} = sum_c f^{ab}_c xi^c at the point, site by site.
inline std::size_t bivector_rank_at(const MomentValue& xi, const LiePoissonAlgebra& alg) {
  if (xi.sites.size() != alg.sites().size()) throw ShapeError("point has the wrong number of sites");
  std::size_t total = 0;
  for (std::size_t j = 0; j < xi.sites.size(); ++j) {
    const auto& s = alg.sites()[j];
    const auto coords = s.coordinates(xi.sites[j]);
    Matrix pi(s.dim(), s.dim());
    for (std::size_t a = 0; a < s.dim(); ++a)
      for (std::size_t b = 0; b < s.dim(); ++b)
        for (const auto& [c, f] : s.bracket(a, b)) pi(a, b) += f * coords[c];
    total += rank(pi);
  }
  return total;
}

struct LeafDescriptor {
  std::vector<std::vector<Rational>> site_invariants;  ///< e_1..e_n per site
  std::size_t bivector_rank = 0;
  friend bool operator==(const LeafDescriptor&, const LeafDescriptor&) = default;
};

inline LeafDescriptor leaf_invariants(const MomentValue& xi, const LiePoissonAlgebra& alg) {
  LeafDescriptor d;
  for (const auto& m : xi.sites) {
    auto e = char_invariants(m);
    e.erase(e.begin());
    d.site_invariants.push_back(std::move(e));
  }
  d.bivector_rank = bivector_rank_at(xi, alg);
  return d;
}

/// Leaf data with gl_n sites.
inline LeafDescriptor leaf_invariants(const MomentValue& xi) {
  if (xi.sites.empty()) return {};
  return leaf_invariants(xi, LiePoissonAlgebra::matrix_sites(xi.sites[0].rows(), xi.sites.size()));
}

struct DiagramEntry {
  std::size_t point = 0;
  int degree = 0;
  Rational via_hitchin;  ///< residue of the Hitchin section
  Rational via_moment;   ///< invariant of the coresidue
  bool equal() const { return via_hitchin == via_moment; }
};

struct DiagramReport {
  std::vector<DiagramEntry> entries;
  bool commutes() const {
    return std::all_of(entries.begin(), entries.end(), [](const DiagramEntry& e) { return e.equal(); });
  }
};

/// Compares, for every point and basic invariant, the residue of the Hitchin
/// section with the invariant of the moment-map value.
inline DiagramReport quotient_diagram_check(const LogHiggsField& f, const std::vector<ParahoricDatum>& data) {
  const HitchinImage h = hitchin_map(f);
  const MomentValue mu = moment_map(f, data);
  DiagramReport rep;
  for (std::size_t j = 0; j < f.num_points(); ++j) {
    const auto e = char_invariants(mu.sites[j]);
    for (std::size_t i = 0; i < h.degrees.size(); ++i)
      rep.entries.push_back({j, h.degrees[i], residue_of_invariant(h, f, j, i), e[static_cast<std::size_t>(h.degrees[i])]});
  }
  return rep;
}

inline DiagramReport quotient_diagram_check(const LogHiggsField& f) {
  return quotient_diagram_check(f, f.theta_data.empty() ? hyperspecial_data(f.group, f.num_points()) : f.theta_data);
}

/// True iff X is nilpotent; in that case every nonconstant characteristic
/// coefficient is verified to vanish (std::logic_error otherwise).
inline bool nilpotent_vanishing_check(const Matrix& x) {
  if (!is_nilpotent(x)) return false;
  const auto e = char_invariants(x);
  for (std::size_t k = 1; k < e.size(); ++k)
    if (e[k] != 0) throw std::logic_error("nilpotent matrix with a nonzero invariant");
  return true;
}

}  // namespace logahoric
