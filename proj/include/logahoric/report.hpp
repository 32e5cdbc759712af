#pragma once

// JSON experiment configs and reports for the command-line front end.
// Rationals cross the boundary only as "p/q" strings; objects are emitted
// with sorted keys so identical configs give identical bytes.

#include <chrono>
#include <fstream>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "logahoric/higgs.hpp"
#include "logahoric/parahoric.hpp"
#include "logahoric/poisson.hpp"
#include "logahoric/rootsys.hpp"

namespace logahoric::io {

using json = nlohmann::json;

inline constexpr const char* kToolVersion = "logahoric 1.0.0";

inline const std::vector<std::string>& commands() {
  static const std::vector<std::string> c{"parahoric-analyze", "gaudin",      "hitchin",   "spectral", "moment",
                                          "involution",        "diagram-check", "stability", "leaf"};
  return c;
}

// ---------------------------------------------------------------- parsing

inline Rational rational_from(const json& j, const std::string& where) {
  if (j.is_string()) {
    try {
      return parse_rational(j.get<std::string>());
    } catch (const ParseError& e) {
      throw ParseError(where + ": " + e.what());
    }
  }
  if (j.is_number_integer()) return Rational(Integer(j.dump()));
  throw ParseError(where + ": expected a rational string \"p/q\" or an integer");
}

inline long integer_from(const json& j, const std::string& where) {
  const Rational q = rational_from(j, where);
  if (!is_integer(q)) throw ParseError(where + ": expected an integer");
  return to_long(q.get_num());
}

inline std::vector<Rational> rationals_from(const json& j, const std::string& where) {
  if (!j.is_array()) throw ParseError(where + ": expected an array");
  std::vector<Rational> v;
  for (std::size_t k = 0; k < j.size(); ++k) v.push_back(rational_from(j[k], where + "[" + std::to_string(k) + "]"));
  return v;
}

inline Matrix matrix_from(const json& j, const std::string& where) {
  if (!j.is_array() || j.empty()) throw ParseError(where + ": expected a nonempty array of rows");
  const std::size_t n = j.size();
  Matrix m(n, n);
  for (std::size_t r = 0; r < n; ++r) {
    const auto row = rationals_from(j[r], where + "[" + std::to_string(r) + "]");
    if (row.size() != n) throw ParseError(where + ": matrix must be square");
    for (std::size_t c = 0; c < n; ++c) m(r, c) = row[c];
  }
  return m;
}

struct PointConfig {
  std::optional<Rational> x;
  std::vector<Rational> theta;  ///< empty means theta = 0
  Rational u1 = 1, u2 = 0;      ///< stability flag line
  Rational weight_on = 0, weight_off = 0;
};

struct ExperimentConfig {
  std::string command;
  GroupTag group;
  std::vector<PointConfig> points;
  std::vector<Matrix> residues;
  json options = json::object();
};

inline GroupTag group_from(const json& j) {
  if (!j.is_object()) throw ParseError("group: expected an object");
  GroupTag g;
  const std::string fam = j.value("family", std::string("A"));
  if (fam.size() != 1) throw ParseError("group.family: expected one of A, B, C, D, G");
  g.family = fam[0];
  if (!j.contains("rank")) throw ParseError("group.rank is required");
  g.rank = static_cast<int>(integer_from(j["rank"], "group.rank"));
  const std::string form = j.value("form", std::string("SL"));
  if (form == "SL") g.form = GroupForm::SL;
  else if (form == "GL") g.form = GroupForm::GL;
  else throw ParseError("group.form: expected SL or GL");
  return g;
}

/// Validates the shape of a config; `command` (from the command line) wins
/// over a "command" key, which must agree if present.
inline ExperimentConfig parse_config(const json& j, const std::string& command) {
  if (std::find(commands().begin(), commands().end(), command) == commands().end())
    throw ParseError("unknown command '" + command + "'");
  if (!j.is_object()) throw ParseError("config must be a JSON object");
  ExperimentConfig c;
  c.command = command;
  if (j.contains("command") && j["command"] != command)
    throw ParseError("config is for command '" + j["command"].dump() + "', not '" + command + "'");
  c.group = group_from(j.value("group", json{{"family", "A"}, {"rank", 1}}));
  if (j.contains("options")) {
    if (!j["options"].is_object()) throw ParseError("options: expected an object");
    c.options = j["options"];
  }
  const json pts = j.value("points", json::array());
  if (!pts.is_array()) throw ParseError("points: expected an array");
  if (pts.empty() && command != "stability") throw ParseError("divisor must be nonempty");
  for (std::size_t k = 0; k < pts.size(); ++k) {
    const std::string where = "points[" + std::to_string(k) + "]";
    const json& p = pts[k];
    if (!p.is_object()) throw ParseError(where + ": expected an object");
    PointConfig pc;
    if (p.contains("x")) pc.x = rational_from(p["x"], where + ".x");
    if (p.contains("theta")) {
      pc.theta = rationals_from(p["theta"], where + ".theta");
      if (pc.theta.size() != static_cast<std::size_t>(c.group.rank))
        throw ParseError(where + ".theta: expected " + std::to_string(c.group.rank) + " coroot coordinates");
    }
    if (p.contains("flag")) {
      const auto f = rationals_from(p["flag"], where + ".flag");
      if (f.size() != 2) throw ParseError(where + ".flag: expected two entries");
      pc.u1 = f[0];
      pc.u2 = f[1];
    }
    if (p.contains("weights")) {
      const auto w = rationals_from(p["weights"], where + ".weights");
      if (w.size() != 2) throw ParseError(where + ".weights: expected a pair");
      pc.weight_on = w[0];
      pc.weight_off = w[1];
    }
    if (!pc.x && command != "parahoric-analyze") throw ParseError(where + ".x is required");
    c.points.push_back(std::move(pc));
  }
  if (j.contains("residues")) {
    const json& r = j["residues"];
    if (!r.is_array()) throw ParseError("residues: expected an array");
    for (std::size_t k = 0; k < r.size(); ++k) c.residues.push_back(matrix_from(r[k], "residues[" + std::to_string(k) + "]"));
    if (c.residues.size() != c.points.size()) throw ParseError("residues: expected one matrix per point");
    for (const auto& m : c.residues)
      if (m.rows() != static_cast<std::size_t>(c.group.rank) + 1)
        throw ParseError("residues: matrix size must be rank + 1 = " + std::to_string(c.group.rank + 1));
  }
  return c;
}

// ---------------------------------------------------------------- output

inline json to_json(const Rational& q) { return to_string(q); }

inline json to_json(const std::vector<Rational>& v) {
  json a = json::array();
  for (const auto& q : v) a.push_back(to_string(q));
  return a;
}

inline json to_json(const Matrix& m) {
  json a = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(to_string(m(i, j)));
    a.push_back(row);
  }
  return a;
}

inline json to_json(const Poly& p) {
  return {{"coefficients", to_json(p.coeffs())}, {"degree", p.degree()}, {"text", p.str()}};
}

inline std::string root_label(const RootVector& r) {
  std::string s = "(";
  for (std::size_t k = 0; k < r.size(); ++k) s += (k ? "," : "") + std::to_string(r[k]);
  return s + ")";
}

/// Names for the gl_n entry generators of entry_generator(): x<p><q>_<site>.
inline std::string entry_name(std::size_t n, std::uint32_t v) {
  const std::size_t site = v / (n * n), p = (v % (n * n)) / n, q = v % n;
  return "x" + std::to_string(p + 1) + std::to_string(q + 1) + "_" + std::to_string(site + 1);
}

inline json to_json(const PoissonPolynomial& f, std::size_t n) {
  return f.str([n](std::uint32_t v) { return entry_name(n, v); });
}

inline json to_json(const ParahoricDatum& d) {
  json roots = json::array();
  const auto& rs = d.roots.roots();
  for (std::size_t i = 0; i < rs.size(); ++i)
    roots.push_back({{"root", root_label(rs[i])},
                     {"positive", d.roots.is_positive(i)},
                     {"pairing", to_string(d.pairings[i])},
                     {"jump", d.jumps[i]},
                     {"levi", static_cast<bool>(d.levi[i])},
                     {"plus_grading", d.plus_grading[i]}});
  json levi = json::array();
  for (auto i : d.levi_roots()) levi.push_back(root_label(rs[i]));
  return {{"theta", to_json(d.theta.coeffs)},
          {"facet", to_string(d.facet)},
          {"roots", roots},
          {"levi_roots", levi},
          {"torus_plus_grading", 1}};
}

// ---------------------------------------------------------------- dispatch

struct RunOutput {
  json results;
  std::vector<std::pair<Rational, Rational>> csv_rows;
  bool has_csv = false;
};

namespace detail {

inline LogHiggsField field_from(const ExperimentConfig& c, bool with_theta) {
  if (c.residues.empty()) throw ParseError("residues are required for command '" + c.command + "'");
  std::vector<Rational> xs;
  for (const auto& p : c.points) xs.push_back(*p.x);
  std::vector<ParahoricDatum> data;
  if (with_theta) {
    bool any = false;
    for (const auto& p : c.points) any = any || !p.theta.empty();
    if (any) {
      const RootSystem rs = build_root_system('A', static_cast<int>(c.group.matrix_size()) - 1);
      for (const auto& p : c.points) {
        RationalCocharacter th{p.theta.empty() ? std::vector<Rational>(static_cast<std::size_t>(rs.rank()), Rational(0))
                                               : p.theta};
        data.push_back(analyze_weight(rs, th));
      }
    }
  }
  return build_field(std::move(xs), c.residues, c.group, std::move(data));
}

inline std::vector<ParahoricDatum> data_of(const LogHiggsField& f) {
  return f.theta_data.empty() ? hyperspecial_data(f.group, f.num_points()) : f.theta_data;
}

inline json run_parahoric(const ExperimentConfig& c) {
  const RootSystem rs = build_root_system(c.group.family, c.group.rank);
  json cartan = json::array();
  for (const auto& row : rs.cartan_matrix()) cartan.push_back(row);
  json pts = json::array();
  for (const auto& p : c.points) {
    RationalCocharacter th{p.theta.empty() ? std::vector<Rational>(static_cast<std::size_t>(rs.rank()), Rational(0))
                                           : p.theta};
    json d = to_json(analyze_weight(rs, th));
    if (p.x) d["x"] = to_string(*p.x);
    pts.push_back(d);
  }
  return {{"root_system",
           {{"label", rs.label()},
            {"num_roots", rs.roots().size()},
            {"cartan_matrix", cartan},
            {"invariant_degrees", rs.invariant_degrees()}}},
          {"points", pts}};
}

inline json run_gaudin(const ExperimentConfig& c) {
  const auto f = field_from(c, false);
  const auto g = gaudin_hamiltonians(f);
  Rational sum = 0;
  for (const auto& v : g.values) sum += v;
  json polys = json::array();
  for (const auto& p : g.polynomials) polys.push_back(to_json(p, f.matrix_size()));
  return {{"values", to_json(g.values)}, {"sum", to_string(sum)}, {"polynomials", polys}};
}

inline json run_hitchin(const ExperimentConfig& c) {
  const auto f = field_from(c, false);
  const auto a = clear_denominators(f);
  const auto h = hitchin_map(f);
  json lax = json::array();
  for (const auto& m : a.coeffs()) lax.push_back(to_json(m));
  json sections = json::array();
  for (std::size_t i = 0; i < h.degrees.size(); ++i) {
    json res = json::array();
    for (std::size_t j = 0; j < f.num_points(); ++j) res.push_back(to_string(residue_of_invariant(h, f, j, i)));
    json s = to_json(h.sections[i]);
    s["invariant_degree"] = h.degrees[i];
    s["ambient_dim"] = h.ambient_dims[i];
    s["residues"] = res;
    sections.push_back(s);
  }
  return {{"regular_at_infinity", f.regular_at_infinity},
          {"lax_degree", a.degree()},
          {"lax_coefficients", lax},
          {"sections", sections},
          {"strongly_logarithmic", is_strongly_logarithmic_image(h, f)}};
}

inline std::vector<Rational> grid_from(const json& options) {
  if (!options.contains("grid")) return {-3, -2, -1, 0, 1, 2, 3};
  auto g = rationals_from(options["grid"], "options.grid");
  if (g.empty()) throw ParseError("options.grid must be nonempty");
  return g;
}

inline json run_spectral(const ExperimentConfig& c, RunOutput& out) {
  const auto f = field_from(c, false);
  const auto sc = spectral_curve(f);
  json coeffs = json::array();
  for (const auto& p : sc.char_coeffs) coeffs.push_back(to_json(p));
  out.csv_rows = discriminant_table(sc, grid_from(c.options));
  out.has_csv = true;
  json samples = json::array();
  for (const auto& [z, d] : out.csv_rows) samples.push_back({{"z", to_string(z)}, {"disc", to_string(d)}});
  json r = {{"char_coeffs", coeffs},
            {"discriminant", to_json(sc.discriminant)},
            {"is_squarefree", sc.is_squarefree},
            {"branch_count", sc.branch_count},
            {"section_degree", sc.section_degree},
            {"genus", sc.genus ? json(*sc.genus) : json(nullptr)},
            {"samples", samples}};
  const long n = static_cast<long>(f.matrix_size()), s = static_cast<long>(f.num_points());
  if (f.regular_at_infinity && n >= 2 && s >= 3) r["closed_form_genus"] = spectral_genus(n, s);
  return r;
}

inline json moment_json(const MomentValue& m) {
  json a = json::array();
  for (const auto& x : m.sites) a.push_back(to_json(x));
  return a;
}

inline json run_moment(const ExperimentConfig& c) {
  const auto f = field_from(c, true);
  const auto data = data_of(f);
  const auto mu = moment_map(f, data);
  json r = {{"sites", moment_json(mu)}};
  json facets = json::array();
  for (const auto& d : data) facets.push_back(to_string(d.facet));
  r["facets"] = facets;
  if (c.options.contains("group_elements")) {
    const json& ge = c.options["group_elements"];
    if (!ge.is_array() || ge.size() != f.num_points())
      throw ParseError("options.group_elements: expected one matrix per point");
    std::vector<Matrix> g;
    for (std::size_t k = 0; k < ge.size(); ++k)
      g.push_back(matrix_from(ge[k], "options.group_elements[" + std::to_string(k) + "]"));
    for (const auto& m : g)
      if (m.rows() != f.matrix_size()) throw ParseError("options.group_elements: wrong matrix size");
    const auto lhs = moment_map(act_on_field(g, f, data), data);
    const auto rhs = coadjoint_act(levi_parts(g, data), mu);
    r["equivariance"] = {{"moment_of_acted_field", moment_json(lhs)},
                         {"coadjoint_of_moment", moment_json(rhs)},
                         {"equal", lhs == rhs}};
  }
  return r;
}

inline json run_involution(const ExperimentConfig& c) {
  const auto f = field_from(c, false);
  const std::string family = c.options.value("hamiltonians", std::string("gaudin"));
  const std::size_t n = f.matrix_size();
  const auto alg = LiePoissonAlgebra::matrix_sites(n, f.num_points());
  std::vector<PoissonPolynomial> hams;
  if (family == "gaudin" || family == "gaudin+casimirs") {
    hams = gaudin_hamiltonians(f).polynomials;
    if (family == "gaudin+casimirs")
      for (std::size_t j = 0; j < f.num_points(); ++j) hams.push_back(quadratic_casimir(alg, j));
  } else if (family == "hitchin") {
    for (const auto& per_invariant : hitchin_hamiltonians(f.points, f.group))
      for (const auto& h : per_invariant)
        if (!h.is_zero()) hams.push_back(h);
  } else {
    throw ParseError("options.hamiltonians: expected gaudin, gaudin+casimirs or hitchin");
  }
  const auto rep = verify_involution(hams, alg);
  json failures = json::array();
  for (const auto& e : rep.failures) failures.push_back({{"i", e.i}, {"j", e.j}, {"bracket", to_json(e.bracket, n)}});
  const std::string summary = rep.all_commute()
                                  ? "all " + std::to_string(rep.pairs_checked) + " pairs commute"
                                  : std::to_string(rep.failures.size()) + " of " + std::to_string(rep.pairs_checked) +
                                        " pairs fail to commute";
  return {{"hamiltonians", family},
          {"num_hamiltonians", rep.num_hamiltonians},
          {"pairs_checked", rep.pairs_checked},
          {"all_commute", rep.all_commute()},
          {"failures", failures},
          {"summary", summary}};
}

inline json run_diagram(const ExperimentConfig& c) {
  const auto f = field_from(c, true);
  const auto rep = quotient_diagram_check(f, data_of(f));
  json entries = json::array();
  for (const auto& e : rep.entries)
    entries.push_back({{"point", e.point + 1},
                       {"degree", e.degree},
                       {"via_hitchin", to_string(e.via_hitchin)},
                       {"via_moment", to_string(e.via_moment)},
                       {"equal", e.equal()}});
  return {{"entries", entries}, {"commutes", rep.commutes()}};
}

inline json run_leaf(const ExperimentConfig& c) {
  const auto f = field_from(c, true);
  const auto data = data_of(f);
  const auto mu = moment_map(f, data);
  std::vector<SiteAlgebra> sites;
  for (const auto& d : data) sites.push_back(SiteAlgebra::levi(d));
  const LiePoissonAlgebra alg(std::move(sites));
  const auto leaf = leaf_invariants(mu, alg);
  json inv = json::array();
  for (const auto& e : leaf.site_invariants) inv.push_back(to_json(e));
  return {{"site_invariants", inv}, {"bivector_rank", leaf.bivector_rank}, {"sites", moment_json(mu)}};
}

inline ReductionDatum reduction_from(const json& j, const std::string& where) {
  if (!j.is_object()) throw ParseError(where + ": expected an object");
  ReductionDatum r;
  r.degree = integer_from(j.value("degree", json(0)), where + ".degree");
  r.rank = integer_from(j.value("rank", json(1)), where + ".rank");
  if (j.contains("weight_pairings")) r.weight_pairings = rationals_from(j["weight_pairings"], where + ".weight_pairings");
  return r;
}

inline json reduction_json(const ReductionDatum& sub) {
  const Rational p = parahoric_degree(sub);
  return {{"degree", sub.degree.get_str()},
          {"rank", sub.rank},
          {"parhdeg", to_string(p)},
          {"slope", to_string(p / sub.rank)}};
}

inline json candidate_json(const ReductionDatum& sub, const ReductionDatum& total, Verdict v) {
  json j = reduction_json(sub);
  j["verdict"] = to_string(v);
  j["character_parhdeg"] = to_string(character_parahoric_degree(sub, total));
  return j;
}

inline json run_stability(const ExperimentConfig& c) {
  if (c.options.contains("candidates")) {
    if (!c.options.contains("total")) throw ParseError("options.total is required with options.candidates");
    const ReductionDatum total = reduction_from(c.options["total"], "options.total");
    const json& cs = c.options["candidates"];
    if (!cs.is_array()) throw ParseError("options.candidates: expected an array");
    json list = json::array();
    Verdict v = Verdict::StablePass;
    for (std::size_t k = 0; k < cs.size(); ++k) {
      const auto sub = reduction_from(cs[k], "options.candidates[" + std::to_string(k) + "]");
      const Verdict cv = slope_test(sub, total);
      v = worst(v, cv);
      list.push_back(candidate_json(sub, total, cv));
    }
    return {{"mode", "candidates"}, {"verdict", to_string(v)}, {"total", reduction_json(total)}, {"candidates", list}};
  }
  if (!c.options.contains("split_degrees")) throw ParseError("options.split_degrees is required for rank-2 stability");
  const json& sd = c.options["split_degrees"];
  if (!sd.is_array() || sd.size() != 2) throw ParseError("options.split_degrees: expected [a1, a2]");
  const long a1 = integer_from(sd[0], "options.split_degrees[0]");
  const long a2 = integer_from(sd[1], "options.split_degrees[1]");
  std::vector<FlagPoint> pts;
  for (const auto& p : c.points) pts.push_back({*p.x, p.u1, p.u2, p.weight_on, p.weight_off});
  const auto res = rank2_semistability(a1, a2, pts);
  auto cand = [&](const Rank2Candidate& k) {
    json j = candidate_json(k.reduction, res.total, k.verdict);
    json inc = json::array();
    for (bool b : k.incidence) inc.push_back(b);
    j["incidence"] = inc;
    return j;
  };
  json list = json::array();
  for (const auto& k : res.candidates) list.push_back(cand(k));
  return {{"mode", "rank2"},
          {"verdict", to_string(res.verdict)},
          {"witness", cand(res.witness)},
          {"total", reduction_json(res.total)},
          {"candidates", list}};
}

}  // namespace detail

/// Runs one command; domain failures propagate as logahoric::Error.
inline RunOutput run(const ExperimentConfig& c) {
  RunOutput out;
  const std::string& k = c.command;
  if (k == "parahoric-analyze") out.results = detail::run_parahoric(c);
  else if (k == "gaudin") out.results = detail::run_gaudin(c);
  else if (k == "hitchin") out.results = detail::run_hitchin(c);
  else if (k == "spectral") out.results = detail::run_spectral(c, out);
  else if (k == "moment") out.results = detail::run_moment(c);
  else if (k == "involution") out.results = detail::run_involution(c);
  else if (k == "diagram-check") out.results = detail::run_diagram(c);
  else if (k == "stability") out.results = detail::run_stability(c);
  else if (k == "leaf") out.results = detail::run_leaf(c);
  else throw ParseError("unknown command '" + k + "'");
  return out;
}

struct Outcome {
  int exit_code = 0;
  json report;
  RunOutput output;
};

/// Parses, runs and wraps into a report. Exit 2 for unparseable configs,
/// 1 for domain errors, 0 otherwise.
inline Outcome execute(const std::string& command, const std::string& config_text) {
  Outcome o;
  o.report = {{"command", command}, {"tool_version", kToolVersion}};
  const auto start = std::chrono::steady_clock::now();
  auto fail = [&](int code, const char* kind, const std::string& msg) {
    o.exit_code = code;
    o.report["status"] = "error";
    o.report["error"] = {{"kind", kind}, {"message", msg}};
  };
  try {
    json j;
    try {
      j = json::parse(config_text);
    } catch (const json::exception& e) {
      throw ParseError(std::string("config is not valid JSON: ") + e.what());
    }
    const auto cfg = parse_config(j, command);
    o.output = run(cfg);
    o.report["status"] = "ok";
    o.report["results"] = o.output.results;
  } catch (const ParseError& e) {
    fail(2, e.kind(), e.what());
  } catch (const Error& e) {
    fail(1, e.kind(), e.what());
  } catch (const json::exception& e) {
    fail(2, "parse", e.what());
  }
  const auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start);
  o.report["timing"] = {{"elapsed_ms", ms.count()}};
  return o;
}

/// CSV body with header "z,disc".
inline std::string csv_text(const std::vector<std::pair<Rational, Rational>>& rows) {
  std::string s = "z,disc\n";
  for (const auto& [z, d] : rows) s += to_string(z) + "," + to_string(d) + "\n";
  return s;
}

}  // namespace logahoric::io
