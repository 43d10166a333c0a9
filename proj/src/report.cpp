#include "report.hpp"

#include <fstream>
#include <sstream>

#include "birational.hpp"
#include "classify.hpp"
#include "error.hpp"
#include "fpgroup.hpp"
#include "picard.hpp"

namespace ifp::report {

using geometry::Surface;
using groups::FiniteGroup;

namespace {

std::string str(const cyclo::Rational& q) {
  cyclo::Rational c = q;
  c.canonicalize();
  return c.get_str();
}

json big(const cyclo::BigInt& z) {
  if (z.fits_slong_p()) return z.get_si();
  return z.get_str();
}

json germ_json(const birational::Germ& g) { return {{"r", g.r}, {"p", g.p}, {"q", g.q}, {"type", g.to_string()}}; }

json curve_json(const geometry::SigmaCurve& c, const FiniteGroup& g, std::size_t index) {
  return {{"index", index},
          {"curve", geometry::describe(c.curve)},
          {"stabilizer_order", c.stabilizer.size()},
          {"generator", g.element(c.generator).to_string()},
          {"generator_order", g.element_order(c.generator)},
          {"self_intersection", c.self_intersection},
          {"genus", c.genus}};
}

json point_json(const geometry::SigmaPoint& p, std::size_t index) {
  return {{"index", index},          {"point", geometry::describe(p.point)},
          {"curves", p.curves},      {"stabilizer_order", p.stabilizer.size()},
          {"abelian", p.abelian},    {"cyclic", p.cyclic}};
}

json config_json(const geometry::Configuration& c, const FiniteGroup& g) {
  json curves = json::array(), points = json::array();
  for (std::size_t i = 0; i < c.curves.size(); ++i) curves.push_back(curve_json(c.curves[i], g, i));
  for (std::size_t i = 0; i < c.points.size(); ++i) points.push_back(point_json(c.points[i], i));
  json blown = json::array();
  for (const auto& p : c.blown_up) blown.push_back(geometry::describe(p));
  return {{"model", c.model()}, {"surface", geometry::surface_name(c.surface)}, {"blown_up", blown},
          {"curves", curves},   {"points", points}};
}

json witness_json(const geometry::CycleWitness& w, const geometry::Configuration& c, const FiniteGroup& g) {
  json cycle = json::array(), certs = json::array();
  for (std::size_t i = 0; i < w.curves.size(); ++i)
    cycle.push_back({{"curve_index", w.curves[i]},
                     {"curve", geometry::describe(c.curves[w.curves[i]].curve)},
                     {"meets_next_at", geometry::describe(c.points[w.points[i]].point)}});
  for (const auto& pc : w.certificates)
    certs.push_back({{"curves", {pc.curve_a, pc.curve_b}},
                     {"point_index", pc.point},
                     {"generators", {g.element(pc.gen_a).to_string(), g.element(pc.gen_b).to_string()}},
                     {"generator_orders", {pc.order_a, pc.order_b}},
                     {"subgroup_order", pc.subgroup_order},
                     {"max_element_order", pc.max_element_order},
                     {"abelian", true},
                     {"cyclic", false}});
  return {{"length", w.curves.size()}, {"cycle", cycle}, {"certificates", certs}};
}

json cycstab_json(const geometry::CycStabReport& r) {
  json tilde = json::array();
  for (std::size_t i = 0; i < r.in_sigma_tilde.size(); ++i)
    if (r.in_sigma_tilde[i]) tilde.push_back(i);
  return {{"passed", r.passed()},
          {"genus_ok", r.genus_ok},
          {"stabilizers_abelian", r.stabilizers_abelian},
          {"nonabelian_points", r.nonabelian_points},
          {"sigma_tilde", tilde},
          {"separated_points", r.separated_points},
          {"tails", r.tails},
          {"components", r.components},
          {"failure", r.failure}};
}

json h1_json(const classify::ClauseLabel& l, const FiniteGroup& g, std::string& status) {
  if (l.clause == classify::Clause::NotListed || !groups::is_abelian(g)) {
    status = "n/a";
    return {{"status", status}, {"note", l.clause == classify::Clause::NotListed ? "not in the list" : "nonabelian"}};
  }
  auto h = classify::h1_check_for(l, g);
  status = h.consistent ? "pass" : "fail";
  return {{"status", status}, {"invariant_factors", h.factors}};
}

json hessian_json(const picard::HessianModel& h) {
  json disc = json::array(), logk = json::array();
  for (const auto& a : h.discrepancies) disc.push_back(str(a));
  for (const auto& a : h.log_canonical) logk.push_back(str(a));
  return {{"lines", h.lines},
          {"points", h.points},
          {"points_per_line", h.points_per_line},
          {"lines_per_point", h.lines_per_point},
          {"lattice_rank", h.rank},
          {"strict_self_intersections", h.strict_self_intersections},
          {"discrepancies", disc},
          {"log_canonical_class", logk},
          {"k_squared", str(h.k_squared)},
          {"complement_rank", h.complement_rank},
          {"numerically_trivial", h.numerically_trivial},
          {"three_k_integral", h.three_k_integral},
          {"linear_triviality", h.linear_triviality},
          {"invariant_rank", {{"averaged", h.invariant.averaged}, {"fixed_subspace", h.invariant.fixed_subspace}}}};
}

struct Built {
  spec::GroupSpec spec;
  FiniteGroup group;
};

Built build(const std::string& text, std::size_t cap) {
  auto s = spec::parse(text);
  auto g = groups::build(s, cap);
  return {std::move(s), std::move(g)};
}

Surface surface_for(const FiniteGroup& g, std::optional<Surface> requested) {
  Surface nat = geometry::natural_surface(g);
  if (requested && *requested != nat)
    throw InvalidInput(std::string("group of kind ") + groups::kind_name(g.kind()) + " acts on " +
                       geometry::surface_name(nat) + ", not " + geometry::surface_name(*requested));
  return nat;
}

json lefschetz_rows(const FiniteGroup& g, Surface s, bool& all_ok) {
  json rows = json::array();
  all_ok = true;
  for (std::size_t x = 1; x < g.order(); ++x) {
    auto r = picard::lefschetz(g.element(x), s);
    all_ok = all_ok && r.ok;
    rows.push_back({{"element", x},
                    {"isolated_points", r.isolated_points},
                    {"curves", r.curves},
                    {"euler", r.euler},
                    {"trace2", r.trace2},
                    {"ok", r.ok}});
  }
  return rows;
}

}  // namespace

std::optional<Surface> parse_surface(const std::string& s) {
  if (s.empty() || s == "auto") return std::nullopt;
  if (s == "p2" || s == "P2") return Surface::P2;
  if (s == "f0" || s == "F0") return Surface::F0;
  throw InvalidInput("unknown surface '" + s + "' (expected p2, f0 or auto)");
}

Document check(const std::string& text, std::size_t cap) {
  auto b = build(text, cap);
  const FiniteGroup& g = b.group;
  auto v = geometry::decide_ifp_birational(g);
  auto cl = classify::clause_label(b.spec, g);
  std::string h1s;
  Document d;
  d.input = {{"spec", text}};
  d.result = {{"spec", spec::to_string(b.spec)},
              {"kind", groups::kind_name(g.kind())},
              {"order", g.order()},
              {"conductor", g.conductor()},
              {"verdict", geometry::verdict_name(v.kind)},
              {"route", v.route},
              {"model", v.config.model()},
              {"steps", v.steps},
              {"sigma", {{"curves", v.config.curves.size()}, {"points", v.config.points.size()}}},
              {"clause", {{"name", cl.name}, {"detail", cl.detail}}},
              {"abelian_subgroups_cyclic", classify::abelian_subgroups_cyclic(g)},
              {"h1", h1_json(cl, g, h1s)}};
  if (v.kind == geometry::VerdictKind::Unknown) d.result["reason"] = v.reason;
  if (!v.cycle) d.result["chain_criterion"] = cycstab_json(v.report);
  if (v.cycle) {
    json w = witness_json(*v.cycle, v.config, g);
    d.result["witness"] = w;
    d.witness = w;
  }
  if (b.spec.family == spec::Family::HessianKernel) d.result["scenario"] = hessian_json(picard::hessian_model_canonical(g));
  return d;
}

Document sigma(const std::string& text, std::optional<Surface> surface, std::size_t cap) {
  auto b = build(text, cap);
  Surface s = surface_for(b.group, surface);
  auto cfg = geometry::sigma_configuration(b.group, s);
  Document d;
  d.input = {{"spec", text}, {"surface", geometry::surface_name(s)}};
  d.result = config_json(cfg, b.group);
  d.result["order"] = b.group.order();
  return d;
}

Document lefschetz(const std::string& text, std::optional<Surface> surface, std::size_t cap) {
  auto b = build(text, cap);
  Surface s = surface_for(b.group, surface);
  bool ok = true;
  Document d;
  d.input = {{"spec", text}, {"surface", geometry::surface_name(s)}};
  json rows = lefschetz_rows(b.group, s, ok);
  auto lat = picard::pic_of(b.group, s);
  auto ir = picard::invariant_rank(lat, b.group);
  d.result = {{"order", b.group.order()},
              {"elements", rows},
              {"all_ok", ok},
              {"invariant_rank", {{"averaged", ir.averaged}, {"fixed_subspace", ir.fixed_subspace}}}};
  return d;
}

Document resolve(long r, long a) {
  auto chain = birational::hj_expand(r, a);
  auto disc = birational::chain_discrepancies(chain);
  auto back = birational::hj_contract(chain);
  json ds = json::array();
  for (const auto& x : disc) ds.push_back(str(x));
  Document d;
  d.input = {{"r", r}, {"a", a}};
  d.result = {{"chain", chain},
              {"self_intersections", json::array()},
              {"discrepancies", ds},
              {"negative_definite", birational::is_negative_definite(birational::chain_matrix(chain))},
              {"contracts_to", {back.first, back.second}}};
  for (auto x : chain) d.result["self_intersections"].push_back(-x);
  return d;
}

Document germ(long r, long p, long q, const std::string& action) {
  auto g = birational::make_germ(r, p, q);
  Document d;
  d.input = {{"r", r}, {"p", p}, {"q", q}, {"action", action}};
  if (action == "split") {
    auto [a, b] = birational::blowup_germ(g);
    auto part = [](const birational::BlowupPart& x) {
      return json{{"raw", germ_json(x.raw)}, {"faithful", germ_json(x.faithful)}, {"kernel", x.kernel}};
    };
    d.result = {{"germ", germ_json(g)}, {"points", {part(a), part(b)}}};
  } else if (action == "separate") {
    std::int64_t t = birational::separation_exponent(g);
    std::int64_t v = (t + 1) * g.p - g.q;
    d.result = {{"germ", germ_json(g)},
                {"t", t},
                {"weight", v},
                {"gcd", std::gcd(g.r, v < 0 ? -v : v)},
                {"normalized", germ_json(birational::normalize_germ(g))}};
  } else if (action == "normalize") {
    d.result = {{"germ", germ_json(g)}, {"normalized", germ_json(birational::normalize_germ(g))}};
  } else {
    throw InvalidInput("unknown germ action '" + action + "' (expected split, separate or normalize)");
  }
  return d;
}

Document pi1(long p, long q, std::size_t cap) {
  require(p >= 1 && q >= 1 && p <= 1000 && q <= 1000, "p and q must lie in [1, 1000]");
  auto pres = fpgroup::mumford_presentation(static_cast<int>(p), static_cast<int>(q));
  auto tc = fpgroup::todd_coxeter(pres, cap);
  auto ab = fpgroup::abelianization(pres);
  json factors = json::array();
  for (const auto& f : ab.invariant_factors) factors.push_back(big(f));
  Document d;
  d.input = {{"p", p}, {"q", q}, {"coset_cap", cap}};
  d.result = {{"presentation", fpgroup::to_string(pres)},
              {"generators", pres.num_generators},
              {"relators", pres.relators.size()},
              {"status", tc.complete ? "complete" : "overflow"},
              {"order", tc.complete ? json(tc.order) : json(nullptr)},
              {"cosets_defined", tc.cosets_defined},
              {"abelianization", factors},
              {"free_rank", ab.free_rank}};
  return d;
}

Document hessian_model() {
  Document d;
  d.input = json::object();
  d.result = hessian_json(picard::hessian_model_canonical());
  return d;
}

TableOutcome table(const std::string& path, std::size_t cap) {
  std::ifstream in(path);
  if (!in) throw InvalidInput("cannot open roster file '" + path + "'");
  TableOutcome out;
  json rows = json::array(), diffs = json::array();
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    auto arrow = line.find("=>");
    auto trim = [](std::string s) {
      auto b = s.find_first_not_of(" \t\r");
      auto e = s.find_last_not_of(" \t\r");
      return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
    };
    if (trim(line).empty()) continue;
    if (arrow == std::string::npos)
      throw InvalidInput("roster line " + std::to_string(lineno) + ": expected 'spec => verdict'");
    std::string text = trim(line.substr(0, arrow)), expected = trim(line.substr(arrow + 2));
    auto b = build(text, cap);
    const FiniteGroup& g = b.group;
    auto v = geometry::decide_ifp_birational(g);
    auto cl = classify::clause_label(b.spec, g);
    bool lok = true;
    lefschetz_rows(g, geometry::natural_surface(g), lok);
    std::string h1s;
    h1_json(cl, g, h1s);
    std::string got = geometry::verdict_name(v.kind);
    bool match = got == expected;
    rows.push_back({{"spec", spec::to_string(b.spec)},
                    {"order", g.order()},
                    {"clause", cl.name},
                    {"verdict", got},
                    {"expected", expected},
                    {"match", match},
                    {"checks", {{"lefschetz", lok ? "pass" : "fail"}, {"h1", h1s}}}});
    if (!match) diffs.push_back({{"spec", text}, {"expected", expected}, {"got", got}, {"line", lineno}});
    if (!match || !lok || h1s == "fail") out.all_match = false;
  }
  out.doc.input = {{"roster", path}};
  out.doc.result = {{"rows", rows}, {"all_match", out.all_match}, {"diff", diffs}};
  return out;
}

json envelope(const std::string& command, const Document& d, double timing_ms) {
  json e = {{"command", command}, {"input", d.input}, {"result", d.result}, {"timing_ms", timing_ms}};
  if (d.witness) e["witness"] = *d.witness;
  return e;
}

}  // namespace ifp::report
