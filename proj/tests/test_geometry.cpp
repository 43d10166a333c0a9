#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <map>
#include <random>
#include <set>

#include "error.hpp"
#include "geometry.hpp"

using namespace ifp;
using namespace ifp::geometry;
using cyclo::CycloNum;
using cyclo::Field;

namespace {

FiniteGroup B(const std::string& s) { return groups::build(spec::parse(s)); }

std::set<std::string> curve_keys(const FixedLocus& f) {
  std::set<std::string> s;
  for (const auto& c : f.curves) s.insert(key(c));
  return s;
}
std::set<std::string> point_keys(const FixedLocus& f) {
  std::set<std::string> s;
  for (const auto& p : f.isolated_points) s.insert(key(p));
  return s;
}

Vec V(const Field& f, std::initializer_list<long> xs) {
  Vec v;
  for (long x : xs) v.emplace_back(f, cyclo::Rational(x));
  return v;
}

// Independent noncyclicity test: an abelian group is cyclic iff some element has order |H|.
bool noncyclic_abelian(const FiniteGroup& g, std::size_t a, std::size_t b) {
  if (g.mul(a, b) != g.mul(b, a)) return false;
  std::set<std::size_t> h;
  for (unsigned i = 0; i < g.element_order(a); ++i) {
    std::size_t x = 0;
    for (unsigned k = 0; k < i; ++k) x = g.mul(x, a);
    for (unsigned j = 0; j < g.element_order(b); ++j) {
      h.insert(x);
      x = g.mul(x, b);
    }
  }
  for (std::size_t x : h)
    if (g.element_order(x) == h.size()) return false;
  return true;
}

const char* kTestGroups[] = {"hessian-full",     "hessian-kernel", "binary-octahedral",
                             "dicyclic 8",       "g4n 8",          "g4n 6",
                             "f4n 6",            "twisted-dihedral-f0 4",
                             "product-f0 (cyclic 2) (cyclic 3)", "diagonal-f0 (dihedral 10)",
                             "imprimitive-c3 n=7 s=3", "sym2 (icosahedral)"};

}  // namespace

TEST_CASE("fixed_locus examples") {
  const Field& f3 = Field::get(3);
  auto g = GroupElement::proj3(groups::ProjMatrix(cyclo::Matrix::diagonal(
      {CycloNum::zeta(f3, 1), CycloNum(f3, 1), CycloNum(f3, 1)})));
  auto fl = fixed_locus(g, Surface::P2);
  REQUIRE(fl.curves.size() == 1);
  CHECK(contains(fl.curves[0], P2Point{V(f3, {0, 1, 0})}));
  CHECK(contains(fl.curves[0], P2Point{V(f3, {0, 1, 1})}));
  CHECK_FALSE(contains(fl.curves[0], P2Point{V(f3, {1, 0, 0})}));
  REQUIRE(fl.isolated_points.size() == 1);
  CHECK(key(fl.isolated_points[0]) == key(BasePoint{P2Point{V(f3, {1, 0, 0})}}));

  auto p = B("product-f0 (cyclic 5) (cyclic 1)");
  std::size_t idx = p.generators()[0];
  auto fp = fixed_locus(p.element(idx), Surface::F0);
  CHECK(fp.curves.size() == 2);
  CHECK(fp.isolated_points.empty());
  for (const auto& c : fp.curves) CHECK(std::holds_alternative<FiberFirst>(c));

  auto t = B("twisted-dihedral-f0 3");
  bool found_graph = false;
  for (std::size_t i = 1; i < t.order(); ++i) {
    if (!t.element(i).as_wreath().swap || t.element_order(i) != 2) continue;
    auto ft = fixed_locus(t.element(i), Surface::F0);
    REQUIRE(ft.curves.size() == 1);
    CHECK(std::holds_alternative<GraphCurve>(ft.curves[0]));
    CHECK(ft.isolated_points.empty());
    found_graph = true;
  }
  CHECK(found_graph);
  CHECK_THROWS_WITH_AS(fixed_locus(t.element(0), Surface::F0), "fixed locus is everything", InvalidInput);
}

TEST_CASE("fixed loci are disjoint and equivariant") {
  std::mt19937 rng(7);
  for (const char* s : kTestGroups) {
    CAPTURE(s);
    auto g = B(s);
    Surface surf = natural_surface(g);
    for (std::size_t i = 1; i < g.order(); ++i) {
      auto fl = fixed_locus(g.element(i), surf);
      CHECK(point_keys(fl).size() == fl.isolated_points.size());
      CHECK(curve_keys(fl).size() == fl.curves.size());
      for (const auto& p : fl.isolated_points) {
        CHECK(key(act(g.element(i), p)) == key(p));
        for (const auto& c : fl.curves) CHECK_FALSE(contains(c, p));
      }
      for (const auto& c : fl.curves) CHECK(key(act(g.element(i), c)) == key(c));
    }
    std::uniform_int_distribution<std::size_t> pick(0, g.order() - 1);
    for (int trial = 0; trial < 20; ++trial) {
      std::size_t a = pick(rng), h = pick(rng);
      if (a == 0) a = 1;
      std::size_t conj = g.mul(g.mul(h, a), g.inverse(h));
      auto lhs = fixed_locus(g.element(conj), surf);
      auto base = fixed_locus(g.element(a), surf);
      FixedLocus rhs;
      for (const auto& c : base.curves) rhs.curves.push_back(act(g.element(h), c));
      for (const auto& p : base.isolated_points) rhs.isolated_points.push_back(act(g.element(h), p));
      CHECK(curve_keys(lhs) == curve_keys(rhs));
      CHECK(point_keys(lhs) == point_keys(rhs));
    }
  }
}

TEST_CASE("sigma configuration incidence and stabilizers") {
  for (const char* s : kTestGroups) {
    CAPTURE(s);
    auto g = B(s);
    Surface surf = natural_surface(g);
    auto c = sigma_configuration(g, surf);
    for (std::size_t k = 0; k < c.curves.size(); ++k) {
      const auto& sc = c.curves[k];
      CHECK(std::binary_search(sc.stabilizer.begin(), sc.stabilizer.end(), std::size_t{0}));
      auto fl = fixed_locus(g.element(sc.generator), surf);
      CHECK(curve_keys(fl).count(key(sc.curve)) == 1);
      for (std::size_t e : sc.stabilizer)
        if (e != 0) CHECK(curve_keys(fixed_locus(g.element(e), surf)).count(key(sc.curve)) == 1);
    }
    for (std::size_t pi = 0; pi < c.points.size(); ++pi) {
      const auto& sp = c.points[pi];
      REQUIRE_FALSE(sp.point.branch.has_value());
      CHECK(sp.curves.size() >= 2);
      for (std::size_t e : sp.stabilizer) CHECK(key(act(g.element(e), sp.point.base)) == key(sp.point.base));
      for (std::size_t k = 0; k < c.curves.size(); ++k) {
        bool listed = std::binary_search(sp.curves.begin(), sp.curves.end(), k);
        CHECK(listed == contains(c.curves[k].curve, sp.point.base));
      }
      std::size_t fixing = 0;
      for (std::size_t e = 0; e < g.order(); ++e)
        if (key(act(g.element(e), sp.point.base)) == key(sp.point.base)) ++fixing;
      CHECK(fixing == sp.stabilizer.size());
    }
  }
}

TEST_CASE("Hessian arrangement") {
  auto g = B("hessian-kernel");
  auto c = sigma_configuration(g, Surface::P2);
  CHECK(c.curves.size() == 9);
  CHECK(c.points.size() == 12);
  std::vector<int> per_line(9, 0);
  for (const auto& p : c.points) {
    CHECK(p.curves.size() == 3);
    for (auto k : p.curves) ++per_line[k];
  }
  for (int n : per_line) CHECK(n == 4);
}

TEST_CASE("coordinate triangle and ruled 4-cycle") {
  auto tri = B("explicit [z3 0; 0 1] [1 0; 0 z3]");
  auto c = sigma_configuration(tri, Surface::P2);
  CHECK(c.curves.size() == 3);
  CHECK(c.points.size() == 3);
  for (const auto& sc : c.curves) CHECK(std::holds_alternative<Line>(sc.curve));
  auto w = criterion_cycle(c, tri);
  REQUIRE(w.has_value());
  CHECK(w->curves.size() == 3);
  CHECK(verify_cycle_witness(*w, c, tri));

  auto sq = B("product-f0 (cyclic 2) (cyclic 2)");
  auto c2 = sigma_configuration(sq, Surface::F0);
  CHECK(c2.curves.size() == 4);
  CHECK(c2.points.size() == 4);
  auto w2 = criterion_cycle(c2, sq);
  REQUIRE(w2.has_value());
  CHECK(w2->curves.size() == 4);

  auto one = B("cyclic 5");
  auto c3 = sigma_configuration(one, Surface::P2);
  CHECK_FALSE(criterion_cycle(c3, one).has_value());
}

TEST_CASE("cycle witnesses re-validate independently") {
  for (const char* s : {"hessian-full", "g4n 8", "twisted-dihedral-f0 4", "explicit [-1 0; 0 1] [1 0; 0 -1]",
                        "product-f0 (cyclic 2) (cyclic 2)", "imprimitive-zn2-c3 n=2", "sym2 (icosahedral)"}) {
    CAPTURE(s);
    auto g = B(s);
    auto v = decide_ifp_birational(g);
    REQUIRE(v.kind == VerdictKind::NotIFPBirational);
    REQUIRE(v.cycle.has_value());
    const auto& w = *v.cycle;
    CHECK(verify_cycle_witness(w, v.config, g));
    std::size_t n = w.curves.size();
    CHECK(std::set<std::size_t>(w.curves.begin(), w.curves.end()).size() == n);
    CHECK(std::set<std::size_t>(w.points.begin(), w.points.end()).size() == n);
    for (std::size_t i = 0; i < n; ++i) {
      const auto& pt = v.config.points[w.points[i]];
      CHECK(std::binary_search(pt.curves.begin(), pt.curves.end(), w.curves[i]));
      CHECK(std::binary_search(pt.curves.begin(), pt.curves.end(), w.curves[(i + 1) % n]));
      const auto& cert = w.certificates[i];
      CHECK(noncyclic_abelian(g, cert.gen_a, cert.gen_b));
    }
  }
}

TEST_CASE("chain criterion") {
  auto k = B("hessian-full");
  CHECK_FALSE(cycstab_check(sigma_configuration(k, Surface::P2), k).passed());
  auto h = B("g4n 6");
  auto ch = sigma_configuration(h, Surface::F0);
  CHECK(ch.curves.empty());
  CHECK(cycstab_check(ch, h).passed());
}

TEST_CASE("verdicts are deterministic") {
  for (const char* s : {"dicyclic 8", "hessian-full", "hessian-q8", "g4n 8", "binary-tetrahedral"}) {
    CAPTURE(s);
    auto a = decide_ifp_birational(spec::parse(s));
    auto b = decide_ifp_birational(spec::parse(s));
    CHECK(a.kind == b.kind);
    CHECK(a.route == b.route);
    CHECK(a.steps == b.steps);
    CHECK(a.cycle.has_value() == b.cycle.has_value());
    if (a.cycle && b.cycle) {
      CHECK(a.cycle->curves == b.cycle->curves);
      CHECK(a.cycle->points == b.cycle->points);
    }
  }
  CHECK(decide_ifp_birational(spec::parse("dicyclic 8")).kind == VerdictKind::IFPBirational);
  CHECK(decide_ifp_birational(spec::parse("hessian-full")).kind == VerdictKind::NotIFPBirational);
  CHECK(decide_ifp_birational(spec::parse("hessian-q8")).kind == VerdictKind::IFPBirational);
}
