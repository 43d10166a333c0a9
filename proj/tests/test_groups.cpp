#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "error.hpp"
#include "group_spec.hpp"
#include "groups.hpp"

using namespace ifp;
using namespace ifp::groups;

namespace {

FiniteGroup B(const std::string& s) { return build(spec::parse(s)); }

}  // namespace

TEST_CASE("orders of named constructors") {
  struct Row {
    const char* spec;
    std::size_t order;
  };
  const Row rows[] = {
      {"cyclic 5", 5},
      {"dicyclic 8", 8},
      {"dihedral 10", 10},
      {"binary-tetrahedral", 24},
      {"binary-octahedral", 48},
      {"binary-icosahedral", 120},
      {"imprimitive-c3 n=7 s=3", 21},
      {"imprimitive-zn2-c3 n=2", 12},
      {"imprimitive-zn2-s3 n=2", 24},
      {"gnks n=6 k=3 s=2", 36},
      {"hessian-kernel", 18},
      {"hessian-c4", 36},
      {"hessian-q8", 72},
      {"hessian-full", 216},
      {"sym2 (icosahedral)", 60},
      {"sym2 (octahedral)", 24},
      {"product-f0 (cyclic 2) (cyclic 3)", 6},
      {"diagonal-f0 (dihedral 10)", 10},
      {"f4n 6", 24},
      {"g4n 8", 32},
      {"h4n n=5 p=2", 20},
      {"i4n n=10 p=3", 40},
      {"j4n n=5 p=2", 20},
      {"twisted-dihedral-f0 5", 10},
  };
  for (const auto& r : rows) {
    CAPTURE(r.spec);
    CHECK(B(r.spec).order() == r.order);
  }
}

TEST_CASE("closure, inverses and Lagrange") {
  for (const char* s : {"binary-octahedral", "hessian-c4", "g4n 8", "f4n 10", "gnks n=6 k=3 s=2", "sym2 (tetrahedral)"}) {
    CAPTURE(s);
    FiniteGroup g = B(s);
    REQUIRE(g.order() <= 300);
    for (std::size_t a = 0; a < g.order(); ++a) {
      CHECK(g.order() % g.element_order(a) == 0);
      CHECK(g.mul(a, g.inverse(a)) == 0);
      for (std::size_t b = 0; b < g.order(); ++b) {
        auto f = g.find(g.element(a) * g.element(b));
        REQUIRE(f.has_value());
        CHECK(*f == g.mul(a, b));
      }
    }
    CHECK(g.element(0).is_identity());
  }
}

TEST_CASE("element orders") {
  FiniteGroup c = B("explicit [z3 0 0; 0 1 0; 0 0 1]");
  CHECK(c.order() == 3);
  CHECK(c.element_order(0) == 1);
  CHECK(c.element_order(1) == 3);
  FiniteGroup t = B("twisted-dihedral-f0 7");
  for (std::size_t x = 0; x < t.order(); ++x)
    if (t.element(x).as_wreath().swap) CHECK(t.element_order(x) == 2);
}

TEST_CASE("wreath composition is associative") {
  std::mt19937 rng(11);
  FiniteGroup g = B("g4n 8"), h = B("f4n 6");
  std::vector<GroupElement> pool(g.elements().begin(), g.elements().end());
  for (const auto& x : h.elements()) pool.push_back(x);
  std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1);
  for (int t = 0; t < 1000; ++t) {
    const auto &a = pool[pick(rng)], &b = pool[pick(rng)], &c = pool[pick(rng)];
    CHECK((a * b) * c == a * (b * c));
  }
}

TEST_CASE("wreath composition law") {
  const Field& f = cyclo::Field::get(5);
  auto d = [&](long e) { return ProjMatrix(cyclo::Matrix::diagonal({cyclo::CycloNum::zeta(f, e), cyclo::CycloNum(f, 1L)})); };
  auto h = GroupElement::wreath(d(1), d(2), true);
  auto g = GroupElement::wreath(d(3), d(4), false);
  // (h1, h2; 1)(g1, g2; 0) = (h1 g2, h2 g1; 1)
  CHECK(h * g == GroupElement::wreath(d(1) * d(4), d(2) * d(3), true));
  CHECK(g * h == GroupElement::wreath(d(3) * d(1), d(4) * d(2), true));
}

TEST_CASE("sym2 representation") {
  const Field& q = cyclo::Field::get(1);
  CHECK(sym2_rep(ProjMatrix(cyclo::Matrix::identity(2, q))).is_identity());
  const Field& f = cyclo::Field::get(7);
  cyclo::CycloNum t = cyclo::CycloNum::zeta(f, 1);
  auto dt = sym2_rep(ProjMatrix(cyclo::Matrix::diagonal({t, cyclo::CycloNum(f, 1L)})));
  CHECK(dt == ProjMatrix(cyclo::Matrix::diagonal({t * t, t, cyclo::CycloNum(f, 1L)})));
  std::vector<cyclo::CycloNum> sw = {cyclo::CycloNum(q, 0L), cyclo::CycloNum(q, 1L), cyclo::CycloNum(q, 1L),
                                     cyclo::CycloNum(q, 0L)};
  auto s = sym2_rep(ProjMatrix(cyclo::Matrix(2, 2, sw)));
  std::vector<cyclo::CycloNum> anti;
  for (long v : {0, 0, 1, 0, 1, 0, 1, 0, 0}) anti.emplace_back(q, v);
  CHECK(s == ProjMatrix(cyclo::Matrix(3, 3, anti)));

  FiniteGroup a5 = pgl2_group(spec::parse("icosahedral"));
  REQUIRE(a5.order() == 60);
  for (const auto& x : a5.elements())
    for (const auto& y : a5.elements()) {
      const auto& hx = x.as_wreath().first;
      const auto& hy = y.as_wreath().first;
      CHECK(sym2_rep(hx * hy) == sym2_rep(hx) * sym2_rep(hy));
    }
}

TEST_CASE("subgroup queries") {
  CHECK(is_cyclic(B("cyclic 6")));
  FiniteGroup k = B("explicit [-1 0 0; 0 1 0; 0 0 1] [1 0 0; 0 -1 0; 0 0 1]");
  CHECK(k.order() == 4);
  CHECK_FALSE(is_cyclic(k, generated_subgroup(k, k.generators())));
  CHECK(is_abelian(k));
  FiniteGroup q8 = B("dicyclic 8");
  CHECK_FALSE(is_abelian(q8));
  CHECK(center(q8).size() == 2);
  // commuting pairs of Q8: nontrivial unordered pairs {g,h} with gh = hg
  std::size_t expect = 0;
  for (std::size_t a = 1; a < 8; ++a)
    for (std::size_t b = a + 1; b < 8; ++b) expect += q8.mul(a, b) == q8.mul(b, a);
  CHECK(commuting_pairs(q8).size() == expect);
}

TEST_CASE("factor intersections") {
  auto p = factor_intersections(B("product-f0 (cyclic 2) (cyclic 3)"));
  CHECK(p.order1 == 2);
  CHECK(p.order2 == 3);
  CHECK(p.untwisted_index == 1);
  auto d = factor_intersections(B("diagonal-f0 (dihedral 10)"));
  CHECK(d.order1 == 1);
  CHECK(d.order2 == 1);
  CHECK(d.untwisted_index == 1);
  CHECK(factor_intersections(B("g4n 6")).untwisted_index == 2);
}

TEST_CASE("spec grammar") {
  for (const char* s : {"cyclic 5", "dicyclic 8", "gnks n=6 k=3 s=2", "product-f0 (cyclic 2) (cyclic 3)",
                        "sym2 (icosahedral)", "h4n n=5 p=2", "explicit [z3 0; 0 1]"}) {
    auto a = spec::parse(s);
    CHECK(spec::to_string(spec::parse(spec::to_string(a))) == spec::to_string(a));
  }
  CHECK_THROWS_AS(spec::parse("nonsense 3"), InvalidInput);
  CHECK_THROWS_AS(spec::parse("product-f0 (cyclic 2"), InvalidInput);
  CHECK_THROWS_AS(B("gnks n=6 k=4 s=2"), InvalidInput);
  CHECK_THROWS_AS(B("h4n n=6 p=1"), InvalidInput);
  CHECK_THROWS_AS(B("i4n n=5 p=2"), InvalidInput);
  CHECK_THROWS_AS(B("imprimitive-c3 n=7 s=2"), InvalidInput);
}

TEST_CASE("cap is enforced") {
  CHECK_THROWS_AS(build(spec::parse("binary-icosahedral"), 50), InvalidInput);
  FiniteGroup g = B("explicit [z3 0; 0 1]");
  CHECK(g.order() == 3);
}
