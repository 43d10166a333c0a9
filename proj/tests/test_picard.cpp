#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "error.hpp"
#include "picard.hpp"

using namespace ifp;
using namespace ifp::picard;
using cyclo::Rational;

namespace {

FiniteGroup B(const std::string& s) { return groups::build(spec::parse(s)); }

// Full construction check: M^T G M = G and M K = K for every element, homomorphism on all pairs.
void check_lattice(const PicLattice& l, const FiniteGroup& g) {
  std::size_t n = l.rank;
  for (std::size_t e = 0; e < g.order(); ++e) {
    const auto& m = l.action[e];
    for (std::size_t i = 0; i < n; ++i) {
      std::int64_t k = 0;
      for (std::size_t j = 0; j < n; ++j) k += m[i][j] * l.canonical[j];
      CHECK(k == l.canonical[i]);
      for (std::size_t j = 0; j < n; ++j) {
        std::int64_t s = 0;
        for (std::size_t a = 0; a < n; ++a)
          for (std::size_t b = 0; b < n; ++b) s += m[a][i] * l.gram[a][b] * m[b][j];
        CHECK(s == l.gram[i][j]);
      }
    }
  }
  CHECK(action_consistent(l, g));
}

}  // namespace

TEST_CASE("base lattices") {
  auto g = B("hessian-kernel");
  auto p2 = pic_of(g, Surface::P2);
  CHECK(p2.rank == 1);
  CHECK(p2.gram == IntMatrix{{1}});
  CHECK(p2.canonical == IntVector{-3});
  for (std::size_t e = 0; e < g.order(); ++e) CHECK(trace2(p2, e) == 1);
  CHECK(invariant_rank(p2, g).averaged == 1);

  auto t = B("twisted-dihedral-f0 3");
  auto f0 = pic_of(t, Surface::F0);
  CHECK(f0.rank == 2);
  CHECK(f0.gram == IntMatrix{{0, 1}, {1, 0}});
  CHECK(f0.canonical == IntVector{-2, -2});
  for (std::size_t e = 0; e < t.order(); ++e)
    CHECK(trace2(f0, e) == (t.element(e).as_wreath().swap ? 0 : 2));
  check_lattice(f0, t);
  auto r = invariant_rank(f0, t);
  CHECK(r.averaged == 1);
  CHECK(r.fixed_subspace == 1);
}

TEST_CASE("blow-up lattice at the Hessian points") {
  auto g = B("hessian-kernel");
  auto c = geometry::sigma_configuration(g, Surface::P2);
  std::vector<BasePoint> centers;
  for (const auto& p : c.points) centers.push_back(p.point.base);
  auto l = pic_of(g, Surface::P2, centers);
  CHECK(l.rank == 13);
  for (std::size_t i = 0; i < 13; ++i)
    for (std::size_t j = 0; j < 13; ++j) {
      std::int64_t expect = (i == j) ? (i == 0 ? 1 : -1) : 0;
      CHECK(l.gram[i][j] == expect);
    }
  CHECK(l.canonical[0] == -3);
  for (std::size_t i = 1; i < 13; ++i) CHECK(l.canonical[i] == 1);
  CHECK(trace2(l, 0) == 13);
  check_lattice(l, g);
  auto r = invariant_rank(l, g);
  CHECK(r.averaged == r.fixed_subspace);
  CHECK(pair(l, l.canonical, l.canonical) == 9 - 12);
}

TEST_CASE("blow-up centers must be invariant") {
  auto g = B("hessian-kernel");
  auto c = geometry::sigma_configuration(g, Surface::P2);
  CHECK_THROWS_AS(pic_of(g, Surface::P2, {c.points[0].point.base}), InvalidInput);
}

TEST_CASE("invariant rank two ways") {
  for (const char* s : {"hessian-full", "hessian-c4", "g4n 8", "f4n 6", "product-f0 (cyclic 2) (cyclic 3)",
                        "diagonal-f0 (dihedral 10)", "twisted-dihedral-f0 4", "imprimitive-c3 n=7 s=3"}) {
    CAPTURE(s);
    auto g = B(s);
    auto surf = geometry::natural_surface(g);
    auto l = pic_of(g, surf);
    check_lattice(l, g);
    auto r = invariant_rank(l, g);
    CHECK(r.averaged == r.fixed_subspace);
    auto c = geometry::sigma_configuration(g, surf);
    if (!c.points.empty()) {
      std::vector<BasePoint> centers;
      for (const auto& p : c.points) centers.push_back(p.point.base);
      auto lb = pic_of(g, surf, centers);
      check_lattice(lb, g);
      auto rb = invariant_rank(lb, g);
      CHECK(rb.averaged == rb.fixed_subspace);
    }
  }
}

TEST_CASE("Lefschetz identity") {
  const auto& f5 = cyclo::Field::get(5);
  using cyclo::CycloNum;
  auto z5 = GroupElement::proj3(groups::ProjMatrix(
      cyclo::Matrix::diagonal({CycloNum::zeta(f5, 1), CycloNum(f5, 1), CycloNum(f5, 1)})));
  auto r = lefschetz(z5, Surface::P2);
  CHECK(r.euler == 3);
  CHECK(r.trace2 == 1);
  CHECK(r.ok);
  auto prod = B("product-f0 (cyclic 2) (cyclic 3)");
  for (std::size_t e = 1; e < prod.order(); ++e) {
    auto x = lefschetz(prod.element(e), Surface::F0);
    CHECK(x.ok);
    if (prod.element_order(e) == 6) {
      CHECK(x.isolated_points == 4);
      CHECK(x.euler == 4);
    }
  }
  auto t = B("twisted-dihedral-f0 3");
  for (std::size_t e = 1; e < t.order(); ++e)
    if (t.element(e).as_wreath().swap) {
      auto x = lefschetz(t.element(e), Surface::F0);
      CHECK(x.euler == 2);
      CHECK(x.trace2 == 0);
    }
  for (const char* s : {"hessian-full", "binary-icosahedral", "g4n 8", "f4n 10", "diagonal-f0 (octahedral)",
                        "sym2 (icosahedral)", "h4n n=10 p=3"}) {
    CAPTURE(s);
    auto g = B(s);
    auto surf = geometry::natural_surface(g);
    for (std::size_t e = 1; e < g.order(); ++e) {
      auto x = lefschetz(g.element(e), surf);
      CHECK(x.euler == 2 + x.trace2);
      CHECK(x.euler == static_cast<std::int64_t>(x.isolated_points + 2 * x.curves));
      CHECK(x.trace2 == base_trace2(g.element(e), surf));
    }
  }
}

TEST_CASE("Hessian model numbers") {
  auto h = hessian_model_canonical();
  CHECK(h.lines == 9);
  CHECK(h.points == 12);
  for (auto n : h.points_per_line) CHECK(n == 4);
  for (auto n : h.lines_per_point) CHECK(n == 3);
  CHECK(h.strict_self_intersections == std::vector<std::int64_t>(9, -3));
  CHECK(h.discrepancies == std::vector<Rational>(9, Rational(1, 3)));
  CHECK(h.k_squared == 0);
  CHECK(h.numerically_trivial);
  CHECK(h.three_k_integral);
  CHECK(h.rank == 13);
  CHECK(h.complement_rank == 4);
  CHECK(h.invariant.averaged == h.invariant.fixed_subspace);
  CHECK(h.linear_triviality == "not certified");
  CHECK_THROWS_AS(hessian_model_canonical(B("hessian-full")), InvariantViolation);
}

TEST_CASE("rational nullspace") {
  std::vector<std::vector<Rational>> m = {{1, 1, 0}, {0, 0, 1}};
  auto n = rational_nullspace(m, 3);
  REQUIRE(n.size() == 1);
  CHECK(n[0][0] + n[0][1] == 0);
  CHECK(n[0][2] == 0);
}
