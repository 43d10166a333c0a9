#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <chrono>
#include <numeric>
#include <random>
#include <set>

#include "error.hpp"
#include "fpgroup.hpp"
#include "oracles.hpp"

using namespace ifp;
using namespace ifp::fpgroup;

namespace {

Word pw(int letter, int k) { return Word(static_cast<std::size_t>(k), letter); }
Word cat(std::initializer_list<Word> ws) {
  Word r;
  for (const auto& w : ws) r.insert(r.end(), w.begin(), w.end());
  return r;
}


BigMatrix M(std::vector<std::vector<long>> v) {
  BigMatrix m;
  for (auto& row : v) {
    m.emplace_back();
    for (long x : row) m.back().push_back(BigInt(x));
  }
  return m;
}

BigInt det(BigMatrix a) {
  std::size_t n = a.size();
  BigInt prev = 1, sgn = 1;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t piv = k;
    while (piv < n && a[piv][k] == 0) ++piv;
    if (piv == n) return 0;
    if (piv != k) {
      std::swap(a[piv], a[k]);
      sgn = -sgn;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j) a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
    prev = a[k][k];
  }
  return sgn * a[n - 1][n - 1];
}

BigMatrix random_unimodular(std::size_t n, std::mt19937& rng) {
  BigMatrix u(n, std::vector<BigInt>(n, 0));
  for (std::size_t i = 0; i < n; ++i) u[i][i] = 1;
  if (n < 2) {
    if (rng() % 2) u[0][0] = -1;
    return u;
  }
  std::uniform_int_distribution<int> c(-3, 3);
  for (int step = 0; step < 8; ++step) {
    std::size_t i = rng() % n, j = rng() % n;
    if (i == j) continue;
    int k = c(rng);
    for (std::size_t r = 0; r < n; ++r) u[r][i] += k * u[r][j];
  }
  return u;
}

}  // namespace

TEST_CASE("presentation plumbing") {
  auto p = make_presentation(2, {{1, -1, 2, 2}, {1, -1}}, {"a", "b"});
  CHECK(p.relators.size() == 1);
  CHECK(p.relators[0] == Word{2, 2});
  CHECK(to_string(p) == "<a, b | b^2>");
  CHECK_THROWS_AS(make_presentation(1, {{2}}), InvalidInput);
  CHECK(free_reduce({1, 2, -2, -1, 1}) == Word{1});
}

TEST_CASE("todd_coxeter examples") {
  auto c5 = todd_coxeter(make_presentation(1, {pw(1, 5)}));
  CHECK(c5.complete);
  CHECK(c5.order == 5);
  auto a4 = make_presentation(2, {pw(1, 2), pw(2, 3), cat({Word{1, 2}, Word{1, 2}, Word{1, 2}})});
  // Oracle: closure of (12)(34), (123) acting on 4 points.
  using Perm = std::array<int, 4>;
  Perm x{1, 0, 3, 2}, y{1, 2, 0, 3};
  std::set<Perm> seen{{0, 1, 2, 3}};
  std::vector<Perm> queue(seen.begin(), seen.end());
  for (std::size_t i = 0; i < queue.size(); ++i)
    for (const Perm& g : {x, y}) {
      Perm h;
      for (int k = 0; k < 4; ++k) h[k] = g[queue[i][k]];
      if (seen.insert(h).second) queue.push_back(h);
    }
  auto r = todd_coxeter(a4);
  CHECK(r.complete);
  CHECK(r.order == queue.size());
  CHECK(r.order == 12);
  auto q8 = make_presentation(2, {pw(1, 4), cat({pw(1, 2), pw(-2, 2)}), Word{-2, 1, 2, 1}});
  CHECK(todd_coxeter(q8).order == 8);
  auto s3 = make_presentation(2, {pw(1, 3), pw(2, 2), Word{1, 2, 1, 2}});
  CHECK(todd_coxeter(s3).order == 6);
  auto free2 = make_presentation(2, {});
  auto over = todd_coxeter(free2, 1000);
  CHECK_FALSE(over.complete);
  auto z = todd_coxeter(make_presentation(1, {}), 500);
  CHECK_FALSE(z.complete);
  CHECK(todd_coxeter(make_presentation(0, {})).order == 1);
}

TEST_CASE("smith_normal_form examples") {
  CHECK(smith_normal_form(M({{2, 0}, {0, 3}})).diagonal == std::vector<BigInt>{1, 6});
  CHECK(smith_normal_form(M({{0}})).diagonal == std::vector<BigInt>{0});
  CHECK(smith_normal_form(M({{3, 0}, {0, 3}})).diagonal == std::vector<BigInt>{3, 3});
  CHECK(smith_normal_form(M({{2, 4, 4}, {-6, 6, 12}, {10, -4, -16}})).diagonal == std::vector<BigInt>{2, 6, 12});
  CHECK(smith_normal_form(M({{1, 2, 3}})).diagonal == std::vector<BigInt>{1});
}

TEST_CASE("smith_normal_form transforms and unimodular invariance") {
  std::mt19937 rng(20261014);
  std::vector<BigMatrix> inputs = {M({{2, 0}, {0, 3}}), M({{3, 0}, {0, 3}}), M({{4, 6}, {6, 9}}),
                                   M({{2, 4, 4}, {-6, 6, 12}, {10, -4, -16}}), M({{1, 2, 3}, {4, 5, 6}}),
                                   M({{0, 0}, {0, 5}, {7, 0}})};
  for (const auto& m : inputs) {
    auto base = smith_normal_form(m);
    auto lm = multiply(multiply(base.left, m), base.right);
    for (std::size_t i = 0; i < lm.size(); ++i)
      for (std::size_t j = 0; j < lm[i].size(); ++j)
        CHECK(lm[i][j] == (i == j ? base.diagonal[i] : BigInt(0)));
    CHECK(abs(det(base.left)) == 1);
    CHECK(abs(det(base.right)) == 1);
    for (std::size_t i = 0; i + 1 < base.diagonal.size(); ++i)
      if (base.diagonal[i] != 0) CHECK(base.diagonal[i + 1] % base.diagonal[i] == 0);
    for (int t = 0; t < 20; ++t) {
      auto u = random_unimodular(m.size(), rng);
      auto v = random_unimodular(m[0].size(), rng);
      CHECK(smith_normal_form(multiply(multiply(u, m), v)).diagonal == base.diagonal);
    }
  }
}

TEST_CASE("abelianization examples") {
  auto z33 = make_presentation(2, {pw(1, 3), pw(2, 3), Word{1, 2, -1, -2}});
  CHECK(abelianization(z33).invariant_factors == std::vector<BigInt>{3, 3});
  auto m = abelianization(mumford_presentation(2, 3));
  CHECK(m.invariant_factors.empty());
  CHECK(m.free_rank == 0);
  auto q8 = make_presentation(2, {pw(1, 4), cat({pw(1, 2), pw(-2, 2)}), Word{-2, 1, 2, 1}});
  CHECK(abelianization(q8).invariant_factors == std::vector<BigInt>{2, 2});
  auto f = abelianization(make_presentation(3, {pw(1, 4)}));
  CHECK(f.invariant_factors == std::vector<BigInt>{4});
  CHECK(f.free_rank == 2);
}

TEST_CASE("mumford presentation shape") {
  auto p = mumford_presentation(2, 3);
  CHECK(p.num_generators == 5);
  CHECK(p.relators[0] == pw(1, 2));
  CHECK(p.relators[1] == pw(2, 3));
  CHECK(todd_coxeter(p).order == 1);
  for (int q = 1; q <= 4; ++q) CHECK(todd_coxeter(mumford_presentation(1, q)).order == 1);
  auto r = todd_coxeter(mumford_presentation(4, 2));
  CHECK(r.complete);
  CHECK(r.order == 2);
  CHECK(todd_coxeter(cyclic_link_presentation(7)).order == 7);
  CHECK_THROWS_AS(mumford_presentation(0, 2), InvalidInput);
}

TEST_CASE("mumford orders against elimination oracle") {
  auto t0 = std::chrono::steady_clock::now();
  for (int p = 2; p <= 7; ++p)
    for (int q = 2; q <= 7; ++q) {
      CAPTURE(p);
      CAPTURE(q);
      auto pres = mumford_presentation(p, q);
      auto tc = todd_coxeter(pres);
      REQUIRE(tc.complete);
      std::uint64_t expect = std::gcd(p, q * (p - 1));
      if (std::gcd(p, q) == 1) CHECK(tc.order == 1);
      if (p <= 6 && q <= 6) {
        auto el = oracle::eliminate_to_cyclic(pres);
        REQUIRE(el.has_value());
        CHECK(*el == expect);
        CHECK(tc.order == expect);
      }
      BigInt ab = 1;
      for (const auto& d : abelianization(pres).invariant_factors) ab *= d;
      CHECK(BigInt(tc.order) % ab == 0);
    }
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  CHECK(secs < 10.0);
}
