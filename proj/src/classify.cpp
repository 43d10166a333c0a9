#include "classify.hpp"

#include <algorithm>
#include <map>
#include <numeric>

#include "error.hpp"

namespace ifp::classify {

using groups::Kind;
using spec::Family;

namespace {

bool is_prime(unsigned n) {
  if (n < 2) return false;
  for (unsigned d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

// Invariant factors from a map prime -> sorted exponents of the cyclic p-parts.
std::vector<std::uint64_t> combine(const std::map<std::uint64_t, std::vector<unsigned>>& parts) {
  std::size_t len = 0;
  for (const auto& [p, e] : parts) len = std::max(len, e.size());
  std::vector<std::uint64_t> d(len, 1);
  for (const auto& [p, e] : parts) {
    // largest exponents go to the last factors
    for (std::size_t i = 0; i < e.size(); ++i) {
      std::uint64_t pk = 1;
      for (unsigned k = 0; k < e[e.size() - 1 - i]; ++k) pk *= p;
      d[len - 1 - i] *= pk;
    }
  }
  std::vector<std::uint64_t> out;
  for (auto x : d)
    if (x > 1) out.push_back(x);
  return out;
}

// orders[i] = order of the i-th element of an abelian group of size n.
std::vector<std::uint64_t> invariants_from_orders(const std::vector<std::uint64_t>& orders) {
  std::uint64_t n = orders.size();
  std::map<std::uint64_t, std::vector<unsigned>> parts;
  std::uint64_t m = n;
  for (std::uint64_t p = 2; p <= m; ++p) {
    if (m % p) continue;
    unsigned a = 0;
    while (m % p == 0) {
      m /= p;
      ++a;
    }
    // c[k] = #{x : x^(p^k) = 1}; c[k] / c[k-1] = p^(number of parts with exponent >= k)
    std::vector<unsigned> at_least;
    std::uint64_t prev = 1, pk = 1;
    for (unsigned k = 1; k <= a; ++k) {
      pk *= p;
      std::uint64_t c = 0;
      for (auto o : orders)
        if (pk % o == 0) ++c;
      std::uint64_t ratio = c / prev;
      unsigned r = 0;
      while (ratio > 1) {
        ensure(ratio % p == 0, "p-power element counts are inconsistent");
        ratio /= p;
        ++r;
      }
      at_least.push_back(r);
      prev = c;
    }
    std::vector<unsigned> exps;
    for (unsigned k = 1; k <= a; ++k) {
      unsigned exactly = at_least[k - 1] - (k < a ? at_least[k] : 0);
      for (unsigned i = 0; i < exactly; ++i) exps.push_back(k);
    }
    std::sort(exps.begin(), exps.end());
    parts[p] = exps;
  }
  return combine(parts);
}

}  // namespace

bool abelian_subgroups_cyclic(const FiniteGroup& g) {
  std::vector<std::size_t> prime_order;
  for (std::size_t x = 1; x < g.order(); ++x)
    if (is_prime(g.element_order(x))) prime_order.push_back(x);
  for (std::size_t i = 0; i < prime_order.size(); ++i) {
    std::size_t a = prime_order[i];
    unsigned p = g.element_order(a);
    std::vector<char> in_a(g.order(), 0);
    std::size_t y = 0;
    for (unsigned k = 0; k < p; ++k) {
      in_a[y] = 1;
      y = g.mul(y, a);
    }
    for (std::size_t j = i + 1; j < prime_order.size(); ++j) {
      std::size_t b = prime_order[j];
      if (g.element_order(b) != p || in_a[b]) continue;
      if (g.mul(a, b) == g.mul(b, a)) return false;
    }
  }
  return true;
}

bool coprime_factor_condition(const FiniteGroup& g) {
  require(g.kind() == Kind::Wreath, "coprime factor condition needs a group acting on P1 x P1");
  for (const auto& x : g.elements()) require(!x.as_wreath().swap, "untwisted group required");
  auto f = groups::factor_intersections(g);
  return std::gcd(f.order1, f.order2) == 1;
}

std::vector<std::uint64_t> abelian_invariants(const FiniteGroup& g, const std::vector<std::size_t>& members) {
  require(groups::is_abelian(g, members), "abelian invariants need an abelian subgroup");
  std::vector<std::uint64_t> orders;
  for (auto x : members) orders.push_back(g.element_order(x));
  return invariants_from_orders(orders);
}

std::vector<std::size_t> derived_subgroup(const FiniteGroup& g) {
  auto comm = [&](std::size_t a, std::size_t b) {
    return g.mul(g.mul(g.inverse(a), g.inverse(b)), g.mul(a, b));
  };
  std::vector<std::size_t> gens;
  for (auto a : g.generators())
    for (auto b : g.generators()) gens.push_back(comm(a, b));
  auto h = groups::generated_subgroup(g, gens);
  // normal closure
  while (true) {
    std::vector<char> in(g.order(), 0);
    for (auto x : h) in[x] = 1;
    bool grew = false;
    for (auto s : g.generators())
      for (auto x : h) {
        std::size_t c = g.mul(g.mul(s, x), g.inverse(s));
        if (!in[c]) {
          gens.push_back(c);
          grew = true;
        }
      }
    if (!grew) return h;
    h = groups::generated_subgroup(g, gens);
  }
}

std::vector<std::uint64_t> abelianization_invariants(const FiniteGroup& g) {
  auto d = derived_subgroup(g);
  std::vector<char> in(g.order(), 0);
  for (auto x : d) in[x] = 1;
  // coset representatives and their orders in G / G'
  std::vector<long> coset(g.order(), -1);
  std::vector<std::uint64_t> orders;
  for (std::size_t x = 0; x < g.order(); ++x) {
    if (coset[x] >= 0) continue;
    long id = static_cast<long>(orders.size());
    for (auto h : d) coset[g.mul(x, h)] = id;
    std::uint64_t k = 1;
    std::size_t y = x;
    while (!in[y]) {
      y = g.mul(y, x);
      ++k;
    }
    orders.push_back(k);
  }
  return invariants_from_orders(orders);
}

const char* clause_name(Clause c) {
  switch (c) {
    case Clause::Clause1:
      return "clause1-gl2-cyclic";
    case Clause::Clause2:
      return "clause2-coprime-product";
    case Clause::Clause3:
      return "clause3-zn-c3";
    case Clause::Clause4:
      return "clause4-f4n-g4n-h4n";
    case Clause::Clause5:
      return "clause5-hessian-sub";
    case Clause::NotListed:
      return "not-listed";
  }
  return "?";
}

namespace {

bool has_cyclic_subgroup_of_index_at_most_2(const FiniteGroup& g) {
  for (std::size_t x = 0; x < g.order(); ++x)
    if (2 * static_cast<std::size_t>(g.element_order(x)) >= g.order()) return true;
  return false;
}

ClauseLabel label(Clause c, std::string detail) { return {c, clause_name(c), std::move(detail)}; }

}  // namespace

ClauseLabel clause_label(const spec::GroupSpec& s, const FiniteGroup& g) {
  bool cyc = abelian_subgroups_cyclic(g);
  if (g.kind() == Kind::Linear2 && cyc) return label(Clause::Clause1, "finite subgroup of GL2");
  if (g.kind() == Kind::Wreath) {
    bool untwisted = std::none_of(g.elements().begin(), g.elements().end(),
                                  [](const groups::GroupElement& x) { return x.as_wreath().swap; });
    if (untwisted && coprime_factor_condition(g)) {
      auto f = groups::factor_intersections(g);
      return label(Clause::Clause2,
                   "factor intersections of orders " + std::to_string(f.order1) + " and " + std::to_string(f.order2));
    }
  }
  auto n_of = [&]() { return std::to_string(s.param("n")); };
  if (s.family == Family::ImprimitiveC3) return label(Clause::Clause3, "n=" + n_of() + " with_center2=false");
  if (s.family == Family::Gnks && s.param("k") == s.param("n"))
    return label(Clause::Clause3, "n=" + n_of() + " with_center2=false (G_{n,n,s})");
  if ((s.family == Family::F4n || s.family == Family::G4n) && s.param("n") % 4 == 2)
    return label(Clause::Clause4, std::string(s.family == Family::F4n ? "F" : "G") + "4n n=" + n_of());
  if (s.family == Family::H4n) return label(Clause::Clause4, "H4n n=" + n_of());
  if (s.family == Family::HessianKernel) return label(Clause::Clause5, "(Z/3)^2:Z/2");
  if (s.family == Family::HessianC4) return label(Clause::Clause5, "(Z/3)^2:Z/4");
  if (s.family == Family::HessianQ8) return label(Clause::Clause5, "(Z/3)^2:Q8");
  if (cyc && has_cyclic_subgroup_of_index_at_most_2(g))
    return label(Clause::Clause1, "gl2-realization: cyclic subgroup of index <= 2");
  return label(Clause::NotListed, "");
}

bool h1_corollary_check(const std::vector<std::uint64_t>& f) {
  for (std::size_t i = 0; i < f.size(); ++i) {
    require(f[i] >= 2, "invariant factors must be at least 2");
    if (i) require(f[i] % f[i - 1] == 0, "invariant factors must form a divisibility chain");
  }
  if (f.size() <= 1) return true;
  if (f.size() != 2) return false;
  if (f[0] == 3 && (f[1] == 3 || f[1] == 6)) return true;
  if (f[0] == 2 && (f[1] == 4 || f[1] % 4 == 2)) return true;
  return false;
}

H1Check h1_check_for(const ClauseLabel& l, const FiniteGroup& g) {
  H1Check r;
  if (l.clause == Clause::NotListed) {
    r.note = "n/a: not in the list";
    return r;
  }
  r.applicable = true;
  r.factors = abelianization_invariants(g);
  r.consistent = h1_corollary_check(r.factors);
  return r;
}

}  // namespace ifp::classify
