/** @file classify.hpp
 *  @brief Group-theoretic predicates and the clause labels of the classification list.
 */
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "groups.hpp"

namespace ifp::classify {

using groups::FiniteGroup;

/** True iff no subgroup (Z/p)^2 exists. */
bool abelian_subgroups_cyclic(const FiniteGroup& g);

/** gcd(|G cap PGL2 x 1|, |G cap 1 x PGL2|) = 1 for an untwisted group on P1 x P1. */
bool coprime_factor_condition(const FiniteGroup& g);

/** Invariant factors d1 | d2 | ... (each > 1) of an abelian subset, from p-power element counts. */
std::vector<std::uint64_t> abelian_invariants(const FiniteGroup& g, const std::vector<std::size_t>& members);

/** Commutator subgroup, sorted indices. */
std::vector<std::size_t> derived_subgroup(const FiniteGroup& g);

/** Invariant factors of G / [G, G]. */
std::vector<std::uint64_t> abelianization_invariants(const FiniteGroup& g);

enum class Clause { Clause1, Clause2, Clause3, Clause4, Clause5, NotListed };

struct ClauseLabel {
  Clause clause = Clause::NotListed;
  std::string name;    ///< e.g. "clause1-gl2-cyclic"
  std::string detail;  ///< family parameters or the route taken
};

const char* clause_name(Clause c);

ClauseLabel clause_label(const spec::GroupSpec& s, const FiniteGroup& g);

struct H1Check {
  bool applicable = false;
  std::vector<std::uint64_t> factors;  ///< invariant factors of H1(G, Z) = G^ab
  bool consistent = true;
  std::string note;
};

/** True iff the abelian group with these invariant factors is (Z/3)^2, Z/3 x Z/6,
 *  Z/2 x Z/n (n = 4 or n = 2 mod 4) or cyclic. */
bool h1_corollary_check(const std::vector<std::uint64_t>& invariant_factors);

/** G^ab of a listed group, checked against h1_corollary_check. */
H1Check h1_check_for(const ClauseLabel& label, const FiniteGroup& g);

}  // namespace ifp::classify
