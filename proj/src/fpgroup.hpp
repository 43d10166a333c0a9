/** @file fpgroup.hpp
 *  @brief Finitely presented groups: coset enumeration, Smith normal form,
 *  abelianization and the star-shaped link presentations.
 */
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "cyclotomic.hpp"

namespace ifp::fpgroup {

using cyclo::BigInt;
/** Letters are +-(generator index + 1). */
using Word = std::vector<int>;

struct Presentation {
  int num_generators = 0;
  std::vector<Word> relators;
  std::vector<std::string> names;
};

Word free_reduce(const Word& w);
/** Validates letters, freely reduces and drops empty relators. */
Presentation make_presentation(int num_generators, std::vector<Word> relators, std::vector<std::string> names = {});
std::string to_string(const Presentation& p);

inline constexpr std::size_t kDefaultCosetCap = 1000000;

struct CosetResult {
  bool complete = false;
  std::uint64_t order = 0;       ///< valid when complete
  std::size_t cosets_defined = 0;
};

/** Coset enumeration over the trivial subgroup (HLT with coincidence processing). */
CosetResult todd_coxeter(const Presentation& p, std::size_t coset_cap = kDefaultCosetCap);

using BigMatrix = std::vector<std::vector<BigInt>>;

struct SmithForm {
  std::vector<BigInt> diagonal;  ///< length min(rows, cols), d1 | d2 | ...
  BigMatrix left, right;         ///< unimodular, left * M * right = diag
};
SmithForm smith_normal_form(const BigMatrix& m);

struct AbelianInvariants {
  std::vector<BigInt> invariant_factors;  ///< each >= 2
  std::size_t free_rank = 0;
};
AbelianInvariants abelianization(const Presentation& p);

/** Generators a, b, c_1..c_q; relators a^p, b^(pq-q), c_j^p, a c_j, b c_j^-1. */
Presentation mumford_presentation(int p, int q);
/** <x | x^r>. */
Presentation cyclic_link_presentation(int r);

BigMatrix multiply(const BigMatrix& a, const BigMatrix& b);

}  // namespace ifp::fpgroup
