/** @file birational.hpp
 *  @brief Cyclic quotient germs 1/r(p,q): blow-up splitting, separation,
 *  Hirzebruch-Jung chains, discrepancies and negative definiteness.
 */
#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "cyclotomic.hpp"

namespace ifp::birational {

using cyclo::BigInt;
using cyclo::Rational;

/** Type 1/r(p, q); weights are residues in [0, r). */
struct Germ {
  std::int64_t r = 1, p = 0, q = 0;
  friend bool operator==(const Germ&, const Germ&) = default;
  std::string to_string() const;
};

/** Reduces weights mod r; throws on r < 1. */
Germ make_germ(std::int64_t r, std::int64_t p, std::int64_t q);

/** 1/r(1, q p^-1). Throws unless gcd(r, p) = 1. */
Germ normalize_germ(const Germ& g);

struct BlowupPart {
  Germ raw;              ///< weights before faithful reduction
  Germ faithful;         ///< induced faithful action
  std::int64_t kernel;   ///< reduction factor gcd(r, p', q')
};

/** The two points 1/r(p, q-p) and 1/r(p-q, q) on the exceptional curve. */
std::pair<BlowupPart, BlowupPart> blowup_germ(const Germ& g);

/** Least t >= 0 with gcd(r, (t+1)p - q) = 1. */
std::int64_t separation_exponent(const Germ& g);

/** r/a = b1 - 1/(b2 - ...), all bi >= 2. */
std::vector<std::int64_t> hj_expand(std::int64_t r, std::int64_t a);
std::pair<std::int64_t, std::int64_t> hj_contract(const std::vector<std::int64_t>& chain);

/** Intersection matrix of a chain -b1, ..., -bk. */
std::vector<std::vector<std::int64_t>> chain_matrix(const std::vector<std::int64_t>& chain);

bool is_negative_definite(const std::vector<std::vector<std::int64_t>>& m);

/** Solves sum_i a_i (E_i.E_j) = E_j^2 + 2 for smooth rational curves. */
std::vector<Rational> discrepancies(const std::vector<std::vector<std::int64_t>>& intersection);
std::vector<Rational> chain_discrepancies(const std::vector<std::int64_t>& chain);

/** Exact solution of a nonsingular rational system. */
std::vector<Rational> solve(std::vector<std::vector<Rational>> a, std::vector<Rational> b);

}  // namespace ifp::birational
