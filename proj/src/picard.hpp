/** @file picard.hpp
 *  @brief Picard lattices of P2, F0 and blow-ups at invariant point sets, with the
 *  induced group action, trace averaging and the Lefschetz identity.
 */
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "geometry.hpp"

namespace ifp::picard {

using cyclo::Rational;
using geometry::BasePoint;
using geometry::Surface;
using groups::FiniteGroup;
using groups::GroupElement;
using IntMatrix = std::vector<std::vector<std::int64_t>>;
using IntVector = std::vector<std::int64_t>;

struct PicLattice {
  Surface base = Surface::P2;
  std::size_t rank = 0;
  IntMatrix gram;
  IntVector canonical;
  std::vector<std::string> labels;  ///< H | F1 F2, then E1 ...
  std::vector<BasePoint> centers;
  std::vector<IntMatrix> action;    ///< one matrix per group element, columns are images
};

/** Lattice of the base surface blown up at `centers` (a G-invariant set). */
PicLattice pic_of(const FiniteGroup& g, Surface s, const std::vector<BasePoint>& centers = {});

std::int64_t pair(const PicLattice& l, const IntVector& a, const IntVector& b);
Rational pair(const PicLattice& l, const std::vector<Rational>& a, const std::vector<Rational>& b);

/** M^T Gram M = Gram and M K = K for every element; homomorphism on generator pairs. */
bool action_consistent(const PicLattice& l, const FiniteGroup& g);

std::int64_t trace2(const PicLattice& l, std::size_t element);

struct InvariantRank {
  std::int64_t averaged;
  std::int64_t fixed_subspace;
};
/** Both computations; throws InvariantViolation when they differ. */
InvariantRank invariant_rank(const PicLattice& l, const FiniteGroup& g);

/** Trace of g on H^2 of the base surface. */
std::int64_t base_trace2(const GroupElement& g, Surface s);

struct LefschetzResult {
  std::size_t isolated_points = 0, curves = 0;
  std::int64_t euler = 0, trace2 = 0;
  bool ok = false;
};
LefschetzResult lefschetz(const GroupElement& g, Surface s);
bool lefschetz_check(const GroupElement& g, Surface s);

struct HessianModel {
  std::size_t lines = 0, points = 0;
  std::vector<std::size_t> points_per_line, lines_per_point;
  std::vector<std::int64_t> strict_self_intersections;
  std::vector<Rational> discrepancies;
  std::vector<Rational> log_canonical;  ///< K + sum a_i L_i in the lattice basis
  Rational k_squared;
  std::size_t complement_rank = 0;
  bool numerically_trivial = false;
  bool three_k_integral = false;
  std::int64_t rank = 0;
  InvariantRank invariant{0, 0};
  std::string linear_triviality = "not certified";
};

/** The canonical class of the 12-point blow-up of P2 after contracting the 9 Hessian lines. */
HessianModel hessian_model_canonical(const FiniteGroup& hessian_kernel);
HessianModel hessian_model_canonical();

/** Nullspace of a rational matrix, rref basis. */
std::vector<std::vector<Rational>> rational_nullspace(std::vector<std::vector<Rational>> m, std::size_t cols);

}  // namespace ifp::picard
