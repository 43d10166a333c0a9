/** @file geometry.hpp
 *  @brief Fixed loci on P2 and P1 x P1, the configuration of pointwise-fixed curves,
 *  the cycle obstruction, the chain criterion and the resulting verdict.
 *
 *  Models are a base surface together with a list of blown-up base points. The
 *  configuration of a blown-up model is derived combinatorially from the base one.
 */
#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "groups.hpp"

namespace ifp::geometry {

using cyclo::CycloNum;
using cyclo::Matrix;
using groups::FiniteGroup;
using groups::GroupElement;
using Vec = std::vector<CycloNum>;

enum class Surface { P2, F0 };
const char* surface_name(Surface s);
/** P2 for Linear2 (embedded as diag(g, 1)) and Proj3, F0 for Wreath. */
Surface natural_surface(const FiniteGroup& g);

struct P2Point {
  Vec x;
};
struct F0Point {
  Vec x, y;
};
using BasePoint = std::variant<P2Point, F0Point>;

struct Line {
  Vec dual;
};
struct FiberFirst {
  Vec base;  ///< {base} x P1
};
struct FiberSecond {
  Vec base;  ///< P1 x {base}
};
struct GraphCurve {
  Matrix h;  ///< {(h y, y)}, projectively canonical
};
struct Exceptional {
  BasePoint center;
};
using Curve = std::variant<Line, FiberFirst, FiberSecond, GraphCurve, Exceptional>;

/** A base point, or the point of E_base in the tangent direction of `branch`. */
struct Point {
  BasePoint base;
  std::optional<Curve> branch;
};

std::string key(const BasePoint& p);
std::string key(const Curve& c);
std::string key(const Point& p);
std::string describe(const BasePoint& p);
std::string describe(const Curve& c);
std::string describe(const Point& p);

BasePoint act(const GroupElement& g, const BasePoint& p);
Curve act(const GroupElement& g, const Curve& c);
bool contains(const Curve& c, const BasePoint& p);

struct FixedLocus {
  std::vector<Curve> curves;
  std::vector<BasePoint> isolated_points;
};

/** Pointwise-fixed curves and isolated fixed points of a nontrivial element. */
FixedLocus fixed_locus(const GroupElement& g, Surface s);

struct SigmaCurve {
  Curve curve;
  std::vector<std::size_t> stabilizer;  ///< pointwise stabilizer, sorted, contains 0
  std::size_t generator;
  int self_intersection;
  unsigned genus = 0;
};

struct SigmaPoint {
  Point point;
  std::vector<std::size_t> curves;      ///< incident Sigma curves, sorted
  std::vector<std::size_t> stabilizer;  ///< sorted element indices
  bool abelian;
  bool cyclic;
};

struct Configuration {
  Surface surface = Surface::P2;
  std::vector<BasePoint> blown_up;
  std::vector<SigmaCurve> curves;
  std::vector<SigmaPoint> points;
  std::string model() const;
};

Configuration sigma_configuration(const FiniteGroup& g, Surface s);
/** Configuration of the blow-up at a G-invariant set of base points. */
Configuration blow_up(const Configuration& c, const FiniteGroup& g, const std::vector<BasePoint>& centers);

/** Does g (fixing p) act on the tangent plane at p as a scalar? */
bool acts_as_scalar_at(const GroupElement& g, const BasePoint& p, Surface s);

struct PairCertificate {
  std::size_t curve_a, curve_b, point;
  std::size_t gen_a, gen_b;
  unsigned order_a, order_b;
  std::size_t subgroup_order;
  unsigned max_element_order;  ///< < subgroup_order certifies noncyclic
};

struct CycleWitness {
  std::vector<std::size_t> curves;  ///< C_1 .. C_n
  std::vector<std::size_t> points;  ///< points[i] = C_i cap C_{i+1 mod n}
  std::vector<PairCertificate> certificates;
};

std::optional<CycleWitness> criterion_cycle(const Configuration& c, const FiniteGroup& g);
bool verify_cycle_witness(const CycleWitness& w, const Configuration& c, const FiniteGroup& g);

struct CycStabReport {
  bool genus_ok = true;
  bool stabilizers_abelian = true;
  std::vector<std::size_t> nonabelian_points;
  std::vector<bool> in_sigma_tilde;
  std::vector<std::size_t> separated_points;
  std::vector<int> tails;
  std::vector<std::vector<std::size_t>> components;
  bool chains_ok = true;
  std::string failure;
  bool passed() const { return genus_ok && stabilizers_abelian && chains_ok; }
};

CycStabReport cycstab_check(const Configuration& c, const FiniteGroup& g);

enum class VerdictKind { IFPBirational, NotIFPBirational, Unknown };
const char* verdict_name(VerdictKind k);

struct Verdict {
  VerdictKind kind = VerdictKind::Unknown;
  std::string route;
  std::optional<CycleWitness> cycle;
  Configuration config;  ///< the model on which the verdict was reached
  CycStabReport report;
  std::string reason;
  std::vector<std::string> steps;
};

Verdict decide_ifp_birational(const FiniteGroup& g);
Verdict decide_ifp_birational(const spec::GroupSpec& s, std::size_t cap = groups::kDefaultOrderCap);

}  // namespace ifp::geometry
