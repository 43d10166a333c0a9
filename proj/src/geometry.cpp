#include "geometry.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <set>
#include <unordered_map>

#include "error.hpp"

namespace ifp::geometry {

using cyclo::Field;
using cyclo::Rational;
using groups::Kind;
using groups::ProjMatrix;

const char* surface_name(Surface s) { return s == Surface::P2 ? "P2" : "F0"; }

Surface natural_surface(const FiniteGroup& g) { return g.kind() == Kind::Wreath ? Surface::F0 : Surface::P2; }

namespace {

Vec norm(Vec v) { return cyclo::projective_normalize(std::move(v)); }

std::string vkey(const Vec& v) {
  std::string s = "[";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ":";
    s += v[i].to_string();
  }
  return s + "]";
}

Vec p1_apply(const ProjMatrix& h, const Vec& x) { return norm(h.linear().apply(x)); }
Vec p1_apply(const Matrix& h, const Vec& x) { return norm(h.apply(x)); }

CycloNum det2(const Vec& a, const Vec& b) { return a[0] * b[1] - a[1] * b[0]; }

// Eigenvectors of a finite-order matrix; returns (dimension, basis) per eigenvalue.
std::vector<std::vector<Vec>> eigenspaces(Matrix m) {
  auto order = cyclo::linear_order(m);
  require(order.has_value(), "element lift has no finite linear order");
  unsigned n = m.field().conductor();
  if (n % *order != 0) m = m.coerce(Field::get(static_cast<unsigned>(cyclo::lcm_u64(n, *order))));
  std::vector<std::vector<Vec>> out;
  for (const auto& e : cyclo::unity_eigendata(m, *order)) {
    Matrix shifted = m - Matrix::identity(m.rows(), m.field()).scaled(e.value);
    out.push_back(cyclo::nullspace(shifted));
  }
  return out;
}

std::vector<Vec> p1_fixed_points(const ProjMatrix& h) {
  ensure(!h.is_identity(), "fixed points of the identity of PGL2");
  std::vector<Vec> pts;
  for (const auto& sp : eigenspaces(h.linear())) {
    ensure(sp.size() == 1, "nontrivial PGL2 element with a 2-dimensional eigenspace");
    pts.push_back(norm(sp[0]));
  }
  ensure(pts.size() == 2, "nontrivial finite-order PGL2 element must have 2 fixed points");
  return pts;
}

int base_self_intersection(const Curve& c) {
  switch (c.index()) {
    case 0:
      return 1;
    case 1:
    case 2:
      return 0;
    case 3:
      return 2;
    default:
      return -1;
  }
}

const Vec& p2(const BasePoint& p) { return std::get<P2Point>(p).x; }
const F0Point& f0(const BasePoint& p) { return std::get<F0Point>(p); }

}  // namespace

std::string key(const BasePoint& p) {
  if (p.index() == 0) return "P" + vkey(p2(p));
  return "F" + vkey(f0(p).x) + vkey(f0(p).y);
}

std::string key(const Curve& c) {
  switch (c.index()) {
    case 0:
      return "L" + vkey(std::get<Line>(c).dual);
    case 1:
      return "A" + vkey(std::get<FiberFirst>(c).base);
    case 2:
      return "B" + vkey(std::get<FiberSecond>(c).base);
    case 3:
      return "G" + std::get<GraphCurve>(c).h.to_string();
    default:
      return "E{" + key(std::get<Exceptional>(c).center) + "}";
  }
}

std::string key(const Point& p) {
  std::string k = key(p.base);
  if (p.branch) k += "~" + key(*p.branch);
  return k;
}

std::string describe(const BasePoint& p) {
  if (p.index() == 0) return vkey(p2(p));
  return "(" + vkey(f0(p).x) + ", " + vkey(f0(p).y) + ")";
}

std::string describe(const Curve& c) {
  switch (c.index()) {
    case 0:
      return "line " + vkey(std::get<Line>(c).dual);
    case 1:
      return "fiber {" + vkey(std::get<FiberFirst>(c).base) + "} x P1";
    case 2:
      return "fiber P1 x {" + vkey(std::get<FiberSecond>(c).base) + "}";
    case 3:
      return "graph of " + std::get<GraphCurve>(c).h.to_string();
    default:
      return "exceptional curve over " + describe(std::get<Exceptional>(c).center);
  }
}

std::string describe(const Point& p) {
  if (!p.branch) return describe(p.base);
  return "E over " + describe(p.base) + " in direction of " + describe(*p.branch);
}

BasePoint act(const GroupElement& g, const BasePoint& p) {
  if (p.index() == 0) return P2Point{norm(g.p2_matrix().apply(p2(p)))};
  require(g.kind() == Kind::Wreath, "only wreath elements act on P1 x P1");
  const auto& w = g.as_wreath();
  const auto& q = f0(p);
  if (!w.swap) return F0Point{p1_apply(w.first, q.x), p1_apply(w.second, q.y)};
  return F0Point{p1_apply(w.first, q.y), p1_apply(w.second, q.x)};
}

Curve act(const GroupElement& g, const Curve& c) {
  switch (c.index()) {
    case 0: {
      Matrix adj = g.p2_matrix().adjugate();
      return Line{norm(adj.apply_row(std::get<Line>(c).dual))};
    }
    case 4:
      return Exceptional{act(g, std::get<Exceptional>(c).center)};
    default:
      break;
  }
  require(g.kind() == Kind::Wreath, "only wreath elements act on P1 x P1");
  const auto& w = g.as_wreath();
  if (c.index() == 1) {
    const Vec& a = std::get<FiberFirst>(c).base;
    if (!w.swap) return FiberFirst{p1_apply(w.first, a)};
    return FiberSecond{p1_apply(w.second, a)};
  }
  if (c.index() == 2) {
    const Vec& b = std::get<FiberSecond>(c).base;
    if (!w.swap) return FiberSecond{p1_apply(w.second, b)};
    return FiberFirst{p1_apply(w.first, b)};
  }
  const Matrix& h = std::get<GraphCurve>(c).h;
  const Matrix& g1 = w.first.linear();
  const Matrix& g2 = w.second.linear();
  if (!w.swap) return GraphCurve{(g1 * h * g2.adjugate()).projective_canonical()};
  return GraphCurve{(g1 * h.adjugate() * g2.adjugate()).projective_canonical()};
}

bool contains(const Curve& c, const BasePoint& p) {
  switch (c.index()) {
    case 0:
      return p.index() == 0 && cyclo::dot(std::get<Line>(c).dual, p2(p)).is_zero();
    case 1:
      return p.index() == 1 && f0(p).x == std::get<FiberFirst>(c).base;
    case 2:
      return p.index() == 1 && f0(p).y == std::get<FiberSecond>(c).base;
    case 3:
      return p.index() == 1 && det2(f0(p).x, std::get<GraphCurve>(c).h.apply(f0(p).y)).is_zero();
    default:
      return false;
  }
}

FixedLocus fixed_locus(const GroupElement& g, Surface s) {
  if (g.is_identity()) throw InvalidInput("fixed locus is everything");
  FixedLocus fl;
  if (s == Surface::P2) {
    require(g.kind() != Kind::Wreath, "wreath elements act on F0, not P2");
    for (const auto& sp : eigenspaces(g.p2_matrix())) {
      if (sp.size() == 2)
        fl.curves.push_back(Line{norm(cyclo::cross(sp[0], sp[1]))});
      else if (sp.size() == 1)
        fl.isolated_points.push_back(P2Point{norm(sp[0])});
      else
        throw InvariantViolation("nontrivial element with a 3-dimensional eigenspace");
    }
    const Field& f = g.field();
    for (auto& c : fl.curves)
      for (auto& x : std::get<Line>(c).dual) x = x.coerce(cyclo::common_field(x.field(), f));
    return fl;
  }
  require(g.kind() == Kind::Wreath, "only wreath elements act on F0");
  const auto& w = g.as_wreath();
  if (!w.swap) {
    bool t1 = w.first.is_identity(), t2 = w.second.is_identity();
    if (t1) {
      for (auto& b : p1_fixed_points(w.second)) fl.curves.push_back(FiberSecond{b});
    } else if (t2) {
      for (auto& a : p1_fixed_points(w.first)) fl.curves.push_back(FiberFirst{a});
    } else {
      for (auto& a : p1_fixed_points(w.first))
        for (auto& b : p1_fixed_points(w.second)) fl.isolated_points.push_back(F0Point{a, b});
    }
    return fl;
  }
  GroupElement sq = g * g;
  if (sq.is_identity()) {
    fl.curves.push_back(GraphCurve{w.first.canonical()});
    return fl;
  }
  for (auto& x : p1_fixed_points(sq.as_wreath().first)) fl.isolated_points.push_back(F0Point{x, p1_apply(w.second, x)});
  return fl;
}

std::string Configuration::model() const {
  std::string m = surface_name(surface);
  if (!blown_up.empty()) m += " blown up at " + std::to_string(blown_up.size()) + " point(s)";
  return m;
}

namespace {

std::vector<std::size_t> sorted(std::vector<std::size_t> v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

SigmaPoint make_point(const FiniteGroup& g, Point p, std::vector<std::size_t> curves, std::vector<std::size_t> stab) {
  SigmaPoint sp{std::move(p), sorted(std::move(curves)), sorted(std::move(stab)), false, false};
  sp.abelian = groups::is_abelian(g, sp.stabilizer);
  sp.cyclic = sp.abelian && groups::is_cyclic(g, sp.stabilizer);
  return sp;
}

SigmaCurve make_curve(const FiniteGroup& g, Curve c, std::vector<std::size_t> stab) {
  stab.push_back(0);
  stab = sorted(std::move(stab));
  ensure(groups::is_cyclic(g, stab), "pointwise stabilizer of " + describe(c) + " is not cyclic");
  std::size_t gen = groups::cyclic_generator(g, stab);
  int si = base_self_intersection(c);
  return SigmaCurve{std::move(c), std::move(stab), gen, si, 0};
}

std::vector<BasePoint> intersect(const Configuration& cfg, const FiniteGroup& g, std::size_t i, std::size_t j) {
  const Curve& a = cfg.curves[i].curve;
  const Curve& b = cfg.curves[j].curve;
  if (a.index() > b.index()) return intersect(cfg, g, j, i);
  std::size_t ta = a.index(), tb = b.index();
  if (ta == 0 && tb == 0) return {P2Point{norm(cyclo::cross(std::get<Line>(a).dual, std::get<Line>(b).dual))}};
  if (ta == 1 && tb == 1) return {};
  if (ta == 2 && tb == 2) return {};
  if (ta == 1 && tb == 2) return {F0Point{std::get<FiberFirst>(a).base, std::get<FiberSecond>(b).base}};
  if (ta == 1 && tb == 3) {
    const Vec& x = std::get<FiberFirst>(a).base;
    return {F0Point{x, p1_apply(std::get<GraphCurve>(b).h.adjugate(), x)}};
  }
  if (ta == 2 && tb == 3) {
    const Vec& y = std::get<FiberSecond>(a).base;
    return {F0Point{p1_apply(std::get<GraphCurve>(b).h, y), y}};
  }
  if (ta == 3 && tb == 3) {
    // Graph(h) cap Graph(k) = {(x, k^-1 x) : x fixed by h k^-1}; h k^-1 is the first factor of t_h t_k.
    std::size_t th = cfg.curves[i].stabilizer.at(1), tk = cfg.curves[j].stabilizer.at(1);
    const GroupElement& u = g.element(g.mul(th, tk));
    ensure(!u.as_wreath().swap, "product of two twisted involutions must be untwisted");
    Matrix kinv = std::get<GraphCurve>(b).h.adjugate();
    std::vector<BasePoint> pts;
    for (auto& x : p1_fixed_points(u.as_wreath().first)) pts.push_back(F0Point{x, p1_apply(kinv, x)});
    return pts;
  }
  throw InvariantViolation("unsupported curve pair in intersection");
}

}  // namespace

Configuration sigma_configuration(const FiniteGroup& g, Surface s) {
  require(natural_surface(g) == s, std::string("group of kind ") + groups::kind_name(g.kind()) + " does not act on " +
                                       surface_name(s));
  Configuration cfg{s, {}, {}, {}};
  std::unordered_map<std::string, std::size_t> curve_index;
  std::vector<Curve> curves;
  std::vector<std::vector<std::size_t>> stabs;
  for (std::size_t x = 1; x < g.order(); ++x) {
    for (auto& c : fixed_locus(g.element(x), s).curves) {
      std::string k = key(c);
      auto it = curve_index.find(k);
      if (it == curve_index.end()) {
        it = curve_index.emplace(k, curves.size()).first;
        curves.push_back(c);
        stabs.emplace_back();
      }
      stabs[it->second].push_back(x);
    }
  }
  for (std::size_t i = 0; i < curves.size(); ++i) cfg.curves.push_back(make_curve(g, curves[i], stabs[i]));

  std::unordered_map<std::string, std::size_t> point_index;
  std::vector<BasePoint> pts;
  std::vector<std::vector<std::size_t>> incident;
  for (std::size_t i = 0; i < cfg.curves.size(); ++i)
    for (std::size_t j = i + 1; j < cfg.curves.size(); ++j)
      for (auto& p : intersect(cfg, g, i, j)) {
        ensure(contains(cfg.curves[i].curve, p) && contains(cfg.curves[j].curve, p),
               "computed intersection point does not lie on both curves");
        std::string k = key(p);
        auto it = point_index.find(k);
        if (it == point_index.end()) {
          it = point_index.emplace(k, pts.size()).first;
          pts.push_back(p);
          incident.emplace_back();
        }
        incident[it->second].push_back(i);
        incident[it->second].push_back(j);
      }

  if (!pts.empty()) {
    std::vector<std::vector<std::uint32_t>> gen_perms;
    for (std::size_t sidx : g.generators()) {
      std::vector<std::uint32_t> perm(pts.size());
      for (std::size_t p = 0; p < pts.size(); ++p) {
        auto it = point_index.find(key(act(g.element(sidx), pts[p])));
        ensure(it != point_index.end(), "intersection points are not permuted by the group");
        perm[p] = static_cast<std::uint32_t>(it->second);
      }
      gen_perms.push_back(std::move(perm));
    }
    auto perms = g.extend_action(gen_perms);
    for (std::size_t p = 0; p < pts.size(); ++p) {
      std::vector<std::size_t> stab;
      for (std::size_t x = 0; x < g.order(); ++x)
        if (perms[x][p] == p) stab.push_back(x);
      cfg.points.push_back(make_point(g, Point{pts[p], std::nullopt}, incident[p], stab));
    }
  }
  return cfg;
}

bool acts_as_scalar_at(const GroupElement& g, const BasePoint& p, Surface s) {
  if (s == Surface::P2) {
    const Vec& x = p2(p);
    const Field& f = x[0].field();
    auto v = [&](long a, long b, long c) { return Vec{CycloNum(f, a), CycloNum(f, b), CycloNum(f, c)}; };
    std::vector<Vec> cand = {v(1, 0, 0), v(0, 1, 0), v(0, 0, 1), v(1, 1, 1), v(1, 2, 3), v(1, -1, 2), v(2, 3, -1)};
    std::vector<std::string> seen;
    std::vector<Vec> lines;
    for (const auto& q : cand) {
      Vec l = cyclo::cross(x, q);
      if (cyclo::is_zero_vector(l)) continue;
      l = norm(l);
      std::string k = vkey(l);
      if (std::find(seen.begin(), seen.end(), k) != seen.end()) continue;
      seen.push_back(k);
      lines.push_back(l);
      if (lines.size() == 3) break;
    }
    ensure(lines.size() == 3, "could not find three lines through a point");
    for (const auto& l : lines)
      if (key(act(g, Curve{Line{l}})) != key(Curve{Line{l}})) return false;
    return true;
  }
  const auto& w = g.as_wreath();
  if (w.swap) return false;
  auto multiplier = [](const ProjMatrix& h, const Vec& x) {
    Vec hx = h.linear().apply(x);
    std::size_t i = x[0].is_zero() ? 1 : 0;
    CycloNum lambda = hx[i] / x[i];
    return h.linear().det() / (lambda * lambda);
  };
  const auto& q = f0(p);
  return multiplier(w.first, q.x) == multiplier(w.second, q.y);
}

Configuration blow_up(const Configuration& c, const FiniteGroup& g, const std::vector<BasePoint>& centers) {
  std::set<std::string> ckeys;
  for (const auto& p : centers) {
    require((p.index() == 0) == (c.surface == Surface::P2), "blow-up center lies on the wrong surface");
    ckeys.insert(key(p));
  }
  for (const auto& p : c.blown_up) require(!ckeys.count(key(p)), "point is already blown up");
  for (const auto& p : centers)
    for (std::size_t sidx : g.generators())
      require(ckeys.count(key(act(g.element(sidx), p))) > 0, "blow-up centers are not G-invariant");

  Configuration out{c.surface, c.blown_up, c.curves, {}};
  out.blown_up.insert(out.blown_up.end(), centers.begin(), centers.end());
  for (const auto& sp : c.points)
    if (sp.point.branch || !ckeys.count(key(sp.point.base))) out.points.push_back(sp);

  for (const auto& p : centers) {
    std::vector<std::size_t> gp;
    std::string pk = key(p);
    for (std::size_t x = 0; x < g.order(); ++x)
      if (key(act(g.element(x), p)) == pk) gp.push_back(x);
    std::vector<std::size_t> through;
    for (std::size_t i = 0; i < c.curves.size(); ++i)
      if (contains(c.curves[i].curve, p)) through.push_back(i);
    for (auto i : through) out.curves[i].self_intersection -= 1;
    std::vector<std::size_t> scalars;
    for (auto x : gp)
      if (x != 0 && acts_as_scalar_at(g.element(x), p, c.surface)) scalars.push_back(x);
    if (scalars.empty()) continue;
    std::size_t e = out.curves.size();
    SigmaCurve ec = make_curve(g, Exceptional{p}, scalars);
    ec.self_intersection = -1;
    out.curves.push_back(std::move(ec));
    for (auto i : through) {
      std::vector<std::size_t> stab;
      std::string ck = key(c.curves[i].curve);
      for (auto x : gp)
        if (key(act(g.element(x), c.curves[i].curve)) == ck) stab.push_back(x);
      out.points.push_back(make_point(g, Point{p, c.curves[i].curve}, {i, e}, stab));
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Cycle obstruction

namespace {

struct PairInfo {
  bool noncyclic_abelian;
  std::size_t order;
  unsigned max_order;
};

PairInfo pair_info(const FiniteGroup& g, std::size_t a, std::size_t b) {
  if (g.mul(a, b) != g.mul(b, a)) return {false, 0, 0};
  auto h = groups::generated_subgroup(g, {a, b});
  unsigned mo = 0;
  for (auto x : h) mo = std::max(mo, g.element_order(x));
  return {mo < h.size(), h.size(), mo};
}

struct Edge {
  std::size_t to, point;
};

}  // namespace

std::optional<CycleWitness> criterion_cycle(const Configuration& c, const FiniteGroup& g) {
  std::size_t n = c.curves.size();
  std::vector<std::vector<Edge>> adj(n);
  std::map<std::pair<std::size_t, std::size_t>, PairInfo> cache;
  auto info = [&](std::size_t i, std::size_t j) -> const PairInfo& {
    auto k = std::make_pair(std::min(i, j), std::max(i, j));
    auto it = cache.find(k);
    if (it == cache.end()) it = cache.emplace(k, pair_info(g, c.curves[k.first].generator, c.curves[k.second].generator)).first;
    return it->second;
  };
  for (std::size_t p = 0; p < c.points.size(); ++p) {
    const auto& cs = c.points[p].curves;
    for (std::size_t x = 0; x < cs.size(); ++x)
      for (std::size_t y = x + 1; y < cs.size(); ++y)
        if (info(cs[x], cs[y]).noncyclic_abelian) {
          adj[cs[x]].push_back({cs[y], p});
          adj[cs[y]].push_back({cs[x], p});
        }
  }
  for (auto& a : adj)
    std::sort(a.begin(), a.end(), [](const Edge& l, const Edge& r) {
      return l.to != r.to ? l.to < r.to : l.point < r.point;
    });

  const std::size_t budget = 2000000;
  std::size_t steps = 0;
  std::vector<std::size_t> path, via;
  std::vector<char> on_path(n, 0);
  std::set<std::size_t> used_points;
  std::optional<CycleWitness> found;

  std::function<bool(std::size_t, std::size_t)> dfs = [&](std::size_t start, std::size_t v) -> bool {
    if (++steps > budget) throw InvariantViolation("cycle search budget exceeded");
    for (const auto& e : adj[v]) {
      if (used_points.count(e.point)) continue;
      if (e.to == start && path.size() >= 2) {
        CycleWitness w;
        w.curves = path;
        w.points = via;
        w.points.push_back(e.point);
        found = w;
        return true;
      }
      if (e.to <= start || on_path[e.to]) continue;
      on_path[e.to] = 1;
      path.push_back(e.to);
      via.push_back(e.point);
      used_points.insert(e.point);
      if (dfs(start, e.to)) return true;
      used_points.erase(e.point);
      via.pop_back();
      path.pop_back();
      on_path[e.to] = 0;
    }
    return false;
  };
  for (std::size_t s = 0; s < n && !found; ++s) {
    path = {s};
    via.clear();
    used_points.clear();
    std::fill(on_path.begin(), on_path.end(), 0);
    on_path[s] = 1;
    dfs(s, s);
  }
  if (!found) return std::nullopt;
  std::size_t len = found->curves.size();
  for (std::size_t i = 0; i < len; ++i) {
    std::size_t a = found->curves[i], b = found->curves[(i + 1) % len];
    const auto& pi = info(a, b);
    std::size_t ga = c.curves[a].generator, gb = c.curves[b].generator;
    found->certificates.push_back({a, b, found->points[i], ga, gb, g.element_order(ga), g.element_order(gb), pi.order,
                                   pi.max_order});
  }
  return found;
}

bool verify_cycle_witness(const CycleWitness& w, const Configuration& c, const FiniteGroup& g) {
  std::size_t n = w.curves.size();
  if (n < 2 || w.points.size() != n || w.certificates.size() != n) return false;
  std::set<std::size_t> cs(w.curves.begin(), w.curves.end()), ps(w.points.begin(), w.points.end());
  if (cs.size() != n || ps.size() != n) return false;
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t a = w.curves[i], b = w.curves[(i + 1) % n], p = w.points[i];
    if (a >= c.curves.size() || b >= c.curves.size() || p >= c.points.size()) return false;
    const auto& inc = c.points[p].curves;
    if (!std::count(inc.begin(), inc.end(), a) || !std::count(inc.begin(), inc.end(), b)) return false;
    // the point must lie on both curves geometrically (base points only)
    if (!c.points[p].point.branch &&
        !(contains(c.curves[a].curve, c.points[p].point.base) && contains(c.curves[b].curve, c.points[p].point.base)))
      return false;
    std::size_t ga = c.curves[a].generator, gb = c.curves[b].generator;
    if (g.mul(ga, gb) != g.mul(gb, ga)) return false;
    auto h = groups::generated_subgroup(g, {ga, gb});
    if (groups::is_cyclic(g, h)) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Chain criterion

CycStabReport cycstab_check(const Configuration& c, const FiniteGroup& g) {
  (void)g;
  CycStabReport r;
  std::size_t n = c.curves.size();
  for (const auto& cv : c.curves)
    if (cv.genus != 0) r.genus_ok = false;
  for (std::size_t p = 0; p < c.points.size(); ++p)
    if (!c.points[p].abelian) r.nonabelian_points.push_back(p);
  r.stabilizers_abelian = r.nonabelian_points.empty();

  std::vector<std::size_t> npoints(n, 0);
  for (const auto& sp : c.points)
    for (auto i : sp.curves) ++npoints[i];
  r.in_sigma_tilde.resize(n);
  for (std::size_t i = 0; i < n; ++i) r.in_sigma_tilde[i] = npoints[i] <= 2;

  r.tails.assign(n, 0);
  std::vector<std::size_t> deg(n, 0);
  std::vector<std::size_t> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  std::function<std::size_t(std::size_t)> find = [&](std::size_t x) {
    return parent[x] == x ? x : parent[x] = find(parent[x]);
  };
  std::vector<std::size_t> edges_in(n, 0);
  std::vector<std::pair<std::size_t, std::size_t>> edge_list;
  for (std::size_t p = 0; p < c.points.size(); ++p) {
    const auto& sp = c.points[p];
    bool on_tilde = std::any_of(sp.curves.begin(), sp.curves.end(), [&](std::size_t i) { return r.in_sigma_tilde[i]; });
    if (sp.cyclic && on_tilde) {
      r.separated_points.push_back(p);
      std::size_t best = n;
      for (auto i : sp.curves)
        if (r.in_sigma_tilde[i] && (best == n || r.tails[i] < r.tails[best])) best = i;
      ++r.tails[best];
      continue;
    }
    if (sp.curves.size() > 2) {
      r.chains_ok = false;
      if (r.failure.empty())
        r.failure = "point " + std::to_string(p) + " lies on " + std::to_string(sp.curves.size()) + " curves";
    }
    for (std::size_t x = 0; x + 1 < sp.curves.size(); ++x) {
      std::size_t a = sp.curves[x], b = sp.curves[x + 1];
      edge_list.emplace_back(a, b);
    }
    for (auto i : sp.curves) ++deg[i];
  }
  for (auto [a, b] : edge_list) parent[find(a)] = find(b);
  std::map<std::size_t, std::vector<std::size_t>> comp;
  for (std::size_t i = 0; i < n; ++i) comp[find(i)].push_back(i);
  for (auto [a, b] : edge_list) ++edges_in[find(a)];
  for (auto& [root, members] : comp) {
    if (edges_in[root] + 1 != members.size()) {
      r.chains_ok = false;
      if (r.failure.empty()) r.failure = "component containing curve " + std::to_string(members[0]) + " has a cycle";
    }
    for (auto i : members)
      if (deg[i] + static_cast<std::size_t>(r.tails[i]) > 2) {
        r.chains_ok = false;
        if (r.failure.empty()) r.failure = "curve " + std::to_string(i) + " has degree > 2 after separation";
      }
    // order the chain from an end
    std::vector<std::size_t> order;
    if (members.size() == 1 || !r.chains_ok) {
      order = members;
    } else {
      std::map<std::size_t, std::vector<std::size_t>> nb;
      for (auto [a, b] : edge_list)
        if (find(a) == root) {
          nb[a].push_back(b);
          nb[b].push_back(a);
        }
      std::size_t cur = members[0];
      for (auto i : members)
        if (nb[i].size() <= 1) {
          cur = i;
          break;
        }
      std::size_t prev = n;
      while (true) {
        order.push_back(cur);
        std::size_t next = n;
        for (auto y : nb[cur])
          if (y != prev) next = y;
        if (next == n || order.size() > members.size()) break;
        prev = cur;
        cur = next;
      }
    }
    r.components.push_back(order);
  }
  if (!r.stabilizers_abelian && r.failure.empty())
    r.failure = std::to_string(r.nonabelian_points.size()) + " intersection point(s) with nonabelian stabilizer";
  if (!r.genus_ok && r.failure.empty()) r.failure = "a fixed curve has positive genus";
  return r;
}

// ---------------------------------------------------------------------------
// Verdict

const char* verdict_name(VerdictKind k) {
  switch (k) {
    case VerdictKind::IFPBirational:
      return "ifp-birational";
    case VerdictKind::NotIFPBirational:
      return "not-ifp-birational";
    default:
      return "unknown";
  }
}

namespace {

bool decide_on(const Configuration& cfg, const FiniteGroup& g, Verdict& v, const std::string& label) {
  v.config = cfg;
  for (const auto& c : cfg.curves)
    if (c.genus != 0) {
      v.kind = VerdictKind::NotIFPBirational;
      v.route = "positive-genus fixed curve on " + label;
      return true;
    }
  v.steps.push_back("genus check on " + label + ": all fixed curves rational");
  if (auto w = criterion_cycle(cfg, g)) {
    ensure(verify_cycle_witness(*w, cfg, g), "cycle witness failed re-validation");
    v.kind = VerdictKind::NotIFPBirational;
    v.cycle = w;
    v.route = "cycle obstruction on " + label;
    v.steps.push_back("cycle obstruction fired on " + label);
    return true;
  }
  v.steps.push_back("no cycle obstruction on " + label);
  v.report = cycstab_check(cfg, g);
  if (v.report.passed()) {
    v.kind = VerdictKind::IFPBirational;
    v.route = "chain criterion on " + label;
    v.steps.push_back("chain criterion passed on " + label);
    return true;
  }
  v.steps.push_back("chain criterion failed on " + label + ": " + v.report.failure);
  return false;
}

}  // namespace

Verdict decide_ifp_birational(const FiniteGroup& g) {
  Verdict v;
  Surface s = natural_surface(g);
  Configuration cfg = sigma_configuration(g, s);
  std::string label = surface_name(s);
  if (g.kind() == Kind::Linear2) {
    const Field& f = g.field();
    BasePoint origin = P2Point{Vec{CycloNum(f, 0), CycloNum(f, 0), CycloNum(f, 1)}};
    cfg = blow_up(cfg, g, {origin});
    label = "P2 blown up at the origin";
  }
  if (decide_on(cfg, g, v, label)) return v;
  if (!v.report.stabilizers_abelian) {
    std::vector<BasePoint> centers;
    bool base_only = true;
    for (auto p : v.report.nonabelian_points) {
      if (cfg.points[p].point.branch) base_only = false;
      centers.push_back(cfg.points[p].point.base);
    }
    if (base_only) {
      Configuration next = blow_up(cfg, g, centers);
      std::string l2 = label + " and at " + std::to_string(centers.size()) + " point(s) with nonabelian stabilizer";
      v.steps.push_back("blowing up " + std::to_string(centers.size()) + " point(s) with nonabelian stabilizer");
      if (decide_on(next, g, v, l2)) return v;
    }
  }
  v.kind = VerdictKind::Unknown;
  v.reason = v.report.failure;
  v.route = "undecided";
  return v;
}

Verdict decide_ifp_birational(const spec::GroupSpec& s, std::size_t cap) {
  return decide_ifp_birational(groups::build(s, cap));
}

}  // namespace ifp::geometry
