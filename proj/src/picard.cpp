#include "picard.hpp"

#include <map>

#include "birational.hpp"
#include "error.hpp"

namespace ifp::picard {

using groups::Kind;

namespace {

IntMatrix identity(std::size_t n) {
  IntMatrix m(n, IntVector(n, 0));
  for (std::size_t i = 0; i < n; ++i) m[i][i] = 1;
  return m;
}

IntMatrix multiply(const IntMatrix& a, const IntMatrix& b) {
  std::size_t n = a.size(), k = b.size(), m = b.empty() ? 0 : b[0].size();
  IntMatrix c(n, IntVector(m, 0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t l = 0; l < k; ++l)
      if (a[i][l])
        for (std::size_t j = 0; j < m; ++j) c[i][j] += a[i][l] * b[l][j];
  return c;
}

IntMatrix transpose(const IntMatrix& a) {
  IntMatrix t(a.empty() ? 0 : a[0].size(), IntVector(a.size()));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a[i].size(); ++j) t[j][i] = a[i][j];
  return t;
}

IntVector multiply(const IntMatrix& a, const IntVector& v) {
  IntVector out(a.size(), 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < v.size(); ++j) out[i] += a[i][j] * v[j];
  return out;
}

}  // namespace

std::vector<std::vector<Rational>> rational_nullspace(std::vector<std::vector<Rational>> m, std::size_t cols) {
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t c = 0; c < cols && row < m.size(); ++c) {
    std::size_t piv = row;
    while (piv < m.size() && m[piv][c] == 0) ++piv;
    if (piv == m.size()) continue;
    std::swap(m[piv], m[row]);
    Rational inv = 1 / m[row][c];
    for (auto& x : m[row]) x *= inv;
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (i == row || m[i][c] == 0) continue;
      Rational f = m[i][c];
      for (std::size_t j = 0; j < cols; ++j) m[i][j] -= f * m[row][j];
    }
    pivots.push_back(c);
    ++row;
  }
  std::vector<std::vector<Rational>> basis;
  std::vector<char> is_pivot(cols, 0);
  for (auto p : pivots) is_pivot[p] = 1;
  for (std::size_t free = 0; free < cols; ++free) {
    if (is_pivot[free]) continue;
    std::vector<Rational> v(cols, Rational(0));
    v[free] = 1;
    for (std::size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = -m[r][free];
    basis.push_back(std::move(v));
  }
  return basis;
}

PicLattice pic_of(const FiniteGroup& g, Surface s, const std::vector<BasePoint>& centers) {
  PicLattice l;
  l.base = s;
  IntMatrix swap_block;
  if (s == Surface::P2) {
    require(g.kind() != Kind::Wreath, "P2 lattice needs a group acting on P2");
    l.gram = {{1}};
    l.canonical = {-3};
    l.labels = {"H"};
  } else {
    require(g.kind() == Kind::Wreath, "F0 lattice needs a group acting on P1 x P1");
    l.gram = {{0, 1}, {1, 0}};
    l.canonical = {-2, -2};
    l.labels = {"F1", "F2"};
  }
  std::size_t base_rank = l.gram.size();
  std::map<std::string, std::size_t> index;
  for (const auto& c : centers) {
    require((c.index() == 0) == (s == Surface::P2), "blow-up center lies on the wrong surface");
    require(index.emplace(geometry::key(c), index.size()).second, "blow-up centers must be distinct");
  }
  l.centers = centers;
  l.rank = base_rank + centers.size();
  IntMatrix gram(l.rank, IntVector(l.rank, 0));
  for (std::size_t i = 0; i < base_rank; ++i)
    for (std::size_t j = 0; j < base_rank; ++j) gram[i][j] = l.gram[i][j];
  for (std::size_t i = 0; i < centers.size(); ++i) {
    gram[base_rank + i][base_rank + i] = -1;
    l.canonical.push_back(1);
    l.labels.push_back("E" + std::to_string(i + 1));
  }
  l.gram = std::move(gram);

  l.action.reserve(g.order());
  for (std::size_t x = 0; x < g.order(); ++x) {
    const GroupElement& e = g.element(x);
    IntMatrix m(l.rank, IntVector(l.rank, 0));
    if (s == Surface::F0 && e.as_wreath().swap) {
      m[0][1] = m[1][0] = 1;
    } else {
      for (std::size_t i = 0; i < base_rank; ++i) m[i][i] = 1;
    }
    for (std::size_t i = 0; i < centers.size(); ++i) {
      auto it = index.find(geometry::key(geometry::act(e, centers[i])));
      require(it != index.end(), "blow-up centers are not G-stable");
      m[base_rank + it->second][base_rank + i] = 1;
    }
    l.action.push_back(std::move(m));
  }
  return l;
}

std::int64_t pair(const PicLattice& l, const IntVector& a, const IntVector& b) {
  std::int64_t s = 0;
  for (std::size_t i = 0; i < l.rank; ++i)
    for (std::size_t j = 0; j < l.rank; ++j) s += a[i] * l.gram[i][j] * b[j];
  return s;
}

Rational pair(const PicLattice& l, const std::vector<Rational>& a, const std::vector<Rational>& b) {
  Rational s = 0;
  for (std::size_t i = 0; i < l.rank; ++i)
    for (std::size_t j = 0; j < l.rank; ++j)
      if (l.gram[i][j]) s += a[i] * Rational(static_cast<long>(l.gram[i][j])) * b[j];
  return s;
}

bool action_consistent(const PicLattice& l, const FiniteGroup& g) {
  for (const auto& m : l.action) {
    if (multiply(multiply(transpose(m), l.gram), m) != l.gram) return false;
    if (multiply(m, l.canonical) != l.canonical) return false;
  }
  for (std::size_t x = 0; x < g.order(); ++x)
    for (auto s : g.generators())
      if (l.action[g.mul(x, s)] != multiply(l.action[x], l.action[s])) return false;
  return l.action.empty() || l.action[0] == identity(l.rank);
}

std::int64_t trace2(const PicLattice& l, std::size_t element) {
  std::int64_t t = 0;
  for (std::size_t i = 0; i < l.rank; ++i) t += l.action.at(element)[i][i];
  return t;
}

InvariantRank invariant_rank(const PicLattice& l, const FiniteGroup& g) {
  std::int64_t sum = 0;
  for (std::size_t x = 0; x < g.order(); ++x) sum += trace2(l, x);
  auto n = static_cast<std::int64_t>(g.order());
  if (sum % n != 0) throw InvariantViolation("representation inconsistency: average trace is not an integer");
  std::vector<std::vector<Rational>> rows;
  for (auto s : g.generators())
    for (std::size_t i = 0; i < l.rank; ++i) {
      std::vector<Rational> row(l.rank);
      for (std::size_t j = 0; j < l.rank; ++j)
        row[j] = Rational(static_cast<long>(l.action[s][i][j] - (i == j ? 1 : 0)));
      rows.push_back(std::move(row));
    }
  InvariantRank r{sum / n, static_cast<std::int64_t>(rational_nullspace(rows, l.rank).size())};
  if (r.averaged != r.fixed_subspace) throw InvariantViolation("representation inconsistency");
  return r;
}

std::int64_t base_trace2(const GroupElement& g, Surface s) {
  if (s == Surface::P2) return 1;
  return g.as_wreath().swap ? 0 : 2;
}

LefschetzResult lefschetz(const GroupElement& g, Surface s) {
  LefschetzResult r;
  auto fl = geometry::fixed_locus(g, s);
  r.isolated_points = fl.isolated_points.size();
  r.curves = fl.curves.size();
  // all fixed curves on these linear models are rational
  r.euler = static_cast<std::int64_t>(r.isolated_points + 2 * r.curves);
  r.trace2 = base_trace2(g, s);
  r.ok = r.euler == 2 + r.trace2;
  return r;
}

bool lefschetz_check(const GroupElement& g, Surface s) { return lefschetz(g, s).ok; }

HessianModel hessian_model_canonical(const FiniteGroup& g) {
  auto cfg = geometry::sigma_configuration(g, Surface::P2);
  HessianModel h;
  h.lines = cfg.curves.size();
  h.points = cfg.points.size();
  if (h.lines != 9 || h.points != 12)
    throw InvariantViolation("incidence mismatch: expected 9 lines and 12 points, got " + std::to_string(h.lines) +
                             " and " + std::to_string(h.points));
  std::vector<BasePoint> centers;
  for (const auto& p : cfg.points) centers.push_back(p.point.base);
  h.lines_per_point.assign(h.points, 0);
  for (const auto& c : cfg.curves) {
    std::size_t k = 0;
    for (std::size_t p = 0; p < h.points; ++p)
      if (geometry::contains(c.curve, centers[p])) {
        ++k;
        ++h.lines_per_point[p];
      }
    if (k != 4) throw InvariantViolation("incidence mismatch: a line not through exactly 4 points");
    h.points_per_line.push_back(k);
  }
  for (auto k : h.lines_per_point)
    if (k != 3) throw InvariantViolation("incidence mismatch: a point not on exactly 3 lines");

  PicLattice l = pic_of(g, Surface::P2, centers);
  h.rank = static_cast<std::int64_t>(l.rank);
  std::vector<IntVector> cls;
  for (const auto& c : cfg.curves) {
    IntVector v(l.rank, 0);
    v[0] = 1;
    for (std::size_t p = 0; p < h.points; ++p)
      if (geometry::contains(c.curve, centers[p])) v[1 + p] = -1;
    cls.push_back(std::move(v));
  }
  IntMatrix inter(h.lines, IntVector(h.lines));
  for (std::size_t i = 0; i < h.lines; ++i) {
    for (std::size_t j = 0; j < h.lines; ++j) inter[i][j] = pair(l, cls[i], cls[j]);
    h.strict_self_intersections.push_back(inter[i][i]);
  }
  h.discrepancies = birational::discrepancies(inter);

  h.log_canonical.assign(l.rank, Rational(0));
  for (std::size_t k = 0; k < l.rank; ++k) h.log_canonical[k] = Rational(static_cast<long>(l.canonical[k]));
  for (std::size_t i = 0; i < h.lines; ++i)
    for (std::size_t k = 0; k < l.rank; ++k) h.log_canonical[k] += h.discrepancies[i] * Rational(static_cast<long>(cls[i][k]));
  h.k_squared = pair(l, h.log_canonical, h.log_canonical);

  std::vector<std::vector<Rational>> rows;
  for (const auto& c : cls) {
    std::vector<Rational> row(l.rank, Rational(0));
    for (std::size_t j = 0; j < l.rank; ++j)
      for (std::size_t i = 0; i < l.rank; ++i) row[j] += Rational(static_cast<long>(c[i] * l.gram[i][j]));
    rows.push_back(std::move(row));
  }
  auto complement = rational_nullspace(rows, l.rank);
  h.complement_rank = complement.size();
  h.numerically_trivial = true;
  for (const auto& d : complement)
    if (pair(l, h.log_canonical, d) != 0) h.numerically_trivial = false;
  h.three_k_integral = true;
  for (const auto& x : h.log_canonical) {
    Rational t = 3 * x;
    t.canonicalize();
    if (t.get_den() != 1) h.three_k_integral = false;
  }
  h.invariant = invariant_rank(l, g);
  return h;
}

HessianModel hessian_model_canonical() {
  return hessian_model_canonical(groups::build(spec::make(spec::Family::HessianKernel)));
}

}  // namespace ifp::picard
