#include "groups.hpp"

#include <algorithm>
#include <numeric>

#include "error.hpp"

namespace ifp::groups {

using cyclo::Rational;
using spec::Family;
using spec::GroupSpec;

const char* kind_name(Kind k) {
  switch (k) {
    case Kind::Linear2:
      return "linear2";
    case Kind::Proj3:
      return "proj3";
    case Kind::Wreath:
      return "wreath";
  }
  return "?";
}

ProjMatrix::ProjMatrix(Matrix linear) : linear_(std::move(linear)) {
  require(linear_.rows() == linear_.cols(), "projective matrix must be square");
  require(!linear_.det().is_zero(), "projective matrix must be invertible");
  canonical_ = linear_.projective_canonical();
}

ProjMatrix ProjMatrix::coerce(const Field& f) const {
  ProjMatrix p;
  p.linear_ = linear_.coerce(f);
  p.canonical_ = canonical_.coerce(f);
  return p;
}

std::vector<CycloNum> ProjMatrix::apply(const std::vector<CycloNum>& v) const {
  return cyclo::projective_normalize(linear_.apply(v));
}

ProjMatrix sym2_rep(const ProjMatrix& m) {
  require(m.size() == 2, "sym2_rep needs a 2x2 class");
  const Matrix& g = m.linear();
  const CycloNum &a = g(0, 0), &b = g(0, 1), &c = g(1, 0), &d = g(1, 1);
  CycloNum two(g.field(), Rational(2));
  return ProjMatrix(Matrix(3, 3,
                           {a * a, two * a * b, b * b,  //
                            a * c, a * d + b * c, b * d,  //
                            c * c, two * c * d, d * d}));
}

GroupElement GroupElement::linear2(Matrix m) {
  require(m.rows() == 2 && m.cols() == 2, "Linear2 element must be 2x2");
  require(!m.det().is_zero(), "Linear2 element must be invertible");
  GroupElement g;
  g.d_ = std::move(m);
  return g;
}

GroupElement GroupElement::proj3(ProjMatrix m) {
  require(m.size() == 3, "Proj3 element must be 3x3");
  GroupElement g;
  g.d_ = std::move(m);
  return g;
}

GroupElement GroupElement::wreath(ProjMatrix first, ProjMatrix second, bool swap) {
  require(first.size() == 2 && second.size() == 2, "Wreath factors must be 2x2");
  GroupElement g;
  const Field& f = cyclo::common_field(first.linear().field(), second.linear().field());
  g.d_ = WreathElement{first.coerce(f), second.coerce(f), swap};
  return g;
}

GroupElement GroupElement::identity(Kind k, const Field& f) {
  switch (k) {
    case Kind::Linear2:
      return linear2(Matrix::identity(2, f));
    case Kind::Proj3:
      return proj3(ProjMatrix(Matrix::identity(3, f)));
    case Kind::Wreath:
      return wreath(ProjMatrix(Matrix::identity(2, f)), ProjMatrix(Matrix::identity(2, f)), false);
  }
  throw InvariantViolation("unknown kind");
}

Kind GroupElement::kind() const {
  switch (d_.index()) {
    case 0:
      return Kind::Linear2;
    case 1:
      return Kind::Proj3;
    default:
      return Kind::Wreath;
  }
}

const Field& GroupElement::field() const {
  switch (kind()) {
    case Kind::Linear2:
      return as_linear2().field();
    case Kind::Proj3:
      return as_proj3().linear().field();
    default:
      return as_wreath().first.linear().field();
  }
}

Matrix GroupElement::p2_matrix() const {
  if (kind() == Kind::Proj3) return as_proj3().linear();
  require(kind() == Kind::Linear2, "element does not act on P2");
  const Matrix& g = as_linear2();
  Matrix m = Matrix::identity(3, g.field());
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j) m(i, j) = g(i, j);
  return m;
}

bool GroupElement::is_identity() const {
  switch (kind()) {
    case Kind::Linear2:
      return as_linear2().is_identity();
    case Kind::Proj3:
      return as_proj3().is_identity();
    default: {
      const auto& w = as_wreath();
      return !w.swap && w.first.is_identity() && w.second.is_identity();
    }
  }
}

GroupElement GroupElement::coerce(const Field& f) const {
  switch (kind()) {
    case Kind::Linear2:
      return linear2(as_linear2().coerce(f));
    case Kind::Proj3:
      return proj3(as_proj3().coerce(f));
    default: {
      const auto& w = as_wreath();
      return wreath(w.first.coerce(f), w.second.coerce(f), w.swap);
    }
  }
}

GroupElement operator*(const GroupElement& a, const GroupElement& b) {
  ensure(a.kind() == b.kind(), "product of elements of different kinds");
  switch (a.kind()) {
    case Kind::Linear2:
      return GroupElement::linear2(a.as_linear2() * b.as_linear2());
    case Kind::Proj3:
      return GroupElement::proj3(a.as_proj3() * b.as_proj3());
    default: {
      const auto& g = a.as_wreath();
      const auto& h = b.as_wreath();
      if (!g.swap) return GroupElement::wreath(g.first * h.first, g.second * h.second, h.swap);
      return GroupElement::wreath(g.first * h.second, g.second * h.first, !h.swap);
    }
  }
}

bool operator==(const GroupElement& a, const GroupElement& b) {
  if (a.kind() != b.kind()) return false;
  switch (a.kind()) {
    case Kind::Linear2:
      return a.as_linear2() == b.as_linear2();
    case Kind::Proj3:
      return a.as_proj3() == b.as_proj3();
    default: {
      const auto& g = a.as_wreath();
      const auto& h = b.as_wreath();
      return g.swap == h.swap && g.first == h.first && g.second == h.second;
    }
  }
}

std::size_t GroupElement::hash() const {
  switch (kind()) {
    case Kind::Linear2:
      return as_linear2().hash();
    case Kind::Proj3:
      return as_proj3().hash();
    default: {
      const auto& w = as_wreath();
      std::size_t h = w.first.hash();
      cyclo::hash_combine(h, w.second.hash());
      cyclo::hash_combine(h, w.swap ? 1 : 0);
      return h;
    }
  }
}

std::string GroupElement::to_string() const {
  switch (kind()) {
    case Kind::Linear2:
      return as_linear2().to_string();
    case Kind::Proj3:
      return as_proj3().canonical().to_string();
    default: {
      const auto& w = as_wreath();
      return "(" + w.first.canonical().to_string() + ", " + w.second.canonical().to_string() + "; " +
             (w.swap ? "1" : "0") + ")";
    }
  }
}

std::size_t FiniteGroup::mul(std::size_t a, std::size_t b) const {
  std::size_t n = elements_.size();
  if (!table_.empty()) return table_[a * n + b];
  auto idx = find(elements_[a] * elements_[b]);
  ensure(idx.has_value(), "product left the group");
  return *idx;
}

std::optional<std::size_t> FiniteGroup::find(const GroupElement& g) const {
  auto it = index_.find(&g.field() == field_ ? g : g.coerce(*field_));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

void FiniteGroup::reindex() {
  index_.clear();
  for (std::size_t i = 0; i < elements_.size(); ++i) index_.emplace(elements_[i], i);
  ensure(index_.size() == elements_.size(), "distinct elements collided after coercion");
}

std::vector<std::vector<std::uint32_t>> FiniteGroup::extend_action(
    const std::vector<std::vector<std::uint32_t>>& generator_perms) const {
  ensure(generator_perms.size() == gens_.size(), "one permutation per generator expected");
  std::size_t m = generator_perms.empty() ? 0 : generator_perms[0].size();
  std::vector<std::vector<std::uint32_t>> out(elements_.size());
  out[0].resize(m);
  std::iota(out[0].begin(), out[0].end(), 0u);
  for (std::size_t i = 1; i < elements_.size(); ++i) {
    const auto& p = out[parent_[i]];
    const auto& s = generator_perms[via_[i]];
    out[i].resize(m);
    for (std::size_t x = 0; x < m; ++x) out[i][x] = p[s[x]];
  }
  return out;
}

FiniteGroup close_under_multiplication(std::vector<GroupElement> generators, std::size_t cap, unsigned conductor_cap) {
  require(!generators.empty(), "at least one generator is required");
  Kind kind = generators[0].kind();
  const Field* f = &generators[0].field();
  for (const auto& g : generators) {
    require(g.kind() == kind, "generators of mixed kinds");
    if (kind == Kind::Proj3) require(g.as_proj3().size() == 3, "Proj3 generators must be 3x3");
    f = &cyclo::common_field(*f, g.field());
  }
  require(f->conductor() <= conductor_cap, "working conductor " + std::to_string(f->conductor()) +
                                               " exceeds the cap " + std::to_string(conductor_cap));
  for (auto& g : generators) g = g.coerce(*f);

  FiniteGroup G;
  G.kind_ = kind;
  G.field_ = f;
  std::vector<GroupElement> distinct;
  for (const auto& g : generators)
    if (!g.is_identity() && std::find(distinct.begin(), distinct.end(), g) == distinct.end()) distinct.push_back(g);

  G.elements_.push_back(GroupElement::identity(kind, *f));
  G.index_.emplace(G.elements_[0], 0);
  G.parent_.push_back(0);
  G.via_.push_back(0);
  std::size_t m = distinct.size();
  for (std::size_t i = 0; i < G.elements_.size(); ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      GroupElement y = G.elements_[i] * distinct[j];
      auto it = G.index_.find(y);
      std::size_t idx;
      if (it == G.index_.end()) {
        idx = G.elements_.size();
        if (idx + 1 > cap) throw InvalidInput("group order exceeds cap " + std::to_string(cap));
        G.index_.emplace(y, idx);
        G.elements_.push_back(std::move(y));
        G.parent_.push_back(i);
        G.via_.push_back(j);
      } else {
        idx = it->second;
      }
      G.rightmul_.push_back(static_cast<std::uint32_t>(idx));
    }
  }
  for (const auto& g : distinct) G.gens_.push_back(G.index_.at(g));

  std::size_t n = G.elements_.size();
  if (n <= kTableLimit) {
    G.table_.resize(n * n);
    for (std::size_t g = 0; g < n; ++g) {
      std::uint32_t* row = &G.table_[g * n];
      row[0] = static_cast<std::uint32_t>(g);
      for (std::size_t k = 1; k < n; ++k) row[k] = G.rightmul_[row[G.parent_[k]] * m + G.via_[k]];
    }
  }

  G.ord_.assign(n, 0);
  G.inv_.assign(n, 0);
  for (std::size_t a = 0; a < n; ++a) {
    std::size_t p = a, prev = 0;
    unsigned k = 1;
    while (p != 0) {
      prev = p;
      p = G.mul(p, a);
      ++k;
      ensure(k <= n + 1, "element order exceeds group order");
    }
    G.ord_[a] = a == 0 ? 1 : k;
    G.inv_[a] = prev;
  }

  G.lift_.assign(n, 0);
  std::uint64_t need = f->conductor();
  for (std::size_t a = 0; a < n; ++a) {
    const GroupElement& g = G.elements_[a];
    unsigned lo = 0;
    switch (kind) {
      case Kind::Linear2:
        lo = G.ord_[a];
        break;
      case Kind::Proj3: {
        auto o = cyclo::linear_order(g.as_proj3().linear(), G.ord_[a]);
        require(o.has_value(), "generator lift has no finite linear order; rescale it by a root of unity");
        lo = *o;
        break;
      }
      case Kind::Wreath: {
        const auto& w = g.as_wreath();
        if (w.swap) break;
        auto o1 = cyclo::linear_order(w.first.linear(), G.ord_[a]);
        auto o2 = cyclo::linear_order(w.second.linear(), G.ord_[a]);
        require(o1 && o2, "factor lift has no finite linear order; rescale it by a root of unity");
        lo = static_cast<unsigned>(cyclo::lcm_u64(*o1, *o2));
        break;
      }
    }
    G.lift_[a] = lo;
    if (lo) need = cyclo::lcm_u64(need, lo);
  }
  require(need <= conductor_cap,
          "working conductor " + std::to_string(need) + " exceeds the cap " + std::to_string(conductor_cap));
  if (need != f->conductor()) {
    G.field_ = &Field::get(static_cast<unsigned>(need));
    for (auto& g : G.elements_) g = g.coerce(*G.field_);
    G.reindex();
  }
  return G;
}

// ---------------------------------------------------------------------------
// Constructors

namespace {

CycloNum zeta(unsigned n, long e) { return CycloNum::zeta(Field::get(n), e); }
CycloNum rat(long a, long b = 1) { return CycloNum(Field::get(1), Rational(a, b)); }

Matrix m2(CycloNum a, CycloNum b, CycloNum c, CycloNum d) { return Matrix(2, 2, {a, b, c, d}); }
Matrix diag2(CycloNum a, CycloNum b) { return Matrix::diagonal({a, b}); }
Matrix diag3(CycloNum a, CycloNum b, CycloNum c) { return Matrix::diagonal({a, b, c}); }

// M x = (x_{p0}, x_{p1}, x_{p2}).
Matrix perm3(int p0, int p1, int p2) {
  Matrix m(3, 3, Field::get(1));
  int p[3] = {p0, p1, p2};
  for (int i = 0; i < 3; ++i) m(i, p[i]) = rat(1);
  return m;
}

long mod(long a, long n) { return ((a % n) + n) % n; }

std::vector<Matrix> binary_tetrahedral() {
  CycloNum i = zeta(4, 1), one = rat(1), zero = rat(0), half = rat(1, 2);
  Matrix qi = diag2(i, -i);
  Matrix qj = m2(zero, one, -one, zero);
  // omega = (-1 + i + j + k) / 2 with k = ij
  Matrix omega = m2((i - one) * half, (one + i) * half, (i - one) * half, (-one - i) * half);
  return {qi, qj, omega};
}

std::vector<Matrix> binary_octahedral() {
  auto g = binary_tetrahedral();
  g.push_back(diag2(zeta(8, 1), zeta(8, -1)));
  return g;
}

std::vector<Matrix> binary_icosahedral() {
  auto g = binary_tetrahedral();
  CycloNum i = zeta(4, 1), one = rat(1), half = rat(1, 2);
  CycloNum phi_inv = zeta(5, 1) + zeta(5, -1);
  CycloNum phi = one + phi_inv;
  // (phi + phi^-1 i + j) / 2
  g.push_back(m2((phi + phi_inv * i) * half, half, -half, (phi - phi_inv * i) * half));
  return g;
}

ProjMatrix P(const Matrix& m) { return ProjMatrix(m); }
GroupElement W(const Matrix& a, const Matrix& b, bool swap) { return GroupElement::wreath(P(a), P(b), swap); }

void check_positive(long n, const char* what) {
  require(n >= 1, std::string(what) + " must be positive");
  require(n <= static_cast<long>(cyclo::kMaxConductor), std::string(what) + " is too large");
}

struct F0Letters {
  Matrix a, b, e, minus;
};

F0Letters f0_letters(long n) {
  return {diag2(zeta(static_cast<unsigned>(n), 1), rat(1)), m2(rat(0), rat(-1), rat(1), rat(0)),
          Matrix::identity(2, Field::get(1)), diag2(rat(-1), rat(1))};
}

long check_hij(const GroupSpec& s) {
  long n = s.param("n"), p = s.param("p");
  require(n >= 2, "n must be at least 2");
  check_positive(n, "n");
  require(mod(p * p + 1, n) == 0, "precondition p^2 = -1 mod n fails for n=" + std::to_string(n) +
                                      " p=" + std::to_string(p));
  return mod(p, n);
}

std::vector<GroupElement> generators_of(const GroupSpec& s, std::size_t cap, unsigned ccap) {
  using K = Family;
  auto L = [](const Matrix& m) { return GroupElement::linear2(m); };
  auto Q = [](const Matrix& m) { return GroupElement::proj3(ProjMatrix(m)); };
  CycloNum one = rat(1), zero = rat(0);
  switch (s.family) {
    case K::Cyclic: {
      long n = s.param("n");
      check_positive(n, "n");
      long w = mod(s.param_or("w", 1), n);
      return {L(diag2(zeta(n, 1), zeta(n, w)))};
    }
    case K::Dihedral: {
      long o = s.param("order");
      require(o >= 2 && o % 2 == 0, "dihedral order must be even and at least 2");
      long n = o / 2;
      check_positive(n, "n");
      return {L(diag2(zeta(n, 1), zeta(n, -1))), L(m2(zero, one, one, zero))};
    }
    case K::Dicyclic: {
      long o = s.param("order");
      require(o >= 4 && o % 4 == 0, "dicyclic order must be a positive multiple of 4");
      long n = o / 4;
      return {L(diag2(zeta(2 * n, 1), zeta(2 * n, -1))), L(m2(zero, one, -one, zero))};
    }
    case K::BinaryTetrahedral: {
      std::vector<GroupElement> g;
      for (auto& m : binary_tetrahedral()) g.push_back(L(m));
      return g;
    }
    case K::BinaryOctahedral: {
      std::vector<GroupElement> g;
      for (auto& m : binary_octahedral()) g.push_back(L(m));
      return g;
    }
    case K::BinaryIcosahedral: {
      std::vector<GroupElement> g;
      for (auto& m : binary_icosahedral()) g.push_back(L(m));
      return g;
    }
    case K::Tetrahedral:
    case K::Octahedral:
    case K::Icosahedral:
      throw InvalidInput(std::string("'") + spec::keyword(s.family) +
                         "' is a PGL2 group; use it inside sym2, diagonal-f0, product-f0 or fibered");
    case K::ImprimitiveC3: {
      long n = s.param("n"), sp = s.param("s");
      check_positive(n, "n");
      require(n % 2 == 1, "imprimitive-c3 requires n odd");
      require(mod(sp * sp - sp + 1, n) == 0, "precondition s^2 - s + 1 = 0 mod n fails");
      return {Q(perm3(1, 2, 0)), Q(diag3(zeta(n, 1), zeta(n, sp), one))};
    }
    case K::ImprimitiveZn2C3: {
      long n = s.param("n");
      check_positive(n, "n");
      return {Q(diag3(zeta(n, 1), one, one)), Q(diag3(one, zeta(n, 1), one)), Q(perm3(2, 0, 1))};
    }
    case K::Gnks: {
      long n = s.param("n"), k = s.param("k"), sp = s.param("s");
      check_positive(n, "n");
      require(k > 1 && n % k == 0, "gnks requires k > 1 and k | n");
      require(mod(sp * sp - sp + 1, k) == 0, "precondition s^2 - s + 1 = 0 mod k fails");
      return {Q(diag3(zeta(n / k, 1), one, one)), Q(diag3(zeta(n, sp), zeta(n, 1), one)), Q(perm3(2, 0, 1))};
    }
    case K::ImprimitiveZn2S3: {
      long n = s.param("n");
      check_positive(n, "n");
      return {Q(diag3(zeta(n, 1), one, one)), Q(diag3(one, zeta(n, 1), one)), Q(perm3(0, 2, 1)),
              Q(perm3(2, 0, 1))};
    }
    case K::HessianKernel:
    case K::HessianC4:
    case K::HessianQ8:
    case K::HessianFull: {
      CycloNum e = zeta(3, 1);
      std::vector<GroupElement> g = {Q(diag3(e * e, e, one)), Q(perm3(2, 0, 1)), Q(perm3(0, 2, 1))};
      // 1 / sqrt(-3) with sqrt(-3) = 1 + 2 e
      CycloNum k = (one + rat(2) * e).inverse();
      Matrix s1(3, 3, {one, one, one, one, e, e * e, one, e * e, e});
      Matrix s2(3, 3, {one, e, e, e * e, e, e * e, e * e, e * e, e});
      if (s.family != K::HessianKernel) g.push_back(Q(s1.scaled(k)));
      if (s.family == K::HessianQ8 || s.family == K::HessianFull) g.push_back(Q(s2.scaled(k)));
      if (s.family == K::HessianFull) g.push_back(Q(Matrix(3, 3, {e, zero, zero, zero, zero, one, zero, one, zero})));
      return g;
    }
    case K::Sym2Lift: {
      std::vector<GroupElement> g;
      for (const auto& m : pgl2_generators(s.children[0])) g.push_back(GroupElement::proj3(sym2_rep(ProjMatrix(m))));
      return g;
    }
    case K::ProductF0: {
      std::vector<GroupElement> g;
      Matrix e = Matrix::identity(2, Field::get(1));
      for (const auto& m : pgl2_generators(s.children[0])) g.push_back(W(m, e, false));
      for (const auto& m : pgl2_generators(s.children[1])) g.push_back(W(e, m, false));
      return g;
    }
    case K::DiagonalF0: {
      std::vector<GroupElement> g;
      for (const auto& m : pgl2_generators(s.children[0])) g.push_back(W(m, m, false));
      return g;
    }
    case K::FiberedProduct: {
      auto g1 = pgl2_generators(s.children[0]);
      auto h1 = pgl2_generators(s.children[1]);
      auto g2 = pgl2_generators(s.children[2]);
      auto h2 = pgl2_generators(s.children[3]);
      Matrix e = Matrix::identity(2, Field::get(1));
      std::vector<std::pair<int, int>> alpha = s.alpha;
      if (alpha.empty()) {
        require(g1.size() == g2.size(), "fibered: alpha is required when G1 and G2 have different generator counts");
        for (std::size_t i = 0; i < g1.size(); ++i) alpha.emplace_back(static_cast<int>(i + 1), static_cast<int>(i + 1));
      }
      std::vector<GroupElement> g;
      std::vector<bool> covered(g1.size(), false);
      for (auto [a, b] : alpha) {
        require(a >= 1 && static_cast<std::size_t>(a) <= g1.size(), "fibered: alpha source index out of range");
        require(b >= 0 && static_cast<std::size_t>(b) <= g2.size(), "fibered: alpha target index out of range");
        covered[a - 1] = true;
        g.push_back(W(g1[a - 1], b == 0 ? e : g2[b - 1], false));
      }
      for (bool c : covered) require(c, "fibered: alpha must map every generator of G1");
      for (const auto& m : h1) g.push_back(W(m, e, false));
      for (const auto& m : h2) g.push_back(W(e, m, false));
      return g;
    }
    case K::F4n:
    case K::G4n: {
      long n = s.param("n");
      require(n >= 2, "n must be at least 2");
      check_positive(2 * n, "n");
      auto l = f0_letters(n);
      std::vector<GroupElement> g = {W(l.b, l.b, false), W(l.a, l.a, false)};
      if (s.family == K::F4n) {
        CycloNum c = zeta(2 * n, 1);
        g.push_back(W(diag2(c, one), diag2(-c, one), true));
      } else {
        g.push_back(W(l.minus, l.e, true));
      }
      return g;
    }
    case K::H4n:
    case K::I4n:
    case K::J4n: {
      long n = s.param("n");
      long p = check_hij(s);
      if (s.family == K::I4n) require(n % 2 == 0, "i4n requires n even");
      if (s.family == K::J4n) require(n % 2 == 1, "j4n requires n odd");
      auto l = f0_letters(n);
      Matrix ap = diag2(zeta(n, p), one);
      std::vector<GroupElement> g = {W(l.b, l.b, false), W(l.a, ap, false)};
      if (s.family == K::H4n) g.push_back(W(l.b, l.e, true));
      if (s.family == K::I4n) g.push_back(W(l.b, l.minus, true));
      if (s.family == K::J4n) g.push_back(W(m2(zero, one, one, zero), l.minus, true));
      return g;
    }
    case K::TwistedDihedralF0: {
      long n = s.param("n");
      check_positive(n, "n");
      Matrix e = Matrix::identity(2, Field::get(1));
      return {W(diag2(zeta(n, 1), one), diag2(zeta(n, -1), one), false), W(e, e, true)};
    }
    case K::Explicit: {
      std::vector<GroupElement> g;
      for (const auto& m : s.matrices) g.push_back(m.rows() == 2 ? L(m) : Q(m));
      return g;
    }
  }
  (void)cap;
  (void)ccap;
  throw InvariantViolation("unhandled family");
}

void check_fibered(const GroupSpec& s, const FiniteGroup& f, std::size_t cap) {
  FiniteGroup g1 = pgl2_group(s.children[0], cap), h1 = pgl2_group(s.children[1], cap);
  FiniteGroup g2 = pgl2_group(s.children[2], cap), h2 = pgl2_group(s.children[3], cap);
  auto contained = [](const FiniteGroup& sub, const FiniteGroup& sup) {
    for (const auto& x : sub.elements())
      if (!sup.find(x)) return false;
    return true;
  };
  require(contained(h1, g1), "fibered: H1 is not a subgroup of G1");
  require(contained(h2, g2), "fibered: H2 is not a subgroup of G2");
  std::size_t left = 0, right = 0;
  std::vector<GroupElement> firsts, seconds;
  Matrix e = Matrix::identity(2, f.field());
  for (const auto& x : f.elements()) {
    const auto& w = x.as_wreath();
    if (w.second.is_identity()) ++left;
    if (w.first.is_identity()) ++right;
    firsts.push_back(GroupElement::wreath(w.first, ProjMatrix(e), false));
    seconds.push_back(GroupElement::wreath(w.second, ProjMatrix(e), false));
  }
  auto distinct = [](std::vector<GroupElement> v) {
    std::unordered_map<GroupElement, int, ElementHash> m;
    for (auto& x : v) m.emplace(x, 0);
    return m.size();
  };
  require(left == h1.order() && right == h2.order() && distinct(firsts) == g1.order() &&
              distinct(seconds) == g2.order(),
          "fibered: alpha does not define an isomorphism G1/H1 -> G2/H2");
}

}  // namespace

std::vector<Matrix> pgl2_generators(const GroupSpec& s) {
  CycloNum one = rat(1), zero = rat(0);
  switch (s.family) {
    case Family::Cyclic: {
      long n = s.param("n");
      check_positive(n, "n");
      require(!s.params.count("w"), "w= is not meaningful for a PGL2 cyclic group");
      return {diag2(zeta(n, 1), one)};
    }
    case Family::Dihedral: {
      long o = s.param("order");
      require(o >= 2 && o % 2 == 0, "dihedral order must be even and at least 2");
      return {diag2(zeta(o / 2, 1), one), m2(zero, -one, one, zero)};
    }
    case Family::Tetrahedral:
      return binary_tetrahedral();
    case Family::Octahedral:
      return binary_octahedral();
    case Family::Icosahedral:
      return binary_icosahedral();
    case Family::Explicit: {
      for (const auto& m : s.matrices) require(m.rows() == 2, "PGL2 context needs 2x2 matrices");
      return s.matrices;
    }
    default:
      throw InvalidInput(std::string("'") + spec::keyword(s.family) + "' is not a PGL2 group spec");
  }
}

FiniteGroup pgl2_group(const GroupSpec& s, std::size_t cap) {
  std::vector<GroupElement> g;
  for (const auto& m : pgl2_generators(s))
    g.push_back(GroupElement::wreath(ProjMatrix(m), ProjMatrix(Matrix::identity(2, Field::get(1))), false));
  FiniteGroup G = close_under_multiplication(g, cap, cyclo::kMaxConductor);
  if (auto d = spec::declared_pgl2_order(s))
    ensure(*d == G.order(), std::string("PGL2 ") + spec::keyword(s.family) + " closed to order " +
                                std::to_string(G.order()) + ", expected " + std::to_string(*d));
  return G;
}

FiniteGroup build(const GroupSpec& s, std::size_t cap, unsigned conductor_cap) {
  FiniteGroup G = close_under_multiplication(generators_of(s, cap, conductor_cap), cap, conductor_cap);
  if (s.family == Family::FiberedProduct) check_fibered(s, G, cap);
  if (auto d = spec::declared_order(s))
    ensure(*d == G.order(), std::string(spec::keyword(s.family)) + " closed to order " + std::to_string(G.order()) +
                                ", expected " + std::to_string(*d));
  return G;
}

// ---------------------------------------------------------------------------
// Subgroup queries

std::vector<std::size_t> all_indices(const FiniteGroup& g) {
  std::vector<std::size_t> v(g.order());
  std::iota(v.begin(), v.end(), 0);
  return v;
}

std::vector<std::size_t> generated_subgroup(const FiniteGroup& g, const std::vector<std::size_t>& gens) {
  std::vector<char> in(g.order(), 0);
  std::vector<std::size_t> members = {0};
  in[0] = 1;
  for (std::size_t i = 0; i < members.size(); ++i)
    for (std::size_t s : gens) {
      std::size_t y = g.mul(members[i], s);
      if (!in[y]) {
        in[y] = 1;
        members.push_back(y);
      }
    }
  std::sort(members.begin(), members.end());
  return members;
}

bool is_abelian(const FiniteGroup& g, const std::vector<std::size_t>& members) {
  for (std::size_t i = 0; i < members.size(); ++i)
    for (std::size_t j = i + 1; j < members.size(); ++j)
      if (g.mul(members[i], members[j]) != g.mul(members[j], members[i])) return false;
  return true;
}

bool is_abelian(const FiniteGroup& g) {
  for (std::size_t a : g.generators())
    for (std::size_t b : g.generators())
      if (g.mul(a, b) != g.mul(b, a)) return false;
  return true;
}

bool is_cyclic(const FiniteGroup& g, const std::vector<std::size_t>& members) {
  for (std::size_t x : members)
    if (g.element_order(x) == members.size()) return true;
  return false;
}

bool is_cyclic(const FiniteGroup& g) { return is_cyclic(g, all_indices(g)); }

std::size_t cyclic_generator(const FiniteGroup& g, const std::vector<std::size_t>& members) {
  for (std::size_t x : members)
    if (g.element_order(x) == members.size()) return x;
  throw InvariantViolation("subset is not a cyclic group");
}

std::vector<std::size_t> center(const FiniteGroup& g) {
  std::vector<std::size_t> z;
  for (std::size_t x = 0; x < g.order(); ++x) {
    bool central = true;
    for (std::size_t s : g.generators())
      if (g.mul(x, s) != g.mul(s, x)) {
        central = false;
        break;
      }
    if (central) z.push_back(x);
  }
  return z;
}

std::vector<std::pair<std::size_t, std::size_t>> commuting_pairs(const FiniteGroup& g) {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (std::size_t a = 1; a < g.order(); ++a)
    for (std::size_t b = a + 1; b < g.order(); ++b)
      if (g.mul(a, b) == g.mul(b, a)) out.emplace_back(a, b);
  return out;
}

FactorIntersections factor_intersections(const FiniteGroup& g) {
  require(g.kind() == Kind::Wreath, "factor intersections need a group acting on P1 x P1");
  FactorIntersections r{0, 0, 0};
  std::size_t untwisted = 0;
  for (const auto& x : g.elements()) {
    const auto& w = x.as_wreath();
    if (w.swap) continue;
    ++untwisted;
    if (w.second.is_identity()) ++r.order1;
    if (w.first.is_identity()) ++r.order2;
  }
  r.untwisted_index = g.order() / untwisted;
  return r;
}

}  // namespace ifp::groups
