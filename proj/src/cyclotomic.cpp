#include "cyclotomic.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <memory>
#include <mutex>
#include <numeric>
#include <sstream>

#include "error.hpp"

namespace ifp::cyclo {

std::size_t hash_value(const BigInt& z) {
  std::size_t h = static_cast<std::size_t>(mpz_sgn(z.get_mpz_t()) + 1);
  std::size_t n = mpz_size(z.get_mpz_t());
  for (std::size_t i = 0; i < n; ++i) hash_combine(h, mpz_getlimbn(z.get_mpz_t(), i));
  return h;
}

std::size_t hash_value(const Rational& q) {
  std::size_t h = hash_value(q.get_num());
  hash_combine(h, hash_value(q.get_den()));
  return h;
}

std::uint64_t gcd_u64(std::uint64_t a, std::uint64_t b) { return std::gcd(a, b); }

std::uint64_t lcm_u64(std::uint64_t a, std::uint64_t b) {
  if (a == 0 || b == 0) return 0;
  return a / std::gcd(a, b) * b;
}

unsigned euler_phi(unsigned n) {
  unsigned result = n;
  for (unsigned p = 2; p * p <= n; ++p) {
    if (n % p == 0) {
      while (n % p == 0) n /= p;
      result -= result / p;
    }
  }
  if (n > 1) result -= result / n;
  return result;
}

namespace {

RationalPoly exact_divide(RationalPoly num, const RationalPoly& den) {
  std::size_t dn = den.size() - 1;
  if (num.size() < den.size()) return {Rational(0)};
  RationalPoly q(num.size() - dn, Rational(0));
  for (std::size_t k = num.size(); k-- > dn;) {
    Rational c = num[k] / den[dn];
    q[k - dn] = c;
    for (std::size_t i = 0; i <= dn; ++i) num[k - dn + i] -= c * den[i];
  }
  for (const auto& r : num) ensure(r == 0, "cyclotomic division left a remainder");
  return q;
}

std::mutex& registry_mutex() {
  static std::mutex m;
  return m;
}

}  // namespace

const RationalPoly& cyclotomic_polynomial(unsigned n) {
  require(n >= 1, "cyclotomic polynomial index must be positive");
  static std::map<unsigned, std::unique_ptr<RationalPoly>> cache;
  std::lock_guard<std::recursive_mutex> lock([]() -> std::recursive_mutex& {
    static std::recursive_mutex m;
    return m;
  }());
  auto it = cache.find(n);
  if (it != cache.end()) return *it->second;
  RationalPoly p(n + 1, Rational(0));
  p[0] = -1;
  p[n] = 1;
  for (unsigned d = 1; d < n; ++d)
    if (n % d == 0) p = exact_divide(p, cyclotomic_polynomial(d));
  auto& slot = cache[n];
  slot = std::make_unique<RationalPoly>(std::move(p));
  return *slot;
}

Field::Field(unsigned n) : n_(n), d_(euler_phi(n)), phi_(&cyclotomic_polynomial(n)) {
  const RationalPoly& phi = *phi_;
  // x^d = -sum_{i<d} phi_i x^i, then shift repeatedly.
  std::vector<Rational> cur(d_);
  for (unsigned i = 0; i < d_; ++i) cur[i] = -phi[i];
  for (unsigned k = d_; k + 1 < 2 * d_ || k == d_; ++k) {
    reduce_.push_back(cur);
    Rational top = cur[d_ - 1];
    std::vector<Rational> next(d_, Rational(0));
    for (unsigned i = d_ - 1; i >= 1; --i) next[i] = cur[i - 1];
    for (unsigned i = 0; i < d_; ++i) next[i] -= top * phi[i];
    cur = std::move(next);
  }
  std::vector<Rational> p(d_, Rational(0));
  p[0] = 1;
  for (unsigned e = 0; e < n_; ++e) {
    powers_.push_back(p);
    Rational top = p[d_ - 1];
    std::vector<Rational> next(d_, Rational(0));
    for (unsigned i = d_ - 1; i >= 1; --i) next[i] = p[i - 1];
    for (unsigned i = 0; i < d_; ++i) next[i] -= top * phi[i];
    p = std::move(next);
  }
  ensure(p[0] == 1 && std::all_of(p.begin() + 1, p.end(), [](const Rational& r) { return r == 0; }),
         "zeta^N != 1 in power basis");
  for (unsigned k = 1; k <= n_; ++k)
    if (std::gcd(k, n_) == 1) units_.push_back(k % n_ == 0 ? 0 : k);
  if (n_ == 1) units_ = {1};
}

const Field& Field::get(unsigned conductor) {
  require(conductor >= 1, "conductor must be positive");
  require(conductor <= kMaxConductor, "conductor " + std::to_string(conductor) + " exceeds the maximum " +
                                          std::to_string(kMaxConductor));
  static std::map<unsigned, std::unique_ptr<Field>> registry;
  std::lock_guard<std::mutex> lock(registry_mutex());
  auto it = registry.find(conductor);
  if (it != registry.end()) return *it->second;
  auto& slot = registry[conductor];
  slot.reset(new Field(conductor));
  return *slot;
}

const std::vector<Rational>& Field::zeta_power(long e) const {
  long m = static_cast<long>(n_);
  long r = ((e % m) + m) % m;
  return powers_[static_cast<std::size_t>(r)];
}

const Field& common_field(const Field& a, const Field& b) {
  if (&a == &b) return a;
  std::uint64_t l = lcm_u64(a.conductor(), b.conductor());
  require(l <= kMaxConductor, "common conductor " + std::to_string(l) + " is too large");
  return Field::get(static_cast<unsigned>(l));
}

CycloNum::CycloNum() : field_(&Field::get(1)), c_(1, Rational(0)) {}

CycloNum::CycloNum(const Field& f, const Rational& q) : field_(&f), c_(f.degree(), Rational(0)) { c_[0] = q; }

CycloNum::CycloNum(const Field& f, std::vector<Rational> coeffs) : field_(&f), c_(std::move(coeffs)) {
  ensure(c_.size() == f.degree(), "coefficient vector length differs from field degree");
}

CycloNum CycloNum::zeta(const Field& f, long e) { return CycloNum(f, f.zeta_power(e)); }

CycloNum CycloNum::root_of_unity(const Field& f, unsigned m, long j) {
  require(m >= 1, "root of unity order must be positive");
  unsigned n = f.conductor();
  if (n % m == 0) return zeta(f, j * static_cast<long>(n / m));
  if (n % 2 == 1 && (2 * n) % m == 0) {
    // zeta_{2N} = -zeta_N^((N+1)/2)
    long t = j * static_cast<long>(2 * n / m);
    long tt = ((t % (2 * static_cast<long>(n))) + 2 * static_cast<long>(n)) % (2 * static_cast<long>(n));
    CycloNum z = zeta(f, tt * static_cast<long>((n + 1) / 2));
    return (tt % 2 == 1) ? -z : z;
  }
  throw InvalidInput("zeta_" + std::to_string(m) + " does not lie in Q(zeta_" + std::to_string(n) + ")");
}

bool CycloNum::is_zero() const {
  return std::all_of(c_.begin(), c_.end(), [](const Rational& r) { return r == 0; });
}

bool CycloNum::is_rational() const {
  return std::all_of(c_.begin() + 1, c_.end(), [](const Rational& r) { return r == 0; });
}

bool CycloNum::is_one() const { return is_rational() && c_[0] == 1; }

CycloNum CycloNum::coerce(const Field& target) const {
  if (&target == field_) return *this;
  unsigned n = field_->conductor(), m = target.conductor();
  require(m % n == 0, "cannot coerce Q(zeta_" + std::to_string(n) + ") into Q(zeta_" + std::to_string(m) + ")");
  long step = static_cast<long>(m / n);
  std::vector<Rational> out(target.degree(), Rational(0));
  for (std::size_t i = 0; i < c_.size(); ++i) {
    if (c_[i] == 0) continue;
    const auto& zp = target.zeta_power(static_cast<long>(i) * step);
    for (std::size_t k = 0; k < out.size(); ++k)
      if (zp[k] != 0) out[k] += c_[i] * zp[k];
  }
  return CycloNum(target, std::move(out));
}

CycloNum CycloNum::galois(unsigned k) const {
  std::vector<Rational> out(field_->degree(), Rational(0));
  for (std::size_t i = 0; i < c_.size(); ++i) {
    if (c_[i] == 0) continue;
    const auto& zp = field_->zeta_power(static_cast<long>(i) * static_cast<long>(k));
    for (std::size_t j = 0; j < out.size(); ++j)
      if (zp[j] != 0) out[j] += c_[i] * zp[j];
  }
  return CycloNum(*field_, std::move(out));
}

CycloNum CycloNum::inverse() const {
  if (is_zero()) throw InvalidInput("division by zero in cyclotomic field");
  if (is_rational()) return CycloNum(*field_, Rational(1) / c_[0]);
  // a^-1 = (prod of the other conjugates) / norm(a)
  CycloNum prod(*field_, Rational(1));
  for (unsigned k : field_->units())
    if (k != 1) prod *= galois(k);
  CycloNum norm = prod * *this;
  ensure(norm.is_rational(), "norm of cyclotomic number is not rational");
  Rational inv = Rational(1) / norm.c_[0];
  for (auto& r : prod.c_) r *= inv;
  return prod;
}

CycloNum CycloNum::pow(long e) const {
  if (e < 0) return inverse().pow(-e);
  CycloNum result(*field_, Rational(1));
  CycloNum base = *this;
  unsigned long u = static_cast<unsigned long>(e);
  while (u) {
    if (u & 1) result *= base;
    u >>= 1;
    if (u) base *= base;
  }
  return result;
}

std::optional<unsigned> CycloNum::root_of_unity_order() const {
  unsigned n = field_->conductor();
  unsigned l = (n % 2 == 0) ? n : 2 * n;
  if (!pow(l).is_one()) return std::nullopt;
  unsigned best = l;
  for (unsigned d = 1; d <= l; ++d)
    if (l % d == 0 && pow(d).is_one()) {
      best = d;
      break;
    }
  return best;
}

CycloNum CycloNum::operator-() const {
  CycloNum r = *this;
  for (auto& q : r.c_) q = -q;
  return r;
}

CycloNum& CycloNum::operator+=(const CycloNum& o) {
  if (field_ != o.field_) {
    const Field& f = common_field(*field_, *o.field_);
    *this = coerce(f);
    return *this += o.coerce(f);
  }
  for (std::size_t i = 0; i < c_.size(); ++i) c_[i] += o.c_[i];
  return *this;
}

CycloNum& CycloNum::operator-=(const CycloNum& o) {
  if (field_ != o.field_) {
    const Field& f = common_field(*field_, *o.field_);
    *this = coerce(f);
    return *this -= o.coerce(f);
  }
  for (std::size_t i = 0; i < c_.size(); ++i) c_[i] -= o.c_[i];
  return *this;
}

CycloNum operator*(const CycloNum& a, const CycloNum& b) {
  if (a.field_ != b.field_) {
    const Field& f = common_field(*a.field_, *b.field_);
    return a.coerce(f) * b.coerce(f);
  }
  const Field& f = *a.field_;
  unsigned d = f.degree();
  if (a.is_rational()) {
    CycloNum r = b;
    if (a.c_[0] != 1)
      for (auto& q : r.c_) q *= a.c_[0];
    return r;
  }
  if (b.is_rational()) return b * a;
  std::vector<Rational> prod(2 * d - 1, Rational(0));
  for (unsigned i = 0; i < d; ++i) {
    if (a.c_[i] == 0) continue;
    for (unsigned j = 0; j < d; ++j)
      if (b.c_[j] != 0) prod[i + j] += a.c_[i] * b.c_[j];
  }
  std::vector<Rational> out(prod.begin(), prod.begin() + d);
  for (unsigned k = d; k < 2 * d - 1; ++k) {
    if (prod[k] == 0) continue;
    const auto& red = f.reduction(k);
    for (unsigned i = 0; i < d; ++i)
      if (red[i] != 0) out[i] += prod[k] * red[i];
  }
  return CycloNum(f, std::move(out));
}

CycloNum& CycloNum::operator*=(const CycloNum& o) {
  *this = *this * o;
  return *this;
}

bool operator==(const CycloNum& a, const CycloNum& b) {
  if (a.field_ == b.field_) return a.c_ == b.c_;
  if (a.is_rational() && b.is_rational()) return a.c_[0] == b.c_[0];
  const Field& f = common_field(*a.field_, *b.field_);
  return a.coerce(f).c_ == b.coerce(f).c_;
}

std::size_t CycloNum::hash() const {
  std::size_t h = field_->conductor();
  for (const auto& q : c_) hash_combine(h, hash_value(q));
  return h;
}

std::string CycloNum::to_string() const {
  if (is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  unsigned n = field_->conductor();
  for (std::size_t i = 0; i < c_.size(); ++i) {
    const Rational& q = c_[i];
    if (q == 0) continue;
    Rational mag = abs(q);
    if (q < 0)
      os << '-';
    else if (!first)
      os << '+';
    first = false;
    if (i == 0) {
      os << mag.get_str();
      continue;
    }
    if (mag != 1) os << mag.get_str() << '*';
    os << 'z' << n;
    if (i > 1) os << '^' << i;
  }
  return os.str();
}

CycloNum parse_literal(const std::string& text) {
  std::string s;
  for (char ch : text)
    if (!std::isspace(static_cast<unsigned char>(ch))) s += ch;
  require(!s.empty(), "empty cyclotomic literal");
  std::size_t pos = 0;
  auto fail = [&](const std::string& why) {
    throw InvalidInput("bad cyclotomic literal '" + text + "' at offset " + std::to_string(pos) + ": " + why);
  };
  auto read_uint = [&]() -> BigInt {
    std::size_t start = pos;
    while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
    if (start == pos) fail("expected a number");
    return BigInt(s.substr(start, pos - start));
  };
  CycloNum total;
  while (pos < s.size()) {
    int sign = 1;
    if (s[pos] == '+' || s[pos] == '-') {
      sign = s[pos] == '-' ? -1 : 1;
      ++pos;
    } else if (pos != 0) {
      fail("expected '+' or '-'");
    }
    Rational coef(1);
    bool have_coef = false;
    if (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) {
      BigInt num = read_uint();
      BigInt den(1);
      if (pos < s.size() && s[pos] == '/') {
        ++pos;
        den = read_uint();
        if (den == 0) fail("zero denominator");
      }
      coef = Rational(num, den);
      coef.canonicalize();
      have_coef = true;
      if (pos < s.size() && s[pos] == '*') ++pos;
    }
    CycloNum term;
    if (pos < s.size() && s[pos] == 'z') {
      ++pos;
      BigInt nbig = read_uint();
      if (nbig < 1 || nbig > kMaxConductor) fail("conductor out of range");
      unsigned n = static_cast<unsigned>(nbig.get_ui());
      long e = 1;
      if (pos < s.size() && s[pos] == '^') {
        ++pos;
        bool neg = false;
        if (pos < s.size() && s[pos] == '-') {
          neg = true;
          ++pos;
        }
        BigInt eb = read_uint();
        if (eb > 1000000) fail("exponent too large");
        e = static_cast<long>(eb.get_si());
        if (neg) e = -e;
      }
      const Field& f = Field::get(n);
      term = CycloNum::zeta(f, e) * CycloNum(f, coef);
    } else {
      if (!have_coef) fail("expected a coefficient or zN");
      term = CycloNum(Field::get(1), coef);
    }
    if (sign < 0) term = -term;
    total += term;
  }
  return total;
}

CycloNum evaluate(const CycloPoly& p, const CycloNum& x) {
  CycloNum acc(x.field(), Rational(0));
  for (std::size_t i = p.size(); i-- > 0;) acc = acc * x + p[i];
  return acc;
}

Matrix::Matrix(std::size_t rows, std::size_t cols, const Field& f)
    : r_(rows), c_(cols), a_(rows * cols, CycloNum(f, Rational(0))) {}

Matrix::Matrix(std::size_t rows, std::size_t cols, std::vector<CycloNum> entries)
    : r_(rows), c_(cols), a_(std::move(entries)) {
  ensure(a_.size() == rows * cols, "matrix entry count mismatch");
  if (a_.empty()) return;
  const Field* f = &a_[0].field();
  for (const auto& x : a_) f = &common_field(*f, x.field());
  for (auto& x : a_) x = x.coerce(*f);
}

Matrix Matrix::identity(std::size_t n, const Field& f) {
  Matrix m(n, n, f);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = CycloNum(f, Rational(1));
  return m;
}

Matrix Matrix::diagonal(const std::vector<CycloNum>& d) {
  std::size_t n = d.size();
  const Field* f = &d[0].field();
  for (const auto& x : d) f = &common_field(*f, x.field());
  Matrix m(n, n, *f);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = d[i].coerce(*f);
  return m;
}

const Field& Matrix::field() const { return a_.empty() ? Field::get(1) : a_[0].field(); }

Matrix Matrix::coerce(const Field& target) const {
  Matrix m = *this;
  for (auto& x : m.a_) x = x.coerce(target);
  return m;
}

Matrix Matrix::operator*(const Matrix& o) const {
  ensure(c_ == o.r_, "matrix dimension mismatch in product");
  if (&field() != &o.field()) {
    const Field& f = common_field(field(), o.field());
    return coerce(f) * o.coerce(f);
  }
  Matrix m(r_, o.c_, field());
  for (std::size_t i = 0; i < r_; ++i)
    for (std::size_t k = 0; k < c_; ++k) {
      const CycloNum& x = (*this)(i, k);
      if (x.is_zero()) continue;
      for (std::size_t j = 0; j < o.c_; ++j) {
        const CycloNum& y = o(k, j);
        if (!y.is_zero()) m(i, j) += x * y;
      }
    }
  return m;
}

Matrix Matrix::operator-(const Matrix& o) const {
  ensure(r_ == o.r_ && c_ == o.c_, "matrix dimension mismatch in difference");
  Matrix m = *this;
  for (std::size_t i = 0; i < a_.size(); ++i) m.a_[i] -= o.a_[i];
  return m;
}

Matrix Matrix::scaled(const CycloNum& s) const {
  Matrix m = *this;
  for (auto& x : m.a_) x = x * s;
  return m;
}

std::vector<CycloNum> Matrix::apply(const std::vector<CycloNum>& v) const {
  ensure(v.size() == c_, "vector length mismatch");
  std::vector<CycloNum> out(r_, CycloNum(field(), Rational(0)));
  for (std::size_t i = 0; i < r_; ++i)
    for (std::size_t j = 0; j < c_; ++j)
      if (!(*this)(i, j).is_zero() && !v[j].is_zero()) out[i] += (*this)(i, j) * v[j];
  return out;
}

std::vector<CycloNum> Matrix::apply_row(const std::vector<CycloNum>& v) const {
  ensure(v.size() == r_, "vector length mismatch");
  std::vector<CycloNum> out(c_, CycloNum(field(), Rational(0)));
  for (std::size_t j = 0; j < c_; ++j)
    for (std::size_t i = 0; i < r_; ++i)
      if (!(*this)(i, j).is_zero() && !v[i].is_zero()) out[j] += v[i] * (*this)(i, j);
  return out;
}

Matrix Matrix::pow(unsigned long e) const {
  ensure(r_ == c_, "power of a non-square matrix");
  Matrix result = identity(r_, field());
  Matrix base = *this;
  while (e) {
    if (e & 1) result = result * base;
    e >>= 1;
    if (e) base = base * base;
  }
  return result;
}

bool Matrix::is_identity() const {
  for (std::size_t i = 0; i < r_; ++i)
    for (std::size_t j = 0; j < c_; ++j) {
      const CycloNum& x = (*this)(i, j);
      if (i == j ? !x.is_one() : !x.is_zero()) return false;
    }
  return true;
}

std::optional<CycloNum> Matrix::scalar_value() const {
  if (r_ != c_ || r_ == 0) return std::nullopt;
  for (std::size_t i = 0; i < r_; ++i)
    for (std::size_t j = 0; j < c_; ++j) {
      if (i == j) {
        if ((*this)(i, j) != (*this)(0, 0)) return std::nullopt;
      } else if (!(*this)(i, j).is_zero()) {
        return std::nullopt;
      }
    }
  return (*this)(0, 0);
}

CycloNum Matrix::trace() const {
  CycloNum t(field(), Rational(0));
  for (std::size_t i = 0; i < std::min(r_, c_); ++i) t += (*this)(i, i);
  return t;
}

CycloNum Matrix::det() const {
  require(r_ == c_, "determinant of a non-square matrix");
  const Matrix& m = *this;
  switch (r_) {
    case 1:
      return m(0, 0);
    case 2:
      return m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0);
    case 3:
      return m(0, 0) * (m(1, 1) * m(2, 2) - m(1, 2) * m(2, 1)) - m(0, 1) * (m(1, 0) * m(2, 2) - m(1, 2) * m(2, 0)) +
             m(0, 2) * (m(1, 0) * m(2, 1) - m(1, 1) * m(2, 0));
    default:
      throw InvalidInput("determinant supported for size <= 3 only");
  }
}

Matrix Matrix::adjugate() const {
  require(r_ == c_ && r_ >= 1 && r_ <= 3, "adjugate supported for square size <= 3 only");
  const Matrix& m = *this;
  const Field& f = field();
  if (r_ == 1) return identity(1, f);
  if (r_ == 2) return Matrix(2, 2, {m(1, 1), -m(0, 1), -m(1, 0), m(0, 0)});
  Matrix a(3, 3, f);
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) {
      std::size_t r0 = (j + 1) % 3, r1 = (j + 2) % 3, c0 = (i + 1) % 3, c1 = (i + 2) % 3;
      a(i, j) = m(r0, c0) * m(r1, c1) - m(r0, c1) * m(r1, c0);
    }
  return a;
}

Matrix Matrix::projective_canonical() const {
  for (const auto& x : a_)
    if (!x.is_zero()) {
      if (x.is_one()) return *this;
      return scaled(x.inverse());
    }
  throw InvalidInput("zero matrix has no projective class");
}

bool operator==(const Matrix& a, const Matrix& b) {
  if (a.r_ != b.r_ || a.c_ != b.c_) return false;
  for (std::size_t i = 0; i < a.a_.size(); ++i)
    if (a.a_[i] != b.a_[i]) return false;
  return true;
}

std::size_t Matrix::hash() const {
  std::size_t h = r_ * 31 + c_;
  for (const auto& x : a_) hash_combine(h, x.hash());
  return h;
}

std::string Matrix::to_string() const {
  std::string s = "[";
  for (std::size_t i = 0; i < r_; ++i) {
    if (i) s += "; ";
    for (std::size_t j = 0; j < c_; ++j) {
      if (j) s += ' ';
      s += (*this)(i, j).to_string();
    }
  }
  return s + "]";
}

std::vector<CycloNum> projective_normalize(std::vector<CycloNum> v) {
  for (std::size_t i = 0; i < v.size(); ++i)
    if (!v[i].is_zero()) {
      if (v[i].is_one()) return v;
      CycloNum inv = v[i].inverse();
      for (std::size_t j = i; j < v.size(); ++j) v[j] = v[j] * inv;
      return v;
    }
  throw InvariantViolation("zero vector has no projective class");
}

std::vector<CycloNum> cross(const std::vector<CycloNum>& a, const std::vector<CycloNum>& b) {
  ensure(a.size() == 3 && b.size() == 3, "cross product needs 3-vectors");
  return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}

CycloNum dot(const std::vector<CycloNum>& a, const std::vector<CycloNum>& b) {
  ensure(a.size() == b.size() && !a.empty(), "dot product length mismatch");
  CycloNum s = a[0] * b[0];
  for (std::size_t i = 1; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

bool is_zero_vector(const std::vector<CycloNum>& v) {
  return std::all_of(v.begin(), v.end(), [](const CycloNum& x) { return x.is_zero(); });
}

namespace {

// Reduced row echelon form in place; returns pivot columns.
std::vector<std::size_t> rref(Matrix& m) {
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t col = 0; col < m.cols() && row < m.rows(); ++col) {
    std::size_t p = row;
    while (p < m.rows() && m(p, col).is_zero()) ++p;
    if (p == m.rows()) continue;
    if (p != row)
      for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(p, j), m(row, j));
    CycloNum inv = m(row, col).inverse();
    for (std::size_t j = col; j < m.cols(); ++j) m(row, j) = m(row, j) * inv;
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (i == row || m(i, col).is_zero()) continue;
      CycloNum factor = m(i, col);
      for (std::size_t j = col; j < m.cols(); ++j) m(i, j) -= factor * m(row, j);
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

}  // namespace

std::size_t rank(const Matrix& m) {
  Matrix w = m;
  return rref(w).size();
}

std::vector<std::vector<CycloNum>> nullspace(const Matrix& m) {
  Matrix w = m;
  auto pivots = rref(w);
  const Field& f = m.field();
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto p : pivots) is_pivot[p] = true;
  std::vector<std::vector<CycloNum>> basis;
  for (std::size_t free = 0; free < m.cols(); ++free) {
    if (is_pivot[free]) continue;
    std::vector<CycloNum> v(m.cols(), CycloNum(f, Rational(0)));
    v[free] = CycloNum(f, Rational(1));
    for (std::size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = -w(r, free);
    basis.push_back(std::move(v));
  }
  return basis;
}

CycloPoly char_poly(const Matrix& m) {
  require(m.rows() == m.cols(), "characteristic polynomial needs a square matrix");
  const Field& f = m.field();
  CycloNum one(f, Rational(1));
  switch (m.rows()) {
    case 1:
      return {-m(0, 0), one};
    case 2:
      return {m.det(), -m.trace(), one};
    case 3: {
      CycloNum c1 = (m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0)) + (m(0, 0) * m(2, 2) - m(0, 2) * m(2, 0)) +
                    (m(1, 1) * m(2, 2) - m(1, 2) * m(2, 1));
      return {-m.det(), c1, -m.trace(), one};
    }
    default:
      throw InvalidInput("characteristic polynomial supported for size 1..3 only");
  }
}

std::vector<Eigen> unity_eigendata(const Matrix& m, unsigned order) {
  require(order >= 1, "order must be positive");
  require(m.rows() == m.cols(), "eigendata needs a square matrix");
  require(m.pow(order).is_identity(), "not of declared finite order: M^" + std::to_string(order) + " != I");
  const Field& f = m.field();
  CycloPoly chi = char_poly(m);
  std::vector<Eigen> out;
  std::size_t total = 0;
  for (unsigned j = 0; j < order; ++j) {
    CycloNum lambda = CycloNum::root_of_unity(f, order, j);
    if (!evaluate(chi, lambda).is_zero()) continue;
    Matrix shifted = m - Matrix::identity(m.rows(), f).scaled(lambda);
    std::size_t dim = m.rows() - rank(shifted);
    ensure(dim >= 1, "root of characteristic polynomial with trivial eigenspace");
    out.push_back({j, lambda, dim});
    total += dim;
  }
  ensure(total == m.rows(), "finite-order matrix is not diagonalizable over its field");
  return out;
}

std::optional<unsigned> linear_order(const Matrix& m, unsigned projective_bound) {
  require(m.rows() == m.cols() && m.rows() >= 1, "linear order needs a square matrix");
  Matrix p = m;
  for (unsigned k = 1; k <= projective_bound; ++k) {
    if (auto s = p.scalar_value()) {
      auto o = s->root_of_unity_order();
      if (!o) return std::nullopt;
      return k * *o;
    }
    p = p * m;
  }
  return std::nullopt;
}

}  // namespace ifp::cyclo
