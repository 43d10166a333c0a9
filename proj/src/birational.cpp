#include "birational.hpp"

#include <numeric>

#include "error.hpp"

namespace ifp::birational {

namespace {

std::int64_t mod(std::int64_t x, std::int64_t r) {
  std::int64_t m = x % r;
  return m < 0 ? m + r : m;
}

std::int64_t inverse_mod(std::int64_t a, std::int64_t r) {
  std::int64_t t = 0, nt = 1, x = r, nx = mod(a, r);
  while (nx) {
    std::int64_t k = x / nx;
    t = std::exchange(nt, t - k * nt);
    x = std::exchange(nx, x - k * nx);
  }
  return mod(t, r);
}

BlowupPart reduce(const Germ& raw) {
  std::int64_t k = std::gcd(raw.r, std::gcd(raw.p, raw.q));
  return {raw, make_germ(raw.r / k, raw.p / k, raw.q / k), k};
}

}  // namespace

std::string Germ::to_string() const {
  return "1/" + std::to_string(r) + "(" + std::to_string(p) + "," + std::to_string(q) + ")";
}

Germ make_germ(std::int64_t r, std::int64_t p, std::int64_t q) {
  require(r >= 1, "germ order r must be at least 1");
  return {r, mod(p, r), mod(q, r)};
}

Germ normalize_germ(const Germ& g) {
  require(std::gcd(g.r, g.p) == 1, "non-faithful first weight; reduce first");
  return make_germ(g.r, 1, g.q * inverse_mod(g.p, g.r));
}

std::pair<BlowupPart, BlowupPart> blowup_germ(const Germ& g) {
  return {reduce(make_germ(g.r, g.p, g.q - g.p)), reduce(make_germ(g.r, g.p - g.q, g.q))};
}

std::int64_t separation_exponent(const Germ& g) {
  require(std::gcd(g.r, g.p) == 1, "separation needs gcd(r, p) = 1");
  for (std::int64_t t = 0; t < 2 * g.r; ++t)
    if (std::gcd(g.r, mod((t + 1) * g.p - g.q, g.r)) == 1 || g.r == 1) return t;
  throw InvariantViolation("separation failed");
}

std::vector<std::int64_t> hj_expand(std::int64_t r, std::int64_t a) {
  require(1 <= a && a < r && std::gcd(r, a) == 1, "hj_expand needs 1 <= a < r with gcd(r, a) = 1");
  std::vector<std::int64_t> b;
  // r/a = b1 - a'/a with b1 = ceil(r/a); continue with a/a'
  while (a > 0) {
    std::int64_t bi = (r + a - 1) / a;
    b.push_back(bi);
    std::int64_t next = bi * a - r;
    r = a;
    a = next;
  }
  return b;
}

std::pair<std::int64_t, std::int64_t> hj_contract(const std::vector<std::int64_t>& chain) {
  require(!chain.empty(), "empty chain");
  for (auto b : chain) require(b >= 2, "chain entries must be at least 2");
  // evaluate from the back: x = b_k, then x = b_i - 1/x as num/den
  std::int64_t num = chain.back(), den = 1;
  for (auto it = chain.rbegin() + 1; it != chain.rend(); ++it) {
    std::int64_t n2 = *it * num - den;
    den = num;
    num = n2;
  }
  std::int64_t g = std::gcd(num, den);
  return {num / g, den / g};
}

std::vector<std::vector<std::int64_t>> chain_matrix(const std::vector<std::int64_t>& chain) {
  std::size_t k = chain.size();
  std::vector<std::vector<std::int64_t>> m(k, std::vector<std::int64_t>(k, 0));
  for (std::size_t i = 0; i < k; ++i) {
    m[i][i] = -chain[i];
    if (i + 1 < k) m[i][i + 1] = m[i + 1][i] = 1;
  }
  return m;
}

bool is_negative_definite(const std::vector<std::vector<std::int64_t>>& m) {
  std::size_t n = m.size();
  for (const auto& row : m) require(row.size() == n, "matrix must be square");
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) require(m[i][j] == m[j][i], "matrix must be symmetric");
  // Leading minors by fraction-free (Bareiss) elimination; minor k has sign (-1)^k.
  std::vector<std::vector<BigInt>> a(n, std::vector<BigInt>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) a[i][j] = BigInt(static_cast<long>(m[i][j]));
  BigInt prev = 1;
  for (std::size_t k = 0; k < n; ++k) {
    const BigInt& minor = a[k][k];
    int want = (k % 2 == 0) ? -1 : 1;
    if (sgn(minor) != want) return false;
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j) a[i][j] = (a[k][k] * a[i][j] - a[i][k] * a[k][j]) / prev;
    prev = a[k][k];
  }
  return true;
}

std::vector<Rational> solve(std::vector<std::vector<Rational>> a, std::vector<Rational> b) {
  std::size_t n = a.size();
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    while (piv < n && a[piv][c] == 0) ++piv;
    ensure(piv < n, "singular system");
    std::swap(a[piv], a[c]);
    std::swap(b[piv], b[c]);
    for (std::size_t i = 0; i < n; ++i) {
      if (i == c || a[i][c] == 0) continue;
      Rational f = a[i][c] / a[c][c];
      for (std::size_t j = c; j < n; ++j) a[i][j] -= f * a[c][j];
      b[i] -= f * b[c];
    }
  }
  for (std::size_t i = 0; i < n; ++i) b[i] /= a[i][i];
  return b;
}

std::vector<Rational> discrepancies(const std::vector<std::vector<std::int64_t>>& m) {
  if (!is_negative_definite(m)) throw InvalidInput("not contractible");
  std::size_t n = m.size();
  std::vector<std::vector<Rational>> a(n, std::vector<Rational>(n));
  std::vector<Rational> rhs(n);
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t i = 0; i < n; ++i) a[j][i] = Rational(static_cast<long>(m[i][j]));
    rhs[j] = Rational(static_cast<long>(m[j][j] + 2));
  }
  return solve(std::move(a), std::move(rhs));
}

std::vector<Rational> chain_discrepancies(const std::vector<std::int64_t>& chain) {
  return discrepancies(chain_matrix(chain));
}

}  // namespace ifp::birational
