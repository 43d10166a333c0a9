#include "fpgroup.hpp"

#include <algorithm>
#include <cstdlib>

#include "error.hpp"

namespace ifp::fpgroup {

Word free_reduce(const Word& w) {
  Word out;
  for (int x : w) {
    if (!out.empty() && out.back() == -x)
      out.pop_back();
    else
      out.push_back(x);
  }
  // cyclic reduction is not applied; relators are kept as written
  return out;
}

Presentation make_presentation(int n, std::vector<Word> relators, std::vector<std::string> names) {
  require(n >= 0, "number of generators must be nonnegative");
  Presentation p;
  p.num_generators = n;
  for (auto& w : relators) {
    for (int x : w) require(x != 0 && std::abs(x) <= n, "relator letter out of range");
    Word r = free_reduce(w);
    if (!r.empty()) p.relators.push_back(std::move(r));
  }
  if (names.empty())
    for (int i = 0; i < n; ++i) names.push_back("x" + std::to_string(i + 1));
  require(static_cast<int>(names.size()) == n, "one name per generator");
  p.names = std::move(names);
  return p;
}

std::string to_string(const Presentation& p) {
  std::string s = "<";
  for (int i = 0; i < p.num_generators; ++i) s += (i ? ", " : "") + p.names[i];
  s += " |";
  for (std::size_t r = 0; r < p.relators.size(); ++r) {
    s += r ? ", " : " ";
    const Word& w = p.relators[r];
    for (std::size_t i = 0; i < w.size();) {
      std::size_t j = i;
      while (j < w.size() && w[j] == w[i]) ++j;
      long e = static_cast<long>(j - i) * (w[i] > 0 ? 1 : -1);
      s += p.names[std::abs(w[i]) - 1];
      if (e != 1) s += "^" + std::to_string(e);
      i = j;
    }
  }
  return s + ">";
}

namespace {

class CosetTable {
 public:
  CosetTable(int gens, std::size_t cap) : cols_(2 * gens), cap_(cap) { add(); }

  static int col(int letter) { return letter > 0 ? 2 * (letter - 1) : 2 * (-letter - 1) + 1; }
  static int inv(int c) { return c ^ 1; }

  bool overflow() const { return overflow_; }
  std::size_t defined() const { return parent_.size(); }
  bool alive(std::size_t c) const { return parent_[c] == c; }
  long& at(std::size_t c, int x) { return table_[c * cols_ + x]; }

  std::size_t live() const {
    std::size_t n = 0;
    for (std::size_t c = 0; c < parent_.size(); ++c) n += parent_[c] == c;
    return n;
  }

  bool define(std::size_t c, int x) {
    if (parent_.size() >= cap_) {
      overflow_ = true;
      return false;
    }
    std::size_t d = add();
    at(c, x) = static_cast<long>(d);
    at(d, inv(x)) = static_cast<long>(c);
    return true;
  }

  // Trace w from c; fill a single gap by deduction, define otherwise.
  void scan_and_fill(std::size_t c, const std::vector<int>& w) {
    std::size_t f = c, b = c;
    long i = 0, j = static_cast<long>(w.size()) - 1;
    while (true) {
      while (i <= j && at(f, w[i]) >= 0) f = at(f, w[i++]);
      if (i > j) {
        if (f != b) coincidence(f, b);
        return;
      }
      while (j >= i && at(b, inv(w[j])) >= 0) b = at(b, inv(w[j--]));
      if (j < i) {
        coincidence(f, b);
        return;
      }
      if (i == j) {
        at(f, w[i]) = static_cast<long>(b);
        at(b, inv(w[i])) = static_cast<long>(f);
        return;
      }
      if (!define(f, w[i])) return;
    }
  }

  int cols() const { return cols_; }

 private:
  std::size_t add() {
    std::size_t d = parent_.size();
    parent_.push_back(d);
    table_.resize(table_.size() + cols_, -1);
    return d;
  }

  std::size_t rep(std::size_t c) {
    std::size_t r = c;
    while (parent_[r] != r) r = parent_[r];
    while (parent_[c] != r) c = std::exchange(parent_[c], r);
    return r;
  }

  void merge(std::size_t k, std::size_t l, std::vector<std::size_t>& queue) {
    k = rep(k);
    l = rep(l);
    if (k == l) return;
    if (k > l) std::swap(k, l);
    parent_[l] = k;
    queue.push_back(l);
  }

  void coincidence(std::size_t a, std::size_t b) {
    std::vector<std::size_t> queue;
    merge(a, b, queue);
    for (std::size_t qi = 0; qi < queue.size(); ++qi) {
      std::size_t e = queue[qi];
      for (int x = 0; x < cols_; ++x) {
        long fl = at(e, x);
        if (fl < 0) continue;
        std::size_t f = static_cast<std::size_t>(fl);
        at(f, inv(x)) = -1;
        std::size_t e1 = rep(e), f1 = rep(f);
        if (at(e1, x) >= 0)
          merge(f1, static_cast<std::size_t>(at(e1, x)), queue);
        else if (at(f1, inv(x)) >= 0)
          merge(e1, static_cast<std::size_t>(at(f1, inv(x))), queue);
        else {
          at(e1, x) = static_cast<long>(f1);
          at(f1, inv(x)) = static_cast<long>(e1);
        }
      }
    }
  }

  int cols_;
  std::size_t cap_;
  bool overflow_ = false;
  std::vector<std::size_t> parent_;
  std::vector<long> table_;
};

}  // namespace

CosetResult todd_coxeter(const Presentation& p, std::size_t cap) {
  require(cap >= 1, "coset cap must be at least 1");
  CosetResult r;
  if (p.num_generators == 0) {
    r.complete = true;
    r.order = 1;
    r.cosets_defined = 1;
    return r;
  }
  CosetTable t(p.num_generators, cap);
  std::vector<std::vector<int>> rels;
  for (const auto& w : p.relators) {
    std::vector<int> cw;
    for (int x : w) cw.push_back(CosetTable::col(x));
    rels.push_back(std::move(cw));
  }
  for (std::size_t c = 0; c < t.defined(); ++c) {
    for (const auto& w : rels) {
      if (!t.alive(c)) break;
      t.scan_and_fill(c, w);
      if (t.overflow()) break;
    }
    if (t.overflow()) break;
    if (!t.alive(c)) continue;
    for (int x = 0; x < t.cols(); ++x)
      if (t.at(c, x) < 0 && !t.define(c, x)) break;
    if (t.overflow()) break;
  }
  r.cosets_defined = t.defined();
  if (t.overflow()) return r;
  r.complete = true;
  r.order = t.live();
  return r;
}

BigMatrix multiply(const BigMatrix& a, const BigMatrix& b) {
  std::size_t n = a.size(), k = b.size(), m = b.empty() ? 0 : b[0].size();
  BigMatrix c(n, std::vector<BigInt>(m, BigInt(0)));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t l = 0; l < k; ++l)
      if (a[i][l] != 0)
        for (std::size_t j = 0; j < m; ++j) c[i][j] += a[i][l] * b[l][j];
  return c;
}

namespace {

BigMatrix identity(std::size_t n) {
  BigMatrix m(n, std::vector<BigInt>(n, BigInt(0)));
  for (std::size_t i = 0; i < n; ++i) m[i][i] = 1;
  return m;
}

}  // namespace

SmithForm smith_normal_form(const BigMatrix& m0) {
  std::size_t rows = m0.size(), cols = rows ? m0[0].size() : 0;
  for (const auto& r : m0) require(r.size() == cols, "matrix rows must have equal length");
  BigMatrix a = m0;
  BigMatrix u = identity(rows), v = identity(cols);
  auto row_op = [&](std::size_t dst, std::size_t src, const BigInt& k) {  // row dst -= k row src
    for (std::size_t j = 0; j < cols; ++j) a[dst][j] -= k * a[src][j];
    for (std::size_t j = 0; j < rows; ++j) u[dst][j] -= k * u[src][j];
  };
  auto col_op = [&](std::size_t dst, std::size_t src, const BigInt& k) {  // col dst -= k col src
    for (std::size_t i = 0; i < rows; ++i) a[i][dst] -= k * a[i][src];
    for (std::size_t i = 0; i < cols; ++i) v[i][dst] -= k * v[i][src];
  };
  auto swap_rows = [&](std::size_t x, std::size_t y) {
    std::swap(a[x], a[y]);
    std::swap(u[x], u[y]);
  };
  auto swap_cols = [&](std::size_t x, std::size_t y) {
    for (auto& r : a) std::swap(r[x], r[y]);
    for (auto& r : v) std::swap(r[x], r[y]);
  };
  std::size_t n = std::min(rows, cols);
  for (std::size_t t = 0; t < n; ++t) {
    while (true) {
      // smallest nonzero entry of the remaining block becomes the pivot
      std::size_t pi = rows, pj = cols;
      for (std::size_t i = t; i < rows; ++i)
        for (std::size_t j = t; j < cols; ++j)
          if (a[i][j] != 0 && (pi == rows || abs(a[i][j]) < abs(a[pi][pj]))) {
            pi = i;
            pj = j;
          }
      if (pi == rows) break;
      swap_rows(t, pi);
      swap_cols(t, pj);
      bool clean = true;
      for (std::size_t i = t + 1; i < rows; ++i) {
        if (a[i][t] == 0) continue;
        BigInt q = a[i][t] / a[t][t];
        row_op(i, t, q);
        if (a[i][t] != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < cols; ++j) {
        if (a[t][j] == 0) continue;
        BigInt q = a[t][j] / a[t][t];
        col_op(j, t, q);
        if (a[t][j] != 0) clean = false;
      }
      if (!clean) continue;
      // enforce divisibility of the rest of the block
      std::size_t bad = rows;
      for (std::size_t i = t + 1; i < rows && bad == rows; ++i)
        for (std::size_t j = t + 1; j < cols; ++j)
          if (a[i][j] % a[t][t] != 0) {
            bad = i;
            break;
          }
      if (bad == rows) break;
      row_op(t, bad, BigInt(-1));
    }
    if (a[t][t] < 0) {
      for (auto& x : a[t]) x = -x;
      for (auto& x : u[t]) x = -x;
    }
  }
  SmithForm s;
  for (std::size_t t = 0; t < n; ++t) s.diagonal.push_back(a[t][t]);
  s.left = std::move(u);
  s.right = std::move(v);
  return s;
}

AbelianInvariants abelianization(const Presentation& p) {
  std::size_t n = static_cast<std::size_t>(p.num_generators);
  BigMatrix m;
  for (const auto& w : p.relators) {
    std::vector<BigInt> row(n, BigInt(0));
    for (int x : w) row[std::abs(x) - 1] += x > 0 ? 1 : -1;
    m.push_back(std::move(row));
  }
  AbelianInvariants a;
  std::size_t nonzero = 0;
  if (!m.empty() && n > 0) {
    for (const auto& d : smith_normal_form(m).diagonal) {
      if (d == 0) continue;
      ++nonzero;
      if (d > 1) a.invariant_factors.push_back(d);
    }
  }
  a.free_rank = n - nonzero;
  return a;
}

Presentation mumford_presentation(int p, int q) {
  require(p >= 1 && q >= 1, "mumford presentation needs p >= 1 and q >= 1");
  int n = 2 + q;
  std::vector<Word> rels;
  rels.push_back(Word(p, 1));
  rels.push_back(Word(static_cast<std::size_t>(p * q - q), 2));
  std::vector<std::string> names = {"a", "b"};
  for (int j = 1; j <= q; ++j) {
    int c = 2 + j;
    rels.push_back(Word(p, c));
    rels.push_back({1, c});
    rels.push_back({2, -c});
    names.push_back("c" + std::to_string(j));
  }
  return make_presentation(n, std::move(rels), std::move(names));
}

Presentation cyclic_link_presentation(int r) {
  require(r >= 1, "link order must be at least 1");
  return make_presentation(1, {Word(r, 1)}, {"x"});
}

}  // namespace ifp::fpgroup
