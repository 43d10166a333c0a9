/** @file cyclotomic.hpp
 *  @brief Exact arithmetic in cyclotomic fields Q(zeta_N) and small matrices over them.
 *
 *  Numbers are stored in the power basis 1, z, ..., z^(phi(N)-1) reduced modulo the
 *  N-th cyclotomic polynomial. Every Field is created once per conductor and lives for
 *  the rest of the process, so a CycloNum may keep a plain pointer to it.
 */
#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace ifp::cyclo {

using BigInt = mpz_class;
using Rational = mpq_class;

/** Ascending coefficients: p[i] is the coefficient of x^i. */
using RationalPoly = std::vector<Rational>;

std::size_t hash_value(const BigInt& z);
std::size_t hash_value(const Rational& q);
inline void hash_combine(std::size_t& seed, std::size_t v) {
  seed ^= v + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2);
}

std::uint64_t gcd_u64(std::uint64_t a, std::uint64_t b);
std::uint64_t lcm_u64(std::uint64_t a, std::uint64_t b);
unsigned euler_phi(unsigned n);

/** Phi_n with integer coefficients, ascending. n >= 1. */
const RationalPoly& cyclotomic_polynomial(unsigned n);

/** Hard ceiling for any conductor the library will instantiate. */
constexpr unsigned kMaxConductor = 5040;

class Field {
 public:
  /** Q(zeta_N). Throws InvalidInput if N is 0 or above kMaxConductor. */
  static const Field& get(unsigned conductor);

  unsigned conductor() const { return n_; }
  unsigned degree() const { return d_; }
  const RationalPoly& modulus() const { return *phi_; }

  /** Power-basis coordinates of zeta_N^e, e taken mod N. */
  const std::vector<Rational>& zeta_power(long e) const;

  /** Coordinates of x^k mod Phi_N for d <= k <= 2d-2. */
  const std::vector<Rational>& reduction(unsigned k) const { return reduce_[k - d_]; }

  /** Units k mod N, ascending (Galois group indices). */
  const std::vector<unsigned>& units() const { return units_; }

  Field(const Field&) = delete;
  Field& operator=(const Field&) = delete;

 private:
  explicit Field(unsigned n);
  unsigned n_;
  unsigned d_;
  const RationalPoly* phi_;
  std::vector<std::vector<Rational>> reduce_;
  std::vector<std::vector<Rational>> powers_;
  std::vector<unsigned> units_;
};

class CycloNum {
 public:
  /** Zero of Q. */
  CycloNum();
  CycloNum(const Field& f, const Rational& q);
  CycloNum(const Field& f, long q) : CycloNum(f, Rational(q)) {}
  CycloNum(const Field& f, std::vector<Rational> coeffs);

  /** zeta_N^e in the field f. */
  static CycloNum zeta(const Field& f, long e);
  /** zeta_m^j inside f; requires m | N (or m | 2N when N is odd). */
  static CycloNum root_of_unity(const Field& f, unsigned m, long j);

  const Field& field() const { return *field_; }
  unsigned conductor() const { return field_->conductor(); }
  const std::vector<Rational>& coeffs() const { return c_; }

  bool is_zero() const;
  bool is_one() const;
  bool is_rational() const;
  /** Valid only if is_rational(). */
  const Rational& rational_value() const { return c_[0]; }

  /** Image under zeta_N -> zeta_M^(M/N); requires N | M. */
  CycloNum coerce(const Field& target) const;
  /** Galois automorphism zeta -> zeta^k, gcd(k, N) = 1. */
  CycloNum galois(unsigned k) const;
  CycloNum inverse() const;
  CycloNum pow(long e) const;
  /** Multiplicative order if this is a root of unity, else nullopt. */
  std::optional<unsigned> root_of_unity_order() const;

  CycloNum operator-() const;
  CycloNum& operator+=(const CycloNum& o);
  CycloNum& operator-=(const CycloNum& o);
  CycloNum& operator*=(const CycloNum& o);
  CycloNum& operator/=(const CycloNum& o) { return *this *= o.inverse(); }
  friend CycloNum operator+(CycloNum a, const CycloNum& b) { return a += b; }
  friend CycloNum operator-(CycloNum a, const CycloNum& b) { return a -= b; }
  friend CycloNum operator*(const CycloNum& a, const CycloNum& b);
  friend CycloNum operator/(const CycloNum& a, const CycloNum& b) { return a * b.inverse(); }

  /** Equal value in a common field; different conductors are compared after coercion. */
  friend bool operator==(const CycloNum& a, const CycloNum& b);
  friend bool operator!=(const CycloNum& a, const CycloNum& b) { return !(a == b); }

  std::size_t hash() const;
  /** Literal syntax accepted by parse_literal, e.g. "-1/3-2/3*z3". */
  std::string to_string() const;

 private:
  const Field* field_;
  std::vector<Rational> c_;
};

/** Parse "3/2", "z4", "-1/3-2/3*z3", "2*z12^5". Throws InvalidInput. */
CycloNum parse_literal(const std::string& text);

/** lcm of two conductors; throws beyond kMaxConductor. */
const Field& common_field(const Field& a, const Field& b);

/** Polynomial over a cyclotomic field, ascending. */
using CycloPoly = std::vector<CycloNum>;
CycloNum evaluate(const CycloPoly& p, const CycloNum& x);

class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, const Field& f);
  Matrix(std::size_t rows, std::size_t cols, std::vector<CycloNum> entries);
  static Matrix identity(std::size_t n, const Field& f);
  static Matrix diagonal(const std::vector<CycloNum>& d);

  std::size_t rows() const { return r_; }
  std::size_t cols() const { return c_; }
  const Field& field() const;
  CycloNum& operator()(std::size_t i, std::size_t j) { return a_[i * c_ + j]; }
  const CycloNum& operator()(std::size_t i, std::size_t j) const { return a_[i * c_ + j]; }
  const std::vector<CycloNum>& entries() const { return a_; }

  Matrix coerce(const Field& target) const;
  Matrix operator*(const Matrix& o) const;
  Matrix operator-(const Matrix& o) const;
  Matrix scaled(const CycloNum& s) const;
  std::vector<CycloNum> apply(const std::vector<CycloNum>& v) const;
  /** Row vector times matrix. */
  std::vector<CycloNum> apply_row(const std::vector<CycloNum>& v) const;
  Matrix pow(unsigned long e) const;

  bool is_identity() const;
  /** lambda if this equals lambda * I. */
  std::optional<CycloNum> scalar_value() const;
  CycloNum trace() const;
  CycloNum det() const;
  /** Classical adjugate (square, n <= 3). */
  Matrix adjugate() const;
  /** Scale so the first nonzero entry in row-major order is 1. */
  Matrix projective_canonical() const;

  friend bool operator==(const Matrix& a, const Matrix& b);
  friend bool operator!=(const Matrix& a, const Matrix& b) { return !(a == b); }
  std::size_t hash() const;
  std::string to_string() const;

 private:
  std::size_t r_ = 0, c_ = 0;
  std::vector<CycloNum> a_;
};

/** Scale a nonzero vector so its first nonzero entry is 1. */
std::vector<CycloNum> projective_normalize(std::vector<CycloNum> v);
std::vector<CycloNum> cross(const std::vector<CycloNum>& a, const std::vector<CycloNum>& b);
CycloNum dot(const std::vector<CycloNum>& a, const std::vector<CycloNum>& b);
bool is_zero_vector(const std::vector<CycloNum>& v);

std::size_t rank(const Matrix& m);
/** Basis of the right kernel {v : M v = 0}. */
std::vector<std::vector<CycloNum>> nullspace(const Matrix& m);

/** det(x I - M) for k in {1, 2, 3}. */
CycloPoly char_poly(const Matrix& m);

struct Eigen {
  unsigned exponent;  ///< eigenvalue is zeta_m^exponent
  CycloNum value;
  std::size_t dimension;
};

/** Eigenvalues of M with M^m = I, as powers of zeta_m, with eigenspace dimensions. */
std::vector<Eigen> unity_eigendata(const Matrix& m, unsigned order);

/** Smallest e >= 1 with M^e = I; nullopt if M has no finite order (scalar part not a root of unity). */
std::optional<unsigned> linear_order(const Matrix& m, unsigned projective_bound = 100000);

}  // namespace ifp::cyclo
