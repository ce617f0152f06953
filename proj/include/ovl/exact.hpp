#pragma once

// Exact scalar and dense matrix kernel. Every other part of the library
// works on these types; there is no floating point anywhere.

#include <boost/multiprecision/eigen.hpp>
#include <boost/multiprecision/gmp.hpp>
#include <Eigen/Core>

#include <cstdint>
#include <string>
#include <vector>

namespace ovl {

using Integer = boost::multiprecision::number<boost::multiprecision::gmp_int,
                                              boost::multiprecision::et_off>;
using Rational = boost::multiprecision::number<boost::multiprecision::gmp_rational,
                                               boost::multiprecision::et_off>;

template <class Scalar>
using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
template <class Scalar>
using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

using IntMatrix = Matrix<Integer>;
using RatMatrix = Matrix<Rational>;
using IntVector = Vector<Integer>;
using RatVector = Vector<Rational>;

/// Result of `snf`: u * m * v == d, with u and v unimodular and the
/// diagonal of d a divisibility chain of non-negative integers.
struct SnfDecomposition {
  IntMatrix u;
  IntMatrix d;
  IntMatrix v;

  /// Diagonal of d, min(rows, cols) entries.
  std::vector<Integer> invariant_factors() const;
};

struct Signature {
  int positive = 0;
  int negative = 0;
  int zero = 0;

  friend bool operator==(const Signature&, const Signature&) = default;
};

/// p^T * g * p == d with d diagonal and p invertible.
struct CongruenceDiagonalization {
  RatMatrix p;
  RatMatrix d;

  Signature signature() const;
};

// Integer helpers ----------------------------------------------------------

/// Floor division, b != 0.
Integer floor_div(const Integer& a, const Integer& b);
/// Representative of a modulo m in [0, |m|).
Integer mod(const Integer& a, const Integer& m);
std::int64_t mod(std::int64_t a, std::int64_t m);
Integer gcd(const Integer& a, const Integer& b);
std::int64_t gcd(std::int64_t a, std::int64_t b);
std::int64_t lcm(std::int64_t a, std::int64_t b);

/// Extended Euclid: returns g = gcd(a, b) >= 0 and sets s, t with a*s + b*t = g.
Integer extended_gcd(const Integer& a, const Integer& b, Integer& s, Integer& t);
std::int64_t extended_gcd(std::int64_t a, std::int64_t b, std::int64_t& s, std::int64_t& t);

/// Inverse of a modulo m; throws std::domain_error when gcd(a, m) != 1.
std::int64_t inverse_mod(std::int64_t a, std::int64_t m);
/// (a * b) mod m without overflow, result in [0, m).
std::int64_t mul_mod(std::int64_t a, std::int64_t b, std::int64_t m);

bool is_prime(std::int64_t n);
/// Prime factorization by trial division, primes ascending.
std::vector<std::pair<std::int64_t, int>> factorize(std::int64_t n);
/// Largest e with p^e | n (n != 0).
int valuation(std::int64_t n, std::int64_t p);
std::int64_t ipow(std::int64_t base, int exponent);

/// Legendre symbol (a / p) for an odd prime p: -1, 0 or 1.
int legendre(std::int64_t a, std::int64_t p);

/// Converts to int64, throwing std::overflow_error when out of range.
std::int64_t to_int64(const Integer& x);

// Rational helpers ---------------------------------------------------------

Integer floor(const Rational& x);
/// Representative of x modulo m (m > 0) in [0, m).
Rational mod(const Rational& x, const Integer& m);
bool is_integer(const Rational& x);
std::string to_string(const Rational& x);
std::string to_string(const Integer& x);

// Matrix helpers -----------------------------------------------------------

RatMatrix to_rational(const IntMatrix& m);
bool is_integral(const RatMatrix& m);
/// Throws std::domain_error("not integral") if some entry is fractional.
IntMatrix to_integer(const RatMatrix& m);
IntMatrix identity(Eigen::Index n);
bool is_symmetric(const IntMatrix& m);
bool is_symmetric(const RatMatrix& m);
IntMatrix make_matrix(std::initializer_list<std::initializer_list<std::int64_t>> rows);

/// Exact determinant (fraction-free Bareiss elimination).
Integer determinant(const IntMatrix& m);
Rational determinant(const RatMatrix& m);

/// Smith normal form with a fixed pivot rule: at each stage the pivot is
/// the entry of smallest nonzero absolute value in the active block, ties
/// broken by row-major position. Deterministic for a given input.
SnfDecomposition snf(const IntMatrix& m);

/// Row-style Hermite normal form of the row lattice of m: upper triangular,
/// positive pivots, entries above each pivot reduced into [0, pivot). Zero
/// rows are dropped, so the result is cols x cols. Throws
/// std::domain_error("rank deficient") when m does not have full column rank.
IntMatrix hnf(const IntMatrix& m);

/// Exact inverse; throws std::domain_error("singular").
RatMatrix inverse(const RatMatrix& m);

/// Symmetric Gaussian elimination. When no usable diagonal pivot remains
/// but an off-diagonal entry g_ij is nonzero, row/column j is added to
/// row/column i first.
CongruenceDiagonalization congruence_diagonalize(const RatMatrix& g);

std::string to_string(const IntMatrix& m);
std::string to_string(const RatMatrix& m);

}  // namespace ovl
