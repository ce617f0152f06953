#pragma once

// Finite torsion quadratic modules: a finite abelian group presented as a
// direct sum of cyclic groups Z/d_1 + ... + Z/d_m, with a quadratic form
// q: M -> Q/2Z and the associated bilinear form b: M x M -> Q/Z.

#include "ovl/exact.hpp"
#include "ovl/report.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace ovl {

/// Coordinates of an element with respect to the cyclic generators;
/// entry i is taken modulo the i-th order.
using Element = std::vector<std::int64_t>;

class TorsionQuadraticModule {
 public:
  /// The trivial module.
  TorsionQuadraticModule() = default;

  /// `q[i]` is q(g_i) (taken mod 2), `b(i, j)` is b(g_i, g_j) (taken mod 1).
  /// The diagonal of `b` is ignored and replaced by q(g_i) mod 1. Throws
  /// std::invalid_argument when an order is < 2, `b` is not symmetric, or a
  /// value is incompatible with the generator orders.
  TorsionQuadraticModule(std::vector<std::int64_t> orders, std::vector<Rational> q, RatMatrix b);

  /// Gram-style input as printed for discriminant forms: diagonal entries
  /// are q(g_i), off-diagonal entries are b(g_i, g_j).
  static TorsionQuadraticModule from_gram(std::vector<std::int64_t> orders, const RatMatrix& gram);

  const std::vector<std::int64_t>& orders() const { return orders_; }
  std::size_t rank() const { return orders_.size(); }
  /// Group order, the product of the cyclic orders.
  std::int64_t order() const;
  /// Lcm of the cyclic orders.
  std::int64_t exponent() const;

  const Rational& q(std::size_t i) const { return q_[i]; }
  const Rational& b(std::size_t i, std::size_t j) const { return b_(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)); }
  /// Gram-style matrix: q on the diagonal, b off it.
  RatMatrix gram() const;

  /// True when d_1 | d_2 | ... | d_m.
  bool is_invariant_factor_form() const;
  /// Multiset of prime powers p^e of the group, sorted.
  std::vector<std::pair<std::int64_t, int>> primary_invariants() const;
  /// Invariant factors d_1 | ... | d_r (all > 1) of the underlying group.
  std::vector<std::int64_t> invariant_factors() const;

  Element zero() const { return Element(orders_.size(), 0); }
  Element reduce(Element x) const;
  Element add(const Element& x, const Element& y) const;
  Element scale(std::int64_t m, const Element& x) const;
  std::int64_t element_order(const Element& x) const;
  /// Mixed-radix index of a reduced element, first coordinate most
  /// significant (index order == lexicographic order).
  std::int64_t index_of(const Element& x) const;
  Element element_at(std::int64_t index) const;

 private:
  std::vector<std::int64_t> orders_;
  std::vector<Rational> q_;
  RatMatrix b_;
};

/// Calls f(x) for every element in lexicographic order.
template <class F>
void for_each_element(const std::vector<std::int64_t>& orders, F&& f) {
  Element x(orders.size(), 0);
  while (true) {
    f(static_cast<const Element&>(x));
    std::size_t i = orders.size();
    while (i > 0) {
      --i;
      if (++x[i] < orders[i]) break;
      x[i] = 0;
      if (i == 0) return;
    }
    if (orders.empty()) return;
  }
}

/// Value of q at x, expanded bilinearly from the generator data, in [0, 2).
Rational element_q(const TorsionQuadraticModule& m, const Element& x);
/// Value of b at (x, y), in [0, 1).
Rational element_b(const TorsionQuadraticModule& m, const Element& x, const Element& y);

/// Orthogonal direct sum.
TorsionQuadraticModule direct_sum(const std::vector<TorsionQuadraticModule>& parts);

/// Splits M into its p-parts. The p-part is generated by (d_i / p^e_i) g_i
/// for each generator whose order d_i has p-adic valuation e_i > 0. Primes
/// appear in increasing order; the trivial module maps to an empty map.
std::map<std::int64_t, TorsionQuadraticModule> p_primary_decomposition(const TorsionQuadraticModule& m);

// Cyclic forms (u/v) --------------------------------------------------------

/// The module (Z/vZ, q(x) = u x^2 / v). Requires gcd(u, v) = 1 and u or v
/// even. v = 1 denotes the trivial module.
struct CyclicForm {
  std::int64_t u = 0;
  std::int64_t v = 1;

  CyclicForm() = default;
  CyclicForm(std::int64_t u_, std::int64_t v_);

  /// Module on a single generator (or the trivial module when v = 1).
  TorsionQuadraticModule to_module() const;
  std::string str() const;
};

/// Literal equality of forms: same v and u = u' mod 2v.
bool cyclic_equal(const CyclicForm& a, const CyclicForm& b);

/// Isometry test by enumerating the units w mod v with u w^2 = u' mod 2v.
/// Returns the least such w, or nullopt.
std::optional<std::int64_t> cyclic_isometric(const CyclicForm& a, const CyclicForm& b);

/// (u/ab) = (tu/a) + (su/b) with as + bt = 1 through x -> (x mod a, x mod b).
/// s is taken even when u is odd and a is even (t even when u is odd and b
/// is even), then minimal non-negative. Throws std::invalid_argument when
/// a*b != v or gcd(a, b) != 1.
std::pair<CyclicForm, CyclicForm> split_cyclic(const CyclicForm& c, std::int64_t a, std::int64_t b);

/// Orthogonal splitting of a p-group module into cyclic forms (u_i / p^e_i),
/// ordered from the largest scale down. For odd p this succeeds exactly when
/// the module is nondegenerate. For p = 2 it also needs an odd-valued
/// generator at every step; it returns nullopt otherwise.
std::optional<std::vector<CyclicForm>> orthogonal_cyclic_split(const TorsionQuadraticModule& p_part,
                                                               std::int64_t p);

// Isometry ------------------------------------------------------------------

enum class Verdict { isometric, not_isometric, undecided };

struct IsometryDecision {
  Verdict verdict = Verdict::undecided;
  std::string reason;
};

class UndecidedError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Exhaustive search for a q-preserving group isomorphism M1 -> M2. The
/// result's column i holds the image of the i-th generator of M1 in the
/// coordinates of M2; the lexicographically least witness is returned.
std::optional<IntMatrix> find_isometry_brute_force(const TorsionQuadraticModule& m1,
                                                   const TorsionQuadraticModule& m2);

/// Three-tiered decision: group invariants, then per prime the orthogonal
/// cyclic splitting (rank and discriminant square class per scale for odd
/// p; the 2-part when every scale is cyclic), then exhaustive search on any
/// p-part of order <= brute_force_bound. Never returns a wrong verdict;
/// reports `undecided` when nothing applies.
IsometryDecision tqm_isometry(const TorsionQuadraticModule& m1, const TorsionQuadraticModule& m2,
                              std::int64_t brute_force_bound = 2000);

/// As tqm_isometry, throwing UndecidedError("undecided: unsupported 2-adic
/// shape") instead of returning `undecided`.
bool tqm_isometric(const TorsionQuadraticModule& m1, const TorsionQuadraticModule& m2,
                   std::int64_t brute_force_bound = 2000);

// Automorphisms --------------------------------------------------------------

/// Endomorphism given by an integer matrix acting on generator coordinates:
/// column j is the image of g_j. `inverse`, when set, is a claimed inverse
/// endomorphism used by check_tqm_automorphism.
struct TqmAutomorphism {
  TorsionQuadraticModule domain;
  IntMatrix matrix;
  std::optional<IntMatrix> inverse;
};

Element apply(const TqmAutomorphism& a, const Element& x);
Element apply_matrix(const TorsionQuadraticModule& m, const IntMatrix& a, const Element& x);

/// Checks well-definedness (entry (i,j) * d_j = 0 mod d_i), invertibility
/// (through `inverse` when present, otherwise by exhaustive image check) and
/// preservation of q on every element.
VerificationReport check_tqm_automorphism(const TqmAutomorphism& a);

/// Set of elements of the cyclic subgroup generated by x, sorted by index.
std::vector<std::int64_t> cyclic_subgroup(const TorsionQuadraticModule& m, const Element& x);

std::string to_string(const Element& x);
std::string group_string(const std::vector<std::int64_t>& orders);

}  // namespace ovl
