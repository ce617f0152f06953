#pragma once

// Over-lattices of finite index and their isotropic subgroups.

#include "ovl/lattice.hpp"

#include <functional>

namespace ovl {

/// Cyclic subgroup of prime order p of A_L, identified by its canonical
/// generator: the lexicographically least of the p-1 nonzero multiples,
/// compared as reduced dual fractions.
struct IsotropicSubgroup {
  Element generator;
  /// Representative of `generator` in the basis of L, entries in [0, 1).
  RatVector fraction;
  std::int64_t order = 0;
  /// q(generator) in [0, 2); zero when the subgroup is isotropic.
  Rational q_value;

  bool isotropic() const { return q_value == 0; }
};

struct PrimeSubgroups {
  std::vector<IsotropicSubgroup> isotropic;
  /// Order-p subgroups with q(generator) != 0.
  std::vector<IsotropicSubgroup> rejected;
};

struct OverLattice {
  IntegralLattice base;
  IsotropicSubgroup subgroup;
  /// Rows: basis of the over-lattice in base coordinates, the HNF of the
  /// integer row lattice scaled back by the subgroup order.
  RatMatrix basis;
  IntegralLattice lattice;
  /// Base basis vectors expressed in the over-lattice basis.
  LatticeMap embedding;
};

/// All order-p subgroups of A_L sorted by canonical generator, split into
/// isotropic and rejected. Empty when p does not divide |A_L|.
PrimeSubgroups enumerate_prime_isotropic(const IntegralLattice& l, std::int64_t p);

/// Module-level variant: `fraction` holds (x_i / d_i), the generator in
/// units of the cyclic factors.
PrimeSubgroups enumerate_prime_subgroups(const TorsionQuadraticModule& m, std::int64_t p);

/// The subgroup generated by a dual vector x of prime order.
IsotropicSubgroup subgroup_of(const DiscriminantGroup& a, const RatVector& x);

/// Pull-back of H. Throws std::domain_error("subgroup not isotropic") when
/// the Gram matrix would not be even and integral.
OverLattice construct_overlattice(const IntegralLattice& l, const IsotropicSubgroup& h);

/// M/L inside A_L, read off the over-lattice basis.
IsotropicSubgroup recover_subgroup(const OverLattice& m);

/// Signatures equal and discriminant forms isometric. `undecided` is passed
/// through from tqm_isometry.
IsometryDecision same_genus_decision(const IntegralLattice& a, const IntegralLattice& b,
                                     std::int64_t brute_force_bound = 2000);
/// Throws UndecidedError when the decision is undecided.
bool same_genus(const IntegralLattice& a, const IntegralLattice& b, std::int64_t brute_force_bound = 2000);

/// Calls f(P) for every P with entries in [-bound, bound] and P^T A P = B,
/// in lexicographic column order, until f returns false. Columns are
/// assembled one at a time, each from the vectors of the required norm
/// that have the required products with the columns already chosen.
void for_each_isometry_between(const IntMatrix& a, const IntMatrix& b, std::int64_t bound,
                               const std::function<bool(const IntMatrix&)>& f);
std::vector<IntMatrix> isometries_between(const IntMatrix& a, const IntMatrix& b, std::int64_t bound);
/// First P found, if any.
std::optional<IntMatrix> find_congruence(const IntMatrix& a, const IntMatrix& b, std::int64_t bound);

/// All g in O(L) with entries in [-bound, bound].
std::vector<IntMatrix> isometry_search(const IntegralLattice& l, std::int64_t bound);

/// An isometry g of L with entries bounded by `search_bound` whose action
/// on A_L maps H1 onto H2. The identity when H1 == H2. A miss is not a
/// proof that the over-lattices are non-isomorphic.
std::optional<LatticeMap> overlattice_isomorphic_witness(const IntegralLattice& l, const IsotropicSubgroup& h1,
                                                         const IsotropicSubgroup& h2, std::int64_t search_bound);

}  // namespace ovl
