#pragma once

// Nondegenerate integral lattices given by a Gram matrix in a fixed basis,
// and their discriminant groups.

#include "ovl/exact.hpp"
#include "ovl/torsion.hpp"

namespace ovl {

class IntegralLattice {
 public:
  /// Throws std::invalid_argument for non-square, non-symmetric or
  /// degenerate input.
  explicit IntegralLattice(IntMatrix gram);

  const IntMatrix& gram() const { return gram_; }
  Eigen::Index rank() const { return gram_.rows(); }
  const Integer& determinant() const { return det_; }
  bool is_even() const;

 private:
  IntMatrix gram_;
  Integer det_;
};

/// Column j of `matrix` is the image of the j-th source basis vector in
/// target coordinates.
struct LatticeMap {
  IntMatrix matrix;
  IntegralLattice source;
  IntegralLattice target;
};

/// A_L = L^/L with its generator representatives. Representatives are
/// rational coordinate vectors in the basis of L with entries in [0, 1).
struct DiscriminantGroup {
  TorsionQuadraticModule module;
  /// Column i represents generator i.
  RatMatrix generators;
  /// Row i of `coordinate_map` times G x gives coordinate i (mod d_i) of
  /// a dual vector x.
  IntMatrix coordinate_map;
  IntMatrix gram;

  /// Element coordinates of a dual vector; throws std::invalid_argument
  /// when x is not in the dual lattice.
  Element coords(const RatVector& x) const;
  /// Representative of an element with entries reduced into [0, 1).
  RatVector representative(const Element& e) const;
};

IntegralLattice rescale(const IntegralLattice& l, const Integer& n);

/// Generators come from the Smith form u G v = d of the Gram matrix:
/// g_i = v e_i / d_i for each invariant factor d_i > 1, in increasing
/// order. Throws std::domain_error("lattice not even") on odd input.
DiscriminantGroup discriminant_group(const IntegralLattice& l);

Signature signature(const IntegralLattice& l);

/// g^T G g == G.
bool is_isometry(const IntegralLattice& l, const IntMatrix& g);

/// |det matrix|, cross-checked against sqrt(det source / det target).
/// Throws std::invalid_argument when the map is not an isometric embedding
/// of full rank, std::logic_error when the two computations disagree.
Integer sublattice_index(const LatticeMap& inner);

/// Action of an isometry on A_L in the generator coordinates of
/// `discriminant_group(l)`. Throws std::invalid_argument otherwise.
TqmAutomorphism induced_discriminant_action(const IntegralLattice& l, const IntMatrix& g);

/// Module generated by given dual vectors with the given orders, forms
/// taken from the lattice. The caller is responsible for the orders being
/// a valid presentation.
TorsionQuadraticModule module_from_representatives(const IntegralLattice& l, const RatMatrix& gens,
                                                   const std::vector<std::int64_t>& orders);

/// Reduces every entry into [0, 1).
RatVector reduce_mod_lattice(const RatVector& x);
/// Lexicographic comparison of rational vectors.
bool lex_less(const RatVector& a, const RatVector& b);
std::string fraction_string(const RatVector& x);

}  // namespace ovl
