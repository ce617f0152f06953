#include "ovl/lattice.hpp"

#include <sstream>
#include <stdexcept>

namespace ovl {

namespace mp = boost::multiprecision;

IntegralLattice::IntegralLattice(IntMatrix gram) : gram_(std::move(gram)) {
  if (gram_.rows() != gram_.cols()) throw std::invalid_argument("gram matrix not square");
  if (!is_symmetric(gram_)) throw std::invalid_argument("gram matrix not symmetric");
  det_ = ovl::determinant(gram_);
  if (det_ == 0) throw std::invalid_argument("gram matrix degenerate");
}

bool IntegralLattice::is_even() const {
  for (Eigen::Index i = 0; i < gram_.rows(); ++i)
    if (mp::abs(gram_(i, i)) % 2 != 0) return false;
  return true;
}

IntegralLattice rescale(const IntegralLattice& l, const Integer& n) {
  IntMatrix g = l.gram();
  for (Eigen::Index i = 0; i < g.size(); ++i) g.data()[i] *= n;
  return IntegralLattice(g);
}

RatVector reduce_mod_lattice(const RatVector& x) {
  RatVector y = x;
  for (Eigen::Index i = 0; i < y.size(); ++i) y(i) = mod(y(i), Integer(1));
  return y;
}

bool lex_less(const RatVector& a, const RatVector& b) {
  for (Eigen::Index i = 0; i < std::min(a.size(), b.size()); ++i) {
    if (a(i) < b(i)) return true;
    if (b(i) < a(i)) return false;
  }
  return a.size() < b.size();
}

std::string fraction_string(const RatVector& x) {
  std::ostringstream os;
  os << '(';
  for (Eigen::Index i = 0; i < x.size(); ++i) os << (i ? "," : "") << to_string(x(i));
  os << ')';
  return os.str();
}

Element DiscriminantGroup::coords(const RatVector& x) const {
  const RatVector gx = gram.cast<Rational>() * x;
  for (Eigen::Index i = 0; i < gx.size(); ++i)
    if (!is_integer(gx(i))) throw std::invalid_argument("vector not in the dual lattice");
  const RatVector c = coordinate_map.cast<Rational>() * gx;
  Element e(module.rank());
  for (std::size_t i = 0; i < e.size(); ++i)
    e[i] = to_int64(mod(mp::numerator(c(static_cast<Eigen::Index>(i))), Integer(module.orders()[i])));
  return e;
}

RatVector DiscriminantGroup::representative(const Element& e) const {
  RatVector x = RatVector::Zero(generators.rows());
  for (std::size_t i = 0; i < e.size(); ++i) x += Rational(e[i]) * generators.col(static_cast<Eigen::Index>(i));
  return reduce_mod_lattice(x);
}

DiscriminantGroup discriminant_group(const IntegralLattice& l) {
  if (!l.is_even()) throw std::domain_error("lattice not even");
  const SnfDecomposition s = snf(l.gram());
  const auto n = l.rank();

  std::vector<Eigen::Index> keep;
  for (Eigen::Index i = 0; i < n; ++i)
    if (s.d(i, i) > 1) keep.push_back(i);

  DiscriminantGroup out;
  out.gram = l.gram();
  const auto r = static_cast<Eigen::Index>(keep.size());
  out.generators.resize(n, r);
  out.coordinate_map.resize(r, n);
  std::vector<std::int64_t> orders;
  for (Eigen::Index c = 0; c < r; ++c) {
    const Eigen::Index i = keep[static_cast<std::size_t>(c)];
    orders.push_back(to_int64(s.d(i, i)));
    RatVector g = s.v.col(i).cast<Rational>() / Rational(s.d(i, i));
    out.generators.col(c) = reduce_mod_lattice(g);
    out.coordinate_map.row(c) = s.u.row(i);
  }
  out.module = module_from_representatives(l, out.generators, orders);
  return out;
}

TorsionQuadraticModule module_from_representatives(const IntegralLattice& l, const RatMatrix& gens,
                                                   const std::vector<std::int64_t>& orders) {
  if (orders.empty()) return {};
  const RatMatrix form = gens.transpose() * l.gram().cast<Rational>() * gens;
  std::vector<Rational> q;
  for (Eigen::Index i = 0; i < form.rows(); ++i) q.push_back(form(i, i));
  return TorsionQuadraticModule(orders, std::move(q), form);
}

Signature signature(const IntegralLattice& l) { return congruence_diagonalize(l.gram().cast<Rational>()).signature(); }

bool is_isometry(const IntegralLattice& l, const IntMatrix& g) {
  if (g.rows() != l.rank() || g.cols() != l.rank()) return false;
  return IntMatrix(g.transpose() * l.gram() * g) == l.gram();
}

Integer sublattice_index(const LatticeMap& inner) {
  const IntMatrix& m = inner.matrix;
  if (m.rows() != inner.target.rank() || m.cols() != inner.source.rank() || m.rows() != m.cols())
    throw std::invalid_argument("embedding is not of full rank");
  if (IntMatrix(m.transpose() * inner.target.gram() * m) != inner.source.gram())
    throw std::invalid_argument("map is not an isometric embedding");
  const Integer by_basis = mp::abs(determinant(m));
  if (by_basis == 0) throw std::invalid_argument("embedding is not of full rank");

  const Integer ratio = mp::abs(inner.source.determinant()) / mp::abs(inner.target.determinant());
  if (ratio * mp::abs(inner.target.determinant()) != mp::abs(inner.source.determinant()) ||
      mp::sqrt(ratio) * mp::sqrt(ratio) != ratio || mp::sqrt(ratio) != by_basis)
    throw std::logic_error("sublattice index: basis determinant and discriminant ratio disagree");
  return by_basis;
}

TqmAutomorphism induced_discriminant_action(const IntegralLattice& l, const IntMatrix& g) {
  if (!is_isometry(l, g)) throw std::invalid_argument("matrix is not an isometry of the lattice");
  const DiscriminantGroup a = discriminant_group(l);
  const auto r = static_cast<Eigen::Index>(a.module.rank());
  IntMatrix m(r, r);
  const RatMatrix gr = g.cast<Rational>();
  for (Eigen::Index j = 0; j < r; ++j) {
    const Element e = a.coords(gr * a.generators.col(j));
    for (Eigen::Index i = 0; i < r; ++i) m(i, j) = e[static_cast<std::size_t>(i)];
  }
  return {a.module, m, std::nullopt};
}

}  // namespace ovl
