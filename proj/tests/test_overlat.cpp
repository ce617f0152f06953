#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "ovl/kummer.hpp"
#include "support.hpp"

#include <set>

using namespace ovl;

namespace {

RatVector thirds(int a, int b, int c) {
  RatVector v(3);
  v << Rational(a, 3), Rational(b, 3), Rational(c, 3);
  return v;
}

IsotropicSubgroup find_subgroup(const PrimeSubgroups& s, const RatVector& f) {
  for (const auto& h : s.isotropic)
    if (h.fraction == f) return h;
  for (const auto& h : s.rejected)
    if (h.fraction == f) return h;
  throw std::runtime_error("subgroup not listed");
}

}  // namespace

TEST_CASE("order-3 subgroups of A_{T(A)(3)}") {
  for (std::int64_t k = 1; k <= 30; ++k) {
    CAPTURE(k);
    const PrimeSubgroups s = enumerate_prime_isotropic(gram_TA3(k), 3);
    CHECK(s.isotropic.size() + s.rejected.size() == 13);

    // Independent count: 3-torsion has 27 elements, each subgroup holds two nonzero ones.
    const DiscriminantGroup a = discriminant_group(gram_TA3(k));
    int torsion = 0;
    for_each_element(a.module.orders(), [&](const Element& x) { torsion += a.module.scale(3, x) == a.module.zero(); });
    CHECK(torsion == 27);

    std::vector<std::string> iso;
    for (const auto& h : s.isotropic) iso.push_back(fraction_string(h.fraction));
    if (k % 3 == 0)
      CHECK(iso == std::vector<std::string>{"(0,0,1/3)", "(1/3,0,0)", "(1/3,0,1/3)", "(1/3,0,2/3)"});
    else if (k % 3 == 2)
      CHECK(iso == std::vector<std::string>{"(0,0,1/3)"});
    // k = 1 mod 3 admits further isotropic subgroups, none of them giving T(X).

    for (const int c : {0, 1, 2}) {
      const IsotropicSubgroup h = find_subgroup(s, thirds(0, 1, c));
      CHECK_FALSE(h.isotropic());
      // 2/3, 2/3 and 14/3, all equal to 2/3 mod 2.
      CHECK(h.q_value == Rational(2, 3));
    }
  }
}

TEST_CASE("module-level enumeration on (Z/3)^2 with zero form") {
  const TorsionQuadraticModule m({3, 3}, {Rational(0), Rational(0)}, RatMatrix::Zero(2, 2));
  const PrimeSubgroups s = enumerate_prime_subgroups(m, 3);
  CHECK(s.isotropic.size() == 4);
  CHECK(s.rejected.empty());
  // Brute force: 8 nonzero elements, two per line.
  std::set<std::vector<std::int64_t>> lines;
  for_each_element(m.orders(), [&](const Element& x) {
    if (x == m.zero()) return;
    lines.insert(std::min(x, m.scale(2, x)));
  });
  CHECK(lines.size() == 4);
  CHECK(enumerate_prime_subgroups(m, 5).isotropic.empty());
  CHECK_THROWS_AS(enumerate_prime_subgroups(m, 4), std::invalid_argument);
}

TEST_CASE("over-lattice Gram matrices") {
  SUBCASE("(0,0,1/3) gives T(X)") {
    for (std::int64_t k = 1; k <= 12; ++k) {
      const IntegralLattice l = gram_TA3(k);
      const OverLattice o = construct_overlattice(l, subgroup_of(discriminant_group(l), thirds(0, 0, 1)));
      CHECK(find_congruence(o.lattice.gram(), gram_TX(k).gram(), 3).has_value());
    }
  }
  SUBCASE("(1/3,0,0) for k = 3k'") {
    for (std::int64_t kp = 1; kp <= 6; ++kp) {
      const IntegralLattice l = gram_TA3(3 * kp);
      const OverLattice o = construct_overlattice(l, subgroup_of(discriminant_group(l), thirds(1, 0, 0)));
      CHECK(o.lattice.gram() == make_matrix({{-2 * kp, 0, 0}, {0, 6, 9}, {0, 9, 18}}));
    }
  }
  SUBCASE("(1/3,0,1/3) for k = 3k'") {
    for (std::int64_t kp = 1; kp <= 6; ++kp) {
      const IntegralLattice l = gram_TA3(3 * kp);
      const OverLattice o = construct_overlattice(l, subgroup_of(discriminant_group(l), thirds(1, 0, 1)));
      const IntMatrix expect = make_matrix({{-2 * kp + 2, 0, 3}, {0, 6, 9}, {3, 9, 18}});
      CHECK(find_congruence(o.lattice.gram(), expect, 2).has_value());
    }
  }
  SUBCASE("non-isotropic subgroup") {
    const IntegralLattice l = gram_TA3(2);
    const IsotropicSubgroup h = subgroup_of(discriminant_group(l), thirds(0, 1, 0));
    CHECK_THROWS_WITH_AS(construct_overlattice(l, h), "subgroup not isotropic", std::domain_error);
  }
}

TEST_CASE("over-lattice invariants for k <= 60") {
  for (std::int64_t k = 1; k <= 60; ++k) {
    CAPTURE(k);
    const IntegralLattice l = gram_TA3(k);
    for (const auto& h : enumerate_prime_isotropic(l, 3).isotropic) {
      const OverLattice o = construct_overlattice(l, h);
      CHECK(o.lattice.is_even());
      CHECK(o.lattice.determinant() * 9 == l.determinant());
      CHECK(sublattice_index(o.embedding) == 3);
      // The base basis lies in the over-lattice: embedding^T G_over embedding = G_base.
      CHECK(o.embedding.matrix.transpose() * o.lattice.gram() * o.embedding.matrix == l.gram());
      const IsotropicSubgroup back = recover_subgroup(o);
      CHECK(back.generator == h.generator);
      CHECK(back.fraction == h.fraction);
    }
  }
}

TEST_CASE("genus decisions") {
  const auto tv = [](std::int64_t k, const RatVector& f) {
    const IntegralLattice l = gram_TA3(k);
    return construct_overlattice(l, subgroup_of(discriminant_group(l), f)).lattice;
  };
  CHECK(same_genus(gram_TX(5), gram_TX(5)));
  CHECK(same_genus(tv(6, thirds(1, 0, 0)), gram_TX(6)));
  CHECK_FALSE(same_genus(tv(12, thirds(1, 0, 0)), gram_TX(12)));

  const IntegralLattice t3 = tv(3, thirds(1, 0, 1));
  CHECK(discriminant_group(t3).module.invariant_factors() == std::vector<std::int64_t>{3, 3, 6});
  const IsometryDecision d3 = same_genus_decision(t3, gram_TX(3));
  CHECK(d3.verdict == Verdict::not_isometric);

  // k = 15: the 3-parts are (2/3)+(4/9) and (2/3)+(2/9).
  const auto p15 = p_primary_decomposition(discriminant_group(tv(15, thirds(1, 0, 1))).module).at(3);
  const auto x15 = p_primary_decomposition(discriminant_group(gram_TX(15)).module).at(3);
  const auto two_four = direct_sum({CyclicForm(2, 3).to_module(), CyclicForm(4, 9).to_module()});
  const auto two_two = direct_sum({CyclicForm(2, 3).to_module(), CyclicForm(2, 9).to_module()});
  CHECK(oracle::brute_isometric(p15, two_four));
  CHECK(oracle::brute_isometric(x15, two_two));
  CHECK_FALSE(same_genus(tv(15, thirds(1, 0, 1)), gram_TX(15)));

  // Signatures differ.
  CHECK_FALSE(same_genus(gram_TX(1), IntegralLattice(-gram_TX(1).gram())));
}

TEST_CASE("isometry search") {
  SUBCASE("diag(2,2), bound 1: the signed permutations") {
    const IntMatrix g = make_matrix({{2, 0}, {0, 2}});
    const auto found = isometry_search(IntegralLattice(g), 1);
    // Oracle: all 3^4 matrices with entries in {-1,0,1}.
    std::vector<IntMatrix> expect;
    for (int code = 0; code < 81; ++code) {
      int c = code;
      IntMatrix p(2, 2);
      for (int i = 0; i < 4; ++i) {
        p(i / 2, i % 2) = c % 3 - 1;
        c /= 3;
      }
      if (p.transpose() * g * p == g) expect.push_back(p);
    }
    CHECK(expect.size() == 8);
    CHECK(found.size() == 8);
    for (const auto& p : expect) CHECK(std::find(found.begin(), found.end(), p) != found.end());
  }
  SUBCASE("T(X) isometries preserve T(A)(3)") {
    for (std::int64_t k = 1; k <= 2; ++k) {
      const auto found = isometry_search(gram_TX(k), 5);
      CHECK(std::find(found.begin(), found.end(), identity(3)) != found.end());
      CHECK(std::find(found.begin(), found.end(), IntMatrix(-identity(3))) != found.end());
      for (const auto& g : found) {
        CHECK(is_isometry(gram_TX(k), g));
        CHECK(g(2, 0) % 3 == 0);
        CHECK(g(2, 1) % 3 == 0);
      }
    }
  }
  SUBCASE("deterministic order") {
    CHECK(isometry_search(gram_TX(1), 3) == isometry_search(gram_TX(1), 3));
  }
}

TEST_CASE("over-lattice isomorphism witnesses") {
  SUBCASE("equal subgroups") {
    const IntegralLattice l = gram_TA3(4);
    const IsotropicSubgroup h = subgroup_of(discriminant_group(l), thirds(0, 0, 1));
    const auto w = overlattice_isomorphic_witness(l, h, h, 0);
    REQUIRE(w.has_value());
    CHECK(w->matrix == identity(3));
  }
  SUBCASE("k = 0 mod 9: (1/3,0,1/3) and (1/3,0,2/3)") {
    for (std::int64_t k = 9; k <= 54; k += 9) {
      CAPTURE(k);
      const IntegralLattice l = gram_TA3(k);
      const DiscriminantGroup a = discriminant_group(l);
      const IsotropicSubgroup h1 = subgroup_of(a, thirds(1, 0, 1));
      const IsotropicSubgroup h2 = subgroup_of(a, thirds(1, 0, 2));
      const auto w = overlattice_isomorphic_witness(l, h1, h2, 3);
      REQUIRE(w.has_value());
      // Re-verified here: isometry, and the image of H1 is H2.
      CHECK(is_isometry(l, w->matrix));
      const Element img = a.coords(w->matrix.cast<Rational>() * h1.fraction);
      const auto target = cyclic_subgroup(a.module, h2.generator);
      CHECK(img != a.module.zero());
      CHECK(std::binary_search(target.begin(), target.end(), a.module.index_of(img)));
      // The over-lattices have congruent Gram matrices.
      CHECK(find_congruence(construct_overlattice(l, h1).lattice.gram(), construct_overlattice(l, h2).lattice.gram(), 3)
                .has_value());
    }
  }
  SUBCASE("different genera give no witness") {
    const IntegralLattice l = gram_TA3(12);
    const DiscriminantGroup a = discriminant_group(l);
    const IsotropicSubgroup h1 = subgroup_of(a, thirds(0, 0, 1));
    const IsotropicSubgroup h2 = subgroup_of(a, thirds(1, 0, 0));
    CHECK_FALSE(same_genus(construct_overlattice(l, h1).lattice, construct_overlattice(l, h2).lattice));
    CHECK_FALSE(overlattice_isomorphic_witness(l, h1, h2, 2).has_value());
  }
}
