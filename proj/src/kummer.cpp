#include "ovl/kummer.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace ovl {

namespace mp = boost::multiprecision;

KummerFamilyInstance::KummerFamilyInstance(std::int64_t k_) : k(k_) {
  if (k < 1) throw std::invalid_argument("k must be positive");
  k_mod3 = static_cast<int>(k % 3);
  k_mod9 = static_cast<int>(k % 9);
  if (k_mod3 == 0) k_prime = k / 3;
  a = valuation(k, 3);
  t = k / ipow(3, a);
}

IntegralLattice gram_TA(std::int64_t k) { return IntegralLattice(make_matrix({{-2 * k, 0, 0}, {0, 2, 3}, {0, 3, 6}})); }
IntegralLattice gram_TA3(std::int64_t k) { return IntegralLattice(make_matrix({{-6 * k, 0, 0}, {0, 6, 9}, {0, 9, 18}})); }
IntegralLattice gram_TX(std::int64_t k) { return IntegralLattice(make_matrix({{-6 * k, 0, 0}, {0, 6, 3}, {0, 3, 2}})); }

namespace {

RatVector thirds(int a1, int a2, int a3) {
  RatVector v(3);
  v << Rational(a1, 3), Rational(a2, 3), Rational(a3, 3);
  return v;
}

bool same_vector(const RatVector& a, const RatVector& b) { return a.size() == b.size() && a == b; }

void require_residue(bool ok) {
  if (!ok) throw std::invalid_argument("matrix not applicable for this k");
}

}  // namespace

// --- classification ----------------------------------------------------------------

ClassificationResult classify(std::int64_t k) {
  const KummerFamilyInstance inst(k);
  const IntegralLattice ta3 = gram_TA3(k);
  const IntegralLattice tx = gram_TX(k);
  const TorsionQuadraticModule ax = discriminant_group(tx).module;
  const Signature sx = signature(tx);

  ClassificationResult out;
  out.k = k;
  const PrimeSubgroups subs = enumerate_prime_isotropic(ta3, 3);
  for (const auto& h : subs.rejected) {
    CandidateReport c;
    c.subgroup = h;
    c.reason = "not isotropic, q = " + to_string(h.q_value);
    out.candidates.push_back(std::move(c));
  }
  for (const auto& h : subs.isotropic) {
    CandidateReport c;
    c.subgroup = h;
    const OverLattice over = construct_overlattice(ta3, h);
    c.overlattice_gram = over.lattice.gram();
    const DiscriminantGroup a = discriminant_group(over.lattice);
    c.discriminant_factors = a.module.invariant_factors();
    if (signature(over.lattice) != sx) {
      c.genus = Verdict::not_isometric;
      c.reason = "signatures differ";
    } else {
      const IsometryDecision d = tqm_isometry(a.module, ax);
      if (d.verdict == Verdict::undecided)
        throw UndecidedError("undecided: unsupported 2-adic shape (k=" + std::to_string(k) + ", " + d.reason + ")");
      c.genus = d.verdict;
      c.reason = d.reason;
    }
    if (c.genus == Verdict::isometric) out.witnesses.push_back(h.fraction);
    out.candidates.push_back(std::move(c));
  }
  std::sort(out.candidates.begin(), out.candidates.end(),
            [](const CandidateReport& x, const CandidateReport& y) { return lex_less(x.subgroup.fraction, y.subgroup.fraction); });
  std::sort(out.witnesses.begin(), out.witnesses.end(), lex_less);
  out.n_over = static_cast<int>(out.witnesses.size());
  return out;
}

// --- the list of thirteen -------------------------------------------------------------

const std::vector<ListeRow>& liste_rows() {
  static const std::vector<ListeRow> rows = {
      {{0, 0, 1}, 0, 0},   {{0, 1, 0}, 0, 2},   {{0, 1, 1}, 0, 2},   {{0, 1, 2}, 0, 14},  {{1, 0, 0}, -2, 0},
      {{1, 0, 1}, -2, 0},  {{1, 0, 2}, -2, 0},  {{1, 1, 0}, -2, 2},  {{1, 1, 1}, -2, 2},  {{1, 1, 2}, -2, 14},
      {{1, 2, 0}, -2, 8},  {{1, 2, 1}, -2, 2},  {{1, 2, 2}, -2, 8},
  };
  return rows;
}

VerificationReport verify_liste(std::int64_t k) {
  VerificationReport rep;
  rep.title = "order-3 subgroups of A_T(A)(3), k=" + std::to_string(k);
  const PrimeSubgroups subs = enumerate_prime_isotropic(gram_TA3(k), 3);
  std::vector<IsotropicSubgroup> all = subs.isotropic;
  all.insert(all.end(), subs.rejected.begin(), subs.rejected.end());
  rep.add("13 order-3 subgroups", all.size() == 13, std::to_string(all.size()) + " found");

  std::set<std::vector<Rational>> listed;
  for (const auto& row : liste_rows()) {
    const RatVector v = thirds(row.v[0], row.v[1], row.v[2]);
    listed.insert(std::vector<Rational>(v.data(), v.data() + 3));
    const Rational expected = mod(Rational(row.alpha * k + row.beta, 3), Integer(2));
    const auto it = std::find_if(all.begin(), all.end(), [&](const IsotropicSubgroup& h) { return same_vector(h.fraction, v); });
    if (it == all.end()) {
      rep.add("row " + fraction_string(v), false, "no subgroup with this canonical generator");
      continue;
    }
    rep.add("row " + fraction_string(v), it->q_value == expected,
            "q = " + to_string(it->q_value) + ", closed form " + to_string(expected));
  }
  bool same_set = all.size() == listed.size();
  for (const auto& h : all) same_set = same_set && listed.count(std::vector<Rational>(h.fraction.data(), h.fraction.data() + 3));
  rep.add("generators are exactly the listed ones", same_set);

  bool never = true;
  for (int c = 0; c < 3; ++c) {
    const RatVector v = thirds(0, 1, c);
    for (const auto& h : subs.isotropic) never = never && !same_vector(h.fraction, v);
  }
  rep.add("(0,1/3,*) subgroups not isotropic", never);
  return rep;
}

VerificationReport verify_case_k1mod3(std::int64_t k) {
  require_residue(k % 3 == 1);
  const std::int64_t kp = (k - 1) / 3;
  VerificationReport rep;
  rep.title = "case k = 1 mod 3, k=" + std::to_string(k);
  const IntegralLattice ta3 = gram_TA3(k);
  const DiscriminantGroup a = discriminant_group(ta3);
  const IntegralLattice tx = gram_TX(k);

  const IsotropicSubgroup h = subgroup_of(a, thirds(1, 1, 0));
  rep.add("(1/3,1/3,0) isotropic", h.isotropic(), "q = " + to_string(h.q_value));
  if (!h.isotropic()) return rep;
  const OverLattice over = construct_overlattice(ta3, h);
  const IntMatrix displayed_gram = make_matrix({{-2 * kp, 1, 0}, {1, 6, 9}, {0, 9, 18}});
  const auto p = find_congruence(over.lattice.gram(), displayed_gram, 3);
  rep.add("Gram congruent to [[-2k',1,0],[1,6,9],[0,9,18]]", p.has_value(),
          p ? "basis change " + to_string(*p) : "no change of basis with entries <= 3");

  const auto factors = discriminant_group(over.lattice).module.invariant_factors();
  rep.add("discriminant group cyclic of order 18k", factors == std::vector<std::int64_t>{18 * k},
          group_string(factors));
  rep.add("not in the genus of T(X)", !same_genus(over.lattice, tx));

  // Orbit of H under the order-6 isometry.
  std::set<std::vector<Rational>> orbit;
  RatVector x = thirds(1, 1, 0);
  const RatMatrix g = g_isometry().cast<Rational>();
  for (int i = 0; i < 6; ++i) {
    const IsotropicSubgroup s = subgroup_of(a, x);
    orbit.insert(std::vector<Rational>(s.fraction.data(), s.fraction.data() + 3));
    x = g * x;
  }
  std::set<std::vector<Rational>> six;
  for (int b = 1; b <= 2; ++b)
    for (int c = 0; c < 3; ++c) {
      const RatVector v = thirds(1, b, c);
      six.insert(std::vector<Rational>(v.data(), v.data() + 3));
    }
  rep.add("the six candidates form one orbit", orbit == six, std::to_string(orbit.size()) + " subgroups in orbit");

  bool all_cyclic = true;
  for (const auto& key : six) {
    RatVector v(3);
    for (Eigen::Index i = 0; i < 3; ++i) v(i) = key[static_cast<std::size_t>(i)];
    const OverLattice o = construct_overlattice(ta3, subgroup_of(a, v));
    all_cyclic = all_cyclic && discriminant_group(o.lattice).module.invariant_factors().size() == 1;
  }
  rep.add("all six over-lattices have cyclic discriminant group", all_cyclic);
  return rep;
}

// --- explicit matrices -----------------------------------------------------------------

IntMatrix g_isometry() { return make_matrix({{1, 0, 0}, {0, -1, -3}, {0, 1, 2}}); }

IntMatrix tau_matrix() { return make_matrix({{0, -6, 1}, {0, 1, 0}, {1, 6, 0}}); }

IntMatrix tau_a_matrix(int a) {
  if (a == 2) return make_matrix({{5, -18, 3}, {2, -10, 2}, {17, -69, 14}});
  if (a < 3) throw std::invalid_argument("tau_a needs a >= 2");
  const std::int64_t p = ipow(3, a - 1);
  return make_matrix({{2 * p - 1, -42 * p, 8 * p}, {0, -4, 1}, {7, -48, 11}});
}

std::optional<IntMatrix> tau_a_inverse(int a) {
  if (a < 3) return std::nullopt;
  const std::int64_t p = ipow(3, a - 1);
  // Entry (2,1) is printed as 3 in the source; only a value = 2 mod 3 inverts tau_a.
  return make_matrix({{2 * p - 1, -42 * p, 7 * p}, {5, -10, 2}, {20, -87, 17}});
}

IntMatrix theta_a_matrix(int a) {
  if (a == 2) return make_matrix({{2, -126, 24}, {0, -4, 1}, {5, -66, 14}});
  if (a < 3) throw std::invalid_argument("theta_a needs a >= 2");
  const std::int64_t p = ipow(3, a - 1);
  return make_matrix({{4 * p - 1, -42 * p, 8 * p}, {1, -10, 2}, {13, -78, 16}});
}

RatMatrix displayed_q3(int a, std::int64_t u) {
  RatMatrix q = RatMatrix::Zero(3, 3);
  q(0, 0) = Rational(u, ipow(3, a + 1));
  q(1, 1) = Rational(2, 3);
  q(1, 2) = q(2, 1) = Rational(-1, 3);
  q(2, 2) = Rational(2, 9);
  return q;
}

TorsionQuadraticModule normalized_three_part(int a, std::int64_t u) {
  const RatMatrix q = displayed_q3(a, u);
  return TorsionQuadraticModule({ipow(3, a + 1), 3, 9}, {q(0, 0), q(1, 1), q(2, 2)}, q);
}

namespace {

// Difference matrices t^T Q3 t - Q3 as displayed, for a >= 3.
RatMatrix displayed_difference(int a, std::int64_t u) {
  const Rational p3 = Rational(ipow(3, a)) / 27, p2 = Rational(ipow(3, a)) / 9, p1 = Rational(ipow(3, a)) / 3;
  RatMatrix d(3, 3);
  if (u == 2) {
    d << 10 + 8 * p3, -56 * (p2 + 1), 32 * p3 + 13,
         -56 * (p2 + 1), 392 * (p1 + 1) + 2, -224 * p2 - 89,
         32 * p3 + 13, -224 * p2 - 89, 128 * p3 + 20;
  } else {
    d << 26 + 64 * p3, -224 * p2 - 144, 128 * p3 + 30,
         -224 * p2 - 144, 784 * p1 + 898, -448 * p2 - 185,
         128 * p3 + 30, -448 * p2 - 185, 38 + 256 * p3;
  }
  return d;
}

std::vector<std::int64_t> subgroup_of_element(const TorsionQuadraticModule& m, const Element& x) {
  return cyclic_subgroup(m, x);
}

// Presentation of the 3-part of A_T(A)(3) by e1' = x c1, c2, c3 with
// x = 1 mod 3^{a+1}, x = 0 mod 2t, optionally completed by e1'' = (1-x) c1.
struct ThreePart {
  IntegralLattice lattice;
  DiscriminantGroup disc;
  RatMatrix gens;
  TorsionQuadraticModule module;
  TorsionQuadraticModule full;
  std::int64_t u = 0;
  int a = 0;

  RatVector fraction(const Element& e) const {
    RatVector x = RatVector::Zero(3);
    for (std::size_t i = 0; i < e.size(); ++i) x += Rational(e[i]) * gens.col(static_cast<Eigen::Index>(i));
    return reduce_mod_lattice(x);
  }
};

ThreePart three_part(std::int64_t k) {
  const KummerFamilyInstance inst(k);
  if (inst.a < 1) throw std::invalid_argument("three_part needs 3 | k");
  const std::int64_t n = ipow(3, inst.a + 1);
  const std::int64_t m = inverse_mod(mod(2 * inst.t, n), n);
  const Rational x = Rational(2 * inst.t) * Rational(m);

  ThreePart tp{gram_TA3(k), discriminant_group(gram_TA3(k)), RatMatrix(3, 4), {}, {}, 0, inst.a};
  RatVector c1 = RatVector::Zero(3);
  c1(0) = Rational(-1, 6 * k);
  RatVector c2(3), c3(3);
  c2 << 0, Rational(2, 3), Rational(-1, 3);
  c3 << 0, Rational(-1, 3), Rational(2, 9);
  tp.gens.col(0) = reduce_mod_lattice(x * c1);
  tp.gens.col(1) = reduce_mod_lattice(c2);
  tp.gens.col(2) = reduce_mod_lattice(c3);
  tp.gens.col(3) = reduce_mod_lattice((1 - x) * c1);
  tp.module = module_from_representatives(tp.lattice, tp.gens.leftCols(3), {n, 3, 9});
  tp.full = module_from_representatives(tp.lattice, tp.gens, {n, 3, 9, 2 * inst.t});
  tp.u = to_int64(mp::numerator(tp.module.q(0) * Rational(n)));
  return tp;
}

struct Transported {
  IntMatrix sigma;
  std::optional<IntMatrix> sigma_inv;
};

Transported transport(const IntMatrix& t, const std::optional<IntMatrix>& t_inv, std::int64_t w, std::int64_t n) {
  IntMatrix phi = identity(3), phi_inv = identity(3);
  phi(0, 0) = w;
  phi_inv(0, 0) = inverse_mod(w, n);
  Transported out{phi * t * phi_inv, std::nullopt};
  if (t_inv) out.sigma_inv = IntMatrix(phi * *t_inv * phi_inv);
  return out;
}

IntMatrix extend_by_identity(const IntMatrix& m) {
  IntMatrix e = identity(4);
  e.topLeftCorner(3, 3) = m;
  return e;
}

// Checks a 3-part automorphism transported to the module of T(A)(3) and
// reports the image of H_(0,0,1/3) in dual fractions.
void check_on_lattice(VerificationReport& rep, const ThreePart& tp, const IntMatrix& t, const std::optional<IntMatrix>& t_inv,
                      std::int64_t u0, const std::vector<RatVector>& expected) {
  const std::int64_t n = ipow(3, tp.a + 1);
  const auto w = cyclic_isometric(CyclicForm(tp.u, n), CyclicForm(u0, n));
  rep.add("3-adic form (" + std::to_string(tp.u) + "/" + std::to_string(n) + ") isometric to (" + std::to_string(u0) +
              "/" + std::to_string(n) + ")",
          w.has_value(), w ? "w = " + std::to_string(*w) : std::string{});
  if (!w) return;
  const Transported s = transport(t, t_inv, *w, n);
  rep.append(check_tqm_automorphism({tp.module, s.sigma, s.sigma_inv}), "3-part: ");
  std::optional<IntMatrix> full_inv;
  if (s.sigma_inv) full_inv = extend_by_identity(*s.sigma_inv);
  rep.append(check_tqm_automorphism({tp.full, extend_by_identity(s.sigma), full_inv}), "whole group: ");

  const Element img = apply_matrix(tp.module, s.sigma, Element{0, 0, 3});
  const RatVector f = subgroup_of(tp.disc, tp.fraction(img)).fraction;
  bool hit = false;
  std::string names;
  for (const auto& e : expected) {
    hit = hit || same_vector(f, e);
    names += (names.empty() ? "" : " or ") + fraction_string(e);
  }
  rep.add("image of H_(0,0,1/3) is H_" + fraction_string(f), hit, "expected " + names);
}

}  // namespace

VerificationReport verify_normalized_automorphism(int a, std::int64_t u) {
  VerificationReport rep;
  const TorsionQuadraticModule m = normalized_three_part(a, u);
  const std::int64_t pa = ipow(3, a);
  IntMatrix t;
  std::optional<IntMatrix> t_inv;
  std::string name;
  if (a == 1 && u == 2) {
    t = tau_matrix();
    name = "tau";
  } else if (a >= 2 && u == 2) {
    t = tau_a_matrix(a);
    t_inv = tau_a_inverse(a);
    name = a == 2 ? "tau_2" : "tau_a";
  } else if (a >= 2 && u == 4) {
    t = theta_a_matrix(a);
    name = a == 2 ? "theta_2" : "theta_a";
  } else {
    throw std::invalid_argument("no automorphism for this (a, u)");
  }
  rep.title = name + " on Z/" + std::to_string(3 * pa) + " x Z/3 x Z/9, u=" + std::to_string(u);
  rep.append(check_tqm_automorphism({m, t, t_inv}));

  const RatMatrix q3 = displayed_q3(a, u);
  const RatMatrix diff = t.cast<Rational>().transpose() * q3 * t.cast<Rational>() - q3;
  if (a == 1) {
    rep.add("displayed difference matrix", diff == make_matrix({{0, 1, 0}, {1, 12, -1}, {0, -1, 0}}).cast<Rational>(),
            to_string(diff));
    rep.add("exchanges e1 and e3", apply_matrix(m, t, {1, 0, 0}) == Element{0, 0, 1} &&
                                        apply_matrix(m, t, {0, 0, 1}) == Element{1, 0, 0});
  } else if (a >= 3) {
    rep.add("displayed difference matrix", diff == displayed_difference(a, u), to_string(diff));
  }

  const Element v0{0, 0, 3};
  const Element img = apply_matrix(m, t, v0);
  const auto image = subgroup_of_element(m, img);
  const auto w1 = subgroup_of_element(m, {pa, 0, 3});
  const auto w2 = subgroup_of_element(m, {2 * pa, 0, 3});
  if (a == 1) {
    rep.add("<(0,0,3)> goes to <(3,0,0)>", image == subgroup_of_element(m, {3, 0, 0}), to_string(img));
  } else if (a >= 3 && u == 2) {
    rep.add("image of (0,0,3) is (2*3^a,0,6)", img == Element{2 * pa, 0, 6}, to_string(img));
    rep.add("<(0,0,3)> goes to <(3^a,0,3)>", image == w1);
  } else if (a >= 3 && u == 4) {
    rep.add("image of (0,0,3) is (2*3^a,0,3)", img == Element{2 * pa, 0, 3}, to_string(img));
    rep.add("<(0,0,3)> goes to <(2*3^a,0,3)>", image == w2);
  } else {
    rep.add("<(0,0,3)> goes to <(3^a,0,3)> or <(2*3^a,0,3)>", image == w1 || image == w2, to_string(img));
  }
  return rep;
}

VerificationReport verify_g_isometry(std::int64_t k) {
  VerificationReport rep;
  rep.title = "order-6 isometry g, k=" + std::to_string(k);
  const IntegralLattice l = gram_TA3(k);
  const IntMatrix g = g_isometry();
  rep.add("g^T G g = G", is_isometry(l, g));
  IntMatrix p = identity(3);
  int order = 0;
  for (int i = 1; i <= 6 && order == 0; ++i) {
    p = p * g;
    if (p == identity(3)) order = i;
  }
  rep.add("g has order 6", order == 6, "order " + std::to_string(order));
  RatVector img = g.cast<Rational>() * thirds(1, 0, 1);
  // Exactly (v1-3v2+2v3)/3; the class mod T(A)(3) is that of (v1+3v2+2v3)/3.
  rep.add("g((v1+v3)/3) = (v1+3v2+2v3)/3 mod T(A)(3)", is_integral(RatMatrix(img - thirds(1, 3, 2))),
          fraction_string(img));
  const DiscriminantGroup a = discriminant_group(l);
  rep.add("H_(1/3,0,1/3) goes to H_(1/3,0,2/3)", same_vector(subgroup_of(a, img).fraction, thirds(1, 0, 2)));
  rep.append(check_tqm_automorphism(induced_discriminant_action(l, g)), "induced action: ");
  return rep;
}

VerificationReport verify_tau(std::int64_t k) {
  require_residue(k % 9 == 6);
  VerificationReport rep;
  rep.title = "tau, k=" + std::to_string(k);
  rep.append(verify_normalized_automorphism(1, 2), "normalized: ");
  check_on_lattice(rep, three_part(k), tau_matrix(), std::nullopt, 2, {thirds(1, 0, 0)});
  return rep;
}

VerificationReport verify_tau_a(std::int64_t k) {
  require_residue(k % 9 == 0);
  const KummerFamilyInstance inst(k);
  const ThreePart tp = three_part(k);
  const std::int64_t n = ipow(3, inst.a + 1);
  const std::int64_t u0 = cyclic_isometric(CyclicForm(tp.u, n), CyclicForm(2, n)) ? 2 : 4;
  VerificationReport rep;
  rep.title = std::string(u0 == 2 ? "tau_a" : "theta_a") + ", k=" + std::to_string(k) + ", a=" + std::to_string(inst.a);
  rep.append(verify_normalized_automorphism(inst.a, u0), "normalized: ");
  const IntMatrix t = u0 == 2 ? tau_a_matrix(inst.a) : theta_a_matrix(inst.a);
  const std::optional<IntMatrix> t_inv = u0 == 2 ? tau_a_inverse(inst.a) : std::nullopt;
  check_on_lattice(rep, tp, t, t_inv, u0, {thirds(1, 0, 1), thirds(1, 0, 2)});
  return rep;
}

VerificationReport verify_explicit_isometries(std::int64_t k) {
  VerificationReport rep;
  rep.title = "explicit isometries, k=" + std::to_string(k);
  rep.append(verify_g_isometry(k), "g: ");
  if (k % 9 == 6)
    rep.append(verify_tau(k), "tau: ");
  else
    rep.add_not_applicable("tau", "needs k = 6 mod 9");
  if (k % 9 == 0)
    rep.append(verify_tau_a(k), "tau_a/theta_a: ");
  else
    rep.add_not_applicable("tau_a/theta_a", "needs k = 0 mod 9");
  return rep;
}

VerificationReport verify_mod3_preservation(std::int64_t k, std::int64_t bound) {
  VerificationReport rep;
  rep.title = "O(T(X)) preserves T(A)(3), k=" + std::to_string(k) + ", bound " + std::to_string(bound);
  const auto hits = isometry_search(gram_TX(k), bound);
  std::size_t bad = 0;
  bool plus = false, minus = false;
  for (const auto& g : hits) {
    if (mod(g(2, 0), Integer(3)) != 0 || mod(g(2, 1), Integer(3)) != 0) ++bad;
    plus = plus || g == identity(3);
    minus = minus || g == IntMatrix(-identity(3));
  }
  rep.add("g31 = g32 = 0 mod 3 on every hit", bad == 0,
          std::to_string(hits.size()) + " isometries, " + std::to_string(bad) + " violations");
  rep.add("+identity and -identity found", plus && minus);
  return rep;
}

VerificationReport verify_index3(std::int64_t k) {
  VerificationReport rep;
  rep.title = "T(A)(3) inside T(X), k=" + std::to_string(k);
  const IntegralLattice ta3 = gram_TA3(k), tx = gram_TX(k);
  IntMatrix m = identity(3);
  m(2, 2) = 3;
  try {
    const Integer idx = sublattice_index({m, ta3, tx});
    rep.add("index of <e1,e2,3e3> is 3", idx == 3, to_string(idx));
  } catch (const std::exception& e) {
    rep.add("index of <e1,e2,3e3> is 3", false, e.what());
  }
  rep.add("discriminant ratio 162k / 18k = 9", ta3.determinant() == tx.determinant() * 9,
          to_string(ta3.determinant()) + " / " + to_string(tx.determinant()));
  return rep;
}

}  // namespace ovl
