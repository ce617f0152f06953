#pragma once

// The lattices T(A), T(A)(3), T(X) attached to a generalized Kummer surface
// with L_X^2 = 6k, the classification of index-3 over-lattices of T(A)(3)
// isometric to T(X), and the checks behind it.

#include "ovl/overlat.hpp"
#include "ovl/report.hpp"

#include <array>

namespace ovl {

struct KummerFamilyInstance {
  std::int64_t k = 1;
  int k_mod3 = 1;
  int k_mod9 = 1;
  /// k / 3 when 3 | k.
  std::optional<std::int64_t> k_prime;
  /// k = 3^a t with 3 not dividing t.
  int a = 0;
  std::int64_t t = 1;

  explicit KummerFamilyInstance(std::int64_t k);
};

/// [[-2k,0,0],[0,2,3],[0,3,6]]
IntegralLattice gram_TA(std::int64_t k);
/// [[-6k,0,0],[0,6,9],[0,9,18]]
IntegralLattice gram_TA3(std::int64_t k);
/// [[-6k,0,0],[0,6,3],[0,3,2]]
IntegralLattice gram_TX(std::int64_t k);

struct CandidateReport {
  IsotropicSubgroup subgroup;
  /// Present for isotropic candidates only.
  std::optional<IntMatrix> overlattice_gram;
  std::vector<std::int64_t> discriminant_factors;
  Verdict genus = Verdict::not_isometric;
  std::string reason;
};

struct ClassificationResult {
  std::int64_t k = 0;
  int n_over = 0;
  /// Canonical generators w with T_w isometric to T(X), sorted.
  std::vector<RatVector> witnesses;
  /// All 13 order-3 subgroups, sorted by generator.
  std::vector<CandidateReport> candidates;
};

/// Isometry to T(X) is decided as genus equality, T(X) being unique in its
/// genus. Throws UndecidedError if some genus test is undecided.
ClassificationResult classify(std::int64_t k);

/// The thirteen rows (v; s_q): v in thirds, s_q = (alpha k + beta) / 3.
struct ListeRow {
  std::array<int, 3> v;
  int alpha;
  int beta;
};
const std::vector<ListeRow>& liste_rows();

VerificationReport verify_liste(std::int64_t k);
/// Throws std::invalid_argument("matrix not applicable for this k") unless
/// k = 1 mod 3.
VerificationReport verify_case_k1mod3(std::int64_t k);

/// Order-6 isometry of T(A)(3), valid for every k.
IntMatrix g_isometry();
IntMatrix tau_matrix();
/// tau_a for a >= 3, the special matrix for a = 2.
IntMatrix tau_a_matrix(int a);
/// Inverse of tau_a for a >= 3 (the printed matrix with entry (2,1) = 5).
std::optional<IntMatrix> tau_a_inverse(int a);
/// theta_a for a >= 3, the special matrix for a = 2.
IntMatrix theta_a_matrix(int a);

/// The 3-part of A_{T(A)(3)} on Z/3^{a+1} x Z/3 x Z/9 with
/// q = (u / 3^{a+1}, 2/3, 2/9) and b(e2, e3) = -1/3.
TorsionQuadraticModule normalized_three_part(int a, std::int64_t u);
/// The same form as displayed, entries not reduced.
RatMatrix displayed_q3(int a, std::int64_t u);

/// g: isometry, order 6, g((v1+v3)/3) = (v1+3v2+2v3)/3, and H_(1/3,0,1/3)
/// goes to H_(1/3,0,2/3).
VerificationReport verify_g_isometry(std::int64_t k);
/// Throws std::invalid_argument("matrix not applicable for this k") unless
/// k = 6 mod 9.
VerificationReport verify_tau(std::int64_t k);
/// Throws std::invalid_argument("matrix not applicable for this k") unless
/// k = 0 mod 9. Selects tau_a or theta_a from the class of the cyclic
/// 3^{a+1} form.
VerificationReport verify_tau_a(std::int64_t k);
/// tau_a (u = 2) or theta_a (u = 4) on the normalized module.
VerificationReport verify_normalized_automorphism(int a, std::int64_t u);
/// g for every k, tau or tau_a as N/A when the residue does not apply.
VerificationReport verify_explicit_isometries(std::int64_t k);

VerificationReport verify_mod3_preservation(std::int64_t k, std::int64_t bound);
VerificationReport verify_index3(std::int64_t k);

}  // namespace ovl
