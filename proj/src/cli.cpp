#include "ovl/cli.hpp"

#include "ovl/kummer.hpp"
#include "ovl/lattice_io.hpp"

#include <algorithm>
#include <iomanip>
#include <sstream>
#include <stdexcept>

namespace ovl {

namespace {

std::vector<std::int64_t> descending(std::vector<std::int64_t> v) {
  std::reverse(v.begin(), v.end());
  return v;
}

std::string witnesses_string(const std::vector<RatVector>& ws, const char* sep) {
  std::string s;
  for (const auto& w : ws) s += (s.empty() ? "" : sep) + fraction_string(w);
  return s;
}

void print_matrix(std::ostream& out, const IntMatrix& m, const std::string& indent) {
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    out << indent << '[';
    for (Eigen::Index j = 0; j < m.cols(); ++j) out << (j ? ", " : "") << m(i, j);
    out << "]\n";
  }
}

int print_report(std::ostream& out, const VerificationReport& rep) {
  out << "== " << rep.title << '\n';
  for (const auto& c : rep.checks) {
    out << status_label(c.status) << "  " << c.name;
    if (!c.detail.empty()) out << "  [" << c.detail << ']';
    out << '\n';
  }
  return rep.passed() ? 0 : 1;
}

}  // namespace

int cmd_discriminant(const std::string& file, std::ostream& out) {
  const IntegralLattice l = load_lattice(file);
  const DiscriminantGroup a = discriminant_group(l);
  const Signature s = signature(l);
  out << "rank " << l.rank() << ", det " << l.determinant() << ", signature (" << s.positive << "," << s.negative << ")\n";
  out << "group: " << group_string(descending(a.module.invariant_factors())) << " (order " << a.module.order() << ")\n";
  out << "generators (dual fractions):\n";
  for (std::size_t i = 0; i < a.module.rank(); ++i)
    out << "  g" << i + 1 << " = " << fraction_string(a.generators.col(static_cast<Eigen::Index>(i))) << "  order "
        << a.module.orders()[i] << "  q = " << to_string(a.module.q(i)) << '\n';
  if (a.module.rank() > 1) {
    out << "b table:\n";
    for (std::size_t i = 0; i < a.module.rank(); ++i) {
      out << "  ";
      for (std::size_t j = 0; j < a.module.rank(); ++j) out << (j ? "  " : "") << std::setw(8) << to_string(a.module.b(i, j));
      out << '\n';
    }
  }
  return 0;
}

int cmd_overlattices(const std::string& file, std::int64_t p, const std::optional<std::string>& target,
                     std::ostream& out) {
  const IntegralLattice l = load_lattice(file);
  std::optional<IntegralLattice> t;
  if (target) t = load_lattice(*target);
  const PrimeSubgroups subs = enumerate_prime_isotropic(l, p);
  out << subs.isotropic.size() + subs.rejected.size() << " subgroups of order " << p << ", " << subs.isotropic.size()
      << " isotropic\n";
  std::vector<IsotropicSubgroup> all = subs.isotropic;
  all.insert(all.end(), subs.rejected.begin(), subs.rejected.end());
  std::sort(all.begin(), all.end(),
            [](const IsotropicSubgroup& x, const IsotropicSubgroup& y) { return lex_less(x.fraction, y.fraction); });
  for (const auto& h : all) {
    if (!h.isotropic()) {
      out << "H = <" << fraction_string(h.fraction) << ">  rejected, q = " << to_string(h.q_value) << '\n';
      continue;
    }
    const OverLattice m = construct_overlattice(l, h);
    out << "H = <" << fraction_string(h.fraction) << ">  isotropic\n";
    out << "  gram:\n";
    print_matrix(out, m.lattice.gram(), "    ");
    out << "  discriminant: " << group_string(descending(discriminant_group(m.lattice).module.invariant_factors())) << '\n';
    if (t) {
      const IsometryDecision d = same_genus_decision(m.lattice, *t);
      out << "  same genus as target: "
          << (d.verdict == Verdict::isometric ? "yes" : d.verdict == Verdict::not_isometric ? "no" : "undecided") << " ("
          << d.reason << ")\n";
    }
  }
  return 0;
}

int cmd_kummer_table(std::int64_t k_min, std::int64_t k_max, const std::string& format, std::ostream& out) {
  if (format != "text" && format != "tsv") throw std::invalid_argument("format must be text or tsv");
  const bool tsv = format == "tsv";
  if (tsv)
    out << "k\tn_over\twitnesses\n";
  else
    out << std::setw(6) << "k" << std::setw(8) << "n_over" << "  witnesses\n";
  for (std::int64_t k = k_min; k <= k_max; ++k) {
    const ClassificationResult r = classify(k);
    if (tsv)
      out << k << '\t' << r.n_over << '\t' << witnesses_string(r.witnesses, ";") << '\n';
    else
      out << std::setw(6) << k << std::setw(8) << r.n_over << "  " << witnesses_string(r.witnesses, " ") << '\n';
  }
  return 0;
}

int cmd_verify(std::int64_t k, std::int64_t bound, std::ostream& out) {
  std::vector<VerificationReport> reports;
  reports.push_back(verify_liste(k));
  reports.push_back(verify_explicit_isometries(k));
  reports.push_back(verify_mod3_preservation(k, bound));
  reports.push_back(verify_index3(k));
  if (k % 3 == 1) reports.push_back(verify_case_k1mod3(k));

  int rc = 0;
  std::size_t pass = 0, fail = 0, na = 0;
  for (const auto& r : reports) {
    rc |= print_report(out, r);
    for (const auto& c : r.checks)
      (c.status == CheckStatus::pass ? pass : c.status == CheckStatus::fail ? fail : na)++;
  }
  out << "summary: " << pass << " passed, " << fail << " failed, " << na << " not applicable\n";
  return rc;
}

}  // namespace ovl
