#pragma once

// Independent oracles for the tests. They use plain machine integers and
// naive algorithms, and share no code with the library beyond its types.

#include "ovl/exact.hpp"
#include "ovl/lattice.hpp"
#include "ovl/torsion.hpp"

#include <algorithm>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <numeric>
#include <random>
#include <vector>

namespace oracle {

using i64 = std::int64_t;
using Mat = std::vector<std::vector<i64>>;

inline Mat to_mat(const ovl::IntMatrix& m) {
  Mat out(static_cast<std::size_t>(m.rows()), std::vector<i64>(static_cast<std::size_t>(m.cols())));
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) out[i][j] = ovl::to_int64(m(i, j));
  return out;
}

inline ovl::IntMatrix from_mat(const Mat& m) {
  ovl::IntMatrix out(static_cast<Eigen::Index>(m.size()), static_cast<Eigen::Index>(m.empty() ? 0 : m[0].size()));
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = 0; j < m[i].size(); ++j) out(i, j) = m[i][j];
  return out;
}

/// Cofactor expansion along the first row.
inline __int128 cofactor_det(const Mat& m) {
  const std::size_t n = m.size();
  if (n == 0) return 1;
  if (n == 1) return m[0][0];
  __int128 acc = 0;
  for (std::size_t c = 0; c < n; ++c) {
    if (m[0][c] == 0) continue;
    Mat minor;
    for (std::size_t r = 1; r < n; ++r) {
      std::vector<i64> row;
      for (std::size_t k = 0; k < n; ++k)
        if (k != c) row.push_back(m[r][k]);
      minor.push_back(row);
    }
    const __int128 term = static_cast<__int128>(m[0][c]) * cofactor_det(minor);
    acc += (c % 2 == 0) ? term : -term;
  }
  return acc;
}

inline i64 abs128(__int128 x) { return static_cast<i64>(x < 0 ? -x : x); }

/// Invariant factors from determinantal divisors: d_k = D_k / D_{k-1},
/// D_k the gcd of all k x k minors. Square input only.
inline std::vector<i64> invariant_factors_by_minors(const Mat& m) {
  const std::size_t n = m.size();
  std::vector<i64> big_d{1};
  for (std::size_t k = 1; k <= n; ++k) {
    i64 g = 0;
    std::vector<std::size_t> rows(k), cols(k);
    std::vector<bool> rsel(n, false), csel(n, false);
    std::fill(rsel.begin(), rsel.begin() + static_cast<long>(k), true);
    do {
      std::fill(csel.begin(), csel.end(), false);
      std::fill(csel.begin(), csel.begin() + static_cast<long>(k), true);
      do {
        Mat sub;
        for (std::size_t r = 0; r < n; ++r) {
          if (!rsel[r]) continue;
          std::vector<i64> row;
          for (std::size_t c = 0; c < n; ++c)
            if (csel[c]) row.push_back(m[r][c]);
          sub.push_back(row);
        }
        g = std::gcd(g, abs128(cofactor_det(sub)));
      } while (std::prev_permutation(csel.begin(), csel.end()));
    } while (std::prev_permutation(rsel.begin(), rsel.end()));
    big_d.push_back(g);
  }
  std::vector<i64> out;
  for (std::size_t k = 1; k <= n; ++k) out.push_back(big_d[k - 1] == 0 ? 0 : big_d[k] / big_d[k - 1]);
  return out;
}

/// Signature from the signs of leading principal minors; requires all of
/// them nonzero (checked).
inline ovl::Signature signature_by_minors(const Mat& g) {
  ovl::Signature s;
  __int128 prev = 1;
  for (std::size_t k = 1; k <= g.size(); ++k) {
    Mat sub(k, std::vector<i64>(k));
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = 0; j < k; ++j) sub[i][j] = g[i][j];
    const __int128 d = cofactor_det(sub);
    if (d == 0) throw std::runtime_error("oracle needs nonzero leading minors");
    ((d > 0) == (prev > 0) ? s.positive : s.negative)++;
    prev = d;
  }
  return s;
}

inline i64 mod(i64 a, i64 m) { return ((a % m) + m) % m; }

/// q of the cyclic form (u/v) at x, as the integer u x^2 mod 2v.
inline i64 cyclic_q(i64 u, i64 v, i64 x) { return mod(static_cast<i64>((static_cast<__int128>(u) * x % (2 * v)) * x % (2 * v)), 2 * v); }

// --- torsion modules as plain integer tables -----------------------------------

/// q and b scaled by the exponent e: q as e*q mod 2e, b as e*b mod e.
struct Table {
  std::vector<i64> orders;
  i64 e = 1;
  std::vector<i64> q;
  Mat b;
};

inline Table table_of(const ovl::TorsionQuadraticModule& m) {
  Table t;
  t.orders = m.orders();
  t.e = std::max<i64>(1, m.exponent());
  const auto r = m.rank();
  t.q.resize(r);
  t.b.assign(r, std::vector<i64>(r));
  for (std::size_t i = 0; i < r; ++i) {
    const ovl::Rational qi = m.q(i) * ovl::Rational(t.e);
    t.q[i] = mod(ovl::to_int64(ovl::Integer(boost::multiprecision::numerator(qi))), 2 * t.e);
    for (std::size_t j = 0; j < r; ++j) {
      const ovl::Rational bij = m.b(i, j) * ovl::Rational(t.e);
      t.b[i][j] = mod(ovl::to_int64(ovl::Integer(boost::multiprecision::numerator(bij))), t.e);
    }
  }
  return t;
}

inline i64 table_q(const Table& t, const std::vector<i64>& x) {
  __int128 acc = 0;
  for (std::size_t i = 0; i < x.size(); ++i)
    for (std::size_t j = 0; j < x.size(); ++j) {
      const i64 coeff = i == j ? t.q[i] : t.b[i][j];
      acc += static_cast<__int128>(x[i]) * x[j] * coeff;
    }
  // Off-diagonal terms appear twice, matching 2 b(x_i, x_j).
  return mod(static_cast<i64>(acc % (2 * t.e)), 2 * t.e);
}

inline i64 table_b(const Table& t, const std::vector<i64>& x, const std::vector<i64>& y) {
  __int128 acc = 0;
  for (std::size_t i = 0; i < x.size(); ++i)
    for (std::size_t j = 0; j < y.size(); ++j) acc += static_cast<__int128>(x[i]) * y[j] * t.b[i][j];
  return mod(static_cast<i64>(acc % t.e), t.e);
}

inline std::vector<std::vector<i64>> all_elements(const std::vector<i64>& orders) {
  std::vector<std::vector<i64>> out{{}};
  for (const i64 d : orders) {
    std::vector<std::vector<i64>> next;
    for (const auto& x : out)
      for (i64 c = 0; c < d; ++c) {
        auto y = x;
        y.push_back(c);
        next.push_back(y);
      }
    out = std::move(next);
  }
  return out;
}

inline i64 order_of(const std::vector<i64>& orders, const std::vector<i64>& x) {
  i64 o = 1;
  for (std::size_t i = 0; i < x.size(); ++i) o = std::lcm(o, orders[i] / std::gcd(x[i], orders[i]));
  return o;
}

/// Exhaustive isometry decision: tries every assignment of generator images
/// with matching order and q, checks b pairwise and bijectivity at the end.
/// Both modules must have the same exponent-scaled tables (same exponent).
inline bool brute_isometric(const ovl::TorsionQuadraticModule& m1, const ovl::TorsionQuadraticModule& m2) {
  if (m1.order() != m2.order() || m1.exponent() != m2.exponent()) return false;
  const Table t1 = table_of(m1), t2 = table_of(m2);
  const auto elems2 = all_elements(t2.orders);
  const std::size_t r = t1.orders.size();
  std::vector<std::vector<std::size_t>> cand(r);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t k = 0; k < elems2.size(); ++k)
      if (order_of(t2.orders, elems2[k]) == t1.orders[i] && table_q(t2, elems2[k]) == t1.q[i]) cand[i].push_back(k);

  std::vector<std::size_t> pick(r);
  const auto elems1 = all_elements(t1.orders);
  auto image_bijective = [&]() {
    std::vector<char> hit(elems2.size(), 0);
    for (const auto& x : elems1) {
      std::vector<i64> y(t2.orders.size(), 0);
      for (std::size_t i = 0; i < r; ++i)
        for (std::size_t c = 0; c < y.size(); ++c) y[c] += x[i] * elems2[pick[i]][c];
      std::size_t idx = 0;
      for (std::size_t c = 0; c < y.size(); ++c) idx = idx * static_cast<std::size_t>(t2.orders[c]) + static_cast<std::size_t>(mod(y[c], t2.orders[c]));
      if (hit[idx]) return false;
      hit[idx] = 1;
    }
    return true;
  };
  std::function<bool(std::size_t)> rec = [&](std::size_t i) -> bool {
    if (i == r) return image_bijective();
    for (const auto k : cand[i]) {
      bool ok = true;
      for (std::size_t j = 0; j < i && ok; ++j) ok = table_b(t2, elems2[k], elems2[pick[j]]) == t1.b[i][j];
      if (!ok) continue;
      pick[i] = k;
      if (rec(i + 1)) return true;
    }
    return false;
  };
  return rec(0);
}

// --- random inputs ---------------------------------------------------------------

/// Random admissible torsion quadratic module with group order <= max_order.
inline ovl::TorsionQuadraticModule random_module(std::mt19937_64& rng, i64 max_order) {
  std::vector<i64> orders;
  i64 n = 1;
  const int rank = static_cast<int>(rng() % 3) + 1;
  for (int i = 0; i < rank; ++i) {
    std::vector<i64> options;
    for (i64 d = 2; d <= 12; ++d)
      if (n * d <= max_order) options.push_back(d);
    if (options.empty()) break;
    const i64 d = options[rng() % options.size()];
    orders.push_back(d);
    n *= d;
  }
  const auto r = static_cast<Eigen::Index>(orders.size());
  std::vector<ovl::Rational> q;
  ovl::RatMatrix b = ovl::RatMatrix::Zero(r, r);
  for (Eigen::Index i = 0; i < r; ++i) {
    const i64 d = orders[static_cast<std::size_t>(i)];
    // q = c / d with c d even.
    i64 c = static_cast<i64>(rng() % static_cast<std::uint64_t>(2 * d));
    if (d % 2 != 0 && c % 2 != 0) c = (c + 1) % (2 * d);
    q.emplace_back(c, d);
    for (Eigen::Index j = 0; j < i; ++j) {
      const i64 g = std::gcd(d, orders[static_cast<std::size_t>(j)]);
      b(i, j) = b(j, i) = ovl::Rational(static_cast<i64>(rng() % static_cast<std::uint64_t>(g)), g);
    }
  }
  return ovl::TorsionQuadraticModule(orders, q, b);
}

/// The same module on random new generators y_i of order d_i spanning M.
inline ovl::TorsionQuadraticModule random_regenerate(std::mt19937_64& rng, const ovl::TorsionQuadraticModule& m) {
  const auto elems = all_elements(m.orders());
  for (int attempt = 0; attempt < 10000; ++attempt) {
    std::vector<ovl::Element> ys;
    for (const i64 d : m.orders()) {
      std::vector<const std::vector<i64>*> opts;
      for (const auto& x : elems)
        if (order_of(m.orders(), x) == d) opts.push_back(&x);
      ys.push_back(*opts[rng() % opts.size()]);
    }
    // Spanning check.
    std::vector<char> hit(elems.size(), 0);
    std::size_t count = 0;
    for (const auto& c : elems) {
      ovl::Element z = m.zero();
      for (std::size_t i = 0; i < c.size(); ++i) z = m.add(z, m.scale(c[i], ys[i]));
      auto& h = hit[static_cast<std::size_t>(m.index_of(z))];
      if (!h) ++count;
      h = 1;
    }
    if (count != elems.size()) continue;
    const auto r = static_cast<Eigen::Index>(ys.size());
    std::vector<ovl::Rational> q;
    ovl::RatMatrix b(r, r);
    for (Eigen::Index i = 0; i < r; ++i) {
      q.push_back(ovl::element_q(m, ys[static_cast<std::size_t>(i)]));
      for (Eigen::Index j = 0; j < r; ++j) b(i, j) = ovl::element_b(m, ys[static_cast<std::size_t>(i)], ys[static_cast<std::size_t>(j)]);
    }
    return ovl::TorsionQuadraticModule(m.orders(), q, b);
  }
  return m;
}

/// Random unimodular matrix: product of elementary operations.
inline Mat random_unimodular(std::mt19937_64& rng, std::size_t n, int steps = 6) {
  Mat u(n, std::vector<i64>(n, 0));
  for (std::size_t i = 0; i < n; ++i) u[i][i] = 1;
  for (int s = 0; s < steps; ++s) {
    const std::size_t i = rng() % n, j = rng() % n;
    if (i == j) {
      for (auto& row : u) row[i] = -row[i];
      continue;
    }
    const i64 c = static_cast<i64>(rng() % 5) - 2;
    for (auto& row : u) row[i] += c * row[j];
  }
  return u;
}

inline Mat congruence(const Mat& u, const Mat& g) {
  const std::size_t n = g.size();
  Mat out(n, std::vector<i64>(n, 0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b) out[i][j] += u[a][i] * g[a][b] * u[b][j];
  return out;
}

/// Random nondegenerate even symmetric matrix with small entries.
inline Mat random_even_gram(std::mt19937_64& rng, std::size_t n, i64 max_abs_det = 400) {
  while (true) {
    Mat g(n, std::vector<i64>(n, 0));
    for (std::size_t i = 0; i < n; ++i) {
      g[i][i] = 2 * (static_cast<i64>(rng() % 9) - 4);
      for (std::size_t j = 0; j < i; ++j) g[i][j] = g[j][i] = static_cast<i64>(rng() % 7) - 3;
    }
    const i64 d = abs128(cofactor_det(g));
    if (d != 0 && d <= max_abs_det) return g;
  }
}

}  // namespace oracle
