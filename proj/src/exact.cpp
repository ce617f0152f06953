#include "ovl/exact.hpp"

#include <sstream>
#include <stdexcept>
#include <utility>

namespace ovl {

namespace mp = boost::multiprecision;

std::vector<Integer> SnfDecomposition::invariant_factors() const {
  std::vector<Integer> out;
  const auto n = std::min(d.rows(), d.cols());
  out.reserve(static_cast<std::size_t>(n));
  for (Eigen::Index i = 0; i < n; ++i) out.push_back(d(i, i));
  return out;
}

Signature CongruenceDiagonalization::signature() const {
  Signature s;
  for (Eigen::Index i = 0; i < d.rows(); ++i) {
    if (d(i, i) > 0)
      ++s.positive;
    else if (d(i, i) < 0)
      ++s.negative;
    else
      ++s.zero;
  }
  return s;
}

// --- integers ---------------------------------------------------------------

Integer floor_div(const Integer& a, const Integer& b) {
  if (b == 0) throw std::domain_error("division by zero");
  Integer q = a / b;  // truncates toward zero
  if ((a % b != 0) && ((a < 0) != (b < 0))) q -= 1;
  return q;
}

Integer mod(const Integer& a, const Integer& m) {
  const Integer am = mp::abs(m);
  Integer r = a % am;
  if (r < 0) r += am;
  return r;
}

std::int64_t mod(std::int64_t a, std::int64_t m) {
  if (m < 0) m = -m;
  std::int64_t r = a % m;
  return r < 0 ? r + m : r;
}

Integer gcd(const Integer& a, const Integer& b) { return mp::gcd(a, b); }

std::int64_t gcd(std::int64_t a, std::int64_t b) {
  if (a < 0) a = -a;
  if (b < 0) b = -b;
  while (b != 0) {
    const std::int64_t r = a % b;
    a = b;
    b = r;
  }
  return a;
}

std::int64_t lcm(std::int64_t a, std::int64_t b) {
  if (a == 0 || b == 0) return 0;
  const std::int64_t g = gcd(a, b);
  const std::int64_t r = (a / g) * b;
  return r < 0 ? -r : r;
}

Integer extended_gcd(const Integer& a, const Integer& b, Integer& s, Integer& t) {
  Integer old_r = a, r = b, old_s = 1, cur_s = 0, old_t = 0, cur_t = 1;
  while (r != 0) {
    const Integer q = floor_div(old_r, r);
    Integer tmp = old_r - q * r;
    old_r = r;
    r = tmp;
    tmp = old_s - q * cur_s;
    old_s = cur_s;
    cur_s = tmp;
    tmp = old_t - q * cur_t;
    old_t = cur_t;
    cur_t = tmp;
  }
  if (old_r < 0) {
    old_r = -old_r;
    old_s = -old_s;
    old_t = -old_t;
  }
  s = old_s;
  t = old_t;
  return old_r;
}

std::int64_t extended_gcd(std::int64_t a, std::int64_t b, std::int64_t& s, std::int64_t& t) {
  Integer bs, bt;
  const Integer g = extended_gcd(Integer(a), Integer(b), bs, bt);
  s = to_int64(bs);
  t = to_int64(bt);
  return to_int64(g);
}

std::int64_t inverse_mod(std::int64_t a, std::int64_t m) {
  std::int64_t s = 0, t = 0;
  if (extended_gcd(mod(a, m), m, s, t) != 1) throw std::domain_error("not invertible modulo m");
  return mod(s, m);
}

std::int64_t mul_mod(std::int64_t a, std::int64_t b, std::int64_t m) {
  const __int128 r = static_cast<__int128>(mod(a, m)) * static_cast<__int128>(mod(b, m));
  return static_cast<std::int64_t>(r % m);
}

bool is_prime(std::int64_t n) {
  if (n < 2) return false;
  for (std::int64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

std::vector<std::pair<std::int64_t, int>> factorize(std::int64_t n) {
  if (n < 0) n = -n;
  std::vector<std::pair<std::int64_t, int>> out;
  for (std::int64_t p = 2; p * p <= n; ++p) {
    if (n % p != 0) continue;
    int e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    out.emplace_back(p, e);
  }
  if (n > 1) out.emplace_back(n, 1);
  return out;
}

int valuation(std::int64_t n, std::int64_t p) {
  if (n == 0) throw std::domain_error("valuation of zero");
  int e = 0;
  while (n % p == 0) {
    n /= p;
    ++e;
  }
  return e;
}

std::int64_t ipow(std::int64_t base, int exponent) {
  std::int64_t r = 1;
  for (int i = 0; i < exponent; ++i) r *= base;
  return r;
}

int legendre(std::int64_t a, std::int64_t p) {
  a = mod(a, p);
  if (a == 0) return 0;
  // Euler's criterion by square-and-multiply.
  std::int64_t result = 1, b = a, e = (p - 1) / 2;
  while (e > 0) {
    if (e & 1) result = mul_mod(result, b, p);
    b = mul_mod(b, b, p);
    e >>= 1;
  }
  return result == 1 ? 1 : -1;
}

std::int64_t to_int64(const Integer& x) {
  if (x > std::numeric_limits<std::int64_t>::max() || x < std::numeric_limits<std::int64_t>::min())
    throw std::overflow_error("integer does not fit in 64 bits");
  return x.convert_to<std::int64_t>();
}

// --- rationals --------------------------------------------------------------

Integer floor(const Rational& x) { return floor_div(mp::numerator(x), mp::denominator(x)); }

Rational mod(const Rational& x, const Integer& m) {
  const Rational rm(m);
  return x - rm * Rational(floor(x / rm));
}

bool is_integer(const Rational& x) { return mp::denominator(x) == 1; }

std::string to_string(const Rational& x) { return x.str(); }
std::string to_string(const Integer& x) { return x.str(); }

// --- matrices ---------------------------------------------------------------

RatMatrix to_rational(const IntMatrix& m) { return m.cast<Rational>(); }

bool is_integral(const RatMatrix& m) {
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j)
      if (!is_integer(m(i, j))) return false;
  return true;
}

IntMatrix to_integer(const RatMatrix& m) {
  IntMatrix out(m.rows(), m.cols());
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      if (!is_integer(m(i, j))) throw std::domain_error("not integral");
      out(i, j) = mp::numerator(m(i, j));
    }
  return out;
}

IntMatrix identity(Eigen::Index n) {
  IntMatrix m = IntMatrix::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

bool is_symmetric(const IntMatrix& m) { return m.rows() == m.cols() && m == m.transpose(); }
bool is_symmetric(const RatMatrix& m) { return m.rows() == m.cols() && m == m.transpose(); }

IntMatrix make_matrix(std::initializer_list<std::initializer_list<std::int64_t>> rows) {
  const auto r = static_cast<Eigen::Index>(rows.size());
  const auto c = r == 0 ? Eigen::Index{0} : static_cast<Eigen::Index>(rows.begin()->size());
  IntMatrix m(r, c);
  Eigen::Index i = 0;
  for (const auto& row : rows) {
    if (static_cast<Eigen::Index>(row.size()) != c) throw std::invalid_argument("ragged matrix");
    Eigen::Index j = 0;
    for (const auto v : row) m(i, j++) = v;
    ++i;
  }
  return m;
}

Integer determinant(const IntMatrix& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("determinant of non-square matrix");
  const Eigen::Index n = m.rows();
  if (n == 0) return 1;
  IntMatrix a = m;
  Integer sign = 1, prev = 1;
  for (Eigen::Index k = 0; k + 1 < n; ++k) {
    if (a(k, k) == 0) {
      Eigen::Index swap = -1;
      for (Eigen::Index i = k + 1; i < n; ++i)
        if (a(i, k) != 0) {
          swap = i;
          break;
        }
      if (swap < 0) return 0;
      a.row(k).swap(a.row(swap));
      sign = -sign;
    }
    for (Eigen::Index i = k + 1; i < n; ++i) {
      for (Eigen::Index j = k + 1; j < n; ++j) a(i, j) = (a(i, j) * a(k, k) - a(i, k) * a(k, j)) / prev;
      a(i, k) = 0;
    }
    prev = a(k, k);
  }
  return sign * a(n - 1, n - 1);
}

Rational determinant(const RatMatrix& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("determinant of non-square matrix");
  RatMatrix a = m;
  const Eigen::Index n = a.rows();
  Rational det = 1;
  for (Eigen::Index k = 0; k < n; ++k) {
    Eigen::Index piv = -1;
    for (Eigen::Index i = k; i < n; ++i)
      if (a(i, k) != 0) {
        piv = i;
        break;
      }
    if (piv < 0) return 0;
    if (piv != k) {
      a.row(k).swap(a.row(piv));
      det = -det;
    }
    det *= a(k, k);
    for (Eigen::Index i = k + 1; i < n; ++i) {
      const Rational f = a(i, k) / a(k, k);
      if (f != 0) a.row(i) -= f * a.row(k);
    }
  }
  return det;
}

SnfDecomposition snf(const IntMatrix& m) {
  const Eigen::Index rows = m.rows(), cols = m.cols();
  IntMatrix a = m;
  IntMatrix u = identity(rows);
  IntMatrix v = identity(cols);
  const Eigen::Index steps = std::min(rows, cols);

  for (Eigen::Index t = 0; t < steps; ++t) {
    while (true) {
      // Pivot: smallest nonzero |entry| in the active block, row-major ties.
      Eigen::Index pi = -1, pj = -1;
      Integer best;
      for (Eigen::Index i = t; i < rows; ++i)
        for (Eigen::Index j = t; j < cols; ++j) {
          if (a(i, j) == 0) continue;
          const Integer mag = mp::abs(a(i, j));
          if (pi < 0 || mag < best) {
            best = mag;
            pi = i;
            pj = j;
          }
        }
      if (pi < 0) {
        // Active block is zero; remaining diagonal entries are 0.
        return SnfDecomposition{std::move(u), std::move(a), std::move(v)};
      }
      if (pi != t) {
        a.row(t).swap(a.row(pi));
        u.row(t).swap(u.row(pi));
      }
      if (pj != t) {
        a.col(t).swap(a.col(pj));
        v.col(t).swap(v.col(pj));
      }

      bool clean = true;
      for (Eigen::Index i = t + 1; i < rows; ++i) {
        if (a(i, t) == 0) continue;
        const Integer q = floor_div(a(i, t), a(t, t));
        a.row(i) -= q * a.row(t);
        u.row(i) -= q * u.row(t);
        if (a(i, t) != 0) clean = false;
      }
      for (Eigen::Index j = t + 1; j < cols; ++j) {
        if (a(t, j) == 0) continue;
        const Integer q = floor_div(a(t, j), a(t, t));
        a.col(j) -= q * a.col(t);
        v.col(j) -= q * v.col(t);
        if (a(t, j) != 0) clean = false;
      }
      if (!clean) continue;

      // Divisibility: fold the first offending row into the pivot row.
      Eigen::Index bad = -1;
      for (Eigen::Index i = t + 1; i < rows && bad < 0; ++i)
        for (Eigen::Index j = t + 1; j < cols; ++j)
          if (a(i, j) % a(t, t) != 0) {
            bad = i;
            break;
          }
      if (bad < 0) break;
      a.row(t) += a.row(bad);
      u.row(t) += u.row(bad);
    }
    if (a(t, t) < 0) {
      a.row(t) = -a.row(t);
      u.row(t) = -u.row(t);
    }
  }
  return SnfDecomposition{std::move(u), std::move(a), std::move(v)};
}

IntMatrix hnf(const IntMatrix& m) {
  IntMatrix a = m;
  const Eigen::Index rows = a.rows(), cols = a.cols();
  if (rows < cols) throw std::domain_error("rank deficient");
  for (Eigen::Index j = 0; j < cols; ++j) {
    const Eigen::Index p = j;
    for (Eigen::Index i = p + 1; i < rows; ++i) {
      if (a(i, j) == 0) continue;
      if (a(p, j) == 0) {
        a.row(p).swap(a.row(i));
        continue;
      }
      Integer s, t;
      const Integer g = extended_gcd(a(p, j), a(i, j), s, t);
      const Integer x = a(i, j) / g, y = a(p, j) / g;
      const Vector<Integer> rp = a.row(p).transpose();
      const Vector<Integer> ri = a.row(i).transpose();
      a.row(p) = (s * rp + t * ri).transpose();
      a.row(i) = (x * rp - y * ri).transpose();
    }
    if (a(p, j) == 0) throw std::domain_error("rank deficient");
    if (a(p, j) < 0) a.row(p) = -a.row(p);
    for (Eigen::Index i = 0; i < p; ++i) {
      const Integer q = floor_div(a(i, j), a(p, j));
      if (q != 0) a.row(i) -= q * a.row(p);
    }
  }
  return a.topRows(cols);
}

RatMatrix inverse(const RatMatrix& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("inverse of non-square matrix");
  const Eigen::Index n = m.rows();
  RatMatrix a = m;
  RatMatrix inv = RatMatrix::Identity(n, n);
  for (Eigen::Index k = 0; k < n; ++k) {
    Eigen::Index piv = -1;
    for (Eigen::Index i = k; i < n; ++i)
      if (a(i, k) != 0) {
        piv = i;
        break;
      }
    if (piv < 0) throw std::domain_error("singular");
    if (piv != k) {
      a.row(k).swap(a.row(piv));
      inv.row(k).swap(inv.row(piv));
    }
    const Rational scale = a(k, k);
    a.row(k) /= scale;
    inv.row(k) /= scale;
    for (Eigen::Index i = 0; i < n; ++i) {
      if (i == k || a(i, k) == 0) continue;
      const Rational f = a(i, k);
      a.row(i) -= f * a.row(k);
      inv.row(i) -= f * inv.row(k);
    }
  }
  return inv;
}

CongruenceDiagonalization congruence_diagonalize(const RatMatrix& g) {
  if (!is_symmetric(g)) throw std::invalid_argument("matrix not symmetric");
  const Eigen::Index n = g.rows();
  RatMatrix a = g;
  RatMatrix p = RatMatrix::Identity(n, n);

  auto swap_basis = [&](Eigen::Index i, Eigen::Index j) {
    a.row(i).swap(a.row(j));
    a.col(i).swap(a.col(j));
    p.col(i).swap(p.col(j));
  };

  for (Eigen::Index t = 0; t < n; ++t) {
    if (a(t, t) == 0) {
      Eigen::Index diag = -1;
      for (Eigen::Index i = t + 1; i < n; ++i)
        if (a(i, i) != 0) {
          diag = i;
          break;
        }
      if (diag >= 0) {
        swap_basis(t, diag);
      } else {
        Eigen::Index oi = -1, oj = -1;
        for (Eigen::Index i = t; i < n && oi < 0; ++i)
          for (Eigen::Index j = i + 1; j < n; ++j)
            if (a(i, j) != 0) {
              oi = i;
              oj = j;
              break;
            }
        if (oi < 0) break;  // remaining block is zero
        if (oi != t) swap_basis(t, oi);
        // b_t <- b_t + b_j gives a(t, t) = 2 a(t, j) != 0.
        a.row(t) += a.row(oj);
        a.col(t) += a.col(oj);
        p.col(t) += p.col(oj);
      }
    }
    for (Eigen::Index j = t + 1; j < n; ++j) {
      if (a(t, j) == 0) continue;
      const Rational c = a(t, j) / a(t, t);
      a.row(j) -= c * a.row(t);
      a.col(j) -= c * a.col(t);
      p.col(j) -= c * p.col(t);
    }
  }
  return CongruenceDiagonalization{std::move(p), std::move(a)};
}

namespace {
template <class M>
std::string matrix_string(const M& m) {
  std::ostringstream os;
  os << '[';
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    if (i) os << ',';
    os << '[';
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      if (j) os << ',';
      os << m(i, j).str();
    }
    os << ']';
  }
  os << ']';
  return os.str();
}
}  // namespace

std::string to_string(const IntMatrix& m) { return matrix_string(m); }
std::string to_string(const RatMatrix& m) { return matrix_string(m); }

}  // namespace ovl
