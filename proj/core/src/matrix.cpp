#include "avfq/matrix.hpp"

#include <algorithm>
#include <sstream>

namespace avfq {

namespace {
int cmpabs(const Int& a, const Int& b) { return mpz_cmpabs(a.get_mpz_t(), b.get_mpz_t()); }
}  // namespace

RatMat to_rat(const IntMat& m) {
  RatMat r(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) r(i, j) = Rat(m(i, j));
  return r;
}

std::vector<Rat> row_times(const std::vector<Rat>& v, const RatMat& m) {
  std::vector<Rat> out(m.cols(), Rat(0));
  for (std::size_t i = 0; i < m.rows(); ++i) {
    if (v[i] == 0) continue;
    for (std::size_t j = 0; j < m.cols(); ++j) out[j] += v[i] * m(i, j);
  }
  return out;
}

std::vector<Rat> times_col(const RatMat& m, const std::vector<Rat>& v) {
  std::vector<Rat> out(m.rows(), Rat(0));
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      if (v[j] != 0) out[i] += m(i, j) * v[j];
  return out;
}

Rat determinant(RatMat m) {
  const std::size_t n = m.rows();
  Rat det(1);
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    while (piv < n && m(piv, c) == 0) ++piv;
    if (piv == n) return Rat(0);
    if (piv != c) {
      m.swap_rows(piv, c);
      det = -det;
    }
    det *= m(c, c);
    for (std::size_t i = c + 1; i < n; ++i) {
      if (m(i, c) == 0) continue;
      Rat f = m(i, c) / m(c, c);
      for (std::size_t j = c; j < n; ++j) m(i, j) -= f * m(c, j);
    }
  }
  return det;
}

Int determinant(const IntMat& src) {
  // Bareiss fraction-free elimination.
  const std::size_t n = src.rows();
  if (n == 0) return Int(1);
  IntMat m = src;
  Int prev(1);
  int sign = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m(k, k) == 0) {
      std::size_t piv = k + 1;
      while (piv < n && m(piv, k) == 0) ++piv;
      if (piv == n) return Int(0);
      m.swap_rows(piv, k);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j) {
        Int t = m(i, j) * m(k, k) - m(i, k) * m(k, j);
        mpz_divexact(t.get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
        m(i, j) = t;
      }
    prev = m(k, k);
  }
  Int d = m(n - 1, n - 1);
  return sign > 0 ? d : Int(-d);
}

std::optional<RatMat> inverse(const RatMat& src) {
  const std::size_t n = src.rows();
  RatMat a = src;
  RatMat inv = RatMat::identity(n);
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    while (piv < n && a(piv, c) == 0) ++piv;
    if (piv == n) return std::nullopt;
    a.swap_rows(piv, c);
    inv.swap_rows(piv, c);
    Rat f = 1 / a(c, c);
    for (std::size_t j = 0; j < n; ++j) {
      a(c, j) *= f;
      inv(c, j) *= f;
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (i == c || a(i, c) == 0) continue;
      Rat g = a(i, c);
      for (std::size_t j = 0; j < n; ++j) {
        a(i, j) -= g * a(c, j);
        inv(i, j) -= g * inv(c, j);
      }
    }
  }
  return inv;
}

std::optional<std::vector<Rat>> solve(const RatMat& m, const std::vector<Rat>& b) {
  const std::size_t n = m.rows();
  RatMat a(n, n + 1);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) a(i, j) = m(i, j);
    a(i, n) = b[i];
  }
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    while (piv < n && a(piv, c) == 0) ++piv;
    if (piv == n) return std::nullopt;
    a.swap_rows(piv, c);
    for (std::size_t i = c + 1; i < n; ++i) {
      if (a(i, c) == 0) continue;
      Rat f = a(i, c) / a(c, c);
      for (std::size_t j = c; j <= n; ++j) a(i, j) -= f * a(c, j);
    }
  }
  std::vector<Rat> x(n, Rat(0));
  for (std::size_t ii = n; ii-- > 0;) {
    Rat s = a(ii, n);
    for (std::size_t j = ii + 1; j < n; ++j) s -= a(ii, j) * x[j];
    x[ii] = s / a(ii, ii);
  }
  return x;
}

Rat trace(const RatMat& m) {
  Rat t(0);
  for (std::size_t i = 0; i < m.rows(); ++i) t += m(i, i);
  return t;
}

std::vector<Rat> charpoly_coeffs(const RatMat& a) {
  // Faddeev-LeVerrier: M_1 = A, c_{n-k} = -tr(A M_k)/k, M_{k+1} = A M_k + c_{n-k} A.
  const std::size_t n = a.rows();
  std::vector<Rat> c(n + 1, Rat(0));
  c[n] = 1;
  RatMat mk = RatMat::identity(n);
  for (std::size_t k = 1; k <= n; ++k) {
    RatMat amk = a * mk;
    Rat ck = -trace(amk) / Rat(static_cast<long>(k));
    c[n - k] = ck;
    mk = amk;
    for (std::size_t i = 0; i < n; ++i) mk(i, i) += ck;
  }
  return c;
}

namespace {

// Index of the row in [from, rows) with the smallest nonzero |m(i, col)|.
std::size_t min_abs_row(const IntMat& m, std::size_t from, std::size_t col) {
  std::size_t best = m.rows();
  for (std::size_t i = from; i < m.rows(); ++i) {
    if (m(i, col) == 0) continue;
    if (best == m.rows() || cmpabs(m(i, col), m(best, col)) < 0) best = i;
  }
  return best;
}

void row_axpy(IntMat& m, std::size_t dst, const Int& f, std::size_t src) {
  if (f == 0) return;
  for (std::size_t j = 0; j < m.cols(); ++j)
    if (m(src, j) != 0) m(dst, j) -= f * m(src, j);
}

void negate_row(IntMat& m, std::size_t i) {
  for (std::size_t j = 0; j < m.cols(); ++j) m(i, j) = -m(i, j);
}

}  // namespace

HnfResult hermite_normal_form(const IntMat& src) {
  IntMat h = src;
  IntMat u = IntMat::identity(src.rows());
  std::size_t r = 0;
  for (std::size_t col = 0; col < h.cols() && r < h.rows(); ++col) {
    for (;;) {
      std::size_t piv = min_abs_row(h, r, col);
      if (piv == h.rows()) break;
      h.swap_rows(piv, r);
      u.swap_rows(piv, r);
      bool clean = true;
      for (std::size_t i = r + 1; i < h.rows(); ++i) {
        if (h(i, col) == 0) continue;
        Int q = floor_div(h(i, col), h(r, col));
        row_axpy(h, i, q, r);
        row_axpy(u, i, q, r);
        if (h(i, col) != 0) clean = false;
      }
      if (clean) break;
    }
    if (r >= h.rows() || h(r, col) == 0) continue;
    if (h(r, col) < 0) {
      negate_row(h, r);
      negate_row(u, r);
    }
    for (std::size_t i = 0; i < r; ++i) {
      Int q = floor_div(h(i, col), h(r, col));
      row_axpy(h, i, q, r);
      row_axpy(u, i, q, r);
    }
    ++r;
  }
  return {std::move(h), std::move(u), r};
}

IntMat hnf_basis(const IntMat& src) {
  IntMat h = src;
  std::size_t r = 0;
  for (std::size_t col = 0; col < h.cols() && r < h.rows(); ++col) {
    for (;;) {
      std::size_t piv = min_abs_row(h, r, col);
      if (piv == h.rows()) break;
      h.swap_rows(piv, r);
      bool clean = true;
      for (std::size_t i = r + 1; i < h.rows(); ++i) {
        if (h(i, col) == 0) continue;
        row_axpy(h, i, floor_div(h(i, col), h(r, col)), r);
        if (h(i, col) != 0) clean = false;
      }
      if (clean) break;
    }
    if (r >= h.rows() || h(r, col) == 0) continue;
    if (h(r, col) < 0) negate_row(h, r);
    for (std::size_t i = 0; i < r; ++i) row_axpy(h, i, floor_div(h(i, col), h(r, col)), r);
    ++r;
  }
  IntMat out(r, h.cols());
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < h.cols(); ++j) out(i, j) = h(i, j);
  return out;
}

IntMat hnf_basis_mod(const IntMat& src, const Int& modulus) {
  const std::size_t n = src.cols();
  const Int d = abs_int(modulus);
  std::vector<std::vector<Int>> pool;
  pool.reserve(src.rows());
  for (std::size_t i = 0; i < src.rows(); ++i) {
    std::vector<Int> row = src.row(i);
    bool zero = true;
    for (auto& v : row) {
      v = mod_floor(v, d);
      if (v != 0) zero = false;
    }
    if (!zero) pool.push_back(std::move(row));
  }
  IntMat h(n, n);
  for (std::size_t col = 0; col < n; ++col) {
    // gcd-eliminate column `col` inside the pool, working modulo d.
    for (;;) {
      std::size_t best = pool.size();
      for (std::size_t i = 0; i < pool.size(); ++i) {
        if (pool[i][col] == 0) continue;
        if (best == pool.size() || cmpabs(pool[i][col], pool[best][col]) < 0) best = i;
      }
      if (best == pool.size()) break;
      std::swap(pool[best], pool[0]);
      bool clean = true;
      for (std::size_t i = 1; i < pool.size(); ++i) {
        if (pool[i][col] == 0) continue;
        Int q = floor_div(pool[i][col], pool[0][col]);
        for (std::size_t j = col; j < n; ++j) pool[i][j] = mod_floor(pool[i][j] - q * pool[0][j], d);
        if (pool[i][col] != 0) clean = false;
      }
      if (clean) break;
    }
    std::vector<Int> pivot(n, Int(0));
    if (!pool.empty() && pool[0][col] != 0) {
      std::vector<Int> r = std::move(pool[0]);
      pool.erase(pool.begin());
      Int g, u, v;
      mpz_gcdext(g.get_mpz_t(), u.get_mpz_t(), v.get_mpz_t(), r[col].get_mpz_t(), d.get_mpz_t());
      for (std::size_t j = col + 1; j < n; ++j) pivot[j] = mod_floor(u * r[j], d);
      pivot[col] = g;
      if (g != d) {
        Int f = d / g;
        std::vector<Int> rest(n, Int(0));
        bool zero = true;
        for (std::size_t j = col + 1; j < n; ++j) {
          rest[j] = mod_floor(f * r[j], d);
          if (rest[j] != 0) zero = false;
        }
        if (!zero) pool.push_back(std::move(rest));
      }
    } else {
      pivot[col] = d;
    }
    // Drop rows that became zero.
    pool.erase(std::remove_if(pool.begin(), pool.end(),
                              [](const std::vector<Int>& row) {
                                return std::all_of(row.begin(), row.end(), [](const Int& v) { return v == 0; });
                              }),
               pool.end());
    h.set_row(col, pivot);
  }
  for (std::size_t col = 0; col < n; ++col)
    for (std::size_t i = 0; i < col; ++i) row_axpy(h, i, floor_div(h(i, col), h(col, col)), col);
  return h;
}

SnfResult smith_normal_form(const IntMat& src) {
  IntMat a = src;
  const std::size_t rows = a.rows();
  const std::size_t cols = a.cols();
  std::vector<Int> diag;
  std::size_t t = 0;
  while (t < rows && t < cols) {
    // Smallest nonzero entry of the trailing block becomes the pivot.
    std::size_t bi = rows, bj = cols;
    for (std::size_t i = t; i < rows; ++i)
      for (std::size_t j = t; j < cols; ++j)
        if (a(i, j) != 0 && (bi == rows || cmpabs(a(i, j), a(bi, bj)) < 0)) {
          bi = i;
          bj = j;
        }
    if (bi == rows) break;
    a.swap_rows(bi, t);
    for (std::size_t i = 0; i < rows; ++i) std::swap(a(i, bj), a(i, t));
    for (;;) {
      bool changed = false;
      for (std::size_t i = t + 1; i < rows; ++i) {
        if (a(i, t) == 0) continue;
        Int q = floor_div(a(i, t), a(t, t));
        for (std::size_t j = t; j < cols; ++j) a(i, j) -= q * a(t, j);
        if (a(i, t) != 0) changed = true;
      }
      for (std::size_t j = t + 1; j < cols; ++j) {
        if (a(t, j) == 0) continue;
        Int q = floor_div(a(t, j), a(t, t));
        for (std::size_t i = t; i < rows; ++i) a(i, j) -= q * a(i, t);
        if (a(t, j) != 0) changed = true;
      }
      if (changed) {
        // Move the smallest remaining entry of row/column t to the pivot.
        std::size_t pi = t, pj = t;
        for (std::size_t i = t + 1; i < rows; ++i)
          if (a(i, t) != 0 && cmpabs(a(i, t), a(pi, pj)) < 0) { pi = i; pj = t; }
        for (std::size_t j = t + 1; j < cols; ++j)
          if (a(t, j) != 0 && cmpabs(a(t, j), a(pi, pj)) < 0) { pi = t; pj = j; }
        a.swap_rows(pi, t);
        for (std::size_t i = 0; i < rows; ++i) std::swap(a(i, pj), a(i, t));
        continue;
      }
      // Enforce divisibility of the remaining block by the pivot.
      bool fixed = true;
      for (std::size_t i = t + 1; i < rows && fixed; ++i)
        for (std::size_t j = t + 1; j < cols; ++j)
          if (!divides(a(t, t), a(i, j))) {
            for (std::size_t jj = t; jj < cols; ++jj) a(t, jj) += a(i, jj);
            fixed = false;
            break;
          }
      if (fixed) break;
    }
    diag.push_back(abs_int(a(t, t)));
    ++t;
  }
  return {std::move(diag), t};
}

std::string to_string(const IntMat& m) {
  std::ostringstream os;
  os << '[';
  for (std::size_t i = 0; i < m.rows(); ++i) {
    os << (i ? ", [" : "[");
    for (std::size_t j = 0; j < m.cols(); ++j) os << (j ? ", " : "") << m(i, j).get_str();
    os << ']';
  }
  os << ']';
  return os.str();
}

}  // namespace avfq
