#include "fp_linalg.hpp"

#include <algorithm>

#include "avfq/error.hpp"

namespace avfq::detail {

u64 powmod(u64 a, u64 e, u64 p) {
  u64 r = 1 % p;
  a %= p;
  while (e) {
    if (e & 1) r = mulmod(r, a, p);
    a = mulmod(a, a, p);
    e >>= 1;
  }
  return r;
}

u64 invmod(u64 a, u64 p) { return powmod(a, p - 2, p); }

u64 reduce_mod(const Int& v, u64 p) {
  Int r = mod_floor(v, Int(static_cast<unsigned long>(p)));
  return r.get_ui();
}

u64 word_prime(const Int& p) {
  if (p < 2 || p >= Int(1ul << 62)) throw Error(ErrorCode::InvalidArgument, "prime " + p.get_str() + " is out of word range");
  return p.get_ui();
}

std::vector<std::size_t> FpSpace::free_columns() const {
  std::vector<std::size_t> out;
  for (std::size_t c = 0; c < n_; ++c)
    if (std::find(pivots_.begin(), pivots_.end(), c) == pivots_.end()) out.push_back(c);
  return out;
}

FpVec FpSpace::reduce(FpVec v) const {
  for (std::size_t r = 0; r < rows_.size(); ++r) {
    const u64 c = v[pivots_[r]];
    if (c == 0) continue;
    for (std::size_t j = 0; j < n_; ++j)
      if (rows_[r][j]) v[j] = submod(v[j], mulmod(c, rows_[r][j], p_), p_);
  }
  return v;
}

bool FpSpace::contains(const FpVec& v) const {
  FpVec r = reduce(v);
  return std::all_of(r.begin(), r.end(), [](u64 x) { return x == 0; });
}

bool FpSpace::add(FpVec v) {
  v = reduce(std::move(v));
  std::size_t k = 0;
  while (k < n_ && v[k] == 0) ++k;
  if (k == n_) return false;
  const u64 inv = invmod(v[k], p_);
  for (auto& x : v) x = mulmod(x, inv, p_);
  for (auto& row : rows_) {
    const u64 c = row[k];
    if (c == 0) continue;
    for (std::size_t j = 0; j < n_; ++j)
      if (v[j]) row[j] = submod(row[j], mulmod(c, v[j], p_), p_);
  }
  auto pos = std::lower_bound(pivots_.begin(), pivots_.end(), k) - pivots_.begin();
  pivots_.insert(pivots_.begin() + pos, k);
  rows_.insert(rows_.begin() + pos, std::move(v));
  return true;
}

std::vector<FpVec> kernel(const std::vector<FpVec>& images, u64 p) {
  const std::size_t m = images.size();
  if (m == 0) return {};
  const std::size_t n = images.front().size();
  struct Row {
    FpVec a;
    FpVec id;
    std::size_t pivot;
  };
  std::vector<Row> pivots;
  std::vector<FpVec> out;
  for (std::size_t i = 0; i < m; ++i) {
    FpVec a = images[i];
    FpVec id(m, 0);
    id[i] = 1;
    for (const auto& r : pivots) {
      const u64 c = a[r.pivot];
      if (c == 0) continue;
      for (std::size_t j = 0; j < n; ++j)
        if (r.a[j]) a[j] = submod(a[j], mulmod(c, r.a[j], p), p);
      for (std::size_t j = 0; j < m; ++j)
        if (r.id[j]) id[j] = submod(id[j], mulmod(c, r.id[j], p), p);
    }
    std::size_t k = 0;
    while (k < n && a[k] == 0) ++k;
    if (k == n) {
      out.push_back(std::move(id));
      continue;
    }
    const u64 inv = invmod(a[k], p);
    for (auto& x : a) x = mulmod(x, inv, p);
    for (auto& x : id) x = mulmod(x, inv, p);
    pivots.push_back({std::move(a), std::move(id), k});
  }
  return out;
}

FpVec FpAlgebra::basis(std::size_t i) const {
  FpVec v(n_, 0);
  v[i] = 1;
  return v;
}

FpVec FpAlgebra::mul(const FpVec& a, const FpVec& b) const {
  FpVec out(n_, 0);
  for (std::size_t i = 0; i < n_; ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < n_; ++j) {
      if (b[j] == 0) continue;
      const u64 c = mulmod(a[i], b[j], p_);
      const FpVec& t = table_[i][j];
      for (std::size_t k = 0; k < n_; ++k)
        if (t[k]) out[k] = addmod(out[k], mulmod(c, t[k], p_), p_);
    }
  }
  return out;
}

FpVec FpAlgebra::pow(FpVec a, const Int& e) const {
  FpVec r = one_;
  const std::size_t bits = mpz_sizeinbase(e.get_mpz_t(), 2);
  for (std::size_t b = bits; b-- > 0;) {
    r = mul(r, r);
    if (mpz_tstbit(e.get_mpz_t(), b)) r = mul(r, a);
  }
  if (e == 0) return one_;
  return r;
}

FpVec FpAlgebra::sub(const FpVec& a, const FpVec& b) const {
  FpVec out(n_);
  for (std::size_t i = 0; i < n_; ++i) out[i] = submod(a[i], b[i], p_);
  return out;
}

FpVec FpAlgebra::scale(const FpVec& a, u64 c) const {
  FpVec out(n_);
  for (std::size_t i = 0; i < n_; ++i) out[i] = mulmod(a[i], c, p_);
  return out;
}

FpSpace FpAlgebra::radical() const {
  Int q(static_cast<unsigned long>(p_));
  Int e = q;
  while (e < Int(static_cast<unsigned long>(n_))) e *= q;
  std::vector<FpVec> images;
  for (std::size_t i = 0; i < n_; ++i) images.push_back(pow(basis(i), e));
  FpSpace out(p_, n_);
  for (auto& v : kernel(images, p_)) out.add(std::move(v));
  return out;
}

namespace {

void trim(FpPoly& f) {
  while (!f.empty() && f.back() == 0) f.pop_back();
}

FpPoly poly_mod(FpPoly a, const FpPoly& b, u64 p) {
  trim(a);
  const u64 inv = invmod(b.back(), p);
  while (a.size() >= b.size()) {
    const u64 c = mulmod(a.back(), inv, p);
    const std::size_t shift = a.size() - b.size();
    for (std::size_t i = 0; i < b.size(); ++i) a[shift + i] = submod(a[shift + i], mulmod(c, b[i], p), p);
    trim(a);
  }
  return a;
}

FpPoly poly_mulmod(const FpPoly& a, const FpPoly& b, const FpPoly& m, u64 p) {
  if (a.empty() || b.empty()) return {};
  FpPoly c(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) c[i + j] = addmod(c[i + j], mulmod(a[i], b[j], p), p);
  return poly_mod(std::move(c), m, p);
}

FpPoly poly_gcd(FpPoly a, FpPoly b, u64 p) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    FpPoly r = poly_mod(a, b, p);
    a = std::move(b);
    b = std::move(r);
  }
  if (!a.empty()) {
    const u64 inv = invmod(a.back(), p);
    for (auto& x : a) x = mulmod(x, inv, p);
  }
  return a;
}

FpPoly poly_div(FpPoly a, const FpPoly& b, u64 p) {
  trim(a);
  FpPoly q(a.size() >= b.size() ? a.size() - b.size() + 1 : 0, 0);
  const u64 inv = invmod(b.back(), p);
  while (a.size() >= b.size()) {
    const u64 c = mulmod(a.back(), inv, p);
    const std::size_t shift = a.size() - b.size();
    q[shift] = c;
    for (std::size_t i = 0; i < b.size(); ++i) a[shift + i] = submod(a[shift + i], mulmod(c, b[i], p), p);
    trim(a);
  }
  return q;
}

u64 eval(const FpPoly& f, u64 x, u64 p) {
  u64 acc = 0;
  for (std::size_t i = f.size(); i-- > 0;) acc = addmod(mulmod(acc, x, p), f[i], p);
  return acc;
}

void split_into(const FpPoly& f, u64 p, std::vector<u64>& out) {
  const std::size_t deg = f.size() - 1;
  if (deg == 0) return;
  if (deg == 1) {
    out.push_back(mulmod(p - f[0], invmod(f[1], p), p));
    return;
  }
  // gcd((x + a)^((p-1)/2) - 1, f) separates the roots r with r + a a square.
  for (u64 a = 0;; ++a) {
    FpPoly base{a % p, 1};
    FpPoly r{1};
    u64 e = (p - 1) / 2;
    FpPoly b = poly_mod(base, f, p);
    while (e) {
      if (e & 1) r = poly_mulmod(r, b, f, p);
      b = poly_mulmod(b, b, f, p);
      e >>= 1;
    }
    if (r.empty()) r = {0};
    r[0] = submod(r[0], 1, p);
    trim(r);
    FpPoly g = poly_gcd(f, r, p);
    if (g.size() > 1 && g.size() < f.size()) {
      split_into(g, p, out);
      split_into(poly_div(f, g, p), p, out);
      return;
    }
  }
}

}  // namespace

std::vector<u64> split_roots(const FpPoly& f_in, u64 p) {
  FpPoly f = f_in;
  trim(f);
  std::vector<u64> out;
  if (f.size() <= 1) return out;
  if (p < 1024) {
    for (u64 x = 0; x < p; ++x)
      if (eval(f, x, p) == 0) out.push_back(x);
    return out;
  }
  split_into(f, p, out);
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace avfq::detail
