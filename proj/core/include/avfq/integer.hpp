#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <vector>

namespace avfq {

using Int = mpz_class;
using Rat = mpq_class;

inline Int int_from(std::int64_t v) { return Int(static_cast<long>(v)); }

inline Rat make_rat(const Int& num, const Int& den = 1) {
  Rat r(num, den);
  r.canonicalize();
  return r;
}

inline Int gcd(const Int& a, const Int& b) {
  Int g;
  mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return g;
}

inline Int lcm(const Int& a, const Int& b) {
  Int l;
  mpz_lcm(l.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return l;
}

inline Int abs_int(const Int& a) { return a < 0 ? Int(-a) : a; }

// Floor division and the matching non-negative remainder.
inline Int floor_div(const Int& a, const Int& b) {
  Int q;
  mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

inline Int mod_floor(const Int& a, const Int& m) {
  Int r;
  mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
  if (r < 0) r += abs_int(m);
  return r;
}

inline Int pow_int(const Int& base, unsigned long e) {
  Int r;
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
  return r;
}

inline Rat pow_rat(const Rat& base, unsigned long e) {
  Int num = pow_int(base.get_num(), e);
  Int den = pow_int(base.get_den(), e);
  return make_rat(num, den);
}

inline bool is_integral(const Rat& r) { return r.get_den() == 1; }

inline bool divides(const Int& d, const Int& n) {
  return d != 0 && mpz_divisible_p(n.get_mpz_t(), d.get_mpz_t()) != 0;
}

// Largest e with p^e | n; n must be nonzero and p > 1.
int valuation(const Int& n, const Int& p);

// Exact integer square root test.
bool is_perfect_square(const Int& n);

std::string to_string(const Int& v);
std::string to_string(const Rat& v);

inline long to_long(const Int& v) { return v.get_si(); }

bool fits_long(const Int& v);

}  // namespace avfq
