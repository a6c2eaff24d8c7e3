#include "avfq/factor.hpp"

#include <algorithm>
#include <map>

#include "avfq/error.hpp"

namespace avfq {

namespace {

constexpr unsigned kTrialLimit = 1000000;

const std::vector<unsigned>& small_primes() {
  static const std::vector<unsigned> primes = [] {
    std::vector<bool> composite(kTrialLimit + 1, false);
    std::vector<unsigned> out;
    for (unsigned i = 2; i <= kTrialLimit; ++i) {
      if (composite[i]) continue;
      out.push_back(i);
      for (unsigned long j = static_cast<unsigned long>(i) * i; j <= kTrialLimit; j += i) composite[j] = true;
    }
    return out;
  }();
  return primes;
}

Int mulmod(const Int& a, const Int& b, const Int& n) {
  Int r = a * b;
  mpz_mod(r.get_mpz_t(), r.get_mpz_t(), n.get_mpz_t());
  return r;
}

// Brent's variant of Pollard rho; returns a nontrivial factor of the odd
// composite n (possibly n itself when the walk fails for this constant).
Int pollard_brent(const Int& n, unsigned long c) {
  const unsigned long m = 128;
  Int y(2), x, ys, q(1), g(1);
  const Int cc(c);
  unsigned long r = 1;
  auto f = [&](const Int& v) {
    Int t = v * v + cc;
    mpz_mod(t.get_mpz_t(), t.get_mpz_t(), n.get_mpz_t());
    return t;
  };
  do {
    x = y;
    for (unsigned long i = 0; i < r; ++i) y = f(y);
    unsigned long k = 0;
    do {
      ys = y;
      for (unsigned long i = 0; i < std::min(m, r - k); ++i) {
        y = f(y);
        Int diff = abs_int(Int(x - y));
        q = mulmod(q, diff, n);
      }
      g = gcd(q, n);
      k += m;
    } while (k < r && g == 1);
    r *= 2;
    if (r > (1ul << 40)) throw Error(ErrorCode::PartialFactorization, "Pollard rho iteration budget exhausted");
  } while (g == 1);
  if (g == n) {
    do {
      ys = f(ys);
      g = gcd(abs_int(Int(x - ys)), n);
    } while (g == 1);
  }
  return g;
}

void split(const Int& n, std::map<Int, int>& out) {
  if (n == 1) return;
  if (is_prime(n)) {
    ++out[n];
    return;
  }
  if (is_perfect_square(n)) {
    Int r;
    mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
    split(r, out);
    split(r, out);
    return;
  }
  for (unsigned long c = 1;; ++c) {
    Int d = pollard_brent(n, c);
    if (d != n && d != 1) {
      split(d, out);
      split(Int(n / d), out);
      return;
    }
    if (c > 64) throw Error(ErrorCode::PartialFactorization, "could not split " + n.get_str());
  }
}

}  // namespace

bool is_prime(const Int& n) {
  if (n < 2) return false;
  return mpz_probab_prime_p(n.get_mpz_t(), 30) > 0;
}

Factorization factor_integer(const Int& n) {
  if (n == 0) throw Error(ErrorCode::InvalidArgument, "factor_integer(0)");
  Int m = abs_int(n);
  std::map<Int, int> found;
  for (unsigned p : small_primes()) {
    const Int pp(static_cast<unsigned long>(p));
    if (pp * pp > m) break;
    int e = 0;
    while (mpz_divisible_ui_p(m.get_mpz_t(), p)) {
      mpz_divexact_ui(m.get_mpz_t(), m.get_mpz_t(), p);
      ++e;
    }
    if (e > 0) found[pp] += e;
  }
  if (m > 1) split(m, found);
  Factorization out;
  out.reserve(found.size());
  for (auto& [p, e] : found) out.push_back({p, e});
  return out;
}

std::pair<Int, int> prime_power_decomposition(const Int& n) {
  if (n < 2) return {Int(0), 0};
  Factorization f = factor_integer(n);
  if (f.size() != 1) return {Int(0), 0};
  return {f.front().prime, f.front().exponent};
}

Int radical(const Int& n) {
  Int r(1);
  for (const auto& pe : factor_integer(n)) r *= pe.prime;
  return r;
}

}  // namespace avfq
