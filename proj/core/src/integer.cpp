#include "avfq/integer.hpp"

#include <climits>

namespace avfq {

int valuation(const Int& n, const Int& p) {
  if (n == 0 || p <= 1) return 0;
  Int m = abs_int(n);
  int v = 0;
  while (divides(p, m)) {
    m /= p;
    ++v;
  }
  return v;
}

bool is_perfect_square(const Int& n) {
  return n >= 0 && mpz_perfect_square_p(n.get_mpz_t()) != 0;
}

std::string to_string(const Int& v) { return v.get_str(); }

std::string to_string(const Rat& v) { return v.get_str(); }

bool fits_long(const Int& v) { return v.fits_slong_p(); }

}  // namespace avfq
