#pragma once

#include <utility>
#include <vector>

#include "avfq/integer.hpp"

namespace avfq {

struct PrimePower {
  Int prime;
  int exponent = 0;
  friend bool operator==(const PrimePower&, const PrimePower&) = default;
};

using Factorization = std::vector<PrimePower>;

bool is_prime(const Int& n);

// Factorization of |n| into primes, sorted by prime. n must be nonzero.
// Trial division up to 10^6, then Pollard rho with Brent's cycle detection.
Factorization factor_integer(const Int& n);

// Returns (p, a) with n = p^a, or nullopt-like (0, 0) when n is not a prime power.
std::pair<Int, int> prime_power_decomposition(const Int& n);

Int radical(const Int& n);

}  // namespace avfq
