#pragma once
// Linear algebra and polynomials over F_p for word-sized p. Internal to the
// library; everything here works on plain coordinate vectors.

#include <cstddef>
#include <cstdint>
#include <vector>

#include "avfq/integer.hpp"

namespace avfq::detail {

using u64 = std::uint64_t;
using FpVec = std::vector<u64>;

inline u64 mulmod(u64 a, u64 b, u64 p) { return static_cast<u64>(static_cast<unsigned __int128>(a) * b % p); }
inline u64 addmod(u64 a, u64 b, u64 p) { return a >= p - b ? a - (p - b) : a + b; }
inline u64 submod(u64 a, u64 b, u64 p) { return a >= b ? a - b : a + (p - b); }
u64 powmod(u64 a, u64 e, u64 p);
u64 invmod(u64 a, u64 p);
u64 reduce_mod(const Int& v, u64 p);
// Throws InvalidArgument when p does not fit the word-sized routines.
u64 word_prime(const Int& p);

// A subspace of F_p^n kept in reduced row echelon form.
class FpSpace {
 public:
  FpSpace(u64 p, std::size_t n) : p_(p), n_(n) {}

  std::size_t dim() const { return rows_.size(); }
  std::size_t ambient() const { return n_; }
  const std::vector<FpVec>& rows() const { return rows_; }
  const std::vector<std::size_t>& pivots() const { return pivots_; }
  // Coordinates that are not pivots; they index a basis of F_p^n / this.
  std::vector<std::size_t> free_columns() const;

  // v minus the combination of basis rows that clears its pivot entries.
  FpVec reduce(FpVec v) const;
  bool contains(const FpVec& v) const;
  // Returns whether the dimension grew.
  bool add(FpVec v);

 private:
  u64 p_;
  std::size_t n_;
  std::vector<FpVec> rows_;
  std::vector<std::size_t> pivots_;
};

// Vectors x with sum_i x_i images[i] = 0.
std::vector<FpVec> kernel(const std::vector<FpVec>& images, u64 p);

// Commutative F_p-algebra of dimension n given by structure constants on a basis.
class FpAlgebra {
 public:
  FpAlgebra(u64 p, std::size_t n, std::vector<std::vector<FpVec>> table, FpVec one)
      : p_(p), n_(n), table_(std::move(table)), one_(std::move(one)) {}

  u64 prime() const { return p_; }
  std::size_t dim() const { return n_; }
  const FpVec& one() const { return one_; }
  FpVec basis(std::size_t i) const;

  FpVec mul(const FpVec& a, const FpVec& b) const;
  FpVec pow(FpVec a, const Int& e) const;
  FpVec sub(const FpVec& a, const FpVec& b) const;
  FpVec scale(const FpVec& a, u64 c) const;

  // Kernel of x -> x^(p^j) with p^j >= n: the nilradical.
  FpSpace radical() const;

 private:
  u64 p_;
  std::size_t n_;
  std::vector<std::vector<FpVec>> table_;
  FpVec one_;
};

// Polynomials over F_p, lowest degree first, without trailing zeros.
using FpPoly = std::vector<u64>;

// The distinct roots in F_p of a polynomial that splits into distinct linear
// factors. The search is deterministic.
std::vector<u64> split_roots(const FpPoly& f, u64 p);

}  // namespace avfq::detail
