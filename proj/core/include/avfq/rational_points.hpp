#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "avfq/isogeny_class.hpp"
#include "avfq/lattice.hpp"
#include "avfq/order.hpp"

namespace avfq {

// I / rI via the Smith form of r*I written in a basis of I. Throws ZeroDivisor
// when r is not a unit of K.
AbGroup quotient_group(const Lattice& ideal, const AlgElem& r);

// Which theorem, if any, turns the quotient S/(1 - pi^n)S into the group of
// every variety with endomorphism ring S.
enum class ClaimBasis { GorensteinThm, Type2Thm, IdealQuotient };
std::string to_string(ClaimBasis b);

struct PrimeType {
  OrderPrime prime;
  int type = 0;
};

struct PointsResult {
  AbGroup group;
  ClaimBasis basis = ClaimBasis::IdealQuotient;
  // Cohen-Macaulay types at the primes of S containing 1 - pi^n.
  std::vector<PrimeType> hypotheses_checked;
  FunctorRegime regime = FunctorRegime::None;
  // Non-empty when the group is only that of the ideal S itself.
  std::string warning;
};

// S must lie between R and O_K.
PointsResult group_from_order(const IsogenyClass& cls, const Order& s, unsigned n = 1);

// conj(I)^t.
Lattice dual_ideal(const Lattice& ideal, const Conjugation& conj);

// The four quotients describing the dual variety's points over F_{q^n}:
// conj(I)^t/(1-pi^n), I^t/(1-pibar^n), I/(1-pibar^n), conj(I)/(1-pi^n).
// Throws OracleDisagreement if they differ.
AbGroup dual_group(const IsogenyClass& cls, const Lattice& ideal, unsigned n = 1);

// An order S = conj(S) below s_end with a self-conjugate prime of type 2 where
// S and s_end agree locally. Its existence rules out self-duality for every
// variety with endomorphism ring s_end.
struct SelfDualWitness {
  Order order;
  OrderPrime prime;
};
// Throws InvalidArgument outside the Ord and CS regimes and BoundExceeded from
// the overorder enumeration.
std::optional<SelfDualWitness> not_self_dual_witness(const IsogenyClass& cls, const Order& s_end,
                                                     std::uint64_t bound = 1000000);
// Same, scanning a precomputed overorder list of R.
std::optional<SelfDualWitness> not_self_dual_witness(const IsogenyClass& cls, const Order& s_end,
                                                     const std::vector<Order>& orders);

// For a type-2 prime P != conj(P) of S = conj(S): the ideal I = d S^t + conj(P)^m
// with multiplicator ring S, where d is the least positive integer with
// d S^t in S and m the least exponent with conj(P)^m inside d S^t locally at conj(P).
struct SplitPrimeIdeal {
  Lattice ideal;
  Int d;
  int m = 0;
};
SplitPrimeIdeal split_prime_ideal(const Order& s, const OrderPrime& prime, const Conjugation& conj);

// Groups I/(1 - pi)I over the lattices m O_K <= I <= O_K with (I : I) = S.
// Throws BoundExceeded after cap submodules.
std::vector<AbGroup> search_groups_for_multiplicator(const IsogenyClass& cls, const Order& s, const Int& m,
                                                     std::uint64_t cap = 200000);
// Exponent of O_K / (S : O_K): every ideal with multiplicator ring S whose
// extension to O_K is principal has a representative at this depth.
Int default_search_depth(const IsogenyClass& cls, const Order& s);

// Z/N when (1 - pi)R is coprime to the conductor; cross-checked against the
// quotients of R, O_K and the conductor. Throws OracleDisagreement.
std::optional<AbGroup> coprime_conductor_group(const IsogenyClass& cls);

}  // namespace avfq
