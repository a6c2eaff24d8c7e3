#pragma once

#include <cstdint>
#include <memory>
#include <vector>

#include "avfq/etale_algebra.hpp"
#include "avfq/lattice.hpp"

namespace avfq {

// A lattice that is a ring containing 1, with its multiplication table.
class Order {
 public:
  // Throws InvalidArgument when the lattice does not contain 1 or is not
  // closed under multiplication.
  static Order from_lattice(const Lattice& l);

  const Lattice& lattice() const { return d_->lattice; }
  const EtaleAlgebra& algebra() const { return d_->lattice.algebra(); }
  int dim() const { return d_->lattice.dim(); }
  std::vector<AlgElem> basis() const { return d_->lattice.basis(); }

  // Coordinates of b_i * b_j in the basis of this order.
  const std::vector<Int>& structure_constants(std::size_t i, std::size_t j) const {
    return d_->table[i * static_cast<std::size_t>(dim()) + j];
  }
  const std::vector<Int>& one_coordinates() const { return d_->one; }

  // det of the trace form on the basis.
  Int discriminant() const;

  bool contains(const AlgElem& a) const { return lattice().contains(a); }
  bool contains(const Lattice& l) const { return lattice().contains(l); }

  friend bool operator==(const Order& a, const Order& b) { return a.lattice() == b.lattice(); }

 private:
  struct Data {
    Lattice lattice;
    std::vector<std::vector<Int>> table;
    std::vector<Int> one;
  };
  explicit Order(std::shared_ptr<const Data> d) : d_(std::move(d)) {}
  std::shared_ptr<const Data> d_;
};

// A maximal ideal of an order, with the rational prime below it and the
// residue degree f, so that |S / P| = p^f.
struct OrderPrime {
  Lattice ideal;
  Int p;
  int residue_degree = 0;

  Int norm() const { return pow_int(p, static_cast<unsigned long>(residue_degree)); }
  friend bool operator==(const OrderPrime& a, const OrderPrime& b) { return a.ideal == b.ideal; }
};

// Z[x] in Q[x]/(h).
Order equation_order(const EtaleAlgebra& alg);
// The smallest order containing the given elements (which must be integral).
Order order_generated_by(const EtaleAlgebra& alg, const std::vector<AlgElem>& gens);
// (L : L).
Order multiplicator_ring(const Lattice& l);
// R = Z[pi, q/pi].
Order frobenius_order(const Conjugation& conj);

// Round 2: repeatedly replace O by the multiplicator ring of its p-radical
// for every p with p^2 | disc(O).
Order maximal_order(const Order& o);
Order maximal_order(const EtaleAlgebra& alg);

// (S : S'), for S inside S'. Throws NotContained.
Lattice conductor(const Order& s, const Order& sp);

// All maximal ideals of S above p, from the decomposition of S/pS.
std::vector<OrderPrime> primes_above(const Order& s, const Int& p);
// The maximal ideals of S containing the integral ideal I.
std::vector<OrderPrime> primes_containing(const Order& s, const Lattice& ideal);

bool is_ideal_of(const Order& s, const Lattice& l);
// I + J = S for integral ideals I, J. Throws NotContained when they are not integral.
bool is_coprime(const Order& s, const Lattice& i, const Lattice& j);
// S_P = S'_P, decided by (S : S') not inside P.
bool locally_equal(const Order& s, const Order& sp, const OrderPrime& prime);

// dim_{S/P} S^t / P S^t.
int cm_type_at(const Order& s, const OrderPrime& prime);
bool gorenstein_at(const Order& s, const OrderPrime& prime);
// I (S : I) not inside P.
bool is_locally_principal(const Order& s, const Lattice& ideal, const OrderPrime& prime);

// Every order between R and O_K (both included), sorted by index over R and
// then by canonical form. Throws BoundExceeded when [O_K : R] > bound.
std::vector<Order> overorders(const Order& r, const Order& maximal, std::uint64_t bound = 1000000);

Lattice conjugate_lattice(const Lattice& l, const Conjugation& conj);
Order conjugate_order(const Order& s, const Conjugation& conj);
OrderPrime conjugate_prime(const OrderPrime& prime, const Conjugation& conj);

}  // namespace avfq
