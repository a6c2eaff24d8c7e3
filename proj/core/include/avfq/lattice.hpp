#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "avfq/etale_algebra.hpp"
#include "avfq/matrix.hpp"

namespace avfq {

// A full-rank Z-lattice in an etale algebra, stored as (1/denominator) times
// the row span of an integer matrix in Hermite normal form. The
// denominator is minimal, so two lattices are equal exactly when their
// (numerator, denominator) pairs are equal.
class Lattice {
 public:
  // Rows of `gens` are power-basis coordinates of generators.
  // Throws NotFullRank when they do not span K over Q.
  static Lattice from_rows(const EtaleAlgebra& alg, const RatMat& gens);
  static Lattice from_generators(const EtaleAlgebra& alg, std::span<const AlgElem> gens);
  // Integer rows over a common denominator.
  static Lattice from_int_rows(const EtaleAlgebra& alg, const IntMat& rows, const Int& denominator);

  const EtaleAlgebra& algebra() const { return alg_; }
  int dim() const { return alg_.dim(); }
  const IntMat& numerator() const { return num_; }
  const Int& denominator() const { return den_; }

  std::vector<AlgElem> basis() const;
  RatMat basis_matrix() const;

  // |det| of the basis matrix: the index of Z[x]-coordinates style volume.
  Rat covolume() const;

  // Integer coordinates of v in this basis, or nullopt when v is not in the lattice.
  std::optional<std::vector<Int>> coordinates(const std::vector<Rat>& v) const;
  // Rational coordinates in this basis (always defined).
  std::vector<Rat> rational_coordinates(const std::vector<Rat>& v) const;

  bool contains(const AlgElem& a) const;
  bool contains(const Lattice& other) const;

  Lattice scaled(const Rat& s) const;
  // a * L; a must be a unit.
  Lattice multiplied(const AlgElem& a) const;

  // Short stable identifier of the canonical form.
  std::string fingerprint() const;

  friend bool operator==(const Lattice& a, const Lattice& b) {
    return a.den_ == b.den_ && a.num_ == b.num_;
  }

 private:
  Lattice(EtaleAlgebra alg, IntMat num, Int den) : alg_(std::move(alg)), num_(std::move(num)), den_(std::move(den)) {}

  EtaleAlgebra alg_;
  IntMat num_;
  Int den_;
};

Lattice sum(const Lattice& a, const Lattice& b);
// Computed as (a^t + b^t)^t.
Lattice intersect(const Lattice& a, const Lattice& b);
// Z-span of pairwise products of basis elements.
Lattice product(const Lattice& a, const Lattice& b);
// |big / small|; throws NotContained when small is not inside big.
Int index(const Lattice& big, const Lattice& small);

// { x in K : Tr(x L) in Z }.
Lattice trace_dual(const Lattice& l);
// (a : b) = { x in K : x b in a }, computed as (a^t b)^t.
Lattice colon(const Lattice& a, const Lattice& b);

// Rows are the integer coordinates of small's basis in big's basis.
// Throws NotContained.
IntMat relative_basis(const Lattice& big, const Lattice& small);
// The lattice spanned by the rows of coords * basis(base).
Lattice combination(const Lattice& base, const IntMat& coords);

}  // namespace avfq
