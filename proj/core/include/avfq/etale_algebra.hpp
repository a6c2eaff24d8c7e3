#pragma once

#include <memory>
#include <vector>

#include "avfq/integer.hpp"
#include "avfq/matrix.hpp"
#include "avfq/polynomial.hpp"

namespace avfq {

class AlgElem;

// K = Q[x]/(h) for a monic squarefree integer polynomial h, handled as a
// single ring (h is never factored). Elements use the power basis
// 1, x, ..., x^{n-1}. Copies share the same immutable data.
class EtaleAlgebra {
 public:
  // Throws NotSquarefree when gcd(h, h') is not constant.
  static EtaleAlgebra make(const IntPoly& h);

  int dim() const;
  const IntPoly& modulus() const;

  // Tr(x^i x^j) for 0 <= i, j < dim.
  const RatMat& trace_form() const;
  const RatMat& trace_form_inverse() const;
  // Tr(x^k) for 0 <= k < 2 * dim.
  const std::vector<Int>& power_traces() const;

  AlgElem zero() const;
  AlgElem one() const;
  AlgElem gen() const;  // the class of x
  AlgElem scalar(const Rat& c) const;
  AlgElem element(std::vector<Rat> coords) const;
  AlgElem element(const std::vector<Int>& coords) const;

  // Power-basis coordinates of the product of two coordinate vectors.
  std::vector<Rat> multiply(const std::vector<Rat>& a, const std::vector<Rat>& b) const;

  friend bool operator==(const EtaleAlgebra& a, const EtaleAlgebra& b) {
    return a.d_ == b.d_ || a.modulus() == b.modulus();
  }

 private:
  struct Data;
  explicit EtaleAlgebra(std::shared_ptr<const Data> d) : d_(std::move(d)) {}
  std::shared_ptr<const Data> d_;
};

class AlgElem {
 public:
  AlgElem(EtaleAlgebra parent, std::vector<Rat> coords);

  const EtaleAlgebra& parent() const { return parent_; }
  const std::vector<Rat>& coords() const { return c_; }
  int dim() const { return static_cast<int>(c_.size()); }
  bool is_zero() const;

  // Column j holds the coordinates of this * x^j.
  RatMat mul_matrix() const;

  AlgElem operator-() const;
  friend AlgElem operator+(const AlgElem& a, const AlgElem& b);
  friend AlgElem operator-(const AlgElem& a, const AlgElem& b);
  friend AlgElem operator*(const AlgElem& a, const AlgElem& b);
  friend AlgElem operator*(const Rat& s, const AlgElem& a);
  friend bool operator==(const AlgElem& a, const AlgElem& b) { return a.c_ == b.c_; }

  AlgElem pow(unsigned long e) const;

 private:
  EtaleAlgebra parent_;
  std::vector<Rat> c_;
};

AlgElem mul(const AlgElem& a, const AlgElem& b);
// Throws ZeroDivisor when the multiplication matrix of a is singular.
AlgElem inv(const AlgElem& a);
bool is_unit(const AlgElem& a);

// det(X I - M_a), monic of degree dim.
RatPoly charpoly(const AlgElem& a);
Rat trace(const AlgElem& a);
Rat norm(const AlgElem& a);

// Characteristic polynomial of b*a + c from that of a: b^r h_a(x/b - c/b).
RatPoly transformed_charpoly(const AlgElem& a, const Rat& b, const Rat& c);
// Characteristic polynomial of 1/a: x^r h_a(1/x) / h_a(0). Throws ZeroDivisor for non-units.
RatPoly reciprocal_charpoly(const AlgElem& a);
// Characteristic polynomial of d/(1 - a) through the closed-form coefficients
//   a_i = (-1)^{r+i} d^{r-i} h_a^{(r-i)}(1) / ((r-i)! h_a(1)).
RatPoly charpoly_scaled_inverse(const AlgElem& a, Rat d);

// The involution x -> q/x of K = Q[x]/(h), available when h(0) != 0 and h
// satisfies the functional equation x^{2g} h(q/x) = q^g h(x).
class Conjugation {
 public:
  // Throws ZeroDivisor when h(0) == 0 and NotQSymmetric when h fails the
  // functional equation.
  Conjugation(EtaleAlgebra alg, Int q);

  const EtaleAlgebra& algebra() const { return alg_; }
  const Int& q() const { return q_; }
  // Column j holds the coordinates of conj(x^j).
  const RatMat& matrix() const { return m_; }

  AlgElem apply(const AlgElem& a) const;
  std::vector<Rat> apply(const std::vector<Rat>& coords) const;

 private:
  EtaleAlgebra alg_;
  Int q_;
  RatMat m_;
};

// Coefficientwise test of x^{2g} h(q/x) = q^g h(x): with h = sum a_i x^i,
// a_i = q^{g-i} a_{2g-i} for 0 <= i <= g.
bool is_q_symmetric(const IntPoly& h, const Int& q);

AlgElem conjugate(const AlgElem& a, const Int& q);

}  // namespace avfq
