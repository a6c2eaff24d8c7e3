#pragma once

#include <optional>

#include "avfq/integer.hpp"
#include "avfq/polynomial.hpp"

namespace avfq {

// The real number a + b*sqrt(radicand), radicand >= 0, handled exactly.
class QuadIrr {
 public:
  QuadIrr(Rat a, Rat b, Int radicand);
  static QuadIrr rational(const Rat& a) { return QuadIrr(a, Rat(0), Int(0)); }

  const Rat& a() const { return a_; }
  const Rat& b() const { return b_; }
  const Int& radicand() const { return d_; }

  // -1, 0 or +1.
  int sign() const;

  // Exact value of p at this point, in the same quadratic field.
  QuadIrr evaluate(const RatPoly& p) const;

  QuadIrr operator-() const { return QuadIrr(-a_, -b_, d_); }
  friend QuadIrr operator-(const QuadIrr& x, const QuadIrr& y);
  friend bool operator<=(const QuadIrr& x, const QuadIrr& y) { return (y - x).sign() >= 0; }

 private:
  Rat a_;
  Rat b_;
  Int d_;
};

// Number of distinct real roots of g in the closed interval [lo, hi],
// by Sturm sequences evaluated exactly at the endpoints.
int count_real_roots(const RatPoly& g, const QuadIrr& lo, const QuadIrr& hi);
int count_real_roots(const IntPoly& g, const QuadIrr& lo, const QuadIrr& hi);

// Number of distinct real roots of g on the whole line.
int count_real_roots(const RatPoly& g);

}  // namespace avfq
