#pragma once

#include <cstddef>
#include <initializer_list>
#include <string>
#include <utility>
#include <vector>

#include "avfq/integer.hpp"

namespace avfq {

// Dense univariate polynomial, coefficients stored lowest degree first.
// The canonical form has no trailing zero coefficients; the zero
// polynomial has an empty coefficient vector and degree -1.
template <class T>
class Poly {
 public:
  Poly() = default;
  explicit Poly(std::vector<T> coeffs) : c_(std::move(coeffs)) { normalize(); }
  Poly(std::initializer_list<T> coeffs) : c_(coeffs) { normalize(); }

  static Poly constant(const T& v) { return Poly(std::vector<T>{v}); }
  static Poly monomial(const T& v, std::size_t k) {
    std::vector<T> c(k + 1, T(0));
    c[k] = v;
    return Poly(std::move(c));
  }

  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  const std::vector<T>& coeffs() const { return c_; }

  // Coefficient of x^i, zero past the degree.
  T coeff(std::size_t i) const { return i < c_.size() ? c_[i] : T(0); }
  T leading() const { return c_.empty() ? T(0) : c_.back(); }
  bool is_monic() const { return !c_.empty() && c_.back() == 1; }

  T eval(const T& x) const {
    T acc(0);
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
    return acc;
  }

  Poly derivative() const {
    if (c_.size() <= 1) return Poly();
    std::vector<T> d(c_.size() - 1);
    for (std::size_t i = 1; i < c_.size(); ++i) d[i - 1] = c_[i] * T(static_cast<long>(i));
    return Poly(std::move(d));
  }

  Poly operator-() const {
    std::vector<T> c = c_;
    for (auto& v : c) v = -v;
    return Poly(std::move(c));
  }

  Poly& operator+=(const Poly& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), T(0));
    for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
    normalize();
    return *this;
  }
  Poly& operator-=(const Poly& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), T(0));
    for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] -= o.c_[i];
    normalize();
    return *this;
  }
  Poly& operator*=(const T& s) {
    for (auto& v : c_) v *= s;
    normalize();
    return *this;
  }

  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  friend Poly operator*(Poly a, const T& s) { return a *= s; }
  friend Poly operator*(const T& s, Poly a) { return a *= s; }
  friend Poly operator*(const Poly& a, const Poly& b) {
    if (a.is_zero() || b.is_zero()) return Poly();
    std::vector<T> c(a.c_.size() + b.c_.size() - 1, T(0));
    for (std::size_t i = 0; i < a.c_.size(); ++i) {
      if (a.c_[i] == 0) continue;
      for (std::size_t j = 0; j < b.c_.size(); ++j) c[i + j] += a.c_[i] * b.c_[j];
    }
    return Poly(std::move(c));
  }
  friend bool operator==(const Poly& a, const Poly& b) { return a.c_ == b.c_; }

 private:
  void normalize() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
  }

  std::vector<T> c_;
};

using IntPoly = Poly<Int>;
using RatPoly = Poly<Rat>;

RatPoly to_rat(const IntPoly& p);

// Returns the integer polynomial when every coefficient is integral.
bool to_int(const RatPoly& p, IntPoly& out);

// Euclidean division over Q; b must be nonzero.
std::pair<RatPoly, RatPoly> divmod(const RatPoly& a, const RatPoly& b);

// Monic gcd over Q (zero if both inputs are zero).
RatPoly gcd(const RatPoly& a, const RatPoly& b);

RatPoly make_monic(const RatPoly& p);

// p / gcd(p, p'), made monic.
RatPoly squarefree_part(const RatPoly& p);

bool is_squarefree(const IntPoly& p);

// p(a*x + b).
RatPoly compose_linear(const RatPoly& p, const Rat& a, const Rat& b);
IntPoly compose_linear(const IntPoly& p, const Int& a, const Int& b);

// x^deg * p(1/x) for the given nominal degree.
RatPoly reverse(const RatPoly& p, int deg);

// k-th derivative of p evaluated at x, divided by k!  (the Taylor coefficient).
Rat taylor_coeff(const IntPoly& p, const Int& x, int k);

std::string to_string(const IntPoly& p, char var = 'x');
std::string to_string(const RatPoly& p, char var = 'x');

}  // namespace avfq
