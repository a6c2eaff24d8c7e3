#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "avfq/etale_algebra.hpp"
#include "avfq/factor.hpp"
#include "avfq/order.hpp"
#include "avfq/polynomial.hpp"

namespace avfq {

// A validated q-Weil polynomial h of degree 2g.
struct WeilPoly {
  IntPoly h;
  Int q;
  Int p;  // q = p^a
  int a = 0;
  int g = 0;
  bool squarefree = false;
  bool ordinary = false;
  bool has_real_roots = false;
  // h(x) = x^g real_poly(x + q/x).
  IntPoly real_poly;

  Int point_count() const { return h.eval(Int(1)); }
};

// Checks monicity, the functional equation and that every root of the real
// Weil polynomial lies in [-2 sqrt q, 2 sqrt q]. Throws NotPrimePower or NotWeil.
WeilPoly validate_weil(const IntPoly& h, const Int& q);

// det(I - C^n) for the companion matrix C of h: the number of points over F_{q^n}.
Int point_count(const WeilPoly& w, unsigned n);

// Ordinary classes fall under Deligne's equivalence, classes over prime
// fields under Centeleghe-Stix.
enum class FunctorRegime { Ord, CS, None };
FunctorRegime functor_regime(const WeilPoly& w);
std::string to_string(FunctorRegime r);

// Finite abelian group as invariant factors d_1 | d_2 | ... | d_k, all >= 2.
class AbGroup {
 public:
  AbGroup() = default;
  // Accepts any list of cyclic orders and normalizes it to invariant factors.
  static AbGroup from_cyclic_factors(const std::vector<Int>& orders);
  // prime -> exponents of the prime-power cyclic factors.
  static AbGroup from_primary_parts(const std::map<Int, std::vector<int>>& parts);
  static AbGroup cyclic(const Int& n) { return from_cyclic_factors({n}); }

  const std::vector<Int>& invariants() const { return d_; }
  Int order() const;
  Int exponent() const { return d_.empty() ? Int(1) : d_.back(); }
  bool is_cyclic() const { return d_.size() <= 1; }
  // Exponents of the ell-primary cyclic factors, ascending.
  std::vector<int> primary_exponents(const Int& ell) const;

  std::string to_string() const;

  friend bool operator==(const AbGroup& a, const AbGroup& b) { return a.d_ == b.d_; }
  friend bool operator<(const AbGroup& a, const AbGroup& b);

 private:
  std::vector<Int> d_;
};

// Piecewise-linear polygon through integer abscissas.
struct Polygon {
  std::vector<std::pair<int, Rat>> vertices;
  // Value at x by linear interpolation between vertices.
  Rat at(int x) const;
};

// Lower convex hull of (i, ord_ell b_i) where h(1 - t) = sum b_i t^i.
Polygon newton_polygon(const WeilPoly& w, const Int& ell);
// Vertices (i, e_1 + ... + e_{2g-i}) for the exponents sorted ascending and
// padded with zeros to 2g entries. Throws PartitionTooLong.
Polygon hodge_polygon(std::vector<int> exponents, int two_g);
// Comparison at every integer abscissa 0..two_g.
bool lies_on_or_below(const Polygon& lower, const Polygon& upper, int two_g);

// Partitions of e into at most max_parts positive parts, each ascending.
std::vector<std::vector<int>> partitions(int e, int max_parts);
// Unrestricted partition number.
Int partition_count(int e);

// Groups of order N allowed by Rybakov's criterion, sorted.
std::vector<AbGroup> admissible_groups(const WeilPoly& w);

// The Frobenius algebra with R = Z[pi, pibar], O_K and the conductor (R : O_K).
class IsogenyClass {
 public:
  // Throws NotSquarefree for classes whose algebra is not étale.
  static IsogenyClass make(const WeilPoly& w);

  const WeilPoly& weil() const { return w_; }
  const EtaleAlgebra& algebra() const { return k_; }
  const Conjugation& conjugation() const { return conj_; }
  AlgElem pi() const { return k_.gen(); }
  AlgElem pibar() const { return conj_.apply(k_.gen()); }
  const Order& frobenius_order() const { return r_; }
  const Order& maximal_order() const { return ok_; }
  const Lattice& conductor() const { return cond_; }
  Int conductor_index() const { return index(ok_.lattice(), r_.lattice()); }

 private:
  IsogenyClass(WeilPoly w, EtaleAlgebra k, Conjugation conj, Order r, Order ok, Lattice cond)
      : w_(std::move(w)), k_(std::move(k)), conj_(std::move(conj)), r_(std::move(r)), ok_(std::move(ok)), cond_(std::move(cond)) {}

  WeilPoly w_;
  EtaleAlgebra k_;
  Conjugation conj_;
  Order r_;
  Order ok_;
  Lattice cond_;
};

enum class CyclicMethod { Conductor, Newton, Enumeration };
enum class RichMethod { Formula, Integrality, Enumeration };
std::string to_string(CyclicMethod m);
std::string to_string(RichMethod m);

// The conductor and integrality methods need the algebra; pass the class
// when it has already been built.
bool is_cyclic_class(const WeilPoly& w, CyclicMethod method, const IsogenyClass* cls = nullptr);
bool is_rich_class(const WeilPoly& w, RichMethod method, const IsogenyClass* cls = nullptr);

// d / (1 - pi) lies in S.
bool annihilated_by(const IsogenyClass& cls, const Order& s, const Int& d);

// All squarefree x^2 - t x + q that are Weil polynomials of elliptic curves,
// ordered by t. Throws NotPrimePower.
std::vector<WeilPoly> enumerate_elliptic_classes(const Int& q);

// Whether Z/ell^s1 x Z/ell^s2 passes the ell-polygon comparison.
bool two_generator_witness(const WeilPoly& w, const Int& ell, int s1, int s2);

}  // namespace avfq
