#include "avfq/error.hpp"
#include "avfq/lattice.hpp"
#include "doctest.h"
#include "oracles.hpp"

using namespace avfq;

namespace {

Lattice power_lattice(const EtaleAlgebra& k) {
  return Lattice::from_int_rows(k, IntMat::identity(static_cast<std::size_t>(k.dim())), Int(1));
}

Lattice random_lattice(const EtaleAlgebra& k) {
  const auto n = static_cast<std::size_t>(k.dim());
  while (true) {
    IntMat m = oracle::random_matrix(n + 1, n, -6, 6);
    try {
      return Lattice::from_int_rows(k, m, Int(oracle::uniform(1, 4)));
    } catch (const Error&) {
    }
  }
}

// {x : x b_j in a for all j}, straight from the definition: x maps to the
// a-coordinates of every x b_j, and the admissible x are the standard dual
// of the lattice spanned by the columns of that linear map.
Lattice colon_direct(const Lattice& a, const Lattice& b) {
  const EtaleAlgebra& k = a.algebra();
  const auto n = static_cast<std::size_t>(k.dim());
  RatMat cols(n * n, n);
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<Rat> e(n, Rat(0));
    e[i] = 1;
    const AlgElem x = k.element(e);
    const auto bb = b.basis();
    for (std::size_t j = 0; j < n; ++j) {
      std::vector<Rat> c = a.rational_coordinates((x * bb[j]).coords());
      for (std::size_t t = 0; t < n; ++t) cols(j * n + t, i) = c[t];
    }
  }
  Lattice span = Lattice::from_rows(k, cols);
  RatMat dual = inverse(span.basis_matrix())->transpose();
  return Lattice::from_rows(k, dual);
}

}  // namespace

TEST_CASE("canonical form makes equality syntactic") {
  EtaleAlgebra k = EtaleAlgebra::make(IntPoly{Int(5), Int(1), Int(1)});
  RatMat g1 = RatMat::from_rows({{Rat(1), Rat(0)}, {Rat(0), Rat(1)}});
  RatMat g2 = RatMat::from_rows({{Rat(3), Rat(1)}, {Rat(2), Rat(1)}, {Rat(7), Rat(4)}});
  CHECK(Lattice::from_rows(k, g1) == Lattice::from_rows(k, g2));
  RatMat g3 = RatMat::from_rows({{make_rat(Int(1), Int(2)), Rat(0)}, {Rat(0), Rat(1)}});
  Lattice l = Lattice::from_rows(k, g3);
  CHECK(l.denominator() == 2);
  CHECK(l.covolume() == make_rat(Int(1), Int(2)));
  CHECK(l.fingerprint() != power_lattice(k).fingerprint());
  CHECK_THROWS_AS(Lattice::from_rows(k, RatMat::from_rows({{Rat(1), Rat(2)}, {Rat(2), Rat(4)}})), Error);
}

TEST_CASE("the trace dual of Z[x] is h'(x)^{-1} Z[x]") {
  const std::vector<IntPoly> hs = {
      IntPoly{Int(25), Int(0), Int(6), Int(0), Int(1)},
      IntPoly{Int(16), Int(8), Int(1), Int(2), Int(1)},
      IntPoly{Int(-2), Int(0), Int(0), Int(1)},
      IntPoly{Int(6), Int(-5), Int(1)},
  };
  for (const auto& h : hs) {
    EtaleAlgebra k = EtaleAlgebra::make(h);
    Lattice zx = power_lattice(k);
    const IntPoly dh = h.derivative();
    std::vector<Rat> c(static_cast<std::size_t>(k.dim()), Rat(0));
    for (std::size_t i = 0; i < c.size(); ++i) c[i] = Rat(dh.coeff(i));
    CHECK(trace_dual(zx) == zx.multiplied(inv(k.element(c))));
  }
}

TEST_CASE("lattice operations against definitions") {
  EtaleAlgebra k = EtaleAlgebra::make(IntPoly{Int(16), Int(8), Int(1), Int(2), Int(1)});
  for (int trial = 0; trial < 30; ++trial) {
    Lattice a = random_lattice(k), b = random_lattice(k);
    CHECK(trace_dual(trace_dual(a)) == a);
    Lattice s = sum(a, b);
    CHECK(s.contains(a));
    CHECK(s.contains(b));
    Lattice i = intersect(a, b);
    CHECK(a.contains(i));
    CHECK(b.contains(i));
    CHECK(index(s, a) == index(b, i));
    CHECK(colon(a, b) == colon_direct(a, b));
    Lattice p = product(a, b);
    for (const auto& x : a.basis())
      for (const auto& y : b.basis()) CHECK(p.contains(x * y));
    CHECK(p == product(b, a));
  }
}

TEST_CASE("scalar multiples and indices") {
  EtaleAlgebra k = EtaleAlgebra::make(IntPoly{Int(25), Int(0), Int(6), Int(0), Int(1)});
  Lattice zx = power_lattice(k);
  CHECK(index(zx, zx.scaled(Rat(2))) == 16);
  CHECK(intersect(zx.scaled(Rat(4)), zx.scaled(Rat(6))) == zx.scaled(Rat(12)));
  CHECK(sum(zx.scaled(Rat(4)), zx.scaled(Rat(6))) == zx.scaled(Rat(2)));
  CHECK(product(zx, zx) == zx);
  CHECK(colon(zx, zx) == zx);
  CHECK_THROWS_AS(index(zx.scaled(Rat(2)), zx), Error);
  auto c = zx.scaled(Rat(3)).coordinates(k.scalar(Rat(6)).coords());
  REQUIRE(c.has_value());
  CHECK((*c)[0] == 2);
  CHECK_FALSE(zx.scaled(Rat(3)).contains(k.scalar(Rat(2))));
}
