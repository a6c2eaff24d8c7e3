#include <algorithm>

#include "algebra_fixtures.hpp"
#include "avfq/error.hpp"
#include "avfq/isogeny_class.hpp"
#include "doctest.h"
#include "oracles.hpp"

using namespace avfq;
using fixtures::poly;

namespace {

// Points on an elliptic curve over F_{q^n} from power sums of the Frobenius roots.
Int elliptic_points(const Int& t, const Int& q, unsigned n) {
  Int s_prev(2), s(t);  // s_0, s_1
  for (unsigned k = 1; k < n; ++k) {
    Int next = t * s - q * s_prev;
    s_prev = s;
    s = next;
  }
  return pow_int(q, n) + 1 - s;
}

// Ordinary elliptic curves realise exactly Z/n1 x Z/n2 with n1 | n2 and n1 | q - 1.
struct EllipticOracle {
  bool cyclic = true;
  bool rich = true;
};

EllipticOracle ordinary_elliptic(const Int& n, const Int& q) {
  EllipticOracle out;
  for (const auto& [ell, e] : oracle::trial_factor(n)) {
    if (e < 2) continue;
    const bool split = (q - 1) % ell == 0;
    if (split) out.cyclic = false;
    if (e > 2 || !split) out.rich = false;
  }
  return out;
}

}  // namespace

TEST_CASE("Weil polynomial validation") {
  const WeilPoly w = validate_weil(poly({2, 1, 1}), Int(2));
  CHECK(w.g == 1);
  CHECK(w.squarefree);
  CHECK(w.ordinary);
  CHECK_FALSE(w.has_real_roots);
  CHECK(w.real_poly == poly({1, 1}));

  const WeilPoly s = validate_weil(fixtures::surface_q5(), Int(5));
  CHECK(s.squarefree);
  CHECK(s.ordinary);
  CHECK(s.point_count() == 32);
  CHECK(s.real_poly == poly({-4, 0, 1}));

  auto code = [](const IntPoly& h, long q) {
    try {
      validate_weil(h, Int(q));
    } catch (const Error& e) {
      return e.code();
    }
    return ErrorCode::InvalidArgument;
  };
  CHECK(code(poly({2, -3, 1}), 2) == ErrorCode::NotWeil);
  CHECK(code(poly({6, 1, 1}), 6) == ErrorCode::NotPrimePower);
  CHECK(code(poly({3, 1, 1}), 2) == ErrorCode::NotWeil);
  CHECK(code(poly({2, 1, 0, 1}), 2) == ErrorCode::NotWeil);
  // x^2 - 4x + 4 over F_4: roots are real (x = 2) but not squarefree.
  const WeilPoly r = validate_weil(poly({4, -4, 1}), Int(4));
  CHECK(r.has_real_roots);
  CHECK_FALSE(r.squarefree);
  CHECK_FALSE(r.ordinary);
  // (x^2 - 5)^2 (x^2 + 2x + 5): real roots only come in pairs.
  const WeilPoly mixed = validate_weil(poly({125, 50, -25, -20, -5, 2, 1}), Int(5));
  CHECK(mixed.has_real_roots);
  CHECK_FALSE(mixed.squarefree);
  CHECK_FALSE(mixed.ordinary);
}

TEST_CASE("point counts over extensions") {
  CHECK(point_count(validate_weil(poly({2, 1, 1}), Int(2)), 2) == 8);
  CHECK(point_count(validate_weil(fixtures::surface_q4(), Int(4)), 1) == 28);
  for (const long q : {2L, 3L, 4L, 5L, 7L, 8L, 9L, 25L}) {
    for (const auto& w : enumerate_elliptic_classes(Int(q))) {
      const Int t = -w.h.coeff(1);
      for (unsigned n = 1; n <= 4; ++n) CHECK(point_count(w, n) == elliptic_points(t, Int(q), n));
    }
  }
}

TEST_CASE("functor regimes") {
  CHECK(functor_regime(validate_weil(poly({2, 1, 1}), Int(2))) == FunctorRegime::Ord);
  CHECK(functor_regime(validate_weil(poly({3, 0, 1}), Int(3))) == FunctorRegime::CS);
  CHECK(functor_regime(validate_weil(poly({4, 0, 1}), Int(4))) == FunctorRegime::None);
}

TEST_CASE("abelian groups in invariant-factor form") {
  const AbGroup g = AbGroup::from_cyclic_factors({Int(4), Int(6), Int(1), Int(9)});
  CHECK(g.invariants() == std::vector<Int>{Int(6), Int(36)});
  CHECK(g.order() == 216);
  CHECK(g.exponent() == 36);
  CHECK(g.primary_exponents(Int(2)) == std::vector<int>{1, 2});
  CHECK(g.primary_exponents(Int(3)) == std::vector<int>{1, 2});
  CHECK(g.to_string() == "Z/6 x Z/36");
  CHECK(AbGroup::cyclic(Int(1)).to_string() == "0");
  CHECK(AbGroup::cyclic(Int(1)).is_cyclic());
  CHECK(AbGroup::from_cyclic_factors({Int(2), Int(3)}) == AbGroup::cyclic(Int(6)));
  CHECK(AbGroup::cyclic(Int(8)) < AbGroup::from_cyclic_factors({Int(2), Int(4)}));
  // Random lists: the invariant factors form a divisibility chain with the right order.
  auto& rng = oracle::rng();
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<Int> orders;
    Int n(1);
    const int k = static_cast<int>(oracle::uniform(1, 5));
    for (int i = 0; i < k; ++i) {
      orders.emplace_back(oracle::uniform(1, 60));
      n *= orders.back();
    }
    const AbGroup a = AbGroup::from_cyclic_factors(orders);
    CHECK(a.order() == n);
    const auto& d = a.invariants();
    for (std::size_t i = 0; i < d.size(); ++i) {
      CHECK(d[i] >= 2);
      if (i + 1 < d.size()) CHECK(d[i + 1] % d[i] == 0);
    }
    std::shuffle(orders.begin(), orders.end(), rng);
    CHECK(AbGroup::from_cyclic_factors(orders) == a);
  }
}

TEST_CASE("Newton and Hodge polygons") {
  const WeilPoly w = validate_weil(fixtures::surface_q5(), Int(5));
  const Polygon n = newton_polygon(w, Int(2));
  REQUIRE(n.vertices.size() == 3);
  CHECK(n.vertices[0] == std::pair<int, Rat>{0, Rat(5)});
  CHECK(n.vertices[1] == std::pair<int, Rat>{2, Rat(2)});
  CHECK(n.vertices[2] == std::pair<int, Rat>{4, Rat(0)});
  CHECK(n.at(1) == Rat(7, 2));
  CHECK(n.at(3) == 1);

  const Polygon h = hodge_polygon({2, 1}, 4);
  CHECK(h.at(0) == 3);
  CHECK(h.at(1) == 1);
  CHECK(h.at(2) == 0);
  CHECK(h.at(4) == 0);
  const Polygon c = hodge_polygon({5}, 4);
  CHECK(c.at(0) == 5);
  CHECK(c.at(1) == 0);
  CHECK(lies_on_or_below(c, n, 4));
  CHECK_THROWS_AS(hodge_polygon({1, 1, 1, 1, 1}, 4), Error);
}

TEST_CASE("partitions") {
  CHECK(partitions(5, 4).size() == 6);
  CHECK(partitions(5, 5).size() == 7);
  for (int e = 0; e <= 12; ++e) CHECK(partition_count(e) == static_cast<long>(partitions(e, e).size()));
  for (const auto& p : partitions(7, 3)) {
    CHECK(std::is_sorted(p.begin(), p.end()));
    int s = 0;
    for (int x : p) s += x;
    CHECK(s == 7);
  }
}

TEST_CASE("admissible groups") {
  const auto small = admissible_groups(validate_weil(poly({4, -1, 1}), Int(4)));
  REQUIRE(small.size() == 1);
  CHECK(small[0] == AbGroup::cyclic(Int(4)));

  const auto g = admissible_groups(validate_weil(fixtures::surface_q5(), Int(5)));
  CHECK(g.size() == 6);
  for (const auto& a : g) {
    CHECK(a.order() == 32);
    CHECK(a.invariants().size() <= 4);
  }
  CHECK(std::find(g.begin(), g.end(), AbGroup::cyclic(Int(32))) != g.end());
}

TEST_CASE("cyclic and rich examples") {
  const WeilPoly e85 = validate_weil(fixtures::surface_q3(), Int(3));
  const IsogenyClass c85 = IsogenyClass::make(e85);
  CHECK(c85.conductor_index() == 9);
  for (auto m : {CyclicMethod::Conductor, CyclicMethod::Newton, CyclicMethod::Enumeration})
    CHECK(is_cyclic_class(e85, m, &c85));
  for (auto m : {RichMethod::Formula, RichMethod::Integrality, RichMethod::Enumeration}) CHECK(is_rich_class(e85, m, &c85));
  CHECK(annihilated_by(c85, c85.maximal_order(), Int(10)));

  const WeilPoly e72 = validate_weil(fixtures::surface_q5(), Int(5));
  const IsogenyClass c72 = IsogenyClass::make(e72);
  for (auto m : {CyclicMethod::Conductor, CyclicMethod::Newton, CyclicMethod::Enumeration})
    CHECK_FALSE(is_cyclic_class(e72, m, &c72));
  for (auto m : {RichMethod::Formula, RichMethod::Integrality, RichMethod::Enumeration})
    CHECK_FALSE(is_rich_class(e72, m, &c72));

  const WeilPoly t1 = validate_weil(poly({2, 1, 1}), Int(2));
  const IsogenyClass ct1 = IsogenyClass::make(t1);
  CHECK(is_cyclic_class(t1, CyclicMethod::Conductor, &ct1));
  CHECK_FALSE(is_rich_class(t1, RichMethod::Integrality, &ct1));
  CHECK_FALSE(annihilated_by(ct1, ct1.maximal_order(), Int(2)));
  CHECK(annihilated_by(ct1, ct1.frobenius_order(), Int(4)));

  const WeilPoly ss = validate_weil(poly({3, 0, 1}), Int(3));
  CHECK(is_rich_class(ss, RichMethod::Integrality));
  CHECK(is_rich_class(ss, RichMethod::Formula));
  CHECK_FALSE(is_cyclic_class(ss, CyclicMethod::Conductor));

  // One point: vacuously cyclic and rich.
  const WeilPoly one = validate_weil(poly({3, -3, 1}), Int(3));
  CHECK(one.point_count() == 1);
  CHECK(is_cyclic_class(one, CyclicMethod::Newton));
  CHECK(is_rich_class(one, RichMethod::Formula));
}

TEST_CASE("elliptic enumeration") {
  CHECK(enumerate_elliptic_classes(Int(2)).size() == 5);
  CHECK(enumerate_elliptic_classes(Int(3)).size() == 7);
  CHECK(enumerate_elliptic_classes(Int(4)).size() == 7);
  CHECK(enumerate_elliptic_classes(Int(5)).size() == 9);
  CHECK_THROWS_AS(enumerate_elliptic_classes(Int(12)), Error);
  const auto q4 = enumerate_elliptic_classes(Int(4));
  std::vector<long> traces;
  for (const auto& w : q4) traces.push_back(-w.h.coeff(1).get_si());
  CHECK(traces == std::vector<long>{-3, -2, -1, 0, 1, 2, 3});
}

TEST_CASE("ordinary elliptic classes against the explicit group description") {
  for (long q = 2; q <= 64; ++q) {
    if (prime_power_decomposition(Int(q)).second == 0) continue;
    for (const auto& w : enumerate_elliptic_classes(Int(q))) {
      if (!w.ordinary) continue;
      const IsogenyClass cls = IsogenyClass::make(w);
      const EllipticOracle o = ordinary_elliptic(w.point_count(), Int(q));
      for (auto m : {CyclicMethod::Conductor, CyclicMethod::Newton, CyclicMethod::Enumeration})
        CHECK(is_cyclic_class(w, m, &cls) == o.cyclic);
      for (auto m : {RichMethod::Formula, RichMethod::Integrality, RichMethod::Enumeration})
        CHECK(is_rich_class(w, m, &cls) == o.rich);
    }
  }
}

TEST_CASE("no cyclic class over odd q has 4 | N") {
  for (long q : {3L, 5L, 7L, 9L, 11L, 13L, 25L, 27L}) {
    for (const auto& w : enumerate_elliptic_classes(Int(q))) {
      if (w.point_count() % 4 == 0) CHECK_FALSE(is_cyclic_class(w, CyclicMethod::Newton));
    }
  }
  for (const auto& [h, q] : {std::pair{fixtures::surface_q5(), 5L}, std::pair{fixtures::surface_q3(), 3L}}) {
    const WeilPoly w = validate_weil(h, Int(q));
    if (w.point_count() % 4 == 0) CHECK_FALSE(is_cyclic_class(w, CyclicMethod::Enumeration));
  }
}

TEST_CASE("two-generator witness") {
  // q = 5, ell = 2, s1 = 1: 5 = 1 mod 2.
  for (const auto& w : enumerate_elliptic_classes(Int(5))) {
    const int e = valuation(w.point_count(), Int(2));
    if (e >= 2) CHECK(two_generator_witness(w, Int(2), 1, e - 1));
  }
  const WeilPoly w = validate_weil(fixtures::surface_q5(), Int(5));
  CHECK(two_generator_witness(w, Int(2), 1, 4));
  CHECK(two_generator_witness(w, Int(2), 2, 3));
}
