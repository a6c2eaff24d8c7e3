#include "avfq/rational_points.hpp"

#include <algorithm>
#include <deque>
#include <set>

#include "avfq/error.hpp"
#include "avfq/factor.hpp"
#include "fp_linalg.hpp"

namespace avfq {

namespace {

AlgElem one_minus_frobenius_power(const IsogenyClass& cls, unsigned n, bool bar) {
  const AlgElem x = bar ? cls.pibar() : cls.pi();
  return cls.algebra().one() - x.pow(n);
}

std::vector<Int> mul_mod(const Order& o, const std::vector<Int>& x, const std::vector<Int>& y, const Int& m) {
  const auto n = static_cast<std::size_t>(o.dim());
  std::vector<Int> out(n, Int(0));
  for (std::size_t i = 0; i < n; ++i) {
    if (x[i] == 0) continue;
    for (std::size_t j = 0; j < n; ++j) {
      if (y[j] == 0) continue;
      const Int c = x[i] * y[j];
      const auto& t = o.structure_constants(i, j);
      for (std::size_t k = 0; k < n; ++k)
        if (t[k] != 0) out[k] += c * t[k];
    }
  }
  for (auto& v : out) v = mod_floor(v, m);
  return out;
}

// Representatives of the nonzero classes of {v : ell v in M} / M, where M is
// the row span of h in O_K coordinates. Every minimal S-module above M is
// M + S v for one of these, since a simple S-module is killed by ell.
std::vector<std::vector<Int>> ell_torsion(const EtaleAlgebra& coords, const IntMat& h, const Int& ell) {
  const auto n = static_cast<std::size_t>(coords.dim());
  const Lattice m = Lattice::from_int_rows(coords, h, Int(1));
  const Lattice ell_z = Lattice::from_int_rows(coords, IntMat::identity(n), Int(1)).scaled(Rat(ell));
  const Lattice t = intersect(m, ell_z).scaled(Rat(1) / Rat(ell));
  const RatMat tb = t.basis_matrix();
  const IntMat rel = relative_basis(t, m);
  const detail::u64 p = detail::word_prime(ell);
  detail::FpSpace image(p, n);
  for (std::size_t i = 0; i < n; ++i) {
    detail::FpVec v(n);
    for (std::size_t j = 0; j < n; ++j) v[j] = detail::reduce_mod(rel(i, j), p);
    image.add(std::move(v));
  }
  const auto free = image.free_columns();
  std::vector<std::vector<Int>> out;
  std::vector<detail::u64> c(free.size(), 0);
  while (true) {
    std::size_t i = 0;
    while (i < c.size() && ++c[i] == p) c[i++] = 0;
    if (i == c.size()) break;
    std::vector<Int> v(n, Int(0));
    for (std::size_t k = 0; k < free.size(); ++k) {
      if (c[k] == 0) continue;
      for (std::size_t j = 0; j < n; ++j) {
        const Rat x = tb(free[k], j) * Rat(static_cast<unsigned long>(c[k]));
        v[j] += x.get_num() / x.get_den();
      }
    }
    out.push_back(std::move(v));
  }
  return out;
}

// Primes of S where S is not maximal; away from them S is Gorenstein.
std::vector<OrderPrime> singular_primes(const IsogenyClass& cls, const Order& s) {
  if (s == cls.maximal_order()) return {};
  return primes_containing(s, conductor(s, cls.maximal_order()));
}

}  // namespace

AbGroup quotient_group(const Lattice& ideal, const AlgElem& r) {
  if (!is_unit(r)) throw Error(ErrorCode::ZeroDivisor, "quotient by a zero divisor");
  const IntMat rel = relative_basis(ideal, ideal.multiplied(r));
  return AbGroup::from_cyclic_factors(smith_normal_form(rel).invariants);
}

std::string to_string(ClaimBasis b) {
  switch (b) {
    case ClaimBasis::GorensteinThm: return "GorensteinThm";
    case ClaimBasis::Type2Thm: return "Type2Thm";
    case ClaimBasis::IdealQuotient: return "IdealQuotient";
  }
  return "";
}

PointsResult group_from_order(const IsogenyClass& cls, const Order& s, unsigned n) {
  const AlgElem r = one_minus_frobenius_power(cls, n, false);
  PointsResult out;
  out.group = quotient_group(s.lattice(), r);
  out.regime = functor_regime(cls.weil());
  int worst = 1;
  for (auto& prime : primes_containing(s, s.lattice().multiplied(r))) {
    const int t = cm_type_at(s, prime);
    worst = std::max(worst, t);
    out.hypotheses_checked.push_back({std::move(prime), t});
  }
  if (worst == 1) {
    out.basis = ClaimBasis::GorensteinThm;
  } else if (worst == 2 && out.regime != FunctorRegime::None) {
    out.basis = ClaimBasis::Type2Thm;
  } else {
    out.basis = ClaimBasis::IdealQuotient;
    out.warning = worst > 2 ? "type " + std::to_string(worst) + " at a prime containing 1 - pi^n; other ideals with this multiplicator ring may give other groups"
                            : "type 2 outside the Ord and CS regimes; group shown is that of S itself";
  }
  return out;
}

Lattice dual_ideal(const Lattice& ideal, const Conjugation& conj) { return trace_dual(conjugate_lattice(ideal, conj)); }

AbGroup dual_group(const IsogenyClass& cls, const Lattice& ideal, unsigned n) {
  const AlgElem r = one_minus_frobenius_power(cls, n, false);
  const AlgElem rbar = one_minus_frobenius_power(cls, n, true);
  const Lattice ibar = conjugate_lattice(ideal, cls.conjugation());
  const AbGroup g = quotient_group(trace_dual(ibar), r);
  const AbGroup others[] = {quotient_group(trace_dual(ideal), rbar), quotient_group(ideal, rbar), quotient_group(ibar, r)};
  for (const auto& o : others)
    if (!(o == g))
      throw Error(ErrorCode::OracleDisagreement, "dual group expressions disagree: " + g.to_string() + " vs " + o.to_string());
  return g;
}

std::optional<SelfDualWitness> not_self_dual_witness(const IsogenyClass& cls, const Order& s_end, std::uint64_t bound) {
  if (functor_regime(cls.weil()) == FunctorRegime::None)
    throw Error(ErrorCode::InvalidArgument, "the self-duality criterion needs an ordinary class or a prime field");
  return not_self_dual_witness(cls, s_end, overorders(cls.frobenius_order(), cls.maximal_order(), bound));
}

std::optional<SelfDualWitness> not_self_dual_witness(const IsogenyClass& cls, const Order& s_end,
                                                     const std::vector<Order>& orders) {
  if (functor_regime(cls.weil()) == FunctorRegime::None)
    throw Error(ErrorCode::InvalidArgument, "the self-duality criterion needs an ordinary class or a prime field");
  const Conjugation& conj = cls.conjugation();
  for (const auto& s : orders) {
    if (!s_end.contains(s.lattice()) || !(conjugate_order(s, conj) == s)) continue;
    for (const auto& prime : singular_primes(cls, s)) {
      if (!(conjugate_prime(prime, conj) == prime)) continue;
      if (cm_type_at(s, prime) != 2) continue;
      if (locally_equal(s, s_end, prime)) return SelfDualWitness{s, prime};
    }
  }
  return std::nullopt;
}

SplitPrimeIdeal split_prime_ideal(const Order& s, const OrderPrime& prime, const Conjugation& conj) {
  if (!(conjugate_order(s, conj) == s)) throw Error(ErrorCode::InvalidArgument, "order is not conjugation stable");
  const OrderPrime pbar = conjugate_prime(prime, conj);
  if (pbar == prime) throw Error(ErrorCode::InvalidArgument, "prime is its own conjugate");
  const Lattice st = trace_dual(s.lattice());
  Int d(1);
  for (const auto& b : st.basis())
    for (const auto& c : s.lattice().rational_coordinates(b.coords())) d = lcm(d, Int(c.get_den()));
  const Lattice dst = st.scaled(Rat(d));
  Lattice power = pbar.ideal;
  for (int m = 1; m <= 64; ++m) {
    const Lattice j = sum(dst, power);
    const Lattice ann = intersect(colon(dst, j), s.lattice());
    if (!pbar.ideal.contains(ann)) return {j, d, m};
    power = product(power, pbar.ideal);
  }
  throw Error(ErrorCode::BoundExceeded, "no exponent m <= 64 puts conj(P)^m inside d S^t locally");
}

namespace {

// S-submodules M with floor <= M <= O_K, as HNF rows mod ell^k in O_K
// coordinates; floor must contain ell^k O_K.
std::vector<IntMat> local_submodules(const IsogenyClass& cls, const Order& s, const Lattice& floor, const Int& ell, const Int& mod,
                                     std::uint64_t& budget) {
  const Order& ok = cls.maximal_order();
  const auto n = static_cast<std::size_t>(ok.dim());
  const IntMat s_rel = relative_basis(ok.lattice(), s.lattice());
  std::vector<std::vector<Int>> s_gens;
  for (std::size_t i = 0; i < n; ++i) {
    auto row = s_rel.row(i);
    for (auto& x : row) x = mod_floor(x, mod);
    s_gens.push_back(std::move(row));
  }
  const IntMat start = hnf_basis_mod(relative_basis(ok.lattice(), floor), mod);
  std::set<std::vector<Int>> seen{start.data()};
  std::deque<IntMat> queue{start};
  std::vector<IntMat> found;
  while (!queue.empty()) {
    IntMat h = std::move(queue.front());
    queue.pop_front();
    for (auto& v : ell_torsion(cls.algebra(), h, ell)) {
      for (auto& x : v) x = mod_floor(x, mod);
      IntMat gens = h;
      for (const auto& g : s_gens) gens.append_row(mul_mod(ok, g, v, mod));
      IntMat t = hnf_basis_mod(gens, mod);
      if (seen.insert(t.data()).second) {
        if (budget-- == 0) throw Error(ErrorCode::BoundExceeded, "submodule search exceeded its cap");
        queue.push_back(std::move(t));
      }
    }
    found.push_back(std::move(h));
  }
  return found;
}

}  // namespace

std::vector<AbGroup> search_groups_for_multiplicator(const IsogenyClass& cls, const Order& s, const Int& m,
                                                     std::uint64_t cap) {
  if (m < 1) throw Error(ErrorCode::InvalidArgument, "search depth must be positive");
  const Order& ok = cls.maximal_order();
  // (I : I) contains m O_K whenever I does.
  if (!s.contains(ok.lattice().scaled(Rat(m)))) return {};
  const AlgElem r = cls.algebra().one() - cls.pi();
  // By CRT a lattice between m O_K and O_K is determined by its localizations
  // at the primes ell | m, and so are its multiplicator ring and the
  // ell-primary parts of I / rI. Away from m every such lattice is O_K.
  const AbGroup from_ok = quotient_group(ok.lattice(), r);
  const Factorization primes = m == 1 ? Factorization{} : factor_integer(m);
  std::vector<std::map<Int, std::vector<int>>> combos(1);
  for (const auto& pe : factor_integer(from_ok.order()))
    if (m % pe.prime != 0) combos[0][pe.prime] = from_ok.primary_exponents(pe.prime);
  // When m O_K lies in the conductor f = (S : O_K) it is enough to search above
  // f: every ideal with multiplicator ring S is locally isomorphic to one J with
  // f <= J <= O_K (scale so that J O_K = O_K at the primes dividing f), and the
  // group only depends on the local isomorphism classes.
  const Lattice f = s == ok ? ok.lattice() : conductor(s, ok);
  const bool above_conductor = f.contains(ok.lattice().scaled(Rat(m)));
  std::uint64_t budget = cap;
  for (const auto& pe : primes) {
    const Int mod = pow_int(pe.prime, static_cast<unsigned long>(pe.exponent));
    const Lattice mod_ok = ok.lattice().scaled(Rat(mod));
    const Order target = Order::from_lattice(sum(s.lattice(), mod_ok));
    const Lattice floor = above_conductor ? sum(f, mod_ok) : mod_ok;
    std::set<std::vector<int>> parts;
    for (const auto& h : local_submodules(cls, target, floor, pe.prime, mod, budget)) {
      const Lattice l = combination(ok.lattice(), h);
      if (!(multiplicator_ring(l) == target)) continue;
      parts.insert(quotient_group(l, r).primary_exponents(pe.prime));
    }
    std::vector<std::map<Int, std::vector<int>>> next;
    for (const auto& c : combos) {
      for (const auto& part : parts) {
        auto d = c;
        if (!part.empty()) d[pe.prime] = part;
        next.push_back(std::move(d));
      }
    }
    combos = std::move(next);
  }
  std::vector<AbGroup> out;
  for (const auto& c : combos) out.push_back(AbGroup::from_primary_parts(c));
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

Int default_search_depth(const IsogenyClass& cls, const Order& s) {
  if (s == cls.maximal_order()) return Int(1);
  const Lattice f = conductor(s, cls.maximal_order());
  const auto inv = smith_normal_form(relative_basis(cls.maximal_order().lattice(), f)).invariants;
  return inv.empty() ? Int(1) : inv.back();
}

std::optional<AbGroup> coprime_conductor_group(const IsogenyClass& cls) {
  const Order& r = cls.frobenius_order();
  const AlgElem x = cls.algebra().one() - cls.pi();
  if (!is_coprime(r, r.lattice().multiplied(x), cls.conductor())) return std::nullopt;
  const AbGroup g = AbGroup::cyclic(cls.weil().point_count());
  for (const Lattice* l : {&r.lattice(), &cls.maximal_order().lattice(), &cls.conductor()}) {
    const AbGroup q = quotient_group(*l, x);
    if (!(q == g))
      throw Error(ErrorCode::OracleDisagreement, "coprime conductor but quotient " + q.to_string() + " is not " + g.to_string());
  }
  return g;
}

}  // namespace avfq
