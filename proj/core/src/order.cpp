#include "avfq/order.hpp"

#include <algorithm>
#include <deque>
#include <set>

#include "avfq/error.hpp"
#include "avfq/factor.hpp"
#include "fp_linalg.hpp"

namespace avfq {

using detail::FpAlgebra;
using detail::FpSpace;
using detail::FpVec;
using detail::u64;

Order Order::from_lattice(const Lattice& l) {
  const auto n = static_cast<std::size_t>(l.dim());
  const EtaleAlgebra& alg = l.algebra();
  auto one = l.coordinates(alg.one().coords());
  if (!one) throw Error(ErrorCode::InvalidArgument, "lattice does not contain 1");
  const auto basis = l.basis();
  std::vector<std::vector<Int>> table(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) {
      auto c = l.coordinates(alg.multiply(basis[i].coords(), basis[j].coords()));
      if (!c) throw Error(ErrorCode::InvalidArgument, "lattice is not closed under multiplication");
      table[i * n + j] = *c;
      table[j * n + i] = std::move(*c);
    }
  return Order(std::make_shared<const Data>(Data{l, std::move(table), std::move(*one)}));
}

Int Order::discriminant() const {
  const RatMat b = lattice().basis_matrix();
  const Rat d = determinant(b * algebra().trace_form() * b.transpose());
  return d.get_num();
}

namespace {

FpAlgebra fp_algebra_of(const Order& s, u64 p) {
  const auto n = static_cast<std::size_t>(s.dim());
  std::vector<std::vector<FpVec>> table(n, std::vector<FpVec>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const auto& c = s.structure_constants(i, j);
      FpVec v(n);
      for (std::size_t k = 0; k < n; ++k) v[k] = detail::reduce_mod(c[k], p);
      table[i][j] = std::move(v);
    }
  FpVec one(n);
  for (std::size_t k = 0; k < n; ++k) one[k] = detail::reduce_mod(s.one_coordinates()[k], p);
  return FpAlgebra(p, n, std::move(table), std::move(one));
}

// pS + lifts of a subspace of S/pS.
Lattice pull_back(const Order& s, const Int& p, const FpSpace& space) {
  const auto n = static_cast<std::size_t>(s.dim());
  IntMat rows(n + space.dim(), n);
  for (std::size_t i = 0; i < n; ++i) rows(i, i) = p;
  for (std::size_t r = 0; r < space.dim(); ++r)
    for (std::size_t k = 0; k < n; ++k) rows(n + r, k) = Int(static_cast<unsigned long>(space.rows()[r][k]));
  return combination(s.lattice(), rows);
}

bool lattice_less(const Lattice& a, const Lattice& b) {
  if (a.denominator() != b.denominator()) return a.denominator() < b.denominator();
  return std::lexicographical_compare(a.numerator().data().begin(), a.numerator().data().end(),
                                      b.numerator().data().begin(), b.numerator().data().end());
}

// Splits the ideal I (containing the radical) of A into the maximal ideals above it.
void split_ideal(const FpAlgebra& a, const FpSpace& ideal, std::vector<FpSpace>& out) {
  const u64 p = a.prime();
  const std::size_t n = a.dim();
  const auto free = ideal.free_columns();
  // x -> x^p - x on A / I, on the basis of free columns.
  std::vector<FpVec> images;
  for (std::size_t k : free) {
    const FpVec e = a.basis(k);
    const FpVec img = ideal.reduce(a.sub(a.pow(e, Int(static_cast<unsigned long>(p))), e));
    FpVec restricted(free.size());
    for (std::size_t t = 0; t < free.size(); ++t) restricted[t] = img[free[t]];
    images.push_back(std::move(restricted));
  }
  const auto ker = detail::kernel(images, p);
  if (ker.size() <= 1) {
    out.push_back(ideal);
    return;
  }
  FpSpace scalars = ideal;
  scalars.add(a.one());
  FpVec z;
  for (const auto& c : ker) {
    FpVec v(n, 0);
    for (std::size_t t = 0; t < free.size(); ++t) v[free[t]] = c[t];
    if (!scalars.contains(v)) {
      z = std::move(v);
      break;
    }
  }
  // Minimal polynomial of z modulo I.
  std::vector<FpVec> powers{ideal.reduce(a.one())};
  detail::FpPoly minpoly;
  FpVec cur = a.one();
  while (true) {
    cur = a.mul(cur, z);
    powers.push_back(ideal.reduce(cur));
    auto rel = detail::kernel(powers, p);
    if (!rel.empty()) {
      minpoly = rel.front();
      break;
    }
  }
  for (u64 c : detail::split_roots(minpoly, p)) {
    FpSpace next = ideal;
    const FpVec g = a.sub(z, a.scale(a.one(), c));
    for (std::size_t k = 0; k < n; ++k) next.add(a.mul(g, a.basis(k)));
    split_ideal(a, next, out);
  }
}

Lattice p_radical(const Order& s, const Int& p) {
  const FpAlgebra a = fp_algebra_of(s, detail::word_prime(p));
  return pull_back(s, p, a.radical());
}

std::vector<Int> mul_mod(const Order& o, const std::vector<Int>& x, const std::vector<Int>& y, const Int& e) {
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
  for (auto& v : out) v = mod_floor(v, e);
  return out;
}

}  // namespace

Order equation_order(const EtaleAlgebra& alg) {
  return Order::from_lattice(
      Lattice::from_int_rows(alg, IntMat::identity(static_cast<std::size_t>(alg.dim())), Int(1)));
}

Order order_generated_by(const EtaleAlgebra& alg, const std::vector<AlgElem>& gens) {
  // Integral generators satisfy monic integer polynomials of degree n, so the
  // monomials with every exponent below n already span the ring.
  const auto n = static_cast<unsigned long>(alg.dim());
  std::vector<AlgElem> monomials{alg.one()};
  for (const auto& g : gens) {
    std::vector<AlgElem> next;
    std::vector<AlgElem> powers{alg.one()};
    for (unsigned long k = 1; k < n; ++k) powers.push_back(powers.back() * g);
    for (const auto& m : monomials)
      for (const auto& pw : powers) next.push_back(m * pw);
    try {
      monomials = Lattice::from_generators(alg, next).basis();
    } catch (const Error& err) {
      if (err.code() != ErrorCode::NotFullRank) throw;
      monomials = std::move(next);
    }
  }
  return Order::from_lattice(Lattice::from_generators(alg, monomials));
}

Order multiplicator_ring(const Lattice& l) { return Order::from_lattice(colon(l, l)); }

Order frobenius_order(const Conjugation& conj) {
  const EtaleAlgebra& alg = conj.algebra();
  return order_generated_by(alg, {alg.gen(), conj.apply(alg.gen())});
}

Order maximal_order(const Order& o) {
  Order cur = o;
  const Int disc = o.discriminant();
  for (const auto& pe : factor_integer(disc)) {
    if (pe.exponent < 2) continue;
    while (true) {
      Order next = multiplicator_ring(p_radical(cur, pe.prime));
      if (next == cur) break;
      cur = next;
    }
  }
  return cur;
}

Order maximal_order(const EtaleAlgebra& alg) { return maximal_order(equation_order(alg)); }

Lattice conductor(const Order& s, const Order& sp) {
  if (!sp.contains(s.lattice())) throw Error(ErrorCode::NotContained, "order is not contained in the overorder");
  return colon(s.lattice(), sp.lattice());
}

std::vector<OrderPrime> primes_above(const Order& s, const Int& p) {
  const FpAlgebra a = fp_algebra_of(s, detail::word_prime(p));
  std::vector<FpSpace> maximal;
  split_ideal(a, a.radical(), maximal);
  std::vector<OrderPrime> out;
  for (const auto& m : maximal)
    out.push_back({pull_back(s, p, m), p, s.dim() - static_cast<int>(m.dim())});
  std::sort(out.begin(), out.end(), [](const OrderPrime& x, const OrderPrime& y) {
    if (x.residue_degree != y.residue_degree) return x.residue_degree < y.residue_degree;
    return lattice_less(x.ideal, y.ideal);
  });
  return out;
}

std::vector<OrderPrime> primes_containing(const Order& s, const Lattice& ideal) {
  const Int idx = index(s.lattice(), ideal);
  std::vector<OrderPrime> out;
  if (idx == 1) return out;
  for (const auto& pe : factor_integer(idx))
    for (auto& prime : primes_above(s, pe.prime))
      if (prime.ideal.contains(ideal)) out.push_back(std::move(prime));
  return out;
}

bool is_ideal_of(const Order& s, const Lattice& l) { return l.contains(product(s.lattice(), l)); }

bool is_coprime(const Order& s, const Lattice& i, const Lattice& j) {
  if (!s.contains(i) || !s.contains(j)) throw Error(ErrorCode::NotContained, "ideal is not integral");
  return sum(i, j) == s.lattice();
}

bool locally_equal(const Order& s, const Order& sp, const OrderPrime& prime) {
  return !prime.ideal.contains(conductor(s, sp));
}

int cm_type_at(const Order& s, const OrderPrime& prime) {
  const Lattice st = trace_dual(s.lattice());
  const Int idx = index(st, product(prime.ideal, st));
  return valuation(idx, prime.p) / prime.residue_degree;
}

bool gorenstein_at(const Order& s, const OrderPrime& prime) { return cm_type_at(s, prime) == 1; }

bool is_locally_principal(const Order& s, const Lattice& ideal, const OrderPrime& prime) {
  return !prime.ideal.contains(product(ideal, colon(s.lattice(), ideal)));
}

std::vector<Order> overorders(const Order& r, const Order& maximal, std::uint64_t bound) {
  const Int e = index(maximal.lattice(), r.lattice());
  if (e > Int(static_cast<unsigned long>(bound)))
    throw Error(ErrorCode::BoundExceeded, "index [O_K : R] = " + e.get_str() + " exceeds the overorder bound");
  const auto n = static_cast<std::size_t>(r.dim());
  // Everything happens in maximal-order coordinates modulo e, since e O_K lies in R.
  const IntMat start = hnf_basis_mod(relative_basis(maximal.lattice(), r.lattice()), e);
  std::set<std::vector<Int>> seen{start.data()};
  std::deque<IntMat> queue{start};
  std::vector<IntMat> found;
  while (!queue.empty()) {
    IntMat h = std::move(queue.front());
    queue.pop_front();
    found.push_back(h);
    std::vector<Int> digits(n, Int(0));
    while (true) {
      // Next residue in mixed radix 0 <= a_i < h_ii.
      std::size_t pos = n;
      for (std::size_t i = n; i-- > 0;) {
        if (digits[i] + 1 < h(i, i)) {
          digits[i] += 1;
          for (std::size_t k = i + 1; k < n; ++k) digits[k] = 0;
          pos = i;
          break;
        }
      }
      if (pos == n) break;
      std::vector<Int> v = digits;
      IntMat gens = h;
      std::vector<Int> power = v;
      for (std::size_t k = 1; k < n; ++k) {
        for (std::size_t i = 0; i < n; ++i) gens.append_row(mul_mod(maximal, h.row(i), power, e));
        power = mul_mod(maximal, power, v, e);
      }
      IntMat t = hnf_basis_mod(gens, e);
      if (seen.insert(t.data()).second) queue.push_back(std::move(t));
    }
  }
  std::vector<Order> out;
  for (const auto& h : found) out.push_back(Order::from_lattice(combination(maximal.lattice(), h)));
  std::sort(out.begin(), out.end(), [&](const Order& x, const Order& y) {
    const Int ix = index(x.lattice(), r.lattice()), iy = index(y.lattice(), r.lattice());
    if (ix != iy) return ix < iy;
    return lattice_less(x.lattice(), y.lattice());
  });
  return out;
}

Lattice conjugate_lattice(const Lattice& l, const Conjugation& conj) {
  const auto n = static_cast<std::size_t>(l.dim());
  RatMat rows(n, n);
  const auto basis = l.basis();
  for (std::size_t i = 0; i < n; ++i) rows.set_row(i, conj.apply(basis[i].coords()));
  return Lattice::from_rows(l.algebra(), rows);
}

Order conjugate_order(const Order& s, const Conjugation& conj) {
  return Order::from_lattice(conjugate_lattice(s.lattice(), conj));
}

OrderPrime conjugate_prime(const OrderPrime& prime, const Conjugation& conj) {
  return {conjugate_lattice(prime.ideal, conj), prime.p, prime.residue_degree};
}

}  // namespace avfq
