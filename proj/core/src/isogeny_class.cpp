#include "avfq/isogeny_class.hpp"

#include <algorithm>
#include <sstream>

#include "avfq/error.hpp"
#include "avfq/real_roots.hpp"

namespace avfq {

namespace {

// P_k(x + q/x) = x^k + (q/x)^k.
std::vector<IntPoly> chebyshev_like(int g, const Int& q) {
  std::vector<IntPoly> p{IntPoly{Int(2)}, IntPoly{Int(0), Int(1)}};
  const IntPoly y{Int(0), Int(1)};
  for (int k = 2; k <= g; ++k) p.push_back(y * p[static_cast<std::size_t>(k - 1)] - q * p[static_cast<std::size_t>(k - 2)]);
  return p;
}

bool integral_poly(const RatPoly& f) {
  for (const auto& c : f.coeffs())
    if (!is_integral(c)) return false;
  return true;
}

}  // namespace

WeilPoly validate_weil(const IntPoly& h, const Int& q) {
  auto [p, a] = prime_power_decomposition(q);
  if (a == 0) throw Error(ErrorCode::NotPrimePower, q.get_str() + " is not a prime power");
  const int deg = h.degree();
  if (deg < 2 || deg % 2 != 0 || !h.is_monic())
    throw Error(ErrorCode::NotWeil, "h = " + to_string(h) + " is not monic of positive even degree");
  if (!is_q_symmetric(h, q))
    throw Error(ErrorCode::NotWeil, "h = " + to_string(h) + " fails x^(2g) h(q/x) = q^g h(x)");
  WeilPoly w;
  w.h = h;
  w.q = q;
  w.p = p;
  w.a = a;
  w.g = deg / 2;
  const auto pk = chebyshev_like(w.g, q);
  IntPoly real = IntPoly::constant(h.coeff(static_cast<std::size_t>(w.g)));
  for (int k = 1; k <= w.g; ++k)
    real = real + h.coeff(static_cast<std::size_t>(w.g + k)) * pk[static_cast<std::size_t>(k)];
  w.real_poly = real;
  const RatPoly real_q = to_rat(real);
  const QuadIrr hi(Rat(0), Rat(2), q);
  const int distinct = squarefree_part(real_q).degree();
  if (count_real_roots(real_q, -hi, hi) != distinct)
    throw Error(ErrorCode::NotWeil, "real Weil polynomial " + to_string(real, 'y') + " has roots outside [-2 sqrt q, 2 sqrt q]");
  w.squarefree = is_squarefree(h);
  w.ordinary = gcd(h.coeff(static_cast<std::size_t>(w.g)), q) == 1;
  w.has_real_roots = hi.evaluate(real_q).sign() == 0 || (-hi).evaluate(real_q).sign() == 0;
  return w;
}

Int point_count(const WeilPoly& w, unsigned n) {
  const auto m = static_cast<std::size_t>(w.h.degree());
  RatMat c(m, m);
  for (std::size_t i = 0; i + 1 < m; ++i) c(i + 1, i) = 1;
  for (std::size_t i = 0; i < m; ++i) c(i, m - 1) = Rat(-w.h.coeff(i));
  RatMat pw = RatMat::identity(m);
  for (unsigned k = 0; k < n; ++k) pw = pw * c;
  RatMat diff = RatMat::identity(m);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) diff(i, j) -= pw(i, j);
  return determinant(diff).get_num();
}

FunctorRegime functor_regime(const WeilPoly& w) {
  if (w.ordinary) return FunctorRegime::Ord;
  if (w.a == 1) return FunctorRegime::CS;
  return FunctorRegime::None;
}

std::string to_string(FunctorRegime r) {
  switch (r) {
    case FunctorRegime::Ord: return "Ord";
    case FunctorRegime::CS: return "CS";
    case FunctorRegime::None: return "None";
  }
  return "None";
}

AbGroup AbGroup::from_primary_parts(const std::map<Int, std::vector<int>>& parts) {
  std::size_t k = 0;
  std::map<Int, std::vector<int>> sorted;
  for (const auto& [ell, exps] : parts) {
    std::vector<int> e;
    for (int x : exps)
      if (x > 0) e.push_back(x);
    std::sort(e.rbegin(), e.rend());
    k = std::max(k, e.size());
    sorted[ell] = std::move(e);
  }
  AbGroup g;
  g.d_.assign(k, Int(1));
  for (const auto& [ell, e] : sorted)
    for (std::size_t i = 0; i < e.size(); ++i) g.d_[i] *= pow_int(ell, static_cast<unsigned long>(e[i]));
  std::reverse(g.d_.begin(), g.d_.end());
  return g;
}

AbGroup AbGroup::from_cyclic_factors(const std::vector<Int>& orders) {
  std::map<Int, std::vector<int>> parts;
  for (const auto& n : orders) {
    if (n <= 0) throw Error(ErrorCode::InvalidArgument, "cyclic factor orders must be positive");
    if (n == 1) continue;
    for (const auto& pe : factor_integer(n)) parts[pe.prime].push_back(pe.exponent);
  }
  return from_primary_parts(parts);
}

Int AbGroup::order() const {
  Int n(1);
  for (const auto& d : d_) n *= d;
  return n;
}

std::vector<int> AbGroup::primary_exponents(const Int& ell) const {
  std::vector<int> out;
  for (const auto& d : d_) {
    const int v = valuation(d, ell);
    if (v > 0) out.push_back(v);
  }
  return out;
}

std::string AbGroup::to_string() const {
  if (d_.empty()) return "0";
  std::ostringstream os;
  for (std::size_t i = 0; i < d_.size(); ++i) os << (i ? " x " : "") << "Z/" << d_[i].get_str();
  return os.str();
}

bool operator<(const AbGroup& a, const AbGroup& b) {
  if (a.d_.size() != b.d_.size()) return a.d_.size() < b.d_.size();
  return a.d_ < b.d_;
}

Rat Polygon::at(int x) const {
  for (std::size_t i = 0; i + 1 < vertices.size(); ++i) {
    const auto& [x0, y0] = vertices[i];
    const auto& [x1, y1] = vertices[i + 1];
    if (x0 <= x && x <= x1) return y0 + (y1 - y0) * Rat(x - x0) / Rat(x1 - x0);
  }
  if (!vertices.empty() && vertices.back().first == x) return vertices.back().second;
  throw Error(ErrorCode::InvalidArgument, "abscissa outside the polygon");
}

Polygon newton_polygon(const WeilPoly& w, const Int& ell) {
  const IntPoly b = compose_linear(w.h, Int(-1), Int(1));
  std::vector<std::pair<int, Rat>> hull;
  for (int i = 0; i <= b.degree(); ++i) {
    const Int c = b.coeff(static_cast<std::size_t>(i));
    if (c == 0) continue;
    const std::pair<int, Rat> pt{i, Rat(valuation(c, ell))};
    while (hull.size() >= 2) {
      const auto& o = hull[hull.size() - 2];
      const auto& a = hull.back();
      const Rat cross = Rat(a.first - o.first) * (pt.second - o.second) - (a.second - o.second) * Rat(pt.first - o.first);
      if (cross > 0) break;
      hull.pop_back();
    }
    hull.push_back(pt);
  }
  return Polygon{std::move(hull)};
}

Polygon hodge_polygon(std::vector<int> exponents, int two_g) {
  exponents.erase(std::remove(exponents.begin(), exponents.end(), 0), exponents.end());
  if (static_cast<int>(exponents.size()) > two_g)
    throw Error(ErrorCode::PartitionTooLong, "more than 2g = " + std::to_string(two_g) + " cyclic factors");
  std::sort(exponents.begin(), exponents.end());
  std::vector<int> e(static_cast<std::size_t>(two_g) - exponents.size(), 0);
  e.insert(e.end(), exponents.begin(), exponents.end());
  Polygon out;
  for (int i = 0; i <= two_g; ++i) {
    long s = 0;
    for (int j = 0; j < two_g - i; ++j) s += e[static_cast<std::size_t>(j)];
    out.vertices.emplace_back(i, Rat(s));
  }
  return out;
}

bool lies_on_or_below(const Polygon& lower, const Polygon& upper, int two_g) {
  for (int x = 0; x <= two_g; ++x)
    if (lower.at(x) > upper.at(x)) return false;
  return true;
}

std::vector<std::vector<int>> partitions(int e, int max_parts) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur;
  // Parts generated in descending order, then reversed.
  auto rec = [&](auto&& self, int rest, int largest) -> void {
    if (rest == 0) {
      out.emplace_back(cur.rbegin(), cur.rend());
      return;
    }
    if (static_cast<int>(cur.size()) == max_parts) return;
    for (int part = std::min(rest, largest); part >= 1; --part) {
      cur.push_back(part);
      self(self, rest - part, part);
      cur.pop_back();
    }
  };
  rec(rec, e, e);
  return out;
}

Int partition_count(int e) {
  std::vector<Int> p(static_cast<std::size_t>(e) + 1, Int(0));
  p[0] = 1;
  for (int part = 1; part <= e; ++part)
    for (int s = part; s <= e; ++s) p[static_cast<std::size_t>(s)] += p[static_cast<std::size_t>(s - part)];
  return p[static_cast<std::size_t>(e)];
}

std::vector<AbGroup> admissible_groups(const WeilPoly& w) {
  const Int n = w.point_count();
  const int two_g = 2 * w.g;
  std::vector<std::pair<Int, std::vector<std::vector<int>>>> choices;
  if (n != 1) {
    for (const auto& pe : factor_integer(n)) {
      const Polygon newton = newton_polygon(w, pe.prime);
      std::vector<std::vector<int>> ok;
      for (auto& part : partitions(pe.exponent, two_g))
        if (lies_on_or_below(hodge_polygon(part, two_g), newton, two_g)) ok.push_back(std::move(part));
      choices.emplace_back(pe.prime, std::move(ok));
    }
  }
  std::vector<AbGroup> out;
  std::map<Int, std::vector<int>> parts;
  auto rec = [&](auto&& self, std::size_t i) -> void {
    if (i == choices.size()) {
      out.push_back(AbGroup::from_primary_parts(parts));
      return;
    }
    for (const auto& part : choices[i].second) {
      parts[choices[i].first] = part;
      self(self, i + 1);
    }
    parts.erase(choices[i].first);
  };
  rec(rec, 0);
  std::sort(out.begin(), out.end());
  return out;
}

IsogenyClass IsogenyClass::make(const WeilPoly& w) {
  if (!w.squarefree) throw Error(ErrorCode::NotSquarefree, "h = " + to_string(w.h) + " is not squarefree");
  EtaleAlgebra k = EtaleAlgebra::make(w.h);
  Conjugation conj(k, w.q);
  Order r = avfq::frobenius_order(conj);
  Order ok = avfq::maximal_order(r);
  Lattice cond = avfq::conductor(r, ok);
  return IsogenyClass(w, std::move(k), std::move(conj), std::move(r), std::move(ok), std::move(cond));
}

std::string to_string(CyclicMethod m) {
  switch (m) {
    case CyclicMethod::Conductor: return "conductor";
    case CyclicMethod::Newton: return "newton";
    case CyclicMethod::Enumeration: return "enumeration";
  }
  return "";
}

std::string to_string(RichMethod m) {
  switch (m) {
    case RichMethod::Formula: return "formula";
    case RichMethod::Integrality: return "integrality";
    case RichMethod::Enumeration: return "enumeration";
  }
  return "";
}

bool is_cyclic_class(const WeilPoly& w, CyclicMethod method, const IsogenyClass* cls) {
  const Int n = w.point_count();
  if (n == 1) return true;
  switch (method) {
    case CyclicMethod::Conductor: {
      std::optional<IsogenyClass> own;
      if (!cls) cls = &own.emplace(IsogenyClass::make(w));
      const Order& r = cls->frobenius_order();
      const Lattice ideal = r.lattice().multiplied(cls->algebra().one() - cls->pi());
      return is_coprime(r, ideal, cls->conductor());
    }
    case CyclicMethod::Newton: {
      const int two_g = 2 * w.g;
      for (const auto& pe : factor_integer(n)) {
        if (pe.exponent < 2) continue;
        if (lies_on_or_below(hodge_polygon({1, pe.exponent - 1}, two_g), newton_polygon(w, pe.prime), two_g))
          return false;
      }
      return true;
    }
    case CyclicMethod::Enumeration:
      return admissible_groups(w).size() == 1;
  }
  return false;
}

bool is_rich_class(const WeilPoly& w, RichMethod method, const IsogenyClass* cls) {
  const Int n = w.point_count();
  if (n == 1) return true;
  switch (method) {
    case RichMethod::Formula: {
      const Int rad = radical(n);
      for (int i = 1; i <= 2 * w.g; ++i) {
        const Rat v = taylor_coeff(w.h, Int(1), i) * Rat(pow_int(rad, static_cast<unsigned long>(i))) / Rat(n);
        if (!is_integral(v)) return false;
      }
      return true;
    }
    case RichMethod::Integrality: {
      std::optional<IsogenyClass> own;
      if (!cls) cls = &own.emplace(IsogenyClass::make(w));
      return integral_poly(charpoly_scaled_inverse(cls->pi(), Rat(radical(n))));
    }
    case RichMethod::Enumeration: {
      Int all(1);
      for (const auto& pe : factor_integer(n)) all *= partition_count(pe.exponent);
      return Int(static_cast<unsigned long>(admissible_groups(w).size())) == all;
    }
  }
  return false;
}

bool annihilated_by(const IsogenyClass& cls, const Order& s, const Int& d) {
  const AlgElem x = Rat(d) * inv(cls.algebra().one() - cls.pi());
  return s.contains(x);
}

std::vector<WeilPoly> enumerate_elliptic_classes(const Int& q) {
  auto [p, a] = prime_power_decomposition(q);
  if (a == 0) throw Error(ErrorCode::NotPrimePower, q.get_str() + " is not a prime power");
  const bool a_odd = a % 2 == 1;
  const Int p4 = mod_floor(p, Int(4)), p3 = mod_floor(p, Int(3));
  Int bound;
  mpz_sqrt(bound.get_mpz_t(), Int(4 * q).get_mpz_t());
  std::vector<WeilPoly> out;
  for (Int t = -bound; t <= bound; ++t) {
    const Int t2 = t * t;
    if (t2 >= 4 * q) continue;
    const bool allowed = gcd(t, p) == 1 || (t == 0 && (a_odd || p4 != 1)) || (t2 == q && !a_odd && p3 != 1) ||
                         (t2 == 2 * q && p == 2 && a_odd) || (t2 == 3 * q && p == 3 && a_odd);
    if (allowed) out.push_back(validate_weil(IntPoly{q, Int(-t), Int(1)}, q));
  }
  return out;
}

bool two_generator_witness(const WeilPoly& w, const Int& ell, int s1, int s2) {
  const int two_g = 2 * w.g;
  return lies_on_or_below(hodge_polygon({s1, s2}, two_g), newton_polygon(w, ell), two_g);
}

}  // namespace avfq
