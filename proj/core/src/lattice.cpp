#include "avfq/lattice.hpp"

#include <cstdint>
#include <cstdio>

#include "avfq/error.hpp"

namespace avfq {

namespace {

// Full-rank HNF (n x n) of the integer rows, or throws NotFullRank.
IntMat full_rank_hnf(const IntMat& rows, std::size_t n) {
  if (rows.rows() > 2 * n) {
    // A full-rank prefix gives a multiple of the determinant; the rest is
    // reduced modulo it.
    IntMat head(2 * n, n);
    for (std::size_t i = 0; i < 2 * n; ++i)
      for (std::size_t j = 0; j < n; ++j) head(i, j) = rows(i, j);
    IntMat h = hnf_basis(head);
    if (h.rows() == n) {
      Int det(1);
      for (std::size_t i = 0; i < n; ++i) det *= h(i, i);
      return hnf_basis_mod(rows, det);
    }
  }
  IntMat h = hnf_basis(rows);
  if (h.rows() != n) throw Error(ErrorCode::NotFullRank, "generators do not span the algebra");
  return h;
}

}  // namespace

Lattice Lattice::from_int_rows(const EtaleAlgebra& alg, const IntMat& rows, const Int& denominator) {
  if (denominator == 0) throw Error(ErrorCode::InvalidArgument, "zero denominator");
  if (rows.cols() != static_cast<std::size_t>(alg.dim()))
    throw Error(ErrorCode::InvalidArgument, "generator length differs from algebra dimension");
  const auto n = static_cast<std::size_t>(alg.dim());
  IntMat h = full_rank_hnf(rows, n);
  Int den = abs_int(denominator);
  Int g = den;
  for (const auto& v : h.data()) {
    if (g == 1) break;
    if (v != 0) g = gcd(g, v);
  }
  if (g != 1) {
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) mpz_divexact(h(i, j).get_mpz_t(), h(i, j).get_mpz_t(), g.get_mpz_t());
    mpz_divexact(den.get_mpz_t(), den.get_mpz_t(), g.get_mpz_t());
  }
  return Lattice(alg, std::move(h), std::move(den));
}

Lattice Lattice::from_rows(const EtaleAlgebra& alg, const RatMat& gens) {
  Int den(1);
  for (const auto& v : gens.data()) den = lcm(den, v.get_den());
  IntMat rows(gens.rows(), gens.cols());
  for (std::size_t i = 0; i < gens.rows(); ++i)
    for (std::size_t j = 0; j < gens.cols(); ++j) {
      const Rat& v = gens(i, j);
      rows(i, j) = v.get_num() * (den / v.get_den());
    }
  return from_int_rows(alg, rows, den);
}

Lattice Lattice::from_generators(const EtaleAlgebra& alg, std::span<const AlgElem> gens) {
  RatMat m(gens.size(), static_cast<std::size_t>(alg.dim()));
  for (std::size_t i = 0; i < gens.size(); ++i) m.set_row(i, gens[i].coords());
  return from_rows(alg, m);
}

std::vector<AlgElem> Lattice::basis() const {
  std::vector<AlgElem> out;
  const auto n = static_cast<std::size_t>(dim());
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<Rat> c(n);
    for (std::size_t j = 0; j < n; ++j) c[j] = make_rat(num_(i, j), den_);
    out.emplace_back(alg_, std::move(c));
  }
  return out;
}

RatMat Lattice::basis_matrix() const {
  const auto n = static_cast<std::size_t>(dim());
  RatMat m(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m(i, j) = make_rat(num_(i, j), den_);
  return m;
}

Rat Lattice::covolume() const {
  Int det(1);
  for (std::size_t i = 0; i < num_.rows(); ++i) det *= num_(i, i);
  return make_rat(det, pow_int(den_, static_cast<unsigned long>(dim())));
}

std::vector<Rat> Lattice::rational_coordinates(const std::vector<Rat>& v) const {
  // Solve x * (num / den) = v with num upper triangular.
  const auto n = static_cast<std::size_t>(dim());
  std::vector<Rat> x(n, Rat(0));
  for (std::size_t j = 0; j < n; ++j) {
    Rat s = v[j] * Rat(den_);
    for (std::size_t i = 0; i < j; ++i)
      if (x[i] != 0 && num_(i, j) != 0) s -= x[i] * Rat(num_(i, j));
    x[j] = s / Rat(num_(j, j));
  }
  return x;
}

std::optional<std::vector<Int>> Lattice::coordinates(const std::vector<Rat>& v) const {
  const auto n = static_cast<std::size_t>(dim());
  std::vector<Int> x(n);
  std::vector<Rat> rx = rational_coordinates(v);
  for (std::size_t i = 0; i < n; ++i) {
    if (!is_integral(rx[i])) return std::nullopt;
    x[i] = rx[i].get_num();
  }
  return x;
}

bool Lattice::contains(const AlgElem& a) const { return coordinates(a.coords()).has_value(); }

bool Lattice::contains(const Lattice& other) const {
  for (const auto& b : other.basis())
    if (!contains(b)) return false;
  return true;
}

Lattice Lattice::scaled(const Rat& s) const {
  if (s == 0) throw Error(ErrorCode::NotFullRank, "scaling a lattice by zero");
  IntMat rows = num_;
  for (std::size_t i = 0; i < rows.rows(); ++i)
    for (std::size_t j = 0; j < rows.cols(); ++j) rows(i, j) *= s.get_num();
  return from_int_rows(alg_, rows, den_ * s.get_den());
}

Lattice Lattice::multiplied(const AlgElem& a) const {
  std::vector<AlgElem> gens;
  for (const auto& b : basis()) gens.push_back(a * b);
  return from_generators(alg_, gens);
}

std::string Lattice::fingerprint() const {
  std::uint64_t hsh = 1469598103934665603ull;
  auto mix = [&](const std::string& s) {
    for (unsigned char c : s) {
      hsh ^= c;
      hsh *= 1099511628211ull;
    }
    hsh ^= 0xff;
    hsh *= 1099511628211ull;
  };
  mix(den_.get_str());
  for (const auto& v : num_.data()) mix(v.get_str());
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(hsh));
  return buf;
}

Lattice sum(const Lattice& a, const Lattice& b) {
  const auto n = static_cast<std::size_t>(a.dim());
  const Int den = lcm(a.denominator(), b.denominator());
  const Int fa = den / a.denominator();
  const Int fb = den / b.denominator();
  IntMat rows(2 * n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      rows(i, j) = a.numerator()(i, j) * fa;
      rows(n + i, j) = b.numerator()(i, j) * fb;
    }
  return Lattice::from_int_rows(a.algebra(), rows, den);
}

Lattice intersect(const Lattice& a, const Lattice& b) { return trace_dual(sum(trace_dual(a), trace_dual(b))); }

Lattice product(const Lattice& a, const Lattice& b) {
  const auto n = static_cast<std::size_t>(a.dim());
  const EtaleAlgebra& alg = a.algebra();
  // Multiply integer numerators and divide by the product of denominators once.
  std::vector<std::vector<Rat>> an(n), bn(n);
  for (std::size_t i = 0; i < n; ++i) {
    an[i].resize(n);
    bn[i].resize(n);
    for (std::size_t j = 0; j < n; ++j) {
      an[i][j] = Rat(a.numerator()(i, j));
      bn[i][j] = Rat(b.numerator()(i, j));
    }
  }
  RatMat rows(n * n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) rows.set_row(i * n + j, alg.multiply(an[i], bn[j]));
  const Int den = a.denominator() * b.denominator();
  Int common(1);
  for (const auto& v : rows.data()) common = lcm(common, v.get_den());
  IntMat ints(n * n, n);
  for (std::size_t i = 0; i < n * n; ++i)
    for (std::size_t j = 0; j < n; ++j) ints(i, j) = rows(i, j).get_num() * (common / rows(i, j).get_den());
  return Lattice::from_int_rows(alg, ints, den * common);
}

Int index(const Lattice& big, const Lattice& small) {
  if (!big.contains(small)) throw Error(ErrorCode::NotContained, "lattice is not contained in the bigger one");
  Rat r = small.covolume() / big.covolume();
  return r.get_num();
}

Lattice trace_dual(const Lattice& l) {
  // y is in L^t iff (1/d) B T y is integral, i.e. the rows of d B^{-T} T^{-1} form a basis.
  const RatMat b = to_rat(l.numerator());
  auto binv = inverse(b);
  if (!binv) throw Error(ErrorCode::NotFullRank, "singular lattice basis");
  RatMat rows = binv->transpose() * l.algebra().trace_form_inverse();
  const Rat d(l.denominator());
  for (std::size_t i = 0; i < rows.rows(); ++i)
    for (std::size_t j = 0; j < rows.cols(); ++j) rows(i, j) *= d;
  return Lattice::from_rows(l.algebra(), rows);
}

Lattice colon(const Lattice& a, const Lattice& b) { return trace_dual(product(trace_dual(a), b)); }

IntMat relative_basis(const Lattice& big, const Lattice& small) {
  const auto n = static_cast<std::size_t>(big.dim());
  IntMat out(n, n);
  const auto basis = small.basis();
  for (std::size_t i = 0; i < n; ++i) {
    auto c = big.coordinates(basis[i].coords());
    if (!c) throw Error(ErrorCode::NotContained, "lattice is not contained in the base lattice");
    out.set_row(i, *c);
  }
  return out;
}

Lattice combination(const Lattice& base, const IntMat& coords) {
  return Lattice::from_int_rows(base.algebra(), coords * base.numerator(), base.denominator());
}

}  // namespace avfq
