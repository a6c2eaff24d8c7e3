#include "avfq/etale_algebra.hpp"

#include "avfq/error.hpp"

namespace avfq {

struct EtaleAlgebra::Data {
  IntPoly h;
  int n = 0;
  // reduction[k] = coordinates of x^k for 0 <= k <= 2n - 2.
  std::vector<std::vector<Int>> reduction;
  std::vector<Int> power_traces;
  RatMat trace_form;
  RatMat trace_form_inv;
};

EtaleAlgebra EtaleAlgebra::make(const IntPoly& h) {
  if (h.degree() < 1 || !h.is_monic())
    throw Error(ErrorCode::InvalidArgument, "modulus must be monic of degree >= 1");
  if (!is_squarefree(h)) throw Error(ErrorCode::NotSquarefree, "gcd(h, h') is not constant for h = " + to_string(h));

  auto d = std::make_shared<Data>();
  d->h = h;
  const int n = h.degree();
  d->n = n;
  const auto un = static_cast<std::size_t>(n);

  d->reduction.assign(2 * un - 1, std::vector<Int>(un, Int(0)));
  for (std::size_t k = 0; k < un; ++k) d->reduction[k][k] = 1;
  for (std::size_t k = un; k + 1 < 2 * un; ++k) {
    // x^k = x * x^{k-1}; shift and reduce x^n = -sum h_i x^i.
    const auto& prev = d->reduction[k - 1];
    std::vector<Int> cur(un, Int(0));
    const Int top = prev[un - 1];
    for (std::size_t i = 1; i < un; ++i) cur[i] = prev[i - 1];
    for (std::size_t i = 0; i < un; ++i) cur[i] -= top * h.coeff(i);
    d->reduction[k] = std::move(cur);
  }

  // Newton's identities with c_i the coefficient of x^{n-i}.
  std::vector<Int> s(2 * un, Int(0));
  s[0] = n;
  for (std::size_t k = 1; k < 2 * un; ++k) {
    Int acc(0);
    for (std::size_t i = 1; i <= k && i <= un; ++i) {
      const Int ci = h.coeff(un - i);
      if (i < k) acc += ci * s[k - i];
      else acc += Int(static_cast<unsigned long>(k)) * ci;
    }
    s[k] = -acc;
  }
  d->power_traces = s;

  d->trace_form = RatMat(un, un);
  for (std::size_t i = 0; i < un; ++i)
    for (std::size_t j = 0; j < un; ++j) d->trace_form(i, j) = Rat(s[i + j]);
  auto tinv = inverse(d->trace_form);
  if (!tinv) throw Error(ErrorCode::DegenerateTrace, "trace form is singular");
  d->trace_form_inv = std::move(*tinv);
  return EtaleAlgebra(std::move(d));
}

int EtaleAlgebra::dim() const { return d_->n; }
const IntPoly& EtaleAlgebra::modulus() const { return d_->h; }
const RatMat& EtaleAlgebra::trace_form() const { return d_->trace_form; }
const RatMat& EtaleAlgebra::trace_form_inverse() const { return d_->trace_form_inv; }
const std::vector<Int>& EtaleAlgebra::power_traces() const { return d_->power_traces; }

AlgElem EtaleAlgebra::zero() const { return scalar(Rat(0)); }
AlgElem EtaleAlgebra::one() const { return scalar(Rat(1)); }

AlgElem EtaleAlgebra::gen() const {
  std::vector<Rat> c(static_cast<std::size_t>(dim()), Rat(0));
  if (dim() == 1) c[0] = Rat(-d_->h.coeff(0));
  else c[1] = 1;
  return AlgElem(*this, std::move(c));
}

AlgElem EtaleAlgebra::scalar(const Rat& v) const {
  std::vector<Rat> c(static_cast<std::size_t>(dim()), Rat(0));
  c[0] = v;
  return AlgElem(*this, std::move(c));
}

AlgElem EtaleAlgebra::element(std::vector<Rat> coords) const { return AlgElem(*this, std::move(coords)); }

AlgElem EtaleAlgebra::element(const std::vector<Int>& coords) const {
  std::vector<Rat> c;
  c.reserve(coords.size());
  for (const auto& v : coords) c.emplace_back(v);
  return AlgElem(*this, std::move(c));
}

std::vector<Rat> EtaleAlgebra::multiply(const std::vector<Rat>& a, const std::vector<Rat>& b) const {
  const auto un = static_cast<std::size_t>(d_->n);
  std::vector<Rat> prod(2 * un - 1, Rat(0));
  for (std::size_t i = 0; i < un; ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < un; ++j)
      if (b[j] != 0) prod[i + j] += a[i] * b[j];
  }
  std::vector<Rat> out(prod.begin(), prod.begin() + static_cast<long>(un));
  for (std::size_t k = un; k < prod.size(); ++k) {
    if (prod[k] == 0) continue;
    const auto& red = d_->reduction[k];
    for (std::size_t i = 0; i < un; ++i)
      if (red[i] != 0) out[i] += prod[k] * Rat(red[i]);
  }
  return out;
}

AlgElem::AlgElem(EtaleAlgebra parent, std::vector<Rat> coords) : parent_(std::move(parent)), c_(std::move(coords)) {
  if (static_cast<int>(c_.size()) != parent_.dim())
    throw Error(ErrorCode::InvalidArgument, "coordinate vector length differs from algebra dimension");
}

bool AlgElem::is_zero() const {
  for (const auto& v : c_)
    if (v != 0) return false;
  return true;
}

RatMat AlgElem::mul_matrix() const {
  const auto n = c_.size();
  RatMat m(n, n);
  std::vector<Rat> e(n, Rat(0));
  for (std::size_t j = 0; j < n; ++j) {
    e[j] = 1;
    std::vector<Rat> col = parent_.multiply(c_, e);
    for (std::size_t i = 0; i < n; ++i) m(i, j) = col[i];
    e[j] = 0;
  }
  return m;
}

AlgElem AlgElem::operator-() const {
  std::vector<Rat> c = c_;
  for (auto& v : c) v = -v;
  return AlgElem(parent_, std::move(c));
}

AlgElem operator+(const AlgElem& a, const AlgElem& b) {
  std::vector<Rat> c = a.c_;
  for (std::size_t i = 0; i < c.size(); ++i) c[i] += b.c_[i];
  return AlgElem(a.parent_, std::move(c));
}

AlgElem operator-(const AlgElem& a, const AlgElem& b) {
  std::vector<Rat> c = a.c_;
  for (std::size_t i = 0; i < c.size(); ++i) c[i] -= b.c_[i];
  return AlgElem(a.parent_, std::move(c));
}

AlgElem operator*(const AlgElem& a, const AlgElem& b) { return AlgElem(a.parent_, a.parent_.multiply(a.c_, b.c_)); }

AlgElem operator*(const Rat& s, const AlgElem& a) {
  std::vector<Rat> c = a.c_;
  for (auto& v : c) v *= s;
  return AlgElem(a.parent_, std::move(c));
}

AlgElem AlgElem::pow(unsigned long e) const {
  AlgElem result = parent_.one();
  AlgElem base = *this;
  while (e > 0) {
    if (e & 1ul) result = result * base;
    e >>= 1;
    if (e) base = base * base;
  }
  return result;
}

AlgElem mul(const AlgElem& a, const AlgElem& b) { return a * b; }

AlgElem inv(const AlgElem& a) {
  std::vector<Rat> e1(static_cast<std::size_t>(a.dim()), Rat(0));
  e1[0] = 1;
  auto x = solve(a.mul_matrix(), e1);
  if (!x) throw Error(ErrorCode::ZeroDivisor, "element is a zero divisor");
  return AlgElem(a.parent(), std::move(*x));
}

bool is_unit(const AlgElem& a) { return determinant(a.mul_matrix()) != 0; }

RatPoly charpoly(const AlgElem& a) { return RatPoly(charpoly_coeffs(a.mul_matrix())); }

Rat trace(const AlgElem& a) { return trace(a.mul_matrix()); }

Rat norm(const AlgElem& a) { return determinant(a.mul_matrix()); }

RatPoly transformed_charpoly(const AlgElem& a, const Rat& b, const Rat& c) {
  if (b == 0) throw Error(ErrorCode::InvalidArgument, "transformed_charpoly needs b != 0");
  const RatPoly h = charpoly(a);
  const Rat binv = 1 / b;
  RatPoly sub = compose_linear(h, binv, -c * binv);
  return sub * pow_rat(b, static_cast<unsigned long>(a.dim()));
}

RatPoly reciprocal_charpoly(const AlgElem& a) {
  const RatPoly h = charpoly(a);
  const Rat h0 = h.coeff(0);
  if (h0 == 0) throw Error(ErrorCode::ZeroDivisor, "reciprocal of a zero divisor");
  return reverse(h, a.dim()) * Rat(1 / h0);
}

RatPoly charpoly_scaled_inverse(const AlgElem& a, Rat d) {
  d.canonicalize();
  if (d == 0) throw Error(ErrorCode::InvalidArgument, "charpoly_scaled_inverse needs d != 0");
  const RatPoly h = charpoly(a);
  const int r = a.dim();
  // Taylor coefficients of h at 1: t_k = h^{(k)}(1) / k!.
  const RatPoly shifted = compose_linear(h, Rat(1), Rat(1));
  const Rat h1 = shifted.coeff(0);
  if (h1 == 0) throw Error(ErrorCode::ZeroDivisor, "1 - a is not a unit");
  std::vector<Rat> out(static_cast<std::size_t>(r + 1), Rat(0));
  for (int i = 0; i <= r; ++i) {
    const int k = r - i;
    Rat v = pow_rat(d, static_cast<unsigned long>(k)) * shifted.coeff(static_cast<std::size_t>(k)) / h1;
    if ((r + i) % 2 != 0) v = -v;
    out[static_cast<std::size_t>(i)] = v;
  }
  return RatPoly(std::move(out));
}

bool is_q_symmetric(const IntPoly& h, const Int& q) {
  const int deg = h.degree();
  if (deg < 0 || deg % 2 != 0) return false;
  const int g = deg / 2;
  // With ascending coefficients: a_i = q^{g-i} a_{2g-i} for 0 <= i <= g.
  for (int i = 0; i <= g; ++i) {
    const Int top = h.coeff(static_cast<std::size_t>(deg - i));
    if (h.coeff(static_cast<std::size_t>(i)) != pow_int(q, static_cast<unsigned long>(g - i)) * top) return false;
  }
  return true;
}

Conjugation::Conjugation(EtaleAlgebra alg, Int q) : alg_(std::move(alg)), q_(std::move(q)) {
  const IntPoly& h = alg_.modulus();
  if (h.coeff(0) == 0) throw Error(ErrorCode::ZeroDivisor, "x is not a unit since h(0) = 0");
  if (!is_q_symmetric(h, q_))
    throw Error(ErrorCode::NotQSymmetric, "h = " + to_string(h) + " fails the functional equation for q = " + q_.get_str());
  const AlgElem pibar = Rat(q_) * inv(alg_.gen());
  const auto n = static_cast<std::size_t>(alg_.dim());
  m_ = RatMat(n, n);
  AlgElem p = alg_.one();
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t i = 0; i < n; ++i) m_(i, j) = p.coords()[i];
    p = p * pibar;
  }
}

std::vector<Rat> Conjugation::apply(const std::vector<Rat>& coords) const { return times_col(m_, coords); }

AlgElem Conjugation::apply(const AlgElem& a) const { return AlgElem(alg_, apply(a.coords())); }

AlgElem conjugate(const AlgElem& a, const Int& q) { return Conjugation(a.parent(), q).apply(a); }

}  // namespace avfq
