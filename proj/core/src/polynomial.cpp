#include "avfq/polynomial.hpp"

#include <sstream>

#include "avfq/error.hpp"

namespace avfq {

RatPoly to_rat(const IntPoly& p) {
  std::vector<Rat> c;
  c.reserve(p.coeffs().size());
  for (const auto& v : p.coeffs()) c.emplace_back(v);
  return RatPoly(std::move(c));
}

bool to_int(const RatPoly& p, IntPoly& out) {
  std::vector<Int> c;
  c.reserve(p.coeffs().size());
  for (const auto& v : p.coeffs()) {
    if (!is_integral(v)) return false;
    c.push_back(v.get_num());
  }
  out = IntPoly(std::move(c));
  return true;
}

std::pair<RatPoly, RatPoly> divmod(const RatPoly& a, const RatPoly& b) {
  if (b.is_zero()) throw Error(ErrorCode::ZeroDivisor, "polynomial division by zero");
  std::vector<Rat> r = a.coeffs();
  const int db = b.degree();
  if (a.degree() < db) return {RatPoly(), a};
  std::vector<Rat> q(static_cast<std::size_t>(a.degree() - db + 1), Rat(0));
  const Rat lead = b.leading();
  for (int k = a.degree(); k >= db; --k) {
    Rat c = r[static_cast<std::size_t>(k)] / lead;
    if (c == 0) continue;
    q[static_cast<std::size_t>(k - db)] = c;
    for (int j = 0; j <= db; ++j) r[static_cast<std::size_t>(k - db + j)] -= c * b.coeffs()[static_cast<std::size_t>(j)];
  }
  return {RatPoly(std::move(q)), RatPoly(std::move(r))};
}

RatPoly make_monic(const RatPoly& p) {
  if (p.is_zero()) return p;
  Rat inv = 1 / p.leading();
  return p * inv;
}

RatPoly gcd(const RatPoly& a, const RatPoly& b) {
  RatPoly x = a;
  RatPoly y = b;
  while (!y.is_zero()) {
    RatPoly r = divmod(x, y).second;
    x = std::move(y);
    y = std::move(r);
  }
  return make_monic(x);
}

RatPoly squarefree_part(const RatPoly& p) {
  if (p.degree() <= 0) return make_monic(p);
  RatPoly g = gcd(p, p.derivative());
  return make_monic(divmod(p, g).first);
}

bool is_squarefree(const IntPoly& p) {
  RatPoly rp = to_rat(p);
  return gcd(rp, rp.derivative()).degree() == 0;
}

RatPoly compose_linear(const RatPoly& p, const Rat& a, const Rat& b) {
  // Horner in the ring Q[x] with x replaced by a*x + b.
  RatPoly lin({b, a});
  RatPoly acc;
  for (auto it = p.coeffs().rbegin(); it != p.coeffs().rend(); ++it)
    acc = acc * lin + RatPoly::constant(*it);
  return acc;
}

IntPoly compose_linear(const IntPoly& p, const Int& a, const Int& b) {
  IntPoly lin({b, a});
  IntPoly acc;
  for (auto it = p.coeffs().rbegin(); it != p.coeffs().rend(); ++it)
    acc = acc * lin + IntPoly::constant(*it);
  return acc;
}

RatPoly reverse(const RatPoly& p, int deg) {
  std::vector<Rat> c(static_cast<std::size_t>(deg + 1), Rat(0));
  for (int i = 0; i <= p.degree() && i <= deg; ++i)
    c[static_cast<std::size_t>(deg - i)] = p.coeffs()[static_cast<std::size_t>(i)];
  return RatPoly(std::move(c));
}

Rat taylor_coeff(const IntPoly& p, const Int& x, int k) {
  // Coefficient of t^k in p(x + t) equals p^{(k)}(x) / k!.
  IntPoly shifted = compose_linear(p, Int(1), x);
  return Rat(shifted.coeff(static_cast<std::size_t>(k)));
}

namespace {

template <class T>
std::string render(const Poly<T>& p, char var) {
  if (p.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (int i = p.degree(); i >= 0; --i) {
    T c = p.coeffs()[static_cast<std::size_t>(i)];
    if (c == 0) continue;
    bool neg = c < 0;
    if (neg) c = -c;
    if (!first) os << (neg ? " - " : " + ");
    else if (neg) os << "-";
    first = false;
    bool unit = (c == 1);
    if (!unit || i == 0) os << c.get_str();
    if (i >= 1) os << var;
    if (i >= 2) os << '^' << i;
  }
  return os.str();
}

}  // namespace

std::string to_string(const IntPoly& p, char var) { return render(p, var); }
std::string to_string(const RatPoly& p, char var) { return render(p, var); }

}  // namespace avfq
