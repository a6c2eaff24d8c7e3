#include "avfq/real_roots.hpp"

#include <vector>

#include "avfq/error.hpp"

namespace avfq {

QuadIrr::QuadIrr(Rat a, Rat b, Int radicand) : a_(std::move(a)), b_(std::move(b)), d_(std::move(radicand)) {
  if (d_ < 0) throw Error(ErrorCode::InvalidArgument, "QuadIrr radicand must be non-negative");
  if (b_ == 0 || d_ == 0) {
    b_ = 0;
    d_ = 0;
  } else if (is_perfect_square(d_)) {
    Int r;
    mpz_sqrt(r.get_mpz_t(), d_.get_mpz_t());
    a_ += b_ * Rat(r);
    b_ = 0;
    d_ = 0;
  }
}

int QuadIrr::sign() const {
  const int sa = sgn(a_);
  const int sb = sgn(b_);
  if (sb == 0) return sa;
  if (sa == 0 || sa == sb) return sb;
  // Opposite signs: compare a^2 with b^2 * d.
  const Rat lhs = a_ * a_;
  const Rat rhs = b_ * b_ * Rat(d_);
  if (lhs > rhs) return sa;
  if (lhs < rhs) return sb;
  return 0;
}

QuadIrr QuadIrr::evaluate(const RatPoly& p) const {
  Rat x(0), y(0);
  const Rat d(d_);
  for (auto it = p.coeffs().rbegin(); it != p.coeffs().rend(); ++it) {
    // (x + y s)(a + b s) with s^2 = d.
    Rat nx = x * a_ + y * b_ * d + *it;
    Rat ny = x * b_ + y * a_;
    x = std::move(nx);
    y = std::move(ny);
  }
  return QuadIrr(x, y, d_);
}

QuadIrr operator-(const QuadIrr& x, const QuadIrr& y) {
  if (x.d_ != 0 && y.d_ != 0 && x.d_ != y.d_)
    throw Error(ErrorCode::InvalidArgument, "QuadIrr values from different quadratic fields");
  const Int d = x.d_ != 0 ? x.d_ : y.d_;
  return QuadIrr(x.a_ - y.a_, x.b_ - y.b_, d);
}

namespace {

std::vector<RatPoly> sturm_chain(const RatPoly& g) {
  std::vector<RatPoly> chain;
  RatPoly p0 = squarefree_part(g);
  chain.push_back(p0);
  if (p0.degree() <= 0) return chain;
  chain.push_back(p0.derivative());
  for (;;) {
    const RatPoly& a = chain[chain.size() - 2];
    const RatPoly& b = chain.back();
    RatPoly r = divmod(a, b).second;
    if (r.is_zero()) break;
    chain.push_back(-r);
  }
  return chain;
}

int variations(const std::vector<int>& signs) {
  int v = 0;
  int last = 0;
  for (int s : signs) {
    if (s == 0) continue;
    if (last != 0 && s != last) ++v;
    last = s;
  }
  return v;
}

int variations_at(const std::vector<RatPoly>& chain, const QuadIrr& x) {
  std::vector<int> s;
  s.reserve(chain.size());
  for (const auto& p : chain) s.push_back(x.evaluate(p).sign());
  return variations(s);
}

// Signs at -infinity (dir = -1) or +infinity (dir = +1).
int variations_at_infinity(const std::vector<RatPoly>& chain, int dir) {
  std::vector<int> s;
  for (const auto& p : chain) {
    int lead = sgn(p.leading());
    if (dir < 0 && p.degree() % 2 == 1) lead = -lead;
    s.push_back(lead);
  }
  return variations(s);
}

}  // namespace

int count_real_roots(const RatPoly& g, const QuadIrr& lo, const QuadIrr& hi) {
  if (g.is_zero()) throw Error(ErrorCode::InvalidArgument, "count_real_roots of the zero polynomial");
  if (!(lo <= hi)) return 0;
  std::vector<RatPoly> chain = sturm_chain(g);
  if (chain.front().degree() <= 0) return 0;
  // V(lo) - V(hi) counts roots in (lo, hi]; add lo itself when it is a root.
  int count = variations_at(chain, lo) - variations_at(chain, hi);
  if (lo.evaluate(chain.front()).sign() == 0) ++count;
  return count;
}

int count_real_roots(const IntPoly& g, const QuadIrr& lo, const QuadIrr& hi) {
  return count_real_roots(to_rat(g), lo, hi);
}

int count_real_roots(const RatPoly& g) {
  if (g.is_zero()) throw Error(ErrorCode::InvalidArgument, "count_real_roots of the zero polynomial");
  std::vector<RatPoly> chain = sturm_chain(g);
  if (chain.front().degree() <= 0) return 0;
  return variations_at_infinity(chain, -1) - variations_at_infinity(chain, +1);
}

}  // namespace avfq
