#pragma once

#include <utility>
#include <vector>

#include "ultra/polynomial.hpp"
#include "ultra/rational.hpp"

namespace ultra {

/// Rescales p by a positive rational so that its coefficients become
/// coprime integers. Positive scaling keeps every sign evaluation intact,
/// which is all Sturm chains care about, and it stops coefficient blowup
/// in the remainder sequence.
inline RationalPoly make_primitive(const RationalPoly& p) {
  if (p.is_zero()) return p;
  Int den_lcm = 1;
  for (const auto& c : p.coefficients()) den_lcm = lcm(den_lcm, denominator(c));
  Int num_gcd = 0;
  for (const auto& c : p.coefficients()) num_gcd = gcd(num_gcd, numerator(c) * (den_lcm / denominator(c)));
  const Rational scale(den_lcm, num_gcd);  // positive: num_gcd > 0 for nonzero p
  return p * scale;
}

/// gcd(p, q), returned primitive with positive leading coefficient.
inline RationalPoly poly_gcd(RationalPoly a, RationalPoly b) {
  a = make_primitive(a);
  b = make_primitive(b);
  while (!b.is_zero()) {
    auto [q, r] = divmod(a, b);
    a = std::move(b);
    b = make_primitive(r);
  }
  if (a.is_zero()) return a;
  if (sgn(a.leading()) < 0) a = -a;
  return a;
}

/// p / gcd(p, p'): same distinct roots as p, all simple.
inline RationalPoly square_free_part(const RationalPoly& p) {
  if (p.is_zero()) throw std::invalid_argument("square-free part of zero polynomial");
  if (p.degree() == 0) return RationalPoly::constant(1);
  const RationalPoly g = poly_gcd(p, p.derivative());
  return make_primitive(divmod(p, g).first);
}

/// Canonical Sturm sequence of the square-free part of p. With the head
/// square-free, the last element is a nonzero constant, and the variation
/// count V(x) (zeros skipped) is right-continuous, so V(a) - V(b) counts
/// the distinct real roots of p in the half-open interval (a, b].
class SturmChain {
 public:
  explicit SturmChain(const RationalPoly& p) {
    RationalPoly cur = square_free_part(p);
    seq_.push_back(cur);
    if (cur.degree() == 0) return;
    RationalPoly next = make_primitive(cur.derivative());
    while (!next.is_zero()) {
      seq_.push_back(next);
      RationalPoly rem = make_primitive(-divmod(cur, next).second);
      cur = std::move(next);
      next = std::move(rem);
    }
  }

  const std::vector<RationalPoly>& sequence() const { return seq_; }

  int variations_at(const Rational& x) const {
    int count = 0;
    int prev = 0;
    for (const auto& p : seq_) {
      const int s = sgn(p.eval(x));
      if (s == 0) continue;
      if (prev != 0 && s != prev) ++count;
      prev = s;
    }
    return count;
  }

  /// Distinct real roots in (a, b].
  int count_roots_in(const Rational& a, const Rational& b) const {
    if (!(a < b)) throw std::invalid_argument("count_roots_in: requires a < b");
    return variations_at(a) - variations_at(b);
  }

 private:
  std::vector<RationalPoly> seq_;
};

inline int count_roots_in(const RationalPoly& p, const Rational& a, const Rational& b) {
  if (p.is_zero()) throw std::invalid_argument("count_roots_in: zero polynomial");
  return SturmChain(p).count_roots_in(a, b);
}

struct RootInterval {
  Rational lo, hi;  // lo == hi when the root was hit exactly
};

namespace detail {

struct Isolator {
  const RationalPoly& q;  // square-free
  const SturmChain& chain;
  Rational width;
  std::vector<RootInterval>* out;

  // One simple root in (lo, hi], q(lo) != 0. Bisect on sign changes.
  void refine(Rational lo, Rational hi) const {
    if (q.eval(hi) == 0) {
      out->push_back({hi, hi});
      return;
    }
    const int slo = sgn(q.eval(lo));
    while (hi - lo > width) {
      const Rational mid = (lo + hi) / 2;
      const int sm = sgn(q.eval(mid));
      if (sm == 0) {
        out->push_back({mid, mid});
        return;
      }
      (sm == slo ? lo : hi) = mid;
    }
    out->push_back({lo, hi});
  }

  // k roots known to lie in (lo, hi], q(lo) != 0.
  void split(const Rational& lo, const Rational& hi, int k) const {
    if (k == 0) return;
    if (k == 1) {
      refine(lo, hi);
      return;
    }
    // Pick a subdivision point that is not itself a root, stepping toward
    // hi until clear (finitely many roots, so this terminates).
    Rational mid = (lo + hi) / 2;
    while (q.eval(mid) == 0) mid = (mid + hi) / 2;
    const int left = chain.count_roots_in(lo, mid);
    split(lo, mid, left);
    split(mid, hi, k - left);
  }
};

}  // namespace detail

/// Disjoint ordered intervals, each containing exactly one distinct real
/// root of p from (a, b], refined to the requested width.
inline std::vector<RootInterval> isolate_roots(const RationalPoly& p, const Rational& a,
                                               const Rational& b, const Rational& width) {
  if (p.is_zero()) throw std::invalid_argument("isolate_roots: zero polynomial");
  if (!(a < b)) throw std::invalid_argument("isolate_roots: requires a < b");
  const RationalPoly q = square_free_part(p);
  if (q.degree() == 0) return {};
  const SturmChain chain(p);
  const int total = chain.count_roots_in(a, b);
  std::vector<RootInterval> out;
  if (total == 0) return out;

  // The left endpoint is excluded from (a, b]; nudge it right if it happens
  // to be a root so that sign-based refinement sees a nonzero value there.
  Rational lo = a;
  if (q.eval(lo) == 0) {
    Rational step = (b - a) / 2;
    while (true) {
      const Rational cand = a + step;
      if (chain.count_roots_in(a, cand) == 0) {
        lo = cand;
        break;
      }
      step /= 2;
    }
  }
  detail::Isolator{q, chain, width, &out}.split(lo, b, total);
  return out;
}

}  // namespace ultra
