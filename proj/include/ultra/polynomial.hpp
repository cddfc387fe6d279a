#pragma once

#include <algorithm>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

#include "ultra/rational.hpp"

namespace ultra {

/// Dense univariate polynomial over a commutative field T, coefficients
/// stored ascending by power. The zero polynomial has an empty coefficient
/// vector and degree -1; otherwise the trailing coefficient is nonzero.
template <typename T>
class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(std::vector<T> coeffs) : coeffs_(std::move(coeffs)) { trim(); }
  Polynomial(std::initializer_list<T> coeffs) : coeffs_(coeffs) { trim(); }

  static Polynomial zero() { return Polynomial(); }
  static Polynomial constant(T c) { return Polynomial(std::vector<T>{std::move(c)}); }
  static Polynomial variable() { return Polynomial(std::vector<T>{T(0), T(1)}); }
  static Polynomial monomial(T c, std::size_t power) {
    std::vector<T> v(power + 1, T(0));
    v[power] = std::move(c);
    return Polynomial(std::move(v));
  }

  bool is_zero() const { return coeffs_.empty(); }
  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  std::span<const T> coefficients() const { return coeffs_; }

  /// Coefficient of t^i; zero beyond the degree.
  T coeff(std::size_t i) const { return i < coeffs_.size() ? coeffs_[i] : T(0); }

  const T& leading() const {
    if (is_zero()) throw std::invalid_argument("leading coefficient of zero polynomial");
    return coeffs_.back();
  }

  friend Polynomial operator+(const Polynomial& a, const Polynomial& b) {
    std::vector<T> r(std::max(a.coeffs_.size(), b.coeffs_.size()), T(0));
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i) r[i] += a.coeffs_[i];
    for (std::size_t i = 0; i < b.coeffs_.size(); ++i) r[i] += b.coeffs_[i];
    return Polynomial(std::move(r));
  }

  friend Polynomial operator-(const Polynomial& a, const Polynomial& b) {
    std::vector<T> r(std::max(a.coeffs_.size(), b.coeffs_.size()), T(0));
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i) r[i] += a.coeffs_[i];
    for (std::size_t i = 0; i < b.coeffs_.size(); ++i) r[i] -= b.coeffs_[i];
    return Polynomial(std::move(r));
  }

  Polynomial operator-() const {
    std::vector<T> r = coeffs_;
    for (auto& c : r) c = -c;
    return Polynomial(std::move(r));
  }

  friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    if (a.is_zero() || b.is_zero()) return zero();
    std::vector<T> r(a.coeffs_.size() + b.coeffs_.size() - 1, T(0));
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i)
      for (std::size_t j = 0; j < b.coeffs_.size(); ++j)
        r[i + j] += a.coeffs_[i] * b.coeffs_[j];
    return Polynomial(std::move(r));
  }

  friend Polynomial operator*(const T& s, const Polynomial& p) {
    if (s == T(0)) return zero();
    std::vector<T> r = p.coeffs_;
    for (auto& c : r) c *= s;
    return Polynomial(std::move(r));
  }
  friend Polynomial operator*(const Polynomial& p, const T& s) { return s * p; }

  Polynomial& operator+=(const Polynomial& o) { return *this = *this + o; }
  Polynomial& operator-=(const Polynomial& o) { return *this = *this - o; }
  Polynomial& operator*=(const Polynomial& o) { return *this = *this * o; }
  Polynomial& operator*=(const T& s) { return *this = *this * s; }

  bool operator==(const Polynomial& o) const { return coeffs_ == o.coeffs_; }

  Polynomial pow(unsigned e) const {
    Polynomial r = constant(T(1));
    Polynomial b = *this;
    while (e) {
      if (e & 1u) r *= b;
      b *= b;
      e >>= 1u;
    }
    return r;
  }

  /// Formal derivative.
  Polynomial derivative() const {
    if (coeffs_.size() <= 1) return zero();
    std::vector<T> r(coeffs_.size() - 1);
    for (std::size_t i = 1; i < coeffs_.size(); ++i) r[i - 1] = T(static_cast<int>(i)) * coeffs_[i];
    return Polynomial(std::move(r));
  }

  /// Horner evaluation.
  T eval(const T& x) const {
    T acc(0);
    for (std::size_t i = coeffs_.size(); i-- > 0;) acc = acc * x + coeffs_[i];
    return acc;
  }

  /// p(a*t + b), via Horner over the affine argument.
  Polynomial compose_affine(const T& a, const T& b) const {
    const Polynomial arg({b, a});
    Polynomial acc = zero();
    for (std::size_t i = coeffs_.size(); i-- > 0;) acc = acc * arg + constant(coeffs_[i]);
    return acc;
  }

 private:
  void trim() {
    while (!coeffs_.empty() && coeffs_.back() == T(0)) coeffs_.pop_back();
  }

  std::vector<T> coeffs_;
};

using RationalPoly = Polynomial<Rational>;

/// Euclidean division over a field: a = q*b + r with deg r < deg b.
template <typename T>
std::pair<Polynomial<T>, Polynomial<T>> divmod(const Polynomial<T>& a, const Polynomial<T>& b) {
  if (b.is_zero()) throw std::invalid_argument("polynomial division by zero");
  std::vector<T> rem(a.coefficients().begin(), a.coefficients().end());
  const int db = b.degree();
  if (a.degree() < db) return {Polynomial<T>::zero(), a};
  std::vector<T> quot(static_cast<std::size_t>(a.degree() - db) + 1, T(0));
  const T& lead = b.leading();
  for (int i = a.degree(); i >= db; --i) {
    T factor = rem[static_cast<std::size_t>(i)] / lead;
    if (factor == T(0)) continue;
    quot[static_cast<std::size_t>(i - db)] = factor;
    for (int j = 0; j <= db; ++j)
      rem[static_cast<std::size_t>(i - db + j)] -= factor * b.coeff(static_cast<std::size_t>(j));
    rem[static_cast<std::size_t>(i)] = T(0);  // cancel exactly
  }
  return {Polynomial<T>(std::move(quot)), Polynomial<T>(std::move(rem))};
}

inline Polynomial<double> to_double_poly(const RationalPoly& p) {
  std::vector<double> c;
  c.reserve(static_cast<std::size_t>(p.degree() + 1));
  for (const auto& q : p.coefficients()) c.push_back(to_double(q));
  return Polynomial<double>(std::move(c));
}

}  // namespace ultra
