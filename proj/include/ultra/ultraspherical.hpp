#pragma once

#include <cmath>
#include <stdexcept>
#include <type_traits>
#include <utility>
#include <vector>

#include "ultra/polynomial.hpp"
#include "ultra/rational.hpp"

namespace ultra {

/// Degree and family parameter of an ultraspherical polynomial P_n^(lambda).
/// T is Rational (exact mode) or double (floating mode). lambda = 0 is
/// handled throughout in the Chebyshev-T normalization: the standard one
/// degenerates there (p_1 = 2*lambda*x vanishes identically), while every
/// ratio-level quantity has a well-defined lambda -> 0 limit realized by T_n.
template <typename T>
struct UltraParams {
  int n = 0;
  T lambda{};
};

template <typename T>
inline constexpr T lambda_lower_limit() {
  if constexpr (std::is_floating_point_v<T>)
    return T(-0.5);
  else
    return T(Rational(-1, 2));
}

template <typename T>
UltraParams<T> make_params(int n, T lambda) {
  if (n < 0) throw std::invalid_argument("degree must be nonnegative");
  if (!(lambda > lambda_lower_limit<T>())) throw std::invalid_argument("lambda must exceed -1/2");
  return UltraParams<T>{n, std::move(lambda)};
}

/// Scaled value/derivative pair: the true pair is (value, derivative) * 2^scale_exponent.
/// Exact mode never scales, so scale_exponent stays 0 there.
template <typename T>
struct PolyValuePair {
  T value{};
  T derivative{};
  int scale_exponent = 0;
};

namespace detail {

// Joint state for degrees n-1 and n, all four entries sharing one
// power-of-two scale (floating mode only).
template <typename T>
struct JointEval {
  T prev_value{}, prev_derivative{};
  T value{}, derivative{};
  int scale_exponent = 0;
};

template <typename T>
void rescale_if_needed(JointEval<T>& s) {
  if constexpr (std::is_floating_point_v<T>) {
    constexpr T threshold = T(8.452712498170644e270);  // 2^900
    if (std::abs(s.value) > threshold || std::abs(s.derivative) > threshold) {
      const T f = std::ldexp(T(1), -512);
      s.prev_value *= f;
      s.prev_derivative *= f;
      s.value *= f;
      s.derivative *= f;
      s.scale_exponent += 512;
    }
  }
}

// Forward recurrence; value step is the three-term relation
// (k+1) p_{k+1} = 2(k+lambda) x p_k - (k+2*lambda-1) p_{k-1},
// derivative step is p_{k+1}' = (k+2*lambda) p_k + x p_k'.
// For lambda = 0 the Chebyshev-T recurrence is used instead.
template <typename T>
JointEval<T> joint_eval(const UltraParams<T>& params, const T& x) {
  JointEval<T> s;
  s.prev_value = T(1);
  s.prev_derivative = T(0);
  if (params.n == 0) {
    s.value = T(1);
    s.derivative = T(0);
    return s;
  }
  const T& lam = params.lambda;
  const bool chebyshev_t = lam == T(0);
  s.value = chebyshev_t ? x : T(2) * lam * x;
  s.derivative = chebyshev_t ? T(1) : T(2) * lam;
  for (int k = 1; k < params.n; ++k) {
    T next, dnext;
    if (chebyshev_t) {
      next = T(2) * x * s.value - s.prev_value;
      dnext = T(2) * s.value + T(2) * x * s.derivative - s.prev_derivative;
    } else {
      const T tk = T(k);
      next = (T(2) * (tk + lam) * x * s.value - (tk + T(2) * lam - T(1)) * s.prev_value) / (tk + T(1));
      dnext = (tk + T(2) * lam) * s.value + x * s.derivative;
    }
    s.prev_value = s.value;
    s.prev_derivative = s.derivative;
    s.value = next;
    s.derivative = dnext;
    rescale_if_needed(s);
  }
  return s;
}

}  // namespace detail

/// p_n(x) and p_n'(x) by joint forward recurrence. Exact for rational inputs.
template <typename T>
PolyValuePair<T> eval_with_derivative(const UltraParams<T>& params, const T& x) {
  const auto s = detail::joint_eval(params, x);
  return {s.value, s.derivative, s.scale_exponent};
}

enum class RatioMethod { direct, ratio_recursion, zero_sum };

template <typename T>
struct RatioSample {
  T x{};
  T u{};
  RatioMethod method = RatioMethod::ratio_recursion;
};

/// u_n(x) by the overflow-free recursion
/// u_{k+1} = (k+1) (k+2*lambda + x u_k) / ((k+2*lambda) x + (x^2-1) u_k),
/// seeded with u_1 = 1/x. Valid for all lambda > -1/2 including 0: the
/// recursion is normalization-free and continuous in lambda.
template <typename T>
T ratio_recursion(int n, const T& lambda, const T& x) {
  T u = T(1) / x;
  const T xx1 = x * x - T(1);
  for (int k = 1; k < n; ++k) {
    const T a = T(k) + T(2) * lambda;
    u = T(k + 1) * (a + x * u) / (a * x + xx1 * u);
  }
  return u;
}

template <typename T>
struct ZeroSet {
  std::vector<T> zeros;  // all n zeros, ascending, in (-1, 1)
  T width{};             // achieved refinement width
};

/// Zeros of p_n by recursive interlacing: the zeros of p_{k-1} together with
/// the endpoints -1, 1 bracket those of p_k, and each bracket holds exactly
/// one sign change. Bisection is exact when T is Rational.
template <typename T>
ZeroSet<T> zeros(const UltraParams<T>& params, const T& width) {
  if (params.n < 1) throw std::invalid_argument("zeros: degree must be >= 1");
  if (!(width > T(0))) throw std::invalid_argument("zeros: width must be positive");
  auto sign_at = [&](int degree, const T& x) {
    const auto s = detail::joint_eval(UltraParams<T>{degree, params.lambda}, x);
    return s.value > T(0) ? 1 : (s.value < T(0) ? -1 : 0);
  };
  std::vector<T> prev{};  // zeros of p_{k-1}
  std::vector<T> cur{T(0)};
  T achieved = T(0);
  for (int k = 2; k <= params.n; ++k) {
    prev = std::move(cur);
    cur.clear();
    std::vector<T> brackets;
    brackets.push_back(T(-1));
    brackets.insert(brackets.end(), prev.begin(), prev.end());
    brackets.push_back(T(1));
    for (std::size_t i = 0; i + 1 < brackets.size(); ++i) {
      T lo = brackets[i], hi = brackets[i + 1];
      int slo = sign_at(k, lo);
      int iterations = 0;
      while (hi - lo > width && iterations < 2000) {
        const T mid = (lo + hi) / T(2);
        if (mid == lo || mid == hi) break;  // floating resolution exhausted
        const int sm = sign_at(k, mid);
        if (sm == 0) {  // exact hit (rational bisection)
          lo = hi = mid;
          break;
        }
        if (sm == slo)
          lo = mid;
        else
          hi = mid;
        ++iterations;
      }
      if (k == params.n && hi - lo > achieved) achieved = hi - lo;
      cur.push_back((lo + hi) / T(2));
    }
  }
  if (params.n == 1) achieved = T(0);
  return {std::move(cur), achieved};
}

/// Sum-over-zeros form of x*u_n(x) - n (paper's partial fractions).
template <typename T>
T zero_sum_correction(const ZeroSet<T>& zs, const T& x) {
  T acc = T(0);
  for (const auto& z : zs.zeros) acc += z * z / (x * x - z * z);
  return acc;
}

template <typename T>
T ratio_zero_sum(int n, const T& x, const ZeroSet<T>& zs) {
  return (T(n) + zero_sum_correction(zs, x)) / x;
}

/// u_n(x) = p_n'(x)/p_n(x) for x >= 1 by the requested method.
template <typename T>
RatioSample<T> ratio_u(const UltraParams<T>& params, const T& x, RatioMethod method) {
  if (params.n < 1) throw std::invalid_argument("ratio_u: degree must be >= 1");
  if (!(x >= T(1))) throw std::invalid_argument("ratio_u: requires x >= 1");
  switch (method) {
    case RatioMethod::direct: {
      const auto pair = detail::joint_eval(params, x);
      return {x, pair.derivative / pair.value, method};
    }
    case RatioMethod::ratio_recursion:
      return {x, ratio_recursion(params.n, params.lambda, x), method};
    case RatioMethod::zero_sum: {
      if constexpr (std::is_floating_point_v<T>) {
        const auto zs = zeros(params, T(1e-14));
        return {x, ratio_zero_sum(params.n, x, zs), method};
      } else {
        throw std::invalid_argument("ratio_u: zero-sum method requires floating-point mode");
      }
    }
  }
  throw std::invalid_argument("ratio_u: unknown method");
}

/// u_n(1) = n(n+2*lambda)/(2*lambda+1), exact.
inline Rational endpoint_u(int n, const Rational& lambda) {
  if (n < 0) throw std::invalid_argument("endpoint_u: degree must be nonnegative");
  const Rational nn(n);
  return nn * (nn + 2 * lambda) / (2 * lambda + 1);
}

/// psi(x) = x^2 p_{n-1}'(x)/p_n(x), monotone decreasing on [1, inf).
/// At lambda = 0 the cross-degree ratio needs the limit rescaling
/// n/(n-1) * x^2 T_{n-1}'(x)/T_n(x), from P_m^(lambda) ~ (2 lambda/m) T_m.
template <typename T>
T psi(const UltraParams<T>& params, const T& x) {
  if (params.n < 1) throw std::invalid_argument("psi: degree must be >= 1");
  if (!(x >= T(1))) throw std::invalid_argument("psi: requires x >= 1");
  if (params.n == 1) return T(0);
  const auto s = detail::joint_eval(params, x);
  T value = x * x * s.prev_derivative / s.value;
  if (params.lambda == T(0)) value = value * T(params.n) / T(params.n - 1);
  return value;
}

/// Partial-fraction form psi(x) = sum_k x_k^2 / (1 - (x_k/x)^2).
template <typename T>
T psi_via_zeros(const UltraParams<T>& params, const T& x, const ZeroSet<T>& zs) {
  T acc = T(0);
  for (const auto& z : zs.zeros) acc += z * z / (T(1) - (z / x) * (z / x));
  return acc;
}

/// lim_{x->inf} psi(x) = n(n-1)/(2(n+lambda-1)); zero for n = 1.
inline Rational psi_limit(int n, const Rational& lambda) {
  if (n <= 1) return Rational(0);
  return Rational(n) * Rational(n - 1) / (2 * (Rational(n) + lambda - 1));
}

/// Leading coefficient a_m = 2^m lambda(lambda+1)...(lambda+m-1)/m!.
/// For the lambda = 0 (Chebyshev-T) normalization this is 2^(m-1) for m >= 1.
inline Rational leading_coefficient(int m, const Rational& lambda) {
  if (m < 0) throw std::invalid_argument("leading_coefficient: degree must be nonnegative");
  if (m == 0) return Rational(1);
  if (lambda == 0) return Rational(pow_rational(Rational(2), m - 1));
  Rational a(1);
  for (int i = 0; i < m; ++i) a *= 2 * (lambda + i);
  for (int i = 2; i <= m; ++i) a /= i;
  return a;
}

enum class ChebKind { first, second };

/// T_n and U_n on [1, inf) via (x +- sqrt(x^2-1))^n.
inline double chebyshev_closed_form(ChebKind kind, int n, double x) {
  if (n < 0) throw std::invalid_argument("chebyshev_closed_form: degree must be nonnegative");
  if (!(x >= 1.0)) throw std::invalid_argument("chebyshev_closed_form: requires x >= 1");
  const double s = std::sqrt(x * x - 1.0);
  const double w = x + s;
  if (kind == ChebKind::first) return 0.5 * (std::pow(w, n) + std::pow(w, -n));
  if (s == 0.0) return static_cast<double>(n + 1);
  return (std::pow(w, n + 1) - std::pow(w, -(n + 1))) / (2.0 * s);
}

/// Exact variant for rational points where s = sqrt(x^2-1) is itself
/// rational (the conjugate parametrization provides these).
inline Rational chebyshev_closed_form(ChebKind kind, int n, const Rational& x, const Rational& s) {
  if (n < 0) throw std::invalid_argument("chebyshev_closed_form: degree must be nonnegative");
  if (s * s != x * x - 1 || s < 0 || x < 1)
    throw std::invalid_argument("chebyshev_closed_form: s must be sqrt(x^2-1) >= 0, x >= 1");
  const Rational w = x + s;
  if (kind == ChebKind::first) return (pow_rational(w, n) + pow_rational(w, -n)) / 2;
  if (s == 0) return Rational(n + 1);
  return (pow_rational(w, n + 1) - pow_rational(w, -(n + 1))) / (2 * s);
}

/// Exact coefficient vector of p_n (Chebyshev-T coefficients when lambda = 0).
inline RationalPoly exact_poly(const UltraParams<Rational>& params) {
  const Rational& lam = params.lambda;
  const RationalPoly x = RationalPoly::variable();
  RationalPoly prev = RationalPoly::constant(1);
  if (params.n == 0) return prev;
  const bool chebyshev_t = lam == 0;
  RationalPoly cur = chebyshev_t ? x : 2 * lam * x;
  for (int k = 1; k < params.n; ++k) {
    RationalPoly next;
    if (chebyshev_t) {
      next = 2 * (x * cur) - prev;
    } else {
      next = (2 * (Rational(k) + lam) * (x * cur) - (Rational(k) + 2 * lam - 1) * prev) *
             Rational(1, k + 1);
    }
    prev = std::move(cur);
    cur = std::move(next);
  }
  return cur;
}

}  // namespace ultra
