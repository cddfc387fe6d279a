#pragma once

#include <span>
#include <sstream>
#include <string>
#include <vector>

#include "ultra/conjugate_map.hpp"
#include "ultra/polynomial.hpp"
#include "ultra/rational.hpp"
#include "ultra/sturm.hpp"
#include "ultra/ultraspherical.hpp"

namespace ultra {

/// Bernstein basis polynomial b_{n,k}(t) = C(n,k) t^k (1-t)^(n-k).
template <typename T>
T bernstein(int n, int k, const T& t) {
  if (n < 0 || k < 0 || k > n) throw std::invalid_argument("bernstein: requires 0 <= k <= n");
  T acc;
  if constexpr (std::is_floating_point_v<T>)
    acc = to_double(Rational(binomial(static_cast<unsigned>(n), static_cast<unsigned>(k))));
  else
    acc = T(binomial(static_cast<unsigned>(n), static_cast<unsigned>(k)));
  const T one_minus = T(1) - t;
  for (int i = 0; i < k; ++i) acc *= t;
  for (int i = 0; i < n - k; ++i) acc *= one_minus;
  return acc;
}

/// F_n(t) = sum_k b_{n,k}(t)^2, evaluated termwise.
template <typename T>
T squared_basis_sum(int n, const T& t) {
  T acc(0);
  for (int k = 0; k <= n; ++k) {
    const T b = bernstein(n, k, t);
    acc += b * b;
  }
  return acc;
}

/// Exact degree-2n coefficient vector of F_n = sum_k C(n,k)^2 t^(2k) (1-t)^(2n-2k).
inline RationalPoly squared_basis_sum_poly(int n) {
  if (n < 0) throw std::invalid_argument("squared_basis_sum_poly: degree must be nonnegative");
  const RationalPoly one_minus_t({Rational(1), Rational(-1)});
  std::vector<RationalPoly> q_pow(static_cast<std::size_t>(2 * n) + 1);
  q_pow[0] = RationalPoly::constant(1);
  for (std::size_t j = 1; j < q_pow.size(); ++j) q_pow[j] = q_pow[j - 1] * one_minus_t;
  RationalPoly acc;
  for (int k = 0; k <= n; ++k) {
    const Int c = binomial(static_cast<unsigned>(n), static_cast<unsigned>(k));
    acc += RationalPoly::monomial(Rational(c * c), static_cast<std::size_t>(2 * k)) *
           q_pow[static_cast<std::size_t>(2 * (n - k))];
  }
  return acc;
}

/// F_n(1/2) = C(2n,n)/4^n.
inline Rational squared_basis_sum_at_half(int n) {
  return Rational(binomial(static_cast<unsigned>(2 * n), static_cast<unsigned>(n)),
                  pow(Int(4), static_cast<unsigned>(n)));
}

/// F_n(t) = (x - sqrt(x^2-1))^n P_n(x) under the conjugate map, exact.
inline Rational squared_basis_sum_via_legendre(int n, const Rational& t) {
  const ConjugateMap m = conjugate_map(t);
  const auto pair = eval_with_derivative(UltraParams<Rational>{n, Rational(1, 2)}, m.x);
  return pow_rational(m.v, n) * pair.value;
}

/// F_n'(t) = 2 (x-s)^(n-1) (s P_n'(x) - n P_n(x)), exact, t in [0, 1/2).
inline Rational squared_basis_sum_prime(int n, const Rational& t) {
  const ConjugateMap m = conjugate_map(t);
  const auto pair = eval_with_derivative(UltraParams<Rational>{n, Rational(1, 2)}, m.x);
  return 2 * pow_rational(m.v, n - 1) * (m.s * pair.derivative - Rational(n) * pair.value);
}

/// The square bracket of the second-derivative formula:
/// 2n^2 P_n(x) - (x + (2n-1) s) P_n'(x). Its sign is the sign of F_n''(t).
inline Rational convexity_bracket(int n, const ConjugateMap& m) {
  const auto pair = eval_with_derivative(UltraParams<Rational>{n, Rational(1, 2)}, m.x);
  return 2 * Rational(n) * Rational(n) * pair.value -
         (m.x + (2 * Rational(n) - 1) * m.s) * pair.derivative;
}

/// F_n''(t) = 4 (x-s)^(n-2) [2n^2 P_n(x) - (x + (2n-1) s) P_n'(x)], exact.
inline Rational squared_basis_sum_second(int n, const Rational& t) {
  const ConjugateMap m = conjugate_map(t);
  return 4 * pow_rational(m.v, n - 2) * convexity_bracket(n, m);
}

/// Exact-arithmetic record establishing convexity of F_n on [0,1] for one n.
struct ConvexityCertificate {
  int n = 0;
  RationalPoly second_derivative;      // exact coefficients of F_n''
  int root_count = 0;                  // distinct real roots in (0, 1)
  std::vector<RootInterval> roots;     // isolating intervals, ordered
  std::vector<int> flank_signs;        // signs of F_n'' strictly between/around roots
  Rational at_zero;                    // F_n''(0), equals 6n^2 - 2n
  Rational at_half;                    // F_n''(1/2)
  bool certified = false;
};

/// Certifies F_n'' >= 0 on [0,1] exactly: Sturm root count on (0,1); when
/// roots exist they are isolated and the sign is checked on both flanks, so
/// even-multiplicity touches still certify and any crossing refutes.
inline ConvexityCertificate certify_convexity(int n) {
  if (n < 1) throw std::invalid_argument("certify_convexity: requires n >= 1");
  ConvexityCertificate cert;
  cert.n = n;
  const RationalPoly f = squared_basis_sum_poly(n);
  cert.second_derivative = f.derivative().derivative();
  cert.at_zero = cert.second_derivative.eval(Rational(0));
  cert.at_half = cert.second_derivative.eval(Rational(1, 2));
  const Rational at_one = cert.second_derivative.eval(Rational(1));

  if (cert.second_derivative.degree() <= 0) {  // n = 1: constant 4
    cert.certified = cert.at_zero > 0;
    return cert;
  }
  cert.root_count = count_roots_in(cert.second_derivative, Rational(0), Rational(1));
  if (at_one == 0) --cert.root_count;  // report roots of the open interval (0,1)

  if (cert.root_count == 0) {
    cert.certified = cert.at_zero > 0 && at_one >= 0;
    return cert;
  }
  cert.roots = isolate_roots(cert.second_derivative, Rational(0), Rational(1),
                             pow_rational(Rational(1, 2), 40));
  // Sample strictly between consecutive isolating intervals (and against the
  // endpoints); none of these points can be a root, so a nonnegative F_n''
  // must evaluate positive at every one of them.
  std::vector<Rational> flanks;
  Rational left(0);
  for (const auto& iv : cert.roots) {
    flanks.push_back((left + iv.lo) / 2);
    left = iv.hi;
  }
  flanks.push_back((left + 1) / 2);
  bool ok = cert.at_zero > 0 && at_one >= 0;
  for (const auto& point : flanks) {
    const int s = sgn(cert.second_derivative.eval(point));
    cert.flank_signs.push_back(s);
    ok = ok && s > 0;
  }
  cert.certified = ok;
  return cert;
}

/// One-line JSON record per certificate; rationals rendered as "p/q" strings,
/// coefficients ascending by power.
inline std::string certificate_to_json(const ConvexityCertificate& cert) {
  std::ostringstream os;
  os << "{\"n\":" << cert.n << ",\"second_derivative_coefficients\":[";
  for (int i = 0; i <= cert.second_derivative.degree(); ++i) {
    if (i) os << ',';
    os << '"' << to_string(cert.second_derivative.coeff(static_cast<std::size_t>(i))) << '"';
  }
  os << "],\"root_count\":" << cert.root_count << ",\"roots\":[";
  for (std::size_t i = 0; i < cert.roots.size(); ++i) {
    if (i) os << ',';
    os << "{\"lo\":\"" << to_string(cert.roots[i].lo) << "\",\"hi\":\""
       << to_string(cert.roots[i].hi) << "\"}";
  }
  os << "],\"at_zero\":\"" << to_string(cert.at_zero) << "\",\"at_half\":\""
     << to_string(cert.at_half) << "\",\"verdict\":\""
     << (cert.certified ? "convex-certified" : "not-certified") << "\"}";
  return os.str();
}

struct Theorem1Point {
  Rational t;
  int sign_second_derivative = 0;
  int sign_bracket = 0;
  bool upper_bound_holds = false;  // u_n(x) <= 2n^2/(x + (2n-1) s)
};

struct Theorem1Report {
  int n = 0;
  std::vector<Theorem1Point> points;
  bool consistent = false;  // all three sign tests agree at every grid point
};

/// Checks, exactly per point, that sign F_n''(t) = sign of the bracket under
/// the conjugate map, that the identity F_n''(t) = 4 (x-s)^(n-2) * bracket
/// holds, and that the bracket is nonnegative exactly when the log-derivative
/// upper bound holds at x(t).
inline Theorem1Report theorem1_equivalence_check(int n, std::span<const Rational> t_grid) {
  if (n < 1) throw std::invalid_argument("theorem1_equivalence_check: requires n >= 1");
  Theorem1Report report;
  report.n = n;
  report.consistent = true;
  const RationalPoly second = squared_basis_sum_poly(n).derivative().derivative();
  for (const Rational& t : t_grid) {
    const ConjugateMap m = conjugate_map(t);
    const Rational bracket = convexity_bracket(n, m);
    const Rational lhs = second.eval(t);
    const auto pair = eval_with_derivative(UltraParams<Rational>{n, Rational(1, 2)}, m.x);
    const Rational u = pair.derivative / pair.value;
    // 2n^2/(x + (2n-1)s) - u has the sign of the bracket since p_n(x) > 0.
    const Rational rasa_bound = 2 * Rational(n) * Rational(n) / (m.x + (2 * Rational(n) - 1) * m.s);
    Theorem1Point pt{t, sgn(lhs), sgn(bracket), rasa_bound - u >= 0};
    const bool identity = lhs == 4 * pow_rational(m.v, n - 2) * bracket;
    report.consistent = report.consistent && identity && pt.sign_second_derivative == pt.sign_bracket &&
                        pt.upper_bound_holds == (pt.sign_bracket >= 0);
    report.points.push_back(std::move(pt));
  }
  return report;
}

struct WeakerConjecturesReport {
  int n = 0;
  bool derivative_odd_symmetric = false;  // F_n'(t) = -F_n'(1-t), coefficient-wise
  int interior_critical_points = 0;       // roots of F_n' in (0, 1); expect exactly 1
  bool critical_point_at_half = false;
  bool decreasing_left_half = false;      // F_n' <= 0 on (0, 1/2)
  Rational min_value;                     // F_n(1/2)
  bool min_value_matches = false;         // equals C(2n,n)/4^n
  bool pass = false;
};

/// The two weaker conjectures: minimum at t = 1/2, monotone on each half.
inline WeakerConjecturesReport weaker_conjectures_check(int n) {
  if (n < 1) throw std::invalid_argument("weaker_conjectures_check: requires n >= 1");
  WeakerConjecturesReport report;
  report.n = n;
  const RationalPoly f = squared_basis_sum_poly(n);
  const RationalPoly fp = f.derivative();
  report.derivative_odd_symmetric = fp.compose_affine(Rational(-1), Rational(1)) == -fp;
  report.interior_critical_points = count_roots_in(fp, Rational(0), Rational(1));
  if (fp.eval(Rational(1)) == 0) --report.interior_critical_points;
  report.critical_point_at_half = fp.eval(Rational(1, 2)) == 0;
  // Roots of F_n' in (0, 1/2] reduce to the one at 1/2, so the sign on the
  // open left half is constant; one sample pins it.
  report.decreasing_left_half = count_roots_in(fp, Rational(0), Rational(1, 2)) == 1 &&
                                report.critical_point_at_half &&
                                fp.eval(Rational(1, 4)) < 0;
  report.min_value = f.eval(Rational(1, 2));
  report.min_value_matches = report.min_value == squared_basis_sum_at_half(n);
  report.pass = report.derivative_odd_symmetric && report.interior_critical_points == 1 &&
                report.critical_point_at_half && report.decreasing_left_half &&
                report.min_value_matches;
  return report;
}

}  // namespace ultra
