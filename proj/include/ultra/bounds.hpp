#pragma once

#include <array>
#include <cmath>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "ultra/conjugate_map.hpp"
#include "ultra/rational.hpp"
#include "ultra/ultraspherical.hpp"

namespace ultra {

/// The closed-form pointwise bounds on u_n(x) = p_n'(x)/p_n(x), x >= 1.
enum class BoundId {
  rasa_1_1,   // upper, lambda = 1/2:      2n^2 / (x + (2n-1) s)
  lower_1_2,  // lower, lambda > -1/2:     n(n+2L) / ((2L+1) x + (n-1) s)
  upper_1_3,  // upper, lambda in [0,1]:   n^2(n+L) / (L(n+1) x + (n^2-L) s)
  lower_1_4,  // lower, lambda > -1/2:     n (1/x + (n-1)/(2(n+L-1) x^3))
  upper_1_4,  // upper, lambda > -1/2:     n (1/x + (n-1)/((2L+1) x^3))
  tau_3_3,    // upper, lambda in [0,1]:   n^2 / (c x + (n-c) s), c = L(n+1)/(n+L)
  upper_5_1,  // upper, lambda >= 1:       n^2 / (x + (n-1) s)
};

inline constexpr std::array<BoundId, 7> all_bound_ids{
    BoundId::rasa_1_1,  BoundId::lower_1_2, BoundId::upper_1_3, BoundId::lower_1_4,
    BoundId::upper_1_4, BoundId::tau_3_3,   BoundId::upper_5_1};

inline constexpr bool is_upper_bound(BoundId id) {
  return id != BoundId::lower_1_2 && id != BoundId::lower_1_4;
}

inline constexpr const char* bound_name(BoundId id) {
  switch (id) {
    case BoundId::rasa_1_1: return "rasa_1_1";
    case BoundId::lower_1_2: return "lower_1_2";
    case BoundId::upper_1_3: return "upper_1_3";
    case BoundId::lower_1_4: return "lower_1_4";
    case BoundId::upper_1_4: return "upper_1_4";
    case BoundId::tau_3_3: return "tau_3_3";
    case BoundId::upper_5_1: return "upper_5_1";
  }
  return "?";
}

inline std::optional<BoundId> bound_from_name(std::string_view name) {
  for (BoundId id : all_bound_ids)
    if (name == bound_name(id)) return id;
  return std::nullopt;
}

/// Stated validity domain of each bound.
inline constexpr const char* bound_domain_description(BoundId id) {
  switch (id) {
    case BoundId::rasa_1_1: return "lambda == 1/2";
    case BoundId::lower_1_2: return "lambda > -1/2";
    case BoundId::upper_1_3: return "0 <= lambda <= 1";
    case BoundId::lower_1_4: return "lambda > -1/2";
    case BoundId::upper_1_4: return "lambda > -1/2";
    case BoundId::tau_3_3: return "0 <= lambda <= 1";
    case BoundId::upper_5_1: return "lambda >= 1";
  }
  return "?";
}

template <typename T>
bool bound_in_domain(BoundId id, int n, const T& lambda) {
  if (n < 1) return false;
  switch (id) {
    case BoundId::rasa_1_1: return lambda == T(1) / T(2);
    case BoundId::lower_1_2: return lambda > lambda_lower_limit<T>();
    case BoundId::upper_1_3: return lambda >= T(0) && lambda <= T(1);
    case BoundId::lower_1_4: return lambda > lambda_lower_limit<T>();
    case BoundId::upper_1_4: return lambda > lambda_lower_limit<T>();
    case BoundId::tau_3_3: return lambda >= T(0) && lambda <= T(1);
    case BoundId::upper_5_1: return lambda >= T(1);
  }
  return false;
}

/// c_n = lambda(n+1)/(n+lambda), the largest admissible constant in the
/// tau bound family; the sequence is non-increasing in n.
inline Rational optimal_c(int n, const Rational& lambda) {
  if (n < 1) throw std::invalid_argument("optimal_c: degree must be >= 1");
  if (lambda < 0 || lambda > 1)
    throw std::invalid_argument("optimal_c: requires 0 <= lambda <= 1 (no admissible c otherwise)");
  return lambda * (n + 1) / (Rational(n) + lambda);
}

/// Closed interval of admissible c values:
/// 0 <= c <= min{(2L(n+1)+n)/(n+2L), L(n+1)/(n+L)}; empty when the upper
/// endpoint is negative (which happens for -1/2 < lambda < 0).
inline std::optional<std::pair<Rational, Rational>> admissible_c_range(int n,
                                                                       const Rational& lambda) {
  if (n < 1) throw std::invalid_argument("admissible_c_range: degree must be >= 1");
  if (!(lambda > Rational(-1, 2)))
    throw std::invalid_argument("admissible_c_range: requires lambda > -1/2");
  const Rational nn(n);
  const Rational cap1 = (2 * lambda * (nn + 1) + nn) / (nn + 2 * lambda);
  const Rational cap2 = lambda * (nn + 1) / (nn + lambda);
  const Rational cap = cap1 < cap2 ? cap1 : cap2;
  if (cap < 0) return std::nullopt;
  return std::make_pair(Rational(0), cap);
}

/// tau(n, c, x) = n^2 / (c x + (n-c) s). nullopt means the denominator
/// vanished, i.e. the bound is +infinity (only at c = 0, x = 1).
template <typename T>
std::optional<T> tau(int n, const T& c, const T& x, const T& s) {
  const T den = c * x + (T(n) - c) * s;
  if (den == T(0)) return std::nullopt;
  return T(n) * T(n) / den;
}

/// Raw formula evaluation with s = sqrt(x^2-1) supplied; no domain check.
/// nullopt encodes an infinite bound (zero denominator with positive
/// numerator), which occurs only for upper_1_3/tau_3_3 at lambda = 0, x = 1.
template <typename T>
std::optional<T> eval_bound_formula(BoundId id, int n, const T& lambda, const T& x, const T& s) {
  const T nn(n);
  switch (id) {
    case BoundId::rasa_1_1:
      return T(2) * nn * nn / (x + (T(2) * nn - T(1)) * s);
    case BoundId::lower_1_2:
      return nn * (nn + T(2) * lambda) / ((T(2) * lambda + T(1)) * x + (nn - T(1)) * s);
    case BoundId::upper_1_3: {
      const T den = lambda * (nn + T(1)) * x + (nn * nn - lambda) * s;
      if (den == T(0)) return std::nullopt;
      return nn * nn * (nn + lambda) / den;
    }
    case BoundId::lower_1_4: {
      if (n == 1) return T(1) / x;
      return nn * (T(1) / x + (nn - T(1)) / (T(2) * (nn + lambda - T(1)) * x * x * x));
    }
    case BoundId::upper_1_4:
      return nn * (T(1) / x + (nn - T(1)) / ((T(2) * lambda + T(1)) * x * x * x));
    case BoundId::tau_3_3: {
      const T c = lambda * (nn + T(1)) / (nn + lambda);
      return tau(n, c, x, s);
    }
    case BoundId::upper_5_1:
      return nn * nn / (x + (nn - T(1)) * s);
  }
  throw std::invalid_argument("eval_bound_formula: unknown bound id");
}

/// Domain-checked evaluation; rejects (n, lambda) outside the bound's
/// stated validity, naming the violated predicate.
template <typename T>
std::optional<T> eval_bound(BoundId id, int n, const T& lambda, const T& x, const T& s) {
  if (n < 1) throw std::domain_error("eval_bound: requires n >= 1");
  if (!bound_in_domain(id, n, lambda))
    throw std::domain_error(std::string("eval_bound: ") + bound_name(id) +
                            " requires " + bound_domain_description(id));
  if (!(x >= T(1))) throw std::domain_error("eval_bound: requires x >= 1");
  return eval_bound_formula(id, n, lambda, x, s);
}

inline std::optional<double> eval_bound(BoundId id, int n, double lambda, double x) {
  return eval_bound(id, n, lambda, x, std::sqrt(x * x - 1.0));
}

enum class ArithmeticMode { exact, floating };

template <typename T>
struct BoundCheckPoint {
  T x{};
  T u{};
  std::optional<T> bound;   // nullopt: bound is +infinity
  std::optional<T> margin;  // signed; >= 0 means the inequality holds
  bool ok = false;
};

template <typename T>
struct BoundCheckReport {
  BoundId id{};
  int n = 0;
  T lambda{};
  bool in_domain = false;
  ArithmeticMode mode = ArithmeticMode::exact;
  std::vector<BoundCheckPoint<T>> points;
  bool pass = false;
  std::optional<T> worst_margin;  // smallest finite margin over the grid
};

// Floating comparisons absorb rounding with a relative slack; exact-mode
// margins must be nonnegative, with ties (sharp points) counting as pass.
inline constexpr double kFloatMarginSlack = 1e-12;

namespace detail {

template <typename T>
void finish_check_point(bool upper, BoundCheckPoint<T>& pt) {
  if (!pt.bound) {  // infinite upper bound holds trivially
    pt.margin = std::nullopt;
    pt.ok = upper;
    return;
  }
  pt.margin = upper ? *pt.bound - pt.u : pt.u - *pt.bound;
  if constexpr (std::is_floating_point_v<T>)
    pt.ok = *pt.margin >= -kFloatMarginSlack * std::abs(pt.u);
  else
    pt.ok = *pt.margin >= 0;
}

template <typename T>
void finish_report(BoundCheckReport<T>& report) {
  report.pass = true;
  for (const auto& pt : report.points) {
    report.pass = report.pass && pt.ok;
    if (pt.margin && (!report.worst_margin || *pt.margin < *report.worst_margin))
      report.worst_margin = *pt.margin;
  }
}

}  // namespace detail

/// Exact theorem-instance verification on the rational parametrization:
/// every comparison is an exact rational sign test.
inline BoundCheckReport<Rational> check_bound(BoundId id, int n, const Rational& lambda,
                                              std::span<const ConjugateMap> grid) {
  BoundCheckReport<Rational> report{id, n, lambda, bound_in_domain(id, n, lambda),
                                    ArithmeticMode::exact, {}, false, std::nullopt};
  const bool upper = is_upper_bound(id);
  report.points.reserve(grid.size());
  for (const auto& m : grid) {
    BoundCheckPoint<Rational> pt;
    pt.x = m.x;
    pt.u = ratio_recursion(n, lambda, m.x);
    pt.bound = eval_bound_formula(id, n, lambda, m.x, m.s);
    detail::finish_check_point(upper, pt);
    report.points.push_back(std::move(pt));
  }
  detail::finish_report(report);
  return report;
}

inline BoundCheckReport<double> check_bound(BoundId id, int n, double lambda,
                                            std::span<const double> xs) {
  BoundCheckReport<double> report{id, n, lambda, bound_in_domain(id, n, lambda),
                                  ArithmeticMode::floating, {}, false, std::nullopt};
  const bool upper = is_upper_bound(id);
  report.points.reserve(xs.size());
  for (double x : xs) {
    BoundCheckPoint<double> pt;
    pt.x = x;
    pt.u = ratio_recursion(n, lambda, x);
    pt.bound = eval_bound_formula(id, n, lambda, x, std::sqrt(x * x - 1.0));
    detail::finish_check_point(upper, pt);
    report.points.push_back(pt);
  }
  detail::finish_report(report);
  return report;
}

template <typename T>
struct BoundComparisonRow {
  T x{};
  T u{};
  // Values of every in-domain bound, in all_bound_ids order.
  std::vector<std::pair<BoundId, std::optional<T>>> values;
  BoundId tightest_upper{};
  BoundId tightest_lower{};
};

namespace detail {

template <typename T>
BoundComparisonRow<T> compare_at(int n, const T& lambda, const T& x, const T& s) {
  BoundComparisonRow<T> row;
  row.x = x;
  row.u = ratio_recursion(n, lambda, x);
  bool have_upper = false, have_lower = false;
  std::optional<T> best_upper, best_lower;
  for (BoundId id : all_bound_ids) {
    if (!bound_in_domain(id, n, lambda)) continue;
    auto value = eval_bound_formula(id, n, lambda, x, s);
    row.values.emplace_back(id, value);
    if (is_upper_bound(id)) {
      // A finite value always beats an infinite one; among finite, smaller wins.
      if (!have_upper || (value && (!best_upper || *value < *best_upper))) {
        row.tightest_upper = id;
        best_upper = value;
        have_upper = true;
      }
    } else {
      if (!have_lower || *value > *best_lower) {
        row.tightest_lower = id;
        best_lower = value;
        have_lower = true;
      }
    }
  }
  return row;
}

}  // namespace detail

/// Per-point identification of the tightest upper/lower bound among those
/// whose validity domain contains (n, lambda). Ties keep the earliest id,
/// so output is deterministic.
inline std::vector<BoundComparisonRow<Rational>> compare_bounds(int n, const Rational& lambda,
                                                                std::span<const ConjugateMap> grid) {
  std::vector<BoundComparisonRow<Rational>> rows;
  rows.reserve(grid.size());
  for (const auto& m : grid) rows.push_back(detail::compare_at(n, lambda, m.x, m.s));
  return rows;
}

inline std::vector<BoundComparisonRow<double>> compare_bounds(int n, double lambda,
                                                              std::span<const double> xs) {
  std::vector<BoundComparisonRow<double>> rows;
  rows.reserve(xs.size());
  for (double x : xs) rows.push_back(detail::compare_at(n, lambda, x, std::sqrt(x * x - 1.0)));
  return rows;
}

}  // namespace ultra
