// Acceptance suite: one test per shipping criterion, each printing a
// [acceptance] PASS/FAIL line so a full run reads as a checklist.

#include <catch2/catch_amalgamated.hpp>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <vector>

#include "ultra/ultra.hpp"

using ultra::BoundId;
using ultra::Rational;
using ultra::RationalPoly;

namespace {

void report(int criterion, bool ok, const std::string& detail) {
  std::printf("[acceptance] criterion %2d: %s  %s\n", criterion, ok ? "PASS" : "FAIL",
              detail.c_str());
  std::fflush(stdout);
}

const std::vector<Rational>& theorem2_lower_lambdas() {
  static const std::vector<Rational> grid = {Rational(-2, 5), Rational(-1, 4), Rational(1, 4),
                                             Rational(1, 2),  Rational(1),     Rational(3, 2),
                                             Rational(2),     Rational(5),     Rational(20)};
  return grid;
}

const std::vector<Rational>& theorem2_upper_lambdas() {
  static const std::vector<Rational> grid = {Rational(0), Rational(1, 4), Rational(1, 2),
                                             Rational(3, 4), Rational(1)};
  return grid;
}

constexpr int kMaxDegree = 40;

// Exact u_n(x) for n = 1..40 on the default 64-point rational grid, per
// lambda; built once and shared across criteria.
struct ExactRatioTable {
  std::vector<ultra::ConjugateMap> maps;
  // u[lambda][x][n-1]
  std::vector<std::vector<std::vector<Rational>>> u;
  std::vector<Rational> lambdas;

  explicit ExactRatioTable(std::vector<Rational> lams) : lambdas(std::move(lams)) {
    maps = ultra::conjugate_grid(64);
    u.resize(lambdas.size());
    for (std::size_t li = 0; li < lambdas.size(); ++li) {
      u[li].resize(maps.size());
      for (std::size_t xi = 0; xi < maps.size(); ++xi) {
        auto& column = u[li][xi];
        column.reserve(kMaxDegree);
        const Rational& x = maps[xi].x;
        const Rational xx1 = x * x - 1;
        Rational cur = 1 / x;
        column.push_back(cur);
        for (int k = 1; k < kMaxDegree; ++k) {
          const Rational a = Rational(k) + 2 * lambdas[li];
          cur = Rational(k + 1) * (a + x * cur) / (a * x + xx1 * cur);
          column.push_back(cur);
        }
      }
    }
  }
};

const ExactRatioTable& exact_table() {
  static const ExactRatioTable table([] {
    std::vector<Rational> lams = theorem2_lower_lambdas();
    lams.insert(lams.begin(), Rational(0));     // lambda = 0 (Chebyshev-T limit)
    lams.push_back(Rational(3, 4));             // extra value for Eq. 1.3
    return lams;
  }());
  return table;
}

std::size_t lambda_index(const Rational& lam) {
  const auto& table = exact_table();
  for (std::size_t i = 0; i < table.lambdas.size(); ++i)
    if (table.lambdas[i] == lam) return i;
  throw std::logic_error("lambda missing from acceptance table");
}

}  // namespace

TEST_CASE("criterion 1: exact convexity certificates for n = 1..30") {
  const auto start = std::chrono::steady_clock::now();
  bool ok = true;
  int bad = -1;
  for (int n = 1; n <= 30; ++n) {
    const auto cert = ultra::certify_convexity(n);
    if (!cert.certified || cert.at_zero != 6 * n * n - 2 * n) {
      ok = false;
      bad = n;
    }
  }
  const double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  ok = ok && seconds < 60.0;
  char detail[128];
  if (ok)
    std::snprintf(detail, sizeof(detail), "30 certificates in %.2fs, all convex-certified", seconds);
  else
    std::snprintf(detail, sizeof(detail), "certification failed (n=%d, %.2fs)", bad, seconds);
  report(1, ok, detail);
  REQUIRE(ok);
}

TEST_CASE("criterion 2: theorem 1 sign equivalence on the default grid") {
  std::vector<Rational> grid;
  for (int j = 0; j < 64; ++j) grid.emplace_back(j, 128);
  bool ok = true;
  std::size_t points = 0;
  for (int n = 1; n <= 20; ++n) {
    const auto rep = ultra::theorem1_equivalence_check(n, grid);
    ok = ok && rep.consistent;
    points += rep.points.size();
  }
  report(2, ok, "sign(F_n'') == sign(bracket) at " + std::to_string(points) + " exact points");
  REQUIRE(ok);
}

TEST_CASE("criterion 3: theorem 2 holds exactly on the rational grids") {
  const auto& table = exact_table();
  bool ok = true;
  long checks = 0;
  for (const auto& lam : theorem2_lower_lambdas()) {
    const std::size_t li = lambda_index(lam);
    for (std::size_t xi = 0; xi < table.maps.size(); ++xi) {
      const auto& m = table.maps[xi];
      for (int n = 1; n <= kMaxDegree; ++n) {
        const auto bound =
            ultra::eval_bound_formula(BoundId::lower_1_2, n, lam, m.x, m.s);
        ok = ok && bound && table.u[li][xi][static_cast<std::size_t>(n - 1)] >= *bound;
        ++checks;
      }
    }
  }
  for (const auto& lam : theorem2_upper_lambdas()) {
    const std::size_t li = lambda_index(lam);
    for (std::size_t xi = 0; xi < table.maps.size(); ++xi) {
      const auto& m = table.maps[xi];
      for (int n = 1; n <= kMaxDegree; ++n) {
        const auto bound =
            ultra::eval_bound_formula(BoundId::upper_1_3, n, lam, m.x, m.s);
        // An absent value is an infinite upper bound (lambda = 0 at x = 1).
        ok = ok && (!bound || table.u[li][xi][static_cast<std::size_t>(n - 1)] <= *bound);
        ++checks;
      }
    }
  }
  report(3, ok, "Eq. 1.2 and Eq. 1.3 exact on " + std::to_string(checks) + " comparisons");
  REQUIRE(ok);
}

TEST_CASE("criterion 4: theorem 3 sandwich, sharp at x = 1") {
  const auto& table = exact_table();
  bool ok = true;
  long checks = 0;
  for (const auto& lam : theorem2_lower_lambdas()) {
    const std::size_t li = lambda_index(lam);
    for (std::size_t xi = 0; xi < table.maps.size(); ++xi) {
      const auto& m = table.maps[xi];
      for (int n = 1; n <= kMaxDegree; ++n) {
        const Rational& u = table.u[li][xi][static_cast<std::size_t>(n - 1)];
        const auto lower = ultra::eval_bound_formula(BoundId::lower_1_4, n, lam, m.x, m.s);
        const auto upper = ultra::eval_bound_formula(BoundId::upper_1_4, n, lam, m.x, m.s);
        ok = ok && lower && upper && *lower <= u && u <= *upper;
        if (m.x == 1) ok = ok && *upper - u == 0;  // sharp: margin exactly zero
        ++checks;
      }
    }
  }
  report(4, ok, "Eq. 1.4 exact on " + std::to_string(checks) + " comparisons, equality at x=1");
  REQUIRE(ok);
}

TEST_CASE("criterion 5: documented failure modes of Eq. 1.3") {
  const auto m1 = ultra::conjugate_map(Rational(0));
  const auto bound_n1 = ultra::eval_bound_formula(BoundId::upper_1_3, 1, Rational(2), m1.x, m1.s);
  const Rational u1 = ultra::ratio_recursion(1, Rational(2), Rational(1));
  const bool first = bound_n1 && *bound_n1 == Rational(3, 4) && u1 - *bound_n1 == Rational(1, 4);
  const auto bound_neg =
      ultra::eval_bound_formula(BoundId::upper_1_3, 2, Rational(-1, 4), m1.x, m1.s);
  const bool second = bound_neg && *bound_neg < 0;
  const bool ok = first && second;
  report(5, ok, "(n=1, lambda=2): u - bound = 1/4; (n=2, lambda=-1/4): bound negative at x=1");
  REQUIRE(ok);
}

TEST_CASE("criterion 6: endpoint and limit identities for u and psi") {
  const std::vector<Rational> lambdas = {Rational(-2, 5), Rational(-1, 4), Rational(0),
                                         Rational(1, 4),  Rational(1, 2),  Rational(1),
                                         Rational(3, 2),  Rational(2),     Rational(5),
                                         Rational(20)};
  bool ok = true;
  for (const auto& lam : lambdas) {
    for (int n = 1; n <= 30; ++n) {
      ok = ok && ultra::ratio_recursion(n, lam, Rational(1)) == ultra::endpoint_u(n, lam);
      ok = ok && ultra::psi(ultra::UltraParams<Rational>{n, lam}, Rational(1)) ==
                     Rational(n) * Rational(n - 1) / (2 * lam + 1);
      const double limit = ultra::to_double(ultra::psi_limit(n, lam));
      const double at_large =
          ultra::psi(ultra::UltraParams<double>{n, ultra::to_double(lam)}, 1e6);
      if (n == 1)
        ok = ok && std::abs(at_large) <= 1e-12;
      else
        ok = ok && std::abs(at_large - limit) <= 1e-5 * limit;
    }
  }
  report(6, ok, "u_n(1), psi(1) exact and psi(1e6) within 1e-5 of its limit, n <= 30");
  REQUIRE(ok);
}

TEST_CASE("criterion 7: ratio methods agree to 1e-10 in floating mode") {
  const std::vector<double> lambdas = {-0.25, 0.0, 0.5, 1.0, 5.0};
  const std::vector<double> xs = {1.0, 1.5, 2.0, 10.0, 1000.0, 1e6};
  bool ok = true;
  double worst = 0.0;
  for (double lam : lambdas) {
    for (int n = 1; n <= kMaxDegree; ++n) {
      const ultra::UltraParams<double> params{n, lam};
      const auto zs = ultra::zeros(params, 1e-14);
      for (double x : xs) {
        const double direct = ultra::ratio_u(params, x, ultra::RatioMethod::direct).u;
        const double recursion = ultra::ratio_recursion(n, lam, x);
        const double zero_sum = ultra::ratio_zero_sum(n, x, zs);
        const double scale = std::abs(recursion);
        const double spread =
            std::max(std::abs(direct - recursion), std::abs(zero_sum - recursion)) / scale;
        worst = std::max(worst, spread);
        ok = ok && spread <= 1e-10;
      }
    }
  }
  char detail[96];
  std::snprintf(detail, sizeof(detail), "direct/recursion/zero-sum spread <= %.2e (cap 1e-10)",
                worst);
  report(7, ok, detail);
  REQUIRE(ok);
}

TEST_CASE("criterion 8: the ratio is non-increasing in lambda") {
  const auto& table = exact_table();
  // The table lambdas are not sorted (0 was prepended); order them.
  std::vector<Rational> sorted = table.lambdas;
  std::sort(sorted.begin(), sorted.end());
  bool ok = true;
  for (std::size_t xi = 0; xi < table.maps.size(); ++xi) {
    for (int n = 1; n <= 20; ++n) {
      Rational prev;
      bool first = true;
      for (const auto& lam : sorted) {
        const Rational& u = table.u[lambda_index(lam)][xi][static_cast<std::size_t>(n - 1)];
        if (!first && !(prev >= u)) ok = false;
        prev = u;
        first = false;
      }
    }
  }
  const bool spot = ultra::ratio_recursion(2, Rational(1, 2), Rational(2)) == Rational(12, 11) &&
                    ultra::ratio_recursion(2, Rational(1), Rational(2)) == Rational(16, 15);
  ok = ok && spot;
  report(8, ok, "u non-increasing across 11 lambdas, n <= 20; spot pair (12/11, 16/15) exact");
  REQUIRE(ok);
}

TEST_CASE("criterion 9: squared-Bernstein-sum spot values") {
  bool ok = ultra::squared_basis_sum_poly(2) ==
            RationalPoly({Rational(1), Rational(-4), Rational(10), Rational(-12), Rational(6)});
  for (int n = 1; n <= 20; ++n) {
    const RationalPoly f = ultra::squared_basis_sum_poly(n);
    ok = ok && f.eval(Rational(1, 2)) == ultra::squared_basis_sum_at_half(n);
    ok = ok && f.derivative().derivative().eval(Rational(0)) == 6 * n * n - 2 * n;
  }
  report(9, ok, "F_2 coefficients, F_n(1/2) = C(2n,n)/4^n, F_n''(0) = 6n^2-2n, n <= 20");
  REQUIRE(ok);
}

TEST_CASE("criterion 10: recurrence paths match the Chebyshev closed forms") {
  const std::vector<double> xs = {1.0, 1.5, 2.0, 10.0, 100.0, 1000.0};
  bool ok = true;
  double worst = 0.0;
  for (int n = 0; n <= 30; ++n) {
    for (double x : xs) {
      const auto u_pair = ultra::eval_with_derivative(ultra::UltraParams<double>{n, 1.0}, x);
      const double u_val = std::ldexp(u_pair.value, u_pair.scale_exponent);
      const double u_closed = ultra::chebyshev_closed_form(ultra::ChebKind::second, n, x);
      const auto t_pair = ultra::eval_with_derivative(ultra::UltraParams<double>{n, 0.0}, x);
      const double t_val = std::ldexp(t_pair.value, t_pair.scale_exponent);
      const double t_closed = ultra::chebyshev_closed_form(ultra::ChebKind::first, n, x);
      const double du = std::abs(u_val - u_closed) / std::abs(u_closed);
      const double dt = std::abs(t_val - t_closed) / std::abs(t_closed);
      worst = std::max({worst, du, dt});
      ok = ok && du <= 1e-12 && dt <= 1e-12;
    }
  }
  char detail[96];
  std::snprintf(detail, sizeof(detail),
                "lambda=1 vs U_n and lambda=0 vs T_n: worst rel error %.2e (cap 1e-12)", worst);
  report(10, ok, detail);
  REQUIRE(ok);
}
