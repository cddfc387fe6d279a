#pragma once

#include <stdexcept>
#include <vector>

#include "ultra/rational.hpp"

namespace ultra {

/// The rational substitution x(t) = (1-2t + 1/(1-2t))/2 sending t in [0, 1/2)
/// to x in [1, inf). Its payoff: s = sqrt(x^2-1) = x - (1-2t) is rational for
/// rational t, so every surd expression downstream reduces to exact rational
/// arithmetic.
struct ConjugateMap {
  Rational t;  // parameter in [0, 1/2)
  Rational v;  // 1 - 2t = x - s, in (0, 1]
  Rational x;  // abscissa >= 1
  Rational s;  // sqrt(x^2 - 1) >= 0
};

inline ConjugateMap conjugate_map(const Rational& t) {
  if (t < 0 || t >= Rational(1, 2))
    throw std::invalid_argument("conjugate_map: t must lie in [0, 1/2)");
  const Rational v = 1 - 2 * t;
  const Rational x = (v + 1 / v) / 2;
  return ConjugateMap{t, v, x, x - v};
}

/// Default exact grid convention: t = j/(2m) for j = 0..m-1.
inline std::vector<ConjugateMap> conjugate_grid(int m) {
  if (m < 1) throw std::invalid_argument("conjugate_grid: density must be >= 1");
  std::vector<ConjugateMap> grid;
  grid.reserve(static_cast<std::size_t>(m));
  for (int j = 0; j < m; ++j) grid.push_back(conjugate_map(Rational(j, 2 * m)));
  return grid;
}

}  // namespace ultra
