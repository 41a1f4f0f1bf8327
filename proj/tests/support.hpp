#pragma once

#include "stq/graded_poly.hpp"
#include "stq/rational.hpp"

namespace stq::testing {

inline Rational R(long n, long d = 1) { return make_rational(n, d); }

// c * x^i y^j * (param)^ep * g^gp
inline GradedPoly term(const Rational& c, int i, int j, int ep = 0, Param p = Param::mu, int gp = 0) {
  return GradedPoly::monomial(c, i, j, gp, ep, p);
}

inline const Rational kBs[] = {make_rational(1, 2), make_rational(1), make_rational(2), make_rational(3)};

}  // namespace stq::testing
