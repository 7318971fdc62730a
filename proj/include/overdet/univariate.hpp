#pragma once

// Dense univariate polynomials over Z and Q (coefficients low to high) and
// exact factorization over Q.

#include <cstddef>
#include <utility>
#include <vector>

#include "overdet/poly.hpp"

namespace overdet::uni {

using ZPoly = std::vector<Integer>;
using QPoly = std::vector<Rational>;

template <class T>
void trim(std::vector<T>& p) {
  while (!p.empty() && sgn(p.back()) == 0) p.pop_back();
}

template <class T>
int degree(const std::vector<T>& p) {
  return static_cast<int>(p.size()) - 1;
}

QPoly to_q(const ZPoly& p);
// Primitive integer multiple with positive leading coefficient.
ZPoly primitive(const QPoly& p);
Integer content(const ZPoly& p);

QPoly add(const QPoly& a, const QPoly& b);
QPoly sub(const QPoly& a, const QPoly& b);
QPoly mul(const QPoly& a, const QPoly& b);
ZPoly mul(const ZPoly& a, const ZPoly& b);
std::pair<QPoly, QPoly> divmod(const QPoly& a, const QPoly& b);
QPoly derivative(const QPoly& p);
QPoly monic(const QPoly& p);
QPoly gcd(QPoly a, QPoly b);

// Exact division over Z; false when b does not divide a.
bool divides(const ZPoly& b, const ZPoly& a, ZPoly* quotient = nullptr);

/// Square-free decomposition p = c * prod a_i^i with monic, pairwise coprime a_i.
std::vector<std::pair<QPoly, int>> square_free(const QPoly& p);

/// Irreducible factors over Z of a primitive square-free polynomial of
/// positive degree, each primitive with positive leading coefficient.
std::vector<ZPoly> factor_square_free(const ZPoly& f);

/// Full factorization of a nonzero polynomial over Q: unit * prod f_i^{m_i}.
struct Factorization {
  Rational unit;
  std::vector<std::pair<ZPoly, int>> factors;
};
Factorization factor(const QPoly& p);

/// Rational roots with multiplicity.
std::vector<std::pair<Rational, int>> rational_roots(const QPoly& p);

// Conversion to and from a multivariate Polynomial in variable `var`.
QPoly from_polynomial(const Polynomial& p, std::size_t var);
Polynomial to_polynomial(const QPoly& p, std::size_t nvars, std::size_t var);

}  // namespace overdet::uni
