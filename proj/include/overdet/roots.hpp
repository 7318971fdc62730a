#pragma once

// Simultaneous root finding for univariate polynomials with complex
// coefficients (low to high).

#include <complex>
#include <vector>

namespace overdet {

using Complex = std::complex<double>;

/// All roots (with repetition) by Aberth-Ehrlich iteration from
/// deterministic starting points on a circle, polished by Newton steps.
std::vector<Complex> polynomial_roots(std::vector<Complex> coeffs);

Complex horner(const std::vector<Complex>& coeffs, Complex z);

}  // namespace overdet
