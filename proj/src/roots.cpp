#include "overdet/roots.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "overdet/errors.hpp"

namespace overdet {

Complex horner(const std::vector<Complex>& coeffs, Complex z) {
  Complex acc = 0;
  for (std::size_t i = coeffs.size(); i-- > 0;) acc = acc * z + coeffs[i];
  return acc;
}

namespace {

std::pair<Complex, Complex> horner_with_derivative(const std::vector<Complex>& c, Complex z) {
  Complex p = 0;
  Complex dp = 0;
  for (std::size_t i = c.size(); i-- > 0;) {
    dp = dp * z + p;
    p = p * z + c[i];
  }
  return {p, dp};
}

}  // namespace

std::vector<Complex> polynomial_roots(std::vector<Complex> c) {
  while (!c.empty() && c.back() == Complex(0)) c.pop_back();
  if (c.empty()) throw InputError("roots of the zero polynomial");
  std::vector<Complex> roots;
  // Zero roots are exact.
  std::size_t lead_zeros = 0;
  while (lead_zeros < c.size() && c[lead_zeros] == Complex(0)) ++lead_zeros;
  roots.assign(lead_zeros, Complex(0));
  c.erase(c.begin(), c.begin() + static_cast<std::ptrdiff_t>(lead_zeros));
  const std::size_t n = c.size() - 1;
  if (n == 0) return roots;
  for (auto& x : c) {
    if (!std::isfinite(x.real()) || !std::isfinite(x.imag())) {
      throw RangeError("non-finite polynomial coefficient");
    }
  }
  const Complex lc = c.back();
  for (auto& x : c) x /= lc;

  // Fujiwara bound for the starting radius, and the reverse bound for the inner radius.
  double upper = 0;
  for (std::size_t k = 1; k <= n; ++k) {
    double v = std::pow(std::abs(c[n - k]), 1.0 / static_cast<double>(k));
    if (k == n) v = std::pow(std::abs(c[0]) / 2, 1.0 / static_cast<double>(n));
    upper = std::max(upper, 2 * v);
  }
  const double radius = std::max(upper, 1e-300);
  std::vector<Complex> z(n);
  for (std::size_t k = 0; k < n; ++k) {
    const double theta = 2 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(n) + 0.4;
    z[k] = std::polar(radius * 0.5, theta);
  }
  std::vector<bool> done(n, false);
  for (int iter = 0; iter < 2000; ++iter) {
    bool all = true;
    for (std::size_t k = 0; k < n; ++k) {
      if (done[k]) continue;
      auto [p, dp] = horner_with_derivative(c, z[k]);
      if (p == Complex(0)) {
        done[k] = true;
        continue;
      }
      const Complex ratio = p / dp;
      Complex sum = 0;
      for (std::size_t j = 0; j < n; ++j) {
        if (j != k) sum += 1.0 / (z[k] - z[j]);
      }
      Complex w = ratio / (1.0 - ratio * sum);
      if (!std::isfinite(w.real()) || !std::isfinite(w.imag())) w = ratio;
      z[k] -= w;
      if (std::abs(w) <= 1e-15 * std::max(1.0, std::abs(z[k]))) {
        done[k] = true;
      } else {
        all = false;
      }
    }
    if (all) break;
  }
  for (auto& r : z) {
    for (int k = 0; k < 3; ++k) {
      auto [p, dp] = horner_with_derivative(c, r);
      if (dp == Complex(0)) break;
      const Complex step = p / dp;
      const Complex cand = r - step;
      if (std::abs(horner(c, cand)) < std::abs(p)) r = cand;
      else break;
    }
  }
  roots.insert(roots.end(), z.begin(), z.end());
  std::sort(roots.begin(), roots.end(), [](Complex a, Complex b) {
    if (a.real() != b.real()) return a.real() < b.real();
    return a.imag() < b.imag();
  });
  return roots;
}

}  // namespace overdet
