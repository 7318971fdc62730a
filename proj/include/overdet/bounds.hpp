#pragma once

// Supporting functions of convex polytopes, psi_alpha bounds, and the
// Paley-Wiener decay experiment.

#include <complex>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "overdet/parser.hpp"
#include "overdet/weights.hpp"

namespace overdet {

class ConvexBody {
 public:
  ConvexBody() = default;
  static ConvexBody box(const std::vector<std::pair<Rational, Rational>>& bounds);
  static ConvexBody polytope(std::vector<std::vector<Rational>> vertices);
  // Compact regions only.
  static ConvexBody from_region(const RegionSpec& region);

  std::size_t dimension() const { return dim_; }
  bool empty() const { return vertices_.empty(); }
  const std::vector<std::vector<Rational>>& vertices() const { return vertices_; }
  ConvexBody scaled(const Rational& factor) const;

 private:
  std::size_t dim_ = 0;
  std::vector<std::vector<Rational>> vertices_;
  std::vector<std::vector<double>> approx_;
  friend double supporting_function(const ConvexBody&, std::span<const double>);
};

Rational supporting_function(const ConvexBody& body, std::span<const Rational> y);
double supporting_function(const ConvexBody& body, std::span<const double> y);

/// K_alpha for alpha >= 1 under the region's exhaustion rule:
/// constant K; dilate K ∩ [-alpha, alpha]^N; scale factors[alpha-1]*K
/// (the last factor repeats).
ConvexBody exhaustion(const RegionSpec& region, int alpha);

using Complex = std::complex<double>;

double norm1(std::span<const Complex> z);

struct PsiBound {
  ConvexBody body;
  WeightFunction weight;
  int alpha = 1;
};

// H_body(Im zeta) + alpha * omega(|zeta|_1).
double psi_eval(const PsiBound& bound, std::span<const Complex> zeta);

struct ShiftStability {
  double k1 = 0;  // max |psi(zeta + z) - psi(zeta)|
  bool bounded = true;
  double slope = 0;  // per-decade maxima regressed on log10 |zeta|
  std::vector<std::pair<double, double>> decade_max;
};

ShiftStability shift_stability_check(const PsiBound& bound, double k0, int trials,
                                     std::uint64_t seed = 20240611);

struct KFit {
  double k = 0;
  double log_C = 0;  // max of envelope + k*omega on the fit range
  bool achieved = false;
};

struct PaleyWienerReport {
  double alpha = 0, s = 0, epsilon = 0;
  int factors = 0;
  double c = 0;  // widths a_k = c k^{-s}
  double widths_sum = 0;
  double p_fit = 0;  // log(-E) ~ p log t on [1e2, 1e6]
  double k_fit = 0;  // least squares -E ~ k omega + const
  double k_achieved = 0;
  std::vector<KFit> k_table;
  std::vector<std::pair<double, double>> envelope;  // (t, log envelope)
  bool monotone = true;
  // (gamma') constants of the weight and the reverse-direction check.
  double gamma_a = 0, gamma_b = 0;
  double D = 0;  // e^{1 - a/b}
  double lambda = 1;
  double reverse_threshold = 0;  // (N+1)/b + lambda with N = 1
  bool reverse_ok = false;       // k_achieved > threshold
  std::vector<std::string> notes;
};

// Log-envelope sum_k log min(1, 1/(a_k t)).
double pw_envelope(const std::vector<double>& widths, double t);
std::vector<double> pw_widths(double s, double epsilon, int factors);

PaleyWienerReport paley_wiener_experiment(const WeightSpec& weight, double epsilon = 1,
                                          int factors = 2000, double lambda = 1);

}  // namespace overdet
