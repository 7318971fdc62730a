#pragma once

// Weight functions omega, their axioms, Young conjugates of
// phi(x) = omega(e^x), and comparison utilities.

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "overdet/parser.hpp"

namespace overdet {

class WeightFunction {
 public:
  explicit WeightFunction(WeightSpec spec);

  // Normalized value max(0, omega(t) - omega(1)) when normalization is on.
  double operator()(double t) const;
  double raw(double t) const;
  double phi(double x) const;
  double shift() const { return shift_; }
  bool normalized() const { return spec_.normalize; }
  const WeightSpec& spec() const { return spec_; }
  std::string describe() const;

 private:
  WeightSpec spec_;
  double param_ = 0;
  std::vector<double> log_t_, values_;  // table abscissae in log scale
  double tail_slope_ = 0;               // log-log slope beyond the table
  double shift_ = 0;
};

// Log-spaced grid of n points on [lo, hi].
std::vector<double> log_grid(double lo, double hi, std::size_t n);

enum class Convergence { converges, diverges, inconclusive };
std::string convergence_name(Convergence c);

struct AlphaAxiom {
  bool holds = false;
  double K = 0;            // sup omega(2t) / (1 + omega(t)) on the grid
  double worst_t = 0;
  std::optional<double> fails_at;
};

struct BetaAxiom {
  Convergence verdict = Convergence::inconclusive;
  double integral = 0;  // int_1^T omega(t)/t^2 dt
  double p = 0, r = 0;  // tail model c t^p (log t)^r
  std::vector<std::pair<double, double>> trace;  // (T_k, partial integral)
};

struct GammaPrimeAxiom {
  bool holds = false;
  double a = 0, b = 0;   // omega_raw(t) >= a + b log(1+t)
  double a_normalized = 0;
};

struct GammaAxiom {
  bool holds = false;  // log t = o(omega(t))
  double ratio_mid = 0, ratio_end = 0;
};

struct DeltaAxiom {
  bool holds = false;
  double min_second_difference = 0;
  std::optional<double> violation_x;
};

struct AxiomReport {
  double horizon = 0;
  double shift = 0;
  AlphaAxiom alpha;
  BetaAxiom beta;
  GammaPrimeAxiom gamma_prime;
  GammaAxiom gamma;
  DeltaAxiom delta;
  std::vector<std::string> notes;
};

AxiomReport check_axioms(const WeightFunction& w, double horizon = 1e6);

class YoungConjugate {
 public:
  enum class Method { closed_form, numeric };

  explicit YoungConjugate(WeightFunction w);

  double operator()(double y) const;
  double numeric(double y) const;
  std::optional<double> closed_form(double y) const;
  Method method() const { return method_; }
  const WeightFunction& source() const { return w_; }

 private:
  WeightFunction w_;
  Method method_;
};

std::string method_name(YoungConjugate::Method m);

YoungConjugate young_conjugate(const WeightFunction& w);

// Max relative deviation of (phi*)* from phi at `samples` log-spaced points
// x in [1, 30].
double biconjugate_check(const WeightFunction& w, int samples = 20);

struct SubadditivityResult {
  bool holds = false;
  double worst_ratio = 0;  // max omega(x+y) / (1 + omega(x) + omega(y))
  double x = 0, y = 0;
};

SubadditivityResult subadditivity_check(const WeightFunction& w, double K, double horizon = 1e6);

enum class Comparison { equivalent, first_dominated, second_dominated, incomparable };
std::string comparison_name(Comparison c);

struct EquivalenceResult {
  Comparison verdict = Comparison::incomparable;
  double min_ratio = 0, max_ratio = 0;  // (1 + w1) / (1 + w2) on the grid
  double tail_slope = 0;                // log ratio vs log t over the last two decades
};

// first_dominated: w1 = O(w2) only.
EquivalenceResult equivalence_check(const WeightFunction& w1, const WeightFunction& w2,
                                    double horizon = 1e6);

// Smallest L (over doubling) with phi*(y) - y >= L phi*(y/L) - L on y in [1, 1e4].
std::optional<double> conjugate_shift_constant(const WeightFunction& w, double max_L = 1e6);

// sup omega(N r) / (1 + omega(r)): the least L with omega(N r) <= L omega(r) + L.
double dilation_constant(const WeightFunction& w, double N, double horizon = 1e6);

}  // namespace overdet
