#pragma once

// Factorization over Q, zero-dimensional solving, and Puiseux branches of
// plane curves at infinity.

#include <complex>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "overdet/parser.hpp"
#include "overdet/poly.hpp"
#include "overdet/roots.hpp"

namespace overdet {

inline constexpr int kMaxUnivariateFactorDegree = 40;
inline constexpr int kMaxBivariateFactorDegree = 8;
inline constexpr int kMaxCurveDegree = 8;

struct FactorList {
  Rational unit;
  std::vector<std::pair<Polynomial, int>> factors;
  bool complete = true;  // false: square-free decomposition only
};

/// unit * prod factors^mult == p. Factors are primitive integer polynomials
/// with positive leading coefficient. Full factorization for polynomials in
/// at most two variables, square-free decomposition otherwise.
FactorList factor(const Polynomial& p);

Polynomial polynomial_gcd(const Polynomial& a, const Polynomial& b);
Polynomial square_free_part(const Polynomial& p);
bool exact_divide(const Polynomial& f, const Polynomial& g, Polynomial* quotient = nullptr);

struct Solution {
  std::vector<Complex> point;
  int multiplicity = 1;
  double residual = 0;
};

/// All complex solutions of a zero-dimensional system. Throws InputError for
/// positive-dimensional ideals.
std::vector<Solution> solve_zero_dim(std::span<const Polynomial> generators);

struct PuiseuxTerm {
  Rational exponent;              // power of z1
  Complex coefficient;
  std::optional<Rational> exact;  // set when the coefficient is rational
};

struct PuiseuxBranch {
  int ramification = 1;  // q: exponents have denominators dividing q
  std::vector<PuiseuxTerm> terms;
  int truncation_order = 0;  // number of terms computed
  // Every exponent of the residual curve(z1, truncated branch) lies strictly
  // below this bound; empty when the branch is an exact finite sum.
  std::optional<Rational> residual_bound;
  bool terminated = false;  // the series is finite and exact
  bool separated = true;
  bool exact = true;        // all coefficients rational
  int conjugacy_class = 0;
  int class_size = 1;
};

struct PuiseuxResult {
  std::vector<PuiseuxBranch> branches;
  int degree_z2 = 0;
  bool square_free_input = true;
  bool monic_in_z2 = true;
  std::vector<std::string> notes;
};

/// Branches z2 = sum c_k z1^{e_k} (e_k decreasing) of a plane curve as
/// |z1| -> infinity, with at least `order` terms per separated branch.
PuiseuxResult puiseux_at_infinity(const Polynomial& curve, int order = 4);

/// Largest z1-exponent of a non-negligible term of curve(z1, branch).
/// Empty when the residual vanishes.
std::optional<Rational> puiseux_residual_exponent(const Polynomial& curve,
                                                  const PuiseuxBranch& branch);

struct BranchSummary {
  std::string leading_exponent;  // "p/q" or "none" for z2 = 0
  int ramification = 1;
  bool leading_real = true;
  bool coefficients_real = true;
  int class_size = 1;
  std::vector<std::string> annotations;
};

struct BranchReport {
  std::string label = "branch data only; no solvability verdict";
  std::optional<Rational> gevrey_s;  // 1/alpha for gevrey weights
  std::vector<BranchSummary> rows;
};

using BranchPredicate =
    std::function<std::optional<std::string>(const PuiseuxBranch&, const WeightSpec&)>;

BranchReport branch_report(std::span<const PuiseuxBranch> branches, const WeightSpec& weight,
                           const BranchPredicate& predicate = {});

}  // namespace overdet
