#pragma once

// Free resolutions of M = coker tA0, integrability conditions, annihilators,
// characteristic varieties and Ext presentations.

#include <complex>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "overdet/groebner.hpp"
#include "overdet/parser.hpp"
#include "overdet/poly.hpp"

namespace overdet {

class OperatorMatrix {
 public:
  enum class Orientation { op, transpose };

  OperatorMatrix() = default;
  OperatorMatrix(std::size_t rows, std::size_t cols, std::size_t nvars,
                 Orientation o = Orientation::transpose);
  OperatorMatrix(std::vector<std::vector<Polynomial>> entries, std::size_t nvars,
                 Orientation o = Orientation::transpose);

  // Matrix whose columns are the given elements (all of one rank).
  static OperatorMatrix from_columns(std::span<const ModuleElement> cols, std::size_t rank,
                                     std::size_t nvars, Orientation o = Orientation::transpose);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::size_t nvars() const { return nvars_; }
  Orientation orientation() const { return orientation_; }
  const Polynomial& operator()(std::size_t i, std::size_t j) const { return entries_[i][j]; }
  Polynomial& operator()(std::size_t i, std::size_t j) { return entries_[i][j]; }
  const std::vector<std::vector<Polynomial>>& entries() const { return entries_; }

  std::vector<ModuleElement> columns() const;
  OperatorMatrix transposed() const;
  bool is_zero() const;

  friend OperatorMatrix operator*(const OperatorMatrix& a, const OperatorMatrix& b);

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::size_t nvars_ = 0;
  Orientation orientation_ = Orientation::transpose;
  std::vector<std::vector<Polynomial>> entries_;
};

struct ExactnessCertificate {
  std::size_t step = 0;             // checks tA_step * tA_{step+1} = 0 and exactness at P^{a_{step+1}}
  bool composition_zero = false;
  int oracle_degree = -1;           // -1: oracle skipped (too many unknowns)
  std::size_t kernel_dimension = 0; // bounded kernel vectors found
  bool kernel_in_image = false;
};

struct FreeResolution {
  std::vector<std::string> variables;
  std::vector<OperatorMatrix> maps;  // tA_0 ... tA_{d-1}
  std::vector<std::size_t> ranks;    // a_0 ... a_d
  std::vector<ExactnessCertificate> certificates;
  bool free_module = false;          // A0 = 0
  bool injective_tail = false;       // bounded kernel of the last map is trivial

  std::size_t length() const { return maps.size(); }
  std::size_t nvars() const { return variables.size(); }
};

FreeResolution hilbert_resolution(const SystemSpec& system, const GroebnerLimits& limits = {});

struct OverdeterminationReport {
  bool overdetermined = false;
  std::size_t conditions = 0;
  OperatorMatrix a1;  // a2 x a1, operator orientation
  std::vector<std::string> equations;
};

OverdeterminationReport overdetermination_report(const FreeResolution& res);

/// Render a row of operators acting on f_1..f_n, e.g. "D2f1 - D1f2 = 0".
std::string operator_equation(std::span<const Polynomial> row);

/// Generators of ann(coker tA0), as a reduced basis scaled to primitive
/// integer polynomials.
std::vector<Polynomial> annihilator(const SystemSpec& system, const GroebnerLimits& limits = {});

struct CharVariety {
  std::vector<Polynomial> generators;  // q(z) = p(-z)
  std::vector<Polynomial> source;      // the prime generators p
  std::string label;
};

CharVariety characteristic_variety(std::span<const Polynomial> prime_generators,
                                   std::string label = {});

using GaussianRational = std::pair<Rational, Rational>;

bool exponential_kernel_test(const SystemSpec& system, std::span<const std::complex<double>> zeta);
bool exponential_kernel_test(const SystemSpec& system, std::span<const GaussianRational> zeta);

/// Exact evaluation at a point with rational real and imaginary parts.
GaussianRational eval_gaussian(const Polynomial& p, std::span<const GaussianRational> point);

struct ModulePresentation {
  std::size_t degree = 0;                  // Ext index j
  std::size_t generators = 0;              // m: quotient of P^m
  std::vector<ModuleElement> relations;    // rows in P^m (reduced basis)
  std::vector<ModuleElement> generator_vectors;  // kernel generators in P^{a_j}
  bool is_zero = false;
  bool is_free = false;
  std::string summary;
};

struct DualComplexHomology {
  std::vector<ModulePresentation> ext;
  bool composition_zero = false;
};

DualComplexHomology dual_complex_homology(const FreeResolution& res,
                                          const GroebnerLimits& limits = {});

}  // namespace overdet
