#pragma once

// User input: the shared polynomial grammar and the JSON system document.

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "overdet/errors.hpp"
#include "overdet/poly.hpp"

namespace overdet {

class ParseError : public InputError {
 public:
  ParseError(const std::string& what, std::size_t line, std::size_t column);
  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

struct ParseOptions {
  bool lenient = false;
};

/// Grammar: signed rational literals (3, -2/5), identifiers from `variables`,
/// + - * ^ with non-negative integer exponents, explicit *, parentheses.
Polynomial parse_polynomial(std::string_view text, std::span<const std::string> variables);
Rational parse_rational(std::string_view text);

struct SystemSpec {
  std::vector<std::string> variables;
  std::vector<std::vector<Polynomial>> matrix;  // a1 rows, a0 columns
  std::string label;

  std::size_t rows() const { return matrix.size(); }
  std::size_t cols() const { return matrix.empty() ? 0 : matrix.front().size(); }
};

enum class WeightFamily { gevrey, logpow, sublinear_log, table };

struct WeightSpec {
  WeightFamily family = WeightFamily::gevrey;
  Rational parameter;
  std::vector<std::pair<double, double>> points;  // table only
  bool normalize = true;
  std::vector<std::string> notes;
};

struct Exhaustion {
  enum class Rule { constant, dilate, scale };
  Rule rule = Rule::constant;
  std::vector<Rational> factors;  // scale rule: factor for alpha = 1, 2, ...
};

struct RegionSpec {
  enum class Kind { box, polytope };
  Kind kind = Kind::box;
  // Box: per-axis bounds; nullopt is an infinite end.
  std::vector<std::pair<std::optional<Rational>, std::optional<Rational>>> bounds;
  std::vector<std::vector<Rational>> vertices;
  bool lower_dimensional = false;
  Exhaustion exhaustion;

  std::size_t dimension() const;
  bool compact() const;
};

struct CandidateSpec {
  enum class Kind { log_abs, linear_im, max, envelope };
  Kind kind = Kind::linear_im;
  Polynomial g;                  // log_abs
  std::vector<Rational> c;       // linear_im
  std::vector<CandidateSpec> parts;  // max
  std::string label;
};

struct ProbeSpec {
  int alpha = 1;
  double rmax = 1e6;
  int radii = 13;
  int angles = 16;
  double c_budget = 1.0;
  std::vector<CandidateSpec> candidates;
};

struct PaleyWienerSpec {
  double epsilon = 1.0;
  int factors = 2000;
};

struct Document {
  std::string label;
  std::vector<std::string> variables;
  std::optional<SystemSpec> system;
  std::optional<Polynomial> curve;
  std::vector<Polynomial> primes;
  std::vector<WeightSpec> weights;
  std::optional<RegionSpec> k1;
  std::optional<RegionSpec> k2;
  ProbeSpec probe;
  PaleyWienerSpec pw;
};

Document parse_document(std::string_view text, const ParseOptions& options = {});
SystemSpec parse_system(std::string_view text, const ParseOptions& options = {});
WeightSpec parse_weight(std::string_view text);
void validate_weight(const WeightSpec& w);

std::string render_system(const SystemSpec& s);
std::string render_weight(const WeightSpec& w);

std::string family_name(WeightFamily f);
std::string candidate_label(const CandidateSpec& c, std::span<const std::string> names);

}  // namespace overdet
