#pragma once

// Exact multivariate polynomials over Q, monomial orders, and free-module
// elements. Everything symbolic in the library is built on these types.

#include <compare>
#include <complex>
#include <cstddef>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <gmpxx.h>

namespace overdet {

using Rational = mpq_class;
using Integer = mpz_class;

inline constexpr std::size_t kMaxVariables = 8;
inline constexpr int kMaxTotalDegree = 64;

class Monomial {
 public:
  Monomial() = default;
  explicit Monomial(std::size_t nvars) : exps_(nvars, 0) {}
  explicit Monomial(std::vector<int> exps);

  static Monomial variable(std::size_t nvars, std::size_t index, int power = 1);

  std::size_t size() const { return exps_.size(); }
  int operator[](std::size_t i) const { return exps_[i]; }
  int degree() const { return degree_; }
  std::span<const int> exponents() const { return exps_; }
  bool is_one() const { return degree_ == 0; }

  Monomial operator*(const Monomial& other) const;
  // Exact quotient; requires other.divides(*this).
  Monomial operator/(const Monomial& other) const;
  bool divides(const Monomial& other) const;

  static Monomial lcm(const Monomial& a, const Monomial& b);
  static bool coprime(const Monomial& a, const Monomial& b);

  // Storage order (lexicographic on the exponent vector); not a term order.
  friend bool operator==(const Monomial&, const Monomial&) = default;
  friend auto operator<=>(const Monomial& a, const Monomial& b) { return a.exps_ <=> b.exps_; }

 private:
  std::vector<int> exps_;
  int degree_ = 0;
};

enum class MonomialOrder { lex, grlex, grevlex };
enum class ModuleExtension { position_over_term, term_over_position };

/// Monomial order plus its extension to free modules P^a.
///
/// Components are ranked by `priority`: priority[0] is the most significant
/// component. An empty priority list means component 0 > component 1 > ...
/// A Schreyer order compares m*e_i against n*e_j through the shifted terms
/// m*shift_i, n*shift_j in the base order, breaking ties by component rank.
class TermOrder {
 public:
  struct Shift {
    Monomial monomial;
    int component = -1;  // -1: zero generator, ranked below everything
  };

  TermOrder() = default;
  explicit TermOrder(MonomialOrder kind,
                     ModuleExtension ext = ModuleExtension::term_over_position,
                     std::vector<std::size_t> priority = {});

  static TermOrder schreyer(const TermOrder& base, std::vector<Shift> shifts);

  MonomialOrder kind() const { return kind_; }
  ModuleExtension extension() const { return ext_; }
  const std::vector<std::size_t>& priority() const { return priority_; }
  bool is_schreyer() const { return !shifts_.empty(); }

  int compare(const Monomial& a, const Monomial& b) const;
  int compare(const Monomial& a, std::size_t ca, const Monomial& b, std::size_t cb) const;

  std::string describe() const;

 private:
  int compare_unshifted(const Monomial& a, std::size_t ca, const Monomial& b,
                        std::size_t cb) const;
  std::size_t rank_of(std::size_t component) const;

  MonomialOrder kind_ = MonomialOrder::grevlex;
  ModuleExtension ext_ = ModuleExtension::term_over_position;
  std::vector<std::size_t> priority_;
  std::vector<std::size_t> rank_;  // inverse of priority_
  std::vector<Shift> shifts_;
  std::vector<std::size_t> base_priority_;
  std::vector<std::size_t> base_rank_;
};

/// Exact polynomial in a fixed number of variables. Terms are kept without
/// zero coefficients in descending graded-reverse-lex order, so equal
/// polynomials have identical representations.
class Polynomial {
 public:
  using Term = std::pair<Monomial, Rational>;

  Polynomial() = default;
  explicit Polynomial(std::size_t nvars);
  Polynomial(std::size_t nvars, std::vector<Term> terms);

  static Polynomial constant(std::size_t nvars, const Rational& c);
  static Polynomial variable(std::size_t nvars, std::size_t index);
  static Polynomial term(const Monomial& m, const Rational& c);

  std::size_t nvars() const { return nvars_; }
  const std::vector<Term>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  int total_degree() const;
  int degree_in(std::size_t var) const;
  Rational coefficient(const Monomial& m) const;

  // Leading term under the given order; polynomial must be nonzero.
  const Term& leading_term(const TermOrder& order) const;

  Polynomial operator-() const;
  Polynomial& operator+=(const Polynomial& rhs);
  Polynomial& operator-=(const Polynomial& rhs);
  Polynomial& operator*=(const Polynomial& rhs);
  Polynomial& operator*=(const Rational& c);
  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator*(Polynomial a, const Polynomial& b) { return a *= b; }
  friend Polynomial operator*(Polynomial a, const Rational& c) { return a *= c; }
  friend Polynomial operator*(const Rational& c, Polynomial a) { return a *= c; }
  friend bool operator==(const Polynomial&, const Polynomial&) = default;

  Polynomial mul_term(const Monomial& m, const Rational& c) const;
  Polynomial pow(unsigned e) const;
  Polynomial derivative(std::size_t var) const;

  // q(z) = p(-z).
  Polynomial sign_flip() const;

  std::complex<double> eval(std::span<const std::complex<double>> point) const;
  Rational eval(std::span<const Rational> point) const;

  // Lowest-common-denominator scaling to an integer polynomial with
  // content 1 and positive leading coefficient; returns the scale factor s
  // with primitive = s * (*this).
  Polynomial primitive(Rational* scale = nullptr) const;

 private:
  void canonicalize();

  std::size_t nvars_ = 0;
  std::vector<Term> terms_;
};

enum class ArithOp { add, sub, mul };
Polynomial poly_arith(const Polynomial& lhs, const Polynomial& rhs, ArithOp op);

/// Element of the free module P^a.
class ModuleElement {
 public:
  ModuleElement() = default;
  ModuleElement(std::size_t rank, std::size_t nvars);
  explicit ModuleElement(std::vector<Polynomial> components);

  static ModuleElement unit(std::size_t rank, std::size_t nvars, std::size_t k);

  std::size_t rank() const { return comps_.size(); }
  std::size_t nvars() const { return nvars_; }
  const Polynomial& operator[](std::size_t i) const { return comps_[i]; }
  Polynomial& operator[](std::size_t i) { return comps_[i]; }
  const std::vector<Polynomial>& components() const { return comps_; }
  bool is_zero() const;
  int total_degree() const;

  ModuleElement& operator+=(const ModuleElement& rhs);
  ModuleElement& operator-=(const ModuleElement& rhs);
  friend ModuleElement operator+(ModuleElement a, const ModuleElement& b) { return a += b; }
  friend ModuleElement operator-(ModuleElement a, const ModuleElement& b) { return a -= b; }
  friend ModuleElement operator*(const Polynomial& p, const ModuleElement& v);
  friend bool operator==(const ModuleElement&, const ModuleElement&) = default;

 private:
  std::size_t nvars_ = 0;
  std::vector<Polynomial> comps_;
};

std::vector<std::string> default_variable_names(std::size_t nvars);

/// Render in the shared text grammar, e.g. "z1^2 - 2/5*z1*z2 + 1".
std::string format_polynomial(const Polynomial& p, std::span<const std::string> names);
std::string format_polynomial(const Polynomial& p);
std::string format_rational(const Rational& q);

}  // namespace overdet
