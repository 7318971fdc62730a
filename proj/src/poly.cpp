#include "overdet/poly.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <sstream>

#include "overdet/errors.hpp"

namespace overdet {

namespace {

void check_nvars(std::size_t nvars) {
  if (nvars > kMaxVariables) {
    throw ResourceError("variable count " + std::to_string(nvars) + " exceeds the cap of " +
                        std::to_string(kMaxVariables));
  }
}

void check_degree(int degree) {
  if (degree > kMaxTotalDegree) {
    throw ResourceError("total degree " + std::to_string(degree) + " exceeds the cap of " +
                        std::to_string(kMaxTotalDegree));
  }
}

int grevlex_compare(const Monomial& a, const Monomial& b) {
  if (a.degree() != b.degree()) return a.degree() > b.degree() ? 1 : -1;
  for (std::size_t i = a.size(); i-- > 0;) {
    if (a[i] != b[i]) return a[i] < b[i] ? 1 : -1;
  }
  return 0;
}

int lex_compare(const Monomial& a, const Monomial& b) {
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] != b[i]) return a[i] > b[i] ? 1 : -1;
  }
  return 0;
}

}  // namespace

// ---------------------------------------------------------------- Monomial

Monomial::Monomial(std::vector<int> exps) : exps_(std::move(exps)) {
  for (int e : exps_) {
    if (e < 0) throw InputError("negative exponent in monomial");
    degree_ += e;
  }
}

Monomial Monomial::variable(std::size_t nvars, std::size_t index, int power) {
  std::vector<int> e(nvars, 0);
  e.at(index) = power;
  return Monomial(std::move(e));
}

Monomial Monomial::operator*(const Monomial& other) const {
  Monomial r = *this;
  for (std::size_t i = 0; i < exps_.size(); ++i) r.exps_[i] += other.exps_[i];
  r.degree_ += other.degree_;
  return r;
}

Monomial Monomial::operator/(const Monomial& other) const {
  Monomial r = *this;
  for (std::size_t i = 0; i < exps_.size(); ++i) r.exps_[i] -= other.exps_[i];
  r.degree_ -= other.degree_;
  return r;
}

bool Monomial::divides(const Monomial& other) const {
  if (degree_ > other.degree_) return false;
  for (std::size_t i = 0; i < exps_.size(); ++i) {
    if (exps_[i] > other.exps_[i]) return false;
  }
  return true;
}

Monomial Monomial::lcm(const Monomial& a, const Monomial& b) {
  std::vector<int> e(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) e[i] = std::max(a[i], b[i]);
  return Monomial(std::move(e));
}

bool Monomial::coprime(const Monomial& a, const Monomial& b) {
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] > 0 && b[i] > 0) return false;
  }
  return true;
}

// ---------------------------------------------------------------- TermOrder

TermOrder::TermOrder(MonomialOrder kind, ModuleExtension ext, std::vector<std::size_t> priority)
    : kind_(kind), ext_(ext), priority_(std::move(priority)) {
  rank_.assign(priority_.size(), 0);
  std::vector<bool> seen(priority_.size(), false);
  for (std::size_t r = 0; r < priority_.size(); ++r) {
    const std::size_t c = priority_[r];
    if (c >= priority_.size() || seen[c]) {
      throw InputError("position priority must be a permutation of component indices");
    }
    seen[c] = true;
    rank_[c] = r;
  }
}

TermOrder TermOrder::schreyer(const TermOrder& base, std::vector<Shift> shifts) {
  TermOrder order = base;
  order.base_priority_ = base.priority_;
  order.base_rank_ = base.rank_;
  order.priority_.clear();
  order.rank_.clear();
  order.shifts_ = std::move(shifts);
  return order;
}

std::size_t TermOrder::rank_of(std::size_t component) const {
  return component < rank_.size() ? rank_[component] : component;
}

int TermOrder::compare(const Monomial& a, const Monomial& b) const {
  switch (kind_) {
    case MonomialOrder::lex:
      return lex_compare(a, b);
    case MonomialOrder::grlex:
      if (a.degree() != b.degree()) return a.degree() > b.degree() ? 1 : -1;
      return lex_compare(a, b);
    case MonomialOrder::grevlex:
      return grevlex_compare(a, b);
  }
  return 0;
}

int TermOrder::compare_unshifted(const Monomial& a, std::size_t ca, const Monomial& b,
                                 std::size_t cb) const {
  const auto& ranks = shifts_.empty() ? rank_ : base_rank_;
  auto rank = [&](std::size_t c) { return c < ranks.size() ? ranks[c] : c; };
  const int pos = ca == cb ? 0 : (rank(ca) < rank(cb) ? 1 : -1);
  if (ext_ == ModuleExtension::position_over_term) {
    if (pos != 0) return pos;
    return compare(a, b);
  }
  const int mono = compare(a, b);
  return mono != 0 ? mono : pos;
}

int TermOrder::compare(const Monomial& a, std::size_t ca, const Monomial& b,
                       std::size_t cb) const {
  if (shifts_.empty()) return compare_unshifted(a, ca, b, cb);
  const Shift& sa = shifts_.at(ca);
  const Shift& sb = shifts_.at(cb);
  int c = 0;
  if (sa.component >= 0 && sb.component >= 0) {
    c = compare_unshifted(a * sa.monomial, static_cast<std::size_t>(sa.component),
                          b * sb.monomial, static_cast<std::size_t>(sb.component));
  } else if (sa.component >= 0) {
    c = 1;
  } else if (sb.component >= 0) {
    c = -1;
  } else {
    c = compare(a, b);
  }
  if (c != 0) return c;
  return ca == cb ? 0 : (ca < cb ? 1 : -1);
}

std::string TermOrder::describe() const {
  std::string s;
  switch (kind_) {
    case MonomialOrder::lex: s = "lex"; break;
    case MonomialOrder::grlex: s = "grlex"; break;
    case MonomialOrder::grevlex: s = "grevlex"; break;
  }
  s += ext_ == ModuleExtension::position_over_term ? "/pot" : "/top";
  if (!shifts_.empty()) s += "/schreyer";
  return s;
}

// ---------------------------------------------------------------- Polynomial

Polynomial::Polynomial(std::size_t nvars) : nvars_(nvars) { check_nvars(nvars); }

Polynomial::Polynomial(std::size_t nvars, std::vector<Term> terms)
    : nvars_(nvars), terms_(std::move(terms)) {
  check_nvars(nvars);
  canonicalize();
}

Polynomial Polynomial::constant(std::size_t nvars, const Rational& c) {
  return Polynomial(nvars, {{Monomial(nvars), c}});
}

Polynomial Polynomial::variable(std::size_t nvars, std::size_t index) {
  if (index >= nvars) throw InputError("variable index out of range");
  return Polynomial(nvars, {{Monomial::variable(nvars, index), Rational(1)}});
}

Polynomial Polynomial::term(const Monomial& m, const Rational& c) {
  return Polynomial(m.size(), {{m, c}});
}

void Polynomial::canonicalize() {
  for (const auto& [m, c] : terms_) {
    if (m.size() != nvars_) throw InputError("monomial length does not match variable count");
    check_degree(m.degree());
  }
  std::sort(terms_.begin(), terms_.end(),
            [](const Term& a, const Term& b) { return a.first < b.first; });
  std::vector<Term> merged;
  merged.reserve(terms_.size());
  for (auto& t : terms_) {
    if (!merged.empty() && merged.back().first == t.first) {
      merged.back().second += t.second;
    } else {
      merged.push_back(std::move(t));
    }
  }
  std::erase_if(merged, [](const Term& t) { return sgn(t.second) == 0; });
  for (auto& t : merged) t.second.canonicalize();
  std::sort(merged.begin(), merged.end(), [](const Term& a, const Term& b) {
    return grevlex_compare(a.first, b.first) > 0;
  });
  terms_ = std::move(merged);
}

bool Polynomial::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && terms_[0].first.is_one());
}

int Polynomial::total_degree() const {
  // Terms are sorted by grevlex, which is degree-compatible.
  return terms_.empty() ? -1 : terms_.front().first.degree();
}

int Polynomial::degree_in(std::size_t var) const {
  int d = terms_.empty() ? -1 : 0;
  for (const auto& [m, c] : terms_) d = std::max(d, m[var]);
  return d;
}

Rational Polynomial::coefficient(const Monomial& m) const {
  for (const auto& [mm, c] : terms_) {
    if (mm == m) return c;
  }
  return Rational(0);
}

const Polynomial::Term& Polynomial::leading_term(const TermOrder& order) const {
  if (terms_.empty()) throw InputError("leading term of the zero polynomial");
  const Term* best = &terms_.front();
  for (const auto& t : terms_) {
    if (order.compare(t.first, best->first) > 0) best = &t;
  }
  return *best;
}

Polynomial Polynomial::operator-() const {
  Polynomial r = *this;
  for (auto& t : r.terms_) t.second = -t.second;
  return r;
}

Polynomial& Polynomial::operator+=(const Polynomial& rhs) {
  if (rhs.nvars_ != nvars_) throw InputError("variable-count mismatch in polynomial arithmetic");
  terms_.insert(terms_.end(), rhs.terms_.begin(), rhs.terms_.end());
  canonicalize();
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& rhs) { return *this += -rhs; }

Polynomial& Polynomial::operator*=(const Polynomial& rhs) {
  if (rhs.nvars_ != nvars_) throw InputError("variable-count mismatch in polynomial arithmetic");
  std::map<Monomial, Rational> acc;
  for (const auto& [ma, ca] : terms_) {
    for (const auto& [mb, cb] : rhs.terms_) {
      Monomial m = ma * mb;
      check_degree(m.degree());
      auto [it, inserted] = acc.try_emplace(std::move(m), ca * cb);
      if (!inserted) it->second += ca * cb;
    }
  }
  std::vector<Term> out;
  out.reserve(acc.size());
  for (auto& [m, c] : acc) out.emplace_back(m, std::move(c));
  terms_ = std::move(out);
  canonicalize();
  return *this;
}

Polynomial& Polynomial::operator*=(const Rational& c) {
  if (sgn(c) == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& t : terms_) t.second *= c;
  return *this;
}

Polynomial Polynomial::mul_term(const Monomial& m, const Rational& c) const {
  Polynomial r(nvars_);
  if (sgn(c) == 0) return r;
  r.terms_.reserve(terms_.size());
  for (const auto& [mm, cc] : terms_) {
    Monomial prod = mm * m;
    check_degree(prod.degree());
    r.terms_.emplace_back(std::move(prod), cc * c);
  }
  // Multiplication by a monomial preserves grevlex order.
  return r;
}

Polynomial Polynomial::pow(unsigned e) const {
  Polynomial result = constant(nvars_, 1);
  Polynomial base = *this;
  while (e > 0) {
    if (e & 1U) result *= base;
    e >>= 1U;
    if (e > 0) base *= base;
  }
  return result;
}

Polynomial Polynomial::derivative(std::size_t var) const {
  std::vector<Term> out;
  for (const auto& [m, c] : terms_) {
    if (m[var] == 0) continue;
    std::vector<int> e(m.exponents().begin(), m.exponents().end());
    const int k = e[var]--;
    out.emplace_back(Monomial(std::move(e)), c * k);
  }
  return Polynomial(nvars_, std::move(out));
}

Polynomial Polynomial::sign_flip() const {
  Polynomial r = *this;
  for (auto& [m, c] : r.terms_) {
    if (m.degree() % 2 != 0) c = -c;
  }
  return r;
}

std::complex<double> Polynomial::eval(std::span<const std::complex<double>> point) const {
  if (point.size() != nvars_) throw InputError("evaluation point has the wrong length");
  // Power tables per variable, then one pass over the terms.
  std::vector<std::vector<std::complex<double>>> powers(nvars_);
  for (std::size_t v = 0; v < nvars_; ++v) {
    const int d = std::max(degree_in(v), 0);
    powers[v].resize(static_cast<std::size_t>(d) + 1);
    powers[v][0] = 1.0;
    for (int k = 1; k <= d; ++k) powers[v][k] = powers[v][k - 1] * point[v];
  }
  std::complex<double> sum = 0.0;
  for (const auto& [m, c] : terms_) {
    std::complex<double> t = c.get_d();
    for (std::size_t v = 0; v < nvars_; ++v) {
      if (m[v] != 0) t *= powers[v][m[v]];
    }
    sum += t;
  }
  return sum;
}

Rational Polynomial::eval(std::span<const Rational> point) const {
  if (point.size() != nvars_) throw InputError("evaluation point has the wrong length");
  Rational sum = 0;
  for (const auto& [m, c] : terms_) {
    Rational t = c;
    for (std::size_t v = 0; v < nvars_; ++v) {
      for (int k = 0; k < m[v]; ++k) t *= point[v];
    }
    sum += t;
  }
  return sum;
}

Polynomial Polynomial::primitive(Rational* scale) const {
  if (terms_.empty()) {
    if (scale) *scale = 1;
    return *this;
  }
  Integer den = 1;
  for (const auto& [m, c] : terms_) {
    mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), c.get_den_mpz_t());
  }
  Integer g = 0;
  for (const auto& [m, c] : terms_) {
    Integer num = c.get_num() * (den / c.get_den());
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), num.get_mpz_t());
  }
  Rational s(den, g);
  s.canonicalize();
  if (sgn(terms_.front().second) < 0) s = -s;
  if (scale) *scale = s;
  return *this * s;
}

Polynomial poly_arith(const Polynomial& lhs, const Polynomial& rhs, ArithOp op) {
  if (lhs.nvars() != rhs.nvars()) {
    throw InputError("variable-count mismatch: " + std::to_string(lhs.nvars()) + " vs " +
                     std::to_string(rhs.nvars()));
  }
  switch (op) {
    case ArithOp::add: return lhs + rhs;
    case ArithOp::sub: return lhs - rhs;
    case ArithOp::mul: return lhs * rhs;
  }
  return Polynomial(lhs.nvars());
}

// ---------------------------------------------------------------- ModuleElement

ModuleElement::ModuleElement(std::size_t rank, std::size_t nvars)
    : nvars_(nvars), comps_(rank, Polynomial(nvars)) {}

ModuleElement::ModuleElement(std::vector<Polynomial> components) : comps_(std::move(components)) {
  if (comps_.empty()) throw InputError("module element needs rank >= 1");
  nvars_ = comps_.front().nvars();
  for (const auto& p : comps_) {
    if (p.nvars() != nvars_) throw InputError("module element components disagree on variable count");
  }
}

ModuleElement ModuleElement::unit(std::size_t rank, std::size_t nvars, std::size_t k) {
  ModuleElement e(rank, nvars);
  e.comps_.at(k) = Polynomial::constant(nvars, 1);
  return e;
}

bool ModuleElement::is_zero() const {
  return std::all_of(comps_.begin(), comps_.end(), [](const Polynomial& p) { return p.is_zero(); });
}

int ModuleElement::total_degree() const {
  int d = -1;
  for (const auto& p : comps_) d = std::max(d, p.total_degree());
  return d;
}

ModuleElement& ModuleElement::operator+=(const ModuleElement& rhs) {
  if (rhs.rank() != rank()) throw InputError("rank mismatch in module arithmetic");
  for (std::size_t i = 0; i < comps_.size(); ++i) comps_[i] += rhs.comps_[i];
  return *this;
}

ModuleElement& ModuleElement::operator-=(const ModuleElement& rhs) {
  if (rhs.rank() != rank()) throw InputError("rank mismatch in module arithmetic");
  for (std::size_t i = 0; i < comps_.size(); ++i) comps_[i] -= rhs.comps_[i];
  return *this;
}

ModuleElement operator*(const Polynomial& p, const ModuleElement& v) {
  ModuleElement r = v;
  for (auto& c : r.comps_) c *= p;
  return r;
}

// ---------------------------------------------------------------- formatting

std::vector<std::string> default_variable_names(std::size_t nvars) {
  std::vector<std::string> names;
  for (std::size_t i = 0; i < nvars; ++i) names.push_back("z" + std::to_string(i + 1));
  return names;
}

std::string format_rational(const Rational& q) {
  Rational c = q;
  c.canonicalize();
  return c.get_str();
}

std::string format_polynomial(const Polynomial& p, std::span<const std::string> names) {
  if (p.is_zero()) return "0";
  std::ostringstream out;
  bool first = true;
  for (const auto& [m, c] : p.terms()) {
    Rational mag = abs(c);
    if (first) {
      if (sgn(c) < 0) out << "-";
    } else {
      out << (sgn(c) < 0 ? " - " : " + ");
    }
    first = false;
    bool need_star = false;
    if (m.is_one() || mag != 1) {
      out << format_rational(mag);
      need_star = true;
    }
    for (std::size_t v = 0; v < m.size(); ++v) {
      if (m[v] == 0) continue;
      if (need_star) out << "*";
      out << names[v];
      if (m[v] > 1) out << "^" << m[v];
      need_star = true;
    }
  }
  return out.str();
}

std::string format_polynomial(const Polynomial& p) {
  const auto names = default_variable_names(p.nvars());
  return format_polynomial(p, names);
}

}  // namespace overdet
