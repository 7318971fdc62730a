#include "overdet/variety.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <numeric>

#include <Eigen/Dense>

#include "overdet/errors.hpp"
#include "overdet/groebner.hpp"
#include "overdet/univariate.hpp"

namespace overdet {

namespace {

std::vector<std::size_t> involved(const Polynomial& p) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < p.nvars(); ++i) {
    if (p.degree_in(i) > 0) out.push_back(i);
  }
  return out;
}

Polynomial one(std::size_t nvars) { return Polynomial::constant(nvars, 1); }

Polynomial must_divide(const Polynomial& f, const Polynomial& g) {
  Polynomial q;
  if (!exact_divide(f, g, &q)) throw std::logic_error("inexact polynomial division");
  return q;
}

void square_free_into(const Polynomial& f, std::vector<std::pair<Polynomial, int>>& out) {
  const auto vars = involved(f);
  if (vars.empty()) return;
  const std::size_t v = vars.front();
  const Polynomial fp = f.derivative(v);
  const Polynomial a = polynomial_gcd(f, fp);
  Polynomial b = must_divide(f, a);
  Polynomial c = must_divide(fp, a);
  Polynomial d = c - b.derivative(v);
  Polynomial prod = one(f.nvars());
  for (int i = 1; b.degree_in(v) > 0; ++i) {
    const Polynomial ai = polynomial_gcd(b, d);
    b = must_divide(b, ai);
    c = must_divide(d, ai);
    d = c - b.derivative(v);
    if (!ai.is_constant()) {
      out.emplace_back(ai, i);
      prod *= ai.pow(static_cast<unsigned>(i));
    }
  }
  square_free_into(must_divide(f, prod), out);
}

std::vector<std::pair<Polynomial, int>> square_free_decomposition(const Polynomial& f) {
  std::vector<std::pair<Polynomial, int>> raw;
  square_free_into(f, raw);
  std::map<int, Polynomial> merged;
  for (auto& [g, m] : raw) {
    auto [it, inserted] = merged.try_emplace(m, g);
    if (!inserted) it->second *= g;
  }
  std::vector<std::pair<Polynomial, int>> out;
  for (auto& [m, g] : merged) out.emplace_back(g.primitive(), m);
  return out;
}

// Irreducible factors of a square-free primitive polynomial in the two
// variables u < w, by Kronecker substitution w = u^B.
std::vector<Polynomial> kronecker_factor(const Polynomial& f, std::size_t u, std::size_t w) {
  const int base = f.degree_in(u) + 1;
  uni::QPoly image;
  for (const auto& [m, c] : f.terms()) {
    const auto k = static_cast<std::size_t>(m[u] + base * m[w]);
    if (image.size() <= k) image.resize(k + 1);
    image[k] += c;
  }
  std::vector<uni::ZPoly> items;
  for (const auto& [g, mult] : uni::factor(image).factors) {
    for (int k = 0; k < mult; ++k) items.push_back(g);
  }
  const auto inverse = [&](const uni::ZPoly& g) {
    std::vector<Polynomial::Term> terms;
    for (std::size_t k = 0; k < g.size(); ++k) {
      if (sgn(g[k]) == 0) continue;
      Monomial m = Monomial::variable(f.nvars(), u, static_cast<int>(k % base)) *
                   Monomial::variable(f.nvars(), w, static_cast<int>(k / base));
      terms.emplace_back(m, Rational(g[k]));
    }
    return Polynomial(f.nvars(), std::move(terms));
  };

  std::vector<Polynomial> out;
  Polynomial cur = f;
  std::size_t s = 1;
  while (2 * s <= items.size()) {
    bool found = false;
    std::vector<std::size_t> idx(s);
    std::iota(idx.begin(), idx.end(), 0);
    while (true) {
      uni::ZPoly prod{1};
      for (auto i : idx) prod = uni::mul(prod, items[i]);
      const Polynomial g = inverse(prod);
      Polynomial q;
      if (!g.is_constant() && g.degree_in(u) <= cur.degree_in(u) &&
          g.degree_in(w) <= cur.degree_in(w) && exact_divide(cur, g, &q)) {
        out.push_back(g.primitive());
        cur = q;
        for (auto it = idx.rbegin(); it != idx.rend(); ++it) {
          items.erase(items.begin() + static_cast<std::ptrdiff_t>(*it));
        }
        found = true;
        break;
      }
      std::size_t pos = s;
      while (pos > 0 && idx[pos - 1] == items.size() - s + pos - 1) --pos;
      if (pos == 0) break;
      ++idx[pos - 1];
      for (std::size_t k = pos; k < s; ++k) idx[k] = idx[k - 1] + 1;
    }
    if (!found) ++s;
  }
  if (!cur.is_constant()) out.push_back(cur.primitive());
  return out;
}

std::string factor_key(const Polynomial& p) { return format_polynomial(p); }

}  // namespace

bool exact_divide(const Polynomial& f, const Polynomial& g, Polynomial* quotient) {
  if (g.is_zero()) throw InputError("division by the zero polynomial");
  const TermOrder order(MonomialOrder::grevlex);
  std::vector<ModuleElement> basis{ModuleElement({g})};
  const auto r = reduce(ModuleElement({f}), basis, order);
  if (!r.remainder.is_zero()) return false;
  if (quotient) *quotient = r.quotients.at(0);
  return true;
}

Polynomial polynomial_gcd(const Polynomial& a, const Polynomial& b) {
  if (a.is_zero()) return b.is_zero() ? b : b.primitive();
  if (b.is_zero()) return a.primitive();
  if (a.is_constant() || b.is_constant()) return one(a.nvars());
  const auto va = involved(a);
  if (va.size() == 1 && involved(b) == va) {
    const auto v = va.front();
    const auto g = uni::gcd(uni::from_polynomial(a, v), uni::from_polynomial(b, v));
    return uni::to_polynomial(uni::to_q(uni::primitive(g)), a.nvars(), v);
  }
  std::vector<ModuleElement> gens{ModuleElement({a}), ModuleElement({b})};
  const auto syz = syzygies(gens, TermOrder(MonomialOrder::grevlex));
  const ModuleElement* best = nullptr;
  for (const auto& row : syz.rows) {
    if (!best || row.total_degree() < best->total_degree()) best = &row;
  }
  if (!best) throw std::logic_error("missing syzygy of two nonzero polynomials");
  return must_divide(b, (*best)[0]).primitive();
}

Polynomial square_free_part(const Polynomial& p) {
  if (p.is_zero()) return p;
  Polynomial out = one(p.nvars());
  for (const auto& [g, m] : square_free_decomposition(p)) out *= g;
  return out.primitive();
}

FactorList factor(const Polynomial& p) {
  if (p.is_zero()) throw InputError("cannot factor the zero polynomial");
  FactorList out;
  const auto vars = involved(p);
  if (vars.size() == 1) {
    if (p.total_degree() > kMaxUnivariateFactorDegree) {
      throw ResourceError("univariate factoring is capped at degree " +
                          std::to_string(kMaxUnivariateFactorDegree));
    }
    const auto v = vars.front();
    for (const auto& [g, m] : uni::factor(uni::from_polynomial(p, v)).factors) {
      out.factors.emplace_back(uni::to_polynomial(uni::to_q(g), p.nvars(), v), m);
    }
  } else if (vars.size() == 2) {
    if (p.total_degree() > kMaxBivariateFactorDegree) {
      throw ResourceError("bivariate factoring is capped at total degree " +
                          std::to_string(kMaxBivariateFactorDegree));
    }
    for (const auto& [g, m] : square_free_decomposition(p)) {
      for (auto& h : kronecker_factor(g, vars[0], vars[1])) out.factors.emplace_back(h, m);
    }
  } else if (vars.size() > 2) {
    out.factors = square_free_decomposition(p);
    out.complete = false;
  }
  for (auto& [g, m] : out.factors) g = g.primitive();
  std::sort(out.factors.begin(), out.factors.end(), [](const auto& x, const auto& y) {
    if (x.second != y.second) return x.second > y.second;
    if (x.first.total_degree() != y.first.total_degree()) {
      return x.first.total_degree() < y.first.total_degree();
    }
    return factor_key(x.first) < factor_key(y.first);
  });
  Polynomial prod = one(p.nvars());
  for (const auto& [g, m] : out.factors) prod *= g.pow(static_cast<unsigned>(m));
  const TermOrder order(MonomialOrder::grevlex);
  out.unit = p.leading_term(order).second / prod.leading_term(order).second;
  return out;
}

// ---------------------------------------------------------------------------
// Zero-dimensional systems

namespace {

double magnitude(const Polynomial& p, std::span<const Complex> z) {
  double s = 0;
  for (const auto& [m, c] : p.terms()) {
    double t = std::abs(c.get_d());
    for (std::size_t i = 0; i < m.size(); ++i) t *= std::pow(std::abs(z[i]), m[i]);
    s += t;
  }
  return s;
}

double relative_residual(const Polynomial& p, std::span<const Complex> z) {
  const double mag = magnitude(p, z);
  const double v = std::abs(p.eval(z));
  return mag > 0 ? v / mag : v;
}

double system_residual(std::span<const Polynomial> ps, std::span<const Complex> z) {
  double r = 0;
  for (const auto& p : ps) r = std::max(r, relative_residual(p, z));
  return r;
}

std::vector<std::pair<Complex, int>> cluster(std::vector<Complex> roots) {
  std::vector<std::pair<Complex, int>> out;
  std::vector<bool> used(roots.size(), false);
  for (std::size_t i = 0; i < roots.size(); ++i) {
    if (used[i]) continue;
    Complex sum = roots[i];
    int count = 1;
    used[i] = true;
    const double tol = 1e-6 * std::max(1.0, std::abs(roots[i]));
    for (std::size_t j = i + 1; j < roots.size(); ++j) {
      if (!used[j] && std::abs(roots[j] - roots[i]) <= tol) {
        used[j] = true;
        sum += roots[j];
        ++count;
      }
    }
    out.emplace_back(sum / static_cast<double>(count), count);
  }
  return out;
}

// Coefficients of p in variable k after substituting the known values of the
// later variables, with per-coefficient magnitudes.
std::pair<std::vector<Complex>, std::vector<double>> specialize(const Polynomial& p, std::size_t k,
                                                                std::span<const Complex> z) {
  const auto d = static_cast<std::size_t>(p.degree_in(k));
  std::vector<Complex> coeffs(d + 1);
  std::vector<double> mags(d + 1, 0.0);
  for (const auto& [m, c] : p.terms()) {
    Complex t(c.get_d(), 0);
    double mag = std::abs(c.get_d());
    for (std::size_t i = k + 1; i < m.size(); ++i) {
      t *= std::pow(z[i], m[i]);
      mag *= std::pow(std::abs(z[i]), m[i]);
    }
    coeffs[static_cast<std::size_t>(m[k])] += t;
    mags[static_cast<std::size_t>(m[k])] += mag;
  }
  return {coeffs, mags};
}

void refine(std::span<const Polynomial> ps, std::vector<Complex>& z) {
  const std::size_t n = z.size();
  std::vector<std::vector<Polynomial>> jac(ps.size());
  for (std::size_t i = 0; i < ps.size(); ++i) {
    for (std::size_t j = 0; j < n; ++j) jac[i].push_back(ps[i].derivative(j));
  }
  const auto norm2 = [&](std::span<const Complex> x) {
    double s = 0;
    for (const auto& p : ps) s += std::norm(p.eval(x));
    return s;
  };
  double cur = norm2(z);
  for (int iter = 0; iter < 40 && cur > 0; ++iter) {
    Eigen::MatrixXcd J(ps.size(), n);
    Eigen::VectorXcd F(ps.size());
    for (std::size_t i = 0; i < ps.size(); ++i) {
      F(static_cast<Eigen::Index>(i)) = ps[i].eval(z);
      for (std::size_t j = 0; j < n; ++j) {
        J(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = jac[i][j].eval(z);
      }
    }
    const Eigen::VectorXcd step = J.completeOrthogonalDecomposition().solve(F);
    bool improved = false;
    for (double damp = 1.0; damp > 1e-4; damp /= 2) {
      std::vector<Complex> trial(z);
      for (std::size_t j = 0; j < n; ++j) trial[j] -= damp * step(static_cast<Eigen::Index>(j));
      const double t = norm2(trial);
      if (t < cur) {
        z = trial;
        cur = t;
        improved = true;
        break;
      }
    }
    if (!improved) break;
  }
}

Complex clean(Complex c) {
  const double scale = std::max(1.0, std::abs(c));
  double re = c.real(), im = c.imag();
  if (std::abs(re) < 1e-12 * scale) re = 0;
  if (std::abs(im) < 1e-12 * scale) im = 0;
  return {re, im};
}

bool complex_less(Complex a, Complex b) {
  const auto key = [](double x) { return std::llround(x * 1e9); };
  if (key(a.real()) != key(b.real())) return key(a.real()) < key(b.real());
  return key(a.imag()) < key(b.imag());
}

}  // namespace

std::vector<Solution> solve_zero_dim(std::span<const Polynomial> generators) {
  if (generators.empty()) throw InputError("empty system");
  const std::size_t n = generators.front().nvars();
  std::vector<Polynomial> gens;
  for (const auto& g : generators) {
    if (g.nvars() != n) throw InputError("generators live in different rings");
    if (!g.is_zero()) gens.push_back(g);
  }
  const TermOrder lex(MonomialOrder::lex);
  std::vector<Polynomial> gb;
  if (!gens.empty()) {
    for (const auto& e : ideal_basis(gens, lex).generators) gb.push_back(e[0]);
  }
  for (const auto& g : gb) {
    if (g.is_constant()) return {};
  }
  std::vector<int> bound(n, 0);
  std::vector<Monomial> leads;
  for (const auto& g : gb) {
    const Monomial& m = g.leading_term(lex).first;
    leads.push_back(m);
    for (std::size_t i = 0; i < n; ++i) {
      if (m[i] == m.degree() && (bound[i] == 0 || m[i] < bound[i])) bound[i] = m[i];
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (bound[i] == 0) {
      throw InputError(
          "ideal is positive-dimensional; use the Puiseux expansion for plane curves");
    }
  }

  std::vector<Monomial> standard;
  {
    std::vector<int> e(n, 0);
    while (true) {
      Monomial m(e);
      if (std::none_of(leads.begin(), leads.end(), [&](const Monomial& l) { return l.divides(m); })) {
        standard.push_back(m);
      }
      std::size_t i = 0;
      while (i < n && ++e[i] >= bound[i]) e[i++] = 0;
      if (i == n) break;
    }
  }
  if (standard.size() > 400) throw ResourceError("more than 400 solutions");

  // Back substitution from the last variable up.
  std::vector<std::vector<Complex>> partial{std::vector<Complex>(n)};
  for (std::size_t k = n; k-- > 0;) {
    std::vector<const Polynomial*> rel;
    for (const auto& g : gb) {
      const auto vs = involved(g);
      if (!vs.empty() && vs.front() == k) rel.push_back(&g);
    }
    std::vector<std::vector<Complex>> next;
    for (const auto& z : partial) {
      const Polynomial* pick = nullptr;
      std::vector<Complex> pick_coeffs;
      for (const auto* g : rel) {
        auto [co, mags] = specialize(*g, k, z);
        while (co.size() > 1 && std::abs(co.back()) <= 1e-9 * mags.back()) {
          co.pop_back();
          mags.pop_back();
        }
        if (co.size() < 2) continue;
        if (!pick || co.size() < pick_coeffs.size()) {
          pick = g;
          pick_coeffs = co;
        }
      }
      if (!pick) continue;
      std::vector<std::pair<Complex, int>> cands;
      if (k + 1 == n && involved(*pick).size() == 1) {
        uni::QPoly part{1};
        for (const auto& [a, m] : uni::square_free(uni::from_polynomial(*pick, k))) {
          part = uni::mul(part, a);
        }
        std::vector<Complex> co;
        for (const auto& c : part) co.emplace_back(c.get_d(), 0);
        for (auto r : polynomial_roots(co)) cands.emplace_back(r, 1);
      } else {
        cands = cluster(polynomial_roots(pick_coeffs));
      }
      for (const auto& [r, m] : cands) {
        std::vector<Complex> w(z);
        w[k] = r;
        bool ok = true;
        for (const auto* g : rel) {
          if (relative_residual(*g, w) > 1e-6) ok = false;
        }
        if (ok) next.push_back(std::move(w));
      }
    }
    partial = std::move(next);
  }

  std::vector<Solution> sols;
  for (auto& z : partial) {
    refine(gb, z);
    for (auto& c : z) c = clean(c);
    bool dup = false;
    for (const auto& s : sols) {
      double d = 0, scale = 1;
      for (std::size_t i = 0; i < n; ++i) {
        d = std::max(d, std::abs(s.point[i] - z[i]));
        scale = std::max(scale, std::abs(z[i]));
      }
      if (d <= 1e-6 * scale) dup = true;
    }
    if (!dup) sols.push_back({z, 0, system_residual(gens, z)});
  }

  // Multiplicities from the eigenvalues of multiplication by a linear form.
  std::vector<Rational> ell(n);
  for (std::size_t i = 0; i < n; ++i) {
    ell[i] = Rational(3 * static_cast<long>(i) + 2, 5 * static_cast<long>(i) + 7);
    ell[i].canonicalize();
  }
  Polynomial form(n);
  for (std::size_t i = 0; i < n; ++i) form += ell[i] * Polynomial::variable(n, i);
  std::map<Monomial, std::size_t> index;
  for (std::size_t i = 0; i < standard.size(); ++i) index[standard[i]] = i;
  std::vector<ModuleElement> basis;
  for (const auto& g : gb) basis.push_back(ModuleElement({g}));
  const auto D = static_cast<Eigen::Index>(standard.size());
  Eigen::MatrixXd M = Eigen::MatrixXd::Zero(D, D);
  for (std::size_t j = 0; j < standard.size(); ++j) {
    const auto nf = reduce(ModuleElement({form.mul_term(standard[j], 1)}), basis, lex).remainder[0];
    for (const auto& [m, c] : nf.terms()) {
      M(static_cast<Eigen::Index>(index.at(m)), static_cast<Eigen::Index>(j)) = c.get_d();
    }
  }
  const Eigen::VectorXcd eig = Eigen::EigenSolver<Eigen::MatrixXd>(M, false).eigenvalues();
  std::vector<Complex> values;
  for (const auto& s : sols) {
    Complex v = 0;
    for (std::size_t i = 0; i < n; ++i) v += ell[i].get_d() * s.point[i];
    values.push_back(v);
  }
  for (Eigen::Index e = 0; e < eig.size() && !sols.empty(); ++e) {
    std::size_t best = 0;
    for (std::size_t i = 1; i < values.size(); ++i) {
      if (std::abs(values[i] - eig(e)) < std::abs(values[best] - eig(e))) best = i;
    }
    ++sols[best].multiplicity;
  }
  for (auto& s : sols) s.multiplicity = std::max(1, s.multiplicity);

  std::sort(sols.begin(), sols.end(), [](const Solution& a, const Solution& b) {
    for (std::size_t i = 0; i < a.point.size(); ++i) {
      if (complex_less(a.point[i], b.point[i])) return true;
      if (complex_less(b.point[i], a.point[i])) return false;
    }
    return false;
  });
  return sols;
}

// ---------------------------------------------------------------------------
// Newton-Puiseux at infinity, in t = 1/z1.

namespace {

struct Approx {
  Complex v;
  double mag = 0;
};

bool negligible(const Rational& a) { return sgn(a) == 0; }
bool negligible(const Approx& a) { return std::abs(a.v) <= 1e-10 * a.mag; }
Rational kmul(const Rational& a, const Rational& b) { return a * b; }
Approx kmul(const Approx& a, const Approx& b) { return {a.v * b.v, a.mag * b.mag}; }
Rational kadd(const Rational& a, const Rational& b) { return a + b; }
Approx kadd(const Approx& a, const Approx& b) { return {a.v + b.v, a.mag + b.mag}; }
Complex value(const Rational& a) { return {a.get_d(), 0}; }
Complex value(const Approx& a) { return a.v; }

template <class K>
K from_q(const Rational& q);
template <>
Rational from_q<Rational>(const Rational& q) {
  return q;
}
template <>
Approx from_q<Approx>(const Rational& q) {
  return {Complex(q.get_d(), 0), std::abs(q.get_d())};
}

template <class K>
using Series = std::map<Rational, K>;
template <class K>
using SPoly = std::vector<Series<K>>;

template <class K>
void accumulate(Series<K>& s, const Rational& e, const K& x) {
  auto [it, inserted] = s.try_emplace(e, x);
  if (!inserted) it->second = kadd(it->second, x);
}

template <class K>
void prune(Series<K>& s) {
  std::erase_if(s, [](const auto& kv) { return negligible(kv.second); });
}

Rational binomial(unsigned long n, unsigned long k) {
  Integer r;
  mpz_bin_uiui(r.get_mpz_t(), n, k);
  return Rational(r);
}

// G(c t^gamma + z) as a polynomial in z.
template <class K>
SPoly<K> substitute(const SPoly<K>& G, const K& c, const Rational& gamma) {
  const std::size_t n = G.size();
  std::vector<K> cp{from_q<K>(1)};
  for (std::size_t i = 1; i < n; ++i) cp.push_back(kmul(cp.back(), c));
  SPoly<K> out(n);
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t j = k; j < n; ++j) {
      if (G[j].empty()) continue;
      const K f = kmul(from_q<K>(binomial(j, k)), cp[j - k]);
      const Rational shift = gamma * static_cast<long>(j - k);
      for (const auto& [e, x] : G[j]) accumulate(out[k], e + shift, kmul(f, x));
    }
    prune(out[k]);
  }
  return out;
}

SPoly<Approx> to_approx(const SPoly<Rational>& G) {
  SPoly<Approx> out(G.size());
  for (std::size_t j = 0; j < G.size(); ++j) {
    for (const auto& [e, x] : G[j]) out[j].emplace(e, from_q<Approx>(x));
  }
  return out;
}

struct RawTerm {
  Rational gamma;
  Complex value;
  std::optional<Rational> exact;
};

struct RawBranch {
  std::vector<RawTerm> terms;
  bool terminated = false;
  bool separated = true;
  std::optional<Rational> bound;  // in t-order
};

struct Expansion {
  int order;
  std::vector<RawBranch> out;

  template <class K>
  void expand(const SPoly<K>& G, const std::vector<RawTerm>& terms,
              const std::optional<Rational>& gprev, int m);

  template <class K>
  void descend(const SPoly<K>& G, std::vector<RawTerm> terms, const Rational& gamma,
               const K& c, std::optional<Rational> exact, int mult) {
    terms.push_back({gamma, value(c), std::move(exact)});
    expand<K>(substitute(G, c, gamma), terms, gamma, mult);
  }

  void roots_of(const SPoly<Rational>& G, const std::vector<RawTerm>& terms,
                const Rational& gamma, const std::vector<Rational>& phi) {
    uni::QPoly rest = phi;
    for (const auto& [r, mult] : uni::rational_roots(phi)) {
      descend<Rational>(G, terms, gamma, r, r, mult);
      for (int k = 0; k < mult; ++k) rest = uni::divmod(rest, uni::QPoly{-r, 1}).first;
    }
    if (uni::degree(rest) < 1) return;
    const SPoly<Approx> A = to_approx(G);
    for (const auto& [a, mult] : uni::square_free(rest)) {
      std::vector<Complex> co;
      for (const auto& c : a) co.emplace_back(c.get_d(), 0);
      for (const auto& r : polynomial_roots(co)) {
        descend<Approx>(A, terms, gamma, Approx{r, std::abs(r)}, std::nullopt, mult);
      }
    }
  }

  void roots_of(const SPoly<Approx>& G, const std::vector<RawTerm>& terms,
                const Rational& gamma, const std::vector<Approx>& phi) {
    std::vector<Complex> co;
    for (const auto& c : phi) co.push_back(c.v);
    for (const auto& [r, mult] : cluster(polynomial_roots(co))) {
      descend<Approx>(G, terms, gamma, Approx{r, std::abs(r)}, std::nullopt, mult);
    }
  }
};

template <class K>
void Expansion::expand(const SPoly<K>& G, const std::vector<RawTerm>& terms,
                       const std::optional<Rational>& gprev, int m) {
  const auto emit = [&](int count, bool terminated, bool separated, std::optional<Rational> b) {
    for (int i = 0; i < count; ++i) out.push_back({terms, terminated, separated, b});
  };
  const int n = static_cast<int>(G.size()) - 1;
  int k0 = 0;
  while (k0 <= n && G[static_cast<std::size_t>(k0)].empty()) ++k0;
  if (k0 > n) {
    emit(m, true, true, std::nullopt);
    return;
  }
  const int zeros = std::min(k0, m);
  emit(zeros, true, true, std::nullopt);
  const int remaining = m - zeros;
  if (remaining == 0) return;
  if (m == 1 && gprev && static_cast<int>(terms.size()) >= order) {
    std::optional<Rational> mu;
    for (int j = 1; j <= n; ++j) {
      const auto& s = G[static_cast<std::size_t>(j)];
      if (s.empty()) continue;
      const Rational v = s.begin()->first + *gprev * j;
      if (!mu || v < *mu) mu = v;
    }
    emit(1, false, true, mu);
    return;
  }
  if (static_cast<int>(terms.size()) >= order + 64) {
    emit(remaining, false, false, std::nullopt);
    return;
  }

  std::vector<std::pair<int, Rational>> hull;
  for (int j = k0; j <= n; ++j) {
    const auto& s = G[static_cast<std::size_t>(j)];
    if (s.empty()) continue;
    const std::pair<int, Rational> p{j, s.begin()->first};
    while (hull.size() >= 2) {
      const auto& a = hull[hull.size() - 2];
      const auto& b = hull.back();
      const Rational cross = Rational(b.first - a.first) * (p.second - a.second) -
                             (b.second - a.second) * Rational(p.first - a.first);
      if (sgn(cross) > 0) break;
      hull.pop_back();
    }
    hull.push_back(p);
  }
  int covered = 0;
  for (std::size_t e = 0; e + 1 < hull.size(); ++e) {
    const auto& [j0, v0] = hull[e];
    const auto& [j1, v1] = hull[e + 1];
    const Rational gamma = (v0 - v1) / Rational(j1 - j0);
    if (gprev && gamma <= *gprev) continue;
    if (covered + (j1 - j0) > remaining) break;
    covered += j1 - j0;
    const Rational mu = v0 + gamma * j0;
    std::vector<K> phi(static_cast<std::size_t>(j1 - j0 + 1), from_q<K>(0));
    for (int j = j0; j <= j1; ++j) {
      const auto& s = G[static_cast<std::size_t>(j)];
      auto it = s.find(mu - gamma * j);
      if (it != s.end()) phi[static_cast<std::size_t>(j - j0)] = it->second;
    }
    roots_of(G, terms, gamma, phi);
  }
  if (covered < remaining) emit(remaining - covered, false, false, std::nullopt);
}

}  // namespace

PuiseuxResult puiseux_at_infinity(const Polynomial& curve, int order) {
  if (curve.nvars() != 2) throw InputError("Puiseux expansion needs a curve in two variables");
  if (curve.is_zero()) throw InputError("curve polynomial is zero");
  if (order < 1) throw InputError("Puiseux order must be positive");
  if (curve.total_degree() > kMaxCurveDegree) {
    throw ResourceError("Puiseux expansion is capped at total degree " +
                        std::to_string(kMaxCurveDegree));
  }
  PuiseuxResult res;
  const Polynomial f = square_free_part(curve);
  if (f.total_degree() != curve.total_degree()) {
    res.square_free_input = false;
    res.notes.push_back("input is not square-free; expanding its square-free part");
  }
  res.degree_z2 = f.degree_in(1);
  if (res.degree_z2 == 0) {
    res.notes.push_back("curve does not involve z2; no branches over |z1| -> infinity");
    return res;
  }
  SPoly<Rational> G(static_cast<std::size_t>(res.degree_z2) + 1);
  for (const auto& [m, c] : f.terms()) {
    G[static_cast<std::size_t>(m[1])].emplace(Rational(-m[0]), c);
  }
  const auto& lead = G.back();
  res.monic_in_z2 = lead.size() == 1 && sgn(lead.begin()->first) == 0;
  if (!res.monic_in_z2) {
    res.notes.push_back(
        "leading coefficient in z2 depends on z1; branches over |z1| -> infinity are "
        "complete but vertical asymptotes are not covered");
  }

  Expansion ex{order, {}};
  ex.expand<Rational>(G, {}, std::nullopt, res.degree_z2);

  for (const auto& raw : ex.out) {
    PuiseuxBranch b;
    Integer q = 1;
    for (const auto& t : raw.terms) {
      PuiseuxTerm term{-t.gamma, clean(t.value), t.exact};
      b.exact = b.exact && t.exact.has_value();
      q = lcm(q, Integer(term.exponent.get_den()));
      b.terms.push_back(std::move(term));
    }
    b.ramification = static_cast<int>(q.get_si());
    b.truncation_order = static_cast<int>(b.terms.size());
    b.terminated = raw.terminated;
    b.separated = raw.separated;
    if (raw.bound) b.residual_bound = -*raw.bound;
    res.branches.push_back(std::move(b));
  }

  const auto branch_less = [](const PuiseuxBranch& a, const PuiseuxBranch& b) {
    const std::size_t n = std::min(a.terms.size(), b.terms.size());
    for (std::size_t i = 0; i < n; ++i) {
      const auto& x = a.terms[i];
      const auto& y = b.terms[i];
      if (x.exponent != y.exponent) return x.exponent > y.exponent;
      if (complex_less(x.coefficient, y.coefficient)) return true;
      if (complex_less(y.coefficient, x.coefficient)) return false;
    }
    return a.terms.size() > b.terms.size();
  };
  std::stable_sort(res.branches.begin(), res.branches.end(), branch_less);

  // Conjugacy classes under z1^{1/q} -> omega z1^{1/q}.
  const std::size_t nb = res.branches.size();
  std::vector<std::size_t> parent(nb);
  std::iota(parent.begin(), parent.end(), 0);
  const auto find = [&](std::size_t i) {
    while (parent[i] != i) i = parent[i] = parent[parent[i]];
    return i;
  };
  const auto conjugate = [](const PuiseuxBranch& a, const PuiseuxBranch& b) {
    if (a.ramification != b.ramification || a.ramification == 1) return false;
    const std::size_t n = std::min(a.terms.size(), b.terms.size());
    if (n == 0) return false;
    for (std::size_t i = 0; i < n; ++i) {
      if (a.terms[i].exponent != b.terms[i].exponent) return false;
    }
    const int q = a.ramification;
    for (int k = 1; k < q; ++k) {
      bool all = true;
      for (std::size_t i = 0; i < n && all; ++i) {
        const Rational eq = a.terms[i].exponent * q;
        const double angle = 2 * std::numbers::pi * k * eq.get_d() / q;
        const Complex w = a.terms[i].coefficient * std::polar(1.0, angle);
        all = std::abs(w - b.terms[i].coefficient) <=
              1e-6 * std::max(1.0, std::abs(b.terms[i].coefficient));
      }
      if (all) return true;
    }
    return false;
  };
  for (std::size_t i = 0; i < nb; ++i) {
    for (std::size_t j = i + 1; j < nb; ++j) {
      if (conjugate(res.branches[i], res.branches[j])) parent[find(j)] = find(i);
    }
  }
  std::map<std::size_t, int> ids;
  std::map<std::size_t, int> sizes;
  for (std::size_t i = 0; i < nb; ++i) ++sizes[find(i)];
  for (std::size_t i = 0; i < nb; ++i) {
    const auto root = find(i);
    auto [it, inserted] = ids.try_emplace(root, static_cast<int>(ids.size()));
    res.branches[i].conjugacy_class = it->second;
    res.branches[i].class_size = sizes[root];
  }
  return res;
}

namespace {

template <class K>
std::optional<Rational> residual_order(const Polynomial& curve, const Series<K>& z2) {
  const int n = curve.degree_in(1);
  std::vector<Series<K>> b(static_cast<std::size_t>(n) + 1);
  for (const auto& [m, c] : curve.terms()) {
    accumulate(b[static_cast<std::size_t>(m[1])], Rational(m[0]), from_q<K>(c));
  }
  Series<K> acc;
  for (int j = n; j >= 0; --j) {
    Series<K> next;
    for (const auto& [e1, x] : acc) {
      for (const auto& [e2, y] : z2) accumulate(next, e1 + e2, kmul(x, y));
    }
    for (const auto& [e, x] : b[static_cast<std::size_t>(j)]) accumulate(next, e, x);
    prune(next);
    acc = std::move(next);
  }
  if (acc.empty()) return std::nullopt;
  return acc.rbegin()->first;
}

}  // namespace

std::optional<Rational> puiseux_residual_exponent(const Polynomial& curve,
                                                  const PuiseuxBranch& branch) {
  if (curve.nvars() != 2) throw InputError("Puiseux residual needs a curve in two variables");
  if (branch.exact) {
    Series<Rational> z2;
    for (const auto& t : branch.terms) z2.emplace(t.exponent, *t.exact);
    return residual_order(curve, z2);
  }
  Series<Approx> z2;
  for (const auto& t : branch.terms) z2.emplace(t.exponent, Approx{t.coefficient, std::abs(t.coefficient)});
  return residual_order(curve, z2);
}

BranchReport branch_report(std::span<const PuiseuxBranch> branches, const WeightSpec& weight,
                           const BranchPredicate& predicate) {
  BranchReport rep;
  if (weight.family == WeightFamily::gevrey && sgn(weight.parameter) > 0) {
    rep.gevrey_s = Rational(1) / weight.parameter;
  }
  const auto real = [](Complex c) { return c.imag() == 0; };
  for (const auto& b : branches) {
    BranchSummary row;
    row.leading_exponent = b.terms.empty() ? "none" : format_rational(b.terms.front().exponent);
    row.ramification = b.ramification;
    row.leading_real = b.terms.empty() || real(b.terms.front().coefficient);
    row.coefficients_real = std::all_of(b.terms.begin(), b.terms.end(),
                                        [&](const PuiseuxTerm& t) { return real(t.coefficient); });
    row.class_size = b.class_size;
    if (!b.separated) row.annotations.push_back("not separated within the depth cap");
    if (predicate) {
      if (auto note = predicate(b, weight)) row.annotations.push_back(*note);
    }
    rep.rows.push_back(std::move(row));
  }
  return rep;
}

}  // namespace overdet
