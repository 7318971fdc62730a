#include "overdet/univariate.hpp"

#include <algorithm>
#include <numeric>

#include "overdet/errors.hpp"

namespace overdet::uni {

namespace {

// ---------------------------------------------------------------- F_p arithmetic

class ModRing {
 public:
  explicit ModRing(Integer p) : p_(std::move(p)) {}
  const Integer& modulus() const { return p_; }

  Integer norm(const Integer& a) const {
    Integer r;
    mpz_mod(r.get_mpz_t(), a.get_mpz_t(), p_.get_mpz_t());
    return r;
  }
  Integer inv(const Integer& a) const {
    Integer r;
    if (mpz_invert(r.get_mpz_t(), a.get_mpz_t(), p_.get_mpz_t()) == 0) {
      throw RangeError("non-invertible element modulo p");
    }
    return r;
  }

  ZPoly reduce(ZPoly a) const {
    for (auto& c : a) c = norm(c);
    trim(a);
    return a;
  }
  ZPoly sub(const ZPoly& a, const ZPoly& b) const {
    ZPoly r(std::max(a.size(), b.size()));
    for (std::size_t i = 0; i < r.size(); ++i) {
      r[i] = (i < a.size() ? a[i] : Integer(0)) - (i < b.size() ? b[i] : Integer(0));
    }
    return reduce(std::move(r));
  }
  ZPoly mul(const ZPoly& a, const ZPoly& b) const {
    if (a.empty() || b.empty()) return {};
    ZPoly r(a.size() + b.size() - 1);
    for (std::size_t i = 0; i < a.size(); ++i) {
      for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    }
    return reduce(std::move(r));
  }
  std::pair<ZPoly, ZPoly> divmod(ZPoly a, const ZPoly& b) const {
    const Integer il = inv(b.back());
    if (a.size() < b.size()) return {{}, a};
    ZPoly q(a.size() - b.size() + 1);
    for (std::size_t k = q.size(); k-- > 0;) {
      const Integer c = norm(a[k + b.size() - 1] * il);
      q[k] = c;
      if (c == 0) continue;
      for (std::size_t j = 0; j < b.size(); ++j) a[k + j] = norm(a[k + j] - c * b[j]);
    }
    return {reduce(std::move(q)), reduce(std::move(a))};
  }
  ZPoly mod(const ZPoly& a, const ZPoly& b) const { return divmod(a, b).second; }
  ZPoly monic(ZPoly a) const {
    if (a.empty()) return a;
    const Integer il = inv(a.back());
    for (auto& c : a) c = norm(c * il);
    return a;
  }
  ZPoly gcd(ZPoly a, ZPoly b) const {
    while (!b.empty()) {
      ZPoly r = mod(a, b);
      a = std::move(b);
      b = std::move(r);
    }
    return monic(std::move(a));
  }
  ZPoly powmod(ZPoly base, Integer e, const ZPoly& f) const {
    ZPoly result{Integer(1)};
    base = mod(base, f);
    while (e > 0) {
      if (mpz_odd_p(e.get_mpz_t())) result = mod(mul(result, base), f);
      base = mod(mul(base, base), f);
      e >>= 1;
    }
    return result;
  }
  ZPoly derivative(const ZPoly& a) const {
    ZPoly r;
    for (std::size_t i = 1; i < a.size(); ++i) r.push_back(a[i] * static_cast<unsigned long>(i));
    return reduce(std::move(r));
  }

 private:
  Integer p_;
};

std::vector<std::pair<ZPoly, int>> distinct_degree(ZPoly f, const ModRing& R) {
  std::vector<std::pair<ZPoly, int>> out;
  const ZPoly x{Integer(0), Integer(1)};
  ZPoly h = x;
  for (int i = 1; 2 * i <= degree(f); ++i) {
    h = R.powmod(h, R.modulus(), f);
    ZPoly g = R.gcd(R.sub(h, x), f);
    if (degree(g) > 0) {
      out.emplace_back(g, i);
      f = R.divmod(f, g).first;
      h = R.mod(h, f);
    }
  }
  if (degree(f) > 0) out.emplace_back(R.monic(f), degree(f));
  return out;
}

void equal_degree(const ZPoly& g, int d, const ModRing& R, gmp_randclass& rng,
                  std::vector<ZPoly>& out) {
  if (degree(g) == d) {
    out.push_back(g);
    return;
  }
  Integer e;
  mpz_pow_ui(e.get_mpz_t(), R.modulus().get_mpz_t(), static_cast<unsigned long>(d));
  e = (e - 1) / 2;
  for (;;) {
    ZPoly a(static_cast<std::size_t>(degree(g)));
    for (auto& c : a) c = rng.get_z_range(R.modulus());
    a = R.reduce(std::move(a));
    if (degree(a) < 1) continue;
    ZPoly b = R.sub(R.powmod(a, e, g), ZPoly{Integer(1)});
    ZPoly h = R.gcd(b, g);
    if (degree(h) > 0 && degree(h) < degree(g)) {
      equal_degree(h, d, R, rng, out);
      equal_degree(R.monic(R.divmod(g, h).first), d, R, rng, out);
      return;
    }
  }
}

Integer symmetric(const Integer& a, const Integer& p) {
  Integer r;
  mpz_mod(r.get_mpz_t(), a.get_mpz_t(), p.get_mpz_t());
  if (2 * r > p) r -= p;
  return r;
}

ZPoly primitive_z(ZPoly p) {
  trim(p);
  if (p.empty()) return p;
  Integer g = content(p);
  for (auto& c : p) c /= g;
  if (sgn(p.back()) < 0) {
    for (auto& c : p) c = -c;
  }
  return p;
}

bool poly_less(const ZPoly& a, const ZPoly& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  for (std::size_t i = a.size(); i-- > 0;) {
    if (a[i] != b[i]) return a[i] < b[i];
  }
  return false;
}

}  // namespace

QPoly to_q(const ZPoly& p) { return QPoly(p.begin(), p.end()); }

Integer content(const ZPoly& p) {
  Integer g = 0;
  for (const auto& c : p) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
  return g == 0 ? Integer(1) : g;
}

ZPoly primitive(const QPoly& p) {
  Integer den = 1;
  for (const auto& c : p) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), c.get_den_mpz_t());
  ZPoly z;
  z.reserve(p.size());
  for (const auto& c : p) z.push_back(c.get_num() * (den / c.get_den()));
  return primitive_z(std::move(z));
}

QPoly add(const QPoly& a, const QPoly& b) {
  QPoly r(std::max(a.size(), b.size()));
  for (std::size_t i = 0; i < a.size(); ++i) r[i] += a[i];
  for (std::size_t i = 0; i < b.size(); ++i) r[i] += b[i];
  trim(r);
  return r;
}

QPoly sub(const QPoly& a, const QPoly& b) {
  QPoly r(std::max(a.size(), b.size()));
  for (std::size_t i = 0; i < a.size(); ++i) r[i] += a[i];
  for (std::size_t i = 0; i < b.size(); ++i) r[i] -= b[i];
  trim(r);
  return r;
}

QPoly mul(const QPoly& a, const QPoly& b) {
  if (a.empty() || b.empty()) return {};
  QPoly r(a.size() + b.size() - 1);
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  }
  trim(r);
  return r;
}

ZPoly mul(const ZPoly& a, const ZPoly& b) {
  if (a.empty() || b.empty()) return {};
  ZPoly r(a.size() + b.size() - 1);
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  }
  trim(r);
  return r;
}

std::pair<QPoly, QPoly> divmod(const QPoly& a, const QPoly& b) {
  if (b.empty()) throw InputError("division by the zero polynomial");
  QPoly r = a;
  trim(r);
  if (r.size() < b.size()) return {{}, r};
  QPoly q(r.size() - b.size() + 1);
  for (std::size_t k = q.size(); k-- > 0;) {
    const Rational c = r[k + b.size() - 1] / b.back();
    q[k] = c;
    if (sgn(c) == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) r[k + j] -= c * b[j];
  }
  trim(q);
  trim(r);
  return {q, r};
}

QPoly derivative(const QPoly& p) {
  QPoly r;
  for (std::size_t i = 1; i < p.size(); ++i) r.push_back(p[i] * static_cast<unsigned long>(i));
  trim(r);
  return r;
}

QPoly monic(const QPoly& p) {
  if (p.empty()) return p;
  QPoly r = p;
  const Rational inv = 1 / p.back();
  for (auto& c : r) c *= inv;
  return r;
}

QPoly gcd(QPoly a, QPoly b) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    QPoly r = divmod(a, b).second;
    a = std::move(b);
    b = monic(r);
  }
  return monic(a);
}

bool divides(const ZPoly& b, const ZPoly& a, ZPoly* quotient) {
  if (b.empty()) return false;
  ZPoly r = a;
  trim(r);
  if (r.empty()) {
    if (quotient) quotient->clear();
    return true;
  }
  if (r.size() < b.size()) return false;
  ZPoly q(r.size() - b.size() + 1);
  for (std::size_t k = q.size(); k-- > 0;) {
    const Integer& top = r[k + b.size() - 1];
    if (!mpz_divisible_p(top.get_mpz_t(), b.back().get_mpz_t())) return false;
    const Integer c = top / b.back();
    q[k] = c;
    if (c == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) r[k + j] -= c * b[j];
  }
  trim(r);
  if (!r.empty()) return false;
  if (quotient) *quotient = std::move(q);
  return true;
}

std::vector<std::pair<QPoly, int>> square_free(const QPoly& p) {
  std::vector<std::pair<QPoly, int>> out;
  QPoly f = p;
  trim(f);
  if (degree(f) < 1) return out;
  const QPoly df = derivative(f);
  const QPoly a0 = gcd(f, df);
  QPoly b = divmod(f, a0).first;
  QPoly c = divmod(df, a0).first;
  QPoly d = sub(c, derivative(b));
  for (int i = 1; degree(b) > 0; ++i) {
    QPoly a = gcd(b, d);
    b = divmod(b, a).first;
    c = divmod(d, a).first;
    d = sub(c, derivative(b));
    if (degree(a) > 0) out.emplace_back(monic(a), i);
  }
  return out;
}

std::vector<ZPoly> factor_square_free(const ZPoly& input) {
  ZPoly f = primitive_z(input);
  const int n = degree(f);
  if (n < 1) throw InputError("factor_square_free needs positive degree");
  if (n == 1) return {f};

  // Coefficient bound for lc(f) * (any factor).
  Integer norm2 = 0;
  for (const auto& c : f) norm2 += c * c;
  Integer root;
  mpz_sqrt(root.get_mpz_t(), norm2.get_mpz_t());
  root += 1;
  Integer bound = abs(f.back()) * root;
  bound <<= static_cast<unsigned long>(n);

  Integer p = 2 * bound + 1;
  ZPoly fp;
  for (;;) {
    mpz_nextprime(p.get_mpz_t(), p.get_mpz_t());
    if (mpz_divisible_p(f.back().get_mpz_t(), p.get_mpz_t())) continue;
    ModRing R(p);
    fp = R.reduce(f);
    if (degree(R.gcd(fp, R.derivative(fp))) == 0) break;
  }
  const ModRing R(p);
  gmp_randclass rng(gmp_randinit_default);
  rng.seed(20240611UL);

  std::vector<ZPoly> modular;
  for (const auto& [g, d] : distinct_degree(R.monic(fp), R)) equal_degree(g, d, R, rng, modular);
  std::sort(modular.begin(), modular.end(), poly_less);

  std::vector<ZPoly> out;
  ZPoly cur = f;
  std::vector<bool> used(modular.size(), false);
  auto remaining = [&] {
    return static_cast<int>(std::count(used.begin(), used.end(), false));
  };
  for (int s = 1; 2 * s <= remaining(); ++s) {
    bool found = true;
    while (found && 2 * s <= remaining()) {
      found = false;
      std::vector<std::size_t> idx;
      for (std::size_t k = 0; k < modular.size(); ++k) {
        if (!used[k]) idx.push_back(k);
      }
      std::vector<int> sel(static_cast<std::size_t>(s));
      std::iota(sel.begin(), sel.end(), 0);
      const int m = static_cast<int>(idx.size());
      while (true) {
        ZPoly g{cur.back()};
        for (int k : sel) g = R.mul(g, modular[idx[static_cast<std::size_t>(k)]]);
        for (auto& c : g) c = symmetric(c, p);
        g = primitive_z(std::move(g));
        ZPoly q;
        if (degree(g) > 0 && divides(g, cur, &q)) {
          out.push_back(g);
          cur = primitive_z(std::move(q));
          for (int k : sel) used[idx[static_cast<std::size_t>(k)]] = true;
          found = true;
          break;
        }
        // Next combination in lexicographic order.
        int i = s - 1;
        while (i >= 0 && sel[static_cast<std::size_t>(i)] == m - s + i) --i;
        if (i < 0) break;
        ++sel[static_cast<std::size_t>(i)];
        for (int j = i + 1; j < s; ++j) {
          sel[static_cast<std::size_t>(j)] = sel[static_cast<std::size_t>(j - 1)] + 1;
        }
      }
    }
  }
  if (degree(cur) > 0) out.push_back(primitive_z(cur));
  std::sort(out.begin(), out.end(), poly_less);
  return out;
}

Factorization factor(const QPoly& p) {
  QPoly f = p;
  trim(f);
  if (f.empty()) throw InputError("cannot factor the zero polynomial");
  Factorization out;
  for (const auto& [a, mult] : square_free(f)) {
    for (auto& g : factor_square_free(primitive(a))) out.factors.emplace_back(std::move(g), mult);
  }
  std::sort(out.factors.begin(), out.factors.end(), [](const auto& x, const auto& y) {
    if (x.second != y.second) return x.second < y.second;
    return poly_less(x.first, y.first);
  });
  Rational lead = 1;
  for (const auto& [g, m] : out.factors) {
    for (int k = 0; k < m; ++k) lead *= Rational(g.back());
  }
  out.unit = f.back() / lead;
  return out;
}

std::vector<std::pair<Rational, int>> rational_roots(const QPoly& p) {
  std::vector<std::pair<Rational, int>> out;
  QPoly f = p;
  trim(f);
  if (degree(f) < 1) return out;
  for (const auto& [g, m] : factor(f).factors) {
    if (degree(g) == 1) {
      Rational r(-g[0], g[1]);
      r.canonicalize();
      out.emplace_back(r, m);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

QPoly from_polynomial(const Polynomial& p, std::size_t var) {
  QPoly out;
  for (const auto& [m, c] : p.terms()) {
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (i != var && m[i] != 0) throw InputError("polynomial is not univariate");
    }
    const auto e = static_cast<std::size_t>(m[var]);
    if (out.size() <= e) out.resize(e + 1);
    out[e] += c;
  }
  trim(out);
  return out;
}

Polynomial to_polynomial(const QPoly& p, std::size_t nvars, std::size_t var) {
  std::vector<Polynomial::Term> terms;
  for (std::size_t e = 0; e < p.size(); ++e) {
    if (sgn(p[e]) != 0) terms.emplace_back(Monomial::variable(nvars, var, static_cast<int>(e)), p[e]);
  }
  return Polynomial(nvars, std::move(terms));
}

}  // namespace overdet::uni
