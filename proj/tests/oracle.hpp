#pragma once

// Brute-force degree-bounded linear algebra over Q, written independently of
// the library's Groebner machinery. Used as a ground truth in tests.

#include <algorithm>
#include <map>
#include <random>
#include <vector>

#include "overdet/poly.hpp"

namespace oracle {

using overdet::Integer;
using overdet::ModuleElement;
using overdet::Monomial;
using overdet::Polynomial;
using overdet::Rational;

inline std::vector<Monomial> monomials_up_to(std::size_t nvars, int degree) {
  std::vector<Monomial> out;
  std::vector<int> e(nvars, 0);
  auto rec = [&](auto&& self, std::size_t k, int left) -> void {
    if (k == nvars) {
      out.emplace_back(e);
      return;
    }
    for (int d = 0; d <= left; ++d) {
      e[k] = d;
      self(self, k + 1, left - d);
    }
    e[k] = 0;
  };
  rec(rec, 0, degree);
  return out;
}

// Row echelon reduction in place; returns pivot columns.
inline std::vector<std::size_t> rref(std::vector<std::vector<Rational>>& a, std::size_t ncols) {
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t col = 0; col < ncols && row < a.size(); ++col) {
    std::size_t p = row;
    while (p < a.size() && sgn(a[p][col]) == 0) ++p;
    if (p == a.size()) continue;
    std::swap(a[row], a[p]);
    const Rational inv = 1 / a[row][col];
    for (auto& x : a[row]) x *= inv;
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (i == row || sgn(a[i][col]) == 0) continue;
      const Rational f = a[i][col];
      for (std::size_t k = col; k < a[i].size(); ++k) a[i][k] -= f * a[row][k];
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

struct Unknown {
  std::size_t gen;
  Monomial mono;
};

struct LinearMap {
  std::vector<Unknown> unknowns;
  std::map<std::pair<std::size_t, Monomial>, std::size_t> rows;  // (component, monomial)
  std::vector<std::vector<Rational>> matrix;                      // rows x unknowns
};

// Columns: coefficient of mono*gens[i]; only monomials keeping total degree <= bound.
inline LinearMap combination_map(const std::vector<ModuleElement>& gens, int bound) {
  LinearMap lm;
  const std::size_t nvars = gens.front().nvars();
  for (std::size_t i = 0; i < gens.size(); ++i) {
    const int dg = gens[i].is_zero() ? 0 : gens[i].total_degree();
    if (dg > bound) continue;
    for (const auto& m : monomials_up_to(nvars, bound - dg)) lm.unknowns.push_back({i, m});
  }
  std::vector<std::map<std::pair<std::size_t, Monomial>, Rational>> cols;
  for (const auto& u : lm.unknowns) {
    std::map<std::pair<std::size_t, Monomial>, Rational> col;
    const auto& g = gens[u.gen];
    for (std::size_t k = 0; k < g.rank(); ++k) {
      for (const auto& [m, c] : g[k].terms()) {
        auto key = std::pair{k, m * u.mono};
        col[key] += c;
        lm.rows.try_emplace(key, lm.rows.size());
      }
    }
    cols.push_back(std::move(col));
  }
  lm.matrix.assign(lm.rows.size(), std::vector<Rational>(lm.unknowns.size()));
  for (std::size_t j = 0; j < cols.size(); ++j) {
    for (const auto& [key, c] : cols[j]) lm.matrix[lm.rows.at(key)][j] = c;
  }
  return lm;
}

// Is f a combination sum q_i gens_i with deg(q_i gens_i) <= bound?
inline bool in_span(const ModuleElement& f, const std::vector<ModuleElement>& gens, int bound) {
  LinearMap lm = combination_map(gens, bound);
  std::vector<Rational> rhs(lm.rows.size());
  for (std::size_t k = 0; k < f.rank(); ++k) {
    for (const auto& [m, c] : f[k].terms()) {
      auto key = std::pair{k, m};
      auto it = lm.rows.find(key);
      if (it == lm.rows.end()) return false;
      rhs[it->second] = c;
    }
  }
  auto a = lm.matrix;
  const std::size_t n = lm.unknowns.size();
  for (std::size_t i = 0; i < a.size(); ++i) a[i].push_back(rhs[i]);
  auto piv = rref(a, n + 1);
  return std::find(piv.begin(), piv.end(), n) == piv.end();
}

// Basis of all q with sum q_i gens_i = 0 and deg(q_i) <= bound.
inline std::vector<ModuleElement> syzygies_up_to(const std::vector<ModuleElement>& gens,
                                                 int bound) {
  const std::size_t nvars = gens.front().nvars();
  std::vector<Unknown> unknowns;
  for (std::size_t i = 0; i < gens.size(); ++i) {
    for (const auto& m : monomials_up_to(nvars, bound)) unknowns.push_back({i, m});
  }
  std::map<std::pair<std::size_t, Monomial>, std::size_t> rows;
  std::vector<std::map<std::size_t, Rational>> cols;
  for (const auto& u : unknowns) {
    std::map<std::size_t, Rational> col;
    const auto& g = gens[u.gen];
    for (std::size_t k = 0; k < g.rank(); ++k) {
      for (const auto& [m, c] : g[k].terms()) {
        auto [it, ins] = rows.try_emplace(std::pair{k, m * u.mono}, rows.size());
        col[it->second] += c;
      }
    }
    cols.push_back(std::move(col));
  }
  std::vector<std::vector<Rational>> a(rows.size(), std::vector<Rational>(unknowns.size()));
  for (std::size_t j = 0; j < cols.size(); ++j) {
    for (const auto& [r, c] : cols[j]) a[r][j] = c;
  }
  auto piv = rref(a, unknowns.size());
  std::vector<bool> is_piv(unknowns.size(), false);
  for (auto p : piv) is_piv[p] = true;
  std::vector<ModuleElement> out;
  for (std::size_t free = 0; free < unknowns.size(); ++free) {
    if (is_piv[free]) continue;
    std::vector<Rational> x(unknowns.size());
    x[free] = 1;
    for (std::size_t r = 0; r < piv.size(); ++r) x[piv[r]] = -a[r][free];
    ModuleElement v(gens.size(), nvars);
    for (std::size_t j = 0; j < unknowns.size(); ++j) {
      if (sgn(x[j]) != 0) v[unknowns[j].gen] += Polynomial::term(unknowns[j].mono, x[j]);
    }
    out.push_back(std::move(v));
  }
  return out;
}

inline Polynomial random_polynomial(std::mt19937& rng, std::size_t nvars, int degree, int terms,
                                    int coef = 5) {
  auto monos = monomials_up_to(nvars, degree);
  std::uniform_int_distribution<std::size_t> pick(0, monos.size() - 1);
  std::uniform_int_distribution<int> c(-coef, coef);
  Polynomial p(nvars);
  for (int t = 0; t < terms; ++t) p += Polynomial::term(monos[pick(rng)], Rational(c(rng)));
  return p;
}

}  // namespace oracle
