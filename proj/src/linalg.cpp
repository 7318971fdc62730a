#include "overdet/linalg.hpp"

#include <map>

namespace overdet {

std::vector<std::size_t> rref(RationalMatrix& a, std::size_t ncols) {
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t col = 0; col < ncols && row < a.size(); ++col) {
    std::size_t p = row;
    while (p < a.size() && sgn(a[p][col]) == 0) ++p;
    if (p == a.size()) continue;
    std::swap(a[row], a[p]);
    const Rational inv = 1 / a[row][col];
    for (std::size_t k = col; k < a[row].size(); ++k) a[row][k] *= inv;
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

std::vector<std::vector<Rational>> nullspace(RationalMatrix a, std::size_t ncols) {
  const auto piv = rref(a, ncols);
  std::vector<bool> is_pivot(ncols, false);
  for (auto p : piv) is_pivot[p] = true;
  std::vector<std::vector<Rational>> out;
  for (std::size_t f = 0; f < ncols; ++f) {
    if (is_pivot[f]) continue;
    std::vector<Rational> x(ncols);
    x[f] = 1;
    for (std::size_t r = 0; r < piv.size(); ++r) x[piv[r]] = -a[r][f];
    out.push_back(std::move(x));
  }
  return out;
}

std::vector<Monomial> monomials_up_to(std::size_t nvars, int degree) {
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

std::optional<std::vector<ModuleElement>> bounded_kernel(std::span<const ModuleElement> gens,
                                                         int degree, std::size_t max_unknowns) {
  if (gens.empty()) return std::vector<ModuleElement>{};
  const std::size_t nvars = gens.front().nvars();
  const auto monos = monomials_up_to(nvars, degree);
  if (monos.size() * gens.size() > max_unknowns) return std::nullopt;

  std::map<std::pair<std::size_t, Monomial>, std::size_t> row_of;
  std::vector<std::vector<std::pair<std::size_t, Rational>>> cols;
  for (std::size_t i = 0; i < gens.size(); ++i) {
    for (const auto& m : monos) {
      std::vector<std::pair<std::size_t, Rational>> col;
      for (std::size_t k = 0; k < gens[i].rank(); ++k) {
        for (const auto& [gm, c] : gens[i][k].terms()) {
          auto [it, fresh] = row_of.try_emplace({k, gm * m}, row_of.size());
          col.emplace_back(it->second, c);
        }
      }
      cols.push_back(std::move(col));
    }
  }
  RationalMatrix a(row_of.size(), std::vector<Rational>(cols.size()));
  for (std::size_t j = 0; j < cols.size(); ++j) {
    for (const auto& [r, c] : cols[j]) a[r][j] += c;
  }
  std::vector<ModuleElement> out;
  for (const auto& x : nullspace(std::move(a), cols.size())) {
    ModuleElement v(gens.size(), nvars);
    for (std::size_t j = 0; j < x.size(); ++j) {
      if (sgn(x[j]) != 0) v[j / monos.size()] += Polynomial::term(monos[j % monos.size()], x[j]);
    }
    out.push_back(std::move(v));
  }
  return out;
}

}  // namespace overdet
