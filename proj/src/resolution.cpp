#include "overdet/resolution.hpp"

#include <algorithm>
#include <cmath>

#include "overdet/errors.hpp"
#include "overdet/linalg.hpp"

namespace overdet {

namespace {

constexpr std::size_t kMaxSteps = 16;
constexpr std::size_t kOracleUnknowns = 2000;

TermOrder module_order() {
  return TermOrder(MonomialOrder::grevlex, ModuleExtension::term_over_position);
}

std::size_t binomial(std::size_t n, std::size_t k) {
  std::size_t r = 1;
  for (std::size_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

int oracle_degree(std::size_t nvars, std::size_t ngens) {
  for (int d = 3; d >= 0; --d) {
    if (binomial(nvars + static_cast<std::size_t>(d), static_cast<std::size_t>(d)) * ngens <=
        kOracleUnknowns) {
      return d;
    }
  }
  return -1;
}

std::vector<std::string> d_names(std::size_t n) {
  std::vector<std::string> out;
  for (std::size_t i = 1; i <= n; ++i) out.push_back("D" + std::to_string(i));
  return out;
}

std::string render_monomial(const Monomial& m, std::span<const std::string> names) {
  std::string s;
  for (std::size_t i = 0; i < m.size(); ++i) {
    if (m[i] == 0) continue;
    if (!s.empty()) s += "*";
    s += names[i];
    if (m[i] > 1) s += "^" + std::to_string(m[i]);
  }
  return s;
}

std::vector<ModuleElement> nonzero(std::vector<ModuleElement> v) {
  std::erase_if(v, [](const ModuleElement& e) { return e.is_zero(); });
  return v;
}

std::string join_polys(std::span<const Polynomial> polys, std::span<const std::string> names) {
  std::string s;
  for (std::size_t i = 0; i < polys.size(); ++i) {
    if (i) s += ", ";
    s += format_polynomial(polys[i], names);
  }
  return s;
}

}  // namespace

// ---------------------------------------------------------------- OperatorMatrix

OperatorMatrix::OperatorMatrix(std::size_t rows, std::size_t cols, std::size_t nvars,
                               Orientation o)
    : rows_(rows),
      cols_(cols),
      nvars_(nvars),
      orientation_(o),
      entries_(rows, std::vector<Polynomial>(cols, Polynomial(nvars))) {}

OperatorMatrix::OperatorMatrix(std::vector<std::vector<Polynomial>> entries, std::size_t nvars,
                               Orientation o)
    : rows_(entries.size()),
      cols_(entries.empty() ? 0 : entries.front().size()),
      nvars_(nvars),
      orientation_(o),
      entries_(std::move(entries)) {
  for (const auto& row : entries_) {
    if (row.size() != cols_) throw InputError("ragged operator matrix");
    for (const auto& p : row) {
      if (p.nvars() != nvars_) throw InputError("operator matrix entries disagree on variables");
    }
  }
}

OperatorMatrix OperatorMatrix::from_columns(std::span<const ModuleElement> cols, std::size_t rank,
                                            std::size_t nvars, Orientation o) {
  OperatorMatrix m(rank, cols.size(), nvars, o);
  for (std::size_t j = 0; j < cols.size(); ++j) {
    if (cols[j].rank() != rank) throw InputError("column rank mismatch");
    for (std::size_t i = 0; i < rank; ++i) m.entries_[i][j] = cols[j][i];
  }
  return m;
}

std::vector<ModuleElement> OperatorMatrix::columns() const {
  std::vector<ModuleElement> out;
  out.reserve(cols_);
  for (std::size_t j = 0; j < cols_; ++j) {
    std::vector<Polynomial> c;
    c.reserve(rows_);
    for (std::size_t i = 0; i < rows_; ++i) c.push_back(entries_[i][j]);
    out.emplace_back(std::move(c));
  }
  return out;
}

OperatorMatrix OperatorMatrix::transposed() const {
  OperatorMatrix t(cols_, rows_, nvars_,
                   orientation_ == Orientation::op ? Orientation::transpose : Orientation::op);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = 0; j < cols_; ++j) t.entries_[j][i] = entries_[i][j];
  }
  return t;
}

bool OperatorMatrix::is_zero() const {
  for (const auto& row : entries_) {
    for (const auto& p : row) {
      if (!p.is_zero()) return false;
    }
  }
  return true;
}

OperatorMatrix operator*(const OperatorMatrix& a, const OperatorMatrix& b) {
  if (a.cols_ != b.rows_) throw InputError("matrix product dimension mismatch");
  OperatorMatrix c(a.rows_, b.cols_, a.nvars_, a.orientation_);
  for (std::size_t i = 0; i < a.rows_; ++i) {
    for (std::size_t j = 0; j < b.cols_; ++j) {
      for (std::size_t k = 0; k < a.cols_; ++k) {
        if (a.entries_[i][k].is_zero() || b.entries_[k][j].is_zero()) continue;
        c.entries_[i][j] += a.entries_[i][k] * b.entries_[k][j];
      }
    }
  }
  return c;
}

// ---------------------------------------------------------------- resolution

FreeResolution hilbert_resolution(const SystemSpec& system, const GroebnerLimits& limits) {
  if (system.rows() == 0 || system.cols() == 0) throw InputError("empty system matrix");
  const std::size_t nvars = system.variables.size();
  FreeResolution res;
  res.variables = system.variables;

  OperatorMatrix a0(system.matrix, nvars, OperatorMatrix::Orientation::op);
  OperatorMatrix t0 = a0.transposed();
  res.free_module = t0.is_zero();
  res.maps.push_back(t0);
  res.ranks = {t0.rows(), t0.cols()};

  const TermOrder ord = module_order();
  std::vector<ModuleElement> gens = t0.columns();
  for (std::size_t step = 1;; ++step) {
    if (step > kMaxSteps) {
      throw ResourceError("resolution did not terminate within " + std::to_string(kMaxSteps) +
                          " steps");
    }
    SyzygyBasis syz;
    try {
      syz = syzygies(gens, ord, limits);
    } catch (const ResourceError& e) {
      throw ResourceError("resolution step " + std::to_string(step) + ": " + e.what());
    }
    if (syz.rows.empty()) break;
    OperatorMatrix next = OperatorMatrix::from_columns(syz.rows, gens.size(), nvars);
    res.ranks.push_back(next.cols());
    gens = syz.rows;
    res.maps.push_back(std::move(next));
  }

  for (std::size_t j = 0; j + 1 < res.maps.size(); ++j) {
    ExactnessCertificate cert;
    cert.step = j;
    cert.composition_zero = (res.maps[j] * res.maps[j + 1]).is_zero();
    const auto cols = res.maps[j].columns();
    cert.oracle_degree = oracle_degree(nvars, cols.size());
    if (cert.oracle_degree >= 0) {
      auto ker = bounded_kernel(cols, cert.oracle_degree, kOracleUnknowns);
      cert.kernel_dimension = ker->size();
      const auto image = nonzero(res.maps[j + 1].columns());
      const GroebnerBasis gb = buchberger(image, ord, limits);
      cert.kernel_in_image = std::all_of(ker->begin(), ker->end(),
                                         [&](const ModuleElement& v) { return membership(v, gb); });
    }
    res.certificates.push_back(cert);
  }
  const auto last = res.maps.back().columns();
  const int d = oracle_degree(nvars, last.size());
  if (d >= 0) {
    res.injective_tail = bounded_kernel(last, d, kOracleUnknowns)->empty();
  }
  return res;
}

std::string operator_equation(std::span<const Polynomial> row) {
  std::string out;
  bool first = true;
  for (std::size_t k = 0; k < row.size(); ++k) {
    const Polynomial& p = row[k];
    if (p.is_zero()) continue;
    const auto names = d_names(p.nvars());
    const std::string f = "f" + std::to_string(k + 1);
    std::string piece;
    bool negative = false;
    if (p.terms().size() == 1) {
      const auto& [m, c] = p.terms().front();
      negative = sgn(c) < 0;
      const Rational a = abs(c);
      const std::string mono = render_monomial(m, names);
      if (a != 1) piece = format_rational(a) + (mono.empty() ? "*" : "*" + mono);
      else piece = mono;
      piece += f;
    } else {
      piece = "(" + format_polynomial(p, names) + ")" + f;
    }
    if (first) {
      out += negative ? "-" : "";
    } else {
      out += negative ? " - " : " + ";
    }
    out += piece;
    first = false;
  }
  if (first) out = "0";
  return out + " = 0";
}

OverdeterminationReport overdetermination_report(const FreeResolution& res) {
  OverdeterminationReport rep;
  if (res.maps.size() < 2) return rep;
  rep.a1 = res.maps[1].transposed();
  rep.overdetermined = !rep.a1.is_zero();
  if (!rep.overdetermined) return rep;
  rep.conditions = rep.a1.rows();
  for (const auto& row : rep.a1.entries()) rep.equations.push_back(operator_equation(row));
  return rep;
}

std::vector<Polynomial> annihilator(const SystemSpec& system, const GroebnerLimits& limits) {
  const std::size_t nvars = system.variables.size();
  const std::size_t a0 = system.cols();
  const std::size_t a1 = system.rows();
  const std::size_t big = a0 * a0;
  std::vector<ModuleElement> gens;
  for (std::size_t b = 0; b < a0; ++b) {
    for (std::size_t i = 0; i < a1; ++i) {
      ModuleElement v(big, nvars);
      for (std::size_t k = 0; k < a0; ++k) v[b * a0 + k] = system.matrix[i][k];
      gens.push_back(std::move(v));
    }
  }
  ModuleElement diag(big, nvars);
  for (std::size_t b = 0; b < a0; ++b) diag[b * a0 + b] = Polynomial::constant(nvars, 1);
  gens.push_back(diag);

  const SyzygyBasis syz = syzygies(gens, module_order(), limits);
  std::vector<Polynomial> ideal;
  for (const auto& row : syz.rows) {
    const Polynomial& p = row[gens.size() - 1];
    if (!p.is_zero()) ideal.push_back(p);
  }
  if (ideal.empty()) return {};
  const GroebnerBasis gb = ideal_basis(ideal, TermOrder(MonomialOrder::grevlex), limits);
  std::vector<Polynomial> out;
  for (const auto& g : gb.generators) out.push_back(g[0].primitive());
  return out;
}

CharVariety characteristic_variety(std::span<const Polynomial> prime_generators,
                                   std::string label) {
  CharVariety v;
  v.source.assign(prime_generators.begin(), prime_generators.end());
  for (const auto& p : prime_generators) v.generators.push_back(p.sign_flip());
  v.label = std::move(label);
  return v;
}

GaussianRational eval_gaussian(const Polynomial& p, std::span<const GaussianRational> point) {
  if (point.size() != p.nvars()) throw InputError("evaluation point has the wrong length");
  auto mul = [](const GaussianRational& a, const GaussianRational& b) {
    return GaussianRational{a.first * b.first - a.second * b.second,
                            a.first * b.second + a.second * b.first};
  };
  std::vector<std::vector<GaussianRational>> pw(point.size());
  for (std::size_t i = 0; i < point.size(); ++i) {
    pw[i].push_back({Rational(1), Rational(0)});
    for (int e = 1; e <= p.degree_in(i); ++e) pw[i].push_back(mul(pw[i].back(), point[i]));
  }
  GaussianRational acc{0, 0};
  for (const auto& [m, c] : p.terms()) {
    GaussianRational t{c, 0};
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (m[i]) t = mul(t, pw[i][static_cast<std::size_t>(m[i])]);
    }
    acc.first += t.first;
    acc.second += t.second;
  }
  return acc;
}

namespace {

void require_scalar(const SystemSpec& system, std::size_t npoint) {
  if (system.cols() != 1) {
    throw InputError("exponential kernel test applies to scalar systems (a0 = 1) only");
  }
  if (npoint != system.variables.size()) throw InputError("point has the wrong dimension");
}

}  // namespace

bool exponential_kernel_test(const SystemSpec& system, std::span<const std::complex<double>> zeta) {
  require_scalar(system, zeta.size());
  std::vector<std::complex<double>> neg(zeta.begin(), zeta.end());
  for (auto& z : neg) z = -z;
  for (const auto& row : system.matrix) {
    const Polynomial& p = row[0];
    double scale = 0;
    for (const auto& [m, c] : p.terms()) {
      double t = std::abs(c.get_d());
      for (std::size_t i = 0; i < m.size(); ++i) t *= std::pow(std::abs(neg[i]), m[i]);
      scale += t;
    }
    if (std::abs(p.eval(std::span<const std::complex<double>>(neg))) > 1e-9 * scale) return false;
  }
  return true;
}

bool exponential_kernel_test(const SystemSpec& system, std::span<const GaussianRational> zeta) {
  require_scalar(system, zeta.size());
  std::vector<GaussianRational> neg(zeta.begin(), zeta.end());
  for (auto& z : neg) z = {-z.first, -z.second};
  for (const auto& row : system.matrix) {
    const auto v = eval_gaussian(row[0], neg);
    if (sgn(v.first) != 0 || sgn(v.second) != 0) return false;
  }
  return true;
}

// ---------------------------------------------------------------- Ext

DualComplexHomology dual_complex_homology(const FreeResolution& res,
                                          const GroebnerLimits& limits) {
  DualComplexHomology out;
  const std::size_t d = res.maps.size();
  const std::size_t nvars = res.nvars();
  const TermOrder ord = module_order();
  std::vector<OperatorMatrix> dual;
  for (const auto& m : res.maps) dual.push_back(m.transposed());

  out.composition_zero = true;
  for (std::size_t j = 0; j + 1 < d; ++j) {
    out.composition_zero = out.composition_zero && (dual[j + 1] * dual[j]).is_zero();
  }

  for (std::size_t j = 0; j <= d; ++j) {
    ModulePresentation pres;
    pres.degree = j;
    const std::size_t aj = res.ranks[j];
    std::vector<ModuleElement> kernel;
    if (j == d) {
      for (std::size_t k = 0; k < aj; ++k) kernel.push_back(ModuleElement::unit(aj, nvars, k));
    } else {
      kernel = syzygies(dual[j].columns(), ord, limits).rows;
    }
    pres.generator_vectors = kernel;
    pres.generators = kernel.size();
    const std::size_t m = kernel.size();
    if (m == 0) {
      pres.is_zero = true;
      pres.summary = "0";
      out.ext.push_back(std::move(pres));
      continue;
    }
    std::vector<ModuleElement> all = kernel;
    if (j > 0) {
      for (auto& c : nonzero(dual[j - 1].columns())) all.push_back(std::move(c));
    }
    std::vector<ModuleElement> rel;
    for (const auto& row : syzygies(all, ord, limits).rows) {
      std::vector<Polynomial> head(row.components().begin(),
                                   row.components().begin() + static_cast<std::ptrdiff_t>(m));
      ModuleElement r(std::move(head));
      if (!r.is_zero()) rel.push_back(std::move(r));
    }
    if (!rel.empty()) {
      const GroebnerBasis gb = buchberger(rel, ord, limits);
      for (const auto& g : gb.generators) pres.relations.push_back(normalize_row(g));
      pres.is_zero = true;
      for (std::size_t k = 0; k < m && pres.is_zero; ++k) {
        pres.is_zero = membership(ModuleElement::unit(m, nvars, k), gb);
      }
    }
    pres.is_free = pres.relations.empty();
    const std::string pm = m == 1 ? "P" : "P^" + std::to_string(m);
    if (pres.is_zero) {
      pres.summary = "0";
      pres.relations.clear();
      for (std::size_t k = 0; k < m; ++k) pres.relations.push_back(ModuleElement::unit(m, nvars, k));
    } else if (pres.is_free) {
      pres.summary = pm;
    } else if (m == 1) {
      std::vector<Polynomial> polys;
      for (const auto& r : pres.relations) polys.push_back(r[0]);
      pres.summary = "P/(" + join_polys(polys, res.variables) + ")";
    } else {
      pres.summary = pm + "/(" + std::to_string(pres.relations.size()) + " relations)";
    }
    out.ext.push_back(std::move(pres));
  }
  return out;
}

}  // namespace overdet
