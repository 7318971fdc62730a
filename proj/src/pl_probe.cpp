#include "overdet/pl_probe.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>

#include "overdet/errors.hpp"
#include "overdet/roots.hpp"
#include "overdet/univariate.hpp"
#include "overdet/variety.hpp"

namespace overdet {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

const std::vector<std::string>& names2() {
  static const std::vector<std::string> n{"z1", "z2"};
  return n;
}

double point_residual(const Polynomial& f, Complex z1, Complex z2) {
  std::vector<Complex> pt{z1, z2};
  double mag = 0;
  for (const auto& [m, c] : f.terms()) {
    mag += std::abs(c.get_d()) * std::pow(std::abs(z1), m[0]) * std::pow(std::abs(z2), m[1]);
  }
  const double v = std::abs(f.eval(std::span<const Complex>(pt)));
  return mag > 0 ? v / mag : v;
}

// Per-sample data shared by all candidates.
struct Table {
  std::vector<double> omega, h2;
  std::vector<std::vector<double>> h1;  // h1[beta-1][i]
  std::vector<double> r;
};

Table tabulate(const CurveSampler& s, const ProbeContext& ctx) {
  Table t;
  const ConvexBody k2 = exhaustion(ctx.k2, ctx.alpha);
  std::vector<ConvexBody> k1;
  for (int b = 1; b <= kMaxProbeIndex; ++b) k1.push_back(exhaustion(ctx.k1, b));
  t.h1.assign(kMaxProbeIndex, {});
  for (const auto& p : s.points) {
    const std::vector<double> im{p.z1.imag(), p.z2.imag()};
    t.omega.push_back(ctx.weight(std::abs(p.z1) + std::abs(p.z2)));
    t.h2.push_back(supporting_function(k2, std::span<const double>(im)));
    for (int b = 0; b < kMaxProbeIndex; ++b) {
      t.h1[static_cast<std::size_t>(b)].push_back(supporting_function(k1[static_cast<std::size_t>(b)], std::span<const double>(im)));
    }
    t.r.push_back(p.r);
  }
  return t;
}

// u - h - w with cancellation noise snapped to zero.
double gap(double u, double h, double w) {
  const double d = u - h - w;
  return std::abs(d) <= 1e-12 * (std::abs(u) + std::abs(h) + std::abs(w)) ? 0.0 : d;
}

bool within(double r, double bound) { return r <= bound * (1 + 1e-12); }

double excess_probe(const std::vector<double>& u, const Table& t, int beta, double rmax) {
  double e = kNegInf;
  for (std::size_t i = 0; i < u.size(); ++i) {
    if (!within(t.r[i], rmax)) continue;
    e = std::max(e, gap(u[i], t.h1[static_cast<std::size_t>(beta - 1)][i], beta * t.omega[i]));
  }
  return e;
}

double sup_k2(const std::vector<double>& u, const Table& t, int alpha, double rmax) {
  double e = kNegInf;
  for (std::size_t i = 0; i < u.size(); ++i) {
    if (within(t.r[i], rmax)) e = std::max(e, gap(u[i], t.h2[i], alpha * t.omega[i]));
  }
  return e;
}

// log C of the two-sided sup inequality at beta.
double excess_unique(const std::vector<double>& u, const Table& t, int beta, int alpha, double rmax) {
  const double s1 = excess_probe(u, t, beta, rmax);
  const double s2 = sup_k2(u, t, alpha, rmax);
  if (s1 == kNegInf) return 0;
  return std::max(0.0, s1 - s2);
}

Trend trend_of(const std::vector<RadiusRow>& rows, double rmax) {
  if (rows.empty()) return Trend::stable;
  std::size_t lo = 0;
  while (lo + 1 < rows.size() && rows[lo].r < rmax / 100 * (1 - 1e-12)) ++lo;
  const auto& a = rows[lo].beta;
  const auto& b = rows.back().beta;
  if (!b) return a ? Trend::growing : Trend::stable;
  if (!a) return Trend::stable;
  return *b > *a ? Trend::growing : Trend::stable;
}

void finish(PLVerdict& v, const CurveSampler& s, const ProbeContext& ctx,
            const std::vector<CandidateSpec>& candidates) {
  v.vacuous = true;
  for (const auto& c : v.candidates) {
    if (!c.admissible) continue;
    v.vacuous = false;
    const auto& last = c.rows.back().beta;
    if (last && (!v.beta || *last > *v.beta)) v.beta = last;
    if (c.trend == Trend::growing) v.trend = Trend::growing;
  }
  if (v.vacuous) v.notes.push_back("vacuous at this scale: no candidate satisfies the hypotheses");
  v.replay_ok = replay(s, ctx, candidates, v);
  for (auto& c : v.candidates) c.replay_ok = v.replay_ok;
}

}  // namespace

std::string trend_name(Trend t) { return t == Trend::stable ? "stable" : "growing"; }

std::vector<Complex> curve_fiber(const Polynomial& curve, Complex z1) {
  const int n = curve.degree_in(1);
  std::vector<Complex> co(static_cast<std::size_t>(n) + 1);
  std::vector<double> mag(static_cast<std::size_t>(n) + 1, 0.0);
  for (const auto& [m, c] : curve.terms()) {
    co[static_cast<std::size_t>(m[1])] += c.get_d() * std::pow(z1, m[0]);
    mag[static_cast<std::size_t>(m[1])] += std::abs(c.get_d()) * std::pow(std::abs(z1), m[0]);
  }
  while (co.size() > 1 && std::abs(co.back()) <= 1e-14 * mag.back()) {
    co.pop_back();
    mag.pop_back();
  }
  if (co.size() < 2) return {};
  std::vector<Complex> dco;
  for (std::size_t j = 1; j < co.size(); ++j) dco.push_back(co[j] * static_cast<double>(j));
  std::vector<Complex> out;
  for (auto z : polynomial_roots(co)) {
    for (int it = 0; it < 3; ++it) {
      const Complex d = horner(dco, z);
      if (d == Complex(0)) break;
      const Complex next = z - horner(co, z) / d;
      if (std::abs(horner(co, next)) >= std::abs(horner(co, z))) break;
      z = next;
    }
    out.push_back(z);
  }
  return out;
}

CurveSampler sample_curve(const Polynomial& curve, double rmax, int radii, int angles,
                          std::uint64_t seed) {
  if (curve.nvars() != 2) throw InputError("curve sampling needs two variables");
  if (curve.is_zero()) throw InputError("curve polynomial is zero");
  if (!(rmax >= 1)) throw InputError("rmax must be at least 1");
  if (radii < 1 || angles < 1) throw InputError("radii and angles must be positive");
  CurveSampler s;
  Polynomial f = square_free_part(curve);
  if (f.total_degree() != curve.total_degree()) {
    s.notes.push_back("curve is not square-free; sampling its square-free part");
  }
  // Factors in z1 alone are vertical lines: no points over generic z1.
  uni::QPoly content;
  std::vector<uni::QPoly> coeffs(static_cast<std::size_t>(f.degree_in(1)) + 1);
  for (const auto& [m, c] : f.terms()) {
    auto& q = coeffs[static_cast<std::size_t>(m[1])];
    if (q.size() <= static_cast<std::size_t>(m[0])) q.resize(static_cast<std::size_t>(m[0]) + 1);
    q[static_cast<std::size_t>(m[0])] += c;
  }
  for (auto& q : coeffs) {
    uni::trim(q);
    if (!q.empty()) content = content.empty() ? q : uni::gcd(content, q);
  }
  if (uni::degree(content) >= 1) {
    const auto factor = uni::to_polynomial(uni::to_q(uni::primitive(content)), 2, 0);
    s.notes.push_back("factored out " + format_polynomial(factor, names2()) +
                      " (depends on z1 only)");
    Polynomial q;
    exact_divide(f, factor, &q);
    f = q.primitive();
  }
  if (f.degree_in(1) == 0) throw InputError("curve has no points over generic z1");
  s.curve = f;
  s.radii = log_grid(1, rmax, static_cast<std::size_t>(radii));
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(-0.5, 0.5);
  for (double r : s.radii) {
    for (int k = 0; k < angles; ++k) {
      double theta = 2 * std::numbers::pi * k / angles;
      std::vector<Complex> roots;
      for (int attempt = 0; attempt < 6; ++attempt) {
        roots = curve_fiber(f, std::polar(r, theta));
        double scale = 1, closest = std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < roots.size(); ++i) {
          scale = std::max(scale, std::abs(roots[i]));
          for (std::size_t j = i + 1; j < roots.size(); ++j) closest = std::min(closest, std::abs(roots[i] - roots[j]));
        }
        if (closest >= 1e-6 * scale || attempt == 5) break;
        theta += unit(rng) * 1e-3 * 2 * std::numbers::pi / angles;
        ++s.perturbed;
      }
      const Complex z1 = std::polar(r, theta);
      for (const auto& z2 : roots) {
        const double res = point_residual(f, z1, z2);
        if (res < 1e-8) {
          s.points.push_back({r, theta, z1, z2, res});
        } else {
          ++s.rejected;
        }
      }
    }
  }
  return s;
}

std::vector<CandidateSpec> default_candidates(bool holomorphic_only) {
  std::vector<CandidateSpec> out;
  for (const char* g : {"1", "z1", "z2", "z1 + z2", "z1*z2 + 1", "z1^2 - z2", "z1^3 + z2"}) {
    CandidateSpec c;
    c.kind = CandidateSpec::Kind::log_abs;
    c.g = parse_polynomial(g, names2());
    c.label = candidate_label(c, names2());
    out.push_back(std::move(c));
  }
  if (holomorphic_only) return out;
  const auto lin = [](long a, long b) {
    CandidateSpec c;
    c.kind = CandidateSpec::Kind::linear_im;
    c.c = {Rational(a), Rational(b)};
    c.label = candidate_label(c, names2());
    return c;
  };
  for (auto [a, b] : std::vector<std::pair<long, long>>{{1, 0}, {0, 1}, {-1, 0}, {0, -1}, {1, 1}, {1, -1}}) {
    out.push_back(lin(a, b));
  }
  CandidateSpec mx;
  mx.kind = CandidateSpec::Kind::max;
  mx.parts = {lin(1, 0), lin(-1, 0)};
  mx.label = candidate_label(mx, names2());
  out.push_back(mx);
  CandidateSpec env;
  env.kind = CandidateSpec::Kind::envelope;
  env.label = candidate_label(env, names2());
  out.push_back(env);
  return out;
}

double candidate_value(const CandidateSpec& c, const SamplePoint& p, const ProbeContext& ctx) {
  switch (c.kind) {
    case CandidateSpec::Kind::log_abs: {
      std::vector<Complex> pt{p.z1, p.z2};
      const double v = std::abs(c.g.eval(std::span<const Complex>(pt)));
      return v == 0 ? kNegInf : std::log(v);
    }
    case CandidateSpec::Kind::linear_im: {
      double s = 0;
      if (c.c.size() > 0) s += c.c[0].get_d() * p.z1.imag();
      if (c.c.size() > 1) s += c.c[1].get_d() * p.z2.imag();
      return s;
    }
    case CandidateSpec::Kind::max: {
      double m = kNegInf;
      for (const auto& part : c.parts) m = std::max(m, candidate_value(part, p, ctx));
      return m;
    }
    case CandidateSpec::Kind::envelope: {
      const std::vector<double> im{p.z1.imag(), p.z2.imag()};
      return supporting_function(exhaustion(ctx.k2, ctx.alpha), std::span<const double>(im)) +
             ctx.alpha * ctx.weight(std::abs(p.z1) + std::abs(p.z2));
    }
  }
  return 0;
}

PLVerdict probe(const CurveSampler& sampler, const ProbeContext& ctx,
                const std::vector<CandidateSpec>& candidates) {
  if (candidates.empty()) throw InputError("probe needs at least one candidate");
  if (sampler.points.empty()) throw InputError("curve sampler produced no points");
  PLVerdict v;
  v.mode = "probe";
  v.alpha = ctx.alpha;
  v.c_budget = ctx.c_budget;
  const Table t = tabulate(sampler, ctx);
  const double R = sampler.radii.back();
  for (const auto& cand : candidates) {
    CandidateResult res;
    res.label = cand.label;
    std::vector<double> u;
    for (const auto& p : sampler.points) u.push_back(candidate_value(cand, p, ctx));
    std::size_t ok = 0;
    for (std::size_t i = 0; i < u.size(); ++i) {
      const double rhs = t.h2[i] + ctx.alpha * t.omega[i];
      if (u[i] <= rhs + 1e-9 * (1 + std::abs(rhs))) ++ok;
    }
    res.hypothesis1 = ok == u.size();
    res.hypothesis1_rate = static_cast<double>(ok) / static_cast<double>(u.size());
    res.hypothesis2 = false;
    for (int au = 1; au <= kMaxProbeIndex; ++au) {
      const double c = std::max(0.0, excess_probe(u, t, au, R));
      if (c <= ctx.c_budget) {
        res.hypothesis2 = true;
        res.alpha_u = au;
        res.c_u = c;
        break;
      }
    }
    res.admissible = res.hypothesis1 && res.hypothesis2;
    if (res.admissible) {
      for (double r : sampler.radii) {
        RadiusRow row;
        row.r = r;
        for (double x : t.r) row.samples += within(x, r);
        for (int b = 1; b <= kMaxProbeIndex; ++b) {
          const double c = std::max(0.0, excess_probe(u, t, b, r));
          if (c <= ctx.c_budget) {
            row.beta = b;
            row.C = c;
            break;
          }
        }
        res.rows.push_back(row);
      }
      res.trend = trend_of(res.rows, R);
    }
    v.candidates.push_back(std::move(res));
  }
  finish(v, sampler, ctx, candidates);
  return v;
}

PLVerdict uniqueness_probe(const CurveSampler& sampler, const ProbeContext& ctx,
                           const std::vector<CandidateSpec>& candidates) {
  if (candidates.empty()) throw InputError("probe needs at least one candidate");
  if (sampler.points.empty()) throw InputError("curve sampler produced no points");
  PLVerdict v;
  v.mode = "uniqueness";
  v.alpha = ctx.alpha;
  v.c_budget = ctx.c_budget;
  const Table t = tabulate(sampler, ctx);
  const double R = sampler.radii.back();
  for (const auto& cand : candidates) {
    CandidateResult res;
    res.label = cand.label;
    if (cand.kind != CandidateSpec::Kind::log_abs) {
      v.notes.push_back("skipped non-holomorphic candidate " + cand.label);
      v.candidates.push_back(std::move(res));
      continue;
    }
    std::vector<double> u;
    for (const auto& p : sampler.points) u.push_back(candidate_value(cand, p, ctx));
    res.hypothesis1 = true;
    res.hypothesis1_rate = 1;
    res.admissible = true;
    for (double r : sampler.radii) {
      RadiusRow row;
      row.r = r;
      for (double x : t.r) row.samples += within(x, r);
      for (int b = 1; b <= kMaxProbeIndex; ++b) {
        const double e = excess_unique(u, t, b, ctx.alpha, r);
        if (e <= ctx.c_budget) {
          row.beta = b;
          row.C = std::exp(e);
          break;
        }
      }
      res.rows.push_back(row);
    }
    res.trend = trend_of(res.rows, R);
    v.candidates.push_back(std::move(res));
  }
  finish(v, sampler, ctx, candidates);
  return v;
}

bool replay(const CurveSampler& sampler, const ProbeContext& ctx,
            const std::vector<CandidateSpec>& candidates, const PLVerdict& verdict) {
  const bool unique = verdict.mode == "uniqueness";
  for (std::size_t k = 0; k < verdict.candidates.size() && k < candidates.size(); ++k) {
    const auto& res = verdict.candidates[k];
    if (!res.admissible) continue;
    std::vector<double> u;
    for (const auto& p : sampler.points) u.push_back(candidate_value(candidates[k], p, ctx));
    for (const auto& row : res.rows) {
      if (!row.beta) continue;
      const int b = *row.beta;
      const ConvexBody k1 = exhaustion(ctx.k1, b);
      const ConvexBody k2 = exhaustion(ctx.k2, ctx.alpha);
      double s1 = kNegInf, s2 = kNegInf;
      for (std::size_t i = 0; i < u.size(); ++i) {
        const auto& p = sampler.points[i];
        if (!within(p.r, row.r)) continue;
        const std::vector<double> im{p.z1.imag(), p.z2.imag()};
        const double w = ctx.weight(std::abs(p.z1) + std::abs(p.z2));
        const double lhs = gap(u[i], supporting_function(k1, std::span<const double>(im)), b * w);
        if (!unique && lhs > row.C + 1e-9 * (1 + std::abs(row.C))) return false;
        s1 = std::max(s1, lhs);
        s2 = std::max(s2, gap(u[i], supporting_function(k2, std::span<const double>(im)), ctx.alpha * w));
      }
      if (unique && s1 != kNegInf && s1 > s2 + std::log(row.C) + 1e-9) return false;
    }
  }
  return true;
}

}  // namespace overdet
