#include "overdet/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "overdet/errors.hpp"

namespace overdet {

namespace {

double slope_of(const std::vector<double>& x, const std::vector<double>& y) {
  const double n = static_cast<double>(x.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
    sxx += x[i] * x[i];
    sxy += x[i] * y[i];
  }
  const double den = n * sxx - sx * sx;
  return den == 0 ? 0 : (n * sxy - sx * sy) / den;
}

}  // namespace

ConvexBody ConvexBody::polytope(std::vector<std::vector<Rational>> vertices) {
  if (vertices.empty()) throw InputError("convex body has no vertices");
  ConvexBody b;
  b.dim_ = vertices.front().size();
  for (const auto& v : vertices) {
    if (v.size() != b.dim_) throw InputError("vertices have different dimensions");
    std::vector<double> a;
    for (const auto& x : v) a.push_back(x.get_d());
    b.approx_.push_back(std::move(a));
  }
  b.vertices_ = std::move(vertices);
  return b;
}

ConvexBody ConvexBody::box(const std::vector<std::pair<Rational, Rational>>& bounds) {
  if (bounds.empty()) throw InputError("box has no axes");
  for (const auto& [lo, hi] : bounds) {
    if (lo > hi) throw InputError("box has an empty interval");
  }
  std::vector<std::vector<Rational>> verts;
  const std::size_t n = bounds.size();
  for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask) {
    std::vector<Rational> v;
    for (std::size_t i = 0; i < n; ++i) v.push_back(mask >> i & 1 ? bounds[i].second : bounds[i].first);
    verts.push_back(std::move(v));
  }
  std::sort(verts.begin(), verts.end());
  verts.erase(std::unique(verts.begin(), verts.end()), verts.end());
  return polytope(std::move(verts));
}

ConvexBody ConvexBody::from_region(const RegionSpec& region) {
  if (region.kind == RegionSpec::Kind::polytope) return polytope(region.vertices);
  std::vector<std::pair<Rational, Rational>> b;
  for (const auto& [lo, hi] : region.bounds) {
    if (!lo || !hi) throw InputError("unbounded box has no supporting function; use an exhaustion");
    b.emplace_back(*lo, *hi);
  }
  return box(b);
}

ConvexBody ConvexBody::scaled(const Rational& factor) const {
  auto v = vertices_;
  for (auto& p : v) {
    for (auto& x : p) x *= factor;
  }
  return polytope(std::move(v));
}

Rational supporting_function(const ConvexBody& body, std::span<const Rational> y) {
  if (body.empty()) throw InputError("supporting function of an empty body");
  if (y.size() != body.dimension()) throw InputError("direction has the wrong dimension");
  Rational best;
  bool first = true;
  for (const auto& v : body.vertices()) {
    Rational s = 0;
    for (std::size_t i = 0; i < y.size(); ++i) s += v[i] * y[i];
    if (first || s > best) best = s;
    first = false;
  }
  return best;
}

double supporting_function(const ConvexBody& body, std::span<const double> y) {
  if (body.empty()) throw InputError("supporting function of an empty body");
  if (y.size() != body.dimension()) throw InputError("direction has the wrong dimension");
  double best = -HUGE_VAL;
  for (const auto& v : body.approx_) {
    double s = 0;
    for (std::size_t i = 0; i < y.size(); ++i) s += v[i] * y[i];
    best = std::max(best, s);
  }
  return best;
}

ConvexBody exhaustion(const RegionSpec& region, int alpha) {
  if (alpha < 1) throw InputError("exhaustion index must be at least 1");
  switch (region.exhaustion.rule) {
    case Exhaustion::Rule::constant:
      return ConvexBody::from_region(region);
    case Exhaustion::Rule::scale: {
      const auto& f = region.exhaustion.factors;
      if (f.empty()) throw InputError("scale exhaustion without factors");
      const auto i = std::min(static_cast<std::size_t>(alpha - 1), f.size() - 1);
      return ConvexBody::from_region(region).scaled(f[i]);
    }
    case Exhaustion::Rule::dilate: {
      if (region.kind != RegionSpec::Kind::box) throw InputError("dilate exhaustion needs a box");
      const Rational a(alpha);
      std::vector<std::pair<Rational, Rational>> b;
      for (const auto& [lo, hi] : region.bounds) {
        Rational l = lo ? std::max(*lo, Rational(-a)) : Rational(-a);
        Rational h = hi ? std::min(*hi, a) : a;
        if (l > h) throw InputError("exhaustion set K_" + std::to_string(alpha) + " is empty");
        b.emplace_back(l, h);
      }
      return ConvexBody::box(b);
    }
  }
  throw InputError("unknown exhaustion rule");
}

double norm1(std::span<const Complex> z) {
  double s = 0;
  for (const auto& c : z) s += std::abs(c);
  return s;
}

double psi_eval(const PsiBound& bound, std::span<const Complex> zeta) {
  std::vector<double> im;
  for (const auto& c : zeta) im.push_back(c.imag());
  return supporting_function(bound.body, std::span<const double>(im)) +
         bound.alpha * bound.weight(norm1(zeta));
}

ShiftStability shift_stability_check(const PsiBound& bound, double k0, int trials,
                                     std::uint64_t seed) {
  if (k0 < 0) throw InputError("shift radius must be nonnegative");
  ShiftStability res;
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::normal_distribution<double> normal;
  const std::size_t n = bound.body.dimension();
  const auto random_vector = [&](double norm) {
    std::vector<Complex> v(n);
    for (auto& c : v) c = Complex(normal(rng), normal(rng));
    const double s = norm1(v);
    for (auto& c : v) c *= norm / s;
    return v;
  };
  const int decades = 7;
  const int per = std::max(1, trials / decades);
  std::vector<double> xs, ys;
  for (int d = 0; d < decades; ++d) {
    double mx = 0;
    for (int i = 0; i < per; ++i) {
      const double R = std::pow(10.0, d + (d + 1 < decades ? unit(rng) : 0.0));
      auto zeta = random_vector(R);
      auto z = random_vector(k0 * unit(rng));
      std::vector<Complex> sum(n);
      for (std::size_t j = 0; j < n; ++j) sum[j] = zeta[j] + z[j];
      mx = std::max(mx, std::abs(psi_eval(bound, sum) - psi_eval(bound, zeta)));
    }
    res.decade_max.emplace_back(std::pow(10.0, d), mx);
    res.k1 = std::max(res.k1, mx);
    xs.push_back(d);
    ys.push_back(mx);
  }
  res.slope = slope_of(xs, ys);
  res.bounded = res.slope < 0.01;
  return res;
}

std::vector<double> pw_widths(double s, double epsilon, int factors) {
  double total = 0;
  for (int k = 1; k <= factors; ++k) total += std::pow(k, -s);
  const double c = epsilon / total;
  std::vector<double> w;
  for (int k = 1; k <= factors; ++k) w.push_back(c * std::pow(k, -s));
  return w;
}

double pw_envelope(const std::vector<double>& widths, double t) {
  double e = 0;
  for (double a : widths) {
    const double x = a * std::abs(t);
    if (x <= 1) break;  // widths decrease
    e -= std::log(x);
  }
  return e;
}

PaleyWienerReport paley_wiener_experiment(const WeightSpec& weight, double epsilon, int factors,
                                          double lambda) {
  if (weight.family != WeightFamily::gevrey) {
    throw InputError("Paley-Wiener experiment needs a gevrey weight");
  }
  if (!(epsilon > 0)) throw InputError("support half-width must be positive");
  if (factors < 1 || factors > 10000) throw InputError("factor count must be in 1..10000");
  const WeightFunction w(weight);
  PaleyWienerReport rep;
  rep.alpha = weight.parameter.get_d();
  rep.s = 1 / rep.alpha;
  rep.epsilon = epsilon;
  rep.factors = factors;
  rep.lambda = lambda;
  const auto widths = pw_widths(rep.s, epsilon, factors);
  rep.c = widths.front();
  for (double a : widths) rep.widths_sum += a;
  if (rep.widths_sum > epsilon * (1 + 1e-12)) {
    rep.notes.push_back("widths exceeded epsilon and were rescaled");
  }

  for (double t : log_grid(1e-2, 1e6, 81)) {
    const double e = pw_envelope(widths, t);
    if (!rep.envelope.empty() && e > rep.envelope.back().second) rep.monotone = false;
    rep.envelope.emplace_back(t, e);
  }

  std::vector<double> lt, le, om, ne;
  for (double t : log_grid(1e2, 1e6, 200)) {
    const double e = pw_envelope(widths, t);
    if (e < 0) {
      lt.push_back(std::log(t));
      le.push_back(std::log(-e));
    }
    om.push_back(w(t));
    ne.push_back(-e);
  }
  rep.p_fit = lt.size() >= 2 ? slope_of(lt, le) : 0.0;
  rep.k_fit = slope_of(om, ne);

  for (int i = 1; i <= 20; ++i) {
    KFit row;
    row.k = 0.5 * i;
    const auto g = [&](double t) { return pw_envelope(widths, t) + row.k * w(t); };
    row.log_C = -HUGE_VAL;
    for (double t : log_grid(1e2, 1e6, 200)) row.log_C = std::max(row.log_C, g(t));
    row.achieved = g(1e6) <= g(1e5) + 1e-9;
    if (row.achieved) rep.k_achieved = std::max(rep.k_achieved, row.k);
    rep.k_table.push_back(row);
  }

  const auto axioms = check_axioms(w);
  rep.gamma_a = axioms.gamma_prime.a;
  rep.gamma_b = axioms.gamma_prime.b;
  if (rep.gamma_b > 0) {
    rep.D = std::exp(1 - rep.gamma_a / rep.gamma_b);
    rep.reverse_threshold = 2 / rep.gamma_b + lambda;
    rep.reverse_ok = rep.k_achieved > rep.reverse_threshold;
  }
  rep.notes.push_back("D and the reverse threshold use the fitted (gamma') constants");
  return rep;
}

}  // namespace overdet
