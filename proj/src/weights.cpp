#include "overdet/weights.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>

#include "overdet/errors.hpp"

namespace overdet {

namespace {

constexpr std::size_t kAlphaGrid = 1981;  // every 20th point is the 100-point pair grid
constexpr double kGridLow = 1e-3;

std::vector<double> alpha_grid(double horizon) {
  std::vector<double> g{0.0};
  for (double t : log_grid(kGridLow, horizon, kAlphaGrid)) g.push_back(t);
  return g;
}

// argmax of a concave function on [0, inf) with a doubling bracket.
double concave_sup(const std::function<double(double)>& h, double cap) {
  double hi = 1;
  while (h(2 * hi) >= h(hi)) {
    hi *= 2;
    if (hi > cap) throw RangeError("conjugate search left its range");
  }
  double a = 0, b = 2 * hi;
  const double g = (std::sqrt(5.0) - 1) / 2;
  double x1 = b - g * (b - a), x2 = a + g * (b - a);
  double f1 = h(x1), f2 = h(x2);
  for (int i = 0; i < 200 && b - a > 1e-15 * std::max(1.0, b); ++i) {
    if (f1 < f2) {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + g * (b - a);
      f2 = h(x2);
    } else {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - g * (b - a);
      f1 = h(x1);
    }
  }
  return std::max({f1, f2, h(0)});
}

double regression_slope(const std::vector<double>& x, const std::vector<double>& y) {
  const double n = static_cast<double>(x.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
    sxx += x[i] * x[i];
    sxy += x[i] * y[i];
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

}  // namespace

std::vector<double> log_grid(double lo, double hi, std::size_t n) {
  std::vector<double> g;
  if (n == 1) return {lo};
  const double a = std::log(lo), b = std::log(hi);
  for (std::size_t i = 0; i < n; ++i) {
    g.push_back(std::exp(a + (b - a) * static_cast<double>(i) / static_cast<double>(n - 1)));
  }
  g.back() = hi;
  return g;
}

WeightFunction::WeightFunction(WeightSpec spec) : spec_(std::move(spec)) {
  validate_weight(spec_);
  param_ = spec_.parameter.get_d();
  if (spec_.family == WeightFamily::table) {
    const auto& pts = spec_.points;
    for (std::size_t i = 1; i < pts.size(); ++i) {
      if (pts[i].second < pts[i - 1].second) {
        throw InputError("table weight is not nondecreasing at t = " + std::to_string(pts[i].first));
      }
    }
    for (const auto& [t, v] : pts) {
      if (t > 0) {
        log_t_.push_back(std::log(t));
        values_.push_back(v);
      }
    }
    if (values_.size() < 2) throw InputError("table weight needs two points with t > 0");
    const std::size_t n = values_.size();
    if (values_[n - 2] > 0) {
      tail_slope_ = std::log(values_[n - 1] / values_[n - 2]) / (log_t_[n - 1] - log_t_[n - 2]);
    }
  }
  shift_ = raw(1.0);
}

double WeightFunction::raw(double t) const {
  if (t < 0) t = 0;
  switch (spec_.family) {
    case WeightFamily::gevrey:
      return std::pow(t, param_);
    case WeightFamily::logpow:
      return std::pow(std::log1p(t), param_);
    case WeightFamily::sublinear_log:
      return t / std::pow(std::log(std::numbers::e + t), param_);
    case WeightFamily::table: {
      const double first_t = std::exp(log_t_.front());
      if (t <= first_t) {
        const double v0 = spec_.points.front().first == 0 ? spec_.points.front().second : 0.0;
        return v0 + (values_.front() - v0) * t / first_t;
      }
      const double u = std::log(t);
      if (u >= log_t_.back()) return values_.back() * std::exp(tail_slope_ * (u - log_t_.back()));
      const auto it = std::upper_bound(log_t_.begin(), log_t_.end(), u);
      const auto i = static_cast<std::size_t>(it - log_t_.begin());
      const double s = (u - log_t_[i - 1]) / (log_t_[i] - log_t_[i - 1]);
      return values_[i - 1] + s * (values_[i] - values_[i - 1]);
    }
  }
  return 0;
}

double WeightFunction::operator()(double t) const {
  const double v = raw(t);
  return spec_.normalize ? std::max(0.0, v - shift_) : v;
}

double WeightFunction::phi(double x) const { return (*this)(std::exp(x)); }

std::string WeightFunction::describe() const {
  if (spec_.family == WeightFamily::table) {
    return "table(" + std::to_string(spec_.points.size()) + " points)";
  }
  return family_name(spec_.family) + "(" + format_rational(spec_.parameter) + ")";
}

std::string convergence_name(Convergence c) {
  switch (c) {
    case Convergence::converges: return "converges";
    case Convergence::diverges: return "diverges";
    case Convergence::inconclusive: return "inconclusive";
  }
  return "";
}

AxiomReport check_axioms(const WeightFunction& w, double horizon) {
  if (!(horizon >= 10)) throw InputError("axiom horizon must be at least 10");
  AxiomReport rep;
  rep.horizon = horizon;
  rep.shift = w.shift();
  rep.notes = w.spec().notes;
  const auto grid = alpha_grid(horizon);

  // (alpha)
  double last = 0, prev = 0, last_t = 0;
  for (double t : grid) {
    const double r = w(2 * t) / (1 + w(t));
    if (!std::isfinite(r)) {
      rep.alpha.fails_at = t;
      break;
    }
    if (r > rep.alpha.K) {
      rep.alpha.K = r;
      rep.alpha.worst_t = t;
    }
    if (t >= horizon / 10) {
      if (r > last) last_t = t;
      last = std::max(last, r);
    } else if (t >= horizon / 100) {
      prev = std::max(prev, r);
    }
  }
  if (!rep.alpha.fails_at && last > 1.05 * prev + 1e-12) rep.alpha.fails_at = last_t;
  rep.alpha.holds = !rep.alpha.fails_at.has_value();

  // (beta): int_1^T omega(t)/t^2 dt = int_0^{log T} omega(e^u) e^{-u} du, Simpson per decade.
  {
    const auto f = [&](double u) { return w(std::exp(u)) * std::exp(-u); };
    double total = 0;
    double u0 = 0;
    const double uT = std::log(horizon);
    for (double T = 10; ; T *= 10) {
      const double u1 = std::min(std::log(T), uT);
      const int n = 400;
      const double h = (u1 - u0) / n;
      double s = f(u0) + f(u1);
      for (int i = 1; i < n; ++i) s += f(u0 + i * h) * (i % 2 ? 4 : 2);
      total += s * h / 3;
      rep.beta.trace.emplace_back(std::exp(u1), total);
      u0 = u1;
      if (u1 >= uT) break;
    }
    rep.beta.integral = total;

    // Local slope s(t) = dlog omega / dlog t = p + r / log t on [sqrt T, T].
    std::vector<double> xs, ys;
    bool positive = true;
    for (double t : log_grid(std::sqrt(horizon), horizon, 60)) {
      const double h = 0.05;
      const double a = w(t * std::exp(-h)), b = w(t * std::exp(h));
      if (!(a > 0 && b > 0)) {
        positive = false;
        break;
      }
      xs.push_back(1 / std::log(t));
      ys.push_back((std::log(b) - std::log(a)) / (2 * h));
    }
    if (positive) {
      const double r = regression_slope(xs, ys);
      double mx = 0, my = 0;
      for (std::size_t i = 0; i < xs.size(); ++i) {
        mx += xs[i];
        my += ys[i];
      }
      const double p = my / static_cast<double>(ys.size()) - r * mx / static_cast<double>(xs.size());
      rep.beta.p = p;
      rep.beta.r = r;
      if (p < 0.99) {
        rep.beta.verdict = Convergence::converges;
      } else if (p > 1.01) {
        rep.beta.verdict = Convergence::diverges;
      } else if (r < -1.3) {
        rep.beta.verdict = Convergence::converges;
      } else if (r >= -1.1) {
        rep.beta.verdict = Convergence::diverges;
      }
    }
  }

  // (gamma'): largest lattice b for which omega - b log(1+t) stays bounded below.
  {
    std::size_t decade = 0;
    while (grid[decade] < horizon / 10) ++decade;
    for (int k = 200; k >= 1; --k) {
      const double b = k / 20.0;
      double a = std::numeric_limits<double>::infinity();
      double an = a;
      double tail_min = a;
      for (std::size_t i = 0; i < grid.size(); ++i) {
        const double g = w.raw(grid[i]) - b * std::log1p(grid[i]);
        a = std::min(a, g);
        an = std::min(an, w(grid[i]) - b * std::log1p(grid[i]));
        if (i >= decade) tail_min = std::min(tail_min, g);
      }
      const double end = w.raw(horizon) - b * std::log1p(horizon);
      const double start = w.raw(grid[decade]) - b * std::log1p(grid[decade]);
      const double tol = 1e-9 * (1 + std::abs(end));
      if (end >= tail_min - tol && end >= start - tol) {
        rep.gamma_prime = {true, a, b, an};
        break;
      }
    }
  }

  // (gamma): omega(t) / log(1+t) unbounded.
  {
    const double mid = std::sqrt(horizon);
    rep.gamma.ratio_mid = w.raw(mid) / std::log1p(mid);
    rep.gamma.ratio_end = w.raw(horizon) / std::log1p(horizon);
    rep.gamma.holds = rep.gamma.ratio_end >= 1.5 * rep.gamma.ratio_mid;
    if (!rep.gamma.holds) {
      const std::string note = "fails (gamma)";
      if (std::find(rep.notes.begin(), rep.notes.end(), note) == rep.notes.end()) {
        rep.notes.push_back(note);
      }
    }
  }

  // (delta): convexity of phi on a uniform grid.
  {
    const int n = 2000;
    const double X = std::log(horizon);
    const double h = X / n;
    rep.delta.holds = true;
    rep.delta.min_second_difference = std::numeric_limits<double>::infinity();
    for (int i = 1; i < n; ++i) {
      const double x = i * h;
      const double c = w.phi(x);
      const double d2 = w.phi(x + h) - 2 * c + w.phi(x - h);
      rep.delta.min_second_difference = std::min(rep.delta.min_second_difference, d2);
      if (rep.delta.holds && d2 < -1e-9 * std::max(1.0, std::abs(c))) {
        rep.delta.holds = false;
        rep.delta.violation_x = x;
      }
    }
  }
  return rep;
}

YoungConjugate::YoungConjugate(WeightFunction w)
    : w_(std::move(w)),
      method_(w_.spec().family == WeightFamily::gevrey ? Method::closed_form : Method::numeric) {}

std::string method_name(YoungConjugate::Method m) {
  return m == YoungConjugate::Method::closed_form ? "closed-form" : "numeric-concave-search";
}

std::optional<double> YoungConjugate::closed_form(double y) const {
  if (w_.spec().family != WeightFamily::gevrey) return std::nullopt;
  if (y < 0) throw InputError("conjugate argument must be nonnegative");
  const double alpha = w_.spec().parameter.get_d();
  const double c0 = w_.normalized() ? 1.0 : 0.0;
  const double phi0 = 1.0 - c0;
  if (y == 0) return -phi0;
  const double x = std::log(y / alpha) / alpha;
  if (x <= 0) return -phi0;
  return x * y - y / alpha + c0;
}

double YoungConjugate::numeric(double y) const {
  if (y < 0) throw InputError("conjugate argument must be nonnegative");
  if (y > 1e6) throw RangeError("conjugate argument beyond 1e6");
  if (y == 0) return -w_.phi(0);
  return concave_sup([&](double x) { return x * y - w_.phi(x); }, 1e4);
}

double YoungConjugate::operator()(double y) const {
  if (auto c = closed_form(y)) return *c;
  return numeric(y);
}

YoungConjugate young_conjugate(const WeightFunction& w) { return YoungConjugate(w); }

double biconjugate_check(const WeightFunction& w, int samples) {
  const YoungConjugate conj(w);
  double worst = 0;
  for (double x : log_grid(1, 20, static_cast<std::size_t>(std::max(samples, 1)))) {
    const double bi = concave_sup([&](double y) { return y > 1e6 ? -1e300 : x * y - conj(y); }, 1e6);
    const double ref = w.phi(x);
    worst = std::max(worst, std::abs(bi - ref) / std::max(std::abs(ref), 1e-12));
  }
  return worst;
}

SubadditivityResult subadditivity_check(const WeightFunction& w, double K, double horizon) {
  const auto full = alpha_grid(horizon);
  std::vector<double> g{0.0};
  for (std::size_t i = 1; i < full.size(); i += 20) g.push_back(full[i]);
  SubadditivityResult res;
  for (double x : g) {
    for (double y : g) {
      const double r = w(x + y) / (1 + w(x) + w(y));
      if (r > res.worst_ratio) res = {false, r, x, y};
    }
  }
  res.holds = res.worst_ratio <= K * (1 + 1e-12);
  return res;
}

std::string comparison_name(Comparison c) {
  switch (c) {
    case Comparison::equivalent: return "equivalent";
    case Comparison::first_dominated: return "w1=O(w2) only";
    case Comparison::second_dominated: return "w2=O(w1) only";
    case Comparison::incomparable: return "incomparable-on-grid";
  }
  return "";
}

EquivalenceResult equivalence_check(const WeightFunction& w1, const WeightFunction& w2,
                                    double horizon) {
  EquivalenceResult res;
  res.min_ratio = std::numeric_limits<double>::infinity();
  std::vector<double> x1, y1, x2, y2;
  for (double t : log_grid(10, horizon, 500)) {
    const double r = (1 + w1(t)) / (1 + w2(t));
    res.min_ratio = std::min(res.min_ratio, r);
    res.max_ratio = std::max(res.max_ratio, r);
    if (t >= horizon / 10) {
      x2.push_back(std::log(t));
      y2.push_back(std::log(r));
    } else if (t >= horizon / 100) {
      x1.push_back(std::log(t));
      y1.push_back(std::log(r));
    }
  }
  const double s1 = regression_slope(x1, y1), s2 = regression_slope(x2, y2);
  std::vector<double> xa(x1), ya(y1);
  xa.insert(xa.end(), x2.begin(), x2.end());
  ya.insert(ya.end(), y2.begin(), y2.end());
  res.tail_slope = regression_slope(xa, ya);
  const double tol = 0.02;
  if ((s1 > tol && s2 < -tol) || (s1 < -tol && s2 > tol)) {
    res.verdict = Comparison::incomparable;
  } else {
    const bool first = res.tail_slope <= tol;
    const bool second = res.tail_slope >= -tol;
    res.verdict = first && second ? Comparison::equivalent
                  : first         ? Comparison::first_dominated
                                  : Comparison::second_dominated;
  }
  return res;
}

std::optional<double> conjugate_shift_constant(const WeightFunction& w, double max_L) {
  const YoungConjugate conj(w);
  const auto ys = log_grid(1, 1e4, 200);
  std::vector<double> at;
  for (double y : ys) at.push_back(conj(y));
  for (double L = 1; L <= max_L; L *= 2) {
    bool ok = true;
    for (std::size_t i = 0; i < ys.size() && ok; ++i) {
      const double rhs = L * conj(ys[i] / L) - L;
      ok = at[i] - ys[i] >= rhs - 1e-9 * std::max(1.0, std::abs(rhs));
    }
    if (ok) return L;
  }
  return std::nullopt;
}

double dilation_constant(const WeightFunction& w, double N, double horizon) {
  double L = 0;
  for (double r : alpha_grid(horizon)) L = std::max(L, w(N * r) / (1 + w(r)));
  return L;
}

}  // namespace overdet
