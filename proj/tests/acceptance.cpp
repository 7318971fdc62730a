// Acceptance checks, one line per criterion. Usage: acceptance <cli> <data dir>

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <sys/wait.h>
#include <unistd.h>

#include "oracle.hpp"
#include "overdet/bounds.hpp"
#include "overdet/groebner.hpp"
#include "overdet/parser.hpp"
#include "overdet/pl_probe.hpp"
#include "overdet/resolution.hpp"
#include "overdet/variety.hpp"
#include "overdet/weights.hpp"

using namespace overdet;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      if (detail.size() < 400) detail += (detail.empty() ? "" : "; ") + what;
    }
  }
};

const std::vector<std::string> kNames{"z1", "z2", "z3"};

Polynomial P(const std::string& s, std::size_t n) {
  return parse_polynomial(s, std::span(kNames).first(n));
}

Rational q(long a, long b = 1) {
  Rational r(a, b);
  r.canonicalize();
  return r;
}

SystemSpec system_of(const std::string& matrix, std::size_t n) {
  std::string vars = "[";
  for (std::size_t i = 0; i < n; ++i) vars += (i ? ",\"" : "\"") + kNames[i] + "\"";
  return parse_system(R"({"variables":)" + vars + R"(],"matrix":)" + matrix + "}");
}

// ---------------------------------------------------------------- 1

struct CorpusEntry {
  std::size_t nvars;
  std::vector<std::vector<std::string>> gens;  // each generator: its components
};

std::vector<CorpusEntry> groebner_corpus() {
  return {
      {2, {{"z1^2 - z2"}, {"z1*z2 - 1"}}},
      {2, {{"z1^3 - z2^2"}, {"z1*z2^2 - z1"}}},
      {2, {{"z1^2 + z2^2 - 1"}, {"z1 - z2"}}},
      {3, {{"z1*z2"}, {"z2*z3"}, {"z1*z3"}}},
      {3, {{"z1^2 - z2*z3"}, {"z2^2 - z1*z3"}, {"z3^2 - z1*z2"}}},
      {3, {{"z1 + z2 + z3"}, {"z1*z2 + z2*z3 + z1*z3"}, {"z1*z2*z3 - 1"}}},
      {3, {{"z1^4 - z2"}, {"z2^2 - z3*z1"}}},
      {3, {{"z1^2*z2 - z3^2"}, {"z1*z3 - z2^2 + 1"}}},
      {2, {{"z1", "z2"}, {"z2", "z1"}}},
      {2, {{"z1^2", "0"}, {"z1*z2", "z2"}, {"0", "z2^2"}}},
      {3, {{"z1", "z2"}, {"z2", "z3"}, {"z3", "z1"}}},
      {3, {{"z1", "z2", "z3"}, {"z2", "z3", "0"}, {"z1*z3", "0", "z2^2"}}},
  };
}

std::vector<ModuleElement> elements(const CorpusEntry& e) {
  std::vector<ModuleElement> out;
  for (const auto& g : e.gens) {
    std::vector<Polynomial> comps;
    for (const auto& c : g) comps.push_back(P(c, e.nvars));
    out.emplace_back(std::move(comps));
  }
  return out;
}

Outcome criterion1() {
  Outcome o;
  std::mt19937 rng(101);
  int checked = 0, members = 0;
  const TermOrder order(MonomialOrder::grevlex);
  for (const auto& entry : groebner_corpus()) {
    const auto gens = elements(entry);
    const auto gb = buchberger(gens, order);
    o.require(gb.reduced, "basis not reduced");
    o.require(s_vectors_reduce_to_zero(gb), "S-vector did not reduce to zero");
    for (const auto& a : gb.generators) {
      for (const auto& b : gb.generators) {
        if (auto s = s_vector(a, b, order)) {
          o.require(reduce(*s, gb.generators, order).remainder.is_zero(), "S-vector remainder");
        }
      }
    }
    const std::size_t rank = gens.front().rank();
    for (int i = 0; i < 100; ++i) {
      ModuleElement f(rank, entry.nvars);
      const bool build_member = i % 2 == 0;
      if (build_member) {
        for (const auto& g : gens) {
          const int room = std::max(0, 4 - g.total_degree());
          f += oracle::random_polynomial(rng, entry.nvars, room, 2, 3) * g;
        }
      } else {
        for (std::size_t k = 0; k < rank; ++k) {
          f[k] = oracle::random_polynomial(rng, entry.nvars, 3, 3, 3);
        }
      }
      const bool lib = membership(f, gb);
      const bool ref = oracle::in_span(f, gens, 5);
      o.require(lib == ref, "membership disagrees with the oracle");
      if (build_member) o.require(lib, "constructed member rejected");
      members += lib;
      ++checked;
    }
  }
  o.detail = o.pass ? std::to_string(checked) + " elements (" + std::to_string(members) +
                          " members) on 12 inputs agree" : o.detail;
  return o;
}

// ---------------------------------------------------------------- 2

Outcome criterion2() {
  Outcome o;
  auto grad = hilbert_resolution(system_of(R"([["z1"],["z2"]])", 2));
  const auto rep = overdetermination_report(grad);
  o.require(rep.equations == std::vector<std::string>{"D2f1 - D1f2 = 0"}, "curl condition");
  o.require(grad.maps.size() >= 2 && (grad.maps[0] * grad.maps[1]).is_zero(), "curl product");
  auto k3 = hilbert_resolution(system_of(R"([["z1"],["z2"],["z3"]])", 3));
  o.require(k3.ranks == std::vector<std::size_t>{1, 3, 3, 1}, "Koszul ranks");
  std::size_t n = 0;
  for (const auto& [m, vars] : std::vector<std::pair<std::string, std::size_t>>{
           {R"([["z1"],["z2"]])", 2},
           {R"([["z1"],["z2"],["z3"]])", 3},
           {R"([["z1^2 + z2"]])", 2},
           {R"([["z1","z2"],["z2","z1"]])", 2},
           {R"([["z1^2","0"],["z1*z2","z2"],["0","z2^2"]])", 2},
           {R"([["z1*z2"],["z2*z3"],["z1*z3"]])", 3},
           {R"([["z1^2-z2"],["z1*z2-1"]])", 2},
           {R"([["z1^2 - z2*z3"],["z2^2 - z1*z3"],["z3^2 - z1*z2"]])", 3},
           {R"([["z1","z2","z3"],["z2","z3","0"]])", 3},
           {R"([["0"]])", 2}}) {
    const auto r = hilbert_resolution(system_of(m, vars));
    o.require(r.length() <= r.nvars(), "resolution longer than N");
    for (std::size_t j = 0; j + 1 < r.maps.size(); ++j) {
      o.require((r.maps[j] * r.maps[j + 1]).is_zero(), "composition not zero");
    }
    for (const auto& c : r.certificates) o.require(c.composition_zero, "certificate");
    ++n;
  }
  if (o.pass) o.detail = "curl exact, Koszul (1,3,3,1), " + std::to_string(n) + " resolutions";
  return o;
}

// ---------------------------------------------------------------- 3

using G = GaussianRational;

G gdiv(const G& a, const G& b) {
  const Rational n = b.first * b.first + b.second * b.second;
  return {(a.first * b.first + a.second * b.second) / n, (a.second * b.first - a.first * b.second) / n};
}

Outcome criterion3() {
  Outcome o;
  std::size_t polys = 0;
  for (const auto& entry : groebner_corpus()) {
    for (const auto& g : elements(entry)) {
      for (const auto& p : g.components()) {
        o.require(p.sign_flip().sign_flip() == p, "sign flip is not an involution");
        std::vector<Rational> pt;
        for (std::size_t i = 0; i < p.nvars(); ++i) pt.push_back(q(static_cast<long>(i) + 2, 3));
        std::vector<Rational> neg;
        for (const auto& x : pt) neg.push_back(-x);
        o.require(p.sign_flip().eval(std::span<const Rational>(pt)) ==
                      p.eval(std::span<const Rational>(neg)),
                  "sign flip value");
        ++polys;
      }
    }
  }
  std::mt19937 rng(303);
  std::uniform_int_distribution<long> num(-9, 9), den(1, 6);
  auto rq = [&] { return q(num(rng), den(rng)); };
  struct Case {
    std::string matrix;
    std::size_t nvars;
    // Returns a point of V or nothing.
    std::function<std::optional<std::vector<G>>(std::vector<G>)> on_variety;
  };
  // A point on {q = 0} for q linear in the last variable.
  auto solve_last = [](const Polynomial& qf, std::vector<G> pt) -> std::optional<std::vector<G>> {
    const std::size_t last = qf.nvars() - 1;
    Polynomial a(qf.nvars()), b(qf.nvars());
    for (const auto& [m, c] : qf.terms()) {
      if (m[last] == 1) {
        std::vector<int> e(m.exponents().begin(), m.exponents().end());
        e[last] = 0;
        a += Polynomial::term(Monomial(e), c);
      } else {
        b += Polynomial::term(m, c);
      }
    }
    const G av = eval_gaussian(a, pt), bv = eval_gaussian(b, pt);
    if (sgn(av.first) == 0 && sgn(av.second) == 0) return std::nullopt;
    const G z = gdiv(bv, av);
    pt[last] = {-z.first, -z.second};
    return pt;
  };
  std::vector<Case> cases{
      {R"([["z1^2 - z2"]])", 2, {}},
      {R"([["z1*z2 - 1"]])", 2, {}},
      {R"([["z1^3 - z2^2*z3 + 1"]])", 3, {}},
      {R"([["z1^2 + z2 - 3*z1*z3"]])", 3, {}},
      {R"([["z1"],["z2"]])", 2,
       [](std::vector<G> pt) -> std::optional<std::vector<G>> {
         for (auto& x : pt) x = {0, 0};
         return pt;
       }},
      {R"([["z1 - 1"],["z2 + 2"]])", 2,
       [](std::vector<G> pt) -> std::optional<std::vector<G>> {
         pt[0] = {-1, 0};
         pt[1] = {2, 0};
         return pt;
       }},
  };
  std::size_t points = 0, on_v = 0;
  for (auto& c : cases) {
    const auto sys = system_of(c.matrix, c.nvars);
    std::vector<Polynomial> flipped;
    for (const auto& row : sys.matrix) flipped.push_back(row[0].sign_flip());
    if (!c.on_variety && flipped.size() == 1) {
      const Polynomial qf = flipped.front();
      c.on_variety = [=](std::vector<G> pt) { return solve_last(qf, pt); };
    }
    for (int i = 0; i < 50; ++i) {
      std::vector<G> pt;
      for (std::size_t k = 0; k < c.nvars; ++k) pt.push_back({rq(), i % 3 ? Rational(0) : rq()});
      if (i % 2 == 0 && c.on_variety) {
        if (auto v = c.on_variety(pt)) pt = *v;
      }
      bool vanish = true;
      for (const auto& qf : flipped) {
        const G v = eval_gaussian(qf, pt);
        vanish = vanish && sgn(v.first) == 0 && sgn(v.second) == 0;
      }
      on_v += vanish;
      o.require(exponential_kernel_test(sys, std::span<const G>(pt)) == vanish,
                "kernel test disagrees at a point");
      ++points;
    }
  }
  o.require(on_v >= 100, "too few points on the varieties");
  if (o.pass) {
    o.detail = std::to_string(polys) + " involutions; " + std::to_string(points) + " points (" +
               std::to_string(on_v) + " on V) agree";
  }
  return o;
}

// ---------------------------------------------------------------- 4

WeightSpec family(WeightFamily f, Rational p) {
  WeightSpec s;
  s.family = f;
  s.parameter = p;
  return s;
}

Outcome criterion4() {
  Outcome o;
  const WeightFunction w(family(WeightFamily::gevrey, q(1, 2)));
  const auto c = young_conjugate(w);
  o.require(c.method() == YoungConjugate::Method::closed_form, "closed form not selected");
  double worst = 0;
  for (double y : log_grid(1, 1e4, 200)) {
    const double a = *c.closed_form(y), b = c.numeric(y);
    worst = std::max(worst, std::abs(a - b) / std::max(1.0, std::abs(a)));
  }
  o.require(worst <= 1e-6, "closed form vs numeric");
  o.require(c(0) == 0.0, "phi*(0) != 0");
  const double bic = biconjugate_check(w, 20);
  o.require(bic < 1e-6, "biconjugate");
  double prev = -1e300;
  bool mono = true;
  for (double y : log_grid(1, 1e4, 200)) {
    const double r = c(y) / y;
    mono = mono && r >= prev - 1e-12 * std::abs(prev);
    prev = r;
  }
  o.require(mono, "phi*(y)/y decreases");
  char buf[160];
  std::snprintf(buf, sizeof buf, "max rel diff %.2e, biconjugate %.2e", worst, bic);
  if (o.pass) o.detail = buf;
  return o;
}

// ---------------------------------------------------------------- 5

WeightFunction sublinear_table(double beta) {
  WeightSpec s;
  s.family = WeightFamily::table;
  for (double t : log_grid(1e-2, 1e7, 1800)) {
    s.points.emplace_back(t, t / std::pow(std::log(std::exp(1.0) + t), beta));
  }
  return WeightFunction(s);
}

Outcome criterion5() {
  Outcome o;
  const auto g = check_axioms(WeightFunction(family(WeightFamily::gevrey, q(1, 2))));
  o.require(g.alpha.holds && g.beta.verdict == Convergence::converges && g.gamma_prime.holds &&
                g.delta.holds,
            "gevrey 1/2 axioms");
  const auto l = check_axioms(WeightFunction(family(WeightFamily::logpow, q(1))));
  o.require(l.gamma_prime.holds, "logpow (gamma')");
  bool flagged = false;
  for (const auto& n : l.notes) flagged = flagged || n.find("fails (gamma)") != std::string::npos;
  o.require(flagged, "logpow not flagged");
  const auto s = check_axioms(sublinear_table(1.0));
  o.require(s.beta.verdict == Convergence::diverges, "sublinear table (beta)");
  if (o.pass) o.detail = "gevrey all pass; logpow flagged; sublinear table diverges";
  return o;
}

// ---------------------------------------------------------------- 6

Outcome criterion6() {
  Outcome o;
  std::vector<WeightFunction> ws{
      WeightFunction(family(WeightFamily::gevrey, q(1, 2))),
      WeightFunction(family(WeightFamily::gevrey, q(1, 3))),
      WeightFunction(family(WeightFamily::logpow, q(1))),
      WeightFunction(family(WeightFamily::logpow, q(5, 2))),
      WeightFunction(family(WeightFamily::sublinear_log, q(2))),
      sublinear_table(2.0)};
  std::string ks;
  for (const auto& w : ws) {
    const auto ax = check_axioms(w);
    const auto r = subadditivity_check(w, ax.alpha.K);
    o.require(r.holds, w.describe() + " not subadditive");
    char buf[64];
    std::snprintf(buf, sizeof buf, "%s%s K=%.3g", ks.empty() ? "" : ", ", w.describe().c_str(), ax.alpha.K);
    ks += buf;
  }
  if (o.pass) o.detail = ks;
  return o;
}

// ---------------------------------------------------------------- 7

using Series = std::map<Rational, Rational>;

std::optional<Rational> residual_top(const Polynomial& f, const Series& z2) {
  auto times = [](const Series& a, const Series& b) {
    Series out;
    for (const auto& [e1, x] : a) {
      for (const auto& [e2, y] : b) out[e1 + e2] += x * y;
    }
    std::erase_if(out, [](const auto& kv) { return sgn(kv.second) == 0; });
    return out;
  };
  Series total;
  for (const auto& [m, c] : f.terms()) {
    Series t{{Rational(m[0]), c}};
    for (int k = 0; k < m[1]; ++k) t = times(t, z2);
    for (const auto& [e, x] : t) total[e] += x;
  }
  std::erase_if(total, [](const auto& kv) { return sgn(kv.second) == 0; });
  if (total.empty()) return std::nullopt;
  return total.rbegin()->first;
}

Outcome criterion7() {
  Outcome o;
  const int order = 5;
  const auto cusp = puiseux_at_infinity(P("z2^2 - z1^3", 2), order);
  o.require(cusp.branches.size() == 2, "cusp branch count");
  std::vector<double> coeffs;
  for (const auto& b : cusp.branches) {
    o.require(!b.terms.empty() && b.terms[0].exponent == q(3, 2), "cusp exponent");
    if (!b.terms.empty()) coeffs.push_back(b.terms[0].coefficient.real());
  }
  std::sort(coeffs.begin(), coeffs.end());
  o.require(coeffs.size() == 2 && std::abs(coeffs[0] + 1) < 1e-12 && std::abs(coeffs[1] - 1) < 1e-12,
            "cusp coefficients");
  int exact_checked = 0, numeric_checked = 0;
  for (const char* s : {"z2^2 - z1^3", "z1*z2 - 1", "z2^2 - z1^3 - z1", "z2^2 - z1^2 - 1",
                        "z1*z2^2 - z2 - z1^3", "z2^3 - 3*z1*z2 + z1^4 - 2"}) {
    const auto f = P(s, 2);
    const auto r = puiseux_at_infinity(f, order);
    std::set<int> seen;
    int sum = 0;
    for (const auto& b : r.branches) {
      if (seen.insert(b.conjugacy_class).second) sum += b.ramification;
    }
    o.require(sum == f.degree_in(1), std::string("ramification sum for ") + s);
    for (const auto& b : r.branches) {
      if (!b.terminated) o.require(b.truncation_order >= order, "order not reached");
      if (b.exact) {
        Series z2;
        for (const auto& t : b.terms) z2[t.exponent] = *t.exact;
        const auto top = residual_top(f, z2);
        if (b.terminated) {
          o.require(!top.has_value(), std::string("terminated branch leaves a residual for ") + s);
        } else {
          o.require(b.residual_bound && top && *top < *b.residual_bound,
                    std::string("residual above its bound for ") + s);
        }
        ++exact_checked;
      } else {
        const auto lib = puiseux_residual_exponent(f, b);
        o.require(b.terminated || b.residual_bound.has_value(), "missing residual bound");
        if (lib && b.residual_bound) o.require(*lib < *b.residual_bound, "numeric residual bound");
        ++numeric_checked;
      }
    }
  }
  if (o.pass) {
    o.detail = "cusp +-z1^(3/2); 6 curves; " + std::to_string(exact_checked) +
               " branches exact-checked, " + std::to_string(numeric_checked) + " numerically";
  }
  return o;
}

// ---------------------------------------------------------------- 8

Outcome criterion8() {
  Outcome o;
  const auto rep = paley_wiener_experiment(family(WeightFamily::gevrey, q(1, 2)), 1.0, 2000);
  o.require(rep.p_fit >= 0.425 && rep.p_fit <= 0.575, "decay exponent out of range");
  o.require(rep.monotone, "envelope not monotone");
  char buf[80];
  std::snprintf(buf, sizeof buf, "p = %.4f, monotone", rep.p_fit);
  o.detail = o.pass ? buf : o.detail + " (" + buf + ")";
  return o;
}

// ---------------------------------------------------------------- 9

RegionSpec square(long r) {
  RegionSpec k;
  k.kind = RegionSpec::Kind::box;
  k.bounds.assign(2, {Rational(-r), Rational(r)});
  return k;
}

Outcome criterion9() {
  Outcome o;
  const WeightFunction w(family(WeightFamily::gevrey, q(1, 2)));
  std::size_t admissible = 0;
  for (const char* curve : {"z2", "z2^2 - z1^3 + z1", "z1*z2 - 1"}) {
    const auto s = sample_curve(P(curve, 2), 1e6, 13, 16);
    for (int alpha : {1, 2, 3}) {
      ProbeContext ctx{square(1), square(1), w, alpha, 1.0};
      const auto cands = default_candidates();
      const auto v = probe(s, ctx, cands);
      o.require(v.replay_ok, "replay failed");
      for (std::size_t i = 0; i < v.candidates.size(); ++i) {
        const auto& c = v.candidates[i];
        if (!c.admissible) continue;
        ++admissible;
        const bool env = cands[i].kind == CandidateSpec::Kind::envelope;
        const auto& last = c.rows.back();
        o.require(last.beta.has_value(), "no beta");
        if (!last.beta) continue;
        // beta = alpha always carries the conclusion with C = 0.
        // Relative to the size of the terms, so rounding of large H does not count.
        double excess = -1e300;
        for (const auto& p : s.points) {
          const std::vector<double> im{p.z1.imag(), p.z2.imag()};
          const double u = candidate_value(cands[i], p, ctx);
          const double h = supporting_function(exhaustion(ctx.k1, alpha), std::span<const double>(im));
          const double a = alpha * w(std::abs(p.z1) + std::abs(p.z2));
          excess = std::max(excess, (u - h - a) / (1 + std::abs(u) + std::abs(h) + a));
        }
        o.require(excess <= 1e-9, "beta = alpha needs C > 0");
        o.require(*last.beta <= alpha, "beta above alpha");
        if (alpha == 1 || env) {
          o.require(*last.beta == alpha, "beta != alpha");
          o.require(last.C <= 1e-9, "C != 0");
        }
      }
    }
  }
  const auto line = sample_curve(P("z2", 2), 1e6, 13, 16);
  ProbeContext ctx{square(1), square(2), w, 1, 1.0};
  CandidateSpec im;
  im.kind = CandidateSpec::Kind::linear_im;
  im.c = {Rational(1), Rational(0)};
  const auto v = probe(line, ctx, {im});
  o.require(v.candidates[0].admissible, "line candidate not admissible");
  for (const auto& row : v.candidates[0].rows) {
    o.require(row.beta == 1 && row.C <= 1e-9, "line beta != 1");
  }
  o.require(v.trend == Trend::stable && v.replay_ok, "line trend or replay");
  if (o.pass) {
    o.detail = std::to_string(admissible) + " admissible candidate runs; line beta=1 stable to 1e6";
  }
  return o;
}

// ---------------------------------------------------------------- 10

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Outcome criterion10(const std::string& cli, const std::string& data) {
  Outcome o;
  const auto dir = std::filesystem::temp_directory_path() / ("overdet_accept_" + std::to_string(::getpid()));
  std::filesystem::create_directories(dir);
  const std::vector<std::pair<std::string, std::string>> runs{
      {"resolve", "--input " + data + "/gradient.json"},
      {"resolve", "--input " + data + "/koszul3.json"},
      {"variety", "--input " + data + "/cusp.json --puiseux-order 6"},
      {"weights", "--input " + data + "/weights.json"},
      {"pw-check", "--input " + data + "/pw.json"},
      {"pw-check", "--s 2 --csv"},
      {"pl-probe", "--input " + data + "/line_probe.json --seed 7"},
      {"pl-probe", "--input " + data + "/line_probe.json --mode uniqueness"}};
  int k = 0;
  for (const auto& [sub, args] : runs) {
    std::string bytes[2];
    for (int rep = 0; rep < 2; ++rep) {
      const auto out = dir / (std::to_string(k) + "_" + std::to_string(rep) + ".out");
      const std::string cmd = "\"" + cli + "\" " + sub + " " + args + " --output \"" + out.string() + "\" 2>/dev/null";
      const int rc = std::system(cmd.c_str());
      o.require(rc != -1 && WIFEXITED(rc) && (WEXITSTATUS(rc) == 0 || WEXITSTATUS(rc) == 2 || WEXITSTATUS(rc) == 3),
                sub + " failed to run");
      bytes[rep] = slurp(out);
    }
    o.require(!bytes[0].empty() && bytes[0] == bytes[1], sub + " " + args + " not byte-identical");
    ++k;
  }
  std::filesystem::remove_all(dir);
  if (o.pass) o.detail = std::to_string(k) + " runs byte-identical across two invocations";
  return o;
}

}  // namespace

int main(int argc, char** argv) {
  if (argc < 3) {
    std::cerr << "usage: acceptance <cli> <data dir>\n";
    return 2;
  }
  const std::string cli = argv[1], data = argv[2];
  struct Item {
    int id;
    const char* name;
    double budget_s;  // 0: no runtime bound
    std::function<Outcome()> run;
  };
  const std::vector<Item> items{
      {1, "groebner soundness", 10, criterion1},
      {2, "syzygy and resolution", 10, criterion2},
      {3, "characteristic variety", 0, criterion3},
      {4, "young conjugate", 2, criterion4},
      {5, "axiom reports", 5, criterion5},
      {6, "subadditivity", 0, criterion6},
      {7, "puiseux", 5, criterion7},
      {8, "paley-wiener", 5, criterion8},
      {9, "pl probe", 20, criterion9},
      {10, "determinism", 0, [&] { return criterion10(cli, data); }},
  };
  int failed = 0;
  for (const auto& it : items) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = it.run();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (it.budget_s > 0 && secs >= it.budget_s) {
      o.pass = false;
      o.detail += " (over the " + std::to_string(static_cast<int>(it.budget_s)) + " s budget)";
    }
    failed += !o.pass;
    std::printf("criterion %2d %-24s %s %8.3f s  %s\n", it.id, it.name, o.pass ? "PASS" : "FAIL", secs,
                o.detail.c_str());
  }
  std::printf("%d/%zu criteria pass\n", static_cast<int>(items.size()) - failed, items.size());
  return failed == 0 ? 0 : 1;
}
