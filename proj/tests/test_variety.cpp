#include <doctest.h>

#include <map>
#include <random>
#include <set>

#include "oracle.hpp"
#include "overdet/errors.hpp"
#include "overdet/parser.hpp"
#include "overdet/variety.hpp"

using namespace overdet;

namespace {

Polynomial P(const std::string& s, std::size_t n = 2) {
  static const std::vector<std::string> names = {"z1", "z2", "z3"};
  return parse_polynomial(s, std::span(names).first(n));
}

Polynomial rebuild(const FactorList& f, std::size_t n) {
  Polynomial out = Polynomial::constant(n, f.unit);
  for (const auto& [g, m] : f.factors) out *= g.pow(static_cast<unsigned>(m));
  return out;
}

// Exact Laurent-Puiseux arithmetic, independent of the library engine.
using Series = std::map<Rational, Rational>;

Series times(const Series& a, const Series& b) {
  Series out;
  for (const auto& [e1, x] : a) {
    for (const auto& [e2, y] : b) out[e1 + e2] += x * y;
  }
  std::erase_if(out, [](const auto& kv) { return sgn(kv.second) == 0; });
  return out;
}

// Highest z1-exponent of curve(z1, series), empty if it vanishes.
std::optional<Rational> residual_top(const Polynomial& f, const Series& z2) {
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

int class_ramification_sum(const PuiseuxResult& r) {
  std::set<int> seen;
  int sum = 0;
  for (const auto& b : r.branches) {
    if (seen.insert(b.conjugacy_class).second) sum += b.ramification;
  }
  return sum;
}

void check_branches(const Polynomial& f, int order) {
  auto r = puiseux_at_infinity(f, order);
  CHECK(static_cast<int>(r.branches.size()) == f.degree_in(1));
  CHECK(class_ramification_sum(r) == f.degree_in(1));
  for (const auto& b : r.branches) {
    CHECK(b.separated);
    for (std::size_t i = 1; i < b.terms.size(); ++i) CHECK(b.terms[i].exponent < b.terms[i - 1].exponent);
    for (const auto& t : b.terms) {
      CHECK(std::abs(t.coefficient) > 0);
      CHECK(b.ramification % static_cast<int>(t.exponent.get_den().get_si()) == 0);
    }
    if (!b.terminated) CHECK(b.truncation_order >= order);
    const auto lib = puiseux_residual_exponent(f, b);
    if (b.exact) {
      Series s;
      for (const auto& t : b.terms) s[t.exponent] = *t.exact;
      const auto top = residual_top(f, s);
      if (b.terminated) {
        CHECK_FALSE(top.has_value());
      } else {
        REQUIRE(b.residual_bound.has_value());
        REQUIRE(top.has_value());
        CHECK(*top < *b.residual_bound);
      }
      CHECK(lib == top);
    } else {
      REQUIRE((b.terminated || b.residual_bound.has_value()));
      if (lib && b.residual_bound) CHECK(*lib < *b.residual_bound);
      // The truncated series nearly annihilates the curve at a large radius.
      for (double x : {1e3, -1e3}) {
        Complex z2 = 0;
        for (const auto& t : b.terms) z2 += t.coefficient * std::pow(Complex(x), t.exponent.get_d());
        std::vector<Complex> pt{Complex(x), z2};
        double mag = 0;
        for (const auto& [m, c] : f.terms()) {
          mag += std::abs(c.get_d()) * std::pow(std::abs(x), m[0]) * std::pow(std::abs(z2), m[1]);
        }
        CHECK(std::abs(f.eval(std::span<const Complex>(pt))) <= 1e-9 * mag);
      }
    }
  }
}

}  // namespace

TEST_SUITE("variety") {
  TEST_CASE("factor examples") {
    auto a = factor(P("z1^2 - 1"));
    REQUIRE(a.factors.size() == 2);
    CHECK(rebuild(a, 2) == P("z1^2 - 1"));
    std::set<std::string> names;
    for (const auto& [g, m] : a.factors) names.insert(format_polynomial(g));
    CHECK(names == std::set<std::string>{"z1 - 1", "z1 + 1"});

    auto b = factor(P("z2^2 - z1^3"));
    REQUIRE(b.factors.size() == 1);
    CHECK(b.factors[0].second == 1);

    auto c = factor(P("(z1 + z2)^2*z1"));
    REQUIRE(c.factors.size() == 2);
    CHECK(c.factors[0].first == P("z1 + z2"));
    CHECK(c.factors[0].second == 2);
    CHECK(c.factors[1].first == P("z1"));
    CHECK(c.factors[1].second == 1);
    CHECK(rebuild(c, 2) == P("(z1 + z2)^2*z1"));
  }

  TEST_CASE("irreducibility against brute-force divisor search") {
    // No factor of degree <= 2 with small coefficients divides z2^2 - z1^3.
    const Polynomial f = P("z2^2 - z1^3");
    std::mt19937 rng(2);
    for (int i = 0; i < 400; ++i) {
      Polynomial g = oracle::random_polynomial(rng, 2, 1 + i % 2, 1 + i % 4, 3);
      if (g.is_constant()) continue;
      CHECK_FALSE(exact_divide(f, g));
    }
  }

  TEST_CASE("factor reconstruction on random products") {
    std::mt19937 rng(11);
    for (int trial = 0; trial < 30; ++trial) {
      Rational lead(2 + trial % 3, 3);
      lead.canonicalize();
      Polynomial p = Polynomial::constant(2, lead);
      std::vector<Polynomial> parts;
      int degree = 0;
      while (degree < 5) {
        Polynomial g = oracle::random_polynomial(rng, 2, 1 + static_cast<int>(rng() % 2), 2, 4);
        if (g.is_constant()) continue;
        degree += g.total_degree();
        p *= g;
      }
      if (p.total_degree() > kMaxBivariateFactorDegree) continue;
      auto f = factor(p);
      CHECK(rebuild(f, 2) == p);
      for (std::size_t i = 0; i < f.factors.size(); ++i) {
        for (std::size_t j = i + 1; j < f.factors.size(); ++j) {
          CHECK_FALSE(exact_divide(f.factors[i].first, f.factors[j].first));
        }
      }
    }
  }

  TEST_CASE("three variables give the square-free decomposition") {
    auto f = factor(P("(z1*z2 - z3)^2*(z1 + z3)", 3));
    CHECK_FALSE(f.complete);
    CHECK(rebuild(f, 3) == P("(z1*z2 - z3)^2*(z1 + z3)", 3));
    REQUIRE(f.factors.size() == 2);
    CHECK(f.factors[0].second == 2);
  }

  TEST_CASE("factor caps") {
    CHECK_THROWS_AS(factor(P("z1^41 + 1")), ResourceError);
    CHECK_THROWS_AS(factor(P("z1^5*z2^4 + 1")), ResourceError);
    CHECK_THROWS_AS(factor(P("0")), InputError);
  }

  TEST_CASE("zero-dimensional solving") {
    std::vector<Polynomial> a{P("z1^2"), P("z2 - 1")};
    auto sa = solve_zero_dim(a);
    REQUIRE(sa.size() == 1);
    CHECK(std::abs(sa[0].point[0]) < 1e-8);
    CHECK(std::abs(sa[0].point[1] - 1.0) < 1e-12);
    CHECK(sa[0].multiplicity == 2);

    std::vector<Polynomial> b{P("z1^2 - 1"), P("z2 - z1")};
    auto sb = solve_zero_dim(b);
    REQUIRE(sb.size() == 2);
    CHECK(std::abs(sb[0].point[0] + 1.0) < 1e-12);
    CHECK(std::abs(sb[0].point[1] + 1.0) < 1e-12);
    CHECK(std::abs(sb[1].point[0] - 1.0) < 1e-12);
    CHECK(std::abs(sb[1].point[1] - 1.0) < 1e-12);
    for (const auto& s : sb) {
      CHECK(s.multiplicity == 1);
      CHECK(s.residual < 1e-8);
    }

    std::vector<Polynomial> c{P("z1^2 + 1", 1)};
    auto sc = solve_zero_dim(c);
    REQUIRE(sc.size() == 2);
    CHECK(std::abs(sc[0].point[0] - Complex(0, -1)) < 1e-12);
    CHECK(std::abs(sc[1].point[0] - Complex(0, 1)) < 1e-12);

    std::vector<Polynomial> d{P("z1^2 + z2^2 - 5"), P("z1*z2 - 2")};
    auto sd = solve_zero_dim(d);
    CHECK(sd.size() == 4);
    for (const auto& s : sd) CHECK(s.residual < 1e-8);

    std::vector<Polynomial> e{P("z1^2 - z2"), P("z2^2 - z1")};
    auto se = solve_zero_dim(e);
    int total = 0;
    for (const auto& s : se) total += s.multiplicity;
    CHECK(se.size() == 4);
    CHECK(total == 4);

    std::vector<Polynomial> none{P("z1"), P("z1 - 1")};
    CHECK(solve_zero_dim(none).empty());
  }

  TEST_CASE("positive-dimensional ideals are rejected") {
    std::vector<Polynomial> g{P("z2^2 - z1^3")};
    try {
      solve_zero_dim(g);
      FAIL("expected an error");
    } catch (const InputError& e) {
      CHECK(std::string(e.what()).find("Puiseux") != std::string::npos);
    }
  }

  TEST_CASE("Puiseux examples") {
    auto cusp = puiseux_at_infinity(P("z2^2 - z1^3"), 4);
    REQUIRE(cusp.branches.size() == 2);
    for (const auto& b : cusp.branches) {
      CHECK(b.terms.front().exponent == Rational(3, 2));
      CHECK(b.ramification == 2);
      CHECK(b.terminated);
      CHECK(b.class_size == 2);
    }
    CHECK(std::abs(cusp.branches[0].terms[0].coefficient - Complex(-1)) < 1e-12);
    CHECK(std::abs(cusp.branches[1].terms[0].coefficient - Complex(1)) < 1e-12);
    CHECK(cusp.branches[0].conjugacy_class == cusp.branches[1].conjugacy_class);

    auto hyp = puiseux_at_infinity(P("z1*z2 - 1"), 4);
    REQUIRE(hyp.branches.size() == 1);
    REQUIRE(hyp.branches[0].terms.size() == 1);
    CHECK(hyp.branches[0].terms[0].exponent == -1);
    CHECK(hyp.branches[0].terms[0].exact == Rational(1));
    CHECK_FALSE(hyp.monic_in_z2);

    auto lines = puiseux_at_infinity(P("z2^2 - z1^2"), 4);
    REQUIRE(lines.branches.size() == 2);
    CHECK(lines.branches[0].terms[0].exact == Rational(-1));
    CHECK(lines.branches[1].terms[0].exact == Rational(1));
    for (const auto& b : lines.branches) CHECK(b.terms[0].exponent == 1);
    CHECK(lines.branches[0].conjugacy_class != lines.branches[1].conjugacy_class);
  }

  TEST_CASE("Puiseux residuals and branch counts on a curve corpus") {
    for (const char* c : {"z2^2 - z1^3", "z1*z2 - 1", "z2^2 - z1^2", "z2^3 - z1*z2 - z1^4",
                          "z2^2 + z1^2 + 1", "z1*z2^2 - z2 - z1^3", "z2^2 - z1 - 1",
                          "z2^3 - 2*z1*z2 + z1^2 + z1"}) {
      CAPTURE(c);
      check_branches(P(c), 6);
    }
  }

  TEST_CASE("Puiseux input handling") {
    auto sq = puiseux_at_infinity(P("(z2 - z1)^2"), 3);
    CHECK_FALSE(sq.square_free_input);
    CHECK(sq.branches.size() == 1);
    CHECK_THROWS_AS(puiseux_at_infinity(P("z1^9 + z2"), 3), ResourceError);
    CHECK_THROWS_AS(puiseux_at_infinity(P("z1 + z2 + z3", 3), 3), InputError);
    CHECK(puiseux_at_infinity(P("z1 - 1"), 3).branches.empty());
  }

  TEST_CASE("branch report") {
    auto cusp = puiseux_at_infinity(P("z2^2 - z1^3"), 4);
    WeightSpec w;
    w.family = WeightFamily::gevrey;
    w.parameter = Rational(1, 2);
    auto rep = branch_report(cusp.branches, w);
    CHECK(rep.label == "branch data only; no solvability verdict");
    REQUIRE(rep.gevrey_s.has_value());
    CHECK(*rep.gevrey_s == 2);
    REQUIRE(rep.rows.size() == 2);
    CHECK(rep.rows[0].leading_exponent == "3/2");
    CHECK(rep.rows[0].ramification == 2);

    CHECK(branch_report({}, w).rows.empty());

    auto line = puiseux_at_infinity(P("z2 - z1"), 4);
    auto lrep = branch_report(line.branches, w);
    REQUIRE(lrep.rows.size() == 1);
    CHECK(lrep.rows[0].coefficients_real);
    CHECK(lrep.rows[0].leading_real);

    auto circle = puiseux_at_infinity(P("z2^2 + z1^2 + 1"), 4);
    auto crep = branch_report(circle.branches, w,
                              [](const PuiseuxBranch& b, const WeightSpec&) -> std::optional<std::string> {
                                return "q=" + std::to_string(b.ramification);
                              });
    for (const auto& row : crep.rows) {
      CHECK_FALSE(row.leading_real);
      REQUIRE(row.annotations.size() == 1);
      CHECK(row.annotations[0] == "q=1");
    }
  }
}
