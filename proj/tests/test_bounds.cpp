#include <doctest.h>

#include <random>

#include "overdet/bounds.hpp"
#include "overdet/errors.hpp"
#include "overdet/parser.hpp"

using namespace overdet;

namespace {

Rational q(long a, long b = 1) {
  Rational r(a, b);
  r.canonicalize();
  return r;
}

ConvexBody unit_box(std::size_t n, long r = 1) {
  return ConvexBody::box(std::vector<std::pair<Rational, Rational>>(n, {q(-r), q(r)}));
}

WeightSpec gevrey(long a, long b) {
  WeightSpec s;
  s.family = WeightFamily::gevrey;
  s.parameter = q(a, b);
  return s;
}

}  // namespace

TEST_SUITE("bounds") {
  TEST_CASE("supporting function examples") {
    std::vector<Rational> y{q(2), q(-3)};
    CHECK(supporting_function(unit_box(2), std::span<const Rational>(y)) == 5);
    std::vector<Rational> zero{q(0), q(0)};
    CHECK(supporting_function(unit_box(2), std::span<const Rational>(zero)) == 0);
    auto seg = ConvexBody::polytope({{q(-1), q(0)}, {q(1), q(0)}});
    std::vector<Rational> up{q(0), q(7)};
    CHECK(supporting_function(seg, std::span<const Rational>(up)) == 0);
    std::vector<double> yd{2.0, -3.0};
    CHECK(supporting_function(unit_box(2), std::span<const double>(yd)) == 5.0);
    std::vector<Rational> bad{q(1)};
    CHECK_THROWS_AS(supporting_function(unit_box(2), std::span<const Rational>(bad)), InputError);
    CHECK_THROWS_AS(ConvexBody::polytope({}), InputError);
  }

  TEST_CASE("supporting function is sublinear") {
    std::mt19937 rng(3);
    std::uniform_int_distribution<long> c(-9, 9);
    auto tri = ConvexBody::polytope({{q(0), q(0), q(0)}, {q(2), q(1, 2), q(0)}, {q(-1), q(3), q(1)}, {q(0), q(-1), q(5, 3)}});
    for (int i = 0; i < 300; ++i) {
      std::vector<Rational> a, b, s;
      for (int k = 0; k < 3; ++k) {
        a.push_back(q(c(rng), 1 + rng() % 4));
        b.push_back(q(c(rng), 1 + rng() % 4));
        s.push_back(a.back() + b.back());
      }
      const Rational lam = q(1 + rng() % 7, 1 + rng() % 5);
      std::vector<Rational> la;
      for (const auto& x : a) la.push_back(lam * x);
      const auto H = [&](const std::vector<Rational>& v) {
        return supporting_function(tri, std::span<const Rational>(v));
      };
      CHECK(H(la) == lam * H(a));
      CHECK(H(s) <= H(a) + H(b));
    }
  }

  TEST_CASE("exhaustions") {
    auto doc = parse_document(R"({"variables":["z1","z2"],
      "regions":{"K1":{"kind":"box","bounds":[[-1,1],["-inf","+inf"]]},
                 "K2":{"kind":"box","bounds":[[-1,1],[-1,1]],"exhaustion":{"rule":"scale","factors":[1,2,3]}}}})");
    auto k1 = exhaustion(*doc.k1, 3);
    std::vector<Rational> y{q(1), q(1)};
    CHECK(supporting_function(k1, std::span<const Rational>(y)) == 4);
    CHECK(supporting_function(exhaustion(*doc.k2, 2), std::span<const Rational>(y)) == 4);
    CHECK(supporting_function(exhaustion(*doc.k2, 9), std::span<const Rational>(y)) == 6);
    CHECK_THROWS_AS(ConvexBody::from_region(*doc.k1), InputError);
    CHECK_THROWS_AS(exhaustion(*doc.k2, 0), InputError);
  }

  TEST_CASE("psi evaluation") {
    PsiBound b{unit_box(2), WeightFunction(gevrey(1, 2)), 1};
    std::vector<Complex> z{Complex(0, 1), Complex(0, 0)};
    CHECK(psi_eval(b, std::span<const Complex>(z)) == doctest::Approx(1.0));
    std::vector<Complex> real{Complex(9, 0), Complex(-7, 0)};
    CHECK(psi_eval(b, std::span<const Complex>(real)) == doctest::Approx(3.0));
    std::mt19937 rng(5);
    std::normal_distribution<double> nd;
    for (int i = 0; i < 100; ++i) {
      std::vector<Complex> w{Complex(nd(rng), nd(rng)) * 30.0, Complex(nd(rng), nd(rng)) * 30.0};
      PsiBound b2 = b;
      b2.alpha = 2;
      const double d = psi_eval(b2, std::span<const Complex>(w)) - psi_eval(b, std::span<const Complex>(w));
      CHECK(d == doctest::Approx(b.weight(norm1(w))));
      CHECK(d >= 0);
    }
  }

  TEST_CASE("shift stability") {
    PsiBound b{unit_box(2), WeightFunction(gevrey(1, 2)), 1};
    auto r = shift_stability_check(b, 1, 700);
    CHECK(r.bounded);
    CHECK(r.k1 > 0);
    CHECK(r.k1 < 2);
    CHECK(shift_stability_check(b, 0, 100).k1 == 0);

    WeightSpec flat;
    flat.family = WeightFamily::table;
    flat.points = {{0, 1}, {1, 1}, {10, 1}};
    PsiBound c{unit_box(2), WeightFunction(flat), 1};
    auto rc = shift_stability_check(c, 1, 700);
    CHECK(rc.k1 <= 1 + 1e-12);
    CHECK(rc.bounded);
  }

  TEST_CASE("Paley-Wiener experiment") {
    auto r = paley_wiener_experiment(gevrey(1, 2), 1, 2000);
    CHECK(r.p_fit >= 0.425);
    CHECK(r.p_fit <= 0.575);
    CHECK(r.monotone);
    CHECK(r.widths_sum == doctest::Approx(1.0));
    CHECK(r.envelope.front().second == 0);
    CHECK(r.k_achieved > 0);
    for (const auto& [t, e] : r.envelope) CHECK(e <= 0);

    auto wide = paley_wiener_experiment(gevrey(1, 2), 2, 2000);
    CHECK(wide.k_fit > r.k_fit);
    CHECK(wide.k_achieved >= r.k_achieved);

    auto single = paley_wiener_experiment(gevrey(1, 2), 1, 1);
    CHECK(std::abs(single.p_fit) < 0.2);
    const auto w1 = pw_widths(2, 1, 1);
    CHECK(pw_envelope(w1, 1e3) == doctest::Approx(-std::log(w1[0] * 1e3)));
    CHECK(pw_envelope(w1, 1e-3) == 0);

    CHECK_THROWS_AS(paley_wiener_experiment(gevrey(1, 2), 1, 0), InputError);
    WeightSpec lp;
    lp.family = WeightFamily::logpow;
    lp.parameter = 2;
    CHECK_THROWS_AS(paley_wiener_experiment(lp, 1, 10), InputError);
  }
}
