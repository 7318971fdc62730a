#include <doctest.h>

#include <random>

#include "oracle.hpp"
#include "overdet/errors.hpp"
#include "overdet/parser.hpp"
#include "overdet/resolution.hpp"

using namespace overdet;

namespace {

SystemSpec sys(const std::string& matrix, const std::string& vars = R"(["z1","z2"])") {
  return parse_system(R"({"variables":)" + vars + R"(,"matrix":)" + matrix + "}");
}

const std::string kVars3 = R"(["z1","z2","z3"])";

Polynomial P(const std::string& s, std::size_t n = 2) {
  static const std::vector<std::string> names = {"z1", "z2", "z3"};
  return parse_polynomial(s, std::span(names).first(n));
}

// Every bounded kernel vector of map j lies in the image of map j+1 (oracle side).
void check_exact_by_oracle(const FreeResolution& r, int degree) {
  for (std::size_t j = 0; j + 1 < r.maps.size(); ++j) {
    const auto cols = r.maps[j].columns();
    const auto image = r.maps[j + 1].columns();
    for (const auto& v : oracle::syzygies_up_to(cols, degree)) {
      CHECK(oracle::in_span(v, image, degree + 4));
    }
  }
  CHECK(oracle::syzygies_up_to(r.maps.back().columns(), degree).empty());
}

}  // namespace

TEST_SUITE("resolution") {
  TEST_CASE("gradient system") {
    auto r = hilbert_resolution(sys(R"([["z1"],["z2"]])"));
    CHECK(r.ranks == std::vector<std::size_t>{1, 2, 1});
    CHECK(r.length() == 2);
    REQUIRE(r.maps.size() == 2);
    const auto& t1 = r.maps[1];
    CHECK(t1.rows() == 2);
    CHECK(t1.cols() == 1);
    const bool plus = t1(0, 0) == P("z2") && t1(1, 0) == P("-z1");
    const bool minus = t1(0, 0) == P("-z2") && t1(1, 0) == P("z1");
    CHECK((plus || minus));
    CHECK((r.maps[0] * r.maps[1]).is_zero());
    for (const auto& c : r.certificates) {
      CHECK(c.composition_zero);
      CHECK(c.kernel_in_image);
    }
    CHECK(r.injective_tail);
    check_exact_by_oracle(r, 3);

    auto rep = overdetermination_report(r);
    CHECK(rep.overdetermined);
    CHECK(rep.conditions == 1);
    REQUIRE(rep.equations.size() == 1);
    CHECK(rep.equations[0] == "D2f1 - D1f2 = 0");
  }

  TEST_CASE("single operator") {
    auto r = hilbert_resolution(sys(R"([["z1^2 + z2"]])"));
    CHECK(r.length() == 1);
    CHECK(r.ranks == std::vector<std::size_t>{1, 1});
    CHECK_FALSE(overdetermination_report(r).overdetermined);
  }

  TEST_CASE("Koszul complex in three variables") {
    auto r = hilbert_resolution(sys(R"([["z1"],["z2"],["z3"]])", kVars3));
    CHECK(r.ranks == std::vector<std::size_t>{1, 3, 3, 1});
    CHECK(r.length() == 3);
    CHECK(r.length() <= r.nvars());
    for (std::size_t j = 0; j + 1 < r.maps.size(); ++j) CHECK((r.maps[j] * r.maps[j + 1]).is_zero());
    check_exact_by_oracle(r, 2);
    auto rep = overdetermination_report(r);
    CHECK(rep.overdetermined);
    CHECK(rep.conditions == 3);
  }

  TEST_CASE("module inputs stay within the syzygy bound") {
    for (const auto& [m, v] : std::vector<std::pair<std::string, std::string>>{
             {R"([["z1","z2"],["z2","z1"]])", R"(["z1","z2"])"},
             {R"([["z1^2","0"],["z1*z2","z2"],["0","z2^2"]])", R"(["z1","z2"])"},
             {R"([["z1*z2"],["z2*z3"],["z1*z3"]])", kVars3},
             {R"([["z1^2-z2"],["z1*z2-1"]])", R"(["z1","z2"])"},
             {R"([["0"]])", R"(["z1","z2"])"}}) {
      auto r = hilbert_resolution(sys(m, v));
      CHECK(r.length() <= r.nvars());
      for (const auto& c : r.certificates) {
        CHECK(c.composition_zero);
        CHECK(c.kernel_in_image);
      }
      CHECK(r.injective_tail);
    }
  }

  TEST_CASE("zero system is a free module") {
    auto r = hilbert_resolution(sys(R"([["0"]])"));
    CHECK(r.free_module);
    CHECK(r.ranks == std::vector<std::size_t>{1, 1, 1});
    auto ext = dual_complex_homology(r);
    REQUIRE_FALSE(ext.ext.empty());
    CHECK(ext.ext[0].summary == "P");
    CHECK(ext.ext[0].is_free);
  }

  TEST_CASE("operator equations") {
    std::vector<Polynomial> row{P("z1^2 - 3*z2"), P("-2*z2"), P("0"), P("1")};
    CHECK(operator_equation(row) == "(D1^2 - 3*D2)f1 - 2*D2f2 + f4 = 0");
  }

  TEST_CASE("annihilators") {
    auto grad = annihilator(sys(R"([["z1"],["z2"]])"));
    CHECK(grad == std::vector<Polynomial>{P("z1"), P("z2")});
    auto scalar = annihilator(sys(R"([["z1^2"]])"));
    CHECK(scalar == std::vector<Polynomial>{P("z1^2")});
    const auto diag_sys = sys(R"([["z1","0"],["0","z2"]])");
    auto diag = annihilator(diag_sys);
    CHECK(diag == std::vector<Polynomial>{P("z1*z2")});

    // Candidate p up to degree 4: p*e_k in the column module for all k iff p in ann.
    std::vector<ModuleElement> cols{ModuleElement({P("z1"), P("0")}),
                                    ModuleElement({P("0"), P("z2")})};
    std::vector<ModuleElement> ann{ModuleElement({P("z1*z2")})};
    std::mt19937 rng(9);
    for (int i = 0; i < 60; ++i) {
      Polynomial p = oracle::random_polynomial(rng, 2, 4, 1 + i % 3, 2);
      if (p.is_zero()) continue;
      bool kills = true;
      for (std::size_t k = 0; k < 2; ++k) {
        ModuleElement pe(2, 2);
        pe[k] = p;
        kills = kills && oracle::in_span(pe, cols, 4);
      }
      CHECK(kills == oracle::in_span(ModuleElement({p}), ann, 4));
    }
  }

  TEST_CASE("characteristic varieties") {
    auto v1 = characteristic_variety(std::vector{P("z1-1")});
    CHECK(v1.generators == std::vector{P("-z1-1")});
    auto v2 = characteristic_variety(std::vector{P("z1"), P("z2")});
    CHECK(v2.generators == std::vector{P("-z1"), P("-z2")});
    auto v3 = characteristic_variety(std::vector{P("z2^2-z1^3")});
    CHECK(v3.generators == std::vector{P("z2^2+z1^3")});
  }

  TEST_CASE("exponential kernel test") {
    using C = std::complex<double>;
    auto s = sys(R"([["z1^2-z2"]])");
    // p(-z) at z = (1, 1) is 1 + 1 = 2; the kernel point is z = (1, -1).
    std::vector<C> z{C(1, 0), C(1, 0)};
    CHECK_FALSE(exponential_kernel_test(s, std::span<const C>(z)));
    std::vector<C> z_on{C(1, 0), C(-1, 0)};
    CHECK(exponential_kernel_test(s, std::span<const C>(z_on)));
    auto s2 = sys(R"([["z1^2+z2"]])");
    std::vector<C> z2{C(1, 0), C(-1, 0)};
    CHECK_FALSE(exponential_kernel_test(s2, std::span<const C>(z2)));
    auto grad = sys(R"([["z1"],["z2"]])");
    std::vector<C> o{C(0, 0), C(0, 0)};
    CHECK(exponential_kernel_test(grad, std::span<const C>(o)));
    CHECK_THROWS_AS(exponential_kernel_test(sys(R"([["z1","z2"]])"), std::span<const C>(o)),
                    InputError);

    std::vector<GaussianRational> q{{Rational(1), Rational(0)}, {Rational(-1), Rational(0)}};
    CHECK(exponential_kernel_test(s, std::span<const GaussianRational>(q)));
  }

  TEST_CASE("Ext presentations") {
    auto grad = dual_complex_homology(hilbert_resolution(sys(R"([["z1"],["z2"]])")));
    CHECK(grad.composition_zero);
    REQUIRE(grad.ext.size() == 3);
    CHECK(grad.ext[0].is_zero);
    CHECK(grad.ext[1].is_zero);
    CHECK(grad.ext[2].summary == "P/(z1, z2)");
    // The relation ideal equals (z1, z2) in every degree up to 3.
    std::vector<ModuleElement> rel = grad.ext[2].relations;
    std::vector<ModuleElement> koszul{ModuleElement({P("z1")}), ModuleElement({P("z2")})};
    for (const auto& m : oracle::monomials_up_to(2, 3)) {
      ModuleElement e({Polynomial::term(m, 1)});
      CHECK(oracle::in_span(e, rel, 3) == oracle::in_span(e, koszul, 3));
    }

    auto single = dual_complex_homology(hilbert_resolution(sys(R"([["z1^2+z2"]])")));
    REQUIRE(single.ext.size() == 2);
    CHECK(single.ext[0].is_zero);
    CHECK(single.ext[1].summary == "P/(z1^2 + z2)");
  }
}
