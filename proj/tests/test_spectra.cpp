// Tests for the principal-curvature spectrum layer: family validation, the
// minimal-leaf angle, canonical eigenvalue labeling, and the derived scalars
// (n, s, d, a, b) that every later computation builds on.

#include <isoacs/spectra.hpp>

#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <vector>

using Catch::Approx;
using namespace isoacs;

namespace {

constexpr double kSqrt2 = 1.4142135623730951;
constexpr double kSqrt3 = 1.7320508075688772;
constexpr double kSqrt5 = 2.23606797749979;

} // namespace

TEST_CASE("family validation accepts exactly the classified multiplicity patterns",
          "[spectra][validation]") {
  SECTION("admissible families") {
    for (FamilySpec fs : {FamilySpec{1, 5, 5}, FamilySpec{2, 1, 9}, FamilySpec{2, 3, 6},
                          FamilySpec{3, 1, 1}, FamilySpec{3, 8, 8}, FamilySpec{4, 4, 5},
                          FamilySpec{4, 2, 2}, FamilySpec{6, 1, 1}, FamilySpec{6, 2, 2}}) {
      const ValidationResult v = validate_family(fs);
      INFO("g=" << fs.g << " m1=" << fs.m1 << " m2=" << fs.m2 << ": " << v.message);
      REQUIRE(v.ok);
      REQUIRE(v.reason == FamilyError::Ok);
    }
  }

  SECTION("rejections carry the right reason") {
    auto expect = [](int g, int m1, int m2, FamilyError why) {
      const ValidationResult v = validate_family(g, m1, m2);
      INFO("g=" << g << " m1=" << m1 << " m2=" << m2 << ": " << v.message);
      REQUIRE_FALSE(v.ok);
      REQUIRE(v.reason == why);
      REQUIRE_FALSE(v.message.empty());
    };
    expect(5, 1, 1, FamilyError::GOutOfRange);
    expect(0, 2, 2, FamilyError::GOutOfRange);
    expect(4, 0, 3, FamilyError::NonPositiveMultiplicity);
    expect(2, -1, 2, FamilyError::NonPositiveMultiplicity);
    expect(1, 4, 5, FamilyError::UnequalMultiplicities);
    expect(3, 4, 8, FamilyError::UnequalMultiplicities);
    expect(6, 1, 2, FamilyError::UnequalMultiplicities);
    expect(3, 3, 3, FamilyError::G3MultiplicityNotAllowed);
    expect(6, 3, 3, FamilyError::G6MultiplicityNotAllowed);
  }

  SECTION("minimal_spectrum refuses invalid families") {
    REQUIRE_THROWS_AS(minimal_spectrum({3, 5, 5}), std::invalid_argument);
    REQUIRE_THROWS_AS(minimal_spectrum({5, 1, 1}), std::invalid_argument);
  }
}

TEST_CASE("Ricci positivity follows the classification table", "[spectra][ricci]") {
  REQUIRE(ricci_positive({1, 1, 1}));
  REQUIRE(ricci_positive({1, 9, 9}));
  REQUIRE_FALSE(ricci_positive({2, 1, 9}));
  REQUIRE(ricci_positive({2, 2, 2}));
  REQUIRE_FALSE(ricci_positive({3, 1, 1}));
  REQUIRE(ricci_positive({3, 2, 2}));
  REQUIRE(ricci_positive({4, 2, 2}));
  REQUIRE_FALSE(ricci_positive({4, 1, 6}));
  REQUIRE_FALSE(ricci_positive({6, 1, 1}));
  REQUIRE_FALSE(ricci_positive({6, 2, 2}));
  REQUIRE_THROWS_AS(ricci_positive({5, 1, 1}), std::invalid_argument);

  // minimal_spectrum carries the same flag.
  REQUIRE(minimal_spectrum({4, 2, 2}).ricci_positive);
  REQUIRE_FALSE(minimal_spectrum({6, 2, 2}).ricci_positive);
}

TEST_CASE("g=1 leaves are totally geodesic subspheres", "[spectra][g1]") {
  const Spectrum sp = minimal_spectrum({1, 7, 7});
  REQUIRE(sp.lambdas.size() == 1);
  REQUIRE(sp.lambdas[0] == 0.0);
  REQUIRE(sp.mults == std::vector<int>{7});
  REQUIRE(sp.n == 6);
  REQUIRE(sp.s == 14);
  REQUIRE(sp.d == 9);
  REQUIRE(sp.dim() == 7);
  REQUIRE(sp.a == 0.0);
  REQUIRE(sp.b == 0.0);
  REQUIRE(sp.theta1 == Approx(0.5 * kPi).margin(1e-15));
  REQUIRE(minimality_residual(sp) == 0.0);
}

TEST_CASE("g=3 Cartan family m=4 matches the closed form", "[spectra][g3]") {
  // θ₁ = π/6, so λ = (√3, 0, -√3); n = 3m - 1.
  const Spectrum sp = minimal_spectrum({3, 4, 4});
  REQUIRE(sp.theta1 == Approx(kPi / 6.0).margin(1e-13));
  REQUIRE(sp.lambdas.size() == 3);
  REQUIRE(sp.lambdas[0] == Approx(kSqrt3).margin(1e-12));
  REQUIRE(sp.lambdas[1] == Approx(0.0).margin(1e-12));
  REQUIRE(sp.lambdas[2] == Approx(-kSqrt3).margin(1e-12));
  REQUIRE(sp.n == 11);
  REQUIRE(sp.s == 8);
  REQUIRE(sp.d == 14);
  REQUIRE(sp.a == Approx(kSqrt3).margin(1e-12));
  REQUIRE(sp.b == Approx(kSqrt3).margin(1e-12));
  REQUIRE(block_offsets(sp) == std::vector<int>{0, 4, 8, 12});
}

TEST_CASE("g=2 spectra are Clifford-torus cotangent pairs", "[spectra][g2]") {
  SECTION("(2,3,6) against the analytic angle") {
    // tan²θ₁ = q/p = 1/2, so θ₁ = arctan(1/√2) and λ = (√2, -1/√2).
    const Spectrum sp = minimal_spectrum({2, 3, 6});
    REQUIRE(sp.theta1 == Approx(0.6154797086703874).margin(1e-13));
    REQUIRE(sp.lambdas[0] == Approx(kSqrt2).margin(1e-12));
    REQUIRE(sp.lambdas[1] == Approx(-1.0 / kSqrt2).margin(1e-12));
    REQUIRE(sp.mults == std::vector<int>{3, 6});
    REQUIRE(sp.n == 8);
  }

  SECTION("λ₁ = √(p/q) and λ₂ = -√(q/p) across a sweep of multiplicities") {
    for (int m1 = 1; m1 <= 6; ++m1) {
      for (int m2 = m1; m2 <= 9; ++m2) {
        const Spectrum sp = minimal_spectrum({2, m1, m2});
        const double p = std::max(m1, m2), q = std::min(m1, m2);
        INFO("(2," << m1 << "," << m2 << ")");
        REQUIRE(sp.lambdas[0] == Approx(std::sqrt(p / q)).margin(1e-11));
        REQUIRE(sp.lambdas[1] == Approx(-std::sqrt(q / p)).margin(1e-11));
        REQUIRE(sp.a == Approx(std::sqrt(p / q)).margin(1e-11));
        REQUIRE(sp.b == Approx(std::sqrt(q / p)).margin(1e-11));
      }
    }
  }

  SECTION("(2,1,9) is the sharply curved torus λ = (3, -1/3)") {
    const Spectrum sp = minimal_spectrum({2, 1, 9});
    REQUIRE(sp.lambdas[0] == Approx(3.0).margin(1e-12));
    REQUIRE(sp.lambdas[1] == Approx(-1.0 / 3.0).margin(1e-12));
  }
}

TEST_CASE("g=4 spectra follow the closed-form minimal leaf", "[spectra][g4]") {
  SECTION("(4,4,11) frozen values") {
    const Spectrum sp = minimal_spectrum({4, 4, 11});
    REQUIRE(sp.theta1 == Approx(0.2713195511248264).margin(1e-13));
    REQUIRE(sp.lambdas[0] == Approx(3.5948040682814075).margin(1e-12));
    REQUIRE(sp.lambdas[1] == Approx(0.5647257270867573).margin(1e-12));
    REQUIRE(sp.lambdas[2] == Approx(-0.2781792779260084).margin(1e-12));
    REQUIRE(sp.lambdas[3] == Approx(-1.7707711053978112).margin(1e-12));
    REQUIRE(sp.mults == std::vector<int>{4, 11, 4, 11});
    REQUIRE(sp.n == 29);
    REQUIRE(sp.s == 15);
    REQUIRE(sp.d == 32);
    // a² = (1+c)/(1-c) with c = cos 2θ₁ = √(11/15); equals (13+√165)/2.
    REQUIRE(sp.a * sp.a == Approx(0.5 * (13.0 + std::sqrt(165.0))).margin(1e-11));
    REQUIRE(sp.b == Approx((sp.a + 1.0) / (sp.a - 1.0)).margin(1e-12));
    REQUIRE(block_offsets(sp) == std::vector<int>{0, 4, 15, 19, 30});
  }

  SECTION("(4,4,5) frozen values") {
    const Spectrum sp = minimal_spectrum({4, 4, 5});
    REQUIRE(sp.theta1 == Approx(0.36486382811348317).margin(1e-13));
    REQUIRE(sp.a == Approx(2.618033988749895).margin(1e-12));
    REQUIRE(sp.b == Approx(kSqrt5).margin(1e-12));
    REQUIRE(sp.a * sp.a == Approx(0.5 * (7.0 + 3.0 * kSqrt5)).margin(1e-11));
  }

  SECTION("relabeling (m1,m2) -> (m2,m1) yields the identical spectrum") {
    const Spectrum lhs = minimal_spectrum({4, 4, 11});
    const Spectrum rhs = minimal_spectrum({4, 11, 4});
    REQUIRE(lhs.theta1 == rhs.theta1);
    REQUIRE(lhs.lambdas == rhs.lambdas);
    REQUIRE(lhs.mults == rhs.mults);
    REQUIRE(lhs.n == rhs.n);
  }

  SECTION("a ≥ 1+√2 with equality exactly at equal multiplicities") {
    const double floor = 1.0 + kSqrt2;
    for (int m1 = 1; m1 <= 7; ++m1) {
      for (int m2 = m1; m2 <= 9; ++m2) {
        const Spectrum sp = minimal_spectrum({4, m1, m2});
        INFO("(4," << m1 << "," << m2 << ")");
        REQUIRE(sp.a >= floor - 1e-12);
        if (m1 == m2) {
          REQUIRE(sp.a == Approx(floor).margin(1e-12));
          REQUIRE(sp.b == Approx(sp.a).margin(1e-12));
        } else {
          REQUIRE(sp.a > floor + 1e-6);
        }
      }
    }
  }
}

TEST_CASE("g=6 spectra take the fixed angle π/12", "[spectra][g6]") {
  const Spectrum sp = minimal_spectrum({6, 2, 2});
  REQUIRE(sp.theta1 == Approx(kPi / 12.0).margin(1e-13));
  REQUIRE(sp.lambdas[0] == Approx(2.0 + kSqrt3).margin(1e-12));
  REQUIRE(sp.lambdas[5] == Approx(-(2.0 + kSqrt3)).margin(1e-12));
  REQUIRE(sp.n == 11);
  REQUIRE(sp.d == 14);
  REQUIRE(sp.mults == std::vector<int>{2, 2, 2, 2, 2, 2});
}

TEST_CASE("bisection recovers analytically known angles", "[spectra][bisection]") {
  // Equal multiplicities put the minimal leaf at the symmetric angle π/(2g).
  REQUIRE(isoparametric_angle_bisection(3, {2, 2, 2}) == Approx(kPi / 6.0).margin(1e-13));
  REQUIRE(isoparametric_angle_bisection(2, {5, 5}) == Approx(kPi / 4.0).margin(1e-13));
  REQUIRE(isoparametric_angle_bisection(6, {1, 1, 1, 1, 1, 1}) ==
          Approx(kPi / 12.0).margin(1e-13));
}

TEST_CASE("every admissible family is numerically minimal", "[spectra][minimality]") {
  for (int g : {1, 2, 3, 4, 6}) {
    for (int m1 = 1; m1 <= 13; ++m1) {
      for (int m2 = m1; m2 <= 13; ++m2) {
        if (!validate_family(g, m1, m2).ok) continue;
        const Spectrum sp = minimal_spectrum({g, m1, m2});
        INFO("(" << g << "," << m1 << "," << m2 << ")");
        REQUIRE(minimality_residual(sp) < 1e-10);
        REQUIRE(sp.theta1 > 0.0);
        REQUIRE(sp.theta1 < kPi / g);
        // λ strictly decreasing, and a/b match their definitions.
        double amax = 0.0;
        for (std::size_t i = 0; i + 1 < sp.lambdas.size(); ++i) {
          REQUIRE(sp.lambdas[i] > sp.lambdas[i + 1]);
        }
        for (double l : sp.lambdas) amax = std::max(amax, std::abs(l));
        REQUIRE(sp.a == amax);
        REQUIRE(sp.b == -sp.lambdas.back());
      }
    }
  }
}
