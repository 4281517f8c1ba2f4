#include <doctest.h>

#include <cmath>

#include "ulf/laws.hpp"

using namespace ulf;

TEST_CASE("total variation closed form") {
  CHECK(tv_formula(2, 2, 1) == Rational(1, 6));
  CHECK(tv_formula(2, 6, 3) == Rational(1, 72));
  CHECK(tv_formula(2, 1, 1) == Rational(1, 2));

  // Full prefix: the formula collapses to q^-n.
  for (std::uint32_t q : {2u, 3u, 5u})
    for (std::uint32_t n = 1; n <= 10; ++n)
      CHECK(tv_formula(q, n, n) == finite_freedman_bound(q, n));

  // Monotone decrease to zero as the ambient dimension grows.
  Rational prev = tv_formula(2, 3, 3);
  for (std::uint32_t n = 4; n <= 20; ++n) {
    const Rational cur = tv_formula(2, n, 3);
    CHECK(cur < prev);
    prev = cur;
  }
  CHECK(to_double(prev) < 1e-5);

  CHECK_THROWS_AS(tv_formula(2, 3, 4), DomainError);
  CHECK_THROWS_AS(tv_formula(2, 3, 0), DomainError);
  CHECK_THROWS_AS(tv_formula(1, 3, 1), DomainError);
}

TEST_CASE("counting oracle equals the closed form exactly") {
  for (std::uint32_t q : {2u, 3u, 5u})
    for (std::uint32_t n = 1; n <= 12; ++n)
      for (std::uint32_t k = 1; k <= n; ++k)
        CHECK(tv_formula(q, n, k) == tv_oracle(q, n, k));
  CHECK(tv_oracle(2, 1, 1) == Rational(1, 2));
}

TEST_CASE("conditional zero-count identity from the proof reduction") {
  // P(Y=0 | X!=0) admits two algebraic forms; they must agree.
  for (std::uint32_t q : {2u, 3u})
    for (std::uint32_t n = 2; n <= 8; ++n)
      for (std::uint32_t k = 1; k < n; ++k) {
        const Rational qk = Rational(1) / Rational(std::int64_t(std::pow(q, k)));
        const Rational qn = Rational(1) / Rational(std::int64_t(std::pow(q, n)));
        const Rational qnk =
            Rational(1) / Rational(std::int64_t(std::pow(q, n - k)));
        const Rational lhs = qk * (1 - qnk) / (1 - qn);
        const Rational rhs = (qk - qn) / (1 - qn);
        CHECK(lhs == rhs);
      }
}

TEST_CASE("invertible-matrix density") {
  CHECK(gl_density(2, 1) == Rational(1, 2));
  CHECK(gl_density(2, 2) == Rational(3, 8));
  CHECK(gl_density_enumerated(2, 2) == gl_density(2, 2));
  CHECK(gl_density_enumerated(2, 3) == gl_density(2, 3));
  CHECK(gl_density_enumerated(3, 2) == gl_density(3, 2));
  CHECK_THROWS_AS(gl_density_enumerated(5, 4), DomainError);
}

TEST_CASE("sphere mass") {
  CHECK(sphere_mass(2, 1) == Rational(1, 2));
  CHECK(sphere_mass(3, 2) == Rational(8, 9));
  CHECK(to_double(sphere_mass(2, 40)) == doctest::Approx(1.0));
}

TEST_CASE("mixture distance bound") {
  CHECK(finite_freedman_bound(2, 3) == Rational(1, 8));
  CHECK(to_double(finite_freedman_bound(2, 30)) < 1e-9);
  CHECK(freedman_bound_holds(0.13, 2, 3, 0.002));
  CHECK(!freedman_bound_holds(0.20, 2, 3, 0.002));
}

TEST_CASE("profile from a mixing law") {
  // Point mass at exponent 0 (tau = 1): phi is the indicator of radius <= 1,
  // i.e. 1 on grid m >= 0 and 0 below.
  {
    const RadialProfile phi = phi_from_pi(ScaleLaw::point_mass(0), 2, -3, 3);
    for (std::int64_t m = -3; m <= 3; ++m)
      CHECK(phi.at_norm_exp(m) == doctest::Approx(m >= 0 ? 1.0 : 0.0));
  }
  // The zero atom accepts every radius.
  {
    const RadialProfile phi =
        phi_from_pi(ScaleLaw::point_mass_zero(), 2, -2, 2);
    for (double v : phi.values()) CHECK(v == doctest::Approx(1.0));
  }
  // Two atoms: radius 1 -> 1, radius 2 -> 1/2, radius 4 -> 0 for q = 2.
  {
    const ScaleLaw pi({{0, 0.5}, {1, 0.5}}, 0.0);
    const RadialProfile phi = phi_from_pi(pi, 2, -2, 2);
    CHECK(phi.at_norm_exp(0) == doctest::Approx(1.0));   // radius 1
    CHECK(phi.at_norm_exp(-1) == doctest::Approx(0.5));  // radius 2
    CHECK(phi.at_norm_exp(-2) == doctest::Approx(0.0));  // radius 4
    CHECK(phi.at_norm_exp(kInfExp) == doctest::Approx(1.0));  // phi(0)
  }
}

TEST_CASE("profile window extension conventions") {
  const ScaleLaw pi({{0, 1.0}}, 0.0);
  const RadialProfile phi = phi_from_pi(pi, 2, -1, 1);
  // Beyond the small-radius end the profile approaches its unit limit.
  CHECK(phi.at_norm_exp(5) == doctest::Approx(1.0));
  // Beyond the large-radius end it continues with its boundary value.
  CHECK(phi.at_norm_exp(-5) == doctest::Approx(phi.values().front()));
  CHECK(phi.exhibits_unit_limit());
}

TEST_CASE("mixing law from a profile") {
  // Differences recover the atoms; edge mass splits by the documented
  // convention.
  {
    const RadialProfile phi(2, 1, 2, {0.3, 0.6});
    auto result = pi_from_phi(phi);
    REQUIRE(std::holds_alternative<ScaleLaw>(result));
    const ScaleLaw& pi = std::get<ScaleLaw>(result);
    CHECK(pi.atoms().at(-2) == doctest::Approx(0.3));  // interior difference
    CHECK(pi.atoms().at(-3) == doctest::Approx(0.4));  // large-|tau| boundary
    CHECK(pi.zero_mass() == doctest::Approx(0.3));     // small-|tau| residual
  }
  // A profile increasing with the radius is rejected with a witness pair.
  {
    const RadialProfile phi(2, 0, 2, {0.9, 0.4, 1.0});
    auto result = pi_from_phi(phi);
    REQUIRE(std::holds_alternative<MonotonicityViolation>(result));
    const auto& v = std::get<MonotonicityViolation>(result);
    CHECK(v.grid_m_a == 0);
    CHECK(v.grid_m_b == 1);
    CHECK(v.value_a == doctest::Approx(0.9));
    CHECK(v.value_b == doctest::Approx(0.4));
  }
  // Negative values are rejected outright.
  {
    const RadialProfile phi(2, 0, 1, {-0.25, 1.0});
    auto result = pi_from_phi(phi);
    REQUIRE(std::holds_alternative<MonotonicityViolation>(result));
    CHECK(std::get<MonotonicityViolation>(result).reason == "negative value");
  }
}

TEST_CASE("profile-law roundtrip is the identity on the window") {
  const ScaleLaw pi({{-1, 0.2}, {0, 0.3}, {2, 0.4}}, 0.1);
  for (std::uint32_t q : {2u, 3u, 5u}) {
    const RadialProfile phi = phi_from_pi(pi, q, -4, 6);
    auto inverted = pi_from_phi(phi);
    REQUIRE(std::holds_alternative<ScaleLaw>(inverted));
    const RadialProfile back =
        phi_from_pi(std::get<ScaleLaw>(inverted), q, -4, 6);
    for (std::size_t i = 0; i < phi.values().size(); ++i)
      CHECK(std::abs(phi.values()[i] - back.values()[i]) <= 1e-12);
  }
}

TEST_CASE("profile validation") {
  CHECK_THROWS_AS(RadialProfile(2, 3, 1, {}), DomainError);
  CHECK_THROWS_AS(RadialProfile(2, 0, 1, {0.5}), DomainError);
  CHECK_THROWS_AS(RadialProfile(1, 0, 1, {0.5, 0.6}), DomainError);
  // A window too small to exhibit the unit limit is flagged, not rejected.
  const RadialProfile cramped(2, 0, 1, {0.2, 0.4});
  CHECK(!cramped.exhibits_unit_limit());
}
