#include <doctest.h>

#include <cmath>

#include "gen.hpp"
#include "odl/error.hpp"
#include "odl/forces.hpp"

using namespace odl::forces;

TEST_CASE("assimilation") {
  CHECK(assimilation(0.0, 1.0) == 1.0);
  CHECK(assimilation(0.3, 0.3) == 0.0);
  CHECK(assimilation(1.0, -0.5) == doctest::Approx(-1.5).epsilon(1e-12));
}

TEST_CASE("reinforcement") {
  CHECK(reinforcement(0.7) == 0.7);
  CHECK(reinforcement(0.0, Tanh{1.0}) == 0.0);
  CHECK(std::abs(reinforcement(10.0, Tanh{1.0}) - 1.0) < 1e-6);
  CHECK(std::abs(reinforcement(10.0, Tanh{1.0}) - std::tanh(10.0)) < 1e-12);
}

TEST_CASE("similarity") {
  CHECK(similarity(0.2, 0.6, Step{0.5}) == 1.0);
  CHECK(similarity(0.0, 0.5, Step{0.5}) == 0.0);  // strict
  CHECK(similarity(0.0, 0.0, RationalPower{0.5, 2.0}) == 1.0);
  CHECK(segment_overlap(0.0, 0.4, 0.2, 0.3) == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(std::abs(similarity(0.0, 0.2, RelativeAgreement{0.4, 0.3}) - (0.5 / 0.3 - 1.0)) < 1e-9);
  CHECK(similarity(0.0, 5.0, RelativeAgreement{0.4, 0.3}) == 0.0);
  CHECK_THROWS_AS(similarity(0.0, 0.2, RelativeAgreement{0.4, 0.0}), odl::Error);
}

TEST_CASE("repulsion") {
  CHECK(repulsion(0.0, 0.9, 0.6) == doctest::Approx(-0.9).epsilon(1e-12));
  CHECK(repulsion(0.0, 0.3, 0.6) == 0.0);
  CHECK(repulsion(0.5, -0.5, 0.8) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("polarity") {
  CHECK(polarity(0.0, 1.0) == 1.0);
  CHECK(polarity(1.0, 1.0) == 0.0);
  CHECK(polarity(-1.0, 1.0) == 0.0);
  CHECK(std::abs(polarity(0.5, 1.0) - 0.75) < 1e-12);
  try {
    polarity(1.5, 1.0);
    FAIL("expected OutOfSpace");
  } catch (const odl::Error& e) {
    CHECK(e.code() == odl::Errc::OutOfSpace);
  }
}

TEST_CASE("combine_lorenz") {
  const double sim = similarity(0.0, 0.5, RationalPower{0.5, 2.0});
  CHECK(std::abs(sim - 0.5) < 1e-12);
  CHECK(std::abs(combine_lorenz(assimilation(0.0, 0.5), 0.5, sim, 1.0, 1.0, 1.0, 1.0) - 0.25) <
        1e-12);
  CHECK(combine_lorenz(0.4, 0.3, 0.9, 0.0, 1.0, 0.5, 1.0) == 0.0);
  CHECK(combine_lorenz(0.4, 0.7, 0.9, 0.8, 1.0, 0.0, 1.0) ==
        combine_lorenz(-3.0, 0.7, 0.9, 0.8, 1.0, 0.0, 1.0));
}

TEST_CASE("property: assimilation sign and monotonicity") {
  odl::Rng rng(100);
  for (std::size_t c = 0; c < gen::kCases; ++c) {
    const double a = gen::real(rng, -5, 5);
    const double m = gen::real(rng, -5, 5);
    const double m2 = a + (m - a) * gen::real(rng, 1.0, 3.0);
    if (m != a) REQUIRE((m - a) * assimilation(a, m) > 0.0);
    REQUIRE(std::abs(assimilation(a, m2)) >= std::abs(assimilation(a, m)));
  }
}

TEST_CASE("property: reinforcement sign and monotonicity") {
  odl::Rng rng(101);
  for (std::size_t c = 0; c < gen::kCases; ++c) {
    const double m = gen::real(rng, -5, 5);
    const double m2 = m + gen::real(rng, 0, 2);
    const ReinforcementKind kinds[] = {Linear{}, Tanh{gen::real(rng, 0.1, 5.0)}};
    for (const auto& k : kinds) {
      const double r = reinforcement(m, k);
      REQUIRE(reinforcement(m2, k) >= r);
      REQUIRE((m > 0) == (r > 0));
      REQUIRE((m < 0) == (r < 0));
    }
  }
}

TEST_CASE("property: similarity decays with distance and is non-negative") {
  odl::Rng rng(102);
  for (std::size_t c = 0; c < gen::kCases; ++c) {
    const double a = gen::real(rng, -2, 2);
    const double m = gen::real(rng, -2, 2);
    const double m2 = a + (m - a) * gen::real(rng, 1.0, 2.0);
    const SimilarityKind kinds[] = {
        Step{gen::real(rng, 0.01, 2.0)},
        RationalPower{gen::real(rng, 0.05, 2.0), gen::real(rng, 0.5, 6.0)},
        RelativeAgreement{gen::real(rng, 0.05, 1.0), gen::real(rng, 0.05, 1.0)},
    };
    for (const auto& k : kinds) {
      const double s = similarity(a, m, k);
      REQUIRE(s >= 0.0);
      // Nested relative-agreement segments give a flat overlap up to roundoff.
      REQUIRE(similarity(a, m2, k) <= s + 1e-12);
    }
  }
}

TEST_CASE("property: repulsion opposes the message beyond the latitude") {
  odl::Rng rng(103);
  for (std::size_t c = 0; c < gen::kCases; ++c) {
    const double a = gen::real(rng, -2, 2);
    const double m = gen::real(rng, -2, 2);
    const double t = gen::real(rng, 0.01, 2.0);
    const double r = repulsion(a, m, t);
    if (std::abs(m - a) > t) {
      REQUIRE((m - a) * r < 0.0);
      REQUIRE(std::abs(m - (a + r)) >= std::abs(m - a));
    } else {
      REQUIRE(r == 0.0);
    }
  }
}

TEST_CASE("property: polarity lies in [0,1] and is even") {
  odl::Rng rng(104);
  for (std::size_t c = 0; c < gen::kCases; ++c) {
    const double bound = gen::real(rng, 0.1, 10);
    const double a = gen::real(rng, -bound, bound);
    const double p = polarity(a, bound);
    REQUIRE(p >= 0.0);
    REQUIRE(p <= 1.0);
    REQUIRE(p == polarity(-a, bound));
  }
}
