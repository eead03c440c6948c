#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "gen.hpp"
#include "odl/core.hpp"
#include "odl/error.hpp"
#include "odl/estimate.hpp"
#include "odl/forces.hpp"
#include "odl/models.hpp"

using namespace odl::models;
using odl::Errc;
using odl::MessageBundle;

namespace {

MessageBundle bundle_of(std::vector<double> values) {
  MessageBundle b;
  for (std::size_t j = 0; j < values.size(); ++j) b.senders.push_back(j + 1);
  b.values = std::move(values);
  return b;
}

std::vector<double> ranks(const std::vector<double>& xs) {
  std::vector<std::size_t> order(xs.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](auto a, auto b) { return xs[a] < xs[b]; });
  std::vector<double> r(xs.size());
  for (std::size_t k = 0; k < order.size(); ++k) r[order[k]] = static_cast<double>(k);
  return r;
}

double spearman(const std::vector<double>& xs, const std::vector<double>& ys) {
  return odl::estimate::correlation(ranks(xs), ranks(ys));
}

}  // namespace

TEST_CASE("degroot_update") {
  const std::vector<double> w{0.6, 0.4};
  CHECK(std::abs(degroot_update(0.0, bundle_of({1.0, -0.5}), 0.5, w) - 0.2) < 1e-12);
  CHECK(degroot_update(0.3, bundle_of({0.3, 0.3}), 0.5, w) == 0.0);
  CHECK_ERRC(degroot_update(0.0, bundle_of({1.0, -0.5}), 0.5, std::vector<double>{1.0}),
             Errc::WeightMismatch);
  CHECK_ERRC(degroot_update(0.0, bundle_of({1.0, -0.5}), 0.5, std::vector<double>{0.5, 0.4}),
             Errc::WeightMismatch);
}

TEST_CASE("degroot difference form equals the weighted-average form") {
  odl::Rng rng(200);
  for (int c = 0; c < 100; ++c) {
    const std::size_t k = 1 + rng.index(8);
    const double alpha = rng.uniform();
    const double a = gen::real(rng, -1, 1);
    const auto m = gen::reals(rng, k, -1, 1);
    const auto p = gen::simplex(rng, k);
    double avg = (1.0 - alpha) * a;
    for (std::size_t j = 0; j < k; ++j) avg += alpha * p[j] * m[j];
    REQUIRE(std::abs(degroot_update(a, bundle_of(m), alpha, p) - (avg - a)) < 1e-12);
  }
}

TEST_CASE("hunter_update") {
  CHECK(std::abs(hunter_update(bundle_of({0.5, -0.2}), 1.0) - 0.3) < 1e-12);
  CHECK(hunter_update(bundle_of({0.0, 0.0, 0.0}), 0.7) == 0.0);
  CHECK(hunter_update(bundle_of({0.42}), 1.0) == 0.42);
}

TEST_CASE("deffuant_bc_update") {
  CHECK(std::abs(deffuant_bc_update(0.2, bundle_of({0.6}), 0.5, 0.5) - 0.2) < 1e-12);
  CHECK(deffuant_bc_update(0.0, bundle_of({0.5}), 0.5, 0.5) == 0.0);
  CHECK(deffuant_bc_update(0.3, bundle_of({0.3}), 0.5, 0.5) == 0.0);
  CHECK_ERRC(deffuant_bc_update(0.0, bundle_of({0.1, 0.2}), 0.5, 0.5), Errc::MultipleSenders);
}

TEST_CASE("hk_update") {
  const double d = hk_update(0.0, bundle_of({0.2, 1.0}), 0.3);
  CHECK(std::abs(d - 0.1) < 1e-12);
  CHECK(std::abs((0.0 + d) - (0.0 + 0.2) / 2.0) < 1e-12);
  CHECK(hk_update(0.0, bundle_of({0.5, 1.0}), 0.3) == 0.0);
  CHECK(hk_update(0.4, bundle_of({0.4, 0.4}), 0.3) == 0.0);
}

TEST_CASE("ra_update") {
  const auto r = ra_update(0.0, 0.4, 0.2, 0.3, 0.5);
  CHECK(std::abs(r.attitude - 0.5 * (0.5 / 0.3 - 1.0) * 0.2) < 1e-9);
  CHECK(std::abs(r.attitude - 0.0667) < 1e-4);
  CHECK(ra_update(0.0, 0.1, 1.0, 0.1, 0.5).attitude == 0.0);
  CHECK(ra_update(0.3, 0.2, 0.3, 0.2, 0.5).attitude == 0.0);
  CHECK(ra_update(0.0, 0.4, 0.2, 0.3, 0.5, false).uncertainty == 0.0);
  CHECK_ERRC(ra_update(0.0, 0.4, 0.2, 0.0, 0.5), Errc::InvalidUncertainty);
}

TEST_CASE("sj_update") {
  CHECK(std::abs(sj_update(0.0, 0.9, 0.5, 0.3, 0.6) + 0.45) < 1e-12);
  CHECK(sj_update(0.0, 0.45, 0.5, 0.3, 0.6) == 0.0);
  CHECK(sj_update(0.2, 0.2, 0.5, 0.3, 0.6) == 0.0);
  CHECK_ERRC(sj_update(0.0, 0.1, 0.5, 0.6, 0.3), Errc::LatitudeOrder);
}

TEST_CASE("lorenz_update") {
  CHECK(std::abs(lorenz_update(0.0, 0.5, {1.0, 1.0, 0.5, 2.0, 1.0, 1.0}) - 0.25) < 1e-12);
  CHECK(lorenz_update(1.0, 0.2, {1.0, 1.0, 0.5, 2.0, 0.5, 1.0}) == 0.0);
  CHECK(lorenz_update(-1.0, 0.2, {1.0, 1.0, 0.5, 2.0, 0.5, 1.0}) == 0.0);
  CHECK(lorenz_update(0.3, 0.3, {1.0, 1.0, 0.5, 2.0, 1.0, 1.0}) == 0.0);
  CHECK_ERRC(lorenz_update(1.5, 0.2, {}), Errc::OutOfSpace);
}

TEST_CASE("madsen_bayes_update") {
  const auto b = madsen_bayes_update({0.0, 1.0}, 1.0, 2.0, 1.0);
  CHECK(std::abs(b.mu - 0.5) < 1e-12);
  CHECK(std::abs(b.sigma * b.sigma - 0.5) < 1e-12);
  const auto same = madsen_bayes_update({0.4, 0.8}, 0.4, 2.0, 1.0);
  CHECK(std::abs(same.mu - 0.4) < 1e-15);
  CHECK(same.sigma < 0.8);
  const auto pruned = madsen_bayes_update({0.0, 0.1}, 1.0, 2.0, 1.0);
  CHECK(pruned.mu == 0.0);
  CHECK(pruned.sigma == 0.1);
  CHECK_ERRC(madsen_bayes_update({0.0, 0.0}, 1.0, 2.0, 1.0), Errc::NonPositiveVariance);
  CHECK_ERRC(madsen_bayes_update({0.0, 1.0}, 1.0, 2.0, 0.0), Errc::NonPositiveVariance);
}

TEST_CASE("baumann_step") {
  const std::vector<std::vector<std::size_t>> none(3);
  const std::vector<double> zeros{0.0, 0.0, 0.0};
  CHECK(baumann_step(zeros, {{1, 2}, {0}, {0, 1}}, 1.0, 3.0, 0.01) == zeros);

  std::vector<double> a{1.0};
  for (int k = 0; k < 100; ++k) a = baumann_step(a, {{}}, 1.0, 3.0, 0.01);
  CHECK(std::abs(a[0] - std::exp(-1.0)) < 5e-3);

  std::vector<double> b{1.0};
  for (int k = 0; k < 100; ++k) b = baumann_step(b, {{}}, 1.0, 3.0, 0.01, odl::Integrator::Rk4);
  CHECK(std::abs(b[0] - std::exp(-1.0)) < 1e-6);

  // One Euler step of size dt gives dt * da/dt.
  const double dt = 1e-3;
  const auto next = baumann_step(std::vector<double>{0.0, 10.0}, {{1}, {}}, 1.0, 1.0, dt);
  CHECK(std::abs(next[0] / dt - std::tanh(10.0)) < 1e-12);
  CHECK(std::abs(next[0] / dt - 1.0) < 1e-6);
}

TEST_CASE("becker17_alpha_assignment") {
  odl::Rng rng(300);
  std::vector<double> errors(40);
  for (auto& e : errors) e = std::abs(rng.normal());

  const auto up = becker17_alpha_assignment(errors, 1.0, rng);
  CHECK(spearman(up, errors) == doctest::Approx(1.0).epsilon(1e-12));
  const auto down = becker17_alpha_assignment(errors, -1.0, rng);
  CHECK(spearman(down, errors) == doctest::Approx(-1.0).epsilon(1e-12));
  for (double a : up) {
    CHECK(a >= 0.0);
    CHECK(a <= 1.0);
  }

  int near_zero = 0;
  for (int s = 0; s < 100; ++s) {
    odl::Rng r(1000 + s);
    std::vector<double> err(40);
    for (auto& e : err) e = std::abs(r.normal());
    const auto alphas = becker17_alpha_assignment(err, 0.0, r);
    near_zero += std::abs(odl::estimate::correlation(alphas, err)) < 0.1 ? 1 : 0;
  }
  CHECK(near_zero == 100);

  CHECK_ERRC(becker17_alpha_assignment(std::vector<double>{1.0, 1.0, 1.0}, 0.5, rng),
             Errc::DegenerateErrors);
}

TEST_CASE("becker17 correlation lands near the target") {
  for (double target : {-0.8, -0.4, 0.4, 0.8}) {
    double sum = 0.0;
    for (int s = 0; s < 100; ++s) {
      odl::Rng r(5000 + s);
      std::vector<double> err(40);
      for (auto& e : err) e = std::abs(r.normal());
      sum += odl::estimate::correlation(becker17_alpha_assignment(err, target, r), err);
    }
    CHECK(std::abs(sum / 100 - target) < 0.1);
  }
}

TEST_CASE("becker19_alpha") {
  CHECK(becker19_alpha(0.0, 1, 0.0) == 0.5);
  CHECK(std::abs(becker19_alpha(2.0, 1, 0.0) - 0.8807970779778823) < 1e-12);
  CHECK(std::abs(becker19_alpha(2.0, -1, 0.0) - 0.11920292202211755) < 1e-12);
  CHECK(std::abs(becker19_alpha(2.0, 1, 0.0) + becker19_alpha(2.0, -1, 0.0) - 1.0) < 1e-15);
}

TEST_CASE("becker_averaged_update") {
  CHECK(becker_averaged_update(0.0, 1.0, 0.5) == 0.5);
  CHECK(becker_averaged_update(0.3, 1.0, 0.0) == 0.0);
  CHECK(becker_averaged_update(0.3, 1.0, 1.0) == 1.0 - 0.3);
  CHECK_ERRC(becker_averaged_update(0.0, bundle_of({1.0}), 0.5), Errc::IndividualBundle);
  const std::vector<double> att{0.0, 1.0, 2.0};
  const std::size_t senders[] = {1, 2};
  CHECK(becker_averaged_update(0.0, odl::averaged_bundle(att, 0, senders), 0.5) == 0.75);
}

TEST_CASE("hew weights and update") {
  CHECK(hew_weight(3.0, 5.0, 10.0) == 1.0);
  CHECK(hew_weight(5.0, 5.0, 10.0) == 1.0);
  CHECK(std::abs(hew_weight(15.0, 5.0, 10.0) - 0.5) < 1e-12);
  const auto r = hew_update(150.0, 135.0, 165.0, 5.0, 10.0);
  CHECK(r.attitude == doctest::Approx(150.0));
  CHECK(std::abs(odl::estimate::estimate_hew_weight(150.0, 135.0, 165.0) - 0.5) < 1e-12);
  CHECK_ERRC(hew_update(0.0, bundle_of({1.0}), 5.0, 10.0), Errc::SenderCountNotTwo);
}

TEST_CASE("property: deffuant with unbounded confidence is a one-sender degroot") {
  odl::Rng rng(400);
  const double w[] = {1.0};
  for (std::size_t c = 0; c < gen::kCases; ++c) {
    const double a = gen::real(rng, -10, 10);
    const double m = gen::real(rng, -10, 10);
    const double alpha = rng.uniform();
    const auto b = bundle_of({m});
    REQUIRE(std::abs(deffuant_bc_update(a, b, alpha, 1e300) - degroot_update(a, b, alpha, w)) <
            1e-12);
  }
}

TEST_CASE("property: social judgement without rejection is deffuant") {
  odl::Rng rng(401);
  for (std::size_t c = 0; c < gen::kCases; ++c) {
    const double a = gen::real(rng, -1, 1);
    const double m = gen::real(rng, -1, 1);
    const double alpha = rng.uniform();
    const double u = gen::real(rng, 0.01, 1.5);
    REQUIRE(sj_update(a, m, alpha, u, 1e300) == deffuant_bc_update(a, bundle_of({m}), alpha, u));
  }
}

TEST_CASE("property: lorenz matches the force composition") {
  odl::Rng rng(402);
  using namespace odl::forces;
  for (std::size_t c = 0; c < gen::kCases; ++c) {
    const double bound = gen::real(rng, 0.5, 3.0);
    const double a = gen::real(rng, -bound, bound);
    const double m = gen::real(rng, -bound, bound);
    LorenzParams p{rng.uniform(), rng.uniform(), gen::real(rng, 0.05, 2), gen::real(rng, 0.5, 5),
                   rng.uniform(), bound};
    const double sim = similarity(a, m, RationalPower{p.lambda, p.k});
    const double pol = polarity(a, bound);
    const double want = combine_lorenz(assimilation(a, m), reinforcement(m), sim, pol,
                                       p.credibility, p.rho, p.alpha);
    REQUIRE(std::abs(lorenz_update(a, m, p) - want) < 1e-12);
    // pol -> 1 for a huge bound.
    p.bound = 1e12;
    p.rho = 1.0;
    REQUIRE(std::abs(lorenz_update(a, m, p) - p.alpha * p.credibility * sim * (m - a)) < 1e-12);
  }
}

TEST_CASE("property: hk equals the mean of self and in-bound senders") {
  odl::Rng rng(403);
  for (std::size_t c = 0; c < gen::kCases; ++c) {
    const std::size_t k = 1 + rng.index(20);
    const double a = gen::real(rng, -1, 1);
    const auto m = gen::reals(rng, k, -1, 1);
    const double eps = gen::real(rng, 0.01, 1.0);
    double sum = a;
    std::size_t count = 1;
    for (double x : m) {
      if (std::abs(x - a) < eps) {
        sum += x;
        ++count;
      }
    }
    REQUIRE(std::abs(a + hk_update(a, bundle_of(m), eps) - sum / count) < 1e-12);
  }
}

TEST_CASE("property: madsen never increases variance; pruning is exact") {
  odl::Rng rng(404);
  for (std::size_t c = 0; c < gen::kCases; ++c) {
    const Belief prior{gen::real(rng, -2, 2), gen::real(rng, 0.01, 2)};
    const double m = gen::real(rng, -4, 4);
    const double beta = gen::real(rng, 0.1, 4);
    const double obs = gen::real(rng, 0.01, 3);
    const auto post = madsen_bayes_update(prior, m, beta, obs);
    if (std::abs(m - prior.mu) > beta * prior.sigma) {
      REQUIRE(post.mu == prior.mu);
      REQUIRE(post.sigma == prior.sigma);
    } else {
      REQUIRE(post.sigma < prior.sigma);
    }
  }
}

TEST_CASE("property: hew update stays between the two messages") {
  odl::Rng rng(405);
  for (std::size_t c = 0; c < gen::kCases; ++c) {
    const double a = gen::real(rng, 100, 200);
    const double mm = gen::real(rng, 100, 200);
    const double mn = gen::real(rng, 100, 200);
    const auto r = hew_update(a, mm, mn, gen::real(rng, 0, 20), gen::real(rng, 0.1, 30));
    if (r.both_weights_zero) {
      REQUIRE(r.attitude == a);
      continue;
    }
    REQUIRE(r.attitude >= std::min(mm, mn) - 1e-9);
    REQUIRE(r.attitude <= std::max(mm, mn) + 1e-9);
  }
}
