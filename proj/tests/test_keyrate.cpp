#include <doctest.h>

#include <cmath>
#include <random>

#include "cvqr/errors.hpp"
#include "cvqr/keyrate/rate.hpp"

using namespace cvqr;

TEST_CASE("fiber_tau examples") {
  CHECK(fiber_tau(0.0) == 1.0);
  CHECK(fiber_tau(50.0) == doctest::Approx(0.1).epsilon(1e-12));
  CHECK(fiber_tau(93.75) == doctest::Approx(0.013335).epsilon(1e-4));
  CHECK(FiberModel{0.2, 100.0}.tau() == doctest::Approx(0.01).epsilon(1e-12));
  CHECK_THROWS_AS(fiber_tau(-1.0), Error);
  CHECK_THROWS_AS(fiber_tau(10.0, 0.0), Error);
}

TEST_CASE("bosonic_entropy examples") {
  CHECK(bosonic_entropy(1.0) == 0.0);
  CHECK(bosonic_entropy(3.0) == doctest::Approx(2.0).epsilon(1e-12));
  double last = 0.0;
  for (double nu = 1.1; nu < 50.0; nu *= 1.3) {
    CHECK(bosonic_entropy(nu) > last);
    last = bosonic_entropy(nu);
  }
}

TEST_CASE("key_rate_from_cm examples") {
  const auto pure = key_rate_from_cm(CovarianceMatrix::lossy_epr(0.6, 1.0));
  CHECK(pure.raw_rate == doctest::Approx(std::log2(2.125)).epsilon(1e-10));
  CHECK(pure.holevo == doctest::Approx(0.0).epsilon(1e-10));

  const auto vac = key_rate_from_cm(CovarianceMatrix::vacuum());
  CHECK(vac.raw_rate == doctest::Approx(0.0));
  CHECK(vac.insecure());

  const auto noisy = key_rate_from_cm(CovarianceMatrix::lossy_epr(0.3, 0.3));
  CHECK(noisy.raw_rate < 0.0);
  CHECK(noisy.insecure());

  CovarianceMatrix bad;
  bad.gamma *= 0.5;
  CHECK_THROWS_AS(key_rate_from_cm(bad), Error);
}

TEST_CASE("symmetric closed form agrees with the general path") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(0.01, 0.99);
  for (int i = 0; i < 100; ++i) {
    const auto cm = CovarianceMatrix::lossy_epr(u(rng), u(rng));
    const double c = cm.gamma(0, 0), s = cm.gamma(0, 2);
    const auto general = key_rate_from_cm(cm);
    const auto closed = key_rate_symmetric(c, s);
    CHECK(std::abs(general.raw_rate - closed.raw_rate) <= 1e-10 * std::max(1.0, std::abs(general.raw_rate)));
  }
}

TEST_CASE("rate decreases with loss") {
  double last = INFINITY;
  for (double tau = 1.0; tau > 0.05; tau -= 0.05) {
    const double r = key_rate_from_cm(CovarianceMatrix::one_sided_loss(0.6, tau)).raw_rate;
    CHECK(r < last);
    last = r;
  }
}

TEST_CASE("direct transmission") {
  CHECK(direct_rate_at(0.6, 0.0) == doctest::Approx(std::log2(2.125)).epsilon(1e-10));
  for (double length : {10.0, 50.0, 120.0}) {
    const double via_cm = key_rate_from_cm(CovarianceMatrix::one_sided_loss(0.6, fiber_tau(length))).raw_rate;
    CHECK(direct_rate_at(0.6, length) == doctest::Approx(via_cm).epsilon(1e-9));
  }
  for (double length : {200.0, 300.0, 400.0, 1000.0}) {
    const double ratio = direct_transmission_rate(2 * length).rate / direct_transmission_rate(length).rate;
    CHECK(std::abs(ratio / fiber_tau(length) - 1.0) < 0.1);
  }
  const double grid[] = {0.3};
  const auto one = direct_transmission_rate(100.0, 0.2, grid);
  CHECK(one.lambda == 0.3);
  CHECK(direct_transmission_rate(1e6).rate >= 0.0);
  CHECK(direct_transmission_rate(100.0).rate / direct_transmission_rate(200.0).rate ==
        doctest::Approx(1.0 / fiber_tau(100.0)).epsilon(0.1));
}

TEST_CASE("repeater_rate examples") {
  const auto r = repeater_rate(0.14, 6.1e12);
  CHECK(r.normalized_by_resources == doctest::Approx(2.3e-14).epsilon(0.01));
  CHECK(r.n_qr == 6.1e12);
  CHECK(0.27 / 2.2e-15 == doctest::Approx(1.2e14).epsilon(0.03));
  CHECK_THROWS_AS(repeater_rate(0.1, 0.5), Error);
}
