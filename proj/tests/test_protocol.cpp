#include <doctest.h>

#include <cmath>

#include "cvqr/errors.hpp"
#include "cvqr/protocol/ops.hpp"
#include "support/checks.hpp"

using namespace cvqr;

namespace {

TwoModeState truncated_pair(double lambda, int cutoff) {
  TwoModeState s(cutoff);
  const double a[2] = {1.0, lambda};
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) s.at(i, i, j, j) = a[i] * a[j];
  s.normalize();
  return s;
}

}  // namespace

TEST_CASE("s_operator examples") {
  const Eigen::VectorXd s = s_operator(10);
  CHECK(std::abs(s(0)) == doctest::Approx(1.0 / std::sqrt(2.0)));
  CHECK(s(1) == doctest::Approx(0.0));
  CHECK(std::abs(s(3)) == doctest::Approx(0.5));
  CHECK(checks::sop_identity(5, 10).error <= 1e-12);
  CHECK_THROWS_AS(s_operator(1), Error);
}

TEST_CASE("d_gadget examples") {
  const double q = 0.7;
  const Eigen::MatrixXd v = d_projection(q, -q, 6);
  CHECK(v(0, 1) == 0.0);
  CHECK(v(1, 0) == 0.0);
  CHECK(v(0, 0) == doctest::Approx(-q * q / (2.0 * (1.0 + q * q))).epsilon(1e-12));
  const Eigen::MatrixXd z = d_projection(0.0, 0.3, 6);
  CHECK(z(0, 0) == doctest::Approx(0.0));
  CHECK(z(1, 1) == doctest::Approx(-0.25 / std::sqrt(1.09)).epsilon(1e-12));
  CHECK(checks::d_calibration_circuit(20, 6).error <= 1e-10);

  FockState cross(2, 3);
  cross(1, 1) = cross(1, 4) = cross(4, 1) = cross(4, 4) = 0.5;  // (|01> + |10>) / sqrt 2
  CHECK_THROWS_AS(d_gadget(cross, 0, 1, 0.5), Error);
}

TEST_CASE("pr_distill examples and identities") {
  TwoModeState vac(6);
  vac.at(0, 0, 0, 0) = 1.0;
  const double eta = 0.6;
  const auto out = pr_distill(vac, eta);
  CHECK(out.p_succ == doctest::Approx(std::pow(eta * eta, 2)).epsilon(1e-12));
  CHECK(std::abs(out.state.at(0, 0, 0, 0)) == doctest::Approx(1.0));
  CHECK(out.consumed == 1);
  CHECK(out.ancillas == 2);

  CHECK(checks::pr_epsilon_invariance(20, 8).error <= 1e-10);
  CHECK(checks::pr_lambda_scaling(20, 8).error <= 1e-10);
  CHECK_THROWS_AS(pr_distill(vac, 0.0), Error);
}

TEST_CASE("pr_distill on the first Table column initial state") {
  TwoModeState rho = make_lossy_epr(0.013, 0.013, 8);
  rho.normalize();
  const Tuning t = tune_pr_eta(rho, 0.95);
  CHECK(t.predicted.lambda_inf == doctest::Approx(0.95).epsilon(1e-6));
  const auto out = pr_distill(rho, t.value);
  const auto g = gauss_params(extract_f1(out.state));
  CHECK(g.tau_inf == doctest::Approx(0.99).epsilon(0.01));
  CHECK(out.p_succ > 6.5e-8 / 2);
  CHECK(out.p_succ < 6.5e-8 * 2);
}

TEST_CASE("purify_distill examples and identities") {
  CHECK(checks::purify_epsilon_squaring(20, 8).error <= 1e-9);
  CHECK(checks::purify_f1_laws(20, 8).error <= 1e-10);

  TwoModeState rho = make_lossy_epr(0.5, 0.9, 8);
  rho.normalize();
  const auto in = gauss_params(extract_f1(rho));
  const Tuning t = tune_purify_q(rho, in.lambda_inf);
  const auto out = purify_distill(rho, t.value);
  const auto g = gauss_params(extract_f1(out.state));
  CHECK(g.lambda_inf == doctest::Approx(in.lambda_inf).epsilon(1e-6));
  CHECK(g.tau_inf > in.tau_inf);
  CHECK(g.epsilon == doctest::Approx(in.epsilon * in.epsilon).epsilon(1e-9));
  CHECK(out.consumed == 2);
  CHECK(out.ancillas == 4);

  TwoModeState leaky = rho;
  leaky.at(1, 0, 0, 0) = leaky.at(0, 0, 1, 0) = 0.01;
  CHECK_THROWS_AS(purify_distill(leaky, 1.0), Error);
}

TEST_CASE("ng_swap examples and identities") {
  const double lambda = 0.6;
  const TwoModeState pair = truncated_pair(lambda, 4);
  const auto out = ng_swap(pair, pair, std::sqrt(lambda / 2.0));
  const auto& s = out.state;
  CHECK(std::abs(s.at(1, 1, 0, 0) / s.at(0, 0, 0, 0)) == doctest::Approx(lambda).epsilon(1e-12));
  CHECK(std::abs(s.at(1, 1, 1, 1) / s.at(0, 0, 0, 0)) == doctest::Approx(lambda * lambda).epsilon(1e-12));
  CHECK(out.leakage <= 1e-12);
  CHECK(out.consumed == 2);

  CHECK(checks::swap_f1_laws(20, 8).error <= 1e-10);
}

TEST_CASE("ng_swap output leaves no F1 leakage at cutoff 8") {
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const TwoModeState a = checks::random_f1_state(seed, 8);
    const TwoModeState b = checks::random_f1_state(seed + 100, 8);
    CHECK(ng_swap(a, b, 0.5).leakage <= 1e-8);
    CHECK(pr_distill(a, 0.5).leakage <= 1e-8);
    CHECK(gaussify_step(a).leakage <= 1e-8);
  }
}

TEST_CASE("gaussify converges to the predicted fixed point") {
  TwoModeState rho = make_lossy_epr(0.1, 0.4, 10);
  rho.normalize();
  rho = pr_distill(rho, tune_pr_eta(rho, 0.3).value).state;
  const auto target = cm_from_gauss(gauss_params(extract_f1(rho)));
  double err = 1.0;
  for (int i = 0; i < 8 && err > 1e-3; ++i) {
    rho = gaussify_step(rho).state;
    err = (second_moments(rho).gamma - target.gamma).cwiseAbs().maxCoeff();
  }
  CHECK(err <= 1e-3);

  const auto twice = gaussify(make_lossy_epr(0.3, 0.8, 6), 2);
  CHECK(twice.consumed == 4);
  CHECK(twice.p_succ > 0.0);
  CHECK(twice.p_succ < 1.0);
  CHECK_THROWS_AS(gaussify(twice.state, -1), Error);
}

TEST_CASE("gaussian_swap_cm examples") {
  const auto vac = gaussian_swap_cm(CovarianceMatrix::vacuum(), CovarianceMatrix::vacuum());
  CHECK(check_physical(vac));
  CHECK(vac.gamma.topRightCorner<2, 2>().cwiseAbs().maxCoeff() <= 1e-12);

  const double lambda = 0.5;
  const auto epr = CovarianceMatrix::lossy_epr(lambda, 1.0);
  const auto swapped = gaussian_swap_cm(epr, epr);
  CHECK((swapped.gamma - CovarianceMatrix::lossy_epr(lambda * lambda, 1.0).gamma).cwiseAbs().maxCoeff() <= 1e-10);

  const auto half = gaussian_swap_cm(epr, CovarianceMatrix::vacuum());
  CHECK(half.gamma.topRightCorner<2, 2>().cwiseAbs().maxCoeff() <= 1e-12);

  CovarianceMatrix bad;
  bad.gamma *= 0.5;
  CHECK_THROWS_AS(gaussian_swap_cm(bad, epr), Error);
}

TEST_CASE("swap threshold in the initial transmissivity") {
  auto feasible = [](double lambda, double tau) {
    TwoModeState rho = make_lossy_epr(lambda, tau, 8);
    rho.normalize();
    try {
      tune_swap_q(rho, rho, lambda);
      return true;
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::parameter_infeasible);
      return false;
    }
  };
  CHECK(feasible(0.7, 0.95));
  CHECK(!feasible(0.7, 0.5));
}
