#include "checks.hpp"

#include <Eigen/QR>
#include <algorithm>
#include <cmath>
#include <random>

#include "circuits.hpp"
#include "cvqr/errors.hpp"
#include "cvqr/fock/beam_splitter.hpp"
#include "cvqr/fock/operations.hpp"
#include "cvqr/protocol/ops.hpp"
#include "oracles.hpp"

namespace checks {
namespace {

using cvqr::cplx;
using cvqr::TwoModeState;

double uniform(std::mt19937_64& rng, double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng); }

double log_uniform(std::mt19937_64& rng, double lo, double hi) {
  return std::exp(uniform(rng, std::log(lo), std::log(hi)));
}

double rel(double got, double want) { return std::abs(got - want) / std::max(std::abs(want), 1e-300); }

double epsilon_of(const cvqr::F1Matrix& f) { return f.rho10_10 / f.rho11_00; }
double big_lambda_of(const cvqr::F1Matrix& f) { return f.rho11_00 / f.rho00_00; }

TwoModeState unnormalized(const cvqr::HeraldedOutcome& out) {
  TwoModeState s = out.state;
  s.scale(out.p_succ);
  return s;
}

double max_abs_diff(const cvqr::FockState& a, const cvqr::FockState& b) {
  double e = 0.0;
  for (std::size_t i = 0; i < a.data().size(); ++i) e = std::max(e, std::abs(a.data()[i] - b.data()[i]));
  return e;
}

double max_abs(const cvqr::FockState& a) {
  double e = 0.0;
  for (const auto& v : a.data()) e = std::max(e, std::abs(v));
  return e;
}

cvqr::FockState random_density(std::mt19937_64& rng, int modes, int cutoff) {
  cvqr::FockState s(modes, cutoff);
  const auto n = static_cast<Eigen::Index>(s.dim());
  std::normal_distribution<double> g;
  Eigen::MatrixXcd m(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) m(i, j) = cplx(g(rng), g(rng));
  const Eigen::MatrixXcd rho = m * m.adjoint();
  const double tr = rho.trace().real();
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) s(static_cast<std::size_t>(i), static_cast<std::size_t>(j)) = rho(i, j) / tr;
  return s;
}

}  // namespace

TwoModeState random_f1_state(std::uint64_t seed, int cutoff) {
  std::mt19937_64 rng(seed);
  const double lambda = uniform(rng, 0.05, 0.6);
  const double tau = uniform(rng, 0.3, 0.99);
  TwoModeState s = cvqr::make_lossy_epr(lambda, tau, cutoff);
  s.normalize();
  if (uniform(rng, 0.0, 1.0) < 0.5) s = cvqr::pr_distill(s, uniform(rng, 0.2, 0.68)).state;
  return s;
}

Worst pr_epsilon_invariance(int samples, int cutoff) {
  std::mt19937_64 rng(101);
  Worst w;
  for (int i = 0; i < samples; ++i) {
    const TwoModeState rho = random_f1_state(rng(), cutoff);
    const auto out = cvqr::pr_distill(rho, uniform(rng, 0.1, 0.99));
    w.update(rel(epsilon_of(cvqr::extract_f1(out.state)), epsilon_of(cvqr::extract_f1(rho))));
  }
  return w;
}

Worst pr_lambda_scaling(int samples, int cutoff) {
  std::mt19937_64 rng(102);
  Worst w;
  for (int i = 0; i < samples; ++i) {
    const TwoModeState rho = random_f1_state(rng(), cutoff);
    const double eta = uniform(rng, 0.1, 0.99);
    const double beta = cvqr::pr_beta(eta);
    const auto out = cvqr::pr_distill(rho, eta);
    w.update(rel(big_lambda_of(cvqr::extract_f1(out.state)), beta * beta * big_lambda_of(cvqr::extract_f1(rho))));
  }
  return w;
}

Worst purify_epsilon_squaring(int samples, int cutoff) {
  std::mt19937_64 rng(103);
  Worst w;
  for (int i = 0; i < samples; ++i) {
    const TwoModeState rho = random_f1_state(rng(), cutoff);
    const double eps = epsilon_of(cvqr::extract_f1(rho));
    const auto out = cvqr::purify_distill(rho, log_uniform(rng, 0.1, 10.0));
    w.update(rel(epsilon_of(cvqr::extract_f1(out.state)), eps * eps));
  }
  return w;
}

namespace {

Worst d_calibration(int samples, int cutoff, bool printed) {
  std::mt19937_64 rng(printed ? 104 : 105);
  Worst w;
  for (int i = 0; i < samples; ++i) {
    const double q = uniform(rng, -3.0, 3.0), qb = uniform(rng, -3.0, 3.0);
    const Eigen::MatrixXd v = cvqr::d_projection(q, qb, cutoff);
    const double norm = std::sqrt((1.0 + q * q) * (1.0 + qb * qb));
    Eigen::MatrixXd want = Eigen::MatrixXd::Zero(cutoff + 1, cutoff + 1);
    if (printed) {
      want(0, 0) = q * qb / (std::sqrt(2.0) * norm);
      want(1, 1) = -0.25 / (std::sqrt(2.0) * norm);
    } else {
      want(0, 0) = 0.5 * q * qb / norm;
      want(1, 1) = -0.25 / norm;
    }
    w.update((v - want).cwiseAbs().maxCoeff() / want.cwiseAbs().maxCoeff());
  }
  return w;
}

}  // namespace

Worst d_calibration_printed(int samples, int cutoff) { return d_calibration(samples, cutoff, true); }
Worst d_calibration_circuit(int samples, int cutoff) { return d_calibration(samples, cutoff, false); }

Worst sop_identity(int samples, int cutoff) {
  std::mt19937_64 rng(106);
  Worst w;
  const Eigen::VectorXd formula = oracle::sop_formula(cutoff);
  w.update((cvqr::s_operator(cutoff) - formula).cwiseAbs().maxCoeff());
  std::normal_distribution<double> g;
  for (int i = 0; i < samples; ++i) {
    Eigen::VectorXcd c(cutoff + 1);
    for (int n = 0; n <= cutoff; ++n) c(n) = cplx(g(rng), g(rng));
    c.normalize();
    const Eigen::VectorXcd sc = formula.cast<cplx>().cwiseProduct(c);
    const Eigen::MatrixXcd want = sc * sc.adjoint();
    w.update((oracle::s_circuit(c) - want).cwiseAbs().maxCoeff());
  }
  return w;
}

Worst swap_f1_laws(int samples, int cutoff) {
  std::mt19937_64 rng(107);
  Worst w;
  for (int i = 0; i < samples; ++i) {
    const TwoModeState rho = random_f1_state(rng(), cutoff);
    const double q = log_uniform(rng, 0.2, 3.0);
    const auto f = cvqr::extract_f1(rho);
    const auto g = cvqr::extract_f1(unnormalized(cvqr::ng_swap(rho, rho, q)));
    const double d = (1.0 + q * q) * (1.0 + q * q), q2 = q * q, q4 = q2 * q2;
    const double pref = 1.0 / (2.0 * d);
    double e = rel(g.rho00_00, pref * (q4 * f.rho00_00 * f.rho00_00 + 0.25 * f.rho10_10 * f.rho10_10));
    e = std::max(e, rel(g.rho01_01, pref * (q4 * f.rho01_01 * f.rho00_00 + 0.25 * f.rho01_01 * f.rho11_11)));
    e = std::max(e, rel(g.rho10_10, pref * (q4 * f.rho10_10 * f.rho00_00 + 0.25 * f.rho10_10 * f.rho11_11)));
    e = std::max(e, rel(g.rho11_00, q2 / (4.0 * d) * f.rho11_00 * f.rho11_00));
    e = std::max(e, rel(g.rho11_11, pref * (q4 * f.rho10_10 * f.rho01_01 + 0.25 * f.rho11_11 * f.rho11_11)));
    w.update(e);
  }
  return w;
}

Worst purify_f1_laws(int samples, int cutoff, bool printed_1111) {
  std::mt19937_64 rng(108);
  Worst w;
  for (int i = 0; i < samples; ++i) {
    const TwoModeState rho = random_f1_state(rng(), cutoff);
    const double q = log_uniform(rng, 0.1, 10.0);
    const auto f = cvqr::extract_f1(rho);
    const auto g = cvqr::extract_f1(unnormalized(cvqr::purify_distill(rho, q)));
    const double d = (1.0 + q * q) * (1.0 + q * q), q2 = q * q;
    double e = rel(g.rho00_00, 0.25 * q2 * q2 / d * f.rho00_00 * f.rho00_00);
    e = std::max(e, rel(g.rho10_10, q2 / (16.0 * d) * f.rho10_10 * f.rho10_10));
    e = std::max(e, rel(g.rho01_01, q2 / (16.0 * d) * f.rho01_01 * f.rho01_01));
    e = std::max(e, rel(g.rho11_00, q2 / (16.0 * d) * f.rho11_00 * f.rho11_00));
    const double c1111 = printed_1111 ? 1.0 / 1024.0 : 1.0 / 64.0;
    e = std::max(e, rel(g.rho11_11, c1111 / d * f.rho11_11 * f.rho11_11));
    w.update(e);
  }
  return w;
}

Worst oracle_pr(int samples, int cutoff) {
  std::mt19937_64 rng(109);
  Worst w;
  for (int i = 0; i < samples; ++i) {
    const TwoModeState rho = random_f1_state(rng(), cutoff);
    const double eta = uniform(rng, 0.1, 0.99);
    const TwoModeState circuit = oracle::pr_circuit(rho, eta);
    double e = max_abs_diff(circuit, unnormalized(cvqr::pr_distill(rho, eta)));
    // closed form: rho_{kl,ab} times alpha_{k,1|0} alpha_{l,1|0} alpha_{a,1|0} alpha_{b,1|0}
    std::vector<double> a(static_cast<std::size_t>(cutoff + 1));
    for (int n = 0; n <= cutoff; ++n) a[static_cast<std::size_t>(n)] = oracle::bs_image(n, 1, eta * eta)[{n, 1}];
    TwoModeState closed(cutoff);
    for (int k = 0; k <= cutoff; ++k)
      for (int l = 0; l <= cutoff; ++l)
        for (int x = 0; x <= cutoff; ++x)
          for (int y = 0; y <= cutoff; ++y) {
            closed.at(k, l, x, y) = a[static_cast<std::size_t>(k)] * a[static_cast<std::size_t>(l)] *
                                    a[static_cast<std::size_t>(x)] * a[static_cast<std::size_t>(y)] * rho.at(k, l, x, y);
          }
    e = std::max(e, max_abs_diff(circuit, closed));
    w.update(e / max_abs(circuit));
  }
  return w;
}

Worst oracle_swap(int samples, int cutoff) {
  std::mt19937_64 rng(110);
  Worst w;
  for (int i = 0; i < samples; ++i) {
    const TwoModeState left = random_f1_state(rng(), cutoff);
    const TwoModeState right = random_f1_state(rng(), cutoff);
    const double q = log_uniform(rng, 0.2, 3.0);
    const TwoModeState circuit = oracle::swap_circuit(left, right, q);
    double e = max_abs_diff(circuit, unnormalized(cvqr::ng_swap(left, right, q)));
    // full closed form of the swap update
    const double d = (1.0 + q * q) * (1.0 + q * q), q2 = q * q;
    TwoModeState closed(cutoff);
    for (int a = 0; a <= cutoff; ++a)
      for (int j = 0; j <= cutoff; ++j)
        for (int al = 0; al <= cutoff; ++al)
          for (int be = 0; be <= cutoff; ++be) {
            const cplx v = q2 * q2 * left.at(a, 0, al, 0) * right.at(0, j, 0, be) +
                           0.25 * left.at(a, 1, al, 1) * right.at(1, j, 1, be) +
                           0.5 * q2 * (left.at(a, 0, al, 1) * right.at(0, j, 1, be) + left.at(a, 1, al, 0) * right.at(1, j, 0, be));
            closed.at(a, j, al, be) = v / (2.0 * d);
          }
    e = std::max(e, max_abs_diff(circuit, closed));
    w.update(e / max_abs(circuit));
  }
  return w;
}

Worst oracle_purify(int samples, int cutoff) {
  std::mt19937_64 rng(111);
  Worst w;
  for (int i = 0; i < samples; ++i) {
    const TwoModeState rho = random_f1_state(rng(), cutoff);
    const double q = log_uniform(rng, 0.2, 5.0);
    const TwoModeState circuit = oracle::purify_circuit(rho, q);
    const TwoModeState lib = unnormalized(cvqr::purify_distill(rho, q));
    // node photon numbers up to the cutoff are represented exactly in the circuit
    const int exact = cutoff - 1;
    double e = 0.0, scale = 0.0;
    for (int k = 0; k <= exact; ++k)
      for (int l = 0; l <= exact; ++l)
        for (int x = 0; x <= exact; ++x)
          for (int y = 0; y <= exact; ++y) {
            e = std::max(e, std::abs(circuit.at(k, l, x, y) - lib.at(k, l, x, y)));
            scale = std::max(scale, std::abs(circuit.at(k, l, x, y)));
          }
    // F1 laws
    const auto f = cvqr::extract_f1(rho);
    const auto g = cvqr::extract_f1(circuit);
    const double d = (1.0 + q * q) * (1.0 + q * q), q2 = q * q;
    double law = std::abs(g.rho00_00 - 0.25 * q2 * q2 / d * f.rho00_00 * f.rho00_00);
    law = std::max(law, std::abs(g.rho10_10 - q2 / (16.0 * d) * f.rho10_10 * f.rho10_10));
    law = std::max(law, std::abs(g.rho11_00 - q2 / (16.0 * d) * f.rho11_00 * f.rho11_00));
    law = std::max(law, std::abs(g.rho11_11 - f.rho11_11 * f.rho11_11 / (64.0 * d)));
    w.update(std::max(e, law) / scale);
  }
  return w;
}

Worst positivity_and_hermiticity(int samples) {
  std::mt19937_64 rng(112);
  Worst w;
  for (int i = 0; i < samples; ++i) {
    const int cutoff = 3;
    TwoModeState rho(random_density(rng, 2, cutoff));
    TwoModeState out(cutoff);
    switch (i % 6) {
      case 0:
        out = TwoModeState(cvqr::apply_bs(rho, 0, 1, uniform(rng, 0.0, 1.0)));
        break;
      case 1:
        out = cvqr::apply_loss(rho, uniform(rng, 0.0, 1.0), static_cast<int>(rng() % 2));
        break;
      case 2:
        out = cvqr::pr_distill(rho, uniform(rng, 0.1, 1.0)).state;
        break;
      case 3:
        out = cvqr::gaussify_step(rho).state;
        break;
      case 4:
        out = cvqr::ng_swap(rho, TwoModeState(random_density(rng, 2, cutoff)), log_uniform(rng, 0.1, 10.0)).state;
        break;
      default:
        out = random_f1_state(rng(), cutoff);
        out = cvqr::purify_distill(out, log_uniform(rng, 0.1, 10.0)).state;
        break;
    }
    const double tr = out.trace();
    w.update(std::max(out.hermiticity_defect(), std::max(0.0, -out.min_eigenvalue()) / tr));
  }
  return w;
}

Worst bs_block_unitarity(int samples) {
  std::mt19937_64 rng(113);
  Worst w;
  for (int i = 0; i < samples; ++i) {
    const double tau = uniform(rng, 0.0, 1.0);
    const int n = static_cast<int>(rng() % 13);
    Eigen::MatrixXd u(n + 1, n + 1);
    // column j: input |n-j, j>; row m: output |n-m, m>
    for (int j = 0; j <= n; ++j)
      for (int m = 0; m <= n; ++m) u(m, j) = cvqr::bs_coefficient(n - j, j, m - j, tau);
    w.update((u.transpose() * u - Eigen::MatrixXd::Identity(n + 1, n + 1)).cwiseAbs().maxCoeff());
  }
  return w;
}

Worst herald_completeness(int samples) {
  std::mt19937_64 rng(114);
  std::normal_distribution<double> g;
  Worst w;
  for (int i = 0; i < samples; ++i) {
    const int cutoff = 3, levels = cutoff + 1;
    const cvqr::FockState rho = random_density(rng, 2, cutoff);
    Eigen::MatrixXcd m(levels, levels);
    for (int r = 0; r < levels; ++r)
      for (int c = 0; c < levels; ++c) m(r, c) = cplx(g(rng), g(rng));
    const Eigen::MatrixXcd basis = Eigen::HouseholderQR<Eigen::MatrixXcd>(m).householderQ();
    const int mode = static_cast<int>(rng() % 2);
    cvqr::FockState sum(1, cutoff);
    for (int c = 0; c < levels; ++c) {
      const Eigen::VectorXcd ket = basis.col(c);
      try {
        auto h = cvqr::herald(rho, mode, std::span<const cplx>(ket.data(), static_cast<std::size_t>(levels)));
        for (std::size_t k = 0; k < sum.data().size(); ++k) sum.data()[k] += h.probability * h.state.data()[k];
      } catch (const cvqr::Error&) {
      }
    }
    // partial trace over `mode`
    cvqr::FockState reduced(1, cutoff);
    for (int a = 0; a < levels; ++a)
      for (int b = 0; b < levels; ++b)
        for (int t = 0; t < levels; ++t) {
          const int r0 = mode == 0 ? t * levels + a : a * levels + t;
          const int c0 = mode == 0 ? t * levels + b : b * levels + t;
          reduced(static_cast<std::size_t>(a), static_cast<std::size_t>(b)) +=
              rho(static_cast<std::size_t>(r0), static_cast<std::size_t>(c0));
        }
    w.update(max_abs_diff(sum, reduced));
  }
  return w;
}

}  // namespace checks
