#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include <json.hpp>

#include "sps/analysis.hpp"
#include "sps/engine.hpp"
#include "sps/problems/classification.hpp"
#include "sps/problems/solve_exact.hpp"
#include "sps/sampler.hpp"

using sps::BoundSpec;
using sps::Theorem;
using sps::Vector;

namespace {

BoundSpec strongly_convex_spec(double mu, double l_max, double sigma_sq, double c,
                               double gamma_b, double dist0_sq) {
  BoundSpec spec;
  spec.theorem = Theorem::StronglyConvex;
  spec.constants.mu = mu;
  spec.constants.l_max = l_max;
  spec.constants.sigma_sq = sigma_sq;
  spec.c = c;
  spec.gamma_b = gamma_b;
  spec.dist0_sq = dist0_sq;
  return spec;
}

}  // namespace

TEST_CASE("strongly convex bound pinned values") {
  // Interpolation with unbounded steps: pure (1 - mu/L_max)^k decay.
  auto spec = strongly_convex_spec(0.5, 2.0, 0.0, 0.5, sps::kInf, 4.0);
  spec.validate();
  CHECK(sps::bound_strongly_convex(0, spec) == doctest::Approx(4.0));
  CHECK(sps::bound_strongly_convex(10, spec) ==
        doctest::Approx(std::pow(1.0 - 0.25, 10) * 4.0).epsilon(1e-15));

  // k = 0 with noise: start distance plus the neighborhood.
  spec = strongly_convex_spec(0.5, 2.0, 0.1, 0.5, 3.0, 4.0);
  const double alpha = std::min(1.0 / (2.0 * 0.5 * 2.0), 3.0);
  CHECK(sps::bound_strongly_convex(0, spec) ==
        doctest::Approx(4.0 + 2.0 * 3.0 * 0.1 / (0.5 * alpha)));

  // gamma_b <= 1/L_max with c = 1/2: neighborhood collapses to 2 sigma^2 / mu.
  spec = strongly_convex_spec(0.5, 2.0, 0.1, 0.5, 0.25, 4.0);
  const double neighborhood_only =
      sps::bound_strongly_convex(1000000, spec);
  CHECK(neighborhood_only == doctest::Approx(2.0 * 0.1 / 0.5).epsilon(1e-9));
}

TEST_CASE("strongly convex bound is minimized at c = 1/2 over the grid") {
  const double base = sps::bound_strongly_convex(
      7, strongly_convex_spec(0.4, 2.0, 0.05, 0.5, 5.0, 9.0));
  for (double c = 0.5; c <= 4.0; c += 0.125) {
    const double value = sps::bound_strongly_convex(
        7, strongly_convex_spec(0.4, 2.0, 0.05, c, 5.0, 9.0));
    CHECK(base <= value + 1e-15);
  }
}

TEST_CASE("convex bound pinned values") {
  BoundSpec spec;
  spec.theorem = Theorem::Convex;
  spec.constants.l_max = 2.0;
  spec.constants.sigma_sq = 0.0;
  spec.c = 1.0;
  spec.gamma_b = sps::kInf;
  spec.dist0_sq = 3.0;
  spec.validate();
  // alpha = 1/(2 L_max) under interpolation: bound = 2 L_max dist0 / K.
  CHECK(sps::bound_convex(6, spec) == doctest::Approx(2.0 * 2.0 * 3.0 / 6.0));

  spec.constants.sigma_sq = 0.2;
  spec.gamma_b = 1.0;
  const double alpha = std::min(1.0 / (2.0 * 2.0), 1.0);
  const double neighborhood = 2.0 * 0.2 * 1.0 / alpha;
  // Large horizons approach the neighborhood.
  CHECK(sps::bound_convex(100000000, spec) ==
        doctest::Approx(neighborhood).epsilon(1e-6));

  spec.c = 0.5;
  CHECK_THROWS_AS(spec.validate(), std::invalid_argument);
  spec.c = 1.0;
  CHECK_THROWS_AS(sps::bound_convex(0, spec), std::invalid_argument);
}

TEST_CASE("PL bound rate factor and constant-step reduction") {
  BoundSpec spec;
  spec.theorem = Theorem::PL;
  spec.constants.mu = 1.0;
  spec.constants.l_max = 2.0;
  spec.constants.l = 1.5;
  spec.constants.sigma_sq = 0.0;
  spec.c = 1.0;  // > L_max/(4 mu) = 0.5
  spec.gamma_b = 1.0 / (2.0 * 1.0 * 2.0);  // = 1/(2cL_max), boundary allowed
  spec.f0_minus_fstar = 5.0;
  spec.validate();
  const double nu = spec.nu();
  CHECK(nu > 0.0);
  CHECK(nu <= 1.0);
  CHECK(sps::bound_pl(3, spec) == doctest::Approx(std::pow(nu, 3) * 5.0));

  // Constant-step corollary: c = L_max/(2 mu) and gamma <= mu/L_max^2 give
  // nu = 1 - mu * gamma exactly.
  BoundSpec constant_step = spec;
  constant_step.c = 2.0 / (2.0 * 1.0);  // L_max / (2 mu)
  constant_step.gamma_b = 0.8 * 1.0 / (2.0 * 2.0);  // below mu/L_max^2 = 0.25
  CHECK(constant_step.nu() ==
        doctest::Approx(1.0 - 1.0 * constant_step.gamma_b).epsilon(1e-15));

  // Preconditions: small c rejected with the violated inequality reported.
  BoundSpec bad = spec;
  bad.c = 0.4;
  bad.gamma_b = 1.0;
  try {
    bad.validate();
    CHECK(false);
  } catch (const std::invalid_argument& e) {
    CHECK(std::string(e.what()).find("L_max/(4 mu)") != std::string::npos);
  }
}

TEST_CASE("PL cap range keeps nu inside (0, 1)") {
  sps::CounterRng rng(23);
  for (int t = 0; t < 200; ++t) {
    const double mu = 0.2 + rng.next_double();
    const double l_max = mu * (1.0 + 3.0 * rng.next_double());
    const double c = l_max / (4.0 * mu) * (1.01 + rng.next_double());
    const double cap_limit =
        std::min(1.0 / (2.0 * c * l_max), 2.0 * c / (4.0 * mu * c - l_max));
    const double gamma_b = cap_limit * (0.05 + 0.9 * rng.next_double());

    BoundSpec spec;
    spec.theorem = Theorem::PL;
    spec.constants.mu = mu;
    spec.constants.l_max = l_max;
    spec.constants.l = l_max;
    spec.c = c;
    spec.gamma_b = gamma_b;
    const double nu = spec.nu();
    CHECK(nu > 0.0);
    CHECK(nu < 1.0);
  }
}

TEST_CASE("nonconvex bound and zeta preconditions") {
  BoundSpec spec;
  spec.theorem = Theorem::NonConvex;
  spec.constants.l = 2.0;
  spec.constants.l_max = 2.0;
  spec.rho = 1.5;
  spec.delta = 0.0;
  spec.c = 1.0;  // > rho L / (4 L_max) = 0.75
  spec.gamma_b = 0.2;
  spec.f0_minus_fstar = 3.0;
  spec.validate();
  // delta = 0: the bound is the pure 2/(zeta K) term.
  CHECK(sps::bound_nonconvex(10, spec) ==
        doctest::Approx(2.0 / (spec.zeta() * 10.0) * 3.0));

  BoundSpec noisy = spec;
  noisy.delta = 0.4;
  const double alpha = noisy.alpha();
  const double extra =
      (noisy.gamma_b - alpha + noisy.constants.l * noisy.gamma_b * noisy.gamma_b) *
      noisy.delta / noisy.zeta();
  CHECK(sps::bound_nonconvex(10, noisy) ==
        doctest::Approx(2.0 / (noisy.zeta() * 10.0) * 3.0 + extra));

  BoundSpec bad = spec;
  bad.gamma_b = 100.0;
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
}

TEST_CASE("linear system and nonsmooth bounds") {
  BoundSpec spec;
  spec.theorem = Theorem::LinearSystem;
  spec.constants.lambda_min_plus_w = 0.25;
  spec.dist0_sq = 8.0;
  spec.validate();
  CHECK(sps::bound_linear_system(2, spec) == doctest::Approx(0.75 * 0.75 * 8.0));

  BoundSpec ns;
  ns.theorem = Theorem::NonSmooth;
  ns.constants.g_bound = 3.0;
  ns.constants.sigma_sq = 0.0;
  ns.dist0_sq = 4.0;  // ||x0 - x*|| = 2
  ns.validate();
  CHECK(sps::bound_nonsmooth(1, ns) == doctest::Approx(6.0));
  CHECK(sps::bound_nonsmooth(100, ns) == doctest::Approx(0.6));
}

TEST_CASE("bounds are monotone in the iteration count") {
  const auto sc = strongly_convex_spec(0.5, 2.0, 0.05, 0.5, 2.0, 9.0);
  BoundSpec ns;
  ns.theorem = Theorem::NonSmooth;
  ns.constants.g_bound = 2.0;
  ns.dist0_sq = 1.0;
  double prev_sc = sps::bound_strongly_convex(0, sc);
  double prev_ns = sps::bound_nonsmooth(1, ns);
  for (long k = 1; k < 2000; k += 50) {
    const double cur_sc = sps::bound_strongly_convex(k, sc);
    CHECK(cur_sc <= prev_sc + 1e-15);
    prev_sc = cur_sc;
    const double cur_ns = sps::bound_nonsmooth(k + 1, ns);
    CHECK(cur_ns <= prev_ns + 1e-15);
    prev_ns = cur_ns;
  }
}

namespace {

struct Ensemble {
  std::vector<sps::Trajectory> trajectories;
  sps::ProblemConstants constants;
  double dist0_sq = 0.0;
};

Ensemble run_realizable_ensemble(int seeds, long iters, double c) {
  Ensemble out;
  const auto problem = sps::generate_least_squares(20, 5, 0.0, 0.0, 77);
  out.constants = sps::solve_exact(problem);
  const Vector x0 = Vector::Zero(5);
  out.dist0_sq = (x0 - out.constants.x_star).squaredNorm();
  for (int s = 1; s <= seeds; ++s) {
    sps::RunConfig config;
    config.seed = s;
    config.iterations = iters;
    config.record_every = 5;
    config.step_rule = sps::StepSizeRule::sps(c);
    sps::OracleInfo oracle;
    oracle.x_star = out.constants.x_star;
    oracle.f_star = out.constants.f_star;
    sps::Sampler sampler = sps::Sampler::uniform(s);
    out.trajectories.push_back(sps::run_sgd(problem, config.step_rule, sampler,
                                            config.batch_schedule, config, x0, oracle));
  }
  return out;
}

}  // namespace

TEST_CASE("check_bound passes on an interpolated ensemble") {
  const Ensemble ensemble = run_realizable_ensemble(20, 200, 0.5);
  BoundSpec spec;
  spec.theorem = Theorem::StronglyConvex;
  spec.constants = ensemble.constants;
  spec.constants.sigma_sq = 0.0;  // realizable data
  spec.c = 0.5;
  spec.gamma_b = sps::kInf;
  spec.dist0_sq = ensemble.dist0_sq;

  const auto report = sps::check_bound(ensemble.trajectories, spec,
                                       sps::Quantity::DistSq, 0.1);
  CHECK(report.pass);
  CHECK(report.first_violation_k == -1);
  CHECK(report.margin_curve.size() == ensemble.trajectories.front().records.size());

  // Corrupting mu to a too-large value makes the predicted decay
  // unattainable and the check must fail with a violation index.
  BoundSpec corrupted = spec;
  corrupted.constants.mu = std::min(10.0 * spec.constants.mu,
                                    0.9 * spec.constants.l_max);
  const auto bad = sps::check_bound(ensemble.trajectories, corrupted,
                                    sps::Quantity::DistSq, 0.1);
  CHECK(!bad.pass);
  CHECK(bad.first_violation_k > 0);

  // Fewer than two seeds cannot estimate an expectation.
  std::vector<sps::Trajectory> single(ensemble.trajectories.begin(),
                                      ensemble.trajectories.begin() + 1);
  CHECK_THROWS_AS(sps::check_bound(single, spec, sps::Quantity::DistSq, 0.1),
                  std::invalid_argument);
  // Quantity / theorem mismatch.
  CHECK_THROWS_AS(sps::check_bound(ensemble.trajectories, spec,
                                   sps::Quantity::Suboptimality, 0.1),
                  std::invalid_argument);
}

TEST_CASE("check_bound on the averaged iterate (convex theorem)") {
  const Ensemble ensemble = run_realizable_ensemble(20, 200, 1.0);
  BoundSpec spec;
  spec.theorem = Theorem::Convex;
  spec.constants = ensemble.constants;
  spec.constants.sigma_sq = 0.0;
  spec.c = 1.0;
  spec.gamma_b = sps::kInf;
  spec.dist0_sq = ensemble.dist0_sq;
  const auto report = sps::check_bound(ensemble.trajectories, spec,
                                       sps::Quantity::AvgIterateSuboptimality, 0.1);
  CHECK(report.pass);
}

TEST_CASE("check_bound running minimum for the nonconvex theorem") {
  // Hand-crafted trajectories: the gradient curve dips early and rises, so
  // the running minimum must be used, not the instantaneous value.
  auto make = [](std::initializer_list<double> grads) {
    sps::Trajectory traj;
    long k = 0;
    for (double g : grads) {
      sps::TrajectoryRecord rec;
      rec.k = k++;
      rec.gamma = 0.1;
      rec.loss = 1.0;
      rec.grad_norm_sq = g;
      traj.append(rec);
      traj.avg_loss.push_back(1.0);
    }
    return traj;
  };
  std::vector<sps::Trajectory> trajectories = {make({4.0, 0.2, 3.0, 3.0}),
                                               make({4.0, 0.2, 3.0, 3.0})};

  BoundSpec spec;
  spec.theorem = Theorem::NonConvex;
  spec.constants.l = 2.0;
  spec.constants.l_max = 2.0;
  spec.rho = 1.5;
  spec.delta = 0.0;
  spec.c = 1.0;
  spec.gamma_b = 0.2;
  spec.f0_minus_fstar = 1.0;

  const auto report = sps::check_bound(trajectories, spec, sps::Quantity::MinGradSq, 0.0);
  // bound(k) = 2 / (zeta k); with zeta ~ 0.71 the k = 3 bound is ~0.94 and
  // the running minimum 0.2 stays below it.
  CHECK(report.pass);
}

TEST_CASE("report serializes to JSON with the expected fields") {
  const Ensemble ensemble = run_realizable_ensemble(3, 50, 0.5);
  BoundSpec spec;
  spec.theorem = Theorem::StronglyConvex;
  spec.constants = ensemble.constants;
  spec.constants.sigma_sq = 0.0;
  spec.c = 0.5;
  spec.gamma_b = 2.0;
  spec.dist0_sq = ensemble.dist0_sq;
  const auto report =
      sps::check_bound(ensemble.trajectories, spec, sps::Quantity::DistSq, 0.1);
  const auto j = nlohmann::json::parse(sps::report_to_json(report, spec));
  CHECK(j["theorem"] == "strongly_convex");
  CHECK(j.contains("pass"));
  CHECK(j.contains("first_violation_k"));
  CHECK(j["constants"].contains("mu"));
  CHECK(j["margin_curve"].is_array());
  CHECK(j["margin_curve"].size() == report.margin_curve.size());
}
