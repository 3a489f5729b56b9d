#ifndef SPS_ENGINE_HPP
#define SPS_ENGINE_HPP

#include <optional>

#include "sps/problem.hpp"
#include "sps/sampler.hpp"
#include "sps/types.hpp"

namespace sps {

/// Exact-solution data threaded into a run when available: x* enables
/// distance recording and the oracle batch schedules; f* is required by
/// the deterministic Polyak rule.
struct OracleInfo {
  std::optional<Vector> x_star;
  std::optional<double> f_star;
};

/// SGD iteration x^{k+1} = x^k - gamma_k * g where g is the mean gradient
/// of the sampled batch and gamma_k comes from the configured rule (the
/// batch mean loss / gradient / infimum are fed to the rule as if the
/// batch were a single component). Deterministic given (problem, rule,
/// schedule, config, x0) and the sampler's seed.
Trajectory run_sgd(const FiniteSumProblem& problem, const StepSizeRule& rule,
                   Sampler& sampler, const BatchSchedule& schedule,
                   const RunConfig& config, Vector x0,
                   const OracleInfo& oracle = {});

/// Stochastic subgradient variant: identical loop, but meant for
/// non-smooth problems (the component oracle returns subgradients) and the
/// natural home of the deterministic Polyak rule, which takes a full
/// value/subgradient pass per iteration.
Trajectory run_subgradient(const FiniteSumProblem& problem,
                           const StepSizeRule& rule, Sampler& sampler,
                           const RunConfig& config, Vector x0,
                           const OracleInfo& oracle = {});

/// Batch-size lower bound of the increasing schedules, ceiled and clamped
/// to [1, n]. `state` is ||grad f(x^k)|| for the strongly convex schedule
/// and f(x^k) - f* for the PL schedule.
int next_batch_size(const BatchSchedule& schedule, double state, int n);

/// Initial iterate derived from the run config (the x0 half of the
/// reproducibility contract).
Vector initial_iterate(int dim, const RunConfig& config);

}  // namespace sps

#endif  // SPS_ENGINE_HPP
