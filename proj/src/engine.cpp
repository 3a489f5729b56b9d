#include "sps/engine.hpp"

#include <cmath>
#include <sstream>

#include "sps/stepsize.hpp"

namespace sps {

namespace {

struct LoopMode {
  bool track_average = false;
};

void check_finite(double v, const char* what, long k) {
  if (!std::isfinite(v)) {
    std::ostringstream msg;
    msg << what << " is not finite at iteration " << k;
    throw NumericalAbort(msg.str(), k);
  }
}

Trajectory run_loop(const FiniteSumProblem& problem, const StepSizeRule& rule,
                    Sampler& sampler, const BatchSchedule& schedule,
                    const RunConfig& config, Vector x, const OracleInfo& oracle,
                    const LoopMode& mode) {
  config.validate();
  rule.validate();
  const int n = problem.num_components();
  const long iters = config.iterations;

  if (rule.kind == StepKind::DeterministicPolyak && !oracle.f_star) {
    throw std::invalid_argument("deterministic Polyak rule needs the optimal value f*");
  }
  const bool increasing = schedule.kind != BatchKind::Fixed;
  if (increasing && schedule.kind == BatchKind::PlSchedule && !oracle.f_star) {
    throw std::invalid_argument("PL batch schedule needs the optimal value f*");
  }
  if (!increasing && schedule.fixed_b > n) {
    throw std::invalid_argument("fixed batch size exceeds the number of components");
  }
  if (x.size() != problem.dim()) {
    throw std::invalid_argument("initial iterate dimension mismatch");
  }

  Trajectory traj;
  Vector iterate_sum = Vector::Zero(x.size());
  long steps_into_sum = 0;
  double prev_gamma = rule.gamma_b_init;  // smoothed-rule recursion state
  int batch_size = increasing ? 1 : schedule.fixed_b;

  for (long k = 0; k < iters; ++k) {
    const bool at_cadence = (k % config.record_every == 0);
    const bool full_pass_rule = rule.kind == StepKind::DeterministicPolyak;
    const bool need_full = at_cadence || full_pass_rule;

    double full_loss = 0.0;
    double full_grad_sq = 0.0;
    Vector full_grad;
    if (need_full) {
      full_loss = problem.full_value(x);
      full_grad = problem.full_gradient(x);
      full_grad_sq = full_grad.squaredNorm();
      check_finite(full_loss, "objective", k);
      check_finite(full_grad_sq, "gradient norm", k);
    }

    // Oracle schedules read the true state only at recording cadence and
    // hold the batch size in between.
    if (increasing && at_cadence) {
      const double state = schedule.kind == BatchKind::StronglyConvexSchedule
                               ? std::sqrt(full_grad_sq)
                               : full_loss - *oracle.f_star;
      batch_size = next_batch_size(schedule, std::max(state, 0.0), n);
    }

    std::vector<int> batch;
    double step_val = 0.0;
    double step_infimum = 0.0;
    Vector step_grad;
    if (full_pass_rule) {
      step_val = full_loss;
      step_grad = full_grad;
      step_infimum = *oracle.f_star;
    } else {
      batch = sampler.draw_batch(n, batch_size);
      if (batch.size() == 1) {
        step_val = problem.component_value(batch[0], x);
        step_grad = problem.component_gradient(batch[0], x);
        step_infimum = problem.component_infimum(batch[0]);
      } else {
        step_val = problem.batch_value(batch, x);
        step_grad = problem.batch_gradient(batch, x);
        step_infimum = problem.batch_infimum(batch);
      }
    }
    const double grad_sq = step_grad.squaredNorm();
    check_finite(step_val, "sampled loss", k);
    check_finite(grad_sq, "sampled gradient norm", k);

    StepResult step;
    try {
      switch (rule.kind) {
        case StepKind::Sps:
          step = sps(step_val, step_infimum, grad_sq, rule.c);
          break;
        case StepKind::SpsMax:
          step = sps_max(step_val, step_infimum, grad_sq, rule.c, rule.gamma_b);
          break;
        case StepKind::SmoothedSpsMax: {
          const double bound = smoothed_bound_update(
              prev_gamma, rule.tau, full_pass_rule ? n : batch_size, n);
          step = sps_max(step_val, step_infimum, grad_sq, rule.c, bound);
          // Feed the step actually taken back into the recursion; a zero
          // step keeps the previous state so the cap can recover.
          if (step.gamma > 0.0) prev_gamma = step.gamma;
          break;
        }
        case StepKind::Constant:
          step = {rule.gamma, false};
          break;
        case StepKind::DeterministicPolyak:
          step = deterministic_polyak(step_val, step_infimum, grad_sq);
          break;
      }
    } catch (const OracleInconsistency& e) {
      std::ostringstream msg;
      msg << "iteration " << k << ": " << e.what();
      throw OracleInconsistency(msg.str());
    }

    if (at_cadence) {
      TrajectoryRecord rec;
      rec.k = k;
      rec.indices = batch;
      rec.gamma = step.gamma;
      rec.loss = full_loss;
      rec.grad_norm_sq = full_grad_sq;
      rec.batch_size = full_pass_rule ? n : batch_size;
      if (oracle.x_star) rec.dist_sq = (x - *oracle.x_star).squaredNorm();
      traj.append(std::move(rec));
      if (mode.track_average && steps_into_sum > 0) {
        const Vector avg = iterate_sum / static_cast<double>(steps_into_sum);
        traj.avg_loss.push_back(problem.full_value(avg));
      } else {
        traj.avg_loss.push_back(std::numeric_limits<double>::quiet_NaN());
      }
    }

    iterate_sum += x;
    ++steps_into_sum;

    if (step.gamma != 0.0) {
      x -= step.gamma * step_grad;
      if (!x.allFinite()) {
        std::ostringstream msg;
        msg << "iterate left the finite range at iteration " << k << " (gamma = "
            << step.gamma << ")";
        throw NumericalAbort(msg.str(), k);
      }
    }
  }

  traj.final_iterate = x;
  traj.average_iterate =
      steps_into_sum > 0 ? Vector(iterate_sum / static_cast<double>(steps_into_sum))
                         : x;
  return traj;
}

}  // namespace

Trajectory run_sgd(const FiniteSumProblem& problem, const StepSizeRule& rule,
                   Sampler& sampler, const BatchSchedule& schedule,
                   const RunConfig& config, Vector x0, const OracleInfo& oracle) {
  return run_loop(problem, rule, sampler, schedule, config, std::move(x0), oracle,
                  {.track_average = true});
}

Trajectory run_subgradient(const FiniteSumProblem& problem, const StepSizeRule& rule,
                           Sampler& sampler, const RunConfig& config, Vector x0,
                           const OracleInfo& oracle) {
  return run_loop(problem, rule, sampler, config.batch_schedule, config,
                  std::move(x0), oracle, {.track_average = true});
}

int next_batch_size(const BatchSchedule& schedule, double state, int n) {
  if (n < 1) throw std::invalid_argument("next_batch_size: n must be positive");
  if (schedule.kind == BatchKind::Fixed) {
    return std::min(std::max(schedule.fixed_b, 1), n);
  }
  if (!(state >= 0.0)) {
    throw std::invalid_argument("next_batch_size: state quantity must be nonnegative");
  }
  auto require = [](double v, const char* name) {
    if (!(v > 0.0)) {
      throw std::invalid_argument(std::string("next_batch_size: missing constant ") + name);
    }
  };
  require(schedule.gamma_b, "gamma_b");
  require(schedule.z_sq, "z_sq");
  require(schedule.mu_min, "mu_min");
  require(schedule.l, "L");

  double term = 0.0;
  if (schedule.kind == BatchKind::StronglyConvexSchedule) {
    require(schedule.mu, "mu");
    require(schedule.l_max, "L_max");
    const double ratio = state / schedule.l;
    term = (1.0 / (4.0 * schedule.gamma_b * schedule.z_sq)) *
           (schedule.mu_min * schedule.mu / schedule.l_max) * ratio * ratio;
  } else {
    require(schedule.c, "c");
    if (!(schedule.v > 0.0) || !(schedule.v < 1.0)) {
      throw std::invalid_argument("next_batch_size: v must lie in (0, 1)");
    }
    term = (2.0 / (schedule.gamma_b * schedule.z_sq)) *
           (schedule.mu_min * schedule.v / (schedule.c * schedule.l)) * state;
  }
  const double bound = 1.0 / (1.0 / n + term);
  const long b = static_cast<long>(std::ceil(bound));
  return static_cast<int>(std::min<long>(std::max<long>(b, 1), n));
}

Vector initial_iterate(int dim, const RunConfig& config) {
  switch (config.init) {
    case InitKind::Zeros:
      return Vector::Zero(dim);
    case InitKind::Ones:
      return Vector::Ones(dim);
    case InitKind::Gaussian: {
      CounterRng rng(config.seed, /*stream=*/1);
      Vector x(dim);
      for (int j = 0; j < dim; ++j) x[j] = config.init_scale * rng.next_gaussian();
      return x;
    }
  }
  throw std::logic_error("unknown init kind");
}

}  // namespace sps
