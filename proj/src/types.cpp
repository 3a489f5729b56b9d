#include "sps/types.hpp"

#include <cmath>

namespace sps {

void Trajectory::append(TrajectoryRecord rec) {
  if (!records.empty() && rec.k <= records.back().k) {
    throw std::invalid_argument("trajectory records must be strictly increasing in k");
  }
  if (!(rec.gamma >= 0.0) || !std::isfinite(rec.gamma)) {
    throw std::invalid_argument("trajectory step size must be finite and nonnegative");
  }
  records.push_back(std::move(rec));
}

void StepSizeRule::validate() const {
  switch (kind) {
    case StepKind::Sps:
      if (!(c > 0)) throw std::invalid_argument("sps: c must be positive");
      break;
    case StepKind::SpsMax:
      if (!(c > 0)) throw std::invalid_argument("sps_max: c must be positive");
      if (!(gamma_b > 0)) throw std::invalid_argument("sps_max: gamma_b must be positive");
      break;
    case StepKind::SmoothedSpsMax:
      if (!(c > 0)) throw std::invalid_argument("smoothed_sps_max: c must be positive");
      if (!(gamma_b_init > 0)) {
        throw std::invalid_argument("smoothed_sps_max: initial bound must be positive");
      }
      if (!(tau > 1)) throw std::invalid_argument("smoothed_sps_max: tau must exceed 1");
      break;
    case StepKind::Constant:
      if (!(gamma > 0)) throw std::invalid_argument("constant: gamma must be positive");
      break;
    case StepKind::DeterministicPolyak:
      break;
  }
}

void RunConfig::validate() const {
  if (iterations < 0) throw std::invalid_argument("iterations must be nonnegative");
  if (record_every < 1) throw std::invalid_argument("record_every must be positive");
  if (batch_schedule.kind == BatchKind::Fixed && batch_schedule.fixed_b < 1) {
    throw std::invalid_argument("fixed batch size must be at least 1");
  }
  if (init == InitKind::Gaussian && !(init_scale > 0)) {
    throw std::invalid_argument("gaussian init scale must be positive");
  }
  step_rule.validate();
}

}  // namespace sps
