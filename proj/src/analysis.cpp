#include "sps/analysis.hpp"

#include <cmath>
#include <sstream>

#include <json.hpp>

#include "sps/io.hpp"

namespace sps {

namespace {

void require(bool ok, const std::string& message) {
  if (!ok) throw std::invalid_argument("bound precondition violated: " + message);
}

}  // namespace

double BoundSpec::alpha() const {
  return std::min(1.0 / (2.0 * c * constants.l_max), gamma_b);
}

double BoundSpec::nu() const {
  return gamma_b * (1.0 / alpha() - 2.0 * constants.mu + constants.l_max / (2.0 * c));
}

double BoundSpec::zeta() const {
  const double a = alpha();
  return (gamma_b + a) - rho * (gamma_b - a + constants.l * gamma_b * gamma_b);
}

double BoundSpec::gamma_b_bar() const {
  const double l = constants.l;
  const double disc = (rho - 1.0) * (rho - 1.0) +
                      4.0 * l * rho * (rho + 1.0) / (2.0 * c * constants.l_max);
  return (-(rho - 1.0) + std::sqrt(disc)) / (2.0 * l * rho);
}

void BoundSpec::validate() const {
  require(c > 0.0, "c > 0");
  require(gamma_b > 0.0, "gamma_b > 0");
  switch (theorem) {
    case Theorem::StronglyConvex:
      require(constants.l_max > 0.0, "L_max > 0");
      require(constants.mu > 0.0, "mu > 0");
      require(constants.mu <= constants.l_max, "mu <= L_max");
      require(c >= 0.5, "c >= 1/2");
      break;
    case Theorem::Convex:
      require(constants.l_max > 0.0, "L_max > 0");
      require(c == 1.0, "c = 1");
      break;
    case Theorem::PL: {
      require(constants.l_max > 0.0, "L_max > 0");
      require(constants.l > 0.0, "L > 0");
      require(constants.mu > 0.0, "mu > 0");
      require(c > constants.l_max / (4.0 * constants.mu), "c > L_max/(4 mu)");
      require(std::isfinite(gamma_b), "gamma_b finite");
      require(gamma_b >= 1.0 / (2.0 * c * constants.l_max), "gamma_b >= 1/(2 c L_max)");
      const double v = nu();
      if (!(v > 0.0 && v <= 1.0)) {
        std::ostringstream msg;
        msg << "nu = gamma_b (1/alpha - 2 mu + L_max/(2c)) = " << v
            << " outside (0, 1]";
        require(false, msg.str());
      }
      break;
    }
    case Theorem::NonConvex: {
      require(constants.l_max > 0.0, "L_max > 0");
      require(constants.l > 0.0, "L > 0");
      require(rho > 0.0, "rho > 0");
      require(delta >= 0.0, "delta >= 0");
      require(c > rho * constants.l / (4.0 * constants.l_max), "c > rho L/(4 L_max)");
      require(std::isfinite(gamma_b), "gamma_b finite");
      require(gamma_b < std::max(2.0 / (constants.l * rho), gamma_b_bar()),
              "gamma_b < max{2/(L rho), gamma_b_bar}");
      if (!(zeta() > 0.0)) {
        std::ostringstream msg;
        msg << "zeta = (gamma_b + alpha) - rho (gamma_b - alpha + L gamma_b^2) = "
            << zeta() << " <= 0";
        require(false, msg.str());
      }
      break;
    }
    case Theorem::LinearSystem:
      require(constants.lambda_min_plus_w > 0.0, "lambda_min_plus(W) > 0");
      require(constants.lambda_min_plus_w <= 1.0, "lambda_min_plus(W) <= 1");
      break;
    case Theorem::NonSmooth:
      require(constants.g_bound > 0.0, "subgradient bound G > 0");
      require(constants.sigma_sq == 0.0, "interpolation (sigma = 0)");
      break;
  }
}

double bound_strongly_convex(long k, const BoundSpec& spec) {
  const double a = spec.alpha();
  const double rate = std::pow(1.0 - spec.constants.mu * a, static_cast<double>(k));
  const double neighborhood =
      spec.constants.sigma_sq == 0.0
          ? 0.0
          : 2.0 * spec.gamma_b * spec.constants.sigma_sq / (spec.constants.mu * a);
  return rate * spec.dist0_sq + neighborhood;
}

double bound_convex(long k_horizon, const BoundSpec& spec) {
  if (k_horizon < 1) throw std::invalid_argument("bound_convex: needs K >= 1");
  const double a = spec.alpha();
  const double neighborhood =
      spec.constants.sigma_sq == 0.0 ? 0.0
                                     : 2.0 * spec.constants.sigma_sq * spec.gamma_b / a;
  return spec.dist0_sq / (a * k_horizon) + neighborhood;
}

double bound_pl(long k, const BoundSpec& spec) {
  const double v = spec.nu();
  double neighborhood = 0.0;
  if (spec.constants.sigma_sq != 0.0) {
    if (v >= 1.0) {
      throw std::invalid_argument("bound_pl: nu = 1 gives no finite neighborhood "
                                  "unless sigma = 0");
    }
    neighborhood = spec.constants.l * spec.constants.sigma_sq * spec.gamma_b /
                   (2.0 * (1.0 - v) * spec.c);
  }
  return std::pow(v, static_cast<double>(k)) * spec.f0_minus_fstar + neighborhood;
}

double bound_nonconvex(long k_horizon, const BoundSpec& spec) {
  if (k_horizon < 1) throw std::invalid_argument("bound_nonconvex: needs K >= 1");
  const double z = spec.zeta();
  const double a = spec.alpha();
  const double noise =
      (spec.gamma_b - a + spec.constants.l * spec.gamma_b * spec.gamma_b) * spec.delta / z;
  return 2.0 / (z * k_horizon) * spec.f0_minus_fstar + noise;
}

double bound_linear_system(long k, const BoundSpec& spec) {
  return std::pow(1.0 - spec.constants.lambda_min_plus_w, static_cast<double>(k)) *
         spec.dist0_sq;
}

double bound_nonsmooth(long k_horizon, const BoundSpec& spec) {
  if (k_horizon < 1) throw std::invalid_argument("bound_nonsmooth: needs K >= 1");
  return spec.constants.g_bound * std::sqrt(spec.dist0_sq) /
         std::sqrt(static_cast<double>(k_horizon));
}

double evaluate_bound(long k, const BoundSpec& spec) {
  switch (spec.theorem) {
    case Theorem::StronglyConvex: return bound_strongly_convex(k, spec);
    case Theorem::Convex: return bound_convex(k, spec);
    case Theorem::PL: return bound_pl(k, spec);
    case Theorem::NonConvex: return bound_nonconvex(k, spec);
    case Theorem::LinearSystem: return bound_linear_system(k, spec);
    case Theorem::NonSmooth: return bound_nonsmooth(k, spec);
  }
  throw std::logic_error("unknown theorem");
}

Quantity quantity_for(Theorem theorem) {
  switch (theorem) {
    case Theorem::StronglyConvex:
    case Theorem::LinearSystem:
      return Quantity::DistSq;
    case Theorem::Convex:
    case Theorem::NonSmooth:
      return Quantity::AvgIterateSuboptimality;
    case Theorem::PL:
      return Quantity::Suboptimality;
    case Theorem::NonConvex:
      return Quantity::MinGradSq;
  }
  throw std::logic_error("unknown theorem");
}

const char* theorem_name(Theorem theorem) {
  switch (theorem) {
    case Theorem::StronglyConvex: return "strongly_convex";
    case Theorem::Convex: return "convex";
    case Theorem::PL: return "pl";
    case Theorem::NonConvex: return "nonconvex";
    case Theorem::LinearSystem: return "linear_system";
    case Theorem::NonSmooth: return "nonsmooth";
  }
  return "unknown";
}

BoundCheckReport check_bound(const std::vector<Trajectory>& trajectories,
                             const BoundSpec& spec, Quantity quantity, double slack) {
  if (trajectories.size() < 2) {
    throw std::invalid_argument("check_bound: need at least 2 seeds for an "
                                "expectation estimate");
  }
  if (quantity != quantity_for(spec.theorem)) {
    throw std::invalid_argument(std::string("check_bound: quantity does not match "
                                            "theorem ") + theorem_name(spec.theorem));
  }
  if (slack < 0.0) throw std::invalid_argument("check_bound: negative slack");
  spec.validate();

  const auto& grid = trajectories.front().records;
  for (const auto& traj : trajectories) {
    if (traj.records.size() != grid.size()) {
      throw std::invalid_argument("check_bound: trajectories disagree on "
                                  "recording grid");
    }
    for (size_t r = 0; r < grid.size(); ++r) {
      if (traj.records[r].k != grid[r].k) {
        throw std::invalid_argument("check_bound: trajectories disagree on "
                                    "recorded iterations");
      }
    }
  }

  BoundCheckReport report;
  report.theorem_name = theorem_name(spec.theorem);
  report.pass = true;

  // Horizon-style bounds (and average-iterate quantities) are undefined at
  // k = 0; the per-iteration recursions start there.
  const bool per_iteration = spec.theorem == Theorem::StronglyConvex ||
                             spec.theorem == Theorem::PL ||
                             spec.theorem == Theorem::LinearSystem;

  std::vector<double> running_min(trajectories.size(), kInf);
  for (size_t r = 0; r < grid.size(); ++r) {
    const long k = grid[r].k;
    if (quantity == Quantity::MinGradSq) {
      for (size_t s = 0; s < trajectories.size(); ++s) {
        running_min[s] = std::min(running_min[s], trajectories[s].records[r].grad_norm_sq);
      }
    }
    // Horizon bounds (and the averaged iterate) are undefined at k = 0.
    if (k == 0 && !per_iteration) continue;

    double mean = 0.0;
    for (size_t s = 0; s < trajectories.size(); ++s) {
      const auto& rec = trajectories[s].records[r];
      double value = 0.0;
      switch (quantity) {
        case Quantity::DistSq:
          value = rec.dist_sq;
          break;
        case Quantity::Suboptimality:
          value = rec.loss - spec.constants.f_star;
          break;
        case Quantity::MinGradSq:
          value = running_min[s];
          break;
        case Quantity::AvgIterateSuboptimality:
          value = trajectories[s].avg_loss.at(r) - spec.constants.f_star;
          break;
      }
      if (std::isnan(value)) {
        throw std::invalid_argument("check_bound: quantity unavailable in "
                                    "trajectory records");
      }
      mean += value;
    }
    mean /= static_cast<double>(trajectories.size());
    const double bound = evaluate_bound(k, spec);
    report.margin_curve.push_back({k, mean, bound});
    if (mean > (1.0 + slack) * bound && report.pass) {
      report.pass = false;
      report.first_violation_k = k;
    }
  }
  return report;
}

std::string report_to_json(const BoundCheckReport& report, const BoundSpec& spec) {
  nlohmann::json j;
  j["theorem"] = report.theorem_name;
  j["pass"] = report.pass;
  j["first_violation_k"] = report.first_violation_k;
  j["constants"] = {
      {"mu", spec.constants.mu},
      {"L_max", spec.constants.l_max},
      {"L", spec.constants.l},
      {"sigma_sq", spec.constants.sigma_sq},
      {"G", spec.constants.g_bound},
      {"z_sq", spec.constants.z_sq},
      {"mu_min", spec.constants.mu_min},
      {"lambda_min_plus_W", spec.constants.lambda_min_plus_w},
      {"f_star", spec.constants.f_star},
      {"c", spec.c},
      {"gamma_b", spec.gamma_b},
      {"dist0_sq", spec.dist0_sq},
      {"f0_minus_fstar", spec.f0_minus_fstar},
  };
  auto curve = nlohmann::json::array();
  for (const auto& point : report.margin_curve) {
    curve.push_back({{"k", point.k}, {"mean", point.mean}, {"bound", point.bound}});
  }
  j["margin_curve"] = curve;
  return j.dump(2);
}

}  // namespace sps
