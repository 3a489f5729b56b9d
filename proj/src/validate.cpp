#include "sps/validate.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "sps/sampler.hpp"

namespace sps {

namespace {

Vector random_probe(CounterRng& rng, int dim, double scale) {
  Vector x(dim);
  for (int j = 0; j < dim; ++j) x[j] = scale * rng.next_gaussian();
  return x;
}

double rel_diff(double a, double b) {
  const double denom = std::max({std::abs(a), std::abs(b), 1.0});
  return std::abs(a - b) / denom;
}

}  // namespace

std::vector<ValidationIssue> validate_problem(const FiniteSumProblem& problem,
                                              const ValidationOptions& opts) {
  std::vector<ValidationIssue> issues;
  const int n = problem.num_components();
  const int d = problem.dim();
  CounterRng rng(opts.seed);

  std::vector<int> components(n);
  for (int i = 0; i < n; ++i) components[i] = i;
  if (n > opts.max_components_checked) {
    components.resize(opts.max_components_checked);
    for (int& c : components) c = static_cast<int>(rng.next_below(n));
  }

  for (int p = 0; p < opts.num_probes; ++p) {
    const Vector x = random_probe(rng, d, opts.probe_scale);

    // Declared infima must lower-bound the probed values.
    for (int i : components) {
      const double v = problem.component_value(i, x);
      const double inf = problem.component_infimum(i);
      const double tol = 1e-10 * (1.0 + std::abs(v));
      if (v < inf - tol) {
        ValidationIssue issue;
        issue.kind = ValidationIssue::Kind::InfimumViolated;
        issue.component = i;
        issue.probe = x;
        issue.detail = inf - v;
        std::ostringstream msg;
        msg << "component " << i << ": declared infimum " << inf
            << " exceeds probed value " << v;
        issue.message = msg.str();
        issues.push_back(std::move(issue));
      }
    }

    // full_value must be the component mean up to accumulation error.
    {
      double sum = 0.0;
      for (int i = 0; i < n; ++i) sum += problem.component_value(i, x);
      const double mean = sum / n;
      const double fv = problem.full_value(x);
      if (std::abs(fv - mean) > 1e-12 * n * std::max(1.0, std::abs(mean))) {
        ValidationIssue issue;
        issue.kind = ValidationIssue::Kind::FullValueMismatch;
        issue.probe = x;
        issue.detail = std::abs(fv - mean);
        issue.message = "full_value deviates from the component mean";
        issues.push_back(std::move(issue));
      }
    }

    if (!problem.is_smooth()) continue;

    // Component gradients against central differences along random
    // directions (cheap directional check per component).
    for (int i : components) {
      const Vector g = problem.component_gradient(i, x);
      for (int trial = 0; trial < 3; ++trial) {
        Vector u = random_probe(rng, d, 1.0);
        u.normalize();
        const double h = opts.fd_step;
        const double fd = (problem.component_value(i, x + h * u) -
                           problem.component_value(i, x - h * u)) /
                          (2.0 * h);
        const double analytic = g.dot(u);
        if (rel_diff(fd, analytic) > opts.fd_rel_tol) {
          ValidationIssue issue;
          issue.kind = ValidationIssue::Kind::GradientMismatch;
          issue.component = i;
          issue.probe = x;
          issue.detail = rel_diff(fd, analytic);
          std::ostringstream msg;
          msg << "component " << i << ": directional derivative " << analytic
              << " vs central difference " << fd;
          issue.message = msg.str();
          issues.push_back(std::move(issue));
          break;
        }
      }
    }

    // Full gradient against per-coordinate central differences.
    {
      const Vector g = problem.full_gradient(x);
      const double h = opts.fd_step;
      const double gnorm = std::max(g.norm(), 1.0);
      for (int j = 0; j < d; ++j) {
        Vector e = Vector::Zero(d);
        e[j] = h;
        const double fd = (problem.full_value(x + e) - problem.full_value(x - e)) / (2.0 * h);
        if (std::abs(fd - g[j]) / gnorm > opts.fd_rel_tol) {
          ValidationIssue issue;
          issue.kind = ValidationIssue::Kind::GradientMismatch;
          issue.probe = x;
          issue.detail = std::abs(fd - g[j]) / gnorm;
          std::ostringstream msg;
          msg << "full gradient coordinate " << j << ": " << g[j]
              << " vs central difference " << fd;
          issue.message = msg.str();
          issues.push_back(std::move(issue));
          break;
        }
      }
    }
  }

  return issues;
}

std::string format_report(const std::vector<ValidationIssue>& issues) {
  if (issues.empty()) return "ok";
  std::ostringstream out;
  out << issues.size() << " issue(s):\n";
  for (const auto& issue : issues) out << "  - " << issue.message << "\n";
  return out.str();
}

}  // namespace sps
