#ifndef SPS_TYPES_HPP
#define SPS_TYPES_HPP

#include <cstdint>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Core>

namespace sps {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

inline constexpr double kInf = std::numeric_limits<double>::infinity();

/// Curvature class declared by a problem. StronglyConvex and PL carry the
/// modulus mu; NonConvex optionally carries growth-condition constants
/// (rho, delta), which are estimates unless stated otherwise.
enum class Convexity { StronglyConvex, Convex, PL, NonConvex };

struct ConvexityInfo {
  Convexity kind = Convexity::Convex;
  double mu = 0.0;     // strong-convexity / PL modulus, when applicable
  double rho = 0.0;    // growth-condition constants, when applicable
  double delta = 0.0;

  static ConvexityInfo strongly_convex(double mu) {
    return {Convexity::StronglyConvex, mu, 0.0, 0.0};
  }
  static ConvexityInfo convex() { return {Convexity::Convex, 0.0, 0.0, 0.0}; }
  static ConvexityInfo pl(double mu) { return {Convexity::PL, mu, 0.0, 0.0}; }
  static ConvexityInfo nonconvex(double rho = 0.0, double delta = 0.0) {
    return {Convexity::NonConvex, 0.0, rho, delta};
  }
};

/// Per-component smoothness constants. l_max must equal max(per_component).
struct SmoothnessInfo {
  std::vector<double> per_component;
  double l_max = 0.0;
};

/// Problem-level constants used by the bound evaluators. Filled by the
/// exact-solution oracles; fields that are unknown stay at zero (or an
/// empty x_star) and the consumers check for presence.
struct ProblemConstants {
  double mu = 0.0;                // strong-convexity / PL modulus of f
  double l_max = 0.0;             // max over component smoothness constants
  double l = 0.0;                 // smoothness of the averaged objective
  double sigma_sq = 0.0;          // f(x*) - mean_i f_i*
  double g_bound = 0.0;           // subgradient norm bound G
  double z_sq = 0.0;              // gradient variance at the optimum
  double mu_min = 0.0;            // min per-component strong convexity
  double lambda_min_plus_w = 0.0; // linear-system rate constant
  Vector x_star;                  // empty when unknown
  double f_star = 0.0;

  bool has_x_star() const { return x_star.size() > 0; }
};

/// One recorded iteration. `indices` is the sampled batch (empty for a
/// deterministic full pass), `gamma` the step actually taken (0 when the
/// iterate did not move), `dist_sq` is NaN when x* is unknown.
struct TrajectoryRecord {
  long k = 0;
  std::vector<int> indices;
  double gamma = 0.0;
  double dist_sq = std::numeric_limits<double>::quiet_NaN();
  double loss = 0.0;
  double grad_norm_sq = 0.0;
  int batch_size = 1;

  bool operator==(const TrajectoryRecord&) const = default;
};

struct Trajectory {
  std::vector<TrajectoryRecord> records;
  // Objective value at the running-average iterate, one entry per record
  // (NaN at k = 0). Derived data; not part of the CSV schema.
  std::vector<double> avg_loss;
  Vector final_iterate;
  Vector average_iterate;  // mean of x^0..x^{K-1}

  void append(TrajectoryRecord rec);
};

enum class StepKind { Sps, SpsMax, SmoothedSpsMax, Constant, DeterministicPolyak };

/// Tagged step-size rule configuration. Only the parameters of the active
/// kind are meaningful.
struct StepSizeRule {
  StepKind kind = StepKind::Sps;
  double c = 0.5;
  double gamma_b = kInf;        // cap for SpsMax
  double gamma_b_init = 1.0;    // initial cap for SmoothedSpsMax
  double tau = 2.0;             // smoothing base, > 1
  double gamma = 0.1;           // Constant

  static StepSizeRule sps(double c) {
    StepSizeRule r; r.kind = StepKind::Sps; r.c = c; return r;
  }
  static StepSizeRule sps_max(double c, double gamma_b) {
    StepSizeRule r; r.kind = StepKind::SpsMax; r.c = c; r.gamma_b = gamma_b; return r;
  }
  static StepSizeRule smoothed_sps_max(double c, double gamma_b_init, double tau) {
    StepSizeRule r; r.kind = StepKind::SmoothedSpsMax; r.c = c;
    r.gamma_b_init = gamma_b_init; r.tau = tau; return r;
  }
  static StepSizeRule constant(double gamma) {
    StepSizeRule r; r.kind = StepKind::Constant; r.gamma = gamma; return r;
  }
  static StepSizeRule deterministic_polyak() {
    StepSizeRule r; r.kind = StepKind::DeterministicPolyak; return r;
  }

  void validate() const;
  bool operator==(const StepSizeRule&) const = default;
};

enum class BatchKind { Fixed, StronglyConvexSchedule, PlSchedule };

/// Batch-size policy. The increasing schedules need the listed problem
/// constants; next_batch_size rejects a schedule with missing ones.
struct BatchSchedule {
  BatchKind kind = BatchKind::Fixed;
  int fixed_b = 1;
  double gamma_b = 0.0;
  double z_sq = 0.0;
  double mu_min = 0.0;
  double mu = 0.0;
  double l_max = 0.0;
  double l = 0.0;
  double c = 0.0;
  double v = 0.0;  // PL schedule rate constant

  static BatchSchedule fixed(int b) {
    BatchSchedule s; s.kind = BatchKind::Fixed; s.fixed_b = b; return s;
  }

  bool operator==(const BatchSchedule&) const = default;
};

enum class InitKind { Zeros, Ones, Gaussian };

/// The unit of reproducibility: (RunConfig, problem) determines a
/// trajectory bit-for-bit.
struct RunConfig {
  std::uint64_t seed = 0;
  long iterations = 0;
  BatchSchedule batch_schedule;
  StepSizeRule step_rule;
  long record_every = 1;
  InitKind init = InitKind::Zeros;
  double init_scale = 1.0;  // gaussian init only

  void validate() const;
  bool operator==(const RunConfig&) const = default;
};

/// Thrown when an iterate leaves the representable range.
class NumericalAbort : public std::runtime_error {
 public:
  NumericalAbort(const std::string& what, long iteration)
      : std::runtime_error(what), iteration(iteration) {}
  long iteration;
};

/// Thrown when a component reports a vanishing gradient but a positive gap
/// to its declared infimum.
class OracleInconsistency : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace sps

#endif  // SPS_TYPES_HPP
