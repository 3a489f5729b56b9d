#ifndef SPS_EXPERIMENT_HPP
#define SPS_EXPERIMENT_HPP

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "sps/analysis.hpp"
#include "sps/engine.hpp"
#include "sps/io.hpp"
#include "sps/problem.hpp"
#include "sps/types.hpp"

namespace sps {

enum class ProblemKind {
  SyntheticClassification,
  LinearSystem,
  MatrixFactorization,
  LeastSquares,
  Hinge,
  FromFile,
};

/// Fully validated experiment description parsed from a sectioned config
/// file. Unknown sections or keys are rejected at parse time.
struct ExperimentConfig {
  // [problem]
  ProblemKind problem_kind = ProblemKind::LeastSquares;
  int n = 50;
  int d = 10;
  int m = 20;              // linear system rows
  int rank = 10;           // matrix factorization
  int num_samples = 200;   // matrix factorization
  double sparsity = 0.1;
  double lambda = 0.0;
  double noise = 0.0;
  double label_noise = 0.1;
  double cond_number = 1e10;
  double margin_min = 0.5;
  std::uint64_t problem_seed = 0;
  std::string problem_path;

  // [rule]
  StepSizeRule rule;

  // [run]
  std::vector<std::uint64_t> seeds{0};
  long iterations = 1000;
  long record_every = 1;
  BatchKind batch_kind = BatchKind::Fixed;
  int batch_size = 1;
  double batch_gamma_b = 0.0;  // schedule constant, not the rule cap
  InitKind init = InitKind::Zeros;
  double init_scale = 1.0;
  std::uint64_t init_seed = 1234;
  bool weighted_sampling = false;
  bool subgradient = false;

  // [check]
  std::optional<Theorem> check_theorem;
  double slack = 0.1;
  double rho = 0.0;
  double delta = 0.0;

  // [output]
  std::string output_dir = ".";
};

ExperimentConfig parse_experiment_config(const ConfigFile& file);

struct BuiltProblem {
  std::shared_ptr<FiniteSumProblem> problem;
  ProblemConstants constants;
  std::vector<double> weights;  // row probabilities when weighted sampling applies
  std::string description;
};

/// Instantiates the configured problem and runs its exact-solution oracle.
/// For linear systems the oracle needs the start point (x* is the
/// projection of x0 onto the solution set).
BuiltProblem build_problem(const ExperimentConfig& config);

Vector experiment_x0(const ExperimentConfig& config, int dim);

struct ExperimentResult {
  BuiltProblem built;
  Vector x0;
  std::vector<Trajectory> trajectories;  // one per seed, in config order
  RunConfig run_config;                  // seed field varies per trajectory
};

/// Runs the configured seed sweep; jobs > 1 fans runs out over threads
/// (each run owns its sampler and trajectory, nothing is shared).
ExperimentResult run_experiment(const ExperimentConfig& config, int jobs = 1);

/// Assembles the bound spec for the configured check from the exact
/// constants and the run geometry.
BoundSpec make_bound_spec(const ExperimentConfig& config, const BuiltProblem& built,
                          const Vector& x0);

// Problem text serialization (matrix-market style blocks).
std::string problem_to_text(const BuiltProblem& built, const ExperimentConfig& config);
std::shared_ptr<FiniteSumProblem> problem_from_text(const std::string& text);

}  // namespace sps

#endif  // SPS_EXPERIMENT_HPP
