#include "sps/experiment.hpp"

#include <atomic>
#include <cmath>
#include <mutex>
#include <set>
#include <sstream>
#include <thread>

#include "sps/problems/classification.hpp"
#include "sps/problems/linear_system.hpp"
#include "sps/problems/matrix_factorization.hpp"
#include "sps/problems/solve_exact.hpp"
#include "sps/sampler.hpp"
#include "sps/validate.hpp"

namespace sps {

namespace {

const std::map<std::string, std::set<std::string>>& allowed_keys() {
  static const std::map<std::string, std::set<std::string>> keys = {
      {"problem",
       {"kind", "n", "d", "m", "rank", "samples", "sparsity", "lambda", "noise",
        "label_noise", "cond", "margin_min", "seed", "path"}},
      {"rule", {"kind", "c", "gamma_b", "gamma_b_init", "tau", "gamma"}},
      {"run",
       {"seeds", "iterations", "record_every", "batch", "batch_size",
        "batch_gamma_b", "init", "init_scale", "init_seed", "sampler",
        "subgradient"}},
      {"check", {"theorem", "slack", "rho", "delta"}},
      {"output", {"dir"}},
  };
  return keys;
}

ProblemKind problem_kind_from(const std::string& name) {
  if (name == "synthetic_classification") return ProblemKind::SyntheticClassification;
  if (name == "linear_system") return ProblemKind::LinearSystem;
  if (name == "matrix_factorization") return ProblemKind::MatrixFactorization;
  if (name == "least_squares") return ProblemKind::LeastSquares;
  if (name == "hinge") return ProblemKind::Hinge;
  if (name == "file") return ProblemKind::FromFile;
  throw std::invalid_argument("unknown problem kind: " + name);
}

Theorem theorem_from(const std::string& name) {
  if (name == "strongly_convex") return Theorem::StronglyConvex;
  if (name == "convex") return Theorem::Convex;
  if (name == "pl") return Theorem::PL;
  if (name == "nonconvex") return Theorem::NonConvex;
  if (name == "linear_system") return Theorem::LinearSystem;
  if (name == "nonsmooth") return Theorem::NonSmooth;
  throw std::invalid_argument("unknown theorem: " + name);
}

bool parse_bool(const std::string& value, const std::string& what) {
  if (value == "true" || value == "1") return true;
  if (value == "false" || value == "0") return false;
  throw std::invalid_argument("cannot parse '" + value + "' as bool for " + what);
}

}  // namespace

ExperimentConfig parse_experiment_config(const ConfigFile& file) {
  for (const auto& [section, kv] : file.sections) {
    const auto known = allowed_keys().find(section);
    if (known == allowed_keys().end()) {
      throw std::invalid_argument("config: unknown section [" + section + "]");
    }
    for (const auto& [key, value] : kv) {
      if (!known->second.count(key)) {
        throw std::invalid_argument("config: unknown key '" + key + "' in [" +
                                    section + "]");
      }
    }
  }

  ExperimentConfig cfg;
  cfg.problem_kind = problem_kind_from(file.get("problem", "kind"));
  if (file.has("problem", "n")) cfg.n = static_cast<int>(parse_long(file.get("problem", "n"), "n"));
  if (file.has("problem", "d")) cfg.d = static_cast<int>(parse_long(file.get("problem", "d"), "d"));
  if (file.has("problem", "m")) cfg.m = static_cast<int>(parse_long(file.get("problem", "m"), "m"));
  if (file.has("problem", "rank")) cfg.rank = static_cast<int>(parse_long(file.get("problem", "rank"), "rank"));
  if (file.has("problem", "samples")) {
    cfg.num_samples = static_cast<int>(parse_long(file.get("problem", "samples"), "samples"));
  }
  if (file.has("problem", "sparsity")) cfg.sparsity = parse_double(file.get("problem", "sparsity"), "sparsity");
  if (file.has("problem", "lambda")) cfg.lambda = parse_double(file.get("problem", "lambda"), "lambda");
  if (file.has("problem", "noise")) cfg.noise = parse_double(file.get("problem", "noise"), "noise");
  if (file.has("problem", "label_noise")) {
    cfg.label_noise = parse_double(file.get("problem", "label_noise"), "label_noise");
  }
  if (file.has("problem", "cond")) cfg.cond_number = parse_double(file.get("problem", "cond"), "cond");
  if (file.has("problem", "margin_min")) {
    cfg.margin_min = parse_double(file.get("problem", "margin_min"), "margin_min");
  }
  if (file.has("problem", "seed")) cfg.problem_seed = parse_u64(file.get("problem", "seed"), "seed");
  if (file.has("problem", "path")) cfg.problem_path = file.get("problem", "path");
  if (cfg.problem_kind == ProblemKind::FromFile && cfg.problem_path.empty()) {
    throw std::invalid_argument("config: problem kind 'file' needs a path");
  }

  const std::string rule_kind = file.get("rule", "kind");
  cfg.rule.kind = [&] {
    if (rule_kind == "sps") return StepKind::Sps;
    if (rule_kind == "sps_max") return StepKind::SpsMax;
    if (rule_kind == "smoothed_sps_max") return StepKind::SmoothedSpsMax;
    if (rule_kind == "constant") return StepKind::Constant;
    if (rule_kind == "deterministic_polyak") return StepKind::DeterministicPolyak;
    throw std::invalid_argument("unknown rule kind: " + rule_kind);
  }();
  if (file.has("rule", "c")) cfg.rule.c = parse_double(file.get("rule", "c"), "c");
  if (file.has("rule", "gamma_b")) cfg.rule.gamma_b = parse_double(file.get("rule", "gamma_b"), "gamma_b");
  if (file.has("rule", "gamma_b_init")) {
    cfg.rule.gamma_b_init = parse_double(file.get("rule", "gamma_b_init"), "gamma_b_init");
  }
  if (file.has("rule", "tau")) cfg.rule.tau = parse_double(file.get("rule", "tau"), "tau");
  if (file.has("rule", "gamma")) cfg.rule.gamma = parse_double(file.get("rule", "gamma"), "gamma");
  cfg.rule.validate();

  if (file.has("run", "seeds")) cfg.seeds = parse_seed_list(file.get("run", "seeds"));
  if (file.has("run", "iterations")) cfg.iterations = parse_long(file.get("run", "iterations"), "iterations");
  if (file.has("run", "record_every")) {
    cfg.record_every = parse_long(file.get("run", "record_every"), "record_every");
  }
  if (file.has("run", "batch")) {
    const std::string batch = file.get("run", "batch");
    if (batch == "fixed") cfg.batch_kind = BatchKind::Fixed;
    else if (batch == "strongly_convex") cfg.batch_kind = BatchKind::StronglyConvexSchedule;
    else if (batch == "pl") cfg.batch_kind = BatchKind::PlSchedule;
    else throw std::invalid_argument("unknown batch schedule: " + batch);
  }
  if (file.has("run", "batch_size")) {
    cfg.batch_size = static_cast<int>(parse_long(file.get("run", "batch_size"), "batch_size"));
  }
  if (file.has("run", "batch_gamma_b")) {
    cfg.batch_gamma_b = parse_double(file.get("run", "batch_gamma_b"), "batch_gamma_b");
  }
  if (file.has("run", "init")) {
    const std::string init = file.get("run", "init");
    if (init == "zeros") cfg.init = InitKind::Zeros;
    else if (init == "ones") cfg.init = InitKind::Ones;
    else if (init == "gaussian") cfg.init = InitKind::Gaussian;
    else throw std::invalid_argument("unknown init: " + init);
  }
  if (file.has("run", "init_scale")) cfg.init_scale = parse_double(file.get("run", "init_scale"), "init_scale");
  if (file.has("run", "init_seed")) cfg.init_seed = parse_u64(file.get("run", "init_seed"), "init_seed");
  if (file.has("run", "sampler")) {
    const std::string sampler = file.get("run", "sampler");
    if (sampler == "uniform") cfg.weighted_sampling = false;
    else if (sampler == "row_weighted") cfg.weighted_sampling = true;
    else throw std::invalid_argument("unknown sampler: " + sampler);
  }
  if (file.has("run", "subgradient")) {
    cfg.subgradient = parse_bool(file.get("run", "subgradient"), "subgradient");
  }

  if (file.has("check", "theorem")) {
    cfg.check_theorem = theorem_from(file.get("check", "theorem"));
  }
  if (file.has("check", "slack")) cfg.slack = parse_double(file.get("check", "slack"), "slack");
  if (file.has("check", "rho")) cfg.rho = parse_double(file.get("check", "rho"), "rho");
  if (file.has("check", "delta")) cfg.delta = parse_double(file.get("check", "delta"), "delta");

  if (file.has("output", "dir")) cfg.output_dir = file.get("output", "dir");

  if (cfg.weighted_sampling && cfg.problem_kind != ProblemKind::LinearSystem) {
    throw std::invalid_argument("row-weighted sampling applies to linear systems only");
  }
  if (cfg.seeds.empty()) throw std::invalid_argument("config: empty seed list");
  return cfg;
}

Vector experiment_x0(const ExperimentConfig& config, int dim) {
  // The start point is shared by every seed of a sweep (the bound checks
  // reference a single ||x0 - x*||^2), so gaussian init draws from the
  // dedicated init_seed rather than the run seeds.
  RunConfig rc;
  rc.seed = config.init_seed;
  rc.init = config.init;
  rc.init_scale = config.init_scale;
  return initial_iterate(dim, rc);
}

BuiltProblem build_problem(const ExperimentConfig& config) {
  BuiltProblem built;
  switch (config.problem_kind) {
    case ProblemKind::SyntheticClassification: {
      SyntheticOptions opts;
      opts.label_noise = config.label_noise;
      auto problem = std::make_shared<ErmProblem>(generate_synthetic_classification(
          config.n, config.d, config.sparsity, config.lambda, config.problem_seed, opts));
      built.constants = solve_exact(*problem);
      built.problem = std::move(problem);
      built.description = "synthetic_classification";
      break;
    }
    case ProblemKind::LeastSquares: {
      auto problem = std::make_shared<ErmProblem>(generate_least_squares(
          config.n, config.d, config.lambda, config.noise, config.problem_seed));
      built.constants = solve_exact(*problem);
      built.problem = std::move(problem);
      built.description = "least_squares";
      break;
    }
    case ProblemKind::LinearSystem: {
      auto problem = std::make_shared<LinearSystemProblem>(
          generate_linear_system(config.m, config.d, config.problem_seed));
      built.constants = solve_exact(*problem, experiment_x0(config, problem->dim()));
      built.weights = problem->row_probabilities();
      built.problem = std::move(problem);
      built.description = "linear_system";
      break;
    }
    case ProblemKind::MatrixFactorization: {
      auto problem = std::make_shared<MatrixFactorizationProblem>(
          generate_matrix_factorization(config.rank, config.num_samples,
                                        config.cond_number, config.problem_seed));
      built.problem = std::move(problem);
      built.description = "matrix_factorization";
      break;
    }
    case ProblemKind::Hinge: {
      HingeInstance instance = generate_separable_hinge(config.n, config.d,
                                                        config.margin_min,
                                                        config.problem_seed);
      built.constants.x_star = instance.x_star;
      built.constants.f_star = 0.0;
      built.constants.sigma_sq = 0.0;
      built.constants.g_bound = instance.g_bound;
      built.problem = instance.problem;
      built.description = "hinge";
      break;
    }
    case ProblemKind::FromFile: {
      built.problem = problem_from_text(read_file(config.problem_path));
      if (auto erm = std::dynamic_pointer_cast<ErmProblem>(built.problem)) {
        if (erm->family() == LossFamily::Squared || erm->family() == LossFamily::Logistic) {
          built.constants = solve_exact(*erm);
        }
      } else if (auto lin = std::dynamic_pointer_cast<LinearSystemProblem>(built.problem)) {
        built.constants = solve_exact(*lin, experiment_x0(config, lin->dim()));
        built.weights = lin->row_probabilities();
      }
      built.description = "file:" + config.problem_path;
      break;
    }
  }
  return built;
}

namespace {

BatchSchedule make_schedule(const ExperimentConfig& config, const BuiltProblem& built) {
  if (config.batch_kind == BatchKind::Fixed) {
    return BatchSchedule::fixed(config.batch_size);
  }
  const ProblemConstants& k = built.constants;
  BatchSchedule schedule;
  schedule.kind = config.batch_kind;
  schedule.gamma_b = config.batch_gamma_b;
  schedule.z_sq = k.z_sq;
  schedule.mu_min = k.mu_min;
  schedule.mu = k.mu;
  schedule.l_max = k.l_max;
  schedule.l = k.l;
  schedule.c = config.rule.c;
  if (config.batch_kind == BatchKind::PlSchedule) {
    // v = 1 - gamma_cap (1/alpha - 2 mu + L_max/(2c)) with the rule's cap;
    // an uncapped rule falls back to the schedule constant.
    const double cap = std::isfinite(config.rule.gamma_b) ? config.rule.gamma_b
                                                          : config.batch_gamma_b;
    const double alpha = std::min(1.0 / (2.0 * config.rule.c * k.l_max), cap);
    schedule.v = 1.0 - cap * (1.0 / alpha - 2.0 * k.mu + k.l_max / (2.0 * config.rule.c));
  }
  return schedule;
}

}  // namespace

ExperimentResult run_experiment(const ExperimentConfig& config, int jobs) {
  ExperimentResult result;
  result.built = build_problem(config);
  const FiniteSumProblem& problem = *result.built.problem;
  result.x0 = experiment_x0(config, problem.dim());

  RunConfig rc;
  rc.iterations = config.iterations;
  rc.record_every = config.record_every;
  rc.step_rule = config.rule;
  rc.batch_schedule = make_schedule(config, result.built);
  rc.init = config.init;
  rc.init_scale = config.init_scale;
  rc.validate();
  result.run_config = rc;

  OracleInfo oracle;
  if (result.built.constants.has_x_star()) {
    oracle.x_star = result.built.constants.x_star;
    oracle.f_star = result.built.constants.f_star;
  }

  result.trajectories.resize(config.seeds.size());
  std::atomic<size_t> cursor{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;

  auto worker = [&]() {
    while (true) {
      const size_t i = cursor.fetch_add(1);
      if (i >= config.seeds.size()) return;
      try {
        RunConfig local = rc;
        local.seed = config.seeds[i];
        Sampler sampler = config.weighted_sampling
                              ? Sampler::weighted(result.built.weights, local.seed)
                              : Sampler::uniform(local.seed);
        result.trajectories[i] =
            config.subgradient
                ? run_subgradient(problem, local.step_rule, sampler, local,
                                  result.x0, oracle)
                : run_sgd(problem, local.step_rule, sampler, local.batch_schedule,
                          local, result.x0, oracle);
      } catch (...) {
        std::lock_guard<std::mutex> lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        return;
      }
    }
  };

  const int threads = std::max(1, jobs);
  if (threads == 1 || config.seeds.size() == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < threads - 1; ++t) pool.emplace_back(worker);
    worker();
    for (auto& th : pool) th.join();
  }
  if (failure) std::rethrow_exception(failure);
  return result;
}

BoundSpec make_bound_spec(const ExperimentConfig& config, const BuiltProblem& built,
                          const Vector& x0) {
  if (!config.check_theorem) {
    throw std::invalid_argument("config has no [check] theorem");
  }
  BoundSpec spec;
  spec.theorem = *config.check_theorem;
  spec.constants = built.constants;
  spec.c = config.rule.c;
  switch (config.rule.kind) {
    case StepKind::Sps:
      spec.gamma_b = kInf;
      break;
    case StepKind::SpsMax:
      spec.gamma_b = config.rule.gamma_b;
      break;
    case StepKind::Constant:
      // Constant-step SGD is the gamma_b <= 1/(2cL_max) reduction.
      spec.gamma_b = config.rule.gamma;
      break;
    default:
      throw std::invalid_argument("bound checks support sps, sps_max and constant rules");
  }
  spec.rho = config.rho;
  spec.delta = config.delta;
  if (built.constants.has_x_star()) {
    spec.dist0_sq = (x0 - built.constants.x_star).squaredNorm();
    spec.f0_minus_fstar = built.problem->full_value(x0) - built.constants.f_star;
  } else if (spec.theorem != Theorem::NonConvex) {
    throw std::invalid_argument("bound check needs the exact solution x*");
  } else {
    spec.f0_minus_fstar = built.problem->full_value(x0) - built.constants.f_star;
  }
  spec.validate();
  return spec;
}

std::string problem_to_text(const BuiltProblem& built, const ExperimentConfig& config) {
  std::ostringstream out;
  if (auto erm = std::dynamic_pointer_cast<ErmProblem>(built.problem)) {
    out << "kind erm\n";
    const char* family = "";
    switch (erm->family()) {
      case LossFamily::Logistic: family = "logistic"; break;
      case LossFamily::Exponential: family = "exponential"; break;
      case LossFamily::Squared: family = "squared"; break;
      case LossFamily::Hinge: family = "hinge"; break;
    }
    out << "family " << family << "\n";
    out << "lambda " << format_double(erm->l2_lambda()) << "\n";
    write_matrix(out, "features", erm->features());
    write_vector(out, "labels", erm->labels());
    return out.str();
  }
  if (auto lin = std::dynamic_pointer_cast<LinearSystemProblem>(built.problem)) {
    out << "kind linear_system\n";
    write_matrix(out, "A", lin->a());
    write_vector(out, "b", lin->b());
    return out.str();
  }
  if (auto mf = std::dynamic_pointer_cast<MatrixFactorizationProblem>(built.problem)) {
    out << "kind matrix_factorization\n";
    out << "rank " << mf->rank() << "\n";
    write_matrix(out, "A", mf->a());
    write_matrix(out, "samples", mf->samples());
    return out.str();
  }
  (void)config;
  throw std::invalid_argument("problem kind does not serialize");
}

namespace {

Matrix read_matrix_block(std::istream& in, const std::string& name) {
  std::string token, type;
  Eigen::Index rows = 0, cols = 0;
  in >> token >> type >> rows >> cols;
  if (token != name || type != "matrix" || rows < 1 || cols < 1) {
    throw std::invalid_argument("problem file: expected matrix block '" + name + "'");
  }
  Matrix m(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i)
    for (Eigen::Index j = 0; j < cols; ++j)
      if (!(in >> m(i, j))) throw std::invalid_argument("problem file: truncated matrix");
  return m;
}

Vector read_vector_block(std::istream& in, const std::string& name) {
  std::string token, type;
  Eigen::Index size = 0;
  in >> token >> type >> size;
  if (token != name || type != "vector" || size < 1) {
    throw std::invalid_argument("problem file: expected vector block '" + name + "'");
  }
  Vector v(size);
  for (Eigen::Index i = 0; i < size; ++i)
    if (!(in >> v[i])) throw std::invalid_argument("problem file: truncated vector");
  return v;
}

}  // namespace

std::shared_ptr<FiniteSumProblem> problem_from_text(const std::string& text) {
  std::istringstream in(text);
  std::string token, kind;
  in >> token >> kind;
  if (token != "kind") throw std::invalid_argument("problem file: missing kind");
  if (kind == "erm") {
    std::string family_name;
    double lambda = 0.0;
    in >> token >> family_name;
    if (token != "family") throw std::invalid_argument("problem file: missing family");
    in >> token >> lambda;
    if (token != "lambda") throw std::invalid_argument("problem file: missing lambda");
    LossFamily family;
    if (family_name == "logistic") family = LossFamily::Logistic;
    else if (family_name == "exponential") family = LossFamily::Exponential;
    else if (family_name == "squared") family = LossFamily::Squared;
    else if (family_name == "hinge") family = LossFamily::Hinge;
    else throw std::invalid_argument("problem file: unknown family " + family_name);
    Matrix features = read_matrix_block(in, "features");
    Vector labels = read_vector_block(in, "labels");
    const ConvexityInfo convexity = lambda > 0.0 ? ConvexityInfo::strongly_convex(lambda)
                                                 : ConvexityInfo::convex();
    return std::make_shared<ErmProblem>(family, std::move(features), std::move(labels),
                                        lambda, convexity);
  }
  if (kind == "linear_system") {
    Matrix a = read_matrix_block(in, "A");
    Vector b = read_vector_block(in, "b");
    return std::make_shared<LinearSystemProblem>(std::move(a), std::move(b));
  }
  if (kind == "matrix_factorization") {
    int rank = 0;
    in >> token >> rank;
    if (token != "rank") throw std::invalid_argument("problem file: missing rank");
    Matrix a = read_matrix_block(in, "A");
    Matrix samples = read_matrix_block(in, "samples");
    return std::make_shared<MatrixFactorizationProblem>(std::move(a), rank,
                                                        std::move(samples));
  }
  throw std::invalid_argument("problem file: unknown kind " + kind);
}

}  // namespace sps
