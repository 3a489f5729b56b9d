#include <filesystem>
#include <iostream>

#include <CLI11.hpp>
#include <json.hpp>

#include "sps/experiment.hpp"
#include "sps/losses.hpp"
#include "sps/validate.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitValidation = 1;
constexpr int kExitNumerical = 2;

std::string constants_json(const sps::ProblemConstants& k) {
  nlohmann::json j = {
      {"mu", k.mu},           {"L_max", k.l_max},
      {"L", k.l},             {"sigma_sq", k.sigma_sq},
      {"G", k.g_bound},       {"z_sq", k.z_sq},
      {"mu_min", k.mu_min},   {"lambda_min_plus_W", k.lambda_min_plus_w},
      {"f_star", k.f_star},
  };
  if (k.has_x_star()) {
    j["x_star"] = std::vector<double>(k.x_star.data(), k.x_star.data() + k.x_star.size());
  }
  return j.dump();
}

int cmd_run(const std::string& config_path, const std::string& out_override, int jobs) {
  const std::string config_text = sps::read_file(config_path);
  const sps::ExperimentConfig cfg =
      sps::parse_experiment_config(sps::parse_config(config_text));
  const std::string out_dir = out_override.empty() ? cfg.output_dir : out_override;
  std::filesystem::create_directories(out_dir);

  sps::ExperimentResult result = sps::run_experiment(cfg, jobs);

  const auto issues = sps::validate_problem(*result.built.problem);
  if (!issues.empty()) {
    std::cerr << "problem failed validation:\n" << sps::format_report(issues);
    return kExitValidation;
  }

  for (size_t i = 0; i < cfg.seeds.size(); ++i) {
    const std::string path =
        out_dir + "/traj_seed" + std::to_string(cfg.seeds[i]) + ".csv";
    sps::write_trajectory_csv(result.trajectories[i], path);
  }

  nlohmann::json manifest;
  manifest["config_hash"] = sps::fnv1a_hex(config_text);
  manifest["problem"] = result.built.description;
  manifest["constants"] = nlohmann::json::parse(constants_json(result.built.constants));
  manifest["seeds"] = cfg.seeds;
  manifest["run_config"] = sps::run_config_to_kv(result.run_config);
  sps::write_file(out_dir + "/manifest.json", manifest.dump(2));
  std::cout << "wrote " << cfg.seeds.size() << " trajectories to " << out_dir << "\n";
  return kExitOk;
}

int cmd_check(const std::string& config_path, const std::string& out_override, int jobs) {
  const sps::ExperimentConfig cfg =
      sps::parse_experiment_config(sps::read_config_file(config_path));
  const std::string out_dir = out_override.empty() ? cfg.output_dir : out_override;
  std::filesystem::create_directories(out_dir);

  sps::ExperimentResult result = sps::run_experiment(cfg, jobs);
  const sps::BoundSpec spec = sps::make_bound_spec(cfg, result.built, result.x0);
  const sps::BoundCheckReport report = sps::check_bound(
      result.trajectories, spec, sps::quantity_for(spec.theorem), cfg.slack);

  sps::write_file(out_dir + "/report.json", sps::report_to_json(report, spec));
  if (report.pass) {
    std::cout << "PASS " << report.theorem_name << "\n";
    return kExitOk;
  }
  std::cout << "FAIL " << report.theorem_name << " first violation at k = "
            << report.first_violation_k << "\n";
  return kExitValidation;
}

int cmd_gen(const std::string& config_path, const std::string& out_path) {
  const sps::ExperimentConfig cfg =
      sps::parse_experiment_config(sps::read_config_file(config_path));
  const sps::BuiltProblem built = sps::build_problem(cfg);
  const auto issues = sps::validate_problem(*built.problem);
  if (!issues.empty()) {
    std::cerr << "generated problem failed validation:\n" << sps::format_report(issues);
    return kExitValidation;
  }
  const std::string path = out_path.empty() ? cfg.output_dir + "/problem.txt" : out_path;
  sps::write_file(path, sps::problem_to_text(built, cfg));
  std::cout << "wrote " << built.description << " to " << path << "\n";
  return kExitOk;
}

int cmd_fistar(const std::string& family, double norm_z, double lambda) {
  std::pair<double, double> result;
  if (family == "logistic") {
    result = sps::fi_star_logistic_l2(norm_z, lambda);
  } else if (family == "exponential") {
    result = sps::fi_star_exponential_l2(norm_z, lambda);
  } else {
    std::cerr << "family must be 'logistic' or 'exponential'\n";
    return kExitValidation;
  }
  std::cout << "alpha_star = " << sps::format_double(result.first) << "\n"
            << "fi_star = " << sps::format_double(result.second) << "\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Stochastic Polyak step-size experiment runner"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_dir;
  int jobs = 1;

  auto* run = app.add_subcommand("run", "run a seed sweep and write trajectory CSVs");
  run->add_option("--config", config_path, "experiment config file")->required();
  run->add_option("--out", out_dir, "output directory (overrides [output] dir)");
  run->add_option("--jobs", jobs, "concurrent runs");

  auto* check = app.add_subcommand("check", "run an ensemble and verify a bound");
  check->add_option("--config", config_path, "experiment config file")->required();
  check->add_option("--out", out_dir, "output directory (overrides [output] dir)");
  check->add_option("--jobs", jobs, "concurrent runs");

  auto* gen = app.add_subcommand("gen", "generate a problem and write it to a file");
  gen->add_option("--config", config_path, "experiment config file")->required();
  gen->add_option("--out", out_dir, "output problem file");

  std::string family;
  double norm_z = 1.0;
  double lambda = 1.0;
  auto* fistar = app.add_subcommand("fistar", "closed-form component infimum");
  fistar->add_option("--family", family, "logistic | exponential")->required();
  fistar->add_option("--norm-z", norm_z, "feature norm ||z_i||")->required();
  fistar->add_option("--lambda", lambda, "l2 regularization strength")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (run->parsed()) return cmd_run(config_path, out_dir, jobs);
    if (check->parsed()) return cmd_check(config_path, out_dir, jobs);
    if (gen->parsed()) return cmd_gen(config_path, out_dir);
    if (fistar->parsed()) return cmd_fistar(family, norm_z, lambda);
  } catch (const sps::NumericalAbort& e) {
    std::cerr << "numerical abort: " << e.what() << "\n";
    return kExitNumerical;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitValidation;
  }
  return kExitValidation;
}
