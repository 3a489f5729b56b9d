#include "sps/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace sps {

namespace {

std::string trim(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t\r\n");
  if (begin == std::string::npos) return "";
  const auto end = s.find_last_not_of(" \t\r\n");
  return s.substr(begin, end - begin + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::string current;
  for (char ch : s) {
    if (ch == sep) {
      parts.push_back(current);
      current.clear();
    } else {
      current.push_back(ch);
    }
  }
  parts.push_back(current);
  return parts;
}

const char* kCsvHeader = "k,idx,gamma,dist_sq,loss,grad_norm_sq,batch";

const char* step_kind_name(StepKind kind) {
  switch (kind) {
    case StepKind::Sps: return "sps";
    case StepKind::SpsMax: return "sps_max";
    case StepKind::SmoothedSpsMax: return "smoothed_sps_max";
    case StepKind::Constant: return "constant";
    case StepKind::DeterministicPolyak: return "deterministic_polyak";
  }
  return "unknown";
}

StepKind step_kind_from(const std::string& name) {
  if (name == "sps") return StepKind::Sps;
  if (name == "sps_max") return StepKind::SpsMax;
  if (name == "smoothed_sps_max") return StepKind::SmoothedSpsMax;
  if (name == "constant") return StepKind::Constant;
  if (name == "deterministic_polyak") return StepKind::DeterministicPolyak;
  throw std::invalid_argument("unknown step rule kind: " + name);
}

const char* batch_kind_name(BatchKind kind) {
  switch (kind) {
    case BatchKind::Fixed: return "fixed";
    case BatchKind::StronglyConvexSchedule: return "strongly_convex";
    case BatchKind::PlSchedule: return "pl";
  }
  return "unknown";
}

BatchKind batch_kind_from(const std::string& name) {
  if (name == "fixed") return BatchKind::Fixed;
  if (name == "strongly_convex") return BatchKind::StronglyConvexSchedule;
  if (name == "pl") return BatchKind::PlSchedule;
  throw std::invalid_argument("unknown batch schedule kind: " + name);
}

const char* init_kind_name(InitKind kind) {
  switch (kind) {
    case InitKind::Zeros: return "zeros";
    case InitKind::Ones: return "ones";
    case InitKind::Gaussian: return "gaussian";
  }
  return "unknown";
}

InitKind init_kind_from(const std::string& name) {
  if (name == "zeros") return InitKind::Zeros;
  if (name == "ones") return InitKind::Ones;
  if (name == "gaussian") return InitKind::Gaussian;
  throw std::invalid_argument("unknown init kind: " + name);
}

}  // namespace

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string trajectory_to_csv(const Trajectory& trajectory) {
  std::ostringstream out;
  out << kCsvHeader << "\n";
  for (const auto& rec : trajectory.records) {
    out << rec.k << ",";
    for (size_t j = 0; j < rec.indices.size(); ++j) {
      if (j) out << ';';
      out << rec.indices[j];
    }
    out << "," << format_double(rec.gamma) << "," << format_double(rec.dist_sq)
        << "," << format_double(rec.loss) << "," << format_double(rec.grad_norm_sq)
        << "," << rec.batch_size << "\n";
  }
  return out.str();
}

Trajectory trajectory_from_csv(const std::string& csv_text) {
  std::istringstream in(csv_text);
  std::string line;
  if (!std::getline(in, line) || trim(line) != kCsvHeader) {
    throw std::invalid_argument("trajectory csv: bad header");
  }
  Trajectory traj;
  while (std::getline(in, line)) {
    if (trim(line).empty()) continue;
    const auto fields = split(trim(line), ',');
    if (fields.size() != 7) throw std::invalid_argument("trajectory csv: bad row");
    TrajectoryRecord rec;
    rec.k = parse_long(fields[0], "k");
    if (!fields[1].empty()) {
      for (const auto& part : split(fields[1], ';')) {
        rec.indices.push_back(static_cast<int>(parse_long(part, "idx")));
      }
    }
    rec.gamma = parse_double(fields[2], "gamma");
    rec.dist_sq = parse_double(fields[3], "dist_sq");
    rec.loss = parse_double(fields[4], "loss");
    rec.grad_norm_sq = parse_double(fields[5], "grad_norm_sq");
    rec.batch_size = static_cast<int>(parse_long(fields[6], "batch"));
    traj.records.push_back(std::move(rec));
  }
  return traj;
}

void write_trajectory_csv(const Trajectory& trajectory, const std::string& path) {
  write_file(path, trajectory_to_csv(trajectory));
}

Trajectory read_trajectory_csv(const std::string& path) {
  return trajectory_from_csv(read_file(path));
}

std::string run_config_to_kv(const RunConfig& config) {
  std::ostringstream out;
  out << "seed = " << config.seed << "\n";
  out << "iterations = " << config.iterations << "\n";
  out << "record_every = " << config.record_every << "\n";
  out << "init = " << init_kind_name(config.init) << "\n";
  out << "init_scale = " << format_double(config.init_scale) << "\n";
  out << "rule = " << step_kind_name(config.step_rule.kind) << "\n";
  out << "rule_c = " << format_double(config.step_rule.c) << "\n";
  out << "rule_gamma_b = " << format_double(config.step_rule.gamma_b) << "\n";
  out << "rule_gamma_b_init = " << format_double(config.step_rule.gamma_b_init) << "\n";
  out << "rule_tau = " << format_double(config.step_rule.tau) << "\n";
  out << "rule_gamma = " << format_double(config.step_rule.gamma) << "\n";
  const BatchSchedule& b = config.batch_schedule;
  out << "batch = " << batch_kind_name(b.kind) << "\n";
  out << "batch_b = " << b.fixed_b << "\n";
  out << "batch_gamma_b = " << format_double(b.gamma_b) << "\n";
  out << "batch_z_sq = " << format_double(b.z_sq) << "\n";
  out << "batch_mu_min = " << format_double(b.mu_min) << "\n";
  out << "batch_mu = " << format_double(b.mu) << "\n";
  out << "batch_l_max = " << format_double(b.l_max) << "\n";
  out << "batch_l = " << format_double(b.l) << "\n";
  out << "batch_c = " << format_double(b.c) << "\n";
  out << "batch_v = " << format_double(b.v) << "\n";
  return out.str();
}

RunConfig run_config_from_kv(const std::string& text) {
  RunConfig config;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    line = trim(line);
    if (line.empty() || line[0] == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw std::invalid_argument("run config: missing '='");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key == "seed") config.seed = parse_u64(value, key);
    else if (key == "iterations") config.iterations = parse_long(value, key);
    else if (key == "record_every") config.record_every = parse_long(value, key);
    else if (key == "init") config.init = init_kind_from(value);
    else if (key == "init_scale") config.init_scale = parse_double(value, key);
    else if (key == "rule") config.step_rule.kind = step_kind_from(value);
    else if (key == "rule_c") config.step_rule.c = parse_double(value, key);
    else if (key == "rule_gamma_b") config.step_rule.gamma_b = parse_double(value, key);
    else if (key == "rule_gamma_b_init") config.step_rule.gamma_b_init = parse_double(value, key);
    else if (key == "rule_tau") config.step_rule.tau = parse_double(value, key);
    else if (key == "rule_gamma") config.step_rule.gamma = parse_double(value, key);
    else if (key == "batch") config.batch_schedule.kind = batch_kind_from(value);
    else if (key == "batch_b") config.batch_schedule.fixed_b = static_cast<int>(parse_long(value, key));
    else if (key == "batch_gamma_b") config.batch_schedule.gamma_b = parse_double(value, key);
    else if (key == "batch_z_sq") config.batch_schedule.z_sq = parse_double(value, key);
    else if (key == "batch_mu_min") config.batch_schedule.mu_min = parse_double(value, key);
    else if (key == "batch_mu") config.batch_schedule.mu = parse_double(value, key);
    else if (key == "batch_l_max") config.batch_schedule.l_max = parse_double(value, key);
    else if (key == "batch_l") config.batch_schedule.l = parse_double(value, key);
    else if (key == "batch_c") config.batch_schedule.c = parse_double(value, key);
    else if (key == "batch_v") config.batch_schedule.v = parse_double(value, key);
    else throw std::invalid_argument("run config: unknown key '" + key + "'");
  }
  return config;
}

bool ConfigFile::has(const std::string& section, const std::string& key) const {
  const auto sec = sections.find(section);
  return sec != sections.end() && sec->second.count(key) > 0;
}

const std::string& ConfigFile::get(const std::string& section, const std::string& key) const {
  const auto sec = sections.find(section);
  if (sec == sections.end()) {
    throw std::invalid_argument("config: missing section [" + section + "]");
  }
  const auto it = sec->second.find(key);
  if (it == sec->second.end()) {
    throw std::invalid_argument("config: missing key '" + key + "' in [" + section + "]");
  }
  return it->second;
}

std::string ConfigFile::get_or(const std::string& section, const std::string& key,
                               const std::string& fallback) const {
  return has(section, key) ? get(section, key) : fallback;
}

ConfigFile parse_config(const std::string& text) {
  ConfigFile config;
  std::istringstream in(text);
  std::string line;
  std::string section;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    line = trim(line);
    if (line.empty() || line[0] == '#') continue;
    if (line.front() == '[') {
      if (line.back() != ']') {
        throw std::invalid_argument("config line " + std::to_string(lineno) +
                                    ": unterminated section header");
      }
      section = trim(line.substr(1, line.size() - 2));
      if (section.empty()) {
        throw std::invalid_argument("config line " + std::to_string(lineno) +
                                    ": empty section name");
      }
      config.sections[section];
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw std::invalid_argument("config line " + std::to_string(lineno) +
                                  ": expected 'key = value'");
    }
    if (section.empty()) {
      throw std::invalid_argument("config line " + std::to_string(lineno) +
                                  ": key outside any section");
    }
    config.sections[section][trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
  }
  return config;
}

ConfigFile read_config_file(const std::string& path) {
  return parse_config(read_file(path));
}

double parse_double(const std::string& value, const std::string& what) {
  try {
    size_t pos = 0;
    const double v = std::stod(value, &pos);
    if (pos != value.size()) throw std::invalid_argument("trailing characters");
    return v;
  } catch (const std::exception&) {
    throw std::invalid_argument("cannot parse '" + value + "' as number for " + what);
  }
}

long parse_long(const std::string& value, const std::string& what) {
  try {
    size_t pos = 0;
    const long v = std::stol(value, &pos);
    if (pos != value.size()) throw std::invalid_argument("trailing characters");
    return v;
  } catch (const std::exception&) {
    throw std::invalid_argument("cannot parse '" + value + "' as integer for " + what);
  }
}

std::uint64_t parse_u64(const std::string& value, const std::string& what) {
  try {
    size_t pos = 0;
    const unsigned long long v = std::stoull(value, &pos);
    if (pos != value.size()) throw std::invalid_argument("trailing characters");
    return v;
  } catch (const std::exception&) {
    throw std::invalid_argument("cannot parse '" + value + "' as seed for " + what);
  }
}

std::vector<std::uint64_t> parse_seed_list(const std::string& value) {
  std::vector<std::uint64_t> seeds;
  for (const auto& raw : split(value, ',')) {
    const std::string part = trim(raw);
    if (part.empty()) continue;
    const auto dots = part.find("..");
    if (dots != std::string::npos) {
      const std::uint64_t lo = parse_u64(trim(part.substr(0, dots)), "seed range");
      const std::uint64_t hi = parse_u64(trim(part.substr(dots + 2)), "seed range");
      if (hi < lo) throw std::invalid_argument("seed range is reversed: " + part);
      for (std::uint64_t s = lo; s <= hi; ++s) seeds.push_back(s);
    } else {
      seeds.push_back(parse_u64(part, "seed"));
    }
  }
  if (seeds.empty()) throw std::invalid_argument("empty seed list");
  return seeds;
}

void write_matrix(std::ostream& out, const std::string& name, const Matrix& m) {
  out << name << " matrix " << m.rows() << " " << m.cols() << "\n";
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      out << format_double(m(i, j)) << (j + 1 == m.cols() ? "" : " ");
    }
    out << "\n";
  }
}

void write_vector(std::ostream& out, const std::string& name, const Vector& v) {
  out << name << " vector " << v.size() << "\n";
  for (Eigen::Index i = 0; i < v.size(); ++i) out << format_double(v[i]) << "\n";
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << content;
}

std::string fnv1a_hex(const std::string& text) {
  std::uint64_t hash = 0xcbf29ce484222325ULL;
  for (unsigned char ch : text) {
    hash ^= ch;
    hash *= 0x100000001b3ULL;
  }
  char buf[20];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(hash));
  return buf;
}

}  // namespace sps
