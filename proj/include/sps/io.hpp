#ifndef SPS_IO_HPP
#define SPS_IO_HPP

#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "sps/types.hpp"

namespace sps {

// --- Trajectory CSV (header: k,idx,gamma,dist_sq,loss,grad_norm_sq,batch).
// Batch indices are ';'-joined in the idx column; doubles are printed with
// round-trip precision.

std::string trajectory_to_csv(const Trajectory& trajectory);
void write_trajectory_csv(const Trajectory& trajectory, const std::string& path);
Trajectory trajectory_from_csv(const std::string& csv_text);
Trajectory read_trajectory_csv(const std::string& path);

// --- RunConfig flat key/value serialization ("key = value" per line).

std::string run_config_to_kv(const RunConfig& config);
RunConfig run_config_from_kv(const std::string& text);

// --- Sectioned key/value config files ([section] headers, '#' comments).

struct ConfigFile {
  // section -> key -> value, preserving nothing but the last assignment.
  std::map<std::string, std::map<std::string, std::string>> sections;

  bool has(const std::string& section, const std::string& key) const;
  const std::string& get(const std::string& section, const std::string& key) const;
  std::string get_or(const std::string& section, const std::string& key,
                     const std::string& fallback) const;
};

ConfigFile parse_config(const std::string& text);
ConfigFile read_config_file(const std::string& path);

// --- Value parsing helpers (throw std::invalid_argument with the key name).

double parse_double(const std::string& value, const std::string& what);
long parse_long(const std::string& value, const std::string& what);
std::uint64_t parse_u64(const std::string& value, const std::string& what);
std::vector<std::uint64_t> parse_seed_list(const std::string& value);

std::string format_double(double v);  // shortest round-trip decimal

// --- Problem text serialization (matrix-market style array blocks).

void write_matrix(std::ostream& out, const std::string& name, const Matrix& m);
void write_vector(std::ostream& out, const std::string& name, const Vector& v);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

/// FNV-1a 64-bit hash of a config's canonical text, hex-encoded; used as
/// the manifest's config fingerprint.
std::string fnv1a_hex(const std::string& text);

}  // namespace sps

#endif  // SPS_IO_HPP
