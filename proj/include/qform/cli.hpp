#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "qform/form_io.hpp"

namespace qform {

struct RunConfig {
  std::int64_t cutoff = 100000;     // Euler product cutoff P
  int grid_nx = 32, grid_ny = 32;   // norm quadrature grid
  std::uint64_t node_budget = 1000000000ULL;
  long double epsilon = 0, constant = 1;
  std::string cache_dir;            // empty disables the cache
  int threads = 1;
  std::string format = "json";      // json | tsv (surveys)
};

// key = value lines, '#' comments. Unknown keys throw InvalidArgument.
void apply_config_file(RunConfig& cfg, const std::string& path);
// QFORM_CACHE_DIR, QFORM_THREADS.
void apply_env(RunConfig& cfg);
void validate_config(const RunConfig& cfg);

// Content-addressed JSON store with atomic write-then-rename.
class Cache {
 public:
  explicit Cache(std::string dir) : dir_(std::move(dir)) {}
  bool enabled() const { return !dir_.empty(); }
  static std::string key(const std::string& material);  // hex SHA-256
  // Returns nothing for misses and unreadable or corrupted entries.
  std::optional<Json> get(const std::string& key) const;
  void put(const std::string& key, const Json& value) const;

 private:
  std::string dir_;
};

extern const char* const kCodeVersion;

// Exit codes: 0 ok, 1 usage, 2 domain error, 3 budget, 4 verify failure.
int run_cli(int argc, char** argv);

}  // namespace qform
