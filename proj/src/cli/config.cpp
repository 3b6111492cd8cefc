#include <cstdlib>
#include <fstream>

#include "qform/cli.hpp"
#include "qform/errors.hpp"

namespace qform {

namespace {

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

long long to_int(const std::string& key, const std::string& v) {
  try {
    std::size_t pos = 0;
    long long x = std::stoll(v, &pos);
    if (pos != v.size()) throw std::invalid_argument(v);
    return x;
  } catch (const std::exception&) {
    raise(ErrorKind::InvalidArgument, "config key '" + key + "' needs an integer, got '" + v + "'");
  }
}

long double to_real(const std::string& key, const std::string& v) {
  try {
    std::size_t pos = 0;
    long double x = std::stold(v, &pos);
    if (pos != v.size()) throw std::invalid_argument(v);
    return x;
  } catch (const std::exception&) {
    raise(ErrorKind::InvalidArgument, "config key '" + key + "' needs a number, got '" + v + "'");
  }
}

void set(RunConfig& cfg, const std::string& key, const std::string& v) {
  if (key == "cutoff")
    cfg.cutoff = to_int(key, v);
  else if (key == "grid") {
    auto x = v.find('x');
    if (x == std::string::npos) raise(ErrorKind::InvalidArgument, "grid must look like 32x32");
    cfg.grid_nx = static_cast<int>(to_int(key, v.substr(0, x)));
    cfg.grid_ny = static_cast<int>(to_int(key, v.substr(x + 1)));
  } else if (key == "node_budget")
    cfg.node_budget = static_cast<std::uint64_t>(to_int(key, v));
  else if (key == "epsilon")
    cfg.epsilon = to_real(key, v);
  else if (key == "constant")
    cfg.constant = to_real(key, v);
  else if (key == "cache_dir")
    cfg.cache_dir = v;
  else if (key == "threads")
    cfg.threads = static_cast<int>(to_int(key, v));
  else if (key == "format")
    cfg.format = v;
  else
    raise(ErrorKind::InvalidArgument, "unknown config key '" + key + "'");
}

}  // namespace

void apply_config_file(RunConfig& cfg, const std::string& path) {
  std::ifstream in(path);
  if (!in) raise(ErrorKind::InvalidArgument, "cannot open config '" + path + "'");
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    line = trim(line);
    if (line.empty()) continue;
    auto eq = line.find('=');
    if (eq == std::string::npos)
      raise(ErrorKind::InvalidArgument, path + ":" + std::to_string(lineno) + ": expected key = value");
    set(cfg, trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
  }
}

void apply_env(RunConfig& cfg) {
  if (const char* d = std::getenv("QFORM_CACHE_DIR")) cfg.cache_dir = d;
  if (const char* t = std::getenv("QFORM_THREADS")) set(cfg, "threads", t);
}

void validate_config(const RunConfig& cfg) {
  if (cfg.cutoff < 100) raise(ErrorKind::InvalidArgument, "cutoff must be >= 100");
  if (cfg.grid_nx < 2 || cfg.grid_ny < 2) raise(ErrorKind::InvalidArgument, "grid must be at least 2x2");
  if (cfg.node_budget == 0) raise(ErrorKind::InvalidArgument, "node_budget must be positive");
  if (cfg.threads < 1) raise(ErrorKind::InvalidArgument, "threads must be positive");
  if (!(cfg.constant > 0) || !(cfg.epsilon >= 0)) raise(ErrorKind::InvalidArgument, "need constant > 0, epsilon >= 0");
  if (cfg.format != "json" && cfg.format != "tsv") raise(ErrorKind::InvalidArgument, "format must be json or tsv");
}

}  // namespace qform
