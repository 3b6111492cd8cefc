#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "qform/cli.hpp"
#include "qform/errors.hpp"

using namespace qform;
namespace fs = std::filesystem;

namespace {

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() / ("qform_test_" + std::to_string(std::rand()) + "_" +
                                        std::to_string(reinterpret_cast<std::uintptr_t>(this)));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
};

void write(const fs::path& p, const std::string& text) { std::ofstream(p) << text; }

struct Run {
  int code;
  std::string out;
};

Run run(std::vector<std::string> args) {
  args.insert(args.begin(), "qform");
  std::vector<char*> argv;
  for (auto& a : args) argv.push_back(a.data());
  std::ostringstream out, err;
  auto* old_out = std::cout.rdbuf(out.rdbuf());
  auto* old_err = std::cerr.rdbuf(err.rdbuf());
  int code = run_cli(static_cast<int>(argv.size()), argv.data());
  std::cout.rdbuf(old_out);
  std::cerr.rdbuf(old_err);
  return {code, out.str()};
}

}  // namespace

TEST_CASE("config file parsing") {
  TempDir d;
  write(d.path / "run.conf", "# comment\ncutoff = 5000\ngrid = 16x24\nthreads=3\nformat = tsv\n");
  RunConfig cfg;
  apply_config_file(cfg, (d.path / "run.conf").string());
  CHECK(cfg.cutoff == 5000);
  CHECK(cfg.grid_nx == 16);
  CHECK(cfg.grid_ny == 24);
  CHECK(cfg.threads == 3);
  CHECK(cfg.format == "tsv");
  write(d.path / "bad.conf", "colour = blue\n");
  CHECK_THROWS_AS(apply_config_file(cfg, (d.path / "bad.conf").string()), Error);
  RunConfig neg;
  neg.cutoff = 0;
  CHECK_THROWS_AS(validate_config(neg), Error);
}

TEST_CASE("cache round trip and corruption") {
  TempDir d;
  Cache c(d.path.string());
  std::string k = Cache::key("material");
  CHECK(k.size() == 64);
  CHECK(k != Cache::key("material2"));
  CHECK_FALSE(c.get(k).has_value());
  c.put(k, Json{{"x", 1}});
  REQUIRE(c.get(k).has_value());
  CHECK((*c.get(k))["x"] == 1);
  for (const auto& e : fs::directory_iterator(d.path)) write(e.path(), "{not json");
  CHECK_FALSE(c.get(k).has_value());
  CHECK_FALSE(Cache("").enabled());
}

TEST_CASE("run_cli exit codes and outputs") {
  TempDir d;
  write(d.path / "f.json", R"({"diag_q":[1,1,1]})");
  write(d.path / "bad.json", R"({"gram":[[2,3],[3,2]]})");
  std::string f = (d.path / "f.json").string();
  auto ok = run({"--no-cache", "density", "--form", f, "--p", "3", "--n", "1"});
  CHECK(ok.code == 0);
  CHECK(ok.out.rfind(R"({"beta":"2/3","method":"yang_odd")", 0) == 0);
  CHECK(run({"--no-cache", "density", "--form", f, "--p", "4", "--n", "1"}).code == 1);
  CHECK(run({"--no-cache", "form", "--form", (d.path / "bad.json").string()}).code == 2);
  CHECK(run({"--no-cache", "sieve", "omega", "--n", "28", "--l", "1,1,1"}).code == 2);
  CHECK(run({"bogus"}).code == 1);
  CHECK(run({"--no-cache", "verify", "nope"}).code == 1);
}

TEST_CASE("cached and uncached output are byte-identical") {
  TempDir d;
  write(d.path / "f.json", R"({"gram":[[2,1,0],[1,4,1],[0,1,6]]})");
  std::string f = (d.path / "f.json").string(), cache = (d.path / "cache").string();
  auto a = run({"--no-cache", "genus", "--form", f, "--n", "7", "--cutoff", "2000"});
  auto b = run({"--cache-dir", cache, "genus", "--form", f, "--n", "7", "--cutoff", "2000"});
  auto c = run({"--cache-dir", cache, "genus", "--form", f, "--n", "7", "--cutoff", "2000"});
  CHECK(a.code == 0);
  CHECK(a.out == b.out);
  CHECK(b.out == c.out);
  for (const auto& e : fs::directory_iterator(cache)) write(e.path(), "garbage");
  auto after = run({"--cache-dir", cache, "genus", "--form", f, "--n", "7", "--cutoff", "2000"});
  CHECK(after.out == a.out);
}

TEST_CASE("environment overrides") {
  RunConfig cfg;
  setenv("QFORM_THREADS", "5", 1);
  setenv("QFORM_CACHE_DIR", "/tmp/qform-env-cache", 1);
  apply_env(cfg);
  unsetenv("QFORM_THREADS");
  unsetenv("QFORM_CACHE_DIR");
  CHECK(cfg.threads == 5);
  CHECK(cfg.cache_dir == "/tmp/qform-env-cache");
}
