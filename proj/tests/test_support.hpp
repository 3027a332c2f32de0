#pragma once

// Shared helpers for the test binaries: canned spaces, a lower-envelope
// extension oracle, environment lookup for the CLI under test, and a tiny
// subprocess runner.

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <unistd.h>
#include <vector>

#include "kr/lipschitz.hpp"
#include "kr/lp.hpp"
#include "kr/numerics.hpp"
#include "kr/space.hpp"

namespace kr::test {

// Three collinear points at 0, 1, 3 with unit weights.  Distances
// d(p0,p1) = 1, d(p1,p2) = 2, d(p0,p2) = 3; diameter 3, min separation 1.
inline SpacePtr s3() {
  return make_explicit_coords({{0.0}, {1.0}, {3.0}}, {1.0, 1.0, 1.0});
}

// Smallest-majorant extension max_a (value(a) - bound * d(a, x)).  The
// production extension is the largest-minorant form; every bound-Lipschitz
// extension of the data lies between the two, which the tests exploit.
inline LpFunction whitney_extend(const PartialFunction& partial) {
  const auto& space = *partial.space;
  std::vector<double> out(space.size());
  for (std::size_t x = 0; x < space.size(); ++x) {
    double best = -kInf;
    for (std::size_t k = 0; k < partial.domain.size(); ++k) {
      best = std::max(best, partial.values[k] -
                                partial.bound * space.dist(partial.domain[k], x));
    }
    out[x] = best;
  }
  return {partial.space, std::move(out)};
}

inline std::string env_or(const char* name, const std::string& fallback) {
  const char* v = std::getenv(name);
  return v != nullptr && *v != '\0' ? std::string(v) : fallback;
}

// Path of the CLI binary and of the committed fixture files; the CMake test
// registration sets both variables.
inline std::string tool_path() { return env_or("KRTOOL_BIN", "./tools/krtool"); }
inline std::string fixture_dir() { return env_or("KR_FIXTURES", "../tests/fixtures"); }
inline std::string fixture(const std::string& name) {
  return (std::filesystem::path(fixture_dir()) / name).string();
}

// Fresh scratch directory per call, removed by the destructor.
struct TempDir {
  std::filesystem::path path;
  TempDir() {
    static int counter = 0;
    path = std::filesystem::temp_directory_path() /
           ("krtest_" + std::to_string(::getpid()) + "_" + std::to_string(counter++));
    std::filesystem::create_directories(path);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path, ec);
  }
  std::string file(const std::string& name) const { return (path / name).string(); }
};

inline std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline void spit(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  out << text;
}

struct RunResult {
  int exit_code = -1;
  std::string out;
  std::string err;
};

// Runs the CLI with the given argument string, capturing both streams.
inline RunResult run_tool(const std::string& args) {
  const TempDir tmp;
  const std::string out_path = tmp.file("stdout");
  const std::string err_path = tmp.file("stderr");
  const std::string cmd =
      tool_path() + " " + args + " >" + out_path + " 2>" + err_path;
  const int status = std::system(cmd.c_str());
  RunResult r;
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  r.out = slurp(out_path);
  r.err = slurp(err_path);
  return r;
}

}  // namespace kr::test
