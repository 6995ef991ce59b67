#include <gtest/gtest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

namespace fs = std::filesystem;

namespace {

const fs::path kCli = NONLOCAL_CLI_PATH;

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("nonlocal_cli_test_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

int run(const std::string& args) {
  const std::string cmd = kCli.string() + " " + args + " > /dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

fs::path write(const fs::path& dir, const std::string& name, const std::string& text) {
  std::ofstream(dir / name) << text;
  return dir / name;
}

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

const char* kSmall = R"([model]
resolution = 33
beta = 2
[kernel]
family = uniform
[run]
t_end = 2
dt = 0.05
initial = random
seed = 5
amplitude = 0.3
offset = 0.2
[analysis]
suites = boundK absorbing comparison lyapunov equilibria
)";

}  // namespace

TEST(Cli, UsageErrors) {
  const fs::path dir = scratch("usage");
  EXPECT_EQ(run(""), 1);
  EXPECT_EQ(run("frobnicate x.ini"), 1);
  EXPECT_EQ(run("simulate " + (dir / "missing.ini").string()), 1);
  const auto bad = write(dir, "bad.ini", "[model]\nbta = 1\n");
  EXPECT_EQ(run("simulate " + bad.string()), 1);
  const auto invalid = write(dir, "invalid.ini", "[model]\n[run]\ndt = -1\n");
  EXPECT_EQ(run("simulate " + invalid.string()), 1);
}

TEST(Cli, SimulateIsReproducible) {
  const fs::path dir = scratch("repro");
  const auto ini = write(dir, "s.ini", kSmall);
  ASSERT_EQ(run("simulate " + ini.string() + " --output-dir " + (dir / "a").string()), 0);
  ASSERT_EQ(run("simulate " + ini.string() + " --output-dir " + (dir / "b").string()), 0);
  for (const char* name : {"trajectory.csv", "norms.csv", "manifest.json"}) {
    ASSERT_TRUE(fs::exists(dir / "a" / name)) << name;
    EXPECT_EQ(slurp(dir / "a" / name), slurp(dir / "b" / name)) << name;
  }
  EXPECT_TRUE(fs::exists(dir / "a" / "timing.json"));
}

TEST(Cli, VerifyPasses) {
  const fs::path dir = scratch("verify");
  const auto ini = write(dir, "s.ini", kSmall);
  EXPECT_EQ(run("verify " + ini.string() + " --output-dir " + (dir / "out").string()), 0);
  const std::string manifest = slurp(dir / "out" / "manifest.json");
  for (const char* suite : {"boundK", "absorbing", "comparison", "lyapunov", "equilibria"}) {
    EXPECT_NE(manifest.find(suite), std::string::npos) << suite;
  }
}

TEST(Cli, DivergenceExitCode) {
  const fs::path dir = scratch("diverge");
  const auto ini = write(dir, "d.ini", R"([model]
resolution = 9
beta = 1
[kernel]
family = uniform
[g]
family = linear
a = 1e300
b = 0
[run]
t_end = 5
dt = 0.1
initial = constant
value = 1
)");
  EXPECT_EQ(run("simulate " + ini.string() + " --output-dir " + (dir / "out").string()), 2);
  EXPECT_NE(slurp(dir / "out" / "manifest.json").find("failure_time"), std::string::npos);
}

TEST(Cli, EquilibriumInitialStaysPut) {
  const fs::path dir = scratch("equilibrium");
  // m = tanh(2m) to double precision, found by the equilibria subcommand first.
  const auto ini = write(dir, "e.ini", R"([model]
resolution = 17
beta = 2
[kernel]
family = uniform
[run]
t_end = 1
dt = 0.1
initial = constant
value = 0.9575040240772687
)");
  ASSERT_EQ(run("simulate " + ini.string() + " --output-dir " + (dir / "out").string()), 0);
  std::ifstream in(dir / "out" / "trajectory.csv");
  std::string line;
  std::getline(in, line);  // header
  std::size_t rows = 0;
  while (std::getline(in, line)) {
    std::istringstream cells(line);
    std::string cell;
    std::getline(cells, cell, ',');
    while (std::getline(cells, cell, ',')) {
      EXPECT_NEAR(std::stod(cell), 0.9575040240772687, 1e-13);
    }
    ++rows;
  }
  EXPECT_GT(rows, 2u);
}

TEST(Cli, KernelInfo) {
  const fs::path dir = scratch("kinfo");
  const auto ini = write(dir, "k.ini", kSmall);
  EXPECT_EQ(run("kernel-info " + ini.string() + " --output-dir " + (dir / "out").string()), 0);
}
