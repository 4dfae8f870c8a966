#include <gtest/gtest.h>

#include <sys/wait.h>

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>

#include "bhp/io_util.hpp"
#include "bhp/returns.hpp"

namespace fs = std::filesystem;

namespace {

struct CliRun {
  int code;
  std::string out;
  std::string err;
};

const fs::path& work_dir() {
  static const fs::path dir = [] {
    fs::path d = fs::temp_directory_path() / "bhp_cli_test";
    fs::remove_all(d);
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

CliRun run(const std::string& args) {
  const fs::path out = work_dir() / "stdout.txt";
  const fs::path err = work_dir() / "stderr.txt";
  const std::string cmd = "BHP_CACHE_DIR='" + (work_dir() / "cache").string() + "' '" +
                          BHP_CLI_PATH + "' " + args + " >'" + out.string() + "' 2>'" +
                          err.string() + "'";
  const int status = std::system(cmd.c_str());
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, bhp::read_file(out),
          bhp::read_file(err)};
}

fs::path write_prices(const std::string& name, std::size_t days, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g(0.0003, 0.012);
  std::ostringstream csv;
  csv << "date,close\n";
  auto day = std::chrono::sys_days{std::chrono::year{2001} / 1 / 1};
  double close = 100.0;
  for (std::size_t k = 0; k < days; ++k) {
    csv << bhp::format_iso_date(bhp::Date{day}) << ',' << bhp::format_double(close) << '\n';
    close *= 1.0 + g(rng);
    day += std::chrono::days{1};
  }
  const fs::path path = work_dir() / name;
  bhp::write_file(path, csv.str());
  return path;
}

TEST(Cli, TableThenCacheHit) {
  const CliRun first = run("table");
  ASSERT_EQ(first.code, 0) << first.err;
  const std::string csv_path = first.out.substr(0, first.out.find('\n'));
  std::ifstream in(csv_path);
  std::string line;
  std::size_t rows = 0;
  while (std::getline(in, line)) {
    if (!line.empty() && line[0] != '#') ++rows;
  }
  EXPECT_EQ(rows, 2402u);  // header + 2401 grid points

  const CliRun second = run("table");
  ASSERT_EQ(second.code, 0);
  EXPECT_NE(second.err.find("cache hit, no recomputation"), std::string::npos) << second.err;
  EXPECT_EQ(second.out, first.out);
}

TEST(Cli, UsageErrorsExitTwo) {
  EXPECT_EQ(run("table --lattice-side 1").code, 2);
  EXPECT_EQ(run("").code, 2);
  EXPECT_EQ(run("bogus").code, 2);
  EXPECT_EQ(run("sweep").code, 2);  // --input is required
  EXPECT_EQ(run("table --orientation sideways").code, 2);
  EXPECT_EQ(run("--help").code, 0);
}

TEST(Cli, EmptyNegativePartition) {
  const fs::path csv = work_dir() / "two_rows.csv";
  bhp::write_file(csv, "date,close\n2020-01-01,100\n2020-01-02,101\n");
  const CliRun r = run("sweep -i '" + csv.string() + "' --sign=- -o '" +
                    (work_dir() / "empty_out").string() + "'");
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.err.find("negative partition is empty"), std::string::npos) << r.err;
}

TEST(Cli, UnsortedDatesNameTheRow) {
  const fs::path csv = work_dir() / "unsorted.csv";
  bhp::write_file(csv, "date,close\n2020-01-02,100\n2020-01-03,101\n2020-01-01,99\n");
  const CliRun r = run("sweep -i '" + csv.string() + "'");
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.err.find("row 4"), std::string::npos) << r.err;
}

TEST(Cli, MissingInputFileIsDataError) {
  const CliRun r = run("sweep -i '" + (work_dir() / "nope.csv").string() + "'");
  EXPECT_EQ(r.code, 1);
}

TEST(Cli, SweepWritesPerSideFiles) {
  const fs::path csv = write_prices("sweep_prices.csv", 800, 3);
  const fs::path out = work_dir() / "sweep_out";
  const CliRun r = run("sweep -i '" + csv.string() + "' --sign both -o '" + out.string() + "'");
  ASSERT_EQ(r.code, 0) << r.err;
  for (const char* name : {"sweep_positive.csv", "sweep_negative.csv", "sweep_positive.json",
                           "sweep_negative.json", "summary.json"}) {
    EXPECT_TRUE(fs::exists(out / name)) << name;
  }
  const std::string body = bhp::read_file(out / "sweep_positive.csv");
  EXPECT_EQ(body.rfind("# config_hash=", 0), 0u);
  EXPECT_NE(body.find("alpha,d,p,mu,sigma,L,R\n"), std::string::npos);
}

TEST(Cli, AnalyzeIsByteReproducible) {
  const fs::path csv = write_prices("analyze_prices.csv", 800, 4);
  const fs::path a = work_dir() / "analyze_a";
  const fs::path b = work_dir() / "analyze_b";
  ASSERT_EQ(run("analyze -i '" + csv.string() + "' -o '" + a.string() + "'").code, 0);
  ASSERT_EQ(run("analyze -i '" + csv.string() + "' -o '" + b.string() + "'").code, 0);
  std::size_t compared = 0;
  for (const auto& entry : fs::recursive_directory_iterator(a)) {
    if (!entry.is_regular_file()) continue;
    const fs::path rel = fs::relative(entry.path(), a);
    ASSERT_TRUE(fs::exists(b / rel)) << rel;
    EXPECT_EQ(bhp::read_file(entry.path()), bhp::read_file(b / rel)) << rel;
    ++compared;
  }
  EXPECT_EQ(compared, 1u + 2u * 7u);
}

TEST(Cli, SelftestIsDeterministic) {
  const CliRun a = run("selftest --seeds 1 --trials 3 --seed 5");
  const CliRun b = run("selftest --seeds 1 --trials 3 --seed 5");
  EXPECT_TRUE(a.code == 0 || a.code == 1);
  EXPECT_EQ(a.code, b.code);
  EXPECT_EQ(a.out, b.out);
  EXPECT_NE(a.out.find("seed 5"), std::string::npos);
}

}  // namespace
