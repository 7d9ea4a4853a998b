#include <doctest.h>

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "lap/cli.hpp"
#include "lap/io.hpp"

using namespace lap;
namespace fs = std::filesystem;

namespace {

struct TempDir {
  fs::path dir;
  TempDir() {
    static int counter = 0;
    dir = fs::temp_directory_path() /
          ("lap-cli-test-" + std::to_string(++counter));
    fs::remove_all(dir);
    fs::create_directories(dir);
  }
  ~TempDir() {
    std::error_code ec;
    fs::remove_all(dir, ec);
  }
  std::string operator/(const char* name) const {
    return (dir / name).string();
  }
};

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("size extents accept integers and mantissa-exponent forms") {
  CHECK(parse_extent("0") == 0);
  CHECK(parse_extent("17") == 17);
  CHECK(parse_extent("1e3") == 1000);
  CHECK(parse_extent("1e9") == 1'000'000'000);
  CHECK(parse_extent("2.5e3") == 2500);
  CHECK(parse_extent("1E6") == 1'000'000);
  CHECK_THROWS_AS(parse_extent(""), std::invalid_argument);
  CHECK_THROWS_AS(parse_extent("abc"), std::invalid_argument);
  CHECK_THROWS_AS(parse_extent("1e-3"), std::invalid_argument);
  CHECK_THROWS_AS(parse_extent("1.5"), std::invalid_argument);
  CHECK_THROWS_AS(parse_extent("-4"), std::invalid_argument);
  CHECK_THROWS_AS(parse_extent("1e20"), std::invalid_argument);
  CHECK_THROWS_AS(parse_extent("12x"), std::invalid_argument);
}

TEST_CASE("usage errors exit 2") {
  TempDir tmp;
  CHECK(run({}) == 2);
  CHECK(run({"nonsense"}) == 2);  // unknown subcommand
  CHECK(run({"scan", "--frobnicate"}) == 2);
  // no series requested
  CHECK(run({"scan", "--xmax", "100", "--out", tmp / "a.csv"}) == 2);
  // residue out of range for the modulus
  CHECK(run({"scan", "--q", "5", "--set", "7", "--xmax", "100", "--out",
             tmp / "a.csv"}) == 2);
  CHECK(run({"scan", "--q", "5", "--set", "1", "--xmax", "abc", "--out",
             tmp / "a.csv"}) == 2);
  CHECK(run({"scan", "--q", "5", "--set", "1", "--xmax", "1e-3", "--out",
             tmp / "a.csv"}) == 2);
  // set without a modulus
  CHECK(run({"scan", "--set", "1", "--xmax", "100", "--out",
             tmp / "a.csv"}) == 2);
  CHECK(run({"lvalue", "--q", "4", "--s", "3.5"}) == 2);  // s out of domain
  CHECK(run({"lvalue", "--q", "3"}) == 2);                // missing --s
  CHECK(run({"lvalue", "--q", "4", "--s", "0.5", "--index", "5"}) == 2);
  CHECK(run({"--help"}) == 0);
}

TEST_CASE("scan subcommand writes csv and report") {
  TempDir tmp;
  const std::string csv = tmp / "series.csv";
  const std::string rep = tmp / "series.report.json";
  const int rc = run({"scan", "--q", "4", "--set", "1", "--set", "3",
                      "--xmax", "1e5", "--out", csv});
  CHECK(rc == 0);
  const SeriesTable t = read_series_csv(csv);
  REQUIRE(t.labels == std::vector<std::string>{"L;q=4;set=1", "L;q=4;set=3"});
  REQUIRE(!t.xs.empty());
  CHECK(t.xs.front() == 1);
  CHECK(t.xs.back() == 100'000);
  CHECK(t.columns[0].back() == 896);
  CHECK(t.columns[1].back() == 8);
  // header line is byte-exact
  std::ifstream in(csv);
  std::string header;
  std::getline(in, header);
  CHECK(header == "x,L;q=4;set=1,L;q=4;set=3");
  // the report lands next to the CSV by default
  const std::string rj = slurp(rep);
  CHECK(rj.find("\"series\": \"L;q=4;set=1\"") != std::string::npos);
  CHECK(rj.find("\"first_sign_change\": null") != std::string::npos);
}

TEST_CASE("interrupted scan resumes to the identical file") {
  TempDir tmp;
  const std::string full_csv = tmp / "full.csv";
  const std::string part_csv = tmp / "part.csv";
  const std::string chk = tmp / "part.chk";
  const std::vector<std::string> base{
      "--q",          "5",     "--set",         "1,2",
      "--classical",  "--xmax", "2e6",          "--block-size",
      "65536",        "--progress-every", "4"};
  auto with = [&](std::initializer_list<std::string> head) {
    std::vector<std::string> a(head);
    a.insert(a.end(), base.begin(), base.end());
    return a;
  };
  CHECK(run(with({"scan", "--out", full_csv})) == 0);
  {
    CHECK(run(with({"scan", "--out", part_csv, "--checkpoint", chk,
                    "--stop-after", "2"})) == 0);  // interrupted, not an error
    const CheckpointFile c = read_checkpoint(chk);
    CHECK(c.end == 2 * 4 * 65536);
    CHECK(c.xmax == 2'000'000);
    CHECK(c.block_size == 65536);
    REQUIRE(c.series.size() == 2);
    CHECK(c.series[0].label == "L;q=5;set=1,2");
    CHECK(c.series[1].label == "Lclassical");
  }
  CHECK(run(with({"scan", "--out", part_csv, "--checkpoint", chk})) == 0);
  CHECK(slurp(part_csv) == slurp(full_csv));
  // rerun once more: a complete checkpoint means a no-op success
  const std::string before = slurp(part_csv);
  CHECK(run(with({"scan", "--out", part_csv, "--checkpoint", chk})) == 0);
  CHECK(slurp(part_csv) == before);
  // altered extent or series list is refused
  CHECK(run({"scan", "--out", part_csv, "--checkpoint", chk, "--q", "5",
             "--set", "1,2", "--classical", "--xmax", "3e6", "--block-size",
             "65536"}) == 2);
  CHECK(run({"scan", "--out", part_csv, "--checkpoint", chk, "--q", "5",
             "--set", "1,3", "--classical", "--xmax", "2e6", "--block-size",
             "65536"}) == 2);
}

TEST_CASE("fit subcommand reads back a scanned series") {
  TempDir tmp;
  const std::string csv = tmp / "l41.csv";
  CHECK(run({"scan", "--q", "4", "--set", "1", "--xmax", "1e6", "--out",
             csv}) == 0);
  CHECK(run({"fit", "--in", csv, "--column", "L;q=4;set=1", "--model", "sqrt",
             "--xlo", "1e3", "--xhi", "1e6"}) == 0);
  CHECK(run({"fit", "--in", csv, "--column", "L;q=4;set=1", "--model",
             "logpow", "--power-exp", "0.5", "--log-exp", "0", "--xlo", "1e3",
             "--xhi", "1e6"}) == 0);
  // a label the file does not contain
  CHECK(run({"fit", "--in", csv, "--column", "L;q=4;set=3", "--model", "sqrt",
             "--xhi", "1e6"}) == 1);
  // unreadable input
  CHECK(run({"fit", "--in", tmp / "no-such.csv", "--column", "x", "--model",
             "sqrt", "--xhi", "1e6"}) == 1);
  // fit window beyond the data
  CHECK(run({"fit", "--in", csv, "--column", "L;q=4;set=1", "--model", "sqrt",
             "--xlo", "2e6", "--xhi", "3e6"}) == 2);
}

TEST_CASE("analysis subcommands succeed end to end") {
  TempDir tmp;
  CHECK(run({"characters", "--q", "12"}) == 0);
  CHECK(run({"characters", "--q", "4", "--set", "3"}) == 0);
  CHECK(run({"hist", "--q", "4", "--a", "1", "--xmax", "1e4"}) == 0);
  CHECK(run({"correlate", "--q", "4", "--set", "3", "--xmax", "1e5",
             "--shift", "0", "--shift", "1", "--patterns", "2"}) == 0);
  CHECK(run({"identities", "--xmax", "1e4"}) == 0);
  CHECK(run({"oracle-check", "--xmax", "1e4", "--qmax", "8"}) == 0);
  CHECK(run({"lvalue", "--q", "4", "--s", "0.5"}) == 0);
  CHECK(run({"lvalue", "--q", "12", "--s", "1.0", "--index", "1"}) == 0);
  const std::string combos = tmp / "combos.csv";
  CHECK(run({"combos", "--q", "8", "--r", "2", "--xmax", "1e4", "--out",
             combos}) == 0);
  const SeriesTable t = read_series_csv(combos);
  CHECK(t.labels.size() == 6);  // r = 2 out of the 4 unit classes mod 8
}
