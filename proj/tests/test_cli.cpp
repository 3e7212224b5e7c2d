#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "cli.hpp"
#include "doctest.h"

namespace {

struct Run {
  int status;
  std::string out, err;
  nlohmann::json report() const { return nlohmann::json::parse(out); }
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int status = bbg::cli::run(args, out, err);
  return {status, out.str(), err.str()};
}

std::filesystem::path temp_file(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("bbg_cli_test_" + name);
}

}  // namespace

TEST_CASE("cli: miller-rabin reports 561 composite with a factorisation") {
  auto r = run({"miller-rabin", "--n", "561", "--seed", "1", "--no-timing"});
  REQUIRE(r.status == bbg::cli::kOk);
  auto j = r.report();
  CHECK(j["command"] == "miller-rabin");
  CHECK(j["result"]["verdict"] == "composite");
  CHECK(j["seed"] == 1);
  CHECK(j["multiplications"].get<std::uint64_t>() > 0);
  CHECK_FALSE(j.contains("timing"));
  if (j["result"].contains("factors")) {
    auto f = j["result"]["factors"];
    CHECK(f[0].get<std::uint64_t>() * f[1].get<std::uint64_t>() == 561);
    CHECK(f[0] != 1);
    CHECK(f[1] != 1);
  }
}

TEST_CASE("cli: miller-rabin on a prime") {
  auto j = run({"miller-rabin", "--n", "1000003", "--rounds", "8", "--seed", "2"}).report();
  CHECK(j["result"]["verdict"] == "probably-prime");
  CHECK(j["result"]["rounds_run"] == 8);
  CHECK(j.contains("timing"));
}

TEST_CASE("cli: factor splits n") {
  auto r = run({"factor", "--n", "561", "--involution", "67"});
  REQUIRE(r.status == 0);
  auto f = r.report()["result"]["factors"];
  CHECK(f[0].get<std::uint64_t>() * f[1].get<std::uint64_t>() == 561);
}

TEST_CASE("cli: exit codes") {
  SUBCASE("config errors give 2") {
    CHECK(run({"miller-rabin", "--n", "4"}).status == bbg::cli::kConfig);
    CHECK(run({"pra", "--backend", "sym:99"}).status == bbg::cli::kConfig);
    CHECK(run({"pra", "--backend", "nope:3"}).status == bbg::cli::kConfig);
    CHECK(run({"pra", "--backend", "sym:4", "--bogus"}).status == bbg::cli::kConfig);
    CHECK(run({"centralizer", "--backend", "sym:5"}).status == bbg::cli::kConfig);
    CHECK(run({"centralizer", "--backend", "sym:5", "--involution", "(1 2 3)"}).status ==
          bbg::cli::kConfig);
    CHECK(run({}).status == bbg::cli::kConfig);
  }
  SUBCASE("starvation gives 3") {
    auto r = run({"centralizer", "--backend", "sym:7", "--involution", "(1 2)",
                  "--rejection-budget", "1", "--samples", "200", "--seed", "1"});
    CHECK(r.status == bbg::cli::kStarvation);
    CHECK(r.out.empty());
  }
  SUBCASE("numeric guard gives 4") {
    // Uniform transpositions are periodic: P^{*k} never approaches uniform on Sym_n.
    auto r = run({"mixing-time", "--backend", "sym:4", "--dist", "transpositions-uniform",
                  "--k-cap", "50"});
    CHECK(r.status == bbg::cli::kNumericGuard);
  }
  SUBCASE("help gives 0") { CHECK(run({"pra", "--help"}).status == bbg::cli::kOk); }
}

TEST_CASE("cli: reports are reproducible from the seed") {
  const std::vector<std::vector<std::string>> commands = {
      {"pra", "--backend", "sym:5", "--samples", "500", "--threads", "3"},
      {"normal-closure", "--backend", "sym:5", "--normal-gens", "(1 2 3)", "--samples", "300"},
      {"centralizer", "--backend", "sym:6", "--involution", "(1 2)", "--samples", "300",
       "--mode", "mixed"},
      {"membership", "--backend", "sym:5", "--subgroup-gens", "(1 2 3);(1 2 3 4 5)",
       "--element", "(1 2)", "--threads", "2"},
      {"odd-order-share", "--backend", "psl:2:7", "--samples", "2000"},
  };
  for (auto args : commands) {
    CAPTURE(args[0]);
    args.insert(args.end(), {"--seed", "77", "--no-timing"});
    auto a = run(args), b = run(args);
    REQUIRE(a.status == 0);
    CHECK(a.out == b.out);
    auto other = args;
    other[other.size() - 2] = "78";
    if (args[0] != "membership") CHECK(run(other).out != a.out);
  }
}

TEST_CASE("cli: BBG_SEED is the fallback seed") {
  ::setenv("BBG_SEED", "1234", 1);
  auto env = run({"pra", "--backend", "sym:4", "--samples", "100", "--no-timing"}).report();
  auto flag = run({"pra", "--backend", "sym:4", "--samples", "100", "--no-timing", "--seed",
                   "1234"}).report();
  auto over = run({"pra", "--backend", "sym:4", "--samples", "100", "--seed", "5"}).report();
  ::setenv("BBG_SEED", "not-a-number", 1);
  auto bad = run({"pra", "--backend", "sym:4", "--samples", "10"});
  ::unsetenv("BBG_SEED");
  auto none = run({"pra", "--backend", "sym:4", "--samples", "10"}).report();

  CHECK(env["seed"] == 1234);
  CHECK(env["seed_source"] == "env");
  CHECK(flag["seed_source"] == "flag");
  CHECK(env["result"] == flag["result"]);
  CHECK(over["seed"] == 5);
  CHECK(bad.status == bbg::cli::kConfig);
  CHECK(none["seed"] == 0);
  CHECK(none["seed_source"] == "default");
}

TEST_CASE("cli: census side file") {
  const auto path = temp_file("census.csv");
  auto r = run({"pra", "--backend", "sym:4", "--samples", "4800", "--seed", "3", "--census",
                path.string()});
  REQUIRE(r.status == 0);
  auto j = r.report();
  CHECK(j["side_files"]["census"] == path.string());
  CHECK(j["result"]["support_size"] == 24);
  CHECK(j["result"]["outside_target"] == 0);

  std::ifstream f(path);
  std::string line;
  std::getline(f, line);
  CHECK(line == "encoding,count");
  std::vector<std::string> keys;
  std::uint64_t total = 0;
  while (std::getline(f, line)) {
    auto comma = line.find(',');
    REQUIRE(comma != std::string::npos);
    keys.push_back(line.substr(0, comma));
    total += std::stoull(line.substr(comma + 1));
  }
  CHECK(keys.size() == 24);
  CHECK(std::is_sorted(keys.begin(), keys.end()));
  CHECK(keys.front() == "00010203");
  CHECK(total == 4800);
  std::filesystem::remove(path);
}

TEST_CASE("cli: tv-exact reports exact rationals and a distribution file") {
  const auto path = temp_file("dist.csv");
  auto j = run({"tv-exact", "--backend", "sym:3", "--dist", "transpositions-uniform", "--k", "1",
                "--dist-out", path.string()})
               .report();
  // One uniform transposition is exactly uniform on the odd coset of Sym_3.
  CHECK(j["result"]["tv_exact"] == "0");
  CHECK(j["result"]["target_size"] == 3);
  std::ifstream f(path);
  std::string line;
  std::getline(f, line);
  CHECK(line == "encoding,mass");
  int rows = 0;
  while (std::getline(f, line)) ++rows;
  CHECK(rows == 3);
  std::filesystem::remove(path);

  auto lazy = run({"tv-exact", "--backend", "sym:3", "--k", "1"}).report();
  // Lazy step on Sym_3: identity 1/3, each transposition 2/9, 3-cycles 0.
  // TV = 1/2 (1/6 + 3/18 + 2/6) = 1/3.
  CHECK(lazy["result"]["tv_exact"] == "1/3");
}

TEST_CASE("cli: report goes to --output when given") {
  const auto path = temp_file("report.json");
  auto r = run({"miller-rabin", "--n", "97", "--output", path.string()});
  REQUIRE(r.status == 0);
  CHECK(r.out.empty());
  std::ifstream f(path);
  auto j = nlohmann::json::parse(f);
  CHECK(j["result"]["verdict"] == "probably-prime");
  std::filesystem::remove(path);
}

TEST_CASE("cli: isa selection does not change results") {
  auto scalar = run({"tv-exact", "--backend", "sym:5", "--k", "6", "--isa", "scalar"}).report();
  auto avx = run({"tv-exact", "--backend", "sym:5", "--k", "6", "--isa", "auto"}).report();
  CHECK(scalar["result"]["tv_exact"] == avx["result"]["tv_exact"]);
  auto s = run({"pra", "--backend", "sym:6", "--samples", "200", "--seed", "1", "--no-timing",
                "--isa", "scalar"});
  auto a = run({"pra", "--backend", "sym:6", "--samples", "200", "--seed", "1", "--no-timing",
                "--isa", "auto"});
  auto strip = [](nlohmann::json j) {
    j["config"].erase("isa");
    return j;
  };
  CHECK(strip(s.report()) == strip(a.report()));
}
