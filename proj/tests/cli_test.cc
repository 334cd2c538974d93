#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "commands.h"

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  args.insert(args.begin(), "powersieve");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = powersieve::cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

}  // namespace

TEST_CASE("mnq reports M") {
  const Result r = run({"mnq", "--k", "2", "--qmin", "2", "--qmax", "4", "--n", "50", "--brute"});
  REQUIRE(r.code == 0);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["m_value"] == 2);
  CHECK(j["min_gap"] == "1/144");
}

TEST_CASE("crossover reports 21/5") {
  const Result r = run({"crossover", "--a", "munsch-new", "--b", "baier-zhao", "--k", "3"});
  REQUIRE(r.code == 0);
  CHECK(r.out.find("21/5") != std::string::npos);
}

TEST_CASE("delta-star on {1/4, 3/4}") {
  const Result r = run({"delta-star", "--k", "2", "--qmin", "2", "--qmax", "2", "--n", "5"});
  REQUIRE(r.code == 0);
  const auto j = nlohmann::json::parse(r.out);
  // Off-diagonal kernel is sin(5 pi / 2) / sin(pi / 2) = 1 in modulus.
  CHECK(j["delta_star"].get<double>() == doctest::Approx(6.0));
  CHECK(j["family_size"] == 2);
}

TEST_CASE("enumerate writes the family CSV") {
  const Result r = run({"enumerate", "--k", "3", "--qmin", "2", "--qmax", "2"});
  REQUIRE(r.code == 0);
  CHECK(r.out == "k,q,a,value\n3,2,1,1/8\n3,2,3,3/8\n3,2,5,5/8\n3,2,7,7/8\n");
}

TEST_CASE("boxcount") {
  const Result r = run({"boxcount", "--poly", "0,0,1", "--modulus", "9", "--K", "0",
                        "--H", "9", "--L", "0", "--R", "3"});
  REQUIRE(r.code == 0);
  CHECK(nlohmann::json::parse(r.out)["count"] == 2);
}

TEST_CASE("bounds and partition subcommands") {
  Result r = run({"bounds", "--k", "3", "--Q", "10", "--n", "1000000"});
  CHECK(r.code == 0);
  CHECK(r.out.find("munsch-new") != std::string::npos);
  r = run({"partition", "--k", "2", "--qmin", "2", "--qmax", "4", "--n", "50"});
  CHECK(r.code == 0);
  CHECK(nlohmann::json::parse(r.out)["blocks"][0]["certified"] == true);
}

TEST_CASE("survey output is byte-identical across runs") {
  const std::vector<std::string> args{"survey", "--k", "2", "--Q", "2,3,4",
                                      "--theta", "5/2,3,7/2", "--seed", "1"};
  const Result a = run(args);
  const Result b = run(args);
  REQUIRE(a.code == 0);
  CHECK(a.out == b.out);
  CHECK(std::count(a.out.begin(), a.out.end(), '\n') == 10);
}

TEST_CASE("config file supplies subcommand options") {
  const auto path = std::filesystem::temp_directory_path() / "powersieve_cli_test.ini";
  {
    std::ofstream f(path);
    f << "[mnq]\nk=2\nqmin=2\nqmax=4\nn=50\n";
  }
  const Result r = run({"--config", path.string(), "mnq"});
  std::filesystem::remove(path);
  REQUIRE(r.code == 0);
  CHECK(nlohmann::json::parse(r.out)["m_value"] == 2);
}

TEST_CASE("exit codes") {
  CHECK(run({"mnq", "--k", "2", "--qmin", "5", "--qmax", "4", "--n", "5"}).code == 2);
  CHECK(run({"no-such-command"}).code == 2);
  CHECK(run({"enumerate", "--k", "3", "--qmin", "2", "--qmax", "40",
             "--budget-family", "100"}).code == 3);
  CHECK(run({"delta-star", "--k", "2", "--qmin", "4", "--qmax", "8", "--n", "300",
             "--max-iters", "1", "--method", "power"}).code == 4);
}
