#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <algorithm>
#include <numeric>
#include <random>
#include <sstream>

#include "fixtures.hpp"
#include "omin/cli.hpp"
#include "omin/message_file.hpp"
#include "omin/report.hpp"

using namespace omin;

namespace {

const std::string kAsaFile = std::string(OMIN_TEST_DATA) + "/asa_example.txt";
const std::string kRsaFile = std::string(OMIN_TEST_DATA) + "/rsa_example.txt";

struct Run {
  int status;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int status = cli::dispatch(args, out, err);
  return {status, out.str(), err.str()};
}

Json run_json(std::vector<std::string> args) {
  const auto r = run(std::move(args));
  REQUIRE(r.status == 0);
  return Json::parse(r.out);
}

std::filesystem::path temp_file(const std::string& name, const std::string& body) {
  const auto path = std::filesystem::temp_directory_path() / ("omin_cli_test_" + name);
  std::ofstream(path) << body;
  return path;
}

MessageFile parse(const std::string& text, LoadOptions opts = {}) {
  std::istringstream in(text);
  return load_messages(in, opts);
}

}  // namespace

// ---------------------------------------------------------------------------
// message files

TEST_CASE("loading the worked examples") {
  const auto asa = load_messages(std::filesystem::path(kAsaFile));
  CHECK(asa.messages == fixtures::asa_example());
  CHECK(asa.line_numbers.front() == 2);
  CHECK(load_messages(std::filesystem::path(kRsaFile)).messages == fixtures::rsa_example());
}

TEST_CASE("size inference") {
  CHECK(parse("0 0\n").messages.config().size() == 4);
  CHECK(parse("0 0\n", {std::nullopt, 8}).messages.config().size() == 8);
  CHECK(parse("0 4\n 7 1  # trailing comment\n\n").messages.config().size() == 8);
  CHECK(parse("8 0\n").messages.config().size() == 16);
  CHECK(parse("0 0\n", {32, 4}).messages.config().size() == 32);
  CHECK(parse("# N=16\n0 0\n").messages.config().size() == 16);
  CHECK(infer_size(0, 1) == 1);
  CHECK(infer_size(7, 4) == 8);
}

TEST_CASE("message file errors carry line numbers") {
  auto message = [](const std::string& text, LoadOptions opts = {}) {
    try {
      parse(text, opts);
    } catch (const InputError& e) {
      return std::string(e.what());
    }
    return std::string("no error");
  };
  CHECK(message("0 1\n# c\n0 2\n") == "line 3: duplicate source 0 (first on line 1)");
  CHECK(message("0 x\n").starts_with("line 1:"));
  CHECK(message("0 -1\n").starts_with("line 1:"));
  CHECK(message("0 1 2\n").starts_with("line 1:"));
  CHECK(message("0 1\n1 9\n", {8, 4}).starts_with("line 2:"));
}

TEST_CASE("render and load round-trip") {
  std::mt19937 rng(1);
  for (int t = 0; t < 100; ++t) {
    const auto cfg = NetworkConfig::from_stages(2 + t % 4);
    std::vector<std::uint32_t> srcs(cfg.size());
    std::iota(srcs.begin(), srcs.end(), 0u);
    std::shuffle(srcs.begin(), srcs.end(), rng);
    std::vector<Message> msgs;
    for (std::size_t i = 0; i < rng() % cfg.size(); ++i) {
      msgs.push_back({Address{srcs[i]}, Address{static_cast<std::uint32_t>(rng() % cfg.size())}});
    }
    const auto ms = MessageSet::create(cfg, msgs);
    REQUIRE(parse(render_messages(ms)).messages == ms);
  }
}

// ---------------------------------------------------------------------------
// commands

TEST_CASE("schedule asa emits the worked passes") {
  const auto j = run_json({"schedule", kAsaFile, "--algo", "asa"});
  CHECK(j["passes"] == Json::parse("[[1,2,4,7],[5,6,0,3]]"));
  CHECK(j["trace"]["diff"] == Json::parse("[-1,0,0,0,-1,1,1,0]"));
  CHECK(j["algorithm"] == "asa");
  CHECK(j["mode"] == "paper");
  CHECK(j["network"]["size"] == 8);
  CHECK(j["metrics"]["pass_count"] == 2);
  std::vector<std::string> keys;
  for (const auto& [k, v] : j.items()) keys.push_back(k);
  CHECK(keys == std::vector<std::string>{"network", "algorithm", "mode", "passes", "trace", "metrics"});
}

TEST_CASE("schedule rsa emits the table sums") {
  const auto j = run_json({"schedule", kRsaFile, "--algo", "rsa"});
  CHECK(j["trace"]["row_sums"] == Json::parse("[1,2,2,1,0,0,0,0]"));
  CHECK(j["trace"]["selected_list"] == Json::parse("[4,5,6,7,2,3]"));
  CHECK(j["passes"][1] == Json::parse("[0,1,3]"));
  CHECK(j["metrics"]["link_occurrences"] == Json::parse("[0,0]"));
}

TEST_CASE("schedule output is deterministic in every format") {
  for (const char* algo : {"wm", "heur-asc", "heur-desc", "heur-min", "heur-max", "asa", "rsa"}) {
    for (const char* fmt : {"json", "text", "csv"}) {
      const auto a = run({"schedule", kRsaFile, "--algo", algo, "--format", fmt, "--mode", "strict"});
      CHECK(a.status == 0);
      CHECK(a.out == run({"schedule", kRsaFile, "--algo", algo, "--format", fmt, "--mode", "strict"}).out);
      CHECK_FALSE(a.out.empty());
    }
  }
}

TEST_CASE("empty pass list renders as an empty array") {
  const auto empty = temp_file("empty.txt", "# nothing\n");
  const auto j = run_json({"schedule", empty.string(), "--algo", "wm"});
  CHECK(j["passes"] == Json::array());
  CHECK(j["metrics"]["pass_count"] == 0);
}

TEST_CASE("single message defaults to N=8 only for two-pass algorithms") {
  const auto single = temp_file("single.txt", "0 0\n");
  CHECK(run_json({"schedule", single.string(), "--algo", "asa"})["network"]["size"] == 8);
  CHECK(run_json({"schedule", single.string(), "--algo", "wm"})["network"]["size"] == 4);
  CHECK(run({"schedule", single.string(), "--algo", "rsa", "--size", "4"}).status == 1);
}

TEST_CASE("analyze reports four link conflicts") {
  const auto j = run_json({"analyze", kRsaFile});
  CHECK(j["windows"]["link"]["occurrences"] == 4);
  CHECK(j["paths"]["link_occurrences"] == 4);
  CHECK(j["consistent"] == true);
  const auto ms = fixtures::rsa_example();
  CHECK(j["windows"]["switch"]["occurrences"] == analyze(ms).switch_occurrences.size());

  const auto a = run_json({"analyze", kAsaFile});
  CHECK(a["windows"]["switch"]["occurrences"] == 12);
  CHECK(a["windows"]["switch"]["distinct_pairs"] == 8);
  CHECK(run({"analyze", kAsaFile, "--format", "text"}).out.find("agrees") != std::string::npos);
}

TEST_CASE("route prints the path") {
  const auto j = run_json({"route", "--src", "0", "--dst", "0", "--size", "8", "--format", "json"});
  CHECK(j["links"] == Json::parse("[0,0,0,0]"));
  const auto t = run({"route", "--src", "3", "--dst", "6"});
  CHECK(t.status == 0);
  CHECK(t.out.find("011 111 111 110") != std::string::npos);
  CHECK(run({"route", "--src", "9", "--dst", "0"}).status == 1);
}

TEST_CASE("bench writes csv") {
  const auto r = run({"bench", "--sizes", "8,16", "--trials", "2", "--seed", "3", "--no-timing"});
  REQUIRE(r.status == 0);
  CHECK(std::count(r.out.begin(), r.out.end(), '\n') == 1 + 2 * 2 * 7);
  CHECK(r.out.starts_with(
      "algorithm,N,seed,trial,passes,total_switch_occurrences,total_link_occurrences,"
      "max_pass_switch,max_pass_link,micros\n"));
  CHECK(r.out == run({"bench", "--sizes", "8,16", "--trials", "2", "--seed", "3", "--no-timing",
                      "--threads", "3"}).out);

  const auto config = temp_file("bench.json",
                                R"({"sizes":[8],"trials":1,"seed":9,"algorithms":["asa","rsa"],)"
                                R"("mode":"strict","timing":false})");
  const auto c = run({"bench", "--config", config.string()});
  REQUIRE(c.status == 0);
  CHECK(c.out.find("\nasa,8,9,0,") != std::string::npos);
  CHECK(std::count(c.out.begin(), c.out.end(), '\n') == 3);

  const auto out_path = std::filesystem::temp_directory_path() / "omin_cli_test_out.csv";
  CHECK(run({"bench", "--config", config.string(), "--output", out_path.string()}).status == 0);
  std::ifstream in(out_path);
  std::string file((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  CHECK(file == c.out);
}

TEST_CASE("bench seed falls back to OMIN_SEED") {
  ::setenv("OMIN_SEED", "41", 1);
  const auto r = run({"bench", "--algos", "wm", "--no-timing"});
  ::unsetenv("OMIN_SEED");
  REQUIRE(r.status == 0);
  CHECK(r.out.find("\nwm,8,41,0,") != std::string::npos);
}

TEST_CASE("dot output covers the topology") {
  const auto r = run({"dot", kRsaFile});
  REQUIRE(r.status == 0);
  CHECK(r.out.starts_with("digraph omega {"));
  std::size_t clusters = 0;
  for (auto pos = r.out.find("subgraph cluster_"); pos != std::string::npos;
       pos = r.out.find("subgraph cluster_", pos + 1)) {
    ++clusters;
  }
  CHECK(clusters == 12);
  CHECK(r.out.find("color=red") != std::string::npos);
  CHECK(r.out.find("style=dashed") != std::string::npos);
}

TEST_CASE("usage and input errors exit with 1") {
  CHECK(run({}).status == 1);
  CHECK(run({"frobnicate"}).status == 1);
  CHECK(run({"schedule", kAsaFile, "--algo", "asa", "--bogus"}).status == 1);
  CHECK(run({"schedule", kAsaFile, "--algo", "genetic"}).status == 1);
  CHECK(run({"schedule", kAsaFile, "--algo", "asa", "--mode", "lax"}).status == 1);
  CHECK(run({"schedule", kAsaFile, "--algo", "asa", "--format", "xml"}).status == 1);
  CHECK(run({"schedule", "/nonexistent/file", "--algo", "asa"}).status == 1);
  CHECK(run({"bench", "--sizes", "12"}).status == 1);
  const auto dup = temp_file("dup.txt", "0 1\n0 2\n");
  const auto r = run({"analyze", dup.string()});
  CHECK(r.status == 1);
  CHECK(r.err.find("line 2") != std::string::npos);
  CHECK(run({"--help"}).status == 0);
}
