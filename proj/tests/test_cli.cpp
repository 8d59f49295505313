#include <catch2/catch_amalgamated.hpp>

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "nilcover/cli.hpp"

using namespace nilcover;

namespace {

int run(std::vector<std::string> args) {
  std::vector<const char*> argv{"nilcover"};
  for (const auto& a : args) argv.push_back(a.c_str());
  return run_cli(static_cast<int>(argv.size()), argv.data());
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  REQUIRE(in);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

const std::string dir = "/tmp/nilcover_cli_test";

}  // namespace

TEST_CASE("cli: gen, custom_file round trip is byte-identical") {
  std::remove((dir + "_a.json").c_str());
  REQUIRE(run({"gen", "--kind", "heisenberg_box", "--params", "1", "1", "2",
               "--output", dir + "_a.json"}) == 0);
  REQUIRE(run({"gen", "--kind", "custom_file", "--input", dir + "_a.json",
               "--output", dir + "_b.json"}) == 0);
  CHECK(slurp(dir + "_a.json") == slurp(dir + "_b.json"));
}

TEST_CASE("cli: certify then cover with a certificate file") {
  REQUIRE(run({"gen", "--kind", "central_interval", "--params", "5",
               "--output", dir + "_i.json"}) == 0);
  REQUIRE(run({"certify", "--input", dir + "_i.json", "--output",
               dir + "_cert.json"}) == 0);
  REQUIRE(run({"cover", "--input", dir + "_i.json", "--cert", dir + "_cert.json",
               "--output", dir + "_cover.json"}) == 0);
  ojson j = load_json(dir + "_cover.json");
  CHECK(j.at("final_dim").get<int>() == 1);
  CHECK(j.at("all_pass").get<bool>());
}

TEST_CASE("cli: centralize, gleason, calculus succeed on a box") {
  REQUIRE(run({"gen", "--kind", "heisenberg_box", "--params", "1", "1", "2",
               "--output", dir + "_box.json"}) == 0);
  CHECK(run({"centralize", "--input", dir + "_box.json", "--output",
             dir + "_cen.json"}) == 0);
  CHECK(run({"centralize", "--input", dir + "_box.json", "--exhaustive-gamma",
             "--output", dir + "_cenx.json"}) == 0);
  ojson px = load_json(dir + "_cenx.json");
  CHECK(px.at("witness").contains("best_count"));
  CHECK(run({"gleason", "--input", dir + "_box.json", "--output",
             dir + "_gl.json"}) == 0);
  CHECK(run({"calculus", "--input", dir + "_box.json", "--kmax", "3",
             "--output", dir + "_calc.json"}) == 0);
}

TEST_CASE("cli: gleason accepts an explicit chain") {
  Subalgebra center = lie_closure(3, {NilVec::basis(3, 2)});
  ojson chain = ojson::array();
  chain.push_back(subalgebra_to_json(zero_subalgebra(3)));
  chain.push_back(subalgebra_to_json(center));
  save_json(dir + "_chain.json", chain);
  CHECK(run({"gleason", "--input", dir + "_box.json", "--chain",
             dir + "_chain.json", "--output", dir + "_gl2.json"}) == 0);
  ojson j = load_json(dir + "_gl2.json");
  CHECK(j.at("chain").size() == 2);
}

TEST_CASE("cli: usage and resource errors exit with 2") {
  CHECK(run({"cover", "--input", "/tmp/nilcover_missing_file.json"}) == 2);
  CHECK(run({"gen", "--kind", "mystery", "--output", dir + "_x.json"}) == 2);
  CHECK(run({"gen", "--kind", "heisenberg_box", "--params", "1"}) == 2);
  CHECK(run({"unknown-subcommand"}) == 2);
  // A pair cap that cannot even hold |A|^2 is a resource refusal.
  CHECK(run({"cover", "--input", dir + "_box.json", "--max-pairs", "10"}) == 2);
  std::ofstream bad(dir + "_bad.json");
  bad << "{\"n\": 3}";
  bad.close();
  CHECK(run({"certify", "--input", dir + "_bad.json"}) == 2);
}

TEST_CASE("cli: invalid certificates exit with 1") {
  // A certificate whose X is too small to cover fails verification.
  ojson cert{{"K", "1"}, {"X", ojson::array()}};
  cert["X"].push_back(element_to_json(UniTri::identity(3)));
  save_json(dir + "_badcert.json", cert);
  CHECK(run({"cover", "--input", dir + "_box.json", "--cert",
             dir + "_badcert.json"}) == 1);
}
