#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "fixtures.hpp"
#include "hurwitz/cli.hpp"

using namespace hurwitz;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string fixture(const std::string& name) { return std::string(HURWITZ_DATA_DIR) + "/" + name + ".json"; }

std::filesystem::path scratch(const std::string& name) {
  auto dir = std::filesystem::temp_directory_path() / "hurwitz_cli_tests";
  std::filesystem::create_directories(dir);
  return dir / name;
}

std::string write_scratch(const std::string& name, const std::string& text) {
  const auto path = scratch(name);
  std::ofstream(path) << text;
  return path.string();
}

std::string slurp(const std::filesystem::path& path) {
  std::ifstream in(path);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

std::string figure4_id() {
  const auto& s = fixtures::strata("degree3");
  return s.classes[class_of(s, fixtures::figure4())].short_id;
}

}  // namespace

TEST_CASE("validate") {
  CHECK(run({"validate", fixture("degree3")}).code == cli::kOk);
  auto doc = nlohmann::json::parse(slurp(fixture("degree3")));
  doc["genus"] = 2;
  const auto bad = run({"validate", write_scratch("rh.json", doc.dump())});
  CHECK(bad.code == cli::kDomainError);
  CHECK(bad.out.find("riemann-hurwitz") != std::string::npos);
  doc.erase("genus");
  doc["branch_profiles"]["b4"] = {1, 1, 1};
  const auto underivable = run({"validate", write_scratch("odd.json", doc.dump())});
  CHECK(underivable.code == cli::kDomainError);
  CHECK(underivable.out.find("riemann-hurwitz") != std::string::npos);
  const std::string text = slurp(fixture("degree3"));
  const auto truncated = run({"validate", write_scratch("cut.json", text.substr(0, text.size() / 2))});
  CHECK(truncated.code == cli::kInputError);
  CHECK(truncated.err.find("parse error") != std::string::npos);
  CHECK(run({"validate", "/nonexistent.json"}).code == cli::kInputError);
  CHECK(run({"validate", fixture("degree3"), "--format", "table"}).out == "valid\n");
}

TEST_CASE("strata tables") {
  CHECK(run({"strata", fixture("degree4"), "--format", "table"}).out.find("components: 2, strata: 38") !=
        std::string::npos);
  CHECK(run({"strata", fixture("degree3"), "--format", "table"}).out.find("components: 1, strata: 7") !=
        std::string::npos);
  CHECK(run({"strata", fixture("degree1_b4"), "--format", "table"}).out.find("strata: 4") != std::string::npos);
}

TEST_CASE("strata JSON is byte-identical across worker counts") {
  const auto one = run({"strata", fixture("degree4")});
  REQUIRE(one.code == cli::kOk);
  CHECK(run({"strata", fixture("degree4"), "--jobs", "3"}).out == one.out);
  CHECK(run({"strata", fixture("degree4"), "--jobs", "2", "--shuffle-seed", "5"}).out == one.out);
  const auto j = nlohmann::json::parse(one.out);
  CHECK(!j["same_cover_different_component"].empty());
}

TEST_CASE("strata output against the golden file") {
  CHECK(run({"strata", fixture("degree3")}).out == slurp(std::string(HURWITZ_GOLDEN_DIR) + "/degree3_strata.json"));
}

TEST_CASE("strata writes files") {
  const auto out = scratch("report.json");
  const auto dot = scratch("poset.dot");
  std::filesystem::remove(out);
  std::filesystem::remove(dot);
  const auto r = run({"strata", fixture("degree3"), "--out", out.string(), "--dot", dot.string()});
  CHECK(r.code == cli::kOk);
  CHECK(r.out.empty());
  CHECK(nlohmann::json::parse(slurp(out))["classes"].size() == 7);
  CHECK(slurp(dot).find("digraph poset") == 0);
  CHECK(run({"strata", fixture("degree3"), "--out", "/nonexistent/dir/x.json"}).code == cli::kInputError);
  CHECK(run({"strata", fixture("degree3"), "--format", "dot"}).out.find("digraph") == 0);
}

TEST_CASE("strata refuses invalid portraits") {
  auto doc = nlohmann::json::parse(slurp(fixture("degree3")));
  doc["genus"] = 3;
  CHECK(run({"strata", write_scratch("bad.json", doc.dump())}).code == cli::kDomainError);
}

TEST_CASE("cover") {
  const std::string id = figure4_id();
  const auto r = run({"cover", fixture("degree3"), id});
  REQUIRE(r.code == cli::kOk);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["edges"][0]["L"] == 3);
  CHECK(j["edges"][0]["expansions"] == nlohmann::json::array({3}));
  CHECK(j["harmonic"] == true);
  CHECK(run({"cover", fixture("degree3"), id, "--format", "table"}).out.find("L(b3,b4) = 3") != std::string::npos);

  const auto& s = fixtures::strata("degree3");
  const auto open = run({"cover", fixture("degree3"), s.classes[s.components.front()].short_id});
  const auto k = nlohmann::json::parse(open.out);
  CHECK(k["source"]["vertices"].size() == 1);
  CHECK(k["source"]["legs"].size() == 4);
  CHECK(run({"cover", fixture("degree3"), "0123456789abcdef"}).code == cli::kDomainError);
  CHECK(run({"cover", fixture("degree3"), id, "--format", "dot"}).out.find("graph cover") == 0);
}

TEST_CASE("tropical") {
  const std::string id = figure4_id();
  const auto r = run({"tropical", fixture("degree3"), id, "1"});
  REQUIRE(r.code == cli::kOk);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["target"]["edges"][0]["length"] == "3");
  CHECK(j["source"]["edges"][0]["length"] == "1");
  const auto zero = nlohmann::json::parse(run({"tropical", fixture("degree3"), id, "0"}).out);
  CHECK(zero["target"]["edges"][0]["length"] == "0");
  CHECK(zero["source"]["edges"][0]["length"] == "0");
  const auto back = nlohmann::json::parse(run({"tropical", fixture("degree3"), id, "3", "--from-target"}).out);
  CHECK(back["x"] == nlohmann::json::array({"1"}));
  CHECK(run({"tropical", fixture("degree3"), id, "1", "2"}).code == cli::kDomainError);
  CHECK(run({"tropical", fixture("degree3"), id}).code == cli::kDomainError);
  CHECK(run({"tropical", fixture("degree3"), id, "x"}).code == cli::kDomainError);

  const auto& s = fixtures::strata("degree1_b5");
  for (const auto& c : s.classes) {
    if (c.codim != 2) continue;
    const auto t = nlohmann::json::parse(run({"tropical", fixture("degree1_b5"), c.short_id, "2", "5/3"}).out);
    CHECK(t["target"]["edges"][0]["length"] == "2");
    CHECK(t["target"]["edges"][1]["length"] == "5/3");
    break;
  }
}

TEST_CASE("complex export") {
  const auto r = run({"complex", fixture("degree4"), "--which", "cmr"});
  REQUIRE(r.code == cli::kOk);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["name"] == "cmr");
  CHECK(j["forget"].size() == 38);
  CHECK(nlohmann::json::parse(run({"complex", fixture("degree3")}).out)["cones"].size() == 7);
  CHECK(run({"complex", fixture("degree3"), "--which", "nope"}).code == cli::kInputError);
}

TEST_CASE("usage errors") {
  CHECK(run({}).code == cli::kInputError);
  CHECK(run({"frobnicate"}).code == cli::kInputError);
  CHECK(run({"strata", fixture("degree3"), "--jobs", "0"}).code == cli::kInputError);
  CHECK(run({"--help"}).code == cli::kOk);
}
