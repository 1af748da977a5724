#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "sheafcon/cli.hpp"
#include "sheafcon/io.hpp"

using namespace sheafcon;
namespace fs = std::filesystem;

namespace {

  std::string data(const std::string& file) { return std::string(SHEAFCON_DATA_DIR) + "/" + file; }

  using Status = CommandResult::Status;

  std::size_t count(const std::string& text, const std::string& needle) {
    std::size_t n = 0;
    for (auto pos = text.find(needle); pos != std::string::npos; pos = text.find(needle, pos + 1)) {
      ++n;
    }
    return n;
  }

  fs::path scratch(const std::string& name) {
    auto dir = fs::temp_directory_path() / "sheafcon_test_cli";
    fs::create_directories(dir);
    return dir / name;
  }

  std::string slurp(const fs::path& p) {
    std::ifstream in(p);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
  }

}  // namespace

TEST_CASE("exit codes") {
  CHECK(exit_code(Status::ok) == 0);
  CHECK(exit_code(Status::property_failed) == 1);
  CHECK(exit_code(Status::invalid_input) == 2);
}

TEST_CASE("alg validate and con") {
  CHECK(run({"alg", "validate", data("chain3.alg")}).status == Status::ok);
  auto r = run({"alg", "con", data("chain3.alg")});
  CHECK(r.status == Status::ok);
  CHECK(r.report.find("4 congruences") != std::string::npos);

  auto j = run({"--format", "json", "alg", "con", data("chain3.alg")});
  REQUIRE(j.status == Status::ok);
  auto doc = Json::parse(j.report);
  CHECK(doc["count"] == 4);
  CHECK(doc["congruences"].size() == 4);
}

TEST_CASE("con commute and crt") {
  auto r = run({"con", "commute", data("chain3.alg"), "--pairs", "0 m", "m 1"});
  CHECK(r.status == Status::property_failed);
  CHECK(r.report.find("(0,1)") != std::string::npos);
  CHECK(run({"con", "commute", data("square.alg"), "--pairs", "(0,0) (0,1)", "(0,0) (1,0)"})
            .status
        == Status::ok);

  auto c = run({"con", "crt", data("square.alg"), "--pairs", "(0,0) (0,1)", "(0,0) (1,0)",
                "--targets", "(0,0)", "(1,1)"});
  CHECK(c.status == Status::ok);
  CHECK(c.report.find("solution: (0,1)") != std::string::npos);
  auto bad = run({"con", "crt", data("chain3.alg"), "--pairs", "0 m", "m 1", "--targets", "0", "1"});
  CHECK(bad.status == Status::property_failed);
}

TEST_CASE("sheaf commands") {
  auto rt = run({"sheaf", "roundtrip", data("kerpi.json")});
  CHECK(rt.status == Status::ok);
  auto b = run({"sheaf", "build", data("kerpi.json")});
  CHECK(b.status == Status::ok);
  CHECK(b.report.find("global sections: 4") != std::string::npos);
  CHECK(run({"sheaf", "soft", data("kerpi.json")}).status == Status::ok);
  auto s = run({"sheaf", "soft", data("noncommuting.json")});
  CHECK(s.status == Status::property_failed);
  CHECK(s.report.find("y1={1};y2={0}") != std::string::npos);
  CHECK(run({"sheaf", "roundtrip", data("noncommuting.json")}).status == Status::property_failed);

  auto out = scratch("direct.json");
  auto d = run({"sheaf", "direct-image", data("kerpi.json"), data("collapse.json"), "-o",
                out.string()});
  CHECK(d.status == Status::ok);
  CHECK(d.report.find("stalk of 4") != std::string::npos);
  REQUIRE(fs::exists(out));
  auto written = stalk_assignment_from_json(load_json(out));
  CHECK(written.base().size() == 1);
  CHECK(written.stalk(0).is_diagonal());
}

TEST_CASE("dl commands") {
  auto d = run({"dl", "dual", data("square.alg")});
  CHECK(d.status == Status::ok);
  CHECK(d.report.find("2 points") != std::string::npos);
  auto sp = run({"dl", "sp", data("chain3.alg")});
  CHECK(sp.status == Status::ok);
  CHECK(sp.report.find("|Con A| = 4") != std::string::npos);

  auto q = scratch("q.json");
  std::ofstream(q) << R"({"X": {"elements": ["x1", "x2"], "covers": [["x1", "x2"]]},
                        "Y": {"elements": ["y1", "y2"], "covers": []},
                        "map": {"x1": "y1", "x2": "y2"}})";
  CHECK(run({"dl", "interp", q.string()}).status == Status::property_failed);
  std::ofstream(q) << R"({"X": {"elements": ["x1", "x2"], "covers": [["x1", "x2"]]},
                        "Y": {"elements": ["y1", "y2"], "covers": []},
                        "map": {"x1": "y1", "x2": "y1"}})";
  CHECK(run({"dl", "interp", q.string()}).status == Status::ok);
}

TEST_CASE("mv commands") {
  auto l = scratch("l2.alg");
  CHECK(run({"mv", "chain", "2", "-o", l.string()}).status == Status::ok);
  auto sp = run({"mv", "spectrum", l.string()});
  CHECK(sp.status == Status::ok);
  CHECK(sp.report.find("1 prime ideals") != std::string::npos);

  auto p = scratch("p.alg");
  CHECK(run({"mv", "product", "1", "2", "-o", p.string()}).status == Status::ok);
  auto s = run({"mv", "sheaf", p.string()});
  CHECK(s.status == Status::ok);
  CHECK(s.report.find("global sections: 6") != std::string::npos);
  CHECK(run({"mv", "chain", "0"}).status == Status::invalid_input);
  CHECK(run({"mv", "spectrum", data("chain3.alg")}).status == Status::invalid_input);
}

TEST_CASE("suite run") {
  auto r = run({"suite", "run", "--only", "1,10"});
  CHECK(r.status == Status::ok);
  CHECK(count(r.report, "PASS") == 2);
  CHECK(run({"suite", "run", "--only", "11"}).status == Status::invalid_input);
}

TEST_CASE("export dot") {
  auto p = run({"export", "dot", "poset", data("chain2.json")});
  CHECK(p.status == Status::ok);
  CHECK(count(p.report, "->") == 1);
  CHECK(count(p.report, "\";\n") == 2);

  auto c = run({"export", "dot", "conlat", data("chain3.alg")});
  CHECK(count(c.report, " [label=") == 4);
  CHECK(count(c.report, "->") == 4);

  auto e = run({"export", "dot", "etale", data("kerpi.json")});
  CHECK(count(e.report, "subgraph") == 2);
  CHECK(count(e.report, " [label=") == 4);

  auto out = scratch("conlat.dot");
  CHECK(run({"export", "dot", "conlat", data("chain3.alg"), "-o", out.string()}).status
        == Status::ok);
  CHECK(slurp(out) == c.report);

  CHECK(run({"export", "dot", "nope", data("chain2.json")}).status == Status::invalid_input);
}

TEST_CASE("output is deterministic") {
  for (const auto& args : std::vector<std::vector<std::string>>{
           {"alg", "con", data("chain3.alg")},
           {"sheaf", "build", data("kerpi.json")},
           {"--format", "json", "dl", "dual", data("square.alg")}}) {
    CHECK(run(args).report == run(args).report);
  }
}

TEST_CASE("invalid input") {
  CHECK(run({}).status == Status::invalid_input);
  CHECK(run({"bogus"}).status == Status::invalid_input);
  CHECK(run({"alg", "con", data("missing.alg")}).status == Status::invalid_input);
  CHECK(run({"alg", "con", data("kerpi.json")}).status == Status::invalid_input);
  CHECK(run({"--format", "xml", "alg", "con", data("chain3.alg")}).status
        == Status::invalid_input);
}
