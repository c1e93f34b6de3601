#include <doctest.h>

#include "cwkit/io.hpp"

using namespace cwkit;

namespace {

const char* kTheta = R"({
  "command": "theta",
  "ring": {"field": "QQ", "variables": ["x", "y"]},
  "n": 2,
  "orientation": {"generators": ["x", "y"]}
})";

}  // namespace

TEST_SUITE("io") {
  TEST_CASE("parse errors carry line and column") {
    try {
      parse_document("{\n  \"ring\": {\"field\": \"QQ\",,}\n}");
      FAIL("no error");
    } catch (const SchemaError& e) {
      CHECK(std::string(e.what()).find("line 2, column") != std::string::npos);
    }
  }

  TEST_CASE("schema errors name the failing key") {
    auto message = [](const std::string& text) {
      try {
        parse_document(text);
      } catch (const SchemaError& e) {
        return std::string(e.what());
      }
      return std::string();
    };
    CHECK(message(R"({"ring": {"field": "QQ"}, "extra": 1})") == "document: unknown key 'extra'");
    CHECK(message(R"({"n": 2})") == "ring: missing required key");
    CHECK(message(R"({"ring": {"field": "QQ", "variables": ["x", 3]}})") == "ring.variables[1]: expected a string");
    CHECK(message(R"({"ring": {"field": "QQ"}, "boundary": {"g": ["x"]}})") == "boundary.t: missing required key");
  }

  TEST_CASE("documents round trip") {
    const ProblemDocument d = parse_document(kTheta);
    CHECK(d.command == "theta");
    CHECK(d.variables == std::vector<std::string>{"x", "y"});
    CHECK(parse_document(document_to_json(d).dump()) == d);
  }

  TEST_CASE("theta report") {
    const Report r = run("theta", kTheta);
    CHECK(r.status == Status::ok);
    const Json& t = r.json["result"]["cycle"]["terms"];
    REQUIRE(t.size() == 1);
    CHECK(t[0]["point"]["label"] == "(0, 0)");
    CHECK(t[0]["gw"]["class"] == "<1>");
    CHECK(r.json.contains("timing"));
    CHECK_FALSE(strip_timing(r.json).contains("timing"));
    CHECK(strip_timing(run("", kTheta).json).dump() == strip_timing(r.json).dump());
  }

  TEST_CASE("validate on (x, x) is rejected") {
    const Report r = run("validate", R"({"ring": {"field": "QQ", "variables": ["x", "y"]}, "n": 2,
                                         "orientation": {"generators": ["x", "x"]}})");
    CHECK(r.status == Status::rejected);
    CHECK(exit_code(r.status) == 2);
    CHECK(r.json["result"]["reason"] == "height 1 < n = 2");
  }

  TEST_CASE("homotopy-check on (x, y - T)") {
    const Report r = run("homotopy-check", R"({"ring": {"field": "QQ", "variables": ["x", "y", "T"], "homotopy": "T"},
                                               "n": 2, "orientation": {"generators": ["x", "y - T"]}})");
    CHECK(r.status == Status::ok);
    CHECK(r.json["result"]["det"] == "1");
    CHECK(r.json["result"]["delta"].size() == 3);
  }

  TEST_CASE("statuses and exit codes") {
    CHECK(exit_code(Status::ok) == 0);
    CHECK(exit_code(Status::unsupported) == 3);
    CHECK(exit_code(Status::falsified) == 4);
    CHECK(exit_code(Status::error) == 1);
    const Report mismatch = run("validate", kTheta);
    CHECK(mismatch.status == Status::rejected);
    const Report unknown_var = run("theta", R"({"ring": {"field": "QQ", "variables": ["x", "y"]}, "n": 2,
                                               "orientation": {"generators": ["x", "z"]}})");
    CHECK(unknown_var.status == Status::rejected);
    CHECK(unknown_var.json["error"].get<std::string>().find("orientation.generators[1]") != std::string::npos);
    const Report unsupported = run("theta", R"({"ring": {"field": "QQ", "variables": ["x", "y", "z"]}, "n": 2,
                                               "orientation": {"generators": ["x", "y"]}})");
    CHECK(unsupported.status == Status::unsupported);
    const Report falsified = run("verify-difference", R"({"ring": {"field": "QQ", "variables": ["x", "y"]}, "n": 2,
        "cycles": [[{"point": ["x", "y"], "form": ["1"]}], [{"point": ["x", "y"], "form": ["-1"]}]]})");
    CHECK(falsified.status == Status::falsified);
    CHECK(run("theta", "not json").status == Status::rejected);
  }

  TEST_CASE("witt command") {
    const Report r = run("witt", R"j({"ring": {"field": "GF(5)", "variables": []}, "witt": {"forms": [["1", "4"], ["2", "3"]]}})j");
    CHECK(r.status == Status::ok);
    CHECK(r.json["result"]["isometric"] == true);
    CHECK(r.json["result"]["forms"][0]["witt_class"] == "<>");
  }

  TEST_CASE("text rendering") {
    const std::string text = render_text(run("theta", kTheta).json);
    CHECK(text.find("status: ok") != std::string::npos);
    CHECK(text.find("(0, 0) over QQ: <1>, multiplicity 1") != std::string::npos);
  }
}
