#include <doctest.h>

#include <json.hpp>

#include "crverify/fixtures.hpp"
#include "crverify/runner.hpp"

using namespace crv;
using nlohmann::json;

namespace {

json r7() { return json::parse(*fixture_document("paper-r7-euclidean")); }

SpecError rejected(const json& doc) {
    try {
        parse_spec(doc.dump(), "t.json");
    } catch (const SpecError& e) {
        return e;
    }
    FAIL("spec was accepted");
    return SpecError(SpecError::Kind::Io, "", "");
}

}  // namespace

TEST_SUITE("spec") {

TEST_CASE("fixture registry") {
    const auto list = fixture_list();
    CHECK(list.size() == 5);
    for (const FixtureInfo& f : list) {
        CAPTURE(f.name);
        CHECK_NOTHROW(load_fixture(f.name));
    }
    CHECK_FALSE(fixture_document("nope").has_value());
    CHECK_THROWS_AS(load_fixture("nope"), SpecError);
}

TEST_CASE("R^7 fixture dimensions") {
    const SpecFile s = load_fixture("paper-r7-euclidean");
    CHECK(s.ambient.dim == 7);
    REQUIRE(s.submanifold.has_value());
    CHECK(s.submanifold->dim == 5);
    CHECK(s.has_distributions());
    CHECK(s.cr_structure().D.rank() == 3);
}

TEST_CASE("dump then parse is stable") {
    const std::string doc = *fixture_document("fix-cr5");
    const SpecFile a = parse_spec(doc), b = parse_spec(doc);
    CHECK(a.canonical == b.canonical);
    CHECK(parse_spec(json::parse(doc).dump(4)).canonical == a.canonical);
}

TEST_CASE("variable outside the chart is located") {
    json d = r7();
    d["ambient"]["metric"][3] = "x8";
    const SpecError e = rejected(d);
    CHECK(e.kind() == SpecError::Kind::Expression);
    CHECK(e.location() == "t.json:ambient.metric[3] offset 0");
    CHECK(e.message().find("x8") != std::string::npos);
}

TEST_CASE("phi of the wrong shape names the block") {
    json d = r7();
    d["ambient"]["phi"].erase(6);
    SpecError e = rejected(d);
    CHECK(e.kind() == SpecError::Kind::Dimension);
    CHECK(e.location() == "t.json:ambient.phi");
    d = r7();
    d["ambient"]["phi"][2].push_back("0");
    e = rejected(d);
    CHECK(e.kind() == SpecError::Kind::Dimension);
    CHECK(e.location().find("ambient.phi") != std::string::npos);
}

TEST_CASE("embedding dimension mismatch") {
    json d = r7();
    d["submanifold"]["embedding"].erase(0);
    CHECK(rejected(d).kind() == SpecError::Kind::Dimension);
    d = r7();
    d["submanifold"]["D"][0] = {"1", "0"};
    CHECK(rejected(d).location() == "t.json:submanifold.D[0]");
}

TEST_CASE("unknown keys are rejected") {
    json d = r7();
    d["ambient"]["colour"] = 1;
    const SpecError e = rejected(d);
    CHECK(e.kind() == SpecError::Kind::UnknownKey);
    CHECK(e.location() == "t.json:ambient.colour");
}

TEST_CASE("malformed JSON reports line and column") {
    try {
        parse_spec("{\n  \"ambient\": {\n    \"dim\": 7,,\n", "bad.json");
        FAIL("accepted");
    } catch (const SpecError& e) {
        CHECK(e.kind() == SpecError::Kind::Syntax);
        CHECK(e.location() == "bad.json:line 3, column 14");
    }
}

TEST_CASE("sampling and tolerance blocks") {
    json d = r7();
    d["tolerance"] = {{"default", 1e-6}, {"cr", 1e-4}};
    d["sampling"] = {{"mode", "explicit"},
                     {"ambient_points", {{0, 0, 0, 0, 0, 0, 0}}},
                     {"domain_points", {{0, 0, 0, 0, 0}, {1, 1, 1, 1, 1}}}};
    const SpecFile s = parse_spec(d.dump());
    CHECK(s.tolerance.for_suite("cr") == 1e-4);
    CHECK(s.tolerance.for_suite("ambient") == 1e-6);
    CHECK(s.sampling.mode == SamplingSpec::Mode::Explicit);
    CHECK(s.sampling.domain_points.size() == 2);
    d["sampling"]["domain_points"][1] = {1, 1};
    CHECK(rejected(d).kind() == SpecError::Kind::Dimension);
    d = r7();
    d["tolerance"] = {{"default", -1}};
    CHECK(rejected(d).kind() == SpecError::Kind::Value);
}

TEST_CASE("explicit K coefficients") {
    json d = json::parse(*fixture_document("fix-s3-reversed"));
    json K = json::array();
    for (int i = 0; i < 27; ++i) K.push_back("0");
    d["ambient"]["K"] = {{"coefficients", K}};
    const SpecFile s = parse_spec(d.dump());
    CHECK_FALSE(s.ambient.lambda.has_value());
    REQUIRE(s.ambient.K.has_value());
    K.erase(0);
    d["ambient"]["K"] = {{"coefficients", K}};
    CHECK(rejected(d).kind() == SpecError::Kind::Dimension);
}

TEST_CASE("missing file") { CHECK_THROWS_AS(load_spec("/nonexistent/spec.json"), SpecError); }

}  // TEST_SUITE

TEST_SUITE("runner") {

TEST_CASE("suite parsing") {
    CHECK(parse_suites("all").size() == 5);
    CHECK(parse_suites("cr,ambient") == std::vector<Suite>{Suite::CR, Suite::Ambient});
    CHECK_THROWS_AS(parse_suites("cr,geometry"), std::invalid_argument);
    CHECK_THROWS_AS(parse_suites(""), std::invalid_argument);
}

TEST_CASE("prerequisites are added in execution order") {
    CHECK(with_prerequisites({Suite::Product}) ==
          std::vector<Suite>{Suite::Ambient, Suite::Submanifold, Suite::CR, Suite::Product});
    CHECK(with_prerequisites({Suite::Contact}) == std::vector<Suite>{Suite::Ambient, Suite::Contact});
    CHECK(with_prerequisites({Suite::Ambient}) == std::vector<Suite>{Suite::Ambient});
}

TEST_CASE("prerequisite suites are marked") {
    RunOptions o;
    o.suites = {Suite::Contact};
    o.samples = 8;
    const ReportDocument doc = run(load_fixture("fix-s3"), o);
    REQUIRE(doc.suites.size() == 2);
    CHECK_FALSE(doc.suites[0].requested);
    CHECK(doc.suites[1].requested);
}

TEST_CASE("missing submanifold block") {
    json d = json::parse(*fixture_document("fix-s3"));
    const SpecFile s = parse_spec(d.dump());
    RunOptions o;
    o.suites = {Suite::CR};
    try {
        run(s, o);
        FAIL("ran");
    } catch (const SpecError& e) {
        CHECK(e.message() == "missing submanifold block");
    }
    o.suites = {Suite::Ambient, Suite::Contact};
    CHECK_NOTHROW(run(s, o));
}

TEST_CASE("engine failures become failing records") {
    // Metric singular everywhere off a thin set: sampling cannot find points.
    json d = json::parse(*fixture_document("fix-s3"));
    d["ambient"]["metric"][0] = "0";
    d["ambient"]["metric"][1] = "0";
    d["ambient"]["metric"][2] = "0";
    RunOptions o;
    o.suites = {Suite::Ambient};
    const ReportDocument doc = run(parse_spec(d.dump()), o);
    CHECK(doc.exit_code() == 1);
    const Record& r = doc.suites[0].reports[0].records[0];
    CHECK_FALSE(r.passed);
    CHECK(r.note.find("sampling") != std::string::npos);
}

TEST_CASE("overrides change the digest, identical inputs do not") {
    const SpecFile s = load_fixture("fix-s3");
    RunOptions o;
    o.suites = {Suite::Ambient};
    o.samples = 4;
    const ReportDocument a = run(s, o), b = run(s, o);
    CHECK(a.digest == b.digest);
    CHECK(render_structured(a) == render_structured(b));
    o.seed = 7;
    CHECK(run(s, o).digest != a.digest);
}

TEST_CASE("structured output") {
    RunOptions o;
    o.suites = {Suite::Ambient, Suite::Contact};
    o.samples = 4;
    const ReportDocument doc = run(load_fixture("fix-s3-reversed"), o);
    const json j = json::parse(render_structured(doc));
    CHECK(j["tool"] == "verify");
    CHECK(j["input_digest"] == doc.digest);
    CHECK(j["suites"].size() == 2);
    CHECK(j["passed"] == doc.passed());
    const json& rec = j["suites"][0]["reports"][0]["records"][0];
    for (const char* k : {"name", "anchor", "kind", "status", "max_residual", "evaluations", "witness"})
        CHECK(rec.contains(k));
}

TEST_CASE("text output is a fixed-width table") {
    RunOptions o;
    o.suites = {Suite::Ambient};
    o.samples = 4;
    const std::string t = render_text(run(load_fixture("fix-s3"), o));
    CHECK(t.find("max residual") != std::string::npos);
    CHECK(t.find("verdict: PASS") != std::string::npos);
    // Every table row in one report has its separators at the same columns.
    std::istringstream in(t);
    std::string line;
    std::size_t bar = std::string::npos;
    while (std::getline(in, line)) {
        if (line.find(" | ") == std::string::npos) continue;
        const std::size_t b = line.find(" | ");
        if (bar == std::string::npos) bar = b;
        CHECK(b == bar);
    }
}

TEST_CASE("fnv1a") {
    CHECK(fnv1a_hex("") == "cbf29ce484222325");
    CHECK(fnv1a_hex("a") == "af63dc4c8601ec8c");
}

}  // TEST_SUITE
