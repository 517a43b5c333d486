#include "capkit/scenario_io.hpp"
#include "support/builders.hpp"
#include "support/process.hpp"

#include <doctest.h>
#include <json.hpp>

#include <filesystem>
#include <fstream>

using namespace capkit;
using testutil::fixture;
using testutil::run_cli;
using testutil::vec;
using nlohmann::json;

namespace {

std::string write_temp(const std::string& name, const std::string& text)
{
    const auto path = std::filesystem::temp_directory_path() / name;
    std::ofstream(path) << text;
    return path.string();
}

} // namespace

TEST_CASE("validate")
{
    const auto ok = run_cli("validate " + fixture("grocery.scn"));
    CHECK(ok.exit_code == 0);
    CHECK(ok.out == "grocery.scn: ok (2 interactions, 0 traces)\n");

    const auto bad = run_cli("validate " + fixture("malformed/nontotal_v_table.scn"));
    CHECK(bad.exit_code == 2);
    CHECK(bad.err.find("/scenario/maps/v/table") != std::string::npos);
    CHECK(bad.err.find("document rejected") != std::string::npos);

    const auto strict = run_cli("validate " + fixture("malformed/unknown_field_scenario.scn"));
    CHECK(strict.exit_code == 2);
    const auto lenient = run_cli("validate --lenient " + fixture("malformed/unknown_field_scenario.scn"));
    CHECK(lenient.exit_code == 0);
    CHECK(lenient.err.find("warning") != std::string::npos);

    CHECK(run_cli("validate /nonexistent/file.scn").exit_code == 2);
}

TEST_CASE("frontier")
{
    const auto m = run_cli("frontier " + fixture("grocery.scn") + " --set M --format structured");
    REQUIRE(m.exit_code == 0);
    const auto j = json::parse(m.out);
    REQUIRE(j.at("members").size() == 2);
    CHECK(j.at("members")[0].at("id") == "b_simple_cook");
    CHECK(j.at("members")[1].at("id") == "b_takeout");

    const auto q = run_cli("frontier " + fixture("grocery.scn") + " --set Q");
    CHECK(q.out.find("(3 functionings)") != std::string::npos);

    // Every functioning falls below the threshold.
    auto s = testutil::ScenarioBuilder(1, 1, 1).functioning("a", vec({1}), vec({0}), vec({1})).build();
    s.theta = vec({1});
    ScenarioDocument doc;
    doc.scenario = s;
    const auto path = write_temp("capkit_below_theta.scn", serialize(doc));
    const auto star = run_cli("frontier " + testutil::shell_quote(path) + " --set Qstar");
    CHECK(star.exit_code == 0);
    CHECK(star.out.find("(0 functionings)") != std::string::npos);
    std::filesystem::remove(path);
}

TEST_CASE("judge")
{
    SUBCASE("justified paternalism")
    {
        const auto r = run_cli("judge " + fixture("subway.scn") + " --interaction subway_grab --format structured");
        REQUIRE(r.exit_code == 0);
        const auto j = json::parse(r.out);
        CHECK(j.at("verdicts")[0].at("paternalism").at("status") == "justified");
    }
    SUBCASE("violations and the exit code")
    {
        const auto plain = run_cli("judge " + fixture("ransomware.scn"));
        CHECK(plain.exit_code == 0);
        const auto failing = run_cli("judge " + fixture("ransomware.scn") + " --fail-on-violation");
        CHECK(failing.exit_code == 1);
        CHECK(failing.out == plain.out);
    }
    SUBCASE("identity interaction has no violation")
    {
        const auto r = run_cli("judge " + fixture("grocery.scn") + " --interaction noop --fail-on-violation");
        CHECK(r.exit_code == 0);
    }
    SUBCASE("strict formula mode")
    {
        const auto guarded = run_cli("judge " + fixture("grocery.scn") + " --interaction noop");
        const auto raw = run_cli("judge " + fixture("grocery.scn") + " --interaction noop --strict-formula");
        CHECK(guarded.out.find("weak=no") != std::string::npos);
        CHECK(raw.out.find("weak=yes") != std::string::npos);
    }
    SUBCASE("unknown interaction")
    {
        CHECK(run_cli("judge " + fixture("grocery.scn") + " --interaction nope").exit_code == 2);
    }
}

TEST_CASE("detect")
{
    const auto truncated = run_cli("detect " + fixture("domination.trc") + " --trace truncated --format structured");
    REQUIRE(truncated.exit_code == 0);
    CHECK(json::parse(truncated.out).at("trace").at("domination").at("status") == "insufficient_evidence");

    const auto full = run_cli("detect " + fixture("domination.trc") + " --trace full --format structured");
    REQUIRE(full.exit_code == 0);
    CHECK(json::parse(full.out).at("trace").at("domination").contains("finding"));
    CHECK(run_cli("detect " + fixture("domination.trc") + " --trace full --fail-on-violation").exit_code == 1);

    const auto aligned = run_cli("detect " + fixture("domination.trc") + " --trace aligned --format structured");
    CHECK(json::parse(aligned.out).at("trace").at("domination").at("status") == "none");

    const auto broken = run_cli("detect " + fixture("malformed/trace_before_mismatch.trc") + " --trace t");
    CHECK(broken.exit_code == 2);
    CHECK(broken.err.find("/traces/0/steps/1/before") != std::string::npos);
}

TEST_CASE("color control")
{
    const auto args = "judge " + fixture("ransomware.scn");
    CHECK(run_cli(args, "CAPKIT_COLOR=always").out.find('\x1b') != std::string::npos);
    CHECK(run_cli(args, "CAPKIT_COLOR=never").out.find('\x1b') == std::string::npos);
    // Output is a pipe here, so auto means no color.
    CHECK(run_cli(args, "CAPKIT_COLOR=auto").out.find('\x1b') == std::string::npos);
}
