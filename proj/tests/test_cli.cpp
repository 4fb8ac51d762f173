#include <doctest.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <string>

namespace {

namespace fs = std::filesystem;
using Json = nlohmann::json;

struct RunResult {
    int exit_code;
    std::string output;
};

RunResult run_cli(const std::string& args) {
    std::string command = std::string(SYMTOWER_CLI_PATH) + " " + args + " 2>/dev/null";
    std::array<char, 4096> buffer{};
    std::string output;
    FILE* pipe = popen(command.c_str(), "r");
    REQUIRE(pipe != nullptr);
    while (fgets(buffer.data(), buffer.size(), pipe)) output += buffer.data();
    int status = pclose(pipe);
    return RunResult{WEXITSTATUS(status), output};
}

struct SessionDir {
    fs::path dir;
    SessionDir() {
        dir = fs::temp_directory_path() / ("symtower-test-" + std::to_string(::getpid()));
        fs::create_directories(dir);
    }
    ~SessionDir() { fs::remove_all(dir); }
    std::string session() const { return (dir / "session.json").string(); }
};

}  // namespace

TEST_CASE("cli: tower session and normalize") {
    SessionDir tmp;
    auto setup = run_cli("--session " + tmp.session() + " tower new --q 7 --m 2 --uniformizers t1");
    CHECK(setup.exit_code == 0);
    CHECK(fs::exists(tmp.session()));

    auto result = run_cli("--session " + tmp.session() + " --json normalize \"(t1,t1)\"");
    CHECK(result.exit_code == 0);
    Json j = Json::parse(result.output);
    CHECK(j["result"]["coeffs"] == Json{{"c,t1", 1}});
    CHECK(j["result"]["generator_convention"] == "smallest primitive root");
    CHECK(j["tower"]["q"] == 7);

    // identical invocations produce byte-identical output
    auto again = run_cli("--session " + tmp.session() + " --json --seed 5 normalize \"(t1,t1)\"");
    auto again2 = run_cli("--session " + tmp.session() + " --json --seed 5 normalize \"(t1,t1)\"");
    CHECK(again.output == again2.output);
}

TEST_CASE("cli: period-index on the depth-2 composite tower") {
    SessionDir tmp;
    run_cli("--session " + tmp.session() + " tower new --q 7 --m 6 --uniformizers t1,t2");
    auto result = run_cli("--session " + tmp.session() + " --json period-index \"(c,t1,t2)\"");
    CHECK(result.exit_code == 0);
    Json j = Json::parse(result.output);
    CHECK(j["result"]["period"] == 6);
    CHECK(j["result"]["degree"] == 6);
    CHECK(j["result"]["equal"] == true);
}

TEST_CASE("cli: decompose with trace replays") {
    SessionDir tmp;
    run_cli("--session " + tmp.session() + " tower new --q 7 --m 3 --uniformizers t1");
    auto result = run_cli("--session " + tmp.session() + " --json --trace decompose \"(c*t1, c^2*t1^2)\"");
    CHECK(result.exit_code == 0);
    Json j = Json::parse(result.output);
    CHECK(j["result"].contains("rewrite"));
    CHECK(j["result"]["rewrite"]["trace"].is_array());
    CHECK(!j["result"]["rewrite"]["trace"].empty());
    for (const auto& step : j["result"]["rewrite"]["trace"]) {
        CHECK(step.contains("rule"));
        CHECK(step.contains("before"));
        CHECK(step.contains("after"));
    }
}

TEST_CASE("cli: tower-free commands") {
    auto hilbert = run_cli("--json oracle hilbert -a 7 -b 7 --place 7");
    CHECK(hilbert.exit_code == 0);
    CHECK(Json::parse(hilbert.output)["result"]["symbol"] == -1);

    auto real = run_cli("--json oracle hilbert -a -1 -b -1 --place inf");
    CHECK(Json::parse(real.output)["result"]["symbol"] == -1);

    auto tate = run_cli("--json tate-slot \"(-1,-1)\" \"(-1,-3)\"");
    CHECK(tate.exit_code == 0);
    Json tj = Json::parse(tate.output);
    CHECK(tj["result"]["d"] == -1);
    CHECK(tj["result"]["verified"] == true);
}

TEST_CASE("cli: structured errors and exit codes") {
    SessionDir tmp;
    run_cli("--session " + tmp.session() + " tower new --q 7 --m 2 --uniformizers t1");

    auto parse_err = run_cli("--session " + tmp.session() + " --json normalize \"(c,\"");
    CHECK(parse_err.exit_code == 1);
    Json j = Json::parse(parse_err.output);
    CHECK(j["error"]["kind"] == "ParseError");
    CHECK(j["error"]["position"] == 4);

    auto unknown = run_cli("--session " + tmp.session() + " --json normalize \"(x,t1)\"");
    CHECK(unknown.exit_code == 1);
    CHECK(Json::parse(unknown.output)["error"]["kind"] == "UnknownGenerator");

    auto no_session = run_cli("--session /nonexistent/path.json --json normalize \"(t1,t1)\"");
    CHECK(no_session.exit_code == 1);

    auto bad_tower = run_cli("--session " + tmp.session() + " --json tower new --q 7 --m 7");
    CHECK(bad_tower.exit_code == 1);
    CHECK(Json::parse(bad_tower.output)["error"]["kind"] == "NonCoprimeModulus");
}

TEST_CASE("cli: residue --at and the session output mode") {
    SessionDir tmp;
    run_cli("--session " + tmp.session() + " tower new --q 7 --m 6 --uniformizers t1,t2 --output json");

    // session output mode json applies without the --json flag
    auto res = run_cli("--session " + tmp.session() + " residue \"(c,t2)\" --at t2");
    CHECK(res.exit_code == 0);
    Json j = Json::parse(res.output);
    CHECK(j["result"]["residue"]["coeffs"] == Json{{"c", 1}});
    CHECK(j["result"]["residue_tower"]["uniformizers"] == Json::array({"t1"}));

    auto inner = run_cli("--session " + tmp.session() + " residue \"(c,t2)\" --at t1");
    CHECK(inner.exit_code == 1);
    CHECK(Json::parse(inner.output)["error"]["kind"] == "InnerUniformizer");
}

TEST_CASE("cli: descend command") {
    SessionDir tmp;
    run_cli("--session " + tmp.session() + " tower new --q 7 --m 5 --uniformizers t1");
    auto result = run_cli("--session " + tmp.session() + " --json descend \"(t1,t1)\"");
    CHECK(result.exit_code == 0);
    Json j = Json::parse(result.output);
    CHECK(j["result"]["d"] == 4);
    CHECK(j["result"]["gcd_ok"] == true);
    CHECK(j["result"]["certificate_verified"] == true);
    CHECK(j["result"]["splitting_degree"] == 5);
}

TEST_CASE("cli: common-slot and split") {
    SessionDir tmp;
    run_cli("--session " + tmp.session() + " tower new --q 7 --m 6 --uniformizers t1,t2");

    auto split = run_cli("--session " + tmp.session() + " --json split \"(c,t1,t2)\"");
    CHECK(split.exit_code == 0);
    Json sj = Json::parse(split.output);
    CHECK(sj["result"]["degree"] == 6);
    CHECK(sj["result"]["verified"] == true);
    CHECK(sj["result"]["period"] == 6);

    auto slot = run_cli("--session " + tmp.session() +
                        " --json common-slot \"(c,t1,t2)\" \"2*(c,t1,t2)\" \"3*(c,t1,t2)\"");
    CHECK(slot.exit_code == 0);
    Json cj = Json::parse(slot.output);
    CHECK(cj["result"]["all_split"] == true);
    CHECK(cj["result"]["degree"] == 6);
}
