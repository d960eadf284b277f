#include <catch2/catch_amalgamated.hpp>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <string>

#include <json.hpp>

#ifndef NOETHER_CLI_PATH
#error "NOETHER_CLI_PATH must point at the built binary"
#endif

namespace {

struct RunResult {
    int exit_code = -1;
    std::string out;
};

RunResult run_cli(const std::string& args, const std::string& env = "") {
    std::string cmd = env + " " + std::string(NOETHER_CLI_PATH) + " " + args + " 2>/dev/null";
    FILE* p = popen(cmd.c_str(), "r");
    REQUIRE(p != nullptr);
    RunResult r;
    std::array<char, 4096> buf;
    size_t n;
    while ((n = fread(buf.data(), 1, buf.size(), p)) > 0) r.out.append(buf.data(), n);
    int status = pclose(p);
    r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

std::string write_scenario(const std::string& name, const std::string& body) {
    std::string path = std::string("/tmp/noether_cli_") + name + ".json";
    std::ofstream(path) << body;
    return path;
}

const char* kLineScenario = R"({
  "ring": "p3",
  "curve": {"constructor": "line", "args": ["x0", "x1"]},
  "d": 5,
  "seed": 42,
  "tasks": ["semiregularity", "tangent", "verdict"],
  "dim_l_gamma": {"value": 4, "exact": true},
  "asserts": {"codim": 2, "verdict": "reduced", "semiregular_certified": true}
})";

}  // namespace

TEST_CASE("exit code 0 when every assertion passes") {
    std::string path = write_scenario("ok", kLineScenario);
    RunResult r = run_cli("run " + path);
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("codim") != std::string::npos);
}

TEST_CASE("exit code 1 on a tampered assertion, with a diff") {
    std::string body = kLineScenario;
    body.replace(body.find("\"codim\": 2"), 10, "\"codim\": 3");
    std::string path = write_scenario("tampered", body);
    RunResult r = run_cli("run " + path + " --format machine");
    CHECK(r.exit_code == 1);
    auto rep = nlohmann::json::parse(r.out);
    CHECK(rep["asserts_passed"] == false);
    CHECK(rep["assert_diffs"]["codim"]["expected"] == 3);
    CHECK(rep["assert_diffs"]["codim"]["actual"] == 2);
}

TEST_CASE("exit code 2 on missing or malformed input") {
    CHECK(run_cli("run /tmp/noether_cli_does_not_exist.json").exit_code == 2);
    std::string path = write_scenario("malformed", "{\"d\": 5,,}");
    CHECK(run_cli("run " + path).exit_code == 2);
    std::string bad_task = write_scenario("badtask", R"({
      "curve": {"constructor": "line", "args": ["x0", "x1"]},
      "d": 5, "tasks": ["frobnicate"]})");
    CHECK(run_cli("run " + bad_task).exit_code == 2);
    CHECK(run_cli("frobnicate").exit_code == 2);
}

TEST_CASE("machine format round-trips and is byte-identical across runs") {
    std::string path = write_scenario("machine", kLineScenario);
    RunResult a = run_cli("run " + path + " --format machine");
    RunResult b = run_cli("run " + path + " --format machine");
    REQUIRE(a.exit_code == 0);
    CHECK(a.out == b.out);

    auto rep = nlohmann::ordered_json::parse(a.out);
    CHECK(rep.dump(2) + "\n" == a.out);  // parse(emit(r)) re-emits identically

    CHECK(rep["seed"] == 42);
    CHECK(rep["tasks"]["tangent"]["codim"] == 2);
    CHECK(rep["tasks"]["verdict"]["verdict"] == "reduced");
}

TEST_CASE("seed precedence: flag over scenario over environment") {
    std::string noseed = kLineScenario;
    noseed.erase(noseed.find("  \"seed\": 42,\n"), 14);
    std::string path = write_scenario("noseed", noseed);

    auto seed_of = [](const RunResult& r) {
        return nlohmann::json::parse(r.out)["seed"].get<long>();
    };
    CHECK(seed_of(run_cli("run " + path + " --format machine", "NOETHER_SEED=99")) == 99);
    CHECK(seed_of(run_cli("run " + path + " --seed 7 --format machine", "NOETHER_SEED=99")) == 7);
    std::string with_seed = write_scenario("withseed", kLineScenario);
    CHECK(seed_of(run_cli("run " + with_seed + " --format machine", "NOETHER_SEED=99")) == 42);
}

TEST_CASE("census codimensions match the closed forms") {
    RunResult line = run_cli("census --d-min 5 --d-max 8 --families line --format machine");
    REQUIRE(line.exit_code == 0);
    auto rep = nlohmann::json::parse(line.out);
    REQUIRE(rep["all_match"] == true);
    std::vector<long> codims;
    for (const auto& row : rep["rows"]) codims.push_back(row["codim"].get<long>());
    CHECK(codims == std::vector<long>{2, 3, 4, 5});

    RunResult conic = run_cli("census --d-min 6 --d-max 7 --families conic --format machine");
    REQUIRE(conic.exit_code == 0);
    auto crep = nlohmann::json::parse(conic.out);
    CHECK(crep["rows"][0]["codim"] == 5);
    CHECK(crep["rows"][1]["codim"] == 7);

    RunResult pair = run_cli("census --d-min 5 --d-max 5 --families coplanar_pair --format machine");
    REQUIRE(pair.exit_code == 0);
    CHECK(nlohmann::json::parse(pair.out)["rows"][0]["codim"] == 4);
}

TEST_CASE("lattice subcommand reports a clean scan") {
    RunResult r = run_cli("lattice --d-min 5 --d-max 6 --bound 10 --format machine");
    REQUIRE(r.exit_code == 0);
    auto rep = nlohmann::json::parse(r.out);
    const auto& lat = rep["tasks"]["lattice"];
    CHECK(lat["clean"] == true);
    CHECK(lat["rows_scanned"] == 2 * 2 * 21 * 21);
    for (const auto& row : lat["solutions"]) CHECK(row["excluded"] == true);
}

TEST_CASE("extended tier gating") {
    CHECK(run_cli("mumford").exit_code == 2);
    CHECK(run_cli("mumford --tier core").exit_code == 2);
}
