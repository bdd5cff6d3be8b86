#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <json.hpp>

#include <array>
#include <cstdio>
#include <string>

using json = nlohmann::json;

namespace {

struct RunResult {
    int exit_code;
    std::string out;
};

RunResult run(const std::string& args) {
    std::string cmd = std::string(RTBOUND_CLI_PATH) + " " + args + " 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::string out;
    std::array<char, 4096> buf{};
    std::size_t got;
    while ((got = fread(buf.data(), 1, buf.size(), pipe)) > 0) out.append(buf.data(), got);
    int status = pclose(pipe);
    return {WEXITSTATUS(status), out};
}

std::string data(const std::string& name) {
    return std::string(RTBOUND_DATA_DIR) + "/" + name;
}

}  // namespace

TEST_CASE("analyze: synthesis succeeds with exit code 0") {
    RunResult r = run("analyze " + data("r_search.rec") +
                      " --bound logn --mode synth --epsilon 0.01 --json");
    CHECK(r.exit_code == 0);
    json j = json::parse(r.out);
    CHECK(j["verdict"] == "yes");
    CHECK(j["N"] == 1398);
    CHECK(j["d"].get<double>() == doctest::Approx(19.762).epsilon(0.0005));
    CHECK(j["shape"] == "ln n");
    CHECK(j.contains("p"));
    CHECK(j.contains("q"));
    CHECK(j["p"].contains("log"));
    CHECK(j["p"].contains("plain"));
    CHECK(j.contains("time_ms"));
}

TEST_CASE("analyze: failed decision exits with 2") {
    RunResult r = run("analyze " + data("q_sort.rec") + " --bound logn --mode decide");
    CHECK(r.exit_code == 2);
    CHECK(r.out.find("fail") != std::string::npos);
}

TEST_CASE("analyze: auto mode picks the first accepted shape") {
    RunResult r = run("analyze " + data("coupon.rec") +
                      " --bound auto --mode synth --epsilon 0.5 --json");
    CHECK(r.exit_code == 0);
    json j = json::parse(r.out);
    CHECK(j["shape"] == "n ln m");
    CHECK(j["d"].get<double>() == doctest::Approx(3.001).epsilon(0.0005));
}

TEST_CASE("analyze: parse failures exit with 1") {
    RunResult r = run("analyze /nonexistent.rec --bound logn");
    CHECK(r.exit_code == 1);
}

TEST_CASE("text and json outputs carry the same numbers") {
    RunResult text = run("analyze " + data("q_select.rec") +
                         " --bound n --mode synth --epsilon 0.1");
    RunResult js = run("analyze " + data("q_select.rec") +
                       " --bound n --mode synth --epsilon 0.1 --json");
    CHECK(text.out.find("9.001") != std::string::npos);
    CHECK(text.out.find("160") != std::string::npos);
    json j = json::parse(js.out);
    CHECK(j["d"].get<double>() == doctest::Approx(9.001).epsilon(1e-9));
    CHECK(j["N"] == 160);
}

TEST_CASE("eval: exact values, base-only query, bivariate slice") {
    RunResult r = run("eval " + data("r_search.rec") + " --upto 5");
    CHECK(r.out.find("17.8") != std::string::npos);

    RunResult base = run("eval " + data("r_search.rec") + " --upto 1 --json");
    json jb = json::parse(base.out);
    CHECK(jb["values"] == json::array({"1"}));
    CHECK(jb["exact"] == true);

    RunResult bi = run("eval " + data("coupon.rec") + " --upto 3 --n 4 --json");
    json j = json::parse(bi.out);
    CHECK(j["values"] == json::array({"4", "6", "22/3"}));
}

TEST_CASE("eval: intervals are printed as [lo,hi]") {
    RunResult r = run("eval " + data("res_b.rec") + " --upto 2 --n 3");
    CHECK(r.out.find("[") != std::string::npos);
    CHECK(r.out.find(",") != std::string::npos);
}

TEST_CASE("corpus: single-epsilon column filtering") {
    RunResult r = run("corpus --epsilons 0.5 --json");
    json j = json::parse(r.out);
    CHECK(j["cells"].size() == 9);
    for (const auto& cell : j["cells"]) CHECK(cell["epsilon"].get<double>() == 0.5);
    CHECK(j["all_passed"] == true);
    CHECK(r.exit_code == 0);
}

TEST_CASE("corpus: injected mismatch turns the exit nonzero with a diff") {
    RunResult r = run("corpus --epsilons 0.5 --inject-mismatch");
    CHECK(r.exit_code != 0);
    CHECK(r.out.find("FAIL") != std::string::npos);
}

TEST_CASE("version flag") {
    RunResult r = run("--version");
    CHECK(r.exit_code == 0);
    CHECK(!r.out.empty());
}
