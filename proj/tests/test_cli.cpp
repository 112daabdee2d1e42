#include <catch2/catch_amalgamated.hpp>

#include <unistd.h>

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>

#include <json.hpp>

#include "netspace/netspace.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

// The built binary, injected by the build so the test never guesses paths.
const std::string kCli = NETSPACE_CLI_PATH;

int run_cli(const std::string& args, const std::string& stdout_file = "") {
    std::string cmd = kCli + " " + args;
    if (!stdout_file.empty()) cmd += " > " + stdout_file;
    cmd += " 2>/dev/null";
    const int raw = std::system(cmd.c_str());
    REQUIRE(raw != -1);
    return WEXITSTATUS(raw);
}

std::string slurp(const fs::path& p) {
    std::ifstream f(p);
    REQUIRE(f.good());
    return std::string((std::istreambuf_iterator<char>(f)), std::istreambuf_iterator<char>());
}

json slurp_json(const fs::path& p) { return json::parse(slurp(p)); }

// Fresh output directory per test, removed on scope exit.
struct TempDir {
    fs::path path;
    explicit TempDir(const std::string& tag) {
        path = fs::temp_directory_path() / ("netspace_cli_" + tag + "_" + std::to_string(::getpid()));
        fs::remove_all(path);
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
    std::string sub(const std::string& name) const { return (path / name).string(); }
};

}  // namespace

TEST_CASE("identity run writes the full directory layout") {
    TempDir tmp("identity");
    const std::string out = tmp.sub("run");
    REQUIRE(run_cli("identity --activation relu --d 1 --layers 2 --eps 0.01 --out " + out) == 0);

    const json manifest = slurp_json(fs::path(out) / "manifest.json");
    CHECK(manifest["command"] == "identity");
    CHECK(manifest["seed"] == 0);
    CHECK(manifest.contains("version"));
    CHECK(manifest.contains("duration_seconds"));

    const json report = slurp_json(fs::path(out) / "report.json");
    CHECK(report["status"] == "ok");
    CHECK(report["sup_error"] == 0.0);  // relu identity is exact

    // The emitted network must load back and actually be the identity.
    const netspace::Network net =
        netspace::deserialize(slurp(fs::path(out) / "networks" / "identity.json"));
    const netspace::Activation relu = netspace::make_activation(netspace::Act::relu);
    // Dyadic probe point: the construction shifts into the active region and
    // back, which is exact only when x has a short binary expansion.
    CHECK(netspace::realize_scalar(net, relu, {0.375}) == 0.375);
}

TEST_CASE("existing output directories are protected unless --force") {
    TempDir tmp("force");
    const std::string out = tmp.sub("run");
    REQUIRE(run_cli("identity --out " + out) == 0);
    CHECK(run_cli("identity --out " + out) == 2);
    CHECK(run_cli("identity --force --out " + out) == 0);
}

TEST_CASE("witness subcommands enforce activation eligibility with exit 2") {
    TempDir tmp("elig");
    // ReLU has a kink: no derivative witness.
    CHECK(run_cli("witness derivative --activation relu --out " + tmp.sub("a")) == 2);
    // Sigmoid's homogeneity defect grows with the window: refused.
    CHECK(run_cli("witness homogeneity --activation sigmoid --out " + tmp.sub("b")) == 2);
    // Softsign is bounded but not analytic.
    CHECK(run_cli("witness analytic --activation softsign --out " + tmp.sub("c")) == 2);
}

TEST_CASE("witness step emits the sequence CSV with one row per index") {
    TempDir tmp("step");
    const std::string out = tmp.sub("run");
    REQUIRE(run_cli("witness step --activation relu --n-list 1,2,4 --grid 257 --out " + out) == 0);

    const std::string csv = slurp(fs::path(out) / "data.csv");
    CHECK(csv.rfind(netspace::kSequenceCsvHeader, 0) == 0);
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 4);  // header + 3 rows

    for (int n : {1, 2, 4})
        CHECK(fs::exists(fs::path(out) / "networks" / ("net_" + std::to_string(n) + ".json")));
}

TEST_CASE("identical flags and seed give byte-identical data") {
    TempDir tmp("determinism");
    const std::string args = "explode --arch 1,4,1 --N-list 8,16 --iters 30 --optimizer gd ";
    REQUIRE(run_cli(args + "--seed 3 --out " + tmp.sub("a")) == 0);
    REQUIRE(run_cli(args + "--seed 3 --out " + tmp.sub("b")) == 0);
    REQUIRE(run_cli(args + "--seed 4 --out " + tmp.sub("c")) == 0);

    CHECK(slurp(fs::path(tmp.sub("a")) / "data.csv") == slurp(fs::path(tmp.sub("b")) / "data.csv"));
    CHECK(slurp(fs::path(tmp.sub("a")) / "data.csv") != slurp(fs::path(tmp.sub("c")) / "data.csv"));
}

TEST_CASE("seed resolution: flag beats environment beats zero") {
    TempDir tmp("seed");
    REQUIRE(run_cli("witness step --n-list 1 --grid 65 --out " + tmp.sub("a")) == 0);
    CHECK(slurp_json(fs::path(tmp.sub("a")) / "manifest.json")["seed"] == 0);

    const std::string env = "NETSPACE_SEED=7 ";
    int raw = std::system((env + kCli + " witness step --n-list 1 --grid 65 --out " +
                           tmp.sub("b") + " >/dev/null 2>&1").c_str());
    REQUIRE(WEXITSTATUS(raw) == 0);
    CHECK(slurp_json(fs::path(tmp.sub("b")) / "manifest.json")["seed"] == 7);

    raw = std::system((env + kCli + " witness step --n-list 1 --grid 65 --seed 9 --out " +
                       tmp.sub("c") + " >/dev/null 2>&1").c_str());
    REQUIRE(WEXITSTATUS(raw) == 0);
    CHECK(slurp_json(fs::path(tmp.sub("c")) / "manifest.json")["seed"] == 9);
}

TEST_CASE("--json prints the machine summary on stdout") {
    TempDir tmp("json");
    const std::string capture = tmp.sub("stdout.txt");
    fs::create_directories(tmp.path);
    REQUIRE(run_cli("identity --activation relu --json --out " + tmp.sub("run"), capture) == 0);
    const json payload = json::parse(slurp(capture));
    CHECK(payload["report"]["status"] == "ok");
    CHECK(payload["report"]["sup_error"] == 0.0);
}

TEST_CASE("canonicalize bounds the biases it reports") {
    TempDir tmp("canon");
    fs::create_directories(tmp.path);

    // One saturated-active neuron (bias 10, reach 1) and one dead neuron.
    netspace::Matrix a1(2, 1);
    a1(0, 0) = 1.0;
    a1(1, 0) = 1.0;
    netspace::Matrix a2(1, 2);
    a2(0, 0) = 1.0;
    a2(0, 1) = -1.0;
    const netspace::Network net({{a1, {10.0, -6.0}}, {a2, {0.0}}});
    const std::string in = tmp.sub("net.json");
    std::ofstream(in) << netspace::serialize(net);

    const std::string out = tmp.sub("run");
    REQUIRE(run_cli("canonicalize --in " + in + " --B 1 --out " + out) == 0);

    const json report = slurp_json(fs::path(out) / "report.json");
    CHECK(report["sup_diff"].get<double>() <= 1e-9);

    const netspace::Network canon =
        netspace::deserialize(slurp(fs::path(out) / "networks" / "canonical.json"));
    CHECK(canon.layers[0].b[0] == 1.0);   // capped at the reach
    CHECK(canon.layers[0].b[1] == 0.0);   // dead neuron zeroed

    CHECK(run_cli("canonicalize --in /nonexistent.json --out " + tmp.sub("x")) == 2);
}

TEST_CASE("rank-probe ships a fixture that beats the parameter count") {
    TempDir tmp("rank");
    const std::string out = tmp.sub("run");
    REQUIRE(run_cli("rank-probe --out " + out) == 0);
    const json report = slurp_json(fs::path(out) / "report.json");
    CHECK(report["numerical_rank"].get<int>() >= 8);
    CHECK(report["parameter_count"].get<int>() == 7);
    CHECK(report["verdict"].get<bool>());
    const std::string csv = slurp(fs::path(out) / "data.csv");
    CHECK(csv.rfind("index,singular_value", 0) == 0);
}

TEST_CASE("explode echoes its configuration and rows") {
    TempDir tmp("explode");
    const std::string out = tmp.sub("run");
    REQUIRE(run_cli("explode --arch 1,4,1 --N-list 8,16 --iters 25 --optimizer gd --out " + out) == 0);
    const json report = slurp_json(fs::path(out) / "report.json");
    CHECK(report["target"] == "step");
    CHECK(report["rows"].size() == 2);
    CHECK(report["config"]["optimizer"] == "gd");
    const std::string csv = slurp(fs::path(out) / "data.csv");
    CHECK(csv.rfind("N,final_loss,final_norm_total,final_norm_scaling,diverged", 0) == 0);

    CHECK(run_cli("explode --optimizer adam --out " + tmp.sub("x")) == 2);
}

TEST_CASE("midpoint-gap reports one distance per restart") {
    TempDir tmp("midpoint");
    const std::string out = tmp.sub("run");
    REQUIRE(run_cli("midpoint-gap --restarts 3 --iters 40 --out " + out) == 0);
    const json report = slurp_json(fs::path(out) / "report.json");
    CHECK(report["restarts"].get<int>() == 3);
    CHECK(report["floor"].get<double>() >= 0.0);
    const std::string csv = slurp(fs::path(out) / "data.csv");
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 4);  // header + 3 restarts
    CHECK(fs::exists(fs::path(out) / "networks" / "f1.json"));
    CHECK(fs::exists(fs::path(out) / "networks" / "f2.json"));
}

TEST_CASE("lipschitz-check passes on random networks") {
    TempDir tmp("lip");
    const std::string out = tmp.sub("run");
    REQUIRE(run_cli("lipschitz-check --count 12 --out " + out) == 0);
    const json report = slurp_json(fs::path(out) / "report.json");
    CHECK(report["violations"].get<int>() == 0);
    CHECK(report["count"].get<int>() == 12);
}

TEST_CASE("instability records the probed oscillation") {
    TempDir tmp("inst");
    fs::create_directories(tmp.path);
    const std::string out = tmp.sub("run");
    const std::string capture = tmp.sub("stdout.txt");
    REQUIRE(run_cli("instability --activation relu --a 1 --n-list 1,2,4 --B 1 --json --out " + out,
                    capture) == 0);
    const json payload = json::parse(slurp(capture));
    CHECK(payload["a"].get<double>() == 1.0);
    CHECK(payload["oscillation"].get<double>() > 1e-6);
    CHECK(payload["rows"].size() == 3);
    const std::string csv = slurp(fs::path(out) / "data.csv");
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 4);
}

TEST_CASE("usage errors exit with 2, help with 0") {
    TempDir tmp("usage");
    CHECK(run_cli("no-such-command --out " + tmp.sub("a")) == 2);
    CHECK(run_cli("witness step --n-list 1,nope --out " + tmp.sub("b")) == 2);
    CHECK(run_cli("identity") == 2);  // --out is required
    CHECK(run_cli("--help", tmp.sub("h.txt")) == 0);
    CHECK(run_cli("identity --help", tmp.sub("h2.txt")) == 0);
}
