// End-to-end checks of the command-line runner: artifact layout, exit codes,
// determinism. The binary path arrives in the MEMS_CLI environment variable.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <json.hpp>

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <unistd.h>

namespace fs = std::filesystem;

namespace {

std::string cli_path() {
    const char* p = std::getenv("MEMS_CLI");
    REQUIRE_MESSAGE(p != nullptr, "MEMS_CLI must point at the binary");
    return p;
}

int run(const std::string& args, std::string* out_path = nullptr) {
    static int counter = 0;
    const fs::path dir = fs::temp_directory_path() / ("mems_cli_" + std::to_string(::getpid())
                                                      + "_" + std::to_string(counter++));
    fs::create_directories(dir);
    if (out_path) *out_path = dir.string();
    const std::string cmd = cli_path() + " " + args + " --out " + dir.string()
                          + " > " + (dir / "stdout.txt").string() + " 2> "
                          + (dir / "stderr.txt").string();
    const int rc = std::system(cmd.c_str());
    return WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

nlohmann::json summary(const std::string& dir) {
    return nlohmann::json::parse(slurp(fs::path(dir) / "summary.json"));
}

} // namespace

TEST_CASE("bounds mode emits the gap-integral bound") {
    std::string dir;
    REQUIRE(run("bounds --grid-n 400", &dir) == 0);
    const auto j = summary(dir);
    const double upper = j["result"]["bounds"]["upper_gap_integral"]["value"].get<double>();
    CHECK(upper == doctest::Approx(3.2899).epsilon(1e-3));
    CHECK(j["config"]["domain.N"].get<int>() == 400);
    // defaults are recorded so artifacts are self-describing
    CHECK(j["config"].contains("defaults.iteration_tol"));
}

TEST_CASE("pullin mode meets the requested bracket width") {
    std::string dir;
    REQUIRE(run("pullin --grid-n 100", &dir) == 0);
    const auto j = summary(dir);
    const double lo = j["result"]["lambda_lo"].get<double>();
    const double hi = j["result"]["lambda_hi"].get<double>();
    CHECK(lo < hi);
    CHECK(hi - lo <= 1e-4 * hi * (1 + 1e-12));
}

TEST_CASE("stationary mode writes the solution field") {
    std::string dir;
    REQUIRE(run("stationary --grid-n 100 --lambda 1.0", &dir) == 0);
    const auto j = summary(dir);
    CHECK(j["result"]["converged"].get<bool>());
    const std::string csv = slurp(fs::path(dir) / "fields" / "v_lambda.csv");
    CHECK(csv.rfind("coordinate,value\n", 0) == 0);
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 101); // header + N rows
}

TEST_CASE("verbose stationary runs emit the iteration trace") {
    std::string dir;
    REQUIRE(run("stationary --grid-n 64 --lambda 1.0 --verbose", &dir) == 0);
    const std::string csv = slurp(fs::path(dir) / "iterations.csv");
    CHECK(csv.rfind("k,sup_increment,max_v\n", 0) == 0);
    CHECK(std::count(csv.begin(), csv.end(), '\n') >= 3);
}

TEST_CASE("evolve mode writes a trace and final field") {
    std::string dir;
    REQUIRE(run("evolve --grid-n 100 --lambda 6.0", &dir) == 0);
    const auto j = summary(dir);
    CHECK(j["result"]["status"].get<std::string>() == "touchdown");
    CHECK(j["result"]["touchdown_bounds"]["bound_gap"]["applicable"].get<bool>());
    const std::string trace = slurp(fs::path(dir) / "trace.csv");
    CHECK(trace.rfind("t,max_u,E,dist_to_ref,dt\n", 0) == 0);
    CHECK(std::count(trace.begin(), trace.end(), '\n') >= 2);
}

TEST_CASE("picard mode reports the local window") {
    std::string dir;
    REQUIRE(run("picard --grid-n 100 --lambda 1.0", &dir) == 0);
    const auto j = summary(dir);
    CHECK(j["result"]["t_local"].get<double>() == doctest::Approx(0.0625));
    CHECK(j["result"]["ceiling_ok"].get<bool>());
}

TEST_CASE("ball domains run through the config file") {
    const fs::path cfg = fs::temp_directory_path() / ("mems_ball_" + std::to_string(::getpid()));
    {
        std::ofstream out(cfg);
        out << "domain.shape = ball\n"
            << "domain.n = 2\n"
            << "domain.size = 1.0\n"
            << "domain.N = 128\n";
    }
    std::string dir;
    REQUIRE(run("bounds --config " + cfg.string(), &dir) == 0);
    const auto j = summary(dir);
    CHECK(j["result"]["bounds"]["pohozaev"]["applicable"].get<bool>());
    CHECK(j["result"]["bounds"]["pohozaev"]["value"].get<double>() == doctest::Approx(8.0));
    CHECK(j["result"]["bounds"]["mu1"].get<double>() == doctest::Approx(5.7832).epsilon(1e-3));
}

TEST_CASE("config file drives the run and flags win over it") {
    const fs::path cfg = fs::temp_directory_path() / ("mems_cfg_" + std::to_string(::getpid()));
    {
        std::ofstream out(cfg);
        out << "domain.shape = interval\n"
            << "domain.N = 64\n"
            << "mode.lambda = 0.5\n"
            << "nonlinearity.p = 2\n";
    }
    std::string dir;
    REQUIRE(run("stationary --config " + cfg.string() + " --grid-n 100", &dir) == 0);
    CHECK(summary(dir)["config"]["domain.N"].get<int>() == 100); // flag overrode the file
}

TEST_CASE("bad configuration exits with code 1 and names the key") {
    const fs::path cfg = fs::temp_directory_path() / ("mems_badcfg_" + std::to_string(::getpid()));
    {
        std::ofstream out(cfg);
        out << "domain.mystery = 3\n";
    }
    std::string dir;
    CHECK(run("bounds --config " + cfg.string(), &dir) == 1);
    CHECK(slurp(fs::path(dir) / "stderr.txt").find("domain.mystery") != std::string::npos);

    CHECK(run("stationary --grid-n 4", &dir) == 1); // validation failure
}

TEST_CASE("repeated runs produce byte-identical artifacts") {
    std::string d1, d2;
    REQUIRE(run("bounds --grid-n 64 --seedless", &d1) == 0);
    REQUIRE(run("bounds --grid-n 64 --seedless", &d2) == 0);
    CHECK(slurp(fs::path(d1) / "summary.json") == slurp(fs::path(d2) / "summary.json"));
}
