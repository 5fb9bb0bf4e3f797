#include <doctest.h>
#include <sys/wait.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <sstream>
#include <string>

#include "uqsg/output.hpp"

using namespace uqsg;
namespace fs = std::filesystem;

namespace {

const std::string kBinary = UQSG_CLI_PATH;
const std::string kDir = UQSG_SCENARIO_DIR;

int cli(const std::string& args) {
    const std::string command = kBinary + " " + args + " > /dev/null 2>&1";
    const int status = std::system(command.c_str());
    REQUIRE(WIFEXITED(status));
    return WEXITSTATUS(status);
}

std::string scratch(const std::string& name) {
    const fs::path dir = fs::temp_directory_path() / ("uqsg_cli_test_" + name);
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir.string();
}

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    std::ostringstream text;
    text << in.rdbuf();
    return text.str();
}

FieldTable fields(const std::string& path) {
    std::ifstream in(path);
    REQUIRE(in);
    return read_field_csv(in);
}

}  // namespace

TEST_CASE("usage and configuration errors exit with 1") {
    CHECK(cli("") == 1);
    CHECK(cli("frobnicate") == 1);
    CHECK(cli("run " + kDir + "/missing.scenario") == 1);
    const std::string out = scratch("usage");
    CHECK(cli("run " + kDir + "/burgers.scenario --out " + out + " --override uq.order=x") == 1);
    CHECK(cli("run " + kDir + "/burgers.scenario --out " + out + " --override time.cfl=2") == 1);
    CHECK(cli("run " + kDir + "/burgers.scenario --out " + out + " --override domain.size=2") == 1);
}

TEST_CASE("t_end = 0 writes the projected initial condition") {
    const std::string out = scratch("t0");
    REQUIRE(cli("run " + kDir + "/burgers.scenario --out " + out +
                " --override domain.nx=30 --override time.t_end=0 --override uq.order=4") == 0);
    for (const char* file : {"fields.csv", "mean.csv", "variance.csv", "report.json", "scenario.used"}) {
        CHECK(fs::exists(out + "/" + file));
    }
    const FieldTable table = fields(out + "/fields.csv");
    REQUIRE(table.rows.size() == 30);
    CHECK(table.rows[0].moments.size() == 5);
    CHECK(table.rows[0].moments[0] == 12.0);
    CHECK(table.rows[29].moments[0] == 1.0);
    CHECK(table.rows[10].moments[1] == doctest::Approx(2.2 / std::sqrt(3.0)).epsilon(1e-13));

    const auto report = nlohmann::json::parse(slurp(out + "/report.json"));
    CHECK(report["steps"] == 0);
    CHECK(report["final_time"] == 0.0);
    CHECK(report["order"] == 4);
    CHECK(report["filter"] == "lasso_adaptive");
    CHECK(slurp(out + "/scenario.used").find("nx = 30") != std::string::npos);
}

TEST_CASE("adaptive Lasso runs leave the top moment at zero") {
    const std::string out = scratch("euler");
    REQUIRE(cli("run " + kDir + "/euler1d.scenario --out " + out +
                " --override domain.nx=100 --override uq.order=6 --override time.t_end=0.05"
                " --override output.snapshot_every=0.02") == 0);
    const FieldTable table = fields(out + "/fields.csv");
    CHECK(table.rows.size() == 300);
    for (const auto& row : table.rows) CHECK(row.moments[6] == 0.0);
    CHECK(slurp(out + "/snapshots.csv").rfind("snapshot,time\n0,0\n", 0) == 0);
    CHECK(fs::exists(out + "/snapshot_0.csv"));
    CHECK(fs::exists(out + "/snapshot_3.csv"));
}

TEST_CASE("solver failures map to exit codes") {
    const std::string out = scratch("failures");
    CHECK(cli("run " + kDir + "/burgers.scenario --out " + out +
              " --override domain.nx=50 --override closure.kind=ipm --override filter.kind=none"
              " --override closure.max_iterations=1") == 2);
    CHECK(cli("run " + kDir + "/euler1d.scenario --out " + out +
              " --override domain.nx=20 --override uq.order=3 --override filter.kind=none"
              " --override ic.sigma=0.4 --override ic.rho_right=1e-3 --override ic.p_right=1e-3") == 3);
}

TEST_CASE("slices") {
    const std::string out = scratch("slice");
    REQUIRE(cli("run " + kDir + "/burgers.scenario --out " + out +
                " --override domain.nx=20 --override time.t_end=0 --override ic.u_left=2"
                " --override ic.u_right=2") == 0);
    REQUIRE(cli("slice " + out + "/fields.csv --x 1.4 --points 11 --out " + out + "/slice.csv") == 0);
    std::istringstream constant(slurp(out + "/slice.csv"));
    std::string line;
    std::getline(constant, line);
    CHECK(line == "xi,state,value");
    int rows = 0;
    while (std::getline(constant, line)) {
        ++rows;
        CHECK(std::stod(line.substr(line.rfind(',') + 1)) == doctest::Approx(2.0).epsilon(1e-14));
    }
    CHECK(rows == 11);

    // u = sqrt(3) xi from a hand-written field file
    {
        std::ofstream file(out + "/linear.csv");
        file << "x,state,mean,variance,m0,m1\n0.25,0,0,1,0,0\n0.75,0,0,1,0,1\n";
    }
    REQUIRE(cli("slice " + out + "/linear.csv --x 0.7 --points 5 --out " + out + "/linear_slice.csv") == 0);
    std::istringstream linear(slurp(out + "/linear_slice.csv"));
    std::getline(linear, line);
    for (double xi : {-1.0, -0.5, 0.0, 0.5, 1.0}) {
        REQUIRE(std::getline(linear, line));
        CHECK(std::stod(line.substr(line.rfind(',') + 1)) == doctest::Approx(std::sqrt(3.0) * xi).epsilon(1e-14));
    }
    CHECK(cli("slice " + out + "/linear.csv --x 3.0") == 1);
    CHECK(cli("slice " + out + "/missing.csv --x 0.5") == 1);
}

TEST_CASE("convergence tables are reproducible") {
    const std::string a = scratch("converge_a");
    const std::string b = scratch("converge_b");
    const std::string args = "converge " + kDir + "/burgers.scenario --override domain.nx=40 --override time.t_end=0.05"
                             " --orders 2,4 --nodes 8 --refine 1 --no-walltime --out ";
    REQUIRE(cli(args + a) == 0);
    REQUIRE(cli(args + b + " --threads 1") == 0);
    CHECK(slurp(a + "/convergence.csv") == slurp(b + "/convergence.csv"));
    CHECK(slurp(a + "/convergence_slopes.csv") == slurp(b + "/convergence_slopes.csv"));
    CHECK(slurp(a + "/convergence.csv").find("2,sg,none,") != std::string::npos);

    const std::string single = scratch("converge_single");
    REQUIRE(cli("converge " + kDir + "/burgers.scenario --override domain.nx=40 --override time.t_end=0.05"
                " --orders 3 --nodes 8 --refine 1 --methods sg --out " + single) == 0);
    CHECK(fs::exists(single + "/convergence.csv"));
    CHECK_FALSE(fs::exists(single + "/convergence_slopes.csv"));

    CHECK(cli("converge " + kDir + "/burgers.scenario --orders 3 --methods bogus --out " + single) == 1);
}

TEST_CASE("reference statistics") {
    const std::string out = scratch("reference");
    REQUIRE(cli("reference " + kDir + "/burgers.scenario --override domain.nx=30 --override time.t_end=0.02"
                " --nodes 6 --refine 1 --out " + out) == 0);
    const std::string text = slurp(out + "/reference.csv");
    CHECK(!text.empty());
    CHECK(std::count(text.begin(), text.end(), '\n') == 31);
}
