#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

namespace fs = std::filesystem;

namespace {

struct RunResult {
    int exit_code;
    std::string out;
    std::string err;
};

std::string slurp(const fs::path& p) {
    std::ifstream is(p, std::ios::binary);
    std::ostringstream os;
    os << is.rdbuf();
    return os.str();
}

fs::path fresh_dir(const std::string& name) {
    const fs::path dir = fs::temp_directory_path() / ("msgate_cli_" + name);
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

// `prefix` lets a test set environment variables for the invocation.
RunResult run_cli(const fs::path& dir, const std::string& args,
                  const std::string& prefix = "") {
    const fs::path out = dir / "stdout.txt", err = dir / "stderr.txt";
    const std::string cmd = "cd '" + dir.string() + "' && " + prefix + " '" +
                            MSGATE_CLI_PATH + "' " + args + " > '" + out.string() +
                            "' 2> '" + err.string() + "'";
    const int status = std::system(cmd.c_str());
    RunResult r;
    r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    r.out = slurp(out);
    r.err = slurp(err);
    return r;
}

std::vector<std::vector<std::string>> parse_csv(const std::string& text) {
    std::vector<std::vector<std::string>> rows;
    std::istringstream is(text);
    std::string line;
    while (std::getline(is, line)) {
        std::vector<std::string> fields;
        std::istringstream ls(line);
        std::string f;
        while (std::getline(ls, f, ',')) fields.push_back(f);
        rows.push_back(fields);
    }
    return rows;
}

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("periods summary prints the reference values") {
    const fs::path dir = fresh_dir("periods");
    const RunResult r = run_cli(dir, "periods");
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("T0_closed=14790.7") != std::string::npos);
    CHECK(r.out.find("T_MS=12566.37") != std::string::npos);
    CHECK(r.out.find("T0_numeric=") != std::string::npos);
    CHECK(r.out.find("T_toy0=2.902453") != std::string::npos);
}

TEST_CASE("toy trace command writes its table and chart") {
    const fs::path dir = fresh_dir("fig4a");
    const RunResult r = run_cli(dir, "fig4a --out toy.csv --plot");
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("wrote toy.csv") != std::string::npos);

    const auto rows = parse_csv(slurp(dir / "toy.csv"));
    REQUIRE(rows.size() > 500);
    CHECK(rows[0] == std::vector<std::string>{"t", "prob_gg0", "prob_ee0"});
    CHECK(rows[1][0] == "0");
    CHECK(rows[1][1] == "1");

    const std::string svg = slurp(dir / "toy.svg");
    CHECK(svg.rfind("<svg", 0) == 0);
}

TEST_CASE("identical invocations give byte-identical output") {
    const fs::path dir = fresh_dir("determinism");
    CHECK(run_cli(dir, "fig4b --out a.csv").exit_code == 0);
    CHECK(run_cli(dir, "fig4b --out b.csv").exit_code == 0);
    const std::string a = slurp(dir / "a.csv");
    CHECK(!a.empty());
    CHECK(a == slurp(dir / "b.csv"));
    CHECK(parse_csv(a)[0] == std::vector<std::string>{"n_th", "F_toy"});
}

TEST_CASE("toy fidelity curve is independent of the coupling strength") {
    const fs::path dir = fresh_dir("alpha");
    CHECK(run_cli(dir, "fig4b --alpha 0.5 --out lo.csv").exit_code == 0);
    CHECK(run_cli(dir, "fig4b --alpha 2.0 --out hi.csv").exit_code == 0);
    const auto lo = parse_csv(slurp(dir / "lo.csv")), hi = parse_csv(slurp(dir / "hi.csv"));
    REQUIRE(lo.size() == hi.size());
    REQUIRE(lo.size() >= 9);  // header + 8 temperature points
    for (std::size_t k = 1; k < lo.size(); ++k) {
        CHECK(lo[k][0] == hi[k][0]);
        CHECK(std::abs(std::stod(lo[k][1]) - std::stod(hi[k][1])) <= 1e-9);
    }
}

TEST_CASE("config file fills parameters and flags override it") {
    const fs::path dir = fresh_dir("config");
    std::ofstream(dir / "gate.cfg") << "alpha = 2.0\n";

    CHECK(run_cli(dir, "fig4a --config gate.cfg --out from_config.csv").exit_code == 0);
    CHECK(run_cli(dir, "fig4a --alpha 2.0 --out from_flag.csv").exit_code == 0);
    CHECK(slurp(dir / "from_config.csv") == slurp(dir / "from_flag.csv"));

    CHECK(run_cli(dir, "fig4a --out default.csv").exit_code == 0);
    CHECK(slurp(dir / "from_config.csv") != slurp(dir / "default.csv"));

    // explicit flag beats the config file
    CHECK(run_cli(dir, "fig4a --config gate.cfg --alpha 1.0 --out override.csv")
              .exit_code == 0);
    CHECK(slurp(dir / "override.csv") == slurp(dir / "default.csv"));

    // environment variable is the config-file fallback
    CHECK(run_cli(dir, "fig4a --out from_env.csv", "MSGATE_CONFIG=gate.cfg").exit_code == 0);
    CHECK(slurp(dir / "from_env.csv") == slurp(dir / "from_config.csv"));
}

TEST_CASE("population trace command") {
    const fs::path dir = fresh_dir("fig1");
    const RunResult r = run_cli(dir, "fig1 --t-end 1500 --out trace.csv");
    CHECK(r.exit_code == 0);
    const auto rows = parse_csv(slurp(dir / "trace.csv"));
    REQUIRE(rows.size() > 50);
    CHECK(rows[0] == std::vector<std::string>{"t", "prob_gg", "prob_ge", "prob_eg",
                                              "prob_ee", "norm", "re_cgg", "im_cgg",
                                              "re_cee", "im_cee"});
    CHECK(rows[1][0] == "0");
    CHECK(rows[1][1] == "1");
    // time column strictly increasing
    for (std::size_t k = 2; k < rows.size(); ++k)
        CHECK(std::stod(rows[k][0]) > std::stod(rows[k - 1][0]));
}

TEST_CASE("thermal fidelity command emits one column per truncation") {
    const fs::path dir = fresh_dir("fig2");
    const RunResult r = run_cli(dir, "fig2 --n-th 0.5 --dt 0.05 --out f.csv");
    CHECK(r.exit_code == 0);
    const auto rows = parse_csv(slurp(dir / "f.csv"));
    REQUIRE(rows.size() == 2);
    CHECK(rows[0] == std::vector<std::string>{"n_th", "F_dim4", "F_dim6", "F_dim8",
                                              "F_dim10"});
    CHECK(rows[1][0] == "0.5");
    for (int c = 1; c <= 4; ++c) {
        const double f = std::stod(rows[1][c]);
        CHECK(f > 0.5);
        CHECK(f < 1.0);
    }
}

TEST_CASE("parameter sweep command") {
    const fs::path dir = fresh_dir("sweep");
    const RunResult r =
        run_cli(dir, "sweep --param dnu --min 0.02 --max 0.03 --points 2 --dt 0.05 "
                     "--out s.csv");
    CHECK(r.exit_code == 0);
    const auto rows = parse_csv(slurp(dir / "s.csv"));
    REQUIRE(rows.size() == 3);
    CHECK(rows[0] == std::vector<std::string>{"param_value", "t0_numeric", "t0_closed",
                                              "t_ms"});
    CHECK(std::stod(rows[1][0]) == 0.02);
    CHECK(std::stod(rows[2][0]) == 0.03);
    for (std::size_t k = 1; k < rows.size(); ++k) {
        // Coarse-grid smoke bound only; the tight agreement checks run at
        // full resolution in the spectral suite.
        const double numeric = std::stod(rows[k][1]), closed = std::stod(rows[k][2]);
        CHECK(std::abs(numeric - closed) <= 0.03 * closed);
        CHECK(std::stod(rows[k][3]) < closed);
    }
}

TEST_CASE("usage errors exit with status 2") {
    const fs::path dir = fresh_dir("usage");
    CHECK(run_cli(dir, "").exit_code == 2);
    CHECK(run_cli(dir, "fig1 --bogus-flag").exit_code == 2);
    CHECK(run_cli(dir, "sweep --param omega --min 5 --max 1 --points 3").exit_code == 2);
    CHECK(run_cli(dir, "sweep --param omega --min 1 --max 5 --points 1").exit_code == 2);
    const RunResult r = run_cli(dir, "periods --plot");
    CHECK(r.exit_code == 2);
    CHECK(r.err.find("usage error") != std::string::npos);
}

TEST_CASE("numerical failures exit with status 1") {
    const fs::path dir = fresh_dir("numerical");
    const RunResult r = run_cli(dir, "fig1 --dt 40 --t-end 400");
    CHECK(r.exit_code == 1);
    CHECK(r.err.find("numerical error") != std::string::npos);
}

}  // TEST_SUITE
