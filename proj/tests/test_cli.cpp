#include <doctest.h>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>

namespace {

struct RunResult {
    int exit_code = -1;
    std::string output;  // stdout only
};

RunResult run_cli(const std::string& args) {
    const std::string cmd = std::string(CFDIM_CLI_PATH) + " " + args + " 2>/dev/null";
    RunResult r;
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::array<char, 4096> buf;
    std::size_t got;
    while ((got = fread(buf.data(), 1, buf.size(), pipe)) > 0) r.output.append(buf.data(), got);
    const int status = pclose(pipe);
    r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p);
    REQUIRE(in);
    return std::string(std::istreambuf_iterator<char>(in), {});
}

}  // namespace

TEST_CASE("cf subcommand and exit codes") {
    RunResult r = run_cli("cf 5/8 --dirichlet-t 4");
    CHECK(r.exit_code == 0);
    CHECK(r.output.find("[1,1,1,2]") != std::string::npos);
    CHECK(r.output.find("p = 2, q = 3") != std::string::npos);

    CHECK(run_cli("cf 0/1").exit_code == 0);
    CHECK(run_cli("cf 8/5").exit_code == 2);    // outside [0,1)
    CHECK(run_cli("cf abc").exit_code == 2);    // parse error
    CHECK(run_cli("nope").exit_code == 2);      // unknown subcommand
    CHECK(run_cli("pressure --L 1 --M 2 --tau 0").exit_code == 2);
    CHECK(run_cli("audit --M 1 --L 2 --tau 1 --seed 1").exit_code == 2);  // M < 2 rejected
    CHECK(run_cli("cantor --M 2 --L 2 --tau 1 --blocks 1 --sample-depth 4 --samples 1").exit_code ==
          2);  // sampling without --seed
}

TEST_CASE("pressure sweep output") {
    const RunResult r = run_cli("pressure --L 2 --M 2 --tau 0");
    CHECK(r.exit_code == 0);
    CHECK(r.output.find("L,M,tau,S,residual,evaluations,dist_to_limit") != std::string::npos);
    CHECK(r.output.find("2,2,0,0.6544985923") != std::string::npos);
}

TEST_CASE("identical config and seed give byte-identical outputs") {
    namespace fs = std::filesystem;
    const fs::path dir_a = fs::temp_directory_path() / "cfdim_test_a";
    const fs::path dir_b = fs::temp_directory_path() / "cfdim_test_b";
    fs::remove_all(dir_a);
    fs::remove_all(dir_b);

    const std::string args =
        "dimension --M 5 --L 2 --tau 1 --blocks 1 --seed 9 --centers 16 --box-depth 5 "
        "--csv dim.csv --plot-prefix dim";
    const RunResult ra = run_cli("--out-dir " + dir_a.string() + " " + args);
    const RunResult rb = run_cli("--out-dir " + dir_b.string() + " " + args);
    REQUIRE(ra.exit_code == 0);
    REQUIRE(rb.exit_code == 0);
    CHECK(ra.output == rb.output);
    for (const char* name : {"dim.csv", "dim_box.dat", "dim_intervals.dat", "dim_balls.dat"}) {
        CHECK(slurp(dir_a / name) == slurp(dir_b / name));
        CHECK_FALSE(slurp(dir_a / name).empty());
    }
    fs::remove_all(dir_a);
    fs::remove_all(dir_b);
}

TEST_CASE("audit exits with 1 on findings, 0 otherwise") {
    const std::string base = "audit --M 3 --L 2 --tau 1 --blocks 1,1 --depth 5 --samples 10 --seed 3";
    CHECK(run_cli(base).exit_code == 0);
    const RunResult faulty = run_cli(base + " --inject-gap-fault");
    CHECK(faulty.exit_code == 1);
    CHECK(faulty.output.find("\"audit\":\"geometry\"") != std::string::npos);
}

TEST_CASE("cantor dump produces the level CSV") {
    namespace fs = std::filesystem;
    const fs::path dir = fs::temp_directory_path() / "cfdim_test_dump";
    fs::remove_all(dir);
    const RunResult r = run_cli("--out-dir " + dir.string() +
                                " cantor --M 2 --L 2 --tau 1 --blocks 1 --level 4 --dump lvl.csv");
    CHECK(r.exit_code == 0);
    const std::string csv = slurp(dir / "lvl.csv");
    CHECK(csv.find("word,p_n,q_n,left,right,case_tag") != std::string::npos);
    CHECK(csv.find("\"[1,1,4,3]\"") != std::string::npos);
    CHECK(csv.find(",I") != std::string::npos);
    fs::remove_all(dir);
}

TEST_CASE("measure command reports per-level normalization") {
    const RunResult r = run_cli("measure --M 2 --L 2 --tau 1 --blocks 1 --max-level 4");
    CHECK(r.exit_code == 0);
    CHECK(r.output.find("level,count,mass_total,max_parent_gap,ok") != std::string::npos);
    CHECK(r.output.find(",NO") == std::string::npos);
}

TEST_CASE("config file supplies the schedule") {
    namespace fs = std::filesystem;
    const fs::path dir = fs::temp_directory_path() / "cfdim_test_cfg";
    fs::create_directories(dir);
    const fs::path cfg = dir / "config.json";
    std::ofstream(cfg) << R"({"schedule": {"type": "cantor", "M": 2, "L": 2, "tau": "1",)"
                       << R"( "blocks": [1]}, "psi": {"family": "power", "tau": "1"}})";
    const RunResult r = run_cli("--config " + cfg.string() + " measure --max-level 4");
    CHECK(r.exit_code == 0);
    const RunResult bad = run_cli("--config " + (dir / "missing.json").string() + " measure --max-level 4");
    CHECK(bad.exit_code == 2);
    fs::remove_all(dir);
}

TEST_CASE("classify command output") {
    const RunResult r = run_cli("classify --family power --tau 1 --s 1/2,7/10 --word 1,1,4,4");
    CHECK(r.exit_code == 0);
    CHECK(r.output.find("2/3") != std::string::npos);
    CHECK(r.output.find("diverges") != std::string::npos);
    CHECK(r.output.find("converges") != std::string::npos);
    CHECK(r.output.find("G witnesses: 2 3") != std::string::npos);
    CHECK(run_cli("classify --family power --tau 1 --s 2").exit_code == 2);
}
