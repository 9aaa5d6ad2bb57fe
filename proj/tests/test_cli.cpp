// End-to-end tests driving the installed CLI binary (path in $JTK_CLI).
#include "jtk/structfile.hpp"

#include <doctest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

namespace {

std::string cli_path() {
    const char* p = std::getenv("JTK_CLI");
    REQUIRE_MESSAGE(p != nullptr, "JTK_CLI must point at the CLI binary");
    return p;
}

struct RunResult {
    int exit_code;
    std::string output;
};

RunResult run_cli(const std::string& args) {
    std::string out_file = "cli_out.tmp";
    std::string cmd = cli_path() + " " + args + " > " + out_file + " 2>&1";
    int rc = std::system(cmd.c_str());
    std::ifstream in(out_file);
    std::ostringstream os;
    os << in.rdbuf();
    return {WEXITSTATUS(rc), os.str()};
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path);
    out << text;
}

const char* kGoodStructure =
    "chart x y z\n"
    "pi deg 2\n"
    "( x y ) = x^4 + y^4\n"
    "( z x ) = x\n"
    "( y z ) = -y\n"
    "E deg 1\n"
    "( z ) = 2\n";

const char* kBadStructure =
    "chart x y z\n"
    "pi deg 2\n"
    "( x y ) = x\n"
    "E deg 1\n"
    "( z ) = 1\n";

}  // namespace

TEST_CASE("check-jacobi exit codes") {
    write_file("good.struct", kGoodStructure);
    write_file("bad.struct", kBadStructure);
    write_file("broken.struct", "chart x y\npi deg 2\n( x y = 1\n");

    CHECK(run_cli("check-jacobi good.struct").exit_code == 0);
    RunResult bad = run_cli("check-jacobi bad.struct");
    CHECK(bad.exit_code == 1);
    CHECK(bad.output.find("FAIL") != std::string::npos);
    RunResult broken = run_cli("check-jacobi broken.struct");
    CHECK(broken.exit_code == 2);
    CHECK(broken.output.find("parse error") != std::string::npos);
}

TEST_CASE("precondition violations exit with 3") {
    write_file("good.struct", kGoodStructure);
    write_file("small.struct",
               "chart u v w q e\n"
               "pi deg 2\n"
               "( u v ) = 1\n"
               "E deg 1\n"
               "( w ) = 0\n");
    write_file("dim.map",
               "map from u v w q e to x y z\n"
               "x = u\ny = v\nz = w\n");
    // Resolution checks require equal source and target dimensions.
    CHECK(run_cli("check-resolution small.struct good.struct dim.map")
              .exit_code == 3);
}

TEST_CASE("structured output is deterministic byte for byte") {
    write_file("good.struct", kGoodStructure);
    RunResult a = run_cli("check-jacobi good.struct --format structured");
    RunResult b = run_cli("check-jacobi good.struct --format structured");
    CHECK(a.exit_code == 0);
    CHECK(a.output == b.output);
    CHECK(a.output.find("\"pass\": true") != std::string::npos);
}

TEST_CASE("poissonify emits a parseable structure file and round-trips") {
    write_file("good.struct", kGoodStructure);
    RunResult r = run_cli("poissonify good.struct -o hp.struct --slice-roundtrip");
    CHECK(r.exit_code == 0);
    CHECK(r.output.find("slice round-trip at t = 0: PASS") != std::string::npos);

    std::ifstream in("hp.struct");
    std::ostringstream os;
    os << in.rdbuf();
    jtk::StructureFile sf = jtk::parse_structure_file(os.str());
    CHECK(sf.chart.dim() == 4);
    CHECK(sf.block("pi") != nullptr);
    CHECK(sf.block("Z") != nullptr);
}

TEST_CASE("family subcommand solves and emits") {
    RunResult r = run_cli("family --f \"3*y + 2\" --n 1 -o fam.struct");
    CHECK(r.exit_code == 0);
    CHECK(r.output.find("g = ") != std::string::npos);
    std::ifstream in("fam.struct");
    std::ostringstream os;
    os << in.rdbuf();
    CHECK(jtk::parse_structure_file(os.str()).block("pi") != nullptr);

    // Constant term with n >= 2 has no polynomial solution: math failure.
    CHECK(run_cli("family --f \"y^2 + 1\" --n 2").exit_code == 1);
    // Non-polynomial input is a parse failure.
    CHECK(run_cli("family --f \"sin(y)\" --n 1").exit_code == 2);
}

TEST_CASE("check-resolution on bundled data") {
    write_file("target.struct", kGoodStructure);
    write_file("source.struct",
               "chart p1 p2 p3\n"
               "pi deg 2\n"
               "( p1 p2 ) = cos(p1^3*p2)^4 + sin(p1^3*p2)^4\n"
               "( p2 p3 ) = 3*p2\n"
               "( p3 p1 ) = p1\n"
               "E deg 1\n"
               "( p3 ) = 2\n"
               "assert surjective true\n");
    write_file("res.map",
               "map from p1 p2 p3 to x y z\n"
               "x = p1*cos(p1^3*p2)\n"
               "y = p1*sin(p1^3*p2)\n"
               "z = p3\n");
    RunResult r = run_cli("check-resolution source.struct target.struct res.map");
    CHECK(r.exit_code == 0);

    // A broken map file is a parse failure.
    write_file("broken.map", "map from p1 p2 to x y z\nx = p1\n");
    CHECK(run_cli("check-resolution source.struct target.struct broken.map")
              .exit_code != 0);
}

TEST_CASE("examples subcommand") {
    RunResult all = run_cli("examples --run-all");
    CHECK(all.exit_code == 0);
    CHECK(all.output.find("PASS") != std::string::npos);
    CHECK(all.output.find("FAIL") == std::string::npos);

    RunResult missing = run_cli("examples --example no-such-entry");
    CHECK(missing.exit_code == 3);
}
