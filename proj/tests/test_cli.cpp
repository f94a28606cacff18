#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "catcode/codes.hpp"
#include "catcode/io.hpp"

using namespace catcode;
using nlohmann::json;

namespace {

struct cli_result {
    int exit_code = -1;
    std::string out;
    std::string err;
};

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

cli_result run_cli(const std::string& args) {
    const std::string out_path = "/tmp/catcode_test_out.txt";
    const std::string err_path = "/tmp/catcode_test_err.txt";
    const std::string cmd =
        std::string(CATCODE_CLI_PATH) + " " + args + " > " + out_path + " 2> " + err_path;
    const int status = std::system(cmd.c_str());
    cli_result r;
    r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    r.out = slurp(out_path);
    r.err = slurp(err_path);
    return r;
}

}  // namespace

TEST_CASE("build writes a loadable code that matches the library") {
    const std::string path = "/tmp/catcode_test_code.json";
    const cli_result r =
        run_cli("build --group pauli8 --alpha 1.5 --beta 0,1.5 --out " + path);
    REQUIRE(r.exit_code == 0);
    const json summary = json::parse(r.out);
    CHECK(summary["group"] == "pauli8");
    CHECK(summary["cutoff"] == 27);

    const bosonic_code loaded = load_code(path);
    const bosonic_code direct = encode_coherent(builtin_group("pauli8"), cx(1.5, 0), cx(0, 1.5),
                                                default_cutoff("pauli8", cx(1.5, 0), cx(0, 1.5)));
    REQUIRE(loaded.codewords.size() == 2);
    double worst = 0.0;
    for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t k = 0; k < loaded.space.dim(); ++k)
            worst = std::max(worst,
                             std::abs(loaded.codewords[i].amp[k] - direct.codewords[i].amp[k]));
    CHECK(worst < 1e-12);
    CHECK(covariance_check(loaded) < 1e-8);
}

TEST_CASE("unknown group fails with a machine readable error") {
    const cli_result r = run_cli("build --group octahedral --alpha 1 --beta 1 --out /tmp/x.json");
    CHECK(r.exit_code == 2);
    const json err = json::parse(r.err);
    CHECK(err["error"] == "UnknownGroupName");
    CHECK(err.contains("message"));
}

TEST_CASE("malformed flags fail with exit 2") {
    const cli_result r = run_cli("build --group pauli8 --alpha 1");
    CHECK(r.exit_code == 2);
    const json err = json::parse(r.err);
    CHECK(err["error"] == "ArgumentError");

    const cli_result bad = run_cli("build --group pauli8 --alpha 1,2,3 --beta 1 --out /tmp/x.json");
    CHECK(bad.exit_code == 2);

    const cli_result nosub = run_cli("");
    CHECK(nosub.exit_code == 2);
}

TEST_CASE("design check prints the residual") {
    const cli_result r = run_cli("check-design --group pauli16");
    REQUIRE(r.exit_code == 0);
    const json out = json::parse(r.out);
    CHECK(out["order"] == 16);
    CHECK(out["is_design"] == true);
    CHECK(out["residual"].get<double>() < 1e-9);
}

TEST_CASE("numerical failure maps to exit 3") {
    const std::string path = "/tmp/catcode_test_code.json";
    run_cli("build --group pauli8 --alpha 1.5 --beta 0,1.5 --out " + path);
    const cli_result r = run_cli("kl --code " + path + " --gamma 0.3 --pmax 8");
    CHECK(r.exit_code == 3);
    const json err = json::parse(r.err);
    CHECK(err["error"] == "TailTooLarge");
}

TEST_CASE("fidelity reports both methods") {
    const std::string path = "/tmp/catcode_test_code.json";
    run_cli("build --group pauli8 --alpha 1 --beta 0,1 --out " + path);
    const cli_result r = run_cli("fidelity --code " + path + " --gamma 0.01 --method both");
    REQUIRE(r.exit_code == 0);
    const json out = json::parse(r.out);
    CHECK(out["support_dim"] == 18);
    const double inf_opt = out["infidelity_opt"].get<double>();
    const double inf_tc = out["infidelity_transpose"].get<double>();
    CHECK(std::abs(inf_opt - 1.165945e-3) < 5e-8);
    CHECK(inf_opt <= inf_tc + 1e-8);
    CHECK(out["gap"].get<double>() < 1e-8);
}

TEST_CASE("sweep output is deterministic with the mandated header") {
    const std::string csv1 = "/tmp/catcode_test_sweep1.csv";
    const std::string csv2 = "/tmp/catcode_test_sweep2.csv";
    const std::string args =
        " --group pauli8 --alpha-start 1 --alpha-stop 1.5 --alpha-steps 2"
        " --theta 1.5707963267948966 --gamma 0.01 --jobs 2 --out ";
    const cli_result r1 = run_cli("sweep" + args + csv1);
    REQUIRE(r1.exit_code == 0);
    const cli_result r2 = run_cli("sweep" + args + csv2);
    REQUIRE(r2.exit_code == 0);

    const std::string body1 = slurp(csv1);
    CHECK(body1 == slurp(csv2));
    const std::string header = body1.substr(0, body1.find('\n'));
    CHECK(header ==
          "alpha,theta,gamma,group,variant,infidelity_opt,infidelity_transpose,gap,"
          "support_dim,cutoff,pmax");
    // Two data rows after the header.
    int lines = 0;
    for (char ch : body1)
        if (ch == '\n') ++lines;
    CHECK(lines == 3);
}

TEST_CASE("gate checks run from a stored code") {
    const std::string path = "/tmp/catcode_test_code.json";
    run_cli("build --group pauli8 --alpha 1.5 --beta 0,1.5 --out " + path);
    const cli_result r = run_cli("gates --code " + path + " --gate Z --crot 2");
    REQUIRE(r.exit_code == 0);
    const json out = json::parse(r.out);
    REQUIRE(out["checks"].size() == 2);
    for (const auto& c : out["checks"]) {
        CHECK(c["pass"] == true);
        CHECK(c["deviation"].get<double>() < 1e-6);
    }
    const cli_result none = run_cli("gates --code " + path);
    CHECK(none.exit_code == 2);

    const cli_result refused = run_cli("gates --code " + path + " --crot 4");
    CHECK(refused.exit_code == 3);
    CHECK(json::parse(refused.err)["error"] == "PhaseGateNotInGroup");
}

TEST_CASE("transversal and sampling commands") {
    const cli_result r = run_cli("transversal --group clifford96 --copies 2");
    REQUIRE(r.exit_code == 0);
    CHECK(json::parse(r.out)["norm"].get<double>() < 1e-12);

    const cli_result h = run_cli("haar-test --photons 1,0 --samples 20000 --seed 3");
    REQUIRE(h.exit_code == 0);
    const json out = json::parse(h.out);
    CHECK(out["within_3_stderr"] == true);

    const cli_result bad = run_cli("haar-test --photons 3,2 --samples 20000");
    CHECK(bad.exit_code == 2);
}

TEST_CASE("stored file survives a round trip unchanged") {
    const std::string p1 = "/tmp/catcode_test_rt1.json";
    const std::string p2 = "/tmp/catcode_test_rt2.json";
    run_cli("build --group clifford96 --alpha 1 --beta 1 --out " + p1);
    const bosonic_code c = load_code(p1);
    save_code(c, p2);
    CHECK(slurp(p1) == slurp(p2));
}
