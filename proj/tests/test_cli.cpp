#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <vector>

#include "doctest.h"
#include "h2opa/analysis.hpp"
#include "h2opa/moments.hpp"
#include "h2opa/opa.hpp"

using namespace h2opa;

namespace {

struct RunResult {
    int exit_code = -1;
    std::string out;
};

RunResult run_cli(const std::string& args) {
    const std::string cmd = std::string(H2OPA_CLI_PATH) + " " + args +
                            " 2>/dev/null";
    RunResult res;
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    char buf[512];
    while (std::fgets(buf, sizeof(buf), pipe))
        res.out += buf;
    const int status = pclose(pipe);
    res.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return res;
}

std::vector<std::string> lines_of(const std::string& text) {
    std::vector<std::string> lines;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line))
        lines.push_back(line);
    return lines;
}

// value following "key " on the matching line; fails the test if absent
std::string field(const std::string& text, const std::string& key) {
    for (const std::string& line : lines_of(text)) {
        if (line.rfind(key + " ", 0) == 0)
            return line.substr(key.size() + 1);
    }
    FAIL("missing field: " << key);
    return "";
}

std::string fmt17(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

const double kSqrt6 = std::sqrt(6.0);

} // namespace

TEST_CASE("coeff output round-trips to the exact library value") {
    const RunResult res = run_cli("coeff --alpha 1.3 --r 2.7 --k1 2 --k2 -1");
    CHECK(res.exit_code == 0);
    const auto lines = lines_of(res.out);
    REQUIRE(!lines.empty());
    const double printed = std::strtod(lines[0].c_str(), nullptr);
    CHECK(printed == coeff({1.3, 2.7}, {2, -1}));
}

TEST_CASE("coeff --oracle reports a small relative gap") {
    const RunResult res =
        run_cli("coeff --alpha 1.3 --r 2.7 --k1 2 --k2 -1 --oracle");
    CHECK(res.exit_code == 0);
    const double gap = std::strtod(field(res.out, "rel_gap").c_str(), nullptr);
    CHECK(gap < 1e-8);
}

TEST_CASE("invalid parameters exit with code 2") {
    CHECK(run_cli("coeff --alpha 1 --r 2 --k1 0 --k2 0").exit_code == 2);
    CHECK(run_cli("coeff --alpha -1 --r 3 --k1 0 --k2 0").exit_code == 2);
    CHECK(run_cli("").exit_code == 2);           // missing subcommand
    CHECK(run_cli("frobnicate").exit_code == 2); // unknown subcommand
    CHECK(run_cli("minimize --alpha 1 --r 1.5").exit_code == 2);
    CHECK(run_cli("--help").exit_code == 0);
}

TEST_CASE("check exits 0 on a root verdict and 1 otherwise") {
    const RunResult inside =
        run_cli("check --alpha 2.5 --r " + fmt17(kSqrt6));
    CHECK(inside.exit_code == 0);
    CHECK(field(inside.out, "has_root") == "true");
    const double q =
        std::strtod(field(inside.out, "quotient").c_str(), nullptr);
    CHECK(q == quotient({2.5, kSqrt6}));  // %.17g round-trip is exact

    const RunResult outside = run_cli("check --alpha 1 --r 4");
    CHECK(outside.exit_code == 1);
    CHECK(field(outside.out, "has_root") == "false");
}

TEST_CASE("scan CSV matches the library scan bit-for-bit") {
    const std::string path = "h2opa_cli_test_scan.csv";
    const RunResult res = run_cli("scan --alpha 2.4:2.6:3 --r 2.45:2.55:3 "
                                  "--out " + path);
    CHECK(res.exit_code == 0);

    std::ifstream file(path, std::ios::binary);
    REQUIRE(file.good());
    std::stringstream buffer;
    buffer << file.rdbuf();
    const std::string text = buffer.str();
    CHECK(text.find('\r') == std::string::npos);  // LF only

    const auto rows = lines_of(text);
    REQUIRE(rows.size() == 1 + 3 * 3);
    CHECK(rows[0] == "alpha,r,quotient,has_root");

    const ScanResult expect =
        scan_region({2.4, 2.6, 3}, {2.45, 2.55, 3});
    std::size_t row = 1;
    for (std::size_t i = 0; i < expect.alphas.size(); ++i)
        for (std::size_t j = 0; j < expect.rs.size(); ++j, ++row) {
            double av = 0.0, rv = 0.0, qv = 0.0;
            int hv = -1;
            REQUIRE(std::sscanf(rows[row].c_str(), "%lf,%lf,%lf,%d", &av, &rv,
                                &qv, &hv) == 4);
            CHECK(av == expect.alphas[i]);
            CHECK(rv == expect.rs[j]);
            CHECK(qv == expect.quotients[i][j]);
            CHECK(hv == (expect.verdicts[i][j] ? 1 : 0));
            CHECK(hv == 1);  // the whole window lies inside the root region
        }
    std::remove(path.c_str());
}

TEST_CASE("scan writes the same CSV to stdout") {
    const RunResult res = run_cli("scan --alpha 2.4:2.5:2 --r 2.5:2.6:2");
    CHECK(res.exit_code == 0);
    const auto rows = lines_of(res.out);
    REQUIRE(rows.size() == 1 + 2 * 2);
    CHECK(rows[0] == "alpha,r,quotient,has_root");
}

TEST_CASE("malformed scan ranges exit with code 2") {
    CHECK(run_cli("scan --alpha 2.4:2.6 --r 2.45:2.55:3").exit_code == 2);
    CHECK(run_cli("scan --alpha 2.4:2.6:3 --r nonsense").exit_code == 2);
    CHECK(run_cli("scan --alpha 2.4:2.6:1 --r 2.45:2.55:3").exit_code == 2);
}

TEST_CASE("minimize reproduces the quotient minimum") {
    const RunResult res = run_cli("minimize --alpha 2.5 --r 2.5");
    CHECK(res.exit_code == 0);
    CHECK(field(res.out, "converged") == "true");
    const double q =
        std::strtod(field(res.out, "quotient_star").c_str(), nullptr);
    const double a =
        std::strtod(field(res.out, "alpha_star").c_str(), nullptr);
    const double r = std::strtod(field(res.out, "r_star").c_str(), nullptr);
    CHECK(std::fabs(q - 0.975766335259681) < 1e-9);
    CHECK(std::fabs(a - 2.551918826591946) < 1e-4);
    CHECK(std::fabs(r - 2.533672086469380) < 1e-4);
}

TEST_CASE("verify-integral agrees with the series prediction") {
    const RunResult res =
        run_cli("verify-integral --alpha 1 --r 4 --orders 32:32:32");
    CHECK(res.exit_code == 0);
    CHECK(field(res.out, "agreement") == "true");
    CHECK(field(res.out, "integral_verdict") == "no-root");
    const double gap =
        std::strtod(field(res.out, "lhs_rel_gap").c_str(), nullptr);
    CHECK(gap < 1e-10);
}

TEST_CASE("opa prints graded coefficients and an optional witness") {
    const std::string base =
        "opa --alpha 2.5 --r " + fmt17(kSqrt6) + " --degree 1";
    const RunResult res = run_cli(base);
    CHECK(res.exit_code == 0);
    const auto rows = lines_of(res.out);
    REQUIRE(rows.size() == 4);  // three coefficients + residual
    const OpaSolution sol = solve_opa({2.5, kSqrt6}, 1);
    for (int i = 0; i < 3; ++i) {
        int k1 = 0, k2 = 0;
        double v = 0.0;
        REQUIRE(std::sscanf(rows[i].c_str(), "%d %d %lf", &k1, &k2, &v) == 3);
        CHECK(k1 == sol.index_set.members[i].k1);
        CHECK(k2 == sol.index_set.members[i].k2);
        CHECK(v == sol.coeffs[i]);
    }
    CHECK(field(res.out, "residual_norm_sq") ==
          fmt17(sol.residual_norm_sq));

    const RunResult with_root = run_cli(base + " --root");
    CHECK(with_root.exit_code == 0);
    CHECK(with_root.out.find("root z1 ") != std::string::npos);

    const RunResult no_root =
        run_cli("opa --alpha 1 --r 4 --degree 1 --root");
    CHECK(no_root.exit_code == 1);
    CHECK(no_root.out.find("root none") != std::string::npos);
}
