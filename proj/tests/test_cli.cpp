#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <string>

#include <json.hpp>

#include "idealab/sieve.hpp"

namespace {

struct RunResult {
    int exit_code = -1;
    std::string out;
};

const char* cli_path() { return std::getenv("IDEALAB_CLI"); }

RunResult run_cli(const std::string& args) {
    RunResult r;
    const std::string cmd = std::string(cli_path()) + " " + args + " 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    char buf[4096];
    while (size_t n = fread(buf, 1, sizeof buf, pipe)) r.out.append(buf, n);
    int status = pclose(pipe);
    r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

} // namespace

TEST_SUITE_BEGIN("cli");

TEST_CASE("field subcommand prints the splitting table") {
    if (!cli_path()) return; // set IDEALAB_CLI (ctest does) to enable
    RunResult r = run_cli("field 'Q(i)' --pmax 20");
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("disc -4") != std::string::npos);
    CHECK(r.out.find("p=2: (2,1)") != std::string::npos);
    CHECK(r.out.find("p=3: (1,2)") != std::string::npos);
    CHECK(r.out.find("p=5: (1,1)(1,1)") != std::string::npos);
    CHECK(r.out.find("p=19: (1,2)") != std::string::npos);

    RunResult z = run_cli("field 'Q(zeta7)' --pmax 20");
    CHECK(z.exit_code == 0);
    CHECK(z.out.find("p=2: (1,3)(1,3)") != std::string::npos); // f = ord_7(2) = 3
    CHECK(z.out.find("p=3: (1,6)") != std::string::npos);      // 3 is a primitive root mod 7
    CHECK(z.out.find("p=7: (6,1)") != std::string::npos);
}

TEST_CASE("usage errors exit 1") {
    if (!cli_path()) return;
    CHECK(run_cli("field 'Q(....)'").exit_code == 1);
    CHECK(run_cli("definitely-not-a-subcommand").exit_code == 1);
    CHECK(run_cli("sums --field 'Q(i)' --xmax 100").exit_code == 1); // missing --grid
    CHECK(run_cli("sums --field 'Q(i)' --xmax 100 --grid 1000:2:1").exit_code == 1); // beyond table
}

TEST_CASE("contract violations exit 2") {
    if (!cli_path()) return;
    CHECK(run_cli("sieve --field 'Q(i)' --xmax 2147483649 --out refuse.rkt").exit_code == 2);
    // x^2+4 without a declared index: p = 2 is uncertified
    CHECK(run_cli("sieve --poly 4,0,1 --xmax 10 --out refuse.rkt").exit_code == 2);
}

TEST_CASE("check rejects an empty table as a usage error") {
    if (!cli_path()) return;
    {
        std::ofstream f("empty.rkt", std::ios::binary);
        const unsigned char bytes[] = {'R', 'K', 'T', '1', 1, 0, 0, 0, // version
                                       0, 0, 0, 0, 0, 0, 0, 0,         // x_max = 0
                                       0, 0, 0, 0};                    // label length 0
        f.write(reinterpret_cast<const char*>(bytes), sizeof bytes);
    }
    CHECK(run_cli("check --table empty.rkt").exit_code == 1);
    std::remove("empty.rkt");
}

TEST_CASE("sieve then check round trip; corruption exits 3") {
    if (!cli_path()) return;
    RunResult s = run_cli("sieve --field 'Q(i)' --xmax 1000 --out cli_qi.rkt");
    CHECK(s.exit_code == 0);
    CHECK(s.out.find("RKT1 field=Q(i) xmax=1000 checksum=0x") != std::string::npos);

    RunResult c = run_cli("check --table cli_qi.rkt");
    CHECK(c.exit_code == 0);
    CHECK(c.out.find("check passed") != std::string::npos);

    // flip one table entry (value block starts at byte 24 here) and re-check
    {
        std::fstream f("cli_qi.rkt", std::ios::in | std::ios::out | std::ios::binary);
        f.seekp(24 + 4 * 49); // low byte of the m = 50 entry
        char delta = 1;
        f.write(&delta, 1);
    }
    RunResult bad = run_cli("check --table cli_qi.rkt");
    CHECK(bad.exit_code == 3);
    CHECK(bad.out.find("FAIL") != std::string::npos);
    std::remove("cli_qi.rkt");
}

TEST_CASE("sums emits the report CSV over a degenerate single-point grid") {
    if (!cli_path()) return;
    RunResult r = run_cli("sums --field 'Q(i)' --xmax 2000 --grid 1000:2:1");
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("x,plain_sum,cesaro_mean,log_sum,loglog_sum,kappa,") == 0);
    CHECK(std::count(r.out.begin(), r.out.end(), '\n') == 2); // header + one row
    CHECK(r.out.find("\n1000,") != std::string::npos);
}

TEST_CASE("kappa subcommand reports both estimators") {
    if (!cli_path()) return;
    RunResult r = run_cli("kappa --field 'Q(i)' --xmax 20000");
    CHECK(r.exit_code == 0);
    auto j = nlohmann::json::parse(r.out);
    CHECK(j["field"] == "Q(i)");
    CHECK(std::abs(j["closed_form"]["value"].get<double>() - 0.7853981633974483) < 1e-10);
    CHECK(std::abs(j["grid_fit"]["value"].get<double>() - 0.7853981633974483) < 0.02);

    RunResult z = run_cli("kappa --field 'Q(zeta7)' --xmax 20000");
    CHECK(z.exit_code == 0);
    auto jz = nlohmann::json::parse(z.out);
    CHECK(jz["closed_form"].is_null()); // no closed form beyond quadratic fields
    CHECK(jz["grid_fit"]["value"].get<double>() > 0.0);
}

TEST_CASE("sieve exports CSV on request; check runs from a fresh sieve") {
    if (!cli_path()) return;
    RunResult s = run_cli("sieve --field 'Q(i)' --xmax 100 --out cli_csv.rkt --csv cli_csv.csv");
    CHECK(s.exit_code == 0);
    std::ifstream csv("cli_csv.csv");
    std::string line;
    std::getline(csv, line);
    CHECK(line == "m,r");
    std::getline(csv, line);
    CHECK(line == "1,1");
    csv.close();
    std::remove("cli_csv.rkt");
    std::remove("cli_csv.csv");

    CHECK(run_cli("check --field 'Q(i)' --xmax 500").exit_code == 0);
}

TEST_CASE("counterexample and fit emit parseable JSON") {
    if (!cli_path()) return;
    RunResult r = run_cli("counterexample --mlist 1024 --eps 0");
    CHECK(r.exit_code == 0);
    auto arr = nlohmann::json::parse(r.out);
    REQUIRE(arr.is_array());
    CHECK(arr[0]["M"] == 1024);
    CHECK(std::abs(arr[0]["ratio"].get<double>() - std::pow(1024.0, 0.25) / 5.0) < 1e-9);

    {
        std::ofstream f("fit_in.csv");
        f.precision(17);
        f << "x,residual\n";
        for (int j = 0; j < 12; ++j) {
            double x = 100.0 * std::pow(2.0, j);
            f << x << "," << std::pow(x, 0.5) << "\n";
        }
    }
    RunResult fit = run_cli("fit --in fit_in.csv");
    CHECK(fit.exit_code == 0);
    auto j = nlohmann::json::parse(fit.out);
    CHECK(std::abs(j["theta"].get<double>() - 0.5) < 1e-9);
    CHECK(j["points"] == 12);
    std::remove("fit_in.csv");
}

TEST_SUITE_END();
