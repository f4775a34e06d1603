#include <doctest.h>

#include <cstdlib>
#include <string>

#include "svol/rng.hpp"
#include "test_util.hpp"

#ifndef SVOL_CLI_PATH
#define SVOL_CLI_PATH "svolkit"
#endif

namespace {

int run(const std::string& args) {
    std::string cmd = std::string(SVOL_CLI_PATH) + " " + args + " >/dev/null 2>/dev/null";
    int status = std::system(cmd.c_str());
    return WEXITSTATUS(status);
}

std::string synthetic_returns_csv(std::size_t n, std::uint64_t seed) {
    svol::SplitRng rng(seed, 0);
    std::string out = "date,ret\n";
    int date = 0;
    for (std::size_t i = 0; i < n; ++i) {
        // weekday-ish synthetic calendar: just strictly increasing YYYYMMDD
        int y = 1990 + date / 372, m = 1 + (date / 31) % 12, d = 1 + date % 31;
        ++date;
        char buf[64];
        std::snprintf(buf, sizeof(buf), "%04d%02d%02d,%.10f\n", y, m, d,
                      0.01 * rng.normal());
        out += buf;
    }
    return out;
}

} // namespace

TEST_SUITE("cli") {

TEST_CASE("exit codes follow the documented contract") {
    CHECK(run("moments --kappa 2 --theta 0.04 --sigma 0.3 --rho -0.7 --t 1") == 0);
    CHECK(run("--help") == 0);
    CHECK(run("moments --no-such-flag") == 2);
    CHECK(run("frobnicate") == 2);
    CHECK(run("moments --kappa -3") == 2);
    CHECK(run("moments --kappa 1 --sigma 0.3 --theta 0.04") == 2); // Feller, no override
    CHECK(run("moments --kappa 1 --sigma 0.3 --theta 0.04 --allow-feller-violation") == 0);
    CHECK(run("interaction --data /no/such/file.csv") == 3);
    CHECK(run("reproduce nonsense") == 2);
    // quadrature out of range -> numerical failure
    CHECK(run("density-compare --kappa 0.02 --sigma 2.5 --theta 0.04 "
              "--allow-feller-violation --t 50 --rho-list -1") == 4);
}

TEST_CASE("data-dependent recipe fails fast naming the expected file") {
    testutil::TempDir dir("recipe");
    setenv("SVOL_DATA_DIR", dir.root().c_str(), 1);
    std::string cmd = std::string(SVOL_CLI_PATH) + " reproduce table1 --out " +
                      dir.path("arts") + " 2>" + dir.path("err.txt") + " >/dev/null";
    int status = std::system(cmd.c_str());
    CHECK(WEXITSTATUS(status) == 3);
    std::string err = testutil::slurp(dir.path("err.txt"));
    CHECK(err.find("ff_size_daily.csv") != std::string::npos);
    unsetenv("SVOL_DATA_DIR");
}

TEST_CASE("interaction pipeline on a synthetic dataset") {
    testutil::TempDir dir("inter");
    testutil::spit(dir.path("r.csv"), synthetic_returns_csv(4000, 5));
    std::string base = "interaction --data " + dir.path("r.csv") +
                       " --kind returns --horizons 1,5,25 --resamples 100 --seed 2 --out " +
                       dir.path("rep.csv");
    CHECK(run(base) == 0);
    std::string rep = testutil::slurp(dir.path("rep.csv"));
    CHECK(rep.rfind("horizon_days,var_hat,", 0) == 0);
    CHECK(testutil::slurp(dir.path("rep.csv.figure.csv"))
              .rfind("horizon_days,var_annualized,eiv_annualized,ci_lo,ci_hi", 0) == 0);
    // provenance sidecar
    std::string meta = testutil::slurp(dir.path("rep.csv.meta.json"));
    CHECK(meta.find("\"command\": \"interaction\"") != std::string::npos);
    CHECK(meta.find("\"schema_version\": 1") != std::string::npos);
}

TEST_CASE("seeded runs are byte-identical across repeats and thread counts") {
    testutil::TempDir dir("det");
    auto sim = [&](const std::string& out, const std::string& threads) {
        setenv("SVOL_THREADS", threads.c_str(), 1);
        int rc = run("simulate --kappa 2 --theta 0.04 --sigma 0.3 --rho -0.7 --t-days 40 "
                     "--paths 20000 --seed 77 --out " +
                     dir.path(out + ".csv") + " --dump-x " + dir.path(out + ".bin"));
        unsetenv("SVOL_THREADS");
        REQUIRE(rc == 0);
        return testutil::slurp(dir.path(out + ".csv")) + "|" +
               testutil::slurp(dir.path(out + ".bin"));
    };
    std::string a = sim("a", "1");
    std::string b = sim("b", "1");
    std::string c = sim("c", "4");
    CHECK(a == b);
    CHECK(a == c);
    CHECK(a.size() > 20000 * 8); // the dump really contains the paths

    // different seed changes the bytes
    setenv("SVOL_THREADS", "1", 1);
    run("simulate --kappa 2 --theta 0.04 --sigma 0.3 --rho -0.7 --t-days 40 --paths 20000 "
        "--seed 78 --out " + dir.path("d.csv") + " --dump-x " + dir.path("d.bin"));
    unsetenv("SVOL_THREADS");
    CHECK(testutil::slurp(dir.path("d.bin")) != testutil::slurp(dir.path("a.bin")));
}

TEST_CASE("fit-gh and ks-test round trip on GH data") {
    testutil::TempDir dir("fit");
    // write synthetic GH-ish returns: normal is inside the GH closure, fine for plumbing
    testutil::spit(dir.path("r.csv"), synthetic_returns_csv(2000, 9));
    int rc = run("fit-gh --data " + dir.path("r.csv") + " --kind returns --out " +
                 dir.path("gh.json"));
    CHECK(rc == 0);
    std::string gh = testutil::slurp(dir.path("gh.json"));
    CHECK(gh.find("\"lambda\"") != std::string::npos);
    rc = run("ks-test --data " + dir.path("r.csv") + " --kind returns --params " +
             dir.path("gh.json") + " --stride 3 --out " + dir.path("ks.json"));
    CHECK(rc == 0);
    std::string ks = testutil::slurp(dir.path("ks.json"));
    CHECK(ks.find("\"p_value\"") != std::string::npos);
    CHECK(ks.find("\"n_effective\": 667") != std::string::npos);
}

TEST_CASE("config file can stand in for flags") {
    testutil::TempDir dir("cfg");
    testutil::spit(dir.path("m.cfg"), "kappa=4\ntheta=0.05\nsigma=0.2\nrho=-0.5\nt=1\n");
    std::string cmd = std::string(SVOL_CLI_PATH) + " moments --config " + dir.path("m.cfg") +
                      " >" + dir.path("out.txt") + " 2>/dev/null";
    REQUIRE(WEXITSTATUS(std::system(cmd.c_str())) == 0);
    std::string out = testutil::slurp(dir.path("out.txt"));
    CHECK(out.find("eiv = 0.05") != std::string::npos);
}

TEST_CASE("density-compare single rho still normalizes") {
    testutil::TempDir dir("dc");
    CHECK(run("density-compare --kappa 2 --theta 0.04 --sigma 0.3 --rho-list -0.7 --t-days 5 "
              "--out " + dir.path("d.csv")) == 0);
    std::string head = testutil::slurp(dir.path("d.csv")).substr(0, 40);
    CHECK(head.rfind("x,rho_-0.7", 0) == 0);
}

} // TEST_SUITE
