#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "lasnet/bnam.hpp"
#include "lasnet/css_io.hpp"
#include "lasnet/estimators.hpp"
#include "lasnet/posterior_io.hpp"
#include "lasnet/simulate.hpp"
#include "test_util.hpp"

namespace fs = std::filesystem;

namespace {

const std::string kCli = LASNET_CLI_PATH;
const std::string kFixtures = LASNET_FIXTURE_DIR;
const std::string kGolden = LASNET_GOLDEN_DIR;

struct RunResult {
    int exit_code;
    std::string stdout_text;
};

RunResult run(const std::string& args) {
    const fs::path out = fs::temp_directory_path() / "lasnet_cli_stdout.txt";
    const std::string cmd = kCli + " " + args + " > " + out.string() + " 2>/dev/null";
    const int status = std::system(cmd.c_str());
    RunResult r;
    r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    std::ifstream in(out);
    std::ostringstream buf;
    buf << in.rdbuf();
    r.stdout_text = buf.str();
    return r;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    REQUIRE(in.good());
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

fs::path scratch() {
    const fs::path dir = fs::temp_directory_path() / "lasnet_cli_test";
    fs::create_directories(dir);
    return dir;
}

}  // namespace

TEST_CASE("usage errors exit with code 1") {
    CHECK(run("").exit_code == 1);
    CHECK(run("frobnicate").exit_code == 1);
    CHECK(run("las --rule sideways --in x --out y").exit_code == 1);
    CHECK(run("--help").exit_code == 0);
}

TEST_CASE("data errors exit with code 2") {
    CHECK(run("las --rule union --in /no/such/file --out /tmp/x.json").exit_code == 2);
    const fs::path bad = scratch() / "bad.json";
    std::ofstream(bad) << "{ broken";
    CHECK(run("las --rule union --in " + bad.string() + " --out /tmp/x.json").exit_code == 2);
}

TEST_CASE("theory --crossover prints the critical density") {
    const RunResult r = run("theory --crossover --fp 0.1 --fn 0.3");
    CHECK(r.exit_code == 0);
    CHECK(r.stdout_text == "0.3\n");
}

TEST_CASE("las delegates to the library estimators") {
    const fs::path out = scratch() / "las_out.json";
    for (const std::string rule : {"union", "intersection", "self"}) {
        const RunResult r = run("las --rule " + rule + " --in " + kFixtures + "/tiny3.json --out " +
                                out.string());
        CHECK(r.exit_code == 0);
        const lasnet::ReportArray y = lasnet::load_css(kFixtures + "/tiny3.json");
        const lasnet::DirectedGraph expect = rule == "union" ? lasnet::las_union(y)
                                             : rule == "intersection"
                                                 ? lasnet::las_intersection(y)
                                                 : lasnet::self_report(y);
        CHECK(lasnet::load_graph_json(out.string()) == expect);
    }
}

TEST_CASE("theory grid output matches the golden file") {
    const fs::path out = scratch() / "fig2.csv";
    const RunResult r = run("theory --figure 2 --grid-step 0.25 --out " + out.string());
    CHECK(r.exit_code == 0);
    CHECK(slurp(out) == slurp(kGolden + "/theory_fig2_step025.csv"));

    const fs::path fig1 = scratch() / "fig1.csv";
    CHECK(run("theory --figure 1 --rule union --grid-step 0.25 --out " + fig1.string()).exit_code ==
          0);
    CHECK(slurp(fig1) == slurp(kGolden + "/theory_fig1_union_step025.csv"));
}

TEST_CASE("simulate writes the experiment table") {
    const fs::path cfg = scratch() / "sim.json";
    std::ofstream(cfg) << R"({"n": 12, "densities": [0.2, 0.4], "fp": 0.1, "fn": 0.3,
                              "replicates": 50, "seed": 3, "mode": "fixed"})";
    const fs::path out = scratch() / "sim.csv";
    const RunResult r = run("simulate --config " + cfg.string() + " --out " + out.string());
    CHECK(r.exit_code == 0);
    const std::string first = slurp(out);
    CHECK(first.rfind("density,rule,mean_hamming,se,expected_hamming,replicates\n", 0) == 0);
    // deterministic rerun: identical bytes
    CHECK(run("simulate --config " + cfg.string() + " --out " + out.string()).exit_code == 0);
    CHECK(slurp(out) == first);

    std::ofstream(cfg) << R"({"n": 12})";
    CHECK(run("simulate --config " + cfg.string() + " --out " + out.string()).exit_code == 2);
}

TEST_CASE("estimate is deterministic and honors the gate flags") {
    const fs::path dir_a = scratch() / "post_a";
    const fs::path dir_b = scratch() / "post_b";
    fs::remove_all(dir_a);
    fs::remove_all(dir_b);
    const std::string common = "estimate --in " + kFixtures +
                               "/tiny3.json --chains 2 --burnin 40 --samples 60 --seed 12 --quiet ";
    CHECK(run(common + "--no-gate --out " + dir_a.string()).exit_code == 0);
    CHECK(run(common + "--no-gate --out " + dir_b.string()).exit_code == 0);
    for (const std::string rel :
         {"meta.json", "gamma.csv", "rates.csv", "scalars.csv", "theta/draws.gz"})
        CHECK(slurp(dir_a / rel) == slurp(dir_b / rel));

    // compare consumes the export
    const fs::path report = scratch() / "compare.json";
    CHECK(run("compare --in " + kFixtures + "/tiny3.json --posterior " + dir_a.string() +
              " --out " + report.string())
              .exit_code == 0);
    // fingerprint mismatch is a data error
    CHECK(run("compare --in " + kFixtures + "/tiny3.txt --posterior " + dir_a.string() + " --out " +
              report.string())
              .exit_code == 0);  // txt fixture is the same data
    const fs::path other = scratch() / "other.json";
    {
        lasnet::Rng rng(5);
        const lasnet::DirectedGraph truth = testutil::random_graph(5, 0.3, rng);
        std::vector<lasnet::InformantRates> rates(5,
                                                  lasnet::InformantRates{{0.1, 0.2}, {0.05, 0.4}});
        lasnet::save_css(lasnet::sample_reports(truth, rates, {}, rng), "advice", other.string());
    }
    CHECK(run("compare --in " + other.string() + " --posterior " + dir_a.string() + " --out " +
              report.string())
              .exit_code == 2);
}

TEST_CASE("diagnose reports the gate through its exit code") {
    // hand-build a posterior whose chains disagree on a frozen scalar
    lasnet::PosteriorSamples samples;
    samples.n = 3;
    samples.informant_ids = {0};
    samples.config = lasnet::ChainConfig{0, 8, 1, 2, 0};
    samples.priors = lasnet::BnamPriors{};
    for (int c = 0; c < 2; ++c) {
        std::vector<lasnet::BnamState> draws;
        std::vector<double> lls;
        for (int d = 0; d < 8; ++d) {
            lasnet::BnamState st;
            st.theta = lasnet::DirectedGraph(3);
            if (c == 1) st.theta.set_edge(0, 1, true);  // chains stuck apart
            st.gamma = {0.2, 0.3, 0.5};
            st.rates = {{{0.1, 0.2}, {0.05, 0.4}}};
            draws.push_back(st);
            lls.push_back(c == 1 ? 5.0 : 0.0);
        }
        samples.chains.push_back(std::move(draws));
        samples.log_liks.push_back(std::move(lls));
    }
    const fs::path dir = scratch() / "stuck_posterior";
    fs::remove_all(dir);
    lasnet::save_posterior(samples, dir.string());
    CHECK(run("diagnose --posterior " + dir.string()).exit_code == 3);
    CHECK(run("diagnose --posterior /no/such/dir").exit_code == 2);
}
