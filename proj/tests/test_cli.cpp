#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "holevo/cli.hpp"

using namespace holevo;

namespace {

struct Run {
    int status;
    std::string out;
    std::string err;
};

Run cli(const std::vector<std::string>& args) {
    std::ostringstream out, err;
    const int status = run_command(args, out, err);
    return Run{status, out.str(), err.str()};
}

}  // namespace

TEST_CASE("cli dims reproduces the reference dimensions") {
    const Run r = cli({"dims", "--N", "7,8", "--L", "4", "--M", "2"});
    CHECK(r.status == 0);
    CHECK(r.err.empty());
    CHECK(r.out == "N,L,M,dim_individual,dim_average\n"
                   "7,4,2,120,952\n"
                   "8,4,2,165,1408\n");
}

TEST_CASE("cli sector emits the documented JSON record") {
    const Run r = cli({"sector", "--N", "0", "--L", "4", "--M", "2", "--kappa", "1"});
    CHECK(r.status == 0);
    const auto doc = nlohmann::json::parse(r.out);
    CHECK(doc["schema_version"] == 1);
    CHECK(doc["N"] == 0);
    CHECK(doc["chi"] == 0.0);
    CHECK(doc["dim_individual"] == 1);
}

TEST_CASE("cli sentinel parsing routes to the exact limits") {
    const Run inf = cli({"chi1", "--L", "5", "--M", "2", "--kappa", "inf"});
    CHECK(inf.status == 0);
    CHECK(inf.out == "L,M,kappa,chi1_exact,chi1_asymptotic,gap\n"
                     "5,2,inf,1,1,0\n");

    const Run zero = cli({"chi1", "--L", "4", "--M", "2", "--kappa", "0"});
    CHECK(zero.status == 0);
    CHECK(zero.out == "L,M,kappa,chi1_exact,chi1_asymptotic,gap\n"
                      "4,2,0,2,inf,inf\n");
}

TEST_CASE("cli reruns are byte-identical") {
    const std::vector<std::string> args{"sectors-sweep", "--L",     "3",   "--M",
                                        "2",             "--N-max", "3",   "--kappa",
                                        "0,0.5,inf",     "--threads", "3"};
    const Run first = cli(args);
    const Run second = cli(args);
    CHECK(first.status == 0);
    CHECK(first.out == second.out);
    CHECK(first.out.substr(0, first.out.find('\n')) == "N,kappa,chi_N,N_chi1");
}

TEST_CASE("cli chi1 at L = 100 reports the frozen convergence gap") {
    const Run r = cli({"chi1", "--L", "100", "--M", "2", "--kappa", "1"});
    CHECK(r.status == 0);
    std::istringstream lines(r.out);
    std::string header, row;
    std::getline(lines, header);
    std::getline(lines, row);
    const double gap = std::stod(row.substr(row.rfind(',') + 1));
    CHECK(std::abs(gap) >= 1.1028e-3);
    CHECK(std::abs(gap) <= 1.1029e-3);
}

TEST_CASE("cli szego rows verify the closed form") {
    const Run r = cli({"szego", "--kappa", "0.5,1"});
    CHECK(r.status == 0);
    std::istringstream lines(r.out);
    std::string header;
    std::getline(lines, header);
    CHECK(header == "kappa,quadrature,closed_form,difference");
    std::string row;
    while (std::getline(lines, row)) {
        const auto last = row.rfind(',');
        const double diff = std::stod(row.substr(last + 1));
        CHECK(std::abs(diff) <= 1e-8);
    }
}

TEST_CASE("cli conjecture reports zero violations on a small grid") {
    const Run r = cli({"conjecture", "--L", "3", "--M", "2", "--N-max", "3", "--kappa",
                       "0,1,inf"});
    CHECK(r.status == 0);
    const auto doc = nlohmann::json::parse(r.out);
    CHECK(doc["schema_version"] == 1);
    CHECK(doc["violation_count"] == 0);
    CHECK(doc["violations"].empty());
    CHECK(doc["checked"] == 6);
    CHECK(doc["max_margin"].get<double>() < 0.0);
}

TEST_CASE("cli exit codes: argument, resource, and numerical classes") {
    CHECK(cli({"sector", "--N", "1", "--L", "4", "--M", "2", "--kappa", "-3"}).status == 2);
    CHECK(cli({"sector", "--N", "1", "--L", "4", "--M", "2", "--kappa", "abc"}).status == 2);
    CHECK(cli({"nonsense"}).status == 2);
    CHECK(cli({"szego", "--kappa", "0"}).status == 2);
    CHECK(cli({"sector", "--N", "7", "--L", "4", "--M", "2", "--kappa", "1", "--dim-cap",
               "100"}).status == 3);
    CHECK(cli({"holevo", "--L", "4", "--M", "2", "--kappa", "1", "--nbar", "0.5", "--N-max",
               "1"}).status == 3);
}

TEST_CASE("cli errors go to the error stream, never the data stream") {
    const Run r = cli({"sector", "--N", "7", "--L", "4", "--M", "2", "--kappa", "1",
                       "--dim-cap", "100"});
    CHECK(r.status == 3);
    CHECK(r.out.empty());
    CHECK(r.err.find("cap of 100") != std::string::npos);
}

TEST_CASE("cli --out writes the file atomically and keeps stdout clean") {
    namespace fs = std::filesystem;
    const fs::path path = fs::temp_directory_path() / "holevo_cli_test_dims.csv";
    fs::remove(path);
    const Run r = cli({"dims", "--N", "7", "--L", "4", "--M", "2", "--out", path.string()});
    CHECK(r.status == 0);
    CHECK(r.out.empty());
    std::ifstream f(path);
    std::stringstream content;
    content << f.rdbuf();
    CHECK(content.str() == "N,L,M,dim_individual,dim_average\n7,4,2,120,952\n");
    CHECK_FALSE(fs::exists(path.string() + ".tmp"));
    fs::remove(path);
}

TEST_CASE("cli baselines and splitting emit their documented headers") {
    const Run base = cli({"baselines", "--nbar", "0.01"});
    CHECK(base.status == 0);
    CHECK(base.out.substr(0, base.out.find('\n')) ==
          "nbar,erasure,holevo_binary,leading_order,d_erasure,d_holevo_binary");

    const Run split = cli({"splitting", "--L", "2", "--M", "2", "--kappa", "1"});
    CHECK(split.status == 0);
    std::istringstream lines(split.out);
    std::string header, row1, row2;
    std::getline(lines, header);
    std::getline(lines, row1);
    std::getline(lines, row2);
    CHECK(header == "kappa,model,S_individual,S_average,chi2");
    CHECK(row1.find("independent") != std::string::npos);
    CHECK(row2.find("collective") != std::string::npos);
}

TEST_CASE("cli holevo csv carries the linear bound column") {
    const Run r = cli({"holevo", "--L", "2", "--M", "2", "--kappa", "inf", "--nbar", "0.01"});
    CHECK(r.status == 0);
    std::istringstream lines(r.out);
    std::string header, row;
    std::getline(lines, header);
    std::getline(lines, row);
    CHECK(header == "kappa,nbar,chi_per_use,linear_bound");
    CHECK(row.substr(0, 4) == "inf,");

    const Run json_run = cli({"holevo", "--L", "2", "--M", "2", "--kappa", "0", "--nbar",
                              "0.01", "--format", "json"});
    CHECK(json_run.status == 0);
    const auto doc = nlohmann::json::parse(json_run.out);
    CHECK(doc["reports"][0]["linear_bound"].is_null());
}

TEST_CASE("cli kernel emits (phi, p) pairs") {
    const Run r = cli({"kernel", "--kappa", "1", "--points", "8"});
    CHECK(r.status == 0);
    std::istringstream lines(r.out);
    std::string header;
    std::getline(lines, header);
    CHECK(header == "phi,p");
    int rows = 0;
    std::string row;
    while (std::getline(lines, row)) ++rows;
    CHECK(rows == 8);
}

TEST_CASE("cli environment overrides for the dimension cap") {
    setenv("HOLEVO_DIM_CAP", "100", 1);
    CHECK(cli({"sector", "--N", "7", "--L", "4", "--M", "2", "--kappa", "1"}).status == 3);
    // An explicit flag wins over the environment.
    CHECK(cli({"sector", "--N", "7", "--L", "4", "--M", "2", "--kappa", "1", "--dim-cap",
               "2000"}).status == 0);
    setenv("HOLEVO_DIM_CAP", "bogus", 1);
    CHECK(cli({"dims", "--N", "1", "--L", "2", "--M", "2"}).status == 2);
    unsetenv("HOLEVO_DIM_CAP");
}

TEST_CASE("cli help succeeds and prints to the data stream") {
    const Run r = cli({"--help"});
    CHECK(r.status == 0);
    CHECK(r.out.find("dims") != std::string::npos);
    CHECK(r.err.empty());
}
