#include "doctest.h"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "json.hpp"

#include "tauforge/cli.hpp"

using namespace tauforge;

namespace {

struct CliRun {
    int code;
    std::string out;
    std::string err;
};

CliRun cli(std::vector<std::string> args) {
    std::ostringstream out, err;
    int code = run_cli(args, out, err);
    return {code, out.str(), err.str()};
}

} // namespace

TEST_CASE("expand table output is the full canonical grid") {
    auto r = cli({"expand", "--model", "wk", "--max-weight", "3"});
    CHECK(r.code == 0);
    CHECK(r.out ==
          "partition  frobenius  value\n"
          "()         (|)        1\n"
          "(1)        (0|0)      0\n"
          "(2)        (1|0)      0\n"
          "(1,1)      (0|1)      0\n"
          "(3)        (2|0)      41/24\n"
          "(2,1)      (1|1)      -5/24\n"
          "(1,1,1)    (0|2)      -7/24\n");
}

TEST_CASE("expand csv quotes every field") {
    auto r = cli({"expand", "--model", "bgw", "--C", "1/8", "--max-weight", "2", "--format", "csv"});
    CHECK(r.code == 0);
    CHECK(r.out ==
          "partition,frobenius,value\n"
          "\"\",\"(|)\",\"1\"\n"
          "\"1\",\"(0|0)\",\"1/8\"\n"
          "\"2\",\"(1|0)\",\"25/128\"\n"
          "\"1 1\",\"(0|1)\",\"-7/128\"\n");
}

TEST_CASE("expand json carries exact values") {
    auto r = cli({"expand", "--max-weight", "2", "--format", "json"});
    REQUIRE(r.code == 0);
    auto j = nlohmann::json::parse(r.out);
    CHECK(j["model"] == "bgw");
    CHECK(j["C"] == "sym"); // symbolic run: values are ascending coefficient lists
    CHECK(j["max_weight"] == 2);
    REQUIRE(j["coefficients"].size() == 4);
    CHECK(j["coefficients"][0]["partition"].empty());
    CHECK(j["coefficients"][0]["value"] == nlohmann::json::array({"1"}));
    CHECK(j["coefficients"][2]["frobenius"] == "(1|0)");
    CHECK(j["coefficients"][2]["value"] == nlohmann::json::array({"0", "3/2", "1/2"}));

    auto rat = cli({"expand", "--C", "-3", "--max-weight", "1", "--format", "json"});
    REQUIRE(rat.code == 0);
    auto k = nlohmann::json::parse(rat.out);
    CHECK(k["C"] == "-3");
    CHECK(k["coefficients"][1]["value"] == "-3"); // rational run: plain strings

    auto wk = cli({"expand", "--model", "wk", "--max-weight", "0", "--format", "json"});
    CHECK(nlohmann::json::parse(wk.out)["C"].is_null());
}

TEST_CASE("expand repeats byte for byte") {
    auto a = cli({"expand", "--max-weight", "4", "--format", "json"});
    auto b = cli({"expand", "--max-weight", "4", "--format", "json"});
    CHECK(a.out == b.out);
}

TEST_CASE("formula cross-check succeeds on the real models") {
    auto r = cli({"expand", "--model", "bgw", "--C", "1/8", "--max-weight", "4", "--formula",
                  "all", "--format", "json"});
    CHECK(r.code == 0);
    CHECK(nlohmann::json::parse(r.out)["formulas_agree"] == true);
}

TEST_CASE("verify reports pass counts and maps failures to the exit code") {
    auto r = cli({"verify", "--suite", "wk-terms"});
    CHECK(r.code == 0);
    CHECK(r.out.find("16/16 checks passed") != std::string::npos);

    auto bad = cli({"verify", "--suite", "no-such-suite"});
    CHECK(bad.code == 2);
    CHECK(bad.err.find("known suites") != std::string::npos);
}

TEST_CASE("affine prints a single coordinate") {
    CHECK(cli({"affine", "bgw", "0", "0"}).out == "C\n");
    CHECK(cli({"affine", "bgw", "0", "0", "1/8"}).out == "1/8\n");
    CHECK(cli({"affine", "wk", "2", "0"}).out == "5/24\n");
    CHECK(cli({"affine", "wk", "0", "0"}).out == "0\n");
    CHECK(cli({"affine", "wk", "1", "1", "1/2"}).code == 2); // wk has no parameter
    auto j = nlohmann::json::parse(cli({"affine", "bgw", "1", "1", "--format", "json"}).out);
    CHECK(j["m"] == 1);
    CHECK(j["value"].is_array());
}

TEST_CASE("lr expands the printed product") {
    auto r = cli({"lr", "(2,1)", "(1,1,1)"});
    CHECK(r.code == 0);
    CHECK(r.out ==
          "(3,2,1)      1\n"
          "(3,1,1,1)    1\n"
          "(2,2,1,1)    1\n"
          "(2,1,1,1,1)  1\n");
    CHECK(cli({"lr", "2", "1 1", "--format", "csv"}).out ==
          "partition,value\n\"3 1\",\"1\"\n\"2 1 1\",\"1\"\n");
    CHECK(cli({"lr", "(2,x)", "1"}).code == 2);
}

TEST_CASE("usage errors exit with code two, help with zero") {
    CHECK(cli({}).code == 2);
    CHECK(cli({"bogus"}).code == 2);
    CHECK(cli({"expand", "--model", "nope"}).code == 2);
    CHECK(cli({"expand", "--C", "1/0"}).code == 2);
    CHECK(cli({"expand", "--max-weight", "-1"}).code == 2);
    CHECK(cli({"--help"}).code == 0);
    CHECK(cli({"expand", "--help"}).code == 0);
}

TEST_CASE("cache directory replays identical bytes") {
    auto dir = std::filesystem::temp_directory_path() / "tauforge-cli-test-cache";
    std::filesystem::remove_all(dir);
    setenv("TAUFORGE_CACHE_DIR", dir.c_str(), 1);
    auto first = cli({"expand", "--model", "wk", "--max-weight", "3", "--format", "csv"});
    bool wrote = std::filesystem::exists(dir / "expand_wk_na_w3_determinant.csv");
    auto second = cli({"expand", "--model", "wk", "--max-weight", "3", "--format", "csv"});
    unsetenv("TAUFORGE_CACHE_DIR");
    std::filesystem::remove_all(dir);
    CHECK(first.code == 0);
    CHECK(wrote);
    CHECK(first.out == second.out);
}

TEST_CASE("out flag writes the payload to a file") {
    auto path = std::filesystem::temp_directory_path() / "tauforge-cli-test-out.csv";
    std::filesystem::remove(path);
    auto r = cli({"affine", "wk", "1", "1", "--format", "csv", "--out", path.string()});
    CHECK(r.code == 0);
    CHECK(r.out.empty());
    std::ifstream f(path);
    std::stringstream buf;
    buf << f.rdbuf();
    std::filesystem::remove(path);
    CHECK(buf.str() == "m,n,value\n1,1,\"-7/24\"\n");
}
