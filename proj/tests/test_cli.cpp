// Copyright 2026 The hrsp Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
#include "catch_amalgamated.hpp"

#include "hrsp/cli.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace fs = std::filesystem;

namespace {

struct Run {
    int code;
    std::string out;
    std::string err;
};

Run run(std::vector<std::string> args) {
    args.insert(args.begin(), "hrsp");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    const int code = hrsp::cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

std::vector<std::string> lines(const std::string& s) {
    std::vector<std::string> v;
    std::istringstream is(s);
    for (std::string l; std::getline(is, l);) v.push_back(l);
    return v;
}

std::string slurp(const fs::path& p) {
    std::ifstream f(p, std::ios::binary);
    return {std::istreambuf_iterator<char>(f), {}};
}

fs::path temp_path(const std::string& name) { return fs::temp_directory_path() / ("hrsp_test_" + name); }

double last_fidelity(const std::string& csv) {
    const auto l = lines(csv);
    return std::stod(l.back().substr(l.back().rfind(',') + 1));
}

}  // namespace

TEST_CASE("verify-factorization exit codes", "[cli]") {
    const auto bob = run({"verify-factorization", "--variant", "bob"});
    CHECK(bob.code == 0);
    CHECK(bob.out.find("verdict\tconsistent") != std::string::npos);

    const auto david = run({"verify-factorization", "--variant", "david"});
    CHECK(david.code == 1);
    CHECK(david.out.find("discrepancies\t3") != std::string::npos);
    CHECK(david.out.find("b|-+>-a|-+>") != std::string::npos);

    CHECK(run({"verify-factorization", "--alpha", "2", "--beta", "0"}).code == 2);
    CHECK(run({"verify-factorization", "--variant", "eve"}).code == 2);
    CHECK(run({"verify-factorization", "--alpha", "0.6", "--beta", "0.8"}).code == 0);
}

TEST_CASE("usage errors exit 2", "[cli]") {
    CHECK(run({}).code == 2);
    CHECK(run({"frobnicate"}).code == 2);
    CHECK(run({"sweep", "--noise", "xx"}).code == 2);
    CHECK(run({"sweep", "--step", "0.3"}).code == 2);
    CHECK(run({"sweep", "--receiver", "bob", "--table", "II"}).code == 2);
    CHECK(run({"sweep", "--receiver", "bob", "--row", "9"}).code == 2);
    CHECK(run({"sweep", "--receiver", "charlie", "--table", "I"}).code == 2);
    CHECK(run({"--help"}).code == 0);
}

TEST_CASE("sweep writes the CSV contract", "[cli]") {
    const auto r = run({"sweep"});
    REQUIRE(r.code == 0);
    const auto l = lines(r.out);
    REQUIRE(l.size() == 12);
    CHECK(l[0] == "noise,receiver,table,row,eta,fidelity");
    CHECK(l[1] == "ad,bob,I,1,0,1.000000");
    CHECK(l[10] == "ad,bob,I,1,0.9,0.887401");
    CHECK(l[11] == "ad,bob,I,1,1,nan");
    CHECK(r.err.find("F(0)\t1.000000") != std::string::npos);
    CHECK(r.err.find("last_defined\tF(0.9)\t0.887401") != std::string::npos);
}

TEST_CASE("sweep grid and receivers", "[cli]") {
    const auto half = run({"sweep", "--step", "0.5"});
    CHECK(lines(half.out).size() == 4);

    const auto pd = run({"sweep", "--noise", "pd", "--receiver", "david"});
    REQUIRE(pd.code == 0);
    CHECK_THAT(last_fidelity(pd.out), Catch::Matchers::WithinAbs(0.5, 0.005));
    CHECK(lines(pd.out)[1].rfind("pd,david,II,1,", 0) == 0);

    const auto ch = run({"sweep", "--receiver", "charlie", "--row", "20"});
    REQUIRE(ch.code == 0);
    CHECK(lines(ch.out)[1].rfind("ad,charlie,oracle,20,0,1.000000", 0) == 0);

    const auto t3 = run({"sweep", "--receiver", "david", "--table", "III", "--row", "8"});
    REQUIRE(t3.code == 0);
    CHECK(lines(t3.out)[1] == "ad,david,III,8,0,1.000000");

    const auto un = run({"sweep", "--uncorrelated-noise"});
    REQUIRE(un.code == 0);
    CHECK(un.err.find("uncorrelated") != std::string::npos);
}

TEST_CASE("sweep output file is deterministic", "[cli]") {
    const auto a = temp_path("a.csv"), b = temp_path("b.csv");
    const auto ra = run({"sweep", "--noise", "pd", "--receiver", "david", "--out", a.string()});
    const auto rb = run({"sweep", "--noise", "pd", "--receiver", "david", "--out", b.string()});
    REQUIRE(ra.code == 0);
    REQUIRE(rb.code == 0);
    CHECK(slurp(a) == slurp(b));
    CHECK(lines(slurp(a)).size() == 12);
    CHECK(ra.out.find("F(1)\t0.500000") != std::string::npos);
    fs::remove(a);
    fs::remove(b);
}

TEST_CASE("sweep to an unwritable path exits 1", "[cli]") {
    CHECK(run({"sweep", "--out", "/nonexistent-dir/x.csv"}).code == 1);
}

TEST_CASE("verify-tables reports all sections", "[cli]") {
    const auto r = run({"verify-tables"});
    CHECK(r.code == 1);  // Table I row 6 fails
    for (const char* s : {"[table I]", "[table II]", "[table III]", "[table charlie-zeta1]",
                          "[table charlie-zeta2]"})
        CHECK(r.out.find(s) != std::string::npos);
    CHECK(r.out.find("summary\tI\tconfirmed=4\tphase-equivalent=3\tmismatch=1") != std::string::npos);
    CHECK(r.out.find("same rule as row 15") != std::string::npos);
    CHECK(r.out.find("summary\tcharlie-zeta1\tconfirmed=16") != std::string::npos);
}

TEST_CASE("installed binary honours exit codes", "[cli][process]") {
    const std::string bin = HRSP_CLI_PATH;
    REQUIRE(fs::exists(bin));
    auto status = [&](const std::string& args) {
        const int s = std::system((bin + " " + args + " >/dev/null 2>&1").c_str());
        return WIFEXITED(s) ? WEXITSTATUS(s) : -1;
    };
    CHECK(status("verify-factorization --variant bob") == 0);
    CHECK(status("verify-factorization --variant david") == 1);
    CHECK(status("verify-factorization --alpha 2 --beta 0") == 2);
    CHECK(status("sweep --out /nonexistent-dir/x.csv") == 1);
}
