#include <sstream>

#include "cli.hpp"
#include "doctest.h"
#include "json.hpp"

namespace {

struct Run {
    int status;
    std::string out;
    std::string err;
};

Run cli(std::vector<std::string> args) {
    std::ostringstream out, err;
    const int status = srlnc::cli::run(args, out, err);
    return {status, out.str(), err.str()};
}

}  // namespace

TEST_CASE("exact") {
    auto r = cli({"exact", "--q", "2", "--n", "3", "--m", "3", "--symbolic"});
    CHECK(r.status == 0);
    CHECK(r.out.find("-24p0^9 +144p0^8 -360p0^7 +492p0^6 -414p0^5 +234p0^4 -90p0^3 +18p0^2\n") != std::string::npos);

    r = cli({"exact", "--q", "2", "--n", "3", "--m", "3", "--p0", "1/2", "--format", "json"});
    const auto j = nlohmann::json::parse(r.out);
    CHECK(j["value"] == "21/64");
    CHECK(j["value_float"] == 0.328125);

    r = cli({"exact", "--q", "2", "--n", "2", "--m", "2", "--p0", "1", "--format", "csv"});
    CHECK(r.out == "q,n,m,i_or_r,p0,value,value_float,formula\n2,2,2,2,1,0,0,full_rank_product\n");

    // decimal input is the exact rational it denotes
    r = cli({"exact", "--q", "2", "--n", "2", "--m", "3", "--p0", "0.7", "--format", "csv"});
    CHECK(r.out.find(",7/10,") != std::string::npos);
}

TEST_CASE("pni") {
    auto r = cli({"pni", "--q", "2", "--n", "3", "--i", "0", "--symbolic"});
    CHECK(r.out == "p(0, 3) over GF(2)\np0^3\n");
    r = cli({"pni", "--q", "2", "--n", "4", "--i", "2", "--p0", "0.6", "--bound", "--format", "json"});
    const auto j = nlohmann::json::parse(r.out);
    CHECK(j["bkw_bound"]["value"] == "9/25");
    CHECK(j["value_float"].get<double>() <= 0.36);
    CHECK(cli({"pni", "--q", "2", "--n", "3", "--i", "3", "--symbolic"}).status == 2);
}

TEST_CASE("rankdist") {
    auto r = cli({"rankdist", "--q", "2", "--n", "1", "--m", "1", "--p0", "1/2", "--format", "json"});
    auto j = nlohmann::json::parse(r.out);
    CHECK(j["probs"][0]["value"] == "1/2");
    CHECK(j["probs"][1]["value"] == "1/2");
    CHECK(j["total"] == "1");

    const auto nested = cli({"rankdist", "--q", "2", "--n", "3", "--m", "4", "--p0", "1/2", "--format", "json"});
    const auto pf = cli({"rankdist", "--q", "2", "--n", "3", "--m", "4", "--p0", "1/2", "--form", "pf", "--format", "json"});
    auto a = nlohmann::json::parse(nested.out);
    auto b = nlohmann::json::parse(pf.out);
    CHECK(a["probs"] == b["probs"]);

    r = cli({"rankdist", "--q", "2", "--n", "2", "--m", "3", "--p0", "0", "--form", "pf"});
    CHECK(r.status == 4);
    CHECK(r.err.find("nested") != std::string::npos);
    CHECK(r.out.empty());
}

TEST_CASE("sweep") {
    const auto r = cli({"sweep", "--q", "2", "--n", "3", "--m-range", "3:5", "--p0-grid", "1/4,1/2,3/4", "--format",
                        "csv"});
    std::istringstream in(r.out);
    std::string line;
    std::getline(in, line);
    CHECK(line == "q,n,m,p0,value,value_float,bkw_lower_bound,rlnc_reference");
    int rows = 0;
    while (std::getline(in, line)) {
        ++rows;
        if (line.find(",1/2,") != std::string::npos) {
            // value_float equals the uniform reference at p0 = 1/2
            const auto last = line.substr(line.rfind(',') + 1);
            const auto parts = line.substr(0, line.rfind(','));
            CHECK(parts.find("," + last + ",") != std::string::npos);
        }
    }
    CHECK(rows == 9);
}

TEST_CASE("simulate") {
    const std::vector<std::string> args = {"simulate", "--q", "2", "--n", "3", "--m", "4", "--p0", "0.7",
                                           "--trials", "20000", "--seed", "4", "--format", "json"};
    const auto a = cli(args);
    const auto b = cli(args);
    CHECK(a.status == 0);
    CHECK(a.out == b.out);
    const auto j = nlohmann::json::parse(a.out);
    CHECK(std::abs(j["analysis"]["z"].get<double>()) <= 4);

    const auto stream = cli({"simulate", "--mode", "stream", "--eps", "1", "--n", "3", "--trials", "200", "--format",
                             "json"});
    CHECK(nlohmann::json::parse(stream.out)["report"]["success_rate"] == 0.0);
    CHECK(nlohmann::json::parse(stream.out)["analysis"].is_null());

    CHECK(cli({"simulate", "--n", "5", "--m", "3"}).status == 2);
    CHECK(cli({"simulate", "--config", "/nonexistent.json"}).status == 2);
}

TEST_CASE("oracle") {
    auto r = cli({"oracle", "--q", "2", "--n", "3", "--m", "3"});
    CHECK(r.status == 0);
    CHECK(r.out.find("     3  6\n     4  36\n     5  72\n     6  36\n     7  18\n") != std::string::npos);
    CHECK(r.out.substr(r.out.size() - 6) == "MATCH\n");
    CHECK(cli({"oracle", "--q", "2", "--n", "2", "--m", "3"}).out.find("MATCH") != std::string::npos);
    CHECK(cli({"oracle", "--q", "3", "--n", "2", "--m", "2"}).status == 0);
}

TEST_CASE("exit codes") {
    CHECK(cli({}).status == 2);
    CHECK(cli({"frobnicate"}).status == 2);
    CHECK(cli({"exact", "--q", "2", "--n", "3"}).status == 2);
    CHECK(cli({"exact", "--q", "6", "--n", "1", "--m", "1", "--symbolic"}).status == 2);
    CHECK(cli({"exact", "--q", "2", "--n", "1", "--m", "1", "--p0", "3/2"}).status == 2);
    CHECK(cli({"exact", "--q", "2", "--n", "1", "--m", "1", "--format", "xml", "--symbolic"}).status == 2);
    CHECK(cli({"exact", "--q", "2", "--n", "5", "--m", "5", "--symbolic", "--budget", "1000"}).status == 3);
    CHECK(cli({"oracle", "--q", "2", "--n", "5", "--m", "5"}).status == 3);
    CHECK(cli({"--help"}).status == 0);
}
