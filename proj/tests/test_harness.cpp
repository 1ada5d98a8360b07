#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <sstream>

#include <json.hpp>

#include "prodcauchy/harness.hpp"

using namespace prodcauchy;
namespace hs = prodcauchy::harness;

TEST_CASE("minimal config gets defaults") {
    const auto cfg = hs::parse_config_text(R"({"n":1,"dims":[2,2]})");
    CHECK(cfg.ensemble.n() == 1);
    CHECK(cfg.ensemble.dims() == std::vector<int>{2, 2});
    CHECK(cfg.grid.r_min == 0.05);
    CHECK(cfg.grid.r_max == 5.0);
    CHECK(cfg.grid.points == 50);
    CHECK(cfg.mc.seed == 20250801);
    CHECK(cfg.mc.matrices == 500);
    CHECK(cfg.out_dir == "out");
}

TEST_CASE("config rejections") {
    CHECK_THROWS_AS(hs::parse_config_text(R"({"dims":[3,2]})"), std::domain_error);
    CHECK_THROWS_AS(hs::parse_config_text(R"({"dims":[2,2],"bogus":1})"), std::domain_error);
    CHECK_THROWS_AS(hs::parse_config_text(R"({"n":2,"dims":[2,2]})"), std::domain_error);
    CHECK_THROWS_AS(hs::parse_config_text(R"({"dims":[2,2],"grid":{"points":1}})"),
                    std::domain_error);
    CHECK_THROWS_AS(hs::parse_config_text(R"({"dims":[2,2],"grid":{"step":0.1}})"),
                    std::domain_error);
    CHECK_THROWS_AS(hs::parse_config_text(R"({"dims":[2,2],"tolerances":{"A01":-1}})"),
                    std::domain_error);
    CHECK_THROWS_AS(hs::parse_config_text("not json"), std::domain_error);
}

TEST_CASE("config round trip") {
    const auto cfg = hs::parse_config_text(
        R"({"n":2,"dims":[2,2,3],"grid":{"r_min":0.1,"r_max":3,"points":7},
            "mc":{"seed":42,"matrices":10},"tolerances":{"A01.identity-chain-n1":1e-7},
            "out_dir":"results"})");
    const std::string first = hs::config_to_json(cfg);
    const std::string second = hs::config_to_json(hs::parse_config_text(first));
    CHECK(first == second);
}

TEST_CASE("verification report verdict rule and schema") {
    const auto pass = hs::make_report("x", 1.00005, 1.0, 1e-4, "oracle");
    CHECK(pass.pass);
    const auto fail = hs::make_report("x", 1.2, 1.0, 1e-4, "oracle");
    CHECK(!fail.pass);
    // relative above 1, absolute below 1
    CHECK(hs::make_report("x", 200.002, 200.0, 1e-4, "o").pass);
    CHECK(!hs::make_report("x", 0.5, 0.0, 1e-4, "o").pass);
    CHECK(!hs::make_report("x", std::nan(""), 0.0, 1.0, "o").pass);

    const auto j = nlohmann::json::parse(hs::report_to_json(pass));
    CHECK(j.at("check_id") == "x");
    CHECK(j.at("verdict") == "pass");
    CHECK(j.at("computed").get<double>() == 1.00005);
    CHECK(j.at("reference").get<double>() == 1.0);
    CHECK(j.at("tolerance").get<double>() == 1e-4);
    CHECK(j.at("provenance") == "oracle");
}

TEST_CASE("fmt17 round-trips doubles") {
    for (double x : {std::numbers::pi, 1.0 / 3.0, 6.02e23, -1.2345678901234567e-7}) {
        CHECK(std::stod(hs::fmt17(x)) == x);
    }
}

TEST_CASE("cmd_weight: fixed header, route agreement, determinism") {
    auto cfg = hs::parse_config_text(R"({"dims":[3,3],"grid":{"r_min":0.1,"r_max":2,"points":5}})");
    std::ostringstream closed, meijer, closed2;
    hs::cmd_weight(cfg, "closed", closed);
    hs::cmd_weight(cfg, "meijer", meijer);
    hs::cmd_weight(cfg, "closed", closed2);
    CHECK(closed.str() == closed2.str());
    std::istringstream a(closed.str()), b(meijer.str());
    std::string ha, hb;
    std::getline(a, ha);
    std::getline(b, hb);
    CHECK(ha == "r,value");
    CHECK(hb == "r,value");
    std::string ra, rb;
    while (std::getline(a, ra) && std::getline(b, rb)) {
        const double va = std::stod(ra.substr(ra.find(',') + 1));
        const double vb = std::stod(rb.substr(rb.find(',') + 1));
        CHECK(std::abs(va - vb) < 1e-8 * std::abs(va));
    }
    CHECK_THROWS_AS(hs::cmd_weight(cfg, "nope", closed), std::domain_error);
}

TEST_CASE("cmd_density: n=1 closed form and mass diagnostic") {
    auto cfg = hs::parse_config_text(
        R"({"dims":[4,4],"grid":{"r_min":0.0,"r_max":60,"points":2001}})");
    std::ostringstream csv, meta;
    hs::cmd_density(cfg, "finite", csv, meta);
    const auto j = nlohmann::json::parse(meta.str());
    CHECK(std::abs(j.at("normalization").get<double>() - 1.0) < 1e-9);
    CHECK(std::abs(j.at("grid_mass").get<double>() - 1.0) < 2e-3);
    std::istringstream rows(csv.str());
    std::string line;
    std::getline(rows, line);  // header
    std::getline(rows, line);  // r = 0 row
    const double rho0 = std::stod(line.substr(line.find(',') + 1));
    CHECK(std::abs(rho0 - 1.0 / std::numbers::pi) < 1e-10);
}

TEST_CASE("cmd_kernel: hermiticity of emitted pairs and bulk diagonal") {
    auto cfg = hs::parse_config_text(R"({"dims":[4,4]})");
    std::istringstream pts("zi_re,zi_im,zj_re,zj_im\n0.5,0.25,-0.3,0.7\n-0.3,0.7,0.5,0.25\n");
    std::ostringstream csv;
    hs::cmd_kernel(cfg, "finite", pts, csv);
    std::istringstream rows(csv.str());
    std::string header, r1, r2;
    std::getline(rows, header);
    CHECK(header == "zi_re,zi_im,zj_re,zj_im,K_re,K_im");
    std::getline(rows, r1);
    std::getline(rows, r2);
    auto last_two = [](const std::string& s) {
        const auto p1 = s.rfind(',');
        const auto p2 = s.rfind(',', p1 - 1);
        return std::pair<double, double>(std::stod(s.substr(p2 + 1, p1 - p2 - 1)),
                                         std::stod(s.substr(p1 + 1)));
    };
    const auto [re1, im1] = last_two(r1);
    const auto [re2, im2] = last_two(r2);
    CHECK(re1 == doctest::Approx(re2).epsilon(1e-13));
    CHECK(im1 == doctest::Approx(-im2).epsilon(1e-13));

    std::istringstream diag("1.0,0.0,1.0,0.0\n");
    std::ostringstream bulkcsv;
    hs::cmd_kernel(cfg, "bulk", diag, bulkcsv);
    std::istringstream brows(bulkcsv.str());
    std::getline(brows, header);
    std::string brow;
    std::getline(brows, brow);
    const auto [bre, bim] = last_two(brow);
    CHECK(bre == doctest::Approx(1.0 / std::numbers::pi).epsilon(1e-14));
    CHECK(std::abs(bim) < 1e-15);

    std::istringstream empty("zi_re,zi_im,zj_re,zj_im\n");
    std::ostringstream out;
    CHECK_THROWS_AS(hs::cmd_kernel(cfg, "finite", empty, out), std::domain_error);
}

TEST_CASE("cmd_sample: square-only guard and thread determinism") {
    auto rect = hs::parse_config_text(R"({"dims":[2,2,3],"mc":{"seed":9,"matrices":5}})");
    std::ostringstream csv, meta, sum;
    CHECK_THROWS_AS(hs::cmd_sample(rect, 1, csv, meta, sum), std::domain_error);

    auto cfg = hs::parse_config_text(R"({"dims":[8,8],"mc":{"seed":9,"matrices":50}})");
    std::ostringstream c1, m1, s1, c4, m4, s4;
    hs::cmd_sample(cfg, 1, c1, m1, s1);
    hs::cmd_sample(cfg, 4, c4, m4, s4);
    CHECK(c1.str() == c4.str());
    CHECK(s1.str() == s4.str());
    std::istringstream head(c1.str());
    std::string header;
    std::getline(head, header);
    CHECK(header == "re,im,matrix_index");
}

TEST_CASE("suite names") {
    CHECK(hs::suite_from_string("weights") == hs::Suite::weights);
    CHECK(hs::suite_from_string("all") == hs::Suite::all);
    CHECK_THROWS_AS(hs::suite_from_string("bogus"), std::domain_error);
}

TEST_CASE("cmd_verify: mc suite passes, injected tolerance fails loudly") {
    auto cfg = hs::parse_config_text(R"({"dims":[2,2]})");
    std::ostringstream jsonl;
    CHECK(hs::cmd_verify(cfg, hs::Suite::mc, 2, jsonl));
    std::istringstream lines(jsonl.str());
    std::string line;
    int count = 0;
    while (std::getline(lines, line)) {
        const auto j = nlohmann::json::parse(line);
        CHECK(j.contains("check_id"));
        CHECK(j.contains("computed"));
        CHECK(j.contains("reference"));
        CHECK(j.contains("tolerance"));
        CHECK(j.at("verdict") == "pass");
        CHECK(j.contains("provenance"));
        ++count;
    }
    CHECK(count == 4);  // A10a, A10b, A10c, A11b

    auto strict = hs::parse_config_text(
        R"({"dims":[2,2],"tolerances":{"A10a.mc-radial-ks":1e-30}})");
    std::ostringstream jsonl2;
    CHECK(!hs::cmd_verify(strict, hs::Suite::mc, 2, jsonl2));
    CHECK(jsonl2.str().find("\"fail\"") != std::string::npos);
}
