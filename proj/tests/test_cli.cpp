#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "logconv/json_io.hpp"

namespace fs = std::filesystem;
using logconv::json;

namespace {

fs::path workdir() {
    auto dir = fs::temp_directory_path() / "logconv_cli_test";
    fs::create_directories(dir);
    return dir;
}

void write_file(const fs::path& p, const std::string& text) {
    std::ofstream out(p);
    out << text;
}

std::string read_file(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

int run_cli(const std::string& args, const fs::path& stdout_file) {
    std::string cmd = std::string(LOGCONV_CLI_PATH) + " " + args + " > " +
                      stdout_file.string() + " 2> " + stdout_file.string() + ".err";
    int rc = std::system(cmd.c_str());
    return WEXITSTATUS(rc);
}

const char* diamond_cross = R"({
  "factors": [
    {"S": [{"dim": 1, "rows": [{"a": ["1"], "b": "1/4"}, {"a": ["-1"], "b": "1/4"}]}],
     "U": {"dim": 1, "rows": [{"a": ["1"], "b": "1"}, {"a": ["-1"], "b": "1"}]}},
    {"S": [{"dim": 1, "rows": [{"a": ["1"], "b": "1/4"}, {"a": ["-1"], "b": "1/4"}]}],
     "U": {"dim": 1, "rows": [{"a": ["1"], "b": "1"}, {"a": ["-1"], "b": "1"}]}}
  ]
})";

const char* lshape_domain = R"({
  "n": 2,
  "cells": [
    {"dim": 2, "rows": [{"a": ["1","0"], "b": "0"}, {"a": ["-1","0"], "b": "2"},
                         {"a": ["0","1"], "b": "-1"}, {"a": ["0","-1"], "b": "2"}]},
    {"dim": 2, "rows": [{"a": ["1","0"], "b": "-1"}, {"a": ["-1","0"], "b": "2"},
                         {"a": ["0","1"], "b": "0"}, {"a": ["0","-1"], "b": "2"}]}
  ],
  "axis_meets": [false, false]
})";

const char* point_phi_spec = R"({
  "S": [{"points": [["0"]]}],
  "U": {"dim": 1, "rows": [{"a": ["1"], "b": "1"}, {"a": ["-1"], "b": "1"}]}
})";

}  // namespace

TEST_CASE("phi eval reports the exact value") {
    auto dir = workdir();
    write_file(dir / "phi.json", point_phi_spec);
    write_file(dir / "pts.json", R"({"points": [["1/2"]]})");
    auto out = dir / "phi_eval.json";
    int rc = run_cli("phi eval --spec " + (dir / "phi.json").string() + " --points " +
                         (dir / "pts.json").string() + " --out " + out.string(),
                     dir / "phi_eval_stdout");
    CHECK(rc == 0);
    json rep = json::parse(read_file(out));
    CHECK(rep["results"]["values"][0]["value"] == "1/2");
    CHECK(rep["violations"].empty());
    CHECK(rep["command"] == "phi eval");
}

TEST_CASE("cross verify: clean campaign, exit 0, deterministic bytes") {
    auto dir = workdir();
    write_file(dir / "diamond.json", diamond_cross);
    auto r1 = dir / "r1.json", r2 = dir / "r2.json";
    std::string base = "cross verify --spec " + (dir / "diamond.json").string() +
                       " --samples 200 --seed 7 --out ";
    CHECK(run_cli(base + r1.string(), dir / "cv1") == 0);
    CHECK(run_cli(base + r2.string(), dir / "cv2") == 0);
    std::string b1 = read_file(r1), b2 = read_file(r2);
    CHECK(!b1.empty());
    CHECK(b1 == b2);

    json rep = json::parse(b1);
    CHECK(rep["results"]["violations"].empty());
    CHECK(rep["results"]["samples"] == 200);
    CHECK(rep["results"]["classes"]["inside"].get<int>() > 0);

    // a different seed still verifies but samples differently
    auto r3 = dir / "r3.json";
    CHECK(run_cli("cross verify --spec " + (dir / "diamond.json").string() +
                      " --samples 200 --seed 8 --out " + r3.string(),
                  dir / "cv3") == 0);
    CHECK(read_file(r3) != b1);
}

TEST_CASE("phi verify runs the identity suite") {
    auto dir = workdir();
    write_file(dir / "phi2.json", R"({
      "S": [{"dim": 1, "rows": [{"a": ["1"], "b": "1/4"}, {"a": ["-1"], "b": "1/4"}]}],
      "U": {"dim": 1, "rows": [{"a": ["1"], "b": "1"}, {"a": ["-1"], "b": "1"}]}
    })");
    auto out = dir / "phi_verify.json";
    int rc = run_cli("phi verify --spec " + (dir / "phi2.json").string() +
                         " --samples 25 --seed 3 --mu 1/2 --out " + out.string(),
                     dir / "pv");
    CHECK(rc == 0);
    json rep = json::parse(read_file(out));
    for (const char* prop : {"range", "hull_invariance", "rescaling", "monotone_chain"})
        CHECK(rep["results"][prop]["pass"] == true);
}

TEST_CASE("reinhardt doh: counterexample exits 1 and carries a witness") {
    auto dir = workdir();
    write_file(dir / "lshape.json", lshape_domain);
    auto out = dir / "doh.json";
    int rc = run_cli("reinhardt doh --domain " + (dir / "lshape.json").string() + " --out " +
                         out.string(),
                     dir / "doh_stdout");
    CHECK(rc == 1);
    json rep = json::parse(read_file(out));
    CHECK(rep["results"]["status"] == "not_doh");
    CHECK(rep["results"].contains("witness"));
    CHECK(!rep["violations"].empty());
}

TEST_CASE("reinhardt envelope and hstar on the disc pair") {
    auto dir = workdir();
    write_file(dir / "lshape.json", lshape_domain);
    auto env_out = dir / "env.json";
    CHECK(run_cli("reinhardt envelope --domain " + (dir / "lshape.json").string() + " --out " +
                      env_out.string(),
                  dir / "env_stdout") == 0);
    json env = json::parse(read_file(env_out));
    CHECK(env["results"]["hrep"]["rows"].size() == 5);

    write_file(dir / "discA.json",
               R"({"n": 1, "polydisc": {"log_radii": ["-1"], "axis_meets": [true]}})");
    write_file(dir / "discD.json",
               R"({"n": 1, "polydisc": {"log_radii": ["0"], "axis_meets": [true]}})");
    write_file(dir / "hpts.json", R"({"points": [["-1/2"], ["-2"]]})");
    auto hout = dir / "hstar.json";
    int rc = run_cli("reinhardt hstar --A " + (dir / "discA.json").string() + " --D " +
                         (dir / "discD.json").string() + " --points " + (dir / "hpts.json").string() +
                         " --truncation 4 --out " + hout.string(),
                     dir / "hstar_stdout");
    CHECK(rc == 0);
    json rep = json::parse(read_file(hout));
    CHECK(rep["results"]["values"][0]["value"] == "1/2");
    CHECK(rep["results"]["values"][1]["value"] == "0");

    // moduli input demands the explicit inexactness acknowledgment
    write_file(dir / "mpts.json", R"({"points": [["0.5"]]})");
    CHECK(run_cli("reinhardt hstar --A " + (dir / "discA.json").string() + " --D " +
                      (dir / "discD.json").string() + " --points " + (dir / "mpts.json").string() +
                      " --truncation 4 --moduli",
                  dir / "hstar_noack") == 2);
    CHECK(run_cli("reinhardt hstar --A " + (dir / "discA.json").string() + " --D " +
                      (dir / "discD.json").string() + " --points " + (dir / "mpts.json").string() +
                      " --truncation 4 --moduli --allow-inexact",
                  dir / "hstar_ack") == 0);
}

TEST_CASE("reinhardt cross-verify on the worked example") {
    auto dir = workdir();
    write_file(dir / "rcross.json", R"({
      "blocks": [
        {"A": {"n": 1, "polydisc": {"log_radii": ["-1"], "axis_meets": [true]}},
         "D": {"n": 1, "polydisc": {"log_radii": ["0"], "axis_meets": [true]}}},
        {"A": {"n": 1, "polydisc": {"log_radii": ["-1"], "axis_meets": [true]}},
         "D": {"n": 1, "polydisc": {"log_radii": ["0"], "axis_meets": [true]}}}
      ]
    })");
    auto out = dir / "rcv.json";
    int rc = run_cli("reinhardt cross-verify --spec " + (dir / "rcross.json").string() +
                         " --samples 80 --seed 5 --truncation 4 --out " + out.string(),
                     dir / "rcv_stdout");
    CHECK(rc == 0);
    json rep = json::parse(read_file(out));
    CHECK(rep["results"]["violations"].empty());
    CHECK(rep["results"]["axis_checks"].size() == 2);
    for (const auto& c : rep["results"]["axis_checks"]) CHECK(c["in_cross"] == true);
}

TEST_CASE("polydisc shorthand denotes the same set at every truncation depth") {
    using namespace logconv;
    json dj = json::parse(R"({"n": 2, "polydisc": {"log_radii": ["0", "-1"]}})");
    auto shallow = parse_reinhardt_domain(dj, "d", Rat(4));
    auto deep = parse_reinhardt_domain(dj, "d", Rat(64));
    json aj = json::parse(R"({"n": 2, "polydisc": {"log_radii": ["-1", "-2"]}})");
    auto a_shallow = parse_reinhardt_domain(aj, "d", Rat(4));
    auto a_deep = parse_reinhardt_domain(aj, "d", Rat(64));
    for (long num = -9; num < 0; num += 2) {
        LogPoint p;
        p.coords = {Rat(num, 4), Rat(num, 3) - Rat(1)};
        CHECK(h_star(a_shallow, shallow, p) == h_star(a_deep, deep, p));
        CHECK(contains_point(shallow, p) == contains_point(deep, p));
    }
}

TEST_CASE("cell JSON round trip preserves the denoted set") {
    using namespace logconv;
    SplitMix64 rng(57);
    for (int trial = 0; trial < 12; ++trial) {
        Rat x0(rng.range(-5, -1)), y0(rng.range(-5, -1));
        Cell cell{HPolytope::make(2, {{{Rat(1), Rat(0)}, x0 + Rat(rng.range(1, 4))},
                                      {{Rat(-1), Rat(0)}, -x0},
                                      {{Rat(0), Rat(1)}, y0 + Rat(rng.range(1, 4))},
                                      {{Rat(0), Rat(-1)}, -y0}}),
                  {}};
        if (rng.below(2)) cell.ext.insert(static_cast<int>(rng.below(2)));
        Cell back = parse_cell(cell_json(cell), "rt");
        CHECK(back.ext == cell.ext);
        for (int s = 0; s < 20; ++s) {
            RatVec x = {Rat(rng.range(-14, 2), 2), Rat(rng.range(-14, 2), 2)};
            CHECK(contains(cell, x) == contains(back, x));
        }
    }
}

TEST_CASE("input errors exit 2 with a located message") {
    auto dir = workdir();
    write_file(dir / "bad.json", R"({"S": [{"points": [["1/x"]]}],
      "U": {"dim": 1, "rows": [{"a": ["1"], "b": "1"}, {"a": ["-1"], "b": "1"}]}})");
    write_file(dir / "pts.json", R"({"points": [["1/2"]]})");
    int rc = run_cli("phi eval --spec " + (dir / "bad.json").string() + " --points " +
                         (dir / "pts.json").string(),
                     dir / "bad_out");
    CHECK(rc == 2);
    std::string err = read_file(dir / "bad_out.err");
    CHECK(err.find("points[0][0]") != std::string::npos);

    CHECK(run_cli("phi eval --spec /nonexistent.json --points " + (dir / "pts.json").string(),
                  dir / "noent") == 2);
}
