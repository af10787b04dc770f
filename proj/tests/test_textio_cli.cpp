#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "cohclass/cli.hpp"
#include "cohclass/config.hpp"
#include "cohclass/textio.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

using namespace cohclass;

namespace {

std::string write_temp(const std::string& name, const std::string& content) {
    const std::string path = "cli_test_" + name;
    std::ofstream out(path);
    out << content;
    return path;
}

}  // namespace

TEST_CASE("polynomial parsing") {
    const FieldTag f2 = prime_field(2);
    CHECK(parse_poly("t^2+t+1", f2).degree() == 2);
    CHECK(parse_poly("t^2+t+1", f2).str() == "t^2+t+1");
    CHECK(parse_poly("(t+1)^2", f2) == parse_poly("t^2+1", f2));
    CHECK(parse_poly("2*t + 1", rational_field()).coeff(1) == Scalar::rational(Rat(2)));
    CHECK(parse_poly("t^2 - 1/2", rational_field()).coeff(0) ==
          Scalar::rational(Rat(-1, 2)));
    CHECK(parse_poly("0", f2).is_zero());
    CHECK_THROWS_AS((void)parse_poly("t + s", f2), Error);
    CHECK_THROWS_AS((void)parse_poly("t^", f2), Error);
}

TEST_CASE("point and sheaf parsing") {
    const FieldTag f2 = prime_field(2);
    CHECK(parse_point("inf", f2).at_infinity);
    CHECK(parse_point("t^2+t+1", f2).degree() == 2);
    CHECK_THROWS_AS((void)parse_point("t^2+1", f2), Error);  // (t+1)^2 over F_2
    const SheafP1 f = parse_sheaf("O(2) + T(t^2+t+1, 3)", f2);
    CHECK(f.rank() == 1);
    CHECK(f.twists[0] == 2);
    CHECK(f.torsion_length() == 3);
    CHECK(f.label() == "O(2) + T(t^2+t+1,3)");
    CHECK(parse_sheaf("0", f2).is_zero());
    CHECK(parse_sheaf("T(t,1) + T(t,2) + O(-1)", f2).label() == "O(-1) + T(t,2) + T(t,1)");
    CHECK_THROWS_AS((void)parse_sheaf("O(1) + X(2)", f2), Error);
}

TEST_CASE("module literal parsing") {
    const Ring z = Ring::integers();
    CHECK(module_label(z, parse_module(z, "Z/12 + Z")) == "Z + Z/4 + Z/3");
    CHECK(parse_module(z, "0").is_zero());
    CHECK(module_label(z, parse_module(z, "Z^2")) == "Z^2");
    const Ring kt = Ring::polynomials(prime_field(2));
    CHECK(module_label(kt, parse_module(kt, "R/(t^2+t)")) == "R/(t) + R/(t+1)");
    CHECK(module_label(kt, parse_module(kt, "R/((t)^2)")) == "R/((t)^2)");
    const Ring mono =
        Ring::monomial_quotient(prime_field(2), {"x", "y"}, {parse_mono("x^2", {"x", "y"}),
                                                             parse_mono("x*y", {"x", "y"})});
    CHECK(module_label(mono, parse_module(mono, "R")) == "R");
    CHECK(module_label(mono, parse_module(mono, "R/(x)")) == "R/(x)");
    const Ring z6 = Ring::z_mod(Int(6));
    CHECK(module_label(z6, parse_module(z6, "Z/2 + Z/3")) == "Z/2 + Z/3");
    CHECK(module_label(z6, parse_module(z6, "R")) == "Z/2 + Z/3");
    CHECK_THROWS_AS((void)parse_module(z6, "Z/5"), Error);
}

TEST_CASE("prime literal parsing") {
    const Ring z = Ring::integers();
    CHECK(parse_prime(z, "(0)") == PrimeIdeal::zero());
    CHECK(parse_prime(z, "(7)") == PrimeIdeal::of_int(7));
    CHECK_THROWS_AS((void)parse_prime(z, "(6)"), Error);
    const Ring mono =
        Ring::monomial_quotient(prime_field(2), {"x", "y"}, {parse_mono("x*y", {"x", "y"})});
    CHECK(mono.prime_label(parse_prime(mono, "(x,y)")) == "(x,y)");
    const Ring z6 = Ring::z_mod(Int(6));
    CHECK(parse_prime(z6, "(2)") == PrimeIdeal::of_factor(0));
    CHECK(parse_prime(z6, "(3)") == PrimeIdeal::of_factor(1));
}

TEST_CASE("config parsing rejects unknown keys") {
    CHECK_THROWS_AS((void)parse_config_text("{\"ring\": {\"type\": \"Z\"}, \"wnidow\": {}}"),
                    Error);
    CHECK_THROWS_AS((void)parse_config_text("not json"), Error);
    CHECK_THROWS_AS((void)parse_config_text("{}"), Error);
    auto cfg = parse_config_text(
        R"json({"ring": {"type": "Z"},
            "window": {"primes": ["2"], "max_exponent": 1, "max_rank": 1},
            "pool": ["Z"], "threads": 2})json");
    CHECK(cfg.threads == 2);
    CHECK(!cfg.is_p1);
}

TEST_CASE("cli: ass table on the running example") {
    const std::string cfg = write_temp("ass.json", R"json({
        "ring": {"type": "monomial", "field": "F2", "vars": ["x","y"],
                 "relations": ["x^2", "x*y"]},
        "window": {"cyclics": ["R", "R/(x)", "R/(x,y)"], "max_summands": 2},
        "objects": ["R", "0", "R/(x)"]
    })json");
    auto res = run_cli({"ass", "--config", cfg});
    CHECK(res.exit_code == 0);
    CHECK(res.out.find("{(x),(x,y)}") != std::string::npos);  // Ass R
    CHECK(res.out.find("error:dimension>1") == std::string::npos);
    std::remove(cfg.c_str());
}

TEST_CASE("cli: ass over Z with CRT") {
    const std::string cfg = write_temp("assz.json", R"json({
        "ring": {"type": "Z"},
        "window": {"primes": ["2","3"], "max_exponent": 1, "max_rank": 1},
        "objects": ["Z/6"]
    })json");
    auto res = run_cli({"ass", "--config", cfg});
    CHECK(res.exit_code == 0);
    CHECK(res.out.find("{(2),(3)}") != std::string::npos);
    std::remove(cfg.c_str());
}

TEST_CASE("cli: classify") {
    const std::string p1cfg = write_temp("cls1.json", R"json({
        "scheme": {"type": "P1", "field": "F2"},
        "window": {"twist_min": -4, "twist_max": 4, "max_rank": 1,
                   "max_torsion_length": 2, "max_point_degree": 2},
        "pool": ["O(0)"]
    })json");
    auto res = run_cli({"classify", "--config", p1cfg});
    CHECK(res.exit_code == 0);
    CHECK(res.out == "TypeIII(0)\n");
    std::remove(p1cfg.c_str());

    const std::string p2cfg = write_temp("cls2.json", R"json({
        "scheme": {"type": "P1", "field": "F2"},
        "window": {"twist_min": -4, "twist_max": 4, "max_rank": 1,
                   "max_torsion_length": 2, "max_point_degree": 2},
        "pool": ["T(t,1)"]
    })json");
    res = run_cli({"classify", "--config", p2cfg});
    CHECK(res.exit_code == 0);
    CHECK(res.out == "TypeI({t})\n");
    std::remove(p2cfg.c_str());

    const std::string zcfg = write_temp("cls3.json", R"json({
        "ring": {"type": "Z"},
        "window": {"primes": ["2","3"], "max_exponent": 2, "max_rank": 1},
        "pool": ["Z/9"]
    })json");
    res = run_cli({"classify", "--config", zcfg});
    CHECK(res.exit_code == 0);
    CHECK(res.out == "AssClass({(3)})\n");
    std::remove(zcfg.c_str());
}

TEST_CASE("cli: verify takahashi on Z/6 and exit codes") {
    const std::string cfg = write_temp("vt.json", R"json({
        "ring": {"type": "Z/n", "n": 6},
        "window": {"max_total_length": 3},
        "pool": ["Z/2", "Z/3", "Z/2 + Z/3", "Z/2 + Z/2", "0", "Z/3 + Z/3"]
    })json");
    auto res = run_cli({"verify", "takahashi", "--config", cfg});
    CHECK(res.exit_code == 0);
    CHECK(res.out.find("\"pass\": true") != std::string::npos);
    CHECK(res.out.find("PASS") != std::string::npos);
    std::remove(cfg.c_str());
    // config error path
    auto bad = run_cli({"verify", "takahashi", "--config", "no_such_file.json"});
    CHECK(bad.exit_code == 1);
    auto usage = run_cli({});
    CHECK(usage.exit_code == 1);
}

TEST_CASE("cli: lattice DOT for the coordinate cross") {
    const std::string cfg = write_temp("lat.json", R"json({
        "ring": {"type": "monomial", "field": "F2", "vars": ["x","y"],
                 "relations": ["x*y"]},
        "window": {"cyclics": ["R", "R/(x)", "R/(y)", "R/(x,y)"], "max_summands": 2},
        "phi": ["min(R)"]
    })json");
    auto res = run_cli({"lattice", "--config", cfg});
    CHECK(res.exit_code == 0);
    CHECK(res.out.find("digraph lattice {") != std::string::npos);
    CHECK(res.out.find("{(x),(y)}") != std::string::npos);
    // byte-identical across repeated runs and thread counts
    auto res8 = run_cli({"lattice", "--config", cfg, "--threads", "8"});
    CHECK(res8.out == res.out);
    std::remove(cfg.c_str());
}

TEST_CASE("cli: p1 subcommands") {
    auto hom = run_cli({"p1", "hom", "O(-1)", "O(1)", "--field", "F2"});
    CHECK(hom.exit_code == 0);
    CHECK(hom.out == "3\n");
    auto ext = run_cli({"p1", "ext", "O(1)", "O(-1)", "--field", "F2"});
    CHECK(ext.out == "1\n");
    auto dec = run_cli({"p1", "decompose", "O(2)+T(t,3)", "--field", "F2"});
    CHECK(dec.exit_code == 0);
    CHECK(dec.out.find("torsion: T(t,3)") != std::string::npos);
    CHECK(dec.out.find("vector:  O(2)") != std::string::npos);
    auto bad = run_cli({"p1", "hom", "O(1)", "--field", "F2"});
    CHECK(bad.exit_code == 1);
}

TEST_CASE("cli: verify serre-in-torf with output file") {
    const std::string cfg = write_temp("st.json", R"json({
        "ring": {"type": "monomial", "field": "F2", "vars": ["x","y"],
                 "relations": ["x^2", "x*y"]},
        "window": {"cyclics": ["R", "R/(x)", "R/(x,y)", "R/(x^2,y)"], "max_summands": 2},
        "phi": ["ass(R)"],
        "output": "st_report.json"
    })json");
    auto res = run_cli({"verify", "serre-in-torf", "--config", cfg});
    CHECK(res.exit_code == 0);
    std::ifstream in("st_report.json");
    REQUIRE(in.good());
    std::string report((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    CHECK(report.find("\"pass\": true") != std::string::npos);
    std::remove(cfg.c_str());
    std::remove("st_report.json");
}

TEST_CASE("cli: ass table over the projective line") {
    const std::string cfg = write_temp("assp1.json", R"json({
        "scheme": {"type": "P1", "field": "F2"},
        "window": {"twist_min": -2, "twist_max": 2, "max_rank": 1,
                   "max_torsion_length": 2, "max_point_degree": 1},
        "objects": ["O(1) + T(t,1)", "O(0)", "T(inf,2)", "0"]
    })json");
    auto res = run_cli({"ass", "--config", cfg});
    CHECK(res.exit_code == 0);
    CHECK(res.out.find("{eta,(t)}") != std::string::npos);
    CHECK(res.out.find("{(inf)}") != std::string::npos);
    // the mixed object has an embedded point: not CM
    std::istringstream lines(res.out);
    std::string line;
    bool mixed_checked = false;
    while (std::getline(lines, line))
        if (line.find("O(1) + T(t,1)") != std::string::npos) {
            CHECK(line.find("no") != std::string::npos);
            mixed_checked = true;
        }
    CHECK(mixed_checked);
    std::remove(cfg.c_str());
}

TEST_CASE("cli: verify report JSON matches a golden structure") {
    const std::string cfg = write_temp("golden.json", R"json({
        "ring": {"type": "Z/n", "n": 4},
        "window": {"max_total_length": 2},
        "pool": ["Z/2", "Z/4"]
    })json");
    auto res = run_cli({"verify", "takahashi", "--config", cfg});
    REQUIRE(res.exit_code == 0);
    const std::string expected_prefix = R"json({
  "theorem": "takahashi",
  "backend": "Z/4",
  "window": "total length <= 2",
  "pool": [
    "Z/2",
    "Z/4"
  ],)json";
    CHECK(res.out.rfind(expected_prefix, 0) == 0);
    std::remove(cfg.c_str());
}
