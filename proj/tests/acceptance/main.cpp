// Acceptance suite: runs every classification criterion end to end at desk
// scale and prints one PASS/FAIL line per criterion with its runtime. Exits
// nonzero when any criterion fails or runs over its budget.

#include "cohclass/cli.hpp"
#include "cohclass/config.hpp"
#include "cohclass/textio.hpp"
#include "cohclass/verify.hpp"

#include <chrono>
#include <cstdio>
#include <fstream>
#include <functional>
#include <sstream>

using namespace cohclass;

namespace {

int g_failures = 0;

struct Check {
    bool ok = true;
    std::string detail;

    void require(bool cond, const std::string& what) {
        if (!cond && ok) {
            ok = false;
            detail = what;
        }
    }
};

void run_criterion(int id, const std::string& title, double budget_seconds,
                   const std::function<void(Check&)>& body) {
    Check check;
    const auto start = std::chrono::steady_clock::now();
    try {
        body(check);
    } catch (const std::exception& e) {
        check.require(false, std::string("exception: ") + e.what());
    }
    const double elapsed =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    check.require(elapsed <= budget_seconds, "over the time budget");
    std::printf("[%s] criterion %d: %s (%.2f s, budget %.0f s)\n",
                check.ok ? "PASS" : "FAIL", id, title.c_str(), elapsed, budget_seconds);
    if (!check.ok) {
        std::printf("       %s\n", check.detail.c_str());
        ++g_failures;
    }
    std::fflush(stdout);
}

std::string write_config(const std::string& name, const std::string& content) {
    const std::string path = "acceptance_" + name + ".json";
    std::ofstream out(path);
    out << content;
    return path;
}

const char* kRing52 = R"json(
    "ring": {"type": "monomial", "field": "F2", "vars": ["x","y"],
             "relations": ["x^2", "x*y"]},
    "window": {"cyclics": ["R", "R/(x)", "R/(x,y)", "R/(x^2,y)"], "max_summands": 2}
)json";

const char* kRingCross = R"json(
    "ring": {"type": "monomial", "field": "F2", "vars": ["x","y"],
             "relations": ["x*y"]},
    "window": {"cyclics": ["R", "R/(x)", "R/(y)", "R/(x,y)", "R/(x,y^2)"], "max_summands": 2}
)json";

Universe z6_universe(int max_len) {
    return Universe::affine(Ring::z_mod(Int(6)), FiniteWindow{max_len});
}

Universe z_universe(int max_exp) {
    return Universe::affine(
        Ring::integers(),
        PidWindow{{PidPrime::of(Int(2)), PidPrime::of(Int(3))}, max_exp, 1});
}

std::vector<int> full_pool(const Universe& u) {
    std::vector<int> pool;
    for (size_t i = 0; i < u.size(); ++i) pool.push_back(int(i));
    return pool;
}

std::vector<int> z_pool(Universe& u) {
    std::vector<int> pool;
    for (const char* label : {"Z", "Z/2", "Z/3", "Z/4", "Z/9", "Z/6"})
        pool.push_back(u.index_of_module(parse_module(u.ring(), label)));
    return pool;
}

SheafWindow p1_window(int lo, int hi) {
    SheafWindow w;
    w.twist_lo = lo;
    w.twist_hi = hi;
    w.max_rank = 1;
    w.max_torsion_length = 2;
    w.max_point_degree = 2;
    return w;
}

std::vector<std::string> p1_class_labels(Check& check, const SheafWindow& w) {
    const FieldTag f2 = prime_field(2);
    const std::vector<SheafP1> pool = {
        parse_sheaf("O(0)", f2), parse_sheaf("O(2)", f2), parse_sheaf("T(t,1)", f2),
        parse_sheaf("T(t+1,2)", f2)};
    std::vector<std::string> labels;
    for (std::uint64_t subset = 1; subset < 16; ++subset) {
        std::vector<SheafP1> gens;
        for (size_t k = 0; k < pool.size(); ++k)
            if (subset & (std::uint64_t(1) << k)) gens.push_back(pool[k]);
        auto res = classify_window(gens, w);
        check.require(res.classified, "classification returned NotClassified");
        labels.push_back(res.family.label());
        if (res.family.kind != TorfFamilyP1::Kind::TypeIII) {
            // families of the first two kinds are stable under twisting
            for (const SheafP1& f : res.closure)
                for (int m : {-1, 1})
                    check.require(family_membership(f, res.family) ==
                                      family_membership(twist(f, m), res.family),
                                  "twist invariance failed for " + res.family.label());
        }
    }
    return labels;
}

}  // namespace

int main() {
    run_criterion(1, "worked example: Ass/Assh and the three Serre subcategories", 10, [](Check& c) {
        const std::string cfg = write_config("c1", std::string("{") + kRing52 +
                                                       R"json(, "objects": ["R"])json" + "}");
        auto ass = run_cli({"ass", "--config", cfg});
        c.require(ass.exit_code == 0, "ass command failed");
        c.require(ass.out.find("{(x),(x,y)}") != std::string::npos, "Ass R mismatch");
        c.require(ass.out.find("{(x)}") != std::string::npos, "Assh R mismatch");

        const std::string cfg_ass = write_config(
            "c1a", std::string("{") + kRing52 + R"json(, "phi": ["ass(R)"])json" + "}");
        auto v1 = run_cli({"verify", "serre-in-torf", "--config", cfg_ass});
        c.require(v1.exit_code == 0, "serre-in-torf on Ass R failed");
        c.require(v1.out.find("3 classes") != std::string::npos,
                  "expected exactly 3 Serre subcategories");

        const std::string cfg_assh = write_config(
            "c1b", std::string("{") + kRing52 + R"json(, "phi": ["assh(R)"])json" + "}");
        auto v2 = run_cli({"verify", "serre-in-torf", "--config", cfg_assh});
        c.require(v2.exit_code == 0, "serre-in-torf on Assh R failed");
        c.require(v2.out.find("2 classes") != std::string::npos,
                  "expected only the trivial Serre subcategories");
    });

    run_criterion(2, "one-dimensional Cohen-Macaulay: Boolean lattice on the minimal primes",
                  10, [](Check& c) {
        const std::string cfg = write_config(
            "c2", std::string("{") + kRingCross + R"json(, "phi": ["min(R)"])json" + "}");
        auto res = run_cli({"lattice", "--config", cfg});
        c.require(res.exit_code == 0, "lattice command failed");
        c.require(res.out.find("4 classes") != std::string::npos, "expected 4 nodes");
        // diamond shape: 4 nodes, 4 cover edges
        int nodes = 0, edges = 0;
        std::istringstream in(res.out);
        std::string line;
        while (std::getline(in, line)) {
            if (line.find("[label=") != std::string::npos) ++nodes;
            if (line.find(" -> ") != std::string::npos) ++edges;
        }
        c.require(nodes == 4, "lattice does not have 4 nodes");
        c.require(edges == 4, "lattice is not a diamond");
    });

    run_criterion(3, "torsionfree classes match the Ass subsets on Z/6 and Z", 60, [](Check& c) {
        Universe u6 = z6_universe(3);
        auto rep6 = verify_takahashi(u6, full_pool(u6), 2);
        c.require(rep6.pass, rep6.counterexamples.empty() ? "failed"
                                                          : rep6.counterexamples.front());
        c.require(rep6.classes.size() == 4, "expected 4 classes over Z/6");

        Universe uz = z_universe(2);
        auto repz = verify_takahashi(uz, z_pool(uz), 2);
        c.require(repz.pass, repz.counterexamples.empty() ? "failed"
                                                          : repz.counterexamples.front());
        c.require(repz.classes.size() == 8, "expected 8 classes over Z");
    });

    run_criterion(4, "torsion classes are Serre: quot+ext closures and their stability", 60,
                  [](Check& c) {
        Universe u6 = z6_universe(3);
        auto rep6 = verify_gabriel_serre(u6, full_pool(u6), 2);
        c.require(rep6.pass, rep6.counterexamples.empty() ? "failed"
                                                          : rep6.counterexamples.front());
        Universe uz = z_universe(2);
        auto repz = verify_gabriel_serre(uz, z_pool(uz), 2);
        c.require(repz.pass, repz.counterexamples.empty() ? "failed"
                                                          : repz.counterexamples.front());
    });

    run_criterion(5, "image+ext closures are torsionfree classes over Z/4 and Z/6", 60,
                  [](Check& c) {
        Universe u4 = Universe::affine(Ring::z_mod(Int(4)), FiniteWindow{3});
        auto rep4 = verify_ie_torf(u4, full_pool(u4), 2);
        c.require(rep4.pass, rep4.counterexamples.empty() ? "failed"
                                                          : rep4.counterexamples.front());
        Universe u6 = z6_universe(3);
        auto rep6 = verify_ie_torf(u6, full_pool(u6), 2);
        c.require(rep6.pass, rep6.counterexamples.empty() ? "failed"
                                                          : rep6.counterexamples.front());
    });

    run_criterion(6, "projective line: every generator subset lands in the classified list",
                  300, [](Check& c) {
        const SheafWindow w = p1_window(-4, 4);
        (void)p1_class_labels(c, w);
        // the structure sheaf generates the twist-bounded family and is not
        // closed under twisting up
        const FieldTag f2 = prime_field(2);
        auto res = classify_window({parse_sheaf("O(0)", f2)}, w);
        c.require(res.classified, "closure of O is not the predicted family");
        c.require(res.family == TorfFamilyP1::type3(0), "expected the twist-bounded family at 0");
        c.require(!family_membership(twist(parse_sheaf("O(0)", f2), 1), res.family),
                  "O(1) must lie outside the family");
        bool contains_o1 = false;
        for (const SheafP1& f : res.closure)
            if (f == parse_sheaf("O(1)", f2)) contains_o1 = true;
        c.require(!contains_o1, "O(1) must lie outside the fixpoint");
    });

    run_criterion(7, "split decomposition and Euler characteristic additivity", 60, [](Check& c) {
        const FieldTag f2 = prime_field(2);
        const SheafWindow w = p1_window(-4, 4);
        const auto universe = enumerate_sheaf_window(f2, w);
        c.require(universe.size() > 150 && universe.size() < 260,
                  "unexpected window size: " + std::to_string(universe.size()));
        for (const SheafP1& f : universe) {
            auto [tor, vect] = decompose(f);
            c.require(ext1_dim(vect, tor) == 0, "split criterion failed for " + f.label());
        }
        int checked = 0;
        for (const SheafP1& a : universe)
            for (const SheafP1& b : universe) {
                if (degree(a) + degree(b) > 6 || degree(a) + degree(b) < -10) continue;
                for (const SheafP1& e : sheaf_extensions_window(a, b, w)) {
                    c.require(chi(e) == chi(a) + chi(b),
                              "chi additivity failed at " + e.label());
                    ++checked;
                }
            }
        c.require(checked > 1000, "too few extensions enumerated");
    });

    run_criterion(8, "maximal pure, torsionfree and maximal CM agree on the coordinate cross",
                  10, [](Check& c) {
        Ring r = Ring::monomial_quotient(prime_field(2), {"x", "y"},
                                         {parse_mono("x*y", {"x", "y"})});
        std::vector<MonomialIdeal> cyclics;
        for (const char* s : {"R", "R/(x)", "R/(y)", "R/(x,y)", "R/(x,y^2)", "R/(x^2,y)"})
            cyclics.push_back(parse_module(r, s).mono.summands.at(0));
        Universe u = Universe::affine(r, MonoWindow{cyclics, 2});
        for (size_t i = 0; i < u.size(); ++i) {
            const ModuleNF& m = u.module(int(i));
            const bool tf = is_torsionfree(r, m);
            const bool mp = is_maximal_pure(r, m);
            const bool mcm =
                is_cm_dim_le1(r, m) && (m.is_zero() || module_dim(r, m) == r.dim());
            c.require(tf == mp, "torsionfree vs maximal pure disagree on " + u.label(int(i)));
            c.require(tf == mcm, "torsionfree vs maximal CM disagree on " + u.label(int(i)));
        }
    });

    run_criterion(9, "window growth keeps every class label", 600, [](Check& c) {
        auto labels_of = [](VerifyReport rep) {
            std::vector<std::string> out;
            for (const auto& cl : rep.classes) out.push_back(cl.label);
            return out;
        };
        {
            Universe small = z6_universe(3), big = z6_universe(4);
            c.require(labels_of(verify_takahashi(small, full_pool(small), 2)) ==
                          labels_of(verify_takahashi(big, full_pool(small), 2)),
                      "takahashi labels changed under growth (Z/6)");
            c.require(labels_of(verify_gabriel_serre(small, full_pool(small), 2)) ==
                          labels_of(verify_gabriel_serre(big, full_pool(small), 2)),
                      "gabriel-serre labels changed under growth (Z/6)");
            c.require(labels_of(verify_ie_torf(small, full_pool(small), 2)) ==
                          labels_of(verify_ie_torf(big, full_pool(small), 2)),
                      "ie-torf labels changed under growth (Z/6)");
        }
        {
            Universe small4 = Universe::affine(Ring::z_mod(Int(4)), FiniteWindow{3});
            Universe big4 = Universe::affine(Ring::z_mod(Int(4)), FiniteWindow{4});
            c.require(labels_of(verify_ie_torf(small4, full_pool(small4), 2)) ==
                          labels_of(verify_ie_torf(big4, full_pool(small4), 2)),
                      "ie-torf labels changed under growth (Z/4)");
        }
        {
            Universe small = z_universe(2), big = z_universe(3);
            c.require(labels_of(verify_takahashi(small, z_pool(small), 2)) ==
                          labels_of(verify_takahashi(big, z_pool(big), 2)),
                      "takahashi labels changed under growth (Z)");
            c.require(labels_of(verify_gabriel_serre(small, z_pool(small), 2)) ==
                          labels_of(verify_gabriel_serre(big, z_pool(big), 2)),
                      "gabriel-serre labels changed under growth (Z)");
        }
        {
            Check inner_small, inner_big;
            auto small_labels = p1_class_labels(inner_small, p1_window(-4, 4));
            auto big_labels = p1_class_labels(inner_big, p1_window(-5, 5));
            c.require(inner_small.ok && inner_big.ok, "classification failed during growth");
            c.require(small_labels == big_labels, "family labels changed under window growth");
        }
    });

    run_criterion(10, "byte-identical outputs across reruns and thread counts", 120, [](Check& c) {
        const std::string verify_cfg = write_config(
            "c10a", R"json({"ring": {"type": "Z/n", "n": 6},
                            "window": {"max_total_length": 3},
                            "pool": ["Z/2", "Z/3", "Z/2 + Z/3", "Z/2 + Z/2"]})json");
        const std::string lattice_cfg = write_config(
            "c10b", std::string("{") + kRingCross + R"json(, "phi": ["min(R)"])json" + "}");
        const std::string ass_cfg = write_config(
            "c10c", std::string("{") + kRing52 +
                        R"json(, "objects": ["R", "R/(x)", "0"])json" + "}");
        const std::string classify_cfg = write_config(
            "c10d", R"json({"scheme": {"type": "P1", "field": "F2"},
                            "window": {"twist_min": -4, "twist_max": 4, "max_rank": 1,
                                       "max_torsion_length": 2, "max_point_degree": 2},
                            "pool": ["O(0)", "T(t,1)"]})json");
        const std::vector<std::vector<std::string>> commands = {
            {"ass", "--config", ass_cfg},
            {"classify", "--config", classify_cfg},
            {"verify", "takahashi", "--config", verify_cfg},
            {"verify", "gabriel-serre", "--config", verify_cfg},
            {"verify", "ie-torf", "--config", verify_cfg},
            {"verify", "serre-in-torf", "--config", lattice_cfg},
            {"lattice", "--config", lattice_cfg},
            {"p1", "hom", "O(-1)", "O(1)", "--field", "F2"},
            {"p1", "ext", "O(1)", "O(-1)", "--field", "F2"},
            {"p1", "decompose", "O(2)+T(t,1)", "--field", "F2"},
        };
        for (const auto& cmd : commands) {
            auto one = cmd;
            one.push_back("--threads");
            one.push_back("1");
            auto eight = cmd;
            eight.push_back("--threads");
            eight.push_back("8");
            const auto r1 = run_cli(one);
            const auto r1b = run_cli(one);
            const auto r8 = run_cli(eight);
            c.require(r1.out == r1b.out, "rerun output differs for " + cmd[0]);
            c.require(r1.out == r8.out, "thread count changes output for " + cmd[0]);
            c.require(r1.exit_code == r8.exit_code, "exit codes differ for " + cmd[0]);
        }
    });

    if (g_failures == 0) {
        std::printf("acceptance: all criteria passed\n");
        return 0;
    }
    std::printf("acceptance: %d criterion(s) failed\n", g_failures);
    return 1;
}
