#include "cohclass/cli.hpp"

#include "cohclass/config.hpp"
#include "cohclass/textio.hpp"
#include "cohclass/verify.hpp"

#include <fstream>
#include <functional>
#include <sstream>

namespace cohclass {

namespace {

std::string cli_bool(bool b) { return b ? "yes" : "no"; }

std::string prime_list_label(const Ring& ring, const std::vector<PrimeIdeal>& ps) {
    std::string s = "{";
    for (size_t i = 0; i < ps.size(); ++i) {
        if (i) s += ",";
        s += ring.prime_label(ps[i]);
    }
    return s + "}";
}

std::string point_list_label(const std::vector<PrimePointP1>& ps) {
    std::string s = "{";
    for (size_t i = 0; i < ps.size(); ++i) {
        if (i) s += ",";
        s += ps[i].label();
    }
    return s + "}";
}

void write_output(const RunConfig& cfg, const std::string& text, std::string& stdout_text) {
    if (cfg.output.empty()) {
        stdout_text += text;
        return;
    }
    std::ofstream out(cfg.output, std::ios::binary);
    if (!out) fail(Error::Kind::Config, "cannot write output file " + cfg.output);
    out << text;
}

// --- ass ---------------------------------------------------------------------

std::string cmd_ass_affine(const RunConfig& cfg) {
    const Ring& ring = *cfg.ring;
    auto poset = SpectralPoset::over(ring, window_primes(ring, cfg.affine_window));
    std::vector<std::vector<std::string>> rows;
    rows.push_back({"object", "Ass", "Min", "Assh", "Supp", "torsionfree", "pure",
                    "maximal-pure", "CM(dim<=1)"});
    for (const std::string& literal : cfg.objects) {
        ModuleNF m = parse_module(ring, literal);
        validate_module(ring, m);
        std::string cm;
        try {
            cm = cli_bool(is_cm_dim_le1(ring, m));
        } catch (const Error& e) {
            if (e.kind() != Error::Kind::DimensionTooLarge) throw;
            cm = "error:dimension>1";
        }
        rows.push_back({literal, prime_list_label(ring, module_ass(ring, m)),
                        prime_list_label(ring, module_min_ass(ring, m)),
                        prime_list_label(ring, module_assh(ring, m)),
                        prime_list_label(ring, module_supp(ring, m, poset)),
                        cli_bool(is_torsionfree(ring, m)), cli_bool(is_pure(ring, m)),
                        cli_bool(is_maximal_pure(ring, m)), cm});
    }
    return render_table(rows);
}

std::string cmd_ass_p1(const RunConfig& cfg) {
    std::vector<std::vector<std::string>> rows;
    rows.push_back({"object", "Ass", "Min", "Assh", "Supp", "torsionfree", "pure",
                    "maximal-pure", "CM(dim<=1)"});
    for (const std::string& literal : cfg.objects) {
        SheafP1 f = parse_sheaf(literal, cfg.field);
        const auto ass = sheaf_ass(f);
        // Min: maximal elements of the support in the specialization order
        std::vector<PrimePointP1> min, assh, supp = ass;
        if (!f.twists.empty()) {
            min = {PrimePointP1::eta(cfg.field)};
            assh = min;
            // the support of a sheaf with a bundle summand is the whole line
            supp = ass;
        } else {
            min = ass;
            assh = ass;
        }
        const bool torsionfree = f.torsion.empty();
        const bool pure = f.is_zero() || (assh == ass);
        const bool maximal_pure = torsionfree;
        const bool cm = f.is_zero() || min == ass;
        rows.push_back({literal, point_list_label(ass), point_list_label(min),
                        point_list_label(assh),
                        f.twists.empty() ? point_list_label(supp) : "P1",
                        cli_bool(torsionfree), cli_bool(pure), cli_bool(maximal_pure),
                        cli_bool(cm)});
    }
    return render_table(rows);
}

// --- universes and pools -------------------------------------------------------

Universe make_universe(const RunConfig& cfg) {
    return cfg.is_p1 ? Universe::projective_line(cfg.field, cfg.sheaf_window)
                     : Universe::affine(*cfg.ring, cfg.affine_window);
}

std::vector<int> parse_pool(const RunConfig& cfg, Universe& u) {
    std::vector<int> pool;
    for (const std::string& literal : cfg.pool) {
        int idx = -1;
        if (cfg.is_p1) {
            idx = u.index_of_sheaf(parse_sheaf(literal, cfg.field));
        } else {
            idx = u.index_of_module(parse_module(*cfg.ring, literal));
        }
        if (idx < 0)
            fail(Error::Kind::WindowTooSmall,
                 "pool object \"" + literal + "\" lies outside the window universe");
        pool.push_back(idx);
    }
    return pool;
}

std::uint64_t parse_phi(const RunConfig& cfg, Universe& u) {
    if (cfg.phi.empty()) fail(Error::Kind::Config, "missing \"phi\"");
    std::uint64_t mask = 0;
    auto add_prime = [&](const std::string& label) {
        const int idx = u.prime_index_by_label(label);
        if (idx < 0) fail(Error::Kind::Config, "prime " + label + " is not tracked");
        mask |= std::uint64_t(1) << idx;
    };
    for (const std::string& s : cfg.phi) {
        if (!cfg.is_p1 && (s == "ass(R)" || s == "assh(R)" || s == "min(R)")) {
            const ModuleNF r = ModuleNF::ring_module(*cfg.ring);
            std::vector<PrimeIdeal> ps;
            if (s == "ass(R)") ps = module_ass(*cfg.ring, r);
            if (s == "assh(R)") ps = module_assh(*cfg.ring, r);
            if (s == "min(R)") ps = module_min_ass(*cfg.ring, r);
            for (const auto& p : ps) add_prime(cfg.ring->prime_label(p));
            continue;
        }
        if (cfg.is_p1) {
            if (s == "eta") {
                add_prime("eta");
                continue;
            }
            const std::string inner =
                s.size() >= 2 && s.front() == '(' && s.back() == ')' ? s.substr(1, s.size() - 2)
                                                                     : s;
            add_prime(PrimePointP1::closed(parse_point(inner, cfg.field)).label());
            continue;
        }
        add_prime(cfg.ring->prime_label(parse_prime(*cfg.ring, s)));
    }
    return mask;
}

// --- classify ------------------------------------------------------------------

std::string cmd_classify(const RunConfig& cfg, int& exit_code) {
    std::ostringstream os;
    if (cfg.is_p1) {
        std::vector<SheafP1> gens;
        for (const std::string& s : cfg.pool) gens.push_back(parse_sheaf(s, cfg.field));
        auto res = classify_window(gens, cfg.sheaf_window);
        if (!res.classified) {
            os << "NotClassified\n";
            exit_code = 2;
        } else {
            os << res.family.label() << "\n";
        }
        return os.str();
    }
    Universe u = make_universe(cfg);
    const auto pool = parse_pool(cfg, u);
    std::set<ClosureOp> ops = {ClosureOp::Sub, ClosureOp::Ext};
    const Bitset fix = u.closure_fixpoint(pool, ops);
    std::uint64_t mask = 0;
    for (int g : pool) mask |= u.ass_mask(g);
    Bitset predicted(u.size());
    for (size_t i = 0; i < u.size(); ++i)
        if ((u.ass_mask(int(i)) & ~mask) == 0) predicted.set(i);
    if (fix == predicted) {
        os << "AssClass(" << u.prime_set_label(mask) << ")\n";
    } else {
        os << "NotClassified\n";
        exit_code = 2;
    }
    return os.str();
}

// --- verify / lattice ------------------------------------------------------------

std::string theorem_summary(const VerifyReport& rep) {
    std::ostringstream os;
    os << rep.theorem << " on " << rep.backend << ": " << (rep.pass ? "PASS" : "FAIL") << " ("
       << rep.classes.size() << " classes";
    if (!rep.counterexamples.empty()) os << ", " << rep.counterexamples.size() << " counterexamples";
    os << ")\n";
    return os.str();
}

CliResult cmd_verify(const RunConfig& cfg, const std::string& theorem) {
    CliResult res;
    Universe u = make_universe(cfg);
    VerifyReport rep;
    Lattice lattice;
    if (theorem == "takahashi") {
        rep = verify_takahashi(u, parse_pool(cfg, u), cfg.threads);
    } else if (theorem == "gabriel-serre") {
        rep = verify_gabriel_serre(u, parse_pool(cfg, u), cfg.threads);
    } else if (theorem == "ie-torf") {
        rep = verify_ie_torf(u, parse_pool(cfg, u), cfg.threads);
    } else if (theorem == "serre-in-torf") {
        auto sr = verify_serre_in_torf(u, parse_phi(cfg, u), cfg.threads);
        rep = sr.report;
        lattice = sr.lattice;
    } else {
        fail(Error::Kind::Config, "unknown theorem \"" + theorem + "\"");
    }
    RunConfig out_cfg = cfg;
    write_output(out_cfg, rep.to_json(), res.out);
    res.out += theorem_summary(rep);
    res.exit_code = rep.pass ? 0 : 2;
    return res;
}

CliResult cmd_lattice(const RunConfig& cfg) {
    CliResult res;
    Universe u = make_universe(cfg);
    auto sr = verify_serre_in_torf(u, parse_phi(cfg, u), cfg.threads);
    write_output(cfg, lattice_dot(sr.lattice), res.out);
    res.out += theorem_summary(sr.report);
    res.exit_code = sr.report.pass ? 0 : 2;
    return res;
}

// --- p1 utilities ------------------------------------------------------------------

CliResult cmd_p1(const std::vector<std::string>& positional, FieldTag field) {
    CliResult res;
    if (positional.empty()) fail(Error::Kind::Config, "p1 needs a subcommand: hom, ext, decompose");
    const std::string& sub = positional[0];
    if (sub == "hom" || sub == "ext") {
        if (positional.size() != 3)
            fail(Error::Kind::Config, "p1 " + sub + " needs two sheaf literals");
        const SheafP1 f = parse_sheaf(positional[1], field);
        const SheafP1 g = parse_sheaf(positional[2], field);
        const int d = sub == "hom" ? hom_dim(f, g) : ext1_dim(f, g);
        res.out = std::to_string(d) + "\n";
        return res;
    }
    if (sub == "decompose") {
        if (positional.size() != 2)
            fail(Error::Kind::Config, "p1 decompose needs one sheaf literal");
        const SheafP1 f = parse_sheaf(positional[1], field);
        auto [tor, vect] = decompose(f);
        res.out = "torsion: " + tor.label() + "\nvector:  " + vect.label() + "\n";
        return res;
    }
    fail(Error::Kind::Config, "unknown p1 subcommand \"" + sub + "\"");
}

}  // namespace

std::string cli_usage() {
    return "usage:\n"
           "  cohclass ass      --config FILE [--threads N] [--output FILE]\n"
           "  cohclass classify --config FILE [--threads N] [--output FILE]\n"
           "  cohclass verify (takahashi|gabriel-serre|ie-torf|serre-in-torf)\n"
           "                    --config FILE [--threads N] [--output FILE]\n"
           "  cohclass lattice  --config FILE [--threads N] [--output FILE]\n"
           "  cohclass p1 (hom|ext) F G --field F<p>|Q\n"
           "  cohclass p1 decompose F --field F<p>|Q\n";
}

CliResult run_cli(const std::vector<std::string>& args) {
    CliResult res;
    try {
        if (args.empty()) {
            res.out = cli_usage();
            res.exit_code = 1;
            return res;
        }
        const std::string& cmd = args[0];
        std::vector<std::string> positional;
        std::string config_path, output_override, field_str;
        int threads_override = 0;
        for (size_t i = 1; i < args.size(); ++i) {
            if (args[i] == "--config" && i + 1 < args.size()) {
                config_path = args[++i];
            } else if (args[i] == "--threads" && i + 1 < args.size()) {
                threads_override = std::stoi(args[++i]);
            } else if (args[i] == "--output" && i + 1 < args.size()) {
                output_override = args[++i];
            } else if (args[i] == "--field" && i + 1 < args.size()) {
                field_str = args[++i];
            } else if (args[i].rfind("--", 0) == 0) {
                fail(Error::Kind::Config, "unknown option " + args[i]);
            } else {
                positional.push_back(args[i]);
            }
        }
        if (cmd == "p1") {
            FieldTag field = rational_field();
            if (!field_str.empty()) {
                if (field_str == "Q")
                    field = rational_field();
                else if (field_str.size() >= 2 && field_str[0] == 'F')
                    field = prime_field(std::uint32_t(std::stoul(field_str.substr(1))));
                else
                    fail(Error::Kind::Config, "bad --field value");
            }
            return cmd_p1(positional, field);
        }
        if (config_path.empty()) fail(Error::Kind::Config, "missing --config");
        RunConfig cfg = load_config(config_path);
        if (threads_override > 0) cfg.threads = threads_override;
        if (!output_override.empty()) cfg.output = output_override;

        if (cmd == "ass") {
            const std::string table = cfg.is_p1 ? cmd_ass_p1(cfg) : cmd_ass_affine(cfg);
            write_output(cfg, table, res.out);
            return res;
        }
        if (cmd == "classify") {
            res.out = cmd_classify(cfg, res.exit_code);
            return res;
        }
        if (cmd == "verify") {
            if (positional.size() != 1) fail(Error::Kind::Config, "verify needs a theorem name");
            return cmd_verify(cfg, positional[0]);
        }
        if (cmd == "lattice") {
            return cmd_lattice(cfg);
        }
        fail(Error::Kind::Config, "unknown command \"" + cmd + "\"\n" + cli_usage());
    } catch (const Error& e) {
        res.out = std::string("error: ") + e.what() + "\n";
        if (e.kind() == Error::Kind::WindowTooSmall)
            res.out += "hint: enlarge the window bounds in the config\n";
        res.exit_code = 1;
        return res;
    } catch (const std::exception& e) {
        res.out = std::string("error: ") + e.what() + "\n";
        res.exit_code = 1;
        return res;
    }
}

}  // namespace cohclass
