#include "cohclass/config.hpp"

#include "cohclass/textio.hpp"

#include <json.hpp>

#include <fstream>
#include <set>

namespace cohclass {

namespace {

using nlohmann::json;

void reject_unknown_keys(const json& j, const std::set<std::string>& allowed,
                         const std::string& where) {
    for (const auto& [key, value] : j.items())
        if (!allowed.count(key))
            fail(Error::Kind::Config, "unknown key \"" + key + "\" in " + where);
}

FieldTag parse_field(const json& j, const std::string& where) {
    if (!j.is_string()) fail(Error::Kind::Config, where + ": field must be a string");
    const std::string s = j.get<std::string>();
    if (s == "Q") return rational_field();
    if (s.size() >= 2 && s[0] == 'F') return prime_field(std::uint32_t(std::stoul(s.substr(1))));
    fail(Error::Kind::Config, where + ": field must be \"Q\" or \"F<p>\"");
}

Ring parse_ring(const json& j) {
    if (!j.is_object() || !j.contains("type"))
        fail(Error::Kind::Config, "ring needs a \"type\"");
    const std::string type = j.at("type").get<std::string>();
    if (type == "Z") {
        reject_unknown_keys(j, {"type"}, "ring");
        return Ring::integers();
    }
    if (type == "k[t]") {
        reject_unknown_keys(j, {"type", "field"}, "ring");
        return Ring::polynomials(parse_field(j.at("field"), "ring"));
    }
    if (type == "Z/n") {
        reject_unknown_keys(j, {"type", "n"}, "ring");
        return Ring::z_mod(Int(j.at("n").get<long long>()));
    }
    if (type == "monomial") {
        reject_unknown_keys(j, {"type", "field", "vars", "relations"}, "ring");
        std::vector<std::string> vars = j.at("vars").get<std::vector<std::string>>();
        std::vector<Mono> gens;
        for (const auto& g : j.at("relations"))
            gens.push_back(parse_mono(g.get<std::string>(), vars));
        return Ring::monomial_quotient(parse_field(j.at("field"), "ring"), std::move(vars),
                                       std::move(gens));
    }
    if (type == "finite") {
        reject_unknown_keys(j, {"type", "factors"}, "ring");
        std::vector<ChainFactor> factors;
        for (const auto& f : j.at("factors")) {
            reject_unknown_keys(f, {"p", "k", "poly", "res_deg", "m"}, "ring.factors");
            ChainFactor cf;
            cf.p = f.at("p").get<std::uint32_t>();
            cf.over_poly = f.value("poly", false);
            if (cf.over_poly) {
                cf.res_deg = f.value("res_deg", 1);
                cf.cap = f.at("m").get<int>();
            } else {
                cf.cap = f.at("k").get<int>();
            }
            factors.push_back(cf);
        }
        return Ring::finite_product(std::move(factors));
    }
    fail(Error::Kind::Config, "unknown ring type \"" + type + "\"");
}

AffineWindow parse_affine_window(const Ring& ring, const json& j) {
    switch (ring.kind()) {
        case BackendKind::PidZ:
        case BackendKind::PidKt: {
            reject_unknown_keys(j, {"primes", "max_exponent", "max_rank"}, "window");
            PidWindow w;
            for (const auto& p : j.at("primes")) {
                const std::string s = p.get<std::string>();
                if (ring.kind() == BackendKind::PidZ)
                    w.primes.push_back(PidPrime::of(Int(s)));
                else
                    w.primes.push_back(PidPrime::of(parse_poly(s, ring.field()).monic()));
            }
            std::sort(w.primes.begin(), w.primes.end());
            w.max_exponent = j.at("max_exponent").get<int>();
            w.max_rank = j.at("max_rank").get<int>();
            return w;
        }
        case BackendKind::Finite: {
            reject_unknown_keys(j, {"max_total_length"}, "window");
            return FiniteWindow{j.at("max_total_length").get<int>()};
        }
        case BackendKind::Monomial: {
            reject_unknown_keys(j, {"cyclics", "max_summands"}, "window");
            MonoWindow w;
            for (const auto& c : j.at("cyclics")) {
                ModuleNF m = parse_module(ring, c.get<std::string>());
                if (m.mono.summands.size() != 1)
                    fail(Error::Kind::Config, "window cyclics must be single summands");
                w.cyclics.push_back(m.mono.summands[0]);
            }
            w.max_summands = j.at("max_summands").get<int>();
            return w;
        }
    }
    fail(Error::Kind::Internal, "unreachable");
}

SheafWindow parse_sheaf_window(FieldTag field, const json& j) {
    reject_unknown_keys(
        j, {"twist_min", "twist_max", "max_rank", "max_torsion_length", "max_point_degree",
            "points"},
        "window");
    SheafWindow w;
    w.twist_lo = j.at("twist_min").get<int>();
    w.twist_hi = j.at("twist_max").get<int>();
    w.max_rank = j.at("max_rank").get<int>();
    w.max_torsion_length = j.at("max_torsion_length").get<int>();
    w.max_point_degree = j.value("max_point_degree", 1);
    if (j.contains("points"))
        for (const auto& p : j.at("points"))
            w.points.push_back(parse_point(p.get<std::string>(), field));
    if (w.twist_lo > w.twist_hi) fail(Error::Kind::Config, "empty twist range");
    return w;
}

}  // namespace

RunConfig parse_config_text(const std::string& json_text) {
    json j;
    try {
        j = json::parse(json_text);
    } catch (const json::exception& e) {
        fail(Error::Kind::Config, std::string("config is not valid JSON: ") + e.what());
    }
    reject_unknown_keys(
        j, {"ring", "scheme", "window", "objects", "pool", "phi", "threads", "output"},
        "config");
    RunConfig cfg;
    if (j.contains("ring") == j.contains("scheme"))
        fail(Error::Kind::Config, "config needs exactly one of \"ring\" or \"scheme\"");
    if (j.contains("scheme")) {
        const json& s = j.at("scheme");
        reject_unknown_keys(s, {"type", "field"}, "scheme");
        if (s.at("type").get<std::string>() != "P1")
            fail(Error::Kind::Config, "only the projective line is supported as a scheme");
        cfg.is_p1 = true;
        cfg.field = parse_field(s.at("field"), "scheme");
        if (!j.contains("window")) fail(Error::Kind::Config, "missing \"window\"");
        cfg.sheaf_window = parse_sheaf_window(cfg.field, j.at("window"));
    } else {
        cfg.ring = parse_ring(j.at("ring"));
        if (!j.contains("window")) fail(Error::Kind::Config, "missing \"window\"");
        cfg.affine_window = parse_affine_window(*cfg.ring, j.at("window"));
        validate_window(*cfg.ring, cfg.affine_window);
    }
    if (j.contains("objects")) cfg.objects = j.at("objects").get<std::vector<std::string>>();
    if (j.contains("pool")) cfg.pool = j.at("pool").get<std::vector<std::string>>();
    if (j.contains("phi")) cfg.phi = j.at("phi").get<std::vector<std::string>>();
    cfg.threads = j.value("threads", 1);
    if (cfg.threads < 1) fail(Error::Kind::Config, "threads must be positive");
    cfg.output = j.value("output", std::string());
    return cfg;
}

RunConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) fail(Error::Kind::Config, "cannot open config file " + path);
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return parse_config_text(text);
}

}  // namespace cohclass
