#include "cohclass/monomial.hpp"

#include "cohclass/numeric.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <set>

namespace cohclass {

bool mono_divides(const Mono& a, const Mono& b) {
    for (size_t i = 0; i < a.size(); ++i)
        if (a[i] > b[i]) return false;
    return true;
}

Mono mono_lcm(const Mono& a, const Mono& b) {
    Mono c(a.size());
    for (size_t i = 0; i < a.size(); ++i) c[i] = std::max(a[i], b[i]);
    return c;
}

int mono_degree(const Mono& a) {
    int d = 0;
    for (int e : a) d += e;
    return d;
}

bool MonomialIdeal::is_unit() const {
    for (const Mono& g : gens)
        if (mono_degree(g) == 0) return true;
    return false;
}

MonomialIdeal make_monomial_ideal(int nvars, std::vector<Mono> gens) {
    for (const Mono& g : gens)
        if (int(g.size()) != nvars) fail(Error::Kind::Config, "monomial arity mismatch");
    // minimalize: drop generators divisible by another
    std::vector<Mono> min;
    for (const Mono& g : gens) {
        bool redundant = false;
        for (const Mono& h : gens)
            if (h != g && mono_divides(h, g)) {
                redundant = true;
                break;
            }
        if (redundant) continue;
        if (std::find(min.begin(), min.end(), g) == min.end()) min.push_back(g);
    }
    std::sort(min.begin(), min.end());
    return MonomialIdeal{nvars, std::move(min)};
}

bool ideal_contains_mono(const MonomialIdeal& i, const Mono& m) {
    for (const Mono& g : i.gens)
        if (mono_divides(g, m)) return true;
    return false;
}

bool ideal_leq(const MonomialIdeal& j, const MonomialIdeal& i) {
    for (const Mono& g : j.gens)
        if (!ideal_contains_mono(i, g)) return false;
    return true;
}

MonomialIdeal ideal_sum(const MonomialIdeal& a, const MonomialIdeal& b) {
    std::vector<Mono> gens = a.gens;
    gens.insert(gens.end(), b.gens.begin(), b.gens.end());
    return make_monomial_ideal(a.nvars, std::move(gens));
}

MonomialIdeal ideal_intersect(const MonomialIdeal& a, const MonomialIdeal& b) {
    if (a.is_zero() || b.is_zero()) return MonomialIdeal{a.nvars, {}};
    std::vector<Mono> gens;
    for (const Mono& g : a.gens)
        for (const Mono& h : b.gens) gens.push_back(mono_lcm(g, h));
    return make_monomial_ideal(a.nvars, std::move(gens));
}

MonomialIdeal ideal_colon(const MonomialIdeal& i, const Mono& m) {
    std::vector<Mono> gens;
    for (const Mono& g : i.gens) {
        Mono q(g.size());
        for (size_t k = 0; k < g.size(); ++k) q[k] = std::max(g[k] - m[k], 0);
        gens.push_back(std::move(q));
    }
    return make_monomial_ideal(i.nvars, std::move(gens));
}

bool is_irreducible_monomial_ideal(const MonomialIdeal& i) {
    for (const Mono& g : i.gens) {
        int support = 0;
        for (int e : g)
            if (e > 0) ++support;
        if (support > 1) return false;
    }
    return true;
}

std::vector<int> irreducible_support(const MonomialIdeal& i) {
    std::set<int> vars;
    for (const Mono& g : i.gens)
        for (size_t v = 0; v < g.size(); ++v)
            if (g[v] > 0) vars.insert(int(v));
    return {vars.begin(), vars.end()};
}

namespace {

void decompose_rec(const MonomialIdeal& i, std::vector<MonomialIdeal>& out) {
    for (const Mono& g : i.gens) {
        int pivot = -1;
        int support = 0;
        for (size_t v = 0; v < g.size(); ++v)
            if (g[v] > 0) {
                ++support;
                pivot = int(v);
            }
        if (support <= 1) continue;
        // split g = x_pivot^e * rest
        Mono pure(g.size(), 0), rest = g;
        pure[size_t(pivot)] = g[size_t(pivot)];
        rest[size_t(pivot)] = 0;
        std::vector<Mono> g1 = i.gens, g2 = i.gens;
        g1.push_back(pure);
        g2.push_back(rest);
        // remove the split generator (it is implied by either piece's sum)
        decompose_rec(make_monomial_ideal(i.nvars, std::move(g1)), out);
        decompose_rec(make_monomial_ideal(i.nvars, std::move(g2)), out);
        return;
    }
    out.push_back(i);
}

}  // namespace

std::vector<MonomialIdeal> irreducible_decomposition(const MonomialIdeal& ideal) {
    static std::map<MonomialIdeal, std::vector<MonomialIdeal>> cache;
    static std::mutex mu;
    {
        std::lock_guard<std::mutex> lock(mu);
        auto it = cache.find(ideal);
        if (it != cache.end()) return it->second;
    }
    std::vector<MonomialIdeal> comps;
    if (ideal.is_zero()) {
        comps.push_back(ideal);
    } else {
        decompose_rec(ideal, comps);
        std::sort(comps.begin(), comps.end());
        comps.erase(std::unique(comps.begin(), comps.end()), comps.end());
        // irredundant: drop components containing the intersection of the rest
        for (size_t k = 0; k < comps.size();) {
            MonomialIdeal inter{ideal.nvars, {}};
            bool first = true;
            for (size_t j = 0; j < comps.size(); ++j) {
                if (j == k) continue;
                inter = first ? comps[j] : ideal_intersect(inter, comps[j]);
                first = false;
            }
            if (!first && ideal_leq(inter, comps[k])) {
                comps.erase(comps.begin() + long(k));
            } else {
                ++k;
            }
        }
    }
    std::lock_guard<std::mutex> lock(mu);
    cache.emplace(ideal, comps);
    return comps;
}

std::vector<std::vector<int>> monomial_ass(const MonomialIdeal& i) {
    std::set<std::vector<int>> primes;
    for (const MonomialIdeal& q : irreducible_decomposition(i)) primes.insert(irreducible_support(q));
    return {primes.begin(), primes.end()};
}

MonomialIdeal primary_component(const MonomialIdeal& i, const std::vector<int>& prime_vars) {
    MonomialIdeal acc{i.nvars, {}};
    bool first = true;
    for (const MonomialIdeal& q : irreducible_decomposition(i)) {
        if (irreducible_support(q) != prime_vars) continue;
        acc = first ? q : ideal_intersect(acc, q);
        first = false;
    }
    if (first) fail(Error::Kind::Internal, "primary component at a non-associated prime");
    return acc;
}

std::string mono_str(const Mono& m, const std::vector<std::string>& vars) {
    std::string s;
    for (size_t v = 0; v < m.size(); ++v) {
        if (m[v] == 0) continue;
        if (!s.empty()) s += "*";
        s += vars[v];
        if (m[v] > 1) s += "^" + std::to_string(m[v]);
    }
    return s.empty() ? "1" : s;
}

std::string ideal_str(const MonomialIdeal& i, const std::vector<std::string>& vars) {
    std::string s = "(";
    for (size_t k = 0; k < i.gens.size(); ++k) {
        if (k) s += ",";
        s += mono_str(i.gens[k], vars);
    }
    return s + ")";
}

}  // namespace cohclass
