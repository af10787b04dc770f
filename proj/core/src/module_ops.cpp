#include "cohclass/module.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <optional>
#include <set>

namespace cohclass {

namespace {

const PidWindow& pid_window(const AffineWindow& w) { return std::get<PidWindow>(w); }
const FiniteWindow& finite_window(const AffineWindow& w) { return std::get<FiniteWindow>(w); }
const MonoWindow& mono_window(const AffineWindow& w) { return std::get<MonoWindow>(w); }

bool is_pid(BackendKind k) { return k == BackendKind::PidZ || k == BackendKind::PidKt; }

Partition find_part(const PidModule& m, const PidPrime& p) {
    for (const auto& [q, part] : m.torsion)
        if (q == p) return part;
    return {};
}

LocalType pid_local(const PidModule& m, const PidPrime& p) {
    return LocalType{m.rank, find_part(m, p)};
}

std::vector<PidPrime> union_primes(std::initializer_list<const PidModule*> ms) {
    std::set<PidPrime> s;
    for (const PidModule* m : ms)
        for (const auto& [p, part] : m->torsion) s.insert(p);
    return {s.begin(), s.end()};
}

}  // namespace

// --- normal-form construction -------------------------------------------------

ModuleNF ModuleNF::zero(const Ring& ring) {
    ModuleNF m;
    m.kind = ring.kind();
    if (ring.kind() == BackendKind::Finite)
        m.finite.comps.assign(ring.factors().size(), Partition{});
    return m;
}

ModuleNF ModuleNF::ring_module(const Ring& ring) {
    ModuleNF m = zero(ring);
    switch (ring.kind()) {
        case BackendKind::PidZ:
        case BackendKind::PidKt:
            m.pid.rank = 1;
            break;
        case BackendKind::Monomial:
            m.mono.summands = {ring.relations()};
            break;
        case BackendKind::Finite:
            for (size_t i = 0; i < ring.factors().size(); ++i)
                m.finite.comps[i] = Partition{ring.factors()[i].cap};
            break;
    }
    return m;
}

ModuleNF ModuleNF::of_pid(BackendKind kind, int rank,
                          std::vector<std::pair<PidPrime, Partition>> torsion) {
    ModuleNF m;
    m.kind = kind;
    m.pid.rank = rank;
    for (auto& [p, part] : torsion) part = normalize_partition(part);
    std::erase_if(torsion, [](const auto& t) { return t.second.empty(); });
    std::sort(torsion.begin(), torsion.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    m.pid.torsion = std::move(torsion);
    return m;
}

ModuleNF ModuleNF::of_mono(std::vector<MonomialIdeal> summands) {
    ModuleNF m;
    m.kind = BackendKind::Monomial;
    std::erase_if(summands, [](const MonomialIdeal& j) { return j.is_unit(); });
    std::sort(summands.begin(), summands.end());
    m.mono.summands = std::move(summands);
    return m;
}

ModuleNF ModuleNF::of_finite(std::vector<Partition> comps) {
    ModuleNF m;
    m.kind = BackendKind::Finite;
    for (auto& c : comps) c = normalize_partition(c);
    m.finite.comps = std::move(comps);
    return m;
}

bool ModuleNF::is_zero() const {
    switch (kind) {
        case BackendKind::PidZ:
        case BackendKind::PidKt:
            return pid.rank == 0 && pid.torsion.empty();
        case BackendKind::Monomial:
            return mono.summands.empty();
        case BackendKind::Finite:
            for (const auto& c : finite.comps)
                if (!c.empty()) return false;
            return true;
    }
    return true;
}

std::strong_ordering operator<=>(const ModuleNF& a, const ModuleNF& b) {
    if (auto c = a.kind <=> b.kind; c != 0) return c;
    switch (a.kind) {
        case BackendKind::PidZ:
        case BackendKind::PidKt: {
            if (auto c = a.pid.rank <=> b.pid.rank; c != 0) return c;
            if (auto c = a.pid.torsion.size() <=> b.pid.torsion.size(); c != 0) return c;
            for (size_t i = 0; i < a.pid.torsion.size(); ++i) {
                if (auto c = a.pid.torsion[i].first <=> b.pid.torsion[i].first; c != 0) return c;
                if (auto c = a.pid.torsion[i].second <=> b.pid.torsion[i].second; c != 0) return c;
            }
            return std::strong_ordering::equal;
        }
        case BackendKind::Monomial:
            return a.mono.summands <=> b.mono.summands;
        case BackendKind::Finite:
            return a.finite.comps <=> b.finite.comps;
    }
    return std::strong_ordering::equal;
}

void validate_module(const Ring& ring, const ModuleNF& m) {
    if (m.kind != ring.kind()) fail(Error::Kind::Config, "module backend mismatch");
    switch (ring.kind()) {
        case BackendKind::PidZ:
        case BackendKind::PidKt: {
            if (m.pid.rank < 0) fail(Error::Kind::Config, "negative free rank");
            for (const auto& [p, part] : m.pid.torsion) {
                ring.check_prime(p.to_prime());
                if (part.empty() || part.back() < 1)
                    fail(Error::Kind::Config, "torsion exponents must be positive");
            }
            for (size_t i = 1; i < m.pid.torsion.size(); ++i)
                if (!(m.pid.torsion[i - 1].first < m.pid.torsion[i].first))
                    fail(Error::Kind::Config, "torsion primes out of order");
            return;
        }
        case BackendKind::Monomial:
            for (const MonomialIdeal& j : m.mono.summands) {
                if (j.nvars != int(ring.vars().size()))
                    fail(Error::Kind::Config, "summand arity mismatch");
                if (!ideal_leq(ring.relations(), j))
                    fail(Error::Kind::Config, "cyclic summand does not contain the relations");
                if (j.is_unit()) fail(Error::Kind::Config, "unit-ideal summand");
            }
            return;
        case BackendKind::Finite:
            if (m.finite.comps.size() != ring.factors().size())
                fail(Error::Kind::Config, "finite module arity mismatch");
            for (size_t i = 0; i < m.finite.comps.size(); ++i)
                for (int part : m.finite.comps[i])
                    if (part < 1 || part > ring.factors()[i].cap)
                        fail(Error::Kind::Config, "cyclic length exceeds the chain cap");
            return;
    }
}

std::string module_label(const Ring& ring, const ModuleNF& m) {
    if (m.is_zero()) return "0";
    std::vector<std::string> parts;
    switch (ring.kind()) {
        case BackendKind::PidZ:
        case BackendKind::PidKt: {
            const bool z = ring.kind() == BackendKind::PidZ;
            const std::string free = z ? "Z" : "R";
            if (m.pid.rank == 1) parts.push_back(free);
            if (m.pid.rank > 1) parts.push_back(free + "^" + std::to_string(m.pid.rank));
            for (const auto& [p, part] : m.pid.torsion)
                for (int e : part) {
                    if (z) {
                        Int pe = 1;
                        for (int i = 0; i < e; ++i) pe *= p.n;
                        parts.push_back("Z/" + pe.str());
                    } else if (e == 1) {
                        parts.push_back("R/(" + p.f.str() + ")");
                    } else {
                        parts.push_back("R/((" + p.f.str() + ")^" + std::to_string(e) + ")");
                    }
                }
            break;
        }
        case BackendKind::Monomial:
            for (const MonomialIdeal& j : m.mono.summands)
                parts.push_back(j == ring.relations() ? "R" : "R/" + ideal_str(j, ring.vars()));
            break;
        case BackendKind::Finite:
            for (size_t i = 0; i < m.finite.comps.size(); ++i) {
                const auto& f = ring.factors()[i];
                for (int e : m.finite.comps[i]) {
                    if (f.over_poly) {
                        parts.push_back("C" + std::to_string(i) + "(x^" + std::to_string(e) + ")");
                    } else {
                        Int pe = 1;
                        for (int k = 0; k < e; ++k) pe *= f.p;
                        parts.push_back("Z/" + pe.str());
                    }
                }
            }
            break;
    }
    std::string s;
    for (size_t i = 0; i < parts.size(); ++i) {
        if (i) s += " + ";
        s += parts[i];
    }
    return s;
}

// --- Ass / Min / Assh / Supp --------------------------------------------------

std::vector<PrimeIdeal> module_ass(const Ring& ring, const ModuleNF& m) {
    std::set<PrimeIdeal> out;
    switch (ring.kind()) {
        case BackendKind::PidZ:
        case BackendKind::PidKt:
            if (m.pid.rank > 0) out.insert(PrimeIdeal::zero());
            for (const auto& [p, part] : m.pid.torsion) out.insert(p.to_prime());
            break;
        case BackendKind::Monomial:
            for (const MonomialIdeal& j : m.mono.summands)
                for (const auto& vars : monomial_ass(j)) out.insert(PrimeIdeal::of_vars(vars));
            break;
        case BackendKind::Finite:
            for (size_t i = 0; i < m.finite.comps.size(); ++i)
                if (!m.finite.comps[i].empty()) out.insert(PrimeIdeal::of_factor(int(i)));
            break;
    }
    return {out.begin(), out.end()};
}

namespace {

std::vector<PrimeIdeal> min_of(const std::vector<PrimeIdeal>& primes) {
    std::vector<PrimeIdeal> out;
    for (const auto& p : primes) {
        bool minimal = true;
        for (const auto& q : primes)
            if (!(q == p) && prime_contains(p, q)) minimal = false;
        if (minimal) out.push_back(p);
    }
    return out;
}

}  // namespace

std::vector<PrimeIdeal> module_min_ass(const Ring& ring, const ModuleNF& m) {
    return min_of(module_ass(ring, m));
}

int module_dim(const Ring& ring, const ModuleNF& m) {
    if (m.is_zero()) return kDimZeroModule;
    int best = kDimZeroModule;
    for (const auto& p : module_min_ass(ring, m)) best = std::max(best, ring.dim_at(p));
    return best;
}

std::vector<PrimeIdeal> module_assh(const Ring& ring, const ModuleNF& m) {
    const int d = module_dim(ring, m);
    std::vector<PrimeIdeal> out;
    for (const auto& p : module_min_ass(ring, m))
        if (ring.dim_at(p) == d) out.push_back(p);
    return out;
}

std::vector<PrimeIdeal> module_supp(const Ring& ring, const ModuleNF& m,
                                    const SpectralPoset& poset) {
    std::vector<PrimeIdeal> mins = module_min_ass(ring, m);
    std::vector<PrimeIdeal> out;
    for (const auto& q : poset.primes)
        for (const auto& p : mins)
            if (prime_contains(q, p)) {
                out.push_back(q);
                break;
            }
    return out;
}

bool is_torsionfree(const Ring& ring, const ModuleNF& m) {
    const auto ring_ass = module_ass(ring, ModuleNF::ring_module(ring));
    for (const auto& p : module_ass(ring, m)) {
        bool contained = false;
        for (const auto& q : ring_ass)
            if (prime_contains(q, p)) contained = true;
        if (!contained) return false;
    }
    return true;
}

bool is_pure(const Ring& ring, const ModuleNF& m) {
    if (m.is_zero()) return true;
    return module_assh(ring, m) == module_ass(ring, m);
}

bool is_maximal_pure(const Ring& ring, const ModuleNF& m) {
    const auto ring_assh = module_assh(ring, ModuleNF::ring_module(ring));
    for (const auto& p : module_ass(ring, m))
        if (std::find(ring_assh.begin(), ring_assh.end(), p) == ring_assh.end()) return false;
    return true;
}

bool is_cm_dim_le1(const Ring& ring, const ModuleNF& m) {
    if (ring.dim() > 1)
        fail(Error::Kind::DimensionTooLarge,
             "Cohen-Macaulay test implemented for rings of dimension <= 1");
    return module_min_ass(ring, m) == module_ass(ring, m);
}

std::vector<std::pair<PrimeIdeal, ModuleNF>> primary_filtration(const Ring& ring,
                                                                const ModuleNF& m) {
    if (m.is_zero()) fail(Error::Kind::ZeroModule, "primary filtration of the zero module");
    std::vector<std::pair<PrimeIdeal, ModuleNF>> out;
    switch (ring.kind()) {
        case BackendKind::PidZ:
        case BackendKind::PidKt: {
            if (m.pid.rank > 0)
                out.emplace_back(PrimeIdeal::zero(), ModuleNF::of_pid(m.kind, m.pid.rank, {}));
            for (const auto& [p, part] : m.pid.torsion)
                out.emplace_back(p.to_prime(), ModuleNF::of_pid(m.kind, 0, {{p, part}}));
            break;
        }
        case BackendKind::Monomial: {
            std::map<std::vector<int>, std::vector<MonomialIdeal>> per_prime;
            for (const MonomialIdeal& j : m.mono.summands)
                for (const auto& vars : monomial_ass(j))
                    per_prime[vars].push_back(primary_component(j, vars));
            for (auto& [vars, comps] : per_prime)
                out.emplace_back(PrimeIdeal::of_vars(vars), ModuleNF::of_mono(std::move(comps)));
            break;
        }
        case BackendKind::Finite: {
            for (size_t i = 0; i < m.finite.comps.size(); ++i) {
                if (m.finite.comps[i].empty()) continue;
                std::vector<Partition> comps(ring.factors().size());
                comps[i] = m.finite.comps[i];
                out.emplace_back(PrimeIdeal::of_factor(int(i)), ModuleNF::of_finite(comps));
            }
            break;
        }
    }
    std::sort(out.begin(), out.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    return out;
}

// --- windows -------------------------------------------------------------------

void validate_window(const Ring& ring, const AffineWindow& w) {
    if (is_pid(ring.kind())) {
        if (!std::holds_alternative<PidWindow>(w))
            fail(Error::Kind::Config, "PID backend expects a prime/exponent/rank window");
        const auto& pw = pid_window(w);
        if (pw.max_exponent < 0 || pw.max_rank < 0) fail(Error::Kind::Config, "negative window cap");
        for (const auto& p : pw.primes) ring.check_prime(p.to_prime());
        for (size_t i = 1; i < pw.primes.size(); ++i)
            if (!(pw.primes[i - 1] < pw.primes[i]))
                fail(Error::Kind::Config, "window primes must be strictly sorted");
    } else if (ring.kind() == BackendKind::Finite) {
        if (!std::holds_alternative<FiniteWindow>(w))
            fail(Error::Kind::Config, "finite backend expects a length window");
        if (finite_window(w).max_total_length < 0)
            fail(Error::Kind::Config, "negative window cap");
    } else {
        if (!std::holds_alternative<MonoWindow>(w))
            fail(Error::Kind::Config, "monomial backend expects a cyclic-list window");
        const auto& mw = mono_window(w);
        if (mw.max_summands < 0) fail(Error::Kind::Config, "negative window cap");
        for (const MonomialIdeal& j : mw.cyclics) {
            ModuleNF probe = ModuleNF::of_mono({j});
            validate_module(ring, probe);
        }
    }
}

std::vector<PrimeIdeal> window_primes(const Ring& ring, const AffineWindow& w) {
    std::set<PrimeIdeal> out;
    switch (ring.kind()) {
        case BackendKind::PidZ:
        case BackendKind::PidKt:
            out.insert(PrimeIdeal::zero());
            for (const auto& p : pid_window(w).primes) out.insert(p.to_prime());
            break;
        case BackendKind::Finite:
            for (size_t i = 0; i < ring.factors().size(); ++i)
                out.insert(PrimeIdeal::of_factor(int(i)));
            break;
        case BackendKind::Monomial: {
            // all variable subsets containing the radical of the relations
            const int n = int(ring.vars().size());
            for (int mask = 0; mask < (1 << n); ++mask) {
                std::vector<int> vars;
                for (int v = 0; v < n; ++v)
                    if (mask & (1 << v)) vars.push_back(v);
                PrimeIdeal p = PrimeIdeal::of_vars(vars);
                try {
                    ring.check_prime(p);
                } catch (const Error&) {
                    continue;
                }
                out.insert(p);
            }
            break;
        }
    }
    return {out.begin(), out.end()};
}

bool in_window(const Ring& ring, const AffineWindow& w, const ModuleNF& m) {
    switch (ring.kind()) {
        case BackendKind::PidZ:
        case BackendKind::PidKt: {
            const auto& pw = pid_window(w);
            if (m.pid.rank > pw.max_rank) return false;
            for (const auto& [p, part] : m.pid.torsion) {
                if (std::find(pw.primes.begin(), pw.primes.end(), p) == pw.primes.end())
                    return false;
                // one cyclic summand per exponent: strictly decreasing parts
                for (size_t i = 0; i < part.size(); ++i) {
                    if (part[i] > pw.max_exponent) return false;
                    if (i > 0 && part[i - 1] == part[i]) return false;
                }
            }
            return true;
        }
        case BackendKind::Finite: {
            int total = 0;
            for (const auto& c : m.finite.comps) total += partition_weight(c);
            return total <= finite_window(w).max_total_length;
        }
        case BackendKind::Monomial: {
            const auto& mw = mono_window(w);
            if (int(m.mono.summands.size()) > mw.max_summands) return false;
            for (const MonomialIdeal& j : m.mono.summands)
                if (std::find(mw.cyclics.begin(), mw.cyclics.end(), j) == mw.cyclics.end())
                    return false;
            return true;
        }
    }
    return false;
}

std::vector<ModuleNF> enumerate_window(const Ring& ring, const AffineWindow& w) {
    validate_window(ring, w);
    std::vector<ModuleNF> out;
    switch (ring.kind()) {
        case BackendKind::PidZ:
        case BackendKind::PidKt: {
            const auto& pw = pid_window(w);
            // per prime: strict partitions with parts <= max_exponent
            std::vector<Partition> strict;
            std::function<void(int, Partition&)> rec = [&](int next, Partition& cur) {
                strict.push_back(cur);
                for (int v = next; v >= 1; --v) {
                    cur.push_back(v);
                    rec(v - 1, cur);
                    cur.pop_back();
                }
            };
            Partition cur;
            rec(pw.max_exponent, cur);
            std::vector<std::vector<std::pair<PidPrime, Partition>>> combos = {{}};
            for (const auto& p : pw.primes) {
                std::vector<std::vector<std::pair<PidPrime, Partition>>> next;
                for (const auto& base : combos)
                    for (const auto& part : strict) {
                        auto ext = base;
                        if (!part.empty()) ext.emplace_back(p, part);
                        next.push_back(std::move(ext));
                    }
                combos = std::move(next);
            }
            for (int r = 0; r <= pw.max_rank; ++r)
                for (const auto& torsion : combos)
                    out.push_back(ModuleNF::of_pid(ring.kind(), r, torsion));
            break;
        }
        case BackendKind::Finite: {
            const int budget = finite_window(w).max_total_length;
            std::vector<std::vector<Partition>> combos = {{}};
            for (const auto& factor : ring.factors()) {
                std::vector<std::vector<Partition>> next;
                for (const auto& base : combos) {
                    int used = 0;
                    for (const auto& c : base) used += partition_weight(c);
                    for (const auto& part : partitions_up_to(budget - used, factor.cap, -1)) {
                        auto ext = base;
                        ext.push_back(part);
                        next.push_back(std::move(ext));
                    }
                }
                combos = std::move(next);
            }
            for (const auto& comps : combos) out.push_back(ModuleNF::of_finite(comps));
            break;
        }
        case BackendKind::Monomial: {
            const auto& mw = mono_window(w);
            std::function<void(size_t, std::vector<MonomialIdeal>&)> rec =
                [&](size_t start, std::vector<MonomialIdeal>& cur) {
                    out.push_back(ModuleNF::of_mono(cur));
                    if (int(cur.size()) >= mw.max_summands) return;
                    for (size_t i = start; i < mw.cyclics.size(); ++i) {
                        cur.push_back(mw.cyclics[i]);
                        rec(i, cur);
                        cur.pop_back();
                    }
                };
            std::vector<MonomialIdeal> cur;
            rec(0, cur);
            break;
        }
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

// --- structural operations -----------------------------------------------------

ModuleNF direct_sum(const Ring& ring, const ModuleNF& a, const ModuleNF& b) {
    switch (ring.kind()) {
        case BackendKind::PidZ:
        case BackendKind::PidKt: {
            std::vector<std::pair<PidPrime, Partition>> torsion;
            for (const auto& p : union_primes({&a.pid, &b.pid})) {
                Partition merged = find_part(a.pid, p);
                for (int e : find_part(b.pid, p)) merged.push_back(e);
                torsion.emplace_back(p, normalize_partition(merged));
            }
            return ModuleNF::of_pid(a.kind, a.pid.rank + b.pid.rank, std::move(torsion));
        }
        case BackendKind::Monomial: {
            auto summands = a.mono.summands;
            summands.insert(summands.end(), b.mono.summands.begin(), b.mono.summands.end());
            return ModuleNF::of_mono(std::move(summands));
        }
        case BackendKind::Finite: {
            std::vector<Partition> comps(ring.factors().size());
            for (size_t i = 0; i < comps.size(); ++i) {
                comps[i] = a.finite.comps[i];
                for (int e : b.finite.comps[i]) comps[i].push_back(e);
            }
            return ModuleNF::of_finite(std::move(comps));
        }
    }
    return a;
}

std::vector<ModuleNF> module_summands(const Ring& ring, const ModuleNF& m) {
    // indecomposable pieces as single-summand modules
    std::vector<ModuleNF> pieces;
    switch (ring.kind()) {
        case BackendKind::PidZ:
        case BackendKind::PidKt:
            for (int i = 0; i < m.pid.rank; ++i) pieces.push_back(ModuleNF::of_pid(m.kind, 1, {}));
            for (const auto& [p, part] : m.pid.torsion)
                for (int e : part) pieces.push_back(ModuleNF::of_pid(m.kind, 0, {{p, {e}}}));
            break;
        case BackendKind::Monomial:
            for (const auto& j : m.mono.summands) pieces.push_back(ModuleNF::of_mono({j}));
            break;
        case BackendKind::Finite:
            for (size_t i = 0; i < m.finite.comps.size(); ++i)
                for (int e : m.finite.comps[i]) {
                    std::vector<Partition> comps(ring.factors().size());
                    comps[i] = {e};
                    pieces.push_back(ModuleNF::of_finite(comps));
                }
            break;
    }
    // all sub-multisets, built incrementally
    std::set<ModuleNF> out = {ModuleNF::zero(ring)};
    for (const auto& piece : pieces) {
        std::set<ModuleNF> next = out;
        for (const auto& base : out) next.insert(direct_sum(ring, base, piece));
        out = std::move(next);
    }
    return {out.begin(), out.end()};
}

ModuleNF tensor_module(const Ring& ring, const ModuleNF& a, const ModuleNF& b) {
    switch (ring.kind()) {
        case BackendKind::PidZ:
        case BackendKind::PidKt: {
            std::vector<std::pair<PidPrime, Partition>> torsion;
            for (const auto& p : union_primes({&a.pid, &b.pid})) {
                const Partition pa = find_part(a.pid, p), pb = find_part(b.pid, p);
                Partition merged;
                for (int e : pa)
                    for (int f : pb) merged.push_back(std::min(e, f));
                for (int i = 0; i < b.pid.rank; ++i)
                    for (int e : pa) merged.push_back(e);
                for (int i = 0; i < a.pid.rank; ++i)
                    for (int e : pb) merged.push_back(e);
                torsion.emplace_back(p, normalize_partition(merged));
            }
            return ModuleNF::of_pid(a.kind, a.pid.rank * b.pid.rank, std::move(torsion));
        }
        case BackendKind::Finite: {
            std::vector<Partition> comps(ring.factors().size());
            for (size_t i = 0; i < comps.size(); ++i) {
                Partition merged;
                for (int e : a.finite.comps[i])
                    for (int f : b.finite.comps[i]) merged.push_back(std::min(e, f));
                comps[i] = normalize_partition(merged);
            }
            return ModuleNF::of_finite(std::move(comps));
        }
        case BackendKind::Monomial:
            fail(Error::Kind::UnsupportedBackend,
                 "tensor products over monomial quotients are out of scope");
    }
    return a;
}

bool module_triple_exists(const Ring& ring, const ModuleNF& a, const ModuleNF& e,
                          const ModuleNF& b) {
    switch (ring.kind()) {
        case BackendKind::PidZ:
        case BackendKind::PidKt: {
            if (e.pid.rank != a.pid.rank + b.pid.rank) return false;
            for (const auto& p : union_primes({&a.pid, &e.pid, &b.pid}))
                if (!local_triple_exists(pid_local(a.pid, p), pid_local(e.pid, p),
                                         pid_local(b.pid, p)))
                    return false;
            return true;
        }
        case BackendKind::Finite: {
            for (size_t i = 0; i < ring.factors().size(); ++i)
                if (!lr_positive(e.finite.comps[i], a.finite.comps[i], b.finite.comps[i]))
                    return false;
            return true;
        }
        case BackendKind::Monomial:
            fail(Error::Kind::UnsupportedBackend,
                 "hom/extension enumeration over monomial quotients is out of scope");
    }
    return false;
}

bool is_submodule_type(const Ring& ring, const ModuleNF& k, const ModuleNF& m) {
    switch (ring.kind()) {
        case BackendKind::PidZ:
        case BackendKind::PidKt: {
            if (k.pid.rank > m.pid.rank) return false;
            for (const auto& [p, part] : k.pid.torsion)
                if (!fits_componentwise(part, find_part(m.pid, p))) return false;
            return true;
        }
        case BackendKind::Finite:
            for (size_t i = 0; i < ring.factors().size(); ++i)
                if (!fits_componentwise(k.finite.comps[i], m.finite.comps[i])) return false;
            return true;
        case BackendKind::Monomial:
            fail(Error::Kind::UnsupportedBackend,
                 "submodule enumeration over monomial quotients is out of scope");
    }
    return false;
}

bool is_module_quotient_type(const Ring& ring, const ModuleNF& m, const ModuleNF& u) {
    switch (ring.kind()) {
        case BackendKind::PidZ:
        case BackendKind::PidKt: {
            if (u.pid.rank > m.pid.rank) return false;
            const int spare = m.pid.rank - u.pid.rank;
            for (const auto& [p, part] : u.pid.torsion) {
                // the spare free generators can carry the largest parts
                Partition rest(part.begin() + std::min<size_t>(size_t(spare), part.size()),
                               part.end());
                if (!fits_componentwise(rest, find_part(m.pid, p))) return false;
            }
            return true;
        }
        case BackendKind::Finite:
            for (size_t i = 0; i < ring.factors().size(); ++i)
                if (!fits_componentwise(u.finite.comps[i], m.finite.comps[i])) return false;
            return true;
        case BackendKind::Monomial:
            fail(Error::Kind::UnsupportedBackend,
                 "quotient enumeration over monomial quotients is out of scope");
    }
    return false;
}

std::vector<ModuleNF> all_submodule_types(const Ring& ring, const ModuleNF& m) {
    std::vector<ModuleNF> out;
    if (is_pid(ring.kind())) {
        std::vector<std::vector<std::pair<PidPrime, Partition>>> combos = {{}};
        for (const auto& [p, part] : m.pid.torsion) {
            std::vector<std::vector<std::pair<PidPrime, Partition>>> next;
            for (const auto& base : combos)
                for (const auto& mu : componentwise_dominated(part)) {
                    auto ext = base;
                    if (!mu.empty()) ext.emplace_back(p, mu);
                    next.push_back(std::move(ext));
                }
            combos = std::move(next);
        }
        for (int r = 0; r <= m.pid.rank; ++r)
            for (const auto& torsion : combos) out.push_back(ModuleNF::of_pid(m.kind, r, torsion));
    } else {
        std::vector<std::vector<Partition>> combos = {{}};
        for (const auto& comp : m.finite.comps) {
            std::vector<std::vector<Partition>> next;
            for (const auto& base : combos)
                for (const auto& mu : componentwise_dominated(comp)) {
                    auto ext = base;
                    ext.push_back(mu);
                    next.push_back(std::move(ext));
                }
            combos = std::move(next);
        }
        for (const auto& comps : combos) out.push_back(ModuleNF::of_finite(comps));
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

std::vector<ModuleNF> submodules_window(const Ring& ring, const ModuleNF& m,
                                        const AffineWindow& w) {
    std::vector<ModuleNF> out;
    for (const ModuleNF& k : enumerate_window(ring, w))
        if (is_submodule_type(ring, k, m)) out.push_back(k);
    return out;
}

std::vector<ModuleNF> quotients_window(const Ring& ring, const ModuleNF& m,
                                       const AffineWindow& w) {
    std::vector<ModuleNF> out;
    for (const ModuleNF& u : enumerate_window(ring, w))
        if (is_module_quotient_type(ring, m, u)) out.push_back(u);
    return out;
}

std::vector<ModuleNF> extensions_window(const Ring& ring, const ModuleNF& a, const ModuleNF& b,
                                        const AffineWindow& w) {
    std::vector<ModuleNF> out;
    for (const ModuleNF& e : enumerate_window(ring, w))
        if (module_triple_exists(ring, a, e, b)) out.push_back(e);
    return out;
}

std::vector<ModuleNF> images_window(const Ring& ring, const ModuleNF& m, const ModuleNF& n,
                                    const AffineWindow& w) {
    std::vector<ModuleNF> out;
    for (const ModuleNF& i : enumerate_window(ring, w))
        if (is_module_quotient_type(ring, m, i) && is_submodule_type(ring, i, n)) out.push_back(i);
    return out;
}

std::vector<ModuleNF> kernels_window(const Ring& ring, const ModuleNF& m, const ModuleNF& n,
                                     const AffineWindow& w) {
    // kernels of f: M -> N; the image is an unwindowed intermediate
    std::vector<ModuleNF> images;
    for (const ModuleNF& i : all_submodule_types(ring, n))
        if (is_module_quotient_type(ring, m, i)) images.push_back(i);
    std::vector<ModuleNF> out;
    for (const ModuleNF& k : enumerate_window(ring, w))
        for (const ModuleNF& i : images)
            if (module_triple_exists(ring, k, m, i)) {
                out.push_back(k);
                break;
            }
    return out;
}

std::vector<ModuleNF> cokernels_window(const Ring& ring, const ModuleNF& m, const ModuleNF& n,
                                       const AffineWindow& w) {
    std::vector<ModuleNF> images;
    for (const ModuleNF& i : all_submodule_types(ring, n))
        if (is_module_quotient_type(ring, m, i)) images.push_back(i);
    std::vector<ModuleNF> out;
    for (const ModuleNF& c : enumerate_window(ring, w))
        for (const ModuleNF& i : images)
            if (module_triple_exists(ring, i, n, c)) {
                out.push_back(c);
                break;
            }
    return out;
}

std::vector<Conflation> window_conflations(const Ring& ring,
                                           const std::vector<ModuleNF>& universe,
                                           const AffineWindow& w) {
    std::vector<Conflation> out;
    std::set<std::tuple<ModuleNF, ModuleNF, ModuleNF>> seen;
    auto push = [&](ModuleNF a, ModuleNF e, ModuleNF b) {
        if (seen.emplace(a, e, b).second) out.push_back(Conflation{a, e, b});
    };
    if (ring.kind() != BackendKind::Monomial) {
        for (const ModuleNF& a : universe)
            for (const ModuleNF& b : universe)
                for (const ModuleNF& e : extensions_window(ring, a, b, w))
                    if (std::binary_search(universe.begin(), universe.end(), e)) push(a, e, b);
        return out;
    }

    // Monomial backend: colon sequences 0 -> R/(J:m) -> R/J -> R/(J+(m)) -> 0
    // for cyclics J and monomials m, closed under direct sums inside the
    // window. Sound by construction (every returned triple is exact).
    const auto& mw = mono_window(w);
    const int n = int(ring.vars().size());
    int cap = 1;
    for (const auto& j : mw.cyclics)
        for (const auto& g : j.gens)
            for (int e : g) cap = std::max(cap, e + 1);
    std::vector<Mono> monos;
    Mono cur(size_t(n), 0);
    std::function<void(int)> gen = [&](int v) {
        if (v == n) {
            if (mono_degree(cur) > 0) monos.push_back(cur);
            return;
        }
        for (int e = 0; e <= cap; ++e) {
            cur[size_t(v)] = e;
            gen(v + 1);
        }
        cur[size_t(v)] = 0;
    };
    gen(0);

    auto as_module = [&](const MonomialIdeal& j) -> std::optional<ModuleNF> {
        if (j.is_unit()) return ModuleNF::zero(ring);
        ModuleNF m = ModuleNF::of_mono({j});
        if (!in_window(ring, w, m)) return std::nullopt;
        return m;
    };

    std::vector<Conflation> elementary;
    for (const MonomialIdeal& j : mw.cyclics) {
        auto mid = as_module(j);
        if (!mid) continue;
        for (const Mono& m : monos) {
            auto sub = as_module(ideal_colon(j, m));
            auto quot = as_module(ideal_sum(j, make_monomial_ideal(n, {m})));
            if (sub && quot) elementary.push_back(Conflation{*sub, *mid, *quot});
        }
    }
    for (const ModuleNF& x : universe) {
        elementary.push_back(Conflation{ModuleNF::zero(ring), x, x});
        elementary.push_back(Conflation{x, x, ModuleNF::zero(ring)});
    }

    // close under direct sums while every term stays in the window
    std::vector<Conflation> frontier = elementary;
    for (const auto& c : elementary) push(c.sub, c.mid, c.quot);
    while (!frontier.empty()) {
        std::vector<Conflation> next;
        for (const auto& c : frontier)
            for (const auto& e : elementary) {
                Conflation s{direct_sum(ring, c.sub, e.sub), direct_sum(ring, c.mid, e.mid),
                             direct_sum(ring, c.quot, e.quot)};
                if (!in_window(ring, w, s.sub) || !in_window(ring, w, s.mid) ||
                    !in_window(ring, w, s.quot))
                    continue;
                if (seen.emplace(s.sub, s.mid, s.quot).second) {
                    out.push_back(s);
                    next.push_back(s);
                }
            }
        frontier = std::move(next);
    }
    return out;
}

}  // namespace cohclass
