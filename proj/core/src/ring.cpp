#include "cohclass/ring.hpp"

#include <algorithm>
#include <set>

namespace cohclass {

std::strong_ordering cmp_int(const Int& a, const Int& b) {
    if (a < b) return std::strong_ordering::less;
    if (b < a) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
}

PrimeIdeal PrimeIdeal::of_int(Int p) {
    PrimeIdeal out;
    out.kind = Kind::PidInt;
    out.n = std::move(p);
    return out;
}

PrimeIdeal PrimeIdeal::of_poly(Poly f) {
    PrimeIdeal out;
    out.kind = Kind::PidPoly;
    out.f = std::move(f);
    return out;
}

PrimeIdeal PrimeIdeal::of_vars(std::vector<int> vars) {
    PrimeIdeal out;
    out.kind = Kind::Monomial;
    std::sort(vars.begin(), vars.end());
    out.vars = std::move(vars);
    return out;
}

PrimeIdeal PrimeIdeal::of_factor(int idx) {
    PrimeIdeal out;
    out.kind = Kind::Factor;
    out.factor = idx;
    return out;
}

std::strong_ordering operator<=>(const PrimeIdeal& a, const PrimeIdeal& b) {
    if (auto c = a.kind <=> b.kind; c != 0) return c;
    switch (a.kind) {
        case PrimeIdeal::Kind::Zero:
            return std::strong_ordering::equal;
        case PrimeIdeal::Kind::PidInt:
            return cmp_int(a.n, b.n);
        case PrimeIdeal::Kind::PidPoly:
            return a.f <=> b.f;
        case PrimeIdeal::Kind::Monomial:
            // larger variable sets (deeper specializations) sort after
            if (auto c = a.vars.size() <=> b.vars.size(); c != 0) return c;
            return a.vars <=> b.vars;
        case PrimeIdeal::Kind::Factor:
            return a.factor <=> b.factor;
    }
    return std::strong_ordering::equal;
}

bool prime_contains(const PrimeIdeal& a, const PrimeIdeal& b) {
    if (b.kind == PrimeIdeal::Kind::Zero) return true;
    if (a.kind == PrimeIdeal::Kind::Zero) return false;
    if (a.kind != b.kind) return false;
    if (a.kind == PrimeIdeal::Kind::Monomial)
        return std::includes(a.vars.begin(), a.vars.end(), b.vars.begin(), b.vars.end());
    return a == b;
}

Ring Ring::integers() {
    Ring r;
    r.kind_ = BackendKind::PidZ;
    return r;
}

Ring Ring::polynomials(FieldTag field) {
    Ring r;
    r.kind_ = BackendKind::PidKt;
    r.field_ = field;
    return r;
}

Ring Ring::monomial_quotient(FieldTag field, std::vector<std::string> vars,
                             std::vector<Mono> ideal_gens) {
    Ring r;
    r.kind_ = BackendKind::Monomial;
    r.field_ = field;
    r.relations_ = make_monomial_ideal(int(vars.size()), std::move(ideal_gens));
    r.vars_ = std::move(vars);
    if (r.relations_.is_unit()) fail(Error::Kind::Config, "monomial relations generate the unit ideal");
    return r;
}

Ring Ring::finite_product(std::vector<ChainFactor> factors) {
    if (factors.empty()) fail(Error::Kind::Config, "finite ring needs at least one chain factor");
    for (const auto& f : factors) {
        if (f.cap < 1 || f.res_deg < 1) fail(Error::Kind::Config, "invalid chain factor");
        if (!is_prime(Int(f.p))) fail(Error::Kind::Config, "chain factor base must be prime");
    }
    Ring r;
    r.kind_ = BackendKind::Finite;
    r.factors_ = std::move(factors);
    return r;
}

Ring Ring::z_mod(const Int& n) {
    if (n < 2) fail(Error::Kind::Config, "Z/n needs n >= 2");
    std::vector<ChainFactor> factors;
    Int m = n;
    for (Int p = 2; p * p <= m; ++p) {
        if (m % p != 0) continue;
        int k = 0;
        while (m % p == 0) {
            m /= p;
            ++k;
        }
        factors.push_back(ChainFactor{false, p.convert_to<std::uint32_t>(), 1, k});
    }
    if (m > 1) {
        if (m >= (Int(1) << 31)) fail(Error::Kind::Config, "Z/n prime factor too large");
        factors.push_back(ChainFactor{false, m.convert_to<std::uint32_t>(), 1, 1});
    }
    return finite_product(std::move(factors));
}

int Ring::dim() const {
    switch (kind_) {
        case BackendKind::PidZ:
        case BackendKind::PidKt:
            return 1;
        case BackendKind::Finite:
            return 0;
        case BackendKind::Monomial: {
            int best = 0;
            for (const PrimeIdeal& p : min_primes()) best = std::max(best, dim_at(p));
            return best;
        }
    }
    return 0;
}

int Ring::dim_at(const PrimeIdeal& p) const {
    check_prime(p);
    switch (p.kind) {
        case PrimeIdeal::Kind::Zero:
            return 1;
        case PrimeIdeal::Kind::PidInt:
        case PrimeIdeal::Kind::PidPoly:
        case PrimeIdeal::Kind::Factor:
            return 0;
        case PrimeIdeal::Kind::Monomial:
            return int(vars_.size()) - int(p.vars.size());
    }
    return 0;
}

void Ring::check_prime(const PrimeIdeal& p) const {
    switch (kind_) {
        case BackendKind::PidZ:
            if (p.kind == PrimeIdeal::Kind::Zero) return;
            if (p.kind != PrimeIdeal::Kind::PidInt || !is_prime(p.n))
                fail(Error::Kind::Config, "not a prime of Z");
            return;
        case BackendKind::PidKt:
            if (p.kind == PrimeIdeal::Kind::Zero) return;
            if (p.kind != PrimeIdeal::Kind::PidPoly || p.f.field() != field_ || !p.f.is_monic() ||
                !is_irreducible(p.f))
                fail(Error::Kind::Config, "not a monic irreducible of k[t]");
            return;
        case BackendKind::Monomial: {
            if (p.kind != PrimeIdeal::Kind::Monomial)
                fail(Error::Kind::Config, "monomial backend expects a variable-subset prime");
            for (int v : p.vars)
                if (v < 0 || v >= int(vars_.size()))
                    fail(Error::Kind::Config, "prime references unknown variable");
            // the prime must contain the relations: every generator must use
            // one of its variables
            for (const Mono& g : relations_.gens) {
                bool hit = false;
                for (int v : p.vars)
                    if (g[size_t(v)] > 0) hit = true;
                if (!hit)
                    fail(Error::Kind::Config,
                         "variable subset does not contain the defining relations");
            }
            return;
        }
        case BackendKind::Finite:
            if (p.kind != PrimeIdeal::Kind::Factor || p.factor < 0 ||
                p.factor >= int(factors_.size()))
                fail(Error::Kind::Config, "finite backend expects a factor-index prime");
            return;
    }
}

std::vector<PrimeIdeal> Ring::min_primes() const {
    switch (kind_) {
        case BackendKind::PidZ:
        case BackendKind::PidKt:
            return {PrimeIdeal::zero()};
        case BackendKind::Finite: {
            std::vector<PrimeIdeal> out;
            for (int i = 0; i < int(factors_.size()); ++i) out.push_back(PrimeIdeal::of_factor(i));
            return out;
        }
        case BackendKind::Monomial: {
            std::set<std::vector<int>> supports;
            for (const auto& q : irreducible_decomposition(relations_))
                supports.insert(irreducible_support(q));
            // keep inclusion-minimal supports
            std::vector<PrimeIdeal> out;
            for (const auto& s : supports) {
                bool minimal = true;
                for (const auto& t : supports)
                    if (t != s && std::includes(s.begin(), s.end(), t.begin(), t.end()))
                        minimal = false;
                if (minimal) out.push_back(PrimeIdeal::of_vars(s));
            }
            std::sort(out.begin(), out.end());
            return out;
        }
    }
    return {};
}

std::string Ring::label() const {
    switch (kind_) {
        case BackendKind::PidZ:
            return "Z";
        case BackendKind::PidKt:
            return field_.str() + "[t]";
        case BackendKind::Monomial: {
            std::string s = field_.str() + "[";
            for (size_t i = 0; i < vars_.size(); ++i) {
                if (i) s += ",";
                s += vars_[i];
            }
            s += "]";
            if (!relations_.is_zero()) s += "/" + ideal_str(relations_, vars_);
            return s;
        }
        case BackendKind::Finite: {
            // Z/n for pure integer products, otherwise the factor list
            bool pure_int = true;
            Int n = 1;
            for (const auto& f : factors_) {
                if (f.over_poly) pure_int = false;
                Int pk = 1;
                for (int i = 0; i < f.cap; ++i) pk *= f.p;
                n *= pk;
            }
            if (pure_int) return "Z/" + n.str();
            std::string s;
            for (size_t i = 0; i < factors_.size(); ++i) {
                if (i) s += " x ";
                const auto& f = factors_[i];
                if (f.over_poly) {
                    Int q = 1;
                    for (int e = 0; e < f.res_deg; ++e) q *= f.p;
                    s += "F" + q.str() + "[x]/(x^" + std::to_string(f.cap) + ")";
                } else {
                    Int pk = 1;
                    for (int e = 0; e < f.cap; ++e) pk *= f.p;
                    s += "Z/" + pk.str();
                }
            }
            return s;
        }
    }
    return "?";
}

std::string Ring::prime_label(const PrimeIdeal& p) const {
    switch (p.kind) {
        case PrimeIdeal::Kind::Zero:
            return "(0)";
        case PrimeIdeal::Kind::PidInt:
            return "(" + p.n.str() + ")";
        case PrimeIdeal::Kind::PidPoly:
            return "(" + p.f.str() + ")";
        case PrimeIdeal::Kind::Monomial: {
            if (p.vars.empty()) return "(0)";
            std::string s = "(";
            for (size_t i = 0; i < p.vars.size(); ++i) {
                if (i) s += ",";
                s += vars_[size_t(p.vars[i])];
            }
            return s + ")";
        }
        case PrimeIdeal::Kind::Factor: {
            const auto& f = factors_[size_t(p.factor)];
            // disambiguate duplicated bases with the factor index
            int same = 0;
            for (const auto& g : factors_)
                if (g.p == f.p) ++same;
            std::string base = f.over_poly ? "x" : Int(f.p).str();
            if (same > 1 || f.over_poly) base += "@" + std::to_string(p.factor);
            return "(" + base + ")";
        }
    }
    return "?";
}

SpectralPoset SpectralPoset::over(const Ring& ring, std::vector<PrimeIdeal> primes) {
    for (const auto& p : primes) ring.check_prime(p);
    std::sort(primes.begin(), primes.end());
    primes.erase(std::unique(primes.begin(), primes.end()), primes.end());
    SpectralPoset poset;
    poset.primes = std::move(primes);
    const size_t n = poset.primes.size();
    poset.specializes.assign(n, std::vector<bool>(n, false));
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j)
            poset.specializes[i][j] = prime_contains(poset.primes[i], poset.primes[j]);
    return poset;
}

int SpectralPoset::index_of(const PrimeIdeal& p) const {
    auto it = std::lower_bound(primes.begin(), primes.end(), p);
    if (it == primes.end() || !(*it == p)) return -1;
    return int(it - primes.begin());
}

}  // namespace cohclass
