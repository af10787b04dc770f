#include "cohclass/textio.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace cohclass {

namespace {

[[noreturn]] void parse_fail(const std::string& text, size_t pos, const std::string& what) {
    fail(Error::Kind::Parse,
         "parse error at position " + std::to_string(pos + 1) + " in \"" + text + "\": " + what);
}

struct Cursor {
    const std::string& s;
    size_t pos = 0;

    void skip_ws() {
        while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
    }
    bool eof() {
        skip_ws();
        return pos >= s.size();
    }
    char peek() {
        skip_ws();
        return pos < s.size() ? s[pos] : '\0';
    }
    bool eat(char c) {
        skip_ws();
        if (pos < s.size() && s[pos] == c) {
            ++pos;
            return true;
        }
        return false;
    }
    void expect(char c) {
        if (!eat(c)) parse_fail(s, pos, std::string("expected '") + c + "'");
    }
    Int integer() {
        skip_ws();
        size_t start = pos;
        if (pos < s.size() && (s[pos] == '-' || s[pos] == '+')) ++pos;
        while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
        if (pos == start || (pos == start + 1 && !std::isdigit(static_cast<unsigned char>(s[start]))))
            parse_fail(s, start, "expected an integer");
        return Int(s.substr(start, pos - start));
    }
    std::string identifier() {
        skip_ws();
        size_t start = pos;
        while (pos < s.size() && (std::isalnum(static_cast<unsigned char>(s[pos])) || s[pos] == '_'))
            ++pos;
        if (pos == start) parse_fail(s, start, "expected an identifier");
        return s.substr(start, pos - start);
    }
};

// polynomial expression grammar: sum of products of powers of atoms
Poly poly_expr(Cursor& c, FieldTag field, const std::string& var);

Poly poly_atom(Cursor& c, FieldTag field, const std::string& var) {
    c.skip_ws();
    if (c.eat('(')) {
        Poly inner = poly_expr(c, field, var);
        c.expect(')');
        return inner;
    }
    const char ch = c.peek();
    if (std::isdigit(static_cast<unsigned char>(ch))) {
        Int n = c.integer();
        if (c.eat('/')) {
            if (field.is_rational()) {
                Int d = c.integer();
                if (d == 0) parse_fail(c.s, c.pos, "zero denominator");
                return Poly::constant(Scalar::rational(Rat(n, d)));
            }
            Int d = c.integer();
            Scalar num = Scalar::from_int(n, field);
            Scalar den = Scalar::from_int(d, field);
            return Poly::constant(num / den);
        }
        return Poly::constant(Scalar::from_int(n, field));
    }
    const std::string id = c.identifier();
    if (id != var) parse_fail(c.s, c.pos, "unknown symbol '" + id + "'");
    return Poly::variable(field);
}

Poly poly_power(Cursor& c, FieldTag field, const std::string& var) {
    Poly base = poly_atom(c, field, var);
    if (c.eat('^')) {
        Int e = c.integer();
        if (e < 0) parse_fail(c.s, c.pos, "negative exponent");
        return base.pow(e.convert_to<std::uint64_t>());
    }
    return base;
}

Poly poly_term(Cursor& c, FieldTag field, const std::string& var) {
    Poly acc = poly_power(c, field, var);
    while (true) {
        c.skip_ws();
        if (c.eat('*')) {
            acc = acc * poly_power(c, field, var);
        } else if (c.pos < c.s.size() &&
                   (std::isalpha(static_cast<unsigned char>(c.s[c.pos])) || c.s[c.pos] == '(')) {
            acc = acc * poly_power(c, field, var);  // implicit multiplication, e.g. "2t"
        } else {
            break;
        }
    }
    return acc;
}

Poly poly_expr(Cursor& c, FieldTag field, const std::string& var) {
    bool neg = false;
    if (c.eat('-')) neg = true;
    Poly acc = poly_term(c, field, var);
    if (neg) acc = -acc;
    while (true) {
        if (c.eat('+')) {
            acc = acc + poly_term(c, field, var);
        } else if (c.eat('-')) {
            acc = acc - poly_term(c, field, var);
        } else {
            break;
        }
    }
    return acc;
}

std::vector<std::string> split_top_level(const std::string& s, char sep) {
    std::vector<std::string> parts;
    int depth = 0;
    std::string cur;
    for (char ch : s) {
        if (ch == '(') ++depth;
        if (ch == ')') --depth;
        if (ch == sep && depth == 0) {
            parts.push_back(cur);
            cur.clear();
        } else {
            cur += ch;
        }
    }
    parts.push_back(cur);
    return parts;
}

std::string trimmed(const std::string& s) {
    size_t a = 0, b = s.size();
    while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
    while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
    return s.substr(a, b - a);
}

}  // namespace

Poly parse_poly(const std::string& text, FieldTag field, const std::string& var) {
    Cursor c{text};
    Poly p = poly_expr(c, field, var);
    if (!c.eof()) parse_fail(text, c.pos, "trailing input");
    return p;
}

ClosedPointP1 parse_point(const std::string& text, FieldTag field) {
    if (trimmed(text) == "inf") return ClosedPointP1::infinity(field);
    Poly f = parse_poly(text, field).monic();
    if (f.degree() < 1 || !is_irreducible(f))
        fail(Error::Kind::Parse, "\"" + text + "\" is not a monic irreducible point");
    return ClosedPointP1::at(f);
}

SheafP1 parse_sheaf(const std::string& text, FieldTag field) {
    if (trimmed(text) == "0") return SheafP1::zero(field);
    std::vector<int> twists;
    std::vector<std::pair<ClosedPointP1, Partition>> torsion;
    for (const std::string& raw : split_top_level(text, '+')) {
        const std::string term = trimmed(raw);
        Cursor c{term};
        const std::string head = c.identifier();
        if (head == "O") {
            c.expect('(');
            Int n = c.integer();
            c.expect(')');
            if (!c.eof()) parse_fail(term, c.pos, "trailing input");
            twists.push_back(n.convert_to<int>());
        } else if (head == "T") {
            c.expect('(');
            // point text runs to the top-level comma
            size_t depth = 0, split = std::string::npos;
            for (size_t k = c.pos; k < term.size(); ++k) {
                if (term[k] == '(') ++depth;
                if (term[k] == ')') {
                    if (depth == 0) break;
                    --depth;
                }
                if (term[k] == ',' && depth == 0) {
                    split = k;
                    break;
                }
            }
            if (split == std::string::npos) parse_fail(term, c.pos, "expected ',' in T(point,len)");
            ClosedPointP1 x = parse_point(term.substr(c.pos, split - c.pos), field);
            Cursor rest{term};
            rest.pos = split + 1;
            Int len = rest.integer();
            rest.expect(')');
            if (!rest.eof()) parse_fail(term, rest.pos, "trailing input");
            if (len <= 0) fail(Error::Kind::Parse, "torsion length must be positive");
            torsion.emplace_back(x, Partition{len.convert_to<int>()});
        } else {
            parse_fail(term, 0, "expected O(n) or T(point,len)");
        }
    }
    return SheafP1::make(field, std::move(twists), std::move(torsion));
}

Mono parse_mono(const std::string& text, const std::vector<std::string>& vars) {
    Mono m(vars.size(), 0);
    Cursor c{text};
    if (trimmed(text) == "1") return m;
    while (true) {
        const std::string id = c.identifier();
        auto it = std::find(vars.begin(), vars.end(), id);
        if (it == vars.end()) parse_fail(text, c.pos, "unknown variable '" + id + "'");
        int e = 1;
        if (c.eat('^')) e = c.integer().convert_to<int>();
        if (e < 1) parse_fail(text, c.pos, "exponent must be positive");
        m[size_t(it - vars.begin())] += e;
        if (c.eof()) break;
        if (!c.eat('*')) {
            // allow juxtaposition without '*'
            if (!std::isalpha(static_cast<unsigned char>(c.peek())))
                parse_fail(text, c.pos, "expected '*' or end of monomial");
        }
    }
    return m;
}

namespace {

ModuleNF parse_pid_module(const Ring& ring, const std::string& text) {
    int rank = 0;
    std::vector<std::pair<PidPrime, Partition>> torsion;
    auto add_prime_power = [&](const PidPrime& p, int e) {
        for (auto& [q, part] : torsion)
            if (q == p) {
                part.push_back(e);
                return;
            }
        torsion.emplace_back(p, Partition{e});
    };
    for (const std::string& raw : split_top_level(text, '+')) {
        const std::string term = trimmed(raw);
        Cursor c{term};
        const std::string head = c.identifier();
        const std::string free_name = ring.kind() == BackendKind::PidZ ? "Z" : "R";
        if (head != free_name) parse_fail(term, 0, "expected '" + free_name + "'");
        if (c.eat('^')) {
            rank += c.integer().convert_to<int>();
            if (!c.eof()) parse_fail(term, c.pos, "trailing input");
            continue;
        }
        if (!c.eat('/')) {
            if (!c.eof()) parse_fail(term, c.pos, "trailing input");
            ++rank;
            continue;
        }
        if (ring.kind() == BackendKind::PidZ) {
            Int n = c.integer();
            if (!c.eof()) parse_fail(term, c.pos, "trailing input");
            if (n < 2) fail(Error::Kind::Parse, "modulus must be at least 2");
            for (Int p = 2; p * p <= n; ++p) {
                int e = 0;
                while (n % p == 0) {
                    n /= p;
                    ++e;
                }
                if (e > 0) add_prime_power(PidPrime::of(p), e);
            }
            if (n > 1) add_prime_power(PidPrime::of(n), 1);
        } else {
            c.expect('(');
            // the divisor may be ((f)^e) or a plain polynomial
            size_t depth = 1, end = c.pos;
            while (end < term.size() && depth > 0) {
                if (term[end] == '(') ++depth;
                if (term[end] == ')') --depth;
                ++end;
            }
            if (depth != 0) parse_fail(term, c.pos, "unbalanced parentheses");
            const std::string inner = term.substr(c.pos, end - 1 - c.pos);
            Poly f = parse_poly(inner, ring.field()).monic();
            if (f.degree() < 1) fail(Error::Kind::Parse, "divisor must be nonconstant");
            for (const auto& [q, e] : factor_poly(f)) add_prime_power(PidPrime::of(q), e);
            Cursor rest{term};
            rest.pos = end;
            if (!rest.eof()) parse_fail(term, rest.pos, "trailing input");
        }
    }
    return ModuleNF::of_pid(ring.kind(), rank, std::move(torsion));
}

ModuleNF parse_mono_module(const Ring& ring, const std::string& text) {
    std::vector<MonomialIdeal> summands;
    for (const std::string& raw : split_top_level(text, '+')) {
        const std::string term = trimmed(raw);
        if (term == "R") {
            summands.push_back(ring.relations());
            continue;
        }
        if (term.rfind("R/(", 0) != 0 || term.back() != ')')
            fail(Error::Kind::Parse, "expected R or R/(monomials) in \"" + term + "\"");
        const std::string inner = term.substr(3, term.size() - 4);
        std::vector<Mono> gens = ring.relations().gens;
        for (const std::string& g : split_top_level(inner, ','))
            gens.push_back(parse_mono(trimmed(g), ring.vars()));
        summands.push_back(make_monomial_ideal(int(ring.vars().size()), std::move(gens)));
    }
    ModuleNF m = ModuleNF::of_mono(std::move(summands));
    validate_module(ring, m);
    return m;
}

ModuleNF parse_finite_module(const Ring& ring, const std::string& text) {
    std::vector<Partition> comps(ring.factors().size());
    for (const std::string& raw : split_top_level(text, '+')) {
        const std::string term = trimmed(raw);
        if (term == "R") {
            for (size_t i = 0; i < comps.size(); ++i)
                comps[i].push_back(ring.factors()[i].cap);
            continue;
        }
        Cursor c{term};
        const std::string head = c.identifier();
        if (head == "Z") {
            c.expect('/');
            Int n = c.integer();
            if (!c.eof()) parse_fail(term, c.pos, "trailing input");
            // match a p-power against a unique integer chain factor
            int factor = -1, length = 0;
            for (size_t i = 0; i < ring.factors().size(); ++i) {
                const auto& f = ring.factors()[i];
                if (f.over_poly) continue;
                Int pk = 1;
                int e = 0;
                while (pk < n) {
                    pk *= f.p;
                    ++e;
                }
                if (pk == n && e >= 1 && e <= f.cap) {
                    if (factor >= 0) fail(Error::Kind::Parse, "ambiguous factor for " + term);
                    factor = int(i);
                    length = e;
                }
            }
            if (factor < 0) fail(Error::Kind::Parse, "no chain factor matches " + term);
            comps[size_t(factor)].push_back(length);
        } else if (head.size() >= 2 && head[0] == 'C') {
            const int idx = std::stoi(head.substr(1));
            if (idx < 0 || idx >= int(ring.factors().size()))
                fail(Error::Kind::Parse, "factor index out of range in " + term);
            c.expect('(');
            const std::string var = c.identifier();
            if (var != "x") parse_fail(term, c.pos, "expected x");
            int e = 1;
            if (c.eat('^')) e = c.integer().convert_to<int>();
            c.expect(')');
            comps[size_t(idx)].push_back(e);
        } else {
            parse_fail(term, 0, "expected Z/n or C<i>(x^j)");
        }
    }
    ModuleNF m = ModuleNF::of_finite(std::move(comps));
    validate_module(ring, m);
    return m;
}

}  // namespace

ModuleNF parse_module(const Ring& ring, const std::string& text) {
    if (trimmed(text) == "0") return ModuleNF::zero(ring);
    switch (ring.kind()) {
        case BackendKind::PidZ:
        case BackendKind::PidKt:
            return parse_pid_module(ring, text);
        case BackendKind::Monomial:
            return parse_mono_module(ring, text);
        case BackendKind::Finite:
            return parse_finite_module(ring, text);
    }
    fail(Error::Kind::Internal, "unreachable");
}

PrimeIdeal parse_prime(const Ring& ring, const std::string& text) {
    const std::string t = trimmed(text);
    if (t.size() < 3 || t.front() != '(' || t.back() != ')')
        fail(Error::Kind::Parse, "prime literal must be parenthesized: " + text);
    const std::string inner = trimmed(t.substr(1, t.size() - 2));
    PrimeIdeal p;
    switch (ring.kind()) {
        case BackendKind::PidZ:
            p = inner == "0" ? PrimeIdeal::zero() : PrimeIdeal::of_int(Int(inner));
            break;
        case BackendKind::PidKt:
            p = inner == "0" ? PrimeIdeal::zero()
                             : PrimeIdeal::of_poly(parse_poly(inner, ring.field()).monic());
            break;
        case BackendKind::Monomial: {
            std::vector<int> vars;
            if (inner != "0") {
                for (const std::string& v : split_top_level(inner, ',')) {
                    auto it = std::find(ring.vars().begin(), ring.vars().end(), trimmed(v));
                    if (it == ring.vars().end())
                        fail(Error::Kind::Parse, "unknown variable in prime: " + v);
                    vars.push_back(int(it - ring.vars().begin()));
                }
            }
            p = PrimeIdeal::of_vars(std::move(vars));
            break;
        }
        case BackendKind::Finite: {
            // accept "(p)" with a unique matching factor, or "(p@i)" / "(x@i)"
            std::string base = inner;
            int given_idx = -1;
            if (auto at = inner.find('@'); at != std::string::npos) {
                base = trimmed(inner.substr(0, at));
                given_idx = std::stoi(inner.substr(at + 1));
            }
            int found = -1;
            for (size_t i = 0; i < ring.factors().size(); ++i) {
                const auto& f = ring.factors()[i];
                const bool matches =
                    f.over_poly ? base == "x" : base == Int(f.p).str();
                if (!matches) continue;
                if (given_idx >= 0 && given_idx != int(i)) continue;
                if (found >= 0) fail(Error::Kind::Parse, "ambiguous prime " + text);
                found = int(i);
            }
            if (found < 0) fail(Error::Kind::Parse, "no factor matches prime " + text);
            p = PrimeIdeal::of_factor(found);
            break;
        }
    }
    ring.check_prime(p);
    return p;
}

std::string render_table(const std::vector<std::vector<std::string>>& rows) {
    if (rows.empty()) return "";
    std::vector<size_t> width;
    for (const auto& row : rows)
        for (size_t c = 0; c < row.size(); ++c) {
            if (width.size() <= c) width.push_back(0);
            width[c] = std::max(width[c], row[c].size());
        }
    std::ostringstream os;
    for (size_t r = 0; r < rows.size(); ++r) {
        for (size_t c = 0; c < rows[r].size(); ++c) {
            os << rows[r][c];
            if (c + 1 < rows[r].size())
                os << std::string(width[c] - rows[r][c].size() + 2, ' ');
        }
        os << "\n";
        if (r == 0) {
            size_t total = 0;
            for (size_t c = 0; c < width.size(); ++c) total += width[c] + (c + 1 < width.size() ? 2 : 0);
            os << std::string(total, '-') << "\n";
        }
    }
    return os.str();
}

}  // namespace cohclass
