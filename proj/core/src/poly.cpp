#include "cohclass/poly.hpp"

#include <algorithm>
#include <map>

namespace cohclass {

void Poly::trim() {
    while (!coeffs_.empty() && coeffs_.back().is_zero()) coeffs_.pop_back();
}

Poly Poly::constant(Scalar c) {
    Poly r(c.field());
    if (!c.is_zero()) r.coeffs_ = {std::move(c)};
    return r;
}

Poly Poly::variable(FieldTag f) {
    Poly r(f);
    r.coeffs_ = {Scalar::zero(f), Scalar::one(f)};
    return r;
}

Poly Poly::from_coeffs(FieldTag f, std::vector<Scalar> coeffs) {
    Poly r(f);
    r.coeffs_ = std::move(coeffs);
    r.trim();
    return r;
}

Poly Poly::operator-() const {
    Poly r(field_);
    r.coeffs_.reserve(coeffs_.size());
    for (const auto& c : coeffs_) r.coeffs_.push_back(-c);
    return r;
}

Poly Poly::operator+(const Poly& o) const {
    Poly r(field_);
    const size_t n = std::max(coeffs_.size(), o.coeffs_.size());
    r.coeffs_.reserve(n);
    for (size_t i = 0; i < n; ++i) r.coeffs_.push_back(coeff(int(i)) + o.coeff(int(i)));
    r.trim();
    return r;
}

Poly Poly::operator-(const Poly& o) const { return *this + (-o); }

Poly Poly::operator*(const Poly& o) const {
    Poly r(field_);
    if (is_zero() || o.is_zero()) return r;
    r.coeffs_.assign(coeffs_.size() + o.coeffs_.size() - 1, Scalar::zero(field_));
    for (size_t i = 0; i < coeffs_.size(); ++i)
        for (size_t j = 0; j < o.coeffs_.size(); ++j)
            r.coeffs_[i + j] = r.coeffs_[i + j] + coeffs_[i] * o.coeffs_[j];
    r.trim();
    return r;
}

Poly Poly::operator*(const Scalar& c) const {
    Poly r(field_);
    if (c.is_zero()) return r;
    r.coeffs_.reserve(coeffs_.size());
    for (const auto& a : coeffs_) r.coeffs_.push_back(a * c);
    r.trim();
    return r;
}

std::pair<Poly, Poly> Poly::divmod(const Poly& d) const {
    if (d.is_zero()) fail(Error::Kind::Internal, "polynomial division by zero");
    Poly q(field_), r = *this;
    if (degree() < d.degree()) return {q, r};
    q.coeffs_.assign(size_t(degree() - d.degree()) + 1, Scalar::zero(field_));
    const Scalar lead_inv = d.leading().inverse();
    while (!r.is_zero() && r.degree() >= d.degree()) {
        const int k = r.degree() - d.degree();
        const Scalar c = r.leading() * lead_inv;
        q.coeffs_[size_t(k)] = c;
        for (int i = 0; i <= d.degree(); ++i)
            r.coeffs_[size_t(i + k)] = r.coeffs_[size_t(i + k)] - d.coeffs_[size_t(i)] * c;
        r.trim();
    }
    q.trim();
    return {q, r};
}

Poly Poly::monic() const {
    if (is_zero() || is_monic()) return *this;
    return *this * leading().inverse();
}

Poly Poly::derivative() const {
    Poly r(field_);
    for (size_t i = 1; i < coeffs_.size(); ++i)
        r.coeffs_.push_back(coeffs_[i] * Scalar::from_int(Int(i), field_));
    r.trim();
    return r;
}

Scalar Poly::eval(const Scalar& x) const {
    Scalar acc = Scalar::zero(field_);
    for (size_t i = coeffs_.size(); i-- > 0;) acc = acc * x + coeffs_[i];
    return acc;
}

Poly Poly::pow(std::uint64_t e) const {
    Poly acc = Poly::one(field_), base = *this;
    while (e) {
        if (e & 1) acc = acc * base;
        base = base * base;
        e >>= 1;
    }
    return acc;
}

std::strong_ordering operator<=>(const Poly& a, const Poly& b) {
    if (auto c = a.field_ <=> b.field_; c != 0) return c;
    if (auto c = a.coeffs_.size() <=> b.coeffs_.size(); c != 0) return c;
    for (size_t i = a.coeffs_.size(); i-- > 0;)
        if (auto c = a.coeffs_[i] <=> b.coeffs_[i]; c != 0) return c;
    return std::strong_ordering::equal;
}

std::string Poly::str(const std::string& var) const {
    if (is_zero()) return "0";
    std::string out;
    for (int i = degree(); i >= 0; --i) {
        const Scalar c = coeff(i);
        if (c.is_zero()) continue;
        if (!out.empty()) out += "+";
        if (i == 0 || !c.is_one()) out += c.str();
        if (i > 0) {
            if (!c.is_one()) out += "*";
            out += var;
            if (i > 1) out += "^" + std::to_string(i);
        }
    }
    return out;
}

Poly gcd(Poly a, Poly b) {
    while (!b.is_zero()) {
        Poly r = a % b;
        a = std::move(b);
        b = std::move(r);
    }
    return a.monic();
}

Poly powmod(Poly base, Int e, const Poly& mod) {
    Poly acc = Poly::one(base.field());
    base = base % mod;
    while (e > 0) {
        if ((e & 1) != 0) acc = (acc * base) % mod;
        base = (base * base) % mod;
        e >>= 1;
    }
    return acc;
}

namespace {

// --- factorization over F_p -------------------------------------------------

// f(t) = g(t^p) over the prime field, so f = (deflate(f))^p.
Poly deflate_p(const Poly& f, std::uint32_t p) {
    std::vector<Scalar> c;
    for (int i = 0; i * int(p) <= f.degree(); ++i) c.push_back(f.coeff(i * int(p)));
    return Poly::from_coeffs(f.field(), std::move(c));
}

// Deterministic sequence of splitting candidates: all polynomials of degree
// 1, 2, ... with coefficients enumerated lexicographically.
Poly nth_candidate(FieldTag field, std::uint64_t n) {
    const std::uint64_t p = field.p;
    int deg = 1;
    std::uint64_t block = (p - 1) * p;  // leading coefficient nonzero
    for (std::uint64_t seen = 0;; ++deg) {
        if (n < seen + block) {
            std::uint64_t idx = n - seen;
            std::vector<Scalar> c(size_t(deg) + 1, Scalar::zero(field));
            for (int i = 0; i < deg; ++i) {
                c[size_t(i)] = Scalar::mod_p(std::uint32_t(idx % p), field.p);
                idx /= p;
            }
            c[size_t(deg)] = Scalar::mod_p(std::uint32_t(1 + idx % (p - 1)), field.p);
            return Poly::from_coeffs(field, std::move(c));
        }
        seen += block;
        block *= p;
    }
}

void equal_degree_split(const Poly& f, int d, std::vector<Poly>& out) {
    if (f.degree() == d) {
        out.push_back(f.monic());
        return;
    }
    const FieldTag field = f.field();
    const std::uint32_t p = field.p;
    for (std::uint64_t n = 0;; ++n) {
        const Poly u = nth_candidate(field, n) % f;
        if (u.degree() <= 0) continue;
        Poly g;
        if (p == 2) {
            // trace map over F_2^d
            Poly tr = u, sq = u;
            for (int i = 1; i < d; ++i) {
                sq = (sq * sq) % f;
                tr = tr + sq;
            }
            g = gcd(f, tr);
        } else {
            Int e = (boost::multiprecision::pow(Int(p), unsigned(d)) - 1) / 2;
            Poly w = powmod(u, e, f);
            g = gcd(f, w - Poly::one(field));
        }
        if (g.degree() > 0 && g.degree() < f.degree()) {
            equal_degree_split(g, d, out);
            equal_degree_split(f / g, d, out);
            return;
        }
    }
}

// Distinct-degree then equal-degree factorization of a squarefree monic f.
void factor_squarefree_fp(Poly f, std::vector<Poly>& out) {
    const FieldTag field = f.field();
    Poly h = Poly::variable(field);
    for (int d = 1; f.degree() >= 2 * d; ++d) {
        h = powmod(h, Int(field.p), f);
        Poly g = gcd(f, h - Poly::variable(field));
        if (g.degree() > 0) {
            equal_degree_split(g, d, out);
            f = f / g;
        }
    }
    if (f.degree() > 0) out.push_back(f.monic());
}

void factor_fp(Poly f, int mult, std::map<Poly, int>& out) {
    f = f.monic();
    while (f.degree() > 0) {
        Poly d = f.derivative();
        if (d.is_zero()) {
            factor_fp(deflate_p(f, f.field().p), mult * int(f.field().p), out);
            return;
        }
        Poly w = f / gcd(f, d);  // squarefree part
        std::vector<Poly> irr;
        factor_squarefree_fp(w, irr);
        for (const Poly& q : irr) {
            int v = 0;
            while (q.divides(f)) {
                f = f / q;
                ++v;
            }
            out[q] += mult * v;
        }
        f = f.monic();
    }
}

// --- factorization over Q ----------------------------------------------------

std::vector<Int> divisors_signed(Int n) {
    if (n < 0) n = -n;
    std::vector<Int> d;
    for (Int i = 1; i * i <= n; ++i) {
        if (n % i == 0) {
            d.push_back(i);
            if (i * i != n) d.push_back(n / i);
        }
    }
    std::sort(d.begin(), d.end());
    std::vector<Int> all;
    for (const Int& x : d) {
        all.push_back(x);
        all.push_back(-x);
    }
    return all;
}

// Integer coefficient view of a primitive representative of f.
std::vector<Int> primitive_int_coeffs(const Poly& f) {
    Int lcm_den = 1;
    for (const Scalar& c : f.coeffs())
        lcm_den = boost::multiprecision::lcm(lcm_den, boost::multiprecision::denominator(c.rat()));
    std::vector<Int> w;
    for (const Scalar& c : f.coeffs()) {
        Rat v = c.rat() * lcm_den;
        w.push_back(boost::multiprecision::numerator(v));
    }
    Int g = 0;
    for (const Int& x : w) g = boost::multiprecision::gcd(g, x);
    if (g > 1)
        for (Int& x : w) x /= g;
    return w;
}

Int eval_int(const std::vector<Int>& c, const Int& x) {
    Int acc = 0;
    for (size_t i = c.size(); i-- > 0;) acc = acc * x + c[i];
    return acc;
}

// Lagrange interpolation through (x_i, y_i); returns {} when non-integral.
std::vector<Rat> interpolate(const std::vector<Int>& xs, const std::vector<Int>& ys) {
    const size_t n = xs.size();
    std::vector<Rat> acc(n, Rat(0));
    for (size_t i = 0; i < n; ++i) {
        std::vector<Rat> basis = {Rat(1)};
        Rat denom = 1;
        for (size_t j = 0; j < n; ++j) {
            if (j == i) continue;
            basis.resize(basis.size() + 1, Rat(0));
            for (size_t k = basis.size(); k-- > 1;)
                basis[k] = basis[k - 1] - Rat(xs[j]) * basis[k];
            basis[0] = -Rat(xs[j]) * basis[0];
            denom *= Rat(xs[i]) - Rat(xs[j]);
        }
        for (size_t k = 0; k < basis.size(); ++k) acc[k] += basis[k] * Rat(ys[i]) / denom;
    }
    return acc;
}

// Kronecker search for a nontrivial factor of a primitive squarefree integer
// polynomial with no rational roots. Returns zero poly when irreducible.
Poly kronecker_factor(const Poly& f) {
    std::vector<Int> c = primitive_int_coeffs(f);
    const int n = f.degree();
    for (int d = 2; 2 * d <= n; ++d) {
        std::vector<Int> xs;
        for (int i = 0; int(xs.size()) <= d; ++i) {
            Int x = (i % 2 == 0) ? Int(i / 2) : Int(-(i / 2 + 1));
            xs.push_back(x);
        }
        std::vector<std::vector<Int>> choices;
        for (const Int& x : xs) choices.push_back(divisors_signed(eval_int(c, x)));
        std::vector<size_t> idx(xs.size(), 0);
        while (true) {
            std::vector<Int> ys;
            for (size_t i = 0; i < xs.size(); ++i) ys.push_back(choices[i][idx[i]]);
            std::vector<Rat> cand = interpolate(xs, ys);
            std::vector<Scalar> cs;
            for (const Rat& v : cand) cs.push_back(Scalar::rational(v));
            Poly g = Poly::from_coeffs(rational_field(), cs);
            if (g.degree() == d && g.divides(f)) return g;
            size_t k = 0;
            while (k < idx.size() && ++idx[k] == choices[k].size()) idx[k++] = 0;
            if (k == idx.size()) break;
        }
    }
    return Poly();
}

void factor_q_squarefree(Poly f, int mult, std::map<Poly, int>& out) {
    f = f.monic();
    if (f.degree() == 0) return;
    if (f.degree() == 1) {
        out[f] += mult;
        return;
    }
    // strip rational roots
    if (f.coeff(0).is_zero()) {
        Poly lin = Poly::variable(rational_field());
        out[lin] += mult;
        factor_q_squarefree(f / lin, mult, out);
        return;
    }
    std::vector<Int> c = primitive_int_coeffs(f);
    for (const Int& num : divisors_signed(c.front())) {
        for (const Int& den : divisors_signed(c.back())) {
            if (den <= 0) continue;
            Rat root(num, den);
            Scalar r = Scalar::rational(root);
            if (f.eval(r).is_zero()) {
                Poly lin = Poly::variable(rational_field()) - Poly::constant(r);
                out[lin] += mult;
                factor_q_squarefree(f / lin, mult, out);
                return;
            }
        }
    }
    if (f.degree() <= 3) {  // no roots, low degree: irreducible
        out[f] += mult;
        return;
    }
    Poly g = kronecker_factor(f);
    if (g.is_zero()) {
        out[f] += mult;
        return;
    }
    factor_q_squarefree(g, mult, out);
    factor_q_squarefree(f / g, mult, out);
}

void factor_q(Poly f, std::map<Poly, int>& out) {
    f = f.monic();
    while (f.degree() > 0) {
        Poly w = f / gcd(f, f.derivative());
        std::map<Poly, int> part;
        factor_q_squarefree(w, 1, part);
        for (const auto& [q, m] : part) {
            int v = 0;
            while (q.divides(f)) {
                f = f / q;
                ++v;
            }
            out[q] += v;
        }
    }
}

}  // namespace

std::vector<std::pair<Poly, int>> factor_poly(const Poly& f) {
    if (f.is_zero()) fail(Error::Kind::Config, "cannot factor the zero polynomial");
    std::map<Poly, int> acc;
    if (f.field().is_rational())
        factor_q(f, acc);
    else
        factor_fp(f, 1, acc);
    return {acc.begin(), acc.end()};
}

bool is_irreducible(const Poly& f) {
    if (f.degree() <= 0) return false;
    if (f.degree() == 1) return true;
    auto fs = factor_poly(f);
    return fs.size() == 1 && fs[0].second == 1;
}

std::vector<Poly> irreducibles_up_to_degree(FieldTag field, int d) {
    if (field.is_rational())
        fail(Error::Kind::Config, "irreducible enumeration over Q is an infinite set");
    if (d < 1) fail(Error::Kind::Config, "irreducible enumeration needs degree bound >= 1");
    const std::uint32_t p = field.p;
    std::vector<Poly> out;
    for (int deg = 1; deg <= d; ++deg) {
        // lexicographic on (a_{deg-1}, ..., a_0), leading coefficient 1
        std::vector<std::uint32_t> a(size_t(deg), 0);
        while (true) {
            std::vector<Scalar> c(size_t(deg) + 1, Scalar::zero(field));
            for (int i = 0; i < deg; ++i) c[size_t(i)] = Scalar::mod_p(a[size_t(deg - 1 - i)], p);
            c[size_t(deg)] = Scalar::one(field);
            Poly f = Poly::from_coeffs(field, std::move(c));
            bool irr = true;
            for (const Poly& q : out) {
                if (2 * q.degree() > deg) break;
                if (q.divides(f)) {
                    irr = false;
                    break;
                }
            }
            if (irr) out.push_back(f);
            size_t k = a.size();
            while (k > 0) {
                if (++a[k - 1] < p) break;
                a[k - 1] = 0;
                --k;
            }
            if (k == 0) break;
        }
    }
    return out;
}

}  // namespace cohclass
