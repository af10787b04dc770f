#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "cohclass/poly.hpp"

#include <set>

using namespace cohclass;

namespace {

Poly make(FieldTag f, std::initializer_list<int> coeffs_low_to_high) {
    std::vector<Scalar> c;
    for (int x : coeffs_low_to_high) c.push_back(Scalar::from_int(Int(x), f));
    return Poly::from_coeffs(f, std::move(c));
}

// Exhaustive root search: the independent check for small-field factoring.
std::set<std::uint32_t> roots_by_search(const Poly& f) {
    std::set<std::uint32_t> out;
    for (std::uint32_t a = 0; a < f.field().p; ++a)
        if (f.eval(Scalar::mod_p(a, f.field().p)).is_zero()) out.insert(a);
    return out;
}

}  // namespace

TEST_CASE("polynomial arithmetic over F_p") {
    const FieldTag f3 = prime_field(3);
    const Poly t = Poly::variable(f3);
    const Poly a = make(f3, {1, 0, 1});  // t^2 + 1
    const Poly b = make(f3, {2, 1});     // t + 2

    CHECK(a.degree() == 2);
    CHECK((a * b).degree() == 3);
    auto [q, r] = a.divmod(b);
    CHECK(q * b + r == a);
    CHECK(r.degree() < b.degree());
    CHECK(Poly::zero(f3).degree() == Poly::kMinusInfinity);
    CHECK(gcd(a * b, b) == b.monic());
    CHECK(t.str() == "t");
    CHECK(make(f3, {1, 2, 1}).str() == "t^2+2*t+1");
}

TEST_CASE("factor t over F_2 is already irreducible") {
    const FieldTag f2 = prime_field(2);
    auto fs = factor_poly(Poly::variable(f2));
    REQUIRE(fs.size() == 1);
    CHECK(fs[0].first == Poly::variable(f2));
    CHECK(fs[0].second == 1);
}

TEST_CASE("factor t^2 - 1 over F_3 splits into linear factors found by root search") {
    const FieldTag f3 = prime_field(3);
    const Poly f = make(f3, {2, 0, 1});  // t^2 + 2 = t^2 - 1
    auto roots = roots_by_search(f);
    CHECK(roots == std::set<std::uint32_t>{1, 2});
    auto fs = factor_poly(f);
    REQUIRE(fs.size() == 2);
    for (const auto& [g, m] : fs) {
        CHECK(g.degree() == 1);
        CHECK(m == 1);
        CHECK(roots.count(fp_neg(g.coeff(0).residue(), 3)) == 1);
    }
}

TEST_CASE("t^2 + 1 over F_3 has no roots and degree 2, hence irreducible") {
    const FieldTag f3 = prime_field(3);
    const Poly f = make(f3, {1, 0, 1});
    CHECK(roots_by_search(f).empty());
    auto fs = factor_poly(f);
    REQUIRE(fs.size() == 1);
    CHECK(fs[0].first == f);
    CHECK(fs[0].second == 1);
    CHECK(is_irreducible(f));
}

TEST_CASE("factor round-trip: all nonzero polynomials of degree <= 5 over F_2 and F_3") {
    for (std::uint32_t p : {2u, 3u}) {
        const FieldTag f = prime_field(p);
        // enumerate polynomials by coefficient odometer up to degree 5
        std::vector<std::uint32_t> a(6, 0);
        while (true) {
            size_t k = 0;
            while (k < a.size() && ++a[k] == p) a[k++] = 0;
            if (k == a.size()) break;
            std::vector<Scalar> c;
            for (std::uint32_t x : a) c.push_back(Scalar::mod_p(x, p));
            const Poly g = Poly::from_coeffs(f, std::move(c));
            if (g.is_zero() || g.degree() < 1) continue;
            auto fs = factor_poly(g);
            Poly prod = Poly::constant(g.leading());
            for (const auto& [q, m] : fs) {
                CHECK(q.is_monic());
                CHECK(is_irreducible(q));
                prod = prod * q.pow(std::uint64_t(m));
            }
            REQUIRE(prod == g);
        }
    }
}

TEST_CASE("irreducibles over F_2 up to degree 2") {
    const FieldTag f2 = prime_field(2);
    auto irr1 = irreducibles_up_to_degree(f2, 1);
    REQUIRE(irr1.size() == 2);
    CHECK(irr1[0] == make(f2, {0, 1}));
    CHECK(irr1[1] == make(f2, {1, 1}));
    auto irr2 = irreducibles_up_to_degree(f2, 2);
    REQUIRE(irr2.size() == 3);
    CHECK(irr2[2] == make(f2, {1, 1, 1}));
}

TEST_CASE("all monic linears over F_3 are irreducible") {
    const FieldTag f3 = prime_field(3);
    auto irr = irreducibles_up_to_degree(f3, 1);
    REQUIRE(irr.size() == 3);
    CHECK(irr[0] == make(f3, {0, 1}));
    CHECK(irr[1] == make(f3, {1, 1}));
    CHECK(irr[2] == make(f3, {2, 1}));
}

TEST_CASE("irreducible counts match the necklace formula up to degree 4") {
    // #monic irreducibles of degree d over F_p = (1/d) sum_{e | d} mu(e) p^{d/e}
    auto necklace = [](std::uint64_t p, int d) -> std::uint64_t {
        auto mobius = [](int n) {
            int m = 1;
            for (int q = 2; q * q <= n; ++q)
                if (n % q == 0) {
                    n /= q;
                    if (n % q == 0) return 0;
                    m = -m;
                }
            if (n > 1) m = -m;
            return m;
        };
        std::int64_t s = 0;
        for (int e = 1; e <= d; ++e) {
            if (d % e != 0) continue;
            std::uint64_t pw = 1;
            for (int i = 0; i < d / e; ++i) pw *= p;
            s += mobius(e) * std::int64_t(pw);
        }
        return std::uint64_t(s) / std::uint64_t(d);
    };
    for (std::uint32_t p : {2u, 3u, 5u}) {
        auto irr = irreducibles_up_to_degree(prime_field(p), 4);
        for (int d = 1; d <= 4; ++d) {
            std::uint64_t count = 0;
            for (const Poly& g : irr)
                if (g.degree() == d) ++count;
            CHECK(count == necklace(p, d));
        }
    }
}

TEST_CASE("factorization over Q: roots, quadratics, quartic products") {
    const FieldTag q = rational_field();
    const Poly t = Poly::variable(q);
    const Poly one = Poly::one(q);

    SUBCASE("t^2 - 1") {
        auto fs = factor_poly(t * t - one);
        REQUIRE(fs.size() == 2);
        CHECK(fs[0].first * fs[1].first == t * t - one);
    }
    SUBCASE("t^2 + 1 irreducible") {
        auto fs = factor_poly(t * t + one);
        REQUIRE(fs.size() == 1);
        CHECK(fs[0].second == 1);
    }
    SUBCASE("(t^2+1)(t^2-2) splits into two irreducible quadratics") {
        const Poly f = (t * t + one) * (t * t - one - one);
        auto fs = factor_poly(f);
        REQUIRE(fs.size() == 2);
        for (const auto& [g, m] : fs) {
            CHECK(g.degree() == 2);
            CHECK(m == 1);
        }
    }
    SUBCASE("(t-1)^2 (t+2) with multiplicity") {
        const Poly f = (t - one) * (t - one) * (t + one + one);
        auto fs = factor_poly(f);
        REQUIRE(fs.size() == 2);
        int total = 0;
        for (const auto& [g, m] : fs) total += m * g.degree();
        CHECK(total == 3);
    }
    SUBCASE("rational root 1/2") {
        const Poly f = make(q, {-1, 2});  // 2t - 1
        auto fs = factor_poly(f.monic() * (t + one));
        REQUIRE(fs.size() == 2);
    }
}

TEST_CASE("rational factorization of a degree-six product of irreducible cubics") {
    const FieldTag q = rational_field();
    const Poly t = Poly::variable(q);
    const Poly one = Poly::one(q);
    const Poly cubic1 = t * t * t + t + one;          // no rational roots
    const Poly cubic2 = t * t * t + one + one;        // t^3 + 2
    auto fs = factor_poly(cubic1 * cubic2);
    REQUIRE(fs.size() == 2);
    Poly prod = Poly::one(q);
    for (const auto& [g, m] : fs) {
        CHECK(g.degree() == 3);
        CHECK(m == 1);
        prod = prod * g.pow(std::uint64_t(m));
    }
    CHECK(prod == cubic1 * cubic2);
}

TEST_CASE("quartic irreducible times quadratic over Q") {
    const FieldTag q = rational_field();
    const Poly t = Poly::variable(q);
    const Poly one = Poly::one(q);
    const Poly quartic = t.pow(4) + t + one;
    auto fs = factor_poly(quartic * (t * t + one));
    REQUIRE(fs.size() == 2);
    int degs = 0;
    for (const auto& [g, m] : fs) degs += g.degree() * m;
    CHECK(degs == 6);
}
