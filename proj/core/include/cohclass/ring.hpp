#pragma once

#include "cohclass/monomial.hpp"
#include "cohclass/numeric.hpp"
#include "cohclass/poly.hpp"

#include <compare>
#include <string>
#include <vector>

namespace cohclass {

enum class BackendKind { PidZ, PidKt, Monomial, Finite };

/// One chain-ring factor of a finite product: Z/p^k or F_q[x]/(x^m).
struct ChainFactor {
    bool over_poly = false;  // false: Z/p^cap, true: F_{p^res_deg}[x]/(x^cap)
    std::uint32_t p = 2;
    int res_deg = 1;
    int cap = 1;

    friend auto operator<=>(const ChainFactor&, const ChainFactor&) = default;
};

/// Prime ideal of an affine backend. The payload depends on the backend:
/// a prime integer, a monic irreducible, a variable subset, or a factor
/// index of a finite product.
struct PrimeIdeal {
    enum class Kind { Zero, PidInt, PidPoly, Monomial, Factor };
    Kind kind = Kind::Zero;
    Int n;
    Poly f;
    std::vector<int> vars;
    int factor = 0;

    static PrimeIdeal zero() { return PrimeIdeal{}; }
    static PrimeIdeal of_int(Int p);
    static PrimeIdeal of_poly(Poly f);
    static PrimeIdeal of_vars(std::vector<int> vars);
    static PrimeIdeal of_factor(int idx);

    friend bool operator==(const PrimeIdeal&, const PrimeIdeal&) = default;
    friend std::strong_ordering operator<=>(const PrimeIdeal& a, const PrimeIdeal& b);
};

/// a contains b as ideals; specialization order is b generalizes a.
bool prime_contains(const PrimeIdeal& a, const PrimeIdeal& b);

/// Commutative ring descriptor for the affine backends.
class Ring {
public:
    static Ring integers();
    static Ring polynomials(FieldTag coefficient_field);
    static Ring monomial_quotient(FieldTag field, std::vector<std::string> vars,
                                  std::vector<Mono> ideal_gens);
    static Ring finite_product(std::vector<ChainFactor> factors);
    static Ring z_mod(const Int& n);

    BackendKind kind() const { return kind_; }
    FieldTag field() const { return field_; }
    const std::vector<std::string>& vars() const { return vars_; }
    const MonomialIdeal& relations() const { return relations_; }
    const std::vector<ChainFactor>& factors() const { return factors_; }

    int dim() const;
    /// Krull dimension of R/p for a prime of this ring.
    int dim_at(const PrimeIdeal& p) const;
    /// Validates backend/payload agreement and mathematical legality.
    void check_prime(const PrimeIdeal& p) const;

    std::vector<PrimeIdeal> min_primes() const;
    std::string label() const;
    std::string prime_label(const PrimeIdeal& p) const;

private:
    Ring() = default;
    BackendKind kind_ = BackendKind::PidZ;
    FieldTag field_{};
    std::vector<std::string> vars_;
    MonomialIdeal relations_;
    std::vector<ChainFactor> factors_;
};

/// Finite set of tracked primes under the specialization order (p below q
/// when p contains q as ideals): the combinatorial shadow of Spec.
struct SpectralPoset {
    std::vector<PrimeIdeal> primes;              // canonical order
    std::vector<std::vector<bool>> specializes;  // specializes[i][j]: p_i <= p_j

    static SpectralPoset over(const Ring& ring, std::vector<PrimeIdeal> primes);
    int index_of(const PrimeIdeal& p) const;
    bool leq(int i, int j) const { return specializes[size_t(i)][size_t(j)]; }
};

std::strong_ordering cmp_int(const Int& a, const Int& b);

}  // namespace cohclass
