#pragma once

#include <compare>
#include <string>
#include <vector>

namespace cohclass {

/// Monomial as an exponent vector over a fixed ambient variable list.
using Mono = std::vector<int>;

bool mono_divides(const Mono& a, const Mono& b);
Mono mono_lcm(const Mono& a, const Mono& b);
int mono_degree(const Mono& a);

/// Monomial ideal in the ambient polynomial ring, held by its unique minimal
/// generating set (sorted). The zero ideal is the empty list; the unit ideal
/// is generated by the constant monomial.
struct MonomialIdeal {
    int nvars = 0;
    std::vector<Mono> gens;

    bool is_zero() const { return gens.empty(); }
    bool is_unit() const;
    friend auto operator<=>(const MonomialIdeal&, const MonomialIdeal&) = default;
};

MonomialIdeal make_monomial_ideal(int nvars, std::vector<Mono> gens);
bool ideal_contains_mono(const MonomialIdeal& i, const Mono& m);
/// j subset of i, i.e. every generator of j lies in i.
bool ideal_leq(const MonomialIdeal& j, const MonomialIdeal& i);
MonomialIdeal ideal_sum(const MonomialIdeal& a, const MonomialIdeal& b);
MonomialIdeal ideal_intersect(const MonomialIdeal& a, const MonomialIdeal& b);
/// Colon ideal (i : m) for a monomial m.
MonomialIdeal ideal_colon(const MonomialIdeal& i, const Mono& m);

/// True when every minimal generator is a pure variable power (such ideals
/// are exactly the irreducible monomial ideals).
bool is_irreducible_monomial_ideal(const MonomialIdeal& i);
/// Variables occurring in an irreducible ideal: its radical as a prime.
std::vector<int> irreducible_support(const MonomialIdeal& i);

/// Irredundant irreducible decomposition by generator splitting; cached.
/// The zero ideal decomposes as itself.
std::vector<MonomialIdeal> irreducible_decomposition(const MonomialIdeal& i);

/// Associated primes of the cyclic quotient by i, each given as a sorted
/// variable subset (the empty subset encodes the zero prime).
std::vector<std::vector<int>> monomial_ass(const MonomialIdeal& i);

/// Primary component of i at an associated prime (intersection of the
/// irreducible components with that radical).
MonomialIdeal primary_component(const MonomialIdeal& i, const std::vector<int>& prime_vars);

std::string mono_str(const Mono& m, const std::vector<std::string>& vars);
std::string ideal_str(const MonomialIdeal& i, const std::vector<std::string>& vars);

}  // namespace cohclass
