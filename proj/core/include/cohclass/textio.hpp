#pragma once

#include "cohclass/module.hpp"
#include "cohclass/sheaf.hpp"

#include <string>
#include <vector>

namespace cohclass {

/// Univariate polynomial literal, e.g. "t^2+t+1" or "2*t-1/3".
Poly parse_poly(const std::string& text, FieldTag field, const std::string& var = "t");

/// Closed point of P^1: "inf" or a monic irreducible polynomial in t.
ClosedPointP1 parse_point(const std::string& text, FieldTag field);

/// Sheaf literal: "0", or "+"-joined terms "O(n)" and "T(point,len)".
SheafP1 parse_sheaf(const std::string& text, FieldTag field);

/// Monomial in the ring's variables, e.g. "x^2*y".
Mono parse_mono(const std::string& text, const std::vector<std::string>& vars);

/// Module literal over the given backend:
///   PID Z:        "Z", "Z^2", "Z/12", sums with "+"
///   PID k[t]:     "R", "R^2", "R/(f)", "R/((f)^e)"
///   monomial:     "R", "R/(x^2,y)" (relations are implicitly included)
///   finite:       "R", "Z/p^k" pieces, "C<i>(x^j)" for polynomial factors
ModuleNF parse_module(const Ring& ring, const std::string& text);

/// Prime ideal literal: "(0)", "(2)", "(t^2+t+1)", "(x,y)"; factor-index
/// primes of finite products accept "(p)" when the base is unique.
PrimeIdeal parse_prime(const Ring& ring, const std::string& text);

/// Fixed-width plain-text table rendering.
std::string render_table(const std::vector<std::vector<std::string>>& rows);

}  // namespace cohclass
