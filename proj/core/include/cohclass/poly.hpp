#pragma once

#include "cohclass/scalar.hpp"

#include <limits>
#include <utility>
#include <vector>

namespace cohclass {

/// Dense univariate polynomial over Q or F_p. The coefficient list never
/// carries a trailing zero; the zero polynomial has an empty list and its
/// degree is the kMinusInfinity sentinel.
class Poly {
public:
    static constexpr int kMinusInfinity = std::numeric_limits<int>::min();

    Poly() = default;  // zero over Q
    explicit Poly(FieldTag f) : field_(f) {}

    static Poly zero(FieldTag f) { return Poly(f); }
    static Poly one(FieldTag f) { return constant(Scalar::one(f)); }
    static Poly constant(Scalar c);
    static Poly variable(FieldTag f);
    static Poly from_coeffs(FieldTag f, std::vector<Scalar> coeffs);

    FieldTag field() const { return field_; }
    int degree() const { return coeffs_.empty() ? kMinusInfinity : int(coeffs_.size()) - 1; }
    bool is_zero() const { return coeffs_.empty(); }
    bool is_constant() const { return coeffs_.size() <= 1; }
    bool is_one() const { return coeffs_.size() == 1 && coeffs_[0].is_one(); }
    bool is_monic() const { return !coeffs_.empty() && coeffs_.back().is_one(); }

    Scalar coeff(int i) const {
        return (i < 0 || i >= int(coeffs_.size())) ? Scalar::zero(field_) : coeffs_[size_t(i)];
    }
    Scalar leading() const { return coeff(degree()); }
    const std::vector<Scalar>& coeffs() const { return coeffs_; }

    Poly operator-() const;
    Poly operator+(const Poly& o) const;
    Poly operator-(const Poly& o) const;
    Poly operator*(const Poly& o) const;
    Poly operator*(const Scalar& c) const;

    /// Euclidean division; requires a nonzero divisor with invertible leading
    /// coefficient (always true over a field).
    std::pair<Poly, Poly> divmod(const Poly& d) const;
    Poly operator/(const Poly& d) const { return divmod(d).first; }
    Poly operator%(const Poly& d) const { return divmod(d).second; }
    bool divides(const Poly& m) const { return !is_zero() && m.divmod(*this).second.is_zero(); }

    Poly monic() const;
    Poly derivative() const;
    Scalar eval(const Scalar& x) const;
    Poly pow(std::uint64_t e) const;

    friend bool operator==(const Poly& a, const Poly& b) {
        return a.field_ == b.field_ && a.coeffs_ == b.coeffs_;
    }
    friend std::strong_ordering operator<=>(const Poly& a, const Poly& b);

    std::string str(const std::string& var = "t") const;

private:
    void trim();

    FieldTag field_{};
    std::vector<Scalar> coeffs_;  // coeffs_[i] multiplies var^i
};

Poly gcd(Poly a, Poly b);  // monic gcd, zero if both zero
Poly powmod(Poly base, Int e, const Poly& mod);

bool is_irreducible(const Poly& f);

/// Factors a nonzero polynomial over F_p or Q into monic irreducibles with
/// multiplicities, sorted. The discarded unit is leading(f) (over Q after
/// clearing nothing: factors are monic over the field itself).
std::vector<std::pair<Poly, int>> factor_poly(const Poly& f);

/// All monic irreducibles of degree <= d over F_p, sorted by degree then by
/// the coefficient tuple read from the top. Rejected over Q.
std::vector<Poly> irreducibles_up_to_degree(FieldTag f, int d);

}  // namespace cohclass
