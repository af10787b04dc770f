#pragma once

#include "cohclass/numeric.hpp"

#include <compare>
#include <string>

namespace cohclass {

/// Exact field element: an arbitrary-precision rational or an element of F_p.
/// Rationals are kept in lowest terms with positive denominator (cpp_rational
/// maintains that form), F_p values are reduced to [0, p).
class Scalar {
public:
    Scalar() = default;  // zero over Q

    static Scalar zero(FieldTag f) { return Scalar(f, Rat(0), 0); }
    static Scalar one(FieldTag f) { return f.is_rational() ? rational(1) : mod_p(1, f.p); }
    static Scalar rational(Rat v) { return Scalar(rational_field(), std::move(v), 0); }
    static Scalar mod_p(std::uint32_t v, std::uint32_t p) {
        return Scalar(FieldTag{p}, Rat(0), v % p);
    }
    static Scalar from_int(const Int& n, FieldTag f) {
        return f.is_rational() ? rational(Rat(n)) : mod_p(fp_reduce(n, f.p), f.p);
    }

    FieldTag field() const { return field_; }
    bool is_zero() const { return field_.is_rational() ? q_ == 0 : v_ == 0; }
    bool is_one() const { return field_.is_rational() ? q_ == 1 : v_ == 1 % field_.p; }

    const Rat& rat() const { return q_; }
    std::uint32_t residue() const { return v_; }

    Scalar operator-() const {
        return field_.is_rational() ? Scalar(field_, -q_, 0)
                                    : Scalar(field_, Rat(0), fp_neg(v_, field_.p));
    }
    Scalar operator+(const Scalar& o) const {
        check(o);
        return field_.is_rational() ? Scalar(field_, q_ + o.q_, 0)
                                    : Scalar(field_, Rat(0), fp_add(v_, o.v_, field_.p));
    }
    Scalar operator-(const Scalar& o) const { return *this + (-o); }
    Scalar operator*(const Scalar& o) const {
        check(o);
        return field_.is_rational() ? Scalar(field_, q_ * o.q_, 0)
                                    : Scalar(field_, Rat(0), fp_mul(v_, o.v_, field_.p));
    }
    Scalar inverse() const {
        if (is_zero()) fail(Error::Kind::Internal, "inverse of zero");
        return field_.is_rational() ? Scalar(field_, Rat(1) / q_, 0)
                                    : Scalar(field_, Rat(0), fp_inv(v_, field_.p));
    }
    Scalar operator/(const Scalar& o) const { return *this * o.inverse(); }

    friend bool operator==(const Scalar& a, const Scalar& b) {
        return a.field_ == b.field_ && a.q_ == b.q_ && a.v_ == b.v_;
    }
    friend std::strong_ordering operator<=>(const Scalar& a, const Scalar& b) {
        if (auto c = a.field_ <=> b.field_; c != 0) return c;
        if (a.field_.is_rational()) {
            if (a.q_ < b.q_) return std::strong_ordering::less;
            if (b.q_ < a.q_) return std::strong_ordering::greater;
            return std::strong_ordering::equal;
        }
        return a.v_ <=> b.v_;
    }

    std::string str() const {
        if (field_.is_rational()) {
            const Int num = boost::multiprecision::numerator(q_);
            const Int den = boost::multiprecision::denominator(q_);
            return den == 1 ? num.str() : num.str() + "/" + den.str();
        }
        return std::to_string(v_);
    }

private:
    Scalar(FieldTag f, Rat q, std::uint32_t v) : field_(f), q_(std::move(q)), v_(v) {}
    void check(const Scalar& o) const {
        if (field_ != o.field_) fail(Error::Kind::Internal, "mixed-field scalar arithmetic");
    }

    FieldTag field_{};
    Rat q_{};             // used iff rational
    std::uint32_t v_ = 0;  // used iff F_p
};

}  // namespace cohclass
