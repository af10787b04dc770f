#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <boost/multiprecision/miller_rabin.hpp>

#include <compare>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace cohclass {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

/// Runtime error with a machine-readable kind, surfaced by the CLI.
class Error : public std::runtime_error {
public:
    enum class Kind {
        Parse,
        Config,
        DimensionTooLarge,
        ZeroModule,
        WindowTooSmall,
        UnsupportedBackend,
        Internal,
    };

    Error(Kind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
    Kind kind() const { return kind_; }

private:
    Kind kind_;
};

[[noreturn]] inline void fail(Error::Kind k, const std::string& msg) { throw Error(k, msg); }

/// Base field of polynomial data: the rationals when p == 0, else F_p.
struct FieldTag {
    std::uint32_t p = 0;

    bool is_rational() const { return p == 0; }
    friend auto operator<=>(const FieldTag&, const FieldTag&) = default;

    std::string str() const { return p == 0 ? "Q" : "F" + std::to_string(p); }
};

inline FieldTag rational_field() { return FieldTag{0}; }

inline bool is_prime(const Int& n) {
    if (n < 2) return false;
    if (n < 4) return true;
    if (n % 2 == 0) return false;
    return boost::multiprecision::miller_rabin_test(n, 32);
}

inline FieldTag prime_field(std::uint32_t p) {
    if (p < 2 || p >= (1u << 31) || !is_prime(Int(p)))
        fail(Error::Kind::Config, "prime field modulus must be a prime below 2^31");
    return FieldTag{p};
}

// F_p arithmetic on canonical representatives in [0, p).
inline std::uint32_t fp_add(std::uint32_t a, std::uint32_t b, std::uint32_t p) {
    std::uint64_t s = std::uint64_t(a) + b;
    return std::uint32_t(s >= p ? s - p : s);
}
inline std::uint32_t fp_neg(std::uint32_t a, std::uint32_t p) { return a == 0 ? 0 : p - a; }
inline std::uint32_t fp_sub(std::uint32_t a, std::uint32_t b, std::uint32_t p) {
    return fp_add(a, fp_neg(b, p), p);
}
inline std::uint32_t fp_mul(std::uint32_t a, std::uint32_t b, std::uint32_t p) {
    return std::uint32_t((std::uint64_t(a) * b) % p);
}

inline std::uint32_t fp_pow(std::uint32_t a, std::uint64_t e, std::uint32_t p) {
    std::uint32_t r = 1 % p;
    while (e) {
        if (e & 1) r = fp_mul(r, a, p);
        a = fp_mul(a, a, p);
        e >>= 1;
    }
    return r;
}

inline std::uint32_t fp_inv(std::uint32_t a, std::uint32_t p) {
    if (a == 0) fail(Error::Kind::Internal, "division by zero in F_p");
    std::int64_t t = 0, new_t = 1;
    std::int64_t r = p, new_r = a;
    while (new_r != 0) {
        std::int64_t q = r / new_r;
        t = std::exchange(new_t, t - q * new_t);
        r = std::exchange(new_r, r - q * new_r);
    }
    if (t < 0) t += p;
    return std::uint32_t(t);
}

inline std::uint32_t fp_reduce(const Int& n, std::uint32_t p) {
    Int r = n % p;
    if (r < 0) r += p;
    return r.convert_to<std::uint32_t>();
}

inline std::string int_str(const Int& n) { return n.str(); }

}  // namespace cohclass
