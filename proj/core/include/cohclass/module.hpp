#pragma once

#include "cohclass/localtype.hpp"
#include "cohclass/ring.hpp"

#include <compare>
#include <variant>
#include <vector>

namespace cohclass {

/// Prime element of a PID backend: a prime integer or a monic irreducible.
struct PidPrime {
    bool is_poly = false;
    Int n;
    Poly f;

    static PidPrime of(Int p) {
        PidPrime out;
        out.n = std::move(p);
        return out;
    }
    static PidPrime of(Poly f) {
        PidPrime out;
        out.is_poly = true;
        out.f = std::move(f);
        return out;
    }
    PrimeIdeal to_prime() const {
        return is_poly ? PrimeIdeal::of_poly(f) : PrimeIdeal::of_int(n);
    }
    friend bool operator==(const PidPrime&, const PidPrime&) = default;
    friend std::strong_ordering operator<=>(const PidPrime& a, const PidPrime& b) {
        if (auto c = a.is_poly <=> b.is_poly; c != 0) return c;
        if (a.is_poly) return a.f <=> b.f;
        return cmp_int(a.n, b.n);
    }
};

struct PidModule {
    int rank = 0;
    // sorted by prime; partitions nonempty, weakly decreasing
    std::vector<std::pair<PidPrime, Partition>> torsion;
    friend bool operator==(const PidModule&, const PidModule&) = default;
};

struct MonoModule {
    std::vector<MonomialIdeal> summands;  // sorted; no unit ideals
    friend bool operator==(const MonoModule&, const MonoModule&) = default;
};

struct FiniteModule {
    std::vector<Partition> comps;  // one per chain factor
    friend bool operator==(const FiniteModule&, const FiniteModule&) = default;
};

/// Backend-specific normal form of a finitely generated module.
class ModuleNF {
public:
    BackendKind kind = BackendKind::PidZ;
    PidModule pid;
    MonoModule mono;
    FiniteModule finite;

    static ModuleNF zero(const Ring& ring);
    static ModuleNF ring_module(const Ring& ring);
    static ModuleNF of_pid(BackendKind kind, int rank,
                           std::vector<std::pair<PidPrime, Partition>> torsion);
    static ModuleNF of_mono(std::vector<MonomialIdeal> summands);
    static ModuleNF of_finite(std::vector<Partition> comps);

    bool is_zero() const;
    friend bool operator==(const ModuleNF&, const ModuleNF&) = default;
    friend std::strong_ordering operator<=>(const ModuleNF& a, const ModuleNF& b);
};

void validate_module(const Ring& ring, const ModuleNF& m);
std::string module_label(const Ring& ring, const ModuleNF& m);

// --- Ass / Supp / Assh calculus and the associated predicates ---------------

std::vector<PrimeIdeal> module_ass(const Ring& ring, const ModuleNF& m);
std::vector<PrimeIdeal> module_min_ass(const Ring& ring, const ModuleNF& m);
std::vector<PrimeIdeal> module_assh(const Ring& ring, const ModuleNF& m);
/// Support inside the tracked poset: specialization closure of the minimal
/// support primes.
std::vector<PrimeIdeal> module_supp(const Ring& ring, const ModuleNF& m,
                                    const SpectralPoset& poset);
/// Krull dimension; INT_MIN sentinel for the zero module.
int module_dim(const Ring& ring, const ModuleNF& m);
constexpr int kDimZeroModule = std::numeric_limits<int>::min();

bool is_torsionfree(const Ring& ring, const ModuleNF& m);
bool is_pure(const Ring& ring, const ModuleNF& m);
bool is_maximal_pure(const Ring& ring, const ModuleNF& m);
bool is_cm_dim_le1(const Ring& ring, const ModuleNF& m);

std::vector<std::pair<PrimeIdeal, ModuleNF>> primary_filtration(const Ring& ring,
                                                                const ModuleNF& m);

// --- windows and windowed enumeration ----------------------------------------

struct PidWindow {
    std::vector<PidPrime> primes;
    int max_exponent = 1;
    int max_rank = 0;
};
struct FiniteWindow {
    int max_total_length = 1;
};
struct MonoWindow {
    std::vector<MonomialIdeal> cyclics;
    int max_summands = 1;
};

using AffineWindow = std::variant<PidWindow, FiniteWindow, MonoWindow>;

void validate_window(const Ring& ring, const AffineWindow& w);
/// Primes tracked by the window: the PID zero ideal plus the window primes,
/// every monomial prime, or every factor.
std::vector<PrimeIdeal> window_primes(const Ring& ring, const AffineWindow& w);
bool in_window(const Ring& ring, const AffineWindow& w, const ModuleNF& m);
/// Complete duplicate-free list of iso classes inside the window bounds,
/// canonically sorted.
std::vector<ModuleNF> enumerate_window(const Ring& ring, const AffineWindow& w);

// --- structural operations (PID and finite backends) --------------------------

ModuleNF direct_sum(const Ring& ring, const ModuleNF& a, const ModuleNF& b);
std::vector<ModuleNF> module_summands(const Ring& ring, const ModuleNF& m);
/// Tensor product over PID / finite backends; unsupported over monomial
/// quotients (general tensors there would need syzygies).
ModuleNF tensor_module(const Ring& ring, const ModuleNF& a, const ModuleNF& b);

/// Existence of a short exact sequence 0 -> a -> e -> b -> 0.
bool module_triple_exists(const Ring& ring, const ModuleNF& a, const ModuleNF& e,
                          const ModuleNF& b);

/// Type-level tests and complete (unwindowed) submodule type lists, for the
/// PID and finite backends.
bool is_submodule_type(const Ring& ring, const ModuleNF& sub, const ModuleNF& of);
bool is_module_quotient_type(const Ring& ring, const ModuleNF& of, const ModuleNF& quot);
std::vector<ModuleNF> all_submodule_types(const Ring& ring, const ModuleNF& m);

std::vector<ModuleNF> submodules_window(const Ring& ring, const ModuleNF& m,
                                        const AffineWindow& w);
std::vector<ModuleNF> quotients_window(const Ring& ring, const ModuleNF& m,
                                       const AffineWindow& w);
std::vector<ModuleNF> extensions_window(const Ring& ring, const ModuleNF& a, const ModuleNF& b,
                                        const AffineWindow& w);
std::vector<ModuleNF> images_window(const Ring& ring, const ModuleNF& m, const ModuleNF& n,
                                    const AffineWindow& w);
std::vector<ModuleNF> kernels_window(const Ring& ring, const ModuleNF& m, const ModuleNF& n,
                                     const AffineWindow& w);
std::vector<ModuleNF> cokernels_window(const Ring& ring, const ModuleNF& m, const ModuleNF& n,
                                       const AffineWindow& w);

/// Short exact sequences with all terms inside the window universe. For the
/// PID and finite backends this is complete; over a monomial quotient it is
/// the generating family built from colon sequences of cyclics and direct
/// sums (sound: every returned triple is exact).
struct Conflation {
    ModuleNF sub, mid, quot;
};
std::vector<Conflation> window_conflations(const Ring& ring,
                                           const std::vector<ModuleNF>& universe,
                                           const AffineWindow& w);

}  // namespace cohclass
