#pragma once

#include "cohclass/partition.hpp"
#include "cohclass/poly.hpp"

#include <compare>
#include <optional>
#include <vector>

namespace cohclass {

/// Closed point of the projective line: a monic irreducible over the base
/// field, or the point at infinity (degree 1).
struct ClosedPointP1 {
    bool at_infinity = false;
    Poly minpoly;  // monic irreducible; unused when at_infinity

    static ClosedPointP1 infinity(FieldTag field);
    static ClosedPointP1 at(Poly monic_irreducible);

    int degree() const { return at_infinity ? 1 : minpoly.degree(); }
    FieldTag field() const { return minpoly.field(); }
    std::string label() const { return at_infinity ? "inf" : minpoly.str(); }

    friend bool operator==(const ClosedPointP1&, const ClosedPointP1&) = default;
    friend std::strong_ordering operator<=>(const ClosedPointP1& a, const ClosedPointP1& b) {
        if (auto c = a.degree() <=> b.degree(); c != 0) return c;
        if (auto c = a.at_infinity <=> b.at_infinity; c != 0) return c;
        return a.minpoly <=> b.minpoly;
    }
};

/// Point of P^1 as a prime: the generic point or a closed point.
struct PrimePointP1 {
    bool generic = false;
    ClosedPointP1 point;  // unused when generic

    static PrimePointP1 eta(FieldTag field);
    static PrimePointP1 closed(ClosedPointP1 p);
    std::string label() const { return generic ? "eta" : "(" + point.label() + ")"; }

    friend bool operator==(const PrimePointP1&, const PrimePointP1&) = default;
    friend std::strong_ordering operator<=>(const PrimePointP1& a, const PrimePointP1& b) {
        // the generic point first
        if (auto c = b.generic <=> a.generic; c != 0) return c;
        return a.point <=> b.point;
    }
};

/// Split normal form of a coherent sheaf on P^1: twists of the line bundle
/// summands (descending) plus torsion grouped per point as exponent
/// partitions.
struct SheafP1 {
    FieldTag field;
    std::vector<int> twists;                                    // descending
    std::vector<std::pair<ClosedPointP1, Partition>> torsion;   // sorted by point

    static SheafP1 zero(FieldTag f) { return SheafP1{f, {}, {}}; }
    static SheafP1 line(FieldTag f, int n) { return SheafP1{f, {n}, {}}; }
    static SheafP1 make(FieldTag f, std::vector<int> twists,
                        std::vector<std::pair<ClosedPointP1, Partition>> torsion);

    bool is_zero() const { return twists.empty() && torsion.empty(); }
    int rank() const { return int(twists.size()); }
    int torsion_length() const;
    int torsion_degree() const;
    Partition part_at(const ClosedPointP1& x) const;

    friend bool operator==(const SheafP1&, const SheafP1&) = default;
    friend std::strong_ordering operator<=>(const SheafP1& a, const SheafP1& b);

    std::string label() const;
};

int chi(const SheafP1& f);
int degree(const SheafP1& f);
SheafP1 twist(const SheafP1& f, int m);
std::pair<SheafP1, SheafP1> decompose(const SheafP1& f);  // (torsion, vector) parts
SheafP1 sheaf_sum(const SheafP1& a, const SheafP1& b);
std::vector<SheafP1> sheaf_summands(const SheafP1& f);

int hom_dim(const SheafP1& f, const SheafP1& g);
int ext1_dim(const SheafP1& f, const SheafP1& g);
std::vector<PrimePointP1> sheaf_ass(const SheafP1& f);

/// True when an injective map g -> f exists.
bool embeddable(const SheafP1& g, const SheafP1& f);

/// Torsionfree-class families of coh P^1: supported at a point set, the
/// point set together with all vector bundles, or the twist-bounded bundle
/// family. The point set may be stored as a complement of a finite set.
struct TorfFamilyP1 {
    enum class Kind { TypeI, TypeII, TypeIII };
    Kind kind = Kind::TypeI;
    std::vector<ClosedPointP1> points;  // sorted
    bool complement = false;            // points lists the excluded set
    int max_twist = 0;                  // TypeIII only

    static TorfFamilyP1 type1(std::vector<ClosedPointP1> pts, bool complement = false);
    static TorfFamilyP1 type2(std::vector<ClosedPointP1> pts, bool complement = false);
    static TorfFamilyP1 type3(int max_twist);
    std::string label() const;
    friend bool operator==(const TorfFamilyP1&, const TorfFamilyP1&) = default;
};

bool family_membership(const SheafP1& f, const TorfFamilyP1& family);

struct SheafWindow {
    int twist_lo = 0;
    int twist_hi = 0;
    int max_rank = 0;
    int max_torsion_length = 0;
    int max_point_degree = 1;
    // explicit closed-point list; required over Q, optional otherwise
    std::vector<ClosedPointP1> points;
};

std::vector<ClosedPointP1> window_points(FieldTag field, const SheafWindow& w);
bool sheaf_in_window(const SheafP1& f, const SheafWindow& w);
std::vector<SheafP1> enumerate_sheaf_window(FieldTag field, const SheafWindow& w);

std::vector<SheafP1> subsheaves_window(const SheafP1& f, const SheafWindow& w);
std::vector<SheafP1> sheaf_quotients_window(const SheafP1& f, const SheafWindow& w);
std::vector<SheafP1> sheaf_extensions_window(const SheafP1& a, const SheafP1& b,
                                             const SheafWindow& w);
std::vector<SheafP1> sheaf_images_window(const SheafP1& f, const SheafP1& g,
                                         const SheafWindow& w);
std::vector<SheafP1> sheaf_kernels_window(const SheafP1& f, const SheafP1& g,
                                          const SheafWindow& w);
std::vector<SheafP1> sheaf_cokernels_window(const SheafP1& f, const SheafP1& g,
                                            const SheafWindow& w);

/// Existence of a short exact sequence 0 -> a -> e -> b -> 0 in coh P^1.
bool sheaf_triple_exists(const SheafP1& a, const SheafP1& e, const SheafP1& b);

/// Quotient-type test: does a surjection f ->> b exist?
bool sheaf_quotient_exists(const SheafP1& f, const SheafP1& b);

/// All isomorphism types of images of maps f -> g (a finite list).
std::vector<SheafP1> sheaf_image_types(const SheafP1& f, const SheafP1& g);

struct ClassifyResult {
    bool classified = false;
    TorfFamilyP1 family;
    std::vector<SheafP1> closure;  // the {sub, ext} fixpoint of the generators
};

/// Identifies the torsionfree class generated by the given sheaves within
/// the window and checks the window restriction of the predicted family
/// against the sub+ext closure fixpoint.
ClassifyResult classify_window(const std::vector<SheafP1>& generators, const SheafWindow& w);

namespace detail {
/// Cokernel types (quotient twists, torsion pattern) of injective maps of
/// split bundles with twist lists b into a (sizes <= 2), with torsion
/// restricted to the given points. Exposed for oracle validation.
std::vector<std::pair<std::vector<int>, std::vector<std::pair<ClosedPointP1, Partition>>>>
vb_coker_types(const std::vector<int>& b, const std::vector<int>& a,
               const std::vector<ClosedPointP1>& points, FieldTag field);
}  // namespace detail

}  // namespace cohclass
