#pragma once

#include "cohclass/module.hpp"
#include "cohclass/sheaf.hpp"

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace cohclass {

enum class ClosureOp { Sub, Quot, Image, Kernel, Cokernel, Ext, TwistLine, Summand };

std::string closure_op_name(ClosureOp op);

/// Dense bitset over universe indices.
class Bitset {
public:
    Bitset() = default;
    explicit Bitset(size_t n) : n_(n), w_((n + 63) / 64, 0) {}
    size_t size() const { return n_; }
    bool test(size_t i) const { return (w_[i >> 6] >> (i & 63)) & 1; }
    void set(size_t i) { w_[i >> 6] |= std::uint64_t(1) << (i & 63); }
    void reset(size_t i) { w_[i >> 6] &= ~(std::uint64_t(1) << (i & 63)); }
    Bitset& operator|=(const Bitset& o) {
        for (size_t k = 0; k < w_.size(); ++k) w_[k] |= o.w_[k];
        return *this;
    }
    Bitset operator&(const Bitset& o) const {
        Bitset r = *this;
        for (size_t k = 0; k < w_.size(); ++k) r.w_[k] &= o.w_[k];
        return r;
    }
    bool subset_of(const Bitset& o) const {
        for (size_t k = 0; k < w_.size(); ++k)
            if (w_[k] & ~o.w_[k]) return false;
        return true;
    }
    size_t count() const {
        size_t c = 0;
        for (auto w : w_) c += size_t(__builtin_popcountll(w));
        return c;
    }
    std::vector<int> members() const {
        std::vector<int> out;
        for (size_t i = 0; i < n_; ++i)
            if (test(i)) out.push_back(int(i));
        return out;
    }
    friend bool operator==(const Bitset&, const Bitset&) = default;
    friend auto operator<=>(const Bitset& a, const Bitset& b) { return a.w_ <=> b.w_; }

private:
    size_t n_ = 0;
    std::vector<std::uint64_t> w_;
};

/// Finite enumeration universe: all normal forms inside a window over an
/// affine backend or over the projective line, with cached operation tables
/// and tracked primes.
class Universe {
public:
    static Universe affine(Ring ring, AffineWindow window);
    static Universe projective_line(FieldTag field, SheafWindow window);

    bool is_p1() const { return p1_; }
    const Ring& ring() const { return *ring_; }
    const AffineWindow& affine_window() const { return aw_; }
    FieldTag field() const { return field_; }
    const SheafWindow& sheaf_window() const { return sw_; }

    size_t size() const { return labels_.size(); }
    int zero_index() const { return zero_; }
    const std::string& label(int i) const { return labels_[size_t(i)]; }
    const ModuleNF& module(int i) const { return mods_[size_t(i)]; }
    const SheafP1& sheaf(int i) const { return sheaves_[size_t(i)]; }
    int index_of_module(const ModuleNF& m) const;
    int index_of_sheaf(const SheafP1& f) const;

    // tracked primes / points
    size_t prime_count() const { return prime_labels_.size(); }
    const std::string& prime_label(int p) const { return prime_labels_[size_t(p)]; }
    /// specialization order: leq(i, j) means prime i is a specialization of j
    bool prime_leq(int i, int j) const { return prime_leq_[size_t(i)][size_t(j)]; }
    std::uint64_t ass_mask(int i) const { return ass_mask_[size_t(i)]; }
    std::uint64_t supp_mask(int i) const { return supp_mask_[size_t(i)]; }
    std::string prime_set_label(std::uint64_t mask) const;
    int prime_index_by_label(const std::string& label) const;
    /// downward closure in the specialization order, restricted to `within`.
    std::uint64_t specialization_closure(std::uint64_t mask, std::uint64_t within) const;
    bool is_specialization_closed(std::uint64_t mask, std::uint64_t within) const;

    // operation tables (memoized; pure)
    const Bitset& subs(int i);
    const Bitset& quots(int i);
    const Bitset& exts(int i, int j);
    const Bitset& images(int i, int j);
    const Bitset& kernels(int i, int j);
    const Bitset& cokernels(int i, int j);
    const Bitset& summands(int i);
    int sum_index(int i, int j);    // -1 when the sum leaves the window
    int twist_index(int i, int m);  // P1 only; -1 outside the window
    int tensor_index(int i, int j); // affine PID/finite; -1 outside

    bool supports_images() const;
    bool supports_tensor() const;

    /// All short exact sequences with every term inside the universe (for
    /// the monomial backend this is the sound generating family).
    const std::vector<std::array<int, 3>>& conflations();

    /// Least fixpoint of the requested closure operations containing the
    /// generators; always contains 0 and is closed under finite direct sums
    /// and summands.
    Bitset closure_fixpoint(const std::vector<int>& generators, const std::set<ClosureOp>& ops);

    /// Fills every table the given operations can touch, so that subsequent
    /// fixpoint runs are read-only and safe to share across threads.
    void precompute(const std::set<ClosureOp>& ops);

private:
    Universe() = default;
    void build_prime_tables();

    bool p1_ = false;
    std::optional<Ring> ring_;
    AffineWindow aw_;
    FieldTag field_;
    SheafWindow sw_;

    std::vector<ModuleNF> mods_;
    std::vector<SheafP1> sheaves_;
    std::vector<std::string> labels_;
    int zero_ = 0;

    std::vector<PrimeIdeal> primes_;
    std::vector<PrimePointP1> points_;
    std::vector<std::string> prime_labels_;
    std::vector<std::vector<bool>> prime_leq_;
    std::vector<std::uint64_t> ass_mask_, supp_mask_;

    std::map<int, Bitset> subs_, quots_, summands_;
    std::map<std::pair<int, int>, Bitset> exts_, images_, kernels_, cokernels_;
    std::map<std::pair<int, int>, int> sums_, tensors_;
    std::map<std::pair<int, int>, int> twists_;
    std::optional<std::vector<std::array<int, 3>>> conflations_;
};

/// Symbolic subcategory specification over a universe: an Ass-bounded class,
/// a Supp-bounded class (the bound must be specialization-closed), the
/// closure of finitely many generators, one of the P1 families, or a trivial
/// class.
struct SubcatDescriptor {
    enum class Kind { AssClass, SuppClass, Generated, FamilyP1, Zero, All };
    Kind kind = Kind::Zero;
    std::uint64_t prime_mask = 0;        // AssClass / SuppClass
    std::vector<int> generators;         // Generated
    std::set<ClosureOp> ops;             // Generated
    TorfFamilyP1 family;                 // FamilyP1

    static SubcatDescriptor ass_class(const Universe& u, std::uint64_t mask);
    /// Rejects supports that are not specialization-closed.
    static SubcatDescriptor supp_class(const Universe& u, std::uint64_t mask);
    static SubcatDescriptor generated(std::vector<int> gens, std::set<ClosureOp> ops);
    static SubcatDescriptor family_p1(TorfFamilyP1 fam);
    static SubcatDescriptor zero();
    static SubcatDescriptor all();
};

/// Members of the described class inside the universe.
Bitset evaluate(Universe& u, const SubcatDescriptor& d);
/// Union of Ass (resp. Supp) over the described class.
std::uint64_t ass_of(Universe& u, const SubcatDescriptor& d);
std::uint64_t supp_of(Universe& u, const SubcatDescriptor& d);

/// All specialization-closed subsets of `within` (downsets in the induced
/// order), as masks, sorted by (popcount, value).
std::vector<std::uint64_t> spec_closed_subsets(const Universe& u, std::uint64_t within);

struct Lattice {
    struct Node {
        std::string label;
        std::uint64_t prime_mask = 0;
    };
    std::vector<Node> nodes;                    // sorted by (popcount, mask)
    std::vector<std::pair<int, int>> covers;    // Hasse edges small -> large
};

Lattice lattice_of_downsets(const Universe& u, std::uint64_t within);
std::string lattice_dot(const Lattice& l);

}  // namespace cohclass
