#pragma once

#include "cohclass/partition.hpp"
#include "cohclass/smith.hpp"

#include <compare>
#include <functional>
#include <vector>

namespace cohclass {

/// Isomorphism type of a finitely generated module over a DVR (or chain
/// ring): free rank plus the partition of torsion exponents.
struct LocalType {
    int rank = 0;
    Partition tor;

    bool is_zero() const { return rank == 0 && tor.empty(); }
    int torsion_length() const { return partition_weight(tor); }
    friend auto operator<=>(const LocalType&, const LocalType&) = default;
};

/// Does a short exact sequence 0 -> sub -> mid -> quot -> 0 of finitely
/// generated modules over a DVR with these local types exist? Existence
/// depends only on the types, not on the residue field. Torsion-only triples
/// go through Littlewood-Richardson positivity; triples with free ranks run
/// a normalized search over presentation matrices. Memoized.
bool local_triple_exists(const LocalType& sub, const LocalType& mid, const LocalType& quot);

namespace detail {

template <class E>
int valuation(E x, const E& pi) {
    int v = 0;
    while (!EuclideanOps<E>::is_zero(x)) {
        auto [q, r] = EuclideanOps<E>::divmod(x, pi);
        if (!EuclideanOps<E>::is_zero(r)) break;
        x = q;
        ++v;
    }
    return v;
}

template <class E>
E pi_pow(const E& pi, int k) {
    E acc = EuclideanOps<E>::one_like(pi);
    for (int i = 0; i < k; ++i) acc = acc * pi;
    return acc;
}

/// Representatives of E / pi^m (complete, deterministic order).
std::vector<Int> residues_mod(const Int& pi, int m);
std::vector<Poly> residues_mod(const Poly& pi, int m);

/// LocalType of the cokernel of a matrix over E whose torsion is pi-primary.
template <class E>
LocalType coker_local_type(const Mat<E>& m, const E& pi) {
    auto res = smith_normal_form<E>(m);
    LocalType t;
    int nonzero = 0;
    for (const E& d : res.diagonal) {
        if (EuclideanOps<E>::is_zero(d)) continue;
        ++nonzero;
        int v = valuation(d, pi);
        if (v > 0) t.tor.push_back(v);
    }
    t.rank = m.rows() - nonzero;
    t.tor = normalize_partition(t.tor);
    return t;
}

/// Exhaustive search deciding triple existence over the localization of E at
/// the prime pi. Complete for the normalized shape: the free-free block of an
/// injection is brought to Smith form diag(pi^{c_j}) by automorphisms, the
/// free-to-torsion block is reduced modulo pi^{c_j}, and the torsion-torsion
/// block runs over all module homomorphisms.
template <class E>
bool local_triple_search(const LocalType& a, const LocalType& e, const LocalType& b,
                         const E& pi) {
    using Ops = EuclideanOps<E>;
    if (e.rank != a.rank + b.rank) return false;
    if (!fits_componentwise(a.tor, e.tor)) return false;
    const int ra = a.rank;
    const int tA = int(a.tor.size()), tE = int(e.tor.size());
    const int gA = ra + tA, gE = e.rank + tE;
    const E zero = Ops::zero_like(pi), one = Ops::one_like(pi);

    // presentation of E appended as relation columns
    auto run_candidate = [&](const std::vector<int>& c, const std::vector<std::vector<E>>& ft,
                             const std::vector<std::vector<E>>& tt) -> bool {
        Mat<E> m(gE, gA + tE, zero);
        for (int j = 0; j < ra; ++j) m.at(j, j) = pi_pow(pi, c[size_t(j)]);
        for (int j = 0; j < ra; ++j)
            for (int i = 0; i < tE; ++i) m.at(e.rank + i, j) = ft[size_t(j)][size_t(i)];
        for (int j = 0; j < tA; ++j)
            for (int i = 0; i < tE; ++i) m.at(e.rank + i, ra + j) = tt[size_t(j)][size_t(i)];
        for (int i = 0; i < tE; ++i)
            m.at(e.rank + i, gA + i) = pi_pow(pi, e.tor[size_t(i)]);

        if (coker_local_type(m, pi) != LocalType{b.rank, b.tor}) return false;

        // injectivity: every kernel vector of the combined matrix must have
        // its generator part inside the relation span of A
        auto tr = smith_with_transforms<E>(m, pi);
        const int n = std::min(m.rows(), m.cols());
        for (int j = 0; j < m.cols(); ++j) {
            bool in_kernel = j >= n || Ops::is_zero(tr.d.at(j, j));
            if (!in_kernel) continue;
            for (int g = 0; g < gA; ++g) {
                const E& x = tr.v.at(g, j);
                if (Ops::is_zero(x)) continue;
                if (g < ra) return false;  // free coordinate must vanish
                auto [q, r] = Ops::divmod(x, pi_pow(pi, a.tor[size_t(g - ra)]));
                (void)q;
                if (!Ops::is_zero(r)) return false;
            }
        }
        return true;
    };

    // enumerate nondecreasing c with sum <= |b.tor|
    std::vector<std::vector<int>> c_tuples;
    const int cap = partition_weight(b.tor);
    std::vector<int> c(size_t(ra), 0);
    std::function<void(int, int, int)> gen_c = [&](int idx, int lo, int left) {
        if (idx == ra) {
            c_tuples.push_back(c);
            return;
        }
        for (int v = lo; v <= left; ++v) {
            c[size_t(idx)] = v;
            gen_c(idx + 1, v, left - v);
        }
    };
    gen_c(0, 0, cap);

    for (const auto& ct : c_tuples) {
        // free-to-torsion columns: residues mod pi^{min(c_j, nu_i)}
        std::vector<std::vector<std::vector<E>>> ft_choices(static_cast<size_t>(ra));
        for (int j = 0; j < ra; ++j) {
            std::vector<std::vector<E>> cols = {{}};
            for (int i = 0; i < tE; ++i) {
                auto reps = residues_mod(pi, std::min(ct[size_t(j)], e.tor[size_t(i)]));
                std::vector<std::vector<E>> next;
                for (const auto& base : cols)
                    for (const auto& r : reps) {
                        auto ext = base;
                        ext.push_back(r);
                        next.push_back(std::move(ext));
                    }
                cols = std::move(next);
            }
            ft_choices[size_t(j)] = std::move(cols);
        }
        // torsion-to-torsion columns: pi^{max(nu_i - la_j, 0)} * r
        std::vector<std::vector<std::vector<E>>> tt_choices(static_cast<size_t>(tA));
        for (int j = 0; j < tA; ++j) {
            std::vector<std::vector<E>> cols = {{}};
            for (int i = 0; i < tE; ++i) {
                const int la = a.tor[size_t(j)], nu = e.tor[size_t(i)];
                auto reps = residues_mod(pi, std::min(la, nu));
                const E shift = pi_pow(pi, std::max(nu - la, 0));
                std::vector<std::vector<E>> next;
                for (const auto& base : cols)
                    for (const auto& r : reps) {
                        auto ext = base;
                        ext.push_back(shift * r);
                        next.push_back(std::move(ext));
                    }
                cols = std::move(next);
            }
            tt_choices[size_t(j)] = std::move(cols);
        }

        // odometer over the per-column choices
        std::vector<size_t> idx(size_t(ra + tA), 0);
        while (true) {
            std::vector<std::vector<E>> ft, tt;
            for (int j = 0; j < ra; ++j) ft.push_back(ft_choices[size_t(j)][idx[size_t(j)]]);
            for (int j = 0; j < tA; ++j) tt.push_back(tt_choices[size_t(j)][idx[size_t(ra + j)]]);
            if (run_candidate(ct, ft, tt)) return true;
            size_t k = 0;
            const auto limit = [&](size_t slot) {
                return slot < size_t(ra) ? ft_choices[slot].size()
                                         : tt_choices[slot - size_t(ra)].size();
            };
            while (k < idx.size() && ++idx[k] == limit(k)) idx[k++] = 0;
            if (k == idx.size()) break;
        }
    }
    return false;
}

}  // namespace detail

}  // namespace cohclass
