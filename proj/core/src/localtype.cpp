#include "cohclass/localtype.hpp"

#include <map>
#include <mutex>
#include <tuple>

namespace cohclass {

namespace detail {

std::vector<Int> residues_mod(const Int& pi, int m) {
    Int n = 1;
    for (int i = 0; i < m; ++i) n *= pi;
    std::vector<Int> out;
    for (Int x = 0; x < n; ++x) out.push_back(x);
    return out;
}

std::vector<Poly> residues_mod(const Poly& pi, int m) {
    const FieldTag field = pi.field();
    const int deg = m * pi.degree();
    std::vector<Poly> out = {Poly::zero(field)};
    std::vector<std::uint32_t> a;
    // all polynomials of degree < deg, odometer on coefficients
    a.assign(size_t(deg), 0);
    if (deg == 0) return out;
    while (true) {
        size_t k = 0;
        while (k < a.size() && ++a[k] == field.p) a[k++] = 0;
        if (k == a.size()) break;
        std::vector<Scalar> c;
        c.reserve(a.size());
        for (std::uint32_t x : a) c.push_back(Scalar::mod_p(x, field.p));
        out.push_back(Poly::from_coeffs(field, std::move(c)));
    }
    return out;
}

}  // namespace detail

// A short exact sequence 0 -> A -> E -> B -> 0 over a DVR splits along the
// torsion/free decomposition of E: the torsion of A lands in the torsion of
// E with some quotient type kappa; the free part of A saturates inside E
// with a torsion defect gamma of at most rank(A) parts and total length
// |A_tor| + |B_tor| - |E_tor|; and B is an extension of that defect by
// kappa. Extensions of a free module by torsion split, so every extension
// class arises and the three Littlewood-Richardson conditions are exact.
bool local_triple_exists(const LocalType& sub, const LocalType& mid, const LocalType& quot) {
    if (mid.rank != sub.rank + quot.rank) return false;
    const int gamma_weight =
        sub.torsion_length() + quot.torsion_length() - mid.torsion_length();
    if (gamma_weight < 0) return false;
    if (sub.rank == 0)
        return gamma_weight == 0 && lr_positive(mid.tor, sub.tor, quot.tor);
    if (!fits_componentwise(sub.tor, mid.tor)) return false;

    static std::map<std::tuple<LocalType, LocalType, LocalType>, bool> cache;
    static std::mutex mu;
    const auto key = std::make_tuple(sub, mid, quot);
    {
        std::lock_guard<std::mutex> lock(mu);
        auto it = cache.find(key);
        if (it != cache.end()) return it->second;
    }
    bool ok = false;
    const int kappa_weight = mid.torsion_length() - sub.torsion_length();
    const int kappa_cap = mid.tor.empty() ? 0 : mid.tor[0];
    const int gamma_cap = quot.tor.empty() ? 0 : quot.tor[0];
    for (const Partition& kappa : partitions_of(kappa_weight, std::max(kappa_cap, 1), -1)) {
        if (!lr_positive(mid.tor, sub.tor, kappa)) continue;
        for (const Partition& gamma :
             partitions_of(gamma_weight, std::max(gamma_cap, 1), sub.rank)) {
            if (lr_positive(quot.tor, kappa, gamma)) {
                ok = true;
                break;
            }
        }
        if (ok) break;
    }
    std::lock_guard<std::mutex> lock(mu);
    cache.emplace(key, ok);
    return ok;
}

}  // namespace cohclass
