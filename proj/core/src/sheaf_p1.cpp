#include "cohclass/sheaf.hpp"

#include "cohclass/numeric.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <mutex>
#include <set>

namespace cohclass {

ClosedPointP1 ClosedPointP1::infinity(FieldTag field) {
    ClosedPointP1 p;
    p.at_infinity = true;
    p.minpoly = Poly::variable(field);  // placeholder carrying the field
    return p;
}

ClosedPointP1 ClosedPointP1::at(Poly monic_irreducible) {
    if (!monic_irreducible.is_monic() || !is_irreducible(monic_irreducible))
        fail(Error::Kind::Config, "closed point needs a monic irreducible polynomial");
    ClosedPointP1 p;
    p.minpoly = std::move(monic_irreducible);
    return p;
}

PrimePointP1 PrimePointP1::eta(FieldTag field) {
    PrimePointP1 p;
    p.generic = true;
    p.point = ClosedPointP1::infinity(field);
    return p;
}

PrimePointP1 PrimePointP1::closed(ClosedPointP1 pt) {
    PrimePointP1 p;
    p.point = std::move(pt);
    return p;
}

SheafP1 SheafP1::make(FieldTag f, std::vector<int> twists,
                      std::vector<std::pair<ClosedPointP1, Partition>> torsion) {
    SheafP1 s;
    s.field = f;
    std::sort(twists.begin(), twists.end(), std::greater<>());
    s.twists = std::move(twists);
    std::map<ClosedPointP1, Partition> merged;
    for (auto& [x, part] : torsion) {
        Partition& acc = merged[x];
        for (int e : part) acc.push_back(e);
    }
    for (auto& [x, part] : merged) {
        part = normalize_partition(part);
        if (!part.empty()) s.torsion.emplace_back(x, part);
    }
    return s;
}

int SheafP1::torsion_length() const {
    int len = 0;
    for (const auto& [x, part] : torsion) len += partition_weight(part);
    return len;
}

int SheafP1::torsion_degree() const {
    int d = 0;
    for (const auto& [x, part] : torsion) d += partition_weight(part) * x.degree();
    return d;
}

Partition SheafP1::part_at(const ClosedPointP1& x) const {
    for (const auto& [y, part] : torsion)
        if (y == x) return part;
    return {};
}

std::strong_ordering operator<=>(const SheafP1& a, const SheafP1& b) {
    if (auto c = a.field <=> b.field; c != 0) return c;
    if (auto c = a.twists.size() <=> b.twists.size(); c != 0) return c;
    if (auto c = a.twists <=> b.twists; c != 0) return c;
    if (auto c = a.torsion.size() <=> b.torsion.size(); c != 0) return c;
    for (size_t i = 0; i < a.torsion.size(); ++i) {
        if (auto c = a.torsion[i].first <=> b.torsion[i].first; c != 0) return c;
        if (auto c = a.torsion[i].second <=> b.torsion[i].second; c != 0) return c;
    }
    return std::strong_ordering::equal;
}

std::string SheafP1::label() const {
    if (is_zero()) return "0";
    std::string s;
    auto add = [&](const std::string& part) {
        if (!s.empty()) s += " + ";
        s += part;
    };
    for (int n : twists) add("O(" + std::to_string(n) + ")");
    for (const auto& [x, part] : torsion)
        for (int e : part) add("T(" + x.label() + "," + std::to_string(e) + ")");
    return s;
}

int degree(const SheafP1& f) {
    int d = f.torsion_degree();
    for (int n : f.twists) d += n;
    return d;
}

int chi(const SheafP1& f) { return degree(f) + f.rank(); }

SheafP1 twist(const SheafP1& f, int m) {
    SheafP1 out = f;
    for (int& n : out.twists) n += m;
    return out;
}

std::pair<SheafP1, SheafP1> decompose(const SheafP1& f) {
    SheafP1 tor = SheafP1::zero(f.field), vect = SheafP1::zero(f.field);
    tor.torsion = f.torsion;
    vect.twists = f.twists;
    return {tor, vect};
}

SheafP1 sheaf_sum(const SheafP1& a, const SheafP1& b) {
    std::vector<int> twists = a.twists;
    twists.insert(twists.end(), b.twists.begin(), b.twists.end());
    auto torsion = a.torsion;
    torsion.insert(torsion.end(), b.torsion.begin(), b.torsion.end());
    return SheafP1::make(a.field, std::move(twists), std::move(torsion));
}

std::vector<SheafP1> sheaf_summands(const SheafP1& f) {
    std::vector<SheafP1> pieces;
    for (int n : f.twists) pieces.push_back(SheafP1::line(f.field, n));
    for (const auto& [x, part] : f.torsion)
        for (int e : part) pieces.push_back(SheafP1::make(f.field, {}, {{x, {e}}}));
    std::set<SheafP1> out = {SheafP1::zero(f.field)};
    for (const auto& piece : pieces) {
        std::set<SheafP1> next = out;
        for (const auto& base : out) next.insert(sheaf_sum(base, piece));
        out = std::move(next);
    }
    return {out.begin(), out.end()};
}

int hom_dim(const SheafP1& f, const SheafP1& g) {
    int h = 0;
    for (int a : f.twists)
        for (int b : g.twists) h += std::max(b - a + 1, 0);
    h += f.rank() * g.torsion_degree();
    for (const auto& [x, la] : f.torsion) {
        const Partition mu = g.part_at(x);
        for (int e : la)
            for (int d : mu) h += std::min(e, d) * x.degree();
    }
    return h;
}

int ext1_dim(const SheafP1& f, const SheafP1& g) {
    int h = 0;
    for (int a : f.twists)
        for (int b : g.twists) h += std::max(a - b - 1, 0);
    h += g.rank() * f.torsion_degree();
    for (const auto& [x, la] : f.torsion) {
        const Partition mu = g.part_at(x);
        for (int e : la)
            for (int d : mu) h += std::min(e, d) * x.degree();
    }
    return h;
}

std::vector<PrimePointP1> sheaf_ass(const SheafP1& f) {
    std::vector<PrimePointP1> out;
    if (!f.twists.empty()) out.push_back(PrimePointP1::eta(f.field));
    for (const auto& [x, part] : f.torsion) out.push_back(PrimePointP1::closed(x));
    std::sort(out.begin(), out.end());
    return out;
}

bool embeddable(const SheafP1& g, const SheafP1& f) {
    if (g.rank() > f.rank()) return false;
    for (size_t i = 0; i < g.twists.size(); ++i)
        if (g.twists[i] > f.twists[i]) return false;
    for (const auto& [x, part] : g.torsion)
        if (!fits_componentwise(part, f.part_at(x))) return false;
    return true;
}

TorfFamilyP1 TorfFamilyP1::type1(std::vector<ClosedPointP1> pts, bool complement) {
    TorfFamilyP1 f;
    f.kind = Kind::TypeI;
    std::sort(pts.begin(), pts.end());
    f.points = std::move(pts);
    f.complement = complement;
    return f;
}

TorfFamilyP1 TorfFamilyP1::type2(std::vector<ClosedPointP1> pts, bool complement) {
    TorfFamilyP1 f = type1(std::move(pts), complement);
    f.kind = Kind::TypeII;
    return f;
}

TorfFamilyP1 TorfFamilyP1::type3(int max_twist) {
    TorfFamilyP1 f;
    f.kind = Kind::TypeIII;
    f.max_twist = max_twist;
    return f;
}

std::string TorfFamilyP1::label() const {
    if (kind == Kind::TypeIII) return "TypeIII(" + std::to_string(max_twist) + ")";
    std::string pts = complement ? "co{" : "{";
    for (size_t i = 0; i < points.size(); ++i) {
        if (i) pts += ",";
        pts += points[i].label();
    }
    pts += "}";
    return (kind == Kind::TypeI ? "TypeI(" : "TypeII(") + pts + ")";
}

bool family_membership(const SheafP1& f, const TorfFamilyP1& family) {
    auto point_ok = [&](const ClosedPointP1& x) {
        const bool listed =
            std::binary_search(family.points.begin(), family.points.end(), x);
        return family.complement ? !listed : listed;
    };
    switch (family.kind) {
        case TorfFamilyP1::Kind::TypeI:
            if (!f.twists.empty()) return false;
            break;
        case TorfFamilyP1::Kind::TypeII:
            break;
        case TorfFamilyP1::Kind::TypeIII:
            if (!f.torsion.empty()) return false;
            for (int n : f.twists)
                if (n > family.max_twist) return false;
            return true;
    }
    for (const auto& [x, part] : f.torsion)
        if (!point_ok(x)) return false;
    return true;
}

// --- windows -------------------------------------------------------------------

std::vector<ClosedPointP1> window_points(FieldTag field, const SheafWindow& w) {
    if (!w.points.empty()) {
        auto pts = w.points;
        std::sort(pts.begin(), pts.end());
        pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
        return pts;
    }
    if (field.is_rational())
        fail(Error::Kind::Config,
             "window over Q needs an explicit closed-point list (the full set is infinite)");
    std::vector<ClosedPointP1> pts;
    for (const Poly& f : irreducibles_up_to_degree(field, w.max_point_degree))
        pts.push_back(ClosedPointP1::at(f));
    pts.push_back(ClosedPointP1::infinity(field));
    std::sort(pts.begin(), pts.end());
    return pts;
}

bool sheaf_in_window(const SheafP1& f, const SheafWindow& w) {
    if (f.rank() > w.max_rank) return false;
    for (int n : f.twists)
        if (n < w.twist_lo || n > w.twist_hi) return false;
    if (f.torsion_length() > w.max_torsion_length) return false;
    const auto pts = window_points(f.field, w);
    for (const auto& [x, part] : f.torsion)
        if (!std::binary_search(pts.begin(), pts.end(), x)) return false;
    return true;
}

std::vector<SheafP1> enumerate_sheaf_window(FieldTag field, const SheafWindow& w) {
    using Key = std::tuple<FieldTag, int, int, int, int, int, std::vector<ClosedPointP1>>;
    static std::map<Key, std::vector<SheafP1>> cache;
    static std::mutex cache_mu;
    const Key key{field,           w.twist_lo,          w.twist_hi, w.max_rank,
                  w.max_torsion_length, w.max_point_degree, w.points};
    {
        std::lock_guard<std::mutex> lock(cache_mu);
        auto it = cache.find(key);
        if (it != cache.end()) return it->second;
    }
    const auto pts = window_points(field, w);
    // twist multisets: nonincreasing tuples in [lo, hi] of size <= max_rank
    std::vector<std::vector<int>> twist_lists = {{}};
    {
        std::vector<std::vector<int>> frontier = {{}};
        for (int r = 1; r <= w.max_rank; ++r) {
            std::vector<std::vector<int>> next;
            for (const auto& base : frontier) {
                const int cap = base.empty() ? w.twist_hi : base.back();
                for (int n = w.twist_lo; n <= cap; ++n) {
                    auto ext = base;
                    ext.push_back(n);
                    next.push_back(ext);
                    twist_lists.push_back(std::move(ext));
                }
            }
            frontier = std::move(next);
        }
    }
    // torsion assignments: per point partitions, total length bounded
    std::vector<std::vector<std::pair<ClosedPointP1, Partition>>> torsions = {{}};
    for (const auto& x : pts) {
        std::vector<std::vector<std::pair<ClosedPointP1, Partition>>> next;
        for (const auto& base : torsions) {
            int used = 0;
            for (const auto& [y, part] : base) used += partition_weight(part);
            for (const Partition& part :
                 partitions_up_to(w.max_torsion_length - used, w.max_torsion_length, -1)) {
                auto ext = base;
                if (!part.empty()) ext.emplace_back(x, part);
                next.push_back(std::move(ext));
            }
        }
        torsions = std::move(next);
    }
    std::vector<SheafP1> out;
    for (const auto& twists : twist_lists)
        for (const auto& torsion : torsions) {
            std::vector<int> tw = twists;
            std::sort(tw.begin(), tw.end(), std::greater<>());
            out.push_back(SheafP1::make(field, tw, torsion));
        }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    std::lock_guard<std::mutex> lock(cache_mu);
    cache.emplace(key, out);
    return out;
}

// --- the bundle cokernel calculus ---------------------------------------------

namespace {

using TorsionPattern = std::vector<std::pair<ClosedPointP1, Partition>>;

/// Single-column cokernel patterns: O(b) into O(d) has cokernel cyclic at
/// each point, with total degree d - b spread as one part per point.
std::vector<TorsionPattern> torcok_1(int b, int d, const std::vector<ClosedPointP1>& points) {
    std::vector<TorsionPattern> out;
    if (d < b) return out;
    TorsionPattern cur;
    std::function<void(size_t, int)> rec = [&](size_t i, int left) {
        if (left == 0) {
            out.push_back(cur);
            return;
        }
        if (i == points.size()) return;
        rec(i + 1, left);
        for (int m = 1; m * points[i].degree() <= left; ++m) {
            cur.emplace_back(points[i], Partition{m});
            rec(i + 1, left - m * points[i].degree());
            cur.pop_back();
        }
    };
    rec(0, d - b);
    return out;
}

/// Existence of a form of the given degree not vanishing at any point of the
/// set: decided exactly by enumeration over F_p, always true over Q.
bool coprime_form_exists(FieldTag field, int deg, const std::vector<ClosedPointP1>& avoid) {
    if (deg < 0) return false;
    if (avoid.empty() || field.is_rational()) return true;
    static std::map<std::tuple<FieldTag, int, std::vector<ClosedPointP1>>, bool> cache;
    static std::mutex mu;
    const auto key = std::make_tuple(field, deg, avoid);
    {
        std::lock_guard<std::mutex> lock(mu);
        auto it = cache.find(key);
        if (it != cache.end()) return it->second;
    }
    // a form of degree deg is a dehomogenized polynomial f with deg f <= deg;
    // it vanishes at infinity iff deg f < deg, and at a finite point iff the
    // minimal polynomial divides f
    bool found = false;
    bool needs_inf = false;
    std::vector<Poly> finite;
    for (const auto& x : avoid) {
        if (x.at_infinity)
            needs_inf = true;
        else
            finite.push_back(x.minpoly);
    }
    std::vector<std::uint32_t> coeff(size_t(deg) + 1, 0);
    while (!found) {
        size_t k = 0;
        while (k < coeff.size() && ++coeff[k] == field.p) coeff[k++] = 0;
        if (k == coeff.size()) break;
        std::vector<Scalar> cs;
        for (std::uint32_t c : coeff) cs.push_back(Scalar::mod_p(c, field.p));
        const Poly f = Poly::from_coeffs(field, std::move(cs));
        if (f.is_zero()) continue;
        if (needs_inf && f.degree() != deg) continue;
        bool ok = true;
        for (const Poly& q : finite)
            if (q.divides(f)) ok = false;
        found = ok;
    }
    std::lock_guard<std::mutex> lock(mu);
    cache.emplace(key, found);
    return found;
}

/// Feasibility of a two-column torsion cokernel with source twists (b1, b2)
/// and saturation twists (d1, d2), both descending. When every matrix entry
/// can carry the gcd layer the determinant profile is unconstrained; when
/// the low corner cannot, the matrix is forced upper-triangular and the
/// valuations split across the diagonal, with the off-diagonal entry as the
/// only control over the gcd layer. Validated against the matrix-of-forms
/// oracle.
bool torcok_2_feasible(int b1, int b2, int d1, int d2, const TorsionPattern& tau,
                       FieldTag field) {
    struct PointData {
        ClosedPointP1 x;
        int deg, u, w;
    };
    std::vector<PointData> pd;
    int total = 0, t1 = 0;
    for (const auto& [x, part] : tau) {
        if (part.size() > 2) return false;
        const int w = part.empty() ? 0 : part[0];
        const int u = part.size() > 1 ? part[1] : 0;
        pd.push_back({x, x.degree(), u, w});
        total += (u + w) * x.degree();
        t1 += u * x.degree();
    }
    if (total != d1 + d2 - b1 - b2) return false;
    if (b1 > d1 || b2 > d2) return false;

    if (d2 - b1 >= t1) return true;  // every entry can carry the gcd layer

    // forced upper-triangular: diagonal degrees (d1-b1, d2-b2), gcd control
    // through the entry of degree d1-b2
    const int diag1 = d1 - b1, diag2 = d2 - b2, off = d1 - b2;
    if (diag1 < 0 || diag2 < 0) return false;
    const bool g_possible = off >= t1;
    // choose p_x (the valuation of the first diagonal entry at x); q_x is
    // forced; points where min(p,q) > u need the off-entry coprime there
    std::function<bool(size_t, int, std::vector<ClosedPointP1>&)> rec =
        [&](size_t i, int left, std::vector<ClosedPointP1>& covered) -> bool {
        if (i == pd.size()) {
            if (left != 0) return false;
            if (covered.empty()) return true;
            if (!g_possible) return false;
            auto sorted = covered;
            std::sort(sorted.begin(), sorted.end());
            return coprime_form_exists(field, off - t1, sorted);
        }
        const auto& p = pd[i];
        for (int v = p.u; v <= p.w; ++v) {
            const int q = p.u + p.w - v;
            const int cost = v * p.deg;
            if (cost > left) continue;
            const bool needs_cover = std::min(v, q) > p.u;
            if (needs_cover && !g_possible) continue;
            if (needs_cover) {
                covered.push_back(p.x);
                if (rec(i + 1, left - cost, covered)) return true;
                covered.pop_back();
            } else {
                if (rec(i + 1, left - cost, covered)) return true;
            }
        }
        return false;
    };
    std::vector<ClosedPointP1> covered;
    return rec(0, diag1, covered);
}

std::vector<TorsionPattern> torcok_2(int b1, int b2, int d1, int d2,
                                     const std::vector<ClosedPointP1>& points) {
    std::vector<TorsionPattern> out;
    const int g = d1 + d2 - b1 - b2;
    if (g < 0) return out;
    // enumerate per-point partitions with at most two parts and then filter
    TorsionPattern cur;
    std::function<void(size_t, int)> rec = [&](size_t i, int left) {
        if (i == points.size()) {
            if (left == 0 && torcok_2_feasible(b1, b2, d1, d2, cur, points.empty() ? rational_field() : points[0].field())) out.push_back(cur);
            return;
        }
        rec(i + 1, left);
        for (int wgt = 1; wgt * points[i].degree() <= left; ++wgt)
            for (const Partition& part : partitions_of(wgt, wgt, 2)) {
                cur.emplace_back(points[i], part);
                rec(i + 1, left - wgt * points[i].degree());
                cur.pop_back();
            }
    };
    rec(0, g);
    return out;
}

}  // namespace

namespace detail {

std::vector<std::pair<std::vector<int>, TorsionPattern>> vb_coker_types(
    const std::vector<int>& b, const std::vector<int>& a,
    const std::vector<ClosedPointP1>& points, FieldTag field) {
    using Key = std::tuple<std::vector<int>, std::vector<int>, std::vector<ClosedPointP1>,
                           FieldTag>;
    static std::map<Key, std::vector<std::pair<std::vector<int>, TorsionPattern>>> cache;
    static std::mutex cache_mu;
    const Key key{b, a, points, field};
    {
        std::lock_guard<std::mutex> lock(cache_mu);
        auto it = cache.find(key);
        if (it != cache.end()) return it->second;
    }
    std::vector<std::pair<std::vector<int>, TorsionPattern>> out;
    const int s = int(b.size()), r = int(a.size());
    if (s > r) return out;
    if (s == 0) {
        out.emplace_back(a, TorsionPattern{});
        return out;
    }
    if (s > 2 || r > 2)
        fail(Error::Kind::WindowTooSmall,
             "bundle cokernel calculus supports twist multiplicities up to 2");
    if (s == 1 && r == 1) {
        for (auto& tau : torcok_1(b[0], a[0], points)) out.emplace_back(std::vector<int>{}, tau);
    } else if (s == 1 && r == 2) {
        // saturation O(d): either the top summand or any d <= a2
        auto add_for = [&](int d) {
            const int c = a[0] + a[1] - d;
            for (auto& tau : torcok_1(b[0], d, points))
                out.emplace_back(std::vector<int>{c}, tau);
        };
        if (a[0] >= b[0]) add_for(a[0]);
        for (int d = b[0]; d <= a[1]; ++d)
            if (d != a[0]) add_for(d);
    } else {  // s == 2 && r == 2
        if (b[0] > a[0] || b[1] > a[1]) return out;
        for (auto& tau : torcok_2(b[0], b[1], a[0], a[1], points))
            out.emplace_back(std::vector<int>{}, tau);
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    std::lock_guard<std::mutex> lock(cache_mu);
    cache.emplace(key, out);
    return out;
}

}  // namespace detail

// --- exact triples --------------------------------------------------------------

namespace {

std::vector<ClosedPointP1> points_of(std::initializer_list<const SheafP1*> sheaves) {
    std::set<ClosedPointP1> s;
    for (const SheafP1* f : sheaves)
        for (const auto& [x, part] : f->torsion) s.insert(x);
    return {s.begin(), s.end()};
}

/// Per-point middle condition: some kappa with lr(lambda_E; mu_A, kappa) and
/// lr(nu_B; kappa, tau) exists.
bool point_compatible(const Partition& mu_a, const Partition& la_e, const Partition& nu_b,
                      const Partition& tau) {
    const int quot_weight = partition_weight(la_e) - partition_weight(mu_a);
    if (quot_weight < 0) return false;
    if (partition_weight(nu_b) != quot_weight + partition_weight(tau)) return false;
    const int cap = la_e.empty() ? 0 : la_e[0];
    for (const Partition& kappa : partitions_of(quot_weight, std::max(cap, 1), -1)) {
        if (!lr_positive(la_e, mu_a, kappa)) continue;
        if (lr_positive(nu_b, kappa, tau)) return true;
    }
    return false;
}

}  // namespace

bool sheaf_triple_exists(const SheafP1& a, const SheafP1& e, const SheafP1& b) {
    if (e.rank() != a.rank() + b.rank()) return false;
    if (degree(e) != degree(a) + degree(b)) return false;
    static std::map<std::tuple<SheafP1, SheafP1, SheafP1>, bool> cache;
    static std::mutex cache_mu;
    const auto key = std::make_tuple(a, e, b);
    {
        std::lock_guard<std::mutex> lock(cache_mu);
        auto it = cache.find(key);
        if (it != cache.end()) return it->second;
    }
    const bool found = [&] {
        const auto pts = points_of({&a, &e, &b});
        for (const auto& [c, tau] :
             detail::vb_coker_types(a.twists, e.twists, pts, a.field)) {
            if (c != b.twists) continue;
            auto tau_at = [&](const ClosedPointP1& x) -> Partition {
                for (const auto& [y, part] : tau)
                    if (y == x) return part;
                return {};
            };
            bool ok = true;
            for (const auto& x : pts)
                if (!point_compatible(a.part_at(x), e.part_at(x), b.part_at(x), tau_at(x))) {
                    ok = false;
                    break;
                }
            if (ok) return true;
        }
        return false;
    }();
    std::lock_guard<std::mutex> lock(cache_mu);
    cache.emplace(key, found);
    return found;
}

bool sheaf_quotient_exists(const SheafP1& f, const SheafP1& b) {
    const int s = f.rank() - b.rank();
    if (s < 0) return false;
    const int r = f.rank();
    // existence of a saturation subbundle with the required quotient twists
    bool bundle_ok = false;
    if (s == 0) {
        bundle_ok = b.twists == f.twists;
    } else if (s == r) {
        bundle_ok = b.twists.empty();
    } else if (s == 1 && r == 2) {
        bundle_ok = (b.twists.size() == 1) &&
                    (b.twists[0] == f.twists[1] || b.twists[0] >= f.twists[0]);
    } else {
        fail(Error::Kind::WindowTooSmall,
             "quotient calculus supports twist multiplicities up to 2");
    }
    if (!bundle_ok) return false;
    for (const auto& x : points_of({&f, &b})) {
        const Partition la = f.part_at(x), nu = b.part_at(x);
        bool point_ok = false;
        for (const Partition& kappa : componentwise_dominated(la)) {
            const int tw = partition_weight(nu) - partition_weight(kappa);
            if (tw < 0) continue;
            const int cap = nu.empty() ? 1 : nu[0];
            for (const Partition& tau : partitions_of(tw, cap, s))
                if (lr_positive(nu, kappa, tau)) {
                    point_ok = true;
                    break;
                }
            if (point_ok) break;
        }
        if (!point_ok) return false;
    }
    return true;
}

// --- windowed operation lists ----------------------------------------------------

std::vector<SheafP1> subsheaves_window(const SheafP1& f, const SheafWindow& w) {
    if (!sheaf_in_window(f, w))
        fail(Error::Kind::WindowTooSmall, "sheaf outside the enumeration window");
    std::vector<SheafP1> out;
    for (const SheafP1& g : enumerate_sheaf_window(f.field, w))
        if (embeddable(g, f)) out.push_back(g);
    return out;
}

std::vector<SheafP1> sheaf_quotients_window(const SheafP1& f, const SheafWindow& w) {
    if (!sheaf_in_window(f, w))
        fail(Error::Kind::WindowTooSmall, "sheaf outside the enumeration window");
    std::vector<SheafP1> out;
    for (const SheafP1& b : enumerate_sheaf_window(f.field, w))
        if (sheaf_quotient_exists(f, b)) out.push_back(b);
    return out;
}

std::vector<SheafP1> sheaf_extensions_window(const SheafP1& a, const SheafP1& b,
                                             const SheafWindow& w) {
    static std::map<std::tuple<SheafP1, SheafP1, int, int, int, int>, std::vector<SheafP1>>
        cache;
    static std::mutex mu;
    const auto key = std::make_tuple(a, b, w.twist_lo, w.twist_hi, w.max_rank,
                                     w.max_torsion_length);
    {
        std::lock_guard<std::mutex> lock(mu);
        auto it = cache.find(key);
        if (it != cache.end()) return it->second;
    }
    std::vector<SheafP1> out;
    for (const SheafP1& e : enumerate_sheaf_window(a.field, w))
        if (sheaf_triple_exists(a, e, b)) out.push_back(e);
    std::lock_guard<std::mutex> lock(mu);
    cache.emplace(key, out);
    return out;
}

/// All images of maps f -> g: quotients of f that embed into g. Image twists
/// live between min(f) and max(g) componentwise, image torsion divides g's.
std::vector<SheafP1> sheaf_image_types(const SheafP1& f, const SheafP1& g) {
    std::vector<SheafP1> out;
    const int rank_cap = std::min(f.rank(), g.rank());
    const int lo = f.twists.empty() ? 0 : f.twists.back();
    const int hi = g.twists.empty() ? 0 : g.twists.front();
    std::vector<std::vector<int>> twist_lists = {{}};
    if (rank_cap > 0 && lo <= hi) {
        std::vector<std::vector<int>> frontier = {{}};
        for (int r = 1; r <= rank_cap; ++r) {
            std::vector<std::vector<int>> next;
            for (const auto& base : frontier) {
                const int cap = base.empty() ? hi : base.back();
                for (int n = lo; n <= cap; ++n) {
                    auto ext = base;
                    ext.push_back(n);
                    next.push_back(ext);
                    twist_lists.push_back(std::move(ext));
                }
            }
            frontier = std::move(next);
        }
    }
    std::vector<TorsionPattern> torsions = {{}};
    for (const auto& [x, part] : g.torsion) {
        std::vector<TorsionPattern> next;
        for (const auto& base : torsions)
            for (const Partition& kappa : componentwise_dominated(part)) {
                auto ext = base;
                if (!kappa.empty()) ext.emplace_back(x, kappa);
                next.push_back(std::move(ext));
            }
        torsions = std::move(next);
    }
    for (const auto& twists : twist_lists)
        for (const auto& torsion : torsions) {
            SheafP1 i = SheafP1::make(f.field, twists, torsion);
            if (embeddable(i, g) && sheaf_quotient_exists(f, i)) out.push_back(i);
        }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

std::vector<SheafP1> sheaf_images_window(const SheafP1& f, const SheafP1& g,
                                         const SheafWindow& w) {
    std::vector<SheafP1> out;
    for (const SheafP1& i : sheaf_image_types(f, g))
        if (sheaf_in_window(i, w)) out.push_back(i);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

std::vector<SheafP1> sheaf_kernels_window(const SheafP1& f, const SheafP1& g,
                                          const SheafWindow& w) {
    const auto images = sheaf_image_types(f, g);
    std::vector<SheafP1> out;
    for (const SheafP1& k : enumerate_sheaf_window(f.field, w))
        for (const SheafP1& i : images)
            if (sheaf_triple_exists(k, f, i)) {
                out.push_back(k);
                break;
            }
    return out;
}

std::vector<SheafP1> sheaf_cokernels_window(const SheafP1& f, const SheafP1& g,
                                            const SheafWindow& w) {
    const auto images = sheaf_image_types(f, g);
    std::vector<SheafP1> out;
    for (const SheafP1& c : enumerate_sheaf_window(f.field, w))
        for (const SheafP1& i : images)
            if (sheaf_triple_exists(i, g, c)) {
                out.push_back(c);
                break;
            }
    return out;
}

// --- classification ----------------------------------------------------------------

ClassifyResult classify_window(const std::vector<SheafP1>& generators, const SheafWindow& w) {
    if (generators.empty())
        fail(Error::Kind::Config, "classification needs at least one generator");
    const FieldTag field = generators.front().field;
    for (const SheafP1& g : generators)
        if (!sheaf_in_window(g, w))
            fail(Error::Kind::WindowTooSmall, "generator outside the window");

    // {sub, ext} closure fixpoint inside the window
    std::set<SheafP1> closure = {SheafP1::zero(field)};
    std::vector<SheafP1> frontier;
    auto add = [&](const SheafP1& f) {
        if (closure.insert(f).second) frontier.push_back(f);
    };
    for (const SheafP1& g : generators)
        for (const SheafP1& s : sheaf_summands(g)) add(s);
    while (!frontier.empty()) {
        std::vector<SheafP1> work = std::move(frontier);
        frontier.clear();
        for (const SheafP1& f : work) {
            for (const SheafP1& s : subsheaves_window(f, w)) add(s);
            std::vector<SheafP1> snapshot(closure.begin(), closure.end());
            for (const SheafP1& other : snapshot) {
                for (const SheafP1& e : sheaf_extensions_window(f, other, w))
                    if (sheaf_in_window(e, w)) add(e);
                for (const SheafP1& e : sheaf_extensions_window(other, f, w))
                    if (sheaf_in_window(e, w)) add(e);
            }
        }
    }

    // the predicted family from the associated points of the generators
    std::set<ClosedPointP1> closed;
    bool generic = false;
    for (const SheafP1& g : generators) {
        if (!g.twists.empty()) generic = true;
        for (const auto& [x, part] : g.torsion) closed.insert(x);
    }
    ClassifyResult res;
    if (!generic) {
        res.family = TorfFamilyP1::type1({closed.begin(), closed.end()});
    } else if (closed.empty()) {
        int n = w.twist_lo;
        for (const SheafP1& f : closure)
            for (int t : f.twists) n = std::max(n, t);
        if (n - w.twist_lo < 3)
            fail(Error::Kind::WindowTooSmall,
                 "window too shallow below the maximal twist for a stable fixpoint");
        res.family = TorfFamilyP1::type3(n);
    } else {
        res.family = TorfFamilyP1::type2({closed.begin(), closed.end()});
    }

    // verify: the family's window restriction equals the closure fixpoint
    std::set<SheafP1> predicted;
    for (const SheafP1& f : enumerate_sheaf_window(field, w))
        if (family_membership(f, res.family)) predicted.insert(f);
    res.classified = predicted == closure;
    res.closure = {closure.begin(), closure.end()};
    return res;
}

}  // namespace cohclass
