#include "cohclass/subcat.hpp"

#include <algorithm>
#include <array>
#include <deque>

namespace cohclass {

std::string closure_op_name(ClosureOp op) {
    switch (op) {
        case ClosureOp::Sub: return "sub";
        case ClosureOp::Quot: return "quot";
        case ClosureOp::Image: return "image";
        case ClosureOp::Kernel: return "kernel";
        case ClosureOp::Cokernel: return "cokernel";
        case ClosureOp::Ext: return "ext";
        case ClosureOp::TwistLine: return "twist";
        case ClosureOp::Summand: return "summand";
    }
    return "?";
}

Universe Universe::affine(Ring ring, AffineWindow window) {
    validate_window(ring, window);
    Universe u;
    u.ring_ = std::move(ring);
    u.aw_ = std::move(window);
    u.mods_ = enumerate_window(*u.ring_, u.aw_);
    for (const auto& m : u.mods_) u.labels_.push_back(module_label(*u.ring_, m));
    u.primes_ = window_primes(*u.ring_, u.aw_);
    u.build_prime_tables();
    return u;
}

Universe Universe::projective_line(FieldTag field, SheafWindow window) {
    Universe u;
    u.p1_ = true;
    u.field_ = field;
    u.sw_ = std::move(window);
    u.sheaves_ = enumerate_sheaf_window(field, u.sw_);
    for (const auto& f : u.sheaves_) u.labels_.push_back(f.label());
    u.points_.push_back(PrimePointP1::eta(field));
    for (const auto& x : window_points(field, u.sw_))
        u.points_.push_back(PrimePointP1::closed(x));
    std::sort(u.points_.begin(), u.points_.end());
    u.build_prime_tables();
    return u;
}

void Universe::build_prime_tables() {
    if (!p1_) {
        SpectralPoset poset = SpectralPoset::over(*ring_, primes_);
        primes_ = poset.primes;
        for (const auto& p : primes_) prime_labels_.push_back(ring_->prime_label(p));
        prime_leq_ = poset.specializes;
        for (size_t i = 0; i < mods_.size(); ++i) {
            std::uint64_t am = 0, sm = 0;
            for (const auto& p : module_ass(*ring_, mods_[i])) {
                const int idx = poset.index_of(p);
                if (idx >= 0) am |= std::uint64_t(1) << idx;
            }
            for (const auto& p : module_supp(*ring_, mods_[i], poset))
                sm |= std::uint64_t(1) << poset.index_of(p);
            ass_mask_.push_back(am);
            supp_mask_.push_back(sm);
        }
        zero_ = index_of_module(ModuleNF::zero(*ring_));
    } else {
        for (const auto& p : points_) prime_labels_.push_back(p.label());
        const size_t n = points_.size();
        prime_leq_.assign(n, std::vector<bool>(n, false));
        for (size_t i = 0; i < n; ++i)
            for (size_t j = 0; j < n; ++j)
                // closed points specialize the generic point
                prime_leq_[i][j] = (points_[i] == points_[j]) || points_[j].generic;
        auto point_index = [&](const PrimePointP1& p) {
            return int(std::lower_bound(points_.begin(), points_.end(), p) - points_.begin());
        };
        for (size_t i = 0; i < sheaves_.size(); ++i) {
            std::uint64_t am = 0;
            for (const auto& p : sheaf_ass(sheaves_[i]))
                am |= std::uint64_t(1) << point_index(p);
            std::uint64_t sm = am;
            if (!sheaves_[i].twists.empty()) sm = (std::uint64_t(1) << n) - 1;
            ass_mask_.push_back(am);
            supp_mask_.push_back(sm);
        }
        zero_ = index_of_sheaf(SheafP1::zero(field_));
    }
    if (prime_labels_.size() > 62)
        fail(Error::Kind::Config, "too many tracked primes for the mask representation");
}

int Universe::index_of_module(const ModuleNF& m) const {
    auto it = std::lower_bound(mods_.begin(), mods_.end(), m);
    if (it == mods_.end() || !(*it == m)) return -1;
    return int(it - mods_.begin());
}

int Universe::index_of_sheaf(const SheafP1& f) const {
    auto it = std::lower_bound(sheaves_.begin(), sheaves_.end(), f);
    if (it == sheaves_.end() || !(*it == f)) return -1;
    return int(it - sheaves_.begin());
}

std::string Universe::prime_set_label(std::uint64_t mask) const {
    std::string s = "{";
    bool first = true;
    for (size_t i = 0; i < prime_labels_.size(); ++i) {
        if (!(mask & (std::uint64_t(1) << i))) continue;
        if (!first) s += ",";
        s += prime_labels_[i];
        first = false;
    }
    return s + "}";
}

int Universe::prime_index_by_label(const std::string& label) const {
    for (size_t i = 0; i < prime_labels_.size(); ++i)
        if (prime_labels_[i] == label) return int(i);
    return -1;
}

std::uint64_t Universe::specialization_closure(std::uint64_t mask, std::uint64_t within) const {
    std::uint64_t out = mask & within;
    for (size_t j = 0; j < prime_labels_.size(); ++j) {
        if (!(mask & (std::uint64_t(1) << j))) continue;
        for (size_t i = 0; i < prime_labels_.size(); ++i)
            if ((within & (std::uint64_t(1) << i)) && prime_leq_[i][j])
                out |= std::uint64_t(1) << i;
    }
    return out;
}

bool Universe::is_specialization_closed(std::uint64_t mask, std::uint64_t within) const {
    return specialization_closure(mask, within) == (mask & within);
}

const Bitset& Universe::subs(int i) {
    auto it = subs_.find(i);
    if (it != subs_.end()) return it->second;
    Bitset b(size());
    for (size_t k = 0; k < size(); ++k) {
        if (p1_ ? embeddable(sheaves_[k], sheaves_[size_t(i)])
                : is_submodule_type(*ring_, mods_[k], mods_[size_t(i)]))
            b.set(k);
    }
    return subs_.emplace(i, std::move(b)).first->second;
}

const Bitset& Universe::quots(int i) {
    auto it = quots_.find(i);
    if (it != quots_.end()) return it->second;
    Bitset b(size());
    for (size_t k = 0; k < size(); ++k) {
        if (p1_ ? sheaf_quotient_exists(sheaves_[size_t(i)], sheaves_[k])
                : is_module_quotient_type(*ring_, mods_[size_t(i)], mods_[k]))
            b.set(k);
    }
    return quots_.emplace(i, std::move(b)).first->second;
}

const Bitset& Universe::exts(int i, int j) {
    const auto key = std::make_pair(i, j);
    auto it = exts_.find(key);
    if (it != exts_.end()) return it->second;
    Bitset b(size());
    for (size_t k = 0; k < size(); ++k) {
        if (p1_ ? sheaf_triple_exists(sheaves_[size_t(i)], sheaves_[k], sheaves_[size_t(j)])
                : module_triple_exists(*ring_, mods_[size_t(i)], mods_[k], mods_[size_t(j)]))
            b.set(k);
    }
    return exts_.emplace(key, std::move(b)).first->second;
}

const Bitset& Universe::images(int i, int j) {
    const auto key = std::make_pair(i, j);
    auto it = images_.find(key);
    if (it != images_.end()) return it->second;
    Bitset b(size());
    if (p1_) {
        for (const SheafP1& img : sheaf_image_types(sheaves_[size_t(i)], sheaves_[size_t(j)])) {
            const int k = index_of_sheaf(img);
            if (k >= 0) b.set(size_t(k));
        }
    } else {
        for (size_t k = 0; k < size(); ++k)
            if (is_module_quotient_type(*ring_, mods_[size_t(i)], mods_[k]) &&
                is_submodule_type(*ring_, mods_[k], mods_[size_t(j)]))
                b.set(k);
    }
    return images_.emplace(key, std::move(b)).first->second;
}

const Bitset& Universe::kernels(int i, int j) {
    const auto key = std::make_pair(i, j);
    auto it = kernels_.find(key);
    if (it != kernels_.end()) return it->second;
    Bitset b(size());
    if (p1_) {
        // every image type stays inside the window (its twists, rank and
        // torsion are bounded by the two endpoints), so the cached image
        // table is the complete list
        const auto img_members = images(i, j).members();
        for (size_t k = 0; k < size(); ++k)
            for (int img : img_members)
                if (sheaf_triple_exists(sheaves_[k], sheaves_[size_t(i)],
                                        sheaves_[size_t(img)])) {
                    b.set(k);
                    break;
                }
    } else {
        std::vector<ModuleNF> imgs;
        for (const ModuleNF& cand : all_submodule_types(*ring_, mods_[size_t(j)]))
            if (is_module_quotient_type(*ring_, mods_[size_t(i)], cand)) imgs.push_back(cand);
        for (size_t k = 0; k < size(); ++k)
            for (const ModuleNF& img : imgs)
                if (module_triple_exists(*ring_, mods_[k], mods_[size_t(i)], img)) {
                    b.set(k);
                    break;
                }
    }
    return kernels_.emplace(key, std::move(b)).first->second;
}

const Bitset& Universe::cokernels(int i, int j) {
    const auto key = std::make_pair(i, j);
    auto it = cokernels_.find(key);
    if (it != cokernels_.end()) return it->second;
    Bitset b(size());
    if (p1_) {
        const auto img_members = images(i, j).members();
        for (size_t k = 0; k < size(); ++k)
            for (int img : img_members)
                if (sheaf_triple_exists(sheaves_[size_t(img)], sheaves_[size_t(j)],
                                        sheaves_[k])) {
                    b.set(k);
                    break;
                }
    } else {
        std::vector<ModuleNF> imgs;
        for (const ModuleNF& cand : all_submodule_types(*ring_, mods_[size_t(j)]))
            if (is_module_quotient_type(*ring_, mods_[size_t(i)], cand)) imgs.push_back(cand);
        for (size_t k = 0; k < size(); ++k)
            for (const ModuleNF& img : imgs)
                if (module_triple_exists(*ring_, img, mods_[size_t(j)], mods_[k])) {
                    b.set(k);
                    break;
                }
    }
    return cokernels_.emplace(key, std::move(b)).first->second;
}

const Bitset& Universe::summands(int i) {
    auto it = summands_.find(i);
    if (it != summands_.end()) return it->second;
    Bitset b(size());
    if (p1_) {
        for (const SheafP1& s : sheaf_summands(sheaves_[size_t(i)])) {
            const int k = index_of_sheaf(s);
            if (k >= 0) b.set(size_t(k));
        }
    } else {
        for (const ModuleNF& s : module_summands(*ring_, mods_[size_t(i)])) {
            const int k = index_of_module(s);
            if (k >= 0) b.set(size_t(k));
        }
    }
    return summands_.emplace(i, std::move(b)).first->second;
}

int Universe::sum_index(int i, int j) {
    const auto key = std::minmax(i, j);
    auto it = sums_.find(key);
    if (it != sums_.end()) return it->second;
    int idx = -1;
    if (p1_) {
        SheafP1 s = sheaf_sum(sheaves_[size_t(i)], sheaves_[size_t(j)]);
        idx = sheaf_in_window(s, sw_) ? index_of_sheaf(s) : -1;
    } else {
        ModuleNF s = direct_sum(*ring_, mods_[size_t(i)], mods_[size_t(j)]);
        idx = in_window(*ring_, aw_, s) ? index_of_module(s) : -1;
    }
    sums_.emplace(key, idx);
    return idx;
}

int Universe::twist_index(int i, int m) {
    if (!p1_) fail(Error::Kind::UnsupportedBackend, "twists only exist over the projective line");
    const auto key = std::make_pair(i, m);
    auto it = twists_.find(key);
    if (it != twists_.end()) return it->second;
    SheafP1 t = twist(sheaves_[size_t(i)], m);
    const int idx = sheaf_in_window(t, sw_) ? index_of_sheaf(t) : -1;
    twists_.emplace(key, idx);
    return idx;
}

int Universe::tensor_index(int i, int j) {
    if (!supports_tensor()) fail(Error::Kind::UnsupportedBackend, "tensor unsupported here");
    const auto key = std::minmax(i, j);
    auto it = tensors_.find(key);
    if (it != tensors_.end()) return it->second;
    ModuleNF t = tensor_module(*ring_, mods_[size_t(i)], mods_[size_t(j)]);
    const int idx = in_window(*ring_, aw_, t) ? index_of_module(t) : -1;
    tensors_.emplace(key, idx);
    return idx;
}

bool Universe::supports_images() const {
    return p1_ || ring_->kind() != BackendKind::Monomial;
}

bool Universe::supports_tensor() const {
    return !p1_ && ring_->kind() != BackendKind::Monomial;
}

const std::vector<std::array<int, 3>>& Universe::conflations() {
    if (conflations_) return *conflations_;
    std::vector<std::array<int, 3>> out;
    if (p1_ || ring_->kind() != BackendKind::Monomial) {
        for (int a = 0; a < int(size()); ++a)
            for (int b = 0; b < int(size()); ++b)
                for (int e : exts(a, b).members()) out.push_back({a, e, b});
    } else {
        for (const Conflation& c : window_conflations(*ring_, mods_, aw_)) {
            const int a = index_of_module(c.sub), e = index_of_module(c.mid),
                      b = index_of_module(c.quot);
            if (a >= 0 && e >= 0 && b >= 0) out.push_back({a, e, b});
        }
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    conflations_ = std::move(out);
    return *conflations_;
}

Bitset Universe::closure_fixpoint(const std::vector<int>& generators,
                                  const std::set<ClosureOp>& ops) {
    if (ops.count(ClosureOp::TwistLine)) {
        if (!p1_)
            fail(Error::Kind::UnsupportedBackend, "twist closure only exists over P1");
        if (sw_.twist_hi - sw_.twist_lo < 3)
            fail(Error::Kind::WindowTooSmall,
                 "twist closure needs a twist span of at least 3 to certify a fixpoint");
    }
    if ((ops.count(ClosureOp::Image) || ops.count(ClosureOp::Kernel) ||
         ops.count(ClosureOp::Cokernel)) &&
        !supports_images())
        fail(Error::Kind::UnsupportedBackend,
             "hom enumeration over monomial quotients is out of scope");

    Bitset cur(size());
    std::deque<int> queue;
    auto add = [&](int idx) {
        if (idx < 0 || cur.test(size_t(idx))) return;
        cur.set(size_t(idx));
        queue.push_back(idx);
    };
    add(zero_);
    for (int g : generators) {
        if (g < 0 || g >= int(size())) fail(Error::Kind::Config, "generator outside the window");
        add(g);
    }
    while (!queue.empty()) {
        const int x = queue.front();
        queue.pop_front();
        for (int s : summands(x).members()) add(s);
        if (ops.count(ClosureOp::Sub))
            for (int s : subs(x).members()) add(s);
        if (ops.count(ClosureOp::Quot))
            for (int s : quots(x).members()) add(s);
        if (ops.count(ClosureOp::TwistLine)) {
            add(twist_index(x, 1));
            add(twist_index(x, -1));
        }
        // binary operations against every current member (including x)
        const auto snapshot = cur.members();
        for (int y : snapshot) {
            add(sum_index(x, y));
            if (ops.count(ClosureOp::Ext)) {
                for (int e : exts(x, y).members()) add(e);
                for (int e : exts(y, x).members()) add(e);
            }
            if (ops.count(ClosureOp::Image)) {
                for (int e : images(x, y).members()) add(e);
                for (int e : images(y, x).members()) add(e);
            }
            if (ops.count(ClosureOp::Kernel)) {
                for (int e : kernels(x, y).members()) add(e);
                for (int e : kernels(y, x).members()) add(e);
            }
            if (ops.count(ClosureOp::Cokernel)) {
                for (int e : cokernels(x, y).members()) add(e);
                for (int e : cokernels(y, x).members()) add(e);
            }
        }
    }
    // binary ops need a final sweep: pairs formed by elements added after a
    // member left the queue are handled because the newcomer scans all of cur
    return cur;
}

SubcatDescriptor SubcatDescriptor::ass_class(const Universe& u, std::uint64_t mask) {
    (void)u;
    SubcatDescriptor d;
    d.kind = Kind::AssClass;
    d.prime_mask = mask;
    return d;
}

SubcatDescriptor SubcatDescriptor::supp_class(const Universe& u, std::uint64_t mask) {
    const std::uint64_t everything = (std::uint64_t(1) << u.prime_count()) - 1;
    if (!u.is_specialization_closed(mask, everything))
        fail(Error::Kind::Config,
             "support class needs a specialization-closed subset, got " +
                 u.prime_set_label(mask));
    SubcatDescriptor d;
    d.kind = Kind::SuppClass;
    d.prime_mask = mask;
    return d;
}

SubcatDescriptor SubcatDescriptor::generated(std::vector<int> gens, std::set<ClosureOp> ops) {
    SubcatDescriptor d;
    d.kind = Kind::Generated;
    d.generators = std::move(gens);
    d.ops = std::move(ops);
    return d;
}

SubcatDescriptor SubcatDescriptor::family_p1(TorfFamilyP1 fam) {
    SubcatDescriptor d;
    d.kind = Kind::FamilyP1;
    d.family = std::move(fam);
    return d;
}

SubcatDescriptor SubcatDescriptor::zero() { return SubcatDescriptor{}; }

SubcatDescriptor SubcatDescriptor::all() {
    SubcatDescriptor d;
    d.kind = Kind::All;
    return d;
}

Bitset evaluate(Universe& u, const SubcatDescriptor& d) {
    Bitset b(u.size());
    switch (d.kind) {
        case SubcatDescriptor::Kind::AssClass:
            for (size_t i = 0; i < u.size(); ++i)
                if ((u.ass_mask(int(i)) & ~d.prime_mask) == 0) b.set(i);
            return b;
        case SubcatDescriptor::Kind::SuppClass:
            for (size_t i = 0; i < u.size(); ++i)
                if ((u.supp_mask(int(i)) & ~d.prime_mask) == 0) b.set(i);
            return b;
        case SubcatDescriptor::Kind::Generated:
            return u.closure_fixpoint(d.generators, d.ops);
        case SubcatDescriptor::Kind::FamilyP1:
            if (!u.is_p1())
                fail(Error::Kind::UnsupportedBackend, "sheaf families need the projective line");
            for (size_t i = 0; i < u.size(); ++i)
                if (family_membership(u.sheaf(int(i)), d.family)) b.set(i);
            return b;
        case SubcatDescriptor::Kind::Zero:
            b.set(size_t(u.zero_index()));
            return b;
        case SubcatDescriptor::Kind::All:
            for (size_t i = 0; i < u.size(); ++i) b.set(i);
            return b;
    }
    return b;
}

std::uint64_t ass_of(Universe& u, const SubcatDescriptor& d) {
    std::uint64_t mask = 0;
    for (int m : evaluate(u, d).members()) mask |= u.ass_mask(m);
    return mask;
}

std::uint64_t supp_of(Universe& u, const SubcatDescriptor& d) {
    std::uint64_t mask = 0;
    for (int m : evaluate(u, d).members()) mask |= u.supp_mask(m);
    return mask;
}

void Universe::precompute(const std::set<ClosureOp>& ops) {
    const int n = int(size());
    for (int i = 0; i < n; ++i) {
        summands(i);
        if (ops.count(ClosureOp::Sub)) subs(i);
        if (ops.count(ClosureOp::Quot)) quots(i);
        if (p1_ && ops.count(ClosureOp::TwistLine)) {
            twist_index(i, 1);
            twist_index(i, -1);
        }
        for (int j = 0; j < n; ++j) {
            sum_index(i, j);
            if (ops.count(ClosureOp::Ext)) exts(i, j);
            if (ops.count(ClosureOp::Image)) images(i, j);
            if (ops.count(ClosureOp::Kernel)) kernels(i, j);
            if (ops.count(ClosureOp::Cokernel)) cokernels(i, j);
        }
    }
}

std::vector<std::uint64_t> spec_closed_subsets(const Universe& u, std::uint64_t within) {
    std::vector<int> primes;
    for (size_t i = 0; i < u.prime_count(); ++i)
        if (within & (std::uint64_t(1) << i)) primes.push_back(int(i));
    std::vector<std::uint64_t> out;
    const size_t n = primes.size();
    for (std::uint64_t sub = 0; sub < (std::uint64_t(1) << n); ++sub) {
        std::uint64_t mask = 0;
        for (size_t k = 0; k < n; ++k)
            if (sub & (std::uint64_t(1) << k)) mask |= std::uint64_t(1) << primes[k];
        if (u.is_specialization_closed(mask, within)) out.push_back(mask);
    }
    std::sort(out.begin(), out.end(), [](std::uint64_t a, std::uint64_t b) {
        const int ca = __builtin_popcountll(a), cb = __builtin_popcountll(b);
        return ca != cb ? ca < cb : a < b;
    });
    return out;
}

Lattice lattice_of_downsets(const Universe& u, std::uint64_t within) {
    Lattice l;
    for (std::uint64_t mask : spec_closed_subsets(u, within))
        l.nodes.push_back({u.prime_set_label(mask), mask});
    const int n = int(l.nodes.size());
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            const std::uint64_t a = l.nodes[size_t(i)].prime_mask,
                                b = l.nodes[size_t(j)].prime_mask;
            if (a == b || (a & ~b)) continue;  // need a proper subset
            bool covered = true;
            for (int k = 0; k < n && covered; ++k) {
                if (k == i || k == j) continue;
                const std::uint64_t c = l.nodes[size_t(k)].prime_mask;
                if (!(a & ~c) && !(c & ~b) && c != a && c != b) covered = false;
            }
            if (covered) l.covers.emplace_back(i, j);
        }
    std::sort(l.covers.begin(), l.covers.end());
    return l;
}

std::string lattice_dot(const Lattice& l) {
    std::string s = "digraph lattice {\n  rankdir=BT;\n  node [shape=box];\n";
    for (size_t i = 0; i < l.nodes.size(); ++i)
        s += "  n" + std::to_string(i) + " [label=\"" + l.nodes[i].label + "\"];\n";
    for (const auto& [a, b] : l.covers)
        s += "  n" + std::to_string(a) + " -> n" + std::to_string(b) + ";\n";
    s += "}\n";
    return s;
}

}  // namespace cohclass
