#pragma once

#include "cohclass/poly.hpp"

#include <utility>
#include <vector>

namespace cohclass {

/// Euclidean-domain hooks used by the Smith reduction: Z and k[t].
template <class E>
struct EuclideanOps;

template <>
struct EuclideanOps<Int> {
    static bool is_zero(const Int& a) { return a == 0; }
    static Int norm(const Int& a) { return a < 0 ? Int(-a) : a; }
    static std::pair<Int, Int> divmod(const Int& a, const Int& b) {
        Int q = a / b, r = a - q * b;
        return {q, r};
    }
    static Int zero_like(const Int&) { return Int(0); }
    static Int one_like(const Int&) { return Int(1); }
    /// Unit making the element canonical (positive).
    static Int canonical_unit(const Int& a) { return a < 0 ? Int(-1) : Int(1); }
    static bool is_unit(const Int& a) { return a == 1 || a == -1; }
};

template <>
struct EuclideanOps<Poly> {
    static bool is_zero(const Poly& a) { return a.is_zero(); }
    static Int norm(const Poly& a) { return a.is_zero() ? Int(0) : Int(a.degree() + 1); }
    static std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b) { return a.divmod(b); }
    static Poly zero_like(const Poly& a) { return Poly::zero(a.field()); }
    static Poly one_like(const Poly& a) { return Poly::one(a.field()); }
    static Poly canonical_unit(const Poly& a) {
        return a.is_zero() ? Poly::one(a.field()) : Poly::constant(a.leading().inverse());
    }
    static bool is_unit(const Poly& a) { return a.degree() == 0; }
};

template <class E>
class Mat {
public:
    Mat() = default;
    Mat(int rows, int cols, E fill) : rows_(rows), cols_(cols), v_(size_t(rows) * cols, fill) {}

    static Mat identity(int n, const E& exemplar) {
        Mat m(n, n, EuclideanOps<E>::zero_like(exemplar));
        for (int i = 0; i < n; ++i) m.at(i, i) = EuclideanOps<E>::one_like(exemplar);
        return m;
    }

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    E& at(int i, int j) { return v_[size_t(i) * cols_ + j]; }
    const E& at(int i, int j) const { return v_[size_t(i) * cols_ + j]; }

    void swap_rows(int a, int b) {
        for (int j = 0; j < cols_; ++j) std::swap(at(a, j), at(b, j));
    }
    void swap_cols(int a, int b) {
        for (int i = 0; i < rows_; ++i) std::swap(at(i, a), at(i, b));
    }
    /// row[a] += c * row[b]
    void add_row(int a, int b, const E& c) {
        for (int j = 0; j < cols_; ++j) at(a, j) = at(a, j) + c * at(b, j);
    }
    void add_col(int a, int b, const E& c) {
        for (int i = 0; i < rows_; ++i) at(i, a) = at(i, a) + c * at(i, b);
    }
    void scale_row(int a, const E& c) {
        for (int j = 0; j < cols_; ++j) at(a, j) = at(a, j) * c;
    }
    void scale_col(int a, const E& c) {
        for (int i = 0; i < rows_; ++i) at(i, a) = at(i, a) * c;
    }

private:
    int rows_ = 0, cols_ = 0;
    std::vector<E> v_;
};

template <class E>
struct SmithResult {
    std::vector<E> diagonal;  // d_1 | d_2 | ... with trailing zeros, length min(rows, cols)
    int zero_entries = 0;
};

template <class E>
struct SmithTransforms {
    Mat<E> d, u, v;  // u * input * v == d, with u and v unimodular
};

namespace detail {

template <class E>
void smith_reduce(Mat<E>& m, Mat<E>* u, Mat<E>* v) {
    using Ops = EuclideanOps<E>;
    const int n = std::min(m.rows(), m.cols());
    for (int k = 0; k < n; ++k) {
        while (true) {
            // smallest-norm nonzero pivot in the trailing block, ties by position
            int pi = -1, pj = -1;
            Int best;
            for (int i = k; i < m.rows(); ++i)
                for (int j = k; j < m.cols(); ++j) {
                    if (Ops::is_zero(m.at(i, j))) continue;
                    Int nm = Ops::norm(m.at(i, j));
                    if (pi < 0 || nm < best) {
                        pi = i;
                        pj = j;
                        best = nm;
                    }
                }
            if (pi < 0) return;  // trailing block is zero
            if (pi != k) {
                m.swap_rows(k, pi);
                if (u) u->swap_rows(k, pi);
            }
            if (pj != k) {
                m.swap_cols(k, pj);
                if (v) v->swap_cols(k, pj);
            }
            bool clean = true;
            for (int i = k + 1; i < m.rows(); ++i) {
                if (Ops::is_zero(m.at(i, k))) continue;
                auto [q, r] = Ops::divmod(m.at(i, k), m.at(k, k));
                m.add_row(i, k, -q);
                if (u) u->add_row(i, k, -q);
                if (!Ops::is_zero(r)) clean = false;
            }
            for (int j = k + 1; j < m.cols(); ++j) {
                if (Ops::is_zero(m.at(k, j))) continue;
                auto [q, r] = Ops::divmod(m.at(k, j), m.at(k, k));
                m.add_col(j, k, -q);
                if (v) v->add_col(j, k, -q);
                if (!Ops::is_zero(r)) clean = false;
            }
            if (!clean) continue;
            // pivot must divide the whole trailing block for the divisibility chain
            bool divides_all = true;
            for (int i = k + 1; i < m.rows() && divides_all; ++i)
                for (int j = k + 1; j < m.cols() && divides_all; ++j) {
                    auto [q, r] = Ops::divmod(m.at(i, j), m.at(k, k));
                    (void)q;
                    if (!Ops::is_zero(r)) {
                        m.add_row(k, i, Ops::one_like(m.at(k, k)));
                        if (u) u->add_row(k, i, Ops::one_like(m.at(k, k)));
                        divides_all = false;
                    }
                }
            if (divides_all) break;
        }
        E unit = Ops::canonical_unit(m.at(k, k));
        if (!(unit == Ops::one_like(unit))) {
            E inv_needed = unit;  // units here are self-describing: scale row by it
            m.scale_row(k, inv_needed);
            if (u) u->scale_row(k, inv_needed);
        }
    }
}

}  // namespace detail

/// Smith normal form over Z or k[t]: the returned diagonal d_1 | d_2 | ...
/// holds the invariant factors (canonicalized: positive / monic) followed by
/// the zero entries.
template <class E>
SmithResult<E> smith_normal_form(Mat<E> m) {
    detail::smith_reduce<E>(m, nullptr, nullptr);
    SmithResult<E> res;
    const int n = std::min(m.rows(), m.cols());
    for (int k = 0; k < n; ++k) res.diagonal.push_back(m.at(k, k));
    for (const E& d : res.diagonal)
        if (EuclideanOps<E>::is_zero(d)) ++res.zero_entries;
    return res;
}

template <class E>
SmithTransforms<E> smith_with_transforms(Mat<E> m, const E& exemplar) {
    SmithTransforms<E> t;
    t.u = Mat<E>::identity(m.rows(), exemplar);
    t.v = Mat<E>::identity(m.cols(), exemplar);
    detail::smith_reduce<E>(m, &t.u, &t.v);
    t.d = std::move(m);
    return t;
}

}  // namespace cohclass
