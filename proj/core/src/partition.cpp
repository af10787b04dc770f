#include "cohclass/partition.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <mutex>

namespace cohclass {

int partition_weight(const Partition& p) {
    int s = 0;
    for (int x : p) s += x;
    return s;
}

Partition normalize_partition(Partition p) {
    std::sort(p.begin(), p.end(), std::greater<>());
    while (!p.empty() && p.back() == 0) p.pop_back();
    return p;
}

std::string partition_str(const Partition& p) {
    std::string s = "(";
    for (size_t i = 0; i < p.size(); ++i) {
        if (i) s += ",";
        s += std::to_string(p[i]);
    }
    return s + ")";
}

bool fits_componentwise(const Partition& mu, const Partition& lambda) {
    if (mu.size() > lambda.size()) return false;
    for (size_t i = 0; i < mu.size(); ++i)
        if (mu[i] > lambda[i]) return false;
    return true;
}

bool lr_positive(const Partition& nu, const Partition& lambda, const Partition& mu) {
    if (partition_weight(nu) != partition_weight(lambda) + partition_weight(mu)) return false;
    if (!fits_componentwise(lambda, nu)) return false;
    if (!fits_componentwise(mu, nu)) return false;
    if (mu.empty()) return lambda == nu;
    if (lambda == nu) return mu.empty();

    // Fill the skew shape nu/lambda with content mu: rows weakly increasing,
    // columns strictly increasing, reverse reading word a lattice word. The
    // lattice condition is checked incrementally per completed row, scanning
    // it right to left.
    const int nrows = int(nu.size());
    std::vector<int> lane(nrows), width(nrows);
    for (int r = 0; r < nrows; ++r) {
        lane[r] = (size_t(r) < lambda.size()) ? lambda[size_t(r)] : 0;
        width[r] = nu[size_t(r)] - lane[r];
        if (width[r] < 0) return false;
    }
    const int m = int(mu.size());
    std::vector<int> remaining(mu.begin(), mu.end());
    std::vector<int> counts(size_t(m), 0);
    // rows stored as value vectors, left to right
    std::vector<std::vector<int>> rows(static_cast<size_t>(nrows));

    std::function<bool(int)> fill_row = [&](int r) -> bool {
        if (r == nrows) return true;
        std::vector<int>& row = rows[size_t(r)];
        row.assign(size_t(width[r]), 0);
        const std::vector<int>& prev = r > 0 ? rows[size_t(r - 1)] : row;

        std::function<bool(int)> place = [&](int c) -> bool {
            if (c == width[r]) {
                // lattice check and counter update, right to left
                std::vector<int> delta(size_t(m), 0);
                bool ok = true;
                for (int cc = width[r] - 1; cc >= 0 && ok; --cc) {
                    int v = row[size_t(cc)];
                    ++delta[size_t(v - 1)];
                    if (v > 1 &&
                        counts[size_t(v - 1)] + delta[size_t(v - 1)] >
                            counts[size_t(v - 2)] + delta[size_t(v - 2)])
                        ok = false;
                }
                if (!ok) return false;
                for (int i = 0; i < m; ++i) counts[size_t(i)] += delta[size_t(i)];
                if (fill_row(r + 1)) return true;
                for (int i = 0; i < m; ++i) counts[size_t(i)] -= delta[size_t(i)];
                return false;
            }
            const int abs_col = lane[r] + c;
            for (int v = 1; v <= m; ++v) {
                if (remaining[size_t(v - 1)] == 0) continue;
                if (c > 0 && row[size_t(c - 1)] > v) continue;
                if (r > 0) {
                    // column strictness against the row above
                    const int plane = lane[r - 1];
                    const int pend = (size_t(r - 1) < nu.size()) ? nu[size_t(r - 1)] : 0;
                    if (abs_col >= pend) continue;  // shape not a valid skew column
                    if (abs_col >= plane && prev[size_t(abs_col - plane)] >= v) continue;
                }
                row[size_t(c)] = v;
                --remaining[size_t(v - 1)];
                if (place(c + 1)) return true;
                ++remaining[size_t(v - 1)];
            }
            return false;
        };
        return place(0);
    };
    return fill_row(0);
}

std::vector<Partition> partitions_of(int size, int max_part, int max_parts) {
    std::vector<Partition> out;
    Partition cur;
    std::function<void(int, int)> rec = [&](int left, int cap) {
        if (left == 0) {
            out.push_back(cur);
            return;
        }
        if (max_parts >= 0 && int(cur.size()) >= max_parts) return;
        for (int part = std::min(cap, left); part >= 1; --part) {
            cur.push_back(part);
            rec(left - part, part);
            cur.pop_back();
        }
    };
    if (size >= 0) rec(size, std::min(max_part, size));
    return out;
}

std::vector<Partition> partitions_up_to(int max_size, int max_part, int max_parts) {
    std::vector<Partition> out;
    for (int s = 0; s <= max_size; ++s) {
        auto part = partitions_of(s, max_part, max_parts);
        out.insert(out.end(), part.begin(), part.end());
    }
    return out;
}

std::vector<Partition> lr_middles(const Partition& lambda, const Partition& mu, int max_part) {
    static std::map<std::tuple<Partition, Partition, int>, std::vector<Partition>> cache;
    static std::mutex mu_cache;
    const auto key = std::make_tuple(lambda, mu, max_part);
    {
        std::lock_guard<std::mutex> lock(mu_cache);
        auto it = cache.find(key);
        if (it != cache.end()) return it->second;
    }
    std::vector<Partition> out;
    const int n = partition_weight(lambda) + partition_weight(mu);
    for (const Partition& nu : partitions_of(n, max_part, -1))
        if (lr_positive(nu, lambda, mu)) out.push_back(nu);
    std::lock_guard<std::mutex> lock(mu_cache);
    cache.emplace(key, out);
    return out;
}

std::vector<Partition> componentwise_dominated(const Partition& lambda) {
    std::vector<Partition> out;
    Partition cur;
    std::function<void(size_t, int)> rec = [&](size_t i, int prev) {
        if (i == lambda.size()) {
            out.push_back(normalize_partition(cur));
            return;
        }
        for (int v = 0; v <= std::min(lambda[i], prev); ++v) {
            cur.push_back(v);
            rec(i + 1, v);
            cur.pop_back();
        }
    };
    rec(0, lambda.empty() ? 0 : lambda[0]);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

std::vector<std::pair<Partition, Partition>> sub_quotient_pairs(const Partition& nu) {
    static std::map<Partition, std::vector<std::pair<Partition, Partition>>> cache;
    static std::mutex mu_cache;
    {
        std::lock_guard<std::mutex> lock(mu_cache);
        auto it = cache.find(nu);
        if (it != cache.end()) return it->second;
    }
    std::vector<std::pair<Partition, Partition>> out;
    const int n = partition_weight(nu);
    const int max_part = nu.empty() ? 0 : nu[0];
    for (int k = 0; k <= n; ++k)
        for (const Partition& alpha : partitions_of(k, max_part, -1))
            for (const Partition& beta : partitions_of(n - k, max_part, -1))
                if (lr_positive(nu, alpha, beta)) out.emplace_back(alpha, beta);
    std::lock_guard<std::mutex> lock(mu_cache);
    cache.emplace(nu, out);
    return out;
}

}  // namespace cohclass
