#pragma once

// Arrangement pool for the patch-ordering pretext task.
//
// The label space is a set of patch permutations kept pairwise far apart in
// Hamming distance: a greedy scan admits a candidate only if it differs from
// every admitted member in strictly more than `threshold` positions. Classes
// are then drawn from the pool uniformly without replacement, with the
// identity always kept as class 0.

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "jigsaw/rng.hpp"

namespace jigsaw {

struct Permutation {
    // order[slot] = source index placed at that slot; a bijection on 0..n-1.
    std::vector<std::uint8_t> order;

    static Permutation identity(int n) {
        Permutation p;
        p.order.resize(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i) p.order[static_cast<std::size_t>(i)] = static_cast<std::uint8_t>(i);
        return p;
    }

    int size() const { return static_cast<int>(order.size()); }

    bool is_bijection() const {
        std::vector<bool> seen(order.size(), false);
        for (auto x : order) {
            if (x >= order.size() || seen[x]) return false;
            seen[x] = true;
        }
        return true;
    }

    bool is_identity() const {
        for (std::size_t i = 0; i < order.size(); ++i)
            if (order[i] != i) return false;
        return true;
    }

    Permutation inverse() const {
        Permutation inv;
        inv.order.resize(order.size());
        for (std::size_t i = 0; i < order.size(); ++i) inv.order[order[i]] = static_cast<std::uint8_t>(i);
        return inv;
    }

    // Gather application: result[i] = seq[order[i]].
    template <class T>
    std::vector<T> apply(const std::vector<T>& seq) const {
        if (seq.size() != order.size()) throw std::invalid_argument("Permutation::apply: length mismatch");
        std::vector<T> out(seq.size());
        for (std::size_t i = 0; i < order.size(); ++i) out[i] = seq[order[i]];
        return out;
    }

    bool operator==(const Permutation& o) const { return order == o.order; }
};

inline int hamming_distance(const Permutation& a, const Permutation& b) {
    if (a.order.size() != b.order.size())
        throw std::invalid_argument("hamming_distance: permutations have different lengths");
    int d = 0;
    for (std::size_t i = 0; i < a.order.size(); ++i) d += (a.order[i] != b.order[i]) ? 1 : 0;
    return d;
}

struct PermutationPool {
    std::vector<Permutation> perms;  // perms[0] is the identity
    int n_patches = 0;
    int min_distance_exclusive = 0;  // admitted pairs satisfy distance > this
    std::string enumeration_order;   // label of the S_N iteration order

    std::size_t size() const { return perms.size(); }

    std::uint64_t digest() const {
        std::uint64_t h = fnv1a64(&n_patches, sizeof(n_patches));
        h = fnv1a64(&min_distance_exclusive, sizeof(min_distance_exclusive), h);
        h = fnv1a64(enumeration_order, h);
        for (const auto& p : perms) h = fnv1a64(p.order.data(), p.order.size(), h);
        return h;
    }
};

struct PermutationSet {
    std::vector<Permutation> perms;  // perms[0] is the identity
    int class_count = 0;
    std::uint64_t source_pool_hash = 0;
    std::uint64_t rng_seed = 0;
    int n_patches = 0;
    int threshold = 0;
    std::string enumeration_order;

    std::size_t size() const { return perms.size(); }
};

// Greedy scan of S_N in lexicographic order starting from the identity.
// Deterministic; no RNG involved. N > 9 is refused unless allow_large is set,
// the scan is factorial in N.
inline PermutationPool generate_candidate_pool(int n_patches = 9, int threshold = 4,
                                               bool allow_large = false) {
    if (n_patches < 2) throw std::invalid_argument("generate_candidate_pool: n_patches must be >= 2");
    if (threshold < 0 || threshold >= n_patches)
        throw std::invalid_argument("generate_candidate_pool: threshold must be in [0, n_patches)");
    if (n_patches > 9 && !allow_large)
        throw std::invalid_argument(
            "generate_candidate_pool: n_patches > 9 enumerates more than 9! candidates; "
            "pass allow_large to override");

    PermutationPool pool;
    pool.n_patches = n_patches;
    pool.min_distance_exclusive = threshold;
    pool.enumeration_order = "lexicographic";

    Permutation cand = Permutation::identity(n_patches);
    pool.perms.push_back(cand);
    while (std::next_permutation(cand.order.begin(), cand.order.end())) {
        bool ok = true;
        for (const auto& a : pool.perms) {
            int d = 0;
            const std::uint8_t* x = a.order.data();
            const std::uint8_t* y = cand.order.data();
            for (int i = 0; i < n_patches; ++i) d += (x[i] != y[i]) ? 1 : 0;
            if (d <= threshold) {
                ok = false;
                break;
            }
        }
        if (ok) pool.perms.push_back(cand);
    }
    return pool;
}

// Class 0 is the identity; the remaining C-1 classes are drawn uniformly
// without replacement from pool minus the identity.
inline PermutationSet sample_class_set(const PermutationPool& pool, int class_count,
                                       std::uint64_t seed) {
    if (class_count < 1 || static_cast<std::size_t>(class_count) > pool.size())
        throw std::invalid_argument("sample_class_set: class_count must be in [1, pool size]");

    PermutationSet set;
    set.class_count = class_count;
    set.source_pool_hash = pool.digest();
    set.rng_seed = seed;
    set.n_patches = pool.n_patches;
    set.threshold = pool.min_distance_exclusive;
    set.enumeration_order = pool.enumeration_order;

    set.perms.push_back(Permutation::identity(pool.n_patches));
    Pcg32 rng(derive_seed(seed, "permset.sample"));
    auto picks = sample_without_replacement(pool.size() - 1, static_cast<std::size_t>(class_count - 1), rng);
    for (auto i : picks) set.perms.push_back(pool.perms[i + 1]);
    return set;
}

namespace detail {

inline void validate_set(const PermutationSet& set) {
    if (set.perms.empty()) throw std::runtime_error("permutation set: empty (violates |perms| = C >= 1)");
    if (static_cast<int>(set.perms.size()) != set.class_count)
        throw std::runtime_error("permutation set: |perms| does not equal class_count");
    if (!set.perms.front().is_identity())
        throw std::runtime_error("permutation set: first member is not the identity");
    for (std::size_t i = 0; i < set.perms.size(); ++i) {
        if (set.perms[i].size() != set.n_patches)
            throw std::runtime_error("permutation set: row " + std::to_string(i) + " has wrong length");
        if (!set.perms[i].is_bijection())
            throw std::runtime_error("permutation set: row " + std::to_string(i) + " is not a bijection");
    }
    for (std::size_t i = 0; i < set.perms.size(); ++i)
        for (std::size_t j = i + 1; j < set.perms.size(); ++j)
            if (set.perms[i] == set.perms[j])
                throw std::runtime_error("permutation set: duplicate rows " + std::to_string(i) + " and " +
                                         std::to_string(j));
}

}  // namespace detail

inline void save_permutation_set(const PermutationSet& set, const std::string& path) {
    nlohmann::json j;
    j["n_patches"] = set.n_patches;
    j["threshold"] = set.threshold;
    j["enumeration_order"] = set.enumeration_order;
    j["seed"] = set.rng_seed;
    j["pool_digest"] = set.source_pool_hash;
    auto rows = nlohmann::json::array();
    for (const auto& p : set.perms) {
        auto row = nlohmann::json::array();
        for (auto x : p.order) row.push_back(static_cast<int>(x));
        rows.push_back(std::move(row));
    }
    j["perms"] = std::move(rows);
    std::ofstream f(path);
    if (!f) throw std::runtime_error("save_permutation_set: cannot open " + path);
    f << j.dump(1) << "\n";
}

inline PermutationSet load_permutation_set(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw std::runtime_error("load_permutation_set: cannot open " + path);
    nlohmann::json j;
    try {
        f >> j;
    } catch (const nlohmann::json::exception& e) {
        throw std::runtime_error("load_permutation_set: " + path + " is not valid JSON: " + e.what());
    }

    PermutationSet set;
    try {
        set.n_patches = j.at("n_patches").get<int>();
        set.threshold = j.at("threshold").get<int>();
        set.enumeration_order = j.at("enumeration_order").get<std::string>();
        set.rng_seed = j.at("seed").get<std::uint64_t>();
        set.source_pool_hash = j.at("pool_digest").get<std::uint64_t>();
        for (const auto& row : j.at("perms")) {
            Permutation p;
            for (const auto& x : row) {
                int xi = x.get<int>();
                if (xi < 0 || xi > 255) throw std::runtime_error("index out of byte range");
                p.order.push_back(static_cast<std::uint8_t>(xi));
            }
            set.perms.push_back(std::move(p));
        }
    } catch (const nlohmann::json::exception& e) {
        throw std::runtime_error("load_permutation_set: missing or malformed field: " + std::string(e.what()));
    }
    set.class_count = static_cast<int>(set.perms.size());
    detail::validate_set(set);
    return set;
}

}  // namespace jigsaw
