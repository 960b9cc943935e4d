#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <random>
#include <stdexcept>
#include <vector>

#include "signbalance/geometry.hpp"
#include "signbalance/vector.hpp"

namespace signbalance {

enum class PairPolicy { ordered, random };

using RegionFn = std::function<int(const Vector&)>;

// Node of the pairing provenance tree. Leaves carry a 1-based term index
// into the block; diff nodes hold value = left.value - right.value.
struct ReductionNode {
    int left = -1;
    int right = -1;
    std::size_t term_index = 0; // leaves only
    std::size_t min_leaf = 0;   // smallest term index in the subtree
    int round = 0;              // pairing round that created this diff
    Vector value;

    bool is_leaf() const { return left < 0; }
};

struct ReductionLayer {
    int round = 0;
    std::vector<int> node_ids; // alive after this round
};

struct BlockReduction {
    int block_level = 0;
    std::size_t term_count = 0;
    std::vector<ReductionNode> nodes;
    std::vector<ReductionLayer> layers;
    std::vector<int> residual_ids;  // final nonzero roots, at most the region count
    std::vector<int> zero_ids;      // zero-valued roots siphoned off along the way
    Vector residual_sum;
};

struct PairingResult {
    std::vector<std::pair<int, int>> pairs; // (u, v) ids, u has the smaller min_leaf
    std::vector<int> leftovers;
};

// Pair nodes within each region; per region at most one node is left
// over. `ordered` pairs consecutive nodes by ascending minimal leaf term
// index; `random` shuffles within each region using the seed.
inline PairingResult pair_layer(const std::vector<ReductionNode>& arena,
                                const std::vector<int>& ids, const RegionFn& region_fn,
                                PairPolicy policy, std::uint64_t seed) {
    std::vector<std::pair<int, std::vector<int>>> regions; // (region, member ids)
    for (int id : ids) {
        int r = region_fn(arena[static_cast<std::size_t>(id)].value);
        auto it = std::find_if(regions.begin(), regions.end(),
                               [r](const auto& e) { return e.first == r; });
        if (it == regions.end())
            regions.emplace_back(r, std::vector<int>{id});
        else
            it->second.push_back(id);
    }
    std::sort(regions.begin(), regions.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });

    std::mt19937_64 rng(seed);
    PairingResult out;
    for (auto& [r, members] : regions) {
        auto by_min_leaf = [&](int a, int b) {
            return arena[static_cast<std::size_t>(a)].min_leaf <
                   arena[static_cast<std::size_t>(b)].min_leaf;
        };
        std::sort(members.begin(), members.end(), by_min_leaf);
        if (policy == PairPolicy::random)
            std::shuffle(members.begin(), members.end(), rng);
        std::size_t i = 0;
        for (; i + 1 < members.size(); i += 2) {
            int a = members[i];
            int b = members[i + 1];
            if (!by_min_leaf(a, b)) std::swap(a, b);
            out.pairs.emplace_back(a, b);
        }
        if (i < members.size()) out.leftovers.push_back(members[i]);
    }
    return out;
}

// Iterated same-region pairing: replace pairs (u, v) by u - v until at
// most `region_count` nonzero nodes remain. Every diff must satisfy the
// shrink inequality; a violation means region_fn does not keep
// same-region vectors within 60 degrees of each other.
inline BlockReduction reduce_block(const std::vector<Vector>& block_terms,
                                   const RegionFn& region_fn, std::size_t region_count,
                                   PairPolicy policy, std::uint64_t seed,
                                   int block_level = 0) {
    BlockReduction red;
    red.block_level = block_level;
    red.term_count = block_terms.size();

    std::vector<int> alive;
    for (std::size_t i = 0; i < block_terms.size(); ++i) {
        ReductionNode leaf;
        leaf.term_index = i + 1;
        leaf.min_leaf = i + 1;
        leaf.value = block_terms[i];
        red.nodes.push_back(std::move(leaf));
        int id = static_cast<int>(red.nodes.size()) - 1;
        if (is_zero(red.nodes.back().value))
            red.zero_ids.push_back(id);
        else
            alive.push_back(id);
    }

    int round = 0;
    while (alive.size() > region_count) {
        ++round;
        PairingResult pr = pair_layer(red.nodes, alive, region_fn, policy,
                                      seed + static_cast<std::uint64_t>(round));
        std::vector<int> next = pr.leftovers;
        for (auto [u, v] : pr.pairs) {
            const Vector& uv = red.nodes[static_cast<std::size_t>(u)].value;
            const Vector& vv = red.nodes[static_cast<std::size_t>(v)].value;
            if (!difference_shrinks(uv, vv))
                throw std::runtime_error(
                    "reduce_block: pairing produced a growing difference; "
                    "region function violates the same-region angle hypothesis");
            ReductionNode diff;
            diff.left = u;
            diff.right = v;
            diff.round = round;
            diff.min_leaf = std::min(red.nodes[static_cast<std::size_t>(u)].min_leaf,
                                     red.nodes[static_cast<std::size_t>(v)].min_leaf);
            diff.value = uv - vv;
            red.nodes.push_back(std::move(diff));
            int id = static_cast<int>(red.nodes.size()) - 1;
            if (is_zero(red.nodes.back().value))
                red.zero_ids.push_back(id);
            else
                next.push_back(id);
        }
        if (next.size() >= alive.size())
            throw std::runtime_error("reduce_block: node count failed to decrease");
        alive = std::move(next);
        red.layers.push_back(ReductionLayer{round, alive});
    }

    red.residual_ids = alive;
    std::size_t dim = block_terms.empty() ? 0 : block_terms.front().dim();
    red.residual_sum = Vector::zero(dim);
    for (int id : alive) red.residual_sum += red.nodes[static_cast<std::size_t>(id)].value;
    return red;
}

// Walk the provenance tree top-down: every root gets +1, a diff node
// passes its sign to the left child and the negated sign to the right
// child. Zero-valued roots get +1 as well.
inline std::vector<int> recover_signs(const BlockReduction& red) {
    std::vector<int> signs(red.term_count, 0);
    std::vector<std::pair<int, int>> stack; // (node id, sign)
    for (int id : red.residual_ids) stack.emplace_back(id, +1);
    for (int id : red.zero_ids) stack.emplace_back(id, +1);
    std::size_t assigned = 0;
    while (!stack.empty()) {
        auto [id, s] = stack.back();
        stack.pop_back();
        const ReductionNode& n = red.nodes[static_cast<std::size_t>(id)];
        if (n.is_leaf()) {
            if (signs[n.term_index - 1] != 0)
                throw std::runtime_error("recover_signs: term reached twice");
            signs[n.term_index - 1] = s;
            ++assigned;
        } else {
            stack.emplace_back(n.left, s);
            stack.emplace_back(n.right, -s);
        }
    }
    if (assigned != red.term_count)
        throw std::runtime_error("recover_signs: orphan node, some term never signed");
    return signs;
}

inline Vector replay_signs(const std::vector<Vector>& block_terms,
                           const std::vector<int>& signs) {
    if (block_terms.size() != signs.size())
        throw std::domain_error("replay_signs: length mismatch");
    std::size_t dim = block_terms.empty() ? 0 : block_terms.front().dim();
    Vector sum = Vector::zero(dim);
    for (std::size_t i = 0; i < block_terms.size(); ++i)
        sum += static_cast<double>(signs[i]) * block_terms[i];
    return sum;
}

} // namespace signbalance
