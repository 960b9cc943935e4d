#pragma once

#include <cstddef>
#include <stdexcept>
#include <vector>

#include "signbalance/vector.hpp"

namespace signbalance {

inline double level_norm_bound(int level) {
    double d = static_cast<double>(level + 1);
    return 1.0 / (d * d);
}

// Threshold indices N_k: entry k is the largest 1-based index n with
// ||a_n|| >= 1/(k+1)^2, or 0 when no term violates the bound. The list
// stops early at the first k whose threshold equals the sequence length
// (all later levels would equal it too).
struct BlockThresholds {
    std::vector<std::size_t> thresholds;
    std::size_t sequence_length = 0;

    bool saturated() const {
        return !thresholds.empty() && thresholds.back() == sequence_length;
    }
};

// A contiguous run of terms, 1-based inclusive [first, last].
// level = -1 is the prefix block (no norm bound); level m >= 0 blocks
// hold only terms of norm < 1/(m+1)^2. Empty blocks have last < first.
struct Block {
    int level = 0;
    std::size_t first = 1;
    std::size_t last = 0;
    // False for the trailing block truncated by the end of the input.
    bool complete = true;

    std::size_t count() const { return last >= first ? last - first + 1 : 0; }
};

struct BlockPlan {
    BlockThresholds thresholds;
    std::vector<Block> blocks;
};

inline BlockThresholds compute_thresholds(const std::vector<double>& norms, int max_k) {
    if (max_k < 0)
        throw std::domain_error("compute_thresholds: max_k must be >= 0");
    for (double n : norms)
        if (!(n >= 0.0))
            throw std::domain_error("compute_thresholds: negative or NaN norm");

    BlockThresholds out;
    out.sequence_length = norms.size();

    // suffix_max[i] = max over norms[i..end), non-increasing
    std::vector<double> suffix_max(norms.size() + 1, 0.0);
    for (std::size_t i = norms.size(); i-- > 0;)
        suffix_max[i] = std::max(norms[i], suffix_max[i + 1]);

    for (int k = 0; k <= max_k; ++k) {
        double bound = level_norm_bound(k);
        // largest 1-based n with suffix_max[n-1] >= bound
        std::size_t lo = 0, hi = norms.size(); // answer in [lo, hi]
        while (lo < hi) {
            std::size_t mid = (lo + hi + 1) / 2;
            if (suffix_max[mid - 1] >= bound)
                lo = mid;
            else
                hi = mid - 1;
        }
        out.thresholds.push_back(lo);
        if (lo == norms.size()) break;
    }
    return out;
}

inline BlockPlan partition_blocks(std::size_t sequence_length, const BlockThresholds& th) {
    if (th.sequence_length != sequence_length)
        throw std::domain_error("partition_blocks: thresholds/sequence length mismatch");
    if (th.thresholds.empty())
        throw std::domain_error("partition_blocks: empty thresholds");

    BlockPlan plan;
    plan.thresholds = th;

    plan.blocks.push_back(Block{-1, 1, th.thresholds[0], true});
    for (std::size_t m = 0; m + 1 < th.thresholds.size(); ++m)
        plan.blocks.push_back(
            Block{static_cast<int>(m), th.thresholds[m] + 1, th.thresholds[m + 1], true});

    // Trailing partial block up to the end of the finite input.
    std::size_t covered = th.thresholds.back();
    if (covered < sequence_length)
        plan.blocks.push_back(Block{static_cast<int>(th.thresholds.size()) - 1,
                                    covered + 1, sequence_length, false});
    return plan;
}

inline BlockPlan partition_blocks(const std::vector<Vector>& seq, const BlockThresholds& th) {
    return partition_blocks(seq.size(), th);
}

inline std::vector<double> norms_of(const std::vector<Vector>& seq) {
    std::vector<double> out;
    out.reserve(seq.size());
    for (const Vector& v : seq) out.push_back(norm(v));
    return out;
}

} // namespace signbalance
