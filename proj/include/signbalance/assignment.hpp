#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "signbalance/blocking.hpp"
#include "signbalance/geometry.hpp"
#include "signbalance/reduction.hpp"
#include "signbalance/vector.hpp"

namespace signbalance {

struct SignAssignment {
    std::vector<int> signs; // +1 / -1 per input term, signs[0] = +1
};

struct AssignConfig {
    PairPolicy policy = PairPolicy::ordered;
    std::uint64_t seed = 0;
    int max_k = 64;
    const ConeCover* cover = nullptr; // required for dim != 2
    bool keep_reductions = false;     // retain per-block trees for trace dumps
};

struct BlockCertificate {
    int level = 0;
    std::size_t count = 0;
    std::size_t rounds = 0;
    double residual_norm = 0.0;
    double bound = 0.0;
    bool ok = false;
};

struct AssignmentReport {
    std::size_t region_count = 6;
    std::size_t prefix_count = 0;
    double prefix_residual_norm = 0.0;
    std::vector<BlockCertificate> blocks; // level >= 0 blocks, in order
    double tail_bound = 0.0;              // sum of the listed bounds
    BlockPlan plan;
};

struct AssignOutcome {
    SignAssignment assignment;
    AssignmentReport report;
    std::vector<BlockReduction> reductions; // only when keep_reductions
};

namespace detail {

inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t salt) {
    std::uint64_t z = seed + 0x9e3779b97f4a7c15ull * (salt + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

} // namespace detail

// The full engine: thresholds, blocks, per-block reduction, sign
// recovery, and a certificate of the per-level residual bound
// region_count/(m+1)^2. The leading sign is normalized to +1 by flipping
// the whole block containing term 1, which negates that block's residual
// without changing its norm.
inline AssignOutcome assign_signs(const std::vector<Vector>& seq, const AssignConfig& cfg) {
    if (seq.empty())
        throw std::domain_error("assign_signs: empty sequence");
    std::size_t dim = seq.front().dim();
    if (dim < 2)
        throw std::domain_error("assign_signs: dim must be >= 2");
    for (const Vector& v : seq) {
        if (v.dim() != dim)
            throw std::domain_error("assign_signs: inconsistent dimensions");
        if (!is_finite(v))
            throw std::domain_error("assign_signs: non-finite input");
    }

    RegionFn region_fn;
    std::size_t region_count;
    if (dim == 2) {
        region_fn = [](const Vector& v) { return sector_index(v); };
        region_count = kSectorCount;
    } else {
        if (cfg.cover == nullptr || !cfg.cover->verified_radius.has_value())
            throw std::invalid_argument(
                "assign_signs: dim > 2 requires a cover with a verified radius");
        if (cfg.cover->dim != dim)
            throw std::invalid_argument("assign_signs: cover dimension mismatch");
        const ConeCover* cover = cfg.cover;
        region_fn = [cover](const Vector& v) { return region_index(*cover, v); };
        region_count = cover->centers.size();
    }

    BlockThresholds th = compute_thresholds(norms_of(seq), cfg.max_k);
    BlockPlan plan = partition_blocks(seq.size(), th);

    AssignOutcome out;
    out.assignment.signs.assign(seq.size(), 0);
    out.report.region_count = region_count;
    out.report.plan = plan;

    for (std::size_t b = 0; b < plan.blocks.size(); ++b) {
        const Block& blk = plan.blocks[b];
        std::vector<Vector> terms(seq.begin() + static_cast<std::ptrdiff_t>(blk.first - 1),
                                  seq.begin() + static_cast<std::ptrdiff_t>(blk.last));
        BlockReduction red =
            reduce_block(terms, region_fn, region_count, cfg.policy,
                         detail::mix_seed(cfg.seed, b), blk.level);
        std::vector<int> signs = recover_signs(red);
        for (std::size_t i = 0; i < signs.size(); ++i)
            out.assignment.signs[blk.first - 1 + i] = signs[i];

        double rnorm = norm(red.residual_sum);
        if (blk.level < 0) {
            out.report.prefix_count = blk.count();
            out.report.prefix_residual_norm = rnorm;
        } else {
            double bound = static_cast<double>(region_count) * level_norm_bound(blk.level);
            out.report.blocks.push_back(BlockCertificate{
                blk.level, blk.count(), red.layers.size(), rnorm, bound, rnorm < bound});
            out.report.tail_bound += bound;
        }
        if (cfg.keep_reductions) out.reductions.push_back(std::move(red));
    }

    // Normalize the series form: the first term keeps sign +1. Flipping
    // a whole block negates its residual; the norm is unchanged.
    if (out.assignment.signs.front() == -1) {
        for (const Block& blk : plan.blocks) {
            if (blk.count() == 0) continue;
            for (std::size_t i = blk.first - 1; i < blk.last; ++i)
                out.assignment.signs[i] = -out.assignment.signs[i];
            break;
        }
    }
    return out;
}

// True iff every level-m block certificate holds its residual bound.
inline bool certify(const AssignmentReport& report) {
    for (const BlockCertificate& c : report.blocks)
        if (!c.ok) return false;
    return true;
}

} // namespace signbalance
