#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "signbalance/assignment.hpp"
#include "signbalance/blocking.hpp"
#include "signbalance/vector.hpp"

namespace signbalance {

struct PartialSumTrace {
    std::vector<Vector> sums;   // signed prefix sums, one per term
    std::vector<double> norms;  // Euclidean norm of each prefix sum
    std::vector<int> levels;    // block level of each term (-1 = prefix)
};

inline PartialSumTrace partial_sums(const std::vector<Vector>& seq,
                                    const std::vector<int>& signs,
                                    const BlockPlan* plan = nullptr) {
    if (seq.size() != signs.size())
        throw std::domain_error("partial_sums: length mismatch");
    PartialSumTrace trace;
    trace.sums.reserve(seq.size());
    trace.norms.reserve(seq.size());
    std::size_t dim = seq.empty() ? 0 : seq.front().dim();
    Vector running = Vector::zero(dim);
    for (std::size_t i = 0; i < seq.size(); ++i) {
        running += static_cast<double>(signs[i]) * seq[i];
        trace.sums.push_back(running);
        trace.norms.push_back(norm(running));
    }
    BlockPlan local;
    if (plan == nullptr && !seq.empty()) {
        local = partition_blocks(seq.size(), compute_thresholds(norms_of(seq), 64));
        plan = &local;
    }
    trace.levels.assign(seq.size(), -1);
    if (plan != nullptr)
        for (const Block& b : plan->blocks)
            for (std::size_t i = b.first; i <= b.last && i <= seq.size(); ++i)
                trace.levels[i - 1] = b.level;
    return trace;
}

// Prefix sums evaluated at the last index of each complete level-m >= 0
// block, indexed by level. Empty blocks repeat the previous boundary.
inline std::vector<Vector> block_boundary_sums(const PartialSumTrace& trace,
                                               const BlockPlan& plan) {
    std::vector<Vector> out;
    std::size_t boundary = 0; // running last-covered index
    for (const Block& b : plan.blocks) {
        if (b.count() > 0) boundary = b.last;
        if (b.level < 0 || !b.complete) continue;
        std::size_t dim = trace.sums.empty() ? 0 : trace.sums.front().dim();
        out.push_back(boundary == 0 ? Vector::zero(dim) : trace.sums[boundary - 1]);
    }
    return out;
}

// Closed-form tail sum_{m>=M} K/(m+1)^2 = K * (pi^2/6 - sum_{j<=M} 1/j^2).
inline double predicted_cauchy_modulus(int M, double region_count = 6.0) {
    double partial = 0.0;
    for (int j = 1; j <= M; ++j) partial += 1.0 / (static_cast<double>(j) * j);
    return region_count * (std::numbers::pi * std::numbers::pi / 6.0 - partial);
}

struct CauchyCheck {
    double actual = 0.0;
    double predicted = 0.0;
};

// Max pairwise distance among block-boundary sums at levels >= M, against
// the predicted tail bound.
inline CauchyCheck cauchy_check(const std::vector<Vector>& boundary_sums, int M,
                                double region_count = 6.0) {
    if (M < 0 || static_cast<std::size_t>(M) + 1 > boundary_sums.size())
        throw std::domain_error("cauchy_check: M exceeds available complete blocks");
    CauchyCheck out;
    out.predicted = predicted_cauchy_modulus(M, region_count);
    for (std::size_t i = static_cast<std::size_t>(M); i < boundary_sums.size(); ++i)
        for (std::size_t j = i + 1; j < boundary_sums.size(); ++j)
            out.actual = std::max(out.actual, distance(boundary_sums[i], boundary_sums[j]));
    return out;
}

struct ConvergenceReport {
    std::vector<Vector> boundary_sums;           // by level, complete blocks only
    std::vector<CauchyCheck> cauchy;             // entry M for M = 0..levels-1
    std::vector<double> intra_block_deviation;   // per plan block, reported only
    double final_one_norm = 0.0;
    double final_two_norm = 0.0;
    double final_max_norm = 0.0;
};

inline ConvergenceReport build_convergence_report(const std::vector<Vector>& seq,
                                                  const std::vector<int>& signs,
                                                  const BlockPlan& plan,
                                                  double region_count = 6.0) {
    PartialSumTrace trace = partial_sums(seq, signs, &plan);
    ConvergenceReport rep;
    rep.boundary_sums = block_boundary_sums(trace, plan);
    for (int M = 0; static_cast<std::size_t>(M) < rep.boundary_sums.size(); ++M)
        rep.cauchy.push_back(cauchy_check(rep.boundary_sums, M, region_count));

    std::size_t dim = seq.empty() ? 0 : seq.front().dim();
    for (const Block& b : plan.blocks) {
        double dev = 0.0;
        Vector base = b.first >= 2 ? trace.sums[b.first - 2] : Vector::zero(dim);
        for (std::size_t i = b.first; i <= b.last; ++i)
            dev = std::max(dev, distance(trace.sums[i - 1], base));
        rep.intra_block_deviation.push_back(dev);
    }
    if (!trace.sums.empty()) {
        const Vector& last = trace.sums.back();
        rep.final_one_norm = one_norm(last);
        rep.final_two_norm = norm(last);
        rep.final_max_norm = max_norm(last);
    }
    return rep;
}

struct OracleResult {
    double min_residual_norm = 0.0;
    std::vector<int> argmin_signs; // first sign +1
    std::uint64_t enumerated_count = 0;
};

// Exhaustive enumeration of all 2^(n-1) assignments with the first sign
// fixed +1. Bit i of a pattern set means term i+2 gets -1; ties break to
// the lowest bit pattern.
inline OracleResult oracle_min_residual(const std::vector<Vector>& terms, int cap = 24) {
    auto n = terms.size();
    if (n < 1)
        throw std::domain_error("oracle_min_residual: empty input");
    if (n > static_cast<std::size_t>(cap))
        throw std::domain_error("oracle_min_residual: refusing " + std::to_string(n) +
                                " terms, cap is " + std::to_string(cap));
    OracleResult out;
    out.enumerated_count = std::uint64_t{1} << (n - 1);
    double best = -1.0;
    std::uint64_t best_pattern = 0;
    for (std::uint64_t pattern = 0; pattern < out.enumerated_count; ++pattern) {
        Vector sum = terms.front();
        for (std::size_t i = 1; i < n; ++i) {
            if (pattern >> (i - 1) & 1)
                sum -= terms[i];
            else
                sum += terms[i];
        }
        double r = norm(sum);
        if (best < 0.0 || r < best) {
            best = r;
            best_pattern = pattern;
        }
    }
    out.min_residual_norm = best;
    out.argmin_signs.assign(n, +1);
    for (std::size_t i = 1; i < n; ++i)
        if (best_pattern >> (i - 1) & 1) out.argmin_signs[i] = -1;
    return out;
}

// Myopic baseline: each sign minimizes the running sum's norm, ties and
// the first term take +1.
inline SignAssignment greedy_baseline(const std::vector<Vector>& seq) {
    if (seq.empty())
        throw std::domain_error("greedy_baseline: empty sequence");
    SignAssignment out;
    Vector running = Vector::zero(seq.front().dim());
    for (const Vector& a : seq) {
        int s = out.signs.empty() || norm(running + a) <= norm(running - a) ? +1 : -1;
        out.signs.push_back(s);
        running += static_cast<double>(s) * a;
    }
    return out;
}

// True iff every term has norm >= c, up to the shrink tolerance (unit
// directions built from cos/sin can land a rounding step below 1). When
// true, consecutive partial sums sit at distance >= c under every
// assignment, so none converges.
inline bool divergence_witness_check(const std::vector<Vector>& seq, double c) {
    if (!(c > 0.0))
        throw std::domain_error("divergence_witness_check: c must be positive");
    for (const Vector& v : seq)
        if (norm(v) < c * (1.0 - kShrinkTolerance)) return false;
    return true;
}

enum class NormId { one, two, max };

inline NormId parse_norm_id(const std::string& s) {
    if (s == "one") return NormId::one;
    if (s == "two") return NormId::two;
    if (s == "max") return NormId::max;
    throw std::domain_error("unknown norm id: " + s);
}

inline std::vector<double> alt_norm_trace(const PartialSumTrace& trace, NormId norm_id) {
    std::vector<double> out;
    out.reserve(trace.sums.size());
    for (const Vector& s : trace.sums) {
        switch (norm_id) {
        case NormId::one: out.push_back(one_norm(s)); break;
        case NormId::two: out.push_back(norm(s)); break;
        case NormId::max: out.push_back(max_norm(s)); break;
        }
    }
    return out;
}

} // namespace signbalance
