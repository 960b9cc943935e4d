#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "signbalance/vector.hpp"

namespace signbalance {

// Relative slack on the pairing inequality ||u-v|| <= max(||u||,||v||),
// absorbing rounding accumulated over deep reduction trees.
inline constexpr double kShrinkTolerance = 1e-12;

inline constexpr int kSectorCount = 6;
inline constexpr double kSectorWidth = std::numbers::pi / 3.0; // 60 degrees

// Angle between two nonzero vectors, in [0, pi]. The normalized dot
// product is clamped into [-1, 1] before acos.
inline double angle_between(const Vector& u, const Vector& v) {
    require_same_dim(u, v);
    double nu = norm(u);
    double nv = norm(v);
    if (nu == 0.0 || nv == 0.0)
        throw std::domain_error("angle_between: zero vector");
    double c = dot(u, v) / (nu * nv);
    c = std::clamp(c, -1.0, 1.0);
    return std::acos(c);
}

// Index of the 60-degree sector containing v, counterclockwise from the
// positive x-axis. Sectors are half-open: angle exactly k*60deg maps to
// sector k.
inline int sector_index(const Vector& v) {
    if (v.dim() != 2)
        throw std::domain_error("sector_index: expected dim 2");
    if (is_zero(v))
        throw std::domain_error("sector_index: zero vector");
    double a = std::atan2(v[1], v[0]);
    if (a < 0.0) a += 2.0 * std::numbers::pi;
    int k = static_cast<int>(a / kSectorWidth);
    // atan2 can land exactly on 2*pi after the wrap for tiny negative angles
    if (k >= kSectorCount) k = 0;
    return k;
}

// The cosine-rule pairing inequality, checked with relative slack.
inline bool difference_shrinks(const Vector& u, const Vector& v) {
    return norm(u - v) <= std::max(norm(u), norm(v)) * (1.0 + kShrinkTolerance);
}

// A finite set of spherical caps covering the unit sphere of R^dim.
// Same-region membership is by nearest center, so two vectors sharing a
// region subtend at most 2*verified_radius.
struct ConeCover {
    std::size_t dim = 0;
    std::vector<Vector> centers;
    double half_angle = 0.0;
    std::optional<double> verified_radius;
};

namespace detail {

inline std::vector<Vector> sample_unit_sphere(std::size_t dim, std::size_t count,
                                              std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::vector<Vector> out;
    out.reserve(count);
    while (out.size() < count) {
        Vector v = Vector::zero(dim);
        for (std::size_t i = 0; i < dim; ++i) v[i] = gauss(rng);
        double n = norm(v);
        if (n < 1e-12) continue;
        out.push_back((1.0 / n) * v);
    }
    return out;
}

inline double angle_to_nearest(const std::vector<Vector>& centers, const Vector& v,
                               std::size_t* which = nullptr) {
    double best_cos = -2.0;
    std::size_t best = 0;
    double nv = norm(v);
    for (std::size_t i = 0; i < centers.size(); ++i) {
        double c = dot(centers[i], v) / nv;
        if (c > best_cos) {
            best_cos = c;
            best = i;
        }
    }
    if (which) *which = best;
    return std::acos(std::clamp(best_cos, -1.0, 1.0));
}

} // namespace detail

// Build a cap cover of the unit sphere with the given cap half-angle.
// dim = 2 is analytic: evenly spaced directions with spacing 2*half_angle,
// offset by half_angle (the six sector bisectors when half_angle = pi/6).
// Higher dimensions use greedy farthest-point selection over a seeded
// uniform sample until every sample lies within half_angle of a center.
inline ConeCover build_cone_cover(std::size_t dim, double half_angle,
                                  std::size_t sample_budget, std::uint64_t seed) {
    if (dim < 2)
        throw std::domain_error("build_cone_cover: dim must be >= 2");
    if (!(half_angle > 0.0) || half_angle > std::numbers::pi / 2.0)
        throw std::domain_error("build_cone_cover: half_angle must be in (0, pi/2]");

    ConeCover cover;
    cover.dim = dim;
    cover.half_angle = half_angle;

    if (dim == 2) {
        auto count = static_cast<std::size_t>(std::ceil(std::numbers::pi / half_angle - 1e-12));
        double spacing = 2.0 * std::numbers::pi / static_cast<double>(count);
        for (std::size_t k = 0; k < count; ++k) {
            double a = half_angle + static_cast<double>(k) * spacing;
            cover.centers.push_back(Vector{std::cos(a), std::sin(a)});
        }
        return cover;
    }

    if (sample_budget == 0)
        throw std::domain_error("build_cone_cover: sample_budget must be positive");
    auto samples = detail::sample_unit_sphere(dim, sample_budget, seed);

    cover.centers.push_back(samples.front());
    std::vector<double> gap(samples.size());
    for (std::size_t i = 0; i < samples.size(); ++i)
        gap[i] = angle_between(cover.centers.back(), samples[i]);

    while (true) {
        std::size_t far = 0;
        for (std::size_t i = 1; i < samples.size(); ++i)
            if (gap[i] > gap[far]) far = i;
        if (gap[far] <= half_angle) break;
        if (cover.centers.size() >= samples.size())
            throw std::runtime_error(
                "build_cone_cover: sample budget exhausted, achieved radius " +
                std::to_string(gap[far]));
        cover.centers.push_back(samples[far]);
        for (std::size_t i = 0; i < samples.size(); ++i)
            gap[i] = std::min(gap[i], angle_between(cover.centers.back(), samples[i]));
    }
    return cover;
}

// Max angular distance from a fresh seeded sample of the unit sphere to
// the nearest center. Records the result on the cover.
inline double verify_cover(ConeCover& cover, std::size_t sample_count, std::uint64_t seed) {
    if (sample_count < 1)
        throw std::domain_error("verify_cover: sample_count must be >= 1");
    auto samples = detail::sample_unit_sphere(cover.dim, sample_count, seed);
    double worst = 0.0;
    for (const Vector& s : samples)
        worst = std::max(worst, detail::angle_to_nearest(cover.centers, s));
    cover.verified_radius = worst;
    return worst;
}

// Index of the nearest center by angle; ties go to the lowest index.
inline int region_index(const ConeCover& cover, const Vector& v) {
    if (is_zero(v))
        throw std::domain_error("region_index: zero vector");
    std::size_t which = 0;
    detail::angle_to_nearest(cover.centers, v, &which);
    return static_cast<int>(which);
}

} // namespace signbalance
