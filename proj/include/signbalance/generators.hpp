#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "signbalance/vector.hpp"

namespace signbalance {

enum class Family {
    harmonic_spiral,   // (cos i*theta, sin i*theta) / i^p
    power_decay,       // random directions, norm i^-p
    constant_rotation, // constant norm c, rotating direction (no decay)
    collinear,         // multiples of (1, 0) with decaying magnitudes
    uniform_random_ball
};

struct SequenceSpec {
    Family family = Family::harmonic_spiral;
    std::size_t length = 1;
    double p = 1.0;         // decay exponent
    double theta = 1.0;     // rotation step, radians
    double c = 1.0;         // norm floor for constant_rotation
    std::uint64_t seed = 0;
};

inline Family parse_family(const std::string& s) {
    if (s == "harmonic_spiral") return Family::harmonic_spiral;
    if (s == "power_decay") return Family::power_decay;
    if (s == "constant_rotation") return Family::constant_rotation;
    if (s == "collinear") return Family::collinear;
    if (s == "uniform_random_ball") return Family::uniform_random_ball;
    throw std::domain_error("unknown sequence family: " + s);
}

inline std::vector<Vector> generate(const SequenceSpec& spec) {
    if (spec.length < 1)
        throw std::domain_error("generate: length must be >= 1");
    bool decaying = spec.family == Family::harmonic_spiral ||
                    spec.family == Family::power_decay ||
                    spec.family == Family::collinear;
    if (decaying && !(spec.p > 0.0))
        throw std::domain_error("generate: decay exponent must be positive");

    std::mt19937_64 rng(spec.seed);
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    std::vector<Vector> out;
    out.reserve(spec.length);
    for (std::size_t i = 1; i <= spec.length; ++i) {
        double fi = static_cast<double>(i);
        switch (spec.family) {
        case Family::harmonic_spiral: {
            double r = std::pow(fi, -spec.p);
            out.push_back(Vector{r * std::cos(fi * spec.theta), r * std::sin(fi * spec.theta)});
            break;
        }
        case Family::power_decay: {
            double a = 2.0 * std::numbers::pi * uni(rng);
            double r = std::pow(fi, -spec.p);
            out.push_back(Vector{r * std::cos(a), r * std::sin(a)});
            break;
        }
        case Family::constant_rotation:
            out.push_back(Vector{spec.c * std::cos(fi * spec.theta),
                                 spec.c * std::sin(fi * spec.theta)});
            break;
        case Family::collinear:
            out.push_back(Vector{std::pow(fi, -spec.p), 0.0});
            break;
        case Family::uniform_random_ball: {
            double a = 2.0 * std::numbers::pi * uni(rng);
            double r = std::sqrt(uni(rng));
            out.push_back(Vector{r * std::cos(a), r * std::sin(a)});
            break;
        }
        }
    }
    return out;
}

} // namespace signbalance
