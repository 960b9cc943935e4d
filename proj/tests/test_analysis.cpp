#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "signbalance/analysis.hpp"
#include "signbalance/assignment.hpp"
#include "signbalance/generators.hpp"

using namespace signbalance;

TEST_CASE("partial_sums runs the signed prefix") {
    auto trace = partial_sums({Vector{1, 0}, Vector{1, 0}}, {+1, -1});
    REQUIRE(trace.sums.size() == 2);
    CHECK(trace.sums[0] == Vector{1, 0});
    CHECK(trace.sums[1] == Vector{0, 0});
    CHECK(trace.norms[1] == 0.0);

    auto single = partial_sums({Vector{1, 0}}, {+1});
    CHECK(single.sums[0] == Vector{1, 0});
    CHECK(single.levels[0] == -1);

    CHECK_THROWS_AS(partial_sums({Vector{1, 0}}, {+1, -1}), std::domain_error);
}

TEST_CASE("predicted Cauchy modulus at M = 1 is the Basel tail") {
    CHECK(predicted_cauchy_modulus(1) == doctest::Approx(3.8696).epsilon(1e-4));
    CHECK(predicted_cauchy_modulus(10) <= 6.0 / 10.0);
}

TEST_CASE("cauchy_check on an engine run stays within the predicted tail") {
    SequenceSpec spec;
    spec.family = Family::harmonic_spiral;
    spec.length = 30000;
    auto seq = generate(spec);
    auto out = assign_signs(seq, {});
    auto trace = partial_sums(seq, out.assignment.signs, &out.report.plan);
    auto boundary = block_boundary_sums(trace, out.report.plan);
    REQUIRE(boundary.size() >= 12);
    for (int M = 0; M <= 11; ++M) {
        auto chk = cauchy_check(boundary, M);
        CHECK(chk.actual <= chk.predicted);
    }
    CHECK_THROWS_AS(cauchy_check(boundary, static_cast<int>(boundary.size())),
                    std::domain_error);
}

TEST_CASE("oracle finds exact cancellations") {
    auto r = oracle_min_residual({Vector{1, 0}, Vector{1, 0}});
    CHECK(r.min_residual_norm == doctest::Approx(0.0));
    CHECK(r.argmin_signs == std::vector<int>{+1, -1});
    CHECK(r.enumerated_count == 2);

    auto r2 = oracle_min_residual({Vector{3, 0}, Vector{1, 0}, Vector{1, 0}, Vector{1, 0}});
    CHECK(r2.min_residual_norm == doctest::Approx(0.0));
    CHECK(r2.argmin_signs == std::vector<int>{+1, -1, -1, -1});
    CHECK(r2.enumerated_count == 8);
}

TEST_CASE("oracle refuses inputs over the cap") {
    std::vector<Vector> big(25, Vector{1, 0});
    CHECK_THROWS_AS(oracle_min_residual(big), std::domain_error);
    CHECK_NOTHROW(oracle_min_residual(std::vector<Vector>(5, Vector{1, 0}), 5));
}

TEST_CASE("oracle never beats itself: dominance over single-block reduction") {
    std::mt19937_64 rng(31);
    std::uniform_real_distribution<double> uni(-1.0, 1.0);
    for (int trial = 0; trial < 40; ++trial) {
        std::size_t n = 7 + rng() % 8;
        std::vector<Vector> terms;
        double max_norm_in = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            terms.push_back(Vector{uni(rng), uni(rng)});
            max_norm_in = std::max(max_norm_in, norm(terms.back()));
        }
        auto red = reduce_block(terms, [](const Vector& v) { return sector_index(v); }, 6,
                                PairPolicy::ordered, trial);
        auto oracle = oracle_min_residual(terms, 14);
        REQUIRE(oracle.min_residual_norm <= norm(red.residual_sum) + 1e-12);
        REQUIRE(norm(red.residual_sum) <= 6.0 * max_norm_in);
    }
}

TEST_CASE("greedy baseline examples and tie rule") {
    CHECK(greedy_baseline({Vector{1, 0}, Vector{1, 0}}).signs == std::vector<int>{+1, -1});
    CHECK(greedy_baseline({Vector{1, 0}, Vector{0, 1}}).signs == std::vector<int>{+1, +1});
    // constant direction: alternating signs keep the sum within the term norm
    std::vector<Vector> constant(21, Vector{1, 0});
    auto g = greedy_baseline(constant);
    auto trace = partial_sums(constant, g.signs);
    for (double n : trace.norms) CHECK(n <= 1.0);
    for (std::size_t i = 0; i < g.signs.size(); ++i)
        CHECK(g.signs[i] == (i % 2 == 0 ? +1 : -1));
}

TEST_CASE("divergence witness detects non-decaying norms") {
    SequenceSpec rot;
    rot.family = Family::constant_rotation;
    rot.length = 100;
    CHECK(divergence_witness_check(generate(rot), 1.0));

    SequenceSpec spiral;
    spiral.family = Family::harmonic_spiral;
    spiral.length = 200;
    CHECK_FALSE(divergence_witness_check(generate(spiral), 0.01));

    CHECK_THROWS_AS(divergence_witness_check(generate(rot), 0.0), std::domain_error);
}

TEST_CASE("witness consequence: every assignment steps by at least c") {
    SequenceSpec rot;
    rot.family = Family::constant_rotation;
    rot.length = 50;
    auto seq = generate(rot);
    REQUIRE(divergence_witness_check(seq, 1.0));
    std::mt19937_64 rng(8);
    for (int trial = 0; trial < 100; ++trial) {
        std::vector<int> signs;
        signs.push_back(+1);
        for (std::size_t i = 1; i < seq.size(); ++i) signs.push_back(rng() % 2 ? +1 : -1);
        auto trace = partial_sums(seq, signs);
        Vector prev = Vector::zero(2);
        for (const Vector& s : trace.sums) {
            REQUIRE(distance(s, prev) >= 1.0 - 1e-12);
            prev = s;
        }
    }
}

TEST_CASE("alt_norm_trace re-evaluates the prefix sums") {
    PartialSumTrace trace;
    trace.sums = {Vector{1, 0}, Vector{0, 0}};
    trace.norms = {1, 0};
    trace.levels = {-1, -1};
    CHECK(alt_norm_trace(trace, NormId::max) == std::vector<double>{1, 0});

    PartialSumTrace t2;
    t2.sums = {Vector{3, 4}};
    t2.norms = {5};
    t2.levels = {-1};
    CHECK(alt_norm_trace(t2, NormId::one) == std::vector<double>{7});
    CHECK(alt_norm_trace(t2, NormId::two) == std::vector<double>{5});
    CHECK_THROWS_AS(parse_norm_id("exotic"), std::domain_error);
}

TEST_CASE("one-norm boundary distances obey the sqrt(2) equivalence in the plane") {
    SequenceSpec spec;
    spec.family = Family::harmonic_spiral;
    spec.length = 5000;
    auto seq = generate(spec);
    auto out = assign_signs(seq, {});
    auto rep = build_convergence_report(seq, out.assignment.signs, out.report.plan);
    for (std::size_t i = 0; i + 1 < rep.boundary_sums.size(); ++i) {
        Vector d = rep.boundary_sums[i + 1] - rep.boundary_sums[i];
        CHECK(one_norm(d) <= std::sqrt(2.0) * norm(d) + 1e-15);
    }
}
