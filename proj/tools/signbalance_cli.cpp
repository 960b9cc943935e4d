#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "signbalance/analysis.hpp"
#include "signbalance/assignment.hpp"
#include "signbalance/generators.hpp"
#include "signbalance/geometry.hpp"
#include "signbalance/io.hpp"

namespace sb = signbalance;

namespace {

std::uint64_t default_seed() {
    if (const char* env = std::getenv("SIGN_BALANCE_SEED"))
        return std::strtoull(env, nullptr, 10);
    return 0;
}

int cmd_gen(const std::string& family, std::size_t length, double p, double theta,
            double c, std::uint64_t seed, const std::string& out) {
    sb::SequenceSpec spec;
    spec.family = sb::parse_family(family);
    spec.length = length;
    spec.p = p;
    spec.theta = theta;
    spec.c = c;
    spec.seed = seed;
    sb::write_vectors(out, sb::generate(spec));
    std::cout << "wrote " << length << " vectors to " << out << "\n";
    return 0;
}

int cmd_assign(const std::string& input, const std::string& signs_out,
               const std::string& summary_out, const std::string& diagnostics_out,
               const std::string& policy, std::uint64_t seed, int max_k,
               const std::string& cover_path, const std::string& trace_out) {
    auto vecs = sb::read_vectors(input);
    sb::AssignConfig cfg;
    cfg.policy = policy == "random" ? sb::PairPolicy::random : sb::PairPolicy::ordered;
    cfg.seed = seed;
    cfg.max_k = max_k;
    cfg.keep_reductions = !trace_out.empty();
    sb::ConeCover cover;
    if (!cover_path.empty()) {
        cover = sb::read_cover(cover_path);
        cfg.cover = &cover;
    }
    auto outcome = sb::assign_signs(vecs, cfg);

    sb::write_signs(signs_out, outcome.assignment.signs);
    if (!summary_out.empty())
        sb::atomic_write(summary_out, sb::block_summary_csv(outcome.report));
    if (!diagnostics_out.empty()) {
        auto trace = sb::partial_sums(vecs, outcome.assignment.signs, &outcome.report.plan);
        sb::atomic_write(diagnostics_out, sb::diagnostics_csv(outcome.assignment.signs, trace));
    }
    if (!trace_out.empty())
        sb::atomic_write(trace_out, sb::reduction_trace(outcome.reductions));

    bool ok = sb::certify(outcome.report);
    std::cout << "blocks=" << outcome.report.blocks.size()
              << " region_count=" << outcome.report.region_count
              << " certified=" << (ok ? "true" : "false") << "\n";
    return ok ? 0 : 1;
}

int cmd_verify(const std::string& input, const std::string& signs_path,
               const std::string& prefix, int max_k) {
    auto vecs = sb::read_vectors(input);
    auto signs = sb::read_signs(signs_path);
    if (signs.size() != vecs.size()) {
        std::cerr << "verify: " << vecs.size() << " vectors but " << signs.size()
                  << " signs\n";
        return 2;
    }
    auto plan = sb::partition_blocks(vecs.size(),
                                     sb::compute_thresholds(sb::norms_of(vecs), max_k));
    auto rep = sb::build_convergence_report(vecs, signs, plan);

    std::ostringstream boundary;
    std::size_t dim = vecs.front().dim();
    boundary << "level";
    for (std::size_t d = 0; d < dim; ++d) boundary << ",b" << d + 1;
    boundary << "\n";
    for (std::size_t m = 0; m < rep.boundary_sums.size(); ++m) {
        boundary << m;
        for (std::size_t d = 0; d < dim; ++d)
            boundary << "," << sb::format_double(rep.boundary_sums[m][d]);
        boundary << "\n";
    }
    sb::atomic_write(prefix + "_boundary.csv", boundary.str());

    std::ostringstream cauchy;
    cauchy << "M,actual,predicted,ok\n";
    bool all_ok = true;
    for (std::size_t m = 0; m < rep.cauchy.size(); ++m) {
        bool ok = rep.cauchy[m].actual <= rep.cauchy[m].predicted;
        all_ok = all_ok && ok;
        cauchy << m << "," << sb::format_double(rep.cauchy[m].actual) << ","
               << sb::format_double(rep.cauchy[m].predicted) << ","
               << (ok ? "true" : "false") << "\n";
    }
    sb::atomic_write(prefix + "_cauchy.csv", cauchy.str());

    std::ostringstream dev;
    dev << "block,level,intra_block_deviation\n";
    for (std::size_t b = 0; b < rep.intra_block_deviation.size(); ++b)
        dev << b << "," << plan.blocks[b].level << ","
            << sb::format_double(rep.intra_block_deviation[b]) << "\n";
    sb::atomic_write(prefix + "_deviation.csv", dev.str());

    std::cout << "final one-norm=" << rep.final_one_norm
              << " two-norm=" << rep.final_two_norm
              << " max-norm=" << rep.final_max_norm
              << " cauchy=" << (all_ok ? "ok" : "VIOLATED") << "\n";
    return all_ok ? 0 : 1;
}

int cmd_oracle(const std::string& input, int cap, const std::string& signs_out) {
    auto vecs = sb::read_vectors(input);
    sb::OracleResult res;
    try {
        res = sb::oracle_min_residual(vecs, cap);
    } catch (const std::domain_error& e) {
        std::cerr << e.what() << "\n";
        return 2;
    }
    std::cout << "min_residual_norm=" << sb::format_double(res.min_residual_norm)
              << " enumerated=" << res.enumerated_count << "\n";
    if (!signs_out.empty()) sb::write_signs(signs_out, res.argmin_signs);
    return 0;
}

int cmd_cover(std::size_t dim, double half_angle, std::size_t budget,
              std::size_t samples, std::uint64_t seed, const std::string& out) {
    auto cover = sb::build_cone_cover(dim, half_angle, budget, seed);
    double r = sb::verify_cover(cover, samples, seed + 1);
    sb::write_cover(out, cover);
    std::cout << "centers=" << cover.centers.size()
              << " verified_radius=" << sb::format_double(r) << "\n";
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Sign assignment for vector series with decaying norms"};
    app.require_subcommand(1);

    std::uint64_t seed = default_seed();
    std::string policy = "ordered";
    int max_k = 64;
    std::string cover_path;

    // gen
    auto* gen = app.add_subcommand("gen", "Generate a test sequence as vector CSV");
    std::string family = "harmonic_spiral";
    std::size_t length = 1000;
    double p = 1.0, theta = 1.0, cnorm = 1.0;
    std::string gen_out = "vectors.csv";
    gen->add_option("--family", family,
                    "harmonic_spiral|power_decay|constant_rotation|collinear|uniform_random_ball");
    gen->add_option("--length", length, "number of terms");
    gen->add_option("-p,--decay", p, "decay exponent");
    gen->add_option("--theta", theta, "rotation step, radians");
    gen->add_option("-c,--norm", cnorm, "constant norm for constant_rotation");
    gen->add_option("--seed", seed, "RNG seed");
    gen->add_option("-o,--output", gen_out, "output CSV path");

    // assign
    auto* assign = app.add_subcommand("assign", "Compute a certified sign assignment");
    std::string assign_in, signs_out = "signs.txt", summary_out = "summary.csv";
    std::string diagnostics_out = "diagnostics.csv", trace_out;
    assign->add_option("input", assign_in, "vector CSV")->required();
    assign->add_option("--signs", signs_out, "signs output path");
    assign->add_option("--summary", summary_out, "block summary CSV path");
    assign->add_option("--diagnostics", diagnostics_out, "per-term diagnostics CSV path");
    assign->add_option("--trace", trace_out, "reduction trace dump path");
    assign->add_option("--policy", policy, "ordered|random");
    assign->add_option("--seed", seed, "RNG seed");
    assign->add_option("--max-k", max_k, "max threshold level");
    assign->add_option("--cover", cover_path, "cone cover file for dim > 2");

    // verify
    auto* verify = app.add_subcommand("verify", "Convergence diagnostics for a signed series");
    std::string verify_in, verify_signs, verify_prefix = "report";
    verify->add_option("input", verify_in, "vector CSV")->required();
    verify->add_option("signs", verify_signs, "signs file")->required();
    verify->add_option("-o,--output-prefix", verify_prefix, "report CSV prefix");
    verify->add_option("--max-k", max_k, "max threshold level");

    // oracle
    auto* oracle = app.add_subcommand("oracle", "Exhaustive minimum residual for small inputs");
    std::string oracle_in, oracle_signs;
    int cap = 24;
    oracle->add_option("input", oracle_in, "vector CSV")->required();
    oracle->add_option("--cap", cap, "refuse inputs with more terms than this");
    oracle->add_option("--signs", oracle_signs, "optional argmin signs output");

    // cover
    auto* cover = app.add_subcommand("cover", "Build and certify a cone cover of the sphere");
    std::size_t dim = 3, budget = 20000, samples = 1000000;
    double half_angle = 0.5;
    std::string cover_out = "cover.txt";
    cover->add_option("--dim", dim, "ambient dimension");
    cover->add_option("--half-angle", half_angle, "cap half-angle, radians");
    cover->add_option("--budget", budget, "construction sample budget");
    cover->add_option("--samples", samples, "verification sample count");
    cover->add_option("--seed", seed, "RNG seed");
    cover->add_option("-o,--output", cover_out, "cover file path");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (gen->parsed()) return cmd_gen(family, length, p, theta, cnorm, seed, gen_out);
        if (assign->parsed())
            return cmd_assign(assign_in, signs_out, summary_out, diagnostics_out, policy,
                              seed, max_k, cover_path, trace_out);
        if (verify->parsed()) return cmd_verify(verify_in, verify_signs, verify_prefix, max_k);
        if (oracle->parsed()) return cmd_oracle(oracle_in, cap, oracle_signs);
        if (cover->parsed())
            return cmd_cover(dim, half_angle, budget, samples, seed, cover_out);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
