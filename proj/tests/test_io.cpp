#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <random>

#include "signbalance/generators.hpp"
#include "signbalance/io.hpp"

using namespace signbalance;
namespace fs = std::filesystem;

namespace {

struct TempDir {
    fs::path path;
    TempDir() {
        path = fs::temp_directory_path() /
               ("signbalance_test_" + std::to_string(std::random_device{}()));
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
    std::string file(const std::string& name) const { return (path / name).string(); }
};

} // namespace

TEST_CASE("vector CSV parses simple files") {
    TempDir tmp;
    {
        std::ofstream out(tmp.file("a.csv"));
        out << "x,y\n1,0\n";
    }
    auto one = read_vectors(tmp.file("a.csv"));
    REQUIRE(one.size() == 1);
    CHECK(one[0] == Vector{1, 0});

    {
        std::ofstream out(tmp.file("b.csv"));
        out << "x,y\n1,0\n0,1\n";
    }
    auto two = read_vectors(tmp.file("b.csv"));
    REQUIRE(two.size() == 2);
    CHECK(two[1] == Vector{0, 1});
}

TEST_CASE("parse errors carry the line number") {
    TempDir tmp;
    {
        std::ofstream out(tmp.file("bad.csv"));
        out << "x,y\n1,0\n1,abc\n";
    }
    try {
        read_vectors(tmp.file("bad.csv"));
        FAIL("expected a parse error");
    } catch (const std::runtime_error& e) {
        CHECK(std::string(e.what()).find(":3:") != std::string::npos);
    }
}

TEST_CASE("empty and truncated files are rejected") {
    TempDir tmp;
    { std::ofstream out(tmp.file("empty.csv")); }
    CHECK_THROWS_AS(read_vectors(tmp.file("empty.csv")), std::domain_error);
    {
        std::ofstream out(tmp.file("header_only.csv"));
        out << "x,y\n";
    }
    CHECK_THROWS_AS(read_vectors(tmp.file("header_only.csv")), std::domain_error);
    CHECK_THROWS_AS(read_vectors(tmp.file("missing.csv")), std::runtime_error);
}

TEST_CASE("vector round trips are exact") {
    TempDir tmp;
    SequenceSpec spec;
    spec.family = Family::uniform_random_ball;
    spec.length = 500;
    spec.seed = 12;
    auto seq = generate(spec);
    write_vectors(tmp.file("rt.csv"), seq);
    auto back = read_vectors(tmp.file("rt.csv"));
    REQUIRE(back.size() == seq.size());
    for (std::size_t i = 0; i < seq.size(); ++i) REQUIRE(back[i] == seq[i]);
}

TEST_CASE("signs file format is byte exact") {
    TempDir tmp;
    write_signs(tmp.file("s.txt"), {+1, -1});
    std::ifstream in(tmp.file("s.txt"), std::ios::binary);
    std::string content((std::istreambuf_iterator<char>(in)), {});
    CHECK(content == "+1\n-1\n");
    CHECK(read_signs(tmp.file("s.txt")) == std::vector<int>{+1, -1});

    write_signs(tmp.file("one.txt"), {+1});
    std::ifstream in2(tmp.file("one.txt"), std::ios::binary);
    std::string c2((std::istreambuf_iterator<char>(in2)), {});
    CHECK(c2 == "+1\n");

    write_signs(tmp.file("none.txt"), {});
    std::ifstream in3(tmp.file("none.txt"), std::ios::binary);
    std::string c3((std::istreambuf_iterator<char>(in3)), {});
    CHECK(c3.empty());
}

TEST_CASE("cover files round trip with the verified radius") {
    TempDir tmp;
    auto cover = build_cone_cover(3, 0.6, 2000, 4);
    verify_cover(cover, 10000, 5);
    write_cover(tmp.file("c.txt"), cover);
    auto back = read_cover(tmp.file("c.txt"));
    CHECK(back.dim == 3);
    CHECK(back.half_angle == cover.half_angle);
    REQUIRE(back.verified_radius.has_value());
    CHECK(*back.verified_radius == *cover.verified_radius);
    REQUIRE(back.centers.size() == cover.centers.size());
    for (std::size_t i = 0; i < back.centers.size(); ++i)
        REQUIRE(back.centers[i] == cover.centers[i]);
}

TEST_CASE("summary and diagnostics CSVs have the documented headers") {
    AssignmentReport rep;
    rep.prefix_count = 2;
    rep.prefix_residual_norm = 0.5;
    rep.blocks.push_back(BlockCertificate{0, 3, 1, 0.25, 6.0, true});
    auto summary = block_summary_csv(rep);
    CHECK(summary.rfind("level,count,rounds,residual_norm,bound,ok\n", 0) == 0);
    CHECK(summary.find("0,3,1,0.25,6,true") != std::string::npos);

    PartialSumTrace trace;
    trace.sums = {Vector{1, 0}};
    trace.norms = {1.0};
    trace.levels = {-1};
    auto diag = diagnostics_csv({+1}, trace);
    CHECK(diag.rfind("index,sign,block_level,sx,sy,psum_norm\n", 0) == 0);
    CHECK(diag.find("1,+1,-1,1,0,1\n") != std::string::npos);
}
