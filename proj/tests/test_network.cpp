#include <doctest.h>

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>

#include "enas/error.hpp"
#include "enas/network.hpp"
#include "fixtures.hpp"

using namespace enas;

namespace {

int argmax(const std::vector<double>& v) {
    return static_cast<int>(std::max_element(v.begin(), v.end()) - v.begin()) + 1;
}

Point2 point_in(const ProblemParams& p, AtomicRegion reg) {
    const double mid = (reg.sector - 0.5) * 2.0 * std::numbers::pi / p.n;
    const double radius = reg.part == Part::Triangle ? 0.5 : 0.999;
    return {radius * std::cos(mid), radius * std::sin(mid)};
}

}  // namespace

TEST_CASE("forward examples") {
    const auto p = make_problem(3, 2);
    const auto o10 = forward(p, Bits{1, 0});
    CHECK(o10.h[0] == doctest::Approx(1.0));
    CHECK(o10.h[1] == doctest::Approx(0.5));
    CHECK(o10.h[2] == doctest::Approx(0.1));
    CHECK(o10.predicted_class == 1);

    const auto o11 = forward(p, Bits{1, 1});
    CHECK(o11.h[0] == doctest::Approx(1.4));
    CHECK(o11.h[1] == doctest::Approx(1.5));
    CHECK(o11.h[2] == doctest::Approx(0.6));
    CHECK(o11.predicted_class == 2);

    const auto o00 = forward(p, Bits{0, 0});
    CHECK(o00.predicted_class == 3);
    // softmax of (0, 0, 0.1), computed independently
    CHECK(std::abs(o00.P[0] - 0.32204346) < 1e-7);
    CHECK(std::abs(o00.P[2] - 0.35591307) < 1e-7);

    CHECK_THROWS_AS(forward(p, Bits{1}), ParameterError);
    CHECK_THROWS_AS(forward(p, Bits{1, 0, 0}), ParameterError);
}

TEST_CASE("forward properties over all bit patterns") {
    for (int M = 2; M <= 7; ++M) {
        const auto p = make_problem(M, 2);
        const int cells = M - 1;
        for (unsigned pattern = 0; pattern < (1u << cells); ++pattern) {
            Bits bits(static_cast<std::size_t>(cells));
            for (int i = 0; i < cells; ++i) bits[static_cast<std::size_t>(i)] = (pattern >> i) & 1u;
            const auto out = forward(p, bits);
            double sum = 0.0;
            for (double x : out.P) sum += x;
            CHECK(std::abs(sum - 1.0) < 1e-12);
            CHECK(argmax(out.P) == out.predicted_class);
            CHECK(argmax(out.h) == out.predicted_class);
            if (pattern == 0) CHECK(out.predicted_class == M);
            // a lone active cell m names class m
            if (std::has_single_bit(pattern))
                CHECK(out.predicted_class == std::countr_zero(pattern) + 1);
        }
        // rescue: adjacent active cells m, m+1 name class m+1
        for (int m = 1; m + 1 <= cells; ++m) {
            Bits bits(static_cast<std::size_t>(cells), 0);
            bits[static_cast<std::size_t>(m - 1)] = 1;
            bits[static_cast<std::size_t>(m)] = 1;
            CHECK(forward(p, bits).predicted_class == m + 1);
        }
    }
}

TEST_CASE("Coverage validates targets") {
    const auto p = make_problem(3, 2);
    CHECK_THROWS_AS(Coverage(p, {{1, BlockType::A, Target::triangle(1)}}), ParameterError);
    CHECK_THROWS_AS(Coverage(p, {{1, BlockType::B, Target::segment(1)}}), ParameterError);
    CHECK_THROWS_AS(Coverage(p, {{1, BlockType::C, Target::sector_of(1)}}), ParameterError);
    CHECK_THROWS_AS(Coverage(p, {{3, BlockType::C, Target::triangle(1)}}), ParameterError);
    CHECK_THROWS_AS(Coverage(p, {{1, BlockType::C, Target::triangle(13)}}), ParameterError);
    CHECK_NOTHROW(Coverage(p, {{1, BlockType::C, Target::wasted()}}));

    const Coverage cov(p, {{2, BlockType::B, Target::sector_of(5)}});
    CHECK(cov.covers(2, {5, Part::Triangle}));
    CHECK(cov.covers(2, {5, Part::Segment}));
    CHECK_FALSE(cov.covers(1, {5, Part::Segment}));
    CHECK(fixtures::bits_string(cov.bits_for({5, Part::Segment})) == "01");
    CHECK(cov.covered(2).size() == 2);
}

TEST_CASE("greedy assignment of the worked example") {
    const auto g = fixtures::worked_genotype();
    const auto& p = g.problem();
    const auto asg = greedy_assignment(g);
    const Coverage cov(p, asg);
    CHECK(cov.covers(2, {2, Part::Triangle}));
    CHECK(cov.covers(2, {2, Part::Segment}));
    CHECK(cov.covers(2, {5, Part::Segment}));
    int tri2 = 0;
    for (int k : tri_sectors(p, 2)) tri2 += cov.covers(2, {k, Part::Triangle});
    CHECK(tri2 == 1);
    int seg2 = 0;
    for (int k : seg_sectors(p, 2)) seg2 += cov.covers(2, {k, Part::Segment});
    CHECK(seg2 == 1);
    CHECK(std::abs(accuracy(p, asg) - fitness(g).fitness) < 1e-12);
    CHECK(std::abs(accuracy(p, fixtures::table_assignment()) - fitness(g).fitness) < 1e-12);
}

TEST_CASE("greedy assignment edge cases") {
    const auto p = make_problem(4, 3);
    CHECK(greedy_assignment(Genotype(p)).empty());
    CHECK(std::abs(accuracy(p, {}) - 0.25) < 1e-12);

    const Genotype opt(p, std::vector<CellCounts>(3, CellCounts{3, 3, 3}));
    const auto asg = greedy_assignment(opt);
    CHECK(std::none_of(asg.begin(), asg.end(),
                       [](const BlockAssignment& b) { return b.target.kind == Target::Kind::Wasted; }));
    CHECK(std::abs(accuracy(p, asg) - 1.0) < 1e-12);
}

TEST_CASE("greedy accuracy matches fitness on random genotypes") {
    SplitMix64 rng(2024);
    for (int trial = 0; trial < 3000; ++trial) {
        const int M = 2 + static_cast<int>(uniform_below(rng, 7));
        const int r = 2 + static_cast<int>(uniform_below(rng, 5));
        const auto p = make_problem(M, r);
        const auto g = random_genotype(p, 2 * r + 2, rng);
        CHECK(std::abs(accuracy(p, greedy_assignment(g)) - fitness(g).fitness) < 1e-9);
    }
}

TEST_CASE("classification table rows") {
    const auto p = make_problem(3, 2);
    const Coverage cov(p, fixtures::table_assignment());
    std::size_t total = 0;
    for (const auto& row : fixtures::table_rows()) {
        for (const auto& reg : row.regions) {
            ++total;
            CHECK(region_label(p, reg) == row.label);
            const auto bits = cov.bits_for(reg);
            CHECK(fixtures::bits_string(bits) == row.bits);
            const auto out = forward(p, bits);
            for (std::size_t i = 0; i < 3; ++i) {
                CHECK(std::abs(out.h[i] - row.h[i]) < 1e-12);
                CHECK(std::abs(out.P[i] - row.P[i]) <= 0.005);
            }
            CHECK(out.predicted_class == row.predicted);
            CHECK((out.predicted_class == row.label) == row.right);
        }
    }
    CHECK(total == 24);
}

TEST_CASE("classify_point") {
    const auto g = fixtures::worked_genotype();
    const auto& p = g.problem();
    const auto fig = fixtures::table_assignment();
    const auto out = classify_point(p, fig, {0.5, 0.5});
    CHECK(out.predicted_class == 2);
    CHECK(std::abs(out.P[0] - 0.25) <= 0.005);
    CHECK(std::abs(out.P[1] - 0.45) <= 0.005);
    CHECK(std::abs(out.P[2] - 0.30) <= 0.005);
    CHECK(classify_point(p, greedy_assignment(g), {0.5, 0.5}).predicted_class == 2);

    const auto seg7 = classify_point(p, fig, point_in(p, {7, Part::Segment}));
    CHECK(seg7.predicted_class == 2);
    const auto seg11 = classify_point(p, fig, point_in(p, {11, Part::Segment}));
    CHECK(seg11.predicted_class == 2);
    CHECK(region_label(p, {11, Part::Segment}) == 3);

    CHECK_THROWS_AS(classify_point(p, fig, {1.0, 0.5}), OutsideCircleError);
}

TEST_CASE("brute force oracle") {
    const auto p = make_problem(3, 2);
    const auto g = fixtures::worked_genotype();
    CHECK(std::abs(brute_force_best_accuracy(g) - 0.825821609758562) < 1e-9);
    CHECK(std::abs(brute_force_best_accuracy(Genotype(p)) - 1.0 / 3) < 1e-12);
    CHECK(std::abs(brute_force_best_accuracy(Genotype(p, {{2, 2, 2}, {2, 2, 2}})) - 1.0) < 1e-12);

    // M = 2 has a single cell
    const auto q = make_problem(2, 2);
    CHECK(std::abs(brute_force_best_accuracy(Genotype(q, {{1, 3, 1}})) - fitness(Genotype(q, {{1, 3, 1}})).fitness) <
          1e-9);

    CHECK_THROWS_AS(brute_force_best_accuracy(Genotype(make_problem(4, 2))), InstanceTooLarge);
    CHECK_THROWS_AS(brute_force_best_accuracy(Genotype(make_problem(3, 3))), InstanceTooLarge);
    try {
        brute_force_best_accuracy(Genotype(p, {{4, 0, 0}, {0, 0, 0}}));
        FAIL("expected InstanceTooLarge");
    } catch (const InstanceTooLarge& e) {
        CHECK(e.estimated_size() > 0.0);
    }
}

TEST_CASE("closed form validation, serial and parallel agree") {
    const auto serial = validate_closed_form(3, 2, 1, 1e-9, false);
    const auto parallel = validate_closed_form(3, 2, 1, 1e-9, true);
    CHECK(serial.genotypes == 64);
    CHECK(serial.pass);
    CHECK(parallel.pass);
    CHECK(serial.max_brute_force_deviation == parallel.max_brute_force_deviation);
    CHECK(serial.max_greedy_deviation == parallel.max_greedy_deviation);

    const auto m2 = validate_closed_form(2, 2, 3);
    CHECK(m2.genotypes == 64);
    CHECK(m2.pass);
}
