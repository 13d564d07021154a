#include "enas/network.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>
#include <string>

#include "enas/error.hpp"

namespace enas {

ForwardOutput forward(const ProblemParams& p, std::span<const std::uint8_t> bits) {
    if (bits.size() != static_cast<std::size_t>(p.cells()))
        throw ParameterError("expected " + std::to_string(p.cells()) + " cell bits, got " +
                             std::to_string(bits.size()));
    const auto M = static_cast<std::size_t>(p.M);
    ForwardOutput out;
    out.h.assign(M, 0.0);
    for (std::size_t j = 0; j < bits.size(); ++j) {
        if (!bits[j]) continue;
        out.h[j] += 1.0;
        out.h[j + 1] += 0.5;
        if (j > 0) out.h[j - 1] += 0.4;
    }
    out.h[M - 1] += 0.1;

    std::size_t best = 0;
    for (std::size_t i = 1; i < M; ++i)
        if (out.h[i] > out.h[best]) best = i;
    out.predicted_class = static_cast<int>(best) + 1;

    out.P.resize(M);
    double total = 0.0;
    for (std::size_t i = 0; i < M; ++i) total += out.P[i] = std::exp(out.h[i] - out.h[best]);
    for (auto& prob : out.P) prob /= total;
    return out;
}

// ---------------------------------------------------------------------------
// Coverage

Coverage::Coverage(const ProblemParams& p, const Assignment& assignment)
    : problem_(p),
      cells_(static_cast<std::size_t>(p.cells()), std::vector<bool>(2 * static_cast<std::size_t>(p.n))) {
    for (const auto& block : assignment) {
        if (block.cell < 1 || block.cell > p.cells())
            throw ParameterError("block cell index " + std::to_string(block.cell) + " out of range");
        const auto kind = block.target.kind;
        if (kind == Target::Kind::Wasted) continue;
        const bool type_ok = (block.type == BlockType::A && kind == Target::Kind::Segment) ||
                             (block.type == BlockType::B && kind == Target::Kind::Sector) ||
                             (block.type == BlockType::C && kind == Target::Kind::Triangle);
        if (!type_ok) throw ParameterError("block target does not match block type");
        const int k = block.target.sector;
        if (k < 1 || k > p.n) throw ParameterError("target sector " + std::to_string(k) + " out of range");

        auto& covered = cells_[static_cast<std::size_t>(block.cell - 1)];
        if (kind != Target::Kind::Segment) covered[static_cast<std::size_t>(region_index(p, {k, Part::Triangle}))] = true;
        if (kind != Target::Kind::Triangle) covered[static_cast<std::size_t>(region_index(p, {k, Part::Segment}))] = true;
    }
}

bool Coverage::covers(int cell, AtomicRegion reg) const {
    return cells_.at(static_cast<std::size_t>(cell - 1)).at(static_cast<std::size_t>(region_index(problem_, reg)));
}

Bits Coverage::bits_for(AtomicRegion reg) const {
    const auto idx = static_cast<std::size_t>(region_index(problem_, reg));
    Bits bits(cells_.size());
    for (std::size_t m = 0; m < cells_.size(); ++m) bits[m] = cells_[m][idx] ? 1 : 0;
    return bits;
}

std::vector<AtomicRegion> Coverage::covered(int cell) const {
    std::vector<AtomicRegion> out;
    const auto& row = cells_.at(static_cast<std::size_t>(cell - 1));
    for (std::size_t i = 0; i < row.size(); ++i)
        if (row[i]) out.push_back(region_at(problem_, static_cast<int>(i)));
    return out;
}

// ---------------------------------------------------------------------------
// Greedy construction

Assignment greedy_assignment(const Genotype& g) {
    const auto& p = g.problem();
    Assignment out;
    for (int m = 1; m <= p.cells(); ++m) {
        const auto& cell = g[static_cast<std::size_t>(m - 1)];
        const auto secs = sec_sectors(p, m);
        const auto tris = tri_sectors(p, m);
        const auto segs = seg_sectors(p, m);
        const auto add = [&](BlockType type, Target t) { out.push_back({m, type, t}); };

        // B-blocks on the class's own sectors.
        const int b_on_sec = static_cast<int>(std::min<std::int64_t>(cell.b, p.b));
        for (int t = 0; t < b_on_sec; ++t) add(BlockType::B, Target::sector_of(secs[t]));
        const int sec_gap = p.b - b_on_sec;

        // C-blocks: class triangles first, then triangles of sectors B left open.
        int c_on_tri = 0;
        int c_on_sec = 0;
        for (std::int64_t i = 0; i < cell.c; ++i) {
            if (c_on_tri < p.c) {
                add(BlockType::C, Target::triangle(tris[c_on_tri++]));
            } else if (c_on_sec < sec_gap) {
                add(BlockType::C, Target::triangle(secs[b_on_sec + c_on_sec++]));
            } else {
                add(BlockType::C, Target::wasted());
            }
        }

        // Surplus B-blocks take the class triangles C did not reach; each also
        // covers the foreign segment behind that triangle.
        int b_on_tri = 0;
        for (std::int64_t i = b_on_sec; i < cell.b; ++i) {
            if (c_on_tri + b_on_tri < p.c) {
                add(BlockType::B, Target::sector_of(tris[c_on_tri + b_on_tri++]));
            } else {
                add(BlockType::B, Target::wasted());
            }
        }

        // A-blocks: class segments first, then segments of sectors B left open.
        int a_on_seg = 0;
        int a_on_sec = 0;
        for (std::int64_t i = 0; i < cell.a; ++i) {
            if (a_on_seg < p.a) {
                add(BlockType::A, Target::segment(segs[a_on_seg++]));
            } else if (a_on_sec < sec_gap) {
                add(BlockType::A, Target::segment(secs[b_on_sec + a_on_sec++]));
            } else {
                add(BlockType::A, Target::wasted());
            }
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// Accuracy

namespace {

// Same arithmetic as the closed form, so equal region counts give equal bits.
double area_fraction(const ProblemParams& p, int triangles, int segments) {
    return (p.ar_tri * triangles + p.ar_seg * segments) / std::numbers::pi;
}

}  // namespace

double accuracy(const ProblemParams& p, const Assignment& assignment) {
    const Coverage cov(p, assignment);
    int triangles = 0, segments = 0;
    for (const auto& reg : enumerate_regions(p)) {
        if (forward(p, cov.bits_for(reg)).predicted_class != region_label(p, reg)) continue;
        ++(reg.part == Part::Triangle ? triangles : segments);
    }
    return area_fraction(p, triangles, segments);
}

ForwardOutput classify_point(const ProblemParams& p, const Assignment& assignment, Point2 x) {
    const auto reg = locate_point(p, x);
    if (!reg) throw OutsideCircleError("point lies outside the unit circle");
    return forward(p, Coverage(p, assignment).bits_for(*reg));
}

// ---------------------------------------------------------------------------
// Exhaustive oracle

namespace {

using Mask = std::uint64_t;

double multiset_count(int kinds, std::int64_t size) {
    // C(kinds + size - 1, size)
    double out = 1.0;
    for (std::int64_t i = 1; i <= size; ++i) out = out * static_cast<double>(kinds - 1 + i) / static_cast<double>(i);
    return out;
}

Mask bit_of(const ProblemParams& p, int sector, Part part) {
    return Mask{1} << region_index(p, {sector, part});
}

// Distinct unions of at most `count` masks drawn from `targets`. Choosing a
// target twice, or wasting a block, is the same as choosing fewer targets.
std::vector<Mask> reachable_unions(const std::vector<Mask>& targets, std::int64_t count) {
    std::vector<Mask> out;
    const std::size_t k = targets.size();
    for (std::uint32_t subset = 0; subset < (1u << k); ++subset) {
        if (std::popcount(subset) > count) continue;
        Mask u = 0;
        for (std::size_t t = 0; t < k; ++t)
            if (subset & (1u << t)) u |= targets[t];
        out.push_back(u);
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

std::vector<Mask> cell_coverage_sets(const ProblemParams& p, int m, const CellCounts& cell) {
    std::vector<Mask> a_targets, b_targets, c_targets;
    for (int k : seg_sectors(p, m)) a_targets.push_back(bit_of(p, k, Part::Segment));
    for (int k : sec_sectors(p, m)) {
        a_targets.push_back(bit_of(p, k, Part::Segment));
        b_targets.push_back(bit_of(p, k, Part::Triangle) | bit_of(p, k, Part::Segment));
        c_targets.push_back(bit_of(p, k, Part::Triangle));
    }
    for (int k : tri_sectors(p, m)) {
        b_targets.push_back(bit_of(p, k, Part::Triangle) | bit_of(p, k, Part::Segment));
        c_targets.push_back(bit_of(p, k, Part::Triangle));
    }
    const auto ua = reachable_unions(a_targets, cell.a);
    const auto ub = reachable_unions(b_targets, cell.b);
    const auto uc = reachable_unions(c_targets, cell.c);

    std::vector<Mask> out;
    out.reserve(ua.size() * ub.size() * uc.size());
    for (Mask x : ua)
        for (Mask y : ub)
            for (Mask z : uc) out.push_back(x | y | z);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

struct Evaluator {
    int regions = 0;
    std::vector<int> label;         // per region index
    std::vector<bool> triangle;     // per region index
    std::vector<int> class_of;      // per cell-bit pattern
};

Evaluator make_evaluator(const ProblemParams& p) {
    Evaluator ev;
    ev.regions = 2 * p.n;
    for (const auto& reg : enumerate_regions(p)) {
        ev.label.push_back(region_label(p, reg));
        ev.triangle.push_back(reg.part == Part::Triangle);
    }
    const int cells = p.cells();
    Bits bits(static_cast<std::size_t>(cells));
    for (std::uint32_t pattern = 0; pattern < (1u << cells); ++pattern) {
        for (int m = 0; m < cells; ++m) bits[static_cast<std::size_t>(m)] = (pattern >> m) & 1u;
        ev.class_of.push_back(forward(p, bits).predicted_class);
    }
    return ev;
}

double masks_accuracy(const ProblemParams& p, const Evaluator& ev, const std::vector<Mask>& chosen) {
    int triangles = 0, segments = 0;
    for (int idx = 0; idx < ev.regions; ++idx) {
        std::uint32_t pattern = 0;
        for (std::size_t m = 0; m < chosen.size(); ++m)
            pattern |= static_cast<std::uint32_t>((chosen[m] >> idx) & 1u) << m;
        const auto i = static_cast<std::size_t>(idx);
        if (ev.class_of[pattern] == ev.label[i]) ++(ev.triangle[i] ? triangles : segments);
    }
    return area_fraction(p, triangles, segments);
}

void search(const ProblemParams& p, const Evaluator& ev, const std::vector<std::vector<Mask>>& options, std::vector<Mask>& chosen,
            std::size_t depth, double& best) {
    if (depth == options.size()) {
        best = std::max(best, masks_accuracy(p, ev, chosen));
        return;
    }
    for (Mask m : options[depth]) {
        chosen[depth] = m;
        search(p, ev, options, chosen, depth + 1, best);
    }
}

void check_caps(const Genotype& g, const BruteForceCaps& caps) {
    const auto& p = g.problem();
    std::int64_t largest = 0;
    for (const auto& cell : g.cells()) largest = std::max({largest, cell.a, cell.b, cell.c});
    if (p.M > caps.max_M || p.r > caps.max_r || largest > caps.max_count || 2 * p.n > 64) {
        const double est = brute_force_size_estimate(g);
        throw InstanceTooLarge("instance too large for exhaustive search (M=" + std::to_string(p.M) +
                                   ", r=" + std::to_string(p.r) + ", max count " + std::to_string(largest) +
                                   "); estimated enumeration size " + std::to_string(est),
                               est);
    }
}

double brute_force_with(const Evaluator& ev, const Genotype& g) {
    const auto& p = g.problem();
    std::vector<std::vector<Mask>> options;
    for (int m = 1; m <= p.cells(); ++m) options.push_back(cell_coverage_sets(p, m, g[static_cast<std::size_t>(m - 1)]));
    std::vector<Mask> chosen(options.size());
    double best = 0.0;
    search(p, ev, options, chosen, 0, best);
    return best;
}

}  // namespace

double brute_force_size_estimate(const Genotype& g) {
    const int kinds = 2 * g.problem().r + 1;  // class-relevant targets plus "wasted"
    double total = 1.0;
    for (const auto& cell : g.cells())
        total *= multiset_count(kinds, cell.a) * multiset_count(kinds, cell.b) * multiset_count(kinds, cell.c);
    return total;
}

double brute_force_best_accuracy(const Genotype& g, const BruteForceCaps& caps) {
    check_caps(g, caps);
    return brute_force_with(make_evaluator(g.problem()), g);
}

OracleReport validate_closed_form(int M, int r, std::int64_t max_count, double tolerance, bool parallel) {
    if (max_count < 0) throw ParameterError("max count must be >= 0");
    const auto p = make_problem(M, r);
    const std::size_t genes = 3 * static_cast<std::size_t>(p.cells());
    const BruteForceCaps caps;
    {
        std::vector<CellCounts> top(static_cast<std::size_t>(p.cells()), CellCounts{max_count, max_count, max_count});
        check_caps(Genotype(p, std::move(top)), caps);
    }

    const auto base = static_cast<std::size_t>(max_count + 1);
    std::size_t total = 1;
    for (std::size_t i = 0; i < genes; ++i) total *= base;

    const Evaluator ev = make_evaluator(p);
    const auto decode = [&](std::size_t index) {
        std::vector<CellCounts> cells(static_cast<std::size_t>(p.cells()));
        for (auto& cell : cells) {
            for (std::int64_t* field : {&cell.a, &cell.b, &cell.c}) {
                *field = static_cast<std::int64_t>(index % base);
                index /= base;
            }
        }
        return Genotype(p, std::move(cells));
    };

    double worst_brute = 0.0;
    double worst_greedy = 0.0;
    const auto n = static_cast<long long>(total);
#pragma omp parallel for schedule(dynamic, 16) reduction(max : worst_brute, worst_greedy) if (parallel)
    for (long long i = 0; i < n; ++i) {
        const Genotype g = decode(static_cast<std::size_t>(i));
        const double closed = fitness(g).fitness;
        worst_brute = std::max(worst_brute, std::abs(brute_force_with(ev, g) - closed));
        worst_greedy = std::max(worst_greedy, std::abs(accuracy(p, greedy_assignment(g)) - closed));
    }

    OracleReport report;
    report.genotypes = total;
    report.max_brute_force_deviation = worst_brute;
    report.max_greedy_deviation = worst_greedy;
    report.pass = worst_brute <= tolerance && worst_greedy <= tolerance;
    return report;
}

}  // namespace enas
