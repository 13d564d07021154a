#include "enas/genotype.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "enas/error.hpp"

namespace enas {

Genotype::Genotype(const ProblemParams& p, std::vector<CellCounts> cells)
    : problem_(p), cells_(std::move(cells)) {
    if (cells_.size() != static_cast<std::size_t>(p.cells()))
        throw ParameterError("genotype has " + std::to_string(cells_.size()) +
                             " cells, expected M-1 = " + std::to_string(p.cells()));
    for (const auto& cell : cells_)
        if (cell.a < 0 || cell.b < 0 || cell.c < 0)
            throw ParameterError("block counts must be non-negative");
}

Genotype::Genotype(const ProblemParams& p)
    : problem_(p), cells_(static_cast<std::size_t>(p.cells())) {}

Genotype random_genotype(const ProblemParams& p, std::int64_t s, SplitMix64& rng) {
    if (s < 1) throw ParameterError("initialization bound s must be >= 1");
    std::vector<CellCounts> cells(static_cast<std::size_t>(p.cells()));
    const auto draw = [&] {
        return static_cast<std::int64_t>(uniform_below(rng, static_cast<std::uint64_t>(s))) + 1;
    };
    for (auto& cell : cells) {
        cell.a = draw();
        cell.b = draw();
        cell.c = draw();
    }
    return Genotype(p, std::move(cells));
}

namespace {

// min(x, cap) for non-negative x, returned as int.
int capped(std::int64_t x, int cap) { return x >= cap ? cap : static_cast<int>(x); }

}  // namespace

int cell_I(const ProblemParams& p, const CellCounts& cell) {
    const int two_r = 2 * p.r;
    // Avoid forming b + c when either alone already saturates.
    if (cell.b >= two_r || cell.c >= two_r) return two_r;
    return capped(cell.b + cell.c, two_r);
}

int cell_J(const ProblemParams& p, const CellCounts& cell) {
    const int from_b = capped(cell.b, p.b);
    const int a_room = p.a + std::max(p.b - from_b, 0);
    return from_b + capped(cell.a, a_room);
}

int epsilon(const Genotype& g) {
    const auto& p = g.problem();
    const auto& last = g.cells().back();
    // Only surplus B-blocks on uncovered class-(M-1) triangles hurt.
    if (last.b <= p.b || last.c >= p.c) return 0;
    const std::int64_t surplus = last.b - p.b;
    return static_cast<int>(std::min<std::int64_t>(surplus, p.c - last.c));
}

FitnessKey fitness_key(const Genotype& g) {
    const auto& p = g.problem();
    FitnessKey key;
    for (const auto& cell : g.cells()) {
        key.i += cell_I(p, cell);
        key.j += cell_J(p, cell);
    }
    key.j -= epsilon(g);
    return key;
}

double fitness_value(const ProblemParams& p, FitnessKey key) {
    const int two_r = 2 * p.r;
    return (p.ar_tri * (key.i + two_r) + p.ar_seg * (key.j + two_r)) / std::numbers::pi;
}

FitnessBreakdown fitness(const Genotype& g) {
    const auto& p = g.problem();
    FitnessBreakdown out;
    out.i_per_cell.reserve(g.size());
    out.j_per_cell.reserve(g.size());
    for (const auto& cell : g.cells()) {
        out.i_per_cell.push_back(cell_I(p, cell));
        out.j_per_cell.push_back(cell_J(p, cell));
        out.i_total += out.i_per_cell.back();
        out.j_total += out.j_per_cell.back();
    }
    out.epsilon = epsilon(g);
    out.fitness = fitness_value(p, {out.i_total, out.j_total - out.epsilon});
    return out;
}

bool is_optimal(const Genotype& g) {
    const auto& p = g.problem();
    const std::int64_t r = p.r;
    const auto cells = g.cells();
    for (std::size_t m = 0; m < cells.size(); ++m) {
        const auto& cell = cells[m];
        if (cell.a < std::max(r, 2 * r - cell.b)) return false;
        if (cell_I(p, cell) < 2 * r) return false;
    }
    return cells.back().c >= r;
}

bool is_optimal_by_fitness(const Genotype& g) {
    return std::abs(fitness(g).fitness - 1.0) <= 1e-12;
}

FitnessKey partition_coords(const Genotype& g) { return fitness_key(g); }

MatchVector match_vector(const Genotype& g) {
    const auto& p = g.problem();
    const int two_r = 2 * p.r;
    const auto fb = fitness(g);
    const bool phase_one = fb.i_total < p.N;
    const std::size_t last = g.size() - 1;

    MatchVector mv;
    mv.bits.reserve(g.size());
    for (std::size_t m = 0; m < g.size(); ++m) {
        bool one = phase_one ? fb.i_per_cell[m] == two_r : fb.j_per_cell[m] == two_r;
        if (!phase_one && m == last) one = one && fb.epsilon == 0;
        mv.bits.push_back(one ? '1' : '0');
        (one ? mv.ones : mv.zeros) += 1;
    }
    return mv;
}

Distances distances(const Genotype& g) {
    const auto key = fitness_key(g);
    const int N = g.problem().N;
    return {N - key.i, N - key.j};
}

}  // namespace enas
