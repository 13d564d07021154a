#pragma once

#include <compare>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "enas/geometry.hpp"
#include "enas/rng.hpp"

namespace enas {

/// Block counts of one cell. Unbounded above; never negative.
struct CellCounts {
    std::int64_t a = 0;
    std::int64_t b = 0;
    std::int64_t c = 0;

    friend bool operator==(const CellCounts&, const CellCounts&) = default;
};

/// M-1 cells; cell m (1-based) is responsible for class m. The last cell is
/// the one whose surplus B-blocks can swallow class-M segments.
class Genotype {
  public:
    /// Throws ParameterError unless there are exactly M-1 cells of
    /// non-negative counts.
    Genotype(const ProblemParams& p, std::vector<CellCounts> cells);

    /// All-zero genotype.
    explicit Genotype(const ProblemParams& p);

    const ProblemParams& problem() const noexcept { return problem_; }
    std::span<const CellCounts> cells() const noexcept { return cells_; }
    std::size_t size() const noexcept { return cells_.size(); }

    /// 0-based access.
    const CellCounts& operator[](std::size_t i) const { return cells_[i]; }
    CellCounts& operator[](std::size_t i) { return cells_[i]; }

    friend bool operator==(const Genotype& x, const Genotype& y) {
        return x.cells_ == y.cells_ && x.problem_ == y.problem_;
    }

  private:
    ProblemParams problem_;
    std::vector<CellCounts> cells_;
};

struct FitnessBreakdown {
    std::vector<int> i_per_cell;
    std::vector<int> j_per_cell;
    int epsilon = 0;
    int i_total = 0;
    int j_total = 0;
    double fitness = 0.0;
};

/// The integer coordinates (I, J - eps) that fully determine fitness. The
/// lexicographic order on keys coincides with the order on fitness values.
struct FitnessKey {
    int i = 0;
    int j = 0;

    friend auto operator<=>(const FitnessKey&, const FitnessKey&) = default;
};

struct MatchVector {
    std::string bits;
    int ones = 0;
    int zeros = 0;
};

/// Every count drawn independently from U[1, s]. s must be >= 1.
Genotype random_genotype(const ProblemParams& p, std::int64_t s, SplitMix64& rng);

int cell_I(const ProblemParams& p, const CellCounts& cell);
int cell_J(const ProblemParams& p, const CellCounts& cell);
int epsilon(const Genotype& g);

FitnessKey fitness_key(const Genotype& g);
double fitness_value(const ProblemParams& p, FitnessKey key);
FitnessBreakdown fitness(const Genotype& g);

/// Exact integer test for fitness == 1: every cell forms all 2r triangles and
/// all 2r segments, and the last cell carries at least r C-blocks.
bool is_optimal(const Genotype& g);
/// Same predicate via the floating-point fitness (|F - 1| <= 1e-12).
bool is_optimal_by_fitness(const Genotype& g);

/// Subspace coordinates (i, j) of S_i^j.
FitnessKey partition_coords(const Genotype& g);

MatchVector match_vector(const Genotype& g);

struct Distances {
    int v1 = 0;
    int v2 = 0;
};
Distances distances(const Genotype& g);

}  // namespace enas
