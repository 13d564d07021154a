#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "enas/genotype.hpp"
#include "enas/rng.hpp"

namespace enas {

enum class OuterMutation { OneBit, BitWise };
enum class InnerMutation { Local, Global };
enum class Crossover { None, OnePoint, Uniform };

struct MutationConfig {
    OuterMutation outer = OuterMutation::OneBit;
    InnerMutation inner = InnerMutation::Local;
    bool global_shifted = false;  ///< apply K+1 instead of K operations
};

struct EvolutionConfig {
    MutationConfig mutation;
    int lambda = 1;  ///< 1 is the (1+1) algorithm
    Crossover crossover = Crossover::None;
    std::optional<std::int64_t> s;  ///< initialization bound; r when unset
    std::int64_t max_generations = 10'000'000;
    bool record_trajectory = false;
};

/// Throws ParameterError for lambda < 1, crossover without a population,
/// s < 1 or a non-positive generation cap.
void validate(const EvolutionConfig& cfg);

struct TrajectoryPoint {
    std::int64_t generation = 0;
    int i_total = 0;
    int j_minus_eps = 0;
    int match_ones = 0;
    double fitness = 0.0;

    friend bool operator==(const TrajectoryPoint&, const TrajectoryPoint&) = default;
};

struct RunRecord {
    std::uint64_t seed = 0;
    std::int64_t generations = 0;
    std::int64_t evaluations = 0;
    bool success = false;
    double final_fitness = 0.0;
    std::vector<TrajectoryPoint> trajectory;  ///< best individual per generation, if requested

    friend bool operator==(const RunRecord&, const RunRecord&) = default;
};

// --- Variant strings: onebit|bitwise, local|global|global-shifted,
// --- none|onepoint|uniform.
std::string to_string(OuterMutation v);
std::string inner_name(const MutationConfig& m);
std::string to_string(Crossover v);
OuterMutation parse_outer(std::string_view s);
/// Sets inner and global_shifted.
void parse_inner(std::string_view s, MutationConfig& m);
Crossover parse_crossover(std::string_view s);

// --- Block-level mutation

enum class MutationOp { Addition, Deletion, Modification };

/// One draw of the block-level operator: type V, operation and (for
/// Modification) the receiving type W != V. Types are 0=A, 1=B, 2=C.
struct MutationEvent {
    int v = 0;
    MutationOp op = MutationOp::Addition;
    int w = 0;
};

MutationEvent draw_mutation(SplitMix64& rng);
CellCounts apply_mutation(CellCounts cell, const MutationEvent& ev);
CellCounts mutate_cell_once(const CellCounts& cell, SplitMix64& rng);

CellCounts inner_mutation(const CellCounts& cell, InnerMutation mode, bool shifted, SplitMix64& rng);

/// 0-based indices of the cells the outer level picks, ascending.
std::vector<std::size_t> select_cells(std::size_t cells, OuterMutation outer, SplitMix64& rng);

Genotype outer_mutation(const Genotype& g, const MutationConfig& cfg, SplitMix64& rng);

// --- Population operators

struct Individual {
    Genotype genotype;
    FitnessKey key;
};

Individual make_individual(Genotype g);

/// Truncation to the best |parents| of parents + offspring. Ties go to
/// offspring; within a group, the lower index wins. Sizes must match.
std::vector<Individual> select(const std::vector<Individual>& parents, const std::vector<Individual>& offspring);

Genotype one_point_crossover(const Genotype& a, const Genotype& b, SplitMix64& rng);
Genotype uniform_crossover(const Genotype& a, const Genotype& b, SplitMix64& rng);

RunRecord run(const ProblemParams& p, const EvolutionConfig& cfg, std::uint64_t seed);

}  // namespace enas
