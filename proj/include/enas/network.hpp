#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "enas/genotype.hpp"
#include "enas/geometry.hpp"

namespace enas {

/// Cell output bits, one byte per cell (0 or 1), cell 1 first.
using Bits = std::vector<std::uint8_t>;

struct ForwardOutput {
    std::vector<double> h;  ///< hidden-layer outputs, length M
    std::vector<double> P;  ///< softmax of h
    int predicted_class = 0;  ///< argmax of h, lowest index on ties (1-based)
};

/// Fixed hidden layer: w(i,i) = 1, w(i,i-1) = 0.5, w(i,i+1) = 0.4, bias 0.1 on
/// neuron M only; then softmax. Throws ParameterError if bits.size() != M-1.
ForwardOutput forward(const ProblemParams& p, std::span<const std::uint8_t> bits);

enum class BlockType { A, B, C };

/// What a single block covers under optimal parameters.
struct Target {
    enum class Kind { Wasted, Triangle, Segment, Sector };
    Kind kind = Kind::Wasted;
    int sector = 0;  ///< 1-based; ignored for Wasted

    static Target wasted() { return {}; }
    static Target triangle(int k) { return {Kind::Triangle, k}; }
    static Target segment(int k) { return {Kind::Segment, k}; }
    static Target sector_of(int k) { return {Kind::Sector, k}; }

    friend bool operator==(const Target&, const Target&) = default;
};

struct BlockAssignment {
    int cell = 1;  ///< 1-based, in [1..M-1]
    BlockType type = BlockType::A;
    Target target;

    friend bool operator==(const BlockAssignment&, const BlockAssignment&) = default;
};

using Assignment = std::vector<BlockAssignment>;

/// Per-cell covered regions, indexed by region_index().
class Coverage {
  public:
    /// Throws ParameterError when a block's target does not match its type
    /// (A -> segment, B -> sector, C -> triangle) or indices are out of range.
    Coverage(const ProblemParams& p, const Assignment& assignment);

    bool covers(int cell, AtomicRegion reg) const;
    Bits bits_for(AtomicRegion reg) const;
    std::vector<AtomicRegion> covered(int cell) const;

  private:
    ProblemParams problem_;
    std::vector<std::vector<bool>> cells_;
};

/// Deterministic constructive placement realizing I^m, J^m and epsilon.
Assignment greedy_assignment(const Genotype& g);

/// Area fraction of the disc classified correctly.
double accuracy(const ProblemParams& p, const Assignment& assignment);

/// Throws OutsideCircleError for points outside the unit disc.
ForwardOutput classify_point(const ProblemParams& p, const Assignment& assignment, Point2 x);

struct BruteForceCaps {
    int max_M = 3;
    int max_r = 2;
    std::int64_t max_count = 3;
};

/// Number of per-type target multisets the exhaustive search would visit.
double brute_force_size_estimate(const Genotype& g);

/// Maximum accuracy over every assignment whose blocks pick class-relevant
/// targets (or are wasted). Throws InstanceTooLarge beyond `caps`.
double brute_force_best_accuracy(const Genotype& g, const BruteForceCaps& caps = {});

struct OracleReport {
    std::size_t genotypes = 0;
    double max_brute_force_deviation = 0.0;
    double max_greedy_deviation = 0.0;
    bool pass = false;
};

/// Checks brute force and greedy accuracy against the closed-form fitness
/// for every genotype with per-type counts in [0..max_count].
/// `parallel` spreads genotypes over OpenMP threads; the serial path is the
/// reference the parallel one is tested against.
OracleReport validate_closed_form(int M, int r, std::int64_t max_count, double tolerance = 1e-9,
                                  bool parallel = true);

}  // namespace enas
