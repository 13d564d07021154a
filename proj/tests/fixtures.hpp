#pragma once

// Shared reference data for the M = 3, r = 2 worked example
// {(0,3,0),(1,3,0)} and its seven-row classification table.

#include <array>
#include <string>
#include <vector>

#include "enas/network.hpp"

namespace fixtures {

inline enas::Genotype worked_genotype() {
    return enas::Genotype(enas::make_problem(3, 2), {{0, 3, 0}, {1, 3, 0}});
}

// Hand placement behind the classification table. Cell 2's surplus B-block
// sits on sector 11; greedy placement picks sector 8 with the same accuracy.
inline enas::Assignment table_assignment() {
    using enas::BlockAssignment;
    using enas::BlockType;
    using enas::Target;
    return {
        BlockAssignment{1, BlockType::B, Target::sector_of(1)},
        BlockAssignment{1, BlockType::B, Target::sector_of(4)},
        BlockAssignment{1, BlockType::B, Target::sector_of(7)},
        BlockAssignment{2, BlockType::B, Target::sector_of(2)},
        BlockAssignment{2, BlockType::B, Target::sector_of(5)},
        BlockAssignment{2, BlockType::B, Target::sector_of(11)},
        BlockAssignment{2, BlockType::A, Target::segment(7)},
    };
}

struct TableRow {
    std::vector<enas::AtomicRegion> regions;
    int label;
    std::string bits;
    std::array<double, 3> h;  // printed with one decimal
    std::array<double, 3> P;  // printed with two decimals
    int predicted;
    bool right;
};

inline std::vector<enas::AtomicRegion> sectors(std::initializer_list<int> ks) {
    std::vector<enas::AtomicRegion> out;
    for (int k : ks) {
        out.push_back({k, enas::Part::Triangle});
        out.push_back({k, enas::Part::Segment});
    }
    return out;
}

inline std::vector<TableRow> table_rows() {
    using enas::AtomicRegion;
    constexpr auto T = enas::Part::Triangle;
    constexpr auto S = enas::Part::Segment;
    auto cat = [](std::vector<AtomicRegion> a, std::initializer_list<AtomicRegion> b) {
        a.insert(a.end(), b);
        return a;
    };
    return {
        {cat(sectors({1, 4}), {{7, T}}), 1, "10", {1.0, 0.5, 0.1}, {0.50, 0.30, 0.20}, 1, true},
        {{{9, S}, {10, T}, {12, S}}, 1, "00", {0.0, 0.0, 0.1}, {0.32, 0.32, 0.36}, 3, false},
        {cat(sectors({2, 5}), {{11, T}}), 2, "01", {0.4, 1.0, 0.6}, {0.25, 0.45, 0.30}, 2, true},
        {{{8, T}, {10, S}}, 2, "00", {0.0, 0.0, 0.1}, {0.32, 0.32, 0.36}, 3, false},
        {{{7, S}}, 2, "11", {1.4, 1.5, 0.6}, {0.39, 0.43, 0.18}, 2, true},
        {cat(sectors({3, 6}), {{9, T}, {12, T}, {8, S}}), 3, "00", {0.0, 0.0, 0.1}, {0.32, 0.32, 0.36}, 3, true},
        {{{11, S}}, 3, "01", {0.4, 1.0, 0.6}, {0.25, 0.45, 0.30}, 2, false},
    };
}

inline std::string bits_string(const enas::Bits& bits) {
    std::string s;
    for (auto b : bits) s.push_back(b ? '1' : '0');
    return s;
}

}  // namespace fixtures
