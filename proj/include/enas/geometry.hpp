#pragma once

#include <compare>
#include <optional>
#include <vector>

namespace enas {

// The MCC benchmark: the unit disc cut into n = 2rM equal sectors, each sector
// split by its chord into a triangle and a segment. Sector k (1-based) spans
// angles [(k-1)*2pi/n, k*2pi/n).

struct ProblemParams {
    int M = 0;  ///< class count
    int r = 0;  ///< repetition parameter
    int n = 0;  ///< sector count, 2rM
    int a = 0;  ///< segments per class (= r)
    int b = 0;  ///< sectors per class (= r)
    int c = 0;  ///< triangles per class (= r)
    int N = 0;  ///< 2r(M-1), the range of the aggregate counts
    double ar_tri = 0.0;
    double ar_seg = 0.0;
    double ar_sec = 0.0;

    int cells() const noexcept { return M - 1; }

    friend bool operator==(const ProblemParams&, const ProblemParams&) = default;
};

enum class Part { Triangle, Segment };

struct AtomicRegion {
    int sector = 1;  ///< k in [1..n]
    Part part = Part::Triangle;

    friend auto operator<=>(const AtomicRegion&, const AtomicRegion&) = default;
};

struct Point2 {
    double x = 0.0;
    double y = 0.0;
};

/// Throws ParameterError unless M >= 2 and r >= 2.
ProblemParams make_problem(int M, int r);

/// Class label in [1..M]. Throws ParameterError on an out-of-range sector.
int region_label(const ProblemParams& p, AtomicRegion reg);

double region_area(const ProblemParams& p, AtomicRegion reg);

/// nullopt when the point lies outside the closed unit disc.
std::optional<AtomicRegion> locate_point(const ProblemParams& p, Point2 x);

/// All triangles k = 1..n, then all segments k = 1..n.
std::vector<AtomicRegion> enumerate_regions(const ProblemParams& p);

/// Position of a region in enumerate_regions order, in [0, 2n).
inline int region_index(const ProblemParams& p, AtomicRegion reg) {
    return (reg.part == Part::Triangle ? 0 : p.n) + reg.sector - 1;
}

inline AtomicRegion region_at(const ProblemParams& p, int index) {
    return index < p.n ? AtomicRegion{index + 1, Part::Triangle}
                       : AtomicRegion{index - p.n + 1, Part::Segment};
}

// The three region families a class owns. Each returns the r sector indices
// (ascending) whose sector / triangle / segment carries label m.
std::vector<int> sec_sectors(const ProblemParams& p, int m);
std::vector<int> tri_sectors(const ProblemParams& p, int m);
std::vector<int> seg_sectors(const ProblemParams& p, int m);

}  // namespace enas
