#include "enas/geometry.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "enas/error.hpp"

namespace enas {

ProblemParams make_problem(int M, int r) {
    if (M < 2) throw ParameterError("M must be >= 2, got " + std::to_string(M));
    if (r < 2) throw ParameterError("r must be >= 2, got " + std::to_string(r));
    // 2rM must stay representable; counts downstream are int.
    if (static_cast<long long>(M) * r > (1LL << 28))
        throw ParameterError("problem too large: r*M exceeds 2^28");

    ProblemParams p;
    p.M = M;
    p.r = r;
    p.n = 2 * r * M;
    p.a = p.b = p.c = r;
    p.N = 2 * r * (M - 1);
    const double pi = std::numbers::pi;
    p.ar_tri = 0.5 * std::sin(2.0 * pi / p.n);
    p.ar_sec = pi / p.n;
    p.ar_seg = p.ar_sec - p.ar_tri;
    return p;
}

namespace {

void check_sector(const ProblemParams& p, int k) {
    if (k < 1 || k > p.n)
        throw ParameterError("sector index " + std::to_string(k) + " outside [1.." +
                             std::to_string(p.n) + "]");
}

void check_class(const ProblemParams& p, int m) {
    if (m < 1 || m > p.M)
        throw ParameterError("class index " + std::to_string(m) + " outside [1.." +
                             std::to_string(p.M) + "]");
}

}  // namespace

int region_label(const ProblemParams& p, AtomicRegion reg) {
    check_sector(p, reg.sector);
    const int m0 = (reg.sector - 1) % p.M + 1;
    // Second half of the disc: the triangle keeps the sector's class, the
    // segment belongs to the next class (cyclically).
    if (reg.sector > p.r * p.M && reg.part == Part::Segment) return m0 % p.M + 1;
    return m0;
}

double region_area(const ProblemParams& p, AtomicRegion reg) {
    check_sector(p, reg.sector);
    return reg.part == Part::Triangle ? p.ar_tri : p.ar_seg;
}

std::optional<AtomicRegion> locate_point(const ProblemParams& p, Point2 x) {
    const double norm = std::hypot(x.x, x.y);
    if (!(norm <= 1.0)) return std::nullopt;

    constexpr double two_pi = 2.0 * std::numbers::pi;
    const double width = two_pi / p.n;
    double angle = std::atan2(x.y, x.x);
    if (angle < 0.0) angle += two_pi;
    if (angle >= two_pi) angle = 0.0;

    int k = static_cast<int>(std::floor(angle / width)) + 1;
    if (k > p.n) k = p.n;

    const double bisector = (k - 0.5) * width;
    const double along = x.x * std::cos(bisector) + x.y * std::sin(bisector);
    const Part part = along > std::cos(std::numbers::pi / p.n) ? Part::Segment : Part::Triangle;
    return AtomicRegion{k, part};
}

std::vector<AtomicRegion> enumerate_regions(const ProblemParams& p) {
    std::vector<AtomicRegion> out;
    out.reserve(2 * static_cast<std::size_t>(p.n));
    for (int k = 1; k <= p.n; ++k) out.push_back({k, Part::Triangle});
    for (int k = 1; k <= p.n; ++k) out.push_back({k, Part::Segment});
    return out;
}

std::vector<int> sec_sectors(const ProblemParams& p, int m) {
    check_class(p, m);
    std::vector<int> out;
    for (int t = 1; t <= p.r; ++t) out.push_back(m + (t - 1) * p.M);
    return out;
}

std::vector<int> tri_sectors(const ProblemParams& p, int m) {
    check_class(p, m);
    std::vector<int> out;
    for (int t = p.r + 1; t <= 2 * p.r; ++t) out.push_back(m + (t - 1) * p.M);
    return out;
}

std::vector<int> seg_sectors(const ProblemParams& p, int m) {
    check_class(p, m);
    std::vector<int> out;
    for (int t = p.r + 1; t <= 2 * p.r; ++t)
        out.push_back(m == 1 ? t * p.M : (m - 1) + (t - 1) * p.M);
    return out;
}

}  // namespace enas
