#include "mixnorm/dyadic.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace mixnorm {

namespace {

int shift_entry(const std::optional<GridShift>& shift, int axis) {
    if (!shift) return 0;
    const int a = (*shift)[static_cast<size_t>(axis)];
    if (a < 0 || a > 2) throw std::invalid_argument("GridShift entries must be 0, 1, or 2");
    return a;
}

}  // namespace

double DyadicCube::side() const { return std::ldexp(1.0, -level); }

double DyadicCube::volume() const { return std::ldexp(1.0, -level * n); }

double DyadicCube::lower(int axis) const {
    const std::int64_t num = 3 * index[static_cast<size_t>(axis)] + shift_entry(shift, axis);
    return std::ldexp(static_cast<double>(num) / 3.0, -level);
}

double DyadicCube::upper(int axis) const {
    const std::int64_t num = 3 * index[static_cast<size_t>(axis)] + shift_entry(shift, axis) + 3;
    return std::ldexp(static_cast<double>(num) / 3.0, -level);
}

std::int64_t DyadicCube::scaled_lower(int axis, int ref_level) const {
    if (ref_level < level)
        throw std::invalid_argument("DyadicCube::scaled_lower: ref_level must be >= level");
    const std::int64_t num = 3 * index[static_cast<size_t>(axis)] + shift_entry(shift, axis);
    return num << (ref_level - level);
}

std::int64_t DyadicCube::scaled_side(int ref_level) const {
    if (ref_level < level)
        throw std::invalid_argument("DyadicCube::scaled_side: ref_level must be >= level");
    return std::int64_t{3} << (ref_level - level);
}

bool DyadicCube::contains(const DyadicCube& q) const {
    if (n != q.n) throw std::invalid_argument("DyadicCube::contains: dimension mismatch");
    const int ref = std::max(level, q.level);
    const std::int64_t side_a = scaled_side(ref);
    const std::int64_t side_q = q.scaled_side(ref);
    for (int axis = 0; axis < n; ++axis) {
        const std::int64_t lo_a = scaled_lower(axis, ref);
        const std::int64_t lo_q = q.scaled_lower(axis, ref);
        if (lo_q < lo_a || lo_q + side_q > lo_a + side_a) return false;
    }
    return true;
}

bool DyadicCube::intersects_window(int window_level) const {
    const int ref = std::max(level, -window_level);
    const std::int64_t win_side = std::int64_t{3} << (ref + window_level);
    const std::int64_t side_q = scaled_side(ref);
    for (int axis = 0; axis < n; ++axis) {
        const std::int64_t lo = scaled_lower(axis, ref);
        if (lo >= win_side || lo + side_q <= 0) return false;
    }
    return true;
}

std::string DyadicCube::to_string() const {
    std::ostringstream out;
    out << "Q(level=" << level << ", m=";
    for (int axis = 0; axis < n; ++axis) {
        if (axis) out << ",";
        out << index[static_cast<size_t>(axis)];
    }
    if (shift) {
        out << ", shift=";
        for (int axis = 0; axis < n; ++axis) {
            if (axis) out << ",";
            out << (*shift)[static_cast<size_t>(axis)];
        }
    }
    out << ")";
    return out.str();
}

std::vector<DyadicCube> cubes_intersecting_window(int n, int level, int window_level,
                                                  const std::optional<GridShift>& shift) {
    if (n < 1 || n > 3) throw std::invalid_argument("cubes_intersecting_window: n must be 1..3");
    if (window_level < 0)
        throw std::invalid_argument("cubes_intersecting_window: window level must be >= 0");

    std::vector<std::vector<std::int64_t>> axis_indices(static_cast<size_t>(n));
    if (!shift) {
        if (level < -window_level) {
            for (auto& ids : axis_indices) ids.push_back(0);
        } else {
            const std::int64_t count = std::int64_t{1} << (window_level + level);
            for (auto& ids : axis_indices)
                for (std::int64_t m = 0; m < count; ++m) ids.push_back(m);
        }
    } else {
        if (level < -window_level - 2)
            throw std::invalid_argument(
                "cubes_intersecting_window: shifted families need level >= -K-2");
        // Exact endpoint tests, scaled by 12 so the half- and quarter-window
        // levels stay integral: the interval [2^{-level}(m+a/3),
        // 2^{-level}(m+a/3+1)) meets [0, 2^K) iff m+a/3 < 2^{K+level} and
        // m+a/3+1 > 0.
        const std::int64_t upper_12 = std::int64_t{3} << (window_level + level + 2);
        for (int axis = 0; axis < n; ++axis) {
            const int a = (*shift)[static_cast<size_t>(axis)];
            if (a < 0 || a > 2)
                throw std::invalid_argument("cubes_intersecting_window: shift entries in {0,1,2}");
            for (std::int64_t m = (a == 0 ? 0 : -1); 12 * m + 4 * a < upper_12; ++m)
                axis_indices[static_cast<size_t>(axis)].push_back(m);
        }
    }

    std::vector<DyadicCube> cubes;
    std::array<size_t, 3> pos{0, 0, 0};
    const auto count_for = [&](int axis) { return axis_indices[static_cast<size_t>(axis)].size(); };
    size_t total = 1;
    for (int axis = 0; axis < n; ++axis) total *= count_for(axis);
    cubes.reserve(total);
    for (size_t flat = 0; flat < total; ++flat) {
        size_t rem = flat;
        for (int axis = n - 1; axis >= 0; --axis) {
            pos[static_cast<size_t>(axis)] = rem % count_for(axis);
            rem /= count_for(axis);
        }
        DyadicCube q;
        q.n = n;
        q.level = level;
        q.shift = shift;
        for (int axis = 0; axis < n; ++axis)
            q.index[static_cast<size_t>(axis)] =
                axis_indices[static_cast<size_t>(axis)][pos[static_cast<size_t>(axis)]];
        cubes.push_back(q);
    }
    return cubes;
}

}  // namespace mixnorm
