#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace mixnorm {

// Shift triple for the translated dyadic grids: each axis gets an offset
// a/3 of the cube side, a in {0,1,2}.  Shift 0 on every axis is the
// standard grid placed on the same lattice, but enumerated with the wider
// level range allowed for shifted families.
using GridShift = std::array<int, 3>;

// Axis-parallel cube 2^{-level} * ([m_1 + a_1/3, m_1 + a_1/3 + 1) x ...).
// Smaller level means larger cube.  Corners are kept in exact integer form
// (3*m + a scaled by a power of two) so intersection and containment tests
// never touch floating point.
struct DyadicCube {
    int n = 1;
    int level = 0;
    std::array<std::int64_t, 3> index{0, 0, 0};
    std::optional<GridShift> shift;

    double side() const;
    double volume() const;
    double lower(int axis) const;
    double upper(int axis) const;

    // Lower corner in units of 2^{-ref_level}/3; requires ref_level >= level.
    std::int64_t scaled_lower(int axis, int ref_level) const;
    // Side length in the same units.
    std::int64_t scaled_side(int ref_level) const;

    bool contains(const DyadicCube& q) const;
    bool intersects_window(int window_level) const;  // window [0, 2^K)^n

    std::string to_string() const;
};

// All cubes of the given level whose intersection with [0, 2^K)^n has
// positive volume.  Unshifted: for level >= -K these tile the window; for
// level < -K the single cube with index 0 contains it.  Shifted families
// require level >= -K-2; every coarser shifted cube strictly contains the
// window, so nothing below that level is ever needed.
std::vector<DyadicCube> cubes_intersecting_window(int n, int level, int window_level,
                                                  const std::optional<GridShift>& shift = {});

}  // namespace mixnorm
