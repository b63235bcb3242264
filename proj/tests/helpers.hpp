#pragma once

// Shared fixture builders for the test suite.  All sets are H-rep unions.

#include <vector>

#include "essint/geom.hpp"

namespace fixtures {

using essint::Mat;
using essint::Polyhedron;
using essint::SetValue;
using essint::Vec;

inline Vec v2(double a, double b) {
    Vec v(2);
    v << a, b;
    return v;
}

inline Vec v3(double a, double b, double c) {
    Vec v(3);
    v << a, b, c;
    return v;
}

inline Vec v1(double a) {
    Vec v(1);
    v << a;
    return v;
}

/// {x : <row, x> <= rhs} in the plane.
inline SetValue half_plane(double a, double b, double rhs = 0.0) {
    Mat A(1, 2);
    A << a, b;
    Vec bb(1);
    bb << rhs;
    return SetValue({Polyhedron(A, bb)});
}

/// Third quadrant {x1 <= 0, x2 <= 0}.
inline SetValue quadrant() {
    Mat A(2, 2);
    A << 1, 0, 0, 1;
    return SetValue({Polyhedron(A, Vec::Zero(2))});
}

/// {x2 <= -|x1|}: the downward convex cone.
inline SetValue down_cone() {
    Mat A(2, 2);
    A << -1, 1, 1, 1;  // x2 - x1 <= 0, x2 + x1 <= 0
    return SetValue({Polyhedron(A, Vec::Zero(2))});
}

/// {x2 >= |x1|}: the upward convex cone.
inline SetValue up_cone() {
    Mat A(2, 2);
    A << 1, -1, -1, -1;  // x1 - x2 <= 0, -x1 - x2 <= 0
    return SetValue({Polyhedron(A, Vec::Zero(2))});
}

/// {x2 >= x1} union {x2 >= -x1}: nonconvex corner at the origin.
inline SetValue bowtie_up() {
    Mat A1(1, 2), A2(1, 2);
    A1 << 1, -1;
    A2 << -1, -1;
    return SetValue({Polyhedron(A1, Vec::Zero(1)), Polyhedron(A2, Vec::Zero(1))});
}

/// {x2 <= |x1|}: complement-style concave union.
inline SetValue bowtie_down() {
    Mat A1(1, 2), A2(1, 2);
    A1 << -1, 1;  // x2 <= x1
    A2 << 1, 1;   // x2 <= -x1
    return SetValue({Polyhedron(A1, Vec::Zero(1)), Polyhedron(A2, Vec::Zero(1))});
}

/// conv{(0,0),(1,0),(0,1)}.
inline SetValue triangle() {
    Mat A(3, 2);
    A << -1, 0, 0, -1, 1, 1;
    Vec b(3);
    b << 0, 0, 1;
    return SetValue({Polyhedron(A, b)});
}

/// Axis-aligned box [lo1,hi1] x [lo2,hi2].
inline SetValue box(double lo1, double hi1, double lo2, double hi2) {
    Mat A(4, 2);
    A << 1, 0, -1, 0, 0, 1, 0, -1;
    Vec b(4);
    b << hi1, -lo1, hi2, -lo2;
    return SetValue({Polyhedron(A, b)});
}

/// Half line (-inf, 0] of the real line.
inline SetValue lower_ray() {
    Mat A(1, 1);
    A << 1;
    return SetValue({Polyhedron(A, Vec::Zero(1))});
}

/// Half line [0, inf).
inline SetValue upper_ray() {
    Mat A(1, 1);
    A << -1;
    return SetValue({Polyhedron(A, Vec::Zero(1))});
}

/// The singleton {0} in the plane, as a four-row box.
inline SetValue origin_only() {
    Mat A(4, 2);
    A << 1, 0, -1, 0, 0, 1, 0, -1;
    return SetValue({Polyhedron(A, Vec::Zero(4))});
}

}  // namespace fixtures
