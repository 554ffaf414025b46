#pragma once

#include <array>
#include <cstdint>

#include "latdirac/errors.hpp"
#include "latdirac/sparse.hpp"

namespace latdirac {

/// Periodic cubical lattice: N^3 spatial sites, optionally extended by a
/// periodic time direction of extent T. Spatial axes are labeled 1..3 and
/// the time axis 0, matching the component labels used everywhere else.
struct LatticeSpec {
    int n = 1; // spatial extent, >= 1
    int t = 1; // time extent, used only by spacetime checks

    long volume() const { return static_cast<long>(n) * n * n; }
    long volume4() const { return static_cast<long>(t) * volume(); }

    int extent(int axis) const {
        if (axis == 0) return t;
        if (axis >= 1 && axis <= 3) return n;
        throw InvalidAxis("axis " + std::to_string(axis));
    }
};

/// Canonical site coordinates, each reduced into [0, extent).
struct SiteIndex {
    std::array<int, 4> c{0, 0, 0, 0}; // (t, x, y, z)

    static SiteIndex reduced(const LatticeSpec& l, int t, int x, int y, int z) {
        auto m = [](int a, int e) { return ((a % e) + e) % e; };
        return SiteIndex{{m(t, l.t), m(x, l.n), m(y, l.n), m(z, l.n)}};
    }
};

/// Spatial flat index: x fastest, z slowest.
inline long site3(const LatticeSpec& l, int x, int y, int z) {
    auto m = [](int a, int e) { return ((a % e) + e) % e; };
    return m(x, l.n) + static_cast<long>(l.n) * (m(y, l.n) + static_cast<long>(l.n) * m(z, l.n));
}

/// Spacetime flat index: slices are contiguous, t slowest.
inline long site4(const LatticeSpec& l, int t, int x, int y, int z) {
    auto m = [](int a, int e) { return ((a % e) + e) % e; };
    return static_cast<long>(m(t, l.t)) * l.volume() + site3(l, x, y, z);
}

inline SiteIndex coords3(const LatticeSpec& l, long s) {
    SiteIndex r;
    r.c[1] = static_cast<int>(s % l.n);
    r.c[2] = static_cast<int>((s / l.n) % l.n);
    r.c[3] = static_cast<int>(s / (static_cast<long>(l.n) * l.n));
    return r;
}

inline SiteIndex coords4(const LatticeSpec& l, long s) {
    SiteIndex r = coords3(l, s % l.volume());
    r.c[0] = static_cast<int>(s / l.volume());
    return r;
}

/// Site shifted by +steps along axis (0 = time, 1..3 = spatial), periodic.
inline long shift3(const LatticeSpec& l, long s, int axis, int steps = 1) {
    if (axis < 1 || axis > 3) throw InvalidAxis("spatial axis " + std::to_string(axis));
    SiteIndex r = coords3(l, s);
    r.c[axis] += steps;
    return site3(l, r.c[1], r.c[2], r.c[3]);
}

inline long shift4(const LatticeSpec& l, long s, int axis, int steps = 1) {
    if (axis < 0 || axis > 3) throw InvalidAxis("axis " + std::to_string(axis));
    SiteIndex r = coords4(l, s);
    r.c[axis] += steps;
    return site4(l, r.c[0], r.c[1], r.c[2], r.c[3]);
}

enum class Orientation { Forward, Backward };

/// V x V matrix of the forward difference D_a f(x) = f(x+a) - f(x) or the
/// backward difference f(x) - f(x-a) on the spatial lattice, with periodic
/// wraparound. On a 1-site extent a site maps to itself and the matrix is
/// exactly zero. backward = -transpose(forward).
inline SparseMatrix diff_matrix(const LatticeSpec& l, int axis,
                                Orientation o = Orientation::Forward) {
    if (axis < 1 || axis > 3) throw InvalidAxis("spatial axis " + std::to_string(axis));
    const long v = l.volume();
    SparseMatrix m(static_cast<int>(v), static_cast<int>(v));
    for (long s = 0; s < v; ++s) {
        long nb = shift3(l, s, axis, o == Orientation::Forward ? 1 : -1);
        if (o == Orientation::Forward) {
            m.add(static_cast<int>(s), static_cast<int>(nb), rat(1));
            m.add(static_cast<int>(s), static_cast<int>(s), rat(-1));
        } else {
            m.add(static_cast<int>(s), static_cast<int>(s), rat(1));
            m.add(static_cast<int>(s), static_cast<int>(nb), rat(-1));
        }
    }
    return m;
}

/// Spacetime (TV x TV) version; axis 0 is the time direction.
inline SparseMatrix diff_matrix4(const LatticeSpec& l, int axis,
                                 Orientation o = Orientation::Forward) {
    if (axis < 0 || axis > 3) throw InvalidAxis("axis " + std::to_string(axis));
    const long v = l.volume4();
    SparseMatrix m(static_cast<int>(v), static_cast<int>(v));
    for (long s = 0; s < v; ++s) {
        long nb = shift4(l, s, axis, o == Orientation::Forward ? 1 : -1);
        if (o == Orientation::Forward) {
            m.add(static_cast<int>(s), static_cast<int>(nb), rat(1));
            m.add(static_cast<int>(s), static_cast<int>(s), rat(-1));
        } else {
            m.add(static_cast<int>(s), static_cast<int>(s), rat(1));
            m.add(static_cast<int>(s), static_cast<int>(nb), rat(-1));
        }
    }
    return m;
}

/// Totally antisymmetric symbol on spacetime indices 0..3, normalized by
/// eps(0,1,2,3) = +1.
inline int levi_civita4(int a, int b, int c, int d) {
    const int idx[4] = {a, b, c, d};
    for (int i = 0; i < 4; ++i)
        if (idx[i] < 0 || idx[i] > 3) throw InvalidAxis("levi_civita4 index out of range");
    int sign = 1;
    int p[4] = {a, b, c, d};
    for (int i = 0; i < 4; ++i)
        for (int j = i + 1; j < 4; ++j) {
            if (p[i] == p[j]) return 0;
            if (p[i] > p[j]) {
                std::swap(p[i], p[j]);
                sign = -sign;
            }
        }
    return sign;
}

/// Spatial symbol eta^{abc} = eps^{0abc} on indices 1..3, eta(1,2,3) = +1.
inline int levi_civita3(int a, int b, int c) {
    for (int x : {a, b, c})
        if (x < 1 || x > 3) throw InvalidAxis("levi_civita3 index out of range");
    return levi_civita4(0, a, b, c);
}

/// Internal Lorentz metric, signature (-,+,+,+).
inline int eta_lorentz(int i, int j) {
    if (i != j) return 0;
    return i == 0 ? -1 : 1;
}

} // namespace latdirac
