#pragma once

#include <array>
#include <vector>

#include "latdirac/errors.hpp"
#include "latdirac/lattice.hpp"
#include "latdirac/rational.hpp"

namespace latdirac {

/// Component values on the periodic spacetime lattice, site-major.
struct Grid4 {
    LatticeSpec l;
    int ncomp = 0;
    std::vector<Rational> v;

    Grid4() = default;
    Grid4(const LatticeSpec& lat, int ncomp_)
        : l(lat), ncomp(ncomp_), v(static_cast<size_t>(lat.volume4()) * ncomp_) {}

    Rational& at(long site, int comp) { return v[static_cast<size_t>(site) * ncomp + comp]; }
    const Rational& at(long site, int comp) const {
        return v[static_cast<size_t>(site) * ncomp + comp];
    }

    bool same_lattice(const Grid4& o) const { return l.n == o.l.n && l.t == o.l.t; }

    bool operator==(const Grid4& o) const {
        return l.n == o.l.n && l.t == o.l.t && ncomp == o.ncomp && v == o.v;
    }
};

/// Index of the ordered pair (a,b), a<b, in (0,1)(0,2)(0,3)(1,2)(1,3)(2,3).
inline int pair6(int a, int b) {
    static const int idx[4][4] = {{-1, 0, 1, 2}, {0, -1, 3, 4}, {1, 3, -1, 5}, {2, 4, 5, -1}};
    if (a < 0 || a > 3 || b < 0 || b > 3 || a == b) throw InvalidAxis("pair6 index");
    return idx[a][b];
}

/// Tetrad e^I_mu: 16 components per site, (I, mu), I slowest.
struct TetradGrid {
    Grid4 g;
    TetradGrid() = default;
    explicit TetradGrid(const LatticeSpec& l) : g(l, 16) {}
    Rational& at(long s, int i, int mu) { return g.at(s, i * 4 + mu); }
    const Rational& at(long s, int i, int mu) const { return g.at(s, i * 4 + mu); }
};

/// Two-form B^I_{alpha beta}: stored once per ordered pair alpha < beta.
struct BGrid {
    Grid4 g;
    BGrid() = default;
    explicit BGrid(const LatticeSpec& l) : g(l, 24) {}
    Rational& at(long s, int i, int a, int b) { return g.at(s, i * 6 + pair6(a, b)); }
    const Rational& at(long s, int i, int a, int b) const {
        return g.at(s, i * 6 + pair6(a, b));
    }
    /// Full-range access with the antisymmetry sign; zero on the diagonal.
    Rational full(long s, int i, int a, int b) const {
        if (a == b) return Rational();
        Rational x = at(s, i, std::min(a, b), std::max(a, b));
        return a < b ? x : -x;
    }
};

/// Connection omega_mu^{IJ}: stored once per internal pair I < J.
struct ConnectionGrid {
    Grid4 g;
    ConnectionGrid() = default;
    explicit ConnectionGrid(const LatticeSpec& l) : g(l, 24) {}
    Rational& at(long s, int mu, int i, int j) { return g.at(s, mu * 6 + pair6(i, j)); }
    const Rational& at(long s, int mu, int i, int j) const {
        return g.at(s, mu * 6 + pair6(i, j));
    }
    Rational full(long s, int mu, int i, int j) const {
        if (i == j) return Rational();
        Rational x = at(s, mu, std::min(i, j), std::max(i, j));
        return i < j ? x : -x;
    }
};

/// B^I_{alpha beta} = -1/2 eps^{IJKL} (e_{alpha J} omega_{beta KL} -
/// e_{beta J} omega_{alpha KL}), evaluated pointwise. Internal indices are
/// lowered through the (-,+,+,+) sign table.
inline BGrid b_from_connection(const TetradGrid& e, const ConnectionGrid& w) {
    if (!e.g.same_lattice(w.g)) throw DimensionMismatch("grids on different lattices");
    BGrid out(e.g.l);
    const long v4 = e.g.l.volume4();
    for (long s = 0; s < v4; ++s) {
        for (int i = 0; i < 4; ++i)
            for (int al = 0; al < 4; ++al)
                for (int be = al + 1; be < 4; ++be) {
                    Rational acc;
                    for (int j = 0; j < 4; ++j)
                        for (int k = 0; k < 4; ++k)
                            for (int lidx = 0; lidx < 4; ++lidx) {
                                int eps = levi_civita4(i, j, k, lidx);
                                if (eps == 0) continue;
                                // e_{alpha J} = eta_JJ e^J_alpha; omega_{beta KL}
                                Rational ea = rat(eta_lorentz(j, j)) * e.at(s, j, al);
                                Rational eb = rat(eta_lorentz(j, j)) * e.at(s, j, be);
                                Rational wkl_b = rat(eta_lorentz(k, k) * eta_lorentz(lidx, lidx)) *
                                                 w.full(s, be, k, lidx);
                                Rational wkl_a = rat(eta_lorentz(k, k) * eta_lorentz(lidx, lidx)) *
                                                 w.full(s, al, k, lidx);
                                acc += rat(eps) * (ea * wkl_b - eb * wkl_a);
                            }
                    out.at(s, i, al, be) = rat(-1, 2) * acc;
                }
    }
    return out;
}

/// Exact 4x4 inverse tetrad at one site: m[mu][i] with m e = id. Throws
/// DegenerateTetrad when the determinant vanishes.
inline std::array<std::array<Rational, 4>, 4> invert_tetrad_at(const TetradGrid& e, long s) {
    // Gauss-Jordan on [e | id], rows indexed by I, columns by mu.
    std::array<std::array<Rational, 8>, 4> m;
    for (int i = 0; i < 4; ++i)
        for (int mu = 0; mu < 4; ++mu) {
            m[i][mu] = e.at(s, i, mu);
            m[i][4 + mu] = rat(i == mu ? 1 : 0);
        }
    for (int col = 0; col < 4; ++col) {
        int piv = -1;
        for (int r = col; r < 4; ++r)
            if (!m[r][col].is_zero()) {
                piv = r;
                break;
            }
        if (piv < 0) throw DegenerateTetrad(s);
        std::swap(m[col], m[piv]);
        Rational p = m[col][col];
        for (int c = 0; c < 8; ++c) m[col][c] /= p;
        for (int r = 0; r < 4; ++r) {
            if (r == col || m[r][col].is_zero()) continue;
            Rational f = m[r][col];
            for (int c = 0; c < 8; ++c) m[r][c] -= f * m[col][c];
        }
    }
    // rows of the reduced right block: row I gives e^{-1} applied to unit I;
    // e^mu_I is the (mu, I) entry of the inverse matrix of e^I_mu.
    std::array<std::array<Rational, 4>, 4> inv; // inv[mu][i] = e^mu_I
    for (int mu = 0; mu < 4; ++mu)
        for (int i = 0; i < 4; ++i) inv[mu][i] = m[mu][4 + i];
    return inv;
}

/// omega_{alpha IJ} = 1/2 eps_{IJKL} e^{beta K} (B^L_{alpha beta}
///   - 1/2 e^{gamma L} e_{alpha N} B^N_{beta gamma}), pointwise, with the
/// exact inverse tetrad. Internal raising/lowering via (-,+,+,+);
/// eps_{0123} = -1.
inline ConnectionGrid connection_from_b(const TetradGrid& e, const BGrid& b) {
    if (!e.g.same_lattice(b.g)) throw DimensionMismatch("grids on different lattices");
    ConnectionGrid out(e.g.l);
    const long v4 = e.g.l.volume4();
    for (long s = 0; s < v4; ++s) {
        auto inv = invert_tetrad_at(e, s); // inv[mu][i] = e^mu_I
        auto e_up = [&](int mu, int k) {   // e^{mu K} = eta^{KI} e^mu_I
            return rat(eta_lorentz(k, k)) * inv[mu][k];
        };
        auto e_dn = [&](int n, int mu) { // e_{mu N} = eta_{NJ} e^J_mu
            return rat(eta_lorentz(n, n)) * e.at(s, n, mu);
        };
        for (int al = 0; al < 4; ++al)
            for (int i = 0; i < 4; ++i)
                for (int j = i + 1; j < 4; ++j) {
                    Rational acc;
                    for (int k = 0; k < 4; ++k)
                        for (int lidx = 0; lidx < 4; ++lidx) {
                            int eps = -levi_civita4(i, j, k, lidx); // eps_{IJKL}
                            if (eps == 0) continue;
                            for (int be = 0; be < 4; ++be) {
                                Rational inner = b.full(s, lidx, al, be);
                                Rational corr;
                                for (int ga = 0; ga < 4; ++ga)
                                    for (int n = 0; n < 4; ++n)
                                        corr += e_up(ga, lidx) * e_dn(n, al) *
                                                b.full(s, n, be, ga);
                                inner -= rat(1, 2) * corr;
                                acc += rat(eps) * e_up(be, k) * inner;
                            }
                        }
                    // omega_{alpha IJ}; stored with upper internal pair:
                    // omega_alpha^{IJ} = eta^{II} eta^{JJ} omega_{alpha IJ}
                    out.at(s, al, i, j) =
                        rat(eta_lorentz(i, i) * eta_lorentz(j, j)) * rat(1, 2) * acc;
                }
    }
    return out;
}

/// g_{mu nu} = eta_IJ (D_mu f^I)(D_nu f^J) from forward differences of a
/// 4-plet of scalars; the full symmetric 4x4 is stored per site.
inline Grid4 metric_from_gradients(const Grid4& df) {
    if (df.ncomp != 16) throw DimensionMismatch("gradient grid needs (mu, I) components");
    Grid4 g(df.l, 16);
    const long v4 = df.l.volume4();
    for (long s = 0; s < v4; ++s)
        for (int mu = 0; mu < 4; ++mu)
            for (int nu = 0; nu < 4; ++nu) {
                Rational acc;
                for (int i = 0; i < 4; ++i)
                    acc += rat(eta_lorentz(i, i)) * df.at(s, mu * 4 + i) * df.at(s, nu * 4 + i);
                g.at(s, mu * 4 + nu) = acc;
            }
    return g;
}

inline Grid4 metric_from_f(const Grid4& f) {
    if (f.ncomp != 4) throw DimensionMismatch("scalar 4-plet expected");
    Grid4 df(f.l, 16);
    const long v4 = f.l.volume4();
    for (long s = 0; s < v4; ++s)
        for (int mu = 0; mu < 4; ++mu) {
            long sh = shift4(f.l, s, mu, 1);
            for (int i = 0; i < 4; ++i) df.at(s, mu * 4 + i) = f.at(sh, i) - f.at(s, i);
        }
    return metric_from_gradients(df);
}

} // namespace latdirac
