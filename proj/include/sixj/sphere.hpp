#pragma once

#include "d_asymptotics.hpp"
#include "ponzano_regge.hpp"
#include "uniform.hpp"

#include <boost/math/quadrature/tanh_sinh.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <vector>

namespace sixj {

// Point of the 6j-sphere of radius D/2. phi12 is the interior dihedral angle at edge 12, zero on the
// flat configuration of smallest J23.
struct SpherePoint {
    Vec3 K{};
    double J12 = 0;
    double phi12 = 0;  // (-pi, pi]
};

inline double wrap_angle(double a) {
    a = std::remainder(a, 2 * std::numbers::pi);
    return a <= -std::numbers::pi ? a + 2 * std::numbers::pi : a;
}

inline SpherePoint sphere_point(const Bounds& b, double J12, double phi12) {
    SpherePoint p;
    p.J12 = J12;
    p.phi12 = wrap_angle(phi12);
    const double R = 0.5 * static_cast<double>(b.D);
    const double z = J12 - b.J12_avg();
    const double rho = std::sqrt(std::max(0.0, R * R - z * z));
    p.K = {rho * std::cos(p.phi12), rho * std::sin(p.phi12), z};
    return p;
}

struct WrongRegion : std::domain_error {
    using std::domain_error::domain_error;
};

// Edge vectors of the butterfly configuration: J12 along x, triangle 3-4-12 in the upper half of the
// xy plane, triangle 1-2-12 turned about J12 by phi12. Vertices P0 = 0, P1 = J1, P2 = J12, P3 = -J4.
struct ButterflyVectors {
    Vec3 P1{}, P2{}, P3{};
    double J23() const { return norm(P3 - P1); }
};

inline ButterflyVectors butterfly_vectors(const SixJLabels& outer, const Bounds& b, double J12, double phi12) {
    const double eps = 1e-12 * std::max(1.0, b.J12_max);
    if (!(J12 >= b.J12_min - eps && J12 <= b.J12_max + eps))
        throw std::out_of_range("butterfly: J12 outside the classical bounds");
    // J12 = 0 only when J1 = J2 and J3 = J4; the limit of the construction is taken from above.
    J12 = std::max(J12, eps);
    const double J1 = outer.j1.value() + 0.5, J2 = outer.j2.value() + 0.5;
    const double J3 = outer.j3.value() + 0.5, J4 = outer.j4.value() + 0.5;
    const double x1 = (J1 * J1 + J12 * J12 - J2 * J2) / (2 * J12);
    const double y1 = std::sqrt(std::max(0.0, J1 * J1 - x1 * x1));
    const double x3 = (J4 * J4 + J12 * J12 - J3 * J3) / (2 * J12);
    const double y3 = std::sqrt(std::max(0.0, J4 * J4 - x3 * x3));
    ButterflyVectors v;
    v.P2 = {J12, 0, 0};
    v.P3 = {x3, y3, 0};
    v.P1 = rotate(Vec3{x1, y1, 0}, Vec3{1, 0, 0}, phi12);
    return v;
}

// Tetrahedron built from explicit vertices; V = P1 . (P2 x P3) / 6.
inline Tetrahedron tetrahedron_from_vertices(const Vec3& P1, const Vec3& P2, const Vec3& P3) {
    Tetrahedron t;
    t.A = {P1, P2, P3};
    t.edges[E1] = P1;
    t.edges[E2] = P2 - P1;
    t.edges[E3] = P3 - P2;
    t.edges[E4] = -P3;
    t.edges[E12] = P2;
    t.edges[E23] = P3 - P1;
    for (int e = 0; e < 6; ++e) t.J[e] = norm(t.edges[e]);
    t.gram_matrix = gram(t.J);
    t.eigenvalues = eigen_sym3(t.gram_matrix).values;
    t.sigma = 1;
    t.volume = triple(P1, P2, P3) / 6;
    t.volume_sq = t.volume * t.volume;
    return t;
}

inline Tetrahedron butterfly(const SixJLabels& outer, double J12, double phi12) {
    const ButterflyVectors v = butterfly_vectors(outer, bounds(outer), J12, phi12);
    return tetrahedron_from_vertices(v.P1, v.P2, v.P3);
}

// Mirror image through the plane of the seed triangle: K_y -> -K_y, V -> -V.
inline Tetrahedron mirror(const Tetrahedron& t) {
    auto flip = [](const Vec3& v) { return Vec3{v[0], v[1], -v[2]}; };
    return tetrahedron_from_vertices(flip(t.A[0]), flip(t.A[1]), flip(t.A[2]));
}

struct ContourVertex {
    double J12 = 0, phi12 = 0;
    Vec3 K{};
};

struct Contour {
    double level = 0;  // J23
    HalfInt j23;
    std::vector<ContourVertex> points;
    bool closed = false;
};

// J23 on a (J12, phi12) grid. Rows run from J12_min to J12_max inclusive; columns are periodic,
// phi12 = -pi + 2 pi k / n_phi.
struct J23Grid {
    std::vector<double> J12;
    std::vector<double> phi12;
    std::vector<std::vector<double>> J23;  // [row][column]
    std::vector<Contour> contours;         // one closed curve per quantized j23 when resolved
};

namespace detail {

// Marching squares on a grid periodic in the column index. Segment endpoints sit on grid edges;
// edge ids are 2 * node + (0 along phi12, 1 along J12).
inline std::vector<std::vector<long>> march(const std::vector<std::vector<double>>& f, double level) {
    const long nr = static_cast<long>(f.size()), nc = static_cast<long>(f[0].size());
    auto node = [nc](long i, long k) { return i * nc + ((k % nc) + nc) % nc; };
    auto hedge = [&](long i, long k) { return 2 * node(i, k); };
    auto vedge = [&](long i, long k) { return 2 * node(i, k) + 1; };
    std::map<long, std::vector<long>> adj;
    auto link = [&](long a, long b) {
        adj[a].push_back(b);
        adj[b].push_back(a);
    };
    for (long i = 0; i + 1 < nr; ++i)
        for (long k = 0; k < nc; ++k) {
            const long k1 = (k + 1) % nc;
            const double v00 = f[i][k], v01 = f[i][k1], v11 = f[i + 1][k1], v10 = f[i + 1][k];
            const int c = (v00 >= level) | ((v01 >= level) << 1) | ((v11 >= level) << 2) | ((v10 >= level) << 3);
            // Edges: bottom (i, k)-(i, k+1), right (i, k+1)-(i+1, k+1), top (i+1, k)-(i+1, k+1), left.
            const long eb = hedge(i, k), er = vedge(i, k + 1), et = hedge(i + 1, k), el = vedge(i, k);
            const bool centre_high = 0.25 * (v00 + v01 + v11 + v10) >= level;
            switch (c) {
            case 0: case 15: break;
            case 1: case 14: link(el, eb); break;
            case 2: case 13: link(eb, er); break;
            case 3: case 12: link(el, er); break;
            case 4: case 11: link(er, et); break;
            case 6: case 9: link(eb, et); break;
            case 7: case 8: link(el, et); break;
            case 5:
                if (centre_high) { link(el, et); link(eb, er); }
                else { link(el, eb); link(er, et); }
                break;
            case 10:
                if (centre_high) { link(el, eb); link(er, et); }
                else { link(el, et); link(eb, er); }
                break;
            }
        }
    std::vector<std::vector<long>> chains;
    std::map<long, bool> used;
    auto walk = [&](long start) {
        std::vector<long> chain{start};
        used[start] = true;
        long prev = -1, cur = start;
        for (;;) {
            long next = -1;
            for (long n : adj[cur])
                if (n != prev && !used[n]) { next = n; break; }
            if (next < 0) {
                // Closed when the start is adjacent to the last vertex.
                const auto& a = adj[cur];
                if (chain.size() > 2 && std::find(a.begin(), a.end(), start) != a.end()) chain.push_back(start);
                break;
            }
            used[next] = true;
            chain.push_back(next);
            prev = cur;
            cur = next;
        }
        return chain;
    };
    // Open chains start at degree-one edges; whatever remains is closed.
    for (const auto& [e, n] : adj)
        if (n.size() == 1 && !used[e]) chains.push_back(walk(e));
    for (const auto& [e, n] : adj)
        if (!used[e]) chains.push_back(walk(e));
    return chains;
}

} // namespace detail

inline double j23_at(const SixJLabels& outer, const Bounds& b, double J12, double phi12) {
    return butterfly_vectors(outer, b, J12, phi12).J23();
}

namespace detail {

inline J23Grid j23_grid_values(const SixJLabels& outer, const Bounds& b, int n_J12, int n_phi) {
    if (n_J12 < 8 || n_phi < 8) throw std::invalid_argument("j23_contour_grid: need at least 8 points per axis");
    J23Grid g;
    for (int i = 0; i < n_J12; ++i) g.J12.push_back(b.J12_min + (b.J12_max - b.J12_min) * i / (n_J12 - 1));
    for (int k = 0; k < n_phi; ++k) g.phi12.push_back(-std::numbers::pi + 2 * std::numbers::pi * k / n_phi);
    g.J23.assign(n_J12, std::vector<double>(n_phi));
    for (int i = 0; i < n_J12; ++i)
        for (int k = 0; k < n_phi; ++k) g.J23[i][k] = j23_at(outer, b, g.J12[i], g.phi12[k]);
    return g;
}

inline std::vector<Contour> extract(const SixJLabels& outer, const Bounds& b, const J23Grid& g, double level) {
    const long nc = static_cast<long>(g.phi12.size());
    std::vector<Contour> out;
    for (const auto& chain : march(g.J23, level)) {
        Contour c;
        c.level = level;
        c.closed = chain.size() > 2 && chain.front() == chain.back();
        for (long e : chain) {
            const long nd = e / 2, i = nd / nc, k = nd % nc;
            const long i2 = (e % 2) ? i + 1 : i, k2 = (e % 2) ? k : (k + 1) % nc;
            double dphi = g.phi12[k2] - g.phi12[k];
            if (dphi < 0) dphi += 2 * std::numbers::pi;
            auto at = [&](double t) {
                return j23_at(outer, b, g.J12[i] + t * (g.J12[i2] - g.J12[i]), g.phi12[k] + t * dphi) - level;
            };
            // J23 behaves like a square root near the poles; the crossing is bisected on the edge.
            double lo = 0, hi = 1;
            const bool rising = at(0) < 0;
            for (int it = 0; it < 60; ++it) {
                const double m = 0.5 * (lo + hi);
                if ((at(m) < 0) == rising) lo = m;
                else hi = m;
            }
            const double t = 0.5 * (lo + hi);
            const SpherePoint p = sphere_point(b, g.J12[i] + t * (g.J12[i2] - g.J12[i]), g.phi12[k] + t * dphi);
            c.points.push_back({p.J12, p.phi12, p.K});
        }
        out.push_back(std::move(c));
    }
    return out;
}

} // namespace detail

inline J23Grid j23_contour_grid(const SixJLabels& outer, int n_J12, int n_phi) {
    const Bounds b = bounds(outer);
    J23Grid g = detail::j23_grid_values(outer, b, n_J12, n_phi);
    for (std::int64_t n = 0; n < b.D; ++n) {
        const HalfInt j23 = b.j23_min + half(2 * n);
        for (Contour& c : detail::extract(outer, b, g, j23.value() + 0.5)) {
            c.j23 = j23;
            g.contours.push_back(std::move(c));
        }
    }
    return g;
}

// Orbit J23 = level at continuous J23.
inline std::vector<Contour> j23_orbit(const SixJLabels& outer, double level, int n_J12, int n_phi) {
    const Bounds b = bounds(outer);
    return detail::extract(outer, b, detail::j23_grid_values(outer, b, n_J12, n_phi), level);
}

// Orbit J12 = level: a circle of latitude, closed (first point repeated).
inline Contour j12_orbit(const Bounds& b, double level, int n_phi) {
    Contour c;
    c.level = level;
    c.closed = true;
    for (int k = 0; k <= n_phi; ++k) {
        const SpherePoint p = sphere_point(b, level, -std::numbers::pi + 2 * std::numbers::pi * (k % n_phi) / n_phi);
        c.points.push_back({p.J12, p.phi12, p.K});
    }
    return c;
}

// Width in phi12 of {J23' <= J23} on the J12 = s circle; J23 is even in phi12 and grows with |phi12|.
inline double phi_width_below(const SixJLabels& outer, const Bounds& b, double s, double J23) {
    const ButterflyVectors v = butterfly_vectors(outer, b, s, 0);
    const double x1 = v.P1[0], y1 = v.P1[1], x3 = v.P3[0], y3 = v.P3[1];
    const double J1sq = x1 * x1 + y1 * y1, J4sq = x3 * x3 + y3 * y3;
    const double num = J1sq + J4sq - 2 * x1 * x3 - J23 * J23, den = 2 * y1 * y3;
    if (den <= 0) return num >= 0 ? 2 * std::numbers::pi : 0.0;
    return 2 * std::acos(std::clamp(num / den, -1.0, 1.0));
}

namespace detail {

// Integral of phi_width_below over s in [lo, hi]. The integrand has square-root kinks where the orbit
// is tangent to a J12 circle; the interval is split there and each piece done by tanh-sinh.
inline double width_integral(const SixJLabels& outer, const Bounds& b, double lo, double hi, double J23) {
    if (hi <= lo) return 0;
    auto arg = [&](double s) {
        const ButterflyVectors v = butterfly_vectors(outer, b, s, 0);
        const double x1 = v.P1[0], y1 = v.P1[1], x3 = v.P3[0], y3 = v.P3[1];
        const double den = 2 * y1 * y3;
        const double num = x1 * x1 + y1 * y1 + x3 * x3 + y3 * y3 - 2 * x1 * x3 - J23 * J23;
        return den > 0 ? num / den : std::copysign(2.0, num);
    };
    std::vector<double> cuts{lo};
    const int scan = 512;
    for (double edge : {1.0, -1.0}) {
        double a = lo, fa = arg(lo) - edge;
        for (int i = 1; i <= scan; ++i) {
            const double c = lo + (hi - lo) * i / scan, fc = arg(c) - edge;
            if ((fa < 0) != (fc < 0)) {
                double x = a, y = c;
                for (int it = 0; it < 200 && y - x > 1e-15 * std::max(1.0, hi); ++it) {
                    const double m = 0.5 * (x + y);
                    if ((arg(m) - edge < 0) == (fa < 0)) x = m;
                    else y = m;
                }
                cuts.push_back(0.5 * (x + y));
            }
            a = c;
            fa = fc;
        }
    }
    cuts.push_back(hi);
    std::sort(cuts.begin(), cuts.end());
    boost::math::quadrature::tanh_sinh<double> q;
    double total = 0;
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
        const double w = cuts[i + 1] - cuts[i];
        if (w <= 0) continue;
        if (w < 1e-8 * std::max(1.0, hi)) {
            total += w * phi_width_below(outer, b, 0.5 * (cuts[i] + cuts[i + 1]), J23);
            continue;
        }
        total += q.integrate([&](double s) { return phi_width_below(outer, b, s, J23); }, cuts[i], cuts[i + 1]);
    }
    return total;
}

} // namespace detail

// Area (integral of dJ12 dphi12) of the cap {J23' <= J23}, the region an orbit encloses about the
// J23_min pole.
inline double j23_orbit_area(const SixJLabels& outer, double J23) {
    const Bounds b = bounds(outer);
    return detail::width_integral(outer, b, b.J12_min, b.J12_max, J23);
}

// Area of the cap {J12' <= J12} about the south pole.
inline double j12_orbit_area(const Bounds& b, double J12) { return 2 * std::numbers::pi * (J12 - b.J12_min); }

// Lune {J12' >= J12} cut by {J23' <= J23} at continuous lengths.
inline double lune_area(const SixJLabels& outer, double J12, double J23) {
    const Bounds b = bounds(outer);
    return detail::width_integral(outer, b, J12, b.J12_max, J23);
}

// Lune between the quantized orbits of j12 and j23.
inline double lune_area_6j(const SixJLabels& l) {
    require_valid(l);
    const PRPhase p = pr_phase(lengths(l));
    if (p.region.kind != Region::Allowed)
        throw WrongRegion("lune_area_6j: " + l.str() + " is not in the allowed region");
    return lune_area(l, l.j12.value() + 0.5, l.j23.value() + 0.5);
}

// Sum over the cells of an (n_J12 x n_phi) grid of the cell areas (D/2) Omega, each cell a polygon of
// latitude arcs and meridians.
inline double sphere_area_quadrature(const Bounds& b, int n_J12, int n_phi) {
    const double R = 0.5 * static_cast<double>(b.D);
    auto unit = [&](double J12, double phi) {
        const SpherePoint p = sphere_point(b, J12, phi);
        return (1.0 / R) * p.K;
    };
    const Vec3 ez{0, 0, 1};
    double total = 0;
    for (int i = 0; i + 1 < n_J12; ++i) {
        const double a = b.J12_min + (b.J12_max - b.J12_min) * i / (n_J12 - 1);
        const double c = b.J12_min + (b.J12_max - b.J12_min) * (i + 1) / (n_J12 - 1);
        for (int k = 0; k < n_phi; ++k) {
            const double p0 = -std::numbers::pi + 2 * std::numbers::pi * k / n_phi;
            const double dp = 2 * std::numbers::pi / n_phi;
            // Counterclockwise seen from outside: east along J12 = a, north, west along J12 = c, south.
            const Vec3 corners[4] = {unit(a, p0), unit(a, p0 + dp), unit(c, p0 + dp), unit(c, p0)};
            std::vector<Vec3> v, axes;
            std::vector<double> ang;
            for (int e = 0; e < 4; ++e) {
                const Vec3 &from = corners[e], &to = corners[(e + 1) % 4];
                if (norm(to - from) < 1e-14) continue;
                v.push_back(from);
                if (e == 0) { axes.push_back(ez); ang.push_back(dp); }
                else if (e == 2) { axes.push_back(ez); ang.push_back(-dp); }
                else {
                    const Vec3 n = cross(from, to);
                    axes.push_back(normalized(n));
                    ang.push_back(std::atan2(norm(n), dot(from, to)));
                }
            }
            total += R * solid_angle_polygon(v, axes, ang);
        }
    }
    return total;
}

// Quantized point of the (J12, J23) plane.
struct Spot {
    HalfInt j12, j23;
    double J12 = 0, J23 = 0;
    Region region = Region::Allowed;
    double margin = 0;  // distance to the nearest side of the classical square
};

inline std::vector<Spot> spots(const SixJLabels& outer) {
    const Bounds b = bounds(outer);
    std::vector<Spot> out;
    for (std::int64_t i = 0; i < b.D; ++i)
        for (std::int64_t k = 0; k < b.D; ++k) {
            Spot s;
            s.j12 = b.j12_min + half(2 * i);
            s.j23 = b.j23_min + half(2 * k);
            s.J12 = s.j12.value() + 0.5;
            s.J23 = s.j23.value() + 0.5;
            const SixJLabels l{outer.j1, outer.j2, s.j12, outer.j3, outer.j4, s.j23};
            s.region = classify(lengths(l)).kind;
            s.margin = std::min({s.J12 - b.J12_min, b.J12_max - s.J12, s.J23 - b.J23_min, b.J23_max - s.J23});
            out.push_back(s);
        }
    return out;
}

inline Lengths outer_lengths(const SixJLabels& outer, double J12, double J23) {
    return {outer.j1.value() + 0.5, outer.j2.value() + 0.5, outer.j3.value() + 0.5,
            outer.j4.value() + 0.5, J12, J23};
}

struct PlanePoint {
    double J12 = 0, J23 = 0;
};

// Points of det G = 0 found by bisection along n interior grid lines in each direction.
inline std::vector<PlanePoint> caustic_curve(const SixJLabels& outer, int n) {
    const Bounds b = bounds(outer);
    auto det = [&](double J12, double J23) { return gram(outer_lengths(outer, J12, J23)).det(); };
    std::vector<PlanePoint> out;
    const int scan = 4 * n;
    for (int dir = 0; dir < 2; ++dir)
        for (int i = 1; i <= n; ++i) {
            const double lo12 = dir ? b.J23_min : b.J12_min, hi12 = dir ? b.J23_max : b.J12_max;
            const double lo = dir ? b.J12_min : b.J23_min, hi = dir ? b.J12_max : b.J23_max;
            const double fixed = lo12 + (hi12 - lo12) * i / (n + 1);
            auto f = [&](double x) { return dir ? det(x, fixed) : det(fixed, x); };
            double a = lo, fa = f(lo);
            for (int s = 1; s <= scan; ++s) {
                const double c = lo + (hi - lo) * s / scan, fc = f(c);
                if ((fa > 0) != (fc > 0)) {
                    double x = a, y = c;
                    for (int it = 0; it < 100; ++it) {
                        const double m = 0.5 * (x + y);
                        if ((f(m) > 0) == (fa > 0)) x = m;
                        else y = m;
                    }
                    const double r = 0.5 * (x + y);
                    out.push_back(dir ? PlanePoint{r, fixed} : PlanePoint{fixed, r});
                }
                a = c;
                fa = fc;
            }
        }
    return out;
}

// Where the caustic touches a side of the classical square: det G <= 0 along each side with maximum
// 0 at the touching point, located by golden-section search.
struct TouchPoint {
    PlanePoint at;
    double det_scaled = 0;  // det G / (J12 J23)^2 at the maximum
};

inline std::vector<TouchPoint> touching_points(const SixJLabels& outer) {
    const Bounds b = bounds(outer);
    std::vector<TouchPoint> out;
    for (int side = 0; side < 4; ++side) {
        const bool fix12 = side < 2;
        const double value = fix12 ? (side == 0 ? b.J12_min : b.J12_max) : (side == 2 ? b.J23_min : b.J23_max);
        auto point = [&](double x) { return fix12 ? PlanePoint{value, x} : PlanePoint{x, value}; };
        auto f = [&](double x) {
            const PlanePoint p = point(x);
            return gram(outer_lengths(outer, p.J12, p.J23)).det() / std::pow(p.J12 * p.J23, 2);
        };
        const double g = (std::sqrt(5.0) - 1) / 2;
        double a = fix12 ? b.J23_min : b.J12_min, c = fix12 ? b.J23_max : b.J12_max;
        for (int it = 0; it < 200; ++it) {
            const double x1 = c - g * (c - a), x2 = a + g * (c - a);
            if (f(x1) > f(x2)) c = x2;
            else a = x1;
        }
        const double x = 0.5 * (a + c);
        out.push_back({point(x), f(x)});
    }
    return out;
}

// Caustic point on the ray from the centre of the classical square (allowed) toward the corner of a
// forbidden region: A = (max, min), B = (min, min), C = (max, max), D = (min, max).
inline PlanePoint caustic_toward_corner(const SixJLabels& outer, Region corner) {
    const Bounds b = bounds(outer);
    const bool high12 = corner == Region::ForbiddenA || corner == Region::ForbiddenC;
    const bool high23 = corner == Region::ForbiddenC || corner == Region::ForbiddenD;
    if (!is_forbidden(corner)) throw std::invalid_argument("caustic_toward_corner: not a forbidden region");
    const PlanePoint c0{b.J12_avg(), b.J23_avg()};
    const PlanePoint c1{high12 ? b.J12_max : b.J12_min, high23 ? b.J23_max : b.J23_min};
    auto at = [&](double t) { return PlanePoint{c0.J12 + t * (c1.J12 - c0.J12), c0.J23 + t * (c1.J23 - c0.J23)}; };
    auto det = [&](double t) {
        const PlanePoint p = at(t);
        return gram(outer_lengths(outer, p.J12, p.J23)).det();
    };
    if (!(det(0) > 0) || !(det(1) <= 0)) throw InvariantViolation("caustic_toward_corner: no sign change on the ray");
    double lo = 0, hi = 1;
    for (int it = 0; it < 100; ++it) {
        const double m = 0.5 * (lo + hi);
        if (det(m) > 0) lo = m;
        else hi = m;
    }
    return at(0.5 * (lo + hi));
}

// Beta of the uniform map on an n x n grid of cell centres of the classical square; NaN where the
// solver gives up.
struct BetaGrid {
    std::vector<double> J12, J23;
    std::vector<std::vector<double>> beta;  // [J12 index][J23 index], radians
    std::vector<std::vector<Region>> region;
};

inline BetaGrid beta_grid(const SixJLabels& outer, int n) {
    const Bounds b = bounds(outer);
    BetaGrid g;
    for (int i = 0; i < n; ++i) {
        g.J12.push_back(b.J12_min + (b.J12_max - b.J12_min) * (i + 0.5) / n);
        g.J23.push_back(b.J23_min + (b.J23_max - b.J23_min) * (i + 0.5) / n);
    }
    g.beta.assign(n, std::vector<double>(n, std::numeric_limits<double>::quiet_NaN()));
    g.region.assign(n, std::vector<Region>(n, Region::Caustic));
    for (int i = 0; i < n; ++i)
        for (int k = 0; k < n; ++k) {
            try {
                const BetaAtPoint r = solve_beta_at(outer, b, g.J12[i], g.J23[k]);
                g.beta[i][k] = r.beta;
                g.region[i][k] = r.region.kind;
            } catch (const NoConvergence&) {
            }
        }
    return g;
}

} // namespace sixj
