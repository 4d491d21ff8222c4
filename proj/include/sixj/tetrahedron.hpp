#pragma once

#include "labels.hpp"
#include "vec3.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>
#include <utility>

namespace sixj {

// Edge order used by every per-edge array: 1, 2, 3, 4, 12, 23.
enum Edge : int { E1 = 0, E2, E3, E4, E12, E23 };
inline constexpr const char* kEdgeNames[6] = {"1", "2", "3", "4", "12", "23"};

using Lengths = std::array<double, 6>;

inline Lengths lengths(const SixJLabels& l) {
    const auto j = l.table_order();
    Lengths J{};
    for (int i = 0; i < 6; ++i) J[i] = j[i].value() + 0.5;
    return J;
}

struct GramMatrix {
    Mat3 g{};
    double det() const { return det3(g); }
    double frobenius() const {
        double s = 0;
        for (const auto& r : g)
            for (double x : r) s += x * x;
        return std::sqrt(s);
    }
};

// Dot products of A1 = J1, A2 = J12, A3 = -J4.
inline GramMatrix gram(const Lengths& J) {
    for (double x : J)
        if (!(x > 0)) throw std::domain_error("gram: edge lengths must be positive");
    const double J1 = J[E1], J2 = J[E2], J3 = J[E3], J4 = J[E4], J12 = J[E12], J23 = J[E23];
    GramMatrix G;
    G.g[0][0] = J1 * J1;
    G.g[1][1] = J12 * J12;
    G.g[2][2] = J4 * J4;
    G.g[0][1] = G.g[1][0] = 0.5 * (J12 * J12 + J1 * J1 - J2 * J2);
    G.g[0][2] = G.g[2][0] = 0.5 * (J1 * J1 + J4 * J4 - J23 * J23);
    G.g[1][2] = G.g[2][1] = 0.5 * (J12 * J12 + J4 * J4 - J3 * J3);
    return G;
}

// det G scaled by the Hadamard bound (J1 J12 J4)^2, so that it lies in [-1, 1].
inline double normalized_det(const Lengths& J, const GramMatrix& G) {
    const double s = J[E1] * J[E12] * J[E4];
    return G.det() / (s * s);
}

struct SymEigen3 {
    Vec3 values{};    // descending
    Mat3 vectors{};   // column k is the eigenvector of values[k]
};

// Cyclic Jacobi rotations.
inline SymEigen3 eigen_sym3(const GramMatrix& G) {
    Mat3 a = G.g;
    Mat3 v{{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}};
    const double tol = 1e-14 * G.frobenius();
    for (int sweep = 0; sweep < 20; ++sweep) {
        const double off = std::sqrt(a[0][1] * a[0][1] + a[0][2] * a[0][2] + a[1][2] * a[1][2]);
        if (off <= tol) break;
        for (int p = 0; p < 2; ++p) {
            for (int q = p + 1; q < 3; ++q) {
                if (a[p][q] == 0) continue;
                const double theta = (a[q][q] - a[p][p]) / (2 * a[p][q]);
                const double t = (theta >= 0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1));
                const double c = 1 / std::sqrt(t * t + 1), s = t * c;
                for (int k = 0; k < 3; ++k) {
                    const double akp = a[k][p], akq = a[k][q];
                    a[k][p] = c * akp - s * akq;
                    a[k][q] = s * akp + c * akq;
                }
                for (int k = 0; k < 3; ++k) {
                    const double apk = a[p][k], aqk = a[q][k];
                    a[p][k] = c * apk - s * aqk;
                    a[q][k] = s * apk + c * aqk;
                }
                for (int k = 0; k < 3; ++k) {
                    const double vkp = v[k][p], vkq = v[k][q];
                    v[k][p] = c * vkp - s * vkq;
                    v[k][q] = s * vkp + c * vkq;
                }
            }
        }
    }
    std::array<int, 3> order = {0, 1, 2};
    std::sort(order.begin(), order.end(), [&](int x, int y) { return a[x][x] > a[y][y]; });
    SymEigen3 out;
    for (int k = 0; k < 3; ++k) {
        out.values[k] = a[order[k]][order[k]];
        for (int r = 0; r < 3; ++r) out.vectors[r][k] = v[r][order[k]];
    }
    return out;
}

// Vectors of a real or complex tetrahedron. When sigma = -1 the z-components are i times the stored
// coefficients; all dot products go through bilinear(), never a Hermitian product.
struct Tetrahedron {
    Lengths J{};
    GramMatrix gram_matrix;
    Vec3 eigenvalues{};
    int sigma = 1;
    std::array<Vec3, 3> A{};
    std::array<Vec3, 6> edges{};
    double volume_sq = 0;  // det G / 36
    double volume = 0;     // real volume, or the coefficient of i when imaginary

    bool imaginary() const { return sigma < 0; }
    double bilinear(const Vec3& u, const Vec3& w) const { return u[0] * w[0] + u[1] * w[1] + sigma * u[2] * w[2]; }
    double length_sq(int e) const { return bilinear(edges[e], edges[e]); }
};

inline Tetrahedron construct(const Lengths& J) {
    Tetrahedron t;
    t.J = J;
    t.gram_matrix = gram(J);
    const SymEigen3 es = eigen_sym3(t.gram_matrix);
    t.eigenvalues = es.values;
    const double scale = std::abs(es.values[0]);
    if (es.values[1] < -1e-12 * scale) throw InvariantViolation("construct: two negative Gram eigenvalues");
    t.sigma = es.values[2] < 0 ? -1 : 1;
    for (int i = 0; i < 3; ++i)
        for (int k = 0; k < 3; ++k) t.A[i][k] = std::sqrt(std::abs(es.values[k])) * es.vectors[i][k];
    double det = triple(t.A[0], t.A[1], t.A[2]);
    if (t.sigma > 0 && det < 0) {
        // Spatial inversion.
        for (auto& a : t.A) a = -a;
        det = -det;
    }
    t.volume = det / 6;
    t.volume_sq = t.gram_matrix.det() / 36;
    const Vec3 &A1 = t.A[0], &A2 = t.A[1], &A3 = t.A[2];
    t.edges[E1] = A1;
    t.edges[E2] = A2 - A1;
    t.edges[E3] = A3 - A2;
    t.edges[E4] = -A3;
    t.edges[E12] = A2;
    t.edges[E23] = A3 - A1;
    return t;
}

// Exterior dihedral angles. Forbidden: psi holds the caustic base value (0 or pi) and psi_bar the
// continuation sign(cos) acosh|cos|.
struct DihedralAngles {
    std::array<double, 6> cos_psi{};
    std::array<double, 6> psi{};
    std::array<double, 6> psi_bar{};
    bool forbidden = false;
};

inline double continued_angle(double c) { return std::copysign(std::acosh(std::max(1.0, std::abs(c))), c); }

namespace detail {

// Corner at one vertex with edge vectors a, b, c and Gram entries g. Interior dihedral angle along a:
// cos = (g_aa g_bc - g_ab g_ac) / sqrt(m_ab m_ac), sin = |a| sqrt(det g) / sqrt(m_ab m_ac), where
// m_xy = g_xx g_yy - g_xy^2 is four times the squared area of face xy.
struct Corner {
    long double aa, bb, cc, ab, ac, bc;

    static Corner from_lengths(long double a, long double b, long double c, long double ab_opposite,
                               long double ac_opposite, long double bc_opposite) {
        return {a * a, b * b, c * c, (a * a + b * b - ab_opposite * ab_opposite) / 2,
                (a * a + c * c - ac_opposite * ac_opposite) / 2, (b * b + c * c - bc_opposite * bc_opposite) / 2};
    }
    long double det() const {
        return aa * (bb * cc - bc * bc) - ab * (ab * cc - bc * ac) + ac * (ab * bc - bb * ac);
    }
    // Cosine and sine of the interior angle along a.
    std::pair<long double, long double> along_a() const {
        const long double m_ab = aa * bb - ab * ab, m_ac = aa * cc - ac * ac;
        if (!(m_ab > 0 && m_ac > 0)) throw std::domain_error("dihedrals: degenerate face");
        const long double r = std::sqrt(m_ab * m_ac);
        return {(aa * bc - ab * ac) / r, std::sqrt(aa * std::max(det(), 0.0L)) / r};
    }
    Corner rotated() const { return {bb, cc, aa, bc, ab, ac}; }  // b becomes the leading edge
};

} // namespace detail

// Exterior angles from the edge lengths alone, so every labelling of the same tetrahedron gives the
// same angles to rounding. The angle itself comes from atan2, accurate near 0 and pi.
inline DihedralAngles dihedrals(const Tetrahedron& t) {
    const auto& J = t.J;
    using LD = long double;
    // Vertex P0: edges J1 (to P1), J12 (to P2), J4 (to P3).
    const detail::Corner c0 = detail::Corner::from_lengths(LD(J[E1]), LD(J[E12]), LD(J[E4]), LD(J[E2]), LD(J[E23]),
                                                           LD(J[E3]));
    // Vertex P2: edges J2 (to P1), J3 (to P3), J12 (to P0).
    const detail::Corner c2 = detail::Corner::from_lengths(LD(J[E2]), LD(J[E3]), LD(J[E12]), LD(J[E23]), LD(J[E1]),
                                                           LD(J[E4]));
    // Vertex P1: edges J23 (to P3), J1 (to P0), J2 (to P2).
    const detail::Corner c1 = detail::Corner::from_lengths(LD(J[E23]), LD(J[E1]), LD(J[E2]), LD(J[E4]), LD(J[E3]),
                                                           LD(J[E12]));
    std::array<std::pair<LD, LD>, 6> interior;
    interior[E1] = c0.along_a();
    interior[E12] = c0.rotated().along_a();
    interior[E4] = c0.rotated().rotated().along_a();
    interior[E2] = c2.along_a();
    interior[E3] = c2.rotated().along_a();
    interior[E23] = c1.along_a();

    DihedralAngles d;
    d.forbidden = t.volume_sq < 0;
    for (int i = 0; i < 6; ++i) {
        const auto [c, s] = interior[i];
        d.cos_psi[i] = static_cast<double>(-c);
        if (d.forbidden) {
            d.psi[i] = d.cos_psi[i] < 0 ? std::numbers::pi : 0.0;
            d.psi_bar[i] = continued_angle(d.cos_psi[i]);
        } else {
            d.psi[i] = static_cast<double>(std::atan2(s, -c));
        }
    }
    return d;
}

enum class Region { Allowed, Caustic, ForbiddenA, ForbiddenB, ForbiddenC, ForbiddenD };
enum class TableColumn { None, A1, A2, B1, B2, C, D1, D2 };

inline const char* region_name(Region r) {
    switch (r) {
    case Region::Allowed: return "allowed";
    case Region::Caustic: return "caustic";
    case Region::ForbiddenA: return "A";
    case Region::ForbiddenB: return "B";
    case Region::ForbiddenC: return "C";
    case Region::ForbiddenD: return "D";
    }
    return "?";
}

inline const char* column_name(TableColumn c) {
    constexpr const char* names[] = {"", "A1", "A2", "B1", "B2", "C", "D1", "D2"};
    return names[static_cast<int>(c)];
}

inline bool is_forbidden(Region r) { return r != Region::Allowed && r != Region::Caustic; }

// Dihedral angles on each caustic segment, 1 meaning pi, in edge order 1, 2, 3, 4, 12, 23.
struct Table1Column {
    TableColumn column;
    Region region;
    std::array<int, 6> pi_mask;
};
inline constexpr std::array<Table1Column, 7> kTable1 = {{
    {TableColumn::A1, Region::ForbiddenA, {1, 1, 0, 0, 1, 0}},
    {TableColumn::A2, Region::ForbiddenA, {0, 0, 1, 1, 1, 0}},
    {TableColumn::B1, Region::ForbiddenB, {1, 0, 1, 0, 1, 1}},
    {TableColumn::B2, Region::ForbiddenB, {0, 1, 0, 1, 1, 1}},
    {TableColumn::C, Region::ForbiddenC, {1, 1, 1, 1, 0, 0}},
    {TableColumn::D1, Region::ForbiddenD, {1, 0, 0, 1, 0, 1}},
    {TableColumn::D2, Region::ForbiddenD, {0, 1, 1, 0, 0, 1}},
}};

inline const Table1Column* match_table1(const std::array<double, 6>& cos_psi) {
    std::array<int, 6> mask{};
    for (int i = 0; i < 6; ++i) mask[i] = cos_psi[i] < 0 ? 1 : 0;
    for (const auto& col : kTable1)
        if (col.pi_mask == mask) return &col;
    return nullptr;
}

inline const Table1Column& table1(TableColumn c) {
    for (const auto& col : kTable1)
        if (col.column == c) return col;
    throw std::invalid_argument("table1: no column");
}

struct RegionClass {
    Region kind = Region::Allowed;
    TableColumn column = TableColumn::None;  // forbidden regions; caustic segments when identifiable
};

inline constexpr double kCausticTolerance = 1e-9;

inline RegionClass classify(const Tetrahedron& t) {
    const double nd = normalized_det(t.J, t.gram_matrix);
    RegionClass rc;
    if (nd > kCausticTolerance) return rc;
    const DihedralAngles d = dihedrals(t);
    const Table1Column* col = match_table1(d.cos_psi);
    if (std::abs(nd) <= kCausticTolerance) {
        rc.kind = Region::Caustic;
        if (col) rc.column = col->column;
        return rc;
    }
    if (!col) throw InvariantViolation("classify: cos(psi) sign pattern matches no caustic segment");
    rc.kind = col->region;
    rc.column = col->column;
    return rc;
}

inline RegionClass classify(const Lengths& J) { return classify(construct(J)); }

inline RegionClass classify(const Lengths& J, const Bounds& b) {
    const double slack = 1e-12 * (b.J12_max + b.J23_max);
    if (J[E12] < b.J12_min - slack || J[E12] > b.J12_max + slack || J[E23] < b.J23_min - slack ||
        J[E23] > b.J23_max + slack)
        throw std::out_of_range("classify: J12/J23 outside the classical bounds");
    return classify(J);
}

// J1 . (J2 x J3) / (J12 J23) from the constructed vectors; equals 6V/(J12 J23).
inline double poisson_bracket_check(const Tetrahedron& t) {
    if (t.imaginary()) throw std::domain_error("poisson_bracket_check: forbidden region");
    return triple(t.edges[E1], t.edges[E2], t.edges[E3]) / (t.J[E12] * t.J[E23]);
}

} // namespace sixj
