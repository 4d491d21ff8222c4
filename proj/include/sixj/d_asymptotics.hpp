#pragma once

#include "half_int.hpp"
#include "ponzano_regge.hpp"
#include "tetrahedron.hpp"
#include "vec3.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <stdexcept>
#include <utility>
#include <vector>

namespace sixj {

// Angle order in every (kappa, phi, eta) array.
enum DAngle : int { Kappa = 0, Phi = 1, Eta = 2 };

struct DGeometry {
    double J = 0, Jz = 0, Jn = 0, beta = 0;
    double theta = 0, theta_p = 0;
    std::array<double, 3> cos_angle{};  // cos kappa, cos phi, cos eta
    std::array<double, 3> angle{};      // principal values, or the caustic base 0 / pi when forbidden
    std::array<double, 3> angle_bar{};  // sign(cos) acosh|cos| when forbidden
    double Vd_sq = 0;
    Region region = Region::Allowed;
};

inline constexpr double kDCausticTolerance = 1e-10;

// Which of (kappa, phi, eta) equal pi on each caustic type.
struct Table2Column {
    Region region;
    std::array<int, 3> pi_mask;
};
inline constexpr std::array<Table2Column, 4> kTable2 = {{
    {Region::ForbiddenA, {0, 0, 0}},
    {Region::ForbiddenB, {1, 0, 1}},
    {Region::ForbiddenC, {1, 1, 0}},
    {Region::ForbiddenD, {0, 1, 1}},
}};

inline const Table2Column& table2(Region r) {
    for (const auto& c : kTable2)
        if (c.region == r) return c;
    throw std::invalid_argument("table2: not a forbidden region");
}

// Spherical-triangle cosines on the d-sphere; cos theta = Jz/J, cos theta' = Jn/J.
inline DGeometry d_geometry(double J, double Jz, double Jn, double beta) {
    if (!(std::abs(Jz) < J && std::abs(Jn) < J)) throw std::domain_error("d_geometry: orbit at a pole");
    if (!(beta > 0 && beta < std::numbers::pi)) throw std::domain_error("d_geometry: beta outside (0, pi)");
    DGeometry g;
    g.J = J;
    g.Jz = Jz;
    g.Jn = Jn;
    g.beta = beta;
    const double ct = Jz / J, ctp = Jn / J;
    const double st = std::sqrt(1 - ct * ct), stp = std::sqrt(1 - ctp * ctp);
    const double cb = std::cos(beta), sb = std::sin(beta);
    g.theta = std::acos(ct);
    g.theta_p = std::acos(ctp);
    g.cos_angle[Kappa] = -(cb - ct * ctp) / (st * stp);
    g.cos_angle[Phi] = (ctp - cb * ct) / (sb * st);
    g.cos_angle[Eta] = (ct - cb * ctp) / (sb * stp);
    g.Vd_sq = 1 + 2 * cb * ct * ctp - cb * cb - ct * ct - ctp * ctp;

    if (g.Vd_sq >= -kDCausticTolerance) {
        g.region = g.Vd_sq > kDCausticTolerance ? Region::Allowed : Region::Caustic;
        for (int i = 0; i < 3; ++i) g.angle[i] = std::acos(std::clamp(g.cos_angle[i], -1.0, 1.0));
        return g;
    }
    std::array<int, 3> mask{};
    for (int i = 0; i < 3; ++i) {
        mask[i] = g.cos_angle[i] < 0 ? 1 : 0;
        g.angle[i] = mask[i] ? std::numbers::pi : 0.0;
        g.angle_bar[i] = continued_angle(g.cos_angle[i]);
    }
    for (const auto& c : kTable2)
        if (c.pi_mask == mask) g.region = c.region;
    if (g.region == Region::Allowed) throw InvariantViolation("d_geometry: cosine pattern matches no caustic type");
    return g;
}

inline DGeometry d_geometry(HalfInt j, HalfInt m, HalfInt mp, double beta) {
    if (abs(m) > j || abs(mp) > j || !(j - m).is_integer() || !(j - mp).is_integer())
        throw std::domain_error("d_geometry: inconsistent (j, m, m')");
    return d_geometry(j.value() + 0.5, m.value(), mp.value(), beta);
}

// J kappa - Jz phi - Jn eta, half the lune area.
inline double phi_d(const DGeometry& g) {
    if (is_forbidden(g.region)) throw std::domain_error("phi_d: forbidden region");
    return g.J * g.angle[Kappa] - g.Jz * g.angle[Phi] - g.Jn * g.angle[Eta];
}

inline double phi_bar_d(const DGeometry& g) {
    if (!is_forbidden(g.region)) throw std::domain_error("phi_bar_d: allowed region");
    return g.J * g.angle_bar[Kappa] - g.Jz * g.angle_bar[Phi] - g.Jn * g.angle_bar[Eta];
}

// Region-free evaluations for root finding: clamped principal angles, and the continuation with
// acosh(max(1, |cos|)), both continuous through the caustic.
inline double phi_d_clamped(double J, double Jz, double Jn, double beta) {
    const DGeometry g = d_geometry(J, Jz, Jn, beta);
    double s = 0;
    const double k[3] = {J, -Jz, -Jn};
    for (int i = 0; i < 3; ++i) s += k[i] * std::acos(std::clamp(g.cos_angle[i], -1.0, 1.0));
    return s;
}

inline double phi_bar_d_continued(double J, double Jz, double Jn, double beta) {
    const DGeometry g = d_geometry(J, Jz, Jn, beta);
    const double k[3] = {J, -Jz, -Jn};
    double s = 0;
    for (int i = 0; i < 3; ++i) s += k[i] * continued_angle(g.cos_angle[i]);
    return s;
}

inline double vd_sq(double J, double Jz, double Jn, double beta) {
    const double ct = Jz / J, ctp = Jn / J, cb = std::cos(beta);
    return 1 + 2 * cb * ct * ctp - cb * cb - ct * ct - ctp * ctp;
}

// -J |V_d| / sin(beta), for Phi_d in the allowed region and Phi_bar_d in the forbidden ones.
inline double dphi_d_dbeta(const DGeometry& g) {
    return -g.J * std::sqrt(std::abs(g.Vd_sq)) / std::sin(g.beta);
}

// beta1 = |theta - theta'|, beta2 = min(theta + theta', 2 pi - theta - theta').
inline std::pair<double, double> turning_points(double J, double Jz, double Jn) {
    const double t = std::acos(Jz / J), tp = std::acos(Jn / J);
    return {std::abs(t - tp), std::min(t + tp, 2 * std::numbers::pi - t - tp)};
}

inline std::pair<double, double> turning_points(HalfInt j, HalfInt m, HalfInt mp) {
    return turning_points(j.value() + 0.5, m.value(), mp.value());
}

// Caustic parity: sum of k_i = (j, -m, -m') over the angles equal to pi.
inline std::int64_t nu_d(Region r, HalfInt j, HalfInt m, HalfInt mp) {
    const auto& col = table2(r);
    const HalfInt k[3] = {j, -m, -mp};
    HalfInt s;
    for (int i = 0; i < 3; ++i)
        if (col.pi_mask[i]) s += k[i];
    if (!s.is_integer()) throw InvariantViolation("nu_d: half-integer parity sum");
    return s.as_integer();
}

struct DAsymResult {
    double value = 0;
    double phase = 0;      // Phi_d or Phi_bar_d
    double amplitude = 0;  // signed; includes (-1)^(j-m'), and the 1/2 and (-1)^nu_d when forbidden
    std::int64_t nu_d = 0;
    Region region = Region::Allowed;
    DGeometry geometry;
};

inline DAsymResult d_asym(HalfInt j, HalfInt m, HalfInt mp, double beta) {
    DAsymResult r;
    r.geometry = d_geometry(j, m, mp, beta);
    const DGeometry& g = r.geometry;
    r.region = g.region;
    if (g.region == Region::Caustic) throw OnCaustic("d_asym: beta on a turning point");
    const double base = 1.0 / std::sqrt(0.5 * std::numbers::pi * g.J * std::sqrt(std::abs(g.Vd_sq)));
    const std::int64_t jmp = (j - mp).as_integer();
    if (g.region == Region::Allowed) {
        r.phase = phi_d(g);
        r.amplitude = (jmp % 2 == 0 ? 1.0 : -1.0) * base;
        r.value = r.amplitude * std::cos(r.phase - std::numbers::pi / 4);
    } else {
        r.phase = phi_bar_d(g);
        r.nu_d = nu_d(g.region, j, m, mp);
        r.amplitude = ((jmp + r.nu_d) % 2 == 0 ? 0.5 : -0.5) * base;
        r.value = r.amplitude * std::exp(-std::abs(r.phase));
    }
    return r;
}

struct OpenPolygon : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Area of a spherical polygon bounded by small-circle arcs: the arc from vertices[i] to
// vertices[i+1] turns about unit axes[i] by arc_angles[i] (right-hand rule).
// Omega = 2 pi - sum[(pi - kappa_i) + (v_i . n_i) phi_i].
inline double solid_angle_polygon(const std::vector<Vec3>& vertices, const std::vector<Vec3>& axes,
                                  const std::vector<double>& arc_angles) {
    const std::size_t n = vertices.size();
    if (n == 0 || axes.size() != n || arc_angles.size() != n)
        throw std::invalid_argument("solid_angle_polygon: size mismatch");
    for (std::size_t i = 0; i < n; ++i) {
        const Vec3 end = rotate(vertices[i], axes[i], arc_angles[i]);
        if (norm(end - vertices[(i + 1) % n]) > 1e-9) throw OpenPolygon("solid_angle_polygon: arcs do not close");
    }
    double total = 2 * std::numbers::pi;
    for (std::size_t i = 0; i < n; ++i) {
        const Vec3& v = vertices[i];
        const std::size_t prev = (i + n - 1) % n;
        const Vec3 t_in = std::copysign(1.0, arc_angles[prev]) * cross(axes[prev], v);
        const Vec3 t_out = std::copysign(1.0, arc_angles[i]) * cross(axes[i], v);
        // Turning angle pi - kappa_i between the incoming and outgoing tangents.
        const double turn = signed_angle(t_in, t_out, v);
        total -= turn + dot(v, axes[i]) * arc_angles[i];
    }
    return total;
}

} // namespace sixj
