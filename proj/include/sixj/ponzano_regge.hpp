#pragma once

#include "tetrahedron.hpp"

#include <cmath>
#include <cstdint>
#include <numbers>
#include <stdexcept>

namespace sixj {

struct OnCaustic : std::domain_error {
    using std::domain_error::domain_error;
};

// sum_i J_i psi_i; continuous up to the caustic, where psi_i are 0 or pi.
inline double phi_pr(const Lengths& J, const DihedralAngles& d) {
    if (d.forbidden) throw std::domain_error("phi_pr: forbidden region");
    double s = 0;
    for (int i = 0; i < 6; ++i) s += J[i] * d.psi[i];
    return s;
}

// sum_i J_i psi_bar_i.
inline double phi_bar_pr(const Lengths& J, const DihedralAngles& d) {
    if (!d.forbidden) throw std::domain_error("phi_bar_pr: allowed region");
    double s = 0;
    for (int i = 0; i < 6; ++i) s += J[i] * d.psi_bar[i];
    return s;
}

// Sum of j_i over the edges whose flat-limit angle is pi.
inline std::int64_t nu_6j(const RegionClass& rc, const SixJLabels& l) {
    if (rc.column == TableColumn::None) throw std::domain_error("nu_6j: no flat-limit angle pattern");
    const auto j = l.table_order();
    HalfInt s;
    const auto& col = table1(rc.column);
    for (int i = 0; i < 6; ++i)
        if (col.pi_mask[i]) s += j[i];
    if (!s.is_integer()) throw InvariantViolation("nu_6j: half-integer parity sum for " + l.str());
    return s.as_integer();
}

// Geometry and phase at continuous lengths; no quantum parity.
struct PRPhase {
    Tetrahedron tet;
    DihedralAngles angles;
    RegionClass region;
    double phase = 0;       // Phi_PR (allowed, caustic) or Phi_bar_PR (forbidden)
    double abs_volume = 0;  // |V|
};

inline PRPhase pr_phase(const Lengths& J) {
    PRPhase p;
    p.tet = construct(J);
    p.angles = dihedrals(p.tet);
    p.region = classify(p.tet);
    p.abs_volume = std::sqrt(std::abs(p.tet.volume_sq));
    if (is_forbidden(p.region.kind)) p.phase = phi_bar_pr(J, p.angles);
    else {
        DihedralAngles flat = p.angles;
        flat.forbidden = false;
        if (p.angles.forbidden) {
            // Tiny negative det on the caustic: the base values are the limits from inside.
            for (int i = 0; i < 6; ++i) flat.psi[i] = p.angles.cos_psi[i] < 0 ? std::numbers::pi : 0.0;
        }
        p.phase = phi_pr(J, flat);
    }
    return p;
}

struct PRResult {
    double value = 0;
    RegionClass region;
    double phase = 0;
    double amplitude = 0;  // signed; includes the 1/2 and (-1)^nu6j in forbidden regions
    std::int64_t nu6j = 0;
    double abs_volume = 0;
    DihedralAngles angles;
};

inline PRResult pr_value(const SixJLabels& l) {
    require_valid(l);
    const PRPhase p = pr_phase(lengths(l));
    if (p.region.kind == Region::Caustic) throw OnCaustic("pr_value: " + l.str() + " lies on the caustic");
    PRResult r;
    r.region = p.region;
    r.phase = p.phase;
    r.abs_volume = p.abs_volume;
    r.angles = p.angles;
    const double base = 1.0 / std::sqrt(12 * std::numbers::pi * p.abs_volume);
    if (p.region.kind == Region::Allowed) {
        r.amplitude = base;
        r.value = base * std::cos(p.phase + std::numbers::pi / 4);
    } else {
        r.nu6j = nu_6j(p.region, l);
        r.amplitude = (r.nu6j % 2 == 0 ? 0.5 : -0.5) * base;
        r.value = r.amplitude * std::exp(-std::abs(p.phase));
    }
    return r;
}

} // namespace sixj
