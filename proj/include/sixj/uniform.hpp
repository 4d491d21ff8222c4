#pragma once

#include "d_asymptotics.hpp"
#include "labels.hpp"
#include "ponzano_regge.hpp"
#include "tetrahedron.hpp"
#include "wigner_d.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>
#include <utility>

namespace sixj {

// 6j quantum numbers mapped onto a d-matrix d^j_{m m'}.
struct QuantumMap {
    HalfInt j, m, mp;
    std::int64_t nu_ex = 0;
    double Phi0 = 0;
};

inline QuantumMap map_quantum(const SixJLabels& l, const Bounds& b) {
    QuantumMap q;
    q.j = HalfInt::from_twice(b.D - 1);
    q.m = l.j12 - b.j12_avg;
    q.mp = b.j23_avg - l.j23;
    const HalfInt nu = l.j1 + l.j2 + l.j3 + l.j4 + l.j12 - b.j12_max;
    if (!nu.is_integer()) throw InvariantViolation("map_quantum: nu_ex is not an integer for " + l.str());
    q.nu_ex = nu.as_integer();
    q.Phi0 = (static_cast<double>(q.nu_ex) + 1.5) * std::numbers::pi;
    if (abs(q.m) > q.j || abs(q.mp) > q.j || !(q.j - q.m).is_integer() || !(q.j - q.mp).is_integer())
        throw InvariantViolation("map_quantum: (j, m, m') out of range for " + l.str());
    return q;
}

// The same map at continuous (J12, J23); reduces to map_quantum at J = j + 1/2.
struct ContinuousMap {
    double J = 0, Jz = 0, Jn = 0, Phi0 = 0;
};

inline ContinuousMap continuous_map(const Bounds& b, HalfInt outer_sum, double J12, double J23) {
    ContinuousMap c;
    c.J = 0.5 * static_cast<double>(b.D);
    c.Jz = J12 - b.J12_avg();
    c.Jn = b.J23_avg() - J23;
    c.Phi0 = (outer_sum.value() + J12 - b.J12_max + 2.0) * std::numbers::pi;
    return c;
}

struct NoConvergence : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct SolverReport {
    int iterations = 0;
    double residual = 0;
    double lo = 0, hi = 0;
    bool bisection_used = false;
    bool at_turning_point = false;
};

struct BetaSolution {
    double beta = 0;
    SolverReport report;
};

namespace detail {

inline constexpr double kBetaFloor = 1e-200;

// Root of f on [lo, hi] with f(lo) >= 0 >= f(hi), Newton steps from seed, bisection when a step
// leaves the bracket. f returns (value, derivative).
template <class F>
BetaSolution bracketed_newton(F&& f, double lo, double hi, double seed, double scale) {
    BetaSolution s;
    s.report.lo = lo;
    s.report.hi = hi;
    const double tol = 1e-13 * std::max(1.0, scale);
    double x = std::clamp(seed, lo, hi);
    if (!(x > lo && x < hi)) x = 0.5 * (lo + hi);
    bool reset = false;
    for (int it = 1; it <= 200; ++it) {
        const auto [fx, dfx] = f(x);
        s.report.iterations = it;
        s.beta = x;
        s.report.residual = fx;
        if (std::abs(fx) <= tol) return s;
        if (fx > 0) lo = x;
        else hi = x;
        if (hi - lo <= 4 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::abs(x))) break;
        double next = dfx != 0 ? x - fx / dfx : std::numeric_limits<double>::quiet_NaN();
        if (!(next > lo && next < hi)) {
            // Outside the bracket: reset once to the midpoint, bisect thereafter.
            next = 0.5 * (lo + hi);
            if (reset) s.report.bisection_used = true;
            reset = true;
        }
        x = next;
    }
    if (std::abs(s.report.residual) > 1e-10 * std::max(1.0, scale))
        throw NoConvergence("beta solver: residual " + std::to_string(s.report.residual) + " on [" +
                            std::to_string(lo) + ", " + std::to_string(hi) + "]");
    return s;
}

} // namespace detail

// Solves Phi_d(beta) = target on [beta1, beta2].
inline BetaSolution solve_beta_allowed(double J, double Jz, double Jn, double target) {
    auto [b1, b2] = turning_points(J, Jz, Jn);
    const double A1 = (J - std::max(Jz, Jn)) * std::numbers::pi;
    const double A2 = std::max(0.0, -Jz - Jn) * std::numbers::pi;
    const double lo = std::max(b1, 1e-12), hi = std::min(b2, std::numbers::pi - 1e-12);
    BetaSolution s;
    s.report.lo = b1;
    s.report.hi = b2;
    if (target >= A1 || target <= A2) {
        s.beta = target >= A1 ? lo : hi;
        s.report.at_turning_point = true;
        s.report.residual = phi_d_clamped(J, Jz, Jn, s.beta) - target;
        return s;
    }
    const double seed = b1 + (A1 - target) / (A1 - A2) * (b2 - b1);
    auto f = [&](double beta) {
        const DGeometry g = d_geometry(J, Jz, Jn, beta);
        double v = 0;
        const double k[3] = {J, -Jz, -Jn};
        for (int i = 0; i < 3; ++i) v += k[i] * std::acos(std::clamp(g.cos_angle[i], -1.0, 1.0));
        return std::pair<double, double>{v - target, dphi_d_dbeta(g)};
    };
    return detail::bracketed_newton(f, lo, hi, seed, std::abs(target));
}

// Solves |Phi_bar_d(beta)| = |target| in (0, beta1) for regions B, C or (beta2, pi) for A, D.
inline BetaSolution solve_beta_forbidden(double J, double Jz, double Jn, Region region, double target) {
    auto [b1, b2] = turning_points(J, Jz, Jn);
    const double t = std::abs(target);
    const bool lower = region == Region::ForbiddenB || region == Region::ForbiddenC;
    if (!lower && region != Region::ForbiddenA && region != Region::ForbiddenD)
        throw std::invalid_argument("solve_beta_forbidden: not a forbidden region");
    const double edge = lower ? detail::kBetaFloor : std::nextafter(std::numbers::pi, 0.0);
    const double tp = lower ? b1 : b2;
    if (lower ? !(b1 > 0) : !(b2 < std::numbers::pi))
        throw InvariantViolation("solve_beta_forbidden: empty forbidden interval for region " +
                                 std::string(region_name(region)));
    // g(beta) = |Phi_bar_d| - t, oriented so that g >= 0 at the left end of the bracket.
    auto g = [&](double beta) {
        const DGeometry geo = d_geometry(J, Jz, Jn, beta);
        const double k[3] = {J, -Jz, -Jn};
        double v = 0;
        for (int i = 0; i < 3; ++i) v += k[i] * continued_angle(geo.cos_angle[i]);
        const double dv = dphi_d_dbeta(geo);
        const double val = std::abs(v) - t, der = (v < 0 ? -dv : dv);
        return lower ? std::pair<double, double>{val, der} : std::pair<double, double>{-val, -der};
    };
    const double seed = lower ? 0.5 * b1 : 0.5 * (b2 + std::numbers::pi);
    const double lo = lower ? edge : tp, hi = lower ? tp : edge;
    BetaSolution s;
    if (t == 0) {
        s.beta = tp;
        s.report.at_turning_point = true;
        return s;
    }
    if ((lower && g(edge).first < 0) || (!lower && g(edge).first > 0)) {
        // Deeper than double precision can place beta; the d value underflows anyway.
        s.beta = edge;
        s.report.lo = lo;
        s.report.hi = hi;
        s.report.residual = g(edge).first;
        return s;
    }
    return detail::bracketed_newton(g, lo, hi, seed, t);
}

// Beta for a point of the (J12, J23) plane, region taken from the tetrahedron there.
struct BetaAtPoint {
    double beta = 0;
    RegionClass region;
    ContinuousMap map;
    PRPhase pr;
    SolverReport report;
};

inline BetaAtPoint solve_beta_at(const SixJLabels& outer, const Bounds& b, double J12, double J23) {
    Lengths L{outer.j1.value() + 0.5, outer.j2.value() + 0.5, outer.j3.value() + 0.5,
              outer.j4.value() + 0.5, J12, J23};
    BetaAtPoint r;
    r.map = continuous_map(b, outer.j1 + outer.j2 + outer.j3 + outer.j4, J12, J23);
    r.pr = pr_phase(L);
    r.region = r.pr.region;
    const auto& m = r.map;
    BetaSolution s;
    switch (r.region.kind) {
    case Region::Allowed:
        s = solve_beta_allowed(m.J, m.Jz, m.Jn, r.pr.phase - m.Phi0);
        break;
    case Region::Caustic: {
        const auto [b1, b2] = turning_points(m.J, m.Jz, m.Jn);
        if (r.region.column != TableColumn::None) {
            const Region letter = table1(r.region.column).region;
            const bool lower = letter == Region::ForbiddenB || letter == Region::ForbiddenC;
            s.beta = lower ? std::max(b1, 1e-12) : std::min(b2, std::numbers::pi - 1e-12);
            s.report.at_turning_point = true;
        } else {
            s = solve_beta_allowed(m.J, m.Jz, m.Jn, r.pr.phase - m.Phi0);
        }
        break;
    }
    default:
        s = solve_beta_forbidden(m.J, m.Jz, m.Jn, r.region.kind, r.pr.phase);
        break;
    }
    r.beta = s.beta;
    r.report = s.report;
    return r;
}

struct UniformMap {
    HalfInt j, m, mp;
    std::int64_t nu_ex = 0;
    double Phi0 = 0;
    double beta = 0;
    SolverReport solver;
    Region d_region = Region::Allowed;
};

struct UniformResult {
    double value = 0;
    UniformMap map;
    RegionClass region;
    double pr_phase = 0;   // Phi_PR or Phi_bar_PR
    double pr_amp = 0;     // 1/sqrt(12 pi |V|), times 1/2 in forbidden regions
    double d_amp = 0;      // 1/sqrt((pi/2) J |V_d|), times 1/2 in forbidden regions
    double amp_ratio = 0;  // sqrt(J |V_d| / (24 |V|)) = A_PR / A_d
    double d_value = 0;    // exact d^j_{m m'}(beta)
    bool near_caustic = false;
    bool degenerate = false;  // D = 1
};

inline constexpr double kNearCausticVolume = 1e-6;
inline constexpr double kCausticStep = 1e-4;

// |V_d|/|V| near a caustic from centred differences of V_d^2 and V^2, both linear through it.
inline double caustic_volume_ratio(const SixJLabels& outer, const Bounds& b, double J12, double J23) {
    const double h = kCausticStep;
    const bool along_j12 = J12 - h > b.J12_min && J12 + h < b.J12_max;
    auto sample = [&](double s) {
        const double x12 = along_j12 ? s : J12, x23 = along_j12 ? J23 : s;
        const BetaAtPoint p = solve_beta_at(outer, b, x12, x23);
        return std::pair<double, double>{vd_sq(p.map.J, p.map.Jz, p.map.Jn, p.beta), p.pr.tet.volume_sq};
    };
    const double s0 = along_j12 ? J12 : J23;
    const auto [vd_p, v_p] = sample(s0 + h);
    const auto [vd_m, v_m] = sample(s0 - h);
    const double dv = v_p - v_m, dvd = vd_p - vd_m;
    if (dv == 0) return std::numeric_limits<double>::quiet_NaN();
    return std::sqrt(std::abs(dvd / dv));
}

inline UniformResult uniform_6j(const SixJLabels& l) {
    require_valid(l);
    const Bounds b = bounds(l);
    const QuantumMap q = map_quantum(l, b);
    UniformResult r;
    r.degenerate = b.D == 1;
    r.map.j = q.j;
    r.map.m = q.m;
    r.map.mp = q.mp;
    r.map.nu_ex = q.nu_ex;
    r.map.Phi0 = q.Phi0;

    const BetaAtPoint at = solve_beta_at(l, b, l.j12.value() + 0.5, l.j23.value() + 0.5);
    r.region = at.region;
    r.pr_phase = at.pr.phase;
    r.map.beta = at.beta;
    r.map.solver = at.report;
    const double J = at.map.J;
    const DGeometry g = d_geometry(J, q.m.value(), q.mp.value(), at.beta);
    r.map.d_region = g.region;

    const double abs_v = at.pr.abs_volume;
    const double abs_vd = std::sqrt(std::abs(g.Vd_sq));
    const Lengths& L = at.pr.tet.J;
    const double v_scaled = 6 * abs_v / (L[E1] * L[E12] * L[E4]);
    double vd_over_v = abs_vd / abs_v;
    if (v_scaled < kNearCausticVolume || !std::isfinite(vd_over_v)) {
        const double lim = caustic_volume_ratio(l, b, L[E12], L[E23]);
        if (std::isfinite(lim)) {
            r.near_caustic = true;
            vd_over_v = lim;
        }
    }
    r.amp_ratio = std::sqrt(J * vd_over_v / 24.0);
    const double half = is_forbidden(r.region.kind) ? 0.5 : 1.0;
    r.pr_amp = half / std::sqrt(12 * std::numbers::pi * abs_v);
    r.d_amp = half / std::sqrt(0.5 * std::numbers::pi * J * abs_vd);
    r.d_value = exact_wigner_d(q.j, q.m, q.mp, at.beta);
    const std::int64_t parity = q.nu_ex + (q.j - q.mp).as_integer();
    r.value = (parity % 2 == 0 ? 1.0 : -1.0) * r.amp_ratio * r.d_value;
    return r;
}

// Column permutation that puts the column with the largest minimum entry third; stable otherwise.
struct Permuted {
    SixJLabels labels;
    std::array<int, 3> perm{0, 1, 2};  // new column k is old column perm[k]
};

inline Permuted permute_columns_for_accuracy(const SixJLabels& l) {
    const auto up = l.upper(), lo = l.lower();
    int best = 2;
    for (int c = 0; c < 3; ++c)
        if (min(up[c], lo[c]) > min(up[best], lo[best])) best = c;
    Permuted p;
    int k = 0;
    for (int c = 0; c < 3; ++c)
        if (c != best) p.perm[k++] = c;
    p.perm[2] = best;
    std::array<HalfInt, 3> nu, nl;
    for (int c = 0; c < 3; ++c) {
        nu[c] = up[p.perm[c]];
        nl[c] = lo[p.perm[c]];
    }
    p.labels = SixJLabels::from_rows(nu, nl);
    return p;
}

} // namespace sixj
