#pragma once

#include "exact_sixj.hpp"
#include "ponzano_regge.hpp"
#include "uniform.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <optional>

namespace sixj {

// Zones of the relative-error definition: forbidden values are compared with |exact|, allowed ones
// with the PR amplitude, and points in the first lobe next to a caustic with the PR amplitude at
// the nearest other allowed grid point.
enum class ErrorZone { Forbidden, Lobe, Allowed };

inline const char* zone_name(ErrorZone z) {
    switch (z) {
    case ErrorZone::Forbidden: return "forbidden";
    case ErrorZone::Lobe: return "lobe";
    case ErrorZone::Allowed: return "allowed";
    }
    return "?";
}

// Lune phase within this distance of a turning-point value counts as the lobe.
inline constexpr double kLobePhase = 0.75 * std::numbers::pi;

struct Comparison {
    SixJLabels labels;
    double exact = 0;
    UniformResult uniform;
    std::optional<PRResult> pr;  // empty on the caustic
};

inline Comparison compare(const SixJLabels& l) {
    Comparison c;
    c.labels = l;
    c.exact = exact_sixj(l).to_double();
    c.uniform = uniform_6j(l);
    try {
        c.pr = pr_value(l);
    } catch (const OnCaustic&) {
    }
    return c;
}

// Distance in phase from T = Phi_PR - Phi0 to the nearer turning-point area.
inline double caustic_phase_distance(const UniformResult& u) {
    const double J = u.map.j.value() + 0.5, Jz = u.map.m.value(), Jn = u.map.mp.value();
    const double A1 = (J - std::max(Jz, Jn)) * std::numbers::pi, A2 = std::max(0.0, -Jz - Jn) * std::numbers::pi;
    const double T = u.pr_phase - u.map.Phi0;
    return std::min(std::abs(A1 - T), std::abs(T - A2));
}

inline ErrorZone error_zone(const UniformResult& u) {
    if (is_forbidden(u.region.kind)) return ErrorZone::Forbidden;
    if (u.region.kind == Region::Caustic || caustic_phase_distance(u) < kLobePhase) return ErrorZone::Lobe;
    return ErrorZone::Allowed;
}

// PR amplitude at the nearest other allowed (j12, j23) point; ties take the largest amplitude.
// Falls back to the point's own PR amplitude when the square has no such point.
inline double lobe_reference(const SixJLabels& l) {
    const Bounds b = bounds(l);
    const std::int64_t i0 = (l.j12 - b.j12_min).as_integer(), k0 = (l.j23 - b.j23_min).as_integer();
    for (std::int64_t r = 1; r < b.D; ++r) {
        double best = 0;
        std::int64_t best_d2 = -1;
        for (std::int64_t i = std::max<std::int64_t>(0, i0 - r); i <= std::min(b.D - 1, i0 + r); ++i)
            for (std::int64_t k = std::max<std::int64_t>(0, k0 - r); k <= std::min(b.D - 1, k0 + r); ++k) {
                const std::int64_t d2 = (i - i0) * (i - i0) + (k - k0) * (k - k0);
                if (d2 > r * r || (best_d2 >= 0 && d2 > best_d2)) continue;
                const SixJLabels p{l.j1, l.j2, b.j12_min + half(2 * i), l.j3, l.j4, b.j23_min + half(2 * k)};
                if (!validate(p).ok) continue;
                if (d2 == 0 || classify(lengths(p)).kind != Region::Allowed) continue;
                const double a = pr_value(p).amplitude;
                if (best_d2 < 0 || d2 < best_d2) best = a;
                else best = std::max(best, a);
                best_d2 = d2;
            }
        if (best_d2 >= 0) return best;
    }
    return std::abs(pr_value(l).amplitude);
}

struct RelativeError {
    ErrorZone zone = ErrorZone::Allowed;
    double reference = 0;
    double uniform = 0;
    double pr = 0;  // NaN on the caustic
};

inline RelativeError relative_error(const Comparison& c) {
    RelativeError e;
    e.zone = error_zone(c.uniform);
    switch (e.zone) {
    case ErrorZone::Forbidden: e.reference = std::abs(c.exact); break;
    case ErrorZone::Lobe: e.reference = lobe_reference(c.labels); break;
    case ErrorZone::Allowed: e.reference = std::abs(c.pr->amplitude); break;
    }
    e.uniform = std::abs(c.uniform.value - c.exact) / e.reference;
    e.pr = c.pr ? std::abs(c.pr->value - c.exact) / e.reference : std::numeric_limits<double>::quiet_NaN();
    return e;
}

// |approx - exact| over the PR amplitude at the same symbol.
struct AmplitudeError {
    double amplitude = 0;
    double uniform = 0;
    double pr = 0;
};

inline AmplitudeError amplitude_error(const Comparison& c) {
    AmplitudeError e;
    if (!c.pr) {
        e.amplitude = e.pr = std::numeric_limits<double>::quiet_NaN();
        e.uniform = std::numeric_limits<double>::quiet_NaN();
        return e;
    }
    e.amplitude = std::abs(c.pr->amplitude);
    e.uniform = std::abs(c.uniform.value - c.exact) / e.amplitude;
    e.pr = std::abs(c.pr->value - c.exact) / e.amplitude;
    return e;
}

// Oscillation envelope of the amplitude-normalized errors: the maximum over j12 +- halfwidth along
// the same row, over points that are valid, allowed and off the caustic.
inline AmplitudeError amplitude_error_envelope(const SixJLabels& l, int halfwidth = 2) {
    const Bounds b = bounds(l);
    AmplitudeError env;
    env.amplitude = env.uniform = env.pr = 0;
    for (int k = -halfwidth; k <= halfwidth; ++k) {
        const SixJLabels p{l.j1, l.j2, l.j12 + half(2 * k), l.j3, l.j4, l.j23};
        if (p.j12 < b.j12_min || p.j12 > b.j12_max || !validate(p).ok) continue;
        if (classify(lengths(p)).kind != Region::Allowed) continue;
        const AmplitudeError e = amplitude_error(compare(p));
        env.amplitude = std::max(env.amplitude, e.amplitude);
        env.uniform = std::max(env.uniform, e.uniform);
        env.pr = std::max(env.pr, e.pr);
    }
    return env;
}

} // namespace sixj
