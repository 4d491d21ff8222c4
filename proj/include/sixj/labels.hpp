#pragma once

#include "half_int.hpp"

#include <array>
#include <cmath>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>

namespace sixj {

// Thrown when a documented internal identity fails; the CLI maps it to exit code 3.
struct InvariantViolation : std::logic_error {
    using std::logic_error::logic_error;
};

// The symbol {j1 j2 j12; j3 j4 j23}. Columns are (j1,j3), (j2,j4), (j12,j23).
struct SixJLabels {
    HalfInt j1, j2, j12, j3, j4, j23;

    std::array<HalfInt, 6> table_order() const { return {j1, j2, j3, j4, j12, j23}; }
    std::array<HalfInt, 3> upper() const { return {j1, j2, j12}; }
    std::array<HalfInt, 3> lower() const { return {j3, j4, j23}; }

    static SixJLabels from_rows(const std::array<HalfInt, 3>& up, const std::array<HalfInt, 3>& lo) {
        return {up[0], up[1], up[2], lo[0], lo[1], lo[2]};
    }

    std::string str() const {
        return "{" + j1.str() + " " + j2.str() + " " + j12.str() + "; " + j3.str() + " " + j4.str() + " " +
               j23.str() + "}";
    }

    friend bool operator==(const SixJLabels&, const SixJLabels&) = default;
};

inline SixJLabels make_labels(double j1, double j2, double j12, double j3, double j4, double j23) {
    auto h = [](double x) { return HalfInt::from_twice(static_cast<std::int64_t>(std::llround(2.0 * x))); };
    return {h(j1), h(j2), h(j12), h(j3), h(j4), h(j23)};
}

inline bool triangle_ok(HalfInt a, HalfInt b, HalfInt c) {
    if (a.twice < 0 || b.twice < 0 || c.twice < 0) return false;
    if ((a + b + c).twice % 2 != 0) return false;
    return abs(a - b) <= c && c <= a + b;
}

struct ValidationReport {
    bool ok = true;
    std::string message;
    explicit operator bool() const { return ok; }
};

inline ValidationReport validate(const SixJLabels& l) {
    struct Triple { const char* name; HalfInt a, b, c; };
    const Triple triples[4] = {
        {"(j1,j2,j12)", l.j1, l.j2, l.j12},
        {"(j2,j3,j23)", l.j2, l.j3, l.j23},
        {"(j3,j4,j12)", l.j3, l.j4, l.j12},
        {"(j1,j4,j23)", l.j1, l.j4, l.j23},
    };
    for (const auto& t : triples) {
        if (triangle_ok(t.a, t.b, t.c)) continue;
        std::string why;
        if (t.a.twice < 0 || t.b.twice < 0 || t.c.twice < 0) why = "negative quantum number";
        else if ((t.a + t.b + t.c).twice % 2 != 0) why = "non-integer perimeter";
        else why = "triangle inequality violated";
        return {false, std::string(t.name) + " = (" + t.a.str() + "," + t.b.str() + "," + t.c.str() + "): " + why};
    }
    return {};
}

struct InvalidLabels : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

inline void require_valid(const SixJLabels& l) {
    if (auto r = validate(l); !r) throw InvalidLabels(l.str() + ": " + r.message);
}

struct DegenerateRange : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Quantum and classical ranges of j12 and j23 for fixed outer spins.
struct Bounds {
    HalfInt j12_min, j12_max, j23_min, j23_max;
    double J12_min = 0, J12_max = 0, J23_min = 0, J23_max = 0;
    std::int64_t D = 0;
    HalfInt j12_avg, j23_avg;

    double J12_avg() const { return 0.5 * (J12_min + J12_max); }
    double J23_avg() const { return 0.5 * (J23_min + J23_max); }
    bool contains(HalfInt j12, HalfInt j23) const {
        return j12_min <= j12 && j12 <= j12_max && j23_min <= j23 && j23 <= j23_max &&
               (j12 - j12_min).is_integer() && (j23 - j23_min).is_integer();
    }
};

inline Bounds bounds(HalfInt j1, HalfInt j2, HalfInt j3, HalfInt j4) {
    if (j1.twice < 0 || j2.twice < 0 || j3.twice < 0 || j4.twice < 0)
        throw std::invalid_argument("bounds: negative quantum number");
    if (!(j1 + j2 + j3 + j4).is_integer())
        throw DegenerateRange("no valid j12/j23 for (" + j1.str() + "," + j2.str() + "," + j3.str() + "," +
                              j4.str() + "): half-integer total");
    Bounds b;
    b.j12_min = max(abs(j1 - j2), abs(j3 - j4));
    b.j12_max = min(j1 + j2, j3 + j4);
    b.j23_min = max(abs(j2 - j3), abs(j1 - j4));
    b.j23_max = min(j2 + j3, j1 + j4);
    if (b.j12_max < b.j12_min || b.j23_max < b.j23_min || !(b.j12_max - b.j12_min).is_integer() ||
        !(b.j23_max - b.j23_min).is_integer())
        throw DegenerateRange("no valid j12/j23 for (" + j1.str() + "," + j2.str() + "," + j3.str() + "," +
                              j4.str() + ")");
    b.D = (b.j12_max - b.j12_min).as_integer() + 1;
    if ((b.j23_max - b.j23_min).as_integer() + 1 != b.D)
        throw InvariantViolation("bounds: j12 and j23 ranges have different dimension");

    // Classical bound theorems, checked exactly on doubled values.
    const std::int64_t J1 = j1.twice + 1, J2 = j2.twice + 1, J3 = j3.twice + 1, J4 = j4.twice + 1;
    const std::int64_t J12min = b.j12_min.twice, J12max = b.j12_max.twice + 2;
    const std::int64_t J23min = b.j23_min.twice, J23max = b.j23_max.twice + 2;
    const bool first = (J23min == J1 - J4 || J23min == J2 - J3) ? J12max == J3 + J4 : J12max == J1 + J2;
    const bool second = (J12min == J1 - J2 || J12min == J4 - J3) ? J23max == J2 + J3 : J23max == J1 + J4;
    if (!first || !second) throw InvariantViolation("bounds: classical bound theorem failed");

    b.J12_min = b.j12_min.value();
    b.J12_max = b.j12_max.value() + 1.0;
    b.J23_min = b.j23_min.value();
    b.J23_max = b.j23_max.value() + 1.0;
    b.j12_avg = b.j12_min + HalfInt::from_twice(b.D - 1);
    b.j23_avg = b.j23_min + HalfInt::from_twice(b.D - 1);
    return b;
}

inline Bounds bounds(const SixJLabels& l) { return bounds(l.j1, l.j2, l.j3, l.j4); }

} // namespace sixj
