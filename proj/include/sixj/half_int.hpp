#pragma once

#include <charconv>
#include <compare>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace sixj {

// A quantum number j stored as the integer 2j.
struct HalfInt {
    std::int64_t twice = 0;

    constexpr HalfInt() = default;
    constexpr explicit HalfInt(std::int64_t n) : twice(2 * n) {}

    static constexpr HalfInt from_twice(std::int64_t t) {
        HalfInt h;
        h.twice = t;
        return h;
    }

    constexpr double value() const { return 0.5 * static_cast<double>(twice); }
    constexpr bool is_integer() const { return twice % 2 == 0; }

    // Requires is_integer().
    std::int64_t as_integer() const {
        if (!is_integer()) throw std::domain_error("half-integer where an integer is required: " + str());
        return twice / 2;
    }

    std::string str() const {
        if (is_integer()) return std::to_string(twice / 2);
        return std::to_string(twice) + "/2";
    }

    constexpr HalfInt operator-() const { return from_twice(-twice); }
    constexpr HalfInt& operator+=(HalfInt o) { twice += o.twice; return *this; }
    constexpr HalfInt& operator-=(HalfInt o) { twice -= o.twice; return *this; }
    friend constexpr HalfInt operator+(HalfInt a, HalfInt b) { return from_twice(a.twice + b.twice); }
    friend constexpr HalfInt operator-(HalfInt a, HalfInt b) { return from_twice(a.twice - b.twice); }
    friend constexpr HalfInt operator*(std::int64_t k, HalfInt a) { return from_twice(k * a.twice); }
    friend constexpr auto operator<=>(HalfInt, HalfInt) = default;
    friend constexpr bool operator==(HalfInt, HalfInt) = default;
};

constexpr HalfInt half(std::int64_t twice) { return HalfInt::from_twice(twice); }
constexpr HalfInt abs(HalfInt a) { return a.twice < 0 ? -a : a; }
constexpr HalfInt min(HalfInt a, HalfInt b) { return a < b ? a : b; }
constexpr HalfInt max(HalfInt a, HalfInt b) { return a < b ? b : a; }

// Accepts "23", "39/2", "-3/2".
inline HalfInt parse_half_int(std::string_view s) {
    auto bad = [&] { return std::invalid_argument("not a half-integer: '" + std::string(s) + "'"); };
    auto to_int = [&](std::string_view t) {
        std::int64_t v = 0;
        if (t.empty()) throw bad();
        auto [p, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
        if (ec != std::errc() || p != t.data() + t.size()) throw bad();
        return v;
    };
    auto slash = s.find('/');
    if (slash == std::string_view::npos) return HalfInt(to_int(s));
    std::int64_t num = to_int(s.substr(0, slash));
    std::int64_t den = to_int(s.substr(slash + 1));
    if (den == 1) return HalfInt(num);
    if (den != 2) throw bad();
    return HalfInt::from_twice(num);
}

} // namespace sixj
