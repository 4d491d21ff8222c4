#pragma once

#include "half_int.hpp"

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

namespace sixj {

// Which arithmetic produced a d-matrix value and how much cancellation it saw.
struct WignerDReport {
    int digits = 16;          // 16 means double
    double cancellation = 1;  // sum|t| / |sum t|
};

namespace detail {

struct WignerSumShape {
    std::int64_t j_plus_m, j_minus_m, j_plus_mp, j_minus_mp, m_minus_mp;
    std::int64_t s_min, s_max;
};

inline WignerSumShape wigner_shape(HalfInt j, HalfInt m, HalfInt mp) {
    if (j.twice < 0 || abs(m) > j || abs(mp) > j || !(j - m).is_integer() || !(j - mp).is_integer())
        throw std::domain_error("wigner d: inconsistent (j, m, m')");
    WignerSumShape s{(j + m).as_integer(), (j - m).as_integer(), (j + mp).as_integer(), (j - mp).as_integer(),
                     (m - mp).as_integer(), 0, 0};
    // Each factorial argument (j+m'-s), s, (m-m'+s), (j-m-s) must be >= 0.
    s.s_min = std::max<std::int64_t>(0, -s.m_minus_mp);
    s.s_max = std::min(s.j_plus_mp, s.j_minus_m);
    return s;
}

// t_s = (-1)^(m-m'+s) sqrt((j+m)!(j-m)!(j+m')!(j-m')!) / ((j+m'-s)! s! (m-m'+s)! (j-m-s)!)
//       * cos(b/2)^(2j+m'-m-2s) * sin(b/2)^(m-m'+2s)
// Magnitudes from log-gamma locate the largest term; the others follow from exact term ratios so that
// relative errors stay near machine precision and only a common factor carries the log-gamma error.
inline double wigner_d_double(const WignerSumShape& w, double beta, double& abs_sum) {
    const double c = std::cos(0.5 * beta), s = std::sin(0.5 * beta);
    const std::int64_t twoj = w.j_plus_m + w.j_minus_m;
    abs_sum = 0;
    auto pc = [&](std::int64_t k) { return twoj - w.m_minus_mp - 2 * k; };
    auto ps = [&](std::int64_t k) { return w.m_minus_mp + 2 * k; };
    auto sign = [&](std::int64_t k) { return (w.m_minus_mp + k) % 2 == 0 ? 1.0 : -1.0; };

    if (c == 0 || s == 0) {
        // One surviving power: the term whose cos (or sin) exponent vanishes.
        for (std::int64_t k = w.s_min; k <= w.s_max; ++k) {
            if ((c == 0 && pc(k) != 0) || (s == 0 && ps(k) != 0)) continue;
            const double lt = 0.5 * (std::lgamma(w.j_plus_m + 1.0) + std::lgamma(w.j_minus_m + 1.0) +
                                     std::lgamma(w.j_plus_mp + 1.0) + std::lgamma(w.j_minus_mp + 1.0)) -
                              std::lgamma(w.j_plus_mp - k + 1.0) - std::lgamma(k + 1.0) -
                              std::lgamma(w.m_minus_mp + k + 1.0) - std::lgamma(w.j_minus_m - k + 1.0);
            const double t = sign(k) * std::exp(lt);
            abs_sum = std::abs(t);
            return t;
        }
        return 0;
    }

    const double lc = std::log(c), ls = std::log(s);
    const double pre = 0.5 * (std::lgamma(w.j_plus_m + 1.0) + std::lgamma(w.j_minus_m + 1.0) +
                              std::lgamma(w.j_plus_mp + 1.0) + std::lgamma(w.j_minus_mp + 1.0));
    auto log_mag = [&](std::int64_t k) {
        return pre - std::lgamma(w.j_plus_mp - k + 1.0) - std::lgamma(k + 1.0) -
               std::lgamma(w.m_minus_mp + k + 1.0) - std::lgamma(w.j_minus_m - k + 1.0) +
               static_cast<double>(pc(k)) * lc + static_cast<double>(ps(k)) * ls;
    };
    std::int64_t kmax = w.s_min;
    double lmax = log_mag(kmax);
    for (std::int64_t k = w.s_min + 1; k <= w.s_max; ++k) {
        const double l = log_mag(k);
        if (l > lmax) { lmax = l; kmax = k; }
    }
    const double tan2 = (s / c) * (s / c);
    // |t_{k+1} / t_k|
    auto ratio = [&](std::int64_t k) {
        return static_cast<double>(w.j_plus_mp - k) * static_cast<double>(w.j_minus_m - k) /
               (static_cast<double>(k + 1) * static_cast<double>(w.m_minus_mp + k + 1)) * tan2;
    };
    const std::size_t n = static_cast<std::size_t>(w.s_max - w.s_min + 1);
    std::vector<double> rel(n, 0.0);
    rel[kmax - w.s_min] = 1.0;
    for (std::int64_t k = kmax; k < w.s_max; ++k) rel[k + 1 - w.s_min] = rel[k - w.s_min] * ratio(k);
    for (std::int64_t k = kmax; k > w.s_min; --k) rel[k - 1 - w.s_min] = rel[k - w.s_min] / ratio(k - 1);

    double sum = 0, comp = 0, mag = 0;
    for (std::int64_t k = w.s_min; k <= w.s_max; ++k) {
        const double t = sign(k) * rel[k - w.s_min];
        mag += rel[k - w.s_min];
        // Kahan summation.
        const double y = t - comp;
        const double u = sum + y;
        comp = (u - sum) - y;
        sum = u;
    }
    const double scale = std::exp(lmax);
    abs_sum = mag * scale;
    return sum * scale;
}

template <class Real>
Real wigner_d_multi(const WignerSumShape& w, const Real& beta, Real& abs_sum) {
    namespace mp = boost::multiprecision;
    using mp::cpp_int;
    auto fact = [](std::int64_t n) {
        cpp_int f = 1;
        for (std::int64_t i = 2; i <= n; ++i) f *= i;
        return f;
    };
    const Real c = cos(beta / 2), s = sin(beta / 2);
    const std::int64_t twoj = w.j_plus_m + w.j_minus_m;
    const std::int64_t k0 = w.s_min;
    Real coef = sqrt(Real(fact(w.j_plus_m) * fact(w.j_minus_m) * fact(w.j_plus_mp) * fact(w.j_minus_mp))) /
                Real(fact(w.j_plus_mp - k0) * fact(k0) * fact(w.m_minus_mp + k0) * fact(w.j_minus_m - k0));
    Real sum = 0;
    abs_sum = 0;
    for (std::int64_t k = k0; k <= w.s_max; ++k) {
        const std::int64_t pc = twoj - w.m_minus_mp - 2 * k, ps = w.m_minus_mp + 2 * k;
        Real t = coef * pow(c, static_cast<int>(pc)) * pow(s, static_cast<int>(ps));
        if ((w.m_minus_mp + k) % 2 != 0) t = -t;
        sum += t;
        abs_sum += abs(t);
        if (k < w.s_max) {
            coef *= Real((w.j_plus_mp - k) * (w.j_minus_m - k));
            coef /= Real((k + 1) * (w.m_minus_mp + k + 1));
        }
    }
    return sum;
}

template <unsigned Digits>
using RealN = boost::multiprecision::number<boost::multiprecision::cpp_bin_float<Digits>>;

template <unsigned Digits>
bool try_tier(const WignerSumShape& w, double beta, double& out, WignerDReport& rep) {
    RealN<Digits> abs_sum;
    const RealN<Digits> v = wigner_d_multi(w, RealN<Digits>(beta), abs_sum);
    rep.digits = static_cast<int>(Digits);
    if (abs_sum == 0) {
        out = 0;
        rep.cancellation = 1;
        return true;
    }
    const RealN<Digits> ratio = abs_sum / abs(v);
    rep.cancellation = v == 0 ? INFINITY : static_cast<double>(ratio);
    out = static_cast<double>(v);
    // Accept when the relative error bound, cancellation * 10^-Digits, is below 1e-15.
    return v != 0 && ratio < RealN<Digits>(10) * pow(RealN<Digits>(10), static_cast<int>(Digits) - 16);
}

} // namespace detail

// Above this ratio the double sum cannot promise 12 significant digits.
inline constexpr double kEscalateCancellation = 1e3;

// d^j_{m m'}(beta) = <j m| exp(-i beta J_y) |j m'>.
inline double exact_wigner_d(HalfInt j, HalfInt m, HalfInt mp, double beta, WignerDReport* report = nullptr) {
    const auto w = detail::wigner_shape(j, m, mp);
    WignerDReport rep;
    double abs_sum = 0;
    double v = detail::wigner_d_double(w, beta, abs_sum);
    rep.cancellation = v == 0 ? (abs_sum == 0 ? 1.0 : INFINITY) : abs_sum / std::abs(v);
    if (rep.cancellation > kEscalateCancellation) {
        bool ok = detail::try_tier<50>(w, beta, v, rep) || detail::try_tier<100>(w, beta, v, rep) ||
                  detail::try_tier<200>(w, beta, v, rep) || detail::try_tier<400>(w, beta, v, rep);
        if (!ok) detail::try_tier<1000>(w, beta, v, rep);
    }
    if (report) *report = rep;
    return v;
}

} // namespace sixj
