#pragma once

#include "labels.hpp"

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/cpp_int.hpp>

#include <algorithm>
#include <array>
#include <string>
#include <vector>

namespace sixj {

namespace mp = boost::multiprecision;
using BigInt = mp::cpp_int;
using BigRational = mp::cpp_rational;
using Real50 = mp::cpp_bin_float_50;

// sign * sqrt(square); square is a reduced rational.
struct ExactValue {
    enum class Provenance { RacahSum, ClosedForm };

    int sign = 0;
    BigRational square{0};
    Real50 value{0};
    Provenance provenance = Provenance::RacahSum;

    double to_double() const { return static_cast<double>(value); }

    std::string rational_string() const {
        if (sign == 0) return "0";
        std::string s = sign < 0 ? "-" : "";
        return s + "sqrt(" + mp::numerator(square).str() + "/" + mp::denominator(square).str() + ")";
    }

    bool same_as(const ExactValue& o) const { return sign == o.sign && square == o.square; }
};

namespace detail {

inline const BigInt& factorial(std::int64_t n) {
    // Grows monotonically; callers in one thread each hold their own copy via thread_local.
    thread_local std::vector<BigInt> table{BigInt(1)};
    if (n < 0) throw std::domain_error("factorial of a negative number");
    while (static_cast<std::int64_t>(table.size()) <= n)
        table.push_back(table.back() * static_cast<std::int64_t>(table.size()));
    return table[static_cast<std::size_t>(n)];
}

inline Real50 sqrt_of(const BigRational& q) {
    Real50 num(mp::numerator(q)), den(mp::denominator(q));
    return mp::sqrt(num / den);
}

// Square of the triangle coefficient (a+b-c)!(a-b+c)!(-a+b+c)!/(a+b+c+1)!.
inline BigRational delta_sq(HalfInt a, HalfInt b, HalfInt c) {
    BigInt n = factorial((a + b - c).as_integer()) * factorial((a - b + c).as_integer()) *
               factorial((-a + b + c).as_integer());
    return BigRational(n, factorial((a + b + c).as_integer() + 1));
}

} // namespace detail

// Racah single sum for {a b c; d e f}; the alternating sum is exact in integers.
inline ExactValue racah_sixj(const SixJLabels& l) {
    require_valid(l);
    const HalfInt a = l.j1, b = l.j2, c = l.j12, d = l.j3, e = l.j4, f = l.j23;
    const std::array<std::int64_t, 4> alpha = {(a + b + c).as_integer(), (a + e + f).as_integer(),
                                               (d + b + f).as_integer(), (d + e + c).as_integer()};
    const std::array<std::int64_t, 3> beta = {(a + b + d + e).as_integer(), (a + c + d + f).as_integer(),
                                              (b + c + e + f).as_integer()};
    const std::int64_t kmin = *std::max_element(alpha.begin(), alpha.end());
    const std::int64_t kmax = *std::min_element(beta.begin(), beta.end());

    // t_k = (k+1)! * prod_i (kmax-alpha_i)!/(k-alpha_i)! * prod_j (beta_j-kmin)!/(beta_j-k)!, all integers;
    // the sum is sum_k (-1)^k t_k / M with M = prod_i (kmax-alpha_i)! prod_j (beta_j-kmin)!.
    BigInt t = detail::factorial(kmin + 1);
    for (auto al : alpha) {
        for (std::int64_t x = kmin - al + 1; x <= kmax - al; ++x) t *= x;
    }
    BigInt M = 1;
    for (auto al : alpha) M *= detail::factorial(kmax - al);
    for (auto be : beta) M *= detail::factorial(be - kmin);

    BigInt sum = 0;
    for (std::int64_t k = kmin; k <= kmax; ++k) {
        if (k % 2 == 0) sum += t;
        else sum -= t;
        if (k == kmax) break;
        t *= (k + 2);
        for (auto be : beta) t *= (be - k);
        BigInt den = 1;
        for (auto al : alpha) den *= (k + 1 - al);
        t /= den;
    }

    ExactValue out;
    out.provenance = ExactValue::Provenance::RacahSum;
    if (sum == 0) return out;
    out.sign = sum < 0 ? -1 : 1;
    BigRational tri = detail::delta_sq(a, b, c) * detail::delta_sq(a, e, f) * detail::delta_sq(d, b, f) *
                      detail::delta_sq(d, e, c);
    out.square = tri * BigRational(sum * sum, M * M);
    out.value = out.sign * detail::sqrt_of(out.square);
    return out;
}

// {a b c; b a 0} = (-1)^(a+b+c) / sqrt((2a+1)(2b+1)), reached from any zero label by symmetry.
inline std::optional<ExactValue> closed_form_sixj(const SixJLabels& l) {
    std::array<HalfInt, 3> up = l.upper(), lo = l.lower();
    int col = -1;
    bool in_upper = false;
    for (int i = 0; i < 3 && col < 0; ++i) {
        if (lo[i].twice == 0) col = i;
        else if (up[i].twice == 0) { col = i; in_upper = true; }
    }
    if (col < 0) return std::nullopt;
    std::swap(up[col], up[2]);
    std::swap(lo[col], lo[2]);
    if (in_upper) {
        std::swap(up[2], lo[2]);
        std::swap(up[0], lo[0]);
    }
    const HalfInt A = up[0], B = up[1], C = up[2];
    ExactValue out;
    out.provenance = ExactValue::Provenance::ClosedForm;
    if (!(lo[1] == A && lo[0] == B)) return out;
    out.sign = (A + B + C).as_integer() % 2 == 0 ? 1 : -1;
    out.square = BigRational(1, BigInt((A.twice + 1) * (B.twice + 1)));
    out.value = out.sign * detail::sqrt_of(out.square);
    return out;
}

inline ExactValue exact_sixj(const SixJLabels& l) {
    require_valid(l);
    if (auto cf = closed_form_sixj(l)) return *cf;
    return racah_sixj(l);
}

// The rescaled matrix sqrt((2j12+1)(2j23+1)) * {j1 j2 j12; j3 j4 j23}; rows j12, columns j23.
inline std::vector<std::vector<Real50>> recoupling_matrix(HalfInt j1, HalfInt j2, HalfInt j3, HalfInt j4) {
    const Bounds b = bounds(j1, j2, j3, j4);
    std::vector<std::vector<Real50>> U(static_cast<std::size_t>(b.D), std::vector<Real50>(b.D));
    for (std::int64_t r = 0; r < b.D; ++r) {
        for (std::int64_t c = 0; c < b.D; ++c) {
            const HalfInt j12 = b.j12_min + HalfInt(r), j23 = b.j23_min + HalfInt(c);
            const ExactValue v = exact_sixj({j1, j2, j12, j3, j4, j23});
            U[r][c] = v.value * mp::sqrt(Real50((j12.twice + 1) * (j23.twice + 1)));
        }
    }
    return U;
}

// max |U U^T - I| over all entries.
inline Real50 orthogonality_defect(const std::vector<std::vector<Real50>>& U) {
    Real50 worst = 0;
    const std::size_t n = U.size();
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t k = 0; k < n; ++k) {
            Real50 s = 0;
            for (std::size_t c = 0; c < n; ++c) s += U[i][c] * U[k][c];
            if (i == k) s -= 1;
            if (Real50 a = mp::abs(s); a > worst) worst = a;
        }
    }
    return worst;
}

} // namespace sixj
