#include <sixj/ponzano_regge.hpp>
#include <sixj/tetrahedron.hpp>

#include "catch_amalgamated.hpp"

#include <random>

using namespace sixj;
using Catch::Approx;

namespace {

constexpr double kPi = std::numbers::pi;

// Edge lengths of the tetrahedron with vertices P0 = 0, P1, P2, P3.
Lengths lengths_of(const Vec3& P1, const Vec3& P2, const Vec3& P3) {
    Lengths J{};
    J[E1] = norm(P1);
    J[E2] = norm(P2 - P1);
    J[E3] = norm(P3 - P2);
    J[E4] = norm(P3);
    J[E12] = norm(P2);
    J[E23] = norm(P3 - P1);
    return J;
}

// 288 V^2 as the 5x5 Cayley-Menger determinant, by Gaussian elimination in long double.
long double cayley_menger(const Lengths& J) {
    // Squared distances between vertices 0..3.
    long double d[4][4] = {};
    auto set = [&](int a, int b, double x) { d[a][b] = d[b][a] = static_cast<long double>(x) * x; };
    set(0, 1, J[E1]);
    set(1, 2, J[E2]);
    set(2, 3, J[E3]);
    set(0, 3, J[E4]);
    set(0, 2, J[E12]);
    set(1, 3, J[E23]);
    long double m[5][5];
    for (int i = 0; i < 5; ++i)
        for (int k = 0; k < 5; ++k) m[i][k] = (i == 0 || k == 0) ? (i == k ? 0 : 1) : d[i - 1][k - 1];
    long double det = 1;
    for (int c = 0; c < 5; ++c) {
        int p = c;
        for (int r = c + 1; r < 5; ++r)
            if (std::abs(m[r][c]) > std::abs(m[p][c])) p = r;
        if (m[p][c] == 0) return 0;
        if (p != c) {
            std::swap(m[p], m[c]);
            det = -det;
        }
        det *= m[c][c];
        for (int r = c + 1; r < 5; ++r) {
            const long double f = m[r][c] / m[c][c];
            for (int k = c; k < 5; ++k) m[r][k] -= f * m[c][k];
        }
    }
    return det;
}

Vec3 random_point(std::mt19937_64& rng, double scale) {
    std::uniform_real_distribution<double> u(-scale, scale);
    return {u(rng), u(rng), u(rng)};
}

const Lengths kRegular{1, 1, 1, 1, 1, 1};

Lengths fig3(double J12, double J23) { return {5, 3.5, 6, 6.5, J12, J23}; }

} // namespace

TEST_CASE("gram entries follow the edge dot products", "[tetra]") {
    const GramMatrix G = gram({2, 2, 2, 2, 2, 2});
    for (int i = 0; i < 3; ++i)
        for (int k = 0; k < 3; ++k) CHECK(G.g[i][k] == (i == k ? 4.0 : 2.0));

    // (9/2, 3, 11/2, 6) + 1/2 with J12 = 5, J23 = 9, by hand.
    const GramMatrix F = gram(fig3(5, 9));
    CHECK(F.g[0][0] == 25.0);
    CHECK(F.g[1][1] == 25.0);
    CHECK(F.g[2][2] == 42.25);
    CHECK(F.g[0][1] == Approx(0.5 * (25 + 25 - 12.25)));
    CHECK(F.g[0][2] == Approx(0.5 * (25 + 42.25 - 81)));
    CHECK(F.g[1][2] == Approx(0.5 * (25 + 42.25 - 36)));

    CHECK_THROWS_AS(gram({1, 1, 0, 1, 1, 1}), std::domain_error);
    CHECK_THROWS_AS(gram({1, 1, 1, -1, 1, 1}), std::domain_error);
}

TEST_CASE("det G equals 36 V^2 and the Cayley-Menger determinant", "[tetra]") {
    std::mt19937_64 rng(20240611);
    for (int n = 0; n < 100; ++n) {
        const Vec3 P1 = random_point(rng, 10), P2 = random_point(rng, 10), P3 = random_point(rng, 10);
        const Lengths J = lengths_of(P1, P2, P3);
        const double six_v = std::abs(triple(P1, P2, P3));
        const Tetrahedron t = construct(J);
        const double detG = t.gram_matrix.det();
        CHECK(detG == Approx(six_v * six_v).epsilon(1e-10).margin(1e-9));
        CHECK(36 * t.volume_sq == Approx(detG).epsilon(1e-10));
        const double cm = static_cast<double>(cayley_menger(J));
        CHECK(cm == Approx(288 * t.volume_sq).epsilon(1e-9).margin(1e-8));
        CHECK(t.volume >= 0);
        CHECK(6 * t.volume == Approx(six_v).epsilon(1e-9).margin(1e-9));
    }
}

TEST_CASE("symmetric eigen-decomposition", "[tetra]") {
    SECTION("identity") {
        GramMatrix G;
        G.g = {{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}};
        const SymEigen3 e = eigen_sym3(G);
        for (int k = 0; k < 3; ++k) CHECK(e.values[k] == 1.0);
        for (int i = 0; i < 3; ++i)
            for (int k = 0; k < 3; ++k) CHECK(std::abs(e.vectors[i][k]) == (i == k ? 1.0 : 0.0));
    }
    SECTION("diagonal, negative value last") {
        GramMatrix G;
        G.g = {{{1, 0, 0}, {0, -2, 0}, {0, 0, 4}}};
        const SymEigen3 e = eigen_sym3(G);
        CHECK(e.values == Vec3{4, 1, -2});
        CHECK(std::abs(e.vectors[2][0]) == 1.0);
        CHECK(std::abs(e.vectors[0][1]) == 1.0);
        CHECK(std::abs(e.vectors[1][2]) == 1.0);
    }
    SECTION("random reconstruction") {
        std::mt19937_64 rng(7);
        std::uniform_real_distribution<double> u(-50, 50);
        for (int n = 0; n < 200; ++n) {
            GramMatrix G;
            for (int i = 0; i < 3; ++i)
                for (int k = i; k < 3; ++k) G.g[i][k] = G.g[k][i] = u(rng);
            const SymEigen3 e = eigen_sym3(G);
            CHECK(e.values[0] >= e.values[1]);
            CHECK(e.values[1] >= e.values[2]);
            double worst = 0, orth = 0;
            for (int i = 0; i < 3; ++i)
                for (int k = 0; k < 3; ++k) {
                    double r = 0, o = 0;
                    for (int l = 0; l < 3; ++l) {
                        r += e.vectors[i][l] * e.values[l] * e.vectors[k][l];
                        o += e.vectors[l][i] * e.vectors[l][k];
                    }
                    worst = std::max(worst, std::abs(r - G.g[i][k]));
                    orth = std::max(orth, std::abs(o - (i == k ? 1 : 0)));
                }
            CHECK(worst <= 1e-12 * G.frobenius());
            CHECK(orth <= 1e-13);
        }
    }
}

TEST_CASE("regular tetrahedron", "[tetra]") {
    const Tetrahedron t = construct(kRegular);
    CHECK(t.volume == Approx(1 / (6 * std::sqrt(2.0))).epsilon(1e-14));
    CHECK(t.sigma == 1);
    const DihedralAngles d = dihedrals(t);
    CHECK_FALSE(d.forbidden);
    for (int i = 0; i < 6; ++i) {
        CHECK(d.cos_psi[i] == Approx(-1.0 / 3).epsilon(1e-13));
        CHECK(d.psi[i] == Approx(kPi - std::acos(1.0 / 3)).epsilon(1e-13));
    }
    CHECK(poisson_bracket_check(t) == Approx(6 * t.volume).epsilon(1e-12));
    CHECK(classify(kRegular).kind == Region::Allowed);
}

TEST_CASE("constructed vectors close and reproduce the lengths", "[tetra]") {
    std::mt19937_64 rng(99);
    std::uniform_real_distribution<double> u(0.5, 30);
    int forbidden = 0, allowed = 0;
    for (int n = 0; n < 3000 && (forbidden < 200 || allowed < 200); ++n) {
        const double J1 = u(rng), J2 = u(rng), J3 = u(rng), J4 = u(rng);
        const double lo12 = std::max(std::abs(J1 - J2), std::abs(J3 - J4)), hi12 = std::min(J1 + J2, J3 + J4);
        const double lo23 = std::max(std::abs(J2 - J3), std::abs(J1 - J4)), hi23 = std::min(J2 + J3, J1 + J4);
        if (!(lo12 < hi12 && lo23 < hi23)) continue;
        std::uniform_real_distribution<double> a(lo12, hi12), b(lo23, hi23);
        const Lengths J{J1, J2, J3, J4, a(rng), b(rng)};
        const Tetrahedron t = construct(J);
        (t.sigma > 0 ? allowed : forbidden)++;
        CHECK(36 * t.volume_sq == Approx(t.gram_matrix.det()).epsilon(1e-10));
        for (int e = 0; e < 6; ++e) CHECK(std::abs(t.length_sq(e) - J[e] * J[e]) <= 1e-9 * J[e] * J[e] + 1e-12);
        const Vec3 sum = t.edges[E1] + t.edges[E2] + t.edges[E3] + t.edges[E4];
        const Vec3 j12 = t.edges[E12] - t.edges[E1] - t.edges[E2];
        const Vec3 j23 = t.edges[E23] - t.edges[E2] - t.edges[E3];
        for (int k = 0; k < 3; ++k) {
            CHECK(std::abs(sum[k]) <= 1e-10 * J1);
            CHECK(std::abs(j12[k]) <= 1e-10 * J1);
            CHECK(std::abs(j23[k]) <= 1e-10 * J1);
        }
        const RegionClass rc = classify(t);
        const DihedralAngles d = dihedrals(t);
        if (rc.kind == Region::Allowed) {
            CHECK(t.volume > 0);
            for (double p : d.psi) CHECK((p >= 0 && p <= kPi));
            CHECK(poisson_bracket_check(t) == Approx(6 * t.volume / (J[E12] * J[E23])).epsilon(1e-10));
        } else if (is_forbidden(rc.kind)) {
            CHECK(t.imaginary());
            CHECK(table1(rc.column).region == rc.kind);
            for (int i = 0; i < 6; ++i) {
                CHECK(std::abs(d.cos_psi[i]) > 1);
                CHECK(std::signbit(d.psi_bar[i]) == std::signbit(d.cos_psi[i]));
            }
        }
    }
    CHECK(allowed >= 200);
    CHECK(forbidden >= 200);
}

TEST_CASE("flat tetrahedra are caustic with angles 0 or pi", "[tetra]") {
    SECTION("convex quadrilateral is segment C") {
        const Lengths sq{1, 1, 1, 1, std::sqrt(2.0), std::sqrt(2.0)};
        const Tetrahedron t = construct(sq);
        CHECK(std::abs(t.volume_sq) < 1e-14);
        const RegionClass rc = classify(t);
        CHECK(rc.kind == Region::Caustic);
        CHECK(rc.column == TableColumn::C);
        const PRPhase p = pr_phase(sq);
        CHECK(p.phase == Approx(4 * kPi).epsilon(1e-9));
    }
    SECTION("random planar configurations") {
        std::mt19937_64 rng(3);
        std::uniform_real_distribution<double> u(-10, 10);
        int seen[8] = {};
        for (int n = 0; n < 400; ++n) {
            const Vec3 P1{u(rng), u(rng), 0}, P2{u(rng), u(rng), 0}, P3{u(rng), u(rng), 0};
            const Lengths J = lengths_of(P1, P2, P3);
            // Skip nearly collinear triangles.
            const double a = std::min({std::abs(cross(P1, P2)[2]), std::abs(cross(P2 - P1, P3 - P1)[2]),
                                       std::abs(cross(P2, P3)[2]), std::abs(cross(P1, P3)[2])});
            if (a < 1) continue;
            const Tetrahedron t = construct(J);
            const RegionClass rc = classify(t);
            REQUIRE(rc.kind == Region::Caustic);
            REQUIRE(rc.column != TableColumn::None);
            ++seen[static_cast<int>(rc.column)];
            const auto& col = table1(rc.column);
            double expect = 0;
            for (int i = 0; i < 6; ++i) expect += col.pi_mask[i] * J[i];
            CHECK(pr_phase(J).phase == Approx(kPi * expect).epsilon(1e-7));
        }
        for (int c = 1; c < 8; ++c) CHECK(seen[c] > 0);
    }
}

TEST_CASE("approaching the caustic from inside, psi tends to the flat-limit pattern", "[tetra]") {
    // Move J23 toward its upper caustic along J12 = 5 for the (9/2, 3, 11/2, 6) quadruple.
    double lo = 5, hi = 9.5;
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        (construct(fig3(5, mid)).volume_sq > 0 ? lo : hi) = mid;
    }
    const Lengths inside = fig3(5, lo - 1e-9), outside = fig3(5, hi + 1e-9);
    const DihedralAngles din = dihedrals(construct(inside));
    const DihedralAngles dout = dihedrals(construct(outside));
    REQUIRE_FALSE(din.forbidden);
    REQUIRE(dout.forbidden);
    const RegionClass rc = classify(outside);
    const auto& col = table1(rc.column);
    for (int i = 0; i < 6; ++i) {
        CHECK(din.psi[i] == Approx(col.pi_mask[i] * kPi).margin(1e-3));
        CHECK(std::abs(dout.psi_bar[i]) < 1e-3);
    }
}

TEST_CASE("regions of the (9/2, 3, 11/2, 6) square", "[tetra]") {
    const Bounds b = bounds(parse_half_int("9/2"), HalfInt::from_twice(6), parse_half_int("11/2"), HalfInt::from_twice(12));
    CHECK(classify(fig3(5, 9), b).kind == Region::Allowed);
    const Tetrahedron t = construct(fig3(5, 9));
    CHECK(t.volume > 0);
    CHECK(normalized_det(t.J, t.gram_matrix) < 0.01);
    // Corners: A at (max J12, min J23), B at (min, min), C at (max, max), D at (min J12, max J23).
    const double e = 0.05;
    CHECK(classify(fig3(b.J12_max - e, b.J23_min + e), b).kind == Region::ForbiddenA);
    CHECK(classify(fig3(b.J12_min + e, b.J23_min + e), b).kind == Region::ForbiddenB);
    CHECK(classify(fig3(b.J12_max - e, b.J23_max - e), b).kind == Region::ForbiddenC);
    CHECK(classify(fig3(b.J12_min + e, b.J23_max - e), b).kind == Region::ForbiddenD);
    CHECK_THROWS_AS(classify(fig3(b.J12_max + 0.5, 5), b), std::out_of_range);
}

TEST_CASE("nu_6j is an integer on every forbidden quantized symbol", "[tetra]") {
    std::mt19937_64 rng(11);
    std::uniform_int_distribution<int> twice(0, 40);
    int tested = 0;
    for (int n = 0; n < 4000; ++n) {
        const HalfInt j1 = half(twice(rng)), j2 = half(twice(rng)), j3 = half(twice(rng)), j4 = half(twice(rng));
        Bounds b;
        try {
            b = bounds(j1, j2, j3, j4);
        } catch (const DegenerateRange&) {
            continue;
        }
        for (HalfInt j12 = b.j12_min; j12 <= b.j12_max; j12 += HalfInt::from_twice(2))
            for (HalfInt j23 = b.j23_min; j23 <= b.j23_max; j23 += HalfInt::from_twice(2)) {
                const SixJLabels l{j1, j2, j12, j3, j4, j23};
                const RegionClass rc = classify(lengths(l));
                if (!is_forbidden(rc.kind)) continue;
                CHECK_NOTHROW(nu_6j(rc, l));
                ++tested;
            }
    }
    CHECK(tested > 1000);
}
