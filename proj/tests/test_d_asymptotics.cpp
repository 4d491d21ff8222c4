#include <sixj/d_asymptotics.hpp>
#include <sixj/wigner_d.hpp>

#include "catch_amalgamated.hpp"

#include <random>

using namespace sixj;
using Catch::Approx;

namespace {

constexpr double kPi = std::numbers::pi;

Vec3 random_unit(std::mt19937_64& rng) {
    std::normal_distribution<double> g;
    return normalized(Vec3{g(rng), g(rng), g(rng)});
}

// Solid angle of the geodesic triangle abc, Van Oosterom-Strackee.
double triangle_solid_angle(const Vec3& a, const Vec3& b, const Vec3& c) {
    return 2 * std::atan2(std::abs(triple(a, b, c)), 1 + dot(a, b) + dot(b, c) + dot(c, a));
}

double amplitude_error(HalfInt j, HalfInt m, HalfInt mp, double beta) {
    const DAsymResult r = d_asym(j, m, mp, beta);
    return std::abs(r.value - exact_wigner_d(j, m, mp, beta)) / std::abs(r.amplitude);
}

} // namespace

TEST_CASE("equatorial orbits", "[dasym]") {
    for (double beta : {0.3, 1.0, kPi / 2, 2.7}) {
        const DGeometry g = d_geometry(10.5, 0, 0, beta);
        CHECK(g.region == Region::Allowed);
        CHECK(g.cos_angle[Phi] == Approx(0).margin(1e-15));
        CHECK(g.cos_angle[Eta] == Approx(0).margin(1e-15));
        CHECK(g.angle[Kappa] == Approx(kPi - beta).epsilon(1e-14));
        CHECK(g.angle[Phi] == Approx(kPi / 2).epsilon(1e-15));
        CHECK(phi_d(g) == Approx(10.5 * (kPi - beta)).epsilon(1e-14));
    }
    const DGeometry g = d_geometry(10.5, 0, 0, kPi / 2);
    CHECK(g.Vd_sq == Approx(1).epsilon(1e-15));
    CHECK(dphi_d_dbeta(g) == Approx(-10.5).epsilon(1e-14));
}

TEST_CASE("domain errors", "[dasym]") {
    CHECK_THROWS_AS(d_geometry(half(4), half(6), half(0), 1.0), std::domain_error);
    CHECK_THROWS_AS(d_geometry(half(4), half(1), half(0), 1.0), std::domain_error);
    CHECK_THROWS_AS(d_geometry(half(4), half(0), half(0), 0.0), std::domain_error);
    CHECK_THROWS_AS(d_geometry(half(4), half(0), half(0), kPi), std::domain_error);
    CHECK_THROWS_AS(d_geometry(3.0, 3.0, 0.0, 1.0), std::domain_error);
}

TEST_CASE("turning points", "[dasym]") {
    const HalfInt j = half(40), m = half(10), mp = half(6);
    const auto [b1, b2] = turning_points(j, m, mp);
    const double t = std::acos(5 / 20.5), tp = std::acos(3 / 20.5);
    CHECK(b1 == Approx(tp - t).epsilon(1e-15));
    CHECK(b2 == Approx(t + tp).epsilon(1e-15));
    CHECK(turning_points(j, m, m).first == 0.0);
    CHECK(turning_points(j, m, -m).second == Approx(kPi).epsilon(1e-15));
    CHECK(turning_points(j, -m, -m).second == Approx(2 * kPi - 2 * std::acos(-5 / 20.5)).epsilon(1e-14));
    const auto [c1, c2] = turning_points(j, -m, -mp);
    CHECK(c1 == Approx(b1).epsilon(1e-14));
    CHECK(c2 == Approx(2 * kPi - (kPi - t) - (kPi - tp)).epsilon(1e-14));
    CHECK(c2 <= kPi);

    // Lune areas at the turning points: (J - max(m, m')) pi and max(0, -m - m') pi.
    const double eps = 1e-9;
    for (auto [m2, mp2] : {std::pair{10, 6}, {-10, 6}, {10, -6}, {-10, -6}, {0, 0}, {4, 4}, {-12, 12}}) {
        const HalfInt mm = half(m2), mmp = half(mp2);
        const double J = 20.5, Jz = mm.value(), Jn = mmp.value();
        const auto [a, b] = turning_points(J, Jz, Jn);
        const double A1 = (J - std::max(Jz, Jn)) * kPi, A2 = std::max(0.0, -Jz - Jn) * kPi;
        if (a > 0) CHECK(phi_d(d_geometry(J, Jz, Jn, a + eps)) == Approx(A1).margin(1e-3));
        else CHECK(phi_d_clamped(J, Jz, Jn, 1e-9) == Approx(A1).margin(1e-3));
        if (b < kPi) CHECK(phi_d(d_geometry(J, Jz, Jn, b - eps)) == Approx(A2).margin(1e-3));
        else CHECK(phi_d_clamped(J, Jz, Jn, kPi - 1e-9) == Approx(A2).margin(1e-3));
    }
}

TEST_CASE("forbidden region types", "[dasym]") {
    // theta < theta' here, so below beta1 = theta' - theta is region C.
    const HalfInt j = half(40), m = half(10), mp = half(6);
    const auto [b1, b2] = turning_points(j, m, mp);
    CHECK(0.05 < b1);
    CHECK(d_geometry(j, m, mp, 0.05).region == Region::ForbiddenC);
    CHECK(d_geometry(j, mp, m, 0.05).region == Region::ForbiddenB);
    CHECK(d_geometry(j, m, mp, 0.5 * (b2 + kPi)).region == Region::ForbiddenA);
    CHECK(d_geometry(j, -m, -mp, 0.5 * (turning_points(j, -m, -mp).second + kPi)).region == Region::ForbiddenD);
    CHECK(d_geometry(j, m, mp, 0.5 * (b1 + b2)).region == Region::Allowed);
    CHECK(d_geometry(j, m, mp, b2 - 1e-12).region == Region::Caustic);
    CHECK(d_geometry(j, m, mp, b2 - 1e-4).region == Region::Allowed);
    CHECK(d_geometry(j, m, mp, b2 + 1e-4).region == Region::ForbiddenA);

    // Caustic parities: 0, j - m', j - m, -m - m'.
    CHECK(nu_d(Region::ForbiddenA, j, m, mp) == 0);
    CHECK(nu_d(Region::ForbiddenB, j, m, mp) == (j - mp).as_integer());
    CHECK(nu_d(Region::ForbiddenC, j, m, mp) == (j - m).as_integer());
    CHECK(nu_d(Region::ForbiddenD, j, m, mp) == (-m - mp).as_integer());
}

TEST_CASE("allowed-region identities", "[dasym]") {
    std::mt19937_64 rng(4);
    std::uniform_real_distribution<double> u(-1, 1), beta(0.01, kPi - 0.01);
    int n = 0;
    while (n < 500) {
        const double J = 30, Jz = J * u(rng), Jn = J * u(rng), b = beta(rng);
        const DGeometry g = d_geometry(J, Jz, Jn, b);
        if (g.region != Region::Allowed) continue;
        ++n;
        const double st = std::sin(g.theta), stp = std::sin(g.theta_p), sb = std::sin(b);
        const double sk = std::sin(g.angle[Kappa]), sp = std::sin(g.angle[Phi]), se = std::sin(g.angle[Eta]);
        // Law of sines.
        CHECK(sb * st * sp == Approx(sb * stp * se).margin(1e-10));
        CHECK(sb * st * sp == Approx(st * stp * sk).margin(1e-10));
        // V_d^2 is the Gram determinant of (z, n, a).
        const Vec3 z{0, 0, 1}, nn{sb, 0, std::cos(b)};
        const double ax = (std::cos(g.theta_p) - std::cos(g.theta) * std::cos(b)) / sb;
        const Vec3 a{ax, std::sqrt(std::max(0.0, 1 - ax * ax - Jz * Jz / (J * J))), Jz / J};
        const double det = det3(Mat3{z, nn, a});
        CHECK(det * det == Approx(g.Vd_sq).margin(1e-12));
        CHECK(sb * st * sp == Approx(std::sqrt(g.Vd_sq)).margin(1e-10));
        // Derivative against centred differences.
        const double h = 1e-6;
        if (b > 2 * h && b < kPi - 2 * h && g.Vd_sq > 1e-3) {
            const double fd = (phi_d_clamped(J, Jz, Jn, b + h) - phi_d_clamped(J, Jz, Jn, b - h)) / (2 * h);
            CHECK(dphi_d_dbeta(g) == Approx(fd).epsilon(1e-5));
        }
    }
}

TEST_CASE("caustic boundary is the ellipse", "[dasym]") {
    // J^2 V_d^2 = J^2 sin^2 beta - (Jz^2 + Jn^2 - 2 Jz Jn cos beta); roots in Jz at fixed Jn, beta.
    const double J = 20.5;
    for (double beta : {0.4, 1.3, 2.2})
        for (double Jn : {-15.0, -3.0, 0.0, 7.0, 18.0}) {
            const double cb = std::cos(beta), sb = std::sin(beta);
            const double r = sb * std::sqrt(J * J - Jn * Jn);
            for (double root : {Jn * cb - r, Jn * cb + r}) {
                if (std::abs(root) >= J) continue;
                // Bisect the region change between the ellipse centre line and the pole.
                double in = Jn * cb, out = root < in ? -J * (1 - 1e-12) : J * (1 - 1e-12);
                if (d_geometry(J, out, Jn, beta).region == Region::Allowed) continue;
                for (int it = 0; it < 200; ++it) {
                    const double mid = 0.5 * (in + out);
                    (d_geometry(J, mid, Jn, beta).region == Region::Allowed ? in : out) = mid;
                }
                CHECK(in == Approx(root).margin(1e-9 * J));
            }
        }
}

TEST_CASE("forbidden continuation", "[dasym]") {
    const HalfInt j = half(40);
    struct Case { HalfInt m, mp; bool below; Region expect; };
    const Case cases[] = {{half(10), half(6), true, Region::ForbiddenC},
                          {half(6), half(10), true, Region::ForbiddenB},
                          {half(10), half(6), false, Region::ForbiddenA},
                          {half(-10), half(-6), false, Region::ForbiddenD}};
    for (const Case& c : cases) {
        const auto [b1, b2] = turning_points(j, c.m, c.mp);
        const double lo = c.below ? 1e-3 : b2 + 1e-3, hi = c.below ? b1 - 1e-3 : kPi - 1e-3;
        double prev = std::numeric_limits<double>::quiet_NaN();
        for (int k = 0; k <= 40; ++k) {
            const double beta = lo + (hi - lo) * k / 40;
            const DGeometry g = d_geometry(j, c.m, c.mp, beta);
            REQUIRE(g.region == c.expect);
            const double pb = phi_bar_d(g);
            // Same sign convention as Phi_bar_PR: positive in B, C and negative in A, D.
            if (c.below) CHECK(pb >= 0);
            else CHECK(pb <= 0);
            // |Phi_bar_d| grows away from the turning point.
            if (k > 0) CHECK((c.below ? std::abs(pb) < prev : std::abs(pb) > prev));
            prev = std::abs(pb);
            // No jumps under a tiny perturbation; slope is -J |V_d| / sin beta.
            const double h = 1e-8, h2 = 1e-6;
            CHECK(std::abs(phi_bar_d(d_geometry(j, c.m, c.mp, beta + h)) - pb) <= 2 * h * std::abs(dphi_d_dbeta(g)) + 1e-12);
            const double fd = (phi_bar_d(d_geometry(j, c.m, c.mp, beta + h2)) -
                               phi_bar_d(d_geometry(j, c.m, c.mp, beta - h2))) / (2 * h2);
            CHECK(dphi_d_dbeta(g) == Approx(fd).epsilon(1e-4).margin(1e-6));
            CHECK(phi_bar_d_continued(j.value() + 0.5, c.m.value(), c.mp.value(), beta) == Approx(pb).epsilon(1e-14));
        }
    }
}

TEST_CASE("asymptotic values against the exact d-matrix", "[dasym]") {
    SECTION("mid-allowed point") {
        const HalfInt j = half(40), m = half(10), mp = half(6);
        const DAsymResult r = d_asym(j, m, mp, kPi / 2);
        CHECK(r.region == Region::Allowed);
        CHECK(std::abs(r.value - exact_wigner_d(j, m, mp, kPi / 2)) <= 0.3 * std::abs(r.amplitude));
    }
    SECTION("error decays like 1/j") {
        const double e20 = amplitude_error(half(40), half(0), half(0), 1.0);
        const double e40 = amplitude_error(half(80), half(0), half(0), 1.0);
        const double e80 = amplitude_error(half(160), half(0), half(0), 1.0);
        CHECK(e20 / e40 > 1.3);
        CHECK(e20 / e40 < 3.0);
        CHECK(e40 / e80 > 1.3);
        CHECK(e40 / e80 < 3.0);
    }
    SECTION("forbidden values") {
        int deep = 0;
        for (int tj : {40, 80, 160})
            for (auto [tm, tmp] : {std::pair{10, 6}, {6, 10}, {-10, -6}, {20, -30}, {-4, 2}}) {
                const HalfInt j = half(tj), m = half(tm * tj / 40), mp = half(tmp * tj / 40);
                const auto [b1, b2] = turning_points(j, m, mp);
                for (double beta : {0.3 * b1, 0.6 * b1, b2 + 0.4 * (kPi - b2), b2 + 0.8 * (kPi - b2)}) {
                    if (!(beta > 0 && beta < kPi)) continue;
                    const DAsymResult r = d_asym(j, m, mp, beta);
                    REQUIRE(is_forbidden(r.region));
                    if (std::abs(r.phase) < 2) continue;
                    ++deep;
                    const double e = exact_wigner_d(j, m, mp, beta);
                    CHECK(std::signbit(e) == std::signbit(r.value));
                    CHECK(std::abs(r.value / e) > 0.5);
                    CHECK(std::abs(r.value / e) < 2.0);
                }
            }
        CHECK(deep > 20);
    }
    CHECK_THROWS_AS(d_asym(half(40), half(10), half(6), turning_points(half(40), half(10), half(6)).second),
                    OnCaustic);
}

TEST_CASE("solid angle of small-circle polygons", "[dasym]") {
    SECTION("geodesic triangles") {
        std::mt19937_64 rng(8);
        for (int n = 0; n < 100; ++n) {
            Vec3 a = random_unit(rng), b = random_unit(rng), c = random_unit(rng);
            if (triple(a, b, c) < 0) std::swap(b, c);
            const std::vector<Vec3> v{a, b, c};
            std::vector<Vec3> axes;
            std::vector<double> arcs;
            for (int i = 0; i < 3; ++i) {
                const Vec3 &p = v[i], &q = v[(i + 1) % 3];
                axes.push_back(normalized(cross(p, q)));
                arcs.push_back(std::acos(std::clamp(dot(p, q), -1.0, 1.0)));
            }
            CHECK(solid_angle_polygon(v, axes, arcs) == Approx(triangle_solid_angle(a, b, c)).margin(1e-12));
        }
    }
    SECTION("spherical cap") {
        for (double theta : {0.2, 1.0, 2.0, 3.0}) {
            const Vec3 v{std::sin(theta), 0, std::cos(theta)};
            CHECK(solid_angle_polygon({v}, {Vec3{0, 0, 1}}, {2 * kPi}) ==
                  Approx(2 * kPi * (1 - std::cos(theta))).margin(1e-12));
        }
    }
    SECTION("lune of two orbits is twice Phi_d / J") {
        std::mt19937_64 rng(12);
        std::uniform_real_distribution<double> u(-1, 1), beta(0.05, kPi - 0.05);
        int n = 0;
        while (n < 200) {
            const double J = 12.5, Jz = J * u(rng), Jn = J * u(rng), b = beta(rng);
            const DGeometry g = d_geometry(J, Jz, Jn, b);
            if (g.region != Region::Allowed) continue;
            ++n;
            const double sb = std::sin(b), ct = Jz / J;
            const Vec3 z{0, 0, 1}, nn{sb, 0, std::cos(b)};
            const double ax = (Jn / J - ct * std::cos(b)) / sb, ay = std::sqrt(std::max(0.0, 1 - ax * ax - ct * ct));
            const Vec3 a{ax, ay, ct}, a2{ax, -ay, ct};
            // Along the z orbit from a2 to a, then along the n orbit back to a2.
            const double omega = solid_angle_polygon({a2, a}, {z, nn}, {2 * g.angle[Phi], 2 * g.angle[Eta]});
            CHECK(J * omega == Approx(2 * phi_d(g)).epsilon(1e-9).margin(1e-9));
        }
    }
    CHECK_THROWS_AS(solid_angle_polygon({Vec3{1, 0, 0}}, {Vec3{0, 0, 1}}, {1.0}), OpenPolygon);
}
