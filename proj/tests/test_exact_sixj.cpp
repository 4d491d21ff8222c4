#include <sixj/exact_sixj.hpp>

#include "catch_amalgamated.hpp"

#include <random>

using namespace sixj;
using Catch::Approx;

namespace {

SixJLabels L(double a, double b, double c, double d, double e, double f) { return make_labels(a, b, c, d, e, f); }

// Reference values from an independent Racah implementation (sympy), 40 digits.
struct Oracle {
    SixJLabels labels;
    const char* value;
};

const Oracle kOracles[] = {
    {L(1, 1, 1, 1, 1, 1), "0.1666666666666666666666666666666666666667"},
    {L(0.5, 0.5, 1, 0.5, 0.5, 1), "0.1666666666666666666666666666666666666667"},
    {L(4.5, 3, 4.5, 5.5, 6, 8.5), "-0.02991079858565193244441664224870530009858"},
    {L(19.5, 23, 16.5, 8.5, 20, 23.5), "-0.007218420569924800884609507155989470573977"},
    {L(2, 3, 4, 3, 2, 3), "0.07377111135633175019389076951966475449206"},
    {L(4.5, 3, 1.5, 5.5, 6, 2.5), "-0.03553345272593507238307295540563989606506"},
    {L(10, 10, 0, 10, 10, 0), "0.04761904761904761904761904761904761904762"},
    {L(0, 0, 0, 20, 20, 20), "0.1561737618886060655241028701127271527932"},
    {L(19.5, 23, 11.5, 8.5, 20, 23.5), "-0.003288784560923150771110685602205771702841"},
};

std::array<SixJLabels, 24> symmetry_images(const SixJLabels& l) {
    std::array<SixJLabels, 24> out;
    std::array<int, 3> perm = {0, 1, 2};
    std::size_t n = 0;
    do {
        const auto up = l.upper(), lo = l.lower();
        std::array<HalfInt, 3> pu{up[perm[0]], up[perm[1]], up[perm[2]]}, pl{lo[perm[0]], lo[perm[1]], lo[perm[2]]};
        out[n++] = SixJLabels::from_rows(pu, pl);
        for (int keep = 0; keep < 3; ++keep) {
            auto su = pu, sl = pl;
            for (int c = 0; c < 3; ++c)
                if (c != keep) std::swap(su[c], sl[c]);
            out[n++] = SixJLabels::from_rows(su, sl);
        }
    } while (std::next_permutation(perm.begin(), perm.end()));
    return out;
}

} // namespace

TEST_CASE("exact 6j matches reference values to 35 digits", "[core][exact_sixj]") {
    for (const auto& o : kOracles) {
        INFO(o.labels.str());
        const ExactValue v = exact_sixj(o.labels);
        const Real50 ref(o.value);
        REQUIRE(mp::abs(v.value - ref) <= Real50("1e-35") * mp::abs(ref));
    }
}

TEST_CASE("exact 6j trivial and closed-form cases", "[core][exact_sixj]") {
    const ExactValue one = exact_sixj(L(0, 0, 0, 0, 0, 0));
    REQUIRE(one.sign == 1);
    REQUIRE(one.square == 1);

    const ExactValue third = exact_sixj(L(1, 1, 0, 1, 1, 0));
    REQUIRE(third.sign == 1);
    REQUIRE(third.square == BigRational(1, 9));
    REQUIRE(third.provenance == ExactValue::Provenance::ClosedForm);
    REQUIRE(racah_sixj(L(1, 1, 0, 1, 1, 0)).same_as(third));
    REQUIRE(third.rational_string() == "sqrt(1/9)");
}

TEST_CASE("closed form agrees with the Racah sum wherever a label vanishes", "[core][exact_sixj][property]") {
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<std::int64_t> tw(0, 30);
    int tested = 0;
    while (tested < 300) {
        std::array<HalfInt, 6> v;
        for (auto& x : v) x = half(tw(rng));
        v[std::uniform_int_distribution<int>(0, 5)(rng)] = HalfInt(0);
        const SixJLabels l{v[0], v[1], v[2], v[3], v[4], v[5]};
        if (!validate(l)) continue;
        ++tested;
        INFO(l.str());
        const auto cf = closed_form_sixj(l);
        REQUIRE(cf.has_value());
        REQUIRE(cf->same_as(racah_sixj(l)));
    }
}

TEST_CASE("exact 6j is invariant under the 24 tetrahedral symmetries", "[core][exact_sixj][property]") {
    std::mt19937_64 rng(11);
    std::uniform_int_distribution<std::int64_t> tw(0, 40);
    int tested = 0;
    while (tested < 60) {
        std::array<HalfInt, 6> v;
        for (auto& x : v) x = half(tw(rng));
        const SixJLabels l{v[0], v[1], v[2], v[3], v[4], v[5]};
        if (!validate(l)) continue;
        ++tested;
        const ExactValue ref = racah_sixj(l);
        for (const auto& img : symmetry_images(l)) {
            INFO(l.str() << " -> " << img.str());
            REQUIRE(racah_sixj(img).same_as(ref));
        }
    }
}

TEST_CASE("recoupling matrix is orthogonal", "[core][exact_sixj][unitarity]") {
    SECTION("7x7 example to 1e-25") {
        const auto U = recoupling_matrix(half(9), HalfInt(3), half(11), HalfInt(6));
        REQUIRE(U.size() == 7);
        REQUIRE(orthogonality_defect(U) <= Real50("1e-25"));
    }
    SECTION("random quadruples with D <= 60 to 1e-20") {
        std::mt19937_64 rng(3);
        std::uniform_int_distribution<std::int64_t> tw(0, 60);
        int tested = 0;
        while (tested < 6) {
            const HalfInt j1 = half(tw(rng)), j2 = half(tw(rng)), j3 = half(tw(rng)), j4 = half(tw(rng));
            Bounds b;
            try {
                b = bounds(j1, j2, j3, j4);
            } catch (const DegenerateRange&) {
                continue;
            }
            if (b.D > 60 || b.D < 3) continue;
            ++tested;
            INFO(j1.str() << " " << j2.str() << " " << j3.str() << " " << j4.str());
            REQUIRE(orthogonality_defect(recoupling_matrix(j1, j2, j3, j4)) <= Real50("1e-20"));
        }
    }
}

TEST_CASE("invalid labels are rejected", "[core][exact_sixj]") {
    REQUIRE_THROWS_AS(exact_sixj(L(0.5, 0.5, 2, 0.5, 0.5, 1)), InvalidLabels);
}
