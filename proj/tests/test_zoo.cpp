#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "slantcurve/hierarchy.hpp"
#include "slantcurve/zoo.hpp"
#include "support.hpp"

using namespace slant;
using namespace slant::test;

namespace {

ZooSpec spec_for(ZooFamily family) {
    ZooSpec spec;
    spec.family = family;
    return spec;
}

} // namespace

TEST_CASE("every zoo family produces a sound apparatus and its own truth") {
    for (auto family : {ZooFamily::CircularHelix, ZooFamily::GeneralHelix, ZooFamily::Salkowski,
                        ZooFamily::AntiSalkowski, ZooFamily::ConstantPrecession,
                        ZooFamily::PlaneCircle, ZooFamily::DesignedKSlant}) {
        CAPTURE(to_string(family));
        const ZooCurve zoo = generate(spec_for(family));

        const auto res = frenet_residuals(zoo.apparatus);
        CHECK(res.max() < 1e-3);

        const auto profile = sigma_recursion(zoo.apparatus, std::min(zoo.truth.k_star + 1, 4));
        const auto rep = classify(zoo.curve, zoo.apparatus, profile, kDefaultConstTol);
        REQUIRE(rep.k_star.has_value());
        CHECK(*rep.k_star == zoo.truth.k_star);
        CHECK(std::abs(rep.cot_phi - zoo.truth.cot_phi) < kDefaultConstTol);
    }
}

TEST_CASE("salkowski keeps curvature exactly constant, anti-salkowski torsion") {
    const ZooCurve s = generate(spec_for(ZooFamily::Salkowski));
    for (double k : s.profile.kappa.values) CHECK(k == 1.0);

    const ZooCurve a = generate(spec_for(ZooFamily::AntiSalkowski));
    for (double t : a.profile.tau.values) CHECK(t == 1.0);
    // curvature genuinely varies
    double lo = 1e30, hi = -1e30;
    for (double k : a.profile.kappa.values) {
        lo = std::min(lo, k);
        hi = std::max(hi, k);
    }
    CHECK(hi - lo > 0.5);
}

TEST_CASE("salkowski torsion solves the slant equation") {
    // independent closed form: with kappa = 1 and level-1 value c anchored at
    // zero midspan, tau(u) = c u / sqrt(1 - c^2 u^2), u measured from midspan
    const ZooCurve zoo = generate(spec_for(ZooFamily::Salkowski));
    const double c = zoo.spec.c;
    const double mid = 0.5 * (zoo.profile.grid.front() + zoo.profile.grid.back());
    double worst = 0.0;
    for (std::size_t i = 0; i < zoo.profile.grid.size(); ++i) {
        const double u = zoo.profile.grid[i] - mid;
        const double expect = c * u / std::sqrt(1.0 - c * c * u * u);
        worst = std::max(worst, std::abs(zoo.profile.tau.values[i] - expect));
    }
    CHECK(worst < 1e-9);
}

TEST_CASE("anti-salkowski curvature solves the mirrored slant equation") {
    // sin(theta) = 1/sqrt(2) - c u with kappa = tan(theta), u from the anchor
    const ZooCurve zoo = generate(spec_for(ZooFamily::AntiSalkowski));
    const double c = zoo.spec.c;
    const std::size_t anchor = std::size_t(std::llround(0.25 * double(zoo.profile.grid.size() - 1)));
    const double s0 = zoo.profile.grid[anchor];
    double worst = 0.0;
    for (std::size_t i = 0; i < zoo.profile.grid.size(); ++i) {
        const double sth = 1.0 / std::sqrt(2.0) - c * (zoo.profile.grid[i] - s0);
        const double expect = sth / std::sqrt(1.0 - sth * sth);
        worst = std::max(worst, std::abs(zoo.profile.kappa.values[i] - expect));
    }
    CHECK(worst < 1e-8);
}

TEST_CASE("precession profile has Darboux speed mu/m") {
    for (auto [mu, m] : {std::pair{1.0, 1.0}, {2.0, 0.5}, {1.0, 2.0}}) {
        ZooSpec spec = spec_for(ZooFamily::ConstantPrecession);
        spec.mu = mu;
        spec.m = m;
        const ZooCurve zoo = generate(spec);
        double worst = 0.0;
        for (std::size_t i = 0; i < zoo.profile.grid.size(); ++i) {
            const double k = zoo.profile.kappa.values[i];
            const double t = zoo.profile.tau.values[i];
            worst = std::max(worst, std::abs(std::sqrt(k * k + t * t) - mu / m));
        }
        CAPTURE(mu);
        CAPTURE(m);
        CHECK(worst < 1e-9);
    }
}

TEST_CASE("designed fixtures hit their level constants through the recursion") {
    for (auto [k, c] : {std::pair{2, 0.4}, {3, 0.3}}) {
        ZooSpec spec = spec_for(ZooFamily::DesignedKSlant);
        spec.k = k;
        spec.c = c;
        spec.samples = 1001;
        const ZooCurve zoo = generate(spec);
        const auto profile = sigma_recursion(zoo.apparatus, k + 1);
        const auto st = level_stat(profile.sigmas[std::size_t(k)], k);
        CAPTURE(k);
        CHECK(std::abs(st.mean - c) < 1e-6);
        CHECK(st.dev < 1e-6);
        const auto next = level_stat(profile.sigmas[std::size_t(k) + 1], k + 1);
        CHECK(next.dev < 1e-4);
        CHECK(std::abs(next.mean) < 1e-4);
    }
}

TEST_CASE("spec validation rejects bad parameters") {
    ZooSpec bad = spec_for(ZooFamily::ConstantPrecession);
    bad.m = 0.0;
    CHECK_THROWS_AS(generate(bad), InvalidSpec);

    bad = spec_for(ZooFamily::Salkowski);
    bad.c = 0.0;
    CHECK_THROWS_AS(generate(bad), InvalidSpec);

    bad = spec_for(ZooFamily::DesignedKSlant);
    bad.k = 4;
    CHECK_THROWS_AS(generate(bad), InvalidSpec);

    bad = spec_for(ZooFamily::CircularHelix);
    bad.samples = 32;
    CHECK_THROWS_AS(generate(bad), InvalidSpec);

    bad = spec_for(ZooFamily::ConstantPrecession);
    bad.span_min = 0.0;  // rides onto the curvature zero
    bad.span_max = kPi;
    CHECK_THROWS_AS(generate(bad), InvalidSpec);
}

TEST_CASE("slant ODE blowup shrinks the span and reports it") {
    ZooSpec spec = spec_for(ZooFamily::Salkowski);
    spec.c = 0.9;
    spec.span_min = 0.0;
    spec.span_max = 4.0;  // the level-1 equation blows up near |u| = 1/c
    spec.samples = 801;
    const ZooCurve zoo = generate(spec);
    CHECK_FALSE(zoo.note.empty());
    CHECK(zoo.curve.grid.back() - zoo.curve.grid.front() < 4.0);
    double worst = 0.0;
    for (double t : zoo.profile.tau.values) worst = std::max(worst, std::abs(t));
    CHECK(worst < kSlantOdeCap);
}

TEST_CASE("quadric eigenvalues flag the precession hyperboloid") {
    for (auto [mu, m] : {std::pair{1.0, 1.0}, {2.0, 0.5}, {1.0, 2.0}}) {
        ZooSpec spec = spec_for(ZooFamily::ConstantPrecession);
        spec.mu = mu;
        spec.m = m;
        spec.samples = 1421;
        const ZooCurve zoo = generate(spec);
        const auto eig = quadric_eigenvalues(zoo.curve);
        CAPTURE(mu);
        CAPTURE(m);
        CHECK(eig[0] > 0.0);
        CHECK(eig[1] > 0.0);
        CHECK(eig[2] < 0.0);
        // the two positive eigenvalues agree (circular cross-section)
        CHECK(std::abs(eig[0] - eig[1]) / (0.5 * (eig[0] + eig[1])) < 0.01);
        CHECK(hyperboloid_check(zoo.curve, m) < 0.02);
    }
}

TEST_CASE("a circular helix fails the hyperboloid ratio") {
    const ZooCurve zoo = generate(spec_for(ZooFamily::CircularHelix));
    CHECK(hyperboloid_check(zoo.curve, 1.0) > 0.1);
}

TEST_CASE("a plane circle is too flat to fit a full quadric") {
    const ZooCurve zoo = generate(spec_for(ZooFamily::PlaneCircle));
    CHECK_THROWS_AS(quadric_eigenvalues(zoo.curve), FitDegenerate);
}

TEST_CASE("family names round-trip") {
    for (auto family : {ZooFamily::CircularHelix, ZooFamily::GeneralHelix, ZooFamily::Salkowski,
                        ZooFamily::AntiSalkowski, ZooFamily::ConstantPrecession,
                        ZooFamily::PlaneCircle, ZooFamily::DesignedKSlant})
        CHECK(family_from_string(to_string(family)) == family);
    CHECK_FALSE(family_from_string("klein-bottle").has_value());
}
