#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "slantcurve/hierarchy.hpp"
#include "slantcurve/zoo.hpp"
#include "support.hpp"

using namespace slant;
using namespace slant::test;

namespace {

ZooCurve make_zoo(ZooFamily family, std::size_t samples = 0) {
    ZooSpec spec;
    spec.family = family;
    spec.samples = samples;
    return generate(spec);
}

ZooCurve make_designed(int k, double c, std::size_t samples = 1001) {
    ZooSpec spec;
    spec.family = ZooFamily::DesignedKSlant;
    spec.k = k;
    spec.c = c;
    spec.samples = samples;
    return generate(spec);
}

} // namespace

TEST_CASE("psi ladder starts with the position, tangent and normal fields") {
    const auto zoo = make_zoo(ZooFamily::CircularHelix);
    const auto ladder = psi_ladder(zoo.curve, zoo.apparatus, 2);
    REQUIRE(ladder.depth() == 3);
    for (std::size_t i = 0; i < zoo.curve.size(); i += 101) {
        CHECK((ladder.psis[0].vectors[i] - zoo.curve.points.vectors[i]).norm() == 0.0);
        CHECK((ladder.psis[1].vectors[i] - zoo.apparatus.frames[i].t).norm() == 0.0);
        if (ladder.psis[2].valid(i))
            CHECK((ladder.psis[2].vectors[i] - zoo.apparatus.frames[i].n).norm() < 1e-6);
    }
}

TEST_CASE("psi ladder of the helix reaches the constant-combination level") {
    const auto zoo = make_zoo(ZooFamily::CircularHelix);
    const auto ladder = psi_ladder(zoo.curve, zoo.apparatus, 2);
    const double rt2 = std::sqrt(2.0);
    for (std::size_t i = 12; i + 12 < zoo.curve.size(); i += 101) {
        if (!ladder.psis[3].valid(i)) continue;
        const Frame& fr = zoo.apparatus.frames[i];
        const Vector3 expected = (fr.t * -1.0 + fr.b) / rt2;  // f = 1
        CHECK((ladder.psis[3].vectors[i] - expected).norm() < 1e-6);
    }
}

TEST_CASE("psi ladder levels are unit and consecutive levels orthogonal") {
    const auto zoo = make_zoo(ZooFamily::ConstantPrecession);
    const auto ladder = psi_ladder(zoo.curve, zoo.apparatus, 3);
    for (int k = 1; k <= ladder.depth(); ++k) {
        const auto& cur = ladder.psis[std::size_t(k)];
        for (std::size_t i = 12; i + 12 < cur.size(); i += 37) {
            if (!cur.valid(i)) continue;
            CHECK(std::abs(cur.vectors[i].norm() - 1.0) < 1e-9);
            if (k >= 2 && ladder.psis[std::size_t(k) - 1].valid(i))
                CHECK(std::abs(cur.vectors[i].dot(ladder.psis[std::size_t(k) - 1].vectors[i])) <
                      1e-6);
        }
    }
}

TEST_CASE("psi ladder reports vanishing derivatives") {
    // a handcrafted apparatus whose tangent field barely moves
    const std::size_t n = 128;
    auto grid = make_uniform_grid(0.0, 1.0, n);
    ArcSampledCurve curve;
    curve.grid = grid;
    std::vector<Vector3> pts(n);
    for (std::size_t i = 0; i < n; ++i) pts[i] = {grid[i], 0.0, 0.0};
    curve.points = make_sampled_field(grid, pts);

    FrenetApparatus app;
    app.grid = grid;
    app.frames.assign(n, Frame{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}});
    app.kappa = make_sampled(grid, std::vector<double>(n, 0.0));
    app.tau = make_sampled(grid, std::vector<double>(n, 0.0));
    app.mask.assign(n, 1);
    CHECK_THROWS_AS(psi_ladder(curve, app, 1), VanishingDerivative);
}

TEST_CASE("sigma recursion of the circular helix") {
    const auto zoo = make_zoo(ZooFamily::CircularHelix);
    const auto profile = sigma_recursion(zoo.apparatus, 4);
    CHECK(max_error(profile.sigmas[0], [](double) { return 1.0; }) < 1e-12);
    for (int k = 1; k <= 4; ++k)
        CHECK(max_error(profile.sigmas[std::size_t(k)], [](double) { return 0.0; }) == 0.0);
}

TEST_CASE("sigma recursion of the constant-precession curve") {
    const auto zoo = make_zoo(ZooFamily::ConstantPrecession, 2843);
    const auto profile = sigma_recursion(zoo.apparatus, 3);
    CHECK(max_error(profile.sigmas[1], [](double) { return -1.0; }, 12) < 1e-4);
    CHECK(max_error(profile.sigmas[2], [](double) { return 0.0; }, 12) < 1e-4);
    CHECK(max_error(profile.sigmas[3], [](double) { return 0.0; }, 12) < 1e-3);
}

TEST_CASE("sigma recursion matches the slant functions exactly") {
    const auto zoo = make_zoo(ZooFamily::ConstantPrecession, 2843);
    const auto profile = sigma_recursion(zoo.apparatus, 3);
    const auto funcs = slant_functions(zoo.apparatus);
    const SampledFunction* named[] = {&funcs.f, &funcs.sigma, &funcs.gamma, &funcs.lambda_};
    for (int k = 0; k <= 3; ++k) {
        double worst = 0.0;
        for (std::size_t i = 0; i < profile.sigmas[std::size_t(k)].size(); ++i) {
            CHECK(profile.sigmas[std::size_t(k)].mask[i] == named[k]->mask[i]);
            if (named[k]->mask[i])
                worst = std::max(worst,
                                 std::abs(profile.sigmas[std::size_t(k)].values[i] - named[k]->values[i]));
        }
        CHECK(worst < 1e-10);
    }
}

TEST_CASE("sigma recursion of the Salkowski fixture") {
    const auto zoo = make_zoo(ZooFamily::Salkowski);
    const auto profile = sigma_recursion(zoo.apparatus, 2);
    CHECK(max_error(profile.sigmas[1], [](double) { return 0.5; }, 12) < 1e-4);
    CHECK(max_error(profile.sigmas[2], [](double) { return 0.0; }, 12) < 1e-4);
}

TEST_CASE("ladder Frenet data obeys tau_k = sigma_k kappa_k with kappa_k >= 1") {
    const auto zoo = make_zoo(ZooFamily::ConstantPrecession);
    const auto profile = sigma_recursion(zoo.apparatus, 3);
    for (int k = 1; k <= 3; ++k) {
        const auto& sig = profile.sigmas[std::size_t(k)];
        const auto& kap = profile.kappas[std::size_t(k)];
        const auto& tau = profile.taus[std::size_t(k)];
        for (std::size_t i = 0; i < sig.size(); i += 29) {
            if (!tau.mask[i] || !sig.mask[i]) continue;
            CHECK(kap.values[i] >= 1.0);
            CHECK(std::abs(tau.values[i] / kap.values[i] - sig.values[i]) < 1e-12);
        }
    }
}

TEST_CASE("natural parameters increase strictly") {
    const auto zoo = make_zoo(ZooFamily::ConstantPrecession);
    const auto profile = sigma_recursion(zoo.apparatus, 3);
    for (int k = 0; k <= 3; ++k) {
        const auto& s = profile.natural_params[std::size_t(k)];
        for (std::size_t i = 0; i + 1 < s.size(); ++i)
            if (s.mask[i] && s.mask[i + 1]) CHECK(s.values[i + 1] > s.values[i]);
    }
}

TEST_CASE("sigma_k matches the oracle ratio of the level-k spherical image") {
    // tau_k/kappa_k of the image equals sigma_k; the oracle measures the image
    // with no closed forms anywhere
    const auto zoo = make_zoo(ZooFamily::ConstantPrecession, 2843);
    const auto funcs = slant_functions(zoo.apparatus);
    const auto profile = sigma_recursion(zoo.apparatus, 3);
    struct Case {
        IndicatrixKind kind;
        int k;
    } cases[] = {{IndicatrixKind::Tangent, 1}, {IndicatrixKind::Normal, 2}, {IndicatrixKind::Psi3, 3}};
    for (const auto& c : cases) {
        const auto cmp = compare_with_oracle(zoo.apparatus, funcs, c.kind);
        CAPTURE(c.k);
        CHECK(cmp.compared > 1000);
        CHECK(cmp.max_ratio_dev < 1e-3);
    }
}

TEST_CASE("classify the circular helix at level zero") {
    const auto zoo = make_zoo(ZooFamily::CircularHelix);
    const auto profile = sigma_recursion(zoo.apparatus, 3);
    const auto rep = classify(zoo.curve, zoo.apparatus, profile, 1e-6);
    REQUIRE(rep.k_star.has_value());
    CHECK(*rep.k_star == 0);
    CHECK(rep.cot_phi == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(rep.phi == doctest::Approx(kPi / 4.0).epsilon(1e-9));
    REQUIRE(rep.axis.has_value());
    CHECK(angle_between(*rep.axis, Vector3{0, 0, 1}) < 1e-6);
    CHECK(rep.residual_axis < 1e-6);
}

TEST_CASE("classify the precession curve at level one") {
    const auto zoo = make_zoo(ZooFamily::ConstantPrecession);
    const auto profile = sigma_recursion(zoo.apparatus, 3);
    const auto rep = classify(zoo.curve, zoo.apparatus, profile, kDefaultConstTol);
    REQUIRE(rep.k_star.has_value());
    CHECK(*rep.k_star == 1);
    CHECK(rep.cot_phi == doctest::Approx(-1.0).epsilon(1e-5));
    CHECK(rep.phi == doctest::Approx(3.0 * kPi / 4.0).epsilon(1e-5));
}

TEST_CASE("classify designed fixtures at their levels") {
    const auto two = make_designed(2, 0.4);
    const auto p2 = sigma_recursion(two.apparatus, 4);
    const auto rep2 = classify(two.curve, two.apparatus, p2, kDefaultConstTol);
    REQUIRE(rep2.k_star.has_value());
    CHECK(*rep2.k_star == 2);
    CHECK(rep2.cot_phi == doctest::Approx(0.4).epsilon(1e-4));

    const auto three = make_designed(3, 0.3);
    const auto p3 = sigma_recursion(three.apparatus, 4);
    const auto rep3 = classify(three.curve, three.apparatus, p3, kDefaultConstTol);
    REQUIRE(rep3.k_star.has_value());
    CHECK(*rep3.k_star == 3);
    CHECK(rep3.cot_phi == doctest::Approx(0.3).epsilon(1e-4));
}

TEST_CASE("classification reports no level when none is constant") {
    const auto zoo = make_zoo(ZooFamily::ConstantPrecession);
    const auto profile = sigma_recursion(zoo.apparatus, 0);  // only sigma_0, which varies
    const auto rep = classify(profile, kDefaultConstTol);
    CHECK_FALSE(rep.k_star.has_value());
    CHECK(rep.per_k.size() == 1);
    CHECK(rep.per_k[0].dev > kDefaultConstTol);
}

TEST_CASE("classify rejects an empty profile") {
    SlantProfile empty;
    CHECK_THROWS_AS(classify(empty, 1e-5), EmptyProfile);
}

TEST_CASE("sigma recursion rejects an apparatus masked everywhere") {
    const auto zoo = make_zoo(ZooFamily::CircularHelix);
    FrenetApparatus dead = zoo.apparatus;
    std::fill(dead.mask.begin(), dead.mask.end(), 0);
    std::fill(dead.kappa.mask.begin(), dead.kappa.mask.end(), 0);
    std::fill(dead.tau.mask.begin(), dead.tau.mask.end(), 0);
    CHECK_THROWS_AS(sigma_recursion(dead, 2), DegenerateCurve);
}

TEST_CASE("axis field reports a degenerate cross product") {
    // handcrafted ladder whose consecutive levels are parallel
    const std::size_t n = 64;
    const auto grid = make_uniform_grid(0.0, 1.0, n);
    SampledVectorField constant;
    constant.grid = grid;
    constant.vectors.assign(n, Vector3{1, 0, 0});
    constant.mask.assign(n, 1);
    PsiLadder ladder;
    ladder.psis = {constant, constant, constant};
    SlantProfile profile;
    CHECK_THROWS_AS(axis_field(ladder, profile, 0, kPi / 4.0), CrossProductDegenerate);
}

TEST_CASE("axis field of the helix recovers the z axis at every sample") {
    const auto zoo = make_zoo(ZooFamily::CircularHelix);
    const auto profile = sigma_recursion(zoo.apparatus, 2);
    const auto ladder = psi_ladder(zoo.curve, zoo.apparatus, 1);
    const auto axis = axis_field(ladder, profile, 0, kPi / 4.0);
    const Vector3 d = mean_direction(axis);
    CHECK(angle_between(d, Vector3{0, 0, 1}) < 1e-6);
    CHECK(direction_wobble(axis, d) < 1e-6);
    // sign continuity of the constructed binormal direction
    for (std::size_t i = 12; i + 13 < axis.size(); ++i)
        if (axis.valid(i) && axis.valid(i + 1)) CHECK(axis.vectors[i].dot(axis.vectors[i + 1]) > 0.0);
}

TEST_CASE("general helix tangents keep the design angle with the axis") {
    const auto zoo = make_zoo(ZooFamily::GeneralHelix);  // phi = pi/3
    const auto profile = sigma_recursion(zoo.apparatus, 2);
    const auto ladder = psi_ladder(zoo.curve, zoo.apparatus, 1);
    const auto axis = axis_field(ladder, profile, 0, kPi / 3.0);
    const Vector3 d = mean_direction(axis);
    double worst = 0.0;
    for (std::size_t i = 12; i + 12 < zoo.curve.size(); ++i)
        worst = std::max(worst,
                         std::abs(zoo.apparatus.frames[i].t.dot(d) - std::cos(kPi / 3.0)));
    CHECK(worst < 1e-6);
    CHECK(angle_between(d, *zoo.truth.axis) < 1e-6);
}

TEST_CASE("precession normals keep a constant angle with the recovered axis") {
    const auto zoo = make_zoo(ZooFamily::ConstantPrecession);
    const auto profile = sigma_recursion(zoo.apparatus, 2);
    const auto ladder = psi_ladder(zoo.curve, zoo.apparatus, 2);
    const double phi = std::atan2(1.0, -1.0);  // arccot(-1)
    const auto axis = axis_field(ladder, profile, 1, phi);
    const Vector3 d = mean_direction(axis);
    CHECK(constant_angle_residual(zoo.apparatus.normal_field(), d) < 1e-4);
}

TEST_CASE("constant fields have zero residual") {
    const auto field = sample_field([](double) { return Vector3{0, 0, 1}; }, 0.0, 1.0, 128);
    CHECK(constant_angle_residual(field, Vector3{1, 0, 0}) == 0.0);
    CHECK(constant_angle_residual(field, Vector3{0, 0, 1}) == 0.0);
}

TEST_CASE("helix binormals make a constant angle with the axis") {
    const auto zoo = make_zoo(ZooFamily::CircularHelix);
    CHECK(constant_angle_residual(zoo.apparatus.binormal_field(), Vector3{0, 0, 1}) < 1e-6);
}

TEST_CASE("hierarchy nesting: a constant level forces the next level to vanish") {
    for (auto family : {ZooFamily::CircularHelix, ZooFamily::Salkowski, ZooFamily::ConstantPrecession}) {
        const auto zoo = make_zoo(family);
        const auto profile = sigma_recursion(zoo.apparatus, zoo.truth.k_star + 1);
        const auto st = level_stat(profile.sigmas[std::size_t(zoo.truth.k_star) + 1],
                                   zoo.truth.k_star + 1);
        CAPTURE(to_string(family));
        CHECK(std::abs(st.mean) < 1e-4);
        CHECK(st.dev < 1e-4);
    }
}

TEST_CASE("random designed fixtures classify at their designed level and constant") {
    std::mt19937 rng(5);
    std::uniform_real_distribution<double> constant(0.2, 0.55);
    for (int trial = 0; trial < 4; ++trial) {
        const int k = 2 + (trial % 2);
        const double c = constant(rng) * (trial >= 2 ? -1.0 : 1.0);
        CAPTURE(k);
        CAPTURE(c);
        ZooSpec spec;
        spec.family = ZooFamily::DesignedKSlant;
        spec.k = k;
        spec.c = c;
        spec.samples = 1001;
        const ZooCurve zoo = generate(spec);
        const auto profile = sigma_recursion(zoo.apparatus, k + 1);
        const auto rep = classify(zoo.curve, zoo.apparatus, profile, kDefaultConstTol);
        REQUIRE(rep.k_star.has_value());
        CHECK(*rep.k_star == k);
        CHECK(rep.cot_phi == doctest::Approx(c).epsilon(1e-4));
        // the recovered axis makes the recovered angle with psi_{k+1}
        REQUIRE(rep.axis.has_value());
        const auto ladder = psi_ladder(zoo.curve, zoo.apparatus, k + 1);
        CHECK(constant_angle_residual(ladder.psis[std::size_t(k) + 1], *rep.axis) < 1e-4);
    }
}

TEST_CASE("analysis continues around an isolated curvature zero") {
    // curvature touches zero mid-span; the singular samples mask out and the
    // ladder keeps working on the runs around them
    const auto profile = make_profile(
        [](double s) { return 0.6 * (s - 2.0) * (s - 2.0); },
        [](double) { return 0.3; }, 0.0, 4.0, 2001);
    const auto [curve, app] = curve_from_intrinsic(profile, identity_frame(), Vector3{});

    std::size_t masked = 0;
    for (std::size_t i = 0; i < app.size(); ++i) masked += !app.mask[i];
    CHECK(masked > 0);
    CHECK(masked < 40);  // isolated, not a dead zone
    CHECK_FALSE(app.mask[1000]);  // the zero itself

    const auto prof = sigma_recursion(app, 1);
    // f = tau/kappa is huge but finite next to the hole and valid elsewhere
    CHECK(prof.sigmas[0].valid_count() > app.size() - 60);
    const auto d = derivative(prof.sigmas[0]);
    // stencils touching the hole mask out instead of throwing
    CHECK_FALSE(d.valid(1000));
    std::size_t valid_near = 0;
    for (std::size_t i = 900; i < 950; ++i) valid_near += d.valid(i);
    CHECK(valid_near == 50);
}

TEST_CASE("ladder guards reject unsupported depths") {
    const auto zoo = make_zoo(ZooFamily::CircularHelix);
    CHECK_THROWS_AS(sigma_recursion(zoo.apparatus, kMaxLadderDepth + 1), InvalidValue);
    CHECK_THROWS_AS(psi_ladder(zoo.curve, zoo.apparatus, kMaxLadderDepth + 2), InvalidValue);
}
