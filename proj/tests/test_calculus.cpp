#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "slantcurve/calculus.hpp"
#include "support.hpp"

using namespace slant;
using namespace slant::test;

TEST_CASE("derivative of a constant is zero") {
    const auto f = sample_function([](double) { return 3.25; }, 0.0, 1.0, 101);
    const auto d = derivative(f);
    CHECK(max_error(d, [](double) { return 0.0; }) < 1e-15);
}

TEST_CASE("derivative is exact on linear input") {
    const auto f = sample_function([](double s) { return s; }, 0.0, 1.0, 101);
    const auto d = derivative(f);
    CHECK(max_error(d, [](double) { return 1.0; }) < 1e-12);
}

TEST_CASE("derivative of sin matches cos to high order") {
    const auto f = sample_function([](double s) { return std::sin(s); }, 0.0, kPi, 3143);
    const auto d = derivative(f);
    CHECK(max_error(d, [](double s) { return std::cos(s); }) < 1e-10);
}

TEST_CASE("derivative rejects short or warped grids") {
    const auto f = sample_function([](double s) { return s; }, 0.0, 1.0, 4);
    CHECK_THROWS_AS(derivative(f), TooFewSamples);

    SampledFunction g = sample_function([](double s) { return s; }, 0.0, 1.0, 16);
    g.grid[7] += 1e-6;
    CHECK_THROWS_AS(derivative(g), NonUniformGrid);
}

TEST_CASE("derivative masks every sample whose stencil is contaminated") {
    auto f = sample_function([](double s) { return s * s; }, 0.0, 1.0, 64);
    f.mask[30] = 0;
    const auto d = derivative(f);
    for (std::size_t i = 28; i <= 32; ++i) CHECK_FALSE(d.valid(i));
    CHECK(d.valid(27));
    CHECK(d.valid(33));
    CHECK(d.valid(0));
    CHECK(d.valid(63));
}

TEST_CASE("derivative masks boundary samples when the one-sided stencil is hit") {
    auto f = sample_function([](double s) { return s; }, 0.0, 1.0, 32);
    f.mask[2] = 0;
    const auto d = derivative(f);
    CHECK_FALSE(d.valid(0));  // one-sided stencil uses samples 0..3
    CHECK_FALSE(d.valid(1));
    CHECK(d.valid(31));
}

TEST_CASE("derivative is linear") {
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> coef(-2.0, 2.0);
    const auto f = sample_function([](double s) { return std::sin(3.0 * s); }, 0.0, 2.0, 257);
    const auto g = sample_function([](double s) { return std::exp(-s) * s; }, 0.0, 2.0, 257);
    for (int trial = 0; trial < 8; ++trial) {
        const double a = coef(rng), b = coef(rng);
        SampledFunction combo = f;
        for (std::size_t i = 0; i < combo.size(); ++i)
            combo.values[i] = a * f.values[i] + b * g.values[i];
        const auto dc = derivative(combo);
        const auto df = derivative(f);
        const auto dg = derivative(g);
        double worst = 0.0;
        for (std::size_t i = 0; i < dc.size(); ++i)
            worst = std::max(worst, std::abs(dc.values[i] - (a * df.values[i] + b * dg.values[i])));
        CHECK(worst < 1e-11);
    }
}

TEST_CASE("integrate constant and empty ranges") {
    const auto f = sample_function([](double) { return 2.5; }, 0.0, 4.0, 401);
    CHECK(integrate(f, 0.0, 4.0) == doctest::Approx(10.0).epsilon(1e-12));
    CHECK(integrate(f, 1.0, 1.0) == 0.0);
    CHECK(integrate(f, 3.0, 1.0) == doctest::Approx(-5.0).epsilon(1e-12));
}

TEST_CASE("integrate sin over [0, pi]") {
    const auto f = sample_function([](double s) { return std::sin(s); }, 0.0, kPi, 3143);
    CHECK(std::abs(integrate(f, 0.0, kPi) - 2.0) < 1e-9);
}

TEST_CASE("integrate handles odd panel counts and off-node endpoints") {
    const auto f = sample_function([](double s) { return std::sin(s); }, 0.0, kPi, 3143);
    const double h = f.spacing();
    // odd number of covered panels
    const double upper = f.grid[3141];
    CHECK(std::abs(integrate(f, 0.0, upper) - (1.0 - std::cos(upper))) < 1e-9);
    // endpoints inside panels
    const double a = 0.37 * h + f.grid[10];
    const double b = f.grid[2000] + 0.61 * h;
    CHECK(std::abs(integrate(f, a, b) - (std::cos(a) - std::cos(b))) < 1e-7);
    // both endpoints inside one panel
    const double c = f.grid[50] + 0.2 * h;
    const double d = f.grid[50] + 0.9 * h;
    CHECK(std::abs(integrate(f, c, d) - (std::cos(c) - std::cos(d))) < 1e-9);
}

TEST_CASE("integrate range and mask errors") {
    auto f = sample_function([](double s) { return s; }, 0.0, 1.0, 101);
    CHECK_THROWS_AS(integrate(f, -0.5, 0.5), RangeOutOfGrid);
    CHECK_THROWS_AS(integrate(f, 0.5, 1.5), RangeOutOfGrid);
    f.mask[50] = 0;
    CHECK_THROWS_AS(integrate(f, 0.25, 0.75), MaskedRegion);
    CHECK(integrate(f, 0.0, 0.25) == doctest::Approx(0.03125).epsilon(1e-10));
}

TEST_CASE("cumulative integral of one is arc length") {
    const auto f = sample_function([](double) { return 1.0; }, 2.0, 7.0, 501);
    const auto g = cumulative_integral(f);
    CHECK(max_error(g, [](double s) { return s - 2.0; }) < 1e-12);
}

TEST_CASE("cumulative integral of constant curvature") {
    const auto f = sample_function([](double) { return 2.0; }, 0.0, 5.0, 501);
    const auto g = cumulative_integral(f);
    CHECK(g.values.back() == doctest::Approx(10.0).epsilon(1e-12));
    CHECK(g.values.front() == 0.0);
}

TEST_CASE("cumulative integral matches the analytic antiderivative") {
    const auto f = sample_function([](double s) { return std::sin(s); }, 0.1, 3.0, 2901);
    const auto g = cumulative_integral(f);
    CHECK(max_error(g, [](double s) { return std::cos(0.1) - std::cos(s); }) < 1e-9);
}

TEST_CASE("cumulative integral is strictly increasing for positive integrands") {
    const auto f = sample_function([](double s) { return 0.25 + std::pow(std::sin(3 * s), 2.0); },
                                   0.0, 4.0, 801);
    const auto g = cumulative_integral(f);
    for (std::size_t i = 0; i + 1 < g.size(); ++i) CHECK(g.values[i + 1] > g.values[i]);
}

TEST_CASE("cumulative integral covers the leading valid run only") {
    auto f = sample_function([](double) { return 1.0; }, 0.0, 1.0, 101);
    f.mask[60] = 0;
    const auto g = cumulative_integral(f);
    CHECK(g.valid(59));
    CHECK_FALSE(g.valid(60));
    CHECK_FALSE(g.valid(80));
    CHECK(g.values[59] == doctest::Approx(0.59).epsilon(1e-12));
}

TEST_CASE("derivative recovers the integrand of a cumulative integral") {
    for (auto fn : {+[](double s) { return std::sin(s); }, +[](double s) { return std::exp(-s); },
                    +[](double s) { return 1.0 / (1.0 + s * s); }}) {
        const auto f = sample_function(fn, 0.0, 2.0, 2001);
        const auto g = cumulative_integral(f);
        const auto d = derivative(g);
        CHECK(max_error(d, fn) < 1e-6);
    }
}

TEST_CASE("frame validation accepts orthonormal and rejects skewed frames") {
    Frame good{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}};
    CHECK(good.orthonormal(kFrameTolConstructed));
    CHECK_NOTHROW(validate_frame(good, kFrameTolConstructed));

    Frame skewed{{1, 0, 0}, {1e-3, 1, 0}, {0, 0, 1}};
    CHECK_FALSE(skewed.orthonormal(kFrameTolConstructed));
    CHECK_THROWS_AS(validate_frame(skewed, 1e-8), InvalidValue);

    Frame left{{1, 0, 0}, {0, 1, 0}, {0, 0, -1}};  // left-handed
    CHECK_FALSE(left.orthonormal(kFrameTolConstructed));
}

TEST_CASE("vector validation rejects non-finite components") {
    CHECK_THROWS_AS(checked_vector(0.0, std::nan(""), 0.0), InvalidValue);
    CHECK_NOTHROW(checked_vector(1.0, 2.0, 3.0));
    std::vector<double> grid = make_uniform_grid(0.0, 1.0, 8);
    std::vector<double> vals(8, 1.0);
    vals[3] = std::numeric_limits<double>::infinity();
    CHECK_THROWS_AS(make_sampled(grid, vals), InvalidValue);
    std::vector<std::uint8_t> mask(8, 1);
    mask[3] = 0;  // masked samples may hold anything
    CHECK_NOTHROW(make_sampled(grid, vals, mask));
}

TEST_CASE("grid factories enforce the uniform-grid contract") {
    auto g = make_uniform_grid(0.0, 1.0, 11);
    CHECK_NOTHROW(validate_grid(g));
    g[5] = g[4];  // not strictly increasing
    CHECK_THROWS_AS(validate_grid(g), NonUniformGrid);
}

TEST_CASE("not-a-knot spline reproduces cubics exactly and smooth data to high order") {
    auto x = make_uniform_grid(0.0, 2.0, 21);
    std::vector<double> y(x.size());
    for (std::size_t i = 0; i < x.size(); ++i)
        y[i] = 1.0 + x[i] * (0.5 + x[i] * (-2.0 + 0.75 * x[i]));
    CubicSpline cubic(x, y);
    for (double q : {0.013, 0.5, 0.777, 1.3, 1.99})
        CHECK(cubic.eval(q) ==
              doctest::Approx(1.0 + q * (0.5 + q * (-2.0 + 0.75 * q))).epsilon(1e-13));

    auto xs = make_uniform_grid(0.0, kPi, 501);
    std::vector<double> ys(xs.size());
    for (std::size_t i = 0; i < xs.size(); ++i) ys[i] = std::sin(xs[i]);
    CubicSpline sine(xs, ys);
    double worst = 0.0;
    for (double q = 0.0; q <= kPi; q += 0.00137)
        worst = std::max(worst, std::abs(sine.eval(q) - std::sin(q)));
    CHECK(worst < 1e-9);
}

TEST_CASE("monotone cubic interpolation does not overshoot") {
    std::vector<double> x{0, 1, 2, 3, 4, 5};
    std::vector<double> y{0, 0, 0, 1, 1, 1};  // plateau-step-plateau
    MonotoneCubic mc(x, y);
    for (double q = 0.0; q <= 5.0; q += 0.01) {
        CHECK(mc.eval(q) >= -1e-12);
        CHECK(mc.eval(q) <= 1.0 + 1e-12);
    }
    for (std::size_t i = 0; i < x.size(); ++i) CHECK(mc.eval(x[i]) == doctest::Approx(y[i]));
}
