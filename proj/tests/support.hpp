#pragma once

#include <cmath>
#include <functional>
#include <vector>

#include "slantcurve/frenet.hpp"
#include "slantcurve/zoo.hpp"

namespace slant::test {

inline constexpr double kPi = 3.14159265358979323846;

inline SampledFunction sample_function(const std::function<double(double)>& fn, double s0, double s1,
                                       std::size_t n) {
    auto grid = make_uniform_grid(s0, s1, n);
    std::vector<double> v(n);
    for (std::size_t i = 0; i < n; ++i) v[i] = fn(grid[i]);
    return make_sampled(std::move(grid), std::move(v));
}

inline SampledVectorField sample_field(const std::function<Vector3(double)>& fn, double s0,
                                       double s1, std::size_t n) {
    auto grid = make_uniform_grid(s0, s1, n);
    std::vector<Vector3> v(n);
    for (std::size_t i = 0; i < n; ++i) v[i] = fn(grid[i]);
    return make_sampled_field(std::move(grid), std::move(v));
}

/// Unit-speed circular helix through the origin frame; kappa = a/(a^2+b^2),
/// tau = b/(a^2+b^2), axis +z.
inline SampledVectorField helix_points(double a, double b, double s0, double s1, std::size_t n) {
    const double w = 1.0 / std::sqrt(a * a + b * b);
    return sample_field(
        [=](double s) {
            return Vector3{a * std::cos(w * s), a * std::sin(w * s), b * w * s};
        },
        s0, s1, n);
}

inline IntrinsicProfile make_profile(const std::function<double(double)>& kappa,
                                     const std::function<double(double)>& tau, double s0, double s1,
                                     std::size_t n) {
    IntrinsicProfile p;
    p.grid = make_uniform_grid(s0, s1, n);
    p.kappa = sample_function(kappa, s0, s1, n);
    p.tau = sample_function(tau, s0, s1, n);
    return p;
}

inline Frame identity_frame() { return Frame{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}; }

/// Max |values - ref(grid)| over valid samples, optionally edge-trimmed.
inline double max_error(const SampledFunction& f, const std::function<double(double)>& ref,
                        std::size_t trim = 0) {
    double worst = 0.0;
    for (std::size_t i = trim; i + trim < f.size(); ++i)
        if (f.valid(i)) worst = std::max(worst, std::abs(f.values[i] - ref(f.grid[i])));
    return worst;
}

} // namespace slant::test
