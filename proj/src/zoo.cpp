/*
*   Copyright 2026 the slantcurve authors
*
*   Licensed under the Apache License, Version 2.0 (the "License");
*   you may not use this file except in compliance with the License.
*   You may obtain a copy of the License at
*
*       http://www.apache.org/licenses/LICENSE-2.0
*
*   Unless required by applicable law or agreed to in writing, software
*   distributed under the License is distributed on an "AS IS" BASIS,
*   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
*   See the License for the specific language governing permissions and
*   limitations under the License.
*/
#include "slantcurve/zoo.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <functional>
#include <sstream>

namespace slant {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kPrecessionMargin = 0.15;  // kept clear of the kappa zeros, scaled by 1/mu

const Frame kIdentityFrame{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}};

} // namespace

std::string to_string(ZooFamily family) {
    switch (family) {
        case ZooFamily::CircularHelix: return "circular-helix";
        case ZooFamily::GeneralHelix: return "general-helix";
        case ZooFamily::Salkowski: return "salkowski";
        case ZooFamily::AntiSalkowski: return "anti-salkowski";
        case ZooFamily::ConstantPrecession: return "constant-precession";
        case ZooFamily::PlaneCircle: return "plane-circle";
        case ZooFamily::DesignedKSlant: return "designed-k-slant";
    }
    return "?";
}

std::optional<ZooFamily> family_from_string(const std::string& name) {
    for (ZooFamily f : {ZooFamily::CircularHelix, ZooFamily::GeneralHelix, ZooFamily::Salkowski,
                        ZooFamily::AntiSalkowski, ZooFamily::ConstantPrecession,
                        ZooFamily::PlaneCircle, ZooFamily::DesignedKSlant})
        if (to_string(f) == name) return f;
    return std::nullopt;
}

ZooSpec with_defaults(ZooSpec spec) {
    // sample counts tuned so the classifier resolves the family's level from
    // points alone: re-differentiation amplifies rounding noise by one 1/h
    // factor per ladder level, so the deeper families want coarser grids
    const bool no_span = !(spec.span_max > spec.span_min);
    switch (spec.family) {
        case ZooFamily::CircularHelix:
            if (no_span) { spec.span_min = 0.0; spec.span_max = 20.0; }
            if (!spec.samples) spec.samples = 4001;
            break;
        case ZooFamily::GeneralHelix:
            if (no_span) { spec.span_min = 0.0; spec.span_max = 12.0; }
            if (!spec.samples) spec.samples = 2401;
            break;
        case ZooFamily::Salkowski:
            if (no_span) { spec.span_min = 0.0; spec.span_max = 3.0; }
            if (!spec.samples) spec.samples = 301;
            break;
        case ZooFamily::AntiSalkowski:
            if (no_span) { spec.span_min = 0.0; spec.span_max = 1.6; }
            if (!spec.samples) spec.samples = 161;
            break;
        case ZooFamily::ConstantPrecession:
            if (no_span) {
                spec.span_min = kPrecessionMargin / spec.mu;
                spec.span_max = (kPi - kPrecessionMargin) / spec.mu;
            }
            if (!spec.samples) spec.samples = 285;
            break;
        case ZooFamily::PlaneCircle:
            if (no_span) { spec.span_min = 0.0; spec.span_max = 2.0 * kPi * spec.r; }
            if (!spec.samples) spec.samples = 1257;
            break;
        case ZooFamily::DesignedKSlant:
            if (no_span) { spec.span_min = -1.0; spec.span_max = 1.0; }
            if (!spec.samples) spec.samples = spec.k >= 3 ? 101 : 201;
            break;
    }
    return spec;
}

namespace {

void validate_spec(const ZooSpec& spec) {
    if (!(spec.span_max > spec.span_min)) throw InvalidSpec("span is degenerate");
    if (spec.samples < 64) throw InvalidSpec("need at least 64 samples");
    switch (spec.family) {
        case ZooFamily::CircularHelix:
            if (!(spec.a > 0.0)) throw InvalidSpec("helix radius must be positive");
            break;
        case ZooFamily::GeneralHelix:
            if (!(spec.phi > 0.0 && spec.phi < kPi) || spec.phi == kPi / 2.0)
                throw InvalidSpec("general helix needs phi in (0, pi) with nonzero cot");
            break;
        case ZooFamily::Salkowski:
        case ZooFamily::AntiSalkowski:
            if (spec.c == 0.0) throw InvalidSpec("slant constant c must be nonzero");
            break;
        case ZooFamily::ConstantPrecession: {
            if (spec.mu <= 0.0 || spec.m <= 0.0) throw InvalidSpec("mu and m must be positive");
            const double lo = kPrecessionMargin / spec.mu;
            const double hi = (kPi - kPrecessionMargin) / spec.mu;
            if (spec.span_min < lo - 1e-12 || spec.span_max > hi + 1e-12)
                throw InvalidSpec("precession span must keep clear of the curvature zeros");
            break;
        }
        case ZooFamily::PlaneCircle:
            if (!(spec.r > 0.0)) throw InvalidSpec("circle radius must be positive");
            break;
        case ZooFamily::DesignedKSlant:
            if (spec.k < 2 || spec.k > 3) throw InvalidSpec("designed fixtures support k = 2 or 3");
            if (spec.c == 0.0) throw InvalidSpec("slant constant c must be nonzero");
            break;
    }
}

ArcSampledCurve analytic_curve(const ZooSpec& spec) {
    const std::vector<double> s = make_uniform_grid(spec.span_min, spec.span_max, spec.samples);
    std::vector<Vector3> p(s.size());
    if (spec.family == ZooFamily::CircularHelix) {
        const double w = 1.0 / std::sqrt(spec.a * spec.a + spec.b * spec.b);
        for (std::size_t i = 0; i < s.size(); ++i)
            p[i] = {spec.a * std::cos(w * s[i]), spec.a * std::sin(w * s[i]), spec.b * w * s[i]};
    } else {
        for (std::size_t i = 0; i < s.size(); ++i)
            p[i] = {spec.r * std::cos(s[i] / spec.r), spec.r * std::sin(s[i] / spec.r), 0.0};
    }
    return reparameterize(make_sampled_field(s, std::move(p)));
}

/// Closed-form frames for the two analytic families, so their fixtures carry
/// machine-exact apparatus data just like the integrated ones.
FrenetApparatus analytic_apparatus(const ZooSpec& spec, const ArcSampledCurve& curve,
                                   const std::vector<double>& kappa, const std::vector<double>& tau) {
    const std::size_t n = curve.size();
    FrenetApparatus app;
    app.grid = curve.grid;
    app.frames.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        // the arc grid restarts at zero; the generating parameter does not
        const double s = spec.span_min + curve.grid[i];
        if (spec.family == ZooFamily::CircularHelix) {
            const double w = 1.0 / std::sqrt(spec.a * spec.a + spec.b * spec.b);
            const double c = std::cos(w * s), q = std::sin(w * s);
            app.frames[i].t = {-spec.a * w * q, spec.a * w * c, spec.b * w};
            app.frames[i].n = {-c, -q, 0.0};
            app.frames[i].b = {spec.b * w * q, -spec.b * w * c, spec.a * w};
        } else {
            const double c = std::cos(s / spec.r), q = std::sin(s / spec.r);
            app.frames[i].t = {-q, c, 0.0};
            app.frames[i].n = {-c, -q, 0.0};
            app.frames[i].b = {0.0, 0.0, 1.0};
        }
    }
    std::vector<std::uint8_t> mask(n, 1);
    app.kappa = SampledFunction{curve.grid, kappa, mask};
    app.tau = SampledFunction{curve.grid, tau, mask};
    app.mask = std::move(mask);
    return app;
}

/// RK4 for a small autonomous system, from an interior anchor outward in both
/// directions. Returns the index range that stayed inside the guard.
template <int Dim>
std::pair<std::size_t, std::size_t> integrate_ladder(
    std::vector<std::array<double, Dim>>& y, std::size_t anchor, double h,
    const std::function<std::array<double, Dim>(const std::array<double, Dim>&)>& rhs,
    const std::function<bool(const std::array<double, Dim>&)>& ok) {
    const std::size_t n = y.size();
    auto step = [&](std::array<double, Dim> v, double hh) {
        auto add = [](std::array<double, Dim> a, const std::array<double, Dim>& b, double w) {
            for (int j = 0; j < Dim; ++j) a[j] += w * b[j];
            return a;
        };
        const auto k1 = rhs(v);
        const auto k2 = rhs(add(v, k1, 0.5 * hh));
        const auto k3 = rhs(add(v, k2, 0.5 * hh));
        const auto k4 = rhs(add(v, k3, hh));
        for (int j = 0; j < Dim; ++j) v[j] += hh / 6.0 * (k1[j] + 2.0 * k2[j] + 2.0 * k3[j] + k4[j]);
        return v;
    };
    std::size_t lo = anchor, hi = anchor;
    for (std::size_t i = anchor; i + 1 < n; ++i) {
        const auto next = step(y[i], h);
        if (!ok(next)) break;
        y[i + 1] = next;
        hi = i + 1;
    }
    for (std::size_t i = anchor; i > 0; --i) {
        const auto next = step(y[i], -h);
        if (!ok(next)) break;
        y[i - 1] = next;
        lo = i - 1;
    }
    return {lo, hi};
}

} // namespace

ZooCurve generate(const ZooSpec& raw) {
    const ZooSpec spec = with_defaults(raw);
    validate_spec(spec);

    ZooCurve out;
    out.spec = spec;

    const std::size_t n = spec.samples;
    std::vector<double> grid = make_uniform_grid(spec.span_min, spec.span_max, n);
    const double h = (spec.span_max - spec.span_min) / double(n - 1);

    std::vector<double> kappa(n), tau(n);
    bool intrinsic = true;

    switch (spec.family) {
        case ZooFamily::CircularHelix: {
            const double w2 = 1.0 / (spec.a * spec.a + spec.b * spec.b);
            std::fill(kappa.begin(), kappa.end(), spec.a * w2);
            std::fill(tau.begin(), tau.end(), spec.b * w2);
            intrinsic = false;
            out.truth.k_star = 0;
            out.truth.cot_phi = spec.b / spec.a;
            out.truth.sigma_constants = {{0, spec.b / spec.a}, {1, 0.0}};
            out.truth.axis = Vector3{0.0, 0.0, 1.0};
            break;
        }
        case ZooFamily::PlaneCircle: {
            std::fill(kappa.begin(), kappa.end(), 1.0 / spec.r);
            std::fill(tau.begin(), tau.end(), 0.0);
            intrinsic = false;
            out.truth.k_star = 0;
            out.truth.cot_phi = 0.0;
            out.truth.sigma_constants = {{0, 0.0}, {1, 0.0}};
            out.truth.axis = Vector3{0.0, 0.0, 1.0};
            break;
        }
        case ZooFamily::GeneralHelix: {
            const double cot = std::cos(spec.phi) / std::sin(spec.phi);
            for (std::size_t i = 0; i < n; ++i) {
                kappa[i] = 1.0 + 0.3 * std::sin(grid[i]);
                tau[i] = cot * kappa[i];
            }
            out.truth.k_star = 0;
            out.truth.cot_phi = cot;
            out.truth.sigma_constants = {{0, cot}, {1, 0.0}};
            out.truth.axis = Vector3{std::cos(spec.phi), 0.0, std::sin(spec.phi)};
            break;
        }
        case ZooFamily::ConstantPrecession: {
            for (std::size_t i = 0; i < n; ++i) {
                kappa[i] = spec.mu / spec.m * std::sin(spec.mu * grid[i]);
                tau[i] = spec.mu / spec.m * std::cos(spec.mu * grid[i]);
            }
            out.truth.k_star = 1;
            out.truth.cot_phi = -spec.m;
            out.truth.sigma_constants = {{1, -spec.m}, {2, 0.0}};
            break;
        }
        case ZooFamily::Salkowski: {
            // tau/kappa solves f' = c (1+f^2)^{3/2} with kappa = 1, f = 0 at midspan
            std::vector<std::array<double, 1>> y(n, {0.0});
            const std::size_t anchor = n / 2;
            auto [lo, hi] = integrate_ladder<1>(
                y, anchor, h,
                [&](const std::array<double, 1>& v) {
                    return std::array<double, 1>{spec.c * std::pow(1.0 + v[0] * v[0], 1.5)};
                },
                [](const std::array<double, 1>& v) { return std::abs(v[0]) < kSlantOdeCap; });
            if (hi - lo + 1 < 64) throw OdeBlowUp("slant ladder leaves the cap almost immediately");
            if (lo != 0 || hi != n - 1) {
                std::ostringstream msg;
                msg << "span shrunk to [" << grid[lo] << ", " << grid[hi] << "] to keep |tau/kappa| bounded";
                out.note = msg.str();
                grid = std::vector<double>(grid.begin() + long(lo), grid.begin() + long(hi) + 1);
                y.erase(y.begin() + long(hi) + 1, y.end());
                y.erase(y.begin(), y.begin() + long(lo));
            }
            kappa.assign(grid.size(), 1.0);
            tau.resize(grid.size());
            for (std::size_t i = 0; i < grid.size(); ++i) tau[i] = y[i][0];
            out.truth.k_star = 1;
            out.truth.cot_phi = spec.c;
            out.truth.sigma_constants = {{1, spec.c}, {2, 0.0}};
            break;
        }
        case ZooFamily::AntiSalkowski: {
            // kappa solves kappa' = -c (1+kappa^2)^{3/2} with tau = 1 and
            // kappa = 1 a quarter of the way in
            std::vector<std::array<double, 1>> y(n, {1.0});
            const std::size_t anchor = std::size_t(std::llround(0.25 * double(n - 1)));
            auto [lo, hi] = integrate_ladder<1>(
                y, anchor, h,
                [&](const std::array<double, 1>& v) {
                    return std::array<double, 1>{-spec.c * std::pow(1.0 + v[0] * v[0], 1.5)};
                },
                [](const std::array<double, 1>& v) {
                    return v[0] > 1.0 / kSlantOdeCap && v[0] < kSlantOdeCap;
                });
            if (hi - lo + 1 < 64) throw OdeBlowUp("curvature leaves its usable range almost immediately");
            if (lo != 0 || hi != n - 1) {
                std::ostringstream msg;
                msg << "span shrunk to [" << grid[lo] << ", " << grid[hi] << "] to keep curvature usable";
                out.note = msg.str();
                grid = std::vector<double>(grid.begin() + long(lo), grid.begin() + long(hi) + 1);
                y.erase(y.begin() + long(hi) + 1, y.end());
                y.erase(y.begin(), y.begin() + long(lo));
            }
            kappa.resize(grid.size());
            tau.assign(grid.size(), 1.0);
            for (std::size_t i = 0; i < grid.size(); ++i) kappa[i] = y[i][0];
            out.truth.k_star = 1;
            out.truth.cot_phi = spec.c;
            out.truth.sigma_constants = {{1, spec.c}, {2, 0.0}};
            break;
        }
        case ZooFamily::DesignedKSlant: {
            // ladder levels 0..k-1 from the recursion ODEs with level k pinned
            // to c, all starting at zero midspan; kappa = 1 makes tau = sigma_0
            auto rhs_ladder = [&](const auto& v, int kdes) {
                std::array<double, 3> dv{};
                for (int j = 0; j < kdes; ++j) {
                    const double next = j + 1 < kdes ? v[std::size_t(j) + 1] : spec.c;
                    double prod = 1.0;
                    for (int l = 0; l < j; ++l) prod *= std::sqrt(1.0 + v[std::size_t(l)] * v[std::size_t(l)]);
                    dv[std::size_t(j)] = next * prod * std::pow(1.0 + v[std::size_t(j)] * v[std::size_t(j)], 1.5);
                }
                return dv;
            };
            std::vector<std::array<double, 3>> y(n, {0.0, 0.0, 0.0});
            const std::size_t anchor = n / 2;
            auto [lo, hi] = integrate_ladder<3>(
                y, anchor, h,
                [&](const std::array<double, 3>& v) { return rhs_ladder(v, spec.k); },
                [](const std::array<double, 3>& v) {
                    return std::abs(v[0]) < kSlantOdeCap && std::abs(v[1]) < kSlantOdeCap &&
                           std::abs(v[2]) < kSlantOdeCap;
                });
            if (hi - lo + 1 < 64) throw OdeBlowUp("slant ladder leaves the cap almost immediately");
            if (lo != 0 || hi != n - 1) {
                std::ostringstream msg;
                msg << "span shrunk to [" << grid[lo] << ", " << grid[hi] << "] to keep the ladder bounded";
                out.note = msg.str();
                grid = std::vector<double>(grid.begin() + long(lo), grid.begin() + long(hi) + 1);
                y.erase(y.begin() + long(hi) + 1, y.end());
                y.erase(y.begin(), y.begin() + long(lo));
            }
            kappa.assign(grid.size(), 1.0);
            tau.resize(grid.size());
            for (std::size_t i = 0; i < grid.size(); ++i) tau[i] = y[i][0];
            out.truth.k_star = spec.k;
            out.truth.cot_phi = spec.c;
            out.truth.sigma_constants = {{spec.k, spec.c}, {spec.k + 1, 0.0}};
            break;
        }
    }

    if (grid.size() != kappa.size() || grid.size() != tau.size()) {
        kappa.resize(grid.size());
        tau.resize(grid.size());
    }

    if (intrinsic) {
        out.profile.grid = grid;
        out.profile.kappa = make_sampled(grid, kappa);
        out.profile.tau = make_sampled(grid, tau);
        auto [curve, app] = curve_from_intrinsic(out.profile, kIdentityFrame, Vector3{});
        out.curve = std::move(curve);
        out.apparatus = std::move(app);
    } else {
        out.curve = analytic_curve(spec);
        // arc length restarts at zero after re-parameterization
        out.profile.grid = out.curve.grid;
        out.profile.kappa = make_sampled(out.curve.grid, kappa);
        out.profile.tau = make_sampled(out.curve.grid, tau);
        out.apparatus = analytic_apparatus(spec, out.curve, kappa, tau);
    }
    return out;
}

std::array<double, 3> quadric_eigenvalues(const ArcSampledCurve& curve) {
    const std::size_t n = curve.size();
    if (n < 10) throw TooFewSamples("quadric fit needs at least 10 points");

    Eigen::MatrixXd pts(n, 3);
    for (std::size_t i = 0; i < n; ++i) {
        pts(long(i), 0) = curve.points.vectors[i].x;
        pts(long(i), 1) = curve.points.vectors[i].y;
        pts(long(i), 2) = curve.points.vectors[i].z;
    }
    const Eigen::RowVector3d mean = pts.colwise().mean();
    pts.rowwise() -= mean;
    const double scale = std::sqrt(pts.squaredNorm() / double(n));
    if (!(scale > 0.0)) throw FitDegenerate("point set collapses to a point");
    pts /= scale;

    // dimensionality check on the centered cloud
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> cov(pts.transpose() * pts / double(n));
    if (cov.eigenvalues()(0) < 1e-10 * cov.eigenvalues()(2))
        throw FitDegenerate("point set spans fewer than 3 dimensions");

    Eigen::Matrix<double, 10, 10> normal = Eigen::Matrix<double, 10, 10>::Zero();
    for (std::size_t i = 0; i < n; ++i) {
        const double x = pts(long(i), 0), y = pts(long(i), 1), z = pts(long(i), 2);
        Eigen::Matrix<double, 10, 1> row;
        row << x * x, y * y, z * z, x * y, x * z, y * z, x, y, z, 1.0;
        normal += row * row.transpose();
    }
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix<double, 10, 10>> es(normal);
    const Eigen::Matrix<double, 10, 1> v = es.eigenvectors().col(0);

    Eigen::Matrix3d Q;
    Q << v(0), v(3) / 2.0, v(4) / 2.0,
         v(3) / 2.0, v(1), v(5) / 2.0,
         v(4) / 2.0, v(5) / 2.0, v(2);
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> qe(Q);
    std::array<double, 3> eig{qe.eigenvalues()(2), qe.eigenvalues()(1), qe.eigenvalues()(0)};

    int pos = 0, neg = 0;
    for (double e : eig) (e > 0 ? pos : neg)++;
    if (pos < neg) {
        for (double& e : eig) e = -e;
        std::swap(eig[0], eig[2]);
    }
    return eig;
}

double hyperboloid_check(const ArcSampledCurve& curve, double m) {
    if (!(m > 0.0)) throw InvalidSpec("m must be positive");
    const auto eig = quadric_eigenvalues(curve);
    const double pos_mean = 0.5 * (eig[0] + eig[1]);
    if (!(pos_mean > 0.0)) return 1.0 + std::abs(eig[0]);
    const double ratio = -eig[2] / pos_mean;  // should equal m^2 on the hyperboloid
    return std::abs(ratio - m * m) / (m * m);
}

} // namespace slant
