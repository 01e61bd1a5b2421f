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
#include "slantcurve/frenet.hpp"

#include <algorithm>
#include <cmath>

namespace slant {

std::size_t FrenetApparatus::valid_count() const {
    std::size_t c = 0;
    for (auto m : mask) c += (m != 0);
    return c;
}

namespace {

SampledVectorField frame_axis_field(const FrenetApparatus& app, int which) {
    SampledVectorField f;
    f.grid = app.grid;
    f.mask = app.mask;
    f.vectors.resize(app.frames.size());
    for (std::size_t i = 0; i < app.frames.size(); ++i)
        f.vectors[i] = which == 0 ? app.frames[i].t : (which == 1 ? app.frames[i].n : app.frames[i].b);
    return f;
}

} // namespace

SampledVectorField FrenetApparatus::tangent_field() const { return frame_axis_field(*this, 0); }
SampledVectorField FrenetApparatus::normal_field() const { return frame_axis_field(*this, 1); }
SampledVectorField FrenetApparatus::binormal_field() const { return frame_axis_field(*this, 2); }

double FrenetResiduals::max() const { return std::max({tangent, normal, binormal}); }

namespace {

/// Menger curvature of three points (zero for collinear input).
double menger_curvature(const Vector3& a, const Vector3& b, const Vector3& c) {
    const double ab = (b - a).norm();
    const double bc = (c - b).norm();
    const double ca = (c - a).norm();
    const double denom = ab * bc * ca;
    if (denom <= 0.0) return 0.0;
    return 2.0 * (b - a).cross(c - a).norm() / denom;
}

} // namespace

ArcSampledCurve reparameterize(const SampledVectorField& points) {
    const std::size_t n = points.size();
    if (n < 5) throw TooFewSamples("reparameterize needs at least 5 samples");
    validate_grid(points.grid);
    for (std::size_t i = 0; i < n; ++i)
        if (!points.valid(i) || !points.vectors[i].finite())
            throw InvalidValue("reparameterize requires a fully valid point set");

    // regularity check on the input parameter
    const SampledVectorField vel = derivative(points);
    for (std::size_t i = 0; i < n; ++i)
        if (vel.valid(i) && vel.vectors[i].norm() < 1e-12)
            throw SingularSpeed("curve speed vanishes");

    // chord lengths corrected by local curvature: arc = c*(1 + (kappa*c)^2/24)
    const auto& p = points.vectors;
    std::vector<double> vertex_curv(n, 0.0);
    for (std::size_t i = 1; i + 1 < n; ++i)
        vertex_curv[i] = menger_curvature(p[i - 1], p[i], p[i + 1]);
    if (n >= 3) {
        vertex_curv[0] = vertex_curv[1];
        vertex_curv[n - 1] = vertex_curv[n - 2];
    }
    std::vector<double> arc(n, 0.0);
    for (std::size_t i = 0; i + 1 < n; ++i) {
        const double c = (p[i + 1] - p[i]).norm();
        if (c < 1e-15) throw SingularSpeed("repeated sample points");
        const double k = 0.5 * (vertex_curv[i] + vertex_curv[i + 1]);
        arc[i + 1] = arc[i] + c * (1.0 + (k * c) * (k * c) / 24.0);
    }

    const std::vector<double> s = make_uniform_grid(0.0, arc.back(), n);
    CubicSpline sx(arc, points.component(0).values);
    CubicSpline sy(arc, points.component(1).values);
    CubicSpline sz(arc, points.component(2).values);

    std::vector<Vector3> q(n);
    for (std::size_t i = 0; i < n; ++i) q[i] = {sx.eval(s[i]), sy.eval(s[i]), sz.eval(s[i])};
    q.front() = p.front();
    q.back() = p.back();

    ArcSampledCurve out;
    out.grid = s;
    out.points = make_sampled_field(s, std::move(q));

    // unit-speed invariant, measured with the derivative stencils; the
    // stencil itself reads a unit-speed curve of curvature kappa as speed
    // 1 - O((kappa h)^4), so high-curvature samples get that much allowance
    const SampledVectorField d = derivative(out.points);
    const double hs = out.points.spacing();
    for (std::size_t i = 2; i + 2 < n; ++i) {
        const Vector3 dd = (out.points.vectors[i + 1] - out.points.vectors[i] * 2.0 +
                            out.points.vectors[i - 1]) / (hs * hs);
        const double bend = dd.norm() * hs;  // ~ kappa * h
        const double allowance = kReparamTol + bend * bend * bend * bend;
        if (std::abs(d.vectors[i].norm() - 1.0) > allowance)
            throw DegenerateCurve("arc-length resampling failed the unit-speed check");
    }
    return out;
}

FrenetApparatus frenet_apparatus(const ArcSampledCurve& curve) {
    const std::size_t n = curve.size();
    if (n < 7) throw TooFewSamples("frenet_apparatus needs at least 7 samples");
    validate_grid(curve.grid);

    const SampledVectorField t_raw = derivative(curve.points);
    SampledVectorField t_unit = t_raw;
    for (std::size_t i = 0; i < n; ++i) {
        const double sp = t_raw.vectors[i].norm();
        if (sp < 1e-12) throw SingularSpeed("tangent vanishes on an arc-length grid");
        t_unit.vectors[i] = t_raw.vectors[i] / sp;
    }

    const SampledVectorField t_prime = derivative(t_unit);

    std::vector<double> kappa(n, 0.0);
    double kappa_max = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        if (!t_prime.valid(i)) continue;
        kappa[i] = t_prime.vectors[i].norm();
        kappa_max = std::max(kappa_max, kappa[i]);
    }
    // The relative floor masks isolated near-zero-curvature samples; the
    // absolute term is the rounding noise of two chained stencils, so an
    // all-noise curvature field (a straight line) masks out entirely.
    double coord_scale = 1.0;
    for (const Vector3& p : curve.points.vectors)
        coord_scale = std::max({coord_scale, std::abs(p.x), std::abs(p.y), std::abs(p.z)});
    const double h = curve.spacing();
    const double noise_floor = 1e3 * 2.2e-16 * coord_scale / (h * h);
    const double kappa_floor = std::max(kKappaFloorRel * kappa_max, noise_floor);

    std::vector<std::uint8_t> mask(n, 0);
    std::vector<Frame> frames(n);
    SampledVectorField normals;
    normals.grid = curve.grid;
    normals.vectors.assign(n, Vector3{});
    normals.mask.assign(n, 0);

    for (std::size_t i = 0; i < n; ++i) {
        if (!t_prime.valid(i) || kappa[i] < kappa_floor || kappa_max == 0.0) continue;
        const Vector3 nvec = t_prime.vectors[i] / kappa[i];
        frames[i] = gram_schmidt(t_unit.vectors[i], nvec);
        normals.vectors[i] = frames[i].n;
        normals.mask[i] = 1;
        mask[i] = 1;
    }

    std::size_t valid = 0;
    for (auto m : mask) valid += m;
    if (valid * 2 < n) throw DegenerateCurve("curvature below floor on more than half the samples");

    // tau = <N', B>, realizing N' = -kappa T + tau B
    const SampledVectorField n_prime = derivative(normals);
    std::vector<double> tau(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        if (mask[i] && n_prime.valid(i)) {
            tau[i] = n_prime.vectors[i].dot(frames[i].b);
        } else {
            mask[i] = 0;
        }
    }

    FrenetApparatus app;
    app.grid = curve.grid;
    app.frames = std::move(frames);
    app.kappa = SampledFunction{curve.grid, std::move(kappa), mask};
    app.tau = SampledFunction{curve.grid, std::move(tau), mask};
    app.mask = std::move(mask);
    return app;
}

namespace {

struct RungeKuttaState {
    Vector3 p, t, n, b;
    RungeKuttaState operator+(const RungeKuttaState& o) const { return {p + o.p, t + o.t, n + o.n, b + o.b}; }
    RungeKuttaState operator*(double a) const { return {p * a, t * a, n * a, b * a}; }
};

RungeKuttaState frenet_rhs(const RungeKuttaState& y, double kappa, double tau) {
    return {y.t, y.n * kappa, y.t * -kappa + y.b * tau, y.n * -tau};
}

/// Values halfway between nodes by four-point Lagrange interpolation.
std::vector<double> midpoint_values(const std::vector<double>& y) {
    const std::size_t n = y.size();
    std::vector<double> m(n - 1);
    for (std::size_t i = 1; i + 2 < n; ++i)
        m[i] = (-y[i - 1] + 9.0 * y[i] + 9.0 * y[i + 1] - y[i + 2]) / 16.0;
    m[0] = (5.0 * y[0] + 15.0 * y[1] - 5.0 * y[2] + y[3]) / 16.0;
    m[n - 2] = (5.0 * y[n - 1] + 15.0 * y[n - 2] - 5.0 * y[n - 3] + y[n - 4]) / 16.0;
    return m;
}

} // namespace

std::pair<ArcSampledCurve, FrenetApparatus> curve_from_intrinsic(const IntrinsicProfile& profile,
                                                                 const Frame& initial,
                                                                 const Vector3& origin) {
    const std::size_t n = profile.grid.size();
    if (n < 5) throw TooFewSamples("intrinsic profile needs at least 5 samples");
    validate_grid(profile.grid);
    if (profile.kappa.size() != n || profile.tau.size() != n)
        throw InvalidValue("profile fields must share the grid");
    for (std::size_t i = 0; i < n; ++i)
        if (profile.kappa.values[i] < 0.0) throw NegativeKappa("kappa must be nonnegative");
    if (initial.gram_deviation() > kFrameTolConstructed || std::abs(initial.handedness() - 1.0) > kFrameTolConstructed)
        throw NonOrthonormalSeed("initial frame is not orthonormal right-handed");
    if (!origin.finite()) throw InvalidValue("origin is not finite");

    const double h = (profile.grid.back() - profile.grid.front()) / double(n - 1);
    const std::vector<double>& kv = profile.kappa.values;
    const std::vector<double>& tv = profile.tau.values;
    const std::vector<double> km = midpoint_values(kv);
    const std::vector<double> tm = midpoint_values(tv);

    std::vector<Vector3> pts(n);
    std::vector<Frame> frames(n);
    RungeKuttaState y{origin, initial.t, initial.n, initial.b};
    pts[0] = origin;
    frames[0] = initial;

    for (std::size_t i = 0; i + 1 < n; ++i) {
        const RungeKuttaState k1 = frenet_rhs(y, kv[i], tv[i]);
        const RungeKuttaState k2 = frenet_rhs(y + k1 * (0.5 * h), km[i], tm[i]);
        const RungeKuttaState k3 = frenet_rhs(y + k2 * (0.5 * h), km[i], tm[i]);
        const RungeKuttaState k4 = frenet_rhs(y + k3 * h, kv[i + 1], tv[i + 1]);
        y = y + (k1 + k2 * 2.0 + k3 * 2.0 + k4) * (h / 6.0);
        const Frame f = gram_schmidt(y.t, y.n);
        y.t = f.t;
        y.n = f.n;
        y.b = f.b;
        pts[i + 1] = y.p;
        frames[i + 1] = f;
    }

    ArcSampledCurve curve;
    curve.grid = profile.grid;
    curve.points = make_sampled_field(profile.grid, std::move(pts));

    double kappa_max = 0.0;
    for (double k : kv) kappa_max = std::max(kappa_max, k);
    const double kappa_floor = kKappaFloorRel * kappa_max;
    std::vector<std::uint8_t> mask(n, 0);
    for (std::size_t i = 0; i < n; ++i) mask[i] = kv[i] >= kappa_floor && kappa_max > 0.0;

    FrenetApparatus app;
    app.grid = profile.grid;
    app.frames = std::move(frames);
    app.kappa = SampledFunction{profile.grid, kv, mask};
    app.tau = SampledFunction{profile.grid, tv, mask};
    app.mask = std::move(mask);
    return {std::move(curve), std::move(app)};
}

FrenetResiduals frenet_residuals(const FrenetApparatus& app) {
    const SampledVectorField tp = derivative(app.tangent_field());
    const SampledVectorField np = derivative(app.normal_field());
    const SampledVectorField bp = derivative(app.binormal_field());
    FrenetResiduals r;
    const std::size_t n = app.size();
    for (std::size_t i = 2; i + 2 < n; ++i) {
        if (!(tp.valid(i) && np.valid(i) && bp.valid(i))) continue;
        const Frame& f = app.frames[i];
        const double k = app.kappa.values[i];
        const double t = app.tau.values[i];
        r.tangent = std::max(r.tangent, (tp.vectors[i] - f.n * k).norm());
        r.normal = std::max(r.normal, (np.vectors[i] + f.t * k - f.b * t).norm());
        r.binormal = std::max(r.binormal, (bp.vectors[i] + f.n * t).norm());
    }
    return r;
}

} // namespace slant
