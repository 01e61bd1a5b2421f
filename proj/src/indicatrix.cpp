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
#include "slantcurve/indicatrix.hpp"

#include <algorithm>
#include <cmath>

namespace slant {

namespace {

constexpr double kDerivativeNoiseFloor = 1e-10;  // snap-to-zero threshold
constexpr double kResolvabilityCap = 0.15;       // max kappa_ind * oracle spacing
constexpr double kCuspExclusionPanels = 20.0;    // arc radius around integrand zeros
constexpr double kIntegrandZeroRel = 1e-3;       // |integrand| below this fraction of max marks a cusp
constexpr double kRegularSpeedRel = 0.05;        // speed floor for oracle-able samples near a cusp

} // namespace

std::string to_string(IndicatrixKind kind) {
    switch (kind) {
        case IndicatrixKind::Tangent: return "tangent";
        case IndicatrixKind::Normal: return "normal";
        case IndicatrixKind::Binormal: return "binormal";
        case IndicatrixKind::Psi3: return "psi3";
    }
    return "?";
}

std::vector<SampledFunction> sigma_ladder_values(const FrenetApparatus& app, int levels) {
    if (levels < 0) throw InvalidValue("ladder depth must be nonnegative");
    const std::size_t n = app.size();

    std::vector<SampledFunction> sigma;
    sigma.reserve(std::size_t(levels) + 1);

    // sigma_0 = tau/kappa where kappa is above the floor
    SampledFunction f0;
    f0.grid = app.grid;
    f0.values.assign(n, 0.0);
    f0.mask = app.mask;
    for (std::size_t i = 0; i < n; ++i)
        if (app.mask[i]) f0.values[i] = app.tau.values[i] / app.kappa.values[i];
    sigma.push_back(std::move(f0));

    // running denominator base: kappa * prod_{j <= k-2} sqrt(1 + sigma_j^2)
    SampledFunction base = app.kappa;
    base.mask = app.mask;

    for (int k = 1; k <= levels; ++k) {
        const SampledFunction& prev = sigma.back();
        if (k >= 2) {
            const SampledFunction& s2 = sigma[std::size_t(k) - 2];
            for (std::size_t i = 0; i < n; ++i) {
                if (base.mask[i] && s2.mask[i])
                    base.values[i] *= std::sqrt(1.0 + s2.values[i] * s2.values[i]);
                else
                    base.mask[i] = 0;
            }
        }

        const SampledFunction dprev = derivative(prev);
        double dmax = 0.0;
        for (std::size_t i = 0; i < n; ++i)
            if (dprev.mask[i]) dmax = std::max(dmax, std::abs(dprev.values[i]));

        SampledFunction next;
        next.grid = app.grid;
        next.values.assign(n, 0.0);
        if (dmax < kDerivativeNoiseFloor) {
            // previous level is constant to within differentiation noise
            next.mask = prev.mask;
        } else {
            next.mask.assign(n, 0);
            for (std::size_t i = 0; i < n; ++i) {
                if (!dprev.mask[i] || !base.mask[i]) continue;
                const double p = prev.values[i];
                const double denom = base.values[i] * std::pow(1.0 + p * p, 1.5);
                next.values[i] = dprev.values[i] / denom;
                next.mask[i] = 1;
            }
        }
        sigma.push_back(std::move(next));
    }
    return sigma;
}

SlantFunctions slant_functions(const FrenetApparatus& app) {
    auto ladder = sigma_ladder_values(app, 3);
    if (ladder[0].valid_count() == 0)
        throw DegenerateCurve("tau/kappa defined nowhere on the grid");
    SlantFunctions out;
    out.f = std::move(ladder[0]);
    out.sigma = std::move(ladder[1]);
    out.gamma = std::move(ladder[2]);
    out.lambda_ = std::move(ladder[3]);
    return out;
}

SampledVectorField indicatrix_curve(const FrenetApparatus& app, IndicatrixKind kind) {
    const std::size_t n = app.size();
    SampledVectorField out;
    out.grid = app.grid;
    out.vectors.assign(n, Vector3{});
    out.mask.assign(n, 0);

    for (std::size_t i = 0; i < n; ++i) {
        if (!app.mask[i]) continue;
        const Frame& fr = app.frames[i];
        switch (kind) {
            case IndicatrixKind::Tangent: out.vectors[i] = fr.t; break;
            case IndicatrixKind::Normal: out.vectors[i] = fr.n; break;
            case IndicatrixKind::Binormal: out.vectors[i] = fr.b; break;
            case IndicatrixKind::Psi3: {
                const double f = app.tau.values[i] / app.kappa.values[i];
                const double r = std::sqrt(1.0 + f * f);
                out.vectors[i] = (fr.t * -1.0 + fr.b * f) / r;
                break;
            }
        }
        out.mask[i] = 1;
    }
    bool any = false;
    for (auto m : out.mask) any = any || m;
    if (!any) throw MaskedEverywhere("indicatrix defined nowhere");
    return out;
}

namespace {

/// Signed speed of the spherical image with respect to base arc length.
SampledFunction kind_integrand(const FrenetApparatus& app, const SlantFunctions& funcs,
                               IndicatrixKind kind) {
    const std::size_t n = app.size();
    SampledFunction g;
    g.grid = app.grid;
    g.values.assign(n, 0.0);
    g.mask.assign(n, 0);
    for (std::size_t i = 0; i < n; ++i) {
        switch (kind) {
            case IndicatrixKind::Tangent:
                if (!app.mask[i]) continue;
                g.values[i] = app.kappa.values[i];
                break;
            case IndicatrixKind::Normal: {
                if (!funcs.f.mask[i]) continue;
                const double f = funcs.f.values[i];
                g.values[i] = app.kappa.values[i] * std::sqrt(1.0 + f * f);
                break;
            }
            case IndicatrixKind::Binormal:
                if (!app.mask[i]) continue;
                g.values[i] = app.tau.values[i];
                break;
            case IndicatrixKind::Psi3: {
                if (!funcs.f.mask[i] || !funcs.sigma.mask[i]) continue;
                const double f = funcs.f.values[i];
                const double s1 = funcs.sigma.values[i];
                g.values[i] = app.kappa.values[i] * std::sqrt(1.0 + f * f) * std::sqrt(1.0 + s1 * s1);
                break;
            }
        }
        g.mask[i] = 1;
    }
    return g;
}

} // namespace

IndicatrixApparatus closed_form_apparatus(const FrenetApparatus& app, const SlantFunctions& funcs,
                                          IndicatrixKind kind) {
    const std::size_t n = app.size();
    IndicatrixApparatus out;
    out.kind = kind;
    out.grid = app.grid;
    out.frames.assign(n, Frame{});
    out.mask.assign(n, 0);

    std::vector<double> ki(n, 0.0), ti(n, 0.0), ratio(n, 0.0);

    double f_max = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        if (funcs.f.mask[i]) f_max = std::max(f_max, std::abs(funcs.f.values[i]));
    if (kind == IndicatrixKind::Binormal && f_max < 1e-9)
        throw FFloorViolation("tau/kappa vanishes on the whole grid; binormal closed form undefined");
    const double f_floor = kFFloorRel * f_max;

    for (std::size_t i = 0; i < n; ++i) {
        if (!funcs.f.mask[i]) continue;
        const Frame& fr = app.frames[i];
        const double f = funcs.f.values[i];
        const double rf = std::sqrt(1.0 + f * f);
        const Vector3 darboux_dir = (fr.t * f + fr.b) / rf;   // unit Darboux direction
        const Vector3 psi3 = (fr.t * -1.0 + fr.b * f) / rf;

        switch (kind) {
            case IndicatrixKind::Tangent: {
                if (!funcs.sigma.mask[i]) continue;
                const double s1 = funcs.sigma.values[i];
                out.frames[i] = Frame{fr.n, psi3, darboux_dir};
                ki[i] = rf;
                ti[i] = s1 * rf;
                break;
            }
            case IndicatrixKind::Normal: {
                if (!funcs.sigma.mask[i] || !funcs.gamma.mask[i]) continue;
                const double s1 = funcs.sigma.values[i];
                const double g = funcs.gamma.values[i];
                const double rs = std::sqrt(1.0 + s1 * s1);
                const Vector3 nn = (darboux_dir * s1 - fr.n) / rs;
                const Vector3 bn = (darboux_dir + fr.n * s1) / rs;
                out.frames[i] = Frame{psi3, nn, bn};
                ki[i] = rs;
                ti[i] = g * rs;
                break;
            }
            case IndicatrixKind::Binormal: {
                if (!funcs.sigma.mask[i] || std::abs(f) < f_floor) continue;
                const double s1 = funcs.sigma.values[i];
                out.frames[i] = Frame{fr.n * -1.0, psi3 * -1.0, darboux_dir};
                // |f| in the denominator keeps curvature positive on both
                // signs of f; the ratio identity then holds with -sigma
                ki[i] = rf / std::abs(f);
                ti[i] = -s1 * rf / std::abs(f);
                break;
            }
            case IndicatrixKind::Psi3: {
                if (!funcs.sigma.mask[i] || !funcs.gamma.mask[i] || !funcs.lambda_.mask[i]) continue;
                const double s1 = funcs.sigma.values[i];
                const double g = funcs.gamma.values[i];
                const double l = funcs.lambda_.values[i];
                const double rs = std::sqrt(1.0 + s1 * s1);
                const double rg = std::sqrt(1.0 + g * g);
                const Vector3 nb = (fr.t - fr.b * f) / rf;  // = -psi3 rotated; N of the binormal image
                const Vector3 t3 = (darboux_dir * s1 - fr.n) / rs;
                const Vector3 n3 = ((darboux_dir * g + nb * rs) + fr.n * (s1 * g)) / (rs * rg);
                const Vector3 b3 = ((darboux_dir - nb * (g * rs)) + fr.n * s1) / (rs * rg);
                out.frames[i] = Frame{t3, n3, b3};
                ki[i] = rg;
                ti[i] = l * rg;
                break;
            }
        }
        ratio[i] = ti[i] / ki[i];
        out.mask[i] = 1;
    }

    bool any = false;
    for (auto m : out.mask) any = any || m;
    if (!any) {
        if (kind == IndicatrixKind::Binormal)
            throw FFloorViolation("f vanishes on the whole grid; binormal closed form undefined");
        throw MaskedEverywhere("closed-form apparatus defined nowhere");
    }

    const SampledFunction integrand = kind_integrand(app, funcs, kind);
    out.natural_param = cumulative_integral(integrand);
    out.kappa_ind = SampledFunction{app.grid, std::move(ki), out.mask};
    out.tau_ind = SampledFunction{app.grid, std::move(ti), out.mask};
    out.ratio = SampledFunction{app.grid, std::move(ratio), out.mask};
    return out;
}

namespace {

/// Masks samples where the image nearly stops (approaching a cusp: the
/// tangent reverses there and no regular-curve measurement can cross it).
/// Within about one resample panel of a cusp every derivative of the image
/// blows up, so interpolation cannot hold the unit-speed contract there; the
/// floor keeps oracle runs clear of that zone, which the comparison masks
/// exclude anyway.
std::vector<std::uint8_t> regular_mask(const SampledVectorField& field) {
    const SampledVectorField vel = derivative(field);
    double vmax = 0.0;
    for (std::size_t i = 0; i < field.size(); ++i)
        if (vel.valid(i)) vmax = std::max(vmax, vel.vectors[i].norm());
    std::vector<std::uint8_t> mask(field.size(), 0);
    for (std::size_t i = 0; i < field.size(); ++i)
        mask[i] = field.valid(i) && vel.valid(i) && vel.vectors[i].norm() > kRegularSpeedRel * vmax;
    // boundary samples of an otherwise valid field keep their validity
    if (field.size() >= 4) {
        mask[0] = field.valid(0) && mask[2];
        mask[1] = field.valid(1) && mask[2];
        mask[field.size() - 1] = field.valid(field.size() - 1) && mask[field.size() - 3];
        mask[field.size() - 2] = field.valid(field.size() - 2) && mask[field.size() - 3];
    }
    return mask;
}

FrenetApparatus oracle_of_run(const SampledVectorField& field, std::size_t first, std::size_t last) {
    const std::size_t m = last - first + 1;
    SampledVectorField run;
    run.grid = make_uniform_grid(field.grid[first], field.grid[last], m);
    run.vectors.assign(field.vectors.begin() + long(first), field.vectors.begin() + long(last) + 1);
    run.mask.assign(m, 1);
    return frenet_apparatus(reparameterize(run));
}

std::vector<std::pair<std::size_t, std::size_t>> valid_runs(const std::vector<std::uint8_t>& mask,
                                                            std::size_t min_len) {
    std::vector<std::pair<std::size_t, std::size_t>> runs;
    std::size_t i = 0;
    while (i < mask.size()) {
        if (!mask[i]) { ++i; continue; }
        std::size_t j = i;
        while (j + 1 < mask.size() && mask[j + 1]) ++j;
        if (j - i + 1 >= min_len) runs.emplace_back(i, j);
        i = j + 1;
    }
    return runs;
}

} // namespace

FrenetApparatus oracle_apparatus(const FrenetApparatus& app, IndicatrixKind kind) {
    const SampledVectorField field = indicatrix_curve(app, kind);
    auto [first, last] = longest_valid_run(regular_mask(field));
    if (first > last || last - first + 1 < 7)
        throw MaskedEverywhere("indicatrix valid run too short for the oracle");
    return oracle_of_run(field, first, last);
}

OracleComparison compare_with_oracle(const FrenetApparatus& app, const SlantFunctions& funcs,
                                     IndicatrixKind kind, std::size_t trim) {
    const IndicatrixApparatus cf = closed_form_apparatus(app, funcs, kind);
    const SampledVectorField field = indicatrix_curve(app, kind);
    const std::size_t n = app.size();

    // unsigned arc of the image, for alignment with the oracle's arc grid
    SampledFunction integrand = kind_integrand(app, funcs, kind);
    double gmax = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        if (!integrand.mask[i]) continue;
        gmax = std::max(gmax, std::abs(integrand.values[i]));
    }
    SampledFunction speed_abs = integrand;
    for (auto& v : speed_abs.values) v = std::abs(v);
    const SampledFunction arc = cumulative_integral(speed_abs);

    // arc positions of integrand zeros (indicatrix cusps)
    std::vector<double> cusp_arcs;
    for (std::size_t i = 0; i < n; ++i)
        if (integrand.mask[i] && arc.mask[i] && std::abs(integrand.values[i]) < kIntegrandZeroRel * gmax)
            cusp_arcs.push_back(arc.values[i]);

    OracleComparison cmp;
    cmp.kind = kind;

    // The image may consist of several regular arcs joined at cusps; each arc
    // is measured as its own curve.
    const auto runs = valid_runs(regular_mask(field), std::max<std::size_t>(64, 2 * trim + 11));
    for (const auto& [r0, r1] : runs) {
        if (!arc.mask[r0]) continue;
        const FrenetApparatus oracle = oracle_of_run(field, r0, r1);
        const std::size_t no = oracle.size();
        const double hhat = oracle.spacing();
        const double q_lo = oracle.grid[trim];
        const double q_hi = oracle.grid[no - 1 - trim];
        // torsion needs a third differentiation, so its boundary-contaminated
        // zone is one stencil wider than curvature's
        const std::size_t tau_trim = trim + 3;
        const double qt_lo = oracle.grid[tau_trim];
        const double qt_hi = oracle.grid[no - 1 - tau_trim];
        const double arc0 = arc.values[r0];

        std::vector<double> og(oracle.grid);
        MonotoneCubic okappa(og, oracle.kappa.values);
        MonotoneCubic otau(og, oracle.tau.values);
        std::vector<MonotoneCubic> oT, oN, oB;
        for (int axis = 0; axis < 3; ++axis) {
            oT.emplace_back(og, oracle.tangent_field().component(axis).values);
            oN.emplace_back(og, oracle.normal_field().component(axis).values);
            oB.emplace_back(og, oracle.binormal_field().component(axis).values);
        }

        for (std::size_t i = r0; i <= r1; ++i) {
            if (!cf.mask[i] || !arc.mask[i] || !integrand.mask[i]) continue;
            const double q = arc.values[i] - arc0;
            if (q < q_lo || q > q_hi) continue;
            if (cf.kappa_ind.values[i] * hhat > kResolvabilityCap) continue;
            bool near_cusp = false;
            for (double cq : cusp_arcs)
                if (std::abs(arc.values[i] - cq) < kCuspExclusionPanels * hhat) { near_cusp = true; break; }
            if (near_cusp) continue;

            const double orient = integrand.values[i] < 0.0 ? -1.0 : 1.0;
            const double ko = okappa.eval(q);
            const double kcf = cf.kappa_ind.values[i];
            cmp.max_rel_kappa =
                std::max(cmp.max_rel_kappa, std::abs(ko - kcf) / std::max(1.0, std::abs(kcf)));

            if (q >= qt_lo && q <= qt_hi) {
                const double to = orient * otau.eval(q);
                const double tcf = cf.tau_ind.values[i];
                cmp.max_rel_tau =
                    std::max(cmp.max_rel_tau, std::abs(to - tcf) / std::max(1.0, std::abs(tcf)));
                cmp.max_ratio_dev = std::max(cmp.max_ratio_dev, std::abs(to / ko - cf.ratio.values[i]));
            }

            // on reversed arcs the closed-form T and N formulas flip with the
            // traversal while B = T x N comes out unflipped
            const Vector3 T{oT[0].eval(q), oT[1].eval(q), oT[2].eval(q)};
            const Vector3 N{oN[0].eval(q), oN[1].eval(q), oN[2].eval(q)};
            const Vector3 B{oB[0].eval(q), oB[1].eval(q), oB[2].eval(q)};
            const Frame& fcf = cf.frames[i];
            const double at = angle_between((T * orient).normalized(), fcf.t);
            const double an = angle_between((N * orient).normalized(), fcf.n);
            const double ab = angle_between(B.normalized(), fcf.b);
            cmp.max_frame_angle = std::max({cmp.max_frame_angle, at, an, ab});
            ++cmp.compared;
        }
    }
    if (cmp.compared == 0) throw MaskedEverywhere("no comparable samples between the two paths");
    return cmp;
}

} // namespace slant
