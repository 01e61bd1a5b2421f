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
#include "slantcurve/hierarchy.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace slant {

namespace {

constexpr double kLadderTol = 1e-4;        // numeric vs closed-form cross-check
constexpr double kVanishFloor = 1e-10;     // |psi_k'| below this is a vanishing derivative
constexpr double kCrossFloor = 1e-8;       // |psi_{k+1} x psi_{k+2}| floor

/// Weights for constancy statistics: 1 away from run edges, 0 within the
/// trim distance of a grid end or masked region.
std::vector<std::uint8_t> edge_trimmed(const std::vector<std::uint8_t>& mask, std::size_t trim) {
    const std::size_t n = mask.size();
    std::vector<std::uint8_t> w(n, 0);
    std::size_t i = 0;
    while (i < n) {
        if (!mask[i]) { ++i; continue; }
        std::size_t j = i;
        while (j + 1 < n && mask[j + 1]) ++j;
        if (j - i + 1 > 2 * trim)
            for (std::size_t t = i + trim; t + trim <= j; ++t) w[t] = 1;
        i = j + 1;
    }
    return w;
}

struct WeightedMoments {
    double mean = 0.0;
    double std_dev = 0.0;
    std::size_t count = 0;
};

WeightedMoments weighted_moments(const std::vector<double>& v, const std::vector<std::uint8_t>& w) {
    WeightedMoments m;
    double sum = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i)
        if (w[i]) { sum += v[i]; ++m.count; }
    if (m.count == 0) return m;
    m.mean = sum / double(m.count);
    double ss = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i)
        if (w[i]) ss += (v[i] - m.mean) * (v[i] - m.mean);
    m.std_dev = std::sqrt(ss / double(m.count));
    return m;
}

} // namespace

PsiLadder psi_ladder(const ArcSampledCurve& curve, const FrenetApparatus& app, int levels) {
    if (levels < 1) throw InvalidValue("ladder needs at least one level");
    if (levels > kMaxLadderDepth + 1) throw InvalidValue("ladder depth exceeds the supported maximum");
    const std::size_t n = curve.size();
    if (app.size() != n) throw InvalidValue("curve/apparatus grid mismatch");

    PsiLadder out;
    out.psis.reserve(std::size_t(levels) + 2);
    out.psis.push_back(curve.points);
    out.psis.push_back(app.tangent_field());

    // closed forms for the cross-check of the first few levels
    const auto ladder = sigma_ladder_values(app, 2);
    const SampledFunction& f = ladder[0];
    const SampledFunction& s1 = ladder[1];

    for (int k = 1; k <= levels; ++k) {
        const SampledVectorField& prev = out.psis.back();
        const SampledVectorField dp = derivative(prev);

        SampledVectorField next;
        next.grid = curve.grid;
        next.vectors.assign(n, Vector3{});
        next.mask.assign(n, 0);

        std::size_t vanished = 0, considered = 0;
        for (std::size_t i = 0; i < n; ++i) {
            if (!dp.valid(i)) continue;
            ++considered;
            const double norm = dp.vectors[i].norm();
            if (norm < kVanishFloor) { ++vanished; continue; }
            next.vectors[i] = dp.vectors[i] / norm;
            next.mask[i] = 1;
        }
        if (considered == 0 || vanished * 2 > considered)
            throw VanishingDerivative("psi ladder derivative vanishes on most of the grid");

        // cross-check against the closed form where one exists
        for (std::size_t i = 0; i < n; ++i) {
            if (!next.mask[i] || !app.mask[i]) continue;
            const Frame& fr = app.frames[i];
            Vector3 cf;
            bool have_cf = false;
            if (k + 1 == 2) {
                cf = fr.n;
                have_cf = true;
            } else if (k + 1 == 3 && f.mask[i]) {
                const double fv = f.values[i];
                cf = (fr.t * -1.0 + fr.b * fv) / std::sqrt(1.0 + fv * fv);
                have_cf = true;
            } else if (k + 1 == 4 && f.mask[i] && s1.mask[i]) {
                const double fv = f.values[i];
                const double sv = s1.values[i];
                const Vector3 w = (fr.t * fv + fr.b) / std::sqrt(1.0 + fv * fv);
                cf = (w * sv - fr.n) / std::sqrt(1.0 + sv * sv);
                have_cf = true;
            }
            if (have_cf && (next.vectors[i] - cf).norm() > kLadderTol) next.mask[i] = 0;
        }
        out.psis.push_back(std::move(next));
    }
    return out;
}

SlantProfile sigma_recursion(const FrenetApparatus& app, int levels) {
    if (levels < 0) throw InvalidValue("levels must be nonnegative");
    if (levels > kMaxLadderDepth) throw InvalidValue("levels exceeds the supported maximum");

    SlantProfile out;
    out.sigmas = sigma_ladder_values(app, levels);
    if (out.sigmas[0].valid_count() == 0) throw DegenerateCurve("tau/kappa defined nowhere");

    const std::size_t n = app.size();
    out.natural_params.reserve(std::size_t(levels) + 1);
    out.kappas.reserve(std::size_t(levels) + 1);
    out.taus.reserve(std::size_t(levels) + 1);

    // level 0: the curve itself
    SampledFunction s0;
    s0.grid = app.grid;
    s0.values.resize(n);
    s0.mask.assign(n, 1);
    for (std::size_t i = 0; i < n; ++i) s0.values[i] = app.grid[i] - app.grid.front();
    out.natural_params.push_back(std::move(s0));
    out.kappas.push_back(app.kappa);
    out.taus.push_back(app.tau);

    // speed of the level-k spherical image: kappa * prod_{j<=k-2} sqrt(1+sigma_j^2)
    SampledFunction speed = app.kappa;
    speed.mask = app.mask;
    for (int k = 1; k <= levels; ++k) {
        if (k >= 2) {
            const SampledFunction& sj = out.sigmas[std::size_t(k) - 2];
            for (std::size_t i = 0; i < n; ++i) {
                if (speed.mask[i] && sj.mask[i])
                    speed.values[i] *= std::sqrt(1.0 + sj.values[i] * sj.values[i]);
                else
                    speed.mask[i] = 0;
            }
        }
        out.natural_params.push_back(cumulative_integral(speed));

        const SampledFunction& prev = out.sigmas[std::size_t(k) - 1];
        const SampledFunction& cur = out.sigmas[std::size_t(k)];
        SampledFunction kap, tau;
        kap.grid = tau.grid = app.grid;
        kap.values.assign(n, 0.0);
        tau.values.assign(n, 0.0);
        kap.mask.assign(n, 0);
        tau.mask.assign(n, 0);
        for (std::size_t i = 0; i < n; ++i) {
            if (!prev.mask[i]) continue;
            kap.values[i] = std::sqrt(1.0 + prev.values[i] * prev.values[i]);
            kap.mask[i] = 1;
            if (cur.mask[i]) {
                tau.values[i] = cur.values[i] * kap.values[i];
                tau.mask[i] = 1;
            }
        }
        out.kappas.push_back(std::move(kap));
        out.taus.push_back(std::move(tau));
    }
    return out;
}

LevelStat level_stat(const SampledFunction& sigma_k, int k, std::size_t trim) {
    const auto w = edge_trimmed(sigma_k.mask, trim);
    const auto m = weighted_moments(sigma_k.values, w);
    LevelStat st;
    st.k = k;
    st.count = m.count;
    st.mean = m.mean;
    st.dev = m.count ? m.std_dev / (1.0 + std::abs(m.mean)) : std::numeric_limits<double>::infinity();
    return st;
}

ClassificationReport classify(const SlantProfile& profile, double const_tol, std::size_t trim) {
    if (profile.sigmas.empty()) throw EmptyProfile("profile has no ladder levels");
    bool any_valid = false;
    for (const auto& s : profile.sigmas) any_valid = any_valid || s.valid_count() > 0;
    if (!any_valid) throw EmptyProfile("profile is masked everywhere");

    ClassificationReport rep;
    for (int k = 0; k <= profile.levels(); ++k) {
        const LevelStat st = level_stat(profile.sigmas[std::size_t(k)], k, trim);
        rep.per_k.push_back(st);
        if (!rep.k_star && st.count > 0 && st.dev < const_tol) {
            rep.k_star = k;
            rep.cot_phi = st.mean;
            rep.phi = std::atan2(1.0, st.mean);  // arccot on (0, pi)
            rep.residual_sigma = st.dev;
        }
    }
    return rep;
}

ClassificationReport classify(const ArcSampledCurve& curve, const FrenetApparatus& app,
                              const SlantProfile& profile, double const_tol, std::size_t trim) {
    ClassificationReport rep = classify(profile, const_tol, trim);
    if (!rep.k_star) return rep;
    const int k = *rep.k_star;

    const PsiLadder ladder = psi_ladder(curve, app, k + 1);
    const SampledVectorField axis = axis_field(ladder, profile, k, rep.phi);
    const Vector3 d = mean_direction(axis);
    rep.axis = d;
    rep.residual_axis = direction_wobble(axis, d);
    return rep;
}

SampledVectorField level_binormal_field(const PsiLadder& ladder, int k) {
    if (k < 0 || std::size_t(k) + 2 >= ladder.psis.size())
        throw InvalidValue("ladder too shallow for the requested level");
    const SampledVectorField& tk = ladder.psis[std::size_t(k) + 1];
    const SampledVectorField& nk = ladder.psis[std::size_t(k) + 2];
    const std::size_t n = tk.size();

    SampledVectorField out;
    out.grid = tk.grid;
    out.vectors.assign(n, Vector3{});
    out.mask.assign(n, 0);
    bool have_prev = false;
    Vector3 prev;
    for (std::size_t i = 0; i < n; ++i) {
        if (!tk.valid(i) || !nk.valid(i)) { have_prev = false; continue; }
        Vector3 c = tk.vectors[i].cross(nk.vectors[i]);
        const double cn = c.norm();
        if (cn < kCrossFloor) { have_prev = false; continue; }
        c = c / cn;
        if (have_prev && c.dot(prev) < 0.0) c = -c;
        out.vectors[i] = c;
        prev = c;
        have_prev = true;
        out.mask[i] = 1;
    }
    std::size_t valid = 0;
    for (auto m : out.mask) valid += m;
    if (valid == 0) throw CrossProductDegenerate("psi_{k+1} parallel to psi_{k+2} everywhere");
    return out;
}

SampledVectorField axis_field(const PsiLadder& ladder, const SlantProfile& /*profile*/, int k,
                              double phi) {
    if (!(phi > 0.0 && phi < 3.14159265358979323846))
        throw InvalidValue("phi must lie in (0, pi)");
    const SampledVectorField& tk = ladder.psis[std::size_t(k) + 1];
    const SampledVectorField bfield = level_binormal_field(ladder, k);
    const std::vector<Vector3>& bk = bfield.vectors;
    const std::vector<std::uint8_t>& mask = bfield.mask;
    const std::size_t n = tk.size();

    const double c = std::cos(phi), s = std::sin(phi);
    SampledVectorField plus, minus;
    plus.grid = minus.grid = tk.grid;
    plus.mask = minus.mask = mask;
    plus.vectors.assign(n, Vector3{});
    minus.vectors.assign(n, Vector3{});
    for (std::size_t i = 0; i < n; ++i) {
        if (!mask[i]) continue;
        plus.vectors[i] = tk.vectors[i] * c + bk[i] * s;
        minus.vectors[i] = tk.vectors[i] * c - bk[i] * s;
    }
    const double wp = direction_wobble(plus, mean_direction(plus));
    const double wm = direction_wobble(minus, mean_direction(minus));
    SampledVectorField& chosen = wp <= wm ? plus : minus;

    // report the axis on the side of psi_{k+1} at the first valid sample
    std::size_t first = 0;
    while (first < n && !chosen.mask[first]) ++first;
    if (first < n && tk.vectors[first].dot(chosen.vectors[first]) < 0.0)
        for (std::size_t i = 0; i < n; ++i)
            if (chosen.mask[i]) chosen.vectors[i] = -chosen.vectors[i];
    return std::move(chosen);
}

double constant_angle_residual(const SampledVectorField& field, const Vector3& d) {
    const auto w = edge_trimmed(field.mask, kStatEdgeTrim);
    std::vector<double> dots(field.size(), 0.0);
    for (std::size_t i = 0; i < field.size(); ++i)
        if (w[i]) dots[i] = field.vectors[i].dot(d);
    const auto m = weighted_moments(dots, w);
    if (m.count == 0) return 0.0;
    double worst = 0.0;
    for (std::size_t i = 0; i < field.size(); ++i)
        if (w[i]) worst = std::max(worst, std::abs(dots[i] - m.mean));
    return worst;
}

Vector3 mean_direction(const SampledVectorField& field) {
    const auto w = edge_trimmed(field.mask, kStatEdgeTrim);
    Vector3 acc{};
    std::size_t count = 0;
    for (std::size_t i = 0; i < field.size(); ++i)
        if (w[i]) { acc += field.vectors[i]; ++count; }
    if (count == 0) {
        // short run: fall back to plain valid samples
        for (std::size_t i = 0; i < field.size(); ++i)
            if (field.valid(i)) { acc += field.vectors[i]; ++count; }
    }
    if (count == 0) throw MaskedEverywhere("no valid samples for a mean direction");
    return acc.normalized();
}

double direction_wobble(const SampledVectorField& field, const Vector3& d) {
    const auto w = edge_trimmed(field.mask, kStatEdgeTrim);
    double worst = 0.0;
    std::size_t count = 0;
    for (std::size_t i = 0; i < field.size(); ++i)
        if (w[i]) { worst = std::max(worst, angle_between(field.vectors[i].normalized(), d)); ++count; }
    if (count == 0)
        for (std::size_t i = 0; i < field.size(); ++i)
            if (field.valid(i)) worst = std::max(worst, angle_between(field.vectors[i].normalized(), d));
    return worst;
}

} // namespace slant
