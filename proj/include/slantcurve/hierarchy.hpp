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
#pragma once

#include <optional>
#include <vector>

#include "slantcurve/indicatrix.hpp"

namespace slant {

/// Deepest supported ladder level. Each level consumes one derivative order;
/// past this the differentiation noise swamps the constancy tolerance on
/// double-precision desk-scale grids.
inline constexpr int kMaxLadderDepth = 6;

/// Default relative-dispersion tolerance for "this ladder level is constant".
inline constexpr double kDefaultConstTol = 1e-5;

/// Samples this close to a grid end or to a masked region are excluded from
/// constancy statistics; chained one-sided stencils contaminate them.
inline constexpr std::size_t kStatEdgeTrim = 12;

/// Unit-direction ladder psi_0 = curve, psi_1 = T, psi_{k+1} = psi_k'/|psi_k'|.
/// Each numerically-differentiated level is cross-checked against its closed
/// form where one exists (psi_2, psi_3, psi_4); disagreeing samples are masked.
struct PsiLadder {
    std::vector<SampledVectorField> psis;  // indices 0 .. depth
    int depth() const { return int(psis.size()) - 1; }
};

PsiLadder psi_ladder(const ArcSampledCurve& curve, const FrenetApparatus& app, int levels);

/// The sigma ladder with the spherical-image Frenet data at every level:
/// kappa_k = sqrt(1+sigma_{k-1}^2), tau_k = sigma_k * kappa_k, and the natural
/// parameter s_k integrating kappa * prod_{j<=k-2} sqrt(1+sigma_j^2).
/// Level 0 holds the base curve's own kappa, tau and arc length.
struct SlantProfile {
    std::vector<SampledFunction> sigmas;
    std::vector<SampledFunction> natural_params;
    std::vector<SampledFunction> kappas;
    std::vector<SampledFunction> taus;
    int levels() const { return int(sigmas.size()) - 1; }
};

SlantProfile sigma_recursion(const FrenetApparatus& app, int levels);

/// Constancy statistic for one ladder level: dev = weighted std / (1 + |mean|)
/// over edge-trimmed valid samples.
struct LevelStat {
    int k = 0;
    double dev = 0.0;
    double mean = 0.0;
    std::size_t count = 0;
};

LevelStat level_stat(const SampledFunction& sigma_k, int k, std::size_t trim = kStatEdgeTrim);

struct ClassificationReport {
    std::optional<int> k_star;
    double cot_phi = 0.0;
    double phi = 0.0;                    // radians, in (0, pi)
    std::optional<Vector3> axis;         // unit; set by the axis-aware overload
    double residual_sigma = 0.0;         // dev at k_star
    double residual_axis = 0.0;          // max angular wobble of the axis field
    std::vector<LevelStat> per_k;
};

/// Statistics-only classification: smallest k whose ladder level is constant
/// within const_tol.
ClassificationReport classify(const SlantProfile& profile, double const_tol = kDefaultConstTol,
                              std::size_t trim = kStatEdgeTrim);

/// Full classification: also reconstructs the constant-angle axis from the
/// level-k_star spherical frame and reports its wobble.
ClassificationReport classify(const ArcSampledCurve& curve, const FrenetApparatus& app,
                              const SlantProfile& profile, double const_tol = kDefaultConstTol,
                              std::size_t trim = kStatEdgeTrim);

/// Binormal direction of the level-k spherical frame: the normalized cross of
/// psi_{k+1} and psi_{k+2}, with its sign continued along s (no flips).
SampledVectorField level_binormal_field(const PsiLadder& ladder, int k);

/// Per-sample axis candidate d = cos(phi) T_k + sin(phi) B_k, with
/// T_k = psi_{k+1} and B_k from level_binormal_field. Of the two B_k
/// orientations the one with the smaller wobble is kept, then the overall
/// sign is chosen to make <psi_{k+1}, d> positive at the first valid sample.
SampledVectorField axis_field(const PsiLadder& ladder, const SlantProfile& profile, int k,
                              double phi);

/// Max deviation of <field, d> from its mean over edge-trimmed valid samples.
double constant_angle_residual(const SampledVectorField& field, const Vector3& d);

/// Unit mean direction of a field over edge-trimmed valid samples.
Vector3 mean_direction(const SampledVectorField& field);

/// Max angle between field samples and a direction's mean, i.e. the cone
/// spread of the field around d.
double direction_wobble(const SampledVectorField& field, const Vector3& d);

} // namespace slant
