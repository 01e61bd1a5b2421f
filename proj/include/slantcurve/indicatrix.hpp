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

#include <string>
#include <vector>

#include "slantcurve/frenet.hpp"

namespace slant {

enum class IndicatrixKind { Tangent, Normal, Binormal, Psi3 };

std::string to_string(IndicatrixKind kind);

/// Geodesic-curvature ladder of a curve: f = tau/kappa, then each level is the
/// normalized derivative of the previous one,
///   sigma_k = sigma_{k-1}' / (kappa * prod_{j<=k-2} sqrt(1+sigma_j^2)
///             * (1+sigma_{k-1}^2)^{3/2}).
/// When a level's derivative vanishes within differentiation noise (< 1e-10)
/// the next level is exactly zero rather than masked, so curves with constant
/// ratios classify cleanly instead of hitting 0/0.
std::vector<SampledFunction> sigma_ladder_values(const FrenetApparatus& app, int levels);

/// The first four ladder levels under their traditional names.
struct SlantFunctions {
    SampledFunction f;        // sigma_0 = tau/kappa
    SampledFunction sigma;    // sigma_1
    SampledFunction gamma;    // sigma_2
    SampledFunction lambda_;  // sigma_3
};

SlantFunctions slant_functions(const FrenetApparatus& app);

/// Unit-vector field traced on the sphere by the chosen frame axis, or by
/// psi_3 = (-T + f B)/sqrt(1+f^2).
SampledVectorField indicatrix_curve(const FrenetApparatus& app, IndicatrixKind kind);

/// Closed-form Frenet data of a spherical indicatrix, evaluated on the base
/// curve's grid. natural_param is the signed running integral of the kind's
/// speed integrand (kappa; kappa*sqrt(1+f^2); tau; kappa*sqrt(1+f^2)sqrt(1+sigma^2)).
/// ratio stores tau_ind/kappa_ind by pointwise division.
struct IndicatrixApparatus {
    IndicatrixKind kind = IndicatrixKind::Tangent;
    std::vector<double> grid;
    SampledFunction natural_param;
    std::vector<Frame> frames;
    SampledFunction kappa_ind;
    SampledFunction tau_ind;
    SampledFunction ratio;
    std::vector<std::uint8_t> mask;
};

/// Relative floor under |f| for the binormal closed form, which divides by f.
inline constexpr double kFFloorRel = 1e-6;

IndicatrixApparatus closed_form_apparatus(const FrenetApparatus& app, const SlantFunctions& funcs,
                                          IndicatrixKind kind);

/// Independent verification path: sample the indicatrix point set, treat it
/// as a raw parametric curve, and push it through reparameterize and
/// frenet_apparatus. No closed forms anywhere on this route.
FrenetApparatus oracle_apparatus(const FrenetApparatus& app, IndicatrixKind kind);

/// Worst-case disagreement between the closed-form apparatus and the oracle,
/// after aligning the oracle onto the closed-form natural parameter.
///
/// The image may be several regular arcs joined at cusps (zeros of the speed
/// integrand); each arc gets its own oracle. Comparisons skip: `trim` samples
/// at each end of every oracle grid (three more for torsion and the ratio,
/// which sit one differentiation deeper), samples the oracle cannot resolve
/// (kappa_ind * oracle spacing above a cap), and a small arc neighborhood of
/// the cusps. Where the signed integrand is negative the oracle traverses the
/// image opposite to the closed-form orientation; T, B and tau are flipped
/// before comparing.
struct OracleComparison {
    IndicatrixKind kind = IndicatrixKind::Tangent;
    std::size_t compared = 0;
    double max_rel_kappa = 0.0;   // |cf - oracle| / max(1, |cf|)
    double max_rel_tau = 0.0;
    double max_frame_angle = 0.0; // radians, worst of T/N/B
    double max_ratio_dev = 0.0;   // oracle-path ratio vs closed-form target
};

OracleComparison compare_with_oracle(const FrenetApparatus& app, const SlantFunctions& funcs,
                                     IndicatrixKind kind, std::size_t trim = 3);

} // namespace slant
