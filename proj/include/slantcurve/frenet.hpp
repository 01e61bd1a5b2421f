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

#include <utility>
#include <vector>

#include "slantcurve/calculus.hpp"
#include "slantcurve/sampled.hpp"
#include "slantcurve/vector3.hpp"

namespace slant {

/// Unit-speed tolerance for curves on the arc-length grid.
inline constexpr double kReparamTol = 1e-6;

/// kappa below this fraction of the grid maximum masks the sample: the
/// principal normal is numerically undefined there and everything downstream
/// divides by kappa.
inline constexpr double kKappaFloorRel = 1e-7;

/// Curve sampled on a uniform arc-length grid; the canonical input
/// representation for all downstream analysis.
struct ArcSampledCurve {
    std::vector<double> grid;   // arc length
    SampledVectorField points;  // positions, same grid

    std::size_t size() const { return grid.size(); }
    double spacing() const { return points.spacing(); }
};

/// Moving frame plus curvature and torsion on the arc-length grid. One shared
/// mask: a sample is valid when the frame exists and kappa is above the floor.
struct FrenetApparatus {
    std::vector<double> grid;
    std::vector<Frame> frames;
    SampledFunction kappa;
    SampledFunction tau;
    std::vector<std::uint8_t> mask;

    std::size_t size() const { return grid.size(); }
    double spacing() const { return kappa.spacing(); }
    std::size_t valid_count() const;

    SampledVectorField tangent_field() const;
    SampledVectorField normal_field() const;
    SampledVectorField binormal_field() const;
};

/// Sampled intrinsic equations kappa(s) >= 0 and tau(s) on one grid.
struct IntrinsicProfile {
    std::vector<double> grid;
    SampledFunction kappa;
    SampledFunction tau;
};

/// Worst deviations of the sampled Frenet system from its defining relations,
/// measured with numerical derivatives at valid interior samples.
struct FrenetResiduals {
    double tangent = 0.0;   // max |T' - kappa N|
    double normal = 0.0;    // max |N' + kappa T - tau B|
    double binormal = 0.0;  // max |B' + tau N|
    double max() const;
};

/// Re-parameterizes an arbitrary regular parametric point set by arc length.
/// Arc length accumulates corrected chord lengths; positions are resampled
/// onto a uniform arc grid (same sample count) by cubic spline interpolation.
ArcSampledCurve reparameterize(const SampledVectorField& points);

/// Frenet apparatus by direct differentiation: T = psi', kappa = |T'|,
/// N = T'/kappa, B = T x N, tau = <N', B>; one Gram-Schmidt pass per frame.
FrenetApparatus frenet_apparatus(const ArcSampledCurve& curve);

/// Integrates the Frenet system plus psi' = T with fixed-step classical RK4,
/// re-orthonormalizing the frame after every step. The returned apparatus
/// carries the integrated frames and the profile's kappa, tau.
std::pair<ArcSampledCurve, FrenetApparatus> curve_from_intrinsic(const IntrinsicProfile& profile,
                                                                 const Frame& initial,
                                                                 const Vector3& origin);

FrenetResiduals frenet_residuals(const FrenetApparatus& app);

} // namespace slant
