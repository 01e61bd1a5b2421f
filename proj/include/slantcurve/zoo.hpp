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

#include <array>
#include <map>
#include <optional>
#include <string>

#include "slantcurve/frenet.hpp"

namespace slant {

enum class ZooFamily {
    CircularHelix,
    GeneralHelix,
    Salkowski,
    AntiSalkowski,
    ConstantPrecession,
    PlaneCircle,
    DesignedKSlant,
};

std::string to_string(ZooFamily family);
std::optional<ZooFamily> family_from_string(const std::string& name);

/// Fixture request. Parameters by family:
///   CircularHelix       a, b        (radius, pitch; kappa = a/(a^2+b^2), tau = b/(a^2+b^2))
///   GeneralHelix        phi         (kappa = 1 + 0.3 sin s, tau = cot(phi) kappa)
///   Salkowski           c           (kappa = 1, ladder level 1 constant c)
///   AntiSalkowski       c           (tau = 1, ladder level 1 constant c)
///   ConstantPrecession  mu, m       (kappa = (mu/m) sin(mu s), tau = (mu/m) cos(mu s))
///   PlaneCircle         r
///   DesignedKSlant      k, c        (kappa = 1, ladder level k constant c)
struct ZooSpec {
    ZooFamily family = ZooFamily::CircularHelix;
    double a = 1.0;
    double b = 1.0;
    double phi = 1.0471975511965976;  // pi/3
    double c = 0.5;
    double mu = 1.0;
    double m = 1.0;
    double r = 1.0;
    int k = 2;
    double span_min = 0.0;
    double span_max = 0.0;  // <= span_min means "use the family default"
    std::size_t samples = 0;  // 0 means "use the family default"
};

/// Fills span and sample-count defaults chosen so the full pipeline resolves
/// the family's ladder level from points alone.
ZooSpec with_defaults(ZooSpec spec);

/// Ground truth the generator can promise by construction.
struct ZooTruth {
    int k_star = 0;
    double cot_phi = 0.0;
    std::map<int, double> sigma_constants;  // known constant ladder levels
    std::optional<Vector3> axis;            // known for the analytic families
};

struct ZooCurve {
    ZooSpec spec;
    ArcSampledCurve curve;
    FrenetApparatus apparatus;
    IntrinsicProfile profile;
    ZooTruth truth;
    std::string note;  // set when the span had to be shrunk
};

/// Cap on |tau/kappa| while integrating slant fixtures; beyond it the span is
/// shrunk (recorded in ZooCurve::note) or, if nothing usable remains, the
/// generation fails.
inline constexpr double kSlantOdeCap = 1e3;

ZooCurve generate(const ZooSpec& spec);

/// Least-squares quadric through the curve points (10 homogeneous
/// coefficients, unit norm, mean-centered scale-normalized coordinates).
/// Returns the eigenvalues of the quadratic part, descending, with the sign
/// normalized so that at least two are positive.
std::array<double, 3> quadric_eigenvalues(const ArcSampledCurve& curve);

/// Relative error of the quadratic-part eigenvalue ratio against the
/// one-sheeted hyperboloid signature (+, +, -(m^2)) the constant-precession
/// family lives on. Small iff the curve lies on such a hyperboloid.
double hyperboloid_check(const ArcSampledCurve& curve, double m);

} // namespace slant
