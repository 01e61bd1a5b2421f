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

#include <vector>

#include "slantcurve/sampled.hpp"

namespace slant {

/// d/ds on the grid. Five-point central stencils (fourth order) at interior
/// samples, four-point one-sided stencils at the two samples nearest each
/// grid end. A sample is valid in the output only if every sample its stencil
/// touches is valid in the input.
SampledFunction derivative(const SampledFunction& f);

/// Component-wise derivative of a vector field, same stencil and mask rules.
SampledVectorField derivative(const SampledVectorField& f);

/// Definite integral over [from, to] (either orientation) by composite Simpson
/// on the grid panels, with a trapezoid correction for a partial final panel
/// and for off-node endpoints. Every covered sample must be valid.
double integrate(const SampledFunction& f, double from, double to);

/// Running integral g with g = 0 at the first valid sample, fourth-order
/// panel quadrature. Valid over the leading contiguous valid run only.
SampledFunction cumulative_integral(const SampledFunction& f);

/// Cubic spline interpolation with not-a-knot end conditions on strictly
/// increasing (not necessarily uniform) knots. Requires >= 4 knots.
class CubicSpline {
  public:
    CubicSpline(std::vector<double> x, std::vector<double> y);
    double eval(double q) const;

  private:
    std::vector<double> x_;
    std::vector<double> y_;
    std::vector<double> m_;  // second derivatives at the knots
};

/// Monotone (shape-preserving) piecewise-cubic interpolation, Fritsch-Carlson
/// slopes. Used to resample one apparatus onto another natural-parameter grid.
class MonotoneCubic {
  public:
    MonotoneCubic(std::vector<double> x, std::vector<double> y);
    double eval(double q) const;

  private:
    std::vector<double> x_;
    std::vector<double> y_;
    std::vector<double> d_;  // node slopes
};

} // namespace slant
