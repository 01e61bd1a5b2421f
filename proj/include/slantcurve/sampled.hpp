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

#include <cstddef>
#include <cstdint>
#include <vector>

#include "slantcurve/errors.hpp"
#include "slantcurve/vector3.hpp"

namespace slant {

/// Builds the canonical uniform grid [s0, s1] with n nodes as s0 + i*h.
std::vector<double> make_uniform_grid(double s0, double s1, std::size_t n);

/// Checks strict increase and uniform spacing. The spacing jitter allowance is
/// scaled to the grid magnitude so grids assembled in floating point pass.
void validate_grid(const std::vector<double>& grid);

/// Scalar function sampled on a uniform grid, with per-sample validity.
/// Invalid samples mark pointwise singularities; values there are unspecified.
struct SampledFunction {
    std::vector<double> grid;
    std::vector<double> values;
    std::vector<std::uint8_t> mask;  // 1 = valid

    std::size_t size() const { return grid.size(); }
    double spacing() const { return grid.size() > 1 ? (grid.back() - grid.front()) / double(grid.size() - 1) : 0.0; }
    bool valid(std::size_t i) const { return mask[i] != 0; }
    std::size_t valid_count() const;
};

/// Vector field sampled on a uniform grid.
struct SampledVectorField {
    std::vector<double> grid;
    std::vector<Vector3> vectors;
    std::vector<std::uint8_t> mask;

    std::size_t size() const { return grid.size(); }
    double spacing() const { return grid.size() > 1 ? (grid.back() - grid.front()) / double(grid.size() - 1) : 0.0; }
    bool valid(std::size_t i) const { return mask[i] != 0; }

    SampledFunction component(int axis) const;
};

/// Validating factory: finite values wherever valid, grid contract enforced.
SampledFunction make_sampled(std::vector<double> grid, std::vector<double> values,
                             std::vector<std::uint8_t> mask = {});

SampledVectorField make_sampled_field(std::vector<double> grid, std::vector<Vector3> vectors,
                                      std::vector<std::uint8_t> mask = {});

/// Longest contiguous run of valid samples; returns [first, last] inclusive,
/// or {1, 0} when nothing is valid.
std::pair<std::size_t, std::size_t> longest_valid_run(const std::vector<std::uint8_t>& mask);

} // namespace slant
